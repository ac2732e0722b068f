#![no_main]

use cmrees::exact::{format_literal, parse_literal};
use libfuzzer_sys::fuzz_target;

// First byte picks the conductor, the rest is the literal.
fuzz_target!(|data: &[u8]| {
    let Some((&m, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let conductor = u32::from(m % 24) + 1;
    if let Ok(x) = parse_literal(text, conductor) {
        let back = parse_literal(&format_literal(&x), x.conductor()).expect("printed literal parses");
        assert_eq!(back, x);
    }
});
