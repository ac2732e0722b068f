#![no_main]

use cmrees::groups::{parse_group_file, render_group_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_group_file(text) {
        let rendered = render_group_file(&spec).expect("parsed spec renders");
        let back = parse_group_file(&rendered).expect("rendered spec parses");
        assert_eq!(render_group_file(&back).unwrap(), rendered);
        // Closure is bounded so hostile generators cannot run away.
        let _ = spec.build(200);
    }
});
