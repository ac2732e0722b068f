#![no_main]

use cmrees::g4::parse_g4_fixture;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_g4_fixture(text) {
        let back = parse_g4_fixture(&f.render()).expect("rendered fixture parses");
        assert_eq!(back, f);
        let _ = f.build_group();
    }
});
