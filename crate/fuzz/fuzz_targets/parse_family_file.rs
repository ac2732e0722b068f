#![no_main]

use cmrees::center::{parse_family_file, rees_lattice, FamilyPartition};
use cmrees::groups::registry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok((group, blocks)) = parse_family_file(text) else {
        return;
    };
    let name = group.unwrap_or_else(|| "Cyc4".to_string());
    let Ok(g) = registry::build(&name) else {
        return;
    };
    if let Ok(fam) = FamilyPartition::new(&g, blocks.clone()) {
        let r = rees_lattice(&g, &fam).expect("valid partition");
        assert_eq!(r.gr_dims.iter().sum::<usize>(), blocks.len());
    }
});
