use proptest::prelude::*;

use cmrees::center::{filtration, idempotent, parse_family_file, rees_lattice, CenterElement, FamilyPartition};
use cmrees::chartab::{induce, inner_product, restrict};
use cmrees::exact::{parse_literal, CycScalar};
use cmrees::g4::{parse_g4_fixture, BUNDLED_FIXTURE};
use cmrees::groups::{parse_group_file, registry, render_group_file, GroupSpec, ReflGroup};

const SMALL: [&str; 6] = ["Cyc3", "Cyc4", "Cyc6", "S3", "G(2,1,2)", "G4"];

fn group(i: usize) -> ReflGroup {
    registry::build(SMALL[i % SMALL.len()]).unwrap()
}

/// Assigns each character to `labels[i] % blocks` and drops empty blocks.
fn partition(g: &ReflGroup, labels: &[usize], blocks: usize) -> Vec<Vec<String>> {
    let names = g.character_table().unwrap().names();
    let mut out = vec![Vec::new(); blocks];
    for (i, name) in names.iter().enumerate() {
        out[labels[i % labels.len()] % blocks].push(name.clone());
    }
    out.retain(|b| !b.is_empty());
    out
}

#[test]
fn idempotents_are_orthogonal_and_sum_to_one() {
    for name in SMALL {
        let g = registry::build(name).unwrap();
        let table = g.character_table().unwrap();
        let es: Vec<CenterElement> = table.characters().iter().map(|c| idempotent(&g, c).unwrap()).collect();
        let mut total = CenterElement::zero(&g);
        for (i, a) in es.iter().enumerate() {
            total = total.add(a).unwrap();
            for (j, b) in es.iter().enumerate() {
                let prod = a.mul(&g, b).unwrap();
                if i == j {
                    assert_eq!(&prod, a, "{name}: e_{i}^2");
                } else {
                    assert!(prod.is_zero(), "{name}: e_{i} e_{j}");
                }
            }
        }
        assert_eq!(total, CenterElement::unit(&g), "{name}");
    }
}

#[test]
fn registry_groups_round_trip_through_files() {
    for name in registry::names() {
        let g = registry::build(&name).unwrap();
        let spec = GroupSpec {
            name: name.clone(),
            conductor: g.conductor(),
            dim: g.dim(),
            generators: registry::generators(&name).unwrap(),
        };
        if spec.generators.is_empty() {
            continue;
        }
        let text = render_group_file(&spec).unwrap();
        let back = parse_group_file(&text).unwrap();
        assert_eq!(render_group_file(&back).unwrap(), text, "{name}");
        let h = back.build(10_000).unwrap();
        assert_eq!((h.order(), h.num_classes()), (g.order(), g.num_classes()), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_reciprocity(gi in 0usize..SMALL.len(), fi in 0usize..64, a in 0usize..16, b in 0usize..16) {
        let g = group(gi);
        let flat = &g.flats()[fi % g.flats().len()];
        let sub = g.parabolic(flat).unwrap();
        let eta = {
            let t = sub.group.character_table().unwrap();
            t.character(a % t.len()).clone()
        };
        let chi = {
            let t = g.character_table().unwrap();
            t.character(b % t.len()).clone()
        };
        let lhs = inner_product(&g, &induce(&g, &sub, &eta).unwrap(), &chi).unwrap();
        let rhs = inner_product(&sub.group, &eta, &restrict(&g, &sub, &chi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rees_dims_add_up_to_block_count(
        gi in 0usize..SMALL.len(),
        labels in prop::collection::vec(0usize..8, 1..8),
        blocks in 1usize..8,
    ) {
        let g = group(gi);
        let parts = partition(&g, &labels, blocks);
        let n_blocks = parts.len();
        let fam = FamilyPartition::new(&g, parts).unwrap();
        let r = rees_lattice(&g, &fam).unwrap();
        prop_assert_eq!(r.gr_dims.iter().sum::<usize>(), n_blocks);
        prop_assert_eq!(r.gr_dims[0], 1);
        let f = filtration(&g).dims;
        for (d, fd) in r.dims.iter().zip(&f) {
            prop_assert!(d <= fd);
        }
        prop_assert!(r.dims.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn center_product_is_commutative(gi in 0usize..SMALL.len(), xs in prop::collection::vec(-3i64..3, 16), ys in prop::collection::vec(-3i64..3, 16)) {
        let g = group(gi);
        let k = g.num_classes();
        let x = CenterElement::new(&g, xs[..k].iter().map(|&c| CycScalar::from_integer(c)).collect()).unwrap();
        let y = CenterElement::new(&g, ys[..k].iter().map(|&c| CycScalar::from_integer(c)).collect()).unwrap();
        prop_assert_eq!(x.mul(&g, &y).unwrap(), y.mul(&g, &x).unwrap());
    }

    #[test]
    fn parsers_reject_garbage_without_panicking(text in "\\PC{0,64}", m in 1u32..=24) {
        let _ = parse_literal(&text, m);
        let _ = parse_group_file(&text);
        let _ = parse_family_file(&text);
        let _ = parse_g4_fixture(&text);
    }

    #[test]
    fn fixture_edits_never_panic(at in 0usize..2000, len in 0usize..8, insert in "[-0-9a-z\\[\\]\",= ]{0,6}") {
        let mut text = BUNDLED_FIXTURE.to_string();
        let start = at % text.len();
        let end = (start + len).min(text.len());
        if text.is_char_boundary(start) && text.is_char_boundary(end) {
            text.replace_range(start..end, &insert);
            let _ = parse_g4_fixture(&text);
        }
    }
}
