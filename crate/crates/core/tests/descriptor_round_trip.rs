use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use endoperm_core::block_analysis::BlockDescriptor;
use endoperm_core::brauer_tree::BrauerTree;
use endoperm_core::descriptor::{emit_descriptor, parse_descriptor, DescriptorFile};
use endoperm_core::GroupSpec;

fn group() -> impl Strategy<Value = GroupSpec> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7, 65_537, 18_446_744_073_709_551_557]),
        1u32..=5,
    )
        .prop_map(|(p, ell)| GroupSpec::new(p, ell).unwrap())
}

fn big_int() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        (-1000i64..1000).prop_map(BigInt::from),
        prop::collection::vec(any::<u32>(), 1..5).prop_flat_map(|digits| any::<bool>().prop_map(
            move |neg| {
                let v = BigInt::from(BigUint::new(digits.clone()));
                if neg {
                    -v
                } else {
                    v
                }
            }
        )),
    ]
}

fn label() -> impl Strategy<Value = Option<String>> {
    prop::option::of("[a-zA-Z0-9 _\\-\"\\\\é]{0,12}")
}

fn block() -> impl Strategy<Value = BlockDescriptor> {
    group().prop_flat_map(|g| {
        let ell = g.ell() as usize;
        let chi = prop_oneof![
            Just(Vec::new()),
            prop::collection::vec(prop::collection::vec(big_int(), 1..4), ell),
        ];
        let inertial = prop::option::of(Just(1u64));
        (label(), chi, any::<[Option<bool>; 3]>(), inertial).prop_map(
            move |(label, chi, flags, inertial_index)| BlockDescriptor {
                label,
                group: g.clone(),
                chi,
                is_principal: flags[0],
                centralizer_equal: flags[1],
                normalizer_equal: flags[2],
                inertial_index,
            },
        )
    })
}

/// Arbitrary records, including ones that are not trees.
fn tree() -> impl Strategy<Value = BrauerTree> {
    let names = prop::collection::vec("[a-z]{1,3}", 1..6);
    (
        group(),
        label(),
        names,
        any::<u64>(),
        prop::option::of(any::<u32>()),
    )
        .prop_map(|(g, label, names, seed, m)| {
            let mut s = seed;
            let mut next = |k: usize| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (s >> 33) as usize % k
            };
            let edges: Vec<(String, String)> = (1..names.len())
                .map(|k| (names[k].clone(), names[next(names.len())].clone()))
                .collect();
            let orders: BTreeMap<String, Vec<String>> = names
                .iter()
                .map(|v| {
                    (
                        v.clone(),
                        names.iter().filter(|_| next(2) == 0).cloned().collect(),
                    )
                })
                .collect();
            BrauerTree {
                label,
                group: g,
                exceptional: m.map(|k| names[k as usize % names.len()].clone()),
                multiplicity: BigUint::from(m.unwrap_or(1)),
                vertices: names,
                edges,
                orders,
            }
        })
}

proptest! {
    #[test]
    fn parse_inverts_emit(
        blocks in prop::collection::vec(block(), 0..4),
        trees in prop::collection::vec(tree(), 0..3),
    ) {
        let file = DescriptorFile { blocks, trees };
        let text = emit_descriptor(&file);
        let back = parse_descriptor(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(emit_descriptor(&back), text);
    }
}
