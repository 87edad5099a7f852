mod common;

use dwl_epc::structures::{cfi_pair, find_isomorphism, graph, RelName, Side, Structure, StructureError, UnionStructure};
use proptest::prelude::*;
use rand::SeedableRng;

fn arb_structure() -> impl Strategy<Value = Structure> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| common::random_structure(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #[test]
    fn text_round_trip(s in arb_structure()) {
        let text = s.to_text();
        let back = Structure::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn relabelled_copy_is_found_isomorphic(s in arb_structure(), seed in any::<u64>()) {
        let perm = common::random_permutation(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), s.len());
        let t = s.relabel(&perm);
        let iso = find_isomorphism(&s, &t).unwrap();
        prop_assert_eq!(s.relabel(&iso).to_text(), t.to_text());
    }
}

#[test]
fn parse_errors_carry_positions() {
    match Structure::parse("structure n=2\nrel E\n0 5\n") {
        Err(StructureError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(matches!(Structure::parse(""), Err(StructureError::Parse { .. })));
}

#[test]
fn union_tracks_sides() {
    let u = UnionStructure::new(&common::path(3), &common::cycle(4)).unwrap();
    assert_eq!(u.len(), 7);
    assert_eq!(u.side_of(2), Side::Left);
    assert_eq!(u.side_of(3), Side::Right);
    assert_eq!(u.global(Side::Right, 1), 4);
    assert_eq!(u.local(4), 1);
    assert_eq!(u.side(Side::Right).to_text(), common::cycle(4).to_text());
}

#[test]
fn union_refuses_disconnected_or_mismatched_sides() {
    let two_edges = graph(4, &[(0, 1), (2, 3)]);
    assert!(matches!(
        UnionStructure::new(&two_edges, &common::path(4)),
        Err(StructureError::NotConnected(Side::Left))
    ));
    let other_vocab = Structure::new(
        2,
        vec![dwl_epc::structures::Relation {
            name: RelName::new("F"),
            color: false,
            pairs: [(0, 1), (1, 0)].into_iter().collect(),
        }],
    )
    .unwrap();
    assert!(matches!(
        UnionStructure::new(&common::path(2), &other_vocab),
        Err(StructureError::VocabMismatch(_))
    ));
}

#[test]
fn cfi_companions() {
    let k2 = common::path(2);
    let (a, b) = cfi_pair(&k2, false, false).unwrap();
    assert!(find_isomorphism(&a, &b).is_some());
    let k4 = common::complete(4);
    let (plain, _) = cfi_pair(&k4, true, false).unwrap();
    let (ordered, _) = cfi_pair(&k4, true, true).unwrap();
    assert_eq!(plain.len(), 28);
    assert_eq!(ordered.len(), 28);
    let extra: Vec<RelName> = ordered.vocabulary().into_iter().filter(|r| !plain.vocabulary().contains(r)).collect();
    assert_eq!(extra, vec![RelName::new("le")]);
    for n in 3..=5 {
        let (x, y) = cfi_pair(&common::cycle(n), true, false).unwrap();
        assert!(find_isomorphism(&x, &y).is_none(), "twisted CFI over C{n}");
        let (x, y) = cfi_pair(&common::cycle(n), false, false).unwrap();
        assert!(find_isomorphism(&x, &y).is_some(), "untwisted CFI over C{n}");
    }
}
