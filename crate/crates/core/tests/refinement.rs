mod common;

use dwl_epc::coherent::{refine, refine_union};
use dwl_epc::sketch::{restrict_sketch, sketch};
use dwl_epc::structures::{Side, Structure, UnionStructure};
use dwl_epc::validate::{validate_colouring, validate_configuration};
use proptest::prelude::*;
use rand::SeedableRng;

fn arb_structure() -> impl Strategy<Value = Structure> {
    (1usize..=7, any::<u64>()).prop_map(|(n, seed)| common::random_structure(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sketch_text_is_relabelling_invariant(s in arb_structure(), seed in any::<u64>()) {
        let t = s.relabel(&common::random_permutation(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed), s.len()));
        prop_assert_eq!(sketch(&s, &refine(&s)).to_text(), sketch(&t, &refine(&t)).to_text());
    }

    #[test]
    fn union_restriction_equals_standalone(a in arb_structure(), b in arb_structure()) {
        prop_assume!(a.vocabulary() == b.vocabulary());
        let u = UnionStructure::new(&a, &b).unwrap();
        let h = refine_union(&u);
        prop_assert_eq!(restrict_sketch(&u, &h, Side::Left).unwrap(), sketch(&a, &refine(&a)));
        prop_assert_eq!(restrict_sketch(&u, &h, Side::Right).unwrap(), sketch(&b, &refine(&b)));
    }

    #[test]
    fn stable_colourings_validate(s in arb_structure()) {
        let report = validate_configuration(&s, &refine(&s));
        prop_assert!(report.all_pass(), "{}", report.to_text());
    }
}

#[test]
fn layer_zero_is_the_atomic_type() {
    let s = common::path(3);
    let h = refine(&s);
    // Ends and middle share an atomic type; only refinement separates them.
    assert_eq!(h.color_at(0, 0, 0), h.color_at(0, 1, 1));
    assert_ne!(h.color(0, 0), h.color(1, 1));
    assert_eq!(h.color(0, 0), h.color(2, 2));
}

#[test]
fn merged_colours_fail_validation() {
    let s = common::prism();
    let h = refine(&s);
    let mut colour = h.layer(h.stable_index()).to_vec();
    let (triangle, rung) = (h.color(0, 1), h.color(0, 3));
    for c in colour.iter_mut() {
        if *c == rung {
            *c = triangle;
        }
    }
    let report = validate_colouring(&s, &colour);
    assert!(!report.all_pass());
    assert!(report.check("intersection-numbers").is_some_and(|c| !c.pass));
}

#[test]
fn colour_keys_resolve() {
    let s = common::cycle(5);
    let h = refine(&s);
    for c in 0..h.num_colors() as u32 {
        assert_eq!(h.resolve_key(&format!("c{c}")), Some(c));
    }
    assert_eq!(h.resolve_key("c99"), None);
    assert_eq!(h.resolve_key("x1"), None);
}
