mod common;

use dwl_epc::polysys::{color_count_mismatch, evaluate, iso_assignment, piso, q, q_frac, AxiomKind, Monomial, Polynomial, Var, Q};
use dwl_epc::structures::{find_isomorphism, UnionStructure};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn arb_var() -> impl Strategy<Value = Var> {
    prop_oneof![(0u32..4, 0u32..4).prop_map(|(v, w)| Var::Orig(v, w)), (0u32..3).prop_map(Var::Ext)]
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(arb_var(), 0..=3), -5i64..=5, 1i64..=4), 0..6).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (vars, n, d) in terms {
            p.add_term(Monomial::from_vars(vars), q_frac(n, d));
        }
        p
    })
}

fn arb_point() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 16 + 3)
}

fn value(point: &[i64], x: Var) -> Q {
    match x {
        Var::Orig(v, w) => q(point[(v * 4 + w) as usize]),
        Var::Ext(k) => q(point[16 + k as usize]),
    }
}

proptest! {
    #[test]
    fn addition_commutes_and_cancels(a in arb_poly(), b in arb_poly()) {
        let one = Q::from_integer(1.into());
        prop_assert_eq!(Polynomial::add_scaled(&a, &b, &one, &one), Polynomial::add_scaled(&b, &a, &one, &one));
        prop_assert!(Polynomial::add_scaled(&a, &a, &one, &-one.clone()).is_zero());
    }

    #[test]
    fn products_evaluate_pointwise(a in arb_poly(), b in arb_poly(), x in arb_var(), point in arb_point()) {
        let at = |p: &Polynomial| p.eval_with(|v| Some(value(&point, v))).unwrap();
        prop_assert_eq!(at(&a.mul(&b)), at(&a) * at(&b));
        prop_assert_eq!(at(&a.mul_var(x)), at(&a) * value(&point, x));
        let c = q_frac(3, 7);
        prop_assert_eq!(at(&a.scale(&c)), at(&a) * c);
    }

    #[test]
    fn text_round_trip(a in arb_poly()) {
        let text = a.to_string();
        prop_assert_eq!(Polynomial::parse(&text).unwrap(), a);
    }

    #[test]
    fn isomorphisms_zero_every_axiom(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_structure(&mut rng, n);
        let h = g.relabel(&common::random_permutation(&mut rng, n));
        let iso = find_isomorphism(&g, &h).unwrap();
        let sys = piso(&UnionStructure::new(&g, &h).unwrap());
        let assignment = iso_assignment(&iso);
        for a in &sys.axioms {
            prop_assert!(evaluate(&a.poly, &assignment, &[]).unwrap().is_zero(), "{}", a.kind);
        }
    }
}

#[test]
fn axiom_layout() {
    let u = UnionStructure::new(&common::path(3), &common::path(3)).unwrap();
    let sys = piso(&u);
    assert_eq!(sys.sizes(), (3, 3));
    assert!(matches!(sys.axioms[sys.row(2)].kind, AxiomKind::Row(2)));
    assert!(matches!(sys.axioms[sys.col(0)].kind, AxiomKind::Col(0)));
    // Path ends map to ends only through local axioms; the middle row has
    // every vertex since all share the atomic type.
    assert_eq!(sys.axioms[sys.row(1)].poly.len(), 4);
    let local = sys.local((0, 0), (1, 2)).expect("edge to non-edge is not a partial isomorphism");
    assert_eq!(sys.axioms[local].poly.to_string(), "1/1 * x[0,0] * x[1,2]");
    assert!(sys.local((0, 0), (1, 1)).is_none());
    assert!(!sys.color_count_mismatch);
}

#[test]
fn colour_count_mismatch_is_reported() {
    let u = UnionStructure::new(&common::path(3), &common::path(4)).unwrap();
    assert!(color_count_mismatch(&u));
    assert!(piso(&u).color_count_mismatch);
}

#[test]
fn parse_rejects_malformed_terms() {
    assert!(Polynomial::parse("1/1 * y[0,0]").is_err());
    assert!(Polynomial::parse("1/1 * x[0,0] + 2/1 * x[0,0]").is_err());
    assert!(Polynomial::parse("0").unwrap().is_zero());
}
