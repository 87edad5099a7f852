mod common;

use dwl_epc::dwl::{run_trace, CloudState, DwlError, DwlTrace, Op, Outcome, TraceOp};
use dwl_epc::structures::{cfi_pair, graph};
use proptest::prelude::*;
use rand::Rng;

fn op(op: Op, c: u32) -> TraceOp {
    TraceOp {
        op,
        color: format!("c{c}"),
    }
}

#[test]
fn stops_at_first_separation() {
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    let (a, b) = cfi_pair(&k4, true, true).unwrap();
    let c = CloudState::initial(&a, &b).unwrap().history.color(0, 4);
    let trace = DwlTrace::new(vec![op(Op::Pair, c), op(Op::Pair, 0), op(Op::Scc, 0)], 200, 5);
    let run = run_trace(&a, &b, &trace).unwrap();
    assert_eq!(run.outcome, Outcome::Distinguished);
    assert_eq!(run.states.len(), 2);
}

#[test]
fn step_budget_is_enforced() {
    let c5 = common::cycle(5);
    let s = CloudState::initial(&c5, &c5).unwrap();
    let e = s.history.color(0, 1);
    let trace = DwlTrace::new(vec![op(Op::Pair, e), op(Op::Pair, e)], 1000, 1);
    assert!(matches!(run_trace(&c5, &c5, &trace), Err(DwlError::BudgetExceeded(_))));
}

#[test]
fn trace_parse_errors_carry_line_numbers() {
    let err = DwlTrace::parse("# comment\ndwltrace v1 budget_vertices=10 budget_steps=2\npair c1\nswap c2\n").unwrap_err();
    assert!(matches!(err, DwlError::TraceParse { line: 4, .. }));
    let err = DwlTrace::parse("dwltrace v1 budget_vertices=0 budget_steps=2\n").unwrap_err();
    assert!(matches!(err, DwlError::TraceParse { line: 1, .. }));
    assert!(DwlTrace::parse("").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn isomorphic_sides_never_separate(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(2..=6);
        let g = common::random_structure(&mut rng, n);
        let h = g.relabel(&common::random_permutation(&mut rng, n));
        let states = common::random_run(&mut rng, &g, &h, 3, 12);
        for s in &states {
            prop_assert!(!s.distinguished());
            prop_assert_eq!(&s.sketch_left, &s.sketch_right);
        }
    }

    #[test]
    fn trace_text_round_trips(ops in proptest::collection::vec((any::<bool>(), 0u32..500), 0..8), bv in 1usize..10_000, bs in 1usize..50) {
        let ops = ops.into_iter().map(|(p, c)| op(if p { Op::Pair } else { Op::Scc }, c)).collect();
        let t = DwlTrace::new(ops, bv, bs);
        let parsed = DwlTrace::parse(&t.to_text()).unwrap();
        prop_assert_eq!(parsed.to_text(), t.to_text());
    }
}
