//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dwl_epc::structures::{graph, RelName, Relation, Structure};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected structure on `n` vertices: a symmetric relation `E`
/// holding a spanning tree plus extras, and optionally a directed relation
/// `A` and a unary predicate `P` on the diagonal.
pub fn random_structure(rng: &mut impl Rng, n: usize) -> Structure {
    let mut e = BTreeSet::new();
    for v in 1..n as u32 {
        let u = rng.gen_range(0..v);
        e.insert((u, v));
        e.insert((v, u));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (a, b) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
        if a != b {
            e.insert((a, b));
            e.insert((b, a));
        }
    }
    let mut rels = vec![Relation {
        name: RelName::new("E"),
        color: false,
        pairs: e,
    }];
    if rng.gen_bool(0.4) {
        let pairs = (0..rng.gen_range(1..=n))
            .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
            .collect();
        rels.push(Relation {
            name: RelName::new("A"),
            color: false,
            pairs,
        });
    }
    if rng.gen_bool(0.4) {
        let pairs = (0..n as u32).filter(|_| rng.gen_bool(0.5)).map(|v| (v, v)).collect();
        rels.push(Relation {
            name: RelName::new("P"),
            color: false,
            pairs,
        });
    }
    Structure::new(n, rels).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(rng);
    p
}

pub fn cycle(n: usize) -> Structure {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    graph(n, &edges)
}

pub fn path(n: usize) -> Structure {
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
    graph(n, &edges)
}

pub fn star(n: usize) -> Structure {
    let edges: Vec<(u32, u32)> = (1..n as u32).map(|i| (0, i)).collect();
    graph(n, &edges)
}

pub fn complete(n: usize) -> Structure {
    let edges: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
    graph(n, &edges)
}

pub fn prism() -> Structure {
    graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
}

pub fn k33() -> Structure {
    graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
}

/// Connected simple graphs on `n` vertices, one per edge subset, so
/// isomorphic copies repeat.
pub fn connected_graphs(n: usize) -> Vec<Structure> {
    let all: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
    (0u32..1 << all.len())
        .map(|mask| {
            let edges: Vec<(u32, u32)> = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            graph(n, &edges)
        })
        .filter(|g| g.is_connected())
        .collect()
}

use dwl_epc::derive::Level;
use dwl_epc::dwl::{exec, CloudState, Op};
use dwl_epc::lift::{lift, Lifted};
use dwl_epc::polysys::{piso, PisoSystem};
use dwl_epc::prooflog::{Mode, Proof, ProofLog};

/// Steps from `s` whose result keeps each side at most `max_side` vertices.
pub fn small_steps(s: &CloudState, max_side: usize) -> Vec<(Op, String)> {
    let mut out = Vec::new();
    for c in s.operable_colors() {
        let key = format!("c{c}");
        let (l, r) = s.history.side_counts(c);
        if s.union.left_size.max(s.union.right_size()) + l.max(r) <= max_side {
            out.push((Op::Pair, key.clone()));
        }
        if !s.history.sccs_of_color(c).is_empty() {
            out.push((Op::Scc, key));
        }
    }
    out
}

/// Up to `len` random small steps from the union of `g` and `h`.
pub fn random_run(rng: &mut impl Rng, g: &Structure, h: &Structure, len: usize, max_side: usize) -> Vec<CloudState> {
    let mut states = vec![CloudState::initial(g, h).unwrap()];
    for _ in 0..len {
        let last = states.last().unwrap();
        if last.distinguished() {
            break;
        }
        let options = small_steps(last, max_side);
        if options.is_empty() {
            break;
        }
        let (op, key) = &options[rng.gen_range(0..options.len())];
        let next = exec(last, *op, key, None).unwrap();
        states.push(next);
    }
    states
}

pub struct LiftedRun {
    pub proof: Proof,
    pub systems: Vec<PisoSystem>,
    /// One entry per step.
    pub lifts: Vec<Lifted>,
}

/// Lifts the input axioms through every step of `states`.
pub fn lift_run(states: &[CloudState]) -> LiftedRun {
    let systems: Vec<PisoSystem> = states.iter().map(|s| piso(&s.union)).collect();
    let mut log = ProofLog::new(Mode::Epc3, true);
    let mut lifts = Vec::new();
    let mut level = Level::input(&states[0].union, &states[0].history, &systems[0]);
    for i in 1..states.len() {
        let mut prev = level.with_equivalent_sides();
        let lifted = lift(&mut prev, &states[i], &systems[i], &mut log)
            .unwrap_or_else(|e| panic!("lifting step {i} ({:?}): {e}", states[i].origin));
        level = Level::derived(
            &states[i].union,
            &states[i].history,
            &systems[i],
            lifted.names.clone(),
            lifted.lines.clone(),
        );
        lifts.push(lifted);
    }
    LiftedRun {
        proof: log.into_proof(),
        systems,
        lifts,
    }
}
