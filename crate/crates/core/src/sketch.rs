//! Algebraic sketches: the vocabulary, the stable colours, which relations
//! each colour lies inside, and the intersection numbers.
//!
//! Colour ids are the canonical ids of the stand-alone refinement, so two
//! structures have byte-identical sketches iff 2-WL does not distinguish
//! them. A restricted sketch is computed from the colouring of a union, with
//! each colour renamed to the stand-alone colour that has the same pairs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coherent::{refine, ColorHistory, ColorId};
use crate::structures::{RelName, Side, Structure, UnionStructure};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SketchColor {
    pub diagonal: bool,
    /// Relations containing every pair of the colour, sorted.
    pub refines: Vec<RelName>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSketch {
    pub tau: Vec<RelName>,
    pub colors: Vec<SketchColor>,
    /// `(r1, r2, r3) -> #{x : (u,x) in r1, (x,v) in r2}` for `(u,v)` in `r3`;
    /// zero entries are absent.
    pub q: BTreeMap<(ColorId, ColorId, ColorId), u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SketchError {
    #[error("union colouring restricted to the {side} side disagrees with the stand-alone colouring at pair {pair:?}")]
    RestrictionMismatch { side: Side, pair: (u32, u32) },
}

/// Sketch of a structure from its own stable refinement.
pub fn sketch(s: &Structure, h: &ColorHistory) -> AlgebraicSketch {
    let n = s.len() as u32;
    let stable = h.stable_index();
    let k = h.num_colors();
    let mut q = BTreeMap::new();
    for r3 in 0..k as ColorId {
        let rep = h.representative(r3);
        for ((r1, r2), c) in h.path_counts(stable, rep, 0..n) {
            q.insert((r1, r2, r3), c);
        }
    }
    let reps: Vec<(u32, u32)> = (0..k as ColorId).map(|c| h.representative(c)).collect();
    build(s, &reps, q)
}

/// Sketch of one side of a union, computed from the union's colouring.
pub fn restrict_sketch(u: &UnionStructure, h: &ColorHistory, side: Side) -> Result<AlgebraicSketch, SketchError> {
    let s = u.side(side);
    let hs = refine(&s);
    let n = s.len() as u32;
    // Union colour -> stand-alone colour, checked to be a bijection on the
    // pairs of this side.
    let mut to_local: BTreeMap<ColorId, ColorId> = BTreeMap::new();
    let mut to_union: BTreeMap<ColorId, ColorId> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let cu = h.color(u.global(side, a), u.global(side, b));
            let cl = hs.color(a, b);
            let fwd = *to_local.entry(cu).or_insert(cl);
            let back = *to_union.entry(cl).or_insert(cu);
            if fwd != cl || back != cu {
                return Err(SketchError::RestrictionMismatch { side, pair: (a, b) });
            }
        }
    }
    let mut q = BTreeMap::new();
    let range = u.side_range(side);
    for r3 in 0..hs.num_colors() as ColorId {
        let (a, b) = hs.representative(r3);
        let (ga, gb) = (u.global(side, a), u.global(side, b));
        for ((c1, c2), c) in h.path_counts(h.stable_index(), (ga, gb), range.clone()) {
            q.insert((to_local[&c1], to_local[&c2], r3), c);
        }
    }
    let reps: Vec<(u32, u32)> = (0..hs.num_colors() as ColorId).map(|c| hs.representative(c)).collect();
    Ok(build(&s, &reps, q))
}

fn build(s: &Structure, reps: &[(u32, u32)], q: BTreeMap<(ColorId, ColorId, ColorId), u32>) -> AlgebraicSketch {
    // Every colour refines each relation or is disjoint from it, so the
    // representative decides membership.
    let colors = reps
        .iter()
        .map(|&(a, b)| SketchColor {
            diagonal: a == b,
            refines: s
                .relations()
                .iter()
                .filter(|r| r.pairs.contains(&(a, b)))
                .map(|r| r.name.clone())
                .collect(),
        })
        .collect();
    AlgebraicSketch {
        tau: s.vocabulary(),
        colors,
        q,
    }
}

impl AlgebraicSketch {
    /// Canonical text form, byte-stable for diffing.
    pub fn to_text(&self) -> String {
        let names = |v: &[RelName]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        let mut out = format!("tau {}\n", names(&self.tau));
        for (i, c) in self.colors.iter().enumerate() {
            writeln!(out, "color {i} diag={} refines={}", u8::from(c.diagonal), names(&c.refines)).unwrap();
        }
        for (&(a, b, c), &n) in &self.q {
            writeln!(out, "q {a} {b} {c} {n}").unwrap();
        }
        out
    }

    pub fn intersection_number(&self, r1: ColorId, r2: ColorId, r3: ColorId) -> u32 {
        self.q.get(&(r1, r2, r3)).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::refine_union;
    use crate::structures::graph;

    fn k2() -> Structure {
        graph(2, &[(0, 1)])
    }

    fn c5() -> Structure {
        graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    }

    #[test]
    fn k1_sketch() {
        let s = graph(1, &[]);
        let sk = sketch(&s, &refine(&s));
        assert_eq!(sk.colors.len(), 1);
        assert!(sk.colors[0].diagonal);
        assert_eq!(sk.intersection_number(0, 0, 0), 1);
    }

    #[test]
    fn k2_has_no_triangles() {
        let s = k2();
        let h = refine(&s);
        let sk = sketch(&s, &h);
        let e = h.color(0, 1);
        let d = h.color(0, 0);
        assert_eq!(sk.intersection_number(e, e, e), 0);
        assert_eq!(sk.intersection_number(d, e, e), 1);
        assert_eq!(sk.intersection_number(e, e, d), 1);
        assert_eq!(sk.colors[e as usize].refines, vec![RelName::new("E")]);
    }

    #[test]
    fn relabeling_keeps_sketch_text() {
        let s = c5();
        let t = s.relabel(&[3, 0, 4, 1, 2]);
        assert_eq!(sketch(&s, &refine(&s)).to_text(), sketch(&t, &refine(&t)).to_text());
    }

    #[test]
    fn restriction_matches_standalone() {
        let prism = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        let k33 = graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        for (a, b) in [(c5(), c5()), (k2(), k2()), (prism.clone(), k33.clone())] {
            let u = UnionStructure::new(&a, &b).unwrap();
            let h = refine_union(&u);
            let l = restrict_sketch(&u, &h, Side::Left).unwrap();
            let r = restrict_sketch(&u, &h, Side::Right).unwrap();
            assert_eq!(l, sketch(&a, &refine(&a)));
            assert_eq!(r, sketch(&b, &refine(&b)));
        }
        let u = UnionStructure::new(&prism, &k33).unwrap();
        let h = refine_union(&u);
        assert_ne!(
            restrict_sketch(&u, &h, Side::Left).unwrap(),
            restrict_sketch(&u, &h, Side::Right).unwrap()
        );
    }
}
