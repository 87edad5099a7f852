//! Monomial-calculus derivations of the monomials of separated positions,
//! driven by the refinement history of the union.
//!
//! A position is a set of at most two pebbles `(v, w)`. It is separated at
//! layer `j` when the left tuple and the right tuple first get different
//! colours at layer `j`. Layer 0 separation is a failed local isomorphism
//! and is an axiom. Otherwise let `i = j − 1`; the tuples agree at layer `i`
//! but their path counts differ. If some `(s1, s2)` counted over middles on
//! the tuple's own side differs (`a` left middles against `b` right ones),
//! multiplying the row and column axioms of those middles into the
//! monomial and cancelling every term whose extended position is separated
//! before layer `j` leaves `(b − a)·X_π`. Otherwise the difference sits in
//! crossing colours, which means a diagonal colour of layer `≤ i` has
//! different sizes on the two sides, and the same row/column sums over that
//! colour give the constant 1.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::One;
use petgraph::graph::UnGraph;
use smallvec::SmallVec;
use thiserror::Error;

use crate::coherent::{first_difference, ColorHistory, ColorId};
use crate::polysys::{q, Monomial, PairTypes, Pebble, PisoSystem, Var, Q};
use crate::prooflog::ProofLog;
use crate::structures::{Side, UnionStructure};

/// A set of at most two pebbles, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(SmallVec<[Pebble; 2]>);

impl Position {
    pub fn new(pebbles: impl IntoIterator<Item = Pebble>) -> Self {
        let mut v: SmallVec<[Pebble; 2]> = pebbles.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(v.len() <= 2, "positions hold at most two pebbles");
        Position(v)
    }

    pub fn empty() -> Self {
        Position(SmallVec::new())
    }

    pub fn pebbles(&self) -> &[Pebble] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, w)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({v},{w})")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeriveError {
    #[error("position {0} is not separated")]
    NotSeparated(Position),
    #[error("pebble ({},{}) joins vertices of different colours; it has no variable", .0.0, .0.1)]
    NoVariable(Pebble),
    #[error("no sub-position of {0:?} is separated before layer {1}")]
    MeasureNotDecreasing(Vec<Pebble>, usize),
    #[error("deriving {0} needs a diagonal colour of different sizes, but the sides are meant to be equivalent")]
    CountingForbidden(Position),
    #[error("no diagonal colour of layer <= {0} has different sizes on the two sides")]
    NoDiagonalMismatch(usize),
    #[error("the sides are not distinguished")]
    SketchesEqual,
    #[error("oracle limited to {limit} vertices per side, got {got}")]
    SizeLimit { limit: usize, got: usize },
}

/// How the pebble variables of a level are named in the proof.
#[derive(Clone, Debug)]
pub enum VarNames {
    /// `x[v,w]` itself.
    Identity,
    /// Variables introduced by earlier lifts.
    Map(HashMap<Pebble, Var>),
}

/// One union structure with its axiom lines in a proof under construction.
pub struct Level<'a> {
    pub union: &'a UnionStructure,
    pub history: &'a ColorHistory,
    pub system: &'a PisoSystem,
    types: PairTypes,
    names: VarNames,
    /// Proof line of each axiom of `system`, once known.
    lines: Vec<Option<usize>>,
    /// Axioms are input axioms and may be logged on demand.
    input: bool,
    /// The sides are known to be equivalent; diagonal size mismatches cannot
    /// occur and are reported as errors.
    equivalent_sides: bool,
    memo: HashMap<Position, usize>,
    one: Option<usize>,
}

impl<'a> Level<'a> {
    /// A level whose axioms are the input axioms, logged when first used.
    pub fn input(union: &'a UnionStructure, history: &'a ColorHistory, system: &'a PisoSystem) -> Self {
        Level {
            union,
            history,
            system,
            types: PairTypes::new(union),
            names: VarNames::Identity,
            lines: vec![None; system.axioms.len()],
            input: true,
            equivalent_sides: false,
            memo: HashMap::new(),
            one: None,
        }
    }

    /// A level whose axioms were derived at `lines`, with variables `names`.
    pub fn derived(
        union: &'a UnionStructure,
        history: &'a ColorHistory,
        system: &'a PisoSystem,
        names: VarNames,
        lines: Vec<usize>,
    ) -> Self {
        assert_eq!(lines.len(), system.axioms.len());
        Level {
            union,
            history,
            system,
            types: PairTypes::new(union),
            names,
            lines: lines.into_iter().map(Some).collect(),
            input: false,
            equivalent_sides: false,
            memo: HashMap::new(),
            one: None,
        }
    }

    /// Forbids the diagonal-size route (used while lifting).
    pub fn with_equivalent_sides(mut self) -> Self {
        self.equivalent_sides = true;
        self
    }

    pub fn types(&self) -> &PairTypes {
        &self.types
    }

    pub fn var(&self, p: Pebble) -> Var {
        match &self.names {
            VarNames::Identity => Var::Orig(p.0, p.1),
            VarNames::Map(m) => *m.get(&p).unwrap_or_else(|| panic!("no variable for pebble {p:?}")),
        }
    }

    pub fn has_var(&self, p: Pebble) -> bool {
        self.types.same_colour(p.0, p.1)
    }

    fn right(&self, w: u32) -> u32 {
        self.union.global(Side::Right, w)
    }

    fn axiom_line(&mut self, log: &mut ProofLog, k: usize) -> usize {
        if let Some(l) = self.lines[k] {
            return l;
        }
        assert!(self.input, "derived level lacks the line of axiom {k}");
        let l = log.axiom(k, &self.system.axioms[k].poly);
        self.lines[k] = Some(l);
        l
    }

    pub fn row(&mut self, log: &mut ProofLog, w: u32) -> usize {
        self.axiom_line(log, self.system.row(w))
    }

    pub fn col(&mut self, log: &mut ProofLog, v: u32) -> usize {
        self.axiom_line(log, self.system.col(v))
    }

    /// First layer at which `pos` is separated.
    pub fn separation(&self, pos: &Position) -> Option<usize> {
        match *pos.pebbles() {
            [] => None,
            [(v, w)] => self.history.separation_layer((v, v), (self.right(w), self.right(w))),
            [(v, w), (v2, w2)] => self.history.separation_layer((v, v2), (self.right(w), self.right(w2))),
            _ => unreachable!(),
        }
    }

    fn monomial(&self, pebbles: &[Pebble]) -> Monomial {
        Monomial::from_vars(pebbles.iter().map(|&p| self.var(p)))
    }

    /// Derives the monomial of a separated position, as a line with
    /// coefficient 1.
    pub fn derive_monomial(&mut self, log: &mut ProofLog, pos: &Position) -> Result<usize, DeriveError> {
        if let Some(&l) = self.memo.get(pos) {
            return Ok(l);
        }
        if let Some(&p) = pos.pebbles().iter().find(|&&p| !self.has_var(p)) {
            return Err(DeriveError::NoVariable(p));
        }
        let layer = self.separation(pos).ok_or_else(|| DeriveError::NotSeparated(pos.clone()))?;
        let line = if layer == 0 {
            let [a, b] = *pos.pebbles() else {
                unreachable!("a single pebble with a variable is a local isomorphism")
            };
            let k = self.system.local(a, b).expect("layer-0 separation is a local axiom");
            self.axiom_line(log, k)
        } else {
            self.derive_by_counting(log, pos, layer)?
        };
        self.memo.insert(pos.clone(), line);
        Ok(line)
    }

    fn derive_by_counting(&mut self, log: &mut ProofLog, pos: &Position, layer: usize) -> Result<usize, DeriveError> {
        let i = layer - 1;
        let peb = pos.pebbles();
        let (l0, l1) = (peb[0].0, peb[peb.len() - 1].0);
        let (r0, r1) = (self.right(peb[0].1), self.right(peb[peb.len() - 1].1));
        let h = self.history;
        let left_counts = h.path_counts(i, (l0, l1), self.union.side_range(Side::Left));
        let right_counts = h.path_counts(i, (r0, r1), self.union.side_range(Side::Right));
        let Some(((s1, s2), (a, b))) = first_difference(&left_counts, &right_counts) else {
            if self.equivalent_sides {
                return Err(DeriveError::CountingForbidden(pos.clone()));
            }
            let one = self.derive_one_at(log, i)?;
            let m = self.monomial(peb);
            return Ok(log.mul_monomial(one, &m));
        };
        let xs: Vec<u32> = self
            .union
            .side_range(Side::Left)
            .filter(|&x| h.color_at(i, l0, x) == s1 && h.color_at(i, x, l1) == s2)
            .collect();
        let ys: Vec<u32> = self
            .union
            .side_range(Side::Right)
            .filter(|&y| h.color_at(i, r0, y) == s1 && h.color_at(i, y, r1) == s2)
            .map(|y| self.union.local(y))
            .collect();
        let ys_set: HashSet<u32> = ys.iter().copied().collect();
        let xs_set: HashSet<u32> = xs.iter().copied().collect();
        let m = self.monomial(peb);
        let right_size = self.union.right_size() as u32;
        let left_size = self.union.left_size as u32;
        let mut parts: Vec<(usize, Q)> = Vec::new();
        for &x in &xs {
            let base = self.col(log, x);
            let base = log.mul_monomial(base, &m);
            let drop: Vec<u32> = (0..right_size).filter(|&y| !ys_set.contains(&y) && self.has_var((x, y))).collect();
            let cleaned = self.cancel(log, base, peb, drop.into_iter().map(|y| (x, y)), layer)?;
            parts.push((cleaned, Q::one()));
        }
        for &y in &ys {
            let base = self.row(log, y);
            let base = log.mul_monomial(base, &m);
            let drop: Vec<u32> = (0..left_size).filter(|&x| !xs_set.contains(&x) && self.has_var((x, y))).collect();
            let cleaned = self.cancel(log, base, peb, drop.into_iter().map(|x| (x, y)), layer)?;
            parts.push((cleaned, -Q::one()));
        }
        // Σ_x − Σ_y = (b − a)·X_π.
        let total = log.sum(&parts).expect("a differing count has a nonempty side");
        let diff = q(b as i64 - a as i64);
        Ok(log.scale(total, Q::one() / diff))
    }

    /// Subtracts `X_π · X_p` from line `base` for every extra pebble `p`.
    fn cancel(
        &mut self,
        log: &mut ProofLog,
        base: usize,
        peb: &[Pebble],
        extra: impl Iterator<Item = Pebble>,
        bound: usize,
    ) -> Result<usize, DeriveError> {
        let mut terms = Vec::new();
        for p in extra {
            let mut all: SmallVec<[Pebble; 3]> = peb.iter().copied().collect();
            all.push(p);
            terms.push((self.derive_term(log, &all, bound)?, Q::one()));
        }
        Ok(match log.sum(&terms) {
            Some(t) => log.lin(base, t, Q::one(), -Q::one()),
            None => base,
        })
    }

    /// Proof line of the local axiom on `{a, b}`, if there is one.
    pub fn local_line(&mut self, log: &mut ProofLog, a: Pebble, b: Pebble) -> Option<usize> {
        let k = self.system.local(a, b)?;
        Some(self.axiom_line(log, k))
    }

    /// Does some sub-position of the multiset `pebbles` separate?
    pub fn term_separated(&self, pebbles: &[Pebble]) -> bool {
        pebbles.iter().enumerate().any(|(i, &p)| {
            pebbles[i..].iter().any(|&p2| self.separation(&Position::new([p, p2])).is_some())
        })
    }

    /// `base − Σ c·Π X_t` over `terms`, each product derived through a
    /// separated sub-position.
    pub fn cancel_terms(
        &mut self,
        log: &mut ProofLog,
        base: usize,
        terms: &[(Vec<Pebble>, Q)],
    ) -> Result<usize, DeriveError> {
        let mut parts = Vec::with_capacity(terms.len());
        for (pebbles, c) in terms {
            parts.push((self.derive_term(log, pebbles, usize::MAX)?, c.clone()));
        }
        Ok(match log.sum(&parts) {
            Some(t) => log.lin(base, t, Q::one(), -Q::one()),
            None => base,
        })
    }

    /// Derives the product of the variables of `pebbles` (a multiset of up
    /// to three), through a sub-position separated before layer `bound`.
    pub fn derive_term(&mut self, log: &mut ProofLog, pebbles: &[Pebble], bound: usize) -> Result<usize, DeriveError> {
        let n = pebbles.len();
        let mut best: Option<(usize, SmallVec<[usize; 2]>)> = None;
        for i in 0..n {
            for k in i..n {
                if k > i && pebbles[k] == pebbles[i] {
                    continue;
                }
                let idx: SmallVec<[usize; 2]> = if k == i { [i].into_iter().collect() } else { [i, k].into_iter().collect() };
                let sub = Position::new(idx.iter().map(|&t| pebbles[t]));
                if let Some(l) = self.separation(&sub) {
                    if best.as_ref().is_none_or(|(bl, _)| l < *bl) {
                        best = Some((l, idx));
                    }
                }
            }
        }
        let Some((layer, idx)) = best.filter(|(l, _)| *l < bound) else {
            return Err(DeriveError::MeasureNotDecreasing(pebbles.to_vec(), bound));
        };
        let sub = Position::new(idx.iter().map(|&t| pebbles[t]));
        debug_assert!(self.separation(&sub) == Some(layer));
        let line = self.derive_monomial(log, &sub)?;
        let rest: Vec<Pebble> = (0..n).filter(|t| !idx.contains(t)).map(|t| pebbles[t]).collect();
        Ok(log.mul_monomial(line, &self.monomial(&rest)))
    }

    /// Derives 1 from a diagonal colour of layer `<= i` whose sides differ
    /// in size, taking the earliest such layer.
    pub fn derive_one_at(&mut self, log: &mut ProofLog, i: usize) -> Result<usize, DeriveError> {
        if let Some(l) = self.one {
            return Ok(l);
        }
        let (layer, d) = self.diagonal_mismatch(i).ok_or(DeriveError::NoDiagonalMismatch(i))?;
        let h = self.history;
        let xs: Vec<u32> = self.union.side_range(Side::Left).filter(|&x| h.color_at(layer, x, x) == d).collect();
        let ys: Vec<u32> = self
            .union
            .side_range(Side::Right)
            .filter(|&y| h.color_at(layer, y, y) == d)
            .map(|y| self.union.local(y))
            .collect();
        let (p, qn) = (xs.len() as i64, ys.len() as i64);
        let (xs_set, ys_set): (HashSet<u32>, HashSet<u32>) = (xs.iter().copied().collect(), ys.iter().copied().collect());
        let right_size = self.union.right_size() as u32;
        let left_size = self.union.left_size as u32;
        let mut parts = Vec::new();
        for &x in &xs {
            let base = self.col(log, x);
            let drop: Vec<u32> = (0..right_size).filter(|&y| !ys_set.contains(&y) && self.has_var((x, y))).collect();
            let cleaned = self.cancel(log, base, &[], drop.into_iter().map(|y| (x, y)), layer + 1)?;
            parts.push((cleaned, Q::one()));
        }
        for &y in &ys {
            let base = self.row(log, y);
            let drop: Vec<u32> = (0..left_size).filter(|&x| !xs_set.contains(&x) && self.has_var((x, y))).collect();
            let cleaned = self.cancel(log, base, &[], drop.into_iter().map(|x| (x, y)), layer + 1)?;
            parts.push((cleaned, -Q::one()));
        }
        // (S − p) − (S − q) = q − p.
        let total = log.sum(&parts).expect("a mismatched colour is nonempty");
        let line = log.scale(total, Q::one() / q(qn - p));
        debug_assert!(log.line(line).is_one());
        self.one = Some(line);
        Ok(line)
    }

    /// Earliest `(layer, colour)` with `layer <= i` of a diagonal colour with
    /// different sizes on the two sides.
    fn diagonal_mismatch(&self, i: usize) -> Option<(usize, ColorId)> {
        let h = self.history;
        (0..=i.min(h.stable_index())).find_map(|layer| {
            let mut counts: HashMap<ColorId, (i64, i64)> = HashMap::new();
            for v in 0..self.union.len() as u32 {
                let e = counts.entry(h.color_at(layer, v, v)).or_default();
                match self.union.side_of(v) {
                    Side::Left => e.0 += 1,
                    Side::Right => e.1 += 1,
                }
            }
            counts
                .into_iter()
                .filter(|(_, (a, b))| a != b)
                .map(|(c, _)| c)
                .min()
                .map(|c| (layer, c))
        })
    }

    /// Derives 1 when the sides are distinguished.
    pub fn derive_one(&mut self, log: &mut ProofLog) -> Result<usize, DeriveError> {
        let stable = self.history.stable_index();
        if self.diagonal_mismatch(stable).is_some() {
            return self.derive_one_at(log, stable);
        }
        self.derive_one_from_pair_colour(log)
    }

    /// A stable off-diagonal colour present on one side only: for `(v, v')`
    /// of that colour every `X_vw·X_v'w'` is separated, so `X_vw·COL(v')`
    /// reduces to `−X_vw`, and summing over `w` against `COL(v)` gives 1.
    fn derive_one_from_pair_colour(&mut self, log: &mut ProofLog) -> Result<usize, DeriveError> {
        let h = self.history;
        let one_sided = (0..h.num_colors() as ColorId)
            .filter(|&c| !h.is_crossing(c))
            .find_map(|c| match h.side_counts(c) {
                (a, 0) if a > 0 => Some((c, Side::Left)),
                (0, b) if b > 0 => Some((c, Side::Right)),
                _ => None,
            })
            .ok_or(DeriveError::SketchesEqual)?;
        let (c, side) = one_sided;
        let (g0, g1) = h
            .pairs_of(c)
            .into_iter()
            .find(|&(a, _)| self.union.side_of(a) == side)
            .unwrap();
        let (a0, a1) = (self.union.local(g0), self.union.local(g1));
        let other = match side {
            Side::Left => self.union.right_size() as u32,
            Side::Right => self.union.left_size as u32,
        };
        let bound = h.stable_index() + 1;
        let pebble = |mine: u32, theirs: u32| match side {
            Side::Left => (mine, theirs),
            Side::Right => (theirs, mine),
        };
        let mut parts = Vec::new();
        let partners: Vec<u32> = (0..other).filter(|&t| self.has_var(pebble(a0, t))).collect();
        for t in partners {
            let axiom = match side {
                Side::Left => self.col(log, a1),
                Side::Right => self.row(log, a1),
            };
            let base = log.mul(axiom, self.var(pebble(a0, t)));
            let drop: Vec<Pebble> = (0..other).filter(|&t2| self.has_var(pebble(a1, t2))).map(|t2| pebble(a1, t2)).collect();
            let cleaned = self.cancel(log, base, &[pebble(a0, t)], drop.into_iter(), bound)?;
            parts.push((cleaned, Q::one()));
        }
        let axiom = match side {
            Side::Left => self.col(log, a0),
            Side::Right => self.row(log, a0),
        };
        parts.push((axiom, Q::one()));
        let total = log.sum(&parts).unwrap();
        let line = log.scale(total, -Q::one());
        debug_assert!(log.line(line).is_one());
        self.one = Some(line);
        Ok(line)
    }
}

/// Positions (plus the empty one) from which the first player wins the
/// bijective three-pebble game on the two sides. Winning positions of size
/// at most two are closed under: some vertex on either side makes every
/// extension fail, or every bijection offered by the second player has a
/// pair completing `π` into a losing position.
pub fn derivable_closure_oracle(u: &UnionStructure) -> Result<BTreeSet<Position>, DeriveError> {
    const LIMIT: usize = 8;
    let (nl, nr) = (u.left_size as u32, u.right_size() as u32);
    let got = (nl as usize).max(nr as usize);
    if got > LIMIT {
        return Err(DeriveError::SizeLimit { limit: LIMIT, got });
    }
    let types = PairTypes::new(u);
    let pebbles: Vec<Pebble> = (0..nl).flat_map(|v| (0..nr).map(move |w| (v, w))).collect();
    let mut positions = vec![Position::empty()];
    for (i, &a) in pebbles.iter().enumerate() {
        positions.push(Position::new([a]));
        for &b in &pebbles[i + 1..] {
            positions.push(Position::new([a, b]));
        }
    }
    let base_win = |pos: &Position| match *pos.pebbles() {
        [] => false,
        [a] => !types.same_colour(a.0, a.1),
        [a, b] => !types.same_colour(a.0, a.1) || !types.same_colour(b.0, b.1) || !types.local_iso(a, b),
        _ => unreachable!(),
    };
    let mut win: HashSet<Position> = positions.iter().filter(|p| base_win(p)).cloned().collect();
    loop {
        let mut added = Vec::new();
        for pos in positions.iter().filter(|p| !win.contains(*p)) {
            // A pair (x, y) is safe for the second player when no sub-position
            // of π ∪ {(x, y)} is winning.
            let safe = |x: u32, y: u32| {
                let mut all: SmallVec<[Pebble; 3]> = pos.pebbles().iter().copied().collect();
                all.push((x, y));
                (0..all.len()).all(|i| {
                    (i..all.len()).all(|k| !win.contains(&Position::new([all[i], all[k]])))
                })
            };
            let mut g: UnGraph<(), ()> = UnGraph::default();
            let ln: Vec<_> = (0..nl).map(|_| g.add_node(())).collect();
            let rn: Vec<_> = (0..nr).map(|_| g.add_node(())).collect();
            for x in 0..nl {
                for y in 0..nr {
                    if safe(x, y) {
                        g.add_edge(ln[x as usize], rn[y as usize], ());
                    }
                }
            }
            if nl != nr || !petgraph::algo::maximum_matching(&g).is_perfect() {
                added.push(pos.clone());
            }
        }
        if added.is_empty() {
            break;
        }
        win.extend(added);
    }
    Ok(win.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::refine_union;
    use crate::polysys::piso;
    use crate::polysys::Polynomial;
    use crate::prooflog::{check, Mode};
    use crate::structures::{graph, Structure};

    fn prism() -> Structure {
        graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    }

    fn k33() -> Structure {
        graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
    }

    #[test]
    fn prism_k33_edge_position_is_derived() {
        let u = UnionStructure::new(&prism(), &k33()).unwrap();
        let h = refine_union(&u);
        let sys = piso(&u);
        let mut log = ProofLog::new(Mode::Mc3, false);
        let mut lv = Level::input(&u, &h, &sys);
        let pos = Position::new([(0, 0), (1, 3)]);
        assert_eq!(lv.separation(&pos), Some(1));
        let l = lv.derive_monomial(&mut log, &pos).unwrap();
        assert_eq!(*log.line(l), Polynomial::monomial(Monomial::from_vars([Var::Orig(0, 0), Var::Orig(1, 3)])));
        check(&log.proof, &sys.polys()).unwrap();
    }

    #[test]
    fn two_left_vertices_on_one_right_vertex_is_an_axiom() {
        let u = UnionStructure::new(&prism(), &k33()).unwrap();
        let h = refine_union(&u);
        let sys = piso(&u);
        let mut log = ProofLog::new(Mode::Mc3, false);
        let mut lv = Level::input(&u, &h, &sys);
        lv.derive_monomial(&mut log, &Position::new([(0, 0), (1, 0)])).unwrap();
        assert_eq!(log.len(), 1);
        assert!(matches!(log.proof.steps[0].rule, crate::prooflog::Rule::Axiom(_)));
    }

    #[test]
    fn prism_k33_refuted_in_mc3() {
        let u = UnionStructure::new(&prism(), &k33()).unwrap();
        let h = refine_union(&u);
        let sys = piso(&u);
        let mut log = ProofLog::new(Mode::Mc3, false);
        let mut lv = Level::input(&u, &h, &sys);
        lv.derive_one(&mut log).unwrap();
        assert!(check(&log.proof, &sys.polys()).unwrap().refutation);
    }

    #[test]
    fn isomorphic_sides_are_not_refuted() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let u = UnionStructure::new(&c5, &c5.relabel(&[2, 4, 1, 0, 3])).unwrap();
        let h = refine_union(&u);
        let sys = piso(&u);
        let mut log = ProofLog::new(Mode::Mc3, false);
        assert_eq!(Level::input(&u, &h, &sys).derive_one(&mut log), Err(DeriveError::SketchesEqual));
    }

    #[test]
    fn oracle_small_cases() {
        let k1 = graph(1, &[]);
        let u = UnionStructure::new(&k1, &k1).unwrap();
        assert!(derivable_closure_oracle(&u).unwrap().is_empty());
        let k2 = graph(2, &[(0, 1)]);
        let u = UnionStructure::new(&k2, &k2).unwrap();
        let w = derivable_closure_oracle(&u).unwrap();
        assert!(!w.contains(&Position::empty()));
        assert!(w.contains(&Position::new([(0, 0), (0, 1)])));
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let s4 = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let u = UnionStructure::new(&p4, &s4).unwrap();
        assert!(derivable_closure_oracle(&u).unwrap().contains(&Position::empty()));
    }
}
