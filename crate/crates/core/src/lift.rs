//! Lifting: after a `pair` or `scc` step, derive every axiom of the next
//! state's system from the previous state's axiom lines, introducing one
//! extension variable per pebble on two new vertices.
//!
//! Pebbles on two kept vertices keep their old variable. A pebble on two
//! new vertices gets `e = X_{p1}·X_{p2}` (pair step, `p1`, `p2` the pebbles
//! on the parents) or `e = (1/n)·Σ X_p` over the pebbles between the two
//! contracted components (scc step). Pebbles joining a kept and a new
//! vertex have no variable: the new vertices carry a fresh diagonal
//! relation. The lifted lines are compared with the next system after
//! renaming, so a lift either reproduces it exactly or fails.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use thiserror::Error;

use crate::coherent::ColorId;
use crate::derive::{DeriveError, Level, VarNames};
use crate::dwl::{CloudState, Op, Provenance};
use crate::polysys::{color_count_mismatch, q, Monomial, Pebble, PisoSystem, Polynomial, Var, AxiomKind, Q};
use crate::prooflog::ProofLog;
use crate::structures::Side;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("the state was not produced by a pair or scc step")]
    NoOrigin,
    #[error("vertex colour class sizes differ between the sides")]
    ColorCountMismatch,
    #[error("pebble ({},{}) has a variable but joins a kept and a new vertex", .0.0, .0.1)]
    MixedPebble(Pebble),
    #[error("new pebble ({},{}) has sources of different colours", .0.0, .0.1)]
    SourceMismatch(Pebble),
    #[error("kept pebbles {0:?} and {1:?} lost their local axiom")]
    MissingLocal(Pebble, Pebble),
    #[error("{count} extension variables exceed the bound {bound}")]
    TooManyExtensions { count: usize, bound: usize },
    #[error("lifted axiom {index} reads `{got}`, expected `{expected}`")]
    Unfaithful { index: usize, expected: String, got: String },
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

/// Definition of an extension variable over previous-state pebbles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Product(Pebble, Pebble),
    Average(Vec<Pebble>),
}

impl Descriptor {
    /// `f = Σ c · Π X_p`.
    pub fn terms(&self) -> Vec<(Vec<Pebble>, Q)> {
        match self {
            Descriptor::Product(a, b) => vec![(vec![*a, *b], Q::one())],
            Descriptor::Average(ps) => {
                let n = (ps.len() as f64).sqrt().round() as i64;
                let c = Q::one() / q(n);
                ps.iter().map(|&p| (vec![p], c.clone())).collect()
            }
        }
    }
}

/// Correspondence between the vertices of two consecutive states.
#[derive(Clone, Debug)]
pub struct LiftPlan {
    pub op: Op,
    pub color: ColorId,
    /// Per side: next-local index to previous-local index of kept vertices.
    kept: [Vec<Option<u32>>; 2],
    /// Per side: next-local new vertex to its previous-local sources.
    sources: [BTreeMap<u32, Vec<u32>>; 2],
}

fn idx(side: Side) -> usize {
    match side {
        Side::Left => 0,
        Side::Right => 1,
    }
}

fn other(side: Side) -> Side {
    match side {
        Side::Left => Side::Right,
        Side::Right => Side::Left,
    }
}

/// The pebble with `t` on `side` and `o` on the other side.
fn peb(side: Side, t: u32, o: u32) -> Pebble {
    match side {
        Side::Left => (t, o),
        Side::Right => (o, t),
    }
}

impl LiftPlan {
    /// Provenance holds previous-union indices; the previous side sizes
    /// suffice to make them side-local.
    pub fn new(prev_sizes: (usize, usize), next: &CloudState) -> Result<LiftPlan, LiftError> {
        let left = prev_sizes.0 as u32;
        let to_local = |j: u32| if j < left { j } else { j - left };
        let (op, color) = next.origin.ok_or(LiftError::NoOrigin)?;
        let mut kept = [vec![None; next.union.left_size], vec![None; next.union.right_size()]];
        let mut sources = [BTreeMap::new(), BTreeMap::new()];
        for (g, p) in next.provenance.iter().enumerate() {
            let side = next.union.side_of(g as u32);
            let local = next.union.local(g as u32);
            match p {
                Provenance::Original(j) => kept[idx(side)][local as usize] = Some(to_local(*j)),
                Provenance::Pair { parents: (a, b), .. } => {
                    sources[idx(side)].insert(local, vec![to_local(*a), to_local(*b)]);
                }
                Provenance::Scc { members, .. } => {
                    sources[idx(side)].insert(local, members.iter().map(|&m| to_local(m)).collect());
                }
            }
        }
        Ok(LiftPlan {
            op,
            color,
            kept,
            sources,
        })
    }

    pub fn new_vertices(&self, side: Side) -> impl Iterator<Item = u32> + '_ {
        self.sources[idx(side)].keys().copied()
    }

    fn descriptor(&self, v: u32, w: u32) -> Descriptor {
        let (sv, sw) = (&self.sources[0][&v], &self.sources[1][&w]);
        match self.op {
            Op::Pair => Descriptor::Product((sv[0], sw[0]), (sv[1], sw[1])),
            Op::Scc => Descriptor::Average(sv.iter().flat_map(|&a| sw.iter().map(move |&b| (a, b))).collect()),
        }
    }

    /// Previous-local vertices on `side` that survive the step.
    fn kept_prev(&self, side: Side) -> impl Iterator<Item = u32> + '_ {
        self.kept[idx(side)].iter().flatten().copied()
    }
}

/// Axiom lines and variable names of the next state.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub names: VarNames,
    pub lines: Vec<usize>,
    pub extensions: usize,
}

struct Ext {
    var: Var,
    line: usize,
    descriptor: Descriptor,
}

struct Lifter<'l, 'a> {
    prev: &'l mut Level<'a>,
    log: &'l mut ProofLog,
    plan: &'l LiftPlan,
    exts: BTreeMap<Pebble, Ext>,
}

/// Derives the axioms of `next`'s system from the axiom lines of `prev`,
/// whose sides must be equivalent.
pub fn lift(prev: &mut Level, next: &CloudState, next_sys: &PisoSystem, log: &mut ProofLog) -> Result<Lifted, LiftError> {
    if color_count_mismatch(prev.union) {
        return Err(LiftError::ColorCountMismatch);
    }
    let prev_state_sizes = (prev.union.left_size, prev.union.right_size());
    let plan = LiftPlan::new(prev_state_sizes, next)?;
    let mut lifter = Lifter {
        prev,
        log,
        plan: &plan,
        exts: BTreeMap::new(),
    };
    lifter.introduce_extensions()?;
    let bound = next.union.left_size.pow(2);
    if lifter.exts.len() > bound {
        return Err(LiftError::TooManyExtensions {
            count: lifter.exts.len(),
            bound,
        });
    }
    let names = lifter.names(next)?;
    let mut lines = Vec::with_capacity(next_sys.axioms.len());
    for axiom in &next_sys.axioms {
        let line = match axiom.kind {
            AxiomKind::Row(w) => lifter.sum_axiom(Side::Right, w)?,
            AxiomKind::Col(v) => lifter.sum_axiom(Side::Left, v)?,
            AxiomKind::Local(a, b) => lifter.local_axiom(a, b)?,
        };
        lines.push(line);
    }
    let extensions = lifter.exts.len();
    let lifted = Lifted {
        names: VarNames::Map(names),
        lines,
        extensions,
    };
    verify_faithful(next_sys, &lifted, log)?;
    Ok(lifted)
}

/// Checks that every lifted line, read back through the variable names, is
/// byte-identical to the corresponding axiom of `next_sys`.
pub fn verify_faithful(next_sys: &PisoSystem, lifted: &Lifted, log: &ProofLog) -> Result<(), LiftError> {
    let VarNames::Map(names) = &lifted.names else {
        return Ok(());
    };
    let rename = |x: Var| match x {
        Var::Orig(v, w) => names[&(v, w)],
        e => e,
    };
    for (index, (axiom, &line)) in next_sys.axioms.iter().zip(&lifted.lines).enumerate() {
        let expected = axiom.poly.rename(rename).to_string();
        let got = log.line(line).to_string();
        if expected != got {
            return Err(LiftError::Unfaithful { index, expected, got });
        }
    }
    Ok(())
}

impl Lifter<'_, '_> {
    fn var(&self, p: Pebble) -> Var {
        self.prev.var(p)
    }

    fn size(&self, side: Side) -> u32 {
        match side {
            Side::Left => self.prev.union.left_size as u32,
            Side::Right => self.prev.union.right_size() as u32,
        }
    }

    /// Row (`side` right) or column (`side` left) axiom line of the
    /// previous state.
    fn prev_sum(&mut self, side: Side, t: u32) -> usize {
        match side {
            Side::Left => self.prev.col(self.log, t),
            Side::Right => self.prev.row(self.log, t),
        }
    }

    fn introduce_extensions(&mut self) -> Result<(), LiftError> {
        let lefts: Vec<u32> = self.plan.new_vertices(Side::Left).collect();
        let rights: Vec<u32> = self.plan.new_vertices(Side::Right).collect();
        for &v in &lefts {
            for &w in &rights {
                let descriptor = self.plan.descriptor(v, w);
                let mut f = Polynomial::zero();
                for (pebbles, c) in descriptor.terms() {
                    if !pebbles.iter().all(|&p| self.prev.has_var(p)) {
                        return Err(LiftError::SourceMismatch((v, w)));
                    }
                    f.add_term(Monomial::from_vars(pebbles.iter().map(|&p| self.var(p))), c);
                }
                let (var, line) = self.log.extend(f);
                self.exts.insert((v, w), Ext { var, line, descriptor });
            }
        }
        Ok(())
    }

    fn names(&self, next: &CloudState) -> Result<HashMap<Pebble, Var>, LiftError> {
        let types = crate::polysys::PairTypes::new(&next.union);
        let mut names = HashMap::new();
        for v in 0..next.union.left_size as u32 {
            for w in 0..next.union.right_size() as u32 {
                if !types.same_colour(v, w) {
                    continue;
                }
                let var = match (self.plan.kept[0][v as usize], self.plan.kept[1][w as usize]) {
                    (Some(pv), Some(pw)) if self.prev.has_var((pv, pw)) => self.var((pv, pw)),
                    (None, None) => self.exts.get(&(v, w)).ok_or(LiftError::MixedPebble((v, w)))?.var,
                    _ => return Err(LiftError::MixedPebble((v, w))),
                };
                names.insert((v, w), var);
            }
        }
        Ok(names)
    }

    /// Row or column axiom of next-local vertex `t` on `side`.
    fn sum_axiom(&mut self, side: Side, t: u32) -> Result<usize, LiftError> {
        match self.plan.kept[idx(side)][t as usize] {
            Some(tp) => self.kept_sum(side, tp),
            None => match self.plan.op {
                Op::Pair => self.pair_sum(side, t),
                Op::Scc => self.scc_sum(side, t),
            },
        }
    }

    /// A kept vertex: its old sum minus the variables towards contracted
    /// vertices, which have a different diagonal colour.
    fn kept_sum(&mut self, side: Side, tp: u32) -> Result<usize, LiftError> {
        let o = other(side);
        let base = self.prev_sum(side, tp);
        let kept: Vec<bool> = {
            let mut k = vec![false; self.size(o) as usize];
            for x in self.plan.kept_prev(o) {
                k[x as usize] = true;
            }
            k
        };
        let drop: Vec<(Vec<Pebble>, Q)> = (0..self.size(o))
            .filter(|&x| !kept[x as usize] && self.prev.has_var(peb(side, tp, x)))
            .map(|x| (vec![peb(side, tp, x)], Q::one()))
            .collect();
        Ok(self.prev.cancel_terms(self.log, base, &drop)?)
    }

    /// New vertex `t` with parents `(t1, t2)`:
    /// `Σ_{o1} X_{o1 t1}·S(t2) − Σ_{(o1,o2) ∉ R} X X + S(t1) + Σ_o ext(o, t)`
    /// equals `Σ_o e_{o t} − 1`.
    fn pair_sum(&mut self, side: Side, t: u32) -> Result<usize, LiftError> {
        let o = other(side);
        let (t1, t2) = {
            let s = &self.plan.sources[idx(side)][&t];
            (s[0], s[1])
        };
        let base = self.prev_sum(side, t2);
        let o1s: Vec<u32> = (0..self.size(o)).filter(|&x| self.prev.has_var(peb(side, t1, x))).collect();
        let o2s: Vec<u32> = (0..self.size(o)).filter(|&x| self.prev.has_var(peb(side, t2, x))).collect();
        let mut parts = Vec::new();
        for &o1 in &o1s {
            let x = self.var(peb(side, t1, o1));
            parts.push((self.log.mul(base, x), Q::one()));
        }
        let union = self.prev.union;
        let history = self.prev.history;
        let mut drop = Vec::new();
        for &o1 in &o1s {
            for &o2 in &o2s {
                if history.color(union.global(o, o1), union.global(o, o2)) != self.plan.color {
                    drop.push((vec![peb(side, t1, o1), peb(side, t2, o2)], Q::one()));
                }
            }
        }
        let mut total = Vec::new();
        if let Some(s) = self.log.sum(&parts) {
            total.push((self.prev.cancel_terms(self.log, s, &drop)?, Q::one()));
        }
        total.push((self.prev_sum(side, t1), Q::one()));
        total.extend(self.ext_lines_at(side, t));
        Ok(self.log.sum(&total).unwrap())
    }

    /// New vertex `t` contracting `T`: average the sums of `T` cleaned of
    /// kept partners, then trade the averages for extension variables.
    fn scc_sum(&mut self, side: Side, t: u32) -> Result<usize, LiftError> {
        let o = other(side);
        let members = self.plan.sources[idx(side)][&t].clone();
        let inv = Q::one() / q(members.len() as i64);
        let kept_o: Vec<u32> = self.plan.kept_prev(o).collect();
        let mut total = Vec::new();
        for &m in &members {
            let base = self.prev_sum(side, m);
            let drop: Vec<(Vec<Pebble>, Q)> = kept_o
                .iter()
                .filter(|&&x| self.prev.has_var(peb(side, m, x)))
                .map(|&x| (vec![peb(side, m, x)], Q::one()))
                .collect();
            total.push((self.prev.cancel_terms(self.log, base, &drop)?, inv.clone()));
        }
        total.extend(self.ext_lines_at(side, t));
        Ok(self.log.sum(&total).unwrap())
    }

    /// Extension lines of the new pebbles through new vertex `t` on `side`.
    fn ext_lines_at(&self, side: Side, t: u32) -> Vec<(usize, Q)> {
        self.plan
            .new_vertices(other(side))
            .map(|x| (self.exts[&peb(side, t, x)].line, Q::one()))
            .collect()
    }

    /// Old pebble of a next pebble on two kept vertices.
    fn kept_pebble(&self, p: Pebble) -> Option<Pebble> {
        Some((self.plan.kept[0][p.0 as usize]?, self.plan.kept[1][p.1 as usize]?))
    }

    fn local_axiom(&mut self, a: Pebble, b: Pebble) -> Result<usize, LiftError> {
        match (self.kept_pebble(a), self.kept_pebble(b)) {
            (Some(pa), Some(pb)) => self.prev.local_line(self.log, pa, pb).ok_or(LiftError::MissingLocal(pa, pb)),
            (None, Some(pb)) => self.ext_times_old(a, pb),
            (Some(pa), None) => self.ext_times_old(b, pa),
            (None, None) => self.ext_times_ext(a, b),
        }
    }

    /// `e_a · X_p` from `X_p · (e_a − f_a)` by cancelling `X_p · f_a`.
    fn ext_times_old(&mut self, a: Pebble, p: Pebble) -> Result<usize, LiftError> {
        let x = self.var(p);
        let ext = &self.exts[&a];
        let (line, terms) = (ext.line, ext.descriptor.terms());
        let base = self.log.mul(line, x);
        let drop: Vec<(Vec<Pebble>, Q)> = terms
            .into_iter()
            .map(|(mut ps, c)| {
                ps.push(p);
                (ps, -c)
            })
            .collect();
        Ok(self.prev.cancel_terms(self.log, base, &drop)?)
    }

    /// `e_a · e_b`: derive `e_a · f_b`, then add `e_a · (e_b − f_b)`.
    fn ext_times_ext(&mut self, a: Pebble, b: Pebble) -> Result<usize, LiftError> {
        for (x, y) in [(a, b), (b, a)] {
            if let Some(l) = self.ext_times_definition(x, y)? {
                let e_x = self.exts[&x].var;
                let tail = self.log.mul(self.exts[&y].line, e_x);
                return Ok(self.log.lin(l, tail, Q::one(), Q::one()));
            }
        }
        let pos: Vec<Pebble> = match &self.exts[&a].descriptor {
            Descriptor::Product(p1, p2) => vec![*p1, *p2],
            Descriptor::Average(ps) => ps.clone(),
        };
        Err(DeriveError::MeasureNotDecreasing(pos, usize::MAX).into())
    }

    /// `e_x · f_y`, or `None` if the needed products do not separate.
    fn ext_times_definition(&mut self, x: Pebble, y: Pebble) -> Result<Option<usize>, LiftError> {
        let fx = self.exts[&x].descriptor.terms();
        let separates = |lv: &Level, p: Pebble| fx.iter().all(|(ps, _)| lv.term_separated(&[ps.as_slice(), &[p]].concat()));
        match self.exts[&y].descriptor.clone() {
            Descriptor::Product(q1, q2) => {
                for (first, second) in [(q1, q2), (q2, q1)] {
                    if separates(self.prev, first) {
                        let l = self.ext_times_old(x, first)?;
                        return Ok(Some(self.log.mul(l, self.var(second))));
                    }
                }
                Ok(None)
            }
            Descriptor::Average(ps) => {
                if !ps.iter().all(|&p| separates(self.prev, p)) {
                    return Ok(None);
                }
                let inv = Q::one() / q((ps.len() as f64).sqrt().round() as i64);
                let mut parts = Vec::with_capacity(ps.len());
                for p in ps {
                    parts.push((self.ext_times_old(x, p)?, inv.clone()));
                }
                Ok(self.log.sum(&parts))
            }
        }
    }
}
