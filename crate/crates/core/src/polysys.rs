//! Sparse polynomials over the rationals and the isomorphism axiom system.
//!
//! Variables are `x[v,w]` (left vertex `v` maps to right vertex `w`, side-local
//! indices) and extension variables `e[k]`. Every variable has degree 1.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::structures::{Side, UnionStructure};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Orig(u32, u32),
    Ext(u32),
}

impl Var {
    pub fn is_ext(self) -> bool {
        matches!(self, Var::Ext(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Orig(v, w) => write!(f, "x[{v},{w}]"),
            Var::Ext(k) => write!(f, "e[{k}]"),
        }
    }
}

/// Sorted multiset of variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Var; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: SmallVec<[Var; 4]> = vars.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn times(&self, x: Var) -> Monomial {
        let mut v = self.0.clone();
        let at = v.partition_point(|&y| y <= x);
        v.insert(at, x);
        Monomial(v)
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        Monomial::from_vars(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self / d` when `d` divides `self`.
    pub fn divide(&self, d: &Monomial) -> Option<Monomial> {
        let mut rest = SmallVec::new();
        let mut j = 0;
        for &x in &self.0 {
            if j < d.0.len() && d.0[j] == x {
                j += 1;
            } else if j < d.0.len() && d.0[j] < x {
                return None;
            } else {
                rest.push(x);
            }
        }
        (j == d.0.len()).then_some(Monomial(rest))
    }

    /// Every sub-multiset, including `1` and `self`.
    pub fn divisors(&self) -> Vec<Monomial> {
        let k = self.0.len();
        let mut out: Vec<Monomial> = (0u32..1 << k)
            .map(|mask| Monomial((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, x: Var) -> bool {
        self.0.contains(&x)
    }
}

/// Graded order, higher degree first; within a degree the lexicographically
/// smaller variable list comes first. This is a monomial order, so the first
/// term of a product `m·p` is `m` times the first term of `p`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.len().cmp(&self.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Q>,
}

// `is_zero` is the emptiness test.
#[allow(clippy::len_without_is_empty)]
impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Q) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Polynomial::constant(Q::one())
    }

    pub fn var(x: Var) -> Self {
        Polynomial::term(Monomial::from_vars([x]), Q::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// First term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next()
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    /// The single monomial, if this polynomial is `c·m`.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Q)> {
        (self.terms.len() == 1).then(|| self.leading().unwrap())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.keys().flat_map(|m| m.vars().iter().copied())
    }

    pub fn scale(&self, a: &Q) -> Polynomial {
        if a.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * a)).collect(),
        }
    }

    pub fn add_scaled(p: &Polynomial, q: &Polynomial, a: &Q, b: &Q) -> Polynomial {
        let mut out = p.scale(a);
        if !b.is_zero() {
            for (m, c) in &q.terms {
                out.add_term(m.clone(), c * b);
            }
        }
        out
    }

    pub fn mul_var(&self, x: Var) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.times(x), c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(t, c)| (t.product(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.product(m2), c1 * c2);
            }
        }
        out
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_vars(m.vars().iter().map(|&x| f(x))), c.clone())),
        )
    }

    /// Evaluates with `value` giving each variable.
    pub fn eval_with(&self, mut value: impl FnMut(Var) -> Option<Q>) -> Option<Q> {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &x in m.vars() {
                t *= value(x)?;
            }
            total += t;
        }
        Some(total)
    }

    pub fn parse(text: &str) -> Result<Polynomial, String> {
        let t = text.trim();
        if t == "0" {
            return Ok(Polynomial::zero());
        }
        let mut p = Polynomial::zero();
        let mut seen = 0usize;
        for term in t.split(" + ") {
            let mut factors = term.split(" * ");
            let coef = parse_rational(factors.next().ok_or("empty term")?.trim())?;
            let vars: Vec<Var> = factors.map(|f| parse_var(f.trim())).collect::<Result<_, _>>()?;
            p.add_term(Monomial::from_vars(vars), coef);
            seen += 1;
        }
        if p.len() != seen {
            return Err("repeated monomial or zero coefficient".into());
        }
        Ok(p)
    }
}

pub fn parse_rational(s: &str) -> Result<Q, String> {
    let (n, d) = s.split_once('/').ok_or_else(|| format!("coefficient {s:?} is not num/den"))?;
    let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if !d.is_positive() {
        return Err(format!("denominator of {s:?} must be positive"));
    }
    Ok(Q::new(n, d))
}

pub fn format_rational(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_var(s: &str) -> Result<Var, String> {
    let bad = || format!("bad variable {s:?}");
    if let Some(rest) = s.strip_prefix("x[").and_then(|r| r.strip_suffix(']')) {
        let (v, w) = rest.split_once(',').ok_or_else(bad)?;
        Ok(Var::Orig(v.parse().map_err(|_| bad())?, w.parse().map_err(|_| bad())?))
    } else if let Some(rest) = s.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
        Ok(Var::Ext(rest.parse().map_err(|_| bad())?))
    } else {
        Err(bad())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&format_rational(c))?;
            for x in m.vars() {
                write!(f, " * {x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A pebble pair: left vertex `.0` placed on right vertex `.1`, side-local.
pub type Pebble = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomKind {
    /// `Σ_v x[v,w] − 1` for a right vertex `w`.
    Row(u32),
    /// `Σ_w x[v,w] − 1` for a left vertex `v`.
    Col(u32),
    /// `x[a]·x[b]` for a pair of pebbles that is not a local isomorphism; `a ≤ b`.
    Local(Pebble, Pebble),
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::Row(w) => write!(f, "row {w}"),
            AxiomKind::Col(v) => write!(f, "col {v}"),
            AxiomKind::Local(a, b) => write!(f, "local ({},{}) ({},{})", a.0, a.1, b.0, b.1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Axiom {
    pub kind: AxiomKind,
    pub poly: Polynomial,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("vertex colour class sizes differ between the sides")]
    ColorCountMismatch,
    #[error("assignment does not cover variable {0}")]
    IncompleteAssignment(Var),
}

/// Pair-level view of a union used for local-isomorphism tests.
pub struct PairTypes {
    n: usize,
    left: usize,
    types: Vec<u32>,
}

impl PairTypes {
    pub fn new(u: &UnionStructure) -> Self {
        let (types, _) = u.structure.membership_table();
        PairTypes {
            n: u.len(),
            left: u.left_size,
            types,
        }
    }

    fn t(&self, a: usize, b: usize) -> u32 {
        self.types[a * self.n + b]
    }

    /// `v ~ w`: same diagonal atomic type (same vertex colour).
    pub fn same_colour(&self, v: u32, w: u32) -> bool {
        let (a, b) = (v as usize, self.left + w as usize);
        self.t(a, a) == self.t(b, b)
    }

    /// Is `{p, p'}` a partial isomorphism (equality type plus every relation,
    /// both directions, including the diagonal)?
    pub fn local_iso(&self, p: Pebble, p2: Pebble) -> bool {
        let (v, w) = (p.0 as usize, self.left + p.1 as usize);
        let (v2, w2) = (p2.0 as usize, self.left + p2.1 as usize);
        (v == v2) == (w == w2)
            && self.t(v, v2) == self.t(w, w2)
            && self.t(v2, v) == self.t(w2, w)
            && self.t(v, v) == self.t(w, w)
            && self.t(v2, v2) == self.t(w2, w2)
    }
}

/// The axiom system `P_iso(G, H)` of a union: rows, then columns, then local
/// monomials in increasing pebble order.
#[derive(Clone, Debug)]
pub struct PisoSystem {
    pub axioms: Vec<Axiom>,
    pub color_count_mismatch: bool,
    left_size: usize,
    right_size: usize,
    local_index: HashMap<(Pebble, Pebble), usize>,
}

impl PisoSystem {
    pub fn polys(&self) -> Vec<Polynomial> {
        self.axioms.iter().map(|a| a.poly.clone()).collect()
    }

    pub fn row(&self, w: u32) -> usize {
        w as usize
    }

    pub fn col(&self, v: u32) -> usize {
        self.right_size + v as usize
    }

    pub fn local(&self, a: Pebble, b: Pebble) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.local_index.get(&key).copied()
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.left_size, self.right_size)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.axioms.iter().enumerate() {
            out.push_str(&format!("axiom {i} {} :: {}\n", a.kind, a.poly));
        }
        out
    }
}

/// Generates `P_iso` for the two sides of `u`.
pub fn piso(u: &UnionStructure) -> PisoSystem {
    let types = PairTypes::new(u);
    let (l, r) = (u.left_size as u32, u.right_size() as u32);
    let mut axioms = Vec::new();
    for w in 0..r {
        let mut p = Polynomial::constant(q(-1));
        for v in (0..l).filter(|&v| types.same_colour(v, w)) {
            p.add_term(Monomial::from_vars([Var::Orig(v, w)]), Q::one());
        }
        axioms.push(Axiom {
            kind: AxiomKind::Row(w),
            poly: p,
        });
    }
    for v in 0..l {
        let mut p = Polynomial::constant(q(-1));
        for w in (0..r).filter(|&w| types.same_colour(v, w)) {
            p.add_term(Monomial::from_vars([Var::Orig(v, w)]), Q::one());
        }
        axioms.push(Axiom {
            kind: AxiomKind::Col(v),
            poly: p,
        });
    }
    let vars: Vec<Pebble> = (0..l)
        .flat_map(|v| (0..r).map(move |w| (v, w)))
        .filter(|&(v, w)| types.same_colour(v, w))
        .collect();
    let mut local_index = HashMap::new();
    for (i, &a) in vars.iter().enumerate() {
        for &b in &vars[i..] {
            if !types.local_iso(a, b) {
                local_index.insert((a, b), axioms.len());
                axioms.push(Axiom {
                    kind: AxiomKind::Local(a, b),
                    poly: Polynomial::monomial(Monomial::from_vars([Var::Orig(a.0, a.1), Var::Orig(b.0, b.1)])),
                });
            }
        }
    }
    PisoSystem {
        axioms,
        color_count_mismatch: color_count_mismatch(u),
        left_size: l as usize,
        right_size: r as usize,
        local_index,
    }
}

/// Do the sides have different numbers of vertices of some vertex colour?
pub fn color_count_mismatch(u: &UnionStructure) -> bool {
    let (types, _) = u.structure.membership_table();
    let n = u.len();
    let mut counts: HashMap<u32, (usize, usize)> = HashMap::new();
    for v in 0..n as u32 {
        let e = counts.entry(types[v as usize * n + v as usize]).or_default();
        match u.side_of(v) {
            Side::Left => e.0 += 1,
            Side::Right => e.1 += 1,
        }
    }
    counts.values().any(|&(a, b)| a != b)
}

/// Assignment `x[v,w] = [iso(v) = w]` for a bijection `iso` from left to right.
pub fn iso_assignment(iso: &[u32]) -> impl Fn(Var) -> Option<Q> + '_ {
    move |x| match x {
        Var::Orig(v, w) => Some(if iso.get(v as usize) == Some(&w) { Q::one() } else { Q::zero() }),
        Var::Ext(_) => None,
    }
}

/// Evaluates `p`, resolving extension variables through `ext_defs` (`e[k]`
/// is defined by `ext_defs[k]`).
pub fn evaluate(
    p: &Polynomial,
    assignment: &dyn Fn(Var) -> Option<Q>,
    ext_defs: &[Polynomial],
) -> Result<Q, PolyError> {
    let mut cache: HashMap<u32, Q> = HashMap::new();
    eval_cached(p, assignment, ext_defs, &mut cache)
}

pub(crate) fn eval_cached(
    p: &Polynomial,
    assignment: &dyn Fn(Var) -> Option<Q>,
    ext_defs: &[Polynomial],
    cache: &mut HashMap<u32, Q>,
) -> Result<Q, PolyError> {
    let mut total = Q::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for &x in m.vars() {
            let val = match x {
                Var::Orig(..) => assignment(x).ok_or(PolyError::IncompleteAssignment(x))?,
                Var::Ext(k) => {
                    if let Some(v) = cache.get(&k) {
                        v.clone()
                    } else {
                        let def = ext_defs.get(k as usize).ok_or(PolyError::IncompleteAssignment(x))?;
                        let v = eval_cached(def, assignment, ext_defs, cache)?;
                        cache.insert(k, v.clone());
                        v
                    }
                }
            };
            t *= val;
        }
        total += t;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{graph, Structure};

    fn x(v: u32, w: u32) -> Var {
        Var::Orig(v, w)
    }

    fn vp(v: Var) -> Polynomial {
        Polynomial::var(v)
    }

    #[test]
    fn add_scaled_examples() {
        let xp = vp(x(0, 0));
        let yp = vp(x(0, 1));
        assert!(Polynomial::add_scaled(&xp, &xp, &q(1), &q(-1)).is_zero());
        let xy = Polynomial::add_scaled(&xp, &yp, &q(1), &q(1));
        assert_eq!(Polynomial::add_scaled(&xy, &yp, &q(1), &q(-1)), xp);
        let m = Polynomial::monomial(Monomial::from_vars([x(0, 0), x(0, 1)]));
        let a = m.scale(&q_frac(3, 2));
        assert!(Polynomial::add_scaled(&a, &m, &q(2), &q(-3)).is_zero());
    }

    #[test]
    fn mul_var_examples() {
        let xv = x(1, 1);
        assert_eq!(Polynomial::one().mul_var(xv), vp(xv));
        let p = Polynomial::add_scaled(&vp(xv), &Polynomial::one(), &q(1), &q(-1));
        let sq = p.mul_var(xv);
        assert_eq!(sq.to_string(), "1/1 * x[1,1] * x[1,1] + -1/1 * x[1,1]");
        let xyz = Polynomial::monomial(Monomial::from_vars([x(0, 0), x(0, 1)])).mul_var(x(0, 2));
        assert_eq!(xyz.degree(), 3);
    }

    #[test]
    fn evaluate_examples() {
        let p = Polynomial::add_scaled(&vp(x(0, 0)), &Polynomial::one(), &q(1), &q(-1));
        let one = |_| Some(q(1));
        assert_eq!(evaluate(&p, &one, &[]).unwrap(), q(0));
        let f = Polynomial::monomial(Monomial::from_vars([x(0, 0), x(1, 1)]));
        let ext = Polynomial::add_scaled(&vp(Var::Ext(0)), &f, &q(1), &q(-1));
        let a = |v: Var| match v {
            Var::Orig(0, 0) => Some(q(1)),
            _ => Some(q(0)),
        };
        assert_eq!(evaluate(&ext, &a, &[f]).unwrap(), q(0));
        let avg = Polynomial::from_terms((0..4).map(|i| (Monomial::from_vars([x(i, 0)]), q_frac(1, 2))));
        let two = |v: Var| match v {
            Var::Orig(0, _) | Var::Orig(1, _) => Some(q(1)),
            _ => Some(q(0)),
        };
        assert_eq!(evaluate(&avg, &two, &[]).unwrap(), q(1));
        assert_eq!(
            evaluate(&vp(x(0, 0)), &|_| None, &[]),
            Err(PolyError::IncompleteAssignment(x(0, 0)))
        );
    }

    #[test]
    fn text_round_trip() {
        let p = Polynomial::from_terms([
            (Monomial::from_vars([x(0, 1), Var::Ext(3)]), q_frac(-2, 3)),
            (Monomial::one(), q(5)),
            (Monomial::from_vars([x(2, 2)]), q(1)),
        ]);
        let s = p.to_string();
        assert_eq!(s, "-2/3 * x[0,1] * e[3] + 1/1 * x[2,2] + 5/1");
        assert_eq!(Polynomial::parse(&s).unwrap(), p);
        assert_eq!(Polynomial::parse("0").unwrap(), Polynomial::zero());
        assert!(Polynomial::parse("1/0").is_err());
    }

    #[test]
    fn leading_term_is_multiplicative() {
        let p = Polynomial::from_terms([
            (Monomial::from_vars([x(0, 1)]), q(1)),
            (Monomial::from_vars([x(0, 2)]), q(1)),
            (Monomial::one(), q(-1)),
        ]);
        let m = Monomial::from_vars([x(0, 3), x(1, 0)]);
        let pm = p.mul_monomial(&m);
        assert_eq!(pm.leading().unwrap().0, &p.leading().unwrap().0.product(&m));
    }

    #[test]
    fn k1_system_has_one_row_and_one_column() {
        let k1 = Structure::parse("structure n=1\n").unwrap();
        let u = UnionStructure::new(&k1, &k1).unwrap();
        let s = piso(&u);
        assert_eq!(s.axioms.len(), 2);
        assert_eq!(s.axioms[0].poly.to_string(), "1/1 * x[0,0] + -1/1");
        assert_eq!(s.axioms[0].poly, s.axioms[1].poly);
    }

    /// Recounts local axioms over all 4-tuples, deduplicated as unordered pairs.
    fn local_count_by_enumeration(g: &Structure, h: &Structure) -> usize {
        let rel = |s: &Structure, a: u32, b: u32| s.relations()[0].pairs.contains(&(a, b));
        let (n, m) = (g.len() as u32, h.len() as u32);
        let mut seen = std::collections::BTreeSet::new();
        for v in 0..n {
            for w in 0..m {
                for v2 in 0..n {
                    for w2 in 0..m {
                        let bad = (v == v2) != (w == w2) || rel(g, v, v2) != rel(h, w, w2) || rel(g, v2, v) != rel(h, w2, w);
                        if bad {
                            let key = std::cmp::min(((v, w), (v2, w2)), ((v2, w2), (v, w)));
                            seen.insert(key);
                        }
                    }
                }
            }
        }
        seen.len()
    }

    #[test]
    fn local_axiom_counts_match_enumeration() {
        let k2 = graph(2, &[(0, 1)]);
        let prism = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        let k33 = graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        for (g, h) in [(&k2, &k2), (&prism, &k33)] {
            let s = piso(&UnionStructure::new(g, h).unwrap());
            let rows = s.axioms.iter().filter(|a| matches!(a.kind, AxiomKind::Row(_))).count();
            let cols = s.axioms.iter().filter(|a| matches!(a.kind, AxiomKind::Col(_))).count();
            let locals = s.axioms.len() - rows - cols;
            assert_eq!((rows, cols), (h.len(), g.len()));
            assert_eq!(locals, local_count_by_enumeration(g, h));
        }
    }
}
