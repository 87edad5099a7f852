//! Proofs in the monomial, polynomial and extended polynomial calculus with
//! degree at most 3, the line-oriented proof file, and a checker that
//! recomputes every line from its justification.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polysys::{eval_cached, parse_var, Monomial, PolyError, Polynomial, Var, Q};

pub const MAX_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Mc3,
    Pc3,
    Epc3,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Mc3 => "mc3",
            Mode::Pc3 => "pc3",
            Mode::Epc3 => "epc3",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "mc3" => Some(Mode::Mc3),
            "pc3" => Some(Mode::Pc3),
            "epc3" => Some(Mode::Epc3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Input axiom by index.
    Axiom(usize),
    /// `x² − x` for an original variable.
    Boolean(Var),
    /// `x · p_j`.
    Mul(usize, Var),
    /// `a · p_i + b · p_j`.
    Lin(usize, usize, Q, Q),
    /// `e[k] − f_k`.
    Ext(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub mode: Mode,
    pub restricted: bool,
    /// `ext_defs[k]` defines `e[k]`.
    pub ext_defs: Vec<Polynomial>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("step {step}: bad premise: {reason}")]
    BadPremise { step: usize, reason: String },
    #[error("step {step}: degree {degree} exceeds {MAX_DEGREE}")]
    DegreeExceeded { step: usize, degree: usize },
    #[error("step {step}: extension variable e[{ext}] is not fresh")]
    NotFresh { step: usize, ext: u32 },
    #[error("step {step}: bad extension: {reason}")]
    BadExtForm { step: usize, reason: String },
    #[error("step {step}: multiplied line is neither a monomial nor a monomial times an axiom")]
    McMulViolation { step: usize },
    #[error("step {step}: polynomial does not follow from its justification")]
    PolyMismatch { step: usize },
}

impl CheckError {
    pub fn step(&self) -> usize {
        match *self {
            CheckError::BadPremise { step, .. }
            | CheckError::DegreeExceeded { step, .. }
            | CheckError::NotFresh { step, .. }
            | CheckError::BadExtForm { step, .. }
            | CheckError::McMulViolation { step }
            | CheckError::PolyMismatch { step } => step,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CheckError::BadPremise { .. } => "BAD_PREMISE",
            CheckError::DegreeExceeded { .. } => "DEGREE_EXCEEDED",
            CheckError::NotFresh { .. } => "NOT_FRESH",
            CheckError::BadExtForm { .. } => "BAD_EXT_FORM",
            CheckError::McMulViolation { .. } => "MC_MUL_VIOLATION",
            CheckError::PolyMismatch { .. } => "POLY_MISMATCH",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Metrics {
    pub steps: usize,
    /// Monomial occurrences summed over all lines.
    pub size: usize,
    /// Largest `bits(numerator) + bits(denominator)` over all coefficients.
    pub bits: u64,
    pub extensions: usize,
    pub max_degree: usize,
}

impl Metrics {
    pub fn to_text(&self) -> String {
        format!(
            "steps={} size={} bits={} extensions={} max_degree={}",
            self.steps, self.size, self.bits, self.extensions, self.max_degree
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub refutation: bool,
    pub metrics: Metrics,
}

pub fn coefficient_bits(c: &Q) -> u64 {
    c.numer().bits() + c.denom().bits()
}

pub fn metrics(proof: &Proof) -> Metrics {
    let mut m = Metrics {
        steps: proof.steps.len(),
        ..Metrics::default()
    };
    for s in &proof.steps {
        m.size += s.poly.len();
        m.max_degree = m.max_degree.max(s.poly.degree());
        for (_, c) in s.poly.terms() {
            m.bits = m.bits.max(coefficient_bits(c));
        }
        if matches!(s.rule, Rule::Ext(_)) {
            m.extensions += 1;
        }
    }
    m
}

fn boolean_axiom(x: Var) -> Polynomial {
    let mut p = Polynomial::monomial(Monomial::from_vars([x, x]));
    p.add_term(Monomial::from_vars([x]), -Q::one());
    p
}

/// Input axioms indexed by leading monomial, for the monomial-calculus test.
struct AxiomIndex<'a> {
    axioms: &'a [Polynomial],
    by_lead: HashMap<Monomial, Vec<usize>>,
}

impl<'a> AxiomIndex<'a> {
    fn new(axioms: &'a [Polynomial]) -> Self {
        let mut by_lead: HashMap<Monomial, Vec<usize>> = HashMap::new();
        for (i, a) in axioms.iter().enumerate() {
            if let Some((m, _)) = a.leading() {
                by_lead.entry(m.clone()).or_default().push(i);
            }
        }
        AxiomIndex { axioms, by_lead }
    }

    /// Is `p` of the form `c · m` or `c · m · a` for an input or Boolean axiom `a`?
    fn is_monomial_multiple(&self, p: &Polynomial) -> bool {
        if p.len() <= 1 {
            return true;
        }
        let (lead, lc) = p.leading().unwrap();
        lead.divisors().into_iter().any(|d| {
            let rest = lead.divide(&d).unwrap();
            let matches = |a: &Polynomial| {
                let (_, alc) = a.leading().unwrap();
                a.mul_monomial(&rest).scale(&(lc / alc)) == *p
            };
            let input = self
                .by_lead
                .get(&d)
                .is_some_and(|ids| ids.iter().any(|&i| matches(&self.axioms[i])));
            let boolean = match d.vars() {
                [x, y] if x == y && !x.is_ext() => matches(&boolean_axiom(*x)),
                _ => false,
            };
            input || boolean
        })
    }
}

/// Verifies every step; on success reports whether the proof ends in 1.
pub fn check(proof: &Proof, axioms: &[Polynomial]) -> Result<Verdict, CheckError> {
    check_ordering(proof)?;
    let index = AxiomIndex::new(axioms);
    let per_step = |i: usize| check_step(proof, axioms, &index, i);
    #[cfg(feature = "parallel")]
    let first_err = {
        use rayon::prelude::*;
        (0..proof.steps.len()).into_par_iter().filter_map(|i| per_step(i).err()).min_by_key(CheckError::step)
    };
    #[cfg(not(feature = "parallel"))]
    let first_err = (0..proof.steps.len()).filter_map(|i| per_step(i).err()).next();
    if let Some(e) = first_err {
        return Err(e);
    }
    Ok(Verdict {
        refutation: proof.steps.last().is_some_and(|s| s.poly.is_one()),
        metrics: metrics(proof),
    })
}

/// Sequential pass: premise order, extension freshness and the variables a
/// multiplication may use.
fn check_ordering(proof: &Proof) -> Result<(), CheckError> {
    let mut seen: HashSet<Var> = HashSet::new();
    let mut introduced: HashSet<u32> = HashSet::new();
    // Extension variables occurring in introduced definitions.
    let mut defined_over: HashSet<Var> = HashSet::new();
    for (i, s) in proof.steps.iter().enumerate() {
        let premise = |j: usize| {
            if j >= i {
                Err(CheckError::BadPremise {
                    step: i,
                    reason: format!("premise {j} does not precede the step"),
                })
            } else {
                Ok(())
            }
        };
        match &s.rule {
            Rule::Mul(j, x) => {
                premise(*j)?;
                if let Var::Ext(k) = x {
                    if !introduced.contains(k) {
                        return Err(CheckError::BadPremise {
                            step: i,
                            reason: format!("e[{k}] used before its extension step"),
                        });
                    }
                }
            }
            Rule::Lin(a, b, ..) => {
                premise(*a)?;
                premise(*b)?;
            }
            Rule::Ext(k) => {
                if proof.mode != Mode::Epc3 {
                    return Err(CheckError::BadExtForm {
                        step: i,
                        reason: format!("extension steps are not allowed in {}", proof.mode.name()),
                    });
                }
                let Some(f) = proof.ext_defs.get(*k as usize) else {
                    return Err(CheckError::BadPremise {
                        step: i,
                        reason: format!("no definition for e[{k}]"),
                    });
                };
                let fresh = !seen.contains(&Var::Ext(*k))
                    && f.vars().all(|x| match x {
                        Var::Ext(j) => j != *k && introduced.contains(&j),
                        Var::Orig(..) => true,
                    })
                    && !defined_over.contains(&Var::Ext(*k));
                if !fresh {
                    return Err(CheckError::NotFresh { step: i, ext: *k });
                }
                introduced.insert(*k);
                defined_over.extend(f.vars().filter(|x| x.is_ext()));
            }
            Rule::Axiom(_) | Rule::Boolean(_) => {}
        }
        seen.extend(s.poly.vars());
    }
    Ok(())
}

fn check_step(proof: &Proof, axioms: &[Polynomial], index: &AxiomIndex<'_>, i: usize) -> Result<(), CheckError> {
    let step = &proof.steps[i];
    let degree = step.poly.degree();
    if degree > MAX_DEGREE {
        return Err(CheckError::DegreeExceeded { step: i, degree });
    }
    let line = |j: usize| &proof.steps[j].poly;
    let expected = match &step.rule {
        Rule::Axiom(k) => axioms.get(*k).cloned().ok_or_else(|| CheckError::BadPremise {
            step: i,
            reason: format!("no input axiom {k}"),
        })?,
        Rule::Boolean(x) => {
            if x.is_ext() {
                return Err(CheckError::BadPremise {
                    step: i,
                    reason: format!("Boolean axiom on extension variable {x}"),
                });
            }
            boolean_axiom(*x)
        }
        Rule::Mul(j, x) => {
            if proof.mode == Mode::Mc3 && !index.is_monomial_multiple(line(*j)) {
                return Err(CheckError::McMulViolation { step: i });
            }
            line(*j).mul_var(*x)
        }
        Rule::Lin(a, b, ca, cb) => Polynomial::add_scaled(line(*a), line(*b), ca, cb),
        Rule::Ext(k) => {
            let f = &proof.ext_defs[*k as usize];
            if proof.restricted {
                restricted_form(f).map_err(|reason| CheckError::BadExtForm { step: i, reason })?;
            }
            let mut p = f.scale(&-Q::one());
            p.add_term(Monomial::from_vars([Var::Ext(*k)]), Q::one());
            p
        }
    };
    if expected != step.poly {
        return Err(CheckError::PolyMismatch { step: i });
    }
    Ok(())
}

/// `f = X·Y`, or `f = (1/n)·Σ` of `n²` distinct variables.
pub fn restricted_form(f: &Polynomial) -> Result<(), String> {
    if let Some((m, c)) = f.as_monomial() {
        if m.degree() == 2 && c.is_one() {
            return Ok(());
        }
    }
    let k = f.len();
    let n = (k as f64).sqrt().round() as usize;
    if k == 0 || n * n != k {
        return Err(format!("{k} terms is not a positive square"));
    }
    let expected = Q::new(BigInt::one(), BigInt::from(n));
    for (m, c) in f.terms() {
        if m.degree() != 1 || *c != expected {
            return Err(format!("term {c} * {m} is not 1/{n} times a variable"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    Pass,
    /// First line that does not vanish.
    Fail { step: usize, value: Q },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("assignment does not zero input axiom {0}")]
    AxiomNotZero(usize),
    #[error("assignment gives {0} a non-Boolean value")]
    NotBoolean(Var),
    #[error(transparent)]
    Eval(#[from] PolyError),
}

/// Evaluates every line under an assignment that zeroes the axioms;
/// extension variables take the value of their definitions.
pub fn soundness_probe(
    proof: &Proof,
    axioms: &[Polynomial],
    assignment: &dyn Fn(Var) -> Option<Q>,
) -> Result<ProbeVerdict, ProbeError> {
    let mut cache: HashMap<u32, Q> = HashMap::new();
    for (i, a) in axioms.iter().enumerate() {
        if !eval_cached(a, assignment, &proof.ext_defs, &mut cache)?.is_zero() {
            return Err(ProbeError::AxiomNotZero(i));
        }
    }
    let origs: HashSet<Var> = proof
        .steps
        .iter()
        .flat_map(|s| s.poly.vars())
        .chain(proof.ext_defs.iter().flat_map(|f| f.vars()))
        .filter(|x| !x.is_ext())
        .collect();
    for x in origs {
        let v = assignment(x).ok_or(PolyError::IncompleteAssignment(x))?;
        if !(v.is_zero() || v.is_one()) {
            return Err(ProbeError::NotBoolean(x));
        }
    }
    for (i, s) in proof.steps.iter().enumerate() {
        let value = eval_cached(&s.poly, assignment, &proof.ext_defs, &mut cache)?;
        if !value.is_zero() {
            return Ok(ProbeVerdict::Fail { step: i, value });
        }
    }
    Ok(ProbeVerdict::Pass)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("proof file line {line}: {message}")]
pub struct ProofParseError {
    pub line: usize,
    pub message: String,
}

impl Proof {
    pub fn new(mode: Mode, restricted: bool) -> Self {
        Proof {
            mode,
            restricted,
            ext_defs: Vec::new(),
            steps: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("epcproof v1 mode={} restricted={}\n", self.mode.name(), u8::from(self.restricted));
        for (k, f) in self.ext_defs.iter().enumerate() {
            writeln!(out, "ext {k} := {f}").unwrap();
        }
        for (i, s) in self.steps.iter().enumerate() {
            let rule = match &s.rule {
                Rule::Axiom(k) => format!("axiom {k}"),
                Rule::Boolean(x) => format!("bool {x}"),
                Rule::Mul(j, x) => format!("mul {j} {x}"),
                Rule::Lin(a, b, ca, cb) => format!("lin {a} {b} {}/{} {}/{}", ca.numer(), ca.denom(), cb.numer(), cb.denom()),
                Rule::Ext(k) => format!("ext {k}"),
            };
            writeln!(out, "step {i} {rule} :: {}", s.poly).unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Proof, ProofParseError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, message: String| ProofParseError { line: line + 1, message };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "empty proof file".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (mode, restricted) = match words.as_slice() {
            ["epcproof", "v1", m, r] => {
                let mode = m
                    .strip_prefix("mode=")
                    .and_then(Mode::parse)
                    .ok_or_else(|| err(hl, format!("bad mode field {m:?}")))?;
                let restricted = match r.strip_prefix("restricted=") {
                    Some("0") => false,
                    Some("1") => true,
                    _ => return Err(err(hl, format!("bad restricted field {r:?}"))),
                };
                (mode, restricted)
            }
            _ => return Err(err(hl, "expected `epcproof v1 mode=<m> restricted=<0|1>`".into())),
        };
        let mut proof = Proof::new(mode, restricted);
        for (ln, line) in lines {
            let e = |m: String| err(ln, m);
            if let Some(rest) = line.strip_prefix("ext ") {
                let (k, f) = rest.split_once(" := ").ok_or_else(|| e("expected `ext <k> := <poly>`".into()))?;
                let k: usize = k.trim().parse().map_err(|_| e(format!("bad extension index {k:?}")))?;
                if k != proof.ext_defs.len() {
                    return Err(e(format!("extension {k} out of order")));
                }
                proof.ext_defs.push(Polynomial::parse(f).map_err(e)?);
            } else if let Some(rest) = line.strip_prefix("step ") {
                let (head, poly) = rest.split_once(" :: ").ok_or_else(|| e("expected `:: <poly>`".into()))?;
                let w: Vec<&str> = head.split_whitespace().collect();
                let idx = |s: &str| s.parse::<usize>().map_err(|_| e(format!("bad index {s:?}")));
                let var = |s: &str| parse_var(s).map_err(e);
                let rat = |s: &str| crate::polysys::parse_rational(s).map_err(e);
                let i = idx(w.first().copied().unwrap_or(""))?;
                if i != proof.steps.len() {
                    return Err(e(format!("step {i} out of order")));
                }
                let rule = match &w[1..] {
                    ["axiom", k] => Rule::Axiom(idx(k)?),
                    ["bool", x] => Rule::Boolean(var(x)?),
                    ["mul", j, x] => Rule::Mul(idx(j)?, var(x)?),
                    ["lin", a, b, ca, cb] => Rule::Lin(idx(a)?, idx(b)?, rat(ca)?, rat(cb)?),
                    ["ext", k] => Rule::Ext(k.parse().map_err(|_| e(format!("bad extension index {k:?}")))?),
                    _ => return Err(e(format!("unknown rule {head:?}"))),
                };
                proof.steps.push(Step {
                    rule,
                    poly: Polynomial::parse(poly).map_err(e)?,
                });
            } else {
                return Err(e(format!("unrecognised line {line:?}")));
            }
        }
        Ok(proof)
    }
}

/// Append-only proof under construction. Each push computes its own line.
#[derive(Clone, Debug)]
pub struct ProofLog {
    pub proof: Proof,
}

impl ProofLog {
    pub fn new(mode: Mode, restricted: bool) -> Self {
        ProofLog {
            proof: Proof::new(mode, restricted),
        }
    }

    pub fn len(&self) -> usize {
        self.proof.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.steps.is_empty()
    }

    pub fn line(&self, i: usize) -> &Polynomial {
        &self.proof.steps[i].poly
    }

    fn push(&mut self, rule: Rule, poly: Polynomial) -> usize {
        debug_assert!(poly.degree() <= MAX_DEGREE, "line of degree {} from {rule:?}", poly.degree());
        self.proof.steps.push(Step { rule, poly });
        self.proof.steps.len() - 1
    }

    pub fn axiom(&mut self, k: usize, poly: &Polynomial) -> usize {
        self.push(Rule::Axiom(k), poly.clone())
    }

    pub fn boolean(&mut self, x: Var) -> usize {
        self.push(Rule::Boolean(x), boolean_axiom(x))
    }

    pub fn mul(&mut self, j: usize, x: Var) -> usize {
        let p = self.line(j).mul_var(x);
        self.push(Rule::Mul(j, x), p)
    }

    /// Multiplies line `j` by every variable of `m` in turn.
    pub fn mul_monomial(&mut self, mut j: usize, m: &Monomial) -> usize {
        for &x in m.vars() {
            j = self.mul(j, x);
        }
        j
    }

    pub fn lin(&mut self, i: usize, j: usize, a: Q, b: Q) -> usize {
        let p = Polynomial::add_scaled(self.line(i), self.line(j), &a, &b);
        self.push(Rule::Lin(i, j, a, b), p)
    }

    pub fn scale(&mut self, i: usize, a: Q) -> usize {
        self.lin(i, i, a, Q::zero())
    }

    /// Sum of `coef · line` over the items, as a balanced tree of binary
    /// combinations. Returns `None` for an empty list.
    pub fn sum(&mut self, items: &[(usize, Q)]) -> Option<usize> {
        match items {
            [] => None,
            [(i, c)] => Some(if c.is_one() { *i } else { self.scale(*i, c.clone()) }),
            [(i, a), (j, b)] => Some(self.lin(*i, *j, a.clone(), b.clone())),
            _ => {
                let (l, r) = items.split_at(items.len() / 2);
                let a = self.sum(l).unwrap();
                let b = self.sum(r).unwrap();
                Some(self.lin(a, b, Q::one(), Q::one()))
            }
        }
    }

    /// Defines a new extension variable by `f` and logs `e[k] − f`.
    pub fn extend(&mut self, f: Polynomial) -> (Var, usize) {
        let k = self.proof.ext_defs.len() as u32;
        let mut p = f.scale(&-Q::one());
        p.add_term(Monomial::from_vars([Var::Ext(k)]), Q::one());
        self.proof.ext_defs.push(f);
        (Var::Ext(k), self.push(Rule::Ext(k), p))
    }

    pub fn into_proof(self) -> Proof {
        self.proof
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::q;

    fn x(v: u32, w: u32) -> Var {
        Var::Orig(v, w)
    }

    fn axioms() -> Vec<Polynomial> {
        let xp = Polynomial::var(x(0, 0));
        let mut xm1 = xp.clone();
        xm1.add_term(Monomial::one(), q(-1));
        vec![xm1, xp]
    }

    #[test]
    fn cancelling_an_axiom_is_not_a_refutation() {
        let ax = axioms();
        let mut log = ProofLog::new(Mode::Mc3, false);
        let a = log.axiom(0, &ax[0]);
        let z = log.lin(a, a, q(1), q(-1));
        assert!(log.line(z).is_zero());
        let v = check(&log.proof, &ax).unwrap();
        assert!(!v.refutation);
    }

    #[test]
    fn x_and_x_minus_one_refute() {
        let ax = axioms();
        let mut log = ProofLog::new(Mode::Mc3, false);
        let a = log.axiom(0, &ax[0]);
        let b = log.axiom(1, &ax[1]);
        log.lin(b, a, q(1), q(-1));
        let v = check(&log.proof, &ax).unwrap();
        assert!(v.refutation);
        assert_eq!(v.metrics.size, 4);
        assert_eq!(v.metrics.max_degree, 1);
    }

    #[test]
    fn degree_four_is_rejected() {
        let ax = axioms();
        let mut log = ProofLog::new(Mode::Pc3, false);
        let mut j = log.axiom(1, &ax[1]);
        for _ in 0..2 {
            j = log.mul(j, x(0, 0));
        }
        let p = log.line(j).mul_var(x(0, 0));
        log.proof.steps.push(Step { rule: Rule::Mul(j, x(0, 0)), poly: p });
        assert_eq!(check(&log.proof, &ax), Err(CheckError::DegreeExceeded { step: 3, degree: 4 }));
    }

    #[test]
    fn file_round_trip() {
        let ax = axioms();
        let mut log = ProofLog::new(Mode::Epc3, true);
        let a = log.axiom(0, &ax[0]);
        let b = log.boolean(x(0, 0));
        let (e, _) = log.extend(Polynomial::monomial(Monomial::from_vars([x(0, 0), x(0, 0)])));
        let m = log.mul(a, e);
        log.lin(m, b, q_frac(1, 2), q(3));
        let text = log.proof.to_text();
        let back = Proof::parse(&text).unwrap();
        assert_eq!(back, log.proof);
        assert_eq!(back.to_text(), text);
        check(&back, &ax).unwrap();
    }

    use crate::polysys::q_frac;

    #[test]
    fn restricted_forms() {
        let xy = Polynomial::monomial(Monomial::from_vars([x(0, 0), x(1, 1)]));
        assert!(restricted_form(&xy).is_ok());
        let avg = Polynomial::from_terms((0..4).map(|i| (Monomial::from_vars([x(i, 0)]), q_frac(1, 2))));
        assert!(restricted_form(&avg).is_ok());
        let bad = Polynomial::from_terms((0..3).map(|i| (Monomial::from_vars([x(i, 0)]), q_frac(1, 2))));
        assert!(restricted_form(&bad).is_err());
    }

    #[test]
    fn probe_finds_nothing_on_sound_lines() {
        let ax = vec![axioms()[0].clone()];
        let mut log = ProofLog::new(Mode::Epc3, true);
        let a = log.axiom(0, &ax[0]);
        let (e, _) = log.extend(Polynomial::monomial(Monomial::from_vars([x(0, 0), x(0, 0)])));
        log.mul(a, e);
        let assign = |v: Var| matches!(v, Var::Orig(0, 0)).then(Q::one);
        assert_eq!(soundness_probe(&log.proof, &ax, &assign), Ok(ProbeVerdict::Pass));
        let empty = Proof::new(Mode::Mc3, false);
        assert_eq!(soundness_probe(&empty, &[], &assign), Ok(ProbeVerdict::Pass));
    }
}
