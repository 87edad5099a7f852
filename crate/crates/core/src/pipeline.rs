//! End to end: run a trace, lift the axioms through every step, derive 1
//! at the distinguishing state, and re-check the result.

use std::time::Duration;

use num_traits::One;
use thiserror::Error;
use web_time::Instant;

use crate::derive::{DeriveError, Level};
use crate::dwl::{run_trace, DwlError, DwlTrace, Outcome, TraceRun};
use crate::lift::{lift, LiftError};
use crate::polysys::{piso, PisoSystem};
use crate::polysys::Q;
use crate::prooflog::{check, CheckError, Mode, Proof, ProofLog, Verdict};
use crate::structures::Structure;

#[derive(Debug, Error)]
pub enum RefuteError {
    #[error(transparent)]
    Dwl(#[from] DwlError),
    #[error("the trace does not distinguish the structures")]
    NotDistinguished,
    #[error("lifting step {step}: {source}")]
    Lift { step: usize, source: LiftError },
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error("the produced proof fails its own check: {0}")]
    SelfCheck(CheckError),
    #[error("the produced proof does not end in 1")]
    NotRefutation,
}

#[derive(Clone, Debug, Default)]
pub struct Timings {
    pub dwl: Duration,
    pub derive: Duration,
    pub check: Duration,
}

#[derive(Clone, Debug)]
pub struct Refutation {
    pub proof: Proof,
    pub verdict: Verdict,
    /// Operations executed before the sides separated.
    pub steps: usize,
    pub timings: Timings,
}

impl Refutation {
    /// Key-value report, one entry per line.
    pub fn report(&self) -> String {
        let m = &self.verdict.metrics;
        format!(
            "mode {}\nrestricted {}\ndwl_steps {}\nlines {}\nsize {}\nmax_degree {}\nextensions {}\nbits {}\n\
             time_dwl_ms {}\ntime_derive_ms {}\ntime_check_ms {}\n",
            self.proof.mode.name(),
            u8::from(self.proof.restricted),
            self.steps,
            self.proof.steps.len(),
            m.size,
            m.max_degree,
            m.extensions,
            m.bits,
            self.timings.dwl.as_millis(),
            self.timings.derive.as_millis(),
            self.timings.check.as_millis(),
        )
    }
}

/// Axiom system of the first state: what a refutation is checked against.
pub fn input_axioms(g: &Structure, h: &Structure) -> Result<PisoSystem, DwlError> {
    let u = crate::structures::UnionStructure::new(g, h)?;
    Ok(piso(&u))
}

/// Refutes `P_iso(g, h)` along `trace`: MC3 when the structures are already
/// separated, restricted EPC3 otherwise.
pub fn refute(g: &Structure, h: &Structure, trace: &DwlTrace) -> Result<Refutation, RefuteError> {
    let t0 = Instant::now();
    let run = run_trace(g, h, trace)?;
    let dwl = t0.elapsed();
    if run.outcome != Outcome::Distinguished {
        return Err(RefuteError::NotDistinguished);
    }
    let t1 = Instant::now();
    let (proof, systems) = build_proof(&run)?;
    let derive = t1.elapsed();
    let t2 = Instant::now();
    let verdict = check(&proof, &systems[0].polys()).map_err(RefuteError::SelfCheck)?;
    let check_time = t2.elapsed();
    if !verdict.refutation {
        return Err(RefuteError::NotRefutation);
    }
    Ok(Refutation {
        proof,
        verdict,
        steps: run.states.len() - 1,
        timings: Timings {
            dwl,
            derive,
            check: check_time,
        },
    })
}

fn build_proof(run: &TraceRun) -> Result<(Proof, Vec<PisoSystem>), RefuteError> {
    let states = &run.states;
    let systems: Vec<PisoSystem> = states.iter().map(|s| piso(&s.union)).collect();
    let mut log = if states.len() == 1 {
        ProofLog::new(Mode::Mc3, false)
    } else {
        ProofLog::new(Mode::Epc3, true)
    };
    let mut level = Level::input(&states[0].union, &states[0].history, &systems[0]);
    for (i, next) in states.iter().enumerate().skip(1) {
        let mut prev = level.with_equivalent_sides();
        let lifted = lift(&mut prev, next, &systems[i], &mut log).map_err(|source| RefuteError::Lift { step: i, source })?;
        level = Level::derived(&next.union, &next.history, &systems[i], lifted.names, lifted.lines);
    }
    let one = level.derive_one(&mut log)?;
    if one + 1 != log.len() {
        log.scale(one, Q::one());
    }
    Ok((log.into_proof(), systems))
}
