//! Compiles Deep Weisfeiler Leman traces on a pair of structures into
//! degree-3 extended polynomial calculus refutations of their isomorphism
//! axioms, and checks such refutations without trusting the producer.

pub mod coherent;
pub mod derive;
pub mod dwl;
pub mod lift;
pub mod pipeline;
pub mod polysys;
pub mod prooflog;
pub mod sketch;
pub mod structures;
pub mod validate;
