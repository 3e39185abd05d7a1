//! Fractional local dimension of finite posets.
//!
//! The crate computes `fldim` exactly for small posets (an enumerated-column
//! covering LP over partial linear extensions, solved with exact rational
//! arithmetic), solves the reduced four-row LP for the family P(1,d;n), and
//! evaluates the continuous-limit constants FLD(d) together with the
//! verification of the two optimal-realizer constructions.

pub mod continuous;
pub mod family;
pub mod fldim;
pub mod lp;
pub mod ple;
pub mod poset;

pub(crate) mod numeric;

pub use continuous::{ContinuousProfile, Regime};
pub use family::BlockTemplate;
pub use fldim::WeightFunction;
pub use lp::{LpModel, LpSolution, LpStatus, Rational};
pub use ple::{CoverageSignature, Ple, PleStats};
pub use poset::Poset;
