//! Comparative uncertainty toolkit: confidence relations over finite state
//! spaces, acceptance axioms, numerical measures and the relations they
//! induce, preferential closure of conditional knowledge bases, and
//! decomposition of acceptance preorders into complete ones.

pub mod bitmatrix;
pub mod cli;
pub mod error;
pub mod generate;
pub mod io;
pub mod logic;
pub mod measures;
pub mod preferential;
pub mod representation;
pub mod relations;
pub mod space;

pub use bitmatrix::BitMatrix;
pub use error::{Error, Result};
pub use logic::{AtomUniverse, Formula};
pub use measures::{MassAssignment, Measure, PossibilityDistribution, ProbabilityDistribution, Rational, SetFunction};
pub use relations::{Axiom, ConfidenceRelation, Kernel, KernelFlag, Verdict};
pub use space::{Event, Mask, StateSpace};
