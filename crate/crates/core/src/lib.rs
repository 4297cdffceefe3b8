//! Switching methods for cospectral graphs, in exact arithmetic.
//!
//! * [`graph`]: small dense graphs, exact characteristic polynomials,
//!   canonical labels, automorphism groups, graph6 and orderly generation.
//! * [`exactmat`]: integer-scaled rational orthogonal matrices and the
//!   named switching matrices.
//! * [`switching`]: respecting vectors, switching graphs, switching
//!   instances and the distinguishing predicates.
//! * [`formulas`]: closed-form counts and asymptotic main terms.
//! * [`census`]: enumeration of all graphs of a given order that have a
//!   cospectral mate through a switching method.

pub mod census;
pub mod error;
pub mod exactmat;
pub mod formulas;
pub mod graph;
pub mod perm;
pub mod switching;

pub use error::{Error, FormatError, Result, ValidationError};
pub use graph::Graph;
