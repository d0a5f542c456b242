//! Exact evaluation of Euler-class cocycles on `RPⁿ` and on spaces of
//! oriented flags, plus the flat-bundle pipeline and a Monte Carlo sampler
//! for the integral of the Sullivan cocycle.
//!
//! All signs are exact: rational inputs are rescaled to primitive integer
//! rows and determinants are evaluated fraction-free.

pub mod error;
pub mod cocycles;
pub mod exact;
pub mod fixtures;
pub mod flags;
pub mod io;
pub mod kernel;
pub mod montecarlo;
pub mod parallel;
pub mod random;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{
    frame_transform, hereditarily_spanning, ori, projective_normalize, sig, ProjectivePoint,
    Rational, RationalMatrix, RationalVector, Sign,
};
pub use flags::{bracket, realize_points, OrientedFlag, OrientedSubspace};
pub use parallel::ExecPolicy;
