//! Exact finite-n Hankel determinants and orthogonal polynomials for the
//! Gaussian weight with a jump discontinuity, together with their large-n
//! asymptotic predictions and the confluent hypergeometric model problem.
//!
//! Everything runs at a caller-chosen binary precision (MPFR). Each public
//! computation takes a [`PrecisionContext`] and can be rerun at a higher
//! precision through [`validate`].

pub mod asymptotics;
pub mod complex;
pub mod confluent;
pub mod error;
pub mod moments;
pub mod orthopoly;
pub mod parallel;
pub mod precision;
pub mod quad;
pub mod special;
pub mod validate;
pub mod verify;

pub use complex::Complex;
pub use error::{Error, Result};
pub use moments::{JumpWeight, MomentTable};
pub use orthopoly::{OPData, RecurrencePair, YEntries};
pub use precision::{cover_from_complex, cover_log, cover_rotate, CoveringPoint, PrecisionContext};
