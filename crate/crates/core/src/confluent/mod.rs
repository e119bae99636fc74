//! Confluent hypergeometric functions `phi(a, c; z)` and `psi(a, c; z)` on the
//! universal covering of the punctured plane, and the 2x2 model problem built
//! from `psi(beta, 1; zeta)`.
//!
//! Sheets enter only through [`cover_log`](crate::precision::cover_log): the
//! convergent series are entire in `ln z`, so every relation between sheets can
//! be checked by direct evaluation. The integral representation is an
//! independent oracle on the sheets it reaches.

mod asymptotic;
mod integral;
mod model;
mod relations;
mod series;

pub use asymptotic::psi_asymptotic;
pub use integral::psi_integral;
pub use model::{
    continuity_residual, jump_matrix, jump_residual, m1_matrix, psi_beta, psi_beta_asymptotic, psi_matrix,
    sector_multiplier, sector_of, ContourLabel, PsiMatrix, RealHalfAxis, SectorLabel,
};
pub use relations::{monodromy_residual, relation_sides, Relation};
pub use series::{phi, psi_kummer, psi_log_case, series_radius_limit};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::CoveringPoint;

/// Parameters `a`, `c` of the confluent equation `z w'' + (c - z) w' - a w = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypParams {
    pub a: Complex,
    pub c: Complex,
}

impl HypParams {
    pub fn new(a: Complex, c: Complex) -> Self {
        HypParams { a, c }
    }

    /// The logarithmic case `c = 1`.
    pub fn log_case(a: Complex) -> Self {
        let p = a.prec();
        HypParams { a, c: Complex::one(p) }
    }

    pub fn prec(&self) -> u32 {
        self.a.prec().max(self.c.prec())
    }

    pub fn is_log_case(&self) -> bool {
        self.c.im.is_zero() && self.c.re == 1
    }

    /// Parameters `(c - a, c)` of the second solution at infinity.
    pub fn reflected(&self) -> Self {
        HypParams { a: &self.c - &self.a, c: self.c.clone() }
    }
}

fn is_integer(z: &Complex) -> bool {
    z.im.is_zero() && z.re.is_integer()
}

/// `psi(a, c; zeta)` by the convergent series: logarithmic case for `c = 1`,
/// Kummer's connection formula for non-integer `c`.
pub fn psi(p: &HypParams, zeta: &CoveringPoint) -> Result<Complex> {
    if p.is_log_case() {
        psi_log_case(&p.a, zeta)
    } else if is_integer(&p.c) {
        Err(Error::Domain("integer c other than 1 is not supported".into()))
    } else {
        psi_kummer(p, zeta)
    }
}
