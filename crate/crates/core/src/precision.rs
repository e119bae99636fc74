//! Precision settings and points on the universal covering of the punctured plane.

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::complex::{pi, pow2_neg, Complex};
use crate::error::{Error, Result};

/// Working precision plus the multiplier used for self-validation reruns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    bits: u32,
    verify_factor: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 64;

    pub fn new(bits: u32, verify_factor: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(format!("bits = {bits} is below {}", Self::MIN_BITS)));
        }
        if verify_factor < 2 {
            return Err(Error::InvalidPrecision(format!("verify_factor = {verify_factor} must be at least 2")));
        }
        Ok(PrecisionContext { bits, verify_factor })
    }

    /// Context with the default verify factor of 2.
    pub fn with_bits(bits: u32) -> Result<Self> {
        Self::new(bits, 2)
    }

    /// Default policy for Hankel work up to degree `n_max`: `max(256, 12 n_max)` bits.
    pub fn for_degree(n_max: usize) -> Self {
        let bits = (12 * n_max as u32).max(256);
        PrecisionContext { bits, verify_factor: 2 }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn verify_factor(&self) -> u32 {
        self.verify_factor
    }

    /// The context used for the validation rerun.
    pub fn verification(&self) -> Self {
        PrecisionContext { bits: self.bits * self.verify_factor, verify_factor: self.verify_factor }
    }

    /// Same verify factor, different precision.
    pub fn with_prec(&self, bits: u32) -> Self {
        PrecisionContext { bits: bits.max(Self::MIN_BITS), verify_factor: self.verify_factor }
    }

    /// Context widened by `extra` guard bits.
    pub fn widened(&self, extra: u32) -> Self {
        self.with_prec(self.bits + extra)
    }

    /// Acceptance tolerance `2^(-bits/2)`.
    pub fn tol(&self) -> Float {
        pow2_neg(self.bits, self.bits / 2)
    }

    pub fn tol_f64(&self) -> f64 {
        2f64.powi(-(self.bits as i32) / 2)
    }

    pub fn float(&self, x: f64) -> Float {
        Float::with_val(self.bits, x)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::from_f64(self.bits, re, im)
    }

    /// Parse a decimal string at full working precision.
    pub fn parse(&self, s: &str) -> Result<Float> {
        Float::parse(s)
            .map(|p| Float::with_val(self.bits, p))
            .map_err(|e| Error::Domain(format!("cannot parse {s:?} as a number: {e}")))
    }

    pub fn pi(&self) -> Float {
        pi(self.bits)
    }
}

/// A point `radius * e^{i argument}` with an unbounded argument.
#[derive(Clone, PartialEq)]
pub struct CoveringPoint {
    pub radius: Float,
    pub argument: Float,
}

impl std::fmt::Debug for CoveringPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CoveringPoint {{ radius: {}, argument: {} }}", self.radius.to_f64(), self.argument.to_f64())
    }
}

impl CoveringPoint {
    pub fn new(radius: Float, argument: Float) -> Result<Self> {
        if !(radius.is_finite() && radius > 0) {
            return Err(Error::ZeroPoint);
        }
        Ok(CoveringPoint { radius, argument })
    }

    pub fn from_polar_f64(ctx: &PrecisionContext, radius: f64, argument: f64) -> Result<Self> {
        Self::new(ctx.float(radius), ctx.float(argument))
    }

    pub fn prec(&self) -> u32 {
        self.radius.prec().max(self.argument.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        CoveringPoint { radius: Float::with_val(prec, &self.radius), argument: Float::with_val(prec, &self.argument) }
    }

    /// `radius * e^{i argument}`.
    pub fn value(&self) -> Complex {
        let c = Complex::cis(&self.argument);
        c.scale(&self.radius)
    }

    /// Point multiplied by `e^{i theta}` on the covering.
    pub fn rotate_by(&self, theta: &Float) -> Self {
        CoveringPoint { radius: self.radius.clone(), argument: Float::with_val(self.prec(), &self.argument + theta) }
    }

    /// Point multiplied by `e^{i k pi}`, `k` an integer.
    pub fn rotate_half_turns(&self, k: i64) -> Self {
        let p = self.prec();
        self.rotate_by(&(pi(p) * Float::with_val(p, k)))
    }

    /// `self^w` on the covering, `exp(w * log self)`.
    pub fn pow(&self, w: &Complex) -> Complex {
        (w * &cover_log(self)).exp()
    }
}

pub fn cover_from_complex(z: &Complex, turns: i64) -> Result<CoveringPoint> {
    if z.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let p = z.prec();
    let arg = z.arg() + pi(p) * Float::with_val(p, 2 * turns);
    CoveringPoint::new(z.abs(), arg)
}

pub fn cover_log(p: &CoveringPoint) -> Complex {
    let prec = p.prec();
    Complex { re: Float::with_val(prec, p.radius.ln_ref()), im: Float::with_val(prec, &p.argument) }
}

/// Deck transformation `z -> e^{2 pi i k} z`.
pub fn cover_rotate(p: &CoveringPoint, k: i64) -> CoveringPoint {
    p.rotate_half_turns(2 * k)
}
