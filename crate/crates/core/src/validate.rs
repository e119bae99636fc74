//! Self-validation by rerunning a computation at `bits * verify_factor`.

use rug::Float;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// How a base value and its rerun are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    /// `|a - b| / max(|a|, |b|)`.
    Relative,
    /// `|a - b| / max(1, |a|, |b|)`, for residuals that should vanish.
    Absolute,
}

/// Difference between two runs of the same number under `scale`.
pub fn compare(a: &Complex, b: &Complex, scale: Scale) -> Float {
    let p = a.prec().max(b.prec());
    let d = (a - b).abs();
    if d.is_zero() {
        return d;
    }
    let mut s = a.abs().max(&b.abs());
    if scale == Scale::Absolute && s < 1 {
        s = Float::with_val(p, 1);
    }
    if s.is_zero() {
        return Float::with_val(p, rug::float::Special::Infinity);
    }
    d / s
}

/// A computation run twice: at the base precision and at the verification precision.
#[derive(Debug, Clone)]
pub struct Rerun<T> {
    pub base: T,
    pub check: T,
    pub bits: u32,
    pub check_bits: u32,
}

impl<T> Rerun<T> {
    /// Acceptance threshold `2^(-bits/2)` of the base run.
    pub fn tol(&self) -> Float {
        PrecisionContext::with_bits(self.bits).map(|c| c.tol()).unwrap_or_else(|_| Float::with_val(64, 1))
    }
}

pub fn rerun<T, F>(ctx: &PrecisionContext, f: F) -> Result<Rerun<T>>
where
    F: Fn(&PrecisionContext) -> Result<T>,
{
    let check_ctx = ctx.verification();
    Ok(Rerun { base: f(ctx)?, check: f(&check_ctx)?, bits: ctx.bits(), check_bits: check_ctx.bits() })
}

impl Rerun<Vec<Complex>> {
    /// Largest difference over all components.
    pub fn worst(&self, scale: Scale) -> Float {
        let mut w = Float::new(self.bits);
        for (a, b) in self.base.iter().zip(&self.check) {
            let d = compare(a, b, scale);
            if d > w || d.is_nan() {
                w = d;
            }
        }
        w
    }
}

/// Run `f` twice and return the base values, or `PrecisionValidation` if any
/// component moved by more than `2^(-bits/2)`.
pub fn validated<F>(ctx: &PrecisionContext, quantity: &str, scale: Scale, f: F) -> Result<Vec<Complex>>
where
    F: Fn(&PrecisionContext) -> Result<Vec<Complex>>,
{
    let r = rerun(ctx, f)?;
    if r.base.len() != r.check.len() {
        return Err(Error::PrecisionValidation { quantity: quantity.into(), rel_diff: f64::INFINITY, tol: ctx.tol_f64() });
    }
    let worst = r.worst(scale);
    if worst.is_nan() || worst > ctx.tol() {
        return Err(Error::PrecisionValidation {
            quantity: quantity.into(),
            rel_diff: worst.to_f64(),
            tol: ctx.tol_f64(),
        });
    }
    Ok(r.base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::JumpWeight;
    use crate::orthopoly::op_data_for;

    #[test]
    fn exact_computation_validates() {
        let ctx = PrecisionContext::with_bits(128).unwrap();
        let v = validated(&ctx, "pi", Scale::Relative, |c| Ok(vec![Complex::from_real(c.pi())])).unwrap();
        assert_eq!(v[0].prec(), 128);
    }

    #[test]
    fn precision_dependent_result_is_rejected() {
        // a value that carries a 2^(-bits/4) artefact of the working precision
        let ctx = PrecisionContext::with_bits(128).unwrap();
        let bad = |c: &PrecisionContext| Ok(vec![Complex::from_real(Float::with_val(c.bits(), 1) + crate::complex::pow2_neg(c.bits(), c.bits() / 4))]);
        let e = validated(&ctx, "artefact", Scale::Relative, bad).unwrap_err();
        assert!(matches!(e, Error::PrecisionValidation { .. }));
    }

    #[test]
    fn residual_noise_is_compared_on_the_absolute_scale() {
        let a = Complex::from_f64(128, 1e-70, 0.0);
        let b = Complex::from_f64(256, 3e-140, 0.0);
        assert!(compare(&a, &b, Scale::Relative) > 0.9);
        assert!(compare(&a, &b, Scale::Absolute) < 1e-69);
    }

    #[test]
    fn hankel_norms_survive_the_rerun() {
        let ctx = PrecisionContext::for_degree(12);
        let r = rerun(&ctx, |c| {
            let w = JumpWeight::scaled(c.complex(0.0, 0.3), c.float(0.3), 12)?;
            Ok(op_data_for(c, &w, 12)?.h)
        })
        .unwrap();
        assert_eq!(r.check_bits, 2 * r.bits);
        assert!(r.worst(Scale::Relative) < r.tol());
    }
}
