use super::HypParams;
use crate::complex::{pi, Complex};
use crate::error::{Error, Result};
use crate::precision::CoveringPoint;

/// Truncated large-`zeta` expansion
/// `zeta^{-a} sum_{n < terms} (-1)^n (a)_n (1+a-c)_n / (n! zeta^n)`.
///
/// Fails with `DivergentTail` when the requested terms run past the smallest
/// term of the (divergent) series at this `|zeta|`.
pub fn psi_asymptotic(p: &HypParams, zeta: &CoveringPoint, terms: usize) -> Result<Complex> {
    let prec = p.prec().max(zeta.prec());
    let bound = pi(prec) * 3u32 / 2u32;
    if zeta.argument.clone().abs() >= bound {
        return Err(Error::OutOfSector(format!(
            "asymptotic expansion needs |arg zeta| < 3 pi / 2, got {:.4}",
            zeta.argument.to_f64()
        )));
    }
    if terms == 0 {
        return Err(Error::Domain("at least one term is required".into()));
    }
    let zeta = zeta.with_prec(prec);
    let z = zeta.value();
    let one = Complex::one(prec);
    let b = &(&one + &p.a) - &p.c;
    let zinv = z.recip();
    let mut t = one.clone();
    let mut s = one.clone();
    for n in 0..terms - 1 {
        if t.is_zero() {
            break;
        }
        let k = Complex::from_int(prec, n as i64);
        let step = (&(&(&p.a + &k) * &(&b + &k)) * &zinv).div_int(-(n as i64 + 1));
        if step.abs() >= 1 {
            return Err(Error::DivergentTail(format!(
                "term {} of the asymptotic series grows at |zeta| = {:.3}",
                n + 1,
                zeta.radius.to_f64()
            )));
        }
        t = &t * &step;
        s = &s + &t;
    }
    Ok(&zeta.pow(&(-p.a.clone())) * &s)
}
