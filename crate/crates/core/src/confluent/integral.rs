use rug::Float;

use super::HypParams;
use crate::complex::{pi, Complex};
use crate::error::{Error, Result};
use crate::precision::CoveringPoint;
use crate::quad::{exp_sinh, tanh_sinh};
use crate::special::{gamma, rgamma};

/// Largest ray angle used, kept inside `(-pi, pi)` so `(1+t)` avoids its cut.
const ALPHA_MAX: f64 = 0.95;
/// Largest `|arg z - alpha|` accepted, in units of `pi`.
const SECTOR_HALF_WIDTH: f64 = 0.45;

/// `psi(a, c; zeta)` from the integral along the ray `arg t = -alpha`
/// (for `Re a > 0`) or the loop around it (otherwise), with `alpha`
/// following `arg zeta`.
pub fn psi_integral(p: &HypParams, zeta: &CoveringPoint) -> Result<Complex> {
    let prec = p.prec().max(zeta.prec());
    let wp = prec + 16;
    let theta = zeta.argument.to_f64() / std::f64::consts::PI;
    let alpha_units = theta.clamp(-ALPHA_MAX, ALPHA_MAX);
    if (theta - alpha_units).abs() > SECTOR_HALF_WIDTH {
        return Err(Error::OutOfSector(format!(
            "integral representation reaches |arg z| <= {:.2} pi, got {theta:.3} pi",
            ALPHA_MAX + SECTOR_HALF_WIDTH
        )));
    }
    let alpha = pi(wp) * Float::with_val(wp, alpha_units);
    let a = p.a.with_prec(wp);
    let c = p.c.with_prec(wp);
    let z = zeta.with_prec(wp).value();
    let one = Complex::one(wp);
    let b = &(&c - &a) - &one;
    let am1 = &a - &one;
    let dir = Complex::cis(&(-alpha.clone()));

    // t = s e^{-i alpha}, arg t = -alpha
    let leg = |s: &Float| -> Complex {
        let t = dir.scale(s);
        let ln_t = Complex::new(Float::with_val(wp, s.ln_ref()), -alpha.clone());
        let v = &(&(&am1 * &ln_t) + &(&b * &(&one + &t).ln())) - &(&z * &t);
        &v.exp() * &dir
    };

    let value = if a.re.is_sign_positive() && !a.re.is_zero() {
        let integral = exp_sinh(wp, &Float::new(wp), leg)?;
        &integral * &rgamma(&a)
    } else {
        let half = Float::with_val(wp, 0.5);
        let legs = exp_sinh(wp, &half, leg)?;
        // t = e^{i phi}/2 with phi from -alpha to 2 pi - alpha
        let ln_half = Float::with_val(wp, half.ln_ref());
        let circle = |phi: &Float| -> Complex {
            let t = Complex::cis(phi).scale(&half);
            let ln_t = Complex::new(ln_half.clone(), phi.clone());
            // t^{a-1} dt = i t^a dphi
            let v = &(&(&a * &ln_t) + &(&b * &(&one + &t).ln())) - &(&z * &t);
            v.exp().mul_i()
        };
        let lo = Float::with_val(wp, -&alpha);
        let hi = Float::with_val(wp, &lo + pi(wp) * 2u32);
        let ring = tanh_sinh(wp, &lo, &hi, circle)?;
        let two_pi_ia = (&a * &Complex::i(wp).scale(&(pi(wp) * 2u32))).exp();
        // incoming leg with arg t = -alpha, outgoing with arg t = 2 pi - alpha
        let loop_integral = &(&(&two_pi_ia - &one) * &legs) + &ring;
        // 1/((e^{2 pi i a} - 1) Gamma(a)) = -(i/2pi) e^{-i pi a} Gamma(1-a)
        let phase = (-(&a * &Complex::i(wp).scale(&pi(wp)))).exp();
        let g = gamma(&(&one - &a))?;
        let pref = (&phase * &g).mul_i().scale(&(-(pi(wp) * 2u32).recip()));
        &pref * &loop_integral
    };
    Ok(value.with_prec(prec))
}
