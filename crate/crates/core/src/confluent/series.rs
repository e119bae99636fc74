use rug::Float;

use super::HypParams;
use crate::complex::{pow2_neg, Complex};
use crate::error::{Error, Result};
use crate::precision::{cover_log, CoveringPoint};
use crate::special::{digamma, euler_gamma, gamma, is_nonpositive_integer, rgamma};

const MAX_TERMS: usize = 200_000;

/// Largest `|z|` the series evaluators accept at `bits` of precision.
pub fn series_radius_limit(bits: u32) -> f64 {
    0.7 * bits as f64 * std::f64::consts::LN_2
}

/// Bits lost to cancellation when terms of size `e^{|z|}` sum to `O(1)`.
fn cancellation_guard(radius: f64) -> u32 {
    (radius * std::f64::consts::LOG2_E).ceil() as u32 + 40
}

fn check_radius(prec: u32, radius: f64) -> Result<()> {
    let limit = series_radius_limit(prec);
    if radius > limit {
        return Err(Error::SeriesDivergence { radius, limit });
    }
    Ok(())
}

/// Kummer's `phi(a, c; z) = sum (a)_n / (c)_n z^n / n!`.
pub fn phi(p: &HypParams, z: &Complex) -> Result<Complex> {
    if is_nonpositive_integer(&p.c) {
        return Err(Error::Domain(format!("phi needs c outside 0, -1, -2, ...; got {:?}", p.c)));
    }
    let prec = p.prec().max(z.prec());
    let radius = z.abs().to_f64();
    let wp = prec + cancellation_guard(radius);
    let a = p.a.with_prec(wp);
    let c = p.c.with_prec(wp);
    let z = z.with_prec(wp);
    let eps = pow2_neg(wp, wp);
    let min_terms = (radius + a.abs().to_f64() + c.abs().to_f64()) as usize + 2;
    let mut t = Complex::one(wp);
    let mut s = t.clone();
    let mut biggest = Float::with_val(wp, 1);
    for k in 0..MAX_TERMS {
        let kk = Complex::from_int(wp, k as i64);
        let num = &(&a + &kk) * &z;
        let den = (&c + &kk).scale_f64((k + 1) as f64);
        t = &(&t * &num) / &den;
        s = &s + &t;
        let m = t.abs();
        if m > biggest {
            biggest = m.clone();
        }
        if t.is_zero() || (k >= min_terms && m <= Float::with_val(wp, &eps * &biggest)) {
            return Ok(s.with_prec(prec));
        }
    }
    Err(Error::DivergentTail(format!("phi series after {MAX_TERMS} terms")))
}

/// `psi(a, 1; zeta)` by the logarithmic-case series
/// `-(1/Gamma(a)) sum (a)_k / (k!)^2 zeta^k [ln zeta + digamma(a+k) - 2 digamma(1+k)]`.
pub fn psi_log_case(a: &Complex, zeta: &CoveringPoint) -> Result<Complex> {
    let prec = a.prec().max(zeta.prec());
    let radius = zeta.radius.to_f64();
    check_radius(prec, radius)?;
    let wp = prec + cancellation_guard(radius);
    let zeta = zeta.with_prec(wp);
    let z = zeta.value();
    let a = a.with_prec(wp);
    if is_nonpositive_integer(&a) {
        return Ok(laguerre_case(&a, &z).with_prec(prec));
    }
    let lz = cover_log(&zeta);
    let eps = pow2_neg(wp, wp);
    let min_terms = (2.0 * radius + a.abs().to_f64()) as usize + 2;
    let mut dig_a = digamma(&a)?;
    let mut dig_1 = Complex::from_real(-euler_gamma(wp));
    let mut t = Complex::one(wp);
    let mut s = Complex::zero(wp);
    let mut biggest = Float::new(wp);
    for k in 0..MAX_TERMS {
        let bracket = &(&lz + &dig_a) - &dig_1.scale_f64(2.0);
        let term = &t * &bracket;
        s = &s + &term;
        let m = term.abs();
        if m > biggest {
            biggest = m.clone();
        }
        if k >= min_terms && m <= Float::with_val(wp, &eps * &biggest) {
            return Ok((-(&rgamma(&a) * &s)).with_prec(prec));
        }
        let ak = &a + &Complex::from_int(wp, k as i64);
        dig_a = &dig_a + &ak.recip();
        dig_1 = &dig_1 + &Complex::from_real(Float::with_val(wp, k + 1).recip());
        t = (&(&t * &ak) * &z).div_int(((k + 1) * (k + 1)) as i64);
    }
    Err(Error::DivergentTail(format!("logarithmic psi series after {MAX_TERMS} terms")))
}

/// `psi(-m, 1; z) = (-1)^m m! L_m(z)`, the limit of the series at `a = -m`.
fn laguerre_case(a: &Complex, z: &Complex) -> Complex {
    let wp = a.prec();
    let m = (-a.re.to_f64()).round() as i64;
    let mut t = Complex::one(wp);
    let mut s = t.clone();
    for k in 0..m {
        t = (&t * z).scale_f64((k - m) as f64).div_int((k + 1) * (k + 1));
        s = &s + &t;
    }
    let mut fact = Float::with_val(wp, 1);
    for j in 2..=m {
        fact *= j as u32;
    }
    if m % 2 == 1 {
        fact = -fact;
    }
    s.scale(&fact)
}

/// `psi(a, c; zeta)` for non-integer `c` through
/// `Gamma(1-c)/Gamma(a-c+1) phi(a,c;z) + Gamma(c-1)/Gamma(a) z^{1-c} phi(a-c+1, 2-c; z)`.
pub fn psi_kummer(p: &HypParams, zeta: &CoveringPoint) -> Result<Complex> {
    let prec = p.prec().max(zeta.prec());
    let radius = zeta.radius.to_f64();
    check_radius(prec, radius)?;
    let one = Complex::one(prec);
    let one_minus_c = &one - &p.c;
    let c_minus_one = &p.c - &one;
    let g1 = gamma(&one_minus_c.with_prec(prec + 32))?;
    let g2 = gamma(&c_minus_one.with_prec(prec + 32))?;
    let spread = (g1.abs().to_f64() + g2.abs().to_f64() + 1.0).log2().max(0.0).ceil() as u32;
    let wp = prec + spread + 32;
    let a = p.a.with_prec(wp);
    let c = p.c.with_prec(wp);
    let one = Complex::one(wp);
    let zeta = zeta.with_prec(wp);
    let z = zeta.value();
    let a2 = &(&a - &c) + &one;
    let c2 = &(&one + &one) - &c;
    let m1 = phi(&HypParams::new(a.clone(), c.clone()), &z)?;
    let m2 = phi(&HypParams::new(a2.clone(), c2), &z)?;
    let g1 = gamma(&(&one - &c))?;
    let g2 = gamma(&(&c - &one))?;
    let zpow = zeta.pow(&(&one - &c));
    let first = &(&g1 * &rgamma(&a2)) * &m1;
    let second = &(&(&g2 * &rgamma(&a)) * &zpow) * &m2;
    Ok((&first + &second).with_prec(prec))
}
