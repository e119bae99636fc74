//! Scalar special functions at arbitrary precision.
//!
//! Complex `ln Gamma` and digamma use upward recurrence followed by the
//! Stirling series; real `zeta(k)`, `erfc` and constants come from MPFR.

use std::cell::RefCell;

use rug::float::Constant;
use rug::Float;

use crate::complex::{pi, pow2_neg, Complex};
use crate::error::{Error, Result};

/// Extra bits carried through every evaluation in this module.
const GUARD: u32 = 32;

thread_local! {
    static BERNOULLI: RefCell<(u32, Vec<Float>)> = const { RefCell::new((0, Vec::new())) };
}

/// `B_{2k}` for `k = 1..=count`, cached per thread and precision.
fn with_bernoulli<R>(prec: u32, count: usize, f: impl FnOnce(&[Float]) -> R) -> R {
    BERNOULLI.with(|cell| {
        let mut cache = cell.borrow_mut();
        if cache.0 < prec {
            cache.0 = prec;
            cache.1.clear();
        }
        let p = cache.0;
        while cache.1.len() < count {
            let k = cache.1.len() as u32 + 1;
            let two_pi = pi(p) * 2u32;
            let num = Float::with_val(p, Float::factorial(2 * k)) * Float::with_val(p, Float::zeta_u(2 * k)) * 2u32;
            let den = Float::with_val(p, rug::ops::Pow::pow(&two_pi, 2 * k));
            let mut b = num / den;
            if k.is_multiple_of(2) {
                b = -b;
            }
            cache.1.push(b);
        }
        f(&cache.1[..count])
    })
}

/// `B_{2k}` at the given precision (`k >= 1`).
pub fn bernoulli_even(prec: u32, k: usize) -> Float {
    with_bernoulli(prec, k, |b| Float::with_val(prec, &b[k - 1]))
}

pub fn is_nonpositive_integer(z: &Complex) -> bool {
    z.im.is_zero() && !z.re.is_sign_positive() && z.re.is_integer() || (z.im.is_zero() && z.re.is_zero())
}

fn pole(z: &Complex) -> Error {
    Error::Pole { at: format!("{:?}", z) }
}

/// Shift count that moves `z` into the region where Stirling converges to `wp` bits.
fn stirling_shift(z: &Complex, wp: u32) -> (u32, f64) {
    let x = 0.125 * wp as f64 + 8.0;
    let re = z.re.to_f64();
    let modulus = z.abs().to_f64();
    if re > 0.0 && modulus >= x {
        (0, x)
    } else {
        ((x - re).ceil().max(0.0) as u32, x)
    }
}

/// Principal branch of `ln Gamma(z)`: continuous off `(-inf, 0]`, real on the positive axis.
pub fn log_gamma(z: &Complex) -> Result<Complex> {
    if is_nonpositive_integer(z) {
        return Err(pole(z));
    }
    let p = z.prec();
    let wp = p + GUARD;
    let zw = z.with_prec(wp);
    let (n, _) = stirling_shift(&zw, wp);

    // Product of (z + k) with its argument sum tracked separately to fix the branch.
    let mut prod = Complex::one(wp);
    let mut arg_sum = 0f64;
    for k in 0..n {
        let t = &zw + &Complex::from_int(wp, k as i64);
        arg_sum += t.im.to_f64().atan2(t.re.to_f64());
        prod = &prod * &t;
    }
    let w = &zw + &Complex::from_int(wp, n as i64);
    let mut s = stirling_log_gamma(&w)?;
    if n > 0 {
        let mut l = prod.ln();
        let two_pi = pi(wp) * 2u32;
        let m = ((arg_sum - l.im.to_f64()) / std::f64::consts::TAU).round();
        l.im += two_pi * Float::with_val(wp, m);
        s = &s - &l;
    }
    Ok(s.with_prec(p))
}

fn stirling_log_gamma(w: &Complex) -> Result<Complex> {
    let wp = w.prec();
    let half = Float::with_val(wp, 0.5);
    let lnw = w.ln();
    let ln2pi = Float::with_val(wp, pi(wp) * 2u32).ln();
    let mut s = &(&(w - &Complex::from_real(half.clone())) * &lnw) - w;
    s.re += ln2pi * half;
    let eps = pow2_neg(wp, wp);
    let winv = w.recip();
    let winv2 = winv.square();
    let mut wpow = winv.clone();
    let mut k = 1usize;
    let mut prev = None::<Float>;
    loop {
        let b = bernoulli_even(wp, k);
        let denom = Float::with_val(wp, (2 * k) as u64 * (2 * k - 1) as u64);
        let term = wpow.scale(&(b / denom));
        let tmag = term.abs();
        if let Some(pm) = &prev {
            if &tmag > pm {
                return Err(Error::DivergentTail(format!("Stirling series stalled at |w| = {}", w.abs().to_f64())));
            }
        }
        s = &s + &term;
        if tmag < eps {
            break;
        }
        prev = Some(tmag);
        wpow = &wpow * &winv2;
        k += 1;
    }
    Ok(s)
}

pub fn gamma(z: &Complex) -> Result<Complex> {
    Ok(log_gamma(z)?.exp())
}

/// `1/Gamma(z)`, entire; exactly zero at the poles of Gamma.
pub fn rgamma(z: &Complex) -> Complex {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex::zero(z.prec()),
    }
}

/// `Gamma'(z)/Gamma(z)`.
pub fn digamma(z: &Complex) -> Result<Complex> {
    if is_nonpositive_integer(z) {
        return Err(pole(z));
    }
    let p = z.prec();
    let wp = p + GUARD;
    let zw = z.with_prec(wp);
    let (n, _) = stirling_shift(&zw, wp);
    let mut shift_sum = Complex::zero(wp);
    for k in 0..n {
        let t = &zw + &Complex::from_int(wp, k as i64);
        shift_sum = &shift_sum + &t.recip();
    }
    let w = &zw + &Complex::from_int(wp, n as i64);
    let winv = w.recip();
    let winv2 = winv.square();
    let mut s = &w.ln() - &winv.scale_f64(0.5);
    let eps = pow2_neg(wp, wp);
    let mut wpow = winv2.clone();
    let mut k = 1usize;
    loop {
        let b = bernoulli_even(wp, k);
        let term = wpow.scale(&(b / Float::with_val(wp, 2 * k as u64)));
        s = &s - &term;
        if term.abs() < eps {
            break;
        }
        if k > 4 * wp as usize {
            return Err(Error::DivergentTail("digamma Stirling series".into()));
        }
        wpow = &wpow * &winv2;
        k += 1;
    }
    Ok((&s - &shift_sum).with_prec(p))
}

/// Riemann `zeta(k)` for integer `k >= 2`.
pub fn zeta_int(prec: u32, k: u32) -> Result<Float> {
    if k < 2 {
        return Err(Error::Domain(format!("zeta_int needs k >= 2, got {k}")));
    }
    Ok(Float::with_val(prec, Float::zeta_u(k)))
}

/// Euler's constant.
pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// `zeta'(2) = -sum ln k / k^2` by Euler-Maclaurin summation.
pub fn zeta_prime_two(prec: u32) -> Float {
    let wp = prec + GUARD;
    let big_n: u32 = (wp / 4).max(20);
    let mut s = Float::new(wp);
    for k in 2..big_n {
        let kf = Float::with_val(wp, k);
        s += Float::with_val(wp, kf.ln_ref()) / kf.square();
    }
    // f(x) = x^{-2} ln x; tail = integral + f(N)/2 - sum B_{2j}/(2j)! f^{(2j-1)}(N)
    let nf = Float::with_val(wp, big_n);
    let ln_n = Float::with_val(wp, nf.ln_ref());
    let integral = (Float::with_val(wp, &ln_n + 1u32)) / &nf;
    let f_n = Float::with_val(wp, &ln_n / Float::with_val(wp, nf.square_ref()));
    s += integral + f_n / 2u32;
    // m-th derivative of x^sigma ln x is x^{sigma-m}(a_m ln x + a_m'), with sigma = -2
    let sigma = -2i64;
    let mut a = Float::with_val(wp, 1);
    let mut da = Float::new(wp);
    let eps = pow2_neg(wp, wp);
    let mut fact = Float::with_val(wp, 1);
    for m in 1..(4 * wp as i64) {
        let c = Float::with_val(wp, sigma - (m - 1));
        da = Float::with_val(wp, &da * &c) + &a;
        a *= c;
        fact *= m;
        if m % 2 == 1 {
            let j = ((m + 1) / 2) as usize;
            let b = bernoulli_even(wp, j);
            let xpow = Float::with_val(wp, rug::ops::Pow::pow(&nf, sigma - m));
            let deriv = (Float::with_val(wp, &a * &ln_n) + &da) * xpow;
            let term = b * deriv / Float::with_val(wp, &fact * (m + 1));
            let small = Float::with_val(wp, term.abs_ref()) < eps;
            s -= term;
            if small {
                break;
            }
        }
    }
    Float::with_val(prec, -s)
}

/// `zeta'(-1) = 1/12 - ln A`, with the Glaisher constant from `zeta'(2)`.
pub fn zeta_prime_minus_one(prec: u32) -> Float {
    let wp = prec + GUARD;
    let p = pi(wp);
    let ln2pi = Float::with_val(wp, Float::with_val(wp, &p * 2u32).ln_ref());
    let ln_a = (euler_gamma(wp) + ln2pi) / 12u32 - zeta_prime_two(wp) / (Float::with_val(wp, p.square_ref()) * 2u32);
    Float::with_val(prec, Float::with_val(wp, 1) / 12u32 - ln_a)
}

/// Complementary error function of a real argument.
pub fn erfc(x: &Float) -> Float {
    Float::with_val(x.prec(), x.erfc_ref())
}

/// `G(1+beta) G(1-beta)` from the Taylor series of `ln G(1+z)`.
pub fn barnes_g_pair(beta: &Complex) -> Result<Complex> {
    let p = beta.prec();
    let wp = p + GUARD;
    let b = beta.with_prec(wp);
    let r = b.abs();
    if r >= 1 {
        return Err(Error::Domain(format!("barnes_g_pair needs |beta| < 1, got {}", r.to_f64())));
    }
    let b2 = b.square();
    let mut s = -b2.scale(&(euler_gamma(wp) + 1u32));
    let eps = pow2_neg(wp, wp);
    let mut pow = b2.square();
    let mut j = 2u32;
    loop {
        let z = zeta_int(wp, 2 * j - 1)?;
        let term = pow.scale(&(z / j));
        s = &s - &term;
        if term.abs() < eps {
            break;
        }
        pow = &pow * &b2;
        j += 1;
        if j > 1_000_000 {
            return Err(Error::DivergentTail("Barnes G series".into()));
        }
    }
    Ok(s.exp().with_prec(p))
}

/// Value of `f(a) = -Gamma(1-a)/Gamma(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRatioValue {
    pub value: Complex,
}

/// `f(a) = -Gamma(1-a)/Gamma(a)`; zero at `a = 0, -1, -2, ...`.
pub fn gamma_ratio_f(a: &Complex) -> Result<GammaRatioValue> {
    let p = a.prec();
    let one_minus = &Complex::one(p) - a;
    if is_nonpositive_integer(&one_minus) {
        return Err(pole(&one_minus));
    }
    if is_nonpositive_integer(a) {
        return Ok(GammaRatioValue { value: Complex::zero(p) });
    }
    let l = &log_gamma(&one_minus)? - &log_gamma(a)?;
    Ok(GammaRatioValue { value: -l.exp() })
}
