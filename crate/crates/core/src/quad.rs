//! Double-exponential quadrature at arbitrary precision.
//!
//! These routines are oracles: every closed form in the crate that has an
//! integral representation is checked against them in tests.

use rug::Float;

use crate::complex::{pi, pow2_neg, Complex};
use crate::error::{Error, Result};

const MAX_LEVEL: u32 = 12;
const GUARD: u32 = 24;

/// A node of a double-exponential rule: abscissa and weight for step 1.
struct Node {
    x: Float,
    w: Float,
}

fn integrate<M, F>(prec: u32, map: M, f: F) -> Result<Complex>
where
    M: Fn(&Float) -> Option<Node>,
    F: Fn(&Float) -> Complex,
{
    let wp = prec + GUARD;
    let eps = pow2_neg(wp, wp);
    let mut raw = Complex::zero(wp);
    let mut l1 = Float::new(wp);
    let mut prev: Option<Complex> = None;
    let mut last_diff = f64::INFINITY;

    for level in 0..=MAX_LEVEL {
        let h = pow2_neg(wp, level);
        let (start, stride) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
        for dir in [1i64, -1] {
            let mut quiet = 0;
            let mut j = if dir == 1 { start } else { -start.max(1) };
            if dir == -1 && level == 0 {
                j = -1;
            }
            loop {
                let t = Float::with_val(wp, &h * j);
                if t.to_f64().abs() > 12.0 {
                    break;
                }
                let Some(node) = map(&t) else { break };
                let v = f(&node.x);
                if !v.is_finite() {
                    if t.to_f64().abs() < 1.0 {
                        return Err(Error::QuadratureFailure(format!("integrand not finite at interior node {}", node.x.to_f64())));
                    }
                    break;
                }
                let term = v.scale(&node.w);
                let mag = term.abs();
                l1 += &mag;
                raw = &raw + &term;
                // Only the outer tails may end the sweep: the integrand can vanish inside.
                if t.to_f64().abs() >= 3.0 && mag < Float::with_val(wp, &eps * &l1) {
                    quiet += 1;
                    if quiet >= 3 {
                        break;
                    }
                } else {
                    quiet = 0;
                }
                j += dir * stride;
            }
        }
        let s = raw.scale(&h);
        if let Some(p) = &prev {
            let diff = (&s - p).abs();
            let scale = Float::with_val(wp, &l1 * &h);
            let target = pow2_neg(wp, prec - 8) * scale;
            if level >= 3 && diff <= target {
                return Ok(s.with_prec(prec));
            }
            last_diff = diff.to_f64();
            log::trace!("tanh-sinh level {level}: change {last_diff:e}");
        }
        prev = Some(s);
    }
    Err(Error::QuadratureFailure(format!(
        "no convergence after {MAX_LEVEL} levels (last change {last_diff:e})"
    )))
}

/// `int_a^b f(x) dx` by the tanh-sinh rule. Endpoint singularities are tolerated.
pub fn tanh_sinh<F>(prec: u32, a: &Float, b: &Float, f: F) -> Result<Complex>
where
    F: Fn(&Float) -> Complex,
{
    let wp = prec + GUARD;
    let c = Float::with_val(wp, a + b) / 2u32;
    let d = Float::with_val(wp, b - a) / 2u32;
    let half_pi = pi(wp) / 2u32;
    let a = Float::with_val(wp, a);
    let b = Float::with_val(wp, b);
    let map = |t: &Float| {
        let (sh, ch) = t.clone().sinh_cosh(Float::new(wp));
        let u = Float::with_val(wp, &half_pi * &sh);
        let eu = Float::with_val(wp, u.exp_ref());
        let emu = Float::with_val(wp, eu.recip_ref());
        let cosh2 = Float::with_val(wp, &eu + &emu).square() / 4u32;
        let w = Float::with_val(wp, &d * &half_pi) * ch / cosh2;
        let x = if t.is_sign_positive() {
            // b - d (1 - tanh u)
            let gap = Float::with_val(wp, &d * 2u32) / (Float::with_val(wp, eu.square_ref()) + 1u32);
            Float::with_val(wp, &b - &gap)
        } else {
            let gap = Float::with_val(wp, &d * 2u32) / (Float::with_val(wp, emu.square_ref()) + 1u32);
            Float::with_val(wp, &a + &gap)
        };
        if x <= a || x >= b {
            if t.is_zero() {
                return Some(Node { x: c.clone(), w });
            }
            return None;
        }
        Some(Node { x, w })
    };
    integrate(prec, map, f)
}

/// `int_a^inf f(x) dx` by the exp-sinh rule; `f` must decay at infinity.
pub fn exp_sinh<F>(prec: u32, a: &Float, f: F) -> Result<Complex>
where
    F: Fn(&Float) -> Complex,
{
    let wp = prec + GUARD;
    let half_pi = pi(wp) / 2u32;
    let a = Float::with_val(wp, a);
    let map = |t: &Float| {
        let (sh, ch) = t.clone().sinh_cosh(Float::new(wp));
        let eu = Float::with_val(wp, &half_pi * &sh).exp();
        let w = Float::with_val(wp, &half_pi * &ch) * &eu;
        let x = Float::with_val(wp, &a + &eu);
        if x == a || !x.is_finite() {
            return None;
        }
        Some(Node { x, w })
    };
    integrate(prec, map, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: &Complex, b: &Float, tol: f64) -> bool {
        (Float::with_val(P, &a.re - b)).abs() < Float::with_val(P, tol) && a.im.clone().abs() < Float::with_val(P, tol)
    }

    #[test]
    fn polynomial_and_endpoint_singularity() {
        let zero = Float::new(P);
        let one = Float::with_val(P, 1);
        let v = tanh_sinh(P, &zero, &one, |x| Complex::from_real(Float::with_val(P, x.square_ref()))).unwrap();
        assert!(close(&v, &(Float::with_val(P, 1) / 3u32), 1e-55));
        // int_0^1 x^{-1/2} = 2
        let v = tanh_sinh(P, &zero, &one, |x| Complex::from_real(Float::with_val(P, x.sqrt_ref()).recip())).unwrap();
        assert!(close(&v, &Float::with_val(P, 2), 1e-55));
    }

    #[test]
    fn half_line_gaussian() {
        let zero = Float::new(P);
        let v = exp_sinh(P, &zero, |x| Complex::from_real((-Float::with_val(P, x.square_ref())).exp())).unwrap();
        let expect = Float::with_val(P, pi(P).sqrt_ref()) / 2u32;
        assert!(close(&v, &expect, 1e-55));
        // int_0^inf e^{-t}/(1+t) = e E1(1)
        let v = exp_sinh(P, &zero, |t| Complex::from_real((-t.clone()).exp() / (Float::with_val(P, t + 1u32)))).unwrap();
        assert!((v.re.to_f64() - 0.596_347_362_323_194).abs() < 1e-14);
    }
}
