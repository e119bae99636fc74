//! Moments of the jump weight `e^{-x^2} e^{+-i beta pi}`.

use rug::Float;

use crate::complex::{pi, Complex};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;
use crate::quad;
use crate::special::erfc;

/// Extra bits for the half-tail recurrence, which may cancel for negative `mu0`.
const GUARD: u32 = 64;

/// Symbol parameters: jump exponent `beta` and jump location `mu0`.
///
/// When built with [`JumpWeight::scaled`], `mu0 = lambda0 * sqrt(2n)` and both
/// `lambda0` and `n` are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpWeight {
    pub beta: Complex,
    pub mu0: Float,
    pub lambda0: Option<Float>,
    pub n_scale: Option<usize>,
}

fn check_strip(beta: &Complex) -> Result<()> {
    let r = beta.re.to_f64();
    if !(r > -0.5 && r <= 0.5) || !beta.is_finite() {
        return Err(Error::Domain(format!("Re beta = {r} outside (-1/2, 1/2]")));
    }
    Ok(())
}

impl JumpWeight {
    pub fn new(beta: Complex, mu0: Float) -> Result<Self> {
        check_strip(&beta)?;
        Ok(JumpWeight { beta, mu0, lambda0: None, n_scale: None })
    }

    /// Jump at `mu0 = lambda0 * sqrt(2n)`.
    pub fn scaled(beta: Complex, lambda0: Float, n: usize) -> Result<Self> {
        check_strip(&beta)?;
        if n == 0 {
            return Err(Error::Domain("n_scale must be positive".into()));
        }
        let p = lambda0.prec().max(beta.prec());
        let root = Float::with_val(p, 2 * n as u64).sqrt();
        let mu0 = Float::with_val(p, &lambda0 * &root);
        Ok(JumpWeight { beta, mu0, lambda0: Some(lambda0), n_scale: Some(n) })
    }

    /// Same jump location, different `beta`.
    pub fn with_beta(&self, beta: Complex) -> Result<Self> {
        check_strip(&beta)?;
        Ok(JumpWeight { beta, ..self.clone() })
    }

    /// Same `beta` and `lambda0`, rescaled to degree `n` (plain copy when unscaled).
    pub fn rescaled(&self, n: usize) -> Result<Self> {
        match &self.lambda0 {
            Some(l) => JumpWeight::scaled(self.beta.clone(), l.clone(), n),
            None => Ok(self.clone()),
        }
    }

    /// Copy with all parameters rounded to `prec` bits. Scaled weights recompute `mu0`.
    pub fn at_prec(&self, prec: u32) -> Self {
        let beta = self.beta.with_prec(prec);
        match (&self.lambda0, self.n_scale) {
            (Some(l), Some(n)) => {
                let l = Float::with_val(prec, l);
                let mu0 = Float::with_val(prec, &l * Float::with_val(prec, 2 * n as u64).sqrt());
                JumpWeight { beta, mu0, lambda0: Some(l), n_scale: Some(n) }
            }
            _ => JumpWeight { beta, mu0: Float::with_val(prec, &self.mu0), lambda0: None, n_scale: None },
        }
    }

    /// `e^{i beta pi}` and `e^{-i beta pi}` at the given precision.
    pub fn phases(&self, prec: u32) -> (Complex, Complex) {
        let ib = self.beta.with_prec(prec).mul_i().scale(&pi(prec));
        (ib.exp(), (-ib).exp())
    }
}

/// Moments `m_0 ... m_{max_order}` of one weight.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub weight: JumpWeight,
    pub max_order: usize,
    pub m: Vec<Complex>,
}

impl MomentTable {
    pub fn get(&self, k: usize) -> &Complex {
        &self.m[k]
    }

    pub fn prec(&self) -> u32 {
        self.m[0].prec()
    }
}

/// `w(x)`; the point `x = mu0` takes the right-hand branch.
pub fn weight_value(ctx: &PrecisionContext, w: &JumpWeight, x: &Float) -> Complex {
    let p = ctx.bits();
    let (left, right) = w.phases(p);
    let g = (-Float::with_val(p, x.square_ref())).exp();
    let phase = if *x < w.mu0 { left } else { right };
    phase.scale(&g)
}

/// `G_k(mu) = int_mu^inf x^k e^{-x^2} dx`.
pub fn half_tail(ctx: &PrecisionContext, k: usize, mu: &Float) -> Float {
    half_tails(ctx.bits(), k, mu).pop().unwrap_or_else(|| Float::new(ctx.bits()))
}

fn half_tails(prec: u32, max_k: usize, mu: &Float) -> Vec<Float> {
    let wp = prec + GUARD;
    let mu = Float::with_val(wp, mu);
    let e = (-Float::with_val(wp, mu.square_ref())).exp() / 2u32;
    let sqrt_pi = Float::with_val(wp, pi(wp).sqrt_ref());
    let mut g: Vec<Float> = Vec::with_capacity(max_k + 1);
    g.push(sqrt_pi / 2u32 * erfc(&mu));
    if max_k >= 1 {
        g.push(e.clone());
    }
    // mu^{k-1} e^{-mu^2}/2, advanced one power at a time
    let mut pw = Float::with_val(wp, &e * &mu);
    for k in 2..=max_k {
        let v = Float::with_val(wp, &g[k - 2] * (k as u32 - 1)) / 2u32 + &pw;
        g.push(v);
        pw *= &mu;
    }
    g.into_iter().map(|x| Float::with_val(prec, x)).collect()
}

/// `Gamma((k+1)/2)` for even `k`, zero for odd `k`.
pub(crate) fn gaussian_full(prec: u32, k: usize) -> Float {
    if k % 2 == 1 {
        return Float::new(prec);
    }
    // Gamma(j + 1/2) = sqrt(pi) (2j-1)!! / 2^j
    let j = k / 2;
    let mut v = Float::with_val(prec, pi(prec).sqrt_ref());
    for i in 0..j {
        v *= 2 * i as u32 + 1;
        v /= 2u32;
    }
    v
}

fn assemble(prec: u32, w: &JumpWeight, k: usize, g: &Float) -> Complex {
    let (left, _) = w.phases(prec);
    let sin_pb = w.beta.with_prec(prec).scale(&pi(prec)).sin();
    let f = gaussian_full(prec, k);
    // e^{i beta pi} F_k - 2i sin(beta pi) G_k
    &left.scale(&f) - &sin_pb.mul_i().scale(&(Float::with_val(prec, g) * 2u32))
}

/// `m_k = e^{i beta pi} F_k - 2i sin(beta pi) G_k(mu0)`.
pub fn moment(ctx: &PrecisionContext, w: &JumpWeight, k: usize) -> Complex {
    let p = ctx.bits();
    let g = half_tail(ctx, k, &w.mu0);
    assemble(p, w, k, &g)
}

pub fn moment_table(ctx: &PrecisionContext, w: &JumpWeight, max_order: usize) -> MomentTable {
    let p = ctx.bits();
    let w = w.at_prec(p);
    let g = half_tails(p, max_order, &w.mu0);
    let m = g.iter().enumerate().map(|(k, gk)| assemble(p, &w, k, gk)).collect();
    MomentTable { weight: w, max_order, m }
}

/// `int x^k w(x) dx` by quadrature on both half-lines around `mu0`.
pub fn quadrature_moment_oracle(ctx: &PrecisionContext, w: &JumpWeight, k: usize) -> Result<Complex> {
    let p = ctx.bits() + 32;
    let mu0 = Float::with_val(p, &w.mu0);
    let integrand = |x: Float| {
        let xk = rug::ops::Pow::pow(Float::with_val(p, &x), k as u32);
        let e = (-Float::with_val(p, x.square_ref())).exp();
        Complex::from_real(xk * e)
    };
    let zero = Float::new(p);
    let right = quad::exp_sinh(p, &zero, |y| integrand(Float::with_val(p, &mu0 + y)))?;
    let left = quad::exp_sinh(p, &zero, |y| integrand(Float::with_val(p, &mu0 - y)))?;
    let (lp, rp) = w.phases(p);
    Ok((&(&lp * &left) + &(&rp * &right)).with_prec(ctx.bits()))
}
