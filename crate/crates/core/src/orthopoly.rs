//! Exact finite-n orthogonal polynomial data from the Hankel moment matrix.
//!
//! The Hankel matrix `H_{jk} = m_{j+k}` is factored as `L diag(d) L^T`
//! without pivoting, so that `d_j` are the norms `h_j` and the rows of
//! `L^{-1}` are the monic polynomials. Every identity that ties these
//! objects together has a residual function here.

use rug::Float;

use crate::complex::{pi, pow2_neg, Complex};
use crate::error::{Error, Result};
use crate::moments::{gaussian_full, moment_table, JumpWeight, MomentTable};
use crate::precision::PrecisionContext;

/// Unit lower-triangular factor (strict part, row `i` has `i` entries) and pivots.
#[derive(Debug, Clone)]
pub struct LdlFactor {
    pub l: Vec<Vec<Complex>>,
    pub d: Vec<Complex>,
}

/// Norms, leading coefficients and monic coefficient vectors up to degree `n_max`.
#[derive(Debug, Clone)]
pub struct OPData {
    pub weight: JumpWeight,
    pub n_max: usize,
    /// `h_0 ..= h_{n_max}`.
    pub h: Vec<Complex>,
    /// Principal square roots of `1/h_k`.
    pub kappa: Vec<Complex>,
    /// `coeffs[k][i]` is the coefficient of `x^i` in the monic `p_k`.
    pub coeffs: Vec<Vec<Complex>>,
    /// `beta_sub[n-1] = beta_n` for `n = 1 ..= n_max`.
    pub beta_sub: Vec<Complex>,
    /// `gamma_sub[n-1] = gamma_n` (zero for `n = 1`).
    pub gamma_sub: Vec<Complex>,
    pub moments: MomentTable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrencePair {
    pub a: Complex,
    pub b: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct YEntries {
    pub y11: Complex,
    pub y21: Complex,
}

fn need_order(t: &MomentTable, order: usize) -> Result<()> {
    if t.max_order < order {
        return Err(Error::Domain(format!("moment table has order {} but {} is needed", t.max_order, order)));
    }
    Ok(())
}

/// `H = L diag(d) L^T` for the leading `n x n` Hankel block.
pub fn ldl_factor(t: &MomentTable, n: usize) -> Result<LdlFactor> {
    if n == 0 {
        return Ok(LdlFactor { l: Vec::new(), d: Vec::new() });
    }
    need_order(t, 2 * n - 2)?;
    let p = t.prec();
    let zero_test = p - p / 8;
    let mut l: Vec<Vec<Complex>> = Vec::with_capacity(n);
    let mut d: Vec<Complex> = Vec::with_capacity(n);
    // ld[i][k] = L_ik d_k, cached for the inner products
    let mut ld: Vec<Vec<Complex>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row: Vec<Complex> = Vec::with_capacity(i);
        for j in 0..i {
            let mut s = t.m[i + j].clone();
            for k in 0..j {
                s = &s - &(&row[k] * &ld[j][k]);
            }
            row.push(&s / &d[j]);
        }
        let mut s = t.m[2 * i].clone();
        // m_{2i} itself may come from cancellation, so the Gaussian moment sets the scale
        let mut scale = t.m[2 * i].abs() + gaussian_full(p, 2 * i);
        let mut ldi: Vec<Complex> = Vec::with_capacity(i);
        for (k, lik) in row.iter().enumerate() {
            let v = lik * &d[k];
            let c = lik * &v;
            scale += c.abs();
            s = &s - &c;
            ldi.push(v);
        }
        if s.abs() <= pow2_neg(p, zero_test) * scale {
            return Err(Error::DegeneratePivot { index: i });
        }
        l.push(row);
        d.push(s);
        ld.push(ldi);
    }
    Ok(LdlFactor { l, d })
}

/// `D_n` as the product of the LDL pivots; `D_0 = 1`.
pub fn hankel_det(t: &MomentTable, n: usize) -> Result<Complex> {
    let f = ldl_factor(t, n)?;
    let mut acc = Complex::one(t.prec());
    for dj in &f.d {
        acc = &acc * dj;
    }
    Ok(acc)
}

/// Determinant of the same Hankel block by Gaussian elimination with partial pivoting.
pub fn hankel_det_pivoted(t: &MomentTable, n: usize) -> Result<Complex> {
    if n == 0 {
        return Ok(Complex::one(t.prec()));
    }
    need_order(t, 2 * n - 2)?;
    let mut a: Vec<Vec<Complex>> = (0..n).map(|i| (0..n).map(|j| t.m[i + j].clone()).collect()).collect();
    let mut det = Complex::one(t.prec());
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if a[piv][col].is_zero() {
            return Ok(Complex::zero(t.prec()));
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..n {
            let f = &a[r][col] * &inv;
            if f.is_zero() {
                continue;
            }
            for c in col + 1..n {
                let v = &f * &a[col][c];
                a[r][c] = &a[r][c] - &v;
            }
        }
    }
    Ok(det)
}

/// Orthogonal polynomial data of degrees `0 ..= n_max`.
pub fn op_data(t: &MomentTable, n_max: usize) -> Result<OPData> {
    need_order(t, 2 * n_max)?;
    let size = n_max + 1;
    let f = ldl_factor(t, size)?;
    let p = t.prec();
    let mut coeffs: Vec<Vec<Complex>> = Vec::with_capacity(size);
    for k in 0..size {
        let mut c = vec![Complex::zero(p); k + 1];
        c[k] = Complex::one(p);
        for (j, ckj) in f.l[k].iter().enumerate() {
            for (i, v) in coeffs[j].iter().enumerate() {
                c[i] = &c[i] - &(ckj * v);
            }
        }
        coeffs.push(c);
    }
    let kappa = f.d.iter().map(|h| h.recip().sqrt()).collect();
    let beta_sub = (1..size).map(|n| coeffs[n][n - 1].clone()).collect();
    let gamma_sub = (1..size).map(|n| if n >= 2 { coeffs[n][n - 2].clone() } else { Complex::zero(p) }).collect();
    Ok(OPData { weight: t.weight.clone(), n_max, h: f.d, kappa, coeffs, beta_sub, gamma_sub, moments: t.clone() })
}

/// Moments and orthogonal polynomial data for a weight in one call.
pub fn op_data_for(ctx: &PrecisionContext, w: &JumpWeight, n_max: usize) -> Result<OPData> {
    let t = moment_table(ctx, w, 2 * n_max);
    op_data(&t, n_max)
}

impl OPData {
    pub fn prec(&self) -> u32 {
        self.h[0].prec()
    }

    /// `beta_n`, the `x^{n-1}` coefficient of the monic `p_n` (`n >= 1`).
    pub fn beta_n(&self, n: usize) -> &Complex {
        &self.beta_sub[n - 1]
    }

    /// `gamma_n`, the `x^{n-2}` coefficient of the monic `p_n` (`n >= 1`).
    pub fn gamma_n(&self, n: usize) -> &Complex {
        &self.gamma_sub[n - 1]
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Domain(format!("degree {n} exceeds n_max = {}", self.n_max)));
        }
        Ok(())
    }

    /// `D_n = prod_{j<n} h_j`.
    pub fn det(&self, n: usize) -> Complex {
        let mut acc = Complex::one(self.prec());
        for h in &self.h[..n] {
            acc = &acc * h;
        }
        acc
    }

    /// `ln D_n` as the sum of principal logs of the norms.
    pub fn log_det(&self, n: usize) -> Complex {
        let mut acc = Complex::zero(self.prec());
        for h in &self.h[..n] {
            acc = &acc + &h.ln();
        }
        acc
    }

    /// `D_n = prod_{j<n} kappa_j^{-2}`, formed from the stored leading coefficients.
    pub fn det_from_kappa(&self, n: usize) -> Complex {
        let mut acc = Complex::one(self.prec());
        for k in &self.kappa[..n] {
            acc = &acc * &k.square().recip();
        }
        acc
    }
}

/// Horner evaluation of a coefficient vector (ascending powers).
pub fn horner(c: &[Complex], x: &Complex) -> Complex {
    let mut s = Complex::zero(x.prec().max(c.first().map(|v| v.prec()).unwrap_or(64)));
    for v in c.iter().rev() {
        s = &(&s * x) + v;
    }
    s
}

/// Coefficients of the `x`-derivative.
pub fn derivative(c: &[Complex]) -> Vec<Complex> {
    c.iter().enumerate().skip(1).map(|(i, v)| v.scale_f64(i as f64)).collect()
}

/// The bilinear form `<p, q> = int p q w` expressed through the moments.
pub fn moment_form(m: &[Complex], p: &[Complex], q: &[Complex]) -> Complex {
    let prec = m[0].prec();
    let mut s = Complex::zero(prec);
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut inner = Complex::zero(prec);
        for (j, b) in q.iter().enumerate() {
            inner = &inner + &(b * &m[i + j]);
        }
        s = &s + &(a * &inner);
    }
    s
}

/// Monic `p_n(x)`.
pub fn eval_monic(d: &OPData, n: usize, x: &Complex) -> Result<Complex> {
    d.check_degree(n)?;
    Ok(horner(&d.coeffs[n], x))
}

/// `A_n = beta_n - beta_{n+1}`, `B_n = h_n / h_{n-1}`.
pub fn recurrence(d: &OPData, n: usize) -> Result<RecurrencePair> {
    if n == 0 {
        return Err(Error::Domain("recurrence needs n >= 1".into()));
    }
    d.check_degree(n + 1)?;
    let a = d.beta_n(n) - d.beta_n(n + 1);
    let b = &d.h[n] / &d.h[n - 1];
    Ok(RecurrencePair { a, b })
}

/// `B_n = gamma_n - gamma_{n+1} - beta_n^2 + beta_n beta_{n+1}` from the coefficients alone.
pub fn recurrence_b_from_coefficients(d: &OPData, n: usize) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("recurrence needs n >= 1".into()));
    }
    d.check_degree(n + 1)?;
    let bn = d.beta_n(n);
    let bn1 = d.beta_n(n + 1);
    Ok(&(&(d.gamma_n(n) - d.gamma_n(n + 1)) - &bn.square()) + &(bn * bn1))
}

/// `A_n = -h_n^{-1} p_n(mu0)^2 e^{-mu0^2} sinh(i pi beta)`, local at the jump.
pub fn recurrence_a_local(d: &OPData, n: usize) -> Result<Complex> {
    d.check_degree(n)?;
    let p = d.prec();
    let mu0 = Complex::from_real(Float::with_val(p, &d.weight.mu0));
    let pn = horner(&d.coeffs[n], &mu0);
    let e = (-Float::with_val(p, d.weight.mu0.square_ref())).exp();
    let sh = d.weight.beta.with_prec(p).scale(&pi(p)).mul_i().sinh();
    Ok(-(&(&pn.square() * &sh).scale(&e) / &d.h[n]))
}

/// `max_x |x p_n - p_{n+1} - A_n p_n - B_n p_{n-1}|` over the given points, scaled by `1 + |x p_n|`.
pub fn three_term_residual(d: &OPData, n: usize, xs: &[Complex]) -> Result<Float> {
    let r = recurrence(d, n)?;
    let mut worst = Float::new(d.prec());
    for x in xs {
        let pn = horner(&d.coeffs[n], x);
        let xpn = x * &pn;
        let rhs = &(&horner(&d.coeffs[n + 1], x) + &(&r.a * &pn)) + &(&r.b * &horner(&d.coeffs[n - 1], x));
        let res = (&xpn - &rhs).abs() / (Float::with_val(d.prec(), 1) + xpn.abs());
        if res > worst {
            worst = res;
        }
    }
    Ok(worst)
}

/// `Y_11 = p_n(z)` (monic) and `Y_21 = -2 pi i p_{n-1}(z) / h_{n-1}`.
pub fn y_entries(d: &OPData, n: usize, z: &Complex) -> Result<YEntries> {
    if n == 0 {
        return Err(Error::Domain("y_entries needs n >= 1".into()));
    }
    d.check_degree(n)?;
    let p = d.prec();
    let y11 = horner(&d.coeffs[n], z);
    let two_pi_i = Complex::i(p).scale(&(pi(p) * 2u32));
    let y21 = -(&(&two_pi_i * &horner(&d.coeffs[n - 1], z)) / &d.h[n - 1]);
    Ok(YEntries { y11, y21 })
}

/// Both sides of the Christoffel-Darboux formula at `x`.
pub fn christoffel_darboux_sides(d: &OPData, n: usize, x: &Complex) -> Result<(Complex, Complex)> {
    if n == 0 {
        return Err(Error::Domain("Christoffel-Darboux needs n >= 1".into()));
    }
    d.check_degree(n)?;
    let p = d.prec();
    let mut lhs = Complex::zero(p);
    for j in 0..n {
        let v = horner(&d.coeffs[j], x);
        lhs = &lhs + &(&v.square() / &d.h[j]);
    }
    let pn = horner(&d.coeffs[n], x);
    let pm = horner(&d.coeffs[n - 1], x);
    let dpn = horner(&derivative(&d.coeffs[n]), x);
    let dpm = horner(&derivative(&d.coeffs[n - 1]), x);
    let rhs = &(&(&dpn * &pm) - &(&pn * &dpm)) / &d.h[n - 1];
    Ok((lhs, rhs))
}

pub fn christoffel_darboux_residual(d: &OPData, n: usize, x: &Complex) -> Result<Float> {
    let (l, r) = christoffel_darboux_sides(d, n, x)?;
    Ok((&l - &r).abs())
}

/// `max_{j != k} |<p_j, p_k>| / |h_j h_k|^{1/2}` over all stored degrees.
pub fn gram_residual(d: &OPData) -> Float {
    let p = d.prec();
    let m = &d.moments.m;
    let size = d.n_max + 1;
    // u_k = H c_k, so that <p_j, p_k> = c_j . u_k
    let u: Vec<Vec<Complex>> = d
        .coeffs
        .iter()
        .map(|c| {
            (0..size)
                .map(|i| {
                    let mut s = Complex::zero(p);
                    for (j, cj) in c.iter().enumerate() {
                        s = &s + &(cj * &m[i + j]);
                    }
                    s
                })
                .collect()
        })
        .collect();
    let mut worst = Float::new(p);
    for k in 0..size {
        for j in 0..k {
            let mut s = Complex::zero(p);
            for (i, cji) in d.coeffs[j].iter().enumerate() {
                s = &s + &(cji * &u[k][i]);
            }
            let norm = Float::with_val(p, d.h[j].abs() * d.h[k].abs()).sqrt();
            let r = s.abs() / norm;
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}

/// `D_n(0) = (2 pi)^{n/2} 2^{-n^2/2} prod_{j=1}^{n-1} j!`.
pub fn selberg_det(prec: u32, n: usize) -> Float {
    let wp = prec + 32;
    let two_pi = pi(wp) * 2u32;
    let mut v = rug::ops::Pow::pow(two_pi, Float::with_val(wp, n as f64 / 2.0));
    let n2 = (n * n) as i64;
    let two = Float::with_val(wp, 2);
    v /= rug::ops::Pow::pow(two, Float::with_val(wp, n2) / 2u32);
    let mut fact = Float::with_val(wp, 1);
    for j in 1..n {
        fact *= j as u32;
        v *= &fact;
    }
    Float::with_val(prec, v)
}

/// Quantities entering the differential identities, at one value of `beta`.
struct Snapshot {
    d: OPData,
    log_det: Complex,
    y: YEntries,
}

fn snapshot(ctx: &PrecisionContext, w: &JumpWeight, n: usize) -> Result<Snapshot> {
    let d = op_data_for(ctx, w, n)?;
    let mu0 = Complex::from_real(Float::with_val(ctx.bits(), &w.mu0));
    let y = y_entries(&d, n, &mu0)?;
    let log_det = d.log_det(n);
    Ok(Snapshot { d, log_det, y })
}

struct Stencil {
    center: Snapshot,
    plus: Snapshot,
    minus: Snapshot,
    step: Float,
}

fn stencil(ctx: &PrecisionContext, w: &JumpWeight, n: usize, fd_step: &Float) -> Result<Stencil> {
    if n < 2 {
        return Err(Error::Domain("differential identities need n >= 2".into()));
    }
    let p = ctx.bits();
    let w = w.at_prec(p);
    let hs = Complex::from_real(Float::with_val(p, fd_step));
    let at = |offset: &Complex, label: &str| -> Result<Snapshot> {
        let wb = w.with_beta(&w.beta + offset).map_err(|e| Error::StencilFailure { offset: label.into(), source: Box::new(e) })?;
        snapshot(ctx, &wb, n).map_err(|e| Error::StencilFailure { offset: label.into(), source: Box::new(e) })
    };
    Ok(Stencil {
        center: at(&Complex::zero(p), "0")?,
        plus: at(&hs, "+h")?,
        minus: at(&(-hs.clone()), "-h")?,
        step: Float::with_val(p, fd_step),
    })
}

impl Stencil {
    fn diff(&self, f: impl Fn(&Snapshot) -> Complex) -> Complex {
        let two_h = Float::with_val(self.step.prec(), &self.step * 2u32);
        (&f(&self.plus) - &f(&self.minus)).scale(&two_h.recip())
    }

    /// Derivative of `ln f` from the ratio, so no branch of `ln f` is needed.
    fn log_diff(&self, f: impl Fn(&Snapshot) -> Complex) -> Complex {
        let two_h = Float::with_val(self.step.prec(), &self.step * 2u32);
        (&f(&self.plus) / &f(&self.minus)).ln().scale(&two_h.recip())
    }

    fn dlog_d(&self) -> Complex {
        let two_h = Float::with_val(self.step.prec(), &self.step * 2u32);
        (&self.plus.log_det - &self.minus.log_det).scale(&two_h.recip())
    }
}

/// Centered difference of `ln D_n` in `beta`.
pub fn dlog_det_fd(ctx: &PrecisionContext, w: &JumpWeight, n: usize, fd_step: &Float) -> Result<Complex> {
    Ok(stencil(ctx, w, n, fd_step)?.dlog_d())
}

/// Left and right sides of the local differential identity for `d/dbeta ln D_n`.
pub fn diff_identity_sides(ctx: &PrecisionContext, w: &JumpWeight, n: usize, fd_step: &Float) -> Result<(Complex, Complex)> {
    let s = stencil(ctx, w, n, fd_step)?;
    let p = ctx.bits();
    let c = &s.center;
    let lhs = s.dlog_d();
    // (ln kappa_n kappa_{n-1})' = -((ln h_n)' + (ln h_{n-1})')/2
    let lk = (&s.log_diff(|x| x.d.h[n].clone()) + &s.log_diff(|x| x.d.h[n - 1].clone())).scale_f64(-0.5);
    let db = s.diff(|x| &x.d.h[n] / &x.d.h[n - 1]);
    let dg = s.diff(|x| x.d.gamma_n(n).clone());
    let dbeta = s.diff(|x| x.d.beta_n(n).clone());
    let dy11 = s.diff(|x| x.y.y11.clone());
    let dy21 = s.diff(|x| x.y.y21.clone());
    let (y11, y21) = (&c.y.y11, &c.y.y21);
    let mu0 = Float::with_val(p, &w.mu0);
    let pref = c.d.weight.beta.scale(&pi(p)).sin().scale(&((-mu0.square()).exp() / pi(p)));
    let bracket = &(&(y11 * &dy21) - &(&dy11 * y21)) - &(&lk * &(y11 * y21));
    let mut rhs = -lk.scale_f64(n as f64);
    rhs = &rhs - &db;
    rhs = &rhs + &(&dg - &(c.d.beta_n(n) * &dbeta)).scale_f64(2.0);
    rhs = &rhs + &(&pref * &bracket);
    Ok((lhs, rhs))
}

/// `|LHS - RHS|` of the local differential identity, derivatives by centered differences.
pub fn diff_identity_residual(ctx: &PrecisionContext, w: &JumpWeight, n: usize, fd_step: &Float) -> Result<Float> {
    let (l, r) = diff_identity_sides(ctx, w, n, fd_step)?;
    Ok((&l - &r).abs())
}

/// Left and right sides of the integral form of the identity, with `J_1`, `J_2` as moment forms.
pub fn d2_identity_sides(ctx: &PrecisionContext, w: &JumpWeight, n: usize, fd_step: &Float) -> Result<(Complex, Complex)> {
    let s = stencil(ctx, w, n, fd_step)?;
    let c = &s.center;
    let lhs = s.dlog_d();
    let dlh_n = s.log_diff(|x| x.d.h[n].clone());
    let dlh_m = s.log_diff(|x| x.d.h[n - 1].clone());
    let dcoef = |k: usize| -> Vec<Complex> {
        let two_h = Float::with_val(s.step.prec(), &s.step * 2u32).recip();
        s.plus.d.coeffs[k].iter().zip(&s.minus.d.coeffs[k]).map(|(a, b)| (a - b).scale(&two_h)).collect()
    };
    let m = &c.d.moments.m;
    let pn = &c.d.coeffs[n];
    let pm = &c.d.coeffs[n - 1];
    // kappa'/kappa = -(ln h)'/2
    let kn = dlh_n.scale_f64(-0.5);
    let km = dlh_m.scale_f64(-0.5);
    let dn: Vec<Complex> = pn.iter().zip(dcoef(n)).map(|(a, b)| &(&kn * a) + &b).collect();
    let dm: Vec<Complex> = pm.iter().zip(dcoef(n - 1)).map(|(a, b)| &(&km * a) + &b).collect();
    let j1 = moment_form(m, &dn, &derivative(pm));
    let j2 = moment_form(m, &derivative(pn), &dm);
    let k2 = c.d.h[n - 1].recip();
    let rhs = &km.scale_f64(-(n as f64)) + &(&k2 * &(&j1 - &j2));
    Ok((lhs, rhs))
}

pub fn d2_identity_residual(ctx: &PrecisionContext, w: &JumpWeight, n: usize, fd_step: &Float) -> Result<Float> {
    let (l, r) = d2_identity_sides(ctx, w, n, fd_step)?;
    Ok((&l - &r).abs())
}

/// Default finite-difference step `2^{-bits/6}`.
pub fn default_fd_step(ctx: &PrecisionContext) -> Float {
    pow2_neg(ctx.bits(), ctx.bits() / 6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::rel_diff;
    use crate::moments::moment_table;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::with_bits(bits).unwrap()
    }

    fn weight(c: &PrecisionContext, b: (f64, f64), mu0: f64) -> JumpWeight {
        JumpWeight::new(c.complex(b.0, b.1), c.float(mu0)).unwrap()
    }

    fn hermite_h(prec: u32, n: usize) -> Float {
        let mut v = Float::with_val(prec, pi(prec).sqrt_ref());
        for k in 1..=n {
            v *= k as u32;
            v /= 2u32;
        }
        v
    }

    /// Gram-Schmidt directly on the moment form: an independent route to the norms.
    fn gram_schmidt_norms(t: &MomentTable, n: usize) -> Vec<Complex> {
        let p = t.prec();
        let mut basis: Vec<Vec<Complex>> = Vec::new();
        let mut norms = Vec::new();
        for k in 0..n {
            let mut v = vec![Complex::zero(p); k + 1];
            v[k] = Complex::one(p);
            for (j, b) in basis.iter().enumerate() {
                let c = &moment_form(&t.m, &v, b) / &norms[j];
                for (i, bi) in b.iter().enumerate() {
                    v[i] = &v[i] - &(&c * bi);
                }
            }
            norms.push(moment_form(&t.m, &v, &v));
            basis.push(v);
        }
        norms
    }

    #[test]
    fn small_factor_examples() {
        let c = ctx(256);
        let t = moment_table(&c, &weight(&c, (0.0, 0.0), 0.3), 4);
        let f = ldl_factor(&t, 1).unwrap();
        let sp = Complex::from_real(Float::with_val(256, pi(256).sqrt_ref()));
        assert!(rel_diff(&f.d[0], &sp) < c.tol());
        let f = ldl_factor(&t, 2).unwrap();
        assert!(rel_diff(&f.d[1], &sp.scale_f64(0.5)) < c.tol());
        assert!(f.l[1][0].abs() < c.tol());
    }

    #[test]
    fn norms_match_gram_schmidt_oracle() {
        let c = ctx(256);
        let t = moment_table(&c, &weight(&c, (0.0, 0.3), 0.5), 12);
        let f = ldl_factor(&t, 6).unwrap();
        let gs = gram_schmidt_norms(&t, 6);
        for j in 0..6 {
            assert!(rel_diff(&f.d[j], &gs[j]) < c.tol(), "j = {j}");
        }
    }

    #[test]
    fn determinant_examples() {
        let c = ctx(512);
        let t = moment_table(&c, &weight(&c, (0.0, 0.0), -0.2), 60);
        assert!(rel_diff(&hankel_det(&t, 1).unwrap(), &t.m[0]) < c.tol());
        let d2 = hankel_det(&t, 2).unwrap();
        assert!(rel_diff(&d2, &Complex::from_real(pi(512) / 2u32)) < c.tol());
        for n in 2..=30 {
            let d = hankel_det(&t, n).unwrap();
            assert!(rel_diff(&d, &Complex::from_real(selberg_det(512, n))) < c.tol(), "n = {n}");
        }
    }

    #[test]
    fn pivoted_elimination_agrees() {
        let c = ctx(512);
        let t = moment_table(&c, &weight(&c, (-0.2, 0.2), 0.4), 30);
        for n in [3usize, 9, 15] {
            let a = hankel_det(&t, n).unwrap();
            let b = hankel_det_pivoted(&t, n).unwrap();
            assert!(rel_diff(&a, &b) < c.tol(), "n = {n}");
        }
    }

    #[test]
    fn degenerate_pivot_is_reported() {
        // beta = 1/2, mu0 = 0 makes m_0 vanish
        let c = ctx(256);
        let t = moment_table(&c, &weight(&c, (0.5, 0.0), 0.0), 6);
        assert_eq!(ldl_factor(&t, 3).unwrap_err(), Error::DegeneratePivot { index: 0 });
    }

    #[test]
    fn hermite_degeneration() {
        let c = ctx(512);
        let d = op_data_for(&c, &weight(&c, (0.0, 0.0), 0.9), 21).unwrap();
        for n in 0..=20 {
            let h = Complex::from_real(hermite_h(512, n));
            assert!(rel_diff(&d.h[n], &h) < c.tol());
            if n >= 1 {
                let r = recurrence(&d, n).unwrap();
                assert!(r.a.abs() < c.tol());
                assert!(rel_diff(&r.b, &c.complex(n as f64 / 2.0, 0.0)) < c.tol());
                assert!(d.beta_n(n).abs() < c.tol());
            }
        }
        let k0 = Float::with_val(512, pi(512).sqrt_ref()).sqrt().recip();
        assert!(rel_diff(&d.kappa[0], &Complex::from_real(k0)) < c.tol());
        assert!(rel_diff(d.gamma_n(2), &c.complex(-0.5, 0.0)) < c.tol());
        assert!(d.coeffs.iter().enumerate().all(|(k, v)| v[k] == Complex::one(v[k].prec())));
    }

    #[test]
    fn monic_evaluation_examples() {
        let c = ctx(256);
        let d = op_data_for(&c, &weight(&c, (0.0, 0.0), 0.0), 3).unwrap();
        let x = c.complex(1.0, 0.0);
        assert_eq!(eval_monic(&d, 0, &x).unwrap(), Complex::one(256));
        assert!(rel_diff(&eval_monic(&d, 1, &c.complex(0.7, 0.2)).unwrap(), &c.complex(0.7, 0.2)) < c.tol());
        assert!(rel_diff(&eval_monic(&d, 2, &x).unwrap(), &c.complex(0.5, 0.0)) < c.tol());
        let y = y_entries(&d, 2, &x).unwrap();
        assert!(rel_diff(&y.y11, &c.complex(0.5, 0.0)) < c.tol());
        let y = y_entries(&d, 1, &x).unwrap();
        let expect = Complex::i(256).scale(&(-(pi(256) * 2u32) / Float::with_val(256, pi(256).sqrt_ref())));
        assert!(rel_diff(&y.y21, &expect) < c.tol());
    }

    #[test]
    fn recurrence_routes_agree() {
        let c = ctx(384);
        for (b, mu0) in [((0.2, 0.0), 0.4), ((0.0, 0.3), 0.0), ((-0.2, 0.2), 1.1)] {
            let d = op_data_for(&c, &weight(&c, b, mu0), 12).unwrap();
            for n in 1..11 {
                let r = recurrence(&d, n).unwrap();
                let b2 = recurrence_b_from_coefficients(&d, n).unwrap();
                assert!(rel_diff(&r.b, &b2) < c.tol(), "{b:?} n = {n}");
                let a2 = recurrence_a_local(&d, n).unwrap();
                assert!((&r.a - &a2).abs() < c.tol() * (Float::with_val(384, 1) + r.a.abs()), "{b:?} n = {n}");
            }
            let xs: Vec<Complex> = [-1.5, -0.2, 0.3, 2.0].iter().map(|&x| c.complex(x, 0.1)).collect();
            assert!(three_term_residual(&d, 5, &xs).unwrap() < c.tol());
            assert!(gram_residual(&d) < c.tol());
        }
    }

    #[test]
    fn local_a_examples() {
        let c = ctx(256);
        let d = op_data_for(&c, &weight(&c, (0.0, 0.3), 0.0), 5).unwrap();
        let r = recurrence(&d, 4).unwrap();
        assert!(rel_diff(&r.a, &recurrence_a_local(&d, 4).unwrap()) < c.tol());
        let d = op_data_for(&c, &weight(&c, (0.0, 0.0), 0.6), 3).unwrap();
        assert!(recurrence_a_local(&d, 3).unwrap().is_zero());
    }

    #[test]
    fn local_a_vanishes_when_the_jump_sits_on_a_zero() {
        // For imaginary beta the weight is positive, so p_4(mu0) is real and the
        // self-consistent root mu0 = zero of p_4 for the weight jumping at mu0 can be bracketed.
        let c = ctx(256);
        let g = |mu0: &Float| -> Float {
            let w = JumpWeight::new(c.complex(0.0, 0.3), mu0.clone()).unwrap();
            let d = op_data_for(&c, &w, 4).unwrap();
            eval_monic(&d, 4, &Complex::from_real(mu0.clone())).unwrap().re
        };
        let mut a = c.float(0.3);
        let mut b = c.float(1.2);
        let a_neg = g(&a) < 0;
        assert_ne!(a_neg, g(&b) < 0, "no sign change on the bracket");
        for _ in 0..200 {
            let mid = Float::with_val(256, &a + &b) / 2u32;
            if (g(&mid) < 0) == a_neg {
                a = mid;
            } else {
                b = mid;
            }
        }
        let w = JumpWeight::new(c.complex(0.0, 0.3), a).unwrap();
        let d = op_data_for(&c, &w, 5).unwrap();
        let local = recurrence_a_local(&d, 4).unwrap();
        let r = recurrence(&d, 4).unwrap();
        assert!(local.abs() < c.tol());
        assert!(r.a.abs() < c.tol());
    }

    #[test]
    fn christoffel_darboux_examples() {
        let c = ctx(256);
        let d = op_data_for(&c, &weight(&c, (0.0, 0.0), 0.0), 6).unwrap();
        let (l, r) = christoffel_darboux_sides(&d, 1, &c.complex(0.4, 0.0)).unwrap();
        let k0 = d.h[0].recip();
        assert!(rel_diff(&l, &k0) < c.tol() && rel_diff(&r, &k0) < c.tol());
        assert!(christoffel_darboux_residual(&d, 5, &c.complex(0.3, 0.0)).unwrap() < c.tol());
        let d = op_data_for(&c, &weight(&c, (0.2, 0.0), 0.4), 7).unwrap();
        assert!(christoffel_darboux_residual(&d, 6, &c.complex(0.4, 0.0)).unwrap() < c.tol());
    }

    #[test]
    fn determinant_from_kappa_matches() {
        let c = ctx(256);
        let d = op_data_for(&c, &weight(&c, (0.1, -0.3), 0.2), 8).unwrap();
        for n in 1..=8 {
            assert!(rel_diff(&d.det(n), &d.det_from_kappa(n)) < c.tol());
        }
    }

    fn order_ratio(f: impl Fn(&Float) -> Float, h: f64) -> f64 {
        let p = 512;
        let a = f(&Float::with_val(p, h)).to_f64();
        let b = f(&Float::with_val(p, h / 2.0)).to_f64();
        a / b
    }

    #[test]
    fn differential_identities_are_second_order() {
        let c = ctx(512);
        let w = JumpWeight::scaled(c.complex(0.0, 0.0), c.float(0.3), 6).unwrap();
        let r = order_ratio(|h| diff_identity_residual(&c, &w, 6, h).unwrap(), 1e-3);
        assert!((3.5..=4.5).contains(&r), "ratio {r}");
        let w = JumpWeight::new(c.complex(0.0, 0.25), c.float(0.4)).unwrap();
        let r = order_ratio(|h| d2_identity_residual(&c, &w, 4, h).unwrap(), 1e-3);
        assert!((3.5..=4.5).contains(&r), "ratio {r}");
        let r = order_ratio(|h| diff_identity_residual(&c, &w, 4, h).unwrap(), 1e-3);
        assert!((3.5..=4.5).contains(&r), "ratio {r}");
        let w = JumpWeight::new(c.complex(0.2, 0.0), c.float(0.7)).unwrap();
        let r = order_ratio(|h| d2_identity_residual(&c, &w, 6, h).unwrap(), 1e-3);
        assert!((3.5..=4.5).contains(&r), "ratio {r}");
    }

    #[test]
    fn identity_residuals_are_bounded_by_step_squared() {
        let c = ctx(512);
        let h = 1e-4;
        let bound = Float::with_val(512, 1e3 * h * h);
        let hs = c.float(h);
        // even in beta at mu0 = 0, so the centered difference is exact
        let w = JumpWeight::new(c.complex(0.0, 0.0), c.float(0.0)).unwrap();
        assert!(d2_identity_residual(&c, &w, 4, &hs).unwrap() < bound);
        let w = JumpWeight::scaled(c.complex(0.1, 0.0), c.float(0.0), 8).unwrap();
        let r = diff_identity_residual(&c, &w, 8, &hs).unwrap();
        assert!(r < bound, "{}", r.to_f64());
        let w = JumpWeight::scaled(c.complex(0.0, 0.3), c.float(0.5), 10).unwrap();
        let r = diff_identity_residual(&c, &w, 10, &hs).unwrap();
        assert!(r < bound, "{}", r.to_f64());
    }

    #[test]
    fn both_identity_forms_agree() {
        let c = ctx(512);
        let w = JumpWeight::scaled(c.complex(0.0, 0.3), c.float(0.5), 10).unwrap();
        let h = c.float(1e-8);
        let (l1, r1) = diff_identity_sides(&c, &w, 10, &h).unwrap();
        let (l2, r2) = d2_identity_sides(&c, &w, 10, &h).unwrap();
        assert_eq!(l1, l2);
        assert!((&r1 - &r2).abs() < Float::with_val(512, 1e-12));
        assert!((&l1 - &r1).abs() < Float::with_val(512, 1e-12));
    }

    #[test]
    fn stencil_failure_wraps_degenerate_pivot() {
        let c = ctx(256);
        // beta + h crosses the strip edge
        let w = JumpWeight::new(c.complex(0.5, 0.0), c.float(0.0)).unwrap();
        let e = diff_identity_residual(&c, &w, 3, &c.float(1e-6)).unwrap_err();
        assert!(matches!(e, Error::StencilFailure { .. }));
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn factorization_invariants(br in -0.45f64..0.45, bi in -0.5f64..0.5, mu0 in -1.5f64..1.5, n in 2usize..9) {
            let c = ctx(256);
            let t = moment_table(&c, &weight(&c, (br, bi), mu0), 2 * n);
            let d = op_data(&t, n).unwrap();
            prop_assert!(d.coeffs.iter().enumerate().all(|(k, v)| v.len() == k + 1 && v[k] == Complex::one(256)));
            prop_assert_eq!(d.beta_sub.len(), n);
            for k in 0..=n {
                prop_assert!(rel_diff(&(&d.kappa[k].square() * &d.h[k]), &Complex::one(256)) < c.tol());
            }
            prop_assert!(gram_residual(&d) < c.tol());
            prop_assert!(rel_diff(&hankel_det(&t, n).unwrap(), &hankel_det_pivoted(&t, n).unwrap()) < c.tol());
            for k in 1..n {
                let r = recurrence(&d, k).unwrap();
                let loc = recurrence_a_local(&d, k).unwrap();
                prop_assert!((&r.a - &loc).abs() < c.tol() * (Float::with_val(256, 1) + r.a.abs()));
            }
        }

        #[test]
        fn y_entries_ignore_the_kappa_branch(br in -0.45f64..0.45, bi in -0.5f64..0.5, mu0 in -1.0f64..1.0) {
            let c = ctx(256);
            let mut d = op_data_for(&c, &weight(&c, (br, bi), mu0), 5).unwrap();
            let z = c.complex(mu0, 0.0);
            let y = y_entries(&d, 4, &z).unwrap();
            d.kappa = d.kappa.iter().map(|k| -k.clone()).collect();
            prop_assert_eq!(y, y_entries(&d, 4, &z).unwrap());
        }
    }
}
