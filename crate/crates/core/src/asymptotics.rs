//! Large-n predictions for the jump-weight Hankel determinant, its recurrence
//! coefficients and polynomial data, and the equilibrium-measure and Szegő
//! objects they are built from.
//!
//! Every prediction is the main term of an asymptotic expansion with an
//! unspecified constant; [`AsymptoticPrediction::error_exponent`] records the
//! power of `1/n` in the displayed error term.

use log::warn;
use rug::Float;

use crate::complex::{float_powu, pi, pow2_neg, real_pow, Complex};
use crate::error::{Error, Result};
use crate::orthopoly::YEntries;
use crate::precision::{cover_from_complex, CoveringPoint};
use crate::quad::tanh_sinh;
use crate::special::{barnes_g_pair, digamma, gamma, gamma_ratio_f, log_gamma, rgamma, zeta_prime_minus_one};

const GUARD: u32 = 32;

/// Semicircle equilibrium data at the jump location `lambda0`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumData {
    pub lambda0: Float,
    /// `phi_+(lambda0) = 2i int_{lambda0}^1 sqrt(1-x^2) dx`.
    pub phi_plus: Complex,
    /// `l = -1 - 2 ln 2`.
    pub l_const: Float,
}

impl EquilibriumData {
    /// `psi(x) = (2/pi) sqrt(1-x^2)` on `[-1, 1]`, zero outside.
    pub fn density(&self, x: &Float) -> Float {
        density(x)
    }
}

/// Szegő function constants for the jump weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SzegoData {
    pub beta: Complex,
    pub lambda0: Float,
    /// `e^{i beta arcsin lambda0}`.
    pub d_infinity: Complex,
    /// `2^{-beta} (1-lambda0^2)^{-beta} e^{-i pi beta / 2}`.
    pub c_beta: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LMNValues {
    pub l_plus: Complex,
    pub l_minus: Complex,
    pub l: Complex,
    pub m: Complex,
    pub n: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticPrediction {
    pub value: Complex,
    /// Power of `1/n` in the error term, relative to the quantity's own scale.
    pub error_exponent: f64,
    /// The error term carries an extra `ln n`.
    pub error_is_log_corrected: bool,
}

/// Predictions for the orthogonal-polynomial data at degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OPAsymptotics {
    pub h_n_inv: AsymptoticPrediction,
    pub kappa_nm1_sq: AsymptoticPrediction,
    /// From the `kappa_{n-1}` formula at `n + 1` with `lambda0 sqrt(n/(n+1))`.
    pub kappa_n_sq: AsymptoticPrediction,
    pub beta_n: AsymptoticPrediction,
    pub gamma_n: AsymptoticPrediction,
}

fn density(x: &Float) -> Float {
    let p = x.prec();
    if x.clone().abs() >= 1 {
        return Float::new(p);
    }
    let s = (Float::with_val(p, 1) - Float::with_val(p, x.square_ref())).sqrt();
    s * 2u32 / pi(p)
}

fn check_lambda0(lambda0: &Float) -> Result<()> {
    if !(lambda0.clone().abs() < 1) {
        return Err(Error::Domain(format!("|lambda0| must be below 1, got {}", lambda0.to_f64())));
    }
    Ok(())
}

/// `sqrt(1 - lambda0^2)`.
fn co(lambda0: &Float) -> Float {
    let p = lambda0.prec();
    (Float::with_val(p, 1) - Float::with_val(p, lambda0.square_ref())).sqrt()
}

fn one_minus_sq(lambda0: &Float) -> Float {
    let p = lambda0.prec();
    Float::with_val(p, 1) - Float::with_val(p, lambda0.square_ref())
}

fn asin(x: &Float) -> Float {
    Float::with_val(x.prec(), x.asin_ref())
}

/// `asin(x) + x sqrt(1-x^2)`, twice the antiderivative of `sqrt(1-x^2)`.
fn arc_area(x: &Float) -> Float {
    asin(x) + Float::with_val(x.prec(), x * co(x))
}

fn phi_plus(lambda0: &Float) -> Complex {
    let p = lambda0.prec();
    let v = pi(p) / 2u32 - arc_area(lambda0);
    Complex::new(Float::new(p), v)
}

fn a_plus(lambda0: &Float) -> Complex {
    let p = lambda0.prec();
    let r = Float::with_val(p, 1 - lambda0) / Float::with_val(p, 1 + lambda0);
    let q = r.sqrt().sqrt();
    Complex::cis(&(pi(p) / 4u32)).scale(&q)
}

fn working(beta: &Complex, lambda0: &Float) -> (u32, Complex, Float) {
    let wp = beta.prec().max(lambda0.prec()) + GUARD;
    (wp, beta.with_prec(wp), Float::with_val(wp, lambda0))
}

fn prediction(value: Complex, prec: u32, error_exponent: f64, log: bool) -> AsymptoticPrediction {
    AsymptoticPrediction { value: value.with_prec(prec), error_exponent, error_is_log_corrected: log }
}

fn nf(prec: u32, n: usize) -> Float {
    Float::with_val(prec, n)
}

/// Equilibrium data at `lambda0`.
pub fn equilibrium(lambda0: &Float) -> Result<EquilibriumData> {
    check_lambda0(lambda0)?;
    let p = lambda0.prec();
    let l_const = Float::with_val(p, -1) - Float::with_val(p, 2u32).ln() * 2u32;
    Ok(EquilibriumData { lambda0: lambda0.clone(), phi_plus: phi_plus(lambda0), l_const })
}

/// `g(z) = int_{-1}^1 ln(z-s) psi(s) ds` off the cut `(-inf, 1]`.
pub fn g_function(z: &Complex) -> Result<Complex> {
    if z.im.is_zero() && z.re <= 1 {
        return Err(Error::OnCut(format!("g is cut along (-inf, 1]; z = {z:?}")));
    }
    let p = z.prec();
    let lo = Float::with_val(p, -1);
    let hi = Float::with_val(p, 1);
    let v = tanh_sinh(p, &lo, &hi, |s| {
        let zs = z - &Complex::from_real(s.clone());
        zs.ln().scale(&density(s))
    })?;
    Ok(v.with_prec(p))
}

/// One-sided value `g_+(x)` (`upper`) or `g_-(x)` on the real axis.
pub fn g_boundary(x: &Float, upper: bool) -> Result<Complex> {
    let p = x.prec();
    let side = if upper { pi(p) } else { -pi(p) };
    let lo = Float::with_val(p, -1);
    let hi = Float::with_val(p, 1);
    let left = |s: &Float| Complex::from_real(Float::with_val(p, x - s).ln() * density(s));
    let right = |s: &Float| Complex::new(Float::with_val(p, s - x).ln(), side.clone()).scale(&density(s));
    let v = if *x >= 1 {
        tanh_sinh(p, &lo, &hi, left)?
    } else if *x <= -1 {
        tanh_sinh(p, &lo, &hi, right)?
    } else {
        &tanh_sinh(p, &lo, x, left)? + &tanh_sinh(p, x, &hi, right)?
    };
    Ok(v.with_prec(p))
}

/// `zeta = 4 i n int_{lambda0}^z sqrt(1-y^2) dy`, the local variable at the jump.
pub fn conformal_zeta(n: usize, lambda0: &Float, z: &Complex) -> Result<CoveringPoint> {
    check_lambda0(lambda0)?;
    if z.im.is_zero() && z.re.clone().abs() >= 1 {
        return Err(Error::Domain(format!("z = {z:?} lies on a branch cut of the map")));
    }
    let p = z.prec().max(lambda0.prec());
    let wp = p + 64;
    let zw = z.with_prec(wp);
    let one = Complex::one(wp);
    let at_z = &(&zw * &(&one - &zw.square()).sqrt()) + &zw.asin();
    let at_l = Complex::from_real(arc_area(&Float::with_val(wp, lambda0)));
    let diff = &at_z - &at_l;
    let zeta = diff.mul_i().scale(&Float::with_val(wp, 2 * n as u64));
    cover_from_complex(&zeta.with_prec(p), 0)
}

/// `e^{i beta arcsin lambda0}` and `c(beta)`.
pub fn szego_data(beta: &Complex, lambda0: &Float) -> Result<SzegoData> {
    check_lambda0(lambda0)?;
    let (wp, b, l) = working(beta, lambda0);
    let p = wp - GUARD;
    let d_infinity = b.mul_i().scale(&asin(&l)).exp();
    let two_q = Float::with_val(wp, one_minus_sq(&l) * 2u32);
    let c_beta = &real_pow(&two_q, &(-b.clone())) * &b.mul_i().scale(&(-pi(wp) / 2u32)).exp();
    Ok(SzegoData {
        beta: beta.clone(),
        lambda0: lambda0.clone(),
        d_infinity: d_infinity.with_prec(p),
        c_beta: c_beta.with_prec(p),
    })
}

/// `sqrt(z-1) sqrt(z+1)`, cut along `[-1, 1]`.
fn root_z2m1(z: &Complex) -> Complex {
    let one = Complex::one(z.prec());
    &(z - &one).sqrt() * &(z + &one).sqrt()
}

/// `ln w` for `w = (z lambda0 - 1 - i root s) / (z - lambda0)`, `s = sqrt(1 - lambda0^2)`.
///
/// The two numerators multiply to `(z - lambda0)^2`; the larger one is used so
/// that neither cancels near `lambda0`.
fn szego_log_base(lambda0: &Float, z: &Complex, root: &Complex) -> Complex {
    let p = z.prec();
    let l = Complex::from_real(Float::with_val(p, lambda0));
    let zl1 = &(z * &l) - &Complex::one(p);
    let irs = root.mul_i().scale(&co(&Float::with_val(p, lambda0)));
    let first = &zl1 - &irs;
    let second = &zl1 + &irs;
    let dz = z - &l;
    if first.abs() >= second.abs() {
        (&first / &dz).ln()
    } else {
        -(&second / &dz).ln()
    }
}

/// The Szegő function `D(z)` of the jump weight, analytic off `[-1, 1]`.
pub fn szego(beta: &Complex, lambda0: &Float, z: &Complex) -> Result<Complex> {
    check_lambda0(lambda0)?;
    if z.im.is_zero() && z.re.clone().abs() <= 1 {
        return Err(Error::OnCut(format!("D is cut along [-1, 1]; z = {z:?}")));
    }
    let (wp, b, l) = working(beta, lambda0);
    let zw = z.with_prec(wp);
    let lw = szego_log_base(&l, &zw, &root_z2m1(&zw));
    let v = &(&b * &lw).exp() * &b.mul_i().scale(&(pi(wp) / 2u32)).exp();
    Ok(v.with_prec(wp - GUARD))
}

/// `D_+(x)` (`upper`) or `D_-(x)` for `x` in `(-1, 1)`, `x != lambda0`.
///
/// On the interval the base of the power is real; when it is negative the side
/// of approach fixes the sign of its argument, read off at `x + i side 2^{-bits/2}`.
pub fn szego_boundary(beta: &Complex, lambda0: &Float, x: &Float, upper: bool) -> Result<Complex> {
    check_lambda0(lambda0)?;
    if !(x.clone().abs() < 1) || x == lambda0 {
        return Err(Error::Domain(format!("boundary values need |x| < 1 and x != lambda0, got {}", x.to_f64())));
    }
    let (wp, b, l) = working(beta, lambda0);
    let xw = Complex::from_real(Float::with_val(wp, x));
    let s = co(&Float::with_val(wp, x));
    let root = if upper { Complex::new(Float::new(wp), s) } else { Complex::new(Float::new(wp), -s) };
    let mut lw = szego_log_base(&l, &xw, &root);
    if lw.im.clone().abs() > 1 {
        let eta = pow2_neg(wp, wp / 2);
        let off = Complex::new(Float::with_val(wp, x), if upper { eta } else { -eta });
        let probe = szego_log_base(&l, &off, &root_z2m1(&off));
        lw.im = if probe.im.is_sign_negative() { -pi(wp) } else { pi(wp) };
    }
    let v = &(&b * &lw).exp() * &b.mul_i().scale(&(pi(wp) / 2u32)).exp();
    Ok(v.with_prec(wp - GUARD))
}

/// `omega(z) = e^{i pi beta}` left of `Re z = lambda0`, `e^{-i pi beta}` from it rightwards.
pub fn omega(beta: &Complex, lambda0: &Float, z: &Complex) -> Complex {
    let p = beta.prec();
    let sign = if z.re < *lambda0 { 1 } else { -1 };
    beta.mul_i().scale(&(pi(p) * sign)).exp()
}

/// `|D_+(x) D_-(x) - omega(x)|`.
pub fn szego_boundary_product_residual(beta: &Complex, lambda0: &Float, x: &Float) -> Result<Float> {
    let up = szego_boundary(beta, lambda0, x, true)?;
    let dn = szego_boundary(beta, lambda0, x, false)?;
    let w = omega(beta, lambda0, &Complex::from_real(x.clone()));
    Ok((&(&up * &dn) - &w).abs())
}

/// `(8n)^{s beta} (1-lambda0^2)^{3 s beta / 2} e^{s n phi_+}`, the common `F`-type factor.
fn scale_factor(n: usize, b: &Complex, l: &Float, s: f64) -> Complex {
    let wp = b.prec();
    let sb = b.scale_f64(s);
    let eight_n = nf(wp, 8 * n);
    let pw = &real_pow(&eight_n, &sb) * &real_pow(&one_minus_sq(l), &sb.scale_f64(1.5));
    &pw * &phi_plus(l).scale_f64(s * n as f64).exp()
}

/// `L_n^{(+-)}`, `L_n`, `M_n`, `N_n`.
pub fn lmn(n: usize, beta: &Complex, lambda0: &Float) -> Result<LMNValues> {
    check_lambda0(lambda0)?;
    if n == 0 {
        return Err(Error::Domain("lmn needs n >= 1".into()));
    }
    let (wp, b, l) = working(beta, lambda0);
    let p = wp - GUARD;
    let sq = |v: Complex| v.square();
    let l_plus = &sq(scale_factor(n, &b, &l, 1.0)) * &gamma_ratio_f(&b)?.value;
    let l_minus = &sq(scale_factor(n, &b, &l, -1.0)) * &gamma_ratio_f(&(-b.clone()))?.value;
    let lw = Complex::from_real(l.clone());
    let is = Complex::new(Float::new(wp), co(&l));
    let up = &lw + &is;
    let dn = &lw - &is;
    let m = &(&up * &l_plus) - &(&dn * &l_minus);
    let nn = &(&dn * &l_plus) - &(&up * &l_minus);
    let big_l = &l_minus - &l_plus;
    Ok(LMNValues {
        l_plus: l_plus.with_prec(p),
        l_minus: l_minus.with_prec(p),
        l: big_l.with_prec(p),
        m: m.with_prec(p),
        n: nn.with_prec(p),
    })
}

/// `D_n(beta) / D_n(0)` to leading order, with `mu0 = lambda0 sqrt(2n)`.
pub fn thm1_ratio(n: usize, beta: &Complex, lambda0: &Float) -> Result<AsymptoticPrediction> {
    check_lambda0(lambda0)?;
    let r = beta.re.to_f64();
    if !(r > -0.25 && r < 0.25) {
        warn!("Re beta = {r} is outside (-1/4, 1/4), where the determinant asymptotics are stated");
    }
    let (wp, b, l) = working(beta, lambda0);
    let b2 = b.square();
    let g = barnes_g_pair(&b)?;
    let pw = &real_pow(&one_minus_sq(&l), &b2.scale_f64(-1.5)) * &real_pow(&nf(wp, 8 * n), &(-b2));
    let phase = b.mul_i().scale(&Float::with_val(wp, arc_area(&l) * (2 * n as u64))).exp();
    let v = &(&g * &pw) * &phase;
    Ok(prediction(v, wp - GUARD, 1.0 - 4.0 * r.abs(), true))
}

fn check_thm2(beta: &Complex, lambda0: &Float) -> Result<()> {
    check_lambda0(lambda0)?;
    if beta.is_zero() {
        return Err(Error::BetaZero);
    }
    let r = beta.re.to_f64();
    if !(r > -0.5 && r < 0.5) {
        return Err(Error::Domain(format!("Re beta = {r} outside (-1/2, 1/2)")));
    }
    let p = beta.prec();
    if beta.abs() < pow2_neg(p, p / 4) {
        warn!("|beta| is below 2^(-bits/4); the 1/sin(pi beta) factor is ill-conditioned");
    }
    Ok(())
}

/// `A_n` for general `beta != 0`.
pub fn thm2_a(n: usize, beta: &Complex, lambda0: &Float) -> Result<AsymptoticPrediction> {
    check_thm2(beta, lambda0)?;
    let (wp, b, l) = working(beta, lambda0);
    let a = a_plus(&l);
    let ai = a.recip();
    let fp = &scale_factor(n, &b, &l, 1.0) * &gamma(&(-b.clone()))?;
    let fm = &scale_factor(n, &b, &l, -1.0) * &gamma(&b)?;
    let t = &(&(&a + &ai) * &fp) + &(&(&a - &ai).mul_i() * &fm);
    let sin = b.scale(&pi(wp)).sin();
    let den = pi(wp) * nf(wp, 2 * n).sqrt() * 4u32;
    let pre = (&b.square() * &sin).mul_i().scale(&(-den.recip()));
    Ok(prediction(&pre * &t.square(), wp - GUARD, 1.0 - 2.0 * beta.re.to_f64().abs(), false))
}

/// `B_n` for general `beta != 0`.
pub fn thm2_b(n: usize, beta: &Complex, lambda0: &Float) -> Result<AsymptoticPrediction> {
    check_thm2(beta, lambda0)?;
    let (wp, b, l) = working(beta, lambda0);
    let q = one_minus_sq(&l);
    let s = co(&l);
    let ph = phi_plus(&l);
    let eight_n = nf(wp, 8 * n);
    let b2 = b.scale_f64(2.0);
    let b3 = b.scale_f64(3.0);
    let shift = Complex::new(Float::new(wp), asin(&l));
    let e_plus = (&ph.scale_f64((2 * n + 1) as f64) + &shift).exp();
    let e_minus = e_plus.recip();
    let first = &(&(&real_pow(&eight_n, &b2) * &real_pow(&q, &b3)) * &rgamma(&b).square()) * &e_plus;
    let mb = -b.clone();
    let second = &(&(&real_pow(&eight_n, &(-b2.clone())) * &real_pow(&q, &(-b3))) * &rgamma(&mb).square()) * &e_minus;
    let pref = &ph.sinh().scale(&pi(wp)) / &b.scale(&pi(wp)).sin().scale(&(q.clone() * 4u32));
    let lin = (&b.scale(&l) / &Complex::from_real(s * 2u32)).mul_i();
    let half_n = Complex::from_real(nf(wp, n) / 2u32);
    let v = &(&half_n - &lin) + &(&pref * &(&first + &second));
    Ok(prediction(v, wp - GUARD, 1.0 - 2.0 * beta.re.to_f64().abs(), false))
}

/// `arg Gamma(i gamma)`, up to a multiple of `2 pi`.
fn arg_gamma_i(g: &Float) -> Result<Float> {
    let p = g.prec();
    Ok(log_gamma(&Complex::new(Float::new(p), g.clone()))?.im)
}

fn check_gamma(g: &Float) -> Result<()> {
    if g.is_zero() {
        return Err(Error::BetaZero);
    }
    Ok(())
}

/// `A_n` at `beta = i gamma`.
pub fn thm2_a_imag(n: usize, g: &Float, lambda0: &Float) -> Result<AsymptoticPrediction> {
    check_gamma(g)?;
    check_lambda0(lambda0)?;
    let wp = g.prec().max(lambda0.prec()) + GUARD;
    let (g, l) = (Float::with_val(wp, g), Float::with_val(wp, lambda0));
    let s = co(&l);
    let q = one_minus_sq(&l);
    let ln8n = nf(wp, 8 * n).ln();
    let angle = Float::with_val(wp, &arc_area(&l) - pi(wp) / 2u32) * n as u64 - Float::with_val(wp, &g * &ln8n)
        + arg_gamma_i(&g)?
        - Float::with_val(wp, &g * q.clone().ln()) * 3u32 / 2u32
        + Float::with_val(wp, &l / (s + 1u32)).atan();
    let amp = Float::with_val(wp, &g * 2u32) / (Float::with_val(wp, 2 * n as u64) * q).sqrt();
    let v = amp * angle.sin().square();
    Ok(prediction(Complex::from_real(v), wp - GUARD, 1.0, false))
}

/// `B_n` at `beta = i gamma`.
pub fn thm2_b_imag(n: usize, g: &Float, lambda0: &Float) -> Result<AsymptoticPrediction> {
    check_gamma(g)?;
    check_lambda0(lambda0)?;
    let wp = g.prec().max(lambda0.prec()) + GUARD;
    let (g, l) = (Float::with_val(wp, g), Float::with_val(wp, lambda0));
    let s = co(&l);
    let q = one_minus_sq(&l);
    let area = arc_area(&l);
    let ln8n = nf(wp, 8 * n).ln();
    let angle = Float::with_val(wp, &area - pi(wp) / 2u32) * (2 * n + 1) as u64 - Float::with_val(wp, &g * &ln8n) * 2u32
        + arg_gamma_i(&g)? * 2u32
        - Float::with_val(wp, &g * q.clone().ln()) * 3u32
        - asin(&l);
    let lin = Float::with_val(wp, &g * &l) / (s * 2u32);
    let osc = Float::with_val(wp, &g / (q * 2u32)) * area.cos() * angle.cos();
    let v = nf(wp, n) / 2u32 + lin + osc;
    Ok(prediction(Complex::from_real(v), wp - GUARD, 1.0, false))
}

/// `A_n` at `beta = i gamma`, `lambda0 = 0`.
pub fn thm2_a_imag_center(n: usize, g: &Float) -> Result<AsymptoticPrediction> {
    check_gamma(g)?;
    let wp = g.prec() + GUARD;
    let g = Float::with_val(wp, g);
    let angle = Float::with_val(wp, &g * nf(wp, 8 * n).ln()) - arg_gamma_i(&g)? + pi(wp) * n as u64 / 2u32;
    let amp = Float::with_val(wp, &g * 2u32) / nf(wp, 2 * n).sqrt();
    Ok(prediction(Complex::from_real(amp * angle.sin().square()), wp - GUARD, 1.0, false))
}

/// `B_n` at `beta = i gamma`, `lambda0 = 0`.
pub fn thm2_b_imag_center(n: usize, g: &Float) -> Result<AsymptoticPrediction> {
    check_gamma(g)?;
    let wp = g.prec() + GUARD;
    let g = Float::with_val(wp, g);
    let ag: Float = arg_gamma_i(&g)?;
    let phase: Float = pi(wp) * (Float::with_val(wp, n) + 0.5f64);
    let angle: Float = Float::with_val(wp, &g * nf(wp, 8 * n).ln()) * 2u32 - ag * 2u32 + phase;
    let v = nf(wp, n) / 2u32 + Float::with_val(wp, &g / 2u32) * angle.cos();
    Ok(prediction(Complex::from_real(v), wp - GUARD, 1.0, false))
}

/// `kappa_{n-1}^2` to second order.
fn kappa_nm1_sq(n: usize, b: &Complex, l: &Float) -> Result<Complex> {
    let wp = b.prec();
    let q = one_minus_sq(l);
    let lm = lmn(n, b, l)?;
    let mut fact = Float::with_val(wp, 1);
    for j in 2..n {
        fact *= j as u32;
    }
    let lead = float_powu(&Float::with_val(wp, 2u32), (n - 1) as u32) / (pi(wp).sqrt() * fact);
    let phase = b.mul_i().scale(&(asin(l) * -2i32)).exp();
    let four_nq = Float::with_val(wp, &q * (4 * n as u64));
    let c1 = lm.n.mul_i().scale(&Float::with_val(wp, four_nq.recip_ref()));
    let c2 = b.square().scale(&(Float::with_val(wp, 2u32 + Float::with_val(wp, l.square_ref())) / (q * (2 * n as u64))));
    let bracket = &(&Complex::one(wp) + &c1) + &c2;
    Ok(&phase.scale(&lead) * &bracket)
}

/// Predictions for `h_n^{-1}`, `kappa_{n-1}^2`, `kappa_n^2`, `beta_n`, `gamma_n`.
pub fn h_kappa_beta_gamma_asym(n: usize, beta: &Complex, lambda0: &Float) -> Result<OPAsymptotics> {
    check_lambda0(lambda0)?;
    if n < 2 {
        return Err(Error::Domain("expansions need n >= 2".into()));
    }
    let (wp, b, l) = working(beta, lambda0);
    let p = wp - GUARD;
    let r = beta.re.to_f64().abs();
    let q = one_minus_sq(&l);
    let s = co(&l);
    let lm = lmn(n, &b, &l)?;
    let nn = nf(wp, n);
    let phase = b.mul_i().scale(&(asin(&l) * -2i32)).exp();

    // e^n 2^n / (pi sqrt(2n) n^n), the Stirling form of 2^n / (sqrt(pi) n!)
    let log_h = nn.clone() + Float::with_val(wp, 2u32).ln() * n as u64
        - Float::with_val(wp, nn.ln_ref()) * n as u64
        - pi(wp).ln()
        - Float::with_val(wp, nn.clone() * 2u32).ln() / 2u32;
    let h_n_inv = phase.scale(&log_h.exp());

    let kappa_nm1 = kappa_nm1_sq(n, &b, &l)?;
    let shifted = Float::with_val(wp, &l * (nf(wp, n) / nf(wp, n + 1)).sqrt());
    let kappa_n = kappa_nm1_sq(n + 1, &b, &shifted)?;

    let four_nq = Float::with_val(wp, &q * (4 * n as u64));
    let b2 = b.square();
    let inner_b = &b2.scale(&l).scale_f64(3.0) - &lm.l.mul_i().scale_f64(0.5);
    let ibs = b.mul_i().scale(&s);
    let beta_n = (&ibs + &inner_b.scale(&Float::with_val(wp, four_nq.recip_ref()))).scale(&nf(wp, 2 * n).sqrt());

    let l2 = Float::with_val(wp, l.square_ref());
    let lead = &(&Complex::from_real(-(nn.clone() - 1u32) / 4u32) - &b2.scale(&q)) + &ibs.scale(&l);
    let corr = &(&b2.scale(&l2).scale_f64(3.0) + &lm.n.mul_i().scale_f64(0.5)) + &(&ibs.scale_f64(2.0) * &inner_b);
    let gamma_n = (&lead + &corr.scale(&Float::with_val(wp, four_nq.recip_ref()))).scale(&nn);

    Ok(OPAsymptotics {
        h_n_inv: prediction(h_n_inv, p, 1.0 - 2.0 * r, false),
        kappa_nm1_sq: prediction(kappa_nm1, p, 2.0 - 2.0 * r, false),
        kappa_n_sq: prediction(kappa_n, p, 2.0 - 2.0 * r, false),
        beta_n: prediction(beta_n, p, 2.0 - 2.0 * r, false),
        gamma_n: prediction(gamma_n, p, 2.0 - 2.0 * r, false),
    })
}

/// Main terms of `Y_11` and `Y_21` at `z = mu0 = lambda0 sqrt(2n)`.
pub fn y_entries_asym(n: usize, beta: &Complex, lambda0: &Float) -> Result<YEntries> {
    check_lambda0(lambda0)?;
    let (wp, b, l) = working(beta, lambda0);
    let p = wp - GUARD;
    let a = a_plus(&l);
    let ai = a.recip();
    let one = Complex::one(wp);
    // beta F+ and beta F-, written with Gamma(1 -+ beta) so that beta = 0 is regular
    let fp = -(&scale_factor(n, &b, &l, 1.0) * &gamma(&(&one - &b))?);
    let fm = &scale_factor(n, &b, &l, -1.0) * &gamma(&(&one + &b))?;
    let d_inf = b.mul_i().scale(&asin(&l)).exp();
    let l2 = Float::with_val(wp, l.square_ref());
    let half_log_2n = nf(wp, 2 * n).ln() * n as u64 / 2u32;
    let ln2 = Float::with_val(wp, 2u32).ln();

    let s11 = half_log_2n.clone() - ln2.clone() * (n as u64 + 1) + Float::with_val(wp, &l2 - 0.5f64) * n as u64;
    let t11 = &(&(&a + &ai) * &fp) + &(&(&a - &ai).mul_i() * &fm);
    let y11 = -(&d_inf * &t11).scale(&s11.exp());

    let s21 = -half_log_2n + ln2 * (n as u64 - 1) + Float::with_val(wp, &l2 + 0.5f64) * n as u64;
    let t21 = &(&(&a - &ai).mul_i() * &fp) - &(&(&a + &ai) * &fm);
    let y21 = -(&t21 / &d_inf).scale(&s21.exp());
    Ok(YEntries { y11: y11.with_prec(p), y21: y21.with_prec(p) })
}

/// `d/dbeta ln D_n(beta)` to leading order.
pub fn dlog_det_asym(n: usize, beta: &Complex, lambda0: &Float) -> Result<Complex> {
    check_lambda0(lambda0)?;
    let (wp, b, l) = working(beta, lambda0);
    let one = Complex::one(wp);
    let s = co(&l);
    let q = one_minus_sq(&l);
    let lin = Float::with_val(wp, asin(&l) + Float::with_val(wp, &l * &s)) * (2 * n as u64);
    // (ln Gamma(beta)/Gamma(-beta))' = digamma(1+beta) + digamma(1-beta)
    let dg = &digamma(&(&one + &b))? + &digamma(&(&one - &b))?;
    let log_term = Float::with_val(wp, nf(wp, 8 * n).ln() + q.ln() * 1.5f64) * 2u32;
    let brace = &Complex::from_real(log_term) - &dg;
    let v = &(&Complex::new(Float::new(wp), lin) - &b.scale_f64(2.0)) - &(&b * &brace);
    Ok(v.with_prec(wp - GUARD))
}

/// `ln` of `(2 pi)^n (n/2)^{n^2/2} n^{-1/12} e^{-3n^2/4 + zeta'(-1)}`.
pub fn selberg_asym_log(prec: u32, n: usize) -> Float {
    let wp = prec + GUARD;
    let nn = nf(wp, n);
    let n2 = Float::with_val(wp, nn.square_ref());
    let v = Float::with_val(wp, pi(wp) * 2u32).ln() * n as u64 + Float::with_val(wp, &nn / 2u32).ln() * n2.clone() / 2u32
        - nn.ln() / 12u32
        - n2 * 3u32 / 4u32
        + zeta_prime_minus_one(wp);
    Float::with_val(prec, v)
}

/// Large-n form of `D_n(0)`.
pub fn selberg_asym(prec: u32, n: usize) -> Float {
    Float::with_val(prec, selberg_asym_log(prec + GUARD, n).exp())
}
