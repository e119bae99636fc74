use std::fmt;
use std::str::FromStr;

use rug::Float;

use super::psi_log_case;
use crate::complex::{pi, pow2_neg, Complex};
use crate::error::{Error, Result};
use crate::precision::CoveringPoint;
use crate::special::gamma_ratio_f;

/// A 2x2 complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiMatrix {
    pub entries: [[Complex; 2]; 2],
}

impl PsiMatrix {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        PsiMatrix { entries: [[a, b], [c, d]] }
    }

    pub fn identity(prec: u32) -> Self {
        Self::diag(Complex::one(prec), Complex::one(prec))
    }

    pub fn diag(a: Complex, d: Complex) -> Self {
        let p = a.prec();
        Self::new(a, Complex::zero(p), Complex::zero(p), d)
    }

    pub fn prec(&self) -> u32 {
        self.entries[0][0].prec()
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.entries[i][j]
    }

    pub fn mul(&self, o: &PsiMatrix) -> PsiMatrix {
        let e = |i: usize, j: usize| &(&self.entries[i][0] * &o.entries[0][j]) + &(&self.entries[i][1] * &o.entries[1][j]);
        PsiMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn add(&self, o: &PsiMatrix) -> PsiMatrix {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &PsiMatrix) -> PsiMatrix {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, k: &Complex) -> PsiMatrix {
        self.map(|a| a * k)
    }

    pub fn det(&self) -> Complex {
        let [[a, b], [c, d]] = &self.entries;
        &(a * d) - &(b * c)
    }

    pub fn inverse(&self) -> PsiMatrix {
        let inv = self.det().recip();
        let [[a, b], [c, d]] = &self.entries;
        PsiMatrix::new(d * &inv, -(b * &inv), -(c * &inv), a * &inv)
    }

    /// Largest entry modulus.
    pub fn norm(&self) -> Float {
        let mut m = Float::new(self.prec());
        for row in &self.entries {
            for v in row {
                let a = v.abs();
                if a > m {
                    m = a;
                }
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().flatten().all(|v| v.is_finite())
    }

    pub fn with_prec(&self, prec: u32) -> PsiMatrix {
        self.map(|a| a.with_prec(prec))
    }

    fn map(&self, f: impl Fn(&Complex) -> Complex) -> PsiMatrix {
        let [[a, b], [c, d]] = &self.entries;
        PsiMatrix::new(f(a), f(b), f(c), f(d))
    }

    fn zip(&self, o: &PsiMatrix, f: impl Fn(&Complex, &Complex) -> Complex) -> PsiMatrix {
        let e = |i: usize, j: usize| f(&self.entries[i][j], &o.entries[i][j]);
        PsiMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// Sectors between the six rays of the model contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectorLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

/// The six rays; the argument of each is a multiple of `pi/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContourLabel {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl SectorLabel {
    pub const ALL: [SectorLabel; 6] =
        [SectorLabel::I, SectorLabel::II, SectorLabel::III, SectorLabel::IV, SectorLabel::V, SectorLabel::VI];

    /// Bounds of the sector as arguments in units of `pi`; sector V wraps through 0.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            SectorLabel::I => (0.5, 0.75),
            SectorLabel::II => (0.75, 1.25),
            SectorLabel::III => (1.25, 1.5),
            SectorLabel::IV => (1.5, 1.75),
            SectorLabel::V => (1.75, 2.25),
            SectorLabel::VI => (0.25, 0.5),
        }
    }

    fn contains(self, frac: &Float, tol: f64) -> bool {
        let (lo, hi) = self.bounds();
        let inside = |f: &Float| *f >= lo - tol && *f <= hi + tol;
        inside(frac) || (self == SectorLabel::V && inside(&Float::with_val(frac.prec(), frac + 2u32)))
    }
}

impl ContourLabel {
    pub const ALL: [ContourLabel; 6] =
        [ContourLabel::G1, ContourLabel::G2, ContourLabel::G3, ContourLabel::G4, ContourLabel::G5, ContourLabel::G6];

    /// Argument of the ray in units of `pi`.
    pub fn angle(self) -> f64 {
        match self {
            ContourLabel::G1 => 0.5,
            ContourLabel::G2 => 0.75,
            ContourLabel::G3 => 1.25,
            ContourLabel::G4 => 1.5,
            ContourLabel::G5 => 1.75,
            ContourLabel::G6 => 0.25,
        }
    }

    /// Rays oriented away from the origin; the others point towards it.
    pub fn outward(self) -> bool {
        matches!(self, ContourLabel::G1 | ContourLabel::G2 | ContourLabel::G6)
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for ContourLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = ContourLabel::ALL.iter().position(|c| c == self).unwrap_or(0) + 1;
        write!(f, "Gamma{n}")
    }
}

impl FromStr for SectorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SectorLabel::ALL
            .iter()
            .copied()
            .find(|x| x.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown sector {s:?}")))
    }
}

impl FromStr for ContourLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim_start_matches("Gamma").trim_start_matches('G');
        match t.parse::<usize>() {
            Ok(n) if (1..=6).contains(&n) => Ok(ContourLabel::ALL[n - 1]),
            _ => Err(Error::Domain(format!("unknown contour {s:?}"))),
        }
    }
}

/// Same half-axis on either side of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealHalfAxis {
    Positive,
    Negative,
}

/// `arg zeta / pi` reduced to `[0, 2)`.
fn reduced_frac(zeta: &CoveringPoint) -> Float {
    let p = zeta.prec();
    let x = Float::with_val(p, &zeta.argument / pi(p));
    let turns = Float::with_val(p, &x / 2u32).floor();
    x - turns * 2u32
}

/// Tolerance, in units of `pi`, for treating a point as lying on a ray or on the real axis.
const RAY_TOL: f64 = 1e-12;

fn on_real_axis(frac: &Float) -> bool {
    let f = frac.to_f64();
    f.abs() < RAY_TOL || (f - 1.0).abs() < RAY_TOL || (f - 2.0).abs() < RAY_TOL
}

/// The sector whose closure contains `zeta`; points on a ray go to the sector
/// following it counterclockwise.
pub fn sector_of(zeta: &CoveringPoint) -> SectorLabel {
    let f = reduced_frac(zeta);
    SectorLabel::ALL
        .iter()
        .copied()
        .find(|s| {
            let (lo, hi) = s.bounds();
            let in_half_open = |x: &Float| *x >= lo && *x < hi;
            in_half_open(&f) || (*s == SectorLabel::V && in_half_open(&Float::with_val(f.prec(), &f + 2u32)))
        })
        .unwrap_or(SectorLabel::V)
}

fn phase(beta: &Complex, k: f64) -> Complex {
    let p = beta.prec();
    beta.mul_i().scale(&(pi(p) * Float::with_val(p, k))).exp()
}

/// `Psi(zeta)` from the upper- or lower-half-plane formula, continued in `arg`
/// on the covering so that one-sided values on the real axis are available.
pub(crate) fn psi_matrix_half(beta: &Complex, zeta: &CoveringPoint, upper: bool) -> Result<PsiMatrix> {
    let p = beta.prec().max(zeta.prec());
    let wp = p + 16;
    let beta = beta.with_prec(wp);
    let zeta = zeta.with_prec(wp);
    let z = zeta.value();
    let one = Complex::one(wp);
    let f_b = gamma_ratio_f(&beta)?.value;
    let f_mb = gamma_ratio_f(&(-beta.clone()))?.value;
    let eb = phase(&beta, 1.0);
    let half = z.scale_f64(0.5);
    let (e_minus, e_plus) = ((-half.clone()).exp(), half.exp());
    let back = zeta.rotate_half_turns(-1);
    let m12 = &(&(&psi_log_case(&(&one - &beta), &back)? * &eb) * &e_plus) * &f_b;
    let m22 = &psi_log_case(&(-beta.clone()), &back)? * &e_plus;
    let (m11, m21) = if upper {
        let m11 = &(&psi_log_case(&beta, &zeta)? * &phase(&beta, 2.0)) * &e_minus;
        let m21 = &(&(&psi_log_case(&(&one + &beta), &zeta)? * &eb) * &e_minus) * &f_mb;
        (m11, m21)
    } else {
        let down = zeta.rotate_half_turns(-2);
        let m11 = &psi_log_case(&beta, &down)? * &e_minus;
        let m21 = &(&(&psi_log_case(&(&one + &beta), &down)? * &phase(&beta, -1.0)) * &e_minus) * &f_mb;
        (m11, m21)
    };
    Ok(PsiMatrix::new(m11, m12, m21, m22).with_prec(p))
}

/// The model matrix `Psi(zeta)`, which depends only on the value of `zeta`.
pub fn psi_matrix(beta: &Complex, zeta: &CoveringPoint) -> Result<PsiMatrix> {
    let frac = reduced_frac(zeta);
    if on_real_axis(&frac) {
        return Err(Error::OnCut(format!("zeta = {:?} is on the real axis; request a one-sided limit", zeta)));
    }
    let p = zeta.prec();
    let canonical = CoveringPoint::new(zeta.radius.clone(), Float::with_val(p, &frac * pi(p)))?;
    psi_matrix_half(beta, &canonical, frac < 1)
}

/// Constant right factor of the piecewise solution in sector `s`; `eps = sign Im zeta`.
pub fn sector_multiplier(beta: &Complex, s: SectorLabel, eps: i32) -> PsiMatrix {
    let p = beta.prec();
    let e = eps as f64;
    let (zero, one) = (Complex::zero(p), Complex::one(p));
    match s {
        SectorLabel::I | SectorLabel::III => PsiMatrix::identity(p),
        SectorLabel::II => PsiMatrix::new(one.clone(), zero, phase(beta, e), one),
        SectorLabel::IV => PsiMatrix::new(zero.clone(), -phase(beta, 1.0), phase(beta, -1.0), zero),
        SectorLabel::V => PsiMatrix::new(one, -phase(beta, -e), phase(beta, e), zero),
        SectorLabel::VI => PsiMatrix::new(zero.clone(), -phase(beta, -1.0), phase(beta, 1.0), zero),
    }
}

/// Jump matrix carried by a contour: `Psi_{beta,+} = Psi_{beta,-} J`.
pub fn jump_matrix(beta: &Complex, c: ContourLabel) -> PsiMatrix {
    let p = beta.prec();
    let (zero, one) = (Complex::zero(p), Complex::one(p));
    match c {
        ContourLabel::G1 => PsiMatrix::new(zero.clone(), phase(beta, -1.0), -phase(beta, 1.0), zero),
        ContourLabel::G4 => PsiMatrix::new(zero.clone(), phase(beta, 1.0), -phase(beta, -1.0), zero),
        ContourLabel::G2 | ContourLabel::G6 => PsiMatrix::new(one.clone(), zero, phase(beta, 1.0), one),
        ContourLabel::G3 | ContourLabel::G5 => PsiMatrix::new(one.clone(), zero, phase(beta, -1.0), one),
    }
}

/// The piecewise solution `Psi_beta(zeta)` in sector `s`.
pub fn psi_beta(beta: &Complex, zeta: &CoveringPoint, s: SectorLabel) -> Result<PsiMatrix> {
    let frac = reduced_frac(zeta);
    if !s.contains(&frac, RAY_TOL) {
        return Err(Error::SectorMismatch { expected: s.to_string() });
    }
    let eps = if frac < 1 { 1 } else { -1 };
    Ok(psi_matrix(beta, zeta)?.mul(&sector_multiplier(beta, s, eps)))
}

fn psi_beta_auto(beta: &Complex, zeta: &CoveringPoint) -> Result<PsiMatrix> {
    psi_beta(beta, zeta, sector_of(zeta))
}

/// `||Psi_{beta,+} - Psi_{beta,-} J|| / ||Psi_{beta,-}||` at distance `t` along a ray.
///
/// One-sided limits come from points rotated off the ray by `delta`,
/// `delta / 2` and `delta / 4` with `delta = 2^{-bits/4}`, combined by
/// Richardson extrapolation to remove the `O(delta)` and `O(delta^2)` terms.
pub fn jump_residual(beta: &Complex, c: ContourLabel, t: &Float) -> Result<Float> {
    let p = beta.prec().max(t.prec());
    let wp = p + 32;
    let beta = beta.with_prec(wp);
    let on_ray = CoveringPoint::new(Float::with_val(wp, t), pi(wp) * Float::with_val(wp, c.angle()))?;
    let delta = pow2_neg(wp, p / 4);
    let left = if c.outward() { 1 } else { -1 };
    let limit = |side: i32| -> Result<PsiMatrix> {
        let at = |k: u32| {
            let d = Float::with_val(wp, &delta >> k) * (side * left);
            psi_beta_auto(&beta, &on_ray.rotate_by(&d))
        };
        let (f0, f1, f2) = (at(0)?, at(1)?, at(2)?);
        let third = Complex::from_real(Float::with_val(wp, 3).recip());
        let comb = f0.sub(&f1.scale(&Complex::from_int(wp, 6))).add(&f2.scale(&Complex::from_int(wp, 8)));
        Ok(comb.scale(&third))
    };
    let plus = limit(1)?;
    let minus = limit(-1)?;
    let diff = plus.sub(&minus.mul(&jump_matrix(&beta, c)));
    Ok(Float::with_val(p, diff.norm() / minus.norm()))
}

/// Relative mismatch of the two one-sided values of `Psi_beta` on a half of the real axis.
///
/// Both half-plane formulas are evaluated exactly on the axis, the upper one at
/// `arg = 0` or `pi` and the lower one at `arg = 2 pi` or `pi`.
pub fn continuity_residual(beta: &Complex, axis: RealHalfAxis, x: &Float) -> Result<Float> {
    let p = beta.prec().max(x.prec());
    let (upper_arg, lower_arg, sector) = match axis {
        RealHalfAxis::Positive => (0u32, 2u32, SectorLabel::V),
        RealHalfAxis::Negative => (1, 1, SectorLabel::II),
    };
    let at = |k: u32| CoveringPoint::new(Float::with_val(p, x), pi(p) * k);
    let up = psi_matrix_half(beta, &at(upper_arg)?, true)?.mul(&sector_multiplier(beta, sector, 1));
    let lo = psi_matrix_half(beta, &at(lower_arg)?, false)?.mul(&sector_multiplier(beta, sector, -1));
    Ok(Float::with_val(p, up.sub(&lo).norm() / up.norm()))
}

/// `M_1(beta) = [[-beta^2, -f(beta) e^{i pi beta}], [f(-beta) e^{-i pi beta}, beta^2]]`.
pub fn m1_matrix(beta: &Complex) -> Result<PsiMatrix> {
    let b2 = beta.square();
    let f_b = gamma_ratio_f(beta)?.value;
    let f_mb = gamma_ratio_f(&(-beta.clone()))?.value;
    Ok(PsiMatrix::new(-b2.clone(), -(&f_b * &phase(beta, 1.0)), &f_mb * &phase(beta, -1.0), b2))
}

/// Two-term large-`zeta` form of `Psi_beta` for `-pi/2 <= arg zeta <= 3 pi/2`.
pub fn psi_beta_asymptotic(beta: &Complex, zeta: &CoveringPoint) -> Result<PsiMatrix> {
    let p = beta.prec().max(zeta.prec());
    let beta = beta.with_prec(p);
    let zeta = zeta.with_prec(p);
    let frac = Float::with_val(p, &zeta.argument / pi(p));
    if !(-0.5..=1.5).contains(&frac) {
        return Err(Error::OutOfSector(format!("asymptotics cover -pi/2 <= arg <= 3 pi/2, got {:.4}", zeta.argument.to_f64())));
    }
    let z = zeta.value();
    let corr = PsiMatrix::identity(p).add(&m1_matrix(&beta)?.scale(&z.recip()));
    let power = PsiMatrix::diag(zeta.pow(&(-beta.clone())), zeta.pow(&beta));
    let half = z.scale_f64(0.5);
    let (zero, one) = (Complex::zero(p), Complex::one(p));
    let tail = if frac >= 0.5 {
        PsiMatrix::diag(phase(&beta, 2.0), phase(&beta, -1.0)).mul(&PsiMatrix::diag((-half.clone()).exp(), half.exp()))
    } else {
        PsiMatrix::new(zero.clone(), -phase(&beta, 1.0), one, zero).mul(&PsiMatrix::diag(half.exp(), (-half).exp()))
    };
    Ok(corr.mul(&power).mul(&tail))
}
