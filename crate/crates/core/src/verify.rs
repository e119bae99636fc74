//! Report builders for the batch front end and the verification suites.
//!
//! Every computation is run at the working precision and again at the
//! verification precision; each [`ReportRow`] records both precisions, the
//! largest difference between the two runs, and whether its own criterion
//! held. All numbers are serialized as decimal strings carrying `bits / 3.3`
//! significant digits.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{
    dlog_det_asym, h_kappa_beta_gamma_asym, thm1_ratio, thm2_a, thm2_a_imag, thm2_a_imag_center, thm2_b, thm2_b_imag,
    thm2_b_imag_center, y_entries_asym, AsymptoticPrediction,
};
use crate::complex::{pi, pow2_neg, rel_diff, rel_residual, Complex};
use crate::confluent::{jump_residual, psi_beta, relation_sides, ContourLabel, HypParams, Relation, SectorLabel};
use crate::error::{Error, Result};
use crate::moments::{moment, quadrature_moment_oracle, JumpWeight};
use crate::orthopoly::{
    christoffel_darboux_residual, d2_identity_sides, diff_identity_sides, hankel_det, hankel_det_pivoted, op_data_for,
    recurrence, recurrence_a_local, recurrence_b_from_coefficients, selberg_det, three_term_residual,
};
use crate::parallel::try_par_map;
use crate::precision::{CoveringPoint, PrecisionContext};
use crate::validate::{compare, rerun, Scale};

/// Where the jump sits: scaled with the degree, or fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Place {
    /// `mu0 = lambda0 * sqrt(2n)`.
    Lambda0(f64),
    Mu0(f64),
}

/// Verification suites selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Selberg,
    Identity,
    Appendix,
    Jumps,
    Thm1,
    Thm2,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Selberg, Suite::Identity, Suite::Appendix, Suite::Jumps, Suite::Thm1, Suite::Thm2, Suite::All];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Selberg => "selberg",
            Suite::Identity => "identity",
            Suite::Appendix => "appendix",
            Suite::Jumps => "jumps",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// Parameters shared by every report.
#[derive(Debug, Clone, PartialEq)]
pub struct Setup {
    pub ctx: PrecisionContext,
    pub beta: (f64, f64),
    pub place: Place,
    /// Degrees (or moment orders), strictly increasing.
    pub ns: Vec<usize>,
    /// Random samples per relation in the appendix suite.
    pub samples: usize,
    pub seed: u64,
}

impl Setup {
    pub fn new(ctx: PrecisionContext, beta: (f64, f64), place: Place, ns: Vec<usize>) -> Self {
        Setup { ctx, beta, place, ns, samples: 20, seed: 1 }
    }

    fn beta(&self, c: &PrecisionContext) -> Complex {
        c.complex(self.beta.0, self.beta.1)
    }

    fn beta_is_zero(&self) -> bool {
        self.beta == (0.0, 0.0)
    }

    fn weight(&self, c: &PrecisionContext, beta: &Complex, n: usize) -> Result<JumpWeight> {
        match self.place {
            Place::Lambda0(l) => JumpWeight::scaled(beta.clone(), c.float(l), n),
            Place::Mu0(m) => JumpWeight::new(beta.clone(), c.float(m)),
        }
    }

    fn lambda0(&self) -> Result<f64> {
        match self.place {
            Place::Lambda0(l) => Ok(l),
            Place::Mu0(_) => Err(Error::Domain("asymptotic predictions need lambda0, not a fixed mu0".into())),
        }
    }

    fn n_max(&self) -> usize {
        self.ns.iter().copied().max().unwrap_or(0)
    }
}

/// One output record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub suite: String,
    pub quantity: String,
    pub point: Option<String>,
    pub n: Option<usize>,
    pub beta_re: f64,
    pub beta_im: f64,
    pub lambda0: Option<f64>,
    pub mu0: Option<String>,
    pub value_re: String,
    pub value_im: String,
    pub reference_re: Option<String>,
    pub reference_im: Option<String>,
    pub residual: Option<String>,
    pub tolerance: Option<String>,
    pub claimed_order: Option<String>,
    pub bits: u32,
    pub check_bits: u32,
    pub check_diff: String,
    pub validated: bool,
    pub pass: bool,
}

/// A single measured quantity before serialization.
#[derive(Debug, Clone)]
struct Entry {
    quantity: String,
    point: Option<String>,
    n: Option<usize>,
    mu0: Option<Float>,
    value: Complex,
    value_scale: Scale,
    reference: Option<Complex>,
    residual: Option<Float>,
    tolerance: Option<Float>,
    order: Option<String>,
    ok: bool,
}

impl Entry {
    fn new(quantity: impl Into<String>, value: Complex) -> Self {
        Entry {
            quantity: quantity.into(),
            point: None,
            n: None,
            mu0: None,
            value,
            value_scale: Scale::Relative,
            reference: None,
            residual: None,
            tolerance: None,
            order: None,
            ok: true,
        }
    }

    fn real(quantity: impl Into<String>, x: Float) -> Self {
        Entry::new(quantity, Complex::from_real(x))
    }

    fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn point(mut self, p: String) -> Self {
        self.point = Some(p);
        self
    }

    fn mu0(mut self, m: &Float) -> Self {
        self.mu0 = Some(m.clone());
        self
    }

    /// The value may legitimately vanish; compare reruns on the absolute scale.
    fn may_vanish(mut self) -> Self {
        self.value_scale = Scale::Absolute;
        self
    }

    /// Reference value with relative residual, checked against `tol`.
    fn against(mut self, reference: Complex, tol: Float) -> Self {
        let r = rel_diff(&self.value, &reference);
        self.reference = Some(reference);
        self.residual(r, tol)
    }

    fn residual(mut self, r: Float, tol: Float) -> Self {
        self.ok = self.ok && !r.is_nan() && r < tol;
        self.residual = Some(r);
        self.tolerance = Some(tol);
        self
    }

    fn order(mut self, s: String) -> Self {
        self.order = Some(s);
        self
    }

    fn finite(mut self) -> Self {
        self.ok = self.ok && self.value.is_finite();
        self
    }
}

fn digits(bits: u32) -> usize {
    ((bits as f64) / 3.3).floor().max(1.0) as usize
}

fn fmt_float(x: &Float, bits: u32) -> String {
    if x.is_zero() {
        "0".into()
    } else {
        x.to_string_radix(10, Some(digits(bits)))
    }
}

fn order_label(p: &AsymptoticPrediction) -> String {
    let e = format!("{:.6}", p.error_exponent);
    let e = e.trim_end_matches('0').trim_end_matches('.');
    if p.error_is_log_corrected {
        format!("ln(n)/n^{e}")
    } else {
        format!("n^-{e}")
    }
}

fn diff_of(base: &Entry, check: &Entry) -> Float {
    let mut w = compare(&base.value, &check.value, base.value_scale);
    if let (Some(a), Some(b)) = (&base.reference, &check.reference) {
        let d = compare(a, b, base.value_scale);
        if d > w || d.is_nan() {
            w = d;
        }
    }
    if let (Some(a), Some(b)) = (&base.residual, &check.residual) {
        let d = compare(&Complex::from_real(a.clone()), &Complex::from_real(b.clone()), Scale::Absolute);
        if d > w || d.is_nan() {
            w = d;
        }
    }
    w
}

/// Run `f` on every point at both precisions, keeping input order.
fn measure<P, F>(setup: &Setup, points: &[P], f: F) -> Result<Vec<(Entry, Entry)>>
where
    P: Sync,
    F: Fn(&PrecisionContext, &P) -> Result<Vec<Entry>> + Sync + Send,
{
    let per_point = try_par_map(points, |pt| {
        let r = rerun(&setup.ctx, |c| f(c, pt))?;
        if r.base.len() != r.check.len() {
            return Err(Error::PrecisionValidation { quantity: "entry count".into(), rel_diff: f64::INFINITY, tol: 0.0 });
        }
        Ok(r.base.into_iter().zip(r.check).collect::<Vec<_>>())
    })?;
    Ok(per_point.into_iter().flatten().collect())
}

/// Mark each row of `quantity` as failing unless its residual is below the previous one.
fn require_decreasing(entries: &mut [(Entry, Entry)], quantity: &str) {
    let mut prev: Option<Float> = None;
    for (e, _) in entries.iter_mut().filter(|(e, _)| e.quantity == quantity) {
        if let Some(r) = &e.residual {
            if let Some(p) = &prev {
                e.ok = e.ok && r < p;
            }
            prev = Some(r.clone());
        }
    }
}

fn rows(setup: &Setup, suite: &str, entries: Vec<(Entry, Entry)>) -> Vec<ReportRow> {
    let bits = setup.ctx.bits();
    let check_bits = setup.ctx.verification().bits();
    let tol = setup.ctx.tol();
    let lambda0 = match setup.place {
        Place::Lambda0(l) => Some(l),
        Place::Mu0(_) => None,
    };
    entries
        .into_iter()
        .map(|(e, c)| {
            let d = diff_of(&e, &c);
            let validated = !d.is_nan() && d <= tol;
            let f = |x: &Float| fmt_float(x, bits);
            ReportRow {
                suite: suite.into(),
                quantity: e.quantity,
                point: e.point,
                n: e.n,
                beta_re: setup.beta.0,
                beta_im: setup.beta.1,
                lambda0,
                mu0: e.mu0.as_ref().map(f),
                value_re: f(&e.value.re),
                value_im: f(&e.value.im),
                reference_re: e.reference.as_ref().map(|r| f(&r.re)),
                reference_im: e.reference.as_ref().map(|r| f(&r.im)),
                residual: e.residual.as_ref().map(f),
                tolerance: e.tolerance.as_ref().map(f),
                claimed_order: e.order,
                bits,
                check_bits,
                check_diff: fmt_float(&d, 64),
                validated,
                pass: validated && e.ok,
            }
        })
        .collect()
}

/// Moments `m_k` for `k` in the list, against the quadrature oracle.
pub fn moments_report(setup: &Setup) -> Result<Vec<ReportRow>> {
    let scale = setup.n_max().max(1);
    let e = measure(setup, &setup.ns, |c, &k| {
        let w = setup.weight(c, &setup.beta(c), scale)?;
        let v = moment(c, &w, k);
        let q = quadrature_moment_oracle(c, &w, k)?;
        Ok(vec![Entry::new(format!("m_{k}"), v).n(k).mu0(&w.mu0).against(q, c.tol())])
    })?;
    Ok(rows(setup, "moments", e))
}

/// `D_n` by the unpivoted factorization, against the pivoted route (or the closed form at `beta = 0`).
pub fn det_report(setup: &Setup) -> Result<Vec<ReportRow>> {
    let e = measure(setup, &setup.ns, |c, &n| {
        let w = setup.weight(c, &setup.beta(c), n)?;
        let t = crate::moments::moment_table(c, &w, 2 * n);
        let det = hankel_det(&t, n)?;
        let reference =
            if setup.beta_is_zero() { Complex::from_real(selberg_det(c.bits(), n)) } else { hankel_det_pivoted(&t, n)? };
        Ok(vec![Entry::new("D_n", det).n(n).mu0(&w.mu0).against(reference, c.tol())])
    })?;
    Ok(rows(setup, "det", e))
}

/// Recurrence data with both routes for `A_n` and `B_n`.
pub fn recurrence_report(setup: &Setup) -> Result<Vec<ReportRow>> {
    let e = measure(setup, &setup.ns, |c, &n| {
        let n = n.max(1);
        let w = setup.weight(c, &setup.beta(c), n)?;
        let d = op_data_for(c, &w, n + 1)?;
        let r = recurrence(&d, n)?;
        let tol = c.tol();
        let a_ref = recurrence_a_local(&d, n)?;
        let a_diff = rel_residual(&r.a, &a_ref);
        Ok(vec![
            Entry::new("A_n", r.a.clone()).n(n).mu0(&w.mu0).may_vanish().residual(a_diff, tol.clone()),
            Entry::new("B_n", r.b.clone()).n(n).mu0(&w.mu0).against(recurrence_b_from_coefficients(&d, n)?, tol),
            Entry::new("h_n", d.h[n].clone()).n(n).mu0(&w.mu0).finite(),
            Entry::new("beta_n", d.beta_n(n).clone()).n(n).mu0(&w.mu0).may_vanish().finite(),
            Entry::new("gamma_n", d.gamma_n(n).clone()).n(n).mu0(&w.mu0).may_vanish().finite(),
        ])
    })?;
    Ok(rows(setup, "recurrence", e))
}

/// Centered-difference order check: the residual at `h` over the residual at `h/2`.
const ORDER_BAND: (f64, f64) = (3.5, 4.5);
/// Residual bound `C h^2` for the differential identities.
const FD_CONSTANT: f64 = 1e3;

fn differential_entries(setup: &Setup, c: &PrecisionContext, n: usize, h: &Float) -> Result<Vec<Entry>> {
    let w = setup.weight(c, &setup.beta(c), n)?;
    let h = Float::with_val(c.bits(), h);
    let h2 = Float::with_val(c.bits(), &h / 2u32);
    let bound = Float::with_val(c.bits(), h.square_ref()) * FD_CONSTANT;
    let mut out = Vec::new();
    type Sides = fn(&PrecisionContext, &JumpWeight, usize, &Float) -> Result<(Complex, Complex)>;
    let forms: [(&str, Sides); 2] = [("diff_identity", diff_identity_sides), ("d2_identity", d2_identity_sides)];
    for (name, sides) in forms {
        let (l, r) = sides(c, &w, n, &h)?;
        let (l2, r2) = sides(c, &w, n, &h2)?;
        let res = (&l - &r).abs();
        let res2 = (&l2 - &r2).abs();
        let ratio = Float::with_val(c.bits(), &res / &res2);
        let in_band = ratio >= ORDER_BAND.0 && ratio <= ORDER_BAND.1;
        out.push(Entry::new(name, l).n(n).mu0(&w.mu0).may_vanish().residual(res, bound.clone()));
        let mut order = Entry::real(format!("{name}_order"), ratio).n(n).mu0(&w.mu0).order("h^2".into());
        order.ok = in_band;
        out.push(order);
    }
    Ok(out)
}

/// Both differential identities at the step `2^{-bits/8}` and half of it.
pub fn identity_report(setup: &Setup) -> Result<Vec<ReportRow>> {
    let h = pow2_neg(setup.ctx.bits(), setup.ctx.bits() / 8);
    let ns: Vec<usize> = setup.ns.iter().copied().filter(|&n| n >= 2).collect();
    let e = measure(setup, &ns, |c, &n| differential_entries(setup, c, n, &h))?;
    Ok(rows(setup, "identity", e))
}

fn prediction_entry(name: &str, n: usize, p: AsymptoticPrediction) -> Entry {
    let order = order_label(&p);
    Entry::new(name, p.value).n(n).may_vanish().finite().order(order)
}

/// Large-n predictions at each degree.
pub fn asymptote_report(setup: &Setup) -> Result<Vec<ReportRow>> {
    let l = setup.lambda0()?;
    let e = measure(setup, &setup.ns, |c, &n| {
        let beta = setup.beta(c);
        let lambda0 = c.float(l);
        let mut out = vec![prediction_entry("thm1_ratio", n, thm1_ratio(n, &beta, &lambda0)?)];
        if !setup.beta_is_zero() {
            out.push(prediction_entry("thm2_A", n, thm2_a(n, &beta, &lambda0)?));
            out.push(prediction_entry("thm2_B", n, thm2_b(n, &beta, &lambda0)?));
        }
        let op = h_kappa_beta_gamma_asym(n, &beta, &lambda0)?;
        out.push(prediction_entry("h_n_inv", n, op.h_n_inv));
        out.push(prediction_entry("kappa_nm1_sq", n, op.kappa_nm1_sq));
        out.push(prediction_entry("kappa_n_sq", n, op.kappa_n_sq));
        out.push(prediction_entry("beta_n", n, op.beta_n));
        out.push(prediction_entry("gamma_n", n, op.gamma_n));
        let y = y_entries_asym(n, &beta, &lambda0)?;
        out.push(Entry::new("Y11", y.y11).n(n).finite());
        out.push(Entry::new("Y21", y.y21).n(n).finite());
        out.push(Entry::new("dlog_D", dlog_det_asym(n, &beta, &lambda0)?).n(n).finite());
        Ok(out)
    })?;
    Ok(rows(setup, "asymptote", e))
}

fn thm1_entries(setup: &Setup) -> Result<Vec<(Entry, Entry)>> {
    let l = setup.lambda0()?;
    let mut e = measure(setup, &setup.ns, |c, &n| {
        let beta = setup.beta(c);
        let w = setup.weight(c, &beta, n)?;
        let d = op_data_for(c, &w, n)?;
        let exact = d.det(n).scale(&selberg_det(c.bits(), n).recip());
        let p = thm1_ratio(n, &beta, &c.float(l))?;
        let order = order_label(&p);
        let e_n = (&(&exact / &p.value) - &Complex::one(c.bits())).abs();
        let mut entry = Entry::new("thm1", exact).n(n).mu0(&w.mu0).order(order);
        entry.reference = Some(p.value);
        entry.residual = Some(e_n);
        Ok(vec![entry])
    })?;
    require_decreasing(&mut e, "thm1");
    Ok(e)
}

fn thm2_entries(setup: &Setup) -> Result<Vec<(Entry, Entry)>> {
    if setup.beta_is_zero() {
        return Err(Error::BetaZero);
    }
    let l = setup.lambda0()?;
    let imaginary = setup.beta.0 == 0.0;
    let mut e = measure(setup, &setup.ns, |c, &n| {
        let beta = setup.beta(c);
        let lambda0 = c.float(l);
        let w = setup.weight(c, &beta, n)?;
        let d = op_data_for(c, &w, n + 1)?;
        let r = recurrence(&d, n)?;
        let pa = thm2_a(n, &beta, &lambda0)?;
        let pb = thm2_b(n, &beta, &lambda0)?;
        let da = (&r.a - &pa.value).abs() * Float::with_val(c.bits(), 2 * n).sqrt();
        let db = (&r.b - &pb.value).abs();
        let mut a = Entry::new("thm2_A", r.a.clone()).n(n).mu0(&w.mu0).may_vanish().order(order_label(&pa));
        a.reference = Some(pa.value.clone());
        a.residual = Some(da);
        let mut b = Entry::new("thm2_B", r.b.clone()).n(n).mu0(&w.mu0).order(order_label(&pb));
        b.reference = Some(pb.value.clone());
        b.residual = Some(db);
        let mut out = vec![a, b];
        if imaginary {
            let g = c.float(setup.beta.1);
            let tol = c.tol();
            let ai = thm2_a_imag(n, &g, &lambda0)?.value;
            let bi = thm2_b_imag(n, &g, &lambda0)?.value;
            out.push(Entry::new("thm2_A_imag", ai.clone()).n(n).against(pa.value.clone(), tol.clone()));
            out.push(Entry::new("thm2_B_imag", bi.clone()).n(n).against(pb.value.clone(), tol.clone()));
            if l == 0.0 {
                out.push(Entry::new("thm2_A_center", thm2_a_imag_center(n, &g)?.value).n(n).against(ai, tol.clone()));
                out.push(Entry::new("thm2_B_center", thm2_b_imag_center(n, &g)?.value).n(n).against(bi, tol));
            }
        }
        Ok(out)
    })?;
    require_decreasing(&mut e, "thm2_A");
    require_decreasing(&mut e, "thm2_B");
    Ok(e)
}

/// Convergence table for one asymptotic formula: exact value, prediction, error, claimed order.
pub fn sweep_report(setup: &Setup, suite: Suite) -> Result<Vec<ReportRow>> {
    match suite {
        Suite::Thm1 => Ok(rows(setup, "thm1", thm1_entries(setup)?)),
        Suite::Thm2 => Ok(rows(setup, "thm2", thm2_entries(setup)?)),
        other => Err(Error::Domain(format!("sweep supports thm1 and thm2, not {other}"))),
    }
}

fn selberg_entries(setup: &Setup) -> Result<Vec<(Entry, Entry)>> {
    measure(setup, &setup.ns, |c, &n| {
        let w = setup.weight(c, &Complex::zero(c.bits()), n)?;
        let d = op_data_for(c, &w, n)?;
        let exact = Complex::from_real(selberg_det(c.bits(), n));
        Ok(vec![Entry::new("D_n", d.det(n)).n(n).mu0(&w.mu0).against(exact, c.tol())])
    })
}

fn exact_identity_entries(setup: &Setup) -> Result<Vec<(Entry, Entry)>> {
    let ns: Vec<usize> = setup.ns.iter().copied().filter(|&n| n >= 1).collect();
    measure(setup, &ns, |c, &n| {
        let w = setup.weight(c, &setup.beta(c), n)?;
        let d = op_data_for(c, &w, n + 1)?;
        let tol = c.tol();
        let r = recurrence(&d, n)?;
        let x = c.complex(0.37, 0.21);
        Ok(vec![
            Entry::new("det_from_kappa", d.det_from_kappa(n)).n(n).mu0(&w.mu0).against(d.det(n), tol.clone()),
            Entry::real("christoffel_darboux", christoffel_darboux_residual(&d, n, &x)?)
                .n(n)
                .mu0(&w.mu0)
                .may_vanish()
                .residual(christoffel_darboux_residual(&d, n, &x)?, tol.clone()),
            Entry::new("B_n_routes", r.b.clone()).n(n).mu0(&w.mu0).against(recurrence_b_from_coefficients(&d, n)?, tol.clone()),
            Entry::new("A_n_routes", r.a.clone())
                .n(n)
                .mu0(&w.mu0)
                .may_vanish()
                .residual(rel_residual(&r.a, &recurrence_a_local(&d, n)?), tol.clone()),
            Entry::real("three_term", three_term_residual(&d, n, &[x.clone(), c.complex(-1.1, 0.4)])?)
                .n(n)
                .mu0(&w.mu0)
                .may_vanish()
                .residual(three_term_residual(&d, n, &[x, c.complex(-1.1, 0.4)])?, tol),
        ])
    })
}

/// One randomly drawn relation sample, in binary64 so every precision sees the same point.
#[derive(Debug, Clone, Copy)]
struct RelationSample {
    relation: Relation,
    a: (f64, f64),
    c: Option<(f64, f64)>,
    radius: f64,
    arg: f64,
}

impl RelationSample {
    fn label(&self) -> String {
        let c = self.c.map_or("1".to_string(), |(re, im)| format!("{re:+.6}{im:+.6}i"));
        format!("a={:+.6}{:+.6}i c={c} r={:.6} arg={:+.6}", self.a.0, self.a.1, self.radius, self.arg)
    }
}

fn relation_samples(count: usize, seed: u64) -> Vec<RelationSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let three_pi = 3.0 * std::f64::consts::PI;
    let mut out = Vec::new();
    for relation in Relation::ALL {
        for _ in 0..count {
            let a = (rng.random_range(-0.8..0.8), rng.random_range(-0.5..0.5));
            let c = if relation.needs_log_case() || rng.random_bool(0.5) {
                None
            } else {
                Some((rng.random_range(0.15..0.85), rng.random_range(-0.3..0.3)))
            };
            let radius = rng.random_range(0.2..8.0);
            let mut arg: f64 = rng.random_range(-three_pi..three_pi);
            if arg == -three_pi {
                arg = 0.0;
            }
            out.push(RelationSample { relation, a, c, radius, arg });
        }
    }
    out
}

fn appendix_entries(setup: &Setup) -> Result<Vec<(Entry, Entry)>> {
    let samples = relation_samples(setup.samples, setup.seed);
    measure(setup, &samples, |c, s| {
        let a = c.complex(s.a.0, s.a.1);
        let p = match s.c {
            None => HypParams::log_case(a),
            Some((re, im)) => HypParams::new(a, c.complex(re, im)),
        };
        let z = CoveringPoint::from_polar_f64(c, s.radius, s.arg)?;
        let (l, r) = relation_sides(s.relation, &p, &z)?;
        let res = rel_residual(&l, &r);
        let mut e = Entry::new(s.relation.id(), l).point(s.label()).residual(res, c.tol());
        e.reference = Some(r);
        Ok(vec![e])
    })
}

const JUMP_DISTANCES: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

fn jump_entries(setup: &Setup) -> Result<Vec<(Entry, Entry)>> {
    let mut points: Vec<(Option<ContourLabel>, Option<SectorLabel>, f64)> = Vec::new();
    for c in ContourLabel::ALL {
        for t in JUMP_DISTANCES {
            points.push((Some(c), None, t));
        }
    }
    for s in SectorLabel::ALL {
        points.push((None, Some(s), 1.5));
    }
    measure(setup, &points, |c, &(contour, sector, t)| {
        let beta = setup.beta(c);
        if let Some(g) = contour {
            let r = jump_residual(&beta, g, &c.float(t))?;
            let name = format!("jump_Gamma{}", &format!("{g:?}")[1..]);
            return Ok(vec![Entry::real(name, r.clone()).point(format!("t={t}")).may_vanish().residual(r, c.tol())]);
        }
        let s = sector.expect("sector point");
        let (lo, hi) = s.bounds();
        let arg = pi(c.bits()) * Float::with_val(c.bits(), lo + 0.3 * (hi - lo));
        let z = CoveringPoint::new(c.float(t), arg)?;
        let det = psi_beta(&beta, &z, s)?.det();
        let expect = beta.mul_i().scale(&c.pi()).exp();
        Ok(vec![Entry::new(format!("det_Psi_{s}"), det).point(format!("r={t}")).against(expect, c.tol())])
    })
}

/// Rows of one verification suite; `All` concatenates the others (skipping `thm2` at `beta = 0`).
pub fn verify_report(setup: &Setup, suite: Suite) -> Result<Vec<ReportRow>> {
    Ok(match suite {
        Suite::Selberg => rows(setup, "selberg", selberg_entries(setup)?),
        Suite::Identity => {
            let mut out = rows(setup, "identity", exact_identity_entries(setup)?);
            out.extend(identity_report(setup)?);
            out
        }
        Suite::Appendix => rows(setup, "appendix", appendix_entries(setup)?),
        Suite::Jumps => rows(setup, "jumps", jump_entries(setup)?),
        Suite::Thm1 => rows(setup, "thm1", thm1_entries(setup)?),
        Suite::Thm2 => rows(setup, "thm2", thm2_entries(setup)?),
        Suite::All => {
            let mut out = Vec::new();
            for s in [Suite::Selberg, Suite::Identity, Suite::Appendix, Suite::Jumps, Suite::Thm1, Suite::Thm2] {
                if s == Suite::Thm2 && setup.beta_is_zero() {
                    continue;
                }
                out.extend(verify_report(setup, s)?);
            }
            out
        }
    })
}

/// True when every row passed its own criterion and its rerun.
pub fn all_pass(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| r.pass)
}
