use std::fmt;
use std::str::FromStr;

use rug::Float;

use super::{phi, psi, HypParams};
use crate::complex::{pi, rel_residual, Complex};
use crate::error::{Error, Result};
use crate::precision::CoveringPoint;
use crate::special::{gamma, rgamma};

/// Connection and monodromy relations between `psi` and `phi` on the covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Rep1,
    Rep2,
    PsiPhi1,
    PsiPhi2,
    Int01,
    Int02,
    Int03,
    Int04Plus,
    Int04Minus,
    Prop1,
    Prop3,
}

impl Relation {
    pub const ALL: [Relation; 11] = [
        Relation::Rep1,
        Relation::Rep2,
        Relation::PsiPhi1,
        Relation::PsiPhi2,
        Relation::Int01,
        Relation::Int02,
        Relation::Int03,
        Relation::Int04Plus,
        Relation::Int04Minus,
        Relation::Prop1,
        Relation::Prop3,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::Rep1 => "rep1",
            Relation::Rep2 => "rep2",
            Relation::PsiPhi1 => "psiphi1",
            Relation::PsiPhi2 => "psiphi2",
            Relation::Int01 => "int01",
            Relation::Int02 => "int02",
            Relation::Int03 => "int03",
            Relation::Int04Plus => "int04-plus",
            Relation::Int04Minus => "int04-minus",
            Relation::Prop1 => "prop1",
            Relation::Prop3 => "prop3",
        }
    }

    /// Relations stated only for `c = 1` with `a = beta`.
    pub fn needs_log_case(self) -> bool {
        matches!(self, Relation::Prop1 | Relation::Prop3)
    }

    /// Relations that involve `phi(a, c; z)` and therefore `Gamma(c)`.
    pub fn involves_phi(self) -> bool {
        !matches!(self, Relation::Rep1 | Relation::Rep2 | Relation::Prop1 | Relation::Prop3)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .iter()
            .copied()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::Domain(format!("unknown relation id {s:?}")))
    }
}

/// `|LHS - RHS| / (1 + |LHS| + |RHS|)` with both sides from the series evaluators.
pub fn monodromy_residual(relation: Relation, p: &HypParams, zeta: &CoveringPoint) -> Result<Float> {
    residual_with(relation, p, zeta, &psi)
}

/// Left and right sides of a relation, both from the series evaluators.
pub fn relation_sides(relation: Relation, p: &HypParams, zeta: &CoveringPoint) -> Result<(Complex, Complex)> {
    sides_with(relation, p, zeta, &psi)
}

/// Both sides of a relation with `psi` supplied by the caller.
pub(crate) fn sides_with(
    relation: Relation,
    p: &HypParams,
    zeta: &CoveringPoint,
    psi_eval: &dyn Fn(&HypParams, &CoveringPoint) -> Result<Complex>,
) -> Result<(Complex, Complex)> {
    let prec = p.prec().max(zeta.prec());
    let a = p.a.with_prec(prec);
    let c = p.c.with_prec(prec);
    let zeta = zeta.with_prec(prec);
    let z = zeta.value();
    let one = Complex::one(prec);
    let two_pi_i = Complex::i(prec).scale(&(pi(prec) * 2u32));
    // e^{i pi x}
    let ep = |x: &Complex| x.mul_i().scale(&pi(prec)).exp();
    let ps = |a: &Complex, k: i64| psi_eval(&HypParams::new(a.clone(), c.clone()), &zeta.rotate_half_turns(k));
    let ez = z.exp();
    let cma = &c - &a;
    let a1c = &(&one + &a) - &c;
    if relation.needs_log_case() && !p.is_log_case() {
        return Err(Error::Domain(format!("{relation} is stated for c = 1")));
    }
    let gc = || gamma(&c);
    let phi_z = || phi(&HypParams::new(a.clone(), c.clone()), &z);

    let (lhs, rhs) = match relation {
        Relation::Rep1 => {
            let k = &(&two_pi_i * &rgamma(&a)) * &rgamma(&a1c);
            let rhs = &(&ep(&a.scale_f64(-2.0)) * &ps(&a, 0)?) + &(&(&ep(&(-a.clone())) * &k) * &(&ps(&cma, 1)? * &ez));
            (ps(&a, 2)?, rhs)
        }
        Relation::Rep2 => {
            let k = &(&two_pi_i * &rgamma(&a)) * &rgamma(&a1c);
            let m2c = ep(&c.scale_f64(-2.0));
            let coef = &(&one + &m2c) - &ep(&(&c.scale_f64(-2.0) + &a.scale_f64(2.0)));
            let second = &(&ep(&(&a - &c.scale_f64(2.0))) * &k) * &(&ps(&cma, -1)? * &ez);
            (ps(&a, 2)?, &(&coef * &ps(&a, 0)?) + &second)
        }
        Relation::PsiPhi1 => {
            let k = &(&two_pi_i * &rgamma(&c)) * &rgamma(&a1c);
            let rhs = &(&ep(&c.scale_f64(-2.0)) * &ps(&a, 0)?) + &(&(&ep(&(-c.clone())) * &k) * &phi_z()?);
            (ps(&a, 2)?, rhs)
        }
        Relation::PsiPhi2 => {
            let k = &(&two_pi_i * &rgamma(&c)) * &rgamma(&a1c);
            let rhs = &(&ep(&c.scale_f64(2.0)) * &ps(&a, 0)?) - &(&(&ep(&c) * &k) * &phi_z()?);
            (ps(&a, -2)?, rhs)
        }
        Relation::Int01 | Relation::Int02 | Relation::Int03 | Relation::Int04Plus | Relation::Int04Minus => {
            // phi = Gamma(c)/Gamma(c-a) e^{i pi a s1} psi(a; e^{i pi k1} z)
            //     + Gamma(c)/Gamma(a) e^{i pi (c-a) s2} psi(c-a; e^{i pi k2} z) e^z
            let (s1, k1, s2, k2) = match relation {
                Relation::Int01 => (-1.0, -2, 1.0, -1),
                Relation::Int02 | Relation::Int04Minus => (-1.0, 0, 1.0, 1),
                _ => (1.0, 0, -1.0, -1),
            };
            let g = gc()?;
            let first = &(&(&g * &rgamma(&cma)) * &ep(&a.scale_f64(s1))) * &ps(&a, k1)?;
            let second = &(&(&g * &rgamma(&a)) * &ep(&cma.scale_f64(s2))) * &(&ps(&cma, k2)? * &ez);
            (phi_z()?, &first + &second)
        }
        Relation::Prop1 => {
            let beta = &a;
            let k = &two_pi_i * &rgamma(beta).square();
            let rhs = &(&ep(&beta.scale_f64(-2.0)) * &ps(beta, 0)?) + &(&(&ep(&(-beta.clone())) * &k) * &(&ps(&(&one - beta), 1)? * &ez));
            (ps(beta, 2)?, rhs)
        }
        Relation::Prop3 => {
            let beta = &a;
            let omb = &one - beta;
            let k = &two_pi_i * &rgamma(&omb).square();
            let rhs = &(&ep(&beta.scale_f64(2.0)) * &ps(&omb, -1)?) - &(&(&ep(beta) * &k) * &(&ps(beta, 0)? * &ez.recip()));
            (ps(&omb, 1)?, rhs)
        }
    };
    Ok((lhs, rhs))
}

pub(crate) fn residual_with(
    relation: Relation,
    p: &HypParams,
    zeta: &CoveringPoint,
    psi_eval: &dyn Fn(&HypParams, &CoveringPoint) -> Result<Complex>,
) -> Result<Float> {
    let (l, r) = sides_with(relation, p, zeta, psi_eval)?;
    Ok(rel_residual(&l, &r))
}
