//! Multiprecision complex numbers built on MPFR reals.
//!
//! Binary operations produce a result at the larger of the two operand
//! precisions; unary functions keep the precision of `self`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {:+}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.prec() as f64 / 3.33).floor().max(1.0) as usize;
        write!(
            f,
            "{} {} {}i",
            self.re.to_string_radix(10, Some(digits)),
            if self.im.is_sign_negative() { "-" } else { "+" },
            Float::with_val(self.prec(), self.im.abs_ref()).to_string_radix(10, Some(digits))
        )
    }
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        let p = re.prec().max(im.prec());
        let mut re = re;
        let mut im = im;
        re.set_prec(p);
        im.set_prec(p);
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Complex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let p = re.prec();
        Complex { re, im: Float::new(p) }
    }

    pub fn from_int(prec: u32, k: i64) -> Self {
        Complex::from_real(Float::with_val(prec, k))
    }

    /// `e^{i theta}` for a real angle.
    pub fn cis(theta: &Float) -> Self {
        let p = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(p));
        Complex { re: c, im: s }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy rounded (or extended) to the given precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Complex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    /// Modulus `|z|`.
    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn mul_i(&self) -> Self {
        Complex { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        Complex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    /// Division by an integer, rounded once per component.
    pub fn div_int(&self, k: i64) -> Self {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re / k), Float::with_val(p, &self.im / k))
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex { re: Float::with_val(self.prec(), &self.re / &d), im: -Float::with_val(self.prec(), &self.im / &d) }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Complex { re: Float::with_val(p, &r * &c), im: r * s }
    }

    /// Principal logarithm, imaginary part in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let m = self.abs();
        Complex { re: m.ln(), im: Float::with_val(p, self.im.atan2_ref(&self.re)) }
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Complex::zero(p);
        }
        let m = self.abs();
        // Stable form: t = sqrt((|z| + |re|)/2)
        let t = (m + Float::with_val(p, self.re.abs_ref())) / 2u32;
        let t = t.sqrt();
        let half_im_over_t = Float::with_val(p, &self.im / &t) / 2u32;
        if !self.re.is_sign_negative() {
            Complex { re: t, im: half_im_over_t }
        } else {
            let re = half_im_over_t.abs();
            let im = if self.im.is_sign_negative() { -t } else { t };
            Complex { re, im }
        }
    }

    /// `self^w = exp(w ln self)` on the principal branch.
    pub fn powc(&self, w: &Complex) -> Self {
        if self.is_zero() {
            return Complex::zero(self.prec());
        }
        (w * &self.ln()).exp()
    }

    pub fn powi(&self, k: i32) -> Self {
        let p = self.prec();
        let mut acc = Complex::one(p);
        let mut base = if k < 0 { self.recip() } else { self.clone() };
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Complex { re: s * ch, im: c * sh }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        Complex { re: c * ch, im: -(s * sh) }
    }

    pub fn sinh(&self) -> Self {
        // sinh z = -i sin(iz)
        let s = self.mul_i().sin();
        Complex { re: s.im, im: -s.re }
    }

    pub fn cosh(&self) -> Self {
        self.mul_i().cos()
    }

    /// Principal arcsine, `-i ln(iz + sqrt(1 - z^2))`.
    pub fn asin(&self) -> Self {
        let p = self.prec();
        let one = Complex::one(p);
        let w = (&self.mul_i() + &(&one - &self.square()).sqrt()).ln();
        Complex { re: w.im, im: -w.re }
    }

    /// Largest of `|re|`, `|im|`; cheap size measure for tolerances.
    pub fn max_abs(&self) -> Float {
        let a = Float::with_val(self.prec(), self.re.abs_ref());
        let b = Float::with_val(self.prec(), self.im.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// `pi` at the given precision.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `2^{-k}` at the given precision.
pub fn pow2_neg(prec: u32, k: u32) -> Float {
    Float::with_val(prec, 1) >> k
}

/// `|a - b| / (1 + |a| + |b|)`.
pub fn rel_residual(a: &Complex, b: &Complex) -> Float {
    let p = a.prec().max(b.prec());
    let d = (a - b).abs();
    let s = Float::with_val(p, 1) + a.abs() + b.abs();
    d / s
}

/// `|a - b| / max(|a|, |b|, tiny)`; exact agreement gives 0.
pub fn rel_diff(a: &Complex, b: &Complex) -> Float {
    let p = a.prec().max(b.prec());
    let d = (a - b).abs();
    if d.is_zero() {
        return d;
    }
    let s = a.abs().max(&b.abs());
    if s.is_zero() {
        return Float::with_val(p, rug::float::Special::Infinity);
    }
    d / s
}

/// Real power `x^y` for positive real `x` and complex exponent.
pub fn real_pow(x: &Float, w: &Complex) -> Complex {
    let l = Complex::from_real(Float::with_val(w.prec(), x.ln_ref()));
    (w * &l).exp()
}

/// `x^k` for a real base and nonnegative integer exponent.
pub fn float_powu(x: &Float, k: u32) -> Float {
    Float::with_val(x.prec(), x.pow(k))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $trait<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $trait<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| {
    let p = a.prec().max(b.prec());
    Complex { re: Float::with_val(p, &a.re + &b.re), im: Float::with_val(p, &a.im + &b.im) }
});

binop!(Sub, sub, |a, b| {
    let p = a.prec().max(b.prec());
    Complex { re: Float::with_val(p, &a.re - &b.re), im: Float::with_val(p, &a.im - &b.im) }
});

binop!(Mul, mul, |a, b| {
    let p = a.prec().max(b.prec());
    let ac = Float::with_val(p, &a.re * &b.re);
    let bd = Float::with_val(p, &a.im * &b.im);
    let ad = Float::with_val(p, &a.re * &b.im);
    let bc = Float::with_val(p, &a.im * &b.re);
    Complex { re: ac - bd, im: ad + bc }
});

binop!(Div, div, |a, b| {
    let p = a.prec().max(b.prec());
    let d = b.norm_sqr();
    let ac = Float::with_val(p, &a.re * &b.re);
    let bd = Float::with_val(p, &a.im * &b.im);
    let ad = Float::with_val(p, &a.re * &b.im);
    let bc = Float::with_val(p, &a.im * &b.re);
    Complex { re: (ac + bd) / &d, im: (bc - ad) / &d }
});

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re.clone(), im: -self.im.clone() }
    }
}
