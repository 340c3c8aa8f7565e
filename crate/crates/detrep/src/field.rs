//! Exact scalar arithmetic.
//!
//! Three nested coefficient fields, each exact:
//!
//! * [`Rational`] — arbitrary-precision rationals (from `num`).
//! * [`NumberFieldElement`] — the degree-4 real field `Q(mu)` where
//!   `mu = sqrt(2) + sqrt(3)` satisfies `mu^4 = 10*mu^2 - 1`. It contains
//!   `sqrt(2) = (mu^3 - 9*mu)/2` and `sqrt(3) = (11*mu - mu^3)/2`.
//! * [`ComplexExtElement`] — the imaginary extension `Q(mu, i)`, stored as
//!   real and imaginary parts in `Q(mu)`.
//!
//! The [`Field`] trait is the small abstraction the generic linear algebra
//! and polynomial layers are written against. Inversion in `Q(mu)` reuses
//! the exact linear solver on the regular representation of the element.

use crate::linalg::FieldMatrix;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d` (panics if `d == 0`).
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text for a rational: `p` or `p/q` with `q > 0`.
pub fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The common interface of the three exact coefficient fields.
///
/// Implementations must be exact: equality is decidable and arithmetic never
/// rounds. `approx`/`approx_im` expose the distinguished real embedding
/// (`mu` maps to the root of `u^4 - 10u^2 + 1` in `(3, 4)`) for diagnostics
/// and floating cross-checks only — no verdict is ever derived from them.
pub trait Field:
    Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` exactly for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// Demote to the prime field if the element happens to be rational.
    fn as_rational(&self) -> Option<Rational>;
    /// The generator `mu` when the field contains it.
    fn generator_mu() -> Option<Self> {
        None
    }
    /// A square root of -1 when the field contains it.
    fn imaginary_unit() -> Option<Self> {
        None
    }
    /// Demote a value of the largest field into this one; `None` when the
    /// value does not lie in it (e.g. a genuinely imaginary coefficient
    /// offered to a real field).
    fn from_complex(c: &ComplexExtElement) -> Option<Self>;
    /// Canonical display text, re-parseable by the form parser.
    fn render(&self) -> String;
    /// Real part of the element under the distinguished embedding.
    fn approx(&self) -> f64;
    /// Imaginary part of the element under the distinguished embedding.
    fn approx_im(&self) -> f64 {
        0.0
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// Small-exponent power by repeated multiplication.
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_complex(c: &ComplexExtElement) -> Option<Self> {
        if c.is_real() {
            c.re.as_rational()
        } else {
            None
        }
    }
    fn render(&self) -> String {
        rational_text(self)
    }
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Floating value of `mu = sqrt(2) + sqrt(3)` under the distinguished
/// embedding; used only for cross-checks and diagnostics.
pub const MU_F64: f64 = 3.146_264_369_941_972_3;

/// An element of `Q(mu)`, `mu = sqrt(2) + sqrt(3)`, in the power basis
/// `1, mu, mu^2, mu^3` with rational coordinates. Reduction rule:
/// `mu^4 = 10*mu^2 - 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    c: [Rational; 4],
}

impl NumberFieldElement {
    pub fn new(c: [Rational; 4]) -> Self {
        NumberFieldElement { c }
    }

    /// Coordinates in the power basis `1, mu, mu^2, mu^3`.
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.c[i]
    }

    pub fn mu() -> Self {
        Self::new([rat_int(0), rat_int(1), rat_int(0), rat_int(0)])
    }

    /// `sqrt(2) = (mu^3 - 9*mu)/2`.
    pub fn sqrt2() -> Self {
        Self::new([rat_int(0), rat(-9, 2), rat_int(0), rat(1, 2)])
    }

    /// `sqrt(3) = (11*mu - mu^3)/2`.
    pub fn sqrt3() -> Self {
        Self::new([rat_int(0), rat(11, 2), rat_int(0), rat(-1, 2)])
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|x| Zero::is_zero(x))
    }

    /// Index of the highest nonzero coordinate (0 for rationals and zero).
    fn top(&self) -> usize {
        for i in (0..4).rev() {
            if !Zero::is_zero(&self.c[i]) {
                return i;
            }
        }
        0
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if Zero::is_zero(r) {
            return <Self as Field>::zero();
        }
        Self::new([
            &self.c[0] * r,
            &self.c[1] * r,
            &self.c[2] * r,
            &self.c[3] * r,
        ])
    }

    /// Multiplication by `mu` (shift and reduce).
    fn mul_mu(&self) -> Self {
        let ten = rat_int(10);
        Self::new([
            -&self.c[3],
            self.c[0].clone(),
            &self.c[1] + &self.c[3] * &ten,
            self.c[2].clone(),
        ])
    }

    fn mul_full(&self, rhs: &Self) -> Self {
        let mut p: [Rational; 7] = std::array::from_fn(|_| rat_int(0));
        for i in 0..4 {
            if Zero::is_zero(&self.c[i]) {
                continue;
            }
            for j in 0..4 {
                if Zero::is_zero(&rhs.c[j]) {
                    continue;
                }
                p[i + j] = &p[i + j] + &self.c[i] * &rhs.c[j];
            }
        }
        // Reduce mu^4 = 10 mu^2 - 1, mu^5 = 10 mu^3 - mu, mu^6 = 99 mu^2 - 10.
        let ten = rat_int(10);
        let ninety_nine = rat_int(99);
        let mut out = [
            p[0].clone(),
            p[1].clone(),
            p[2].clone(),
            p[3].clone(),
        ];
        if !Zero::is_zero(&p[4]) {
            out[2] = &out[2] + &p[4] * &ten;
            out[0] = &out[0] - &p[4];
        }
        if !Zero::is_zero(&p[5]) {
            out[3] = &out[3] + &p[5] * &ten;
            out[1] = &out[1] - &p[5];
        }
        if !Zero::is_zero(&p[6]) {
            out[2] = &out[2] + &p[6] * &ninety_nine;
            out[0] = &out[0] - &p[6] * &ten;
        }
        Self::new(out)
    }
}

impl Field for NumberFieldElement {
    fn zero() -> Self {
        Self::new(std::array::from_fn(|_| rat_int(0)))
    }
    fn one() -> Self {
        Self::new([rat_int(1), rat_int(0), rat_int(0), rat_int(0)])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| Zero::is_zero(x))
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new([
            &self.c[0] + &rhs.c[0],
            &self.c[1] + &rhs.c[1],
            &self.c[2] + &rhs.c[2],
            &self.c[3] + &rhs.c[3],
        ])
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::new([
            &self.c[0] - &rhs.c[0],
            &self.c[1] - &rhs.c[1],
            &self.c[2] - &rhs.c[2],
            &self.c[3] - &rhs.c[3],
        ])
    }
    fn mul(&self, rhs: &Self) -> Self {
        // Rational factors are the hot path downstream; skip the convolution.
        match (self.top(), rhs.top()) {
            (0, _) => rhs.scale(&self.c[0]),
            (_, 0) => self.scale(&rhs.c[0]),
            _ => self.mul_full(rhs),
        }
    }
    fn neg(&self) -> Self {
        Self::new([-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]])
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Self::from_rational(self.c[0].recip()));
        }
        // Solve (regular representation of self) * y = 1 over the rationals.
        let mut cols = Vec::with_capacity(4);
        let mut b = self.clone();
        for _ in 0..4 {
            cols.push(b.c.to_vec());
            b = b.mul_mu();
        }
        let m = FieldMatrix::from_cols(cols);
        let rhs = [rat_int(1), rat_int(0), rat_int(0), rat_int(0)];
        let y = m
            .solve(&rhs)
            .expect("nonzero field element has an invertible regular representation");
        Some(Self::new([
            y[0].clone(),
            y[1].clone(),
            y[2].clone(),
            y[3].clone(),
        ]))
    }
    fn from_rational(r: Rational) -> Self {
        Self::new([r, rat_int(0), rat_int(0), rat_int(0)])
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }
    fn generator_mu() -> Option<Self> {
        Some(Self::mu())
    }
    fn from_complex(c: &ComplexExtElement) -> Option<Self> {
        if c.is_real() {
            Some(c.re.clone())
        } else {
            None
        }
    }
    fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for k in (0..4).rev() {
            let c = &self.c[k];
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            let sign_neg = c.is_negative();
            if out.is_empty() {
                if sign_neg {
                    out.push('-');
                }
            } else if sign_neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let power = match k {
                0 => String::new(),
                1 => "mu".to_string(),
                _ => format!("mu^{k}"),
            };
            if k == 0 {
                out.push_str(&rational_text(&mag));
            } else if mag.is_one() {
                out.push_str(&power);
            } else if mag.denom().is_one() {
                out.push_str(&format!("{}*{}", mag.numer(), power));
            } else {
                out.push_str(&format!("({})*{}", rational_text(&mag), power));
            }
        }
        out
    }
    fn approx(&self) -> f64 {
        let mut acc = 0.0;
        let mut p = 1.0;
        for k in 0..4 {
            acc += self.c[k].to_f64().unwrap_or(f64::NAN) * p;
            p *= MU_F64;
        }
        acc
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// An element of `Q(mu, i)`: real and imaginary parts in `Q(mu)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ComplexExtElement {
    pub re: NumberFieldElement,
    pub im: NumberFieldElement,
}

impl ComplexExtElement {
    pub fn new(re: NumberFieldElement, im: NumberFieldElement) -> Self {
        ComplexExtElement { re, im }
    }

    pub fn from_real(re: NumberFieldElement) -> Self {
        ComplexExtElement {
            re,
            im: Field::zero(),
        }
    }

    pub fn i() -> Self {
        ComplexExtElement {
            re: Field::zero(),
            im: Field::one(),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexExtElement {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re^2 + im^2`, the norm to the real subfield.
    pub fn norm_real(&self) -> NumberFieldElement {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

impl Field for ComplexExtElement {
    fn zero() -> Self {
        Self::new(Field::zero(), Field::zero())
    }
    fn one() -> Self {
        Self::new(Field::one(), Field::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.im.is_zero() {
            return Self::new(self.re.mul(&rhs.re), self.re.mul(&rhs.im));
        }
        if rhs.im.is_zero() {
            return Self::new(self.re.mul(&rhs.re), self.im.mul(&rhs.re));
        }
        Self::new(
            self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        )
    }
    fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }
    fn inv(&self) -> Option<Self> {
        // 1/(a+bi) = (a-bi)/(a^2+b^2); the norm is zero only for zero since
        // the real subfield orders into R.
        let n = self.norm_real();
        let ninv = n.inv()?;
        Some(Self::new(self.re.mul(&ninv), self.im.neg().mul(&ninv)))
    }
    fn from_rational(r: Rational) -> Self {
        Self::from_real(NumberFieldElement::from_rational(r))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            self.re.as_rational()
        } else {
            None
        }
    }
    fn generator_mu() -> Option<Self> {
        Some(Self::from_real(NumberFieldElement::mu()))
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Self::i())
    }
    fn from_complex(c: &ComplexExtElement) -> Option<Self> {
        Some(c.clone())
    }
    fn render(&self) -> String {
        if self.im.is_zero() {
            return self.re.render();
        }
        // Renders `v * i` where `v` is a nonzero magnitude.
        let im_text = |v: &NumberFieldElement| -> String {
            match v.as_rational() {
                Some(r) if r.is_one() => "i".to_string(),
                Some(r) if r.denom().is_one() => format!("{}*i", r.numer()),
                Some(r) => format!("({})*i", rational_text(&r)),
                None => format!("({})*i", v.render()),
            }
        };
        // Sign is pulled out only for rational imaginary parts; irrational
        // ones keep their sign inside the parentheses.
        let im_negative = self
            .im
            .as_rational()
            .map(|r| r.is_negative())
            .unwrap_or(false);
        let im_mag = if im_negative { self.im.neg() } else { self.im.clone() };
        if self.re.is_zero() {
            let body = im_text(&im_mag);
            if im_negative {
                format!("-{body}")
            } else {
                body
            }
        } else {
            let sep = if im_negative { " - " } else { " + " };
            format!("{}{}{}", self.re.render(), sep, im_text(&im_mag))
        }
    }
    fn approx(&self) -> f64 {
        self.re.approx()
    }
    fn approx_im(&self) -> f64 {
        self.im.approx()
    }
}

impl fmt::Debug for ComplexExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for ComplexExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl From<Rational> for NumberFieldElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<Rational> for ComplexExtElement {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<NumberFieldElement> for ComplexExtElement {
    fn from(x: NumberFieldElement) -> Self {
        Self::from_real(x)
    }
}
