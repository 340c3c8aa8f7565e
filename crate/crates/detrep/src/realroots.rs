//! Exact univariate real-root machinery.
//!
//! Sturm chains over the rationals drive everything: root counting in an
//! interval, Tarski queries (sums of `sign q` over the roots of `p`), the
//! `2^m` sign-condition counting formula, and — the consumer everybody else
//! cares about — the sign of a `Q(mu)` element at the distinguished root
//! `mu* = sqrt(2) + sqrt(3)`, the unique root of `u^4 - 10u^2 + 1` in
//! `(3, 4)`. On top of that sits the positive-definiteness predicate for
//! small symmetric matrices over `Q(mu)` via leading principal minors.
//!
//! Note on the sign predicate: signs are determined at `mu*` specifically
//! (isolated in `(3, 4)`), never aggregated across the four conjugate roots
//! of the minimal polynomial; an aggregate over a symmetric interval is
//! still available through [`count_sign_conditions`] where a census over
//! all roots is genuinely wanted.

use crate::field::{rat_int, Field, NumberFieldElement, Rational};
use crate::linalg::FieldMatrix;
use num::{Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RealRootError {
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("invalid interval: left bound must be strictly below right bound")]
    InvalidInterval,
    #[error("interval endpoint is a root of the polynomial")]
    BoundaryRoot,
    #[error("matrix is not symmetric")]
    Asymmetric,
    #[error("unsupported matrix size {0} (expected {1})")]
    WrongSize(usize, String),
}

/// Dense univariate polynomial over the rationals, lowest degree first,
/// with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// The monomial `u`.
    pub fn u() -> Self {
        Self::from_int_coeffs(&[0, 1])
    }

    /// A `Q(mu)` element read as a polynomial in `mu` (degree < 4).
    pub fn from_field_element(x: &NumberFieldElement) -> Self {
        Self::new(x.coeffs().to_vec())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(|| rat_int(0));
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(|| rat_int(0));
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![rat_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if Zero::is_zero(b) {
                    continue;
                }
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact Euclidean division: `(quotient, remainder)`. Panics on a zero
    /// divisor (programmer error).
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![rat_int(0); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = rem.leading().unwrap() / &dl;
            let shift = rd - dd;
            quot[shift] = &quot[shift] + &f;
            // rem -= f * u^shift * d
            let mut coeffs = rem.coeffs.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[shift + i] = &coeffs[shift + i] - &f * c;
            }
            rem = Self::new(coeffs);
        }
        (Self::new(quot), rem)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g);
        debug_assert!(r.is_zero(), "gcd must divide exactly");
        q
    }
}

/// `u^4 - 10u^2 + 1`, the minimal polynomial of `mu = sqrt(2) + sqrt(3)`.
pub fn minimal_poly_mu() -> UniPoly {
    UniPoly::from_int_coeffs(&[1, 0, -10, 0, 1])
}

/// The negated-remainder chain starting from `(p0, p1)`.
///
/// Consecutive entries satisfy `s_{k+1} = -rem(s_{k-1}, s_k)`; the chain
/// stops before the first zero remainder.
pub fn sturm_chain(p0: UniPoly, p1: UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p0];
    if p1.is_zero() {
        return chain;
    }
    chain.push(p1);
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].divrem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(r.neg());
    }
}

fn sign_variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut last: Option<bool> = None;
    let mut v = 0;
    for p in chain {
        let val = p.eval(x);
        if Zero::is_zero(&val) {
            continue;
        }
        let neg = val.is_negative();
        if let Some(prev) = last {
            if prev != neg {
                v += 1;
            }
        }
        last = Some(neg);
    }
    v
}

fn checked_interval(sf: &UniPoly, a: &Rational, b: &Rational) -> Result<(), RealRootError> {
    if a >= b {
        return Err(RealRootError::InvalidInterval);
    }
    if Zero::is_zero(&sf.eval(a)) || Zero::is_zero(&sf.eval(b)) {
        return Err(RealRootError::BoundaryRoot);
    }
    Ok(())
}

/// Sum over the distinct real roots of `p` in `(a, b)` of `sign q(root)`,
/// via the Sturm chain of `(p*, p*' . q)` where `p*` is the square-free
/// part of `p`.
pub fn tarski_query(
    p: &UniPoly,
    q: &UniPoly,
    a: &Rational,
    b: &Rational,
) -> Result<i64, RealRootError> {
    if p.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    let sf = p.square_free_part();
    checked_interval(&sf, a, b)?;
    let chain = sturm_chain(sf.clone(), sf.derivative().mul(q));
    Ok(sign_variations(&chain, a) as i64 - sign_variations(&chain, b) as i64)
}

/// Number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn count_roots(p: &UniPoly, a: &Rational, b: &Rational) -> Result<usize, RealRootError> {
    let n = tarski_query(p, &UniPoly::one(), a, b)?;
    debug_assert!(n >= 0);
    Ok(n as usize)
}

/// Number of distinct roots of `p` in `(a, b)` at which every polynomial in
/// `qs` is strictly positive, computed with `2^m` Tarski queries:
/// `count = 2^-m * sum over e in {1,2}^m of TaQ(p, prod q_i^{e_i})`.
pub fn count_sign_conditions(
    p: &UniPoly,
    qs: &[UniPoly],
    a: &Rational,
    b: &Rational,
) -> Result<usize, RealRootError> {
    let m = qs.len();
    assert!(m <= 4, "sign-condition census limited to four polynomials");
    let mut total: i64 = 0;
    for mask in 0..(1u32 << m) {
        let mut probe = UniPoly::one();
        for (i, q) in qs.iter().enumerate() {
            let e = if mask & (1 << i) != 0 { 2 } else { 1 };
            probe = probe.mul(q);
            if e == 2 {
                probe = probe.mul(q);
            }
        }
        total += tarski_query(p, &probe, a, b)?;
    }
    let scale = 1i64 << m;
    debug_assert_eq!(total.rem_euclid(scale), 0, "census must be integral");
    let count = total.div_euclid(scale);
    debug_assert!(count >= 0);
    Ok(count as usize)
}

/// Sign of a `Q(mu)` element at `mu* = sqrt(2) + sqrt(3)`.
///
/// The element is already reduced modulo the minimal polynomial, so it
/// vanishes at `mu*` exactly when it is the zero element (a nonzero
/// representative of degree < 4 cannot share a root with the irreducible
/// minimal polynomial — its gcd with `MinPol` is 1). For nonzero elements
/// the sign is the Tarski query against the isolating interval `(3, 4)`,
/// which contains `mu*` and no conjugate root.
pub fn sign_at_mustar(x: &NumberFieldElement) -> i32 {
    if x.is_zero() {
        return 0;
    }
    if let Some(r) = x.as_rational() {
        return if r.is_negative() { -1 } else { 1 };
    }
    let q = UniPoly::from_field_element(x);
    let s = tarski_query(&minimal_poly_mu(), &q, &rat_int(3), &rat_int(4))
        .expect("3 and 4 are not roots of the minimal polynomial");
    debug_assert!(s == 1 || s == -1, "nonzero element must have a sign");
    s as i32
}

fn check_symmetric(a: &FieldMatrix<NumberFieldElement>) -> Result<(), RealRootError> {
    for r in 0..a.rows() {
        for c in (r + 1)..a.cols() {
            if a.get(r, c) != a.get(c, r) {
                return Err(RealRootError::Asymmetric);
            }
        }
    }
    Ok(())
}

/// Positive definiteness of a small (n <= 5) symmetric matrix over `Q(mu)`
/// under the distinguished embedding: all leading principal minors must
/// have sign +1 at `mu*`. A zero or negative minor yields `false`.
pub fn is_pd(a: &FieldMatrix<NumberFieldElement>) -> Result<bool, RealRootError> {
    if a.rows() != a.cols() || a.rows() == 0 || a.rows() > 5 {
        return Err(RealRootError::WrongSize(a.rows(), "square, 1..=5".into()));
    }
    check_symmetric(a)?;
    Ok(leading_minor_signs(a).iter().all(|&s| s == 1))
}

/// Signs at `mu*` of the leading principal minors (sizes `1..=n`).
pub fn leading_minor_signs(a: &FieldMatrix<NumberFieldElement>) -> Vec<i32> {
    (1..=a.rows())
        .map(|k| {
            let mut sub = FieldMatrix::zero(k, k);
            for r in 0..k {
                for c in 0..k {
                    sub.set(r, c, a.get(r, c).clone());
                }
            }
            sign_at_mustar(&sub.det())
        })
        .collect()
}

/// The 3x3 specialization of [`is_pd`] (the shape the sextic pipeline uses).
pub fn is_pd_3x3(a: &FieldMatrix<NumberFieldElement>) -> Result<bool, RealRootError> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(RealRootError::WrongSize(a.rows(), "3x3".into()));
    }
    is_pd(a)
}
