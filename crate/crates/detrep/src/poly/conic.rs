//! The coordinate ring of the affine conic `v^2 + w^2 + 1 = 0`, the fixed
//! normalization data of the singular sextic, and pullback of ternary forms
//! along the parametrization
//! `(x0 : x1 : x2) = (2v^2 + 1 : v^3 + 2v : (v^2 - 1) w)`.
//!
//! Sections of the degree-`t` twist are stored in the canonical monomial
//! basis `(v^{3t}, v^{3t-1} w, ..., w^{3t}, v^{3t-1}, ..., w^{3t-1})` of
//! length `6t + 1` (all monomials of total degree `3t` and `3t - 1`), with
//! an implicit denominator `H^t` where `H = 2*X0 + X1`. Arithmetic routes
//! through the reduced normal form `a(v) + b(v) w` (eliminating `w^2` via
//! `w^2 = -1 - v^2`); an exact change-of-basis matrix per twist converts
//! back to the canonical basis and is verified invertible at construction.

use super::form::TernaryForm;
use crate::field::{rat_int, ComplexExtElement, Field, NumberFieldElement, Rational};
use crate::linalg::FieldMatrix;
use std::sync::OnceLock;

type Nfe = NumberFieldElement;
type Cx = ComplexExtElement;

/// Largest twist with a precomputed basis; covers pullbacks of sextics,
/// syzygy products, and headroom for randomized product tests.
pub const MAX_TWIST: u32 = 8;

fn nfe_zero() -> Nfe {
    Field::zero()
}

// ---------------------------------------------------------------------------
// Reduced normal form a(v) + b(v) w.

/// Polynomial in `v, w` reduced modulo `v^2 + w^2 + 1`: `a(v) + b(v) w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct WPoly {
    /// Coefficients of `a(v)`, lowest degree first.
    a: Vec<Nfe>,
    /// Coefficients of `b(v)` (the `w`-carrying half), lowest degree first.
    b: Vec<Nfe>,
}

fn trim(mut v: Vec<Nfe>) -> Vec<Nfe> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn add_vec(x: &[Nfe], y: &[Nfe]) -> Vec<Nfe> {
    let n = x.len().max(y.len());
    trim(
        (0..n)
            .map(|i| {
                let a = x.get(i).cloned().unwrap_or_else(nfe_zero);
                let b = y.get(i).cloned().unwrap_or_else(nfe_zero);
                a.add(&b)
            })
            .collect(),
    )
}

fn conv(x: &[Nfe], y: &[Nfe]) -> Vec<Nfe> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![nfe_zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&a.mul(b));
        }
    }
    trim(out)
}

/// `p(v) * (1 + v^2)`.
fn mul_one_plus_v2(p: &[Nfe]) -> Vec<Nfe> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![nfe_zero(); p.len() + 2];
    for (i, c) in p.iter().enumerate() {
        out[i] = out[i].add(c);
        out[i + 2] = out[i + 2].add(c);
    }
    trim(out)
}

impl WPoly {
    pub(crate) fn zero() -> Self {
        WPoly {
            a: Vec::new(),
            b: Vec::new(),
        }
    }

    fn constant(c: Nfe) -> Self {
        WPoly {
            a: trim(vec![c]),
            b: Vec::new(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        WPoly {
            a: add_vec(&self.a, &rhs.a),
            b: add_vec(&self.b, &rhs.b),
        }
    }

    fn scale(&self, c: &Nfe) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WPoly {
            a: trim(self.a.iter().map(|x| x.mul(c)).collect()),
            b: trim(self.b.iter().map(|x| x.mul(c)).collect()),
        }
    }

    /// Product with the relation `w^2 = -1 - v^2` applied once:
    /// `(a1 + b1 w)(a2 + b2 w) = a1 a2 - b1 b2 (1 + v^2) + (a1 b2 + a2 b1) w`.
    fn mul(&self, rhs: &Self) -> Self {
        let cross = mul_one_plus_v2(&conv(&self.b, &rhs.b));
        let a = add_vec(
            &conv(&self.a, &rhs.a),
            &cross.iter().map(|c| c.neg()).collect::<Vec<_>>(),
        );
        let b = add_vec(&conv(&self.a, &rhs.b), &conv(&self.b, &rhs.a));
        WPoly { a, b }
    }

    /// Exact evaluation at a point of the conic, given power tables.
    fn eval(&self, v_pows: &[Cx], w_pows: &[Cx]) -> Cx {
        let mut acc = Cx::zero();
        for (i, c) in self.a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&v_pows[i].mul(&Cx::from_real(c.clone())));
            }
        }
        for (i, c) in self.b.iter().enumerate() {
            if !c.is_zero() {
                let m = v_pows[i].mul(&w_pows[1]);
                acc = acc.add(&m.mul(&Cx::from_real(c.clone())));
            }
        }
        acc
    }
}

/// The reduced normal form of the monomial `v^p w^q`.
fn monomial_reduced(p: u32, q: u32) -> WPoly {
    // w^{2c} = (-1 - v^2)^c.
    let c = q / 2;
    let mut even = vec![Field::one()];
    for _ in 0..c {
        even = mul_one_plus_v2(&even);
        for x in even.iter_mut() {
            *x = x.neg();
        }
    }
    let mut shifted = vec![nfe_zero(); p as usize];
    shifted.extend(even);
    if q % 2 == 0 {
        WPoly {
            a: trim(shifted),
            b: Vec::new(),
        }
    } else {
        WPoly {
            a: Vec::new(),
            b: trim(shifted),
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical basis and change of basis.

/// The canonical monomial exponents `(p, q)` of twist `t`: all `(p, q)`
/// with `p + q = 3t` (by ascending `q`), then all with `p + q = 3t - 1`.
pub fn canonical_monomials(t: u32) -> Vec<(u32, u32)> {
    let d = 3 * t;
    let mut out = Vec::with_capacity(6 * t as usize + 1);
    for j in 0..=d {
        out.push((d - j, j));
    }
    if d > 0 {
        for j in 0..d {
            out.push((d - 1 - j, j));
        }
    }
    out
}

/// Change of basis between the canonical monomials of twist `t` and the
/// reduced coordinates `[a_0..a_{3t}, b_0..b_{3t-1}]`.
pub struct BasisChange {
    twist: u32,
    /// Columns: reduced coordinates of each canonical monomial.
    canonical_to_reduced: FieldMatrix<Rational>,
    reduced_to_canonical: FieldMatrix<Rational>,
}

impl BasisChange {
    fn build(t: u32) -> Self {
        let n = 6 * t as usize + 1;
        let a_len = 3 * t as usize + 1;
        let mut m = FieldMatrix::<Rational>::zero(n, n);
        for (col, &(p, q)) in canonical_monomials(t).iter().enumerate() {
            let red = monomial_reduced(p, q);
            for (i, c) in red.a.iter().enumerate() {
                m.set(i, col, c.as_rational().expect("reduction has integer entries"));
            }
            for (i, c) in red.b.iter().enumerate() {
                m.set(
                    a_len + i,
                    col,
                    c.as_rational().expect("reduction has integer entries"),
                );
            }
        }
        let inv = m
            .invert()
            .expect("canonical monomials are independent modulo the conic");
        BasisChange {
            twist: t,
            canonical_to_reduced: m,
            reduced_to_canonical: inv,
        }
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn forward(&self) -> &FieldMatrix<Rational> {
        &self.canonical_to_reduced
    }

    pub fn backward(&self) -> &FieldMatrix<Rational> {
        &self.reduced_to_canonical
    }
}

/// The cached change of basis for `t <= MAX_TWIST`.
pub fn basis_change(t: u32) -> &'static BasisChange {
    static CACHE: OnceLock<Vec<OnceLock<BasisChange>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=MAX_TWIST).map(|_| OnceLock::new()).collect());
    assert!(
        t <= MAX_TWIST,
        "twist {t} exceeds the precomputed bound {MAX_TWIST}"
    );
    cache[t as usize].get_or_init(|| BasisChange::build(t))
}

fn apply_rational_matrix(m: &FieldMatrix<Rational>, v: &[Nfe]) -> Vec<Nfe> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|r| {
            let mut acc = nfe_zero();
            for (c, x) in v.iter().enumerate() {
                let entry = m.get(r, c);
                if !num::Zero::is_zero(entry) && !x.is_zero() {
                    acc = acc.add(&x.scale(entry));
                }
            }
            acc
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Sections.

/// A section of the degree-`t` twist on the conic: numerator coordinates
/// over the canonical monomial basis, implicit denominator `H^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicSection {
    twist: u32,
    coeffs: Vec<Nfe>,
}

impl ConicSection {
    pub fn new(twist: u32, coeffs: Vec<Nfe>) -> Self {
        assert_eq!(coeffs.len(), 6 * twist as usize + 1);
        ConicSection { twist, coeffs }
    }

    pub fn zero(twist: u32) -> Self {
        Self::new(twist, vec![nfe_zero(); 6 * twist as usize + 1])
    }

    pub fn one() -> Self {
        Self::new(0, vec![Field::one()])
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn coeffs(&self) -> &[Nfe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.twist, rhs.twist, "twists must match");
        Self::new(
            self.twist,
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&Nfe::from_int(-1)))
    }

    pub fn scale(&self, c: &Nfe) -> Self {
        Self::new(self.twist, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub(crate) fn to_reduced(&self) -> WPoly {
        let bc = basis_change(self.twist);
        let coords = apply_rational_matrix(bc.forward(), &self.coeffs);
        let a_len = 3 * self.twist as usize + 1;
        WPoly {
            a: trim(coords[..a_len].to_vec()),
            b: trim(coords[a_len..].to_vec()),
        }
    }

    pub(crate) fn from_reduced(twist: u32, red: &WPoly) -> Self {
        let a_len = 3 * twist as usize + 1;
        let b_len = 3 * twist as usize;
        assert!(
            red.a.len() <= a_len && red.b.len() <= b_len,
            "reduced form exceeds the degree bound of twist {twist}"
        );
        let mut coords = vec![nfe_zero(); a_len + b_len];
        coords[..red.a.len()].clone_from_slice(&red.a);
        coords[a_len..a_len + red.b.len()].clone_from_slice(&red.b);
        let bc = basis_change(twist);
        Self::new(twist, apply_rational_matrix(bc.backward(), &coords))
    }

    fn numerator_at(&self, pt: &PointData) -> Cx {
        let mut acc = Cx::zero();
        for (j, &(p, q)) in canonical_monomials(self.twist).iter().enumerate() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let m = pt.v_pows[p as usize].mul(&pt.w_pows[q as usize]);
            acc = acc.add(&m.mul(&Cx::from_real(c.clone())));
        }
        acc
    }

    /// Exact value of the numerator at evaluation point `k` (0-based).
    pub fn evaluate_numerator(&self, k: usize) -> Cx {
        self.numerator_at(&NormalizationData::instance().points[k])
    }

    /// Exact value of the section at evaluation point `k` (0-based),
    /// including the `H^{-t}` denominator.
    pub fn evaluate(&self, k: usize) -> Cx {
        let data = NormalizationData::instance();
        self.evaluate_numerator(k)
            .mul(&data.points[k].h_inv_pows[self.twist as usize])
    }
}

/// Product of sections, reduced to the canonical basis of the sum twist.
pub fn section_mul(f: &ConicSection, g: &ConicSection) -> ConicSection {
    ConicSection::from_reduced(f.twist + g.twist, &f.to_reduced().mul(&g.to_reduced()))
}

/// Substitutes the parametrization into a homogeneous form of degree `d`,
/// producing the section of twist `d` with numerator `f(X0, X1, X2)`.
pub fn pullback(form: &TernaryForm<Nfe>) -> ConicSection {
    let d = form.degree();
    let data = NormalizationData::instance();
    // Power tables of the three coordinate polynomials up to degree d.
    let pows: Vec<Vec<WPoly>> = data
        .x_reduced
        .iter()
        .map(|x| {
            let mut v = Vec::with_capacity(d as usize + 1);
            v.push(WPoly::constant(Field::one()));
            for e in 1..=d {
                let last = v[(e - 1) as usize].clone();
                v.push(last.mul(x));
            }
            v
        })
        .collect();
    let mut acc = WPoly::zero();
    for (exp, c) in form.terms() {
        let term = pows[0][exp[0] as usize]
            .mul(&pows[1][exp[1] as usize])
            .mul(&pows[2][exp[2] as usize]);
        acc = acc.add(&term.scale(c));
    }
    ConicSection::from_reduced(d, &acc)
}

// ---------------------------------------------------------------------------
// Normalization data.

struct PointData {
    v_pows: Vec<Cx>,
    w_pows: Vec<Cx>,
    h_inv_pows: Vec<Cx>,
}

/// The fixed data of the normalization: coordinate polynomials, the
/// hyperplane section `H = 2*X0 + X1`, the ten evaluation points above the
/// ten real singular points, and exact per-point power tables.
pub struct NormalizationData {
    points: [PointData; 10],
    x_reduced: [WPoly; 3],
    h_section: ConicSection,
    singular_points: [[Rational; 3]; 10],
}

fn cx(re: Nfe, im: Nfe) -> Cx {
    Cx::new(re, im)
}

impl NormalizationData {
    pub fn instance() -> &'static NormalizationData {
        static INSTANCE: OnceLock<NormalizationData> = OnceLock::new();
        INSTANCE.get_or_init(NormalizationData::build)
    }

    fn build() -> Self {
        let zero = nfe_zero();
        let one: Nfe = Field::one();
        let half = Nfe::from_rational(crate::field::rat(1, 2));
        let s2 = Nfe::sqrt2();
        let s3 = Nfe::sqrt3();
        let s2h = s2.scale(&crate::field::rat(1, 2));
        let s3h = s3.scale(&crate::field::rat(1, 2));

        // The ten evaluation points (v, w), one above each singular point.
        let raw: [(Cx, Cx); 10] = [
            (
                cx(half.clone(), s3h.clone()),
                cx(half.clone(), s3h.neg()),
            ),
            (
                cx(half.clone(), s3h.neg()),
                cx(half.neg(), s3h.neg()),
            ),
            (
                cx(half.neg(), s3h.clone()),
                cx(half.clone(), s3h.clone()),
            ),
            (
                cx(half.neg(), s3h.clone()),
                cx(half.neg(), s3h.neg()),
            ),
            (cx(zero.clone(), s2h.neg()), cx(zero.clone(), s2h.clone())),
            (cx(zero.clone(), s2h.neg()), cx(zero.clone(), s2h.neg())),
            (cx(zero.clone(), s2.clone()), cx(one.clone(), zero.clone())),
            (cx(zero.clone(), s2.neg()), cx(one.neg(), zero.clone())),
            (cx(one.clone(), zero.clone()), cx(zero.clone(), s2.clone())),
            (cx(one.neg(), zero.clone()), cx(zero.clone(), s2.neg())),
        ];

        // Coordinate polynomials X0 = 2v^2 + 1, X1 = v^3 + 2v, X2 = (v^2 - 1) w.
        let x0 = WPoly {
            a: vec![one.clone(), zero.clone(), Nfe::from_int(2)],
            b: vec![],
        };
        let x1 = WPoly {
            a: vec![zero.clone(), Nfe::from_int(2), zero.clone(), one.clone()],
            b: vec![],
        };
        let x2 = WPoly {
            a: vec![],
            b: vec![one.neg(), zero.clone(), one.clone()],
        };
        // H = 2*X0 + X1 = v^3 + 4v^2 + 2v + 2.
        let h = x0.scale(&Nfe::from_int(2)).add(&x1);

        let max_pow = 3 * MAX_TWIST as usize;
        let points: Vec<PointData> = raw
            .iter()
            .map(|(v, w)| {
                // Membership in the conic is the defining invariant.
                let on_conic = v.mul(v).add(&w.mul(w)).add(&Cx::one());
                assert!(on_conic.is_zero(), "evaluation point escapes the conic");
                let mut v_pows = vec![Cx::one()];
                let mut w_pows = vec![Cx::one()];
                for e in 1..=max_pow {
                    v_pows.push(v_pows[e - 1].mul(v));
                    w_pows.push(w_pows[e - 1].mul(w));
                }
                let h_val = h.eval(&v_pows, &w_pows);
                let h_inv = h_val
                    .inv()
                    .expect("the hyperplane section avoids all evaluation points");
                let mut h_inv_pows = vec![Cx::one()];
                for e in 1..=MAX_TWIST as usize {
                    h_inv_pows.push(h_inv_pows[e - 1].mul(&h_inv));
                }
                PointData {
                    v_pows,
                    w_pows,
                    h_inv_pows,
                }
            })
            .collect();

        // The image of each evaluation point must be one of the ten real
        // singular points: coordinates in {0, 1, -1}, at most one zero,
        // normalized so the first nonzero coordinate is 1.
        let singular_points: Vec<[Rational; 3]> = points
            .iter()
            .map(|pt| {
                let vals = [
                    x0.eval(&pt.v_pows, &pt.w_pows),
                    x1.eval(&pt.v_pows, &pt.w_pows),
                    x2.eval(&pt.v_pows, &pt.w_pows),
                ];
                let pivot = vals
                    .iter()
                    .find(|c| !c.is_zero())
                    .expect("image point is well defined")
                    .inv()
                    .unwrap();
                let coords: Vec<Rational> = vals
                    .iter()
                    .map(|c| {
                        c.mul(&pivot)
                            .as_rational()
                            .expect("normalized image coordinates are rational")
                    })
                    .collect();
                let zeros = coords.iter().filter(|c| num::Zero::is_zero(*c)).count();
                assert!(zeros <= 1, "image must have at most one zero coordinate");
                for c in &coords {
                    let a = c.clone();
                    assert!(
                        num::Zero::is_zero(&a) || a == rat_int(1) || a == rat_int(-1),
                        "image coordinates must lie in {{0, 1, -1}}"
                    );
                }
                [coords[0].clone(), coords[1].clone(), coords[2].clone()]
            })
            .collect();
        for i in 0..10 {
            for j in (i + 1)..10 {
                assert_ne!(
                    singular_points[i], singular_points[j],
                    "evaluation points must cover ten distinct singular points"
                );
            }
        }

        let h_section = ConicSection::from_reduced(1, &h);

        let data = NormalizationData {
            points: points.try_into().ok().expect("ten points"),
            x_reduced: [x0, x1, x2],
            h_section,
            singular_points: singular_points.try_into().ok().expect("ten images"),
        };

        // Consistency: the canonical-basis form of H evaluates like H.
        for pt in &data.points {
            let via_section = data.h_section.numerator_at(pt);
            let direct = pt.h_inv_pows[1].inv().expect("H value is invertible");
            assert!(
                via_section.sub(&direct).is_zero(),
                "canonical re-expression of H must preserve values"
            );
        }
        data
    }

    /// The canonical twist-1 section whose numerator is `H` itself.
    pub fn h_section(&self) -> &ConicSection {
        &self.h_section
    }

    /// Exact value `H(q_k)` (0-based `k`).
    pub fn h_value(&self, k: usize) -> Cx {
        self.points[k].h_inv_pows[1].inv().unwrap()
    }

    /// `H(q_k)^{-t}`.
    pub fn h_inv_pow(&self, k: usize, t: u32) -> &Cx {
        &self.points[k].h_inv_pows[t as usize]
    }

    /// Exact value of the canonical monomial `v^p w^q` at point `k`.
    pub fn monomial_value(&self, k: usize, p: u32, q: u32) -> Cx {
        let pt = &self.points[k];
        pt.v_pows[p as usize].mul(&pt.w_pows[q as usize])
    }

    /// The normalized image of evaluation point `k` in the plane.
    pub fn singular_point(&self, k: usize) -> &[Rational; 3] {
        &self.singular_points[k]
    }
}
