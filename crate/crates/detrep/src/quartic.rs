//! From a 4x4 symmetric matrix of linear forms whose determinant is a
//! positive quartic, and four exactly-known complex intersection points of
//! its three coefficient quadrics (a half Cayley octad, closed under
//! conjugation), this module constructs a symmetric 2x2 matrix of quadratic
//! forms with the same determinant and verifies its positive definiteness
//! at a rational witness point.
//!
//! The second entry point reverses the data flow: given the quartic, one
//! contact conic, and an independent second conic through the contact
//! divisor, `noether_division` completes the pair to a 2x2 representation
//! by solving the fifteen coefficient equations of
//! `a00 * a11 - a10^2 = p * F`, and `dixon` rescales the completed matrix
//! to determinant exactly `F`.
//!
//! All arithmetic is exact: rational coefficients throughout, with the
//! quartic number field and its imaginary extension entering only through
//! the octad coordinates.

use crate::field::{rat, rat_int, rational_text, ComplexExtElement, Field, Rational};
use crate::linalg::FieldMatrix;
use crate::poly::{
    det_poly_matrix, monomials_of_degree, parse_element, parse_form, PolyError, TernaryForm,
    XVARS,
};
use num::{BigInt, Integer, Signed};
use serde::Deserialize;

type Cx = ComplexExtElement;

/// Errors of the quartic pipeline.
#[derive(Debug, thiserror::Error)]
pub enum QuarticError {
    /// Malformed input: parse failures, shape violations, degree mismatches.
    #[error("invalid input: {0}")]
    Input(String),
    /// The four points are not a conjugation-closed quadric intersection.
    #[error("invalid octad data: {0}")]
    Octad(String),
    /// The 4x4 coordinate matrix of the four points is singular.
    #[error("the four octad points are linearly dependent")]
    SingularOctad,
    /// The solved base change has an imaginary or irrational entry.
    #[error("base change is not a rational matrix: {0}")]
    IrrationalBaseChange(String),
    /// The congruence-transformed matrix misses the paired block pattern.
    #[error("transformed matrix violates the block structure: {0}")]
    StructureViolation(String),
    /// An exact determinant identity failed to hold.
    #[error("determinant verification failed: {0}")]
    DeterminantMismatch(String),
    /// The input determinant is negative at the sampled rational point.
    #[error("matrix determinant is negative at the sample point {0}")]
    NotPositiveAtSample(String),
    /// The completion system `a00 * a11 - a10^2 = p * F` is inconsistent.
    #[error("the conic pair admits no completion against the quartic")]
    NoSolution,
    /// The completion scalar vanishes: the contact conic is non-reduced.
    #[error("completion scalar is zero (non-reduced contact conic)")]
    NonReducedContact,
    /// The completion scalar is not the square of a rational, so no exact
    /// rational rescaling reaches determinant `F`.
    #[error("completion scalar {0} is not a rational square; cannot normalize the determinant")]
    NonSquareScale(String),
}

impl From<PolyError> for QuarticError {
    fn from(e: PolyError) -> Self {
        QuarticError::Input(e.to_string())
    }
}

#[derive(Deserialize)]
struct MatrixInput {
    matrix: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct OctadInput {
    points: Vec<Vec<String>>,
}

/// A 4x4 symmetric matrix of homogeneous linear forms with rational
/// coefficients and nonvanishing determinant; the determinant is the
/// represented quartic.
#[derive(Clone, Debug)]
pub struct LinearDetRep {
    entries: Vec<Vec<TernaryForm<Rational>>>,
    det: TernaryForm<Rational>,
}

impl LinearDetRep {
    pub fn new(entries: Vec<Vec<TernaryForm<Rational>>>) -> Result<Self, QuarticError> {
        if entries.len() != 4 || entries.iter().any(|r| r.len() != 4) {
            return Err(QuarticError::Input("matrix must be 4x4".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                if !f.is_zero() && f.degree() != 1 {
                    return Err(QuarticError::Input(format!(
                        "entry ({i}, {j}) has degree {}, expected a linear form",
                        f.degree()
                    )));
                }
            }
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if entries[i][j] != entries[j][i] {
                    return Err(QuarticError::Input(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let det = det_poly_matrix(&entries)?;
        if det.is_zero() {
            return Err(QuarticError::Input(
                "matrix determinant vanishes identically".into(),
            ));
        }
        Ok(LinearDetRep { entries, det })
    }

    /// Reads `{"matrix": [[<form text>; 4]; 4]}`.
    pub fn from_json(text: &str) -> Result<Self, QuarticError> {
        let input: MatrixInput = serde_json::from_str(text)
            .map_err(|e| QuarticError::Input(format!("json: {e}")))?;
        let mut entries = Vec::with_capacity(4);
        for row in &input.matrix {
            let mut out = Vec::with_capacity(4);
            for cell in row {
                out.push(parse_form::<Rational>(cell, &XVARS)?);
            }
            entries.push(out);
        }
        Self::new(entries)
    }

    pub fn entry(&self, i: usize, j: usize) -> &TernaryForm<Rational> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<TernaryForm<Rational>>> {
        &self.entries
    }

    /// The represented quartic `F = det(M)`, computed once at construction.
    pub fn determinant(&self) -> &TernaryForm<Rational> {
        &self.det
    }
}

fn conj_point(p: &[Cx; 4]) -> [Cx; 4] {
    std::array::from_fn(|k| p[k].conj())
}

fn scale_point(p: &[Cx; 4], c: &Cx) -> [Cx; 4] {
    std::array::from_fn(|k| p[k].mul(c))
}

/// `b = lambda * a` for some nonzero scalar `lambda`?
fn proportional(a: &[Cx; 4], b: &[Cx; 4]) -> bool {
    let Some(k) = (0..4).find(|&k| !a[k].is_zero()) else {
        return false;
    };
    let Some(inv) = a[k].inv() else { return false };
    let lambda = b[k].mul(&inv);
    if lambda.is_zero() {
        return false;
    }
    scale_point(a, &lambda) == *b
}

/// Four points of the quadric intersection, one representative per chosen
/// point, closed under conjugation in two pairs: the second point is the
/// conjugate of the first, the fourth of the third. Construction normalizes
/// the second and fourth representatives to make the pairing hold exactly
/// (inputs only need to match up to scale), and rejects quadruples whose
/// 4x4 coordinate matrix is singular.
#[derive(Clone, Debug)]
pub struct OctadQuadruple {
    points: [[Cx; 4]; 4],
}

impl OctadQuadruple {
    pub fn new(points: [[Cx; 4]; 4]) -> Result<Self, QuarticError> {
        for (i, p) in points.iter().enumerate() {
            if p.iter().all(|c| c.is_zero()) {
                return Err(QuarticError::Octad(format!("point {i} is zero")));
            }
        }
        for pair in [(0usize, 1usize), (2, 3)] {
            let expect = conj_point(&points[pair.0]);
            if !proportional(&expect, &points[pair.1]) {
                return Err(QuarticError::Octad(format!(
                    "point {} is not proportional to the conjugate of point {}",
                    pair.1, pair.0
                )));
            }
        }
        let mut points = points;
        points[1] = conj_point(&points[0]);
        points[3] = conj_point(&points[2]);
        let coords = FieldMatrix::from_cols(points.iter().map(|p| p.to_vec()).collect());
        if coords.invert().is_err() {
            return Err(QuarticError::SingularOctad);
        }
        Ok(OctadQuadruple { points })
    }

    /// Reads `{"points": [[<element text>; 4]; 4]}` with constants over
    /// `mu` and `i`.
    pub fn from_json(text: &str) -> Result<Self, QuarticError> {
        let input: OctadInput = serde_json::from_str(text)
            .map_err(|e| QuarticError::Input(format!("json: {e}")))?;
        if input.points.len() != 4 || input.points.iter().any(|p| p.len() != 4) {
            return Err(QuarticError::Input(
                "octad file must hold 4 points of 4 coordinates".into(),
            ));
        }
        let mut parsed = Vec::with_capacity(4);
        for p in &input.points {
            let coords: Result<Vec<Cx>, PolyError> =
                p.iter().map(|t| parse_element(t)).collect();
            let coords = coords?;
            let arr: [Cx; 4] = coords.try_into().expect("length checked");
            parsed.push(arr);
        }
        let arr: [[Cx; 4]; 4] = parsed.try_into().expect("length checked");
        Self::new(arr)
    }

    pub fn point(&self, i: usize) -> &[Cx; 4] {
        &self.points[i]
    }
}

fn promote(f: &TernaryForm<Rational>) -> TernaryForm<Cx> {
    f.map_coeffs(|r| Cx::from_rational(r.clone()))
}

#[cfg(test)]
fn demote(f: &TernaryForm<Cx>) -> Option<TernaryForm<Rational>> {
    let mut pairs = Vec::new();
    for (e, c) in f.terms() {
        pairs.push((*e, c.as_rational()?));
    }
    TernaryForm::new(pairs).ok()
}

/// The linear form `u^t M(x) v` for complex vectors `u`, `v`.
fn bilinear_form(rep: &LinearDetRep, u: &[Cx; 4], v: &[Cx; 4]) -> TernaryForm<Cx> {
    let mut acc = TernaryForm::zero(1);
    for a in 0..4 {
        for b in 0..4 {
            let c = u[a].mul(&v[b]);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&promote(rep.entry(a, b)).scale(&c));
        }
    }
    acc
}

/// True iff every point of the quadruple lies on all three coefficient
/// quadrics of `rep` — i.e. the linear form `u^t M(x) u` vanishes
/// identically at each point. The conjugation pairing and the invertibility
/// of the coordinate matrix hold for every constructed [`OctadQuadruple`],
/// so this is the only residual condition.
pub fn octad_verify(rep: &LinearDetRep, octad: &OctadQuadruple) -> bool {
    (0..4).all(|i| bilinear_form(rep, octad.point(i), octad.point(i)).is_zero())
}

/// The pairwise linear forms `b_ij = O_i M(x) O_j^t` (indices 0-based).
/// The diagonal vanishes on a verified quadruple, and the two in-pair
/// values `b(0,1)` and `b(2,3)` are real.
#[derive(Clone, Debug)]
pub struct BitangentEntries {
    forms: Vec<Vec<TernaryForm<Cx>>>,
}

impl BitangentEntries {
    pub fn get(&self, i: usize, j: usize) -> &TernaryForm<Cx> {
        &self.forms[i][j]
    }
}

pub fn bitangent_entries(rep: &LinearDetRep, octad: &OctadQuadruple) -> BitangentEntries {
    let forms = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| bilinear_form(rep, octad.point(i), octad.point(j)))
                .collect()
        })
        .collect();
    BitangentEntries { forms }
}

/// Solves for the real matrix `T` sending the four point columns to the
/// fixed target columns `(1, i, 0, 0)`, `(1, -i, 0, 0)`, `(0, 0, 1, i)`,
/// `(0, 0, 1, -i)` (as the columns of `T * C = D`). The conjugation pairing
/// of the quadruple forces `T` to be real; entries outside the rational
/// field are rejected because the downstream congruence works over the
/// rationals.
pub fn base_change(octad: &OctadQuadruple) -> Result<FieldMatrix<Rational>, QuarticError> {
    let c = FieldMatrix::from_cols((0..4).map(|i| octad.point(i).to_vec()).collect());
    let c_inv = c.invert().map_err(|_| QuarticError::SingularOctad)?;
    let i = Cx::i();
    let one = Cx::one();
    let zero = Cx::zero();
    let d = FieldMatrix::from_cols(vec![
        vec![one.clone(), i.clone(), zero.clone(), zero.clone()],
        vec![one.clone(), i.neg(), zero.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone(), i.clone()],
        vec![zero.clone(), zero.clone(), one.clone(), i.neg()],
    ]);
    let t_cx = d.matmul(&c_inv);
    let mut data = Vec::with_capacity(16);
    for r in 0..4 {
        for cidx in 0..4 {
            let e = t_cx.get(r, cidx);
            if !e.is_real() {
                return Err(QuarticError::IrrationalBaseChange(format!(
                    "entry ({r}, {cidx}) = {} has a nonzero imaginary part",
                    e.render()
                )));
            }
            let Some(q) = e.as_rational() else {
                return Err(QuarticError::IrrationalBaseChange(format!(
                    "entry ({r}, {cidx}) = {} lies outside the rational field",
                    e.render()
                )));
            };
            data.push(q);
        }
    }
    Ok(FieldMatrix::new(4, 4, data))
}

/// The congruence image `M' = T^{-t} M T^{-1}` together with its block
/// pattern: equal diagonal values and a zero off-diagonal inside each of
/// the two 2x2 diagonal blocks.
#[derive(Clone, Debug)]
pub struct TransformedRep {
    entries: Vec<Vec<TernaryForm<Rational>>>,
}

impl TransformedRep {
    pub fn entry(&self, i: usize, j: usize) -> &TernaryForm<Rational> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &Vec<Vec<TernaryForm<Rational>>> {
        &self.entries
    }

    /// Twice the shared diagonal value of the first block: the real
    /// bilinear value of the first conjugate pair.
    pub fn b12(&self) -> TernaryForm<Rational> {
        self.entries[0][0].scale(&rat_int(2))
    }

    /// Twice the shared diagonal value of the second block.
    pub fn b34(&self) -> TernaryForm<Rational> {
        self.entries[2][2].scale(&rat_int(2))
    }

    pub fn determinant(&self) -> Result<TernaryForm<Rational>, QuarticError> {
        Ok(det_poly_matrix(&self.entries)?)
    }
}

/// Applies the congruence `M' = T^{-t} M T^{-1}` and checks the paired
/// block structure that the aligned points enforce.
pub fn transformed_rep(
    rep: &LinearDetRep,
    t: &FieldMatrix<Rational>,
) -> Result<TransformedRep, QuarticError> {
    if t.rows() != 4 || t.cols() != 4 {
        return Err(QuarticError::Input("base change must be 4x4".into()));
    }
    let t_inv = t
        .invert()
        .map_err(|_| QuarticError::Input("base change matrix is singular".into()))?;
    let mut entries = vec![vec![TernaryForm::zero(1); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = TernaryForm::zero(1);
            for a in 0..4 {
                for b in 0..4 {
                    let c = t_inv.get(a, i).mul(t_inv.get(b, j));
                    if c.is_zero() {
                        continue;
                    }
                    acc = acc.add(&rep.entry(a, b).scale(&c));
                }
            }
            entries[i][j] = acc;
        }
    }
    for (i, j) in [(0usize, 1usize), (2, 3)] {
        if !entries[i][j].is_zero() {
            return Err(QuarticError::StructureViolation(format!(
                "entry ({i}, {j}) of the aligned matrix is nonzero"
            )));
        }
        if entries[i][i] != entries[j][j] {
            return Err(QuarticError::StructureViolation(format!(
                "diagonal entries ({i}, {i}) and ({j}, {j}) differ"
            )));
        }
    }
    Ok(TransformedRep { entries })
}

/// A symmetric 2x2 matrix of quadratic forms whose determinant equals the
/// target quartic exactly, with the outcome of the definiteness check at a
/// rational witness point.
///
/// `positive = true` means the matrix evaluated at the witness is strictly
/// positive definite while its determinant (the target) is positive there;
/// when the target has no real zeros this single evaluation pins the sign
/// behavior everywhere, because the determinant never vanishes on real
/// points. `positive = false` with a witness records a refuting point.
///
/// The octad route reduces the assembled matrix to its primitive integer
/// form; `normalization` records the removed positive content `c`, so the
/// source matrix determinant equals `c^2 * target`. The conic-completion
/// route records the completion scalar `p` instead.
#[derive(Clone, Debug)]
pub struct QuadraticRep {
    entries: Vec<Vec<TernaryForm<Rational>>>,
    target: TernaryForm<Rational>,
    positive: bool,
    witness: Option<[Rational; 3]>,
    completion: Option<Rational>,
    normalization: Option<Rational>,
}

impl QuadraticRep {
    fn new(
        entries: Vec<Vec<TernaryForm<Rational>>>,
        target: TernaryForm<Rational>,
        positive: bool,
        witness: Option<[Rational; 3]>,
        completion: Option<Rational>,
        normalization: Option<Rational>,
    ) -> Result<Self, QuarticError> {
        assert_eq!(entries.len(), 2);
        assert!(entries.iter().all(|r| r.len() == 2));
        if entries[0][1] != entries[1][0] {
            return Err(QuarticError::Input("representation must be symmetric".into()));
        }
        let det = entries[0][0]
            .mul(&entries[1][1])
            .sub(&entries[0][1].mul(&entries[1][0]));
        if det != target {
            return Err(QuarticError::DeterminantMismatch(
                "2x2 determinant differs from the target quartic".into(),
            ));
        }
        Ok(QuadraticRep {
            entries,
            target,
            positive,
            witness,
            completion,
            normalization,
        })
    }

    pub fn q(&self, i: usize, j: usize) -> &TernaryForm<Rational> {
        &self.entries[i][j]
    }

    pub fn target(&self) -> &TernaryForm<Rational> {
        &self.target
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn witness(&self) -> Option<&[Rational; 3]> {
        self.witness.as_ref()
    }

    /// The completion scalar `p` when the representation came from the
    /// conic-completion route.
    pub fn completion(&self) -> Option<&Rational> {
        self.completion.as_ref()
    }

    /// The positive content removed by the octad route; the source matrix
    /// determinant equals `normalization^2 * target`.
    pub fn normalization(&self) -> Option<&Rational> {
        self.normalization.as_ref()
    }

    /// Recomputes the determinant identity (always true by construction;
    /// exposed for reporting).
    pub fn det_matches(&self) -> bool {
        self.entries[0][0]
            .mul(&self.entries[1][1])
            .sub(&self.entries[0][1].mul(&self.entries[1][0]))
            == self.target
    }
}

fn int_point(p: [i64; 3]) -> [Rational; 3] {
    [rat_int(p[0]), rat_int(p[1]), rat_int(p[2])]
}

fn sample_points() -> Vec<[Rational; 3]> {
    [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 1],
        [1, 2, 3],
        [1, -1, 0],
        [1, 0, -1],
        [0, 1, -1],
        [2, 1, 1],
        [1, 2, 1],
        [1, 1, 2],
        [3, 1, 2],
    ]
    .into_iter()
    .map(int_point)
    .collect()
}

fn grid_points() -> Vec<[Rational; 3]> {
    let mut out = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                out.push(int_point([a, b, c]));
            }
        }
    }
    out
}

/// Rational points on the projective line `c0*x0 + c1*x1 + c2*x2 = 0`:
/// two independent solutions and small integer combinations of them.
fn line_candidates(line: &TernaryForm<Rational>) -> Vec<[Rational; 3]> {
    let c0 = line.coeff([1, 0, 0]);
    let c1 = line.coeff([0, 1, 0]);
    let c2 = line.coeff([0, 0, 1]);
    let seeds = [
        [Rational::from_integer(0.into()), c2.clone(), c1.clone().neg()],
        [c2.clone(), Rational::from_integer(0.into()), c0.clone().neg()],
        [c1.clone(), c0.clone().neg(), Rational::from_integer(0.into())],
    ];
    let nonzero: Vec<[Rational; 3]> = seeds
        .into_iter()
        .filter(|p| p.iter().any(|x| !x.is_zero()))
        .collect();
    let mut base: Vec<[Rational; 3]> = Vec::new();
    for p in nonzero {
        let independent = base.iter().all(|q| {
            let m01 = p[0].clone() * q[1].clone() - p[1].clone() * q[0].clone();
            let m02 = p[0].clone() * q[2].clone() - p[2].clone() * q[0].clone();
            let m12 = p[1].clone() * q[2].clone() - p[2].clone() * q[1].clone();
            !(m01.is_zero() && m02.is_zero() && m12.is_zero())
        });
        if independent {
            base.push(p);
        }
        if base.len() == 2 {
            break;
        }
    }
    if base.len() < 2 {
        return base;
    }
    let combos: [(i64, i64); 16] = [
        (1, 0),
        (0, 1),
        (1, 1),
        (1, -1),
        (1, 2),
        (2, 1),
        (1, -2),
        (2, -1),
        (1, 3),
        (3, 1),
        (2, 3),
        (3, 2),
        (1, -3),
        (3, -1),
        (2, -3),
        (3, -2),
    ];
    let mut out = Vec::new();
    for (alpha, beta) in combos {
        let p: [Rational; 3] = std::array::from_fn(|k| {
            base[0][k].clone() * rat_int(alpha) + base[1][k].clone() * rat_int(beta)
        });
        if p.iter().any(|x| !x.is_zero()) {
            out.push(p);
        }
    }
    out
}

/// First decisive point for a symmetric 2x2 matrix with leading entry
/// `q00` and determinant `det`: `Some((true, P))` where both are strictly
/// positive, `Some((false, P))` where the matrix is provably not positive
/// semidefinite at `P` (negative determinant, or positive determinant with
/// negative leading entry).
fn definite_witness(
    q00: &TernaryForm<Rational>,
    det: &TernaryForm<Rational>,
    candidates: &[[Rational; 3]],
) -> Option<(bool, [Rational; 3])> {
    for p in candidates {
        let d = det.eval(p);
        if d.is_negative() {
            return Some((false, p.clone()));
        }
        if !d.is_positive() {
            continue;
        }
        let e = q00.eval(p);
        if e.is_positive() {
            return Some((true, p.clone()));
        }
        if e.is_negative() {
            return Some((false, p.clone()));
        }
    }
    None
}

fn point_text(p: &[Rational; 3]) -> String {
    format!(
        "({}, {}, {})",
        rational_text(&p[0]),
        rational_text(&p[1]),
        rational_text(&p[2])
    )
}

/// The positive rational content of a family of forms: the largest `c`
/// such that dividing every coefficient by `c` leaves integers with no
/// common factor. For reduced fractions this is
/// `gcd(numerators) / lcm(denominators)`.
fn joint_content(forms: &[&TernaryForm<Rational>]) -> Rational {
    let mut num_gcd = BigInt::from(0);
    let mut den_lcm = BigInt::from(1);
    for f in forms {
        for (_, c) in f.terms() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
    }
    assert!(num_gcd != BigInt::from(0), "content of identically zero family");
    Rational::new(num_gcd, den_lcm)
}

/// Builds the 2x2 quadratic representation from a verified quadruple:
/// aligns the pairs by the real base change, reads the block data off the
/// congruence image, assembles the quadratic entries, and checks the
/// determinant identity against the transformed matrix exactly. The output
/// is normalized in two exact steps: a rescale by `|det T|` makes the
/// determinant equal `det(rep)`, and the removal of the joint coefficient
/// content `c` (recorded on the result) then reduces the entries to their
/// primitive integer form, leaving `det(rep) = c^2 * target` with
/// `target = det(Q)`. The positivity witness is searched on the two lines
/// where the paired block values vanish (where the leading entry is a sum
/// of two squares plus nothing), then among fixed sample points.
pub fn quadratic_rep(
    rep: &LinearDetRep,
    octad: &OctadQuadruple,
) -> Result<QuadraticRep, QuarticError> {
    if !octad_verify(rep, octad) {
        return Err(QuarticError::Octad(
            "a point fails the quadric equations of the representation".into(),
        ));
    }
    let f = rep.determinant().clone();
    let sample = sample_points()
        .into_iter()
        .find(|p| !f.eval(p).is_zero())
        .ok_or_else(|| QuarticError::Input("determinant vanishes at all sample points".into()))?;
    if f.eval(&sample).is_negative() {
        return Err(QuarticError::NotPositiveAtSample(point_text(&sample)));
    }

    let t = base_change(octad)?;
    let tr = transformed_rep(rep, &t)?;
    let b12 = tr.b12();
    let b34 = tr.b34();
    let l13 = tr.entry(0, 2);
    let l14 = tr.entry(0, 3);
    let l23 = tr.entry(1, 2);
    let l24 = tr.entry(1, 3);

    let quarter_bb = b12.mul(&b34).scale(&rat(1, 4));
    let q00 = l23.mul(l23).add(&l24.mul(l24)).sub(&quarter_bb);
    let q01 = l13.mul(l23).add(&l14.mul(l24)).neg();
    let q11 = l13.mul(l13).add(&l14.mul(l14)).sub(&quarter_bb);

    let det_raw = q00.mul(&q11).sub(&q01.mul(&q01));
    if det_raw != tr.determinant()? {
        return Err(QuarticError::DeterminantMismatch(
            "assembled 2x2 determinant differs from the transformed 4x4 determinant".into(),
        ));
    }

    // The congruence divides the determinant by det(T)^2; scaling every
    // entry by |det T| restores det = det(rep) while preserving
    // definiteness. Removing the joint content afterwards divides the
    // determinant by content^2 — both scalars are recorded exactly.
    let det_scale = t.det().abs();
    let content = joint_content(&[
        &q00.scale(&det_scale),
        &q01.scale(&det_scale),
        &q11.scale(&det_scale),
    ]);
    let scale = det_scale * content.inv().expect("content is nonzero");
    let q00 = q00.scale(&scale);
    let q01 = q01.scale(&scale);
    let q11 = q11.scale(&scale);
    let content_sq_inv = (content.clone() * content.clone())
        .inv()
        .expect("content is nonzero");
    let target = f.scale(&content_sq_inv);

    let mut candidates = line_candidates(&b12);
    candidates.extend(line_candidates(&b34));
    candidates.extend(sample_points());
    candidates.extend(grid_points());
    let (positive, witness) = match definite_witness(&q00, &target, &candidates) {
        Some((flag, p)) => (flag, Some(p)),
        None => (false, None),
    };

    QuadraticRep::new(
        vec![vec![q00, q01.clone()], vec![q01, q11]],
        target,
        positive,
        witness,
        None,
        Some(content),
    )
}

/// Completes a conic pair against a quartic: solves the fifteen degree-4
/// coefficient equations of `a00 * a11 - a10^2 = p * F` for the six
/// coefficients of `a11` and the scalar `p`. When the solution space is
/// positive-dimensional the particular solution with free unknowns set to
/// zero is returned; for an irreducible quartic the solution is unique.
pub fn noether_division(
    f: &TernaryForm<Rational>,
    a00: &TernaryForm<Rational>,
    a10: &TernaryForm<Rational>,
) -> Result<(TernaryForm<Rational>, Rational), QuarticError> {
    if f.is_zero() || f.degree() != 4 {
        return Err(QuarticError::Input("target must be a nonzero quartic".into()));
    }
    if a00.is_zero() || a00.degree() != 2 {
        return Err(QuarticError::Input(
            "leading conic must be a nonzero quadratic form".into(),
        ));
    }
    if !a10.is_zero() && a10.degree() != 2 {
        return Err(QuarticError::Input(
            "second conic must be a quadratic form".into(),
        ));
    }
    let mons2 = monomials_of_degree(2);
    let mons4 = monomials_of_degree(4);
    let rhs_form = a10.mul(a10);
    let mut rows = Vec::with_capacity(mons4.len());
    let mut rhs = Vec::with_capacity(mons4.len());
    for e in &mons4 {
        let mut row = Vec::with_capacity(mons2.len() + 1);
        for m in &mons2 {
            if m[0] <= e[0] && m[1] <= e[1] && m[2] <= e[2] {
                row.push(a00.coeff([e[0] - m[0], e[1] - m[1], e[2] - m[2]]));
            } else {
                row.push(Rational::from_integer(0.into()));
            }
        }
        row.push(f.coeff(*e).neg());
        rows.push(row);
        rhs.push(rhs_form.coeff(*e));
    }
    let system = FieldMatrix::from_rows(rows);
    let solution = system.solve(&rhs).ok_or(QuarticError::NoSolution)?;
    let mut pairs = Vec::new();
    for (m, c) in mons2.iter().zip(solution.iter()) {
        pairs.push((*m, c.clone()));
    }
    let a11 = TernaryForm::new(pairs)?;
    let p = solution[mons2.len()].clone();
    Ok((a11, p))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let ns = n.sqrt();
    let ds = d.sqrt();
    if &(&ns * &ns) == n && &(&ds * &ds) == d {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// From a quartic, a reduced contact conic `a00`, and an independent second
/// conic `a10` through the contact divisor, builds the completed 2x2
/// representation normalized to determinant exactly `F`: the completion
/// scalar `p` must be the square of a rational `s`, and the congruence by
/// `diag(1, 1/s)` turns `det = p * F` into `det = F`. Returns the matrix or
/// its negation, whichever the witness evaluation certifies, with `p`
/// recorded.
pub fn dixon(
    f: &TernaryForm<Rational>,
    a00: &TernaryForm<Rational>,
    a10: &TernaryForm<Rational>,
) -> Result<QuadraticRep, QuarticError> {
    if a10.is_zero() {
        return Err(QuarticError::Input("second conic must be nonzero".into()));
    }
    if a00.is_zero() || a00.degree() != 2 {
        return Err(QuarticError::Input(
            "leading conic must be a nonzero quadratic form".into(),
        ));
    }
    let lead = a00
        .sorted_terms()
        .first()
        .map(|(e, _)| *e)
        .expect("nonzero form has a leading term");
    let ratio = a10.coeff(lead)
        * a00
            .coeff(lead)
            .inv()
            .expect("leading coefficient is nonzero");
    if a10 == &a00.scale(&ratio) {
        return Err(QuarticError::Input(
            "second conic must be linearly independent of the leading conic".into(),
        ));
    }
    let (a11, p) = noether_division(f, a00, a10)?;
    if p.is_zero() {
        return Err(QuarticError::NonReducedContact);
    }
    let s = rational_sqrt(&p).ok_or_else(|| QuarticError::NonSquareScale(rational_text(&p)))?;
    let s_inv = s.inv().expect("square root of a nonzero scalar");
    let p_inv = p.inv().expect("nonzero completion scalar");
    let q00 = a00.clone();
    let q01 = a10.scale(&s_inv);
    let q11 = a11.scale(&p_inv);
    debug_assert!(q00.mul(&q11).sub(&q01.mul(&q01)) == *f);

    let mut candidates = sample_points();
    candidates.extend(grid_points());
    let mut positive = false;
    let mut negate = false;
    let mut witness = None;
    for pt in &candidates {
        let d = f.eval(pt);
        if d.is_negative() {
            positive = false;
            witness = Some(pt.clone());
            break;
        }
        if !d.is_positive() {
            continue;
        }
        let e = q00.eval(pt);
        if e.is_zero() {
            continue;
        }
        positive = true;
        negate = e.is_negative();
        witness = Some(pt.clone());
        break;
    }
    let (q00, q01, q11) = if negate {
        (q00.neg(), q01.neg(), q11.neg())
    } else {
        (q00, q01, q11)
    };
    QuadraticRep::new(
        vec![vec![q00, q01.clone()], vec![q01, q11]],
        f.clone(),
        positive,
        witness,
        Some(p),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realroots::is_pd;
    use proptest::prelude::*;

    const MATRIX_JSON: &str = include_str!("../data/quartic_matrix.json");
    const OCTAD_JSON: &str = include_str!("../data/quartic_octad.json");

    const Q00_TEXT: &str =
        "979*x0^2 - 726*x0*x1 + 195*x1^2 + 126*x0*x2 - 174*x1*x2 + 75*x2^2";
    const Q01_TEXT: &str =
        "-771*x0^2 + 6*x0*x1 + 189*x1^2 - 774*x0*x2 + 198*x1*x2 - 99*x2^2";
    const Q11_TEXT: &str =
        "979*x0^2 + 810*x0*x1 + 195*x1^2 + 942*x0*x2 + 546*x1*x2 + 507*x2^2";

    fn example_rep() -> LinearDetRep {
        LinearDetRep::from_json(MATRIX_JSON).unwrap()
    }

    fn example_octad() -> OctadQuadruple {
        OctadQuadruple::from_json(OCTAD_JSON).unwrap()
    }

    fn form(text: &str) -> TernaryForm<Rational> {
        parse_form(text, &XVARS).unwrap()
    }

    fn cx(text: &str) -> Cx {
        parse_element(text).unwrap()
    }

    fn point(coords: [&str; 4]) -> [Cx; 4] {
        std::array::from_fn(|k| cx(coords[k]))
    }

    fn cx_form(f: &TernaryForm<Rational>) -> TernaryForm<Cx> {
        promote(f)
    }

    /// The primitive quartic represented by the example: the determinant
    /// of the example matrix is 36 times this form (the printed reference
    /// entries carry a removed content of 6).
    fn primitive_target() -> TernaryForm<Rational> {
        let q00 = form(Q00_TEXT);
        let q01 = form(Q01_TEXT);
        let q11 = form(Q11_TEXT);
        q00.mul(&q11).sub(&q01.mul(&q01))
    }

    #[test]
    fn example_matrix_parses_and_determines_a_quartic() {
        let rep = example_rep();
        let f = rep.determinant().clone();
        assert_eq!(f.degree(), 4);
        assert_eq!(f.eval(&int_point([1, 0, 0])), rat_int(13104000));
        assert_eq!(f, primitive_target().scale(&rat_int(36)));
        // Determinant and evaluation commute: an independent scalar oracle.
        for p in [[1i64, 0, 0], [1, 2, 3], [-2, 1, 5]] {
            let pt = int_point(p);
            let scalar = FieldMatrix::from_rows(
                (0..4)
                    .map(|i| (0..4).map(|j| rep.entry(i, j).eval(&pt)).collect())
                    .collect(),
            );
            assert_eq!(scalar.det(), f.eval(&pt));
        }
        assert!(matches!(
            LinearDetRep::from_json(r#"{"matrix": [["x0"]]}"#),
            Err(QuarticError::Input(_))
        ));
        let asym = r#"{"matrix": [
            ["x0", "x1", "0", "0"],
            ["x2", "x0", "0", "0"],
            ["0", "0", "x0", "0"],
            ["0", "0", "0", "x0"]]}"#;
        assert!(matches!(
            LinearDetRep::from_json(asym),
            Err(QuarticError::Input(_))
        ));
        let quadratic = r#"{"matrix": [
            ["x0^2", "0", "0", "0"],
            ["0", "x0^2", "0", "0"],
            ["0", "0", "x0^2", "0"],
            ["0", "0", "0", "x0^2"]]}"#;
        assert!(matches!(
            LinearDetRep::from_json(quadratic),
            Err(QuarticError::Input(_))
        ));
    }

    #[test]
    fn example_octad_passes_verification_and_perturbations_fail() {
        let rep = example_rep();
        let octad = example_octad();
        assert!(octad_verify(&rep, &octad));

        // A quadruple off the quadrics: valid pairing, wrong locus.
        let perturbed = OctadQuadruple::new([
            point(["i", "1 + i", "1", "0"]),
            point(["-i", "1 - i", "1", "0"]),
            point(["0", "0", "i", "1 + i"]),
            point(["0", "0", "-i", "1 - i"]),
        ])
        .unwrap();
        assert!(!octad_verify(&rep, &perturbed));

        // Scaling a representative does not change the projective point.
        let c = cx("1 + i");
        let scaled = OctadQuadruple::new([
            scale_point(octad.point(0), &c),
            octad.point(1).clone(),
            octad.point(2).clone(),
            octad.point(3).clone(),
        ])
        .unwrap();
        assert!(octad_verify(&rep, &scaled));
    }

    #[test]
    fn octad_construction_rejects_broken_pairings() {
        // Second point not conjugate-proportional to the first.
        let r = OctadQuadruple::new([
            point(["i", "1 + i", "0", "0"]),
            point(["i", "1 + i", "0", "0"]),
            point(["0", "0", "i", "1 + i"]),
            point(["0", "0", "-i", "1 - i"]),
        ]);
        assert!(matches!(r, Err(QuarticError::Octad(_))));

        // Linearly dependent points: third pair repeats the first.
        let r = OctadQuadruple::new([
            point(["i", "1 + i", "0", "0"]),
            point(["-i", "1 - i", "0", "0"]),
            point(["i", "1 + i", "0", "0"]),
            point(["-i", "1 - i", "0", "0"]),
        ]);
        assert!(matches!(r, Err(QuarticError::SingularOctad)));

        // A zero point.
        let r = OctadQuadruple::new([
            point(["0", "0", "0", "0"]),
            point(["-i", "1 - i", "0", "0"]),
            point(["0", "0", "i", "1 + i"]),
            point(["0", "0", "-i", "1 - i"]),
        ]);
        assert!(matches!(r, Err(QuarticError::Octad(_))));
    }

    #[test]
    fn base_change_recovers_the_reference_transformation() {
        let octad = example_octad();
        let t = base_change(&octad).unwrap();
        let expected: Vec<i64> = vec![-1, 1, 0, 0, 1, 0, 0, 0, 0, 0, -1, 1, 0, 0, 1, 0];
        let expected =
            FieldMatrix::new(4, 4, expected.into_iter().map(rat_int).collect::<Vec<_>>());
        assert_eq!(format!("{t:?}"), format!("{expected:?}"));
        assert_eq!(t.det(), rat_int(1));

        // A quadruple already in target position maps by the identity.
        let aligned = OctadQuadruple::new([
            point(["1", "i", "0", "0"]),
            point(["1", "-i", "0", "0"]),
            point(["0", "0", "1", "i"]),
            point(["0", "0", "1", "-i"]),
        ])
        .unwrap();
        let t_id = base_change(&aligned).unwrap();
        assert_eq!(format!("{t_id:?}"), format!("{:?}", FieldMatrix::<Rational>::identity(4)));

        // Swapping a conjugate pair re-solves to another real matrix that
        // still sends each stored point column to its target column.
        let swapped = OctadQuadruple::new([
            octad.point(1).clone(),
            octad.point(0).clone(),
            octad.point(2).clone(),
            octad.point(3).clone(),
        ])
        .unwrap();
        let t_swapped = base_change(&swapped).unwrap();
        assert_defining_identity(&t_swapped, &swapped);

        // Scaling a representative keeps the solution real and rational.
        let c = cx("1 + i");
        let scaled = OctadQuadruple::new([
            scale_point(octad.point(0), &c),
            octad.point(1).clone(),
            octad.point(2).clone(),
            octad.point(3).clone(),
        ])
        .unwrap();
        let t_scaled = base_change(&scaled).unwrap();
        assert_defining_identity(&t_scaled, &scaled);
    }

    /// Checks `T * C = D` over the complex extension.
    fn assert_defining_identity(t: &FieldMatrix<Rational>, octad: &OctadQuadruple) {
        let t_cx = FieldMatrix::new(
            4,
            4,
            (0..4)
                .flat_map(|r| (0..4).map(move |c| (r, c)))
                .map(|(r, c)| Cx::from_rational(t.get(r, c).clone()))
                .collect(),
        );
        let c = FieldMatrix::from_cols((0..4).map(|i| octad.point(i).to_vec()).collect());
        let product = t_cx.matmul(&c);
        let i = Cx::i();
        let one = Cx::one();
        let zero = Cx::zero();
        let d = FieldMatrix::from_cols(vec![
            vec![one.clone(), i.clone(), zero.clone(), zero.clone()],
            vec![one.clone(), i.neg(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone(), i.clone()],
            vec![zero.clone(), zero.clone(), one.clone(), i.neg()],
        ]);
        assert_eq!(format!("{product:?}"), format!("{d:?}"));
    }

    #[test]
    fn transformed_rep_exhibits_the_paired_block_structure() {
        let rep = example_rep();
        let octad = example_octad();
        let t = base_change(&octad).unwrap();
        let tr = transformed_rep(&rep, &t).unwrap();
        assert!(tr.entry(0, 1).is_zero());
        assert!(tr.entry(2, 3).is_zero());
        assert_eq!(tr.entry(0, 0), tr.entry(1, 1));
        assert_eq!(tr.entry(2, 2), tr.entry(3, 3));
        // det(T) = 1, so the congruence preserves the determinant exactly.
        assert_eq!(&tr.determinant().unwrap(), rep.determinant());

        // A matrix already in block form is fixed by the identity.
        let block = LinearDetRep::new(tr.entries().clone()).unwrap();
        let tr_id = transformed_rep(&block, &FieldMatrix::identity(4)).unwrap();
        assert_eq!(tr_id.entries(), tr.entries());

        // A generic congruence destroys the block pattern.
        let mut shear = FieldMatrix::<Rational>::identity(4);
        shear.set(0, 1, rat_int(1));
        assert!(matches!(
            transformed_rep(&rep, &shear),
            Err(QuarticError::StructureViolation(_))
        ));
    }

    #[test]
    fn bitangent_entries_satisfy_the_reality_and_combination_identities() {
        let rep = example_rep();
        let octad = example_octad();
        let b = bitangent_entries(&rep, &octad);
        for i in 0..4 {
            assert!(b.get(i, i).is_zero(), "diagonal entry {i} must vanish");
        }
        for (i, j) in [(0usize, 1usize), (2, 3)] {
            let real = demote(b.get(i, j)).expect("conjugate-pair value is real");
            assert_eq!(&cx_form(&real), b.get(i, j));
        }

        let t = base_change(&octad).unwrap();
        let tr = transformed_rep(&rep, &t).unwrap();
        assert_eq!(demote(b.get(0, 1)).unwrap(), tr.b12());
        assert_eq!(demote(b.get(2, 3)).unwrap(), tr.b34());

        // The four cross-block entries are fixed quarter-combinations of
        // the pairwise values (the off-pair values are complex; the
        // combinations below are exactly real).
        let b13 = b.get(0, 2);
        let b14 = b.get(0, 3);
        let b23 = b.get(1, 2);
        let b24 = b.get(1, 3);
        let quarter = Cx::from_rational(rat(1, 4));
        let quarter_i = Cx::i().mul(&quarter);
        let l13 = b13.add(b24).add(&b14.add(b23)).scale(&quarter);
        assert_eq!(cx_form(tr.entry(0, 2)), l13);
        let l24 = b13.add(b24).sub(&b14.add(b23)).scale(&quarter).neg();
        assert_eq!(cx_form(tr.entry(1, 3)), l24);
        let l23 = b13.sub(b24).add(&b14.sub(b23)).scale(&quarter_i).neg();
        assert_eq!(cx_form(tr.entry(1, 2)), l23);
        let l14 = b13.sub(b24).sub(&b14.sub(b23)).scale(&quarter_i).neg();
        assert_eq!(cx_form(tr.entry(0, 3)), l14);
    }

    #[test]
    fn quadratic_rep_matches_the_reference_entries() {
        let rep = example_rep();
        let octad = example_octad();
        let qr = quadratic_rep(&rep, &octad).unwrap();
        assert_eq!(qr.q(0, 0), &form(Q00_TEXT));
        assert_eq!(qr.q(0, 1), &form(Q01_TEXT));
        assert_eq!(qr.q(1, 0), &form(Q01_TEXT));
        assert_eq!(qr.q(1, 1), &form(Q11_TEXT));
        assert_eq!(qr.target(), &primitive_target());
        // The recorded content ties the primitive output back to the
        // matrix determinant exactly: det(M) = c^2 * det(Q).
        let c = qr.normalization().expect("octad route records the content");
        assert_eq!(c, &rat_int(6));
        assert_eq!(
            &qr.target().scale(&(c.clone() * c.clone())),
            rep.determinant()
        );
        assert!(qr.det_matches());
        assert!(qr.is_positive());
        let w = qr.witness().expect("positive verdict carries a witness");
        assert!(qr.q(0, 0).eval(w).is_positive());
        assert!(qr.target().eval(w).is_positive());

        // Definiteness at the first coordinate point, checked through the
        // number-field evaluator as an independent oracle.
        let e = int_point([1, 0, 0]);
        let q_at = FieldMatrix::new(
            2,
            2,
            vec![
                crate::field::NumberFieldElement::from_rational(qr.q(0, 0).eval(&e)),
                crate::field::NumberFieldElement::from_rational(qr.q(0, 1).eval(&e)),
                crate::field::NumberFieldElement::from_rational(qr.q(1, 0).eval(&e)),
                crate::field::NumberFieldElement::from_rational(qr.q(1, 1).eval(&e)),
            ],
        );
        assert!(is_pd(&q_at).unwrap());
        assert_eq!(qr.q(0, 0).eval(&e), rat_int(979));
        assert_eq!(qr.q(0, 1).eval(&e), rat_int(-771));
        assert_eq!(
            qr.q(0, 0).eval(&e) * qr.q(1, 1).eval(&e) - qr.q(0, 1).eval(&e).pow(2),
            rat_int(364000)
        );
    }

    #[test]
    fn quadratic_rep_rejects_inconsistent_inputs() {
        let rep = example_rep();
        let perturbed = OctadQuadruple::new([
            point(["i", "1 + i", "1", "0"]),
            point(["-i", "1 - i", "1", "0"]),
            point(["0", "0", "i", "1 + i"]),
            point(["0", "0", "-i", "1 - i"]),
        ])
        .unwrap();
        assert!(matches!(
            quadratic_rep(&rep, &perturbed),
            Err(QuarticError::Octad(_))
        ));

        // A representation with negative determinant at the first sample
        // point, together with a quadruple that does lie on its quadrics.
        let diag = LinearDetRep::new(vec![
            vec![form("x0"), form("0"), form("0"), form("0")],
            vec![form("0"), form("x0"), form("0"), form("0")],
            vec![form("0"), form("0"), form("x0"), form("0")],
            vec![form("0"), form("0"), form("0"), form("-x0")],
        ])
        .unwrap();
        let null_points = OctadQuadruple::new([
            point(["1", "i", "0", "0"]),
            point(["1", "-i", "0", "0"]),
            point(["2", "3*i", "2", "i"]),
            point(["2", "-3*i", "2", "-i"]),
        ])
        .unwrap();
        assert!(octad_verify(&diag, &null_points));
        assert!(matches!(
            quadratic_rep(&diag, &null_points),
            Err(QuarticError::NotPositiveAtSample(_))
        ));
    }

    #[test]
    fn completion_solve_recovers_the_missing_entry() {
        let f = &primitive_target();
        let (a11, p) = noether_division(f, &form(Q00_TEXT), &form(Q01_TEXT)).unwrap();
        assert_eq!(a11, form(Q11_TEXT));
        assert_eq!(p, rat_int(1));

        // Degenerate input: the doubled line inside its own square. The
        // particular solution sets the free scalar to zero.
        let (a11, p) = noether_division(&form("x0^4"), &form("x0^2"), &form("x0^2")).unwrap();
        assert_eq!(a11, form("x0^2"));
        assert_eq!(p, rat_int(0));

        // A conic that is not a contact conic leaves the system
        // inconsistent.
        let r = noether_division(f, &form("x0^2 + x1^2 + x2^2"), &form(Q01_TEXT));
        assert!(matches!(r, Err(QuarticError::NoSolution)));

        assert!(matches!(
            noether_division(f, &form("0"), &form(Q01_TEXT)),
            Err(QuarticError::Input(_))
        ));
        assert!(matches!(
            noether_division(&form("x0^2"), &form(Q00_TEXT), &form(Q01_TEXT)),
            Err(QuarticError::Input(_))
        ));
    }

    #[test]
    fn dixon_reproduces_and_transforms_the_reference_representation() {
        let f = &primitive_target();
        let q00 = form(Q00_TEXT);
        let q01 = form(Q01_TEXT);
        let q11 = form(Q11_TEXT);

        let qr = dixon(f, &q00, &q01).unwrap();
        assert_eq!(qr.q(0, 0), &q00);
        assert_eq!(qr.q(0, 1), &q01);
        assert_eq!(qr.q(1, 1), &q11);
        assert!(qr.is_positive());
        assert_eq!(qr.completion(), Some(&rat_int(1)));

        // Replacing the second conic by a unit-triangular combination
        // produces the congruent representation with the same verdict.
        let shifted = dixon(f, &q00, &q00.add(&q01)).unwrap();
        assert_eq!(shifted.q(0, 0), &q00);
        assert_eq!(shifted.q(0, 1), &q00.add(&q01));
        assert_eq!(
            shifted.q(1, 1),
            &q00.add(&q01.scale(&rat_int(2))).add(&q11)
        );
        assert!(shifted.is_positive());
        assert_eq!(shifted.completion(), Some(&rat_int(1)));
        assert!(shifted.det_matches());

        // Doubling the second conic scales the completion by 4; the
        // normalization collapses the representation back to the original.
        let doubled = dixon(f, &q00, &q01.scale(&rat_int(2))).unwrap();
        assert_eq!(doubled.q(0, 0), &q00);
        assert_eq!(doubled.q(0, 1), &q01);
        assert_eq!(doubled.q(1, 1), &q11);
        assert!(doubled.is_positive());
        assert_eq!(doubled.completion(), Some(&rat_int(4)));

        // A dependent second conic is rejected before solving.
        assert!(matches!(
            dixon(f, &q00, &q00.scale(&rat_int(3))),
            Err(QuarticError::Input(_))
        ));

        // A vanishing completion scalar reports the non-reduced conic.
        assert!(matches!(
            dixon(&form("x0^4"), &form("x0^2"), &form("x0*x1")),
            Err(QuarticError::NonReducedContact)
        ));

        // Doubling the quartic halves the completion scalar, which is no
        // longer a rational square.
        assert!(matches!(
            dixon(&f.scale(&rat_int(2)), &q00, &q01),
            Err(QuarticError::NonSquareScale(_))
        ));

        // The inconsistent-system value propagates.
        assert!(matches!(
            dixon(f, &form("x0^2 + x1^2 + x2^2"), &q01),
            Err(QuarticError::NoSolution)
        ));
    }

    #[test]
    fn representation_and_completion_agree() {
        let rep = example_rep();
        let octad = example_octad();
        let qr = quadratic_rep(&rep, &octad).unwrap();
        let completed = dixon(qr.target(), qr.q(0, 0), qr.q(0, 1)).unwrap();
        assert_eq!(completed.q(0, 0), qr.q(0, 0));
        assert_eq!(completed.q(0, 1), qr.q(0, 1));
        assert_eq!(completed.q(1, 1), qr.q(1, 1));
        assert_eq!(completed.completion(), Some(&rat_int(1)));
        assert_eq!(completed.is_positive(), qr.is_positive());
    }

    fn arb_conic() -> impl Strategy<Value = TernaryForm<Rational>> {
        proptest::collection::vec(-6i64..=6, 6).prop_map(|cs| {
            let mons = monomials_of_degree(2);
            TernaryForm::new(
                mons.into_iter()
                    .zip(cs.into_iter().map(rat_int))
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Any pair completed against the quartic it generates satisfies
        /// the defining identity exactly.
        #[test]
        fn completion_solutions_satisfy_the_identity(
            a00 in arb_conic(),
            a10 in arb_conic(),
            a11 in arb_conic(),
        ) {
            prop_assume!(!a00.is_zero());
            let f = a00.mul(&a11).sub(&a10.mul(&a10));
            prop_assume!(!f.is_zero());
            let (r11, p) = noether_division(&f, &a00, &a10).unwrap();
            let lhs = a00.mul(&r11).sub(&a10.mul(&a10));
            prop_assert_eq!(lhs, f.scale(&p));
        }

        /// The verdict and determinant normalization are invariant under
        /// replacing the second conic by `lambda*a00 + mu*a10`.
        #[test]
        fn completion_verdict_ignores_the_choice_of_second_conic(
            lambda in -3i64..=3,
            mu in 1i64..=4,
        ) {
            let f = &primitive_target();
            let q00 = form(Q00_TEXT);
            let a10 = form(Q01_TEXT).scale(&rat_int(mu)).add(&q00.scale(&rat_int(lambda)));
            let qr = dixon(f, &q00, &a10).unwrap();
            prop_assert!(qr.is_positive());
            prop_assert!(qr.det_matches());
            prop_assert_eq!(qr.completion(), Some(&rat_int(mu * mu)));
        }
    }
}
