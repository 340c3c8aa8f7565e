//! The sextic pipeline end to end: exact section bases of the twisted
//! torsion sheaves over the normalized curve, classification of all 1024
//! sign tuples by representing type, synthesis of symmetric determinantal
//! representations with `det = lambda * R`, and the aggregate
//! non-positivity certificate over every tuple of the all-quadratic type.
//!
//! All linear algebra runs over the rationals: the evaluation conditions
//! at the ten marked points come in conjugate-stable pairs, so every
//! kernel in sight admits a rational basis, which the echelon form
//! produces canonically.

use crate::field::{rat_int, rational_text, Field, NumberFieldElement, Rational};
use crate::linalg::{complement, FieldMatrix, SpanTracker};
use crate::poly::{
    canonical_monomials, det_poly_matrix, monomials_of_degree, parse_form, print_form, pullback,
    section_mul, ConicSection, NormalizationData, TernaryForm, XVARS,
};
use crate::realroots::{is_pd, leading_minor_signs};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

type Nfe = NumberFieldElement;

/// Largest twist with precomputed evaluation tables; covers the dimension
/// table (t <= 3) and the degree-4 generator slot (t = 4).
pub const MAX_SECTION_TWIST: u32 = 4;

/// The defining sextic, with its ten isolated real zeros.
pub const ROBINSON_TEXT: &str = "x0^6 - x0^4*x1^2 - x0^2*x1^4 + x1^6 - x0^4*x2^2 \
     + 3*x0^2*x1^2*x2^2 - x1^4*x2^2 - x0^2*x2^4 - x1^2*x2^4 + x2^6";

/// The defining sextic as an exact rational form.
pub fn robinson_polynomial() -> TernaryForm<Rational> {
    static R: OnceLock<TernaryForm<Rational>> = OnceLock::new();
    R.get_or_init(|| parse_form(ROBINSON_TEXT, &XVARS).expect("the sextic text parses"))
        .clone()
}

#[derive(Debug, thiserror::Error)]
pub enum RobinsonError {
    #[error("tuple text must be 10 characters over {{1, i}}, got {0:?}")]
    TupleSyntax(String),
    #[error("synthesis failed for tuple {tuple}: {reason}")]
    SynthesisFailure { tuple: String, reason: String },
    #[error("certification requires representing type M0(0), got {0}")]
    WrongType(String),
}

// ---------------------------------------------------------------------------
// Tuples.

/// The sign prescribed at one marked point: section values real or
/// purely imaginary there.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TorsionFlag {
    Real,
    Imag,
}

/// A sign tuple `a` in `{1, i}^10`, one flag per marked point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionTuple {
    /// Bit k set means the k-th flag is `i`.
    bits: u16,
}

impl TorsionTuple {
    pub fn from_flags(flags: [TorsionFlag; 10]) -> Self {
        let mut bits = 0u16;
        for (k, f) in flags.iter().enumerate() {
            if *f == TorsionFlag::Imag {
                bits |= 1 << k;
            }
        }
        TorsionTuple { bits }
    }

    /// The tuple whose `i`-positions are the set bits of `idx` (0..1024).
    pub fn from_index(idx: u16) -> Self {
        assert!(idx < 1024);
        TorsionTuple { bits: idx }
    }

    pub fn index(&self) -> u16 {
        self.bits
    }

    pub fn all_real() -> Self {
        TorsionTuple { bits: 0 }
    }

    pub fn is_all_real(&self) -> bool {
        self.bits == 0
    }

    pub fn flag(&self, k: usize) -> TorsionFlag {
        if self.is_imag(k) {
            TorsionFlag::Imag
        } else {
            TorsionFlag::Real
        }
    }

    pub fn is_imag(&self, k: usize) -> bool {
        assert!(k < 10);
        self.bits & (1 << k) != 0
    }

    /// Componentwise product in `{1, i}` modulo real scalars: `i * i = -1`
    /// normalizes back to `1`, so flags combine by exclusive or.
    pub fn product(&self, rhs: &Self) -> Self {
        TorsionTuple {
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl fmt::Display for TorsionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..10 {
            f.write_str(if self.is_imag(k) { "i" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for TorsionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorsionTuple({self})")
    }
}

impl FromStr for TorsionTuple {
    type Err = RobinsonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 10 {
            return Err(RobinsonError::TupleSyntax(s.to_string()));
        }
        let mut bits = 0u16;
        for (k, c) in chars.iter().enumerate() {
            match c {
                '1' => {}
                'i' => bits |= 1 << k,
                _ => return Err(RobinsonError::TupleSyntax(s.to_string())),
            }
        }
        Ok(TorsionTuple { bits })
    }
}

// ---------------------------------------------------------------------------
// Representing types.

/// The degree pattern of a synthesized representation, named by the
/// twist-1 section count (3, 2, 1, 0) with the twist-3 defect `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ReprType {
    M3,
    M2,
    M1(u8),
    M0(u8),
}

impl ReprType {
    /// The generator twists of the type's ansatz, one per matrix row.
    pub fn twists(&self) -> Vec<u32> {
        match self {
            ReprType::M3 => vec![0],
            ReprType::M2 => vec![1, 1, 4],
            ReprType::M1(k) => {
                let mut v = vec![1, 2];
                v.extend(std::iter::repeat(3).take(*k as usize));
                v
            }
            ReprType::M0(k) => {
                let mut v = vec![2, 2, 2];
                v.extend(std::iter::repeat(3).take(*k as usize));
                v
            }
        }
    }

    pub fn size(&self) -> usize {
        self.twists().len()
    }

    /// Degree of the ansatz entry in row j, column k; `None` encodes the
    /// forced zero polynomial (degree `-infinity` in the pattern tables).
    pub fn entry_degree(&self, j: usize, k: usize) -> Option<u32> {
        let t = self.twists();
        let d = 6i64 - t[j] as i64 - t[k] as i64;
        if d > 0 {
            Some(d as u32)
        } else {
            None
        }
    }

    pub fn all() -> [ReprType; 7] {
        [
            ReprType::M3,
            ReprType::M2,
            ReprType::M1(0),
            ReprType::M1(1),
            ReprType::M0(0),
            ReprType::M0(1),
            ReprType::M0(2),
        ]
    }
}

impl fmt::Display for ReprType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReprType::M3 => write!(f, "M3"),
            ReprType::M2 => write!(f, "M2"),
            ReprType::M1(k) => write!(f, "M1^{k}"),
            ReprType::M0(k) => write!(f, "M0^{k}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Section bases.

/// A basis of the twist-`t` sections adapted to a sign tuple.
#[derive(Clone, Debug)]
pub struct SectionBasis {
    tuple: TorsionTuple,
    twist: u32,
    sections: Vec<ConicSection>,
}

impl SectionBasis {
    pub fn tuple(&self) -> TorsionTuple {
        self.tuple
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn sections(&self) -> &[ConicSection] {
        &self.sections
    }

    pub fn dim(&self) -> usize {
        self.sections.len()
    }

    /// Coordinate matrix with one column per basis section.
    pub fn coordinate_matrix(&self) -> FieldMatrix<Rational> {
        let rows = 6 * self.twist as usize + 1;
        if self.sections.is_empty() {
            return FieldMatrix::zero(rows, 0);
        }
        FieldMatrix::from_cols(self.sections.iter().map(rational_coords).collect())
    }

    /// Whether the span contains the given section (same twist required).
    pub fn contains(&self, s: &ConicSection) -> bool {
        assert_eq!(s.twist(), self.twist);
        let mut tracker = SpanTracker::new(6 * self.twist as usize + 1);
        for f in &self.sections {
            tracker.absorb(&rational_coords(f));
        }
        tracker.contains(&rational_coords(s))
    }
}

/// Exact rational coordinates of a section produced by this module.
fn rational_coords(s: &ConicSection) -> Vec<Rational> {
    s.coeffs()
        .iter()
        .map(|c| {
            c.as_rational()
                .expect("sections of the sign conditions have rational coordinates")
        })
        .collect()
}

/// The tuple-independent evaluation table of twist `t`: for each marked
/// point, eight rational rows (the four field coordinates of the real part
/// of `m_j(q_k) / H(q_k)^t`, then of the imaginary part), one column per
/// canonical monomial.
fn eval_block(t: u32) -> &'static FieldMatrix<Rational> {
    static CACHE: OnceLock<[OnceLock<FieldMatrix<Rational>>; 5]> = OnceLock::new();
    assert!(
        t <= MAX_SECTION_TWIST,
        "section bases are precomputed for twists 0..={MAX_SECTION_TWIST}"
    );
    let cache = CACHE.get_or_init(|| std::array::from_fn(|_| OnceLock::new()));
    cache[t as usize].get_or_init(|| {
        let data = NormalizationData::instance();
        let mons = canonical_monomials(t);
        let mut m = FieldMatrix::zero(80, mons.len());
        for k in 0..10 {
            let hinv = data.h_inv_pow(k, t);
            for (j, &(p, q)) in mons.iter().enumerate() {
                let val = data.monomial_value(k, p, q).mul(hinv);
                for c in 0..4 {
                    m.set(8 * k + c, j, val.re.coeff(c).clone());
                    m.set(8 * k + 4 + c, j, val.im.coeff(c).clone());
                }
            }
        }
        m
    })
}

/// Basis of the twist-`t` sections whose value at each marked point `q_k`
/// is a real multiple of `a_k`.
///
/// In the evaluation system the allowed component at each point carries a
/// free scalar multiplier, so those rows impose nothing and drop out;
/// what remains is the forbidden component: the four field coordinates of
/// the imaginary part where `a_k = 1`, of the real part where `a_k = i`.
/// The kernel of that rational 40 x (6t+1) matrix is the basis.
pub fn section_basis(a: &TorsionTuple, t: u32) -> SectionBasis {
    let block = eval_block(t);
    let n = block.cols();
    let mut m = FieldMatrix::zero(40, n);
    for k in 0..10 {
        let src = if a.is_imag(k) { 8 * k } else { 8 * k + 4 };
        for c in 0..4 {
            for j in 0..n {
                m.set(4 * k + c, j, block.get(src + c, j).clone());
            }
        }
    }
    let ker = m.kernel();
    let sections = (0..ker.cols())
        .map(|c| {
            let coeffs: Vec<Nfe> = (0..n)
                .map(|r| Nfe::from_rational(ker.get(r, c).clone()))
                .collect();
            ConicSection::new(t, coeffs)
        })
        .collect();
    SectionBasis {
        tuple: *a,
        twist: t,
        sections,
    }
}

/// The three-dimensional basis of plain twist-1 sections (real values at
/// every marked point); spans the pullbacks of the coordinate forms.
pub fn one_sections() -> &'static SectionBasis {
    static G: OnceLock<SectionBasis> = OnceLock::new();
    G.get_or_init(|| {
        let b = section_basis(&TorsionTuple::all_real(), 1);
        assert_eq!(b.dim(), 3, "plain twist-1 sections form a 3-dimensional space");
        b
    })
}

/// Whether a section's values obey the sign tuple at every marked point:
/// purely real where the flag is `1`, purely imaginary where it is `i`.
pub fn satisfies_membership(s: &ConicSection, a: &TorsionTuple) -> bool {
    (0..10).all(|k| {
        let v = s.evaluate(k);
        if a.is_imag(k) {
            v.re.is_zero()
        } else {
            v.im.is_zero()
        }
    })
}

// ---------------------------------------------------------------------------
// Classification.

struct Analysis {
    ty: ReprType,
    b1: SectionBasis,
    b2: SectionBasis,
}

/// Dimension of the twist-3 subspace generated by twist-2 sections times
/// the plain twist-1 sections.
fn twist3_product_rank(b2: &SectionBasis) -> usize {
    let g = one_sections();
    let mut tracker = SpanTracker::new(19);
    for f in b2.sections() {
        for h in g.sections() {
            tracker.absorb(&rational_coords(&section_mul(f, h)));
        }
    }
    tracker.rank()
}

fn analyze(a: &TorsionTuple) -> Analysis {
    let d0 = section_basis(a, 0).dim();
    let b1 = section_basis(a, 1);
    let b2 = section_basis(a, 2);
    let ty = if d0 == 1 {
        ReprType::M3
    } else {
        match b1.dim() {
            2 => ReprType::M2,
            d1 @ (0 | 1) => {
                // The twist-3 space has dimension 9 for every tuple below
                // M2; the defect of the product subspace inside it fixes k.
                let k = 9 - twist3_product_rank(&b2);
                assert!(
                    k <= 2 && (d1 == 0 || k <= 1),
                    "twist-3 defect {k} out of range for twist-1 dimension {d1}"
                );
                if d1 == 1 {
                    ReprType::M1(k as u8)
                } else {
                    ReprType::M0(k as u8)
                }
            }
            other => unreachable!("twist-1 dimension {other} cannot occur"),
        }
    };
    Analysis { ty, b1, b2 }
}

/// The representing type of one sign tuple.
pub fn representing_type(a: &TorsionTuple) -> ReprType {
    analyze(a).ty
}

/// The full classification of the 1024 sign tuples.
#[derive(Clone, Debug)]
pub struct Classification {
    groups: BTreeMap<ReprType, Vec<TorsionTuple>>,
}

impl Classification {
    pub fn count(&self, ty: ReprType) -> usize {
        self.groups.get(&ty).map_or(0, |v| v.len())
    }

    pub fn tuples(&self, ty: ReprType) -> &[TorsionTuple] {
        self.groups.get(&ty).map_or(&[], |v| v.as_slice())
    }

    pub fn total(&self) -> usize {
        self.groups.values().map(|v| v.len()).sum()
    }

    pub fn groups(&self) -> impl Iterator<Item = (ReprType, &[TorsionTuple])> {
        self.groups.iter().map(|(ty, v)| (*ty, v.as_slice()))
    }
}

/// Classifies all 1024 tuples, distributing them over the current worker
/// pool and merging in tuple order for determinism.
pub fn classify_all() -> Classification {
    let types: Vec<ReprType> = (0u16..1024)
        .into_par_iter()
        .map(|i| representing_type(&TorsionTuple::from_index(i)))
        .collect();
    let mut groups: BTreeMap<ReprType, Vec<TorsionTuple>> = BTreeMap::new();
    for (i, ty) in types.into_iter().enumerate() {
        groups
            .entry(ty)
            .or_default()
            .push(TorsionTuple::from_index(i as u16));
    }
    Classification { groups }
}

// ---------------------------------------------------------------------------
// Generator choice.

/// Enumerates, in lexicographic order, the index tuples drawing one
/// candidate per pattern slot (twists must match; equal-twist slots take
/// strictly increasing indices; indices are globally distinct) such that
/// at every marked point some chosen candidate is nonvanishing.
///
/// An empty result signals that the candidate pool must be widened.
pub fn choose_generators(candidates: &[ConicSection], pattern: &[u32]) -> Vec<Vec<usize>> {
    let masks: Vec<u16> = candidates
        .iter()
        .map(|c| {
            let mut m = 0u16;
            for k in 0..10 {
                if !c.evaluate(k).is_zero() {
                    m |= 1 << k;
                }
            }
            m
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(pattern.len());
    fn rec(
        candidates: &[ConicSection],
        masks: &[u16],
        pattern: &[u32],
        chosen: &mut Vec<usize>,
        cover: u16,
        out: &mut Vec<Vec<usize>>,
    ) {
        let slot = chosen.len();
        if slot == pattern.len() {
            if cover == 0x3ff {
                out.push(chosen.clone());
            }
            return;
        }
        let lo = if slot > 0 && pattern[slot - 1] == pattern[slot] {
            chosen[slot - 1] + 1
        } else {
            0
        };
        for idx in lo..candidates.len() {
            if candidates[idx].twist() != pattern[slot] || chosen.contains(&idx) {
                continue;
            }
            chosen.push(idx);
            rec(candidates, masks, pattern, chosen, cover | masks[idx], out);
            chosen.pop();
        }
    }
    rec(candidates, &masks, pattern, &mut chosen, 0, &mut out);
    out
}

/// Sections (of the slot twist) from the columns of a coordinate matrix.
fn sections_from_columns(twist: u32, m: &FieldMatrix<Rational>) -> Vec<ConicSection> {
    (0..m.cols())
        .map(|c| {
            ConicSection::new(
                twist,
                (0..m.rows())
                    .map(|r| Nfe::from_rational(m.get(r, c).clone()))
                    .collect(),
            )
        })
        .collect()
}

/// Products of the given sections with the pullbacks of all degree-`d`
/// monomials, as a coordinate matrix at twist `base + d`.
fn monomial_product_columns(
    sections: &[ConicSection],
    d: u32,
) -> FieldMatrix<Rational> {
    let mut cols = Vec::new();
    let mut rows = 0;
    for f in sections {
        for e in monomials_of_degree(d) {
            let m = pullback(&TernaryForm::monomial(e, Nfe::from_int(1)));
            let p = section_mul(f, &m);
            let coords = rational_coords(&p);
            rows = coords.len();
            cols.push(coords);
        }
    }
    if cols.is_empty() {
        FieldMatrix::zero(rows, 0)
    } else {
        FieldMatrix::from_cols(cols)
    }
}

/// Candidate pools per type: the fixed low-twist basis plus, for each open
/// slot, the complement of the already-generated subspace. A second,
/// widened setup offers the full basis of each slot twist as a fallback.
fn generator_setups(
    a: &TorsionTuple,
    analysis: &Analysis,
) -> Vec<(Vec<ConicSection>, Vec<u32>)> {
    let b1 = &analysis.b1;
    let b2 = &analysis.b2;
    match analysis.ty {
        ReprType::M3 => {
            let b0 = section_basis(a, 0);
            vec![(b0.sections().to_vec(), vec![0])]
        }
        ReprType::M2 => {
            let b4 = section_basis(a, 4);
            let generated = monomial_product_columns(b1.sections(), 3);
            let extra = complement(&generated, &b4.coordinate_matrix())
                .expect("generated twist-4 subspace lies in the section space");
            let mut primary = b1.sections().to_vec();
            primary.extend(sections_from_columns(4, &extra));
            let mut widened = b1.sections().to_vec();
            widened.extend(b4.sections().to_vec());
            vec![(primary, vec![1, 1, 4]), (widened, vec![1, 1, 4])]
        }
        ReprType::M1(k) => {
            let generated2 = monomial_product_columns(b1.sections(), 1);
            let extra2 = complement(&generated2, &b2.coordinate_matrix())
                .expect("generated twist-2 subspace lies in the section space");
            let slot2 = sections_from_columns(2, &extra2);
            if k == 0 {
                let mut primary = b1.sections().to_vec();
                primary.extend(slot2);
                let mut widened = b1.sections().to_vec();
                widened.extend(b2.sections().to_vec());
                vec![(primary, vec![1, 2]), (widened, vec![1, 2])]
            } else {
                let b3 = section_basis(a, 3);
                let generated3 = monomial_product_columns(b2.sections(), 1);
                let extra3 = complement(&generated3, &b3.coordinate_matrix())
                    .expect("generated twist-3 subspace lies in the section space");
                let mut primary = b1.sections().to_vec();
                primary.extend(slot2.clone());
                primary.extend(sections_from_columns(3, &extra3));
                let mut widened = b1.sections().to_vec();
                widened.extend(b2.sections().to_vec());
                widened.extend(b3.sections().to_vec());
                vec![(primary, vec![1, 2, 3]), (widened, vec![1, 2, 3])]
            }
        }
        ReprType::M0(k) => {
            let mut pattern = vec![2, 2, 2];
            pattern.extend(std::iter::repeat(3).take(k as usize));
            if k == 0 {
                vec![(b2.sections().to_vec(), pattern)]
            } else {
                let b3 = section_basis(a, 3);
                let generated3 = monomial_product_columns(b2.sections(), 1);
                let extra3 = complement(&generated3, &b3.coordinate_matrix())
                    .expect("generated twist-3 subspace lies in the section space");
                let mut primary = b2.sections().to_vec();
                primary.extend(sections_from_columns(3, &extra3));
                let mut widened = b2.sections().to_vec();
                widened.extend(b3.sections().to_vec());
                vec![(primary, pattern.clone()), (widened, pattern)]
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Synthesis.

/// Positivity verdict of a representation, decided by exact evaluation at
/// a fixed real point where the sextic is nonzero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum PsdVerdict {
    #[serde(rename = "POSITIVE")]
    Positive,
    #[serde(rename = "NOT_POSITIVE")]
    NotPositive,
}

/// The evaluation evidence backing a positivity verdict.
#[derive(Clone, Debug, Serialize)]
pub struct PsdWitness {
    /// The real evaluation point (the sextic is nonzero there).
    pub eval_point: [i64; 3],
    /// Signs of the leading principal minors of the evaluated matrix.
    pub minor_signs: Vec<i32>,
    /// Signs of the leading principal minors of its negative.
    pub negated_minor_signs: Vec<i32>,
    pub verdict: PsdVerdict,
}

/// A synthesized symmetric determinantal representation of the sextic.
#[derive(Clone, Debug)]
pub struct RobinsonDetRep {
    tuple: TorsionTuple,
    repr_type: ReprType,
    matrix: Vec<Vec<TernaryForm<Nfe>>>,
    lambda: Rational,
    generators: Vec<ConicSection>,
    witness: PsdWitness,
}

impl RobinsonDetRep {
    pub fn tuple(&self) -> TorsionTuple {
        self.tuple
    }

    pub fn repr_type(&self) -> ReprType {
        self.repr_type
    }

    /// The symmetric matrix of forms with `det = lambda * R`.
    pub fn matrix(&self) -> &[Vec<TernaryForm<Nfe>>] {
        &self.matrix
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// The sections whose syzygy produced the matrix (one per row).
    pub fn generators(&self) -> &[ConicSection] {
        &self.generators
    }

    pub fn psd_verdict(&self) -> PsdVerdict {
        self.witness.verdict
    }

    pub fn witness(&self) -> &PsdWitness {
        &self.witness
    }

    /// Rendered entry texts, row by row.
    pub fn matrix_texts(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|e| print_form(e, &XVARS)).collect())
            .collect()
    }
}

/// Layout of the unknown coefficients of one upper-triangle ansatz entry.
struct UnknownBlock {
    j: usize,
    k: usize,
    offset: usize,
    mons: Vec<[u32; 3]>,
}

fn kernel_search_coeffs() -> [i64; 4] {
    [-2, -1, 1, 2]
}

/// Attempts synthesis for one generator choice: solves the syzygy system
/// for the symmetric ansatz and searches its kernel for a solution with
/// nonzero determinant.
fn synthesize(
    tuple: &TorsionTuple,
    ty: ReprType,
    gens: &[ConicSection],
) -> Option<RobinsonDetRep> {
    let n = ty.size();
    let twists = ty.twists();
    debug_assert_eq!(gens.len(), n);

    // Unknown layout over the upper triangle.
    let mut blocks: Vec<UnknownBlock> = Vec::new();
    let mut unknowns = 0usize;
    for j in 0..n {
        for k in j..n {
            if let Some(d) = ty.entry_degree(j, k) {
                let mons = monomials_of_degree(d);
                blocks.push(UnknownBlock {
                    j,
                    k,
                    offset: unknowns,
                    mons,
                });
                unknowns += blocks.last().unwrap().mons.len();
            }
        }
    }

    // One equation block per column k: the sections sum to zero at twist
    // 6 - t_k, giving 6*(6 - t_k) + 1 scalar equations.
    let col_rows: Vec<usize> = twists.iter().map(|t| 6 * (6 - *t) as usize + 1).collect();
    let col_offsets: Vec<usize> = col_rows
        .iter()
        .scan(0usize, |acc, r| {
            let o = *acc;
            *acc += r;
            Some(o)
        })
        .collect();
    let total_rows: usize = col_rows.iter().sum();

    let mut sys = FieldMatrix::<Rational>::zero(total_rows, unknowns);
    let mut product_cache: BTreeMap<(usize, [u32; 3]), Vec<Rational>> = BTreeMap::new();
    let mut product = |gen_idx: usize, e: [u32; 3]| -> Vec<Rational> {
        product_cache
            .entry((gen_idx, e))
            .or_insert_with(|| {
                let m = pullback(&TernaryForm::monomial(e, Nfe::from_int(1)));
                rational_coords(&section_mul(&gens[gen_idx], &m))
            })
            .clone()
    };
    for b in &blocks {
        for (mi, &e) in b.mons.iter().enumerate() {
            let u = b.offset + mi;
            // Row j of column k carries g_j * entry(j, k).
            let coords = product(b.j, e);
            debug_assert_eq!(coords.len(), col_rows[b.k]);
            for (r, v) in coords.into_iter().enumerate() {
                sys.set(col_offsets[b.k] + r, u, v);
            }
            if b.j != b.k {
                // The mirrored entry feeds column j through row k.
                let coords = product(b.k, e);
                debug_assert_eq!(coords.len(), col_rows[b.j]);
                for (r, v) in coords.into_iter().enumerate() {
                    sys.set(col_offsets[b.j] + r, u, v);
                }
            }
        }
    }

    let ker = sys.kernel();
    let dim = ker.cols();
    if dim == 0 {
        return None;
    }

    let build = |x: &[Rational]| -> Vec<Vec<TernaryForm<Rational>>> {
        let mut m = vec![vec![TernaryForm::zero(0); n]; n];
        for b in &blocks {
            let pairs: Vec<([u32; 3], Rational)> = b
                .mons
                .iter()
                .enumerate()
                .map(|(mi, &e)| (e, x[b.offset + mi].clone()))
                .collect();
            let f = TernaryForm::new(pairs).expect("uniform-degree ansatz entry");
            m[b.j][b.k] = f.clone();
            m[b.k][b.j] = f;
        }
        m
    };

    let r = robinson_polynomial();
    let try_vector = |x: &[Rational]| -> Option<(Vec<Vec<TernaryForm<Rational>>>, Rational)> {
        let m = build(x);
        let det = det_poly_matrix(&m).expect("ansatz degrees form a graded pattern");
        if det.is_zero() {
            return None;
        }
        let lambda = det.coeff([6, 0, 0]);
        assert!(
            det == r.scale(&lambda),
            "nonzero syzygy determinant must be a rational multiple of the sextic"
        );
        Some((m, lambda))
    };

    let mut found: Option<(Vec<Vec<TernaryForm<Rational>>>, Rational)> = None;
    'search: {
        for i in 0..dim {
            if let Some(hit) = try_vector(&ker.col_vec(i)) {
                found = Some(hit);
                break 'search;
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                for c1 in kernel_search_coeffs() {
                    for c2 in kernel_search_coeffs() {
                        let x: Vec<Rational> = ker
                            .col_vec(i)
                            .into_iter()
                            .zip(ker.col_vec(j))
                            .map(|(a, b)| &a * rat_int(c1) + &b * rat_int(c2))
                            .collect();
                        if let Some(hit) = try_vector(&x) {
                            found = Some(hit);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    let (mut matrix, mut lambda) = found?;

    // Sign normalization: an odd-size matrix can always flip the sign of
    // its determinant; even sizes keep the sign the kernel produced.
    if lambda < rat_int(0) && n % 2 == 1 {
        for row in matrix.iter_mut() {
            for e in row.iter_mut() {
                *e = e.neg();
            }
        }
        lambda = -lambda;
    }
    // Scale normalization: clear the denominator of the leading
    // coefficient of the top-left entry when there is one.
    if let Some((_, c)) = matrix[0][0].sorted_terms().first() {
        let den = c.denom().clone();
        if den != 1.into() {
            let s = Rational::from_integer(den);
            for row in matrix.iter_mut() {
                for e in row.iter_mut() {
                    *e = e.scale(&s);
                }
            }
            lambda = lambda * Field::pow(&s, n as u32);
        }
    }

    // Syzygy sanity in debug builds: each column against the generators.
    #[cfg(debug_assertions)]
    for k in 0..n {
        let twist = 6 - twists[k];
        let mut acc = ConicSection::zero(twist);
        for j in 0..n {
            if matrix[j][k].is_zero() {
                continue;
            }
            let entry = matrix[j][k].map_coeffs(|c| Nfe::from_rational(c.clone()));
            acc = acc.add(&section_mul(&gens[j], &pullback(&entry)));
        }
        debug_assert!(acc.is_zero(), "syzygy fails in column {k}");
    }

    let witness = psd_witness(&matrix);
    Some(RobinsonDetRep {
        tuple: *tuple,
        repr_type: ty,
        matrix: matrix
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| e.map_coeffs(|c| Nfe::from_rational(c.clone())))
                    .collect()
            })
            .collect(),
        lambda,
        generators: gens.to_vec(),
        witness,
    })
}

/// The standard evaluation points, tried in order until the sextic is
/// nonzero (the first already qualifies; the rest are defensive).
fn evaluation_points() -> [[i64; 3]; 4] {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3]]
}

fn psd_witness(matrix: &[Vec<TernaryForm<Rational>>]) -> PsdWitness {
    let r = robinson_polynomial();
    let point = *evaluation_points()
        .iter()
        .find(|p| {
            let pt = [rat_int(p[0]), rat_int(p[1]), rat_int(p[2])];
            !r.eval(&pt).is_zero()
        })
        .expect("some standard point avoids the zero locus");
    let pt = [rat_int(point[0]), rat_int(point[1]), rat_int(point[2])];
    let n = matrix.len();
    let mut evaluated = FieldMatrix::<Nfe>::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            evaluated.set(i, j, Nfe::from_rational(matrix[i][j].eval(&pt)));
        }
    }
    let mut negated = FieldMatrix::<Nfe>::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            negated.set(i, j, evaluated.get(i, j).neg());
        }
    }
    let pd_pos = is_pd(&evaluated).expect("evaluated ansatz matrix is symmetric");
    let pd_neg = is_pd(&negated).expect("evaluated ansatz matrix is symmetric");
    PsdWitness {
        eval_point: point,
        minor_signs: leading_minor_signs(&evaluated),
        negated_minor_signs: leading_minor_signs(&negated),
        verdict: if pd_pos || pd_neg {
            PsdVerdict::Positive
        } else {
            PsdVerdict::NotPositive
        },
    }
}

/// Synthesizes a symmetric determinantal representation of the sextic for
/// one sign tuple: picks generators per the tuple's type, solves the
/// syzygy system, and searches the kernel for a nonzero determinant.
pub fn det_rep(a: &TorsionTuple) -> Result<RobinsonDetRep, RobinsonError> {
    det_rep_with(a, &analyze(a))
}

const MAX_GENERATOR_CHOICES: usize = 24;

fn det_rep_with(a: &TorsionTuple, analysis: &Analysis) -> Result<RobinsonDetRep, RobinsonError> {
    let ty = analysis.ty;
    let mut attempts = 0usize;
    let mut any_choice = false;
    for (candidates, pattern) in generator_setups(a, analysis) {
        for choice in choose_generators(&candidates, &pattern) {
            any_choice = true;
            if attempts >= MAX_GENERATOR_CHOICES {
                break;
            }
            attempts += 1;
            let gens: Vec<ConicSection> =
                choice.iter().map(|&i| candidates[i].clone()).collect();
            if let Some(rep) = synthesize(a, ty, &gens) {
                return Ok(rep);
            }
        }
    }
    Err(RobinsonError::SynthesisFailure {
        tuple: a.to_string(),
        reason: if any_choice {
            format!("no kernel combination of bounded search size yields a nonzero determinant (type {ty})")
        } else {
            format!("no base-point-free generator choice exists (type {ty})")
        },
    })
}

/// Decides non-positivity for a tuple of the all-quadratic type M0(0):
/// `true` means certified not positive (neither the evaluated matrix nor
/// its negative is positive definite).
pub fn certify_not_positive(a: &TorsionTuple) -> Result<(bool, PsdWitness), RobinsonError> {
    let analysis = analyze(a);
    if analysis.ty != ReprType::M0(0) {
        return Err(RobinsonError::WrongType(analysis.ty.to_string()));
    }
    let rep = det_rep_with(a, &analysis)?;
    let witness = rep.witness().clone();
    Ok((witness.verdict == PsdVerdict::NotPositive, witness))
}

// ---------------------------------------------------------------------------
// Aggregate certificate.

/// One tuple's entry in the aggregate certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    pub tuple: String,
    #[serde(rename = "type")]
    pub repr_type: String,
    pub lambda: String,
    pub matrix: Vec<Vec<String>>,
    pub eval_point: [i64; 3],
    pub minors: MinorSigns,
    pub verdict: PsdVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorSigns {
    pub matrix: Vec<i32>,
    pub negated: Vec<i32>,
}

/// The machine-readable aggregate certificate over all M0(0) tuples.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub tuple_count: usize,
    pub all_not_positive: bool,
    pub entries: Vec<CertificateEntry>,
}

pub fn certificate_entry(rep: &RobinsonDetRep) -> CertificateEntry {
    CertificateEntry {
        tuple: rep.tuple().to_string(),
        repr_type: rep.repr_type().to_string(),
        lambda: rational_text(rep.lambda()),
        matrix: rep.matrix_texts(),
        eval_point: rep.witness().eval_point,
        minors: MinorSigns {
            matrix: rep.witness().minor_signs.clone(),
            negated: rep.witness().negated_minor_signs.clone(),
        },
        verdict: rep.psd_verdict(),
    }
}

/// Runs the non-positivity certification over every M0(0) tuple and
/// aggregates the evidence; `all_not_positive` is the theorem's verdict.
pub fn theorem_rob() -> Result<TheoremReport, RobinsonError> {
    let classification = classify_all();
    let tuples = classification.tuples(ReprType::M0(0));
    let entries: Result<Vec<CertificateEntry>, RobinsonError> = tuples
        .par_iter()
        .map(|a| det_rep(a).map(|rep| certificate_entry(&rep)))
        .collect();
    let entries = entries?;
    let all_not_positive = entries
        .iter()
        .all(|e| e.verdict == PsdVerdict::NotPositive);
    Ok(TheoremReport {
        tuple_count: entries.len(),
        all_not_positive,
        entries,
    })
}
