//! Homogeneous ternary forms with exact sparse coefficients.

use super::PolyError;
use crate::field::Field;
use std::collections::BTreeMap;

/// A homogeneous polynomial in `x0, x1, x2` over the field `F`.
///
/// Terms map exponent triples `[e0, e1, e2]` (summing to `degree`) to
/// nonzero coefficients. The zero form stores no terms; its `degree` is a
/// placeholder and zero forms are compatible with any degree in sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TernaryForm<F: Field> {
    degree: u32,
    terms: BTreeMap<[u32; 3], F>,
}

impl<F: Field> TernaryForm<F> {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: [u32; 3], coeff: F) -> Self {
        let mut f = Self::zero(exp.iter().sum());
        f.add_term(exp, coeff);
        f
    }

    pub fn constant(c: F) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    /// Builds a form from `(exponent, coefficient)` pairs, which must share
    /// a common total degree.
    pub fn new(pairs: Vec<([u32; 3], F)>) -> Result<Self, PolyError> {
        let mut degree = None;
        let mut f = Self::zero(0);
        for (exp, c) in pairs {
            let d: u32 = exp.iter().sum();
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(PolyError::Degree(format!(
                        "terms of degree {prev} and {d} in one form"
                    )))
                }
                _ => {}
            }
            f.add_term(exp, c);
        }
        f.degree = degree.unwrap_or(0);
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: [u32; 3]) -> F {
        self.terms.get(&exp).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, exp: [u32; 3], c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }

    /// Sum of two forms. Panics if both are nonzero with different degrees
    /// (an internal invariant violation; text input is validated earlier).
    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.degree, rhs.degree,
            "cannot add forms of different degrees"
        );
        let mut out = self.clone();
        for (exp, c) in rhs.terms.iter() {
            out.add_term(*exp, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.degree + rhs.degree);
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let exp = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(exp, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(F::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, point: &[F; 3]) -> F {
        let mut acc = F::zero();
        for (exp, c) in self.terms.iter() {
            let mut term = c.clone();
            for (axis, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&point[axis].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Rewrites the coefficients into another field (e.g. promoting exact
    /// rationals into the quartic extension).
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> TernaryForm<G> {
        let mut out = TernaryForm::zero(self.degree);
        for (exp, c) in self.terms.iter() {
            out.add_term(*exp, f(c));
        }
        out
    }

    /// Coefficients in canonical print order: ascending `(e2, e1)`.
    pub fn sorted_terms(&self) -> Vec<([u32; 3], F)> {
        let mut v: Vec<([u32; 3], F)> =
            self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|(e, _)| (e[2], e[1]));
        v
    }
}

/// Exponent triples of total degree `d`, ordered by descending `e0`, then
/// descending `e1` — the unknown/equation order shared by the linear-solve
/// constructions.
pub fn monomials_of_degree(d: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for e0 in (0..=d).rev() {
        for e1 in (0..=(d - e0)).rev() {
            v.push([e0, e1, d - e0 - e1]);
        }
    }
    v
}

/// Assigns compatible row/column degrees to the nonzero entries of a square
/// matrix of forms, so the determinant is homogeneous. Returns `None` for
/// an inconsistent degree pattern.
fn grade_matrix<F: Field>(a: &[Vec<TernaryForm<F>>]) -> Option<i64> {
    let n = a.len();
    // deg(a[i][j]) must equal r[i] + c[j] on nonzero entries. Seed each
    // connected component of the bipartite incidence graph with r = 0 and
    // propagate to saturation. The sum of all grades is seed-invariant on
    // square components (every permutation term has that total degree);
    // non-square components force a zero determinant, so their arbitrary
    // grades never reach the degree check.
    let mut r: Vec<Option<i64>> = vec![None; n];
    let mut c: Vec<Option<i64>> = vec![None; n];
    loop {
        match (0..n).find(|&i| r[i].is_none() && a[i].iter().any(|f| !f.is_zero())) {
            Some(i) => r[i] = Some(0),
            None => break,
        }
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let d = a[i][j].degree() as i64;
                    match (r[i], c[j]) {
                        (Some(ri), None) => {
                            c[j] = Some(d - ri);
                            changed = true;
                        }
                        (None, Some(cj)) => {
                            r[i] = Some(d - cj);
                            changed = true;
                        }
                        (Some(ri), Some(cj)) if ri + cj != d => return None,
                        _ => {}
                    }
                }
            }
        }
    }
    // Fully zero rows or columns force a zero determinant; grade them 0.
    let rs: i64 = r.iter().map(|x| x.unwrap_or(0)).sum();
    let cs: i64 = c.iter().map(|x| x.unwrap_or(0)).sum();
    Some(rs + cs)
}

/// Exact cofactor-expansion determinant of an `n x n` matrix of forms,
/// `1 <= n <= 5`, with a homogeneity (graded-pattern) check.
pub fn det_poly_matrix<F: Field>(
    a: &[Vec<TernaryForm<F>>],
) -> Result<TernaryForm<F>, PolyError> {
    let n = a.len();
    if n == 0 || n > 5 {
        return Err(PolyError::MatrixSize(n));
    }
    for row in a {
        if row.len() != n {
            return Err(PolyError::MatrixSize(row.len()));
        }
    }
    let total = grade_matrix(a).ok_or_else(|| {
        PolyError::Degree("matrix entry degrees admit no consistent grading".into())
    })?;
    let det = det_rec(a, &(0..n).collect::<Vec<_>>());
    if !det.is_zero() && det.degree() as i64 != total {
        return Err(PolyError::Degree(format!(
            "determinant degree {} does not match graded expectation {}",
            det.degree(),
            total
        )));
    }
    Ok(det)
}

fn det_rec<F: Field>(a: &[Vec<TernaryForm<F>>], cols: &[usize]) -> TernaryForm<F> {
    let row = a.len() - cols.len();
    if cols.len() == 1 {
        return a[row][cols[0]].clone();
    }
    let mut acc: Option<TernaryForm<F>> = None;
    for (k, &j) in cols.iter().enumerate() {
        if a[row][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != j)
            .collect();
        let minor = det_rec(a, &rest);
        let signed = if k % 2 == 0 {
            a[row][j].mul(&minor)
        } else {
            a[row][j].neg().mul(&minor)
        };
        acc = Some(match acc {
            None => signed,
            Some(s) => s.add(&signed),
        });
    }
    acc.unwrap_or_else(|| TernaryForm::zero(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_int, Rational};

    fn form_i(pairs: &[([u32; 3], i64)]) -> TernaryForm<Rational> {
        TernaryForm::new(pairs.iter().map(|&(e, c)| (e, rat_int(c))).collect()).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let q = form_i(&[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1)]);
        let sq = q.mul(&q);
        assert_eq!(sq.degree(), 4);
        assert_eq!(sq.coeff([4, 0, 0]), rat_int(1));
        assert_eq!(sq.coeff([2, 2, 0]), rat_int(2));
        assert_eq!(q.sub(&q), TernaryForm::zero(2));
        assert_eq!(
            q.eval(&[rat_int(1), rat_int(2), rat_int(3)]),
            rat_int(14)
        );
    }

    #[test]
    fn mixed_degrees_rejected() {
        let r = TernaryForm::new(vec![([2, 0, 0], rat_int(1)), ([1, 0, 0], rat_int(1))]);
        assert!(matches!(r, Err(PolyError::Degree(_))));
    }

    #[test]
    fn det_of_diagonal_pattern() {
        let q = form_i(&[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1)]);
        let z = TernaryForm::zero(2);
        let det = det_poly_matrix(&[
            vec![q.clone(), z.clone()],
            vec![z.clone(), q.clone()],
        ])
        .unwrap();
        assert_eq!(det, q.mul(&q));
    }

    #[test]
    fn det_degree_mismatch_detected() {
        let lin = form_i(&[([1, 0, 0], 1)]);
        let quad = form_i(&[([2, 0, 0], 1)]);
        // (0,0) and (1,1) of degree 1, off-diagonals degree 2 is not graded:
        // r0+c0 = 1, r0+c1 = 2, r1+c0 = 2 forces r1+c1 = 3 != 1.
        let r = det_poly_matrix(&[
            vec![lin.clone(), quad.clone()],
            vec![quad.clone(), lin.clone()],
        ]);
        assert!(matches!(r, Err(PolyError::Degree(_))));
    }

    #[test]
    fn det_handles_structural_zero_rows() {
        let z = TernaryForm::<Rational>::zero(1);
        let lin = form_i(&[([1, 0, 0], 1)]);
        let det = det_poly_matrix(&[vec![z.clone(), z.clone()], vec![lin.clone(), lin]])
            .unwrap();
        assert!(det.is_zero());
    }

    #[test]
    fn five_by_five_expansion() {
        // diag(x0, x1, x2, x0, x1) with zeros elsewhere.
        let vars = [
            form_i(&[([1, 0, 0], 1)]),
            form_i(&[([0, 1, 0], 1)]),
            form_i(&[([0, 0, 1], 1)]),
            form_i(&[([1, 0, 0], 1)]),
            form_i(&[([0, 1, 0], 1)]),
        ];
        let mut m = vec![vec![TernaryForm::zero(1); 5]; 5];
        for (i, v) in vars.iter().enumerate() {
            m[i][i] = v.clone();
        }
        let det = det_poly_matrix(&m).unwrap();
        assert_eq!(det, form_i(&[([2, 2, 1], 1)]));
        let r6 = det_poly_matrix(&vec![vec![TernaryForm::<Rational>::zero(1); 6]; 6]);
        assert!(matches!(r6, Err(PolyError::MatrixSize(6))));
    }
}
