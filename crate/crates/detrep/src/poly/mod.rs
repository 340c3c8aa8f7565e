//! Exact multivariate polynomial layer: homogeneous ternary forms over a
//! declared coefficient field, a text grammar for round-trip I/O, and the
//! coordinate ring of the affine conic `v^2 + w^2 + 1 = 0` together with
//! the fixed normalization data of the sextic pipeline.

mod conic;
mod form;
mod text;

pub use conic::{
    canonical_monomials, pullback, section_mul, BasisChange, ConicSection, NormalizationData,
    MAX_TWIST,
};
pub use form::{det_poly_matrix, monomials_of_degree, TernaryForm};
pub use text::{parse_element, parse_form, print_element, print_form, XVARS};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("coefficient not representable in the declared field: {0}")]
    Coefficient(String),
    #[error("matrix size {0} unsupported (determinant expansion handles 1..=5)")]
    MatrixSize(usize),
}
