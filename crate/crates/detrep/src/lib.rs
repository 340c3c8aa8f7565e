//! Exact determinantal representations of ternary forms.
//!
//! Everything here runs over exact coefficient fields — the rationals, the
//! real quartic field `Q(mu)` with `mu = sqrt(2) + sqrt(3)`, and its
//! imaginary extension `Q(mu, i)` — so every verdict the crate produces
//! (section dimensions, determinant identities, positivity certificates)
//! is a proof-grade computation, not a floating-point approximation.
//!
//! The two main pipelines:
//!
//! * [`robinson`] — classifies the 1024 two-torsion section systems on the
//!   sextic invariant curve, synthesizes a symmetric determinantal
//!   representation for each class, and certifies that none of the generic
//!   class is positive semidefinite.
//! * [`quartic`] — turns a 4x4 symmetric linear determinantal representation
//!   of a smooth quartic plus a conjugation-symmetric octad of base points
//!   into a 2x2 positive quadratic determinantal representation, including
//!   the contact-conic completion step.
//!
//! Supporting layers: [`field`] (scalars), [`linalg`] (exact dense linear
//! algebra), [`poly`] (ternary forms, parsing/printing, the conic chart),
//! [`realroots`] (Sturm chains, Tarski queries, signs at `mu`), and [`cli`]
//! (the `detrep` binary's command surface).

pub mod cli;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod quartic;
pub mod realroots;
pub mod robinson;
