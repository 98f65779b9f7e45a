//! Exact computation of Feynman integrals on labeled graphs, producing
//! generating series of Hurwitz numbers and stationary descendant
//! Gromov-Witten invariants of elliptic curves.
//!
//! The fast path groups the `n!` vertex orders by flip signature and
//! multiplies shifted propagator numerators with pruning; [`oracle`] is an
//! independent full-expansion evaluator used for validation.

pub mod error;
pub mod graph;
pub mod integral;
pub mod oracle;
pub mod polyarith;
pub mod propagator;
pub mod quasimodular;
pub mod signature;

pub use error::{Error, Result};
pub use graph::{catalog, count_automorphisms, weak_compositions, BranchType, FeynmanGraph, GenusFunction, GraphJson};
pub use integral::{
    assemble_generating_series, assemble_generating_series_with, collapse_to_univariate,
    descendant_integral_branchtype, descendant_integral_degree, descendant_integral_degree_with,
    feynman_integral_branchtype, feynman_integral_degree, feynman_integral_degree_with, with_automorphisms,
    DegreeSeries, DegreeSeriesJson, Mode, PsiData, Threads,
};
pub use oracle::{naive_integral, naive_integral_ordered, TruncationSpec};
pub use polyarith::{Coeff, Integer, Monomial, Prune, Rational, SparsePoly, TruncatedSeries, VarContext};
pub use quasimodular::{eisenstein, fit_quasimodular, monomial_basis, FitReport, QSeries, QuasimodularFit};
pub use signature::{flip_signature, signature_and_multiplicities, FlipSignature, SignatureTable, VertexOrder};
