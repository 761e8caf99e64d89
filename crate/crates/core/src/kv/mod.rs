//! The Kashiwara–Vergne layer: BCH series, the `Φ±` split, the operators
//! `E` and `Ber`, the particular solution `F₀`, homogeneous solutions, and
//! the multilinear generalization.

pub mod bch;
pub mod homogeneous;
pub mod multilinear;
pub mod operators;
pub mod oracle;
pub mod particular;

pub use bch::{bch_eulerian, bch_oracle, multilinear_bch, BchSeries};
pub use homogeneous::{
    antisymmetric_kernel_element, e_route_solution, general_solution, homogeneous_defect,
    homogeneous_solution,
};
pub use multilinear::{multilinear_f0, multilinear_particular, verify_multilinear, SignConvention};
pub use operators::{apply_operator, OperatorKind, OperatorSpec};
pub use oracle::solve_split_linear;
pub use particular::{
    a_series, f0, g0, particular_solution, phi_split, require_zero, symmetrize, verify_kv1,
    verify_split, KvSolutionPair,
};
