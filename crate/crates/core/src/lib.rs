//! Exact free Lie algebra computations for the first Kashiwara–Vergne
//! equation: BCH series, Dynkin and Eulerian idempotents, the particular
//! solution `F₀`, and the homogeneous solution space.

pub mod alphabet;
pub mod arith;
pub mod coshuffle;
pub mod error;
pub mod idempotents;
pub mod kv;
pub mod linalg;
pub mod lyndon;
pub mod permutation;
pub mod poly;
pub mod series;
pub mod text;
pub mod word;

pub use alphabet::{Alphabet, Letter};
pub use arith::Rational;
pub use error::{KvError, Result};
pub use permutation::Permutation;
pub use poly::{Poly, Substitution};
pub use series::{DefectTerm, GradedSeries};
pub use word::Word;
