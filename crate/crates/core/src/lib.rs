//! Exact computations for finite-dimensional n-Lie (Filippov) algebras.
//!
//! The crate is organised around five pieces:
//!
//! * [`algebra`]: concrete algebras given by structure constants over ℚ, with
//!   the usual invariants (derived algebra, center, central series, class).
//! * [`count`]: closed-form counts of basic commutators, the Witt formula and
//!   modular tensor dimensions.
//! * [`oracle`]: brute-force construction of free nilpotent n-Lie algebras by
//!   exact linear algebra, used to check the closed-form counts.
//! * [`multiplier`]: dimension formulas for c-nilpotent multipliers.
//! * [`structure`]: decomposition of algebras with one-dimensional derived
//!   algebra and the capability predicates.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! counts are arbitrary-precision integers.

pub mod algebra;
pub mod count;
pub mod error;
pub mod linalg;
pub mod multiplier;
pub mod oracle;
pub mod rational;
pub mod structure;

pub use algebra::{AnalysisReport, JacobiViolation, NLieAlgebra, ValidationReport};
pub use count::{count_basic, CountQuery, FormulaTrace};
pub use error::{Error, Result};
pub use linalg::Subspace;
pub use multiplier::{MultiplierKind, MultiplierResult};
pub use oracle::{BracketTree, CompareRow, FreeOracle, GradedComponent, DEFAULT_TERM_CAP};
pub use rational::Rational;
pub use structure::{Decomposition, Gamma3Check};
