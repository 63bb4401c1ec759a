//! Multiple zeta values: the stuffle and shuffle algebras on indices, rigorous
//! high-precision evaluation, exact double shuffle certification, truncated
//! generating-function series and a catalog of weighted sum formulas.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: compositions, binary words, rational combinations and the
//!   three products (stuffle, shuffle, duality) plus closed-form product
//!   expansions.
//! - [`eval`]: fixed-point big reals with tracked error, multiple
//!   polylogarithms at rational points, Hölder convolution and a value cache.
//! - [`relations`]: finite double shuffle and duality relations, exact
//!   echelon forms and membership tests.
//! - [`series`]: truncated multivariate Laurent series with MZV coefficients.
//! - [`formulas`]: parametric identity generators and parameter scans.
//! - [`verify`]: numeric and exact checks of candidates asserted to vanish.

pub mod algebra;
pub mod error;
pub mod eval;
pub mod formulas;
pub mod relations;
pub mod series;
pub mod verify;

pub use algebra::{BinaryWord, Composition, Letter, MzvCombo, ProductCombo, Rational};
pub use error::{MzvError, Result};
pub use eval::{BigReal, EvalConfig, Evaluator, Strategy};

pub use verify::{ExactStatus, Mode, NumericStatus, Verdict, Verifier};
