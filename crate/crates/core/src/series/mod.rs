//! Truncated generating series of multiple zeta values and the
//! generating-function identities built from them.

mod check;
mod expr;
mod identities;
mod laurent;
mod pattern;

pub use check::{check_identity, series_equal, series_equal_from, MonomialRow, MonomialStatus, SeriesReport};
pub use expr::{Expr, SymmetryKind, SymmetrySpec, Term};
pub use laurent::{Exponents, LinearForm, Series, Vars, EXPONENT_FLOOR};
pub use pattern::{gen_g, gen_pattern, product_series, PatternTemplate, ProductKind, Slot};
pub use identities::{
    block_checks, build_identity, g2_replay, resolved_sides, BlockCheck, SeriesIdentity, SERIES_IDENTITIES,
};
