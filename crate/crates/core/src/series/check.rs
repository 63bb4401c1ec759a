use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};
use crate::verify::{ExactStatus, NumericStatus, Verifier};

use super::identities::resolved_sides;
use super::laurent::{Exponents, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialStatus {
    /// The coefficient difference is the zero combination.
    Zero,
    NumericPass,
    Proven,
    Unresolved,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for MonomialStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialStatus::Zero => "zero",
            MonomialStatus::NumericPass => "numeric-pass",
            MonomialStatus::Proven => "proven",
            MonomialStatus::Unresolved => "unresolved",
            MonomialStatus::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRow {
    pub monomial: String,
    pub status: MonomialStatus,
    pub residual: String,
    pub err: String,
    /// The coefficient of `lhs - rhs`, in index notation.
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub identity: String,
    pub degree_cap: i32,
    pub rows: Vec<MonomialRow>,
    /// Monomials with a negative exponent whose difference did not cancel.
    pub structural_failures: Vec<String>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.structural_failures.is_empty()
            && self.rows.iter().all(|r| {
                matches!(r.status, MonomialStatus::Zero | MonomialStatus::NumericPass | MonomialStatus::Proven)
            })
    }

    pub fn has_unresolved(&self) -> bool {
        self.rows.iter().any(|r| r.status == MonomialStatus::Unresolved)
    }

    pub fn has_failure(&self) -> bool {
        !self.structural_failures.is_empty() || self.rows.iter().any(|r| r.status == MonomialStatus::Fail)
    }
}

fn degree(e: &[i32]) -> i32 {
    e.iter().sum()
}

/// Compares two series monomial by monomial over total degrees
/// `min_degree..=degree_cap`. Coefficients of monomials with a negative
/// exponent must agree symbolically; every other difference goes to the
/// verifier.
pub fn series_equal_from(
    lhs: &Series,
    rhs: &Series,
    min_degree: i32,
    degree_cap: i32,
    verifier: &Verifier,
) -> Result<Vec<MonomialRow>> {
    if lhs.vars() != rhs.vars() {
        return Err(MzvError::domain("series over different variable sets"));
    }
    if degree_cap > lhs.cutoff() || degree_cap > rhs.cutoff() {
        return Err(MzvError::domain(format!(
            "degree cap {degree_cap} above the exact range ({} and {})",
            lhs.cutoff(),
            rhs.cutoff()
        )));
    }
    let diff = lhs.sub(rhs)?;
    let keys: BTreeSet<Exponents> = lhs
        .terms()
        .chain(rhs.terms())
        .map(|(e, _)| e.clone())
        .filter(|e| (min_degree..=degree_cap).contains(&degree(e)))
        .collect();
    let mut keys: Vec<Exponents> = keys.into_iter().collect();
    keys.sort_by_key(|e| (degree(e), std::cmp::Reverse(e.clone())));
    keys.par_iter()
        .map(|e| {
            let d = diff.coeff(e);
            let monomial = lhs.vars().monomial_string(e);
            let difference = d.to_string();
            if d.is_zero() {
                return Ok(MonomialRow {
                    monomial,
                    status: MonomialStatus::Zero,
                    residual: "0".into(),
                    err: "0".into(),
                    difference,
                });
            }
            if e.iter().any(|&k| k < 0) {
                return Ok(MonomialRow {
                    monomial,
                    status: MonomialStatus::Fail,
                    residual: "nonzero".into(),
                    err: "0".into(),
                    difference,
                });
            }
            let v = verifier.check(&d)?;
            let status = match (v.numeric, v.exact) {
                (NumericStatus::Fail, _) => MonomialStatus::Fail,
                (_, ExactStatus::Proven) => MonomialStatus::Proven,
                (_, ExactStatus::Unresolved) => MonomialStatus::Unresolved,
                _ => MonomialStatus::NumericPass,
            };
            Ok(MonomialRow { monomial, status, residual: v.residual(6), err: v.err(3), difference })
        })
        .collect()
}

/// [`series_equal_from`] over every retained degree up to the cap.
pub fn series_equal(lhs: &Series, rhs: &Series, degree_cap: i32, verifier: &Verifier) -> Result<Vec<MonomialRow>> {
    series_equal_from(lhs, rhs, i32::MIN, degree_cap, verifier)
}

/// Builds identity `id`, clears its denominators and checks it through
/// total degree `degree_cap`.
pub fn check_identity(id: &str, degree_cap: i32, verifier: &Verifier) -> Result<SeriesReport> {
    let limit = if id == "depth4-product" { 6 } else { 10 };
    if !(0..=limit).contains(&degree_cap) {
        return Err(MzvError::domain(format!("degree cap {degree_cap} outside 0..={limit} for {id}")));
    }
    let (ident, l, r) = resolved_sides(id, degree_cap)?;
    let structural_failures = l
        .sub(&r)?
        .negative_terms()
        .into_iter()
        .map(|(e, c)| format!("{}: {c}", ident.vars.monomial_string(&e)))
        .collect();
    let rows = series_equal_from(&l, &r, ident.min_degree, degree_cap, verifier)?;
    Ok(SeriesReport { identity: id.to_string(), degree_cap, rows, structural_failures })
}
