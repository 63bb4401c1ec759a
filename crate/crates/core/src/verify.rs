//! Numeric and exact verification of candidate identities.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{stuffle_expand, MzvCombo, ProductCombo};
use crate::error::{MzvError, Result};
use crate::eval::{BigReal, Evaluator};
use crate::relations::{all_families, ExactVerdict, Family, Prover, DEFAULT_WEIGHT_CAP};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Numeric,
    Exact,
    Both,
}

impl Mode {
    pub fn numeric(self) -> bool {
        matches!(self, Mode::Numeric | Mode::Both)
    }

    pub fn exact(self) -> bool {
        matches!(self, Mode::Exact | Mode::Both)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Numeric => "numeric",
            Mode::Exact => "exact",
            Mode::Both => "both",
        })
    }
}

impl FromStr for Mode {
    type Err = MzvError;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "numeric" => Ok(Mode::Numeric),
            "exact" => Ok(Mode::Exact),
            "both" => Ok(Mode::Both),
            _ => Err(MzvError::domain(format!("unknown mode {s:?} (numeric, exact, both)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactStatus {
    Proven,
    Unresolved,
    Skipped,
}

impl fmt::Display for NumericStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumericStatus::Pass => "pass",
            NumericStatus::Fail => "fail",
            NumericStatus::Skipped => "skipped",
        })
    }
}

impl fmt::Display for ExactStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactStatus::Proven => "proven",
            ExactStatus::Unresolved => "unresolved",
            ExactStatus::Skipped => "skipped",
        })
    }
}

/// Outcome of checking one candidate that is asserted to vanish.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub value: Option<BigReal>,
    pub numeric: NumericStatus,
    pub exact: ExactStatus,
    /// Normal form left over by the exact check, when it did not vanish.
    pub normal_form: Option<MzvCombo>,
}

impl Verdict {
    /// Residual with `sig` significant digits, or `"0"` when not evaluated.
    pub fn residual(&self, sig: usize) -> String {
        self.value.as_ref().map_or_else(|| "0".into(), |v| v.value_sci(sig))
    }

    pub fn err(&self, sig: usize) -> String {
        self.value.as_ref().map_or_else(|| "0".into(), |v| v.err_sci(sig))
    }

    /// No part of the requested check failed or stayed open.
    pub fn passed(&self) -> bool {
        self.numeric != NumericStatus::Fail && self.exact != ExactStatus::Unresolved
    }
}

/// Checks candidates numerically with a shared evaluator and exactly with a
/// shared prover, as the mode asks.
#[derive(Debug)]
pub struct Verifier {
    evaluator: Evaluator,
    prover: Prover,
    families: BTreeSet<Family>,
    mode: Mode,
    weight_cap: u32,
}

impl Verifier {
    pub fn new(evaluator: Evaluator, mode: Mode) -> Verifier {
        Verifier { evaluator, prover: Prover::new(), families: all_families(), mode, weight_cap: DEFAULT_WEIGHT_CAP }
    }

    pub fn with_families(mut self, families: BTreeSet<Family>) -> Verifier {
        self.families = families;
        self
    }

    /// Heaviest weight the exact check attempts; heavier candidates are
    /// reported unresolved.
    pub fn with_weight_cap(mut self, cap: u32) -> Verifier {
        self.weight_cap = cap;
        self
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.evaluator
    }

    pub fn prover(&self) -> &Prover {
        &self.prover
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn check(&self, candidate: &MzvCombo) -> Result<Verdict> {
        let value = if self.mode.numeric() { Some(self.evaluator.eval_combo(candidate)?) } else { None };
        self.finish(value, candidate)
    }

    /// Checks `product - expansion = 0`: numerically by multiplying the
    /// factor values, exactly after stuffle-expanding the products.
    pub fn check_product(&self, product: &ProductCombo, expansion: &MzvCombo) -> Result<Verdict> {
        let value = if self.mode.numeric() {
            Some(self.evaluator.eval_product(product)?.sub(&self.evaluator.eval_combo(expansion)?))
        } else {
            None
        };
        self.finish(value, &(&stuffle_expand(product) - expansion))
    }

    fn finish(&self, value: Option<BigReal>, candidate: &MzvCombo) -> Result<Verdict> {
        let numeric = match &value {
            None => NumericStatus::Skipped,
            Some(v) if self.evaluator.is_numerically_zero(v) => NumericStatus::Pass,
            Some(_) => NumericStatus::Fail,
        };
        let (exact, normal_form) = if !self.mode.exact() {
            (ExactStatus::Skipped, None)
        } else if candidate.weight()?.is_some_and(|w| w > self.weight_cap) {
            (ExactStatus::Unresolved, Some(candidate.clone()))
        } else {
            match self.prover.verify_exact(candidate, &self.families)? {
                ExactVerdict::Proven => (ExactStatus::Proven, None),
                ExactVerdict::Unresolved(nf) => (ExactStatus::Unresolved, Some(nf)),
            }
        };
        Ok(Verdict { value, numeric, exact, normal_form })
    }
}
