//! Arbitrary-precision evaluation of MZVs and multiple polylogarithms with
//! rigorous error bounds, plus the persistent value cache.

mod bigreal;
mod cache;
mod mzv;
mod polylog;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};

pub use bigreal::{bits_for_digits, parse_decimal, BigReal};
pub use cache::{CacheRecord, ValueCache};
pub use mzv::{direct_truncation, eval_combo, eval_mzv, eval_product, Evaluator, DIRECT_MAX_TERMS};
pub use polylog::{
    direct_tail_bound, eval_direct, eval_polylog, polylog_bits, polylog_tail_bound,
    polylog_truncation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Holder,
    Direct,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Holder => "holder",
            Strategy::Direct => "direct",
        })
    }
}

impl FromStr for Strategy {
    type Err = MzvError;
    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "holder" => Ok(Strategy::Holder),
            "direct" => Ok(Strategy::Direct),
            _ => Err(MzvError::domain(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalConfig {
    pub digits: u32,
    pub strategy: Strategy,
    /// Fixed outer truncation; `None` picks it from the tail bound.
    pub truncation: Option<u64>,
    /// Residuals up to `10^-k` pass; `None` means `k = digits - 5`.
    pub tolerance_digits: Option<u32>,
}

pub const MIN_DIGITS: u32 = 10;

impl EvalConfig {
    pub fn new(digits: u32) -> Result<EvalConfig> {
        if digits < MIN_DIGITS {
            return Err(MzvError::domain(format!("digits must be at least {MIN_DIGITS}, got {digits}")));
        }
        Ok(EvalConfig { digits, strategy: Strategy::Holder, truncation: None, tolerance_digits: None })
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> EvalConfig {
        self.strategy = strategy;
        self
    }

    pub fn with_truncation(mut self, n: Option<u64>) -> EvalConfig {
        self.truncation = n;
        self
    }

    pub fn with_tolerance_digits(mut self, k: Option<u32>) -> EvalConfig {
        self.tolerance_digits = k;
        self
    }

    /// The `k` of the pass threshold `10^-k`.
    pub fn tolerance(&self) -> u32 {
        self.tolerance_digits.unwrap_or(self.digits - 5)
    }
}

impl Default for EvalConfig {
    fn default() -> EvalConfig {
        EvalConfig { digits: 30, strategy: Strategy::Holder, truncation: None, tolerance_digits: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Composition, MzvCombo};
    use num_rational::BigRational;

    fn z(parts: &[u32]) -> Composition {
        Composition::from_parts(parts)
    }

    #[test]
    fn config_rejects_low_digits() {
        assert!(EvalConfig::new(9).is_err());
        assert!(EvalConfig::new(10).is_ok());
    }

    #[test]
    fn zeta_small_values() {
        let ev = Evaluator::new(EvalConfig::new(20).unwrap());
        let z2 = ev.eval_mzv(&z(&[2])).unwrap();
        assert!(z2.value_sci(20).starts_with("1.64493406684822643"), "{z2}");
        let z3 = ev.eval_mzv(&z(&[3])).unwrap();
        let z21 = ev.eval_mzv(&z(&[2, 1])).unwrap();
        assert!(ev.is_numerically_zero(&z3.sub(&z21)));
        assert!(z3.err_le_pow10(25));
        assert!(ev.eval_mzv(&z(&[1, 2])).is_err());
    }

    #[test]
    fn combo_constant_is_exact() {
        let ev = Evaluator::new(EvalConfig::default());
        let c = MzvCombo::constant(BigRational::new(5.into(), 2.into()));
        let v = ev.eval_combo(&c).unwrap();
        assert!(v.contains(&BigRational::new(5.into(), 2.into())));
        assert_eq!(v.err_ulps(), &num_bigint::BigUint::from(0u32));
    }

    #[test]
    fn cached_value_is_reused() {
        let ev = Evaluator::new(EvalConfig::new(15).unwrap());
        let a = ev.eval_mzv(&z(&[4])).unwrap();
        assert_eq!(ev.cache().len(), 1);
        let b = ev.eval_mzv(&z(&[4])).unwrap();
        assert_eq!(a, b);
    }
}
