use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;

use crate::algebra::{BinaryWord, Composition, MzvCombo, ProductCombo};
use crate::error::{MzvError, Result};

use super::bigreal::{bits_for_digits, BigReal};
use super::cache::{CacheRecord, ValueCache};
use super::polylog::{direct_tail_bound, eval_direct, polylog_bits};
use super::{EvalConfig, Strategy};

/// Largest outer truncation the direct strategy picks on its own.
pub const DIRECT_MAX_TERMS: u64 = 1 << 20;

/// Smallest power-of-two truncation whose direct-sum tail estimate is at
/// most `target`, capped at [`DIRECT_MAX_TERMS`].
pub fn direct_truncation(c: &Composition, target: f64) -> u64 {
    let mut n = 64u64.max(c.depth() as u64);
    while n < DIRECT_MAX_TERMS && !(direct_tail_bound(c, n) <= target) {
        n *= 2;
    }
    n
}

/// Evaluates MZVs and their combinations at a fixed configuration, sharing a
/// value cache and memoizing polylogarithm values at 1/2.
#[derive(Debug)]
pub struct Evaluator {
    cfg: EvalConfig,
    bits: u32,
    cache: Arc<ValueCache>,
    li_half: Mutex<HashMap<Composition, BigReal>>,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Evaluator {
        Evaluator::with_cache(cfg, Arc::new(ValueCache::new()))
    }

    pub fn with_cache(cfg: EvalConfig, cache: Arc<ValueCache>) -> Evaluator {
        let bits = bits_for_digits(cfg.digits);
        Evaluator { cfg, bits, cache, li_half: Mutex::new(HashMap::new()) }
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn cache(&self) -> &Arc<ValueCache> {
        &self.cache
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `zeta(c)`. Values always pass through their cache record, so a cold
    /// and a warm run return identical numbers.
    pub fn eval_mzv(&self, c: &Composition) -> Result<BigReal> {
        if c.is_empty() {
            return Err(MzvError::domain("zeta of the empty index"));
        }
        if !c.is_admissible() {
            return Err(MzvError::domain(format!("inadmissible index ({c}): divergent series")));
        }
        let digits = self.cfg.digits;
        if let Some(rec) = self.cache.get(c, digits) {
            return rec.to_value(self.bits);
        }
        let raw = match self.cfg.strategy {
            Strategy::Holder => self.holder(c)?,
            Strategy::Direct => {
                let n = self.cfg.truncation.unwrap_or_else(|| direct_truncation(c, 1e-6));
                eval_direct(c, n, self.bits)?
            }
        };
        let rec = CacheRecord::from_value(c.clone(), digits, &raw);
        let value = rec.to_value(self.bits)?;
        if self.cfg.strategy == Strategy::Holder && self.cfg.truncation.is_none() {
            self.cache.insert(rec);
        }
        Ok(value)
    }

    /// Hölder convolution: split the word at every position and pair the
    /// reversed-dual prefix with the suffix, both as polylogarithms at 1/2.
    fn holder(&self, c: &Composition) -> Result<BigReal> {
        let w = BinaryWord::encode(c)?;
        let mut total = BigReal::zero(self.bits);
        for j in 0..=w.len() {
            let (pre, post) = w.split_at(j);
            let left = self.li_half_of(&pre.reverse_swap().decode_any()?)?;
            let right = self.li_half_of(&post.decode_any()?)?;
            total = total.add(&left.mul(&right));
        }
        Ok(total)
    }

    fn li_half_of(&self, c: &Composition) -> Result<BigReal> {
        if c.is_empty() {
            return Ok(BigReal::one(self.bits));
        }
        if let Some(v) = self.li_half.lock().expect("memo lock poisoned").get(c) {
            return Ok(v.clone());
        }
        let half = BigRational::new(1.into(), 2.into());
        let v = polylog_bits(c, &half, self.bits, self.cfg.truncation)?;
        self.li_half.lock().expect("memo lock poisoned").insert(c.clone(), v.clone());
        Ok(v)
    }

    /// Multiple polylogarithm at this evaluator's precision.
    pub fn eval_polylog(&self, c: &Composition, z: &BigRational) -> Result<BigReal> {
        polylog_bits(c, z, self.bits, self.cfg.truncation)
    }

    /// `sum coeff * zeta(c)`; the empty index contributes its coefficient
    /// exactly.
    pub fn eval_combo(&self, x: &MzvCombo) -> Result<BigReal> {
        let mut total = BigReal::zero(self.bits);
        for (c, k) in x.iter() {
            let term = if c.is_empty() {
                BigReal::from_rational(k, self.bits)
            } else {
                let v = self
                    .eval_mzv(c)
                    .map_err(|e| MzvError::domain(format!("term z({c}): {e}")))?;
                v.mul_rational(k)
            };
            total = total.add(&term);
        }
        Ok(total)
    }

    /// `sum coeff * prod zeta(f_i)` with first-order error propagation.
    pub fn eval_product(&self, x: &ProductCombo) -> Result<BigReal> {
        let mut total = BigReal::zero(self.bits);
        for t in &x.terms {
            let mut acc = BigReal::one(self.bits);
            for f in &t.factors {
                let v = self
                    .eval_mzv(f)
                    .map_err(|e| MzvError::domain(format!("factor z({f}): {e}")))?;
                acc = acc.mul(&v);
            }
            total = total.add(&acc.mul_rational(&t.coeff));
        }
        Ok(total)
    }

    /// Passes when `|x| <= max(err, 10^-k)`, `k` being the configured
    /// tolerance (`digits - 5` unless overridden).
    pub fn is_numerically_zero(&self, x: &BigReal) -> bool {
        x.abs_le_err() || x.abs_le_pow10(self.cfg.tolerance() as i32)
    }
}

/// `zeta(c)` with a throwaway evaluator.
pub fn eval_mzv(c: &Composition, cfg: &EvalConfig) -> Result<BigReal> {
    Evaluator::new(cfg.clone()).eval_mzv(c)
}

/// Rational combination with a throwaway evaluator.
pub fn eval_combo(x: &MzvCombo, cfg: &EvalConfig) -> Result<BigReal> {
    Evaluator::new(cfg.clone()).eval_combo(x)
}

/// Product combination with a throwaway evaluator.
pub fn eval_product(x: &ProductCombo, cfg: &EvalConfig) -> Result<BigReal> {
    Evaluator::new(cfg.clone()).eval_product(x)
}
