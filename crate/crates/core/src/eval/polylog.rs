use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Composition;
use crate::error::{MzvError, Result};

use super::bigreal::{bits_for_digits, BigReal};
use super::EvalConfig;

/// Upper bound for the tail `sum_{k > n} z^k k^(depth-1)` of a depth-`depth`
/// polylogarithm series: `z^(n+1) (n+1)^(d-1) / (1 - z ((n+2)/(n+1))^(d-1))`.
///
/// Every summand of `Li_s(z)` with outer index `k` is at most
/// `z^k C(k-1, d-1) <= z^k k^(d-1)`, and consecutive bounds shrink by at most
/// the ratio in the denominator. Returns `None` when that ratio is not < 1.
pub fn polylog_tail_bound(z: &BigRational, depth: usize, n: u64) -> Option<BigRational> {
    let m = depth.saturating_sub(1) as u32;
    let n1 = BigInt::from(n + 1);
    let n2 = BigInt::from(n + 2);
    let ratio = z * BigRational::new(n2.pow(m), n1.pow(m));
    if ratio >= BigRational::one() {
        return None;
    }
    let head = num_traits::pow(z.clone(), (n + 1) as usize) * BigRational::from_integer(n1.pow(m));
    Some(head / (BigRational::one() - ratio))
}

fn log2_tail(z: f64, depth: usize, n: u64) -> f64 {
    let m = depth.saturating_sub(1) as f64;
    let ratio = z * ((n as f64 + 2.0) / (n as f64 + 1.0)).powf(m);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    (n as f64 + 1.0) * z.log2() + m * (n as f64 + 1.0).log2() - (1.0 - ratio).log2()
}

/// Smallest truncation whose tail bound is below `2^-target_bits`.
pub fn polylog_truncation(z: &BigRational, depth: usize, target_bits: u32) -> u64 {
    let zf = z.to_f64().unwrap_or(0.5);
    let target = -(target_bits as f64);
    let mut n = 1u64;
    while log2_tail(zf, depth, n) > target - 1.0 {
        n += 1 + n / 8;
    }
    // Step back to the smallest admissible n, confirming exactly.
    while n > 1 && log2_tail(zf, depth, n - 1) <= target - 1.0 {
        n -= 1;
    }
    n
}

fn ceil_ulps(q: &BigRational, bits: u32) -> BigUint {
    let num = q.numer() << bits;
    let (d, r) = (num.clone() / q.denom(), num % q.denom());
    let c = if r.is_zero() { d } else { d + 1 };
    c.to_biguint().unwrap_or_default()
}

/// `Li_{s_1,...,s_d}(z) = sum_{k_1 > ... > k_d >= 1} z^{k_1} / (k_1^{s_1} ... k_d^{s_d})`
/// at `bits` of fixed-point precision, truncated after `n_terms` outer terms
/// (or automatically so that the tail is below one ulp).
pub fn polylog_bits(
    c: &Composition,
    z: &BigRational,
    bits: u32,
    n_terms: Option<u64>,
) -> Result<BigReal> {
    if !z.is_positive() || *z >= BigRational::one() {
        return Err(MzvError::domain(format!("polylog argument {z} outside (0, 1)")));
    }
    if c.is_empty() {
        return Ok(BigReal::one(bits));
    }
    let parts = c.parts();
    let depth = parts.len();
    let n = n_terms.unwrap_or_else(|| polylog_truncation(z, depth, bits + 2));
    let tail = polylog_tail_bound(z, depth, n).ok_or_else(|| {
        MzvError::domain(format!("truncation {n} too small for a tail bound at depth {depth}"))
    })?;

    // inner[i] = sum over k >= m_i > ... > m_{d-1} >= 1 of prod 1/m_t^{s_t}
    let mut inner: Vec<BigReal> = vec![BigReal::zero(bits); depth];
    inner[depth - 1] = BigReal::one(bits); // sentinel for the innermost level
    let mut zk = BigReal::one(bits);
    let mut total = BigReal::zero(bits);
    for k in 1..=n {
        zk = zk.mul_rational(z);
        let kk = BigUint::from(k);
        let outer = if depth == 1 { BigReal::one(bits) } else { inner[0].clone() };
        let term = zk.mul(&outer).div_int(&kk.pow(parts[0]));
        total = total.add(&term);
        // Update levels 0..depth-1 in increasing order so each reads the
        // previous step's deeper level.
        for i in 0..depth.saturating_sub(1) {
            let deeper = if i + 1 == depth - 1 { BigReal::one(bits) } else { inner[i + 1].clone() };
            let add = deeper.div_int(&kk.pow(parts[i + 1]));
            inner[i] = inner[i].add(&add);
        }
    }
    Ok(total.with_extra_err(&ceil_ulps(&tail, bits)))
}

/// Multiple polylogarithm at a rational point in `(0, 1)`.
pub fn eval_polylog(c: &Composition, z: &BigRational, cfg: &EvalConfig) -> Result<BigReal> {
    polylog_bits(c, z, bits_for_digits(cfg.digits), cfg.truncation)
}

/// Coarse tail bound for the truncated nested sum of `zeta(s_1, ..., s_d)`:
/// `int_N^inf (1 + ln x)^m x^-s / m! dx` with `m = d - 1`, using
/// `H_{k-1}^m / m!` as a bound for the inner sums.
pub fn direct_tail_bound(c: &Composition, n: u64) -> f64 {
    let s = c.parts()[0] as f64;
    let m = c.depth() - 1;
    let nf = n as f64;
    let l = 1.0 + nf.ln();
    // I_j = (1+ln N)^j N^(1-s)/(s-1) + j/(s-1) I_{j-1}
    let base = nf.powf(1.0 - s) / (s - 1.0);
    let mut i = base;
    for j in 1..=m {
        i = l.powi(j as i32) * base + (j as f64) / (s - 1.0) * i;
    }
    let fact: f64 = (1..=m).map(|x| x as f64).product();
    i / fact
}

/// Truncated nested summation of the defining series, with the outer index
/// running up to `n`. Slow; only meant as an independent oracle.
pub fn eval_direct(c: &Composition, n: u64, bits: u32) -> Result<BigReal> {
    c.check_admissible()?;
    if c.is_empty() {
        return Err(MzvError::domain("direct evaluation of the empty index"));
    }
    let depth = c.depth();
    if (n as usize) < depth {
        return Err(MzvError::domain(format!("truncation {n} below depth {depth}")));
    }
    let parts = c.parts();
    let m = (depth - 1) as f64;
    let s = parts[0] as f64;
    if m >= s * (1.0 + (n as f64).ln()) {
        return Err(MzvError::domain(format!("truncation {n} too small for the tail estimate")));
    }
    let mut inner: Vec<BigReal> = vec![BigReal::zero(bits); depth];
    let mut total = BigReal::zero(bits);
    for k in 1..=n {
        let kk = BigUint::from(k);
        let outer = if depth == 1 { BigReal::one(bits) } else { inner[0].clone() };
        total = total.add(&outer.div_int(&kk.pow(parts[0])));
        for i in 0..depth - 1 {
            let deeper = if i + 1 == depth - 1 { BigReal::one(bits) } else { inner[i + 1].clone() };
            inner[i] = inner[i].add(&deeper.div_int(&kk.pow(parts[i + 1])));
        }
    }
    let tail = direct_tail_bound(c, n) * 1.01;
    let tail_ulps = f64_to_ulps(tail, bits);
    Ok(total.with_extra_err(&tail_ulps))
}

fn f64_to_ulps(x: f64, bits: u32) -> BigUint {
    if x <= 0.0 {
        return BigUint::zero();
    }
    let q = BigRational::from_float(x).unwrap_or_else(BigRational::one);
    let num = q.numer() << bits;
    let c = (num.clone() / q.denom()) + BigInt::one();
    BigInt::to_biguint(&c.max(BigInt::from_biguint(Sign::Plus, BigUint::one()))).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn tail_bound_shrinks() {
        let a = polylog_tail_bound(&half(), 3, 50).unwrap();
        let b = polylog_tail_bound(&half(), 3, 100).unwrap();
        assert!(b < a);
        assert!(polylog_tail_bound(&half(), 3, 1).is_none());
    }

    #[test]
    fn truncation_meets_target() {
        for d in 1..6 {
            let n = polylog_truncation(&half(), d, 150);
            let t = polylog_tail_bound(&half(), d, n).unwrap();
            let lim = BigRational::new(1.into(), BigInt::one() << 150u32);
            assert!(t <= lim, "depth {d}");
        }
    }

    #[test]
    fn empty_and_domain() {
        let c = Composition::empty();
        let v = polylog_bits(&c, &half(), 64, None).unwrap();
        assert!(v.contains(&BigRational::one()));
        assert!(polylog_bits(&Composition::from_parts(&[2]), &BigRational::one(), 64, None).is_err());
        assert!(polylog_bits(&Composition::from_parts(&[2]), &BigRational::zero(), 64, None).is_err());
    }

    #[test]
    fn direct_small_partial_sum() {
        // zeta(2,1) truncated at N = 2: only k1 = 2, k2 = 1 contributes 1/4.
        let v = eval_direct(&Composition::from_parts(&[2, 1]), 2, 64).unwrap();
        let quarter = BigRational::new(1.into(), 4.into());
        let rounded = BigReal::from_parts(v.mantissa().clone(), Default::default(), v.bits());
        assert!(rounded.sub(&BigReal::from_rational(&quarter, 64)).abs_le_pow10(15));
    }
}
