use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MzvError, Result};

/// A binary fixed-point real `mant / 2^bits` together with an absolute error
/// bound `err / 2^bits`.
///
/// Every operation widens `err` enough to cover both the propagated input
/// error and its own rounding, so the true value always lies in
/// `[value - err, value + err]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    err: BigUint,
    bits: u32,
}

/// Bits needed for `digits` decimal digits plus ten guard digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64 + 10.0) * std::f64::consts::LOG2_10).ceil() as u32 + 4
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    // Round half away from zero; d > 0.
    let two = BigInt::from(2);
    let (q, r) = n.div_rem(d);
    if (&r * &two).abs() >= *d {
        if n.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn ceil_div_u(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn ceil_shr(n: &BigUint, s: u32) -> BigUint {
    let q = n >> s;
    if (&q << s) == *n {
        q
    } else {
        q + 1u32
    }
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal { mant: BigInt::zero(), err: BigUint::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        BigReal { mant: BigInt::one() << bits, err: BigUint::zero(), bits }
    }

    pub fn from_parts(mant: BigInt, err: BigUint, bits: u32) -> Self {
        BigReal { mant, err, bits }
    }

    /// Nearest fixed-point value to `q`; exact rationals get a one-ulp bound
    /// unless the conversion is exact.
    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let num = q.numer() << bits;
        let den = q.denom();
        let exact = num.is_multiple_of(den);
        let mant = round_div(&num, den);
        let err = if exact { BigUint::zero() } else { BigUint::one() };
        BigReal { mant, err, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn err_ulps(&self) -> &BigUint {
        &self.err
    }

    pub fn with_extra_err(mut self, ulps: &BigUint) -> Self {
        self.err += ulps;
        self
    }

    /// Re-expresses the value at a different scale. Widening is exact,
    /// narrowing rounds and adds one ulp.
    pub fn rescale(&self, bits: u32) -> BigReal {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                BigReal { mant: &self.mant << s, err: &self.err << s, bits }
            }
            Ordering::Less => {
                let s = self.bits - bits;
                let d = BigInt::one() << s;
                let mant = round_div(&self.mant, &d);
                let err = ceil_shr(&self.err, s) + 1u32;
                BigReal { mant, err, bits }
            }
        }
    }

    fn aligned(a: &BigReal, b: &BigReal) -> (BigReal, BigReal) {
        let bits = a.bits.max(b.bits);
        (a.rescale(bits), b.rescale(bits))
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let (a, b) = Self::aligned(self, other);
        BigReal { mant: a.mant + b.mant, err: a.err + b.err, bits: a.bits }
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        let (a, b) = Self::aligned(self, other);
        BigReal { mant: a.mant - b.mant, err: a.err + b.err, bits: a.bits }
    }

    pub fn neg(&self) -> BigReal {
        BigReal { mant: -self.mant.clone(), err: self.err.clone(), bits: self.bits }
    }

    /// Product with first-order and second-order error propagation:
    /// `|x| e_y + |y| e_x + e_x e_y`, plus one ulp of rounding.
    pub fn mul(&self, other: &BigReal) -> BigReal {
        let (a, b) = Self::aligned(self, other);
        let bits = a.bits;
        let prod = &a.mant * &b.mant;
        let mant = round_div(&prod, &(BigInt::one() << bits));
        let ma = a.mant.magnitude();
        let mb = b.mant.magnitude();
        let raw = ma * &b.err + mb * &a.err + &a.err * &b.err;
        let rounding = if (&mant << bits) == prod { 0u32 } else { 1u32 };
        let err = ceil_shr(&raw, bits) + rounding;
        BigReal { mant, err, bits }
    }

    /// Multiplication by an exact rational.
    pub fn mul_rational(&self, q: &BigRational) -> BigReal {
        let num = &self.mant * q.numer();
        let den = q.denom();
        let mant = round_div(&num, den);
        let rounding = if num.is_multiple_of(den) { 0u32 } else { 1u32 };
        let scaled = &self.err * q.numer().magnitude();
        let err = ceil_div_u(&scaled, den.magnitude()) + rounding;
        BigReal { mant, err, bits: self.bits }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, d: &BigUint) -> BigReal {
        let di = BigInt::from_biguint(Sign::Plus, d.clone());
        let mant = round_div(&self.mant, &di);
        let rounding = if self.mant.is_multiple_of(&di) { 0u32 } else { 1u32 };
        let err = ceil_div_u(&self.err, d) + rounding;
        BigReal { mant, err, bits: self.bits }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_f64(&self.mant, self.bits)
    }

    /// Upper bound on the error as an `f64`.
    pub fn err_f64(&self) -> f64 {
        let e = BigInt::from_biguint(Sign::Plus, self.err.clone());
        let v = ratio_f64(&e, self.bits);
        if v == 0.0 && !self.err.is_zero() {
            f64::MIN_POSITIVE
        } else {
            v * (1.0 + 1e-12)
        }
    }

    /// `|value| <= threshold` where the threshold is `10^-k` (exact test).
    pub fn abs_le_pow10(&self, k: i32) -> bool {
        cmp_scaled_pow10(self.mant.magnitude(), self.bits, k) != Ordering::Greater
    }

    /// `|value| <= err` (exact test on the stored bound).
    pub fn abs_le_err(&self) -> bool {
        *self.mant.magnitude() <= self.err
    }

    /// True when the error bound itself is at most `10^-k`.
    pub fn err_le_pow10(&self, k: i32) -> bool {
        cmp_scaled_pow10(&self.err, self.bits, k) != Ordering::Greater
    }

    /// Does `[value - err, value + err]` contain the rational `q`?
    pub fn contains(&self, q: &BigRational) -> bool {
        // |mant * den - num * 2^bits| <= err * den
        let lhs = &self.mant * q.denom() - (q.numer() << self.bits);
        let rhs = BigInt::from_biguint(Sign::Plus, self.err.clone()) * q.denom();
        lhs.abs() <= rhs
    }

    /// Fixed-point decimal with `places` fractional digits, rounded to
    /// nearest. The rounding error is at most half a unit in the last place.
    pub fn to_fixed_decimal(&self, places: u32) -> String {
        let scaled = &self.mant * BigInt::from(10u32).pow(places);
        let q = round_div(&scaled, &(BigInt::one() << self.bits));
        format_fixed(&q, places)
    }

    /// Parses a fixed-point decimal string into a value at `bits`, charging
    /// `decimal_err` (an extra bound given in decimal) plus conversion rounding.
    pub fn from_decimal(value: &str, err: &str, bits: u32) -> Result<BigReal> {
        let q = parse_decimal(value)?;
        let e = parse_decimal(err)?;
        if e.is_negative() {
            return Err(MzvError::domain(format!("negative error bound {err:?}")));
        }
        let mut v = BigReal::from_rational(&q, bits);
        let scaled = e.numer() << bits;
        let e_ulps = ceil_div_u(scaled.magnitude(), e.denom().magnitude());
        v.err += e_ulps;
        Ok(v)
    }

    /// Scientific notation with `sig` significant digits, rounded to nearest.
    pub fn value_sci(&self, sig: usize) -> String {
        sci_string(&self.mant, self.bits, sig, false)
    }

    /// Scientific notation of the error bound, rounded up.
    pub fn err_sci(&self, sig: usize) -> String {
        let e = BigInt::from_biguint(Sign::Plus, self.err.clone());
        sci_string(&e, self.bits, sig, true)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value_sci(20), self.err_sci(3))
    }
}

fn ratio_f64(m: &BigInt, bits: u32) -> f64 {
    let len = m.bits() as i64;
    if len <= 1000 {
        let shift = (len - 60).max(0);
        let top = (m >> shift as u32).to_f64().unwrap_or(0.0);
        top * 2f64.powi((shift - bits as i64) as i32)
    } else {
        f64::INFINITY
    }
}

/// Compares `n / 2^bits` with `10^-k`.
fn cmp_scaled_pow10(n: &BigUint, bits: u32, k: i32) -> Ordering {
    // n / 2^bits  vs  10^-k   <=>  n * 10^k vs 2^bits
    let one = BigUint::one() << bits;
    if k >= 0 {
        (n * BigUint::from(10u32).pow(k as u32)).cmp(&one)
    } else {
        n.cmp(&(one * BigUint::from(10u32).pow((-k) as u32)))
    }
}

fn format_fixed(q: &BigInt, places: u32) -> String {
    let neg = q.is_negative();
    let mut digits = q.magnitude().to_str_radix(10);
    let p = places as usize;
    if digits.len() <= p {
        digits = "0".repeat(p + 1 - digits.len()) + &digits;
    }
    let (int, frac) = digits.split_at(digits.len() - p);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(int);
    if p > 0 {
        s.push('.');
        s.push_str(frac);
    }
    s
}

/// Parses `[-]digits[.digits][e[+-]exp]` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || MzvError::domain(format!("bad decimal {s:?}"));
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all = format!("{int}{frac}");
    let n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if e >= 0 {
        BigRational::from_integer(n * ten.pow(e as u32))
    } else {
        BigRational::new(n, ten.pow((-e) as u32))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

fn sci_string(m: &BigInt, bits: u32, sig: usize, round_up: bool) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    let neg = m.is_negative();
    let mag = BigInt::from_biguint(Sign::Plus, m.magnitude().clone());
    // Estimate the decimal exponent, then fix it exactly.
    let approx = (mag.bits() as f64 - bits as f64) * std::f64::consts::LOG10_2;
    let mut e = approx.floor() as i64;
    let ten = BigInt::from(10);
    // value = mag / 2^bits; scaled = value * 10^(sig-1-e)
    let scaled = |e: i64| -> (BigInt, bool) {
        let p = sig as i64 - 1 - e;
        let (num, den) = if p >= 0 {
            (&mag * ten.pow(p as u32), BigInt::one() << bits)
        } else {
            (mag.clone(), (BigInt::one() << bits) * ten.pow((-p) as u32))
        };
        if round_up {
            let (q, r) = num.div_rem(&den);
            let exact = r.is_zero();
            (if exact { q } else { q + 1 }, exact)
        } else {
            (round_div(&num, &den), false)
        }
    };
    let lower = ten.pow(sig as u32 - 1);
    let upper = ten.pow(sig as u32);
    let mut digits;
    loop {
        digits = scaled(e).0;
        if digits >= upper {
            e += 1;
        } else if digits < lower {
            e -= 1;
        } else {
            break;
        }
    }
    let ds = digits.to_str_radix(10);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&ds[..1]);
    if sig > 1 {
        s.push('.');
        s.push_str(&ds[1..]);
    }
    s.push_str(&format!("e{e}"));
    s
}
