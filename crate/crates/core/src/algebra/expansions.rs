//! Closed-form expansions of products of MZVs, as printed in the literature,
//! alongside their algorithmic counterparts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{MzvError, Result};

use super::{binomial, stuffle, Composition, MzvCombo, Rational};

fn b(n: i64, k: i64) -> BigInt {
    binomial(n, k)
}

fn add(out: &mut MzvCombo, parts: &[u32], k: BigInt) {
    if !k.is_zero() {
        out.add_term(Composition::from_parts(parts), Rational::from_integer(k));
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(MzvError::domain(what.to_string()))
    }
}

/// Euler's decomposition of `zeta(s1) zeta(s2)` in the symmetric form
/// `sum [C(t1-1, s1-1) + C(t1-1, s2-1)] zeta(t1, t2)`; equals the shuffle product.
pub fn euler_decomposition(s1: u32, s2: u32) -> Result<MzvCombo> {
    require(s1 >= 2 && s2 >= 2, "euler_decomposition needs s1, s2 >= 2")?;
    let w = s1 + s2;
    let mut out = MzvCombo::zero();
    for t1 in 2..w {
        let t2 = w - t1;
        let k = b(t1 as i64 - 1, s1 as i64 - 1) + b(t1 as i64 - 1, s2 as i64 - 1);
        add(&mut out, &[t1, t2], k);
    }
    Ok(out)
}

/// The decomposition with the second binomial read as `C(t2-1, s2-1)`.
/// Kept only to document that this reading does not give the product.
pub fn literal_euler_decomposition(s1: u32, s2: u32) -> Result<MzvCombo> {
    require(s1 >= 2 && s2 >= 2, "euler_decomposition needs s1, s2 >= 2")?;
    let w = s1 + s2;
    let mut out = MzvCombo::zero();
    for t1 in 2..w {
        let t2 = w - t1;
        let k = b(t1 as i64 - 1, s1 as i64 - 1) + b(t2 as i64 - 1, s2 as i64 - 1);
        add(&mut out, &[t1, t2], k);
    }
    Ok(out)
}

/// Two-sum expansion of `zeta(s1, s2) zeta(s3)`.
pub fn expand_2x1(s1: u32, s2: u32, s3: u32) -> Result<MzvCombo> {
    require(s1 >= 2 && s3 >= 2 && s2 >= 1, "expand_2x1 needs s1, s3 >= 2 and s2 >= 1")?;
    let (s1i, s2i, s3i) = (s1 as i64, s2 as i64, s3 as i64);
    let mut out = MzvCombo::zero();
    let w = s1 + s3;
    for t1 in 2..w {
        let t2 = w - t1;
        add(&mut out, &[t1, t2, s2], b(t1 as i64 - 1, s3i - 1));
    }
    let w = s1 + s2 + s3;
    for t1 in 2..w {
        for t2 in 1..(w - t1) {
            let t3 = w - t1 - t2;
            let (t1i, t2i, t3i) = (t1 as i64, t2 as i64, t3 as i64);
            let k = b(t1i - 1, s1i - 1) * (b(t2i - 1, s2i - t3i) + b(t2i - 1, s2i - 1));
            add(&mut out, &[t1, t2, t3], k);
        }
    }
    Ok(out)
}

/// Three-block expansion of `zeta(s1, s2) zeta(s3, s4)`: two triple sums and
/// one quadruple sum with products of binomials.
pub fn guo_xie_expand(s1: u32, s2: u32, s3: u32, s4: u32) -> Result<MzvCombo> {
    require(
        s1 >= 2 && s3 >= 2 && s2 >= 1 && s4 >= 1,
        "guo_xie_expand needs s1, s3 >= 2 and s2, s4 >= 1",
    )?;
    let [s1i, s2i, s3i, s4i] = [s1, s2, s3, s4].map(|s| s as i64);
    let mut out = MzvCombo::zero();

    let w = s1 + s2 + s3;
    for t1 in 2..w {
        for t2 in 1..(w - t1) {
            let t3 = w - t1 - t2;
            let k = b(t1 as i64 - 1, s1i - 1) * b(t2 as i64 - 1, s2i - 1);
            add(&mut out, &[t1, t2, t3, s4], k);
        }
    }
    let w = s1 + s3 + s4;
    for t1 in 2..w {
        for t2 in 1..(w - t1) {
            let t3 = w - t1 - t2;
            let k = b(t1 as i64 - 1, s3i - 1) * b(t2 as i64 - 1, s4i - 1);
            add(&mut out, &[t1, t2, t3, s2], k);
        }
    }
    let w = s1 + s2 + s3 + s4;
    for t1 in 2..w {
        for t2 in 1..(w - t1) {
            for t3 in 1..(w - t1 - t2) {
                let t4 = w - t1 - t2 - t3;
                let [t1i, t2i, t3i, t4i] = [t1, t2, t3, t4].map(|t| t as i64);
                let mid = b(t2i - 1, t1i + t2i - s1i - s3i);
                let k = b(t1i - 1, s1i - 1) * &mid * (b(t3i - 1, s4i - t4i) + b(t3i - 1, s4i - 1))
                    + b(t1i - 1, s3i - 1) * &mid * (b(t3i - 1, s2i - t4i) + b(t3i - 1, s2i - 1));
                add(&mut out, &[t1, t2, t3, t4], k);
            }
        }
    }
    Ok(out)
}

/// Both readings of the thirteen-term stuffle expansion of
/// `zeta(s1, s2) zeta(s3, s4)`.
#[derive(Clone, Debug)]
pub struct StuffleThirteen {
    /// The quasi-shuffle recursion.
    pub algorithmic: MzvCombo,
    /// The printed list, which repeats `zeta(s1+s3, s2, s4)` and omits
    /// `zeta(s1+s3, s4, s2)`.
    pub literal: MzvCombo,
}

pub fn stuffle_13_term(s1: u32, s2: u32, s3: u32, s4: u32) -> Result<StuffleThirteen> {
    require(
        s1 >= 2 && s3 >= 2 && s2 >= 1 && s4 >= 1,
        "stuffle_13_term needs s1, s3 >= 2 and s2, s4 >= 1",
    )?;
    let algorithmic = stuffle(&Composition::from_parts(&[s1, s2]), &Composition::from_parts(&[s3, s4]));
    let mut literal = MzvCombo::zero();
    for idx in [
        vec![s3, s4, s1, s2],
        vec![s3, s1, s4, s2],
        vec![s1, s3, s4, s2],
        vec![s1, s3, s2, s4],
        vec![s1, s2, s3, s4],
        vec![s3, s1, s2, s4],
        vec![s1 + s3, s2, s4],
        vec![s1, s2 + s3, s4],
        vec![s1 + s3, s2, s4],
        vec![s3, s1 + s4, s2],
        vec![s1, s3, s2 + s4],
        vec![s3, s1, s2 + s4],
        vec![s1 + s3, s2 + s4],
    ] {
        literal.add_int(&idx, 1);
    }
    Ok(StuffleThirteen { algorithmic, literal })
}
