//! Parameter-free weighted sum formulas and the intermediate displays of
//! their derivations. Every function returns `lhs - rhs`.

use crate::algebra::{compositions_of, MzvCombo, Rational};
use crate::error::Result;

use super::terms::{int, pairs, quads, triples, Acc};

fn half(k: i64) -> Rational {
    Rational::new(k.into(), 2.into())
}

fn p2(e: u32) -> i64 {
    1i64 << e
}

/// `sum zeta(j, k) = zeta(n)`.
pub fn euler_sum(n: u32) -> Result<MzvCombo> {
    sum_formula(n, 2)
}

/// Sum of all admissible `zeta(k)` of weight `w` and depth `d`, minus `zeta(w)`.
pub fn sum_formula(w: u32, d: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for c in compositions_of(w) {
        if c.depth() == d as usize && c.is_admissible() {
            acc.add_int(c.parts(), 1)?;
        }
    }
    acc.add_int(&[w], -1)?;
    Ok(acc.combo)
}

/// `sum 2^j zeta(j, k) = (n + 1) zeta(n)`.
pub fn ohno_zudilin(n: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for (j, k) in pairs(n) {
        acc.add_int(&[j, k], p2(j))?;
    }
    acc.add_int(&[n], -(n as i64 + 1))?;
    Ok(acc.combo)
}

/// `sum k zeta(k, n-k) = zeta(2, n-2) + 2 zeta(n) - (n-2) zeta(n-1, 1)`.
pub fn g2_der(n: u32) -> Result<MzvCombo> {
    let n_ = n as i64;
    let mut acc = Acc::new();
    for (j, k) in pairs(n) {
        acc.add_int(&[j, k], j as i64)?;
    }
    acc.add_int(&[2, n - 2], -1)?;
    acc.add_int(&[n], -2)?;
    acc.add_int(&[n - 1, 1], n_ - 2)?;
    Ok(acc.combo)
}

/// The second-moment analogue of [`g2_der`].
pub fn g2_derder(n: u32) -> Result<MzvCombo> {
    let n_ = n as i64;
    let mut acc = Acc::new();
    for (j, k) in pairs(n) {
        acc.add_int(&[j, k], (j * j) as i64)?;
    }
    acc.add_int(&[2, n - 2], -3)?;
    acc.add_int(&[3, n - 3], -2)?;
    acc.add_int(&[n], -6)?;
    acc.add_int(&[n - 2, 2], 2 * n_ - 6)?;
    acc.add_int(&[n - 1, 1], n_ * (n_ - 2))?;
    Ok(acc.combo)
}

/// `sum_{j+k=n-1} zeta(j, 1, k) = zeta(n-1, 1) + zeta(2, n-2)`.
pub fn hoffman_j1k(n: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for (j, k) in pairs(n - 1) {
        acc.add_int(&[j, 1, k], 1)?;
    }
    acc.add_int(&[n - 1, 1], -1)?;
    acc.add_int(&[2, n - 2], -1)?;
    Ok(acc.combo)
}

/// `sum_{j+k=n-1} zeta(j, k, 1) = zeta(n-1, 1) + zeta(n-2, 2)`.
pub fn hoffman_jk1(n: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for (j, k) in pairs(n - 1) {
        acc.add_int(&[j, k, 1], 1)?;
    }
    acc.add_int(&[n - 1, 1], -1)?;
    acc.add_int(&[n - 2, 2], -1)?;
    Ok(acc.combo)
}

/// `sum_{j+k=n-2} zeta(2, j, k) = zeta(3, n-3) + zeta(2, n-2)`.
pub fn hoffman_l2(n: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for j in 1..n - 2 {
        acc.add_int(&[2, j, n - 2 - j], 1)?;
    }
    acc.add_int(&[3, n - 3], -1)?;
    acc.add_int(&[2, n - 2], -1)?;
    Ok(acc.combo)
}

/// `sum_{k=2}^{n-1} zeta(k, 1, n-k) = zeta(2, n-1) + zeta(n, 1)`, of weight `n + 1`.
pub fn cor_mid1(n: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for k in 2..n {
        acc.add_int(&[k, 1, n - k], 1)?;
    }
    acc.add_int(&[2, n - 1], -1)?;
    acc.add_int(&[n, 1], -1)?;
    Ok(acc.combo)
}

/// The depth-three weighted sum with weights `2^(j-1)` and `2^j`.
pub fn cor_1st3rd(n: u32) -> Result<MzvCombo> {
    let mut acc = Acc::new();
    for (j, k, l) in triples(n) {
        acc.add_int(&[j, k, l], p2(j - 1))?;
    }
    for (j, k) in pairs(n - 1) {
        acc.add_int(&[j, k, 1], p2(j))?;
    }
    acc.add_int(&[n - 1, 1], -(n as i64))?;
    acc.add_int(&[n - 2, 2], -3)?;
    acc.add_int(&[2, n - 2], -1)?;
    acc.add_int(&[n], -2)?;
    Ok(acc.combo)
}

/// The depth-three formula obtained from the product of three Riemann zeta values.
pub fn cor_3riezeta(n: u32) -> Result<MzvCombo> {
    let n_ = n as i64;
    let mut acc = Acc::new();
    for (j, k, l) in triples(n) {
        acc.add_int(&[j, k, l], p2(j + 1) + p2(k))?;
    }
    for (j, k) in pairs(n - 1) {
        acc.add_int(&[j, 1, k], -p2(j))?;
        acc.add_int(&[j, k, 1], -p2(j))?;
    }
    for (j, k) in pairs(n) {
        acc.add_int(&[j, k], p2(j) * k as i64)?;
    }
    acc.add(&[n], -half((n_ + 3) * (n_ + 1)))?;
    acc.add_int(&[n - 2, 2], 3)?;
    acc.add_int(&[n - 1, 1], p2(n - 1) + n_)?;
    acc.add_int(&[2, n - 2], 3)?;
    Ok(acc.combo)
}

/// `sum (2j + k) zeta(j, k, l) - sum k zeta(k, 1, l) = zeta(2, n-2) + 4 zeta(n) - (3n - 5) zeta(n-1, 1)`.
pub fn cor_triple_dbl(n: u32) -> Result<MzvCombo> {
    let n_ = n as i64;
    let mut acc = Acc::new();
    for (j, k, l) in triples(n) {
        acc.add_int(&[j, k, l], (2 * j + k) as i64)?;
    }
    for (k, l) in pairs(n - 1) {
        acc.add_int(&[k, 1, l], -(k as i64))?;
    }
    acc.add_int(&[2, n - 2], -1)?;
    acc.add_int(&[n], -4)?;
    acc.add_int(&[n - 1, 1], 3 * n_ - 5)?;
    Ok(acc.combo)
}

/// The depth-four weighted sum formula. The `zeta(n)` term is `-(n+5)/2`;
/// [`cor_depth4_printed`] keeps the opposite sign.
pub fn cor_depth4(n: u32) -> Result<MzvCombo> {
    depth4_weighted(n, 1)
}

pub fn cor_depth4_printed(n: u32) -> Result<MzvCombo> {
    depth4_weighted(n, -1)
}

fn depth4_weighted(n: u32, zeta_n_sign: i64) -> Result<MzvCombo> {
    let n_ = n as i64;
    let mut acc = Acc::new();
    for (i, j, l) in triples(n - 1) {
        acc.add_int(&[i, 1, j, l], 2)?;
    }
    for (i, j, k, l) in quads(n) {
        acc.add_int(&[i, j, k, l], -(p2(i - 1) + p2(k)))?;
    }
    for (k, j) in pairs(n - 1) {
        acc.add_int(&[k, 1, j], -(k as i64))?;
    }
    acc.add_int(&[2, n - 2], -2)?;
    acc.add_int(&[n - 2, 2], -(n_ - 3))?;
    acc.add_int(&[n - 1, 1], 2 * n_ - 5)?;
    acc.add(&[n], half(zeta_n_sign * (n_ + 5)))?;
    Ok(acc.combo)
}

/// Intermediate displays printed in the derivations of the corollaries,
/// each as `lhs - rhs`. They let the individual steps be checked exactly.
pub mod steps {
    use super::*;

    /// The three-variable theorem at `a = b = c = 1`.
    pub fn first_third_at_one(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            acc.add_int(&[j, k, l], 6 * (3i64.pow(j - 1) * p2(k - 1) - p2(j + k - 2) - p2(j - 1)))?;
        }
        for (j, k) in pairs(n) {
            acc.add_int(&[j, k], 3 * (6 - n_))?;
        }
        acc.add(&[n], -half(n_ * n_ - 9 * n_ + 20))?;
        for (j, k) in pairs(n - 1) {
            acc.add_int(&[j, k, 1], -6 * (p2(j - 1) - 2))?;
            acc.add_int(&[j, 1, k], 6)?;
        }
        acc.add_int(&[n - 1, 1], -3 * (6 - n_))?;
        acc.add_int(&[n - 2, 2], -3)?;
        acc.add_int(&[2, n - 2], -3)?;
        Ok(acc.combo)
    }

    /// [`first_third_at_one`] after applying the depth-three Hoffman sums and
    /// the depth-two sum formula.
    pub fn first_third_reduced(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            acc.add_int(&[j, k, l], 6 * (3i64.pow(j - 1) * p2(k - 1) - p2(j + k - 2) - p2(j - 1)))?;
        }
        acc.add(&[n], -half(n_ * n_ - 3 * n_ - 16))?;
        for (j, k) in pairs(n - 1) {
            acc.add_int(&[j, k, 1], -3 * p2(j))?;
        }
        acc.add_int(&[n - 1, 1], 3 * n_)?;
        acc.add_int(&[n - 2, 2], 9)?;
        acc.add_int(&[2, n - 2], 3)?;
        Ok(acc.combo)
    }

    /// [`first_third_reduced`] divided by three, as printed.
    pub fn first_third_divided(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            acc.add_int(&[j, k, l], 3i64.pow(j - 1) * p2(k) - p2(j + k - 1) - p2(j))?;
        }
        acc.add(&[n], -Rational::new((n_ * n_ - 3 * n_ - 16).into(), 6.into()))?;
        for (j, k) in pairs(n - 1) {
            acc.add_int(&[j, k, 1], -p2(j))?;
        }
        acc.add_int(&[n - 1, 1], n_)?;
        acc.add_int(&[n - 2, 2], 3)?;
        acc.add_int(&[2, n - 2], 1)?;
        Ok(acc.combo)
    }

    /// The second-versus-third theorem at `a = b = c = 1`.
    pub fn second_third_at_one(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            acc.add_int(&[j, k, l], p2(j + 1) + p2(k) - 6)?;
        }
        for (j, k) in pairs(n - 1) {
            acc.add_int(&[j, 1, k], -(p2(j) - 6))?;
            acc.add_int(&[j, k, 1], -(p2(j) - 4))?;
        }
        for (j, k) in pairs(n) {
            acc.add(&[j, k], int(p2(j) * (k as i64 - 1) - 5 * n_ + 22) - half(p2(j)))?;
        }
        acc.add(&[n], -half(n_ * n_ - 9 * n_ + 32))?;
        acc.add_int(&[n - 2, 2], -1)?;
        acc.add_int(&[n - 1, 1], p2(n - 1) + n_ - 10)?;
        acc.add_int(&[2, n - 2], -3)?;
        Ok(acc.combo)
    }

    /// The two-parameter reduction differentiated in `a` at `a = b = 1`.
    pub fn triple_dbl_derivative(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            acc.add_int(&[j, k, l], (2 * j + k) as i64 - 1)?;
        }
        for (j, k) in pairs(n) {
            acc.add_int(&[j, k], -(2 * j as i64 - 1))?;
        }
        for (k, l) in pairs(n - 1) {
            acc.add_int(&[k, 1, l], -(k as i64))?;
        }
        acc.add_int(&[2, n - 2], 1)?;
        acc.add_int(&[n - 1, 1], n_ - 1)?;
        Ok(acc.combo)
    }

    /// The triple-versus-double theorem at `a = b = c = 1`. The depth-three
    /// coefficient carries `-2^k`.
    pub fn triple_dbl_at_one(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            acc.add_int(&[j, k, l], p2(j - 1) + p2(j + k - 1) - p2(k) - 5)?;
        }
        for (j, k) in pairs(n) {
            acc.add_int(&[j, k], -(n_ - 5))?;
        }
        for k in 2..n - 1 {
            acc.add_int(&[k, 1, n - 1 - k], 1)?;
        }
        acc.add_int(&[2, n - 2], -1)?;
        acc.add_int(&[n - 1, 1], -1)?;
        Ok(acc.combo)
    }

    /// The depth-four theorem at `a = b = c = d = 1`.
    pub fn depth4_at_one(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (i, j, k, l) in quads(n) {
            let w = p2(i + j + k - 2) - p2(j + k - 1) - p2(k) + p2(i + j - 2) - p2(j - 1);
            acc.add_int(&[i, j, k, l], 2 * w - 6)?;
        }
        for (i, j, l) in triples(n - 1) {
            acc.add_int(&[i, 1, j, l], 4)?;
        }
        for (i, j, k) in triples(n) {
            acc.add_int(&[i, j, k], -2 * (n_ - 6))?;
        }
        for j in 1..n - 2 {
            acc.add_int(&[2, j, n - 2 - j], -2)?;
        }
        for (i, k) in pairs(n - 1) {
            acc.add_int(&[i, 1, k], 2 * (k as i64 - 2))?;
        }
        for (i, j) in pairs(n) {
            acc.add_int(&[i, j], -(i as i64 - 3) * (j as i64 - 1))?;
        }
        acc.add_int(&[2, n - 2], -(n_ - 3))?;
        Ok(acc.combo)
    }

    /// The depth-four display reached after the sum formula and the depth-four
    /// weighted sum formula have been applied.
    pub fn depth4_middle(n: u32) -> Result<MzvCombo> {
        let n_ = n as i64;
        let mut acc = Acc::new();
        for (i, j, l) in triples(n - 1) {
            acc.add_int(&[i, 1, j, l], 2)?;
        }
        for (i, j, k, l) in quads(n) {
            acc.add_int(&[i, j, k, l], -(p2(i - 1) + p2(k)))?;
        }
        for j in 1..n - 2 {
            acc.add_int(&[2, j, n - 2 - j], -1)?;
        }
        acc.add_int(&[n], 3)?;
        for i in 2..n - 1 {
            acc.add_int(&[i, 1, n - i - 1], n_ - i as i64 - 3)?;
        }
        for i in 2..n {
            acc.add(&[i, n - i], -half((i as i64 - 3) * (n_ - i as i64 - 1)))?;
        }
        acc.add(&[2, n - 2], -half(n_ - 3))?;
        Ok(acc.combo)
    }
}
