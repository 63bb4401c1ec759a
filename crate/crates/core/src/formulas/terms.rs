//! Small helpers shared by the generators: index ranges, powers and a
//! checked accumulator.

use num_traits::Zero;

use crate::algebra::{Composition, MzvCombo, Rational};
use crate::error::{MzvError, Result};

/// `(j, k)` with `j >= 2`, `k >= 1`, `j + k = n`.
pub(crate) fn pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (2..n).map(move |j| (j, n - j))
}

/// `(j, k, l)` with `j >= 2`, `k, l >= 1`, `j + k + l = n`.
pub(crate) fn triples(n: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (2..n.saturating_sub(1)).flat_map(move |j| (1..n - j).map(move |k| (j, k, n - j - k)))
}

/// `(i, j, k, l)` with `i >= 2`, the rest `>= 1`, summing to `n`.
pub(crate) fn quads(n: u32) -> impl Iterator<Item = (u32, u32, u32, u32)> {
    (2..n.saturating_sub(2)).flat_map(move |i| {
        (1..n - i - 1).flat_map(move |j| (1..n - i - j).map(move |k| (i, j, k, n - i - j - k)))
    })
}

pub(crate) fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

pub(crate) fn pwu(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

pub(crate) fn div(x: Rational, d: &Rational) -> Result<Rational> {
    if d.is_zero() {
        return Err(MzvError::Internal("division by zero inside a generator".into()));
    }
    Ok(x / d)
}

/// Accumulates `coeff * zeta(parts)`, rejecting inadmissible indices as
/// generator bugs.
#[derive(Default)]
pub(crate) struct Acc {
    pub combo: MzvCombo,
}

impl Acc {
    pub fn new() -> Acc {
        Acc::default()
    }

    pub fn add(&mut self, parts: &[u32], k: Rational) -> Result<()> {
        if k.is_zero() {
            return Ok(());
        }
        let c = Composition::new(parts.to_vec())
            .and_then(|c| c.check_admissible().map(|_| c))
            .map_err(|_| MzvError::Internal(format!("generator built the inadmissible index {parts:?}")))?;
        self.combo.add_term(c, k);
        Ok(())
    }

    pub fn add_int(&mut self, parts: &[u32], k: i64) -> Result<()> {
        self.add(parts, int(k))
    }
}

/// Rejects a parameter point at which a printed denominator vanishes.
pub(crate) fn nonvanishing(factors: &[(&str, Rational)]) -> Result<()> {
    for (label, v) in factors {
        if v.is_zero() {
            return Err(MzvError::domain(format!("denominator {label} vanishes at this parameter point")));
        }
    }
    Ok(())
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}

/// `f` summed over the parameter tuples `p[perm[0]], p[perm[1]], ...`.
pub(crate) fn sum_over(
    p: &[Rational],
    perms: &[Vec<usize>],
    mut f: impl FnMut(&[Rational]) -> Result<MzvCombo>,
) -> Result<MzvCombo> {
    let mut out = MzvCombo::zero();
    for perm in perms {
        let q: Vec<Rational> = perm.iter().map(|&i| p[i].clone()).collect();
        out += &f(&q)?;
    }
    Ok(out)
}

/// Identity on `k` slots with the listed slots swapped.
pub(crate) fn swap(k: usize, i: usize, j: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..k).collect();
    v.swap(i, j);
    v
}

pub(crate) fn identity(k: usize) -> Vec<usize> {
    (0..k).collect()
}
