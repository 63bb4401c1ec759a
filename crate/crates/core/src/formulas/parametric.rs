//! Parametric families of weighted sum formulas in depths three and four,
//! transcribed term by term. Every function returns `lhs - rhs` at one
//! rational parameter point.

use num_traits::Zero;

use crate::algebra::{MzvCombo, Rational};
use crate::error::Result;

use super::terms::{div, identity, int, nonvanishing, pairs, permutations, pwu as p, quads, sum_over, swap, triples, Acc};

type Q = Rational;

fn cyclic3() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
}

/// The first-versus-third family; symmetric in `(a, b, c)`.
pub fn thm_1st3rd_abc(n: u32, abc: &[Q]) -> Result<MzvCombo> {
    let (a, b, c) = (&abc[0], &abc[1], &abc[2]);
    nonvanishing(&[("c-b", c - b), ("c-a", c - a), ("b-a", b - a)])?;
    let lhs_block = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let ac = a * c;
        let (abc, ab, bc) = (a + b + c, a + b, b + c);
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            let k_ = &ac * p(&abc, j - 1) * p(&ab, k - 1) * p(b, l) - &ac * p(&ab, j + k - 2) * p(b, l)
                - &ac * p(&bc, j - 1) * p(b, k + l - 1)
                + &ac * p(b, j + k + l - 2)
                - p(a, j) * p(b, k) * p(c, l);
            acc.add(&[j, k, l], k_)?;
        }
        for (j, k) in pairs(n) {
            let k_ = c * p(a, j) * p(b, k - 1) + c * p(a, k) * p(b, j - 1)
                - div(b * (p(a, j) * p(c, k) + p(a, k) * p(c, j)), &(c - b))?;
            acc.add(&[j, k], k_)?;
        }
        Ok(acc.combo)
    };
    let zeta_n_block = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let inner = div(a * b * p(c, n) - b * c * p(a, n), &(c - a))? + a * c * p(b, n - 1);
        let k_ = div(inner, &(c - b))? - div(a * c * (p(b, n - 1) - p(a, n - 1)), &(b - a))? + c * p(a, n - 1);
        let mut acc = Acc::new();
        acc.add(&[n], k_)?;
        Ok(acc.combo)
    };
    let rhs_block = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let bc = b * c;
        let mut acc = Acc::new();
        for (j, k) in pairs(n - 1) {
            let br = p(&(a + c), j - 1) - p(a, j - 1) - p(c, j - 1);
            acc.add(&[j, k, 1], p(a, k) * &bc * br)?;
            acc.add(&[j, 1, k], -(p(a, j) * b * p(c, k)))?;
        }
        let k_ = p(a, n - 1) * c + p(a, n - 2) * &bc - div(a * b * p(c, n - 1), &(c - b))?;
        acc.add(&[n - 1, 1], k_)?;
        let h = Q::new(1.into(), 2.into()) * p(a, n - 2) * &bc;
        acc.add(&[n - 2, 2], h.clone())?;
        acc.add(&[2, n - 2], h.clone())?;
        acc.add(&[n], h)?;
        Ok(acc.combo)
    };
    let all = permutations(3);
    let mut out = sum_over(abc, &all, lhs_block)?;
    out -= &sum_over(abc, &[identity(3), swap(3, 1, 2)], zeta_n_block)?;
    out -= &sum_over(abc, &all, rhs_block)?;
    Ok(out)
}

/// The second-versus-third family.
pub fn thm_2nd3rd_abc(n: u32, abc: &[Q]) -> Result<MzvCombo> {
    let (a, b, c) = (&abc[0], &abc[1], &abc[2]);
    nonvanishing(&[
        ("c-b", c - b),
        ("c-a", c - a),
        ("b-a", b - a),
        ("c-b-a", c - b - a),
        ("c", c.clone()),
        ("b", b.clone()),
    ])?;
    let swap_ab = [identity(3), swap(3, 0, 1)];
    let swap_bc = [identity(3), swap(3, 1, 2)];
    let lhs = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let s = a + b;
        let mut acc = Acc::new();
        for (j, k, l) in triples(n) {
            let mut k_ = a * p(&s, j - 1) * (p(b, k) * p(c, l) + p(b, l) * p(c, k)) + a * p(&s, k - 1) * p(b, l) * p(c, j);
            for (x, y, z) in [(j, k, l), (k, l, j), (l, j, k)] {
                k_ -= p(a, x + y - 1) * b * p(c, z) + p(a, x) * p(b, y) * p(c, z);
            }
            acc.add(&[j, k, l], k_)?;
        }
        for (j, k) in pairs(n - 1) {
            let k_ = a * p(&s, j - 1) * p(b, k) * c - p(a, j + k - 1) * b * c - p(a, j) * p(b, k) * c;
            acc.add(&[j, k, 1], -k_)?;
            let k_ = a * p(&s, j - 1) * p(b, k) * c - p(a, j + k - 1) * b * c - p(a, k) * b * p(c, j) - p(a, k) * c * p(b, j);
            acc.add(&[j, 1, k], -k_)?;
        }
        Ok(acc.combo)
    };
    // Depth-two coefficient symmetrized over (a, b, c) cyclically and over (j, k).
    let rhs_cyclic = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let mut acc = Acc::new();
        for (j, k) in pairs(n) {
            let mut k_ = Q::zero();
            for (x, y) in [(j, k), (k, j)] {
                k_ += div(p(a, x) * (b * p(c, y) - c * p(b, y)), &(c - b))? - p(a, x) * p(b, y - 1) * c - p(a, x) * b * p(c, y - 1);
            }
            acc.add(&[j, k], k_)?;
        }
        acc.add(&[2, n - 2], p(a, n - 2) * b * c)?;
        Ok(acc.combo)
    };
    let rhs_ab = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let s = a + b;
        let ac = a * c;
        let mut acc = Acc::new();
        for (j, k) in pairs(n) {
            let mut k_ = div(p(&s, j - 1) * a * (b * p(c, k) - c * p(b, k)), &(c - b))? - p(a, j) * b * p(c, k - 1)
                - p(&s, j - 1) * p(b, k - 1) * &ac
                + div(a * p(b, k) * p(c, j) - p(&s, j - 1) * &ac * p(b, k), &(c - b - a))?
                - p(&s, j - 2) * p(b, k) * &ac;
            for (x, y) in [(j, k), (k, j)] {
                k_ += &ac * p(b, x + y - 2) - div(p(b, y - 1) * a * (b * p(c, x) - c * p(b, x)), &(c - b))?;
            }
            acc.add(&[j, k], -k_)?;
        }
        let k_ = &ac * p(&s, n - 2) - p(a, n - 1) * c - p(c, n - 1) * a - int(2) * a * p(b, n - 2) * c
            + div(&ac * p(b, n - 1) - b * c * p(a, n - 1), &(int(2) * (b - a)))?;
        acc.add(&[n - 1, 1], -k_)?;
        Ok(acc.combo)
    };
    let rhs_bc = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c) = (&q[0], &q[1], &q[2]);
        let den = c * (c - b) * (c - a);
        let k_ = div(b * b * (a * a * p(c, n - 1) - p(a, n) * c), &den)? + p(a, n - 1) * b;
        let mut acc = Acc::new();
        acc.add(&[n], k_)?;
        Ok(acc.combo)
    };
    let mut rhs = sum_over(abc, &cyclic3(), rhs_cyclic)?;
    rhs += &sum_over(abc, &swap_ab, rhs_ab)?;
    rhs += &sum_over(abc, &swap_bc, rhs_bc)?;
    let mut tail = Acc::new();
    tail.add(&[n], b * c * p(a, n - 2))?;
    tail.add(&[n - 2, 2], a * b * p(c, n - 2))?;
    if n == 2 {
        tail.add(&[2], -(a * b + a * c + b * c))?;
    }
    if n == 3 {
        tail.add(&[2, 1], -(a * b * c))?;
        tail.add(&[3], -(a * b * c))?;
    }
    rhs += &tail.combo;
    Ok(sum_over(abc, &swap_ab, lhs)? - rhs)
}

/// The product of a double and a single zeta value, read as a family in
/// `(a, b, c)`.
pub fn thm_triple_dbl(n: u32, abc: &[Q]) -> Result<MzvCombo> {
    let (a, b, c) = (&abc[0], &abc[1], &abc[2]);
    nonvanishing(&[("c-a", c - a), ("c-b", c - b)])?;
    let (apc, bpc) = (a + c, b + c);
    let mut acc = Acc::new();
    for (j, k, l) in triples(n) {
        let k_ = p(&apc, j - 1) * p(a, k) * p(b, l) * c
            + a * p(&apc, j - 1) * p(&bpc, k - 1) * (c * p(b, l) + b * p(c, l))
            - p(a, j + k - 1) * p(b, l) * c
            - p(a, j) * p(b, k + l - 1) * c
            - a * p(c, j) * p(&bpc, k - 1) * (p(b, l) + b * p(c, l - 1))
            - p(a, j) * p(b, k) * p(c, l)
            - p(a, j) * p(c, k) * p(b, l)
            - p(c, j) * p(a, k) * p(b, l);
        acc.add(&[j, k, l], k_)?;
    }
    for (j, k) in pairs(n) {
        let k_ = div((a * p(c, j) - p(a, j) * c) * p(b, k), &(c - a))?
            + div(p(a, j) * (b * p(c, k) - p(b, k) * c), &(c - b))?
            - p(a, j - 1) * p(b, k) * c
            - a * p(b, k) * p(c, j - 1)
            - p(a, j) * p(b, k - 1) * c;
        acc.add(&[j, k], -k_)?;
    }
    for k in 2..n - 1 {
        acc.add(&[k, 1, n - 1 - k], p(a, k) * p(b, n - 1 - k) * c)?;
    }
    acc.add(&[2, n - 2], -(a * p(b, n - 2) * c))?;
    acc.add(&[n - 1, 1], -(p(a, n - 1) * c))?;
    Ok(acc.combo)
}

/// The two-parameter reduction of [`thm_triple_dbl`].
pub fn thm_triple_dbl_reduce(n: u32, ab: &[Q]) -> Result<MzvCombo> {
    let (a, b) = (&ab[0], &ab[1]);
    let mut acc = Acc::new();
    for (j, k, l) in triples(n) {
        acc.add(&[j, k, l], p(a, j + k - 1) * p(b, l) + p(a, j) * p(b, k + l - 1))?;
    }
    for (j, k) in pairs(n) {
        acc.add(&[j, k], -(p(a, j - 1) * p(b, k) + p(a, j) * p(b, k - 1)))?;
    }
    for k in 2..n - 1 {
        acc.add(&[k, 1, n - 1 - k], -(p(a, k) * p(b, n - 1 - k)))?;
    }
    acc.add(&[2, n - 2], a * p(b, n - 2))?;
    acc.add(&[n - 1, 1], p(a, n - 1))?;
    Ok(acc.combo)
}

/// Readings of the last element of the six-element set that symmetrizes the
/// plain depth-four monomial sum. Each entry lists, per element, the
/// parameter slots substituted for `(a, b, c, d)`.
pub fn depth4_monomial_set(variant: &str) -> Option<Vec<Vec<usize>>> {
    let printed = vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1], vec![2, 1, 0, 3], vec![0, 2, 1, 3], vec![0, 3, 2, 1]];
    let last = match variant {
        "cycle" => vec![2, 0, 3, 1],
        "cycle-inverse" => vec![1, 3, 0, 2],
        "transpositions" => vec![1, 0, 3, 2],
        "stuffle-derived" => {
            return Some(vec![
                vec![0, 1, 2, 3],
                vec![2, 3, 0, 1],
                vec![2, 0, 3, 1],
                vec![0, 2, 3, 1],
                vec![0, 2, 1, 3],
                vec![2, 0, 1, 3],
            ])
        }
        _ => return None,
    };
    let mut set = printed;
    set.push(last);
    Some(set)
}

/// The depth-four family from the product of two double zeta values.
pub fn thm_depth4(n: u32, abcd: &[Q], monomial_set: &[Vec<usize>]) -> Result<MzvCombo> {
    let (a, b, c, d) = (&abcd[0], &abcd[1], &abcd[2], &abcd[3]);
    nonvanishing(&[("b-c", b - c), ("a-c", a - c), ("b-d", b - d), ("a-d", a - d)])?;
    let pair = [identity(4), vec![2, 3, 0, 1]];
    let lhs = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c, d) = (&q[0], &q[1], &q[2], &q[3]);
        let (apc, bpc, bpd) = (a + c, b + c, b + d);
        let mut acc = Acc::new();
        for (i, j, k, l) in quads(n) {
            let first = (a * b * c * p(&apc, i - 1) * p(&bpc, j - 1) - a * b * p(c, i) * p(&bpc, j - 1) - c * p(a, i) * p(b, j))
                * p(&bpd, k - 1)
                * p(d, l);
            let second = (p(&apc, i - 1) - p(c, i - 1)) * a * b * p(&bpc, j - 1) * p(c, k) * p(d, l);
            let third = (a * c * d * p(&apc, i - 1) * p(&bpc, j - 1) - a * d * p(c, i) * p(&bpc, j - 1) - c * d * p(a, i) * p(b, j - 1))
                * p(&bpd, k - 1)
                * p(b, l);
            acc.add(&[i, j, k, l], first + second + third)?;
        }
        for (i, j, l) in triples(n - 1) {
            acc.add(&[i, 1, j, l], (p(b, j) * p(d, l) + p(d, j) * p(b, l)) * c * p(a, i))?;
        }
        Ok(acc.combo)
    };
    let monomials = |q: &[Q]| -> Result<MzvCombo> {
        let mut acc = Acc::new();
        for (i, j, k, l) in quads(n) {
            acc.add(&[i, j, k, l], p(&q[0], i) * p(&q[1], j) * p(&q[2], k) * p(&q[3], l))?;
        }
        Ok(acc.combo)
    };
    let rhs = |q: &[Q]| -> Result<MzvCombo> {
        let (a, b, c, d) = (&q[0], &q[1], &q[2], &q[3]);
        let mut acc = Acc::new();
        for (i, j, k) in triples(n) {
            let t1 = (div(c * p(b, j) - b * p(c, j), &(b - c))? - c * p(b, j - 1)) * p(a, i) * p(d, k);
            let t2 = (div(c * p(a, i) - a * p(c, i), &(a - c))? - c * p(a, i - 1) - a * p(c, i - 1)) * p(b, j) * p(d, k);
            let t3 = div(d * p(b, k) - b * p(d, k), &(b - d))? * p(a, i) * p(c, j);
            acc.add(&[i, j, k], t1 + t2 + t3)?;
        }
        for j in 1..n - 2 {
            let k = n - 2 - j;
            acc.add(&[2, j, k], a * c * p(d, j) * p(b, k))?;
        }
        for (i, k) in pairs(n - 1) {
            let k_ = c * p(a, i) * p(d, k) - div(d * p(b, k) - b * p(d, k), &(b - d))? * p(a, i) * c;
            acc.add(&[i, 1, k], k_)?;
        }
        Ok(acc.combo)
    };
    let mut out = sum_over(abcd, &pair, lhs)?;
    out -= &sum_over(abcd, monomial_set, monomials)?;
    out -= &sum_over(abcd, &pair, rhs)?;
    let mut acc = Acc::new();
    for (i, j) in pairs(n) {
        let left = div(c * p(a, i) - a * p(c, i), &(a - c))? - c * p(a, i - 1) - a * p(c, i - 1);
        acc.add(&[i, j], -(left * div(d * p(b, j) - b * p(d, j), &(b - d))?))?;
    }
    acc.add(&[2, n - 2], -div(a * c * (d * p(b, n - 2) - b * p(d, n - 2)), &(b - d))?)?;
    out += &acc.combo;
    Ok(out)
}
