use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;

use super::{BinaryWord, Composition, Letter, MzvCombo, ProductCombo, Rational};

/// Quasi-shuffle (stuffle) product of two indices.
///
/// Defined for every pair of compositions; convergence of the resulting
/// symbols is the caller's concern.
pub fn stuffle(u: &Composition, v: &Composition) -> MzvCombo {
    let mut memo = HashMap::new();
    let counts = stuffle_rec(u.parts(), v.parts(), &mut memo);
    counts
        .into_iter()
        .map(|(c, k)| (Composition::from_parts(&c), Rational::from_integer(k)))
        .collect()
}

type Counts = BTreeMap<Vec<u32>, BigInt>;

fn stuffle_rec<'a>(
    u: &'a [u32],
    v: &'a [u32],
    memo: &mut HashMap<(usize, usize), Counts>,
) -> Counts {
    if u.is_empty() || v.is_empty() {
        let mut m = Counts::new();
        m.insert(if u.is_empty() { v.to_vec() } else { u.to_vec() }, BigInt::one());
        return m;
    }
    let key = (u.len(), v.len());
    if let Some(m) = memo.get(&key) {
        return m.clone();
    }
    let (a, ur) = (u[0], &u[1..]);
    let (b, vr) = (v[0], &v[1..]);
    let mut out = Counts::new();
    let mut push = |head: u32, tail: Counts| {
        for (mut w, k) in tail {
            w.insert(0, head);
            *out.entry(w).or_insert_with(BigInt::zero) += k;
        }
    };
    push(a, stuffle_rec(ur, v, memo));
    push(b, stuffle_rec(u, vr, memo));
    push(a + b, stuffle_rec(ur, vr, memo));
    memo.insert(key, out.clone());
    out
}

/// Bilinear extension of [`stuffle`] to combinations.
pub fn stuffle_combos(x: &MzvCombo, y: &MzvCombo) -> MzvCombo {
    let mut out = MzvCombo::zero();
    for (cu, ku) in x.iter() {
        for (cv, kv) in y.iter() {
            out.add_scaled(&stuffle(cu, cv), &(ku * kv));
        }
    }
    out
}

/// Expands every product in `p` into a combination with the stuffle product.
pub fn stuffle_expand(p: &ProductCombo) -> MzvCombo {
    let mut out = MzvCombo::zero();
    for t in &p.terms {
        let mut acc = MzvCombo::constant(Rational::one());
        for f in &t.factors {
            acc = stuffle_combos(&acc, &MzvCombo::single(f.clone()));
        }
        out.add_scaled(&acc, &t.coeff);
    }
    out
}

/// Shuffle product of two words; the coefficients are interleaving counts.
pub fn shuffle(u: &BinaryWord, v: &BinaryWord) -> BTreeMap<BinaryWord, Rational> {
    let mut memo = HashMap::new();
    shuffle_rec(u.letters(), v.letters(), &mut memo)
        .into_iter()
        .map(|(w, k)| (BinaryWord::new(w), Rational::from_integer(k)))
        .collect()
}

type WordCounts = BTreeMap<Vec<Letter>, BigInt>;

fn shuffle_rec(
    u: &[Letter],
    v: &[Letter],
    memo: &mut HashMap<(usize, usize), WordCounts>,
) -> WordCounts {
    if u.is_empty() || v.is_empty() {
        let mut m = WordCounts::new();
        m.insert(if u.is_empty() { v.to_vec() } else { u.to_vec() }, BigInt::one());
        return m;
    }
    let key = (u.len(), v.len());
    if let Some(m) = memo.get(&key) {
        return m.clone();
    }
    let mut out = WordCounts::new();
    for (head, tail) in [(u[0], shuffle_rec(&u[1..], v, memo)), (v[0], shuffle_rec(u, &v[1..], memo))] {
        for (mut w, k) in tail {
            w.insert(0, head);
            *out.entry(w).or_insert_with(BigInt::zero) += k;
        }
    }
    memo.insert(key, out.clone());
    out
}

/// Shuffle product of two admissible indices, read back as indices.
pub fn shuffle_mzv(u: &Composition, v: &Composition) -> Result<MzvCombo> {
    let wu = BinaryWord::encode(u)?;
    let wv = BinaryWord::encode(v)?;
    let mut out = MzvCombo::zero();
    for (w, k) in shuffle(&wu, &wv) {
        out.add_term(w.decode()?, k);
    }
    Ok(out)
}
