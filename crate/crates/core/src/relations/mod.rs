//! Finite double shuffle and duality relations at a fixed weight, their exact
//! reduced echelon form, and membership tests for candidate identities.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{compositions_of, dual, shuffle_mzv, stuffle, Composition, MzvCombo, Rational};
use crate::error::{MzvError, Result};

/// Highest weight the exact machinery is run at by default.
pub const DEFAULT_WEIGHT_CAP: u32 = 10;

/// All admissible compositions of `weight` in lexicographic order.
pub fn enumerate_admissible(weight: u32) -> Result<Vec<Composition>> {
    if weight < 2 {
        return Err(MzvError::domain(format!("no admissible index of weight {weight}")));
    }
    Ok(compositions_of(weight).into_iter().filter(|c| c.is_admissible()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Fds,
    Duality,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Fds => "fds",
            Family::Duality => "duality",
        })
    }
}

/// Where a relation row came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Fds(Composition, Composition),
    Duality(Composition),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Fds(u, v) => write!(f, "fds({u} | {v})"),
            Provenance::Duality(c) => write!(f, "dual({c})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub combo: MzvCombo,
    pub provenance: Provenance,
}

/// Relations of one weight, each row a combination equal to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub weight: u32,
    pub rows: Vec<Relation>,
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// `stuffle(u, v) - shuffle(u, v)` for every unordered admissible pair with
/// total weight `weight`. Pairs are listed with `u <= v`.
pub fn fds_relations(weight: u32) -> RelationSet {
    let mut pairs = Vec::new();
    for wu in 2..weight.saturating_sub(1) {
        let wv = weight - wu;
        if wv < 2 || wu > wv {
            continue;
        }
        let us = enumerate_admissible(wu).unwrap_or_default();
        let vs = enumerate_admissible(wv).unwrap_or_default();
        for u in &us {
            for v in &vs {
                if wu == wv && u > v {
                    continue;
                }
                pairs.push((u.clone(), v.clone()));
            }
        }
    }
    let rows = pairs
        .into_par_iter()
        .map(|(u, v)| {
            let sh = shuffle_mzv(&u, &v).expect("admissible by construction");
            Relation { combo: stuffle(&u, &v) - sh, provenance: Provenance::Fds(u, v) }
        })
        .filter(|r| !r.combo.is_zero())
        .collect();
    RelationSet { weight, rows }
}

/// `zeta(c) - zeta(dual(c))` once per orbit that is not self-dual, with `c`
/// the smaller of the pair.
pub fn duality_relations(weight: u32) -> RelationSet {
    let mut rows = Vec::new();
    for c in enumerate_admissible(weight).unwrap_or_default() {
        let d = dual(&c).expect("admissible");
        if c < d {
            let mut combo = MzvCombo::single(c.clone());
            combo.add_term(d, -Rational::one());
            rows.push(Relation { combo, provenance: Provenance::Duality(c) });
        }
    }
    RelationSet { weight, rows }
}

/// Relations of the requested families at `weight`.
pub fn relations_for(weight: u32, families: &BTreeSet<Family>) -> Vec<RelationSet> {
    let mut out = Vec::new();
    if families.contains(&Family::Fds) {
        out.push(fds_relations(weight));
    }
    if families.contains(&Family::Duality) {
        out.push(duality_relations(weight));
    }
    out
}

/// Reduced row echelon form of a relation space. Pivots are the
/// lexicographically smallest composition of each row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    pub weight: u32,
    rows: BTreeMap<Composition, MzvCombo>,
}

impl EchelonBasis {
    pub fn empty(weight: u32) -> EchelonBasis {
        EchelonBasis { weight, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<Composition> {
        self.rows.keys().cloned().collect()
    }

    /// Rows in pivot order, each with pivot coefficient 1.
    pub fn rows(&self) -> Vec<MzvCombo> {
        self.rows.values().cloned().collect()
    }

    /// Normal form of `x` modulo the row space.
    pub fn reduce(&self, x: &MzvCombo) -> MzvCombo {
        let mut r = x.clone();
        for (p, row) in &self.rows {
            let k = r.coeff(p);
            if !k.is_zero() {
                r.add_scaled(row, &-k);
            }
        }
        r
    }

    /// Adds one row, keeping the form fully reduced. Returns whether the rank
    /// grew.
    pub fn insert(&mut self, row: &MzvCombo) -> Result<bool> {
        if let Some(w) = row.weight()? {
            if w != self.weight || !row.is_homogeneous() {
                return Err(MzvError::domain(format!(
                    "row of weight {w} in a weight-{} basis",
                    self.weight
                )));
            }
        }
        let r = self.reduce(row);
        let Some((pivot, lead)) = r.iter().next().map(|(c, k)| (c.clone(), k.clone())) else {
            return Ok(false);
        };
        let r = r.scaled(&(Rational::one() / lead));
        for other in self.rows.values_mut() {
            let k = other.coeff(&pivot);
            if !k.is_zero() {
                other.add_scaled(&r, &-k);
            }
        }
        self.rows.insert(pivot, r);
        Ok(true)
    }
}

/// Echelon form of the union of several relation sets of one weight.
pub fn echelonize(sets: &[RelationSet]) -> Result<EchelonBasis> {
    let weight = sets.first().map(|s| s.weight).unwrap_or(0);
    if let Some(s) = sets.iter().find(|s| s.weight != weight) {
        return Err(MzvError::domain(format!("mixed weights {weight} and {}", s.weight)));
    }
    let mut basis = EchelonBasis::empty(weight);
    for s in sets {
        for r in &s.rows {
            basis.insert(&r.combo)?;
        }
    }
    Ok(basis)
}

/// Echelon form of plain combination rows (all of weight `weight`).
pub fn echelonize_rows(weight: u32, rows: &[MzvCombo]) -> Result<EchelonBasis> {
    let mut basis = EchelonBasis::empty(weight);
    for r in rows {
        basis.insert(r)?;
    }
    Ok(basis)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactVerdict {
    Proven,
    /// Not in the span; carries the nonzero normal form.
    Unresolved(MzvCombo),
}

impl ExactVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, ExactVerdict::Proven)
    }
}

/// Per-weight summary of the relation spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightStats {
    pub weight: u32,
    pub fds_rows: usize,
    pub duality_rows: usize,
    pub rank: usize,
    pub ambient_dim: usize,
}

pub fn weight_stats(weight: u32) -> Result<WeightStats> {
    let fds = fds_relations(weight);
    let dua = duality_relations(weight);
    let basis = echelonize(&[fds.clone(), dua.clone()])?;
    Ok(WeightStats {
        weight,
        fds_rows: fds.len(),
        duality_rows: dua.len(),
        rank: basis.rank(),
        ambient_dim: enumerate_admissible(weight)?.len(),
    })
}

/// Decides membership of candidates in relation spans, memoizing one basis
/// per (weight, family set).
#[derive(Debug, Default)]
pub struct Prover {
    bases: Mutex<HashMap<(u32, Vec<Family>), Arc<EchelonBasis>>>,
}

impl Prover {
    pub fn new() -> Prover {
        Prover::default()
    }

    pub fn basis(&self, weight: u32, families: &BTreeSet<Family>) -> Result<Arc<EchelonBasis>> {
        let key = (weight, families.iter().copied().collect::<Vec<_>>());
        if let Some(b) = self.bases.lock().expect("basis lock poisoned").get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(if weight < 2 {
            EchelonBasis::empty(weight)
        } else {
            let mut sets = relations_for(weight, families);
            if sets.is_empty() {
                sets.push(RelationSet { weight, rows: Vec::new() });
            }
            echelonize(&sets)?
        });
        self.bases.lock().expect("basis lock poisoned").insert(key, b.clone());
        Ok(b)
    }

    /// Proven iff `candidate` reduces to zero; the zero combination is
    /// trivially proven.
    pub fn verify_exact(
        &self,
        candidate: &MzvCombo,
        families: &BTreeSet<Family>,
    ) -> Result<ExactVerdict> {
        candidate.check_admissible()?;
        let Some(weight) = candidate.weight()? else {
            return Ok(ExactVerdict::Proven);
        };
        if !candidate.is_homogeneous() {
            return Err(MzvError::domain("inhomogeneous candidate"));
        }
        let basis = self.basis(weight, families)?;
        let nf = basis.reduce(candidate);
        Ok(if nf.is_zero() { ExactVerdict::Proven } else { ExactVerdict::Unresolved(nf) })
    }
}

/// One-shot membership test.
pub fn verify_exact(candidate: &MzvCombo, families: &BTreeSet<Family>) -> Result<ExactVerdict> {
    Prover::new().verify_exact(candidate, families)
}

pub fn all_families() -> BTreeSet<Family> {
    [Family::Fds, Family::Duality].into_iter().collect()
}
