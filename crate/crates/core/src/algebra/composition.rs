use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};

/// An index `(s_1, ..., s_d)` of positive integers.
///
/// Ordering is lexicographic on the parts, which fixes the iteration order of
/// every combination and the pivot order of the echelon forms.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(MzvError::domain(format!(
                "part {} of index ({}) is zero; parts must be >= 1",
                pos + 1,
                join(&parts)
            )));
        }
        Ok(Composition(parts))
    }

    /// Builds a composition from parts already known to be positive.
    ///
    /// Panics on a zero part.
    pub fn from_parts(parts: &[u32]) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "zero part in {parts:?}");
        Composition(parts.to_vec())
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty, or first part at least two.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&s| s >= 2)
    }

    pub fn check_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(MzvError::domain(format!(
                "inadmissible index ({self}): first part must be >= 2"
            )))
        }
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn split_first(&self) -> Option<(u32, Composition)> {
        self.0
            .split_first()
            .map(|(&a, rest)| (a, Composition(rest.to_vec())))
    }

    pub fn prepend(&self, part: u32) -> Composition {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(part);
        v.extend_from_slice(&self.0);
        Composition(v)
    }
}

fn join(parts: &[u32]) -> String {
    parts
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl FromStr for Composition {
    type Err = MzvError;

    /// Parses the comma-separated text form, e.g. `2,1,1`. The empty string
    /// is the empty composition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| MzvError::domain(format!("bad index part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl From<&[u32]> for Composition {
    fn from(parts: &[u32]) -> Self {
        Composition::from_parts(parts)
    }
}

/// All compositions of `weight` (any depth), lexicographically ordered.
pub fn compositions_of(weight: u32) -> Vec<Composition> {
    fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_depth_admissible() {
        let c: Composition = "3,1,2".parse().unwrap();
        assert_eq!(c.weight(), 6);
        assert_eq!(c.depth(), 3);
        assert!(c.is_admissible());
        assert!(!Composition::from_parts(&[1, 2]).is_admissible());
        assert!(Composition::empty().is_admissible());
    }

    #[test]
    fn parse_rejects_zero_and_garbage() {
        assert!("2,0".parse::<Composition>().is_err());
        assert!("2,x".parse::<Composition>().is_err());
        assert_eq!("".parse::<Composition>().unwrap(), Composition::empty());
        assert_eq!(" 2, 1 ".parse::<Composition>().unwrap().parts(), &[2, 1]);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions_of(5).len(), 16);
        assert_eq!(compositions_of(0), vec![Composition::empty()]);
    }
}
