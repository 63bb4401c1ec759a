use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MzvError, Result};

use super::Composition;

/// Exact rational coefficients.
pub type Rational = BigRational;

/// `C(n, k)`, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A formal rational linear combination of MZV symbols. The empty index
/// stands for the rational unit. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MzvCombo {
    terms: BTreeMap<Composition, Rational>,
}

impl MzvCombo {
    pub fn zero() -> Self {
        MzvCombo::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut m = MzvCombo::zero();
        m.add_term(Composition::empty(), c);
        m
    }

    pub fn single(c: Composition) -> Self {
        let mut m = MzvCombo::zero();
        m.add_term(c, Rational::one());
        m
    }

    /// Shorthand for a single symbol with coefficient one.
    pub fn zeta(parts: &[u32]) -> Self {
        MzvCombo::single(Composition::from_parts(parts))
    }

    pub fn add_term(&mut self, c: Composition, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(c) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_int(&mut self, parts: &[u32], coeff: i64) {
        self.add_term(Composition::from_parts(parts), Rational::from_integer(coeff.into()));
    }

    pub fn add_scaled(&mut self, other: &MzvCombo, k: &Rational) {
        if k.is_zero() {
            return;
        }
        for (c, v) in &other.terms {
            self.add_term(c.clone(), v * k);
        }
    }

    pub fn scaled(&self, k: &Rational) -> MzvCombo {
        let mut out = MzvCombo::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn coeff(&self, c: &Composition) -> Rational {
        self.terms.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Composition> {
        self.terms.keys()
    }

    /// The common weight of all terms, `None` for the zero combination.
    /// Errors when two terms have different weights.
    pub fn weight(&self) -> Result<Option<u32>> {
        let mut w = None;
        for c in self.terms.keys() {
            match w {
                None => w = Some(c.weight()),
                Some(x) if x != c.weight() => {
                    return Err(MzvError::domain(format!(
                        "combination is not homogeneous: weights {x} and {}",
                        c.weight()
                    )))
                }
                _ => {}
            }
        }
        Ok(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.weight().is_ok()
    }

    pub fn check_admissible(&self) -> Result<()> {
        for c in self.terms.keys() {
            c.check_admissible()?;
        }
        Ok(())
    }

    /// Sum of coefficients (the "mass" of a product expansion).
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// Applies a linear map termwise: `sum c_i f(index_i)`.
    pub fn map_linear(&self, mut f: impl FnMut(&Composition) -> MzvCombo) -> MzvCombo {
        let mut out = MzvCombo::zero();
        for (c, k) in &self.terms {
            out.add_scaled(&f(c), k);
        }
        out
    }

    pub fn records(&self) -> Vec<ComboRecord> {
        self.terms
            .iter()
            .map(|(c, k)| ComboRecord { index: c.parts().to_vec(), coeff: k.to_string() })
            .collect()
    }

    pub fn from_records(records: &[ComboRecord]) -> Result<Self> {
        let mut out = MzvCombo::zero();
        for r in records {
            let c = Composition::new(r.index.clone())?;
            let k: Rational = r
                .coeff
                .parse()
                .map_err(|_| MzvError::domain(format!("bad rational {:?}", r.coeff)))?;
            out.add_term(c, k);
        }
        Ok(out)
    }
}

/// Serialised form of one term: `{index: [parts], coeff: "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComboRecord {
    pub index: Vec<u32>,
    pub coeff: String,
}

impl Serialize for MzvCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MzvCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let recs = Vec::<ComboRecord>::deserialize(d)?;
        MzvCombo::from_records(&recs).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for MzvCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, k)) in self.terms.iter().enumerate() {
            let neg = k.is_negative();
            let mag = k.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if c.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z({c})")?;
            } else {
                write!(f, "{mag}*z({c})")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&MzvCombo> for MzvCombo {
    fn add_assign(&mut self, rhs: &MzvCombo) {
        for (c, k) in &rhs.terms {
            self.add_term(c.clone(), k.clone());
        }
    }
}

impl SubAssign<&MzvCombo> for MzvCombo {
    fn sub_assign(&mut self, rhs: &MzvCombo) {
        for (c, k) in &rhs.terms {
            self.add_term(c.clone(), -k.clone());
        }
    }
}

impl Add<&MzvCombo> for &MzvCombo {
    type Output = MzvCombo;
    fn add(self, rhs: &MzvCombo) -> MzvCombo {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MzvCombo> for &MzvCombo {
    type Output = MzvCombo;
    fn sub(self, rhs: &MzvCombo) -> MzvCombo {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for MzvCombo {
    type Output = MzvCombo;
    fn add(mut self, rhs: MzvCombo) -> MzvCombo {
        self += &rhs;
        self
    }
}

impl Sub for MzvCombo {
    type Output = MzvCombo;
    fn sub(mut self, rhs: MzvCombo) -> MzvCombo {
        self -= &rhs;
        self
    }
}

impl Neg for MzvCombo {
    type Output = MzvCombo;
    fn neg(mut self) -> MzvCombo {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Mul<&Rational> for &MzvCombo {
    type Output = MzvCombo;
    fn mul(self, k: &Rational) -> MzvCombo {
        self.scaled(k)
    }
}

impl FromIterator<(Composition, Rational)> for MzvCombo {
    fn from_iter<T: IntoIterator<Item = (Composition, Rational)>>(iter: T) -> Self {
        let mut m = MzvCombo::zero();
        for (c, k) in iter {
            m.add_term(c, k);
        }
        m
    }
}

/// One summand `coeff * zeta(f_1) * ... * zeta(f_m)` of a product expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTerm {
    pub coeff: Rational,
    pub factors: Vec<Composition>,
}

/// A rational combination of products of MZVs, multiplied as real numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductCombo {
    pub terms: Vec<ProductTerm>,
}

impl ProductCombo {
    pub fn new() -> Self {
        ProductCombo::default()
    }

    pub fn push(&mut self, coeff: Rational, factors: Vec<Composition>) -> Result<()> {
        for f in &factors {
            f.check_admissible()?;
        }
        self.terms.push(ProductTerm { coeff, factors });
        Ok(())
    }

    pub fn product(factors: &[&[u32]]) -> Result<Self> {
        let mut p = ProductCombo::new();
        p.push(Rational::one(), factors.iter().map(|f| Composition::new(f.to_vec())).collect::<Result<_>>()?)?;
        Ok(p)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight of the first term, checking all terms agree.
    pub fn weight(&self) -> Result<Option<u32>> {
        let mut w = None;
        for t in &self.terms {
            let tw: u32 = t.factors.iter().map(|f| f.weight()).sum();
            match w {
                None => w = Some(tw),
                Some(x) if x != tw => {
                    return Err(MzvError::domain("product combination is not homogeneous"))
                }
                _ => {}
            }
        }
        Ok(w)
    }
}

impl fmt::Display for ProductCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}", t.coeff)?;
            for c in &t.factors {
                write!(f, "*z({c})")?;
            }
        }
        Ok(())
    }
}
