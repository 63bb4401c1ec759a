//! Catalog of weighted sum formulas. Each entry turns `n` and a parameter
//! point into an [`IdentityCandidate`]: a combination asserted to vanish,
//! optionally paired with a product it must equal.

mod classic;
mod parametric;
mod products;
mod terms;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{stuffle_expand, MzvCombo, ProductCombo, Rational};
use crate::error::{MzvError, Result};
use crate::eval::parse_decimal;
use crate::verify::{Verdict, Verifier};

pub use classic::{
    cor_1st3rd, cor_3riezeta, cor_depth4, cor_depth4_printed, cor_mid1, cor_triple_dbl, euler_sum, g2_der, g2_derder, hoffman_j1k,
    hoffman_jk1, hoffman_l2, ohno_zudilin, steps, sum_formula,
};
pub use parametric::{
    depth4_monomial_set, thm_1st3rd_abc, thm_2nd3rd_abc, thm_depth4, thm_triple_dbl, thm_triple_dbl_reduce,
};
pub use products::ProductClaim;

/// A point in parameter space, written `1,2/3,-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParameterPoint(pub Vec<Rational>);

impl ParameterPoint {
    pub fn new(values: Vec<Rational>) -> ParameterPoint {
        ParameterPoint(values)
    }

    pub fn ints(values: &[i64]) -> ParameterPoint {
        ParameterPoint(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a + b` for points with at least two coordinates.
    pub fn sigma(&self) -> Option<Rational> {
        (self.0.len() >= 2).then(|| &self.0[0] + &self.0[1])
    }

    /// Parses a `;`-separated list of points.
    pub fn parse_grid(s: &str) -> Result<Vec<ParameterPoint>> {
        s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }

    fn positive_ints(&self, id: &str) -> Result<Vec<u32>> {
        self.0
            .iter()
            .map(|v| {
                if v.is_integer() && v >= &Rational::one() {
                    u32::try_from(v.to_integer()).map_err(|_| MzvError::domain(format!("{id}: argument {v} too large")))
                } else {
                    Err(MzvError::domain(format!("{id} takes positive integer arguments, got {v}")))
                }
            })
            .collect()
    }
}

impl FromStr for ParameterPoint {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<ParameterPoint> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(ParameterPoint::default());
        }
        s.split(',')
            .map(|t| {
                let t = t.trim();
                let bad = || MzvError::domain(format!("cannot parse parameter '{t}'"));
                match t.split_once('/') {
                    Some((num, den)) => {
                        let num = parse_decimal(num.trim()).map_err(|_| bad())?;
                        let den = parse_decimal(den.trim()).map_err(|_| bad())?;
                        if den.is_zero() {
                            return Err(bad());
                        }
                        Ok(num / den)
                    }
                    None => parse_decimal(t).map_err(|_| bad()),
                }
            })
            .collect::<Result<_>>()
            .map(ParameterPoint)
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParameterPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// Real parameters sampled at rationals.
    Rational,
    /// Positive integer arguments of a product.
    Integer,
}

/// Static description of one catalog entry.
#[derive(Clone, Debug)]
pub struct FormulaDescriptor {
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub kind: ParamKind,
    /// Smallest admissible `n`.
    pub min_n: u32,
    /// The candidate has weight `n + weight_offset`.
    pub weight_offset: u32,
    /// Readings of an ambiguous formula; the first is the default.
    pub variants: &'static [&'static str],
    /// Parameter point used when none is given.
    pub defaults: &'static [i64],
    pub summary: &'static str,
}

impl FormulaDescriptor {
    pub fn weight(&self, n: u32) -> u32 {
        n + self.weight_offset
    }

    fn check_n(&self, n: u32) -> Result<()> {
        if n < self.min_n {
            return Err(MzvError::domain(format!("{} needs n >= {}, got {n}", self.id, self.min_n)));
        }
        Ok(())
    }

    fn resolve_params(&self, params: &ParameterPoint) -> Result<ParameterPoint> {
        let p = if params.is_empty() { ParameterPoint::ints(self.defaults) } else { params.clone() };
        if p.len() != self.params.len() {
            return Err(MzvError::domain(format!(
                "{} takes {} parameter(s) ({}), got {}",
                self.id,
                self.params.len(),
                self.params.join(","),
                p.len()
            )));
        }
        Ok(p)
    }

    fn resolve_variant(&self, variant: Option<&str>) -> Result<Option<&'static str>> {
        match variant {
            None => Ok(self.variants.first().copied()),
            Some(v) => self
                .variants
                .iter()
                .find(|&&x| x == v)
                .copied()
                .map(Some)
                .ok_or_else(|| MzvError::domain(format!("{} has no variant '{v}'", self.id))),
        }
    }
}

const fn entry(
    id: &'static str,
    params: &'static [&'static str],
    kind: ParamKind,
    min_n: u32,
    variants: &'static [&'static str],
    defaults: &'static [i64],
    summary: &'static str,
) -> FormulaDescriptor {
    FormulaDescriptor { id, params, kind, min_n, weight_offset: 0, variants, defaults, summary }
}

use ParamKind::{Integer as I, Rational as R};

static CATALOG: [FormulaDescriptor; 24] = [
    entry("euler-sum", &[], R, 3, &[], &[], "sum of zeta(j,k) over j+k=n equals zeta(n)"),
    entry("sum-formula", &["depth"], I, 3, &[], &[2], "sum of all admissible zeta of weight n and given depth equals zeta(n)"),
    entry("ohno-zudilin", &[], R, 3, &[], &[], "sum of 2^j zeta(j,k) equals (n+1) zeta(n)"),
    entry("g2-der", &[], R, 3, &[], &[], "first moment sum of k zeta(k,n-k)"),
    entry("g2-derder", &[], R, 4, &[], &[], "second moment sum of k^2 zeta(k,n-k)"),
    entry("thm-1st3rd-abc", &["a", "b", "c"], R, 4, &[], &[1, 2, 3], "three-parameter family from two expansions of a triple product"),
    entry("cor-1st3rd", &[], R, 4, &[], &[], "depth-three weighted sum with weights 2^(j-1)"),
    entry("thm-2nd3rd-abc", &["a", "b", "c"], R, 4, &[], &[1, 2, 5], "second three-parameter family from a triple product"),
    entry("cor-3riezeta", &[], R, 4, &[], &[], "depth-three weighted sum with weights 2^(j+1)+2^k"),
    entry("thm-triple-dbl", &["a", "b", "c"], R, 4, &[], &[1, 2, 3], "three-parameter family from zeta(s1,s2) zeta(s3)"),
    entry("thm-triple-dbl-reduce", &["a", "b"], R, 4, &[], &[1, 2], "two-parameter family relating triple and double sums"),
    entry("cor-triple-dbl", &[], R, 4, &[], &[], "depth-three weighted sum with weights 2j+k"),
    FormulaDescriptor {
        weight_offset: 1,
        ..entry("cor-mid1", &[], R, 3, &[], &[], "sum of zeta(k,1,n-k), of weight n+1")
    },
    entry("hoffman-j1k", &[], R, 4, &[], &[], "sum of zeta(j,1,k) over j+k=n-1"),
    entry("hoffman-jk1", &[], R, 4, &[], &[], "sum of zeta(j,k,1) over j+k=n-1"),
    entry("hoffman-l2", &[], R, 4, &[], &[], "sum of zeta(2,j,k) over j+k=n-2"),
    entry(
        "thm-depth4",
        &["a", "b", "c", "d"],
        R,
        4,
        &["cycle", "cycle-inverse", "transpositions", "stuffle-derived"],
        &[1, 2, 3, 4],
        "four-parameter family from the product of two double zeta values",
    ),
    entry("cor-depth4", &[], R, 5, &[], &[], "depth-four weighted sum with weights 2^(i-1)+2^k"),
    entry("cor-depth4-printed", &[], R, 5, &[], &[], "the depth-four weighted sum with the zeta(n) sign as printed"),
    entry("product-check-2", &["s1"], I, 4, &[], &[2], "Euler decomposition of zeta(s1) zeta(n-s1)"),
    entry("product-check-21", &["s1", "s2"], I, 5, &[], &[2, 1], "shuffle expansion of zeta(s1,s2) zeta(n-s1-s2)"),
    entry(
        "product-check-22",
        &["s1", "s2", "s3"],
        I,
        6,
        &["guo-xie", "stuffle"],
        &[2, 1, 2],
        "expansions of zeta(s1,s2) zeta(s3,n-s1-s2-s3)",
    ),
    entry("euler-decomposition-literal", &["s1"], I, 4, &[], &[2], "Euler decomposition with the binomials read as printed"),
    entry("stuffle-13-literal", &["s1", "s2", "s3"], I, 6, &[], &[2, 1, 2], "thirteen-term stuffle list as printed"),
];

/// Every catalog entry, in a fixed order.
pub fn catalog() -> &'static [FormulaDescriptor] {
    &CATALOG
}

pub fn descriptor(id: &str) -> Result<&'static FormulaDescriptor> {
    CATALOG.iter().find(|d| d.id == id).ok_or_else(|| MzvError::domain(format!("unknown formula id '{id}'")))
}

/// A generated identity: `combo` vanishes, or `product - combo` does when a
/// product is present.
#[derive(Clone, Debug)]
pub struct IdentityCandidate {
    pub id: &'static str,
    pub n: u32,
    pub params: ParameterPoint,
    pub variant: Option<&'static str>,
    pub weight: u32,
    pub combo: MzvCombo,
    pub product: Option<ProductCombo>,
}

impl IdentityCandidate {
    /// The single combination asserted to vanish, with products expanded by stuffle.
    pub fn difference(&self) -> MzvCombo {
        match &self.product {
            None => self.combo.clone(),
            Some(p) => &stuffle_expand(p) - &self.combo,
        }
    }

    pub fn check(&self, verifier: &Verifier) -> Result<Verdict> {
        match &self.product {
            None => verifier.check(&self.combo),
            Some(p) => verifier.check_product(p, &self.combo),
        }
    }
}

fn split_last(id: &str, n: u32, args: &[u32], min_last: u32) -> Result<u32> {
    let used: u32 = args.iter().sum();
    if n < used + min_last {
        return Err(MzvError::domain(format!("{id}: arguments {args:?} leave no admissible last argument at n = {n}")));
    }
    Ok(n - used)
}

fn need_at_least_two(id: &str, s: u32, name: &str) -> Result<()> {
    if s < 2 {
        return Err(MzvError::domain(format!("{id}: {name} must be at least 2")));
    }
    Ok(())
}

fn product_candidate(id: &str, n: u32, args: &[u32], variant: Option<&str>) -> Result<ProductClaim> {
    match id {
        "product-check-2" | "euler-decomposition-literal" => {
            need_at_least_two(id, args[0], "s1")?;
            let s2 = split_last(id, n, args, 2)?;
            if id == "product-check-2" {
                products::euler_product(args[0], s2)
            } else {
                products::euler_product_literal(args[0], s2)
            }
        }
        "product-check-21" => {
            need_at_least_two(id, args[0], "s1")?;
            let s3 = split_last(id, n, args, 2)?;
            products::double_single_product(args[0], args[1], s3)
        }
        "product-check-22" | "stuffle-13-literal" => {
            need_at_least_two(id, args[0], "s1")?;
            need_at_least_two(id, args[2], "s3")?;
            let s4 = split_last(id, n, args, 1)?;
            let s = [args[0], args[1], args[2], s4];
            if id == "stuffle-13-literal" {
                products::double_double_literal(s)
            } else {
                products::double_double_product(s, variant == Some("stuffle"))
            }
        }
        _ => Err(MzvError::Internal(format!("{id} is not a product check"))),
    }
}

/// Builds the candidate for catalog entry `id`. An empty `params` selects the
/// entry's default point; `variant = None` its default reading.
pub fn generate(id: &str, n: u32, params: &ParameterPoint, variant: Option<&str>) -> Result<IdentityCandidate> {
    let d = descriptor(id)?;
    d.check_n(n)?;
    let params = d.resolve_params(params)?;
    let variant = d.resolve_variant(variant)?;
    let p = params.values();
    let mut product = None;
    let combo = match d.id {
        "euler-sum" => euler_sum(n)?,
        "sum-formula" => {
            let depth = params.positive_ints(id)?[0];
            if depth >= n {
                return Err(MzvError::domain(format!("sum-formula needs weight > depth, got {n} and {depth}")));
            }
            sum_formula(n, depth)?
        }
        "ohno-zudilin" => ohno_zudilin(n)?,
        "g2-der" => g2_der(n)?,
        "g2-derder" => g2_derder(n)?,
        "thm-1st3rd-abc" => thm_1st3rd_abc(n, p)?,
        "cor-1st3rd" => cor_1st3rd(n)?,
        "thm-2nd3rd-abc" => thm_2nd3rd_abc(n, p)?,
        "cor-3riezeta" => cor_3riezeta(n)?,
        "thm-triple-dbl" => thm_triple_dbl(n, p)?,
        "thm-triple-dbl-reduce" => thm_triple_dbl_reduce(n, p)?,
        "cor-triple-dbl" => cor_triple_dbl(n)?,
        "cor-mid1" => cor_mid1(n)?,
        "hoffman-j1k" => hoffman_j1k(n)?,
        "hoffman-jk1" => hoffman_jk1(n)?,
        "hoffman-l2" => hoffman_l2(n)?,
        "thm-depth4" => {
            let set = depth4_monomial_set(variant.unwrap_or_default())
                .ok_or_else(|| MzvError::Internal("depth-four variant without a monomial set".into()))?;
            thm_depth4(n, p, &set)?
        }
        "cor-depth4" => cor_depth4(n)?,
        "cor-depth4-printed" => cor_depth4_printed(n)?,
        _ => {
            let args = params.positive_ints(id)?;
            let claim = product_candidate(d.id, n, &args, variant)?;
            product = Some(claim.product);
            claim.expansion
        }
    };
    let weight = d.weight(n);
    let check = match &product {
        None => combo.clone(),
        Some(pr) => &stuffle_expand(pr) - &combo,
    };
    if !check.is_zero() && (check.weight()? != Some(weight) || check.check_admissible().is_err()) {
        return Err(MzvError::Internal(format!("{id} at n = {n} is not homogeneous of weight {weight}")));
    }
    Ok(IdentityCandidate { id: d.id, n, params, variant, weight, combo, product })
}

/// One row of a scan. `verdict` is absent when the point was skipped.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub id: &'static str,
    pub n: u32,
    pub params: ParameterPoint,
    pub variant: Option<&'static str>,
    pub weight: u32,
    pub verdict: Option<Verdict>,
    /// Why the point was skipped.
    pub skipped: Option<String>,
    pub elapsed: Duration,
}

/// Checks `id` at every `n` in `ns`, every point of `grid` (the default point
/// when empty) and every variant (or only `variant`). Rows come back in
/// `(n, point, variant)` order; points where a printed denominator vanishes
/// are reported as skipped rather than failing the scan.
pub fn scan(
    id: &str,
    ns: RangeInclusive<u32>,
    grid: &[ParameterPoint],
    variant: Option<&str>,
    verifier: &Verifier,
) -> Result<Vec<ScanRow>> {
    let d = descriptor(id)?;
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    d.check_n(*ns.start())?;
    let default = [ParameterPoint::default()];
    let points = if grid.is_empty() { &default[..] } else { grid };
    let points: Vec<ParameterPoint> = points.iter().map(|p| d.resolve_params(p)).collect::<Result<_>>()?;
    let variants: Vec<Option<&'static str>> = match variant {
        Some(v) => vec![d.resolve_variant(Some(v))?],
        None if d.variants.is_empty() => vec![None],
        None => d.variants.iter().map(|&v| Some(v)).collect(),
    };
    let mut jobs = Vec::new();
    for n in ns {
        for p in &points {
            for &v in &variants {
                jobs.push((n, p.clone(), v));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(n, params, v)| {
            let start = Instant::now();
            let row = |verdict, skipped| ScanRow {
                id: d.id,
                n,
                params: params.clone(),
                variant: v,
                weight: d.weight(n),
                verdict,
                skipped,
                elapsed: start.elapsed(),
            };
            match generate(d.id, n, &params, v) {
                Ok(c) => Ok(row(Some(c.check(verifier)?), None)),
                Err(MzvError::Domain(msg)) => Ok(row(None, Some(msg))),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Coefficients, lowest first, of the polynomial `e -> f(base + e * dir)`,
/// recovered by exact interpolation at `degree + 1` sample points and
/// confirmed at one more. Samples at which `f` reports a domain error are
/// skipped, so `f` may be singular on finitely many points of the line.
pub fn along_line(
    f: impl Fn(&[Rational]) -> Result<MzvCombo>,
    base: &[Rational],
    dir: &[Rational],
    degree: usize,
) -> Result<Vec<MzvCombo>> {
    let mut xs: Vec<Rational> = Vec::new();
    let mut ys: Vec<MzvCombo> = Vec::new();
    let mut e = 0i64;
    while xs.len() < degree + 2 {
        e += 1;
        if e > 8 * (degree as i64 + 2) + 64 {
            return Err(MzvError::domain("too many singular points on the line"));
        }
        let eps = Rational::from_integer(e.into());
        let point: Vec<Rational> = base.iter().zip(dir).map(|(b, d)| b + &eps * d).collect();
        match f(&point) {
            Ok(y) => {
                xs.push(eps);
                ys.push(y);
            }
            Err(MzvError::Domain(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    let (check_x, check_y) = (xs.pop().unwrap(), ys.pop().unwrap());
    let poly = interpolate(&xs, &ys);
    let mut at = MzvCombo::zero();
    for c in poly.iter().rev() {
        at = &at.scaled(&check_x) + c;
    }
    if at != check_y {
        return Err(MzvError::domain(format!("values along the line are not a polynomial of degree <= {degree}")));
    }
    Ok(poly)
}

/// Newton interpolation through `(xs, ys)`, returned in the monomial basis.
fn interpolate(xs: &[Rational], ys: &[MzvCombo]) -> Vec<MzvCombo> {
    let m = xs.len();
    let mut dd: Vec<MzvCombo> = ys.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            let den = &xs[i] - &xs[i - level];
            dd[i] = (&dd[i] - &dd[i - 1]).scaled(&(Rational::one() / den));
        }
    }
    let mut poly = vec![dd[m - 1].clone()];
    for i in (0..m - 1).rev() {
        let mut next = vec![MzvCombo::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &c.scaled(&xs[i]);
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

/// Value of a polynomial family at `point`, approached along `dir`; use when
/// `point` itself makes a printed denominator vanish.
pub fn limit_along_line(
    f: impl Fn(&[Rational]) -> Result<MzvCombo>,
    point: &[Rational],
    dir: &[Rational],
    degree: usize,
) -> Result<MzvCombo> {
    Ok(along_line(f, point, dir, degree)?.swap_remove(0))
}
