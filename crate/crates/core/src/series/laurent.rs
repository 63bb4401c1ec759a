use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{MzvCombo, Rational};
use crate::error::{MzvError, Result};

/// Lowest exponent any variable may carry.
pub const EXPONENT_FLOOR: i32 = -2;

pub type Exponents = Vec<i32>;

/// An ordered universe of formal variables shared by related series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Vars {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// `x1, ..., xk`.
    pub fn indexed(prefix: &str, k: usize) -> Vars {
        Vars((1..=k).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn monomial_string(&self, e: &[i32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { self.name(i).to_string() } else { format!("{}^{k}", self.name(i)) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A homogeneous linear form `sum c_i x_i` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm(Vec<Rational>);

impl LinearForm {
    pub fn zero(n: usize) -> LinearForm {
        LinearForm(vec![Rational::zero(); n])
    }

    pub fn var(n: usize, i: usize) -> LinearForm {
        let mut f = LinearForm::zero(n);
        f.0[i] = Rational::one();
        f
    }

    /// Sum of the listed variables.
    pub fn sum_of(n: usize, idx: &[usize]) -> LinearForm {
        let mut f = LinearForm::zero(n);
        for &i in idx {
            f.0[i] += Rational::one();
        }
        f
    }

    pub fn from_coeffs(c: Vec<Rational>) -> LinearForm {
        LinearForm(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &LinearForm) -> LinearForm {
        LinearForm(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &LinearForm) -> LinearForm {
        LinearForm(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> LinearForm {
        LinearForm(self.0.iter().map(|a| a * k).collect())
    }

    /// `Some((i, c))` when the form is `c * x_i`.
    pub fn single_var(&self) -> Option<(usize, Rational)> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect();
        (nz.len() == 1).then(|| (nz[0], self.0[nz[0]].clone()))
    }

    /// Relabels variables: `x_i -> x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> LinearForm {
        let mut out = LinearForm::zero(self.0.len());
        for (i, c) in self.0.iter().enumerate() {
            out.0[perm[i]] += c;
        }
        out
    }

    /// Rewrites the form under `x_i -> forms[i]`.
    pub fn substitute(&self, forms: &[LinearForm], n_target: usize) -> LinearForm {
        let mut out = LinearForm::zero(n_target);
        for (i, c) in self.0.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&forms[i].scale(c));
            }
        }
        out
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.0.iter().zip(values).map(|(a, b)| a * b).fold(Rational::zero(), |s, t| s + t)
    }

    /// The form with its first nonzero coefficient made positive, and
    /// whether a sign flip was needed.
    pub fn normalized(&self) -> (LinearForm, bool) {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => (self.scale(&-Rational::one()), true),
            _ => (self.clone(), false),
        }
    }

    pub fn display(&self, vars: &Vars) -> String {
        let mut s = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(vars.name(i));
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

/// Polynomial with rational coefficients, used for multinomial expansion.
type Poly = BTreeMap<Exponents, Rational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(Rational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_one(n: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![0; n], Rational::one());
    p
}

fn form_poly(f: &LinearForm) -> Poly {
    let n = f.len();
    let mut p = Poly::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.insert(e, c.clone());
        }
    }
    p
}

/// Cache of powers of the forms used in one substitution.
struct Powers {
    forms: Vec<Poly>,
    cache: HashMap<(usize, u32), Poly>,
    n: usize,
}

impl Powers {
    fn new(forms: &[LinearForm], n: usize) -> Powers {
        Powers { forms: forms.iter().map(form_poly).collect(), cache: HashMap::new(), n }
    }

    fn pow(&mut self, i: usize, k: u32) -> Poly {
        if k == 0 {
            return poly_one(self.n);
        }
        if let Some(p) = self.cache.get(&(i, k)) {
            return p.clone();
        }
        let p = poly_mul(&self.pow(i, k - 1), &self.forms[i]);
        self.cache.insert((i, k), p.clone());
        p
    }
}

fn degree(e: &[i32]) -> i32 {
    e.iter().sum()
}

/// A truncated multivariate Laurent series with MZV-combination
/// coefficients. Every monomial of total degree at most `cutoff` is exact;
/// nothing above it is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    vars: Vars,
    cutoff: i32,
    terms: BTreeMap<Exponents, MzvCombo>,
}

impl Series {
    pub fn zero(vars: &Vars, cutoff: i32) -> Series {
        Series { vars: vars.clone(), cutoff, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: MzvCombo, cutoff: i32) -> Series {
        Series::monomial(vars, vec![0; vars.len()], c, cutoff).expect("constant is in range")
    }

    pub fn monomial(vars: &Vars, e: Exponents, c: MzvCombo, cutoff: i32) -> Result<Series> {
        let mut s = Series::zero(vars, cutoff);
        s.add_term(e, &c, &Rational::one())?;
        Ok(s)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn cutoff(&self) -> i32 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &MzvCombo)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i32]) -> MzvCombo {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Lowest total degree present, if any.
    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    /// Adds `k * c * x^e`, dropping it above the cutoff.
    pub fn add_term(&mut self, e: Exponents, c: &MzvCombo, k: &Rational) -> Result<()> {
        if degree(&e) > self.cutoff || c.is_zero() || k.is_zero() {
            return Ok(());
        }
        if let Some(i) = e.iter().position(|&x| x < EXPONENT_FLOOR) {
            return Err(MzvError::domain(format!(
                "exponent {} of {} below the floor {EXPONENT_FLOOR}",
                e[i],
                self.vars.name(i)
            )));
        }
        let vanished = {
            let slot = self.terms.entry(e.clone()).or_default();
            slot.add_scaled(c, k);
            slot.is_zero()
        };
        if vanished {
            self.terms.remove(&e);
        }
        Ok(())
    }

    fn check_vars(&self, o: &Series) -> Result<()> {
        if self.vars != o.vars {
            return Err(MzvError::domain("series over different variable sets"));
        }
        Ok(())
    }

    /// Lowers the cutoff, discarding higher terms.
    pub fn truncate(&self, cutoff: i32) -> Series {
        let c = cutoff.min(self.cutoff);
        Series {
            vars: self.vars.clone(),
            cutoff: c,
            terms: self.terms.iter().filter(|(e, _)| degree(e) <= c).map(|(e, v)| (e.clone(), v.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Series) -> Result<Series> {
        self.add_scaled(o, &Rational::one())
    }

    pub fn sub(&self, o: &Series) -> Result<Series> {
        self.add_scaled(o, &-Rational::one())
    }

    /// `self + k * o`, with the smaller of the two cutoffs.
    pub fn add_scaled(&self, o: &Series, k: &Rational) -> Result<Series> {
        self.check_vars(o)?;
        let mut out = self.truncate(o.cutoff);
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c, k)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Rational) -> Series {
        if k.is_zero() {
            return Series::zero(&self.vars, self.cutoff);
        }
        Series {
            vars: self.vars.clone(),
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scaled(k))).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        self.scale(&-Rational::one())
    }

    /// Multiplies by `x^e`; the exact range moves up by `deg(e)`.
    pub fn mul_monomial(&self, e: &[i32]) -> Result<Series> {
        let d = degree(e);
        let mut out = Series::zero(&self.vars, self.cutoff + d);
        for (f, c) in &self.terms {
            let g: Exponents = f.iter().zip(e).map(|(a, b)| a + b).collect();
            out.add_term(g, c, &Rational::one())?;
        }
        Ok(out)
    }

    /// Exponent shift by -1 on `var`.
    pub fn divide_by_var(&self, var: usize) -> Result<Series> {
        let mut e = vec![0; self.vars.len()];
        e[var] = -1;
        self.mul_monomial(&e)
    }

    /// Product with a linear form.
    pub fn mul_linear(&self, f: &LinearForm) -> Result<Series> {
        let mut out = Series::zero(&self.vars, self.cutoff + 1);
        for (e, c) in &self.terms {
            for (i, k) in f.coeffs().iter().enumerate() {
                if !k.is_zero() {
                    let mut g = e.clone();
                    g[i] += 1;
                    out.add_term(g, c, k)?;
                }
            }
        }
        Ok(out)
    }

    /// Relabels variables within the same universe: `x_i -> x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Series {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut g = vec![0; e.len()];
            for (i, &k) in e.iter().enumerate() {
                g[perm[i]] += k;
            }
            terms.insert(g, c.clone());
        }
        Series { vars: self.vars.clone(), cutoff: self.cutoff, terms }
    }

    /// Substitutes `x_i -> forms[i]` (forms over `target`) and re-expands.
    /// A negative power is only allowed when its form is a single scaled
    /// variable. The cutoff is kept: forms are homogeneous of degree one.
    pub fn substitute_linear(&self, target: &Vars, forms: &[LinearForm]) -> Result<Series> {
        if forms.len() != self.vars.len() {
            return Err(MzvError::domain("substitution must assign every variable"));
        }
        let n = target.len();
        let mut pw = Powers::new(forms, n);
        let mut out = Series::zero(target, self.cutoff);
        for (e, c) in &self.terms {
            let mut poly = poly_one(n);
            let mut dead = false;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    if forms[i].is_zero() {
                        dead = true;
                        break;
                    }
                    poly = poly_mul(&poly, &pw.pow(i, k as u32));
                } else if k < 0 {
                    let (j, a) = forms[i].single_var().ok_or_else(|| {
                        MzvError::domain(format!(
                            "negative power of {} under a non-monomial substitution",
                            self.vars.name(i)
                        ))
                    })?;
                    let mut m = poly_one(n);
                    let (key, val) = m.pop_first().unwrap();
                    let mut key = key;
                    key[j] = k;
                    let val = val / num_traits::pow(a, (-k) as usize);
                    m.insert(key, val);
                    poly = poly_mul(&poly, &m);
                }
            }
            if dead {
                continue;
            }
            for (g, k) in poly {
                out.add_term(g, c, &k)?;
            }
        }
        Ok(out)
    }

    /// Formal partial derivative in `var`.
    pub fn differentiate(&self, var: usize) -> Result<Series> {
        let mut out = Series::zero(&self.vars, self.cutoff - 1);
        for (e, c) in &self.terms {
            if e[var] != 0 {
                let mut g = e.clone();
                g[var] -= 1;
                out.add_term(g, c, &Rational::from_integer(e[var].into()))?;
            }
        }
        Ok(out)
    }

    /// Exact quotient by a nonzero linear form, or an error when the
    /// division leaves a remainder.
    pub fn divide_linear(&self, f: &LinearForm) -> Result<Series> {
        if let Some((i, a)) = f.single_var() {
            return Ok(self.divide_by_var(i)?.scale(&(Rational::one() / a)));
        }
        let pivot = (0..f.len())
            .rev()
            .find(|&v| !f.coeffs()[v].is_zero() && self.terms.keys().all(|e| e[v] >= 0))
            .ok_or_else(|| MzvError::domain("no usable pivot for linear division"))?;
        let lead = f.coeffs()[pivot].clone();
        let mut rest = f.clone();
        rest.0[pivot] = Rational::zero();

        let mut work = self.clone();
        let mut quot = Series::zero(&self.vars, self.cutoff - 1);
        let top = work.terms.keys().map(|e| e[pivot]).max().unwrap_or(0);
        for k in (1..=top).rev() {
            let layer: Vec<(Exponents, MzvCombo)> = work
                .terms
                .iter()
                .filter(|(e, _)| e[pivot] == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect();
            for (e, c) in layer {
                let mut q = e.clone();
                q[pivot] -= 1;
                let kq = Rational::one() / &lead;
                quot.add_term(q.clone(), &c, &kq)?;
                work.terms.remove(&e);
                // subtract q * rest
                for (i, r) in rest.coeffs().iter().enumerate() {
                    if !r.is_zero() {
                        let mut g = q.clone();
                        g[i] += 1;
                        work.add_term(g, &c, &-(r * &kq))?;
                    }
                }
            }
        }
        if let Some((e, _)) = work.terms.iter().next() {
            return Err(MzvError::domain(format!(
                "{} does not divide exactly (remainder at {})",
                f.display(&self.vars),
                self.vars.monomial_string(e)
            )));
        }
        Ok(quot)
    }

    /// Replaces the power `x_var^m` by the divided difference
    /// `(A^m - B^m) / (A - B) = sum_{p+q=m-1} A^p B^q` and every other
    /// variable by `forms[i]`; the entry `forms[var]` is ignored.
    pub fn divided_difference(
        &self,
        var: usize,
        target: &Vars,
        a: &LinearForm,
        b: &LinearForm,
        forms: &[LinearForm],
    ) -> Result<Series> {
        let n = target.len();
        let mut fs: Vec<LinearForm> = forms.to_vec();
        fs.push(a.clone());
        fs.push(b.clone());
        let ia = fs.len() - 2;
        let ib = fs.len() - 1;
        let mut pw = Powers::new(&fs, n);
        let mut base: Vec<LinearForm> = forms.to_vec();
        base[var] = LinearForm::zero(n);
        let mut out = Series::zero(target, self.cutoff - 1);
        for (e, c) in &self.terms {
            let m = e[var];
            if m < 0 {
                return Err(MzvError::domain("divided difference of a negative power"));
            }
            if m == 0 {
                continue;
            }
            let mut rest = e.clone();
            rest[var] = 0;
            let tail = Series::monomial(&self.vars, rest, c.clone(), i32::MAX / 2)?;
            let moved = tail.substitute_linear(target, &base)?;
            let mut dd = Poly::new();
            for p in 0..m {
                let term = poly_mul(&pw.pow(ia, p as u32), &pw.pow(ib, (m - 1 - p) as u32));
                for (g, k) in term {
                    *dd.entry(g).or_insert_with(Rational::zero) += k;
                }
            }
            for (g1, c1) in &moved.terms {
                for (g2, k2) in &dd {
                    let g: Exponents = g1.iter().zip(g2).map(|(x, y)| x + y).collect();
                    out.add_term(g, c1, k2)?;
                }
            }
        }
        Ok(out)
    }

    /// The total-degree-`n` slice.
    pub fn homogeneous_part(&self, n: i32) -> Result<Series> {
        if n > self.cutoff {
            return Err(MzvError::domain(format!("degree {n} above the cutoff {}", self.cutoff)));
        }
        Ok(Series {
            vars: self.vars.clone(),
            cutoff: n,
            terms: self.terms.iter().filter(|(e, _)| degree(e) == n).map(|(e, c)| (e.clone(), c.clone())).collect(),
        })
    }

    /// Evaluates every monomial at rational values and sums.
    pub fn specialize(&self, values: &[Rational]) -> Result<MzvCombo> {
        if values.len() != self.vars.len() {
            return Err(MzvError::domain("specialization must assign every variable"));
        }
        let mut out = MzvCombo::zero();
        for (e, c) in &self.terms {
            let mut k = Rational::one();
            for (i, &p) in e.iter().enumerate() {
                if p < 0 {
                    if values[i].is_zero() {
                        return Err(MzvError::domain(format!(
                            "negative power of {} specialized at 0",
                            self.vars.name(i)
                        )));
                    }
                    k /= num_traits::pow(values[i].clone(), (-p) as usize);
                } else {
                    k *= num_traits::pow(values[i].clone(), p as usize);
                }
            }
            out.add_scaled(c, &k);
        }
        Ok(out)
    }

    /// Monomials with some negative exponent.
    pub fn negative_terms(&self) -> Vec<(Exponents, MzvCombo)> {
        self.terms.iter().filter(|(e, _)| e.iter().any(|&k| k < 0)).map(|(e, c)| (e.clone(), c.clone())).collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(deg {})", self.cutoff + 1);
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", self.vars.monomial_string(e))?;
        }
        write!(f, " + O(deg {})", self.cutoff + 1)
    }
}
