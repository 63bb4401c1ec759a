use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::Rational;
use crate::error::{MzvError, Result};

use super::laurent::{LinearForm, Series, Vars};

/// A series numerator over a product of pending linear-form denominators.
/// Single-variable denominators never appear here: they are applied at
/// once as exponent shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub num: Series,
    pub dens: Vec<LinearForm>,
}

/// A sum of [`Term`]s: the shape of the closed-form expressions built from
/// generating functions, which are polynomial only after terms with
/// matching denominators are combined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    vars: Vars,
    terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryKind {
    /// Every permutation of the targets.
    Full,
    /// The cyclic shifts of the targets.
    Cyclic,
    /// Listed permutations; entry `p[i] = j` sends target `i` to target `j`.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetrySpec {
    pub kind: SymmetryKind,
    pub targets: Vec<usize>,
}

fn all_perms(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

impl SymmetrySpec {
    pub fn full(targets: &[usize]) -> SymmetrySpec {
        SymmetrySpec { kind: SymmetryKind::Full, targets: targets.to_vec() }
    }

    pub fn cyclic(targets: &[usize]) -> SymmetrySpec {
        SymmetrySpec { kind: SymmetryKind::Cyclic, targets: targets.to_vec() }
    }

    /// Maps on the whole universe of `n` variables, `x_i -> x_{m[i]}`.
    pub fn permutations(&self, n: usize) -> Vec<Vec<usize>> {
        let k = self.targets.len();
        let local: Vec<Vec<usize>> = match &self.kind {
            SymmetryKind::Full => all_perms(k),
            SymmetryKind::Cyclic => (0..k).map(|s| (0..k).map(|i| (i + s) % k).collect()).collect(),
            SymmetryKind::Explicit(ps) => ps.clone(),
        };
        local
            .into_iter()
            .map(|p| {
                let mut m: Vec<usize> = (0..n).collect();
                for (i, &j) in p.iter().enumerate() {
                    m[self.targets[i]] = self.targets[j];
                }
                m
            })
            .collect()
    }
}

impl Expr {
    pub fn zero(vars: &Vars) -> Expr {
        Expr { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn from_series(s: Series) -> Expr {
        Expr { vars: s.vars().clone(), terms: vec![Term { num: s, dens: Vec::new() }] }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn plus(mut self, o: Expr) -> Expr {
        self.terms.extend(o.terms);
        self
    }

    pub fn minus(self, o: Expr) -> Expr {
        self.plus(o.scale(&-Rational::one()))
    }

    pub fn scale(mut self, k: &Rational) -> Expr {
        for t in &mut self.terms {
            t.num = t.num.scale(k);
        }
        self
    }

    /// Divides every term by a linear form.
    pub fn over(mut self, f: &LinearForm) -> Result<Expr> {
        if f.is_zero() {
            return Err(MzvError::domain("division by the zero form"));
        }
        for t in &mut self.terms {
            if let Some((i, a)) = f.single_var() {
                t.num = t.num.divide_by_var(i)?.scale(&(Rational::one() / a));
            } else {
                t.dens.push(f.clone());
            }
        }
        Ok(self)
    }

    /// `x_i -> x_{perm[i]}` applied to numerators and denominators.
    pub fn permute(&self, perm: &[usize]) -> Expr {
        Expr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { num: t.num.permute(perm), dens: t.dens.iter().map(|d| d.permute(perm)).collect() })
                .collect(),
        }
    }

    /// Sum over the permutations described by `spec`.
    pub fn symmetrize(&self, spec: &SymmetrySpec) -> Expr {
        let mut out = Expr::zero(&self.vars);
        for p in spec.permutations(self.vars.len()) {
            out = out.plus(self.permute(&p));
        }
        out
    }

    /// Combines terms until no denominator is left, dividing exactly.
    /// Terms sharing a denominator are summed first; whatever is still
    /// pending is brought over a common denominator. Fails when some
    /// denominator cannot be cleared.
    pub fn resolve(&self) -> Result<Series> {
        let mut floor = self.cutoff().unwrap_or(0);
        let mut out: Option<Series> = None;
        let mut pending: Vec<Term> = Vec::new();
        let mut absorb = |s: Series, floor: &mut i32| -> Result<()> {
            *floor = (*floor).min(s.cutoff());
            out = Some(match out.take() {
                Some(o) => o.add(&s)?,
                None => s,
            });
            Ok(())
        };
        for t in &self.terms {
            let (num, dens) = normalize(t);
            let (num, dens) = divide_what_you_can(num, dens);
            if dens.is_empty() {
                absorb(num, &mut floor)?;
            } else {
                pending.push(Term { num, dens });
            }
        }
        let mut combined = false;
        while !pending.is_empty() {
            let mut groups: BTreeMap<Vec<LinearForm>, Series> = BTreeMap::new();
            for t in pending.drain(..) {
                let mut key = t.dens.clone();
                key.sort();
                match groups.get_mut(&key) {
                    Some(s) => *s = s.add(&t.num)?,
                    None => {
                        groups.insert(key, t.num);
                    }
                }
            }
            let mut progress = false;
            let mut stuck = Vec::new();
            for (dens, num) in groups {
                if num.is_zero() {
                    floor = floor.min(num.cutoff() - dens.len() as i32);
                    progress = true;
                    continue;
                }
                let before = dens.len();
                let (num, rest) = divide_what_you_can(num, dens);
                progress |= rest.len() < before;
                if rest.is_empty() {
                    absorb(num, &mut floor)?;
                } else {
                    stuck.push(Term { num, dens: rest });
                }
            }
            if progress {
                pending = stuck;
                continue;
            }
            if combined || stuck.len() < 2 {
                let names: Vec<String> = stuck
                    .iter()
                    .map(|t| t.dens.iter().map(|d| d.display(&self.vars)).collect::<Vec<_>>().join(")("))
                    .collect();
                return Err(MzvError::domain(format!("denominators do not cancel: ({})", names.join("), ("))));
            }
            pending = vec![over_common_denominator(stuck)?];
            combined = true;
        }
        let out = out.unwrap_or_else(|| Series::zero(&self.vars, floor));
        Ok(out.truncate(floor))
    }

    /// Smallest cutoff among the numerators.
    pub fn cutoff(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.num.cutoff()).min()
    }
}

fn normalize(t: &Term) -> (Series, Vec<LinearForm>) {
    let mut num = t.num.clone();
    let mut dens = Vec::new();
    for d in &t.dens {
        let (n, flipped) = d.normalized();
        if flipped {
            num = num.neg();
        }
        dens.push(n);
    }
    (num, dens)
}

/// Sums terms over the least common multiple of their denominators.
fn over_common_denominator(terms: Vec<Term>) -> Result<Term> {
    let mut lcm: Vec<LinearForm> = Vec::new();
    for t in &terms {
        let mut have = lcm.clone();
        for d in &t.dens {
            match have.iter().position(|x| x == d) {
                Some(i) => {
                    have.remove(i);
                }
                None => lcm.push(d.clone()),
            }
        }
    }
    let mut total: Option<Series> = None;
    for t in terms {
        let mut missing = lcm.clone();
        for d in &t.dens {
            let i = missing.iter().position(|x| x == d).expect("denominator is part of the lcm");
            missing.remove(i);
        }
        let mut num = t.num;
        for m in &missing {
            num = num.mul_linear(m)?;
        }
        total = Some(match total {
            Some(s) => s.add(&num)?,
            None => num,
        });
    }
    Ok(Term { num: total.expect("at least two terms"), dens: lcm })
}

fn divide_what_you_can(mut num: Series, mut dens: Vec<LinearForm>) -> (Series, Vec<LinearForm>) {
    loop {
        let mut hit = None;
        for (i, d) in dens.iter().enumerate() {
            if let Ok(q) = num.divide_linear(d) {
                hit = Some((i, q));
                break;
            }
        }
        match hit {
            Some((i, q)) => {
                num = q;
                dens.remove(i);
            }
            None => return (num, dens),
        }
    }
}
