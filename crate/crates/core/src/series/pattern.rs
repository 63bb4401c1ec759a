use crate::algebra::{shuffle_mzv, stuffle_combos, Composition, MzvCombo, Rational};
use crate::error::{MzvError, Result};

use super::laurent::{LinearForm, Series, Vars};

/// One position of an index pattern: either a summed part carried by a
/// formal argument, or a fixed part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Part `s >= min` contributing `arg^(s-1)`.
    Var { arg: LinearForm, min: u32 },
    Const(u32),
}

/// A sequence of slots; its generating series is
/// `sum prod arg_i^(s_i - 1) * zeta(parts)` over all allowed parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternTemplate {
    pub slots: Vec<Slot>,
}

impl PatternTemplate {
    pub fn new(slots: Vec<Slot>) -> PatternTemplate {
        PatternTemplate { slots }
    }

    /// Every slot summed, leading part at least 2: the generating function
    /// `G_d(args)`.
    pub fn full(args: &[LinearForm]) -> PatternTemplate {
        PatternTemplate {
            slots: args
                .iter()
                .enumerate()
                .map(|(i, a)| Slot::Var { arg: a.clone(), min: if i == 0 { 2 } else { 1 } })
                .collect(),
        }
    }

    fn check(&self) -> Result<()> {
        match self.slots.first() {
            None => Err(MzvError::domain("empty pattern")),
            Some(Slot::Const(m)) if *m < 2 => {
                Err(MzvError::domain(format!("pattern starts with the fixed part {m}: divergent")))
            }
            Some(Slot::Var { min, .. }) if *min < 2 => {
                Err(MzvError::domain("pattern's leading part may be 1: divergent"))
            }
            _ => {
                if self.slots.iter().any(|s| matches!(s, Slot::Const(0) | Slot::Var { min: 0, .. })) {
                    Err(MzvError::domain("parts must be positive"))
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// Enumerates exponent tuples `e_i >= lo_i` with `sum e_i <= budget`.
fn for_each_tuple(lo: &[u32], budget: i64, f: &mut dyn FnMut(&[u32])) {
    fn rec(lo: &[u32], budget: i64, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if cur.len() == lo.len() {
            f(cur);
            return;
        }
        let l = lo[cur.len()] as i64;
        let rest_min: i64 = lo[cur.len() + 1..].iter().map(|&x| x as i64).sum();
        let mut e = l;
        while e + rest_min <= budget {
            cur.push(e as u32);
            rec(lo, budget - e, cur, f);
            cur.pop();
            e += 1;
        }
    }
    rec(lo, budget, &mut Vec::new(), f);
}

/// The generating series of a pattern over `vars`, exact to total degree
/// `cutoff`.
pub fn gen_pattern(t: &PatternTemplate, vars: &Vars, cutoff: i32) -> Result<Series> {
    t.check()?;
    let var_slots: Vec<(usize, &LinearForm, u32)> = t
        .slots
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            Slot::Var { arg, min } => Some((i, arg, *min)),
            Slot::Const(_) => None,
        })
        .collect();
    // Build over private variables, one per summed slot, then substitute.
    let k = var_slots.len();
    let local = Vars::indexed("u", k);
    let mut s = Series::zero(&local, cutoff);
    let lo: Vec<u32> = var_slots.iter().map(|(_, _, m)| m - 1).collect();
    let mut err = None;
    for_each_tuple(&lo, cutoff.max(-1) as i64, &mut |e| {
        let mut parts = Vec::with_capacity(t.slots.len());
        let mut j = 0;
        for slot in &t.slots {
            match slot {
                Slot::Var { .. } => {
                    parts.push(e[j] + 1);
                    j += 1;
                }
                Slot::Const(m) => parts.push(*m),
            }
        }
        let exps: Vec<i32> = e.iter().map(|&x| x as i32).collect();
        if let Err(x) = s.add_term(exps, &MzvCombo::zeta(&parts), &Rational::from_integer(1.into())) {
            err = Some(x);
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let forms: Vec<LinearForm> = var_slots.iter().map(|(_, a, _)| (*a).clone()).collect();
    if forms.iter().any(|f| f.len() != vars.len()) {
        return Err(MzvError::domain("pattern argument over the wrong variable set"));
    }
    s.substitute_linear(vars, &forms)
}

/// `G_d(args)`, the generating function of depth `args.len()`.
pub fn gen_g(args: &[LinearForm], vars: &Vars, cutoff: i32) -> Result<Series> {
    gen_pattern(&PatternTemplate::full(args), vars, cutoff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Stuffle,
    Shuffle,
}

fn shuffle_combo(x: &MzvCombo, c: &Composition) -> Result<MzvCombo> {
    let mut out = MzvCombo::zero();
    for (u, k) in x.iter() {
        out.add_scaled(&shuffle_mzv(u, c)?, k);
    }
    Ok(out)
}

/// Generating series of a product of patterns, expanded by the stuffle or
/// shuffle product: `sum prod x^(s-1) * (zeta(first) * zeta(second) * ...)`.
/// Used as a brute-force reference for closed-form expansions.
pub fn product_series(
    factors: &[PatternTemplate],
    kind: ProductKind,
    vars: &Vars,
    cutoff: i32,
) -> Result<Series> {
    for f in factors {
        f.check()?;
    }
    let mut slots: Vec<(usize, usize, LinearForm, u32)> = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        for (si, s) in f.slots.iter().enumerate() {
            if let Slot::Var { arg, min } = s {
                slots.push((fi, si, arg.clone(), *min));
            }
        }
    }
    let k = slots.len();
    let local = Vars::indexed("u", k);
    let mut s = Series::zero(&local, cutoff);
    let lo: Vec<u32> = slots.iter().map(|x| x.3 - 1).collect();
    let mut err: Option<MzvError> = None;
    for_each_tuple(&lo, cutoff.max(-1) as i64, &mut |e| {
        if err.is_some() {
            return;
        }
        let mut parts: Vec<Vec<u32>> = factors
            .iter()
            .map(|f| f.slots.iter().map(|s| if let Slot::Const(m) = s { *m } else { 0 }).collect())
            .collect();
        for (j, (fi, si, _, _)) in slots.iter().enumerate() {
            parts[*fi][*si] = e[j] + 1;
        }
        let comps: Vec<Composition> = parts.into_iter().map(|p| Composition::from_parts(&p)).collect();
        let mut acc = MzvCombo::single(comps[0].clone());
        for c in &comps[1..] {
            acc = match kind {
                ProductKind::Stuffle => stuffle_combos(&acc, &MzvCombo::single(c.clone())),
                ProductKind::Shuffle => match shuffle_combo(&acc, c) {
                    Ok(v) => v,
                    Err(x) => {
                        err = Some(x);
                        return;
                    }
                },
            };
        }
        let exps: Vec<i32> = e.iter().map(|&x| x as i32).collect();
        if let Err(x) = s.add_term(exps, &acc, &Rational::from_integer(1.into())) {
            err = Some(x);
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let forms: Vec<LinearForm> = slots.iter().map(|x| x.2.clone()).collect();
    s.substitute_linear(vars, &forms)
}
