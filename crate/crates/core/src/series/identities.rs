use num_traits::One;

use crate::algebra::{MzvCombo, Rational};
use crate::error::{MzvError, Result};

use super::expr::{Expr, SymmetrySpec};
use super::laurent::{LinearForm, Series, Vars};
use super::pattern::{gen_g, gen_pattern, product_series, PatternTemplate, ProductKind, Slot};

/// Identifiers of the generating-function identities that can be checked.
pub const SERIES_IDENTITIES: [&str; 5] = ["g2id", "thm-1st3rd", "thm-dblzeta-g3", "reduce-gf", "depth4-product"];

/// Both sides of a generating-function identity, before any denominator
/// is cleared.
#[derive(Clone, Debug)]
pub struct SeriesIdentity {
    pub id: String,
    pub vars: Vars,
    pub lhs: Expr,
    pub rhs: Expr,
    /// Lowest total degree at which the identity is claimed.
    pub min_degree: i32,
}

/// A closed-form expansion of a product of generating series next to the
/// same product expanded term by term.
#[derive(Clone, Debug)]
pub struct BlockCheck {
    pub name: String,
    pub closed: Expr,
    pub direct: Series,
}

/// Index of a pattern slot: variables are 1-based and a slot list such as
/// `&[1, 3]` stands for `x1 + x3`.
enum P<'a> {
    V(&'a [usize], u32),
    K(u32),
}

struct Builder {
    vars: Vars,
    cutoff: i32,
}

impl Builder {
    fn new(k: usize, cutoff: i32) -> Builder {
        Builder { vars: Vars::indexed("x", k), cutoff }
    }

    fn named(names: &[&str], cutoff: i32) -> Builder {
        Builder { vars: Vars::new(names), cutoff }
    }

    fn x(&self, idx: &[usize]) -> LinearForm {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        LinearForm::sum_of(self.vars.len(), &zero_based)
    }

    fn diff(&self, a: &[usize], b: &[usize]) -> LinearForm {
        self.x(a).sub(&self.x(b))
    }

    fn g(&self, args: &[&[usize]]) -> Result<Expr> {
        let forms: Vec<LinearForm> = args.iter().map(|a| self.x(a)).collect();
        Ok(Expr::from_series(gen_g(&forms, &self.vars, self.cutoff)?))
    }

    fn template(&self, slots: &[P]) -> PatternTemplate {
        PatternTemplate::new(
            slots
                .iter()
                .map(|s| match s {
                    P::V(idx, min) => Slot::Var { arg: self.x(idx), min: *min },
                    P::K(m) => Slot::Const(*m),
                })
                .collect(),
        )
    }

    fn pat(&self, slots: &[P]) -> Result<Expr> {
        Ok(Expr::from_series(gen_pattern(&self.template(slots), &self.vars, self.cutoff)?))
    }

    fn zeta(&self, parts: &[u32]) -> Expr {
        Expr::from_series(Series::constant(&self.vars, MzvCombo::zeta(parts), self.cutoff))
    }

    fn product(&self, factors: &[&[P]], kind: ProductKind) -> Result<Series> {
        let ts: Vec<PatternTemplate> = factors.iter().map(|f| self.template(f)).collect();
        product_series(&ts, kind, &self.vars, self.cutoff)
    }

    fn full(&self, idx: &[usize]) -> SymmetrySpec {
        SymmetrySpec::full(&idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    fn cyc(&self, idx: &[usize]) -> SymmetrySpec {
        SymmetrySpec::cyclic(&idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }
}

fn sum(parts: Vec<Expr>) -> Expr {
    let mut it = parts.into_iter();
    let first = it.next().expect("nonempty sum");
    it.fold(first, Expr::plus)
}

fn neg(e: Expr) -> Expr {
    e.scale(&-Rational::one())
}

fn g2id(b: &Builder) -> Result<(Expr, Expr)> {
    let lhs = sum(vec![
        b.g(&[&[1, 2], &[1]])?,
        b.g(&[&[1, 2], &[2]])?,
        neg(b.g(&[&[1], &[2]])?),
        neg(b.g(&[&[2], &[1]])?),
    ]);
    let rhs = b.g(&[&[1]])?.minus(b.g(&[&[2]])?).over(&b.diff(&[1], &[2]))?;
    Ok((lhs, rhs))
}

/// The fully symmetric shuffle-side block of the triple product.
fn first_method(b: &Builder) -> Result<Expr> {
    let inner = sum(vec![
        b.g(&[&[1, 2, 3], &[1, 2], &[2]])?,
        neg(b.g(&[&[1, 2], &[1, 2], &[2]])?),
        neg(b.g(&[&[2, 3], &[2], &[2]])?),
        b.g(&[&[2], &[2], &[2]])?,
        neg(b.pat(&[P::V(&[1, 3], 2), P::V(&[1], 1), P::K(1)])?),
        b.pat(&[P::V(&[1], 2), P::V(&[1], 1), P::K(1)])?,
        b.pat(&[P::V(&[3], 2), P::K(1), P::K(1)])?,
    ]);
    Ok(inner.symmetrize(&b.full(&[1, 2, 3])))
}

/// The stuffle-side block of the triple product.
fn third_method(b: &Builder) -> Result<Expr> {
    let sym = sum(vec![
        b.g(&[&[1], &[2], &[3]])?,
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[2]))?),
        neg(b.g(&[&[2], &[1]])?.over(&b.x(&[2]))?),
        b.g(&[&[1], &[3]])?.plus(b.g(&[&[3], &[1]])?).over(&b.diff(&[3], &[2]))?,
        neg(b.pat(&[P::V(&[1], 2), P::V(&[2], 1), P::K(1)])?),
        b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[1]))?,
        b.pat(&[P::V(&[1], 2), P::K(1), P::K(1)])?,
        neg(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[3], 1)])?),
        b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[2]))?,
    ])
    .symmetrize(&b.full(&[1, 2, 3]));
    let cyc3 = sum(vec![
        b.pat(&[P::V(&[1], 2), P::K(2)])?,
        b.pat(&[P::K(2), P::V(&[1], 2)])?,
        neg(b.pat(&[P::V(&[3], 2), P::K(1)])?.minus(b.pat(&[P::V(&[2], 2), P::K(1)])?).over(&b.diff(&[3], &[2]))?),
        b.g(&[&[1]])?.over(&b.x(&[1]))?.over(&b.x(&[1]))?,
        neg(b.zeta(&[2]).over(&b.x(&[1]))?),
    ])
    .symmetrize(&b.cyc(&[1, 2, 3]));
    let cyc2 = sum(vec![
        b.g(&[&[3]])?
            .minus(b.g(&[&[1]])?)
            .over(&b.diff(&[3], &[1]))?
            .plus(b.g(&[&[2]])?.over(&b.x(&[2]))?)
            .over(&b.diff(&[3], &[2]))?,
        neg(b.g(&[&[2]])?
            .minus(b.g(&[&[1]])?)
            .over(&b.diff(&[2], &[1]))?
            .minus(b.g(&[&[1]])?.over(&b.x(&[1]))?)
            .over(&b.x(&[2]))?),
    ])
    .symmetrize(&b.cyc(&[2, 3]));
    Ok(sum(vec![sym, neg(b.zeta(&[3])), cyc3, cyc2]))
}

fn triple_product(b: &Builder, kind: ProductKind) -> Result<Series> {
    b.product(&[&[P::V(&[1], 2)], &[P::V(&[2], 2)], &[P::V(&[3], 2)]], kind)
}

fn first_third(b: &Builder) -> Result<(Expr, Expr)> {
    let lhs_s = sum(vec![
        b.g(&[&[1, 2, 3], &[1, 2], &[2]])?,
        neg(b.g(&[&[1, 2], &[1, 2], &[2]])?),
        neg(b.g(&[&[2, 3], &[2], &[2]])?),
        b.g(&[&[2], &[2], &[2]])?,
        neg(b.g(&[&[1], &[2], &[3]])?),
        neg(b.g(&[&[1], &[3]])?.plus(b.g(&[&[3], &[1]])?).over(&b.diff(&[3], &[2]))?),
        b.g(&[&[1], &[2]])?.over(&b.x(&[2]))?,
        b.g(&[&[2], &[1]])?.over(&b.x(&[2]))?,
    ])
    .symmetrize(&b.full(&[1, 2, 3]));
    let lhs_c = sum(vec![
        b.g(&[&[3]])?
            .minus(b.g(&[&[1]])?)
            .over(&b.diff(&[3], &[1]))?
            .plus(b.g(&[&[2]])?.over(&b.x(&[2]))?)
            .over(&b.diff(&[3], &[2]))?,
        neg(b.g(&[&[2]])?.minus(b.g(&[&[1]])?).over(&b.x(&[2]))?.over(&b.diff(&[2], &[1]))?),
        b.g(&[&[1]])?.over(&b.x(&[1]))?.over(&b.x(&[2]))?,
    ])
    .symmetrize(&b.cyc(&[2, 3]));
    let lhs = lhs_s.minus(lhs_c);

    let rhs_s = sum(vec![
        b.pat(&[P::V(&[1, 3], 2), P::V(&[1], 1), P::K(1)])?,
        neg(b.pat(&[P::V(&[1], 2), P::V(&[1], 1), P::K(1)])?),
        neg(b.pat(&[P::V(&[3], 2), P::V(&[1], 1), P::K(1)])?),
        b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[1]))?,
        neg(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[3], 1)])?),
        b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[2]))?,
        neg(b.pat(&[P::V(&[3], 2), P::K(1)])?.over(&b.diff(&[3], &[2]))?),
    ])
    .symmetrize(&b.full(&[1, 2, 3]));
    let rhs_c = sum(vec![
        b.pat(&[P::V(&[1], 2), P::K(2)])?,
        b.pat(&[P::K(2), P::V(&[1], 2)])?,
        b.g(&[&[1]])?.over(&b.x(&[1]))?.over(&b.x(&[1]))?,
        neg(b.zeta(&[2]).over(&b.x(&[1]))?),
    ])
    .symmetrize(&b.cyc(&[1, 2, 3]));
    let rhs = sum(vec![rhs_s, rhs_c, neg(b.zeta(&[3]))]);
    Ok((lhs, rhs))
}

/// Shuffle-side expansion of `zeta(s1,s2) zeta(s3)`.
fn dbl_riemann_shuffle(b: &Builder) -> Result<Expr> {
    Ok(sum(vec![
        b.g(&[&[1, 3], &[1], &[2]])?,
        neg(b.g(&[&[1], &[1], &[2]])?),
        neg(b.pat(&[P::V(&[3], 2), P::K(1), P::V(&[2], 1)])?),
        b.g(&[&[1, 3], &[2, 3], &[2]])?,
        neg(b.g(&[&[3], &[2, 3], &[2]])?),
        neg(b.g(&[&[1], &[2], &[2]])?),
        b.g(&[&[1, 3], &[2, 3], &[3]])?,
        neg(b.g(&[&[3], &[2, 3], &[3]])?),
        neg(b.pat(&[P::V(&[1], 2), P::V(&[2], 1), P::K(1)])?),
    ]))
}

/// Stuffle-side expansion of `zeta(s1,s2) zeta(s3)`.
fn dbl_riemann_stuffle(b: &Builder) -> Result<Expr> {
    Ok(sum(vec![
        b.g(&[&[1], &[3], &[2]])?,
        neg(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[2], 1)])?),
        b.g(&[&[3], &[1], &[2]])?,
        neg(b.pat(&[P::V(&[3], 2), P::K(1), P::V(&[2], 1)])?),
        b.g(&[&[1], &[2], &[3]])?,
        neg(b.pat(&[P::V(&[1], 2), P::V(&[2], 1), P::K(1)])?),
        b.g(&[&[3], &[2]])?.minus(b.g(&[&[1], &[2]])?).over(&b.diff(&[3], &[1]))?,
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[1]))?),
        neg(b.g(&[&[3], &[2]])?.over(&b.x(&[3]))?),
        b.pat(&[P::K(2), P::V(&[2], 1)])?,
        b.g(&[&[1], &[3]])?.minus(b.g(&[&[1], &[2]])?).over(&b.diff(&[3], &[2]))?,
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[2]))?),
        b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[2]))?,
    ]))
}

fn dbl_riemann_product(b: &Builder, kind: ProductKind) -> Result<Series> {
    b.product(&[&[P::V(&[1], 2), P::V(&[2], 1)], &[P::V(&[3], 2)]], kind)
}

fn dblzeta_g3(b: &Builder) -> Result<(Expr, Expr)> {
    let lhs = sum(vec![
        b.g(&[&[1, 3], &[1], &[2]])?,
        neg(b.g(&[&[1], &[1], &[2]])?),
        b.g(&[&[1, 3], &[2, 3], &[2]])?,
        neg(b.g(&[&[3], &[2, 3], &[2]])?),
        neg(b.g(&[&[1], &[2], &[2]])?),
        b.g(&[&[1, 3], &[2, 3], &[3]])?,
        neg(b.g(&[&[3], &[2, 3], &[3]])?),
        neg(b.g(&[&[1], &[2], &[3]])?),
        neg(b.g(&[&[1], &[3], &[2]])?),
        neg(b.g(&[&[3], &[1], &[2]])?),
    ]);
    let rhs = sum(vec![
        b.g(&[&[3], &[2]])?.minus(b.g(&[&[1], &[2]])?).over(&b.diff(&[3], &[1]))?,
        b.g(&[&[1], &[3]])?.minus(b.g(&[&[1], &[2]])?).over(&b.diff(&[3], &[2]))?,
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[1]))?),
        neg(b.g(&[&[3], &[2]])?.over(&b.x(&[3]))?),
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[2]))?),
        neg(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[2], 1)])?),
        b.pat(&[P::K(2), P::V(&[2], 1)])?,
        b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[2]))?,
    ]);
    Ok((lhs, rhs))
}

fn reduce_gf(b: &Builder) -> Result<(Expr, Expr)> {
    let lhs = sum(vec![
        b.g(&[&[1], &[1], &[2]])?,
        b.g(&[&[1], &[2], &[2]])?,
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[1]))?),
        neg(b.g(&[&[1], &[2]])?.over(&b.x(&[2]))?),
    ]);
    let rhs = sum(vec![
        b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[2], 1)])?,
        neg(b.pat(&[P::K(2), P::V(&[2], 1)])?),
        neg(b.pat(&[P::V(&[1], 2), P::K(1)])?.over(&b.x(&[2]))?),
    ]);
    Ok((lhs, rhs))
}

/// `x1 <-> x3, x2 <-> x4`.
const SWAP_PAIRS: [usize; 4] = [2, 3, 0, 1];

/// Shuffle-side expansion of `zeta(s1,s2) zeta(s3,s4)`.
fn depth4_shuffle(b: &Builder) -> Result<Expr> {
    let half = sum(vec![
        b.g(&[&[1, 3], &[2, 3], &[3], &[4]])?,
        neg(b.g(&[&[3], &[2, 3], &[3], &[4]])?),
        neg(b.pat(&[P::V(&[1], 2), P::V(&[2], 1), P::K(1), P::V(&[4], 1)])?),
        b.g(&[&[1, 3], &[2, 3], &[2, 4], &[4]])?,
        neg(b.g(&[&[3], &[2, 3], &[2, 4], &[4]])?),
        neg(b.g(&[&[1], &[2], &[2, 4], &[4]])?),
        b.g(&[&[1, 3], &[2, 3], &[2, 4], &[2]])?,
        neg(b.g(&[&[3], &[2, 3], &[2, 4], &[2]])?),
        neg(b.g(&[&[1], &[2], &[2, 4], &[2]])?),
    ]);
    let swapped = half.permute(&SWAP_PAIRS);
    Ok(half.plus(swapped))
}

/// Stuffle-side expansion of `zeta(s1,s2) zeta(s3,s4)`.
fn depth4_stuffle(b: &Builder) -> Result<Expr> {
    let quad = sum(vec![
        b.g(&[&[3], &[4], &[1], &[2]])?,
        b.g(&[&[3], &[1], &[4], &[2]])?,
        neg(b.pat(&[P::V(&[3], 2), P::V(&[4], 1), P::K(1), P::V(&[2], 1)])?),
        neg(b.pat(&[P::V(&[3], 2), P::K(1), P::V(&[4], 1), P::V(&[2], 1)])?),
        b.g(&[&[1], &[3], &[4], &[2]])?,
        b.g(&[&[1], &[3], &[2], &[4]])?,
        neg(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[4], 1), P::V(&[2], 1)])?),
        neg(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[2], 1), P::V(&[4], 1)])?),
        b.g(&[&[1], &[2], &[3], &[4]])?,
        b.g(&[&[3], &[1], &[2], &[4]])?,
        neg(b.pat(&[P::V(&[1], 2), P::V(&[2], 1), P::K(1), P::V(&[4], 1)])?),
        neg(b.pat(&[P::V(&[3], 2), P::K(1), P::V(&[2], 1), P::V(&[4], 1)])?),
    ]);
    let g3_142 = || b.g(&[&[1], &[4], &[2]]);
    let merged = sum(vec![
        g3_142()?.over(&b.diff(&[1], &[3]))?.minus(g3_142()?.over(&b.x(&[1]))?).symmetrize(&b.cyc(&[1, 3])),
        b.g(&[&[1], &[2], &[4]])?.minus(b.g(&[&[1], &[3], &[4]])?).over(&b.diff(&[2], &[3]))?,
        neg(b.g(&[&[1], &[2], &[4]])?.over(&b.x(&[2]))?),
        b.pat(&[P::K(2), P::V(&[4], 1), P::V(&[2], 1)])?,
        b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[4], 1)])?.over(&b.x(&[2]))?,
    ]);
    let merged_swapped = merged.permute(&SWAP_PAIRS);
    let tail_pair = b
        .g(&[&[1], &[3], &[2]])?
        .minus(b.pat(&[P::V(&[1], 2), P::K(1), P::V(&[2], 1)])?)
        .over(&b.diff(&[2], &[4]))?
        .symmetrize(&b.cyc(&[1, 3]))
        .symmetrize(&b.cyc(&[2, 4]));
    let g2_12 = || b.g(&[&[1], &[2]]);
    let double = g2_12()?
        .over(&b.diff(&[1], &[3]))?
        .minus(g2_12()?.over(&b.x(&[1]))?)
        .over(&b.diff(&[2], &[4]))?
        .symmetrize(&b.cyc(&[1, 3]))
        .plus(b.pat(&[P::K(2), P::V(&[2], 1)])?.over(&b.diff(&[2], &[4]))?)
        .symmetrize(&b.cyc(&[2, 4]));
    Ok(sum(vec![quad, merged, merged_swapped, tail_pair, double]))
}

fn depth4_product(b: &Builder, kind: ProductKind) -> Result<Series> {
    b.product(&[&[P::V(&[1], 2), P::V(&[2], 1)], &[P::V(&[3], 2), P::V(&[4], 1)]], kind)
}

fn builder_for(id: &str, cutoff: i32) -> Result<Builder> {
    Ok(match id {
        "g2id" => Builder::named(&["x", "y"], cutoff),
        "thm-1st3rd" | "thm-dblzeta-g3" => Builder::new(3, cutoff),
        "reduce-gf" => Builder::new(2, cutoff),
        "depth4-product" => Builder::new(4, cutoff),
        _ => return Err(unknown(id)),
    })
}

fn unknown(id: &str) -> MzvError {
    MzvError::domain(format!("unknown series identity '{id}' (known: {})", SERIES_IDENTITIES.join(", ")))
}

/// Builds both sides of identity `id`, with every generating series exact
/// to total degree `cutoff`.
pub fn build_identity(id: &str, cutoff: i32) -> Result<SeriesIdentity> {
    let b = builder_for(id, cutoff)?;
    let (lhs, rhs) = match id {
        "g2id" => g2id(&b)?,
        "thm-1st3rd" => first_third(&b)?,
        "thm-dblzeta-g3" => dblzeta_g3(&b)?,
        "reduce-gf" => reduce_gf(&b)?,
        "depth4-product" => {
            let lhs = depth4_shuffle(&b)?;
            let rhs = depth4_stuffle(&b)?;
            (lhs, rhs)
        }
        _ => unreachable!(),
    };
    // The constant terms of the two sides of g2id differ by zeta(2); the
    // identity is a statement about positive degrees.
    let min_degree = if id == "g2id" { 1 } else { i32::MIN };
    Ok(SeriesIdentity { id: id.to_string(), vars: b.vars, lhs, rhs, min_degree })
}

/// The product expansions the identity `id` is assembled from, each next
/// to the product expanded term by term with the matching product rule.
pub fn block_checks(id: &str, cutoff: i32) -> Result<Vec<BlockCheck>> {
    let b = builder_for(id, cutoff)?;
    let block = |name: &str, closed: Expr, direct: Series| BlockCheck { name: name.into(), closed, direct };
    Ok(match id {
        "thm-1st3rd" => vec![
            block("triple-shuffle", first_method(&b)?, triple_product(&b, ProductKind::Shuffle)?),
            block("triple-stuffle", third_method(&b)?, triple_product(&b, ProductKind::Stuffle)?),
        ],
        "thm-dblzeta-g3" => vec![
            block("double-single-shuffle", dbl_riemann_shuffle(&b)?, dbl_riemann_product(&b, ProductKind::Shuffle)?),
            block("double-single-stuffle", dbl_riemann_stuffle(&b)?, dbl_riemann_product(&b, ProductKind::Stuffle)?),
        ],
        "depth4-product" => vec![
            block("double-double-shuffle", depth4_shuffle(&b)?, depth4_product(&b, ProductKind::Shuffle)?),
            block("double-double-stuffle", depth4_stuffle(&b)?, depth4_product(&b, ProductKind::Stuffle)?),
        ],
        "g2id" | "reduce-gf" => Vec::new(),
        _ => return Err(unknown(id)),
    })
}

/// `lhs - rhs` of identity `id` with denominators cleared, exact at least
/// to total degree `degree_cap`. The build cutoff is raised until the
/// cleared difference reaches the cap.
pub fn resolved_sides(id: &str, degree_cap: i32) -> Result<(SeriesIdentity, Series, Series)> {
    let mut cutoff = degree_cap + 2;
    loop {
        let ident = build_identity(id, cutoff)?;
        let l = ident.lhs.resolve()?;
        let r = ident.rhs.resolve()?;
        if l.cutoff().min(r.cutoff()) >= degree_cap {
            let l = l.truncate(degree_cap);
            let r = r.truncate(degree_cap);
            return Ok((ident, l, r));
        }
        cutoff += 1;
    }
}

/// The two symbol-level identities obtained from g2id by slicing at total
/// degree `n - 2`, differentiating in `x` and specializing to `(x,y) = (0,1)`;
/// the second pass multiplies by `x + y` before differentiating again.
/// Returns the two specialized combinations.
pub fn g2_replay(n: u32) -> Result<(MzvCombo, MzvCombo)> {
    if n < 3 {
        return Err(MzvError::domain(format!("replay needs n >= 3, got {n}")));
    }
    let deg = n as i32 - 2;
    let (_, l, r) = resolved_sides("g2id", deg)?;
    let slice = l.sub(&r)?.homogeneous_part(deg)?;
    let point = [Rational::from_integer(0.into()), Rational::one()];
    let first = slice.differentiate(0)?;
    let once = first.specialize(&point)?;
    let sum_xy = LinearForm::sum_of(2, &[0, 1]);
    let twice = first.mul_linear(&sum_xy)?.differentiate(0)?.specialize(&point)?;
    Ok((once, twice))
}
