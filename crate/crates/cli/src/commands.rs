//! Command implementations. Each returns the rendered report and an exit code.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use mzv::eval::ValueCache;
use mzv::formulas::{catalog, descriptor, generate, scan, ParamKind, ParameterPoint, ScanRow};
use mzv::relations::{echelonize, enumerate_admissible, relations_for, Family, DEFAULT_WEIGHT_CAP};
use mzv::series::{check_identity, MonomialRow, MonomialStatus, SERIES_IDENTITIES};
use mzv::{Composition, EvalConfig, Evaluator, ExactStatus, Mode, NumericStatus, Verdict, Verifier};

use crate::config::RunConfig;
use crate::report::{emit, CatalogRow, EvalRow, Format, RelationsRow, SeriesRow, VerificationReport};
use crate::{Cli, Command, EXIT_FAIL, EXIT_OK, EXIT_UNRESOLVED};

const RESIDUAL_DIGITS: usize = 10;
const ERR_DIGITS: usize = 3;

pub struct Outcome {
    pub report: String,
    pub code: u8,
    /// Extra lines for stderr.
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(report: String) -> Outcome {
        Outcome { report, code: EXIT_OK, notes: Vec::new() }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cfg = cli.global.run_config()?;
    if let Some(k) = cfg.jobs {
        // Fails only when a pool already exists, as in repeated in-process runs.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let cache = Arc::new(ValueCache::new());
    let loaded = match &cfg.cache {
        Some(p) => cache.load_if_exists(p).with_context(|| format!("loading cache {}", p.display()))?,
        None => 0,
    };
    let evaluator = Evaluator::with_cache(
        EvalConfig::new(cfg.digits)?.with_tolerance_digits(cfg.tolerance),
        cache.clone(),
    );
    let outcome = match &cli.command {
        Command::Eval { index } => eval(index, &cfg, &evaluator)?,
        Command::Verify { id, n, params, variant } => {
            verify(id, *n, params.as_deref(), variant.as_deref(), &cfg, evaluator)?
        }
        Command::Scan { id, n_range, params, variant } => {
            scan_cmd(id, n_range.as_deref(), params.as_deref(), variant.as_deref(), &cfg, evaluator)?
        }
        Command::Relations { weight, families } => relations(*weight, families, &cfg)?,
        Command::SeriesCheck { id, degree } => series_check(id, *degree, &cfg, evaluator)?,
        Command::List => list(&cfg)?,
    };
    if let Some(p) = &cfg.cache {
        if cache.len() > loaded || !p.exists() {
            cache.store(p).with_context(|| format!("writing cache {}", p.display()))?;
        }
    }
    Ok(outcome)
}

fn eval(index: &str, cfg: &RunConfig, evaluator: &Evaluator) -> Result<Outcome> {
    let c: Composition = index.parse()?;
    c.check_admissible()?;
    if c.is_empty() {
        bail!("empty index");
    }
    let x = evaluator.eval_mzv(&c)?;
    let row = EvalRow { index: c.to_string(), digits: cfg.digits, value: x.to_fixed_decimal(cfg.digits), err: x.err_sci(ERR_DIGITS) };
    let report = match cfg.report {
        Format::Text => format!("{} ± {}\n", row.value, row.err),
        f => emit(&[row], f)?,
    };
    Ok(Outcome::ok(report))
}

/// Exit code for one verdict: a numeric failure dominates an open exact check.
fn verdict_code(v: &Verdict) -> u8 {
    if v.numeric == NumericStatus::Fail {
        EXIT_FAIL
    } else if v.exact == ExactStatus::Unresolved {
        EXIT_UNRESOLVED
    } else {
        EXIT_OK
    }
}

fn combine(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes.into_iter().fold(EXIT_OK, |acc, c| match (acc, c) {
        (EXIT_FAIL, _) | (_, EXIT_FAIL) => EXIT_FAIL,
        (EXIT_UNRESOLVED, _) | (_, EXIT_UNRESOLVED) => EXIT_UNRESOLVED,
        _ => EXIT_OK,
    })
}

fn report_row(
    id: &str,
    n: u32,
    params: &ParameterPoint,
    weight: u32,
    variant: Option<&str>,
    verdict: Option<&Verdict>,
    micros: u128,
    note: Option<String>,
) -> VerificationReport {
    let (residual, err) = match verdict.and_then(|v| v.value.as_ref()) {
        Some(x) => (x.value_sci(RESIDUAL_DIGITS), x.err_sci(ERR_DIGITS)),
        None => (String::new(), String::new()),
    };
    VerificationReport {
        id: id.to_string(),
        n,
        params: params.to_string(),
        weight,
        residual,
        err,
        numeric: verdict.map_or(NumericStatus::Skipped, |v| v.numeric).to_string(),
        exact: verdict.map_or(ExactStatus::Skipped, |v| v.exact).to_string(),
        variant: variant.map(str::to_string),
        wall_time_us: micros as u64,
        note,
    }
}

fn verify(
    id: &str,
    n: Option<u32>,
    params: Option<&str>,
    variant: Option<&str>,
    cfg: &RunConfig,
    evaluator: Evaluator,
) -> Result<Outcome> {
    let d = descriptor(id)?;
    let n = n.unwrap_or(d.min_n);
    let point: ParameterPoint = match params {
        Some(s) if s.contains(';') => bail!("verify takes one parameter point; use scan for a grid"),
        Some(s) => s.parse()?,
        None => ParameterPoint::default(),
    };
    let verifier = Verifier::new(evaluator, cfg.mode);
    let start = Instant::now();
    let candidate = generate(id, n, &point, variant)?;
    let verdict = candidate.check(&verifier)?;
    let row = report_row(
        candidate.id,
        n,
        &candidate.params,
        candidate.weight,
        candidate.variant,
        Some(&verdict),
        start.elapsed().as_micros(),
        None,
    );
    let mut notes = Vec::new();
    if let Some(nf) = &verdict.normal_form {
        if verdict.exact == ExactStatus::Unresolved {
            notes.push(format!("normal form: {nf}"));
        }
    }
    Ok(Outcome { report: emit(&[row], cfg.report)?, code: verdict_code(&verdict), notes })
}

/// `A..B` and `A..=B` are inclusive; a single number is a one-point range.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u32>> {
    let num = |t: &str| t.trim().parse::<u32>().with_context(|| format!("bad n in range {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            Ok(a..=a)
        }
    }
}

fn scan_row(row: &ScanRow) -> VerificationReport {
    report_row(
        row.id,
        row.n,
        &row.params,
        row.weight,
        row.variant,
        row.verdict.as_ref(),
        row.elapsed.as_micros(),
        row.skipped.clone(),
    )
}

fn scan_cmd(
    id: &str,
    n_range: Option<&str>,
    params: Option<&str>,
    variant: Option<&str>,
    cfg: &RunConfig,
    evaluator: Evaluator,
) -> Result<Outcome> {
    let d = descriptor(id)?;
    let ns = match n_range {
        Some(s) => parse_n_range(s)?,
        None => d.min_n..=d.min_n,
    };
    let grid = ParameterPoint::parse_grid(params.unwrap_or(""))?;
    let verifier = Verifier::new(evaluator, cfg.mode);
    let rows = scan(id, ns, &grid, variant, &verifier)?;
    let code = combine(rows.iter().filter_map(|r| r.verdict.as_ref()).map(verdict_code));
    let reports: Vec<VerificationReport> = rows.iter().map(scan_row).collect();
    let skipped = rows.iter().filter(|r| r.skipped.is_some()).count();
    let notes = if skipped > 0 { vec![format!("{skipped} point(s) skipped")] } else { Vec::new() };
    Ok(Outcome { report: emit(&reports, cfg.report)?, code, notes })
}

fn parse_families(names: &[String]) -> Result<BTreeSet<Family>> {
    names
        .iter()
        .map(|s| match s.trim() {
            "fds" => Ok(Family::Fds),
            "duality" => Ok(Family::Duality),
            other => bail!("unknown relation family {other:?} (fds, duality)"),
        })
        .collect()
}

fn relations(weight: u32, families: &[String], cfg: &RunConfig) -> Result<Outcome> {
    if !(2..=DEFAULT_WEIGHT_CAP).contains(&weight) {
        bail!("weight {weight} outside 2..={DEFAULT_WEIGHT_CAP}");
    }
    let fams = parse_families(families)?;
    let sets = relations_for(weight, &fams);
    let rows = sets.iter().map(|s| s.len()).sum();
    let rank = if sets.is_empty() { 0 } else { echelonize(&sets)?.rank() };
    let ambient = enumerate_admissible(weight)?.len();
    let row = RelationsRow {
        weight,
        families: fams.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(","),
        ambient,
        rows,
        rank,
        quotient: ambient - rank,
    };
    Ok(Outcome::ok(emit(&[row], cfg.report)?))
}

pub fn default_degree(id: &str) -> Option<i32> {
    match id {
        "g2id" | "thm-dblzeta-g3" | "reduce-gf" => Some(6),
        "thm-1st3rd" => Some(5),
        "depth4-product" => Some(4),
        _ => None,
    }
}

fn series_row(identity: &str, r: &MonomialRow) -> SeriesRow {
    SeriesRow {
        identity: identity.to_string(),
        monomial: r.monomial.clone(),
        status: r.status.to_string(),
        residual: r.residual.clone(),
        err: r.err.clone(),
        difference: r.difference.clone(),
    }
}

fn series_check(id: &str, degree: Option<i32>, cfg: &RunConfig, evaluator: Evaluator) -> Result<Outcome> {
    let Some(default) = default_degree(id) else {
        bail!("unknown series identity '{id}' (known: {})", SERIES_IDENTITIES.join(", "));
    };
    let verifier = Verifier::new(evaluator, cfg.mode);
    let report = check_identity(id, degree.unwrap_or(default), &verifier)?;
    let mut rows: Vec<SeriesRow> = report.rows.iter().map(|r| series_row(id, r)).collect();
    for s in &report.structural_failures {
        let (monomial, difference) = s.split_once(": ").unwrap_or((s, ""));
        rows.push(SeriesRow {
            identity: id.to_string(),
            monomial: monomial.to_string(),
            status: MonomialStatus::Fail.to_string(),
            residual: String::new(),
            err: String::new(),
            difference: format!("negative power left over: {difference}"),
        });
    }
    let code = if report.has_failure() {
        EXIT_FAIL
    } else if report.has_unresolved() {
        EXIT_UNRESOLVED
    } else {
        EXIT_OK
    };
    let mut notes = Vec::new();
    if cfg.mode == Mode::Numeric && code == EXIT_OK {
        notes.push(format!("{} monomials checked", rows.len()));
    }
    Ok(Outcome { report: emit(&rows, cfg.report)?, code, notes })
}

fn list(cfg: &RunConfig) -> Result<Outcome> {
    let rows: Vec<CatalogRow> = catalog()
        .iter()
        .map(|d| {
            let kind = match d.kind {
                ParamKind::Rational => "rational",
                ParamKind::Integer => "integer",
            };
            CatalogRow {
                id: d.id.to_string(),
                params: if d.params.is_empty() { String::new() } else { format!("{} ({kind})", d.params.join(",")) },
                min_n: d.min_n,
                weight: if d.weight_offset == 0 { "n".into() } else { format!("n+{}", d.weight_offset) },
                variants: d.variants.join(","),
                summary: d.summary.to_string(),
            }
        })
        .collect();
    Ok(Outcome::ok(emit(&rows, cfg.report)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("3..10").unwrap(), 3..=10);
        assert_eq!(parse_n_range("3..=10").unwrap(), 3..=10);
        assert_eq!(parse_n_range("5").unwrap(), 5..=5);
        assert!(parse_n_range("5..4").unwrap().is_empty());
        assert!(parse_n_range("a..4").is_err());
    }

    #[test]
    fn exit_code_precedence() {
        assert_eq!(combine([]), EXIT_OK);
        assert_eq!(combine([EXIT_OK, EXIT_UNRESOLVED]), EXIT_UNRESOLVED);
        assert_eq!(combine([EXIT_UNRESOLVED, EXIT_FAIL, EXIT_OK]), EXIT_FAIL);
    }
}
