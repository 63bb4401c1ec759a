use std::path::Path;
use std::process::{Command, Output};

use mzv_cli::report::{parse, Format, RelationsRow, SeriesRow, VerificationReport};

fn mzv(args: &[&str]) -> Output {
    mzv_env(args, &[])
}

fn mzv_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mzv"));
    cmd.args(args);
    for var in ["MZV_DIGITS", "MZV_MODE", "MZV_REPORT", "MZV_CACHE", "MZV_JOBS", "MZV_TOLERANCE", "MZV_CONFIG"] {
        cmd.env_remove(var);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<VerificationReport> {
    parse(&stdout(o), Format::Json).unwrap()
}

#[test]
fn exit_code_golden_suite() {
    let cases: &[(&[&str], i32)] = &[
        (&["eval", "2"], 0),
        (&["eval", "1,2"], 3),
        (&["eval", "2,x"], 3),
        (&["verify", "euler-sum", "--n", "5"], 0),
        (&["verify", "euler-sum", "--n", "2"], 3),
        (&["verify", "euler-decomposition-literal", "--n", "4"], 1),
        (&["verify", "cor-1st3rd", "--n", "4", "--mode", "both"], 2),
        (&["verify", "euler-sum", "--n", "3", "--mode", "both"], 0),
        (&["verify", "euler-sum", "--n", "4", "--mode", "both"], 2),
        (&["verify", "euler-sum", "--n", "3", "--mode", "exact"], 0),
        (&["verify", "euler-sum", "--n", "4", "--mode", "exact"], 2),
        (&["verify", "thm-1st3rd-abc", "--n", "4", "--params", "1,2,2"], 3),
        (&["verify", "thm-depth4", "--n", "5", "--params", "1,2,3,4", "--variant", "bogus"], 3),
        (&["verify", "no-such-identity"], 3),
        (&["scan", "ohno-zudilin", "--n", "3..6"], 0),
        (&["scan", "euler-sum", "--n", "5..4"], 0),
        (&["scan", "thm-depth4", "--n-range", "5..5", "--params", "1,2,3,4"], 1),
        (&["scan", "thm-depth4", "--n-range", "5..5", "--params", "1,2,3,4", "--variant", "stuffle-derived"], 0),
        (&["relations", "--weight", "4"], 0),
        (&["relations", "--weight", "1"], 3),
        (&["relations", "--weight", "11"], 3),
        (&["relations", "--weight", "4", "--families", "fds,other"], 3),
        (&["series-check", "g2id", "--degree", "3"], 0),
        (&["series-check", "unknown-gf"], 3),
        (&["series-check", "g2id", "--degree", "40"], 3),
        (&["list"], 0),
        (&["--digits", "5", "eval", "2"], 3),
        (&["frobnicate"], 3),
        (&["--help"], 0),
    ];
    for (args, expect) in cases {
        let o = mzv(args);
        assert_eq!(code(&o), *expect, "{args:?}\nstdout: {}\nstderr: {}", stdout(&o), stderr(&o));
    }
}

#[test]
fn eval_prints_value_and_bound() {
    let o = mzv(&["eval", "2", "--digits", "20"]);
    let out = stdout(&o);
    assert!(out.starts_with("1.64493406684822643647 ± "), "{out}");
    let same = stdout(&mzv(&["eval", "2,1", "--digits", "20"]));
    let three = stdout(&mzv(&["eval", "3", "--digits", "20"]));
    assert_eq!(same.split(' ').next(), three.split(' ').next());
    assert!(stderr(&mzv(&["eval", "1,2"])).contains("inadmissible index"));
}

#[test]
fn verify_reports() {
    let o = mzv(&["verify", "euler-sum", "--n", "5", "--report", "json"]);
    let r = rows(&o);
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].id.as_str(), r[0].n, r[0].weight), ("euler-sum", 5, 5));
    assert_eq!(r[0].numeric, "pass");
    assert!(r[0].residual.parse::<f64>().unwrap().abs() < 1e-20);

    let o = mzv(&["verify", "euler-decomposition-literal", "--n", "4", "--report", "json"]);
    let r = rows(&o);
    assert_eq!(r[0].params, "2");
    assert!((r[0].residual.parse::<f64>().unwrap() - 0.541161).abs() < 1e-6);

    let o = mzv(&["verify", "cor-1st3rd", "--n", "4", "--mode", "both", "--report", "json"]);
    let r = rows(&o);
    assert_eq!((r[0].numeric.as_str(), r[0].exact.as_str()), ("pass", "unresolved"));
    assert!(stderr(&o).contains("normal form"));
}

#[test]
fn scan_reports() {
    let o = mzv(&["scan", "ohno-zudilin", "--n", "3..10", "--report", "json"]);
    assert_eq!(code(&o), 0);
    let r = rows(&o);
    assert_eq!(r.iter().map(|x| x.n).collect::<Vec<_>>(), (3..=10).collect::<Vec<_>>());
    assert!(r.iter().all(|x| x.numeric == "pass"));

    let o = mzv(&["scan", "thm-depth4", "--n", "4..6", "--params", "1,1,1,1;1,2,3,4", "--report", "json"]);
    let r = rows(&o);
    assert_eq!(r.len(), 3 * 2 * 4);
    let variants: std::collections::BTreeSet<_> = r.iter().map(|x| x.variant.clone().unwrap()).collect();
    assert_eq!(variants.len(), 4);
    assert!(r.iter().filter(|x| x.params == "1,1,1,1").all(|x| x.numeric == "skipped" && x.note.is_some()));

    let o = mzv(&["scan", "euler-sum", "--n", "5..4", "--report", "json"]);
    assert!(stdout(&o).is_empty());
}

#[test]
fn relations_reports() {
    let parse_one = |args: &[&str]| -> RelationsRow {
        let mut a = args.to_vec();
        a.extend(["--report", "json"]);
        parse::<RelationsRow>(&stdout(&mzv(&a)), Format::Json).unwrap().remove(0)
    };
    let r = parse_one(&["relations", "--weight", "4", "--families", "fds,duality"]);
    assert_eq!((r.ambient, r.rank), (4, 2));
    let r = parse_one(&["relations", "--weight", "3", "--families", "fds"]);
    assert_eq!((r.ambient, r.rank, r.rows), (2, 0, 0));
    let a = parse_one(&["relations", "--weight", "8"]);
    let b = parse_one(&["relations", "--weight", "8"]);
    assert_eq!(a.ambient, 64);
    assert_eq!(a, b);
}

#[test]
fn series_check_reports() {
    let o = mzv(&["series-check", "g2id", "--degree", "1", "--report", "csv"]);
    assert_eq!(code(&o), 0);
    let r: Vec<SeriesRow> = parse(&stdout(&o), Format::Csv).unwrap();
    assert!(!r.is_empty());
    assert!(r.iter().all(|x| x.difference == "z(2,1) - z(3)" && x.status == "numeric-pass"));

    let o = mzv(&["series-check", "reduce-gf", "--degree", "4", "--report", "json"]);
    assert_eq!(code(&o), 0);
    let r: Vec<SeriesRow> = parse(&stdout(&o), Format::Json).unwrap();
    assert!(r.iter().all(|x| x.status != "FAIL"));
}

#[test]
fn csv_and_json_agree() {
    let args = ["scan", "g2-der", "--n", "3..6"];
    let j = mzv(&[&args[..], &["--report", "json"]].concat());
    let c = mzv(&[&args[..], &["--report", "csv"]].concat());
    let mut from_json = rows(&j);
    let mut from_csv: Vec<VerificationReport> = parse(&stdout(&c), Format::Csv).unwrap();
    for r in from_json.iter_mut().chain(from_csv.iter_mut()) {
        r.wall_time_us = 0;
    }
    assert_eq!(from_json, from_csv);
}

fn without_time(report: &str) -> Vec<VerificationReport> {
    let mut r: Vec<VerificationReport> = parse(report, Format::Json).unwrap();
    for x in &mut r {
        x.wall_time_us = 0;
    }
    r
}

#[test]
fn warm_cache_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("values.cache");
    let cache_s = cache.to_str().unwrap();
    let args = ["scan", "thm-1st3rd-abc", "--n", "4..6", "--params", "1,2,3;2,-1,1/2", "--report", "json", "--cache", cache_s];
    let cold = mzv(&args);
    assert_eq!(code(&cold), 0, "{}", stderr(&cold));
    let stored = std::fs::read(&cache).unwrap();
    assert!(!stored.is_empty());
    let warm1 = mzv(&args);
    let warm2 = mzv(&args);
    assert_eq!(std::fs::read(&cache).unwrap(), stored);
    let (a, b, c) = (stdout(&cold), stdout(&warm1), stdout(&warm2));
    assert_eq!(without_time(&a), without_time(&b));
    assert_eq!(without_time(&b), without_time(&c));
    let strip = |s: &str| -> String {
        s.lines().map(|l| l.split(",\"wall_time_us\"").next().unwrap().to_string() + "\n").collect()
    };
    assert_eq!(strip(&b), strip(&c));
}

#[test]
fn cache_is_taken_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("env.cache");
    let o = mzv_env(&["eval", "5"], &[("MZV_CACHE", cache.to_str().unwrap())]);
    assert_eq!(code(&o), 0);
    assert!(Path::new(&cache).exists());
    let bad = dir.path().join("bad.cache");
    std::fs::write(&bad, "not a record\n").unwrap();
    assert_eq!(code(&mzv(&["eval", "5", "--cache", bad.to_str().unwrap()])), 3);
}

#[test]
fn settings_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mzv.toml");
    std::fs::write(&cfg, "digits = 12\nreport = \"json\"\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let digits = |o: &Output| -> u32 {
        let v: serde_json::Value = serde_json::from_str(stdout(o).trim()).unwrap();
        v["digits"].as_u64().unwrap() as u32
    };
    let o = mzv(&["eval", "2", "--config", cfg_s]);
    assert_eq!(digits(&o), 12);
    let o = mzv_env(&["eval", "2", "--config", cfg_s], &[("MZV_DIGITS", "15")]);
    assert_eq!(digits(&o), 15);
    let o = mzv_env(&["eval", "2", "--config", cfg_s, "--digits", "18"], &[("MZV_DIGITS", "15")]);
    assert_eq!(digits(&o), 18);
    let o = mzv_env(&["eval", "2"], &[("MZV_CONFIG", cfg_s)]);
    assert_eq!(digits(&o), 12);
    std::fs::write(&cfg, "digits = 12\nunknown_key = 1\n").unwrap();
    assert_eq!(code(&mzv(&["eval", "2", "--config", cfg_s])), 3);
    assert_eq!(code(&mzv(&["eval", "2", "--config", dir.path().join("missing.toml").to_str().unwrap()])), 3);
}

#[test]
fn jobs_and_tolerance_flags() {
    let o = mzv(&["scan", "euler-sum", "--n", "3..5", "--jobs", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&mzv(&["scan", "euler-sum", "--n", "3..5", "--jobs", "0"])), 3);
    let lit = ["verify", "euler-decomposition-literal", "--n", "4", "--digits", "20"];
    assert_eq!(code(&mzv(&[&lit[..], &["--tolerance", "1"]].concat())), 1);
    assert_eq!(code(&mzv(&[&lit[..], &["--tolerance", "21"]].concat())), 3);
    assert_eq!(code(&mzv(&["verify", "euler-sum", "--n", "6", "--tolerance", "25"])), 0);
}

#[test]
fn catalog_listing_round_trips_through_verify() {
    let o = mzv(&["list", "--report", "csv"]);
    let text = stdout(&o);
    let ids: Vec<String> = text.lines().skip(1).map(|l| l.split(',').next().unwrap().to_string()).collect();
    assert!(ids.len() >= 19);
    for id in ids {
        let o = mzv(&["verify", &id, "--report", "json"]);
        assert!(matches!(code(&o), 0 | 1), "{id}: {}", stderr(&o));
        assert_eq!(rows(&o)[0].id, id);
    }
}
