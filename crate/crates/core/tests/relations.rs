use std::collections::BTreeSet;

use mzv::relations::{
    all_families, duality_relations, echelonize, echelonize_rows, enumerate_admissible,
    fds_relations, verify_exact, weight_stats, ExactVerdict, Family, Prover, Provenance,
};
use mzv::{Composition, EvalConfig, Evaluator, MzvCombo};

fn fams(list: &[Family]) -> BTreeSet<Family> {
    list.iter().copied().collect()
}

#[test]
fn admissible_enumeration() {
    let w3 = enumerate_admissible(3).unwrap();
    assert_eq!(w3, vec![Composition::from_parts(&[2, 1]), Composition::from_parts(&[3])]);
    for w in 2..=10 {
        let all = enumerate_admissible(w).unwrap();
        assert_eq!(all.len(), 1 << (w - 2));
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn fds_pairs_are_unordered() {
    let f5 = fds_relations(5);
    let pairs: Vec<String> = f5.rows.iter().map(|r| r.provenance.to_string()).collect();
    assert_eq!(pairs, vec!["fds(2 | 2,1)", "fds(2 | 3)"]);
}

#[test]
fn duality_rows_small_weights() {
    let d3 = duality_relations(3);
    assert_eq!(d3.len(), 1);
    let mut expect = MzvCombo::zeta(&[2, 1]);
    expect.add_int(&[3], -1);
    assert_eq!(d3.rows[0].combo, expect);

    let d4 = duality_relations(4);
    assert_eq!(d4.len(), 1);
    assert_eq!(d4.rows[0].provenance, Provenance::Duality(Composition::from_parts(&[2, 1, 1])));
}

#[test]
fn weight_four_rank() {
    let b = echelonize(&[fds_relations(4), duality_relations(4)]).unwrap();
    assert_eq!(b.rank(), 2);
    assert_eq!(enumerate_admissible(4).unwrap().len(), 4);
    assert_eq!(echelonize(&[]).unwrap().rank(), 0);
}

#[test]
fn mixed_weights_rejected() {
    assert!(echelonize(&[fds_relations(4), duality_relations(5)]).is_err());
}

#[test]
fn echelon_form_is_idempotent_and_deterministic() {
    for w in 4..=8 {
        let a = echelonize(&[fds_relations(w), duality_relations(w)]).unwrap();
        let b = echelonize(&[fds_relations(w), duality_relations(w)]).unwrap();
        assert_eq!(a, b);
        let again = echelonize_rows(w, &a.rows()).unwrap();
        assert_eq!(again, a);
    }
}

#[test]
fn duality_never_lowers_rank() {
    for w in 4..=9 {
        let f = echelonize(&[fds_relations(w)]).unwrap().rank();
        let fd = echelonize(&[fds_relations(w), duality_relations(w)]).unwrap().rank();
        assert!(fd >= f, "weight {w}");
    }
}

#[test]
fn every_relation_vanishes_numerically() {
    let ev = Evaluator::new(EvalConfig::new(30).unwrap());
    for w in 2..=8 {
        for set in [fds_relations(w), duality_relations(w)] {
            for r in &set.rows {
                let v = ev.eval_combo(&r.combo).unwrap();
                assert!(v.abs_le_err(), "{}: {v}", r.provenance);
            }
        }
    }
}

#[test]
fn verify_exact_examples() {
    let mut d = MzvCombo::zeta(&[2, 1]);
    d.add_int(&[3], -1);
    assert_eq!(verify_exact(&d, &fams(&[Family::Duality])).unwrap(), ExactVerdict::Proven);
    assert!(!verify_exact(&d, &fams(&[Family::Fds])).unwrap().is_proven());

    let mut s = MzvCombo::zeta(&[3, 1]);
    s.add_int(&[2, 2], 1);
    s.add_int(&[4], -1);
    match verify_exact(&s, &all_families()).unwrap() {
        ExactVerdict::Unresolved(nf) => assert!(!nf.is_zero()),
        v => panic!("{v:?}"),
    }

    let mut mixed = MzvCombo::zeta(&[3]);
    mixed.add_int(&[2], 1);
    assert!(verify_exact(&mixed, &all_families()).is_err());
}

#[test]
fn proven_candidates_vanish_numerically() {
    // Random-ish weight-6 combinations of relation rows are proven and
    // evaluate to zero; perturbing by one zeta value breaks both.
    let prover = Prover::new();
    let ev = Evaluator::new(EvalConfig::new(30).unwrap());
    let rows: Vec<MzvCombo> = fds_relations(6).rows.into_iter().map(|r| r.combo).collect();
    let mut cand = MzvCombo::zero();
    for (i, r) in rows.iter().enumerate() {
        cand.add_scaled(r, &mzv::Rational::from_integer((i as i64 - 3).into()));
    }
    assert!(prover.verify_exact(&cand, &all_families()).unwrap().is_proven());
    assert!(ev.eval_combo(&cand).unwrap().abs_le_err());
    cand.add_int(&[6], 1);
    assert!(!prover.verify_exact(&cand, &all_families()).unwrap().is_proven());
    assert!(!ev.eval_combo(&cand).unwrap().abs_le_err());
}

#[test]
fn stats_report() {
    let s = weight_stats(4).unwrap();
    assert_eq!((s.fds_rows, s.duality_rows, s.rank, s.ambient_dim), (1, 1, 2, 4));
    for w in 5..=8 {
        let s = weight_stats(w).unwrap();
        assert!(s.rank < s.ambient_dim);
    }
}
