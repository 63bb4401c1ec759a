use mzv::formulas::{euler_sum, g2_der, g2_derder};
use mzv::series::{
    block_checks, check_identity, g2_replay, gen_g, gen_pattern, resolved_sides, series_equal, Expr, LinearForm,
    MonomialStatus, PatternTemplate, Series, Slot, SymmetrySpec, Vars, SERIES_IDENTITIES,
};
use mzv::{EvalConfig, Evaluator, Mode, MzvCombo, Rational, Verifier};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn z(p: &[u32]) -> MzvCombo {
    MzvCombo::zeta(p)
}

fn verifier(digits: u32) -> Verifier {
    Verifier::new(Evaluator::new(EvalConfig::new(digits).unwrap()), Mode::Numeric)
}

fn g1(vars: &Vars, i: usize, cutoff: i32) -> Series {
    gen_g(&[LinearForm::var(vars.len(), i)], vars, cutoff).unwrap()
}

#[test]
fn depth_one_generating_function() {
    let v = Vars::new(&["x"]);
    let s = g1(&v, 0, 3);
    assert_eq!(s.len(), 3);
    assert!(s.coeff(&[0]).is_zero());
    for k in 1..=3 {
        assert_eq!(s.coeff(&[k]), z(&[k as u32 + 1]));
    }
}

#[test]
fn template_with_a_fixed_middle_part() {
    let v = Vars::indexed("x", 2);
    let t = PatternTemplate::new(vec![
        Slot::Var { arg: LinearForm::var(2, 0), min: 2 },
        Slot::Const(1),
        Slot::Var { arg: LinearForm::var(2, 1), min: 1 },
    ]);
    let s = gen_pattern(&t, &v, 2).unwrap();
    assert_eq!(s.coeff(&[1, 0]), z(&[2, 1, 1]));
    assert_eq!(s.coeff(&[1, 1]), z(&[2, 1, 2]));
    assert_eq!(s.coeff(&[2, 0]), z(&[3, 1, 1]));
    assert!(s.coeff(&[0, 0]).is_zero());
}

#[test]
fn depth_two_coefficient() {
    let v = Vars::indexed("x", 2);
    let s = gen_g(&[LinearForm::var(2, 0), LinearForm::var(2, 1)], &v, 4).unwrap();
    assert_eq!(s.coeff(&[1, 1]), z(&[2, 2]));
    assert_eq!(s.coeff(&[1, 0]), z(&[2, 1]));
    assert!(s.coeff(&[0, 0]).is_zero());
}

#[test]
fn linear_substitutions() {
    let x = Vars::new(&["x"]);
    let xy = Vars::new(&["x", "y"]);
    let s = g1(&x, 0, 4);
    let shifted = s.substitute_linear(&xy, &[LinearForm::sum_of(2, &[0, 1])]).unwrap();
    assert_eq!(shifted.coeff(&[1, 1]), z(&[3]).scaled(&q(2)));
    assert_eq!(shifted.coeff(&[2, 1]), z(&[4]).scaled(&q(3)));
    assert_eq!(s.substitute_linear(&x, &[LinearForm::var(1, 0)]).unwrap(), s);
    let dropped = s.substitute_linear(&x, &[LinearForm::zero(1)]).unwrap();
    assert!(dropped.is_zero());
    let partial = shifted.substitute_linear(&xy, &[LinearForm::var(2, 0), LinearForm::zero(2)]).unwrap();
    assert_eq!(partial, s.substitute_linear(&xy, &[LinearForm::var(2, 0)]).unwrap());
}

#[test]
fn derivatives() {
    let v = Vars::new(&["x", "y"]);
    let s = g1(&v, 0, 5);
    let d = s.differentiate(0).unwrap();
    assert_eq!(d.coeff(&[0, 0]), z(&[2]));
    assert_eq!(d.coeff(&[2, 0]), z(&[4]).scaled(&q(3)));
    assert!(Series::constant(&v, z(&[2]), 5).differentiate(0).unwrap().is_zero());
    let gy = g1(&v, 1, 5);
    let xg = gy.mul_monomial(&[1, 0]).unwrap();
    assert_eq!(xg.differentiate(0).unwrap(), gy.truncate(xg.differentiate(0).unwrap().cutoff()));
}

#[test]
fn divided_difference_of_depth_one() {
    let x = Vars::new(&["x"]);
    let xy = Vars::new(&["x", "y"]);
    let s = g1(&x, 0, 6);
    let dd = s
        .divided_difference(0, &xy, &LinearForm::var(2, 0), &LinearForm::var(2, 1), &[LinearForm::zero(2)])
        .unwrap();
    for (e, c) in dd.terms() {
        assert_eq!(*c, z(&[(e[0] + e[1]) as u32 + 2]), "{e:?}");
        assert_eq!(dd.coeff(&[e[1], e[0]]), *c);
    }
    for a in 0..=2 {
        for b in 0..=2 {
            assert_eq!(dd.coeff(&[a, b]), z(&[(a + b) as u32 + 2]));
        }
    }
    let lone = Series::monomial(&x, vec![1], z(&[2]), 3).unwrap();
    let one = lone
        .divided_difference(0, &xy, &LinearForm::var(2, 0), &LinearForm::var(2, 1), &[LinearForm::zero(2)])
        .unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one.coeff(&[0, 0]), z(&[2]));
}

#[test]
fn dividing_by_a_variable() {
    let v = Vars::indexed("x", 2);
    let g2 = gen_g(&[LinearForm::var(2, 0), LinearForm::var(2, 1)], &v, 4).unwrap();
    let shifted = g2.divide_by_var(1).unwrap();
    assert_eq!(shifted.coeff(&[1, -1]), z(&[2, 1]));
    assert_eq!(shifted.coeff(&[2, -1]), z(&[3, 1]));
    assert_eq!(shifted.coeff(&[1, 0]), z(&[2, 2]));
    let twice = shifted.divide_by_var(1).unwrap();
    let err = twice.divide_by_var(1).unwrap_err().to_string();
    assert!(err.contains("x2"), "{err}");

    let xy = Vars::new(&["x", "y"]);
    let gy = g1(&xy, 1, 4);
    let back = gy.mul_monomial(&[1, 0]).unwrap().divide_by_var(0).unwrap();
    assert_eq!(back, gy.truncate(back.cutoff()));
}

#[test]
fn slices_and_specialization() {
    let x = Vars::new(&["x"]);
    let s = g1(&x, 0, 4);
    let slice = s.homogeneous_part(2).unwrap();
    assert_eq!(slice.len(), 1);
    assert_eq!(slice.coeff(&[2]), z(&[3]));
    assert_eq!(slice.specialize(&[q(1)]).unwrap(), z(&[3]));
    assert!(slice.specialize(&[q(0)]).unwrap().is_zero());
    assert!(slice.specialize(&[]).is_err());
    assert!(s.homogeneous_part(5).is_err());

    let t = s.scale(&q(3));
    let sum = s.add(&t).unwrap();
    assert_eq!(sum.homogeneous_part(3).unwrap(), s.homogeneous_part(3).unwrap().add(&t.homogeneous_part(3).unwrap()).unwrap());

    let xy = Vars::new(&["x", "y"]);
    let g2 = gen_g(&[LinearForm::sum_of(2, &[0, 1]), LinearForm::var(2, 0)], &xy, 3).unwrap();
    let deg1 = g2.homogeneous_part(1).unwrap();
    assert_eq!(deg1.len(), 2);
    assert_eq!(deg1.coeff(&[1, 0]), z(&[2, 1]));
    assert_eq!(deg1.coeff(&[0, 1]), z(&[2, 1]));
    let deg2 = g2.homogeneous_part(2).unwrap();
    assert_eq!(deg2.coeff(&[2, 0]), z(&[3, 1]) + z(&[2, 2]));
    assert_eq!(deg2.coeff(&[1, 1]), z(&[3, 1]).scaled(&q(2)) + z(&[2, 2]));
    assert_eq!(deg2.coeff(&[0, 2]), z(&[3, 1]));
}

#[test]
fn symmetrizers() {
    let v = Vars::new(&["x", "y"]);
    let g2 = gen_g(&[LinearForm::var(2, 0), LinearForm::var(2, 1)], &v, 4).unwrap();
    let sym = Expr::from_series(g2.clone()).symmetrize(&SymmetrySpec::full(&[0, 1])).resolve().unwrap();
    assert_eq!(sym, g2.add(&g2.permute(&[1, 0])).unwrap());
    let single = Vars::new(&["x"]);
    let x = Series::monomial(&single, vec![1], z(&[2]), 3).unwrap();
    assert_eq!(Expr::from_series(x.clone()).symmetrize(&SymmetrySpec::full(&[0])).resolve().unwrap(), x);
}

#[test]
fn a_series_equals_itself() {
    let v = Vars::indexed("x", 2);
    let g2 = gen_g(&[LinearForm::var(2, 0), LinearForm::var(2, 1)], &v, 4).unwrap();
    let rows = series_equal(&g2, &g2, 4, &verifier(20)).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.status == MonomialStatus::Zero));
}

#[test]
fn degree_one_of_the_double_zeta_identity() {
    let (_, l, r) = resolved_sides("g2id", 1).unwrap();
    let diff = l.sub(&r).unwrap().homogeneous_part(1).unwrap();
    let mut expect = z(&[2, 1]);
    expect.add_int(&[3], -1);
    assert_eq!(diff.coeff(&[1, 0]), expect);
    let v = verifier(30).check(&diff.coeff(&[1, 0])).unwrap();
    assert!(v.passed());
    assert!(v.value.as_ref().unwrap().abs_le_pow10(25));
}

#[test]
fn closed_form_blocks_match_direct_expansion() {
    for id in ["thm-1st3rd", "thm-dblzeta-g3", "depth4-product"] {
        let cutoff = if id == "depth4-product" { 4 } else { 5 };
        let blocks = block_checks(id, cutoff + 2).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in blocks {
            let closed = b.closed.resolve().unwrap();
            let cap = closed.cutoff().min(b.direct.cutoff()).min(cutoff);
            assert_eq!(closed.truncate(cap), b.direct.truncate(cap), "{id} {}", b.name);
        }
    }
}

#[test]
fn negative_powers_cancel_exactly() {
    for id in ["thm-dblzeta-g3", "reduce-gf"] {
        let (_, l, r) = resolved_sides(id, 6).unwrap();
        assert!(l.sub(&r).unwrap().negative_terms().is_empty(), "{id}");
    }
}

#[test]
fn generating_function_identities_hold() {
    let ver = verifier(30);
    for (id, cap) in [("g2id", 6), ("thm-1st3rd", 5), ("thm-dblzeta-g3", 6), ("reduce-gf", 6), ("depth4-product", 4)] {
        let report = check_identity(id, cap, &ver).unwrap();
        assert!(report.passed(), "{id}: {:?}", report.rows.iter().find(|r| r.status == MonomialStatus::Fail));
        assert!(report.structural_failures.is_empty());
        assert!(report.rows.iter().any(|r| r.status == MonomialStatus::NumericPass), "{id}");
    }
    assert_eq!(SERIES_IDENTITIES.len(), 5);
    assert!(check_identity("nope", 3, &ver).is_err());
}

#[test]
fn replayed_derivative_formulas() {
    for n in 4..=8 {
        let (once, twice) = g2_replay(n).unwrap();
        let euler = euler_sum(n).unwrap();
        let der = g2_der(n).unwrap();
        assert_eq!(once, &der - &euler, "n={n}");
        let expect = &(g2_derder(n).unwrap() - der.scaled(&q(2))) + &euler;
        assert_eq!(twice, expect, "n={n}");
    }
    assert!(g2_replay(2).is_err());
}
