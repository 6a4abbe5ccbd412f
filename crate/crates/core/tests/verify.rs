use opm_core::registry::Registry;
use opm_core::verify::mutation::{Corrupted, Corruption};
use opm_core::verify::{
    check_problem, cps_consistency_check, fd_gradient_check, fd_hessian_check, golden_table_check, sparsity_check,
    Location, SuiteConfig, DEFAULT_SEED,
};
use opm_core::{eval_objective, global, lookup, setup, CheckKind, EvalRequest, GoldenTable, Problem, MANDATORY};

const FIXTURE: &str = include_str!("../fixtures/catalog_table.txt");

#[test]
fn rosenbr_derivatives_at_the_standard_start() {
    let p = lookup("rosenbr").unwrap();
    let g = fd_gradient_check(p, &[-1.2, 1.0], 1e-6, 1e-6).unwrap();
    assert!(g.passed && g.max_rel_err <= 1e-6);
    let h = fd_hessian_check(p, &[-1.2, 1.0], 1e-5, 1e-5).unwrap();
    assert!(h.passed && h.max_rel_err <= 1e-5);
}

#[test]
fn finite_differences_vanish_at_a_minimizer() {
    // central differences of a stationary f are O(h^2 ||H||)
    let p = lookup("rosenbr").unwrap();
    let r = fd_gradient_check(p, &[1.0, 1.0], 1e-6, 1e-6).unwrap();
    let hnorm = 1002.0;
    assert!(r.max_rel_err <= 1e-12 * hnorm + 1e-9);
}

#[test]
fn quadratic_hessians_are_step_independent() {
    let p = lookup("tridia").unwrap();
    let x: Vec<f64> = (0..10).map(|i| 0.3 * i as f64 - 1.0).collect();
    for h in [1e-1, 1e-3, 1e-5] {
        let r = fd_hessian_check(p, &x, h, 1e-5).unwrap();
        assert!(r.max_rel_err < 1e-7, "h = {h}: {:e}", r.max_rel_err);
    }
}

#[test]
fn booth_hessian_is_constant() {
    let p = lookup("booth").unwrap();
    let a = eval_objective(p, &[0.2, -3.0], EvalRequest::ALL, None).unwrap().h.unwrap();
    let b = eval_objective(p, &[7.5, 1.25], EvalRequest::ALL, None).unwrap().h.unwrap();
    assert_eq!(a.to_dense(), b.to_dense());
}

#[test]
fn consistency_examples() {
    let r = cps_consistency_check(lookup("rosenbr").unwrap(), 10, 5, DEFAULT_SEED, 1e-12).unwrap();
    assert!(r.passed && r.max_rel_err <= 1e-12);
    assert_eq!(r.cases, 5);
    let r = cps_consistency_check(lookup("brownden").unwrap(), 4, 5, DEFAULT_SEED, 1e-12).unwrap();
    assert_eq!(r.max_rel_err, 0.0);
}

#[test]
fn lminsurf_sparsity_is_cell_local() {
    let r = sparsity_check(lookup("lminsurf").unwrap(), 16, DEFAULT_SEED).unwrap();
    assert!(r.passed);
    assert_eq!(r.max_rel_err, 0.0);
}

#[test]
fn flipped_gradient_sign_is_caught() {
    let p = lookup("rosenbr").unwrap();
    let bad = Corrupted::new(p, Corruption::GradientSign { element: 1, component: 0 });
    let r = fd_gradient_check(&bad, &[-1.2, 1.0], 1e-6, 1e-6).unwrap();
    assert!(!r.passed);
    assert_eq!(r.worst_index, Some(Location::Gradient { index: 1 }));
}

#[test]
fn scaled_hessian_entry_is_caught() {
    let p = lookup("woods").unwrap();
    let x = setup(p, &[]).unwrap().x0;
    let bad = Corrupted::new(
        p,
        Corruption::HessianScale {
            element: 2,
            row: 1,
            col: 0,
            factor: 1.5,
        },
    );
    assert!(fd_hessian_check(p, &x, 1e-5, 1e-5).unwrap().passed);
    let r = fd_hessian_check(&bad, &x, 1e-5, 1e-5).unwrap();
    assert!(!r.passed);
    assert_eq!(r.worst_index, Some(Location::Hessian { row: 4, col: 3 }));
}

#[test]
fn element_value_offset_breaks_consistency() {
    let p = lookup("arwhead").unwrap();
    let bad = Corrupted::new(p, Corruption::ValueOffset { element: 4, offset: 1e-6 });
    let r = cps_consistency_check(&bad, 10, 5, DEFAULT_SEED, 1e-12).unwrap();
    assert!(!r.passed);
    assert_eq!(r.worst_index, Some(Location::Value));
}

#[test]
fn undeclared_coupling_breaks_sparsity_and_consistency() {
    let p = lookup("rosenbr").unwrap();
    let bad = Corrupted::new(p, Corruption::HiddenCoupling { a: 1, b: 10, weight: 0.5 });
    let r = sparsity_check(&bad, 10, DEFAULT_SEED).unwrap();
    assert!(!r.passed);
    assert_eq!(r.worst_index, Some(Location::Hessian { row: 10, col: 1 }));
    assert!(!cps_consistency_check(&bad, 10, 5, DEFAULT_SEED, 1e-12).unwrap().passed);
}

#[test]
fn the_mandatory_set_passes_every_suite() {
    let table = GoldenTable::embedded();
    let cfg = SuiteConfig::default();
    for name in MANDATORY {
        let reports = check_problem(lookup(name).unwrap(), &CheckKind::ALL, &cfg, global(), &table).unwrap();
        assert_eq!(reports.len(), CheckKind::ALL.len());
        for r in reports {
            assert!(r.passed, "{name} {:?}: {:e} at {:?}", r.check_kind, r.max_rel_err, r.worst_index);
        }
    }
}

#[test]
fn altered_mel_in_the_fixture_fails_that_problem() {
    let table = GoldenTable::embedded();
    let line = table.line("rosenbr").unwrap();
    let mut row = table.row("rosenbr").unwrap().clone();
    row.mel = 3;
    let altered = FIXTURE.replace(line, &table.layout.render(&row));
    assert_ne!(altered, FIXTURE);
    let bad = GoldenTable::parse(&altered).unwrap();
    let reports = golden_table_check(global(), &bad, &["rosenbr", "tridia"]);
    assert!(!reports[0].passed);
    assert_eq!(reports[0].worst_index, Some(Location::Field { column: "mel".into() }));
    assert!(reports[1].passed);
}

#[test]
fn problems_missing_from_the_registry_fail_with_a_reason() {
    let empty = Registry::new();
    let reports = golden_table_check(&empty, &GoldenTable::embedded(), &["rosenbr"]);
    assert!(!reports[0].passed);
    assert!(reports[0].note.as_deref().unwrap().contains("rosenbr"));
}

#[test]
fn dimension_override_checks_one_size() {
    let cfg = SuiteConfig {
        dimension: Some(24),
        ..SuiteConfig::default()
    };
    let table = GoldenTable::embedded();
    let p: &dyn Problem = lookup("dqrtic").unwrap();
    let reports = check_problem(p, &[CheckKind::GradFD], &cfg, global(), &table).unwrap();
    assert_eq!(reports[0].n, 24);
    assert_eq!(reports[0].cases, 4);
    assert!(reports[0].passed);
    let cfg = SuiteConfig {
        dimension: Some(13),
        ..SuiteConfig::default()
    };
    let e = check_problem(lookup("dixmaana").unwrap(), &[CheckKind::GradFD], &cfg, global(), &table).unwrap_err();
    assert_eq!(e.kind(), "InvalidDimension");
}

#[test]
fn reports_serialize_with_their_location() {
    let r = fd_gradient_check(lookup("booth").unwrap(), &[0.0, 0.0], 1e-6, 1e-6).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["check_kind"], "GradFD");
    assert_eq!(v["worst_index"]["at"], "gradient");
}
