use opm_core::catalog::known_minimizer;
use opm_core::classification::{ConstraintKind, Extent, ObjectiveKind};
use opm_core::{
    catalog_row, cps_structure, eval_element, eval_objective, global, lookup, parse_classification, setup,
    EvalRequest, FStar, GoldenTable, OpmError, MANDATORY,
};

#[test]
fn setup_dimensions() {
    let p = lookup("rosenbr").unwrap();
    assert_eq!(setup(p, &[10.0]).unwrap().x0.len(), 10);
    assert_eq!(setup(p, &[]).unwrap().x0.len(), 2);
    assert_eq!(p.meta().default_n, 2);
}

#[test]
fn setup_dixmaana_defaults() {
    let s = setup(lookup("dixmaana").unwrap(), &[]).unwrap();
    assert_eq!(s.fstar, FStar::Known(1.0));
    assert_eq!(s.n(), 12);
    assert_eq!(s.class.to_string(), "OUR2-AY-V-0");
}

#[test]
fn setup_lminsurf_fixes_the_boundary() {
    let s = setup(lookup("lminsurf").unwrap(), &[]).unwrap();
    assert_eq!(s.n(), 16);
    assert_eq!(s.fixed_indices().len(), 12);
    for i in s.fixed_indices() {
        assert_eq!(s.xlower[i], s.xupper[i]);
    }
    assert_eq!(s.fstar, FStar::Known(9.0));
}

#[test]
fn broyden3d_has_two_fixed_variables() {
    let s = setup(lookup("broyden3d").unwrap(), &[]).unwrap();
    assert_eq!(s.fixed_indices().len(), 2);
}

#[test]
fn unknown_problem() {
    assert!(matches!(lookup("nosuch"), Err(OpmError::UnknownProblem(_))));
}

#[test]
fn chained_structures() {
    let s = cps_structure(lookup("rosenbr").unwrap(), 10).unwrap();
    assert_eq!(s.n_elements(), 9);
    for (i, d) in s.eldom.iter().enumerate() {
        assert_eq!(d, &vec![i + 1, i + 2]);
    }
    assert_eq!(s.mel(), 2);
    assert_eq!(cps_structure(lookup("rosenbr").unwrap(), 2).unwrap().eldom, vec![vec![1, 2]]);

    let s = cps_structure(lookup("arwhead").unwrap(), 10).unwrap();
    assert_eq!(s.n_elements(), 9);
    assert!(s.eldom.iter().enumerate().all(|(i, d)| d == &vec![i + 1, 10]));
}

#[test]
fn default_element_sizes() {
    let mel = |name: &str| {
        let p = lookup(name).unwrap();
        cps_structure(p, p.meta().default_n).unwrap().mel()
    };
    assert_eq!(mel("rosenbr"), 2);
    assert_eq!(mel("lminsurf"), 4);
    assert_eq!(mel("brownden"), 4);
}

#[test]
fn hand_evaluations() {
    let rosenbr = lookup("rosenbr").unwrap();
    let r = eval_objective(rosenbr, &[1.0; 6], EvalRequest::GRADIENT, None).unwrap();
    assert_eq!(r.f, 0.0);
    assert!(r.g.unwrap().iter().all(|&v| v == 0.0));
    // 100 (1 - 1.44)^2 + (2.2)^2
    let r = eval_objective(rosenbr, &[-1.2, 1.0], EvalRequest::VALUE, None).unwrap();
    assert!((r.f - 24.2).abs() < 1e-12);
    assert!(r.g.is_none() && r.h.is_none());

    let r = eval_objective(lookup("booth").unwrap(), &[1.0, 3.0], EvalRequest::GRADIENT, None).unwrap();
    assert_eq!(r.f, 0.0);
    assert_eq!(r.g.unwrap(), vec![0.0, 0.0]);

    let r = eval_objective(lookup("zangwil2").unwrap(), &[4.0, 9.0], EvalRequest::VALUE, None).unwrap();
    assert!((r.f + 18.2).abs() < 1e-12);
}

#[test]
fn element_evaluations() {
    let p = lookup("rosenbr").unwrap();
    let params = cps_structure(p, 2).unwrap().param_values();
    let e = eval_element(p, 1, &[1.0, 1.0], &params, EvalRequest::GRADIENT).unwrap();
    assert_eq!((e.f, e.g.unwrap()), (0.0, vec![0.0, 0.0]));
    let e = eval_element(p, 1, &[-1.2, 1.0], &params, EvalRequest::VALUE).unwrap();
    assert!((e.f - 24.2).abs() < 1e-12);

    let p = lookup("arwhead").unwrap();
    let params = cps_structure(p, 10).unwrap().param_values();
    let e = eval_element(p, 3, &[0.0, 0.0], &params, EvalRequest::VALUE).unwrap();
    assert_eq!(e.f, 3.0);
    let err = eval_element(p, 10, &[0.0, 0.0], &params, EvalRequest::VALUE).unwrap_err();
    assert_eq!(err.kind(), "ElementIndexOutOfRange");
}

#[test]
fn overlapping_elements_add_on_the_shared_diagonal() {
    let p = lookup("rosenbr").unwrap();
    let x = [0.3, -0.7, 1.1];
    let h = eval_objective(p, &x, EvalRequest::ALL, None).unwrap().h.unwrap();
    // d2/dx2^2 of 100 (x2 - x1^2)^2 is 200, of 100 (x3 - x2^2)^2 + (1 - x2)^2 is
    // 1200 x2^2 - 400 x3 + 2
    let expected = 200.0 + 1200.0 * x[1] * x[1] - 400.0 * x[2] + 2.0;
    assert!((h.get(2, 2) - expected).abs() < 1e-10);
}

#[test]
fn catalog_rows_match_the_appendix() {
    let row = catalog_row(lookup("tridia").unwrap(), None).unwrap();
    assert_eq!((row.n, row.mel, row.fstar.clone()), (10, 2, FStar::Known(0.0)));
    assert_eq!(row.classif, "QUR2-AY-V-0");
    let row = catalog_row(lookup("morebv").unwrap(), None).unwrap();
    assert_eq!((row.n, row.nfree, row.nfix), (12, 10, 2));
    let row = catalog_row(lookup("woods").unwrap(), None).unwrap();
    assert_eq!((row.n, row.mel, row.fstar), (12, 2, FStar::Known(0.0)));
}

#[test]
fn every_mandatory_row_renders_like_the_fixture() {
    let table = GoldenTable::embedded();
    for name in MANDATORY {
        let row = catalog_row(lookup(name).unwrap(), None).unwrap();
        assert_eq!(table.layout.render(&row), table.line(name).unwrap(), "{name}");
    }
}

#[test]
fn classification_examples() {
    let c = parse_classification("SUR2-AY-3-0").unwrap();
    assert_eq!(c.to_string(), "SUR2-AY-3-0");
    assert_eq!(c.derivative_order, 2);
    assert!(c.internal_vars);
    let c = parse_classification("OXR2-MY-V-0").unwrap();
    assert_eq!(c.constraint_kind, ConstraintKind::FixedVariables);
    assert_eq!(c.dimension, Extent::Variable);
    let c = parse_classification("QUR2-AN-2-0").unwrap();
    assert_eq!(c.objective_kind, ObjectiveKind::Quadratic);
    assert_eq!(c.dimension, Extent::Fixed(2));
}

#[test]
fn known_minimizers_attain_the_published_value() {
    let mut checked = 0;
    for p in global().iter() {
        let n = p.meta().default_n;
        let Some(x) = known_minimizer(p.name(), n) else { continue };
        let fstar = p.meta().fstar.known().unwrap();
        let r = eval_objective(p, &x, EvalRequest::GRADIENT, None).unwrap();
        assert!((r.f - fstar).abs() <= 1e-12 * fstar.abs().max(1.0), "{}: {}", p.name(), r.f);
        // stationarity only in the free variables
        let fixed = setup(p, &[n as f64]).unwrap().fixed_indices();
        let gmax = r
            .g
            .unwrap()
            .iter()
            .enumerate()
            .filter(|(i, _)| !fixed.contains(i))
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        assert!(gmax <= 1e-9, "{}: gradient {gmax:e}", p.name());
        checked += 1;
    }
    assert!(checked >= 20, "{checked}");
}

#[test]
fn point_length_is_checked() {
    let p = lookup("booth").unwrap();
    let e = eval_objective(p, &[1.0, 2.0, 3.0], EvalRequest::VALUE, None).unwrap_err();
    assert_eq!(e.kind(), "DimensionMismatch");
    let e = setup(lookup("dixmaana").unwrap(), &[10.0]).unwrap_err();
    assert_eq!(e.kind(), "InvalidDimension");
}
