use std::collections::HashSet;

use opm_core::{
    cps_structure, eval_objective, eval_objective_with, global, parse_classification, render_classification, setup,
    EvalRequest, EvalResult, ExecPolicy, FStar, Problem,
};
use proptest::prelude::*;

fn problems() -> Vec<&'static dyn Problem> {
    global().iter().collect()
}

fn bits(r: &EvalResult) -> (u64, Option<Vec<u64>>, Option<Vec<(usize, usize, u64)>>) {
    (
        r.f.to_bits(),
        r.g.as_ref().map(|g| g.iter().map(|v| v.to_bits()).collect()),
        r.h
            .as_ref()
            .map(|h| h.entries().iter().map(|t| (t.row, t.col, t.value.to_bits())).collect()),
    )
}

/// A problem, an admissible dimension and a point near its start.
fn problem_point() -> impl Strategy<Value = (usize, usize, Vec<f64>)> {
    (0..problems().len(), 0usize..3).prop_flat_map(|(k, pick)| {
        let p = problems()[k];
        let dims = p.meta().dim_rule.admissible_up_to(40);
        let n = if dims.is_empty() {
            p.meta().default_n
        } else {
            dims[pick % dims.len()]
        };
        (Just(k), Just(n), proptest::collection::vec(-1.0f64..1.0, n))
    })
}

fn point(p: &dyn Problem, n: usize, shift: &[f64]) -> Vec<f64> {
    let s = setup(p, &[n as f64]).unwrap();
    s.x0.iter()
        .zip(shift)
        .enumerate()
        .map(|(i, (x, d))| if s.is_fixed(i) { *x } else { x + d })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cached_and_uncached_evaluations_agree((k, n, shift) in problem_point()) {
        let p = problems()[k];
        let x = point(p, n, &shift);
        let s = cps_structure(p, n).unwrap();
        let a = eval_objective(p, &x, EvalRequest::ALL, Some(&s)).unwrap();
        let b = eval_objective(p, &x, EvalRequest::ALL, None).unwrap();
        prop_assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn execution_policy_does_not_change_results((k, n, shift) in problem_point()) {
        let p = problems()[k];
        let x = point(p, n, &shift);
        let a = eval_objective_with(ExecPolicy::Sequential, p, &x, EvalRequest::ALL, None).unwrap();
        let b = eval_objective_with(ExecPolicy::Parallel, p, &x, EvalRequest::ALL, None).unwrap();
        prop_assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn only_requested_outputs_are_returned((k, n, shift) in problem_point()) {
        let p = problems()[k];
        let x = point(p, n, &shift);
        let full = eval_objective(p, &x, EvalRequest::ALL, None).unwrap();
        for req in [EvalRequest::VALUE, EvalRequest::GRADIENT, EvalRequest::HESSIAN_ONLY] {
            let r = eval_objective(p, &x, req, None).unwrap();
            prop_assert_eq!(r.f.to_bits(), full.f.to_bits());
            prop_assert_eq!(r.g.is_some(), req.gradient);
            prop_assert_eq!(r.h.is_some(), req.hessian);
        }
    }

    #[test]
    fn hessian_entries_stay_inside_element_blocks((k, n, shift) in problem_point()) {
        let p = problems()[k];
        let x = point(p, n, &shift);
        let s = cps_structure(p, n).unwrap();
        let mut covered = HashSet::new();
        for d in &s.eldom {
            for &a in d {
                for &b in d {
                    covered.insert((a.max(b), a.min(b)));
                }
            }
        }
        let h = eval_objective(p, &x, EvalRequest::ALL, Some(&s)).unwrap().h.unwrap();
        for t in h.entries() {
            prop_assert!(t.row >= t.col);
            prop_assert!(covered.contains(&(t.row, t.col)), "({}, {})", t.row, t.col);
        }
        prop_assert!(s.eldom.iter().all(|d| d.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn classification_strings_round_trip(
        obj in "[NCLQSO]",
        con in "[UXBNLQO]",
        reg in "[RI]",
        ord in 0u8..3,
        origin in "[AMR]",
        internal in "[YN]",
        n in prop_oneof![Just("V".to_string()), (0usize..100_000).prop_map(|v| v.to_string())],
        m in prop_oneof![Just("V".to_string()), (0usize..1000).prop_map(|v| v.to_string())],
    ) {
        let s = format!("{obj}{con}{reg}{ord}-{origin}{internal}-{n}-{m}");
        let c = parse_classification(&s).unwrap();
        prop_assert_eq!(render_classification(&c), s);
    }

    #[test]
    fn fstar_text_round_trips(v in proptest::num::f64::NORMAL) {
        let f = FStar::Known(v);
        let back = FStar::parse(&f.render()).unwrap();
        // eight digits after the point
        let w = back.known().unwrap();
        prop_assert!((w - v).abs() <= 1e-8 * v.abs());
        prop_assert_eq!(FStar::parse(&back.render()).unwrap(), back);
    }
}
