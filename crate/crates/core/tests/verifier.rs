use graphcap::alpha::{MemoSource, SolverConfig};
use graphcap::capacity::CapacityConfig;
use graphcap::graph::{cycle, empty, parse_graph6};
use graphcap::poly::Polynomial;
use graphcap::verifier::{
    check_alpha_additivity, check_alpha_supermult, check_diagonal_witness, check_pclass_closure,
    check_sum_power_expansion, check_theta_sandwich, run_suite, CheckContext, CheckResult, PClassOptions, Status,
    SuiteConfig, Verdict,
};
use graphcap::Graph;

fn small_suite() -> SuiteConfig {
    SuiteConfig {
        graphs: ["k1", "e2", "k3", "c5"].map(String::from).to_vec(),
        witness_graphs: vec!["petersen".into()],
        random_pairs: 3,
        ..SuiteConfig::default()
    }
}

/// Re-runs a check from the graph6 strings and parameters it recorded.
fn rerun(c: &CheckResult, ctx: &CheckContext) -> Option<CheckResult> {
    let name = c.check_id.split('[').next()?;
    let gs: Vec<Graph> = c.inputs.iter().filter_map(|s| parse_graph6(s).ok()).collect();
    let param = |key: &str| {
        c.inputs
            .iter()
            .find_map(|s| s.strip_prefix(key).and_then(|v| v.parse::<u32>().ok()))
    };
    Some(match name {
        "alpha_additivity" => check_alpha_additivity(&gs[0], &gs[1], ctx).ok()?,
        "alpha_supermult" => check_alpha_supermult(&gs[0], &gs[1], ctx).ok()?,
        "sum_power_expansion" => check_sum_power_expansion(&gs[0], &gs[1], param("n=")?, ctx).ok()?,
        "theta_sandwich" => check_theta_sandwich(&gs[0], ctx).ok()?,
        "diagonal_witness" => check_diagonal_witness(&gs[0]).ok()?,
        _ => return None,
    })
}

#[test]
fn checks_rederive_from_recorded_inputs() {
    let cfg = small_suite();
    let report = run_suite(&cfg).unwrap();
    let memo = MemoSource::new(cfg.capacity().solver);
    let mut ctx = CheckContext::new(cfg.capacity(), &memo);
    ctx.tol = cfg.tol;
    let mut redone = 0;
    for c in &report.checks {
        if let Some(again) = rerun(c, &ctx) {
            assert_eq!(
                (&again.lhs, &again.rhs, again.status),
                (&c.lhs, &c.rhs, c.status),
                "{}",
                c.check_id
            );
            redone += 1;
        }
    }
    assert!(redone >= 20, "only {redone} checks re-derived");
}

#[test]
fn stock_suite_has_no_hard_failures() {
    let report = run_suite(&SuiteConfig::default()).unwrap();
    let bad: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| &c.check_id)
        .collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(report.exit_code(), 0);
    assert!(report.summary.passed > 300);
}

#[test]
fn pclass_verdicts_are_monotone_in_kmax() {
    let cases = [
        ("x", "y", vec![empty(2), empty(3)]),
        ("x^2", "x", vec![cycle(5).unwrap()]),
        ("x", "x", vec![cycle(7).unwrap()]),
    ];
    for (p, q, gs) in &cases {
        let verdicts = |kmax: u32| {
            let cap = CapacityConfig {
                kmax,
                ..CapacityConfig::default()
            };
            let memo = MemoSource::new(SolverConfig::default());
            let ctx = CheckContext::new(cap, &memo);
            let pp = Polynomial::parse(p, Some(gs.len())).unwrap();
            let qq = Polynomial::parse(q, Some(gs.len())).unwrap();
            let (_, certs) = check_pclass_closure("m", &pp, &qq, gs, &PClassOptions::default(), &ctx).unwrap();
            certs.into_iter().map(|c| (c.polynomial, c.verdict)).collect::<Vec<_>>()
        };
        let (one, two) = (verdicts(1), verdicts(2));
        assert_eq!(one.len(), two.len());
        for ((pa, va), (pb, vb)) in one.iter().zip(&two) {
            assert_eq!(pa, pb);
            if *va == Verdict::In {
                assert_eq!(*vb, Verdict::In, "{pa} flipped from in at kmax 2");
            }
        }
    }
}
