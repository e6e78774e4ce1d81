use basechange::verify::{default_heis_params, run_all, HeisParams, Report, SuiteRequest};

fn requests() -> Vec<SuiteRequest> {
    vec![
        SuiteRequest::Level0(5),
        SuiteRequest::NormBijection(3),
        SuiteRequest::Restriction(3),
        SuiteRequest::Endoscopic(3),
        SuiteRequest::FormulaOracle(3),
        SuiteRequest::Engine(3),
        SuiteRequest::Heisenberg(default_heis_params()),
    ]
}

fn render(threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| run_all(&requests()))
        .iter()
        .map(Report::to_json)
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn reports_independent_of_threads_and_repetition() {
    let one = render(1);
    assert_eq!(one, render(1));
    assert_eq!(one, render(4));
}

#[test]
fn report_order_follows_requests() {
    let suites: Vec<String> = run_all(&requests()).into_iter().map(|r| r.suite).collect();
    assert_eq!(
        suites,
        [
            "level0",
            "norm-bijection",
            "restriction",
            "endoscopic",
            "formula-oracle",
            "engine",
            "heisenberg"
        ]
    );
}

#[test]
fn heis_params_round_trip() {
    for h in default_heis_params() {
        assert_eq!(h.to_string().parse::<HeisParams>().unwrap(), h);
    }
    assert!("(3,1,4)".parse::<HeisParams>().is_err());
    assert!("(3,1,x,split)".parse::<HeisParams>().is_err());
}

#[test]
fn infeasible_tuple_is_skipped() {
    let h: HeisParams = "(3,1,5,split)".parse().unwrap();
    let r = run_all(&[SuiteRequest::Heisenberg(vec![h])]).remove(0);
    assert!(r.passed());
    assert!(r
        .checks
        .iter()
        .any(|c| c.name.contains("feasibility") && c.details.contains("split needs")));
}
