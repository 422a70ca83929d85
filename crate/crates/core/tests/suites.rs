use modva::lie::LieSpec;
use modva::verify::{run_all, run_suite, CarrierSpec, SuiteParams, SuiteReport, SUITES};
use modva::{Error, PrimeField};

fn affine(p: u64, name: &str, level: i64) -> SuiteParams {
    let f = PrimeField::new(p).unwrap();
    let spec = CarrierSpec::affine(name, LieSpec::builtin(name, &f).unwrap(), f.elem(level));
    SuiteParams::new(f, spec)
}

fn virasoro(p: u64, c: i64) -> SuiteParams {
    let f = PrimeField::new(p).unwrap();
    SuiteParams::new(f.clone(), CarrierSpec::virasoro(f.elem(c)))
}

fn assert_clean(r: &SuiteReport, label: &str) {
    assert!(r.attempted > 0, "{label} {} attempted nothing", r.suite);
    assert!(r.ok(), "{label} {}: {:?}", r.suite, r.failures.first());
    assert!(r.failures.is_empty());
}

#[test]
fn all_suites_pass_on_sl2() {
    let reports = run_all(&affine(5, "sl2", 1)).unwrap();
    let names: Vec<_> = reports.iter().map(|r| r.suite.as_str()).collect();
    assert_eq!(names, SUITES);
    for r in &reports {
        assert_clean(r, "sl2");
        assert_eq!(r.params.carrier, "affine:sl2");
    }
}

#[test]
fn carrier_suites_pass_on_other_carriers() {
    for (label, params) in [
        ("abelian1 p3", affine(3, "abelian1", 2)),
        ("sl2 p7 level 0", affine(7, "sl2", 0)),
        ("virasoro p7 c3", virasoro(7, 3)),
        ("virasoro p5 c0", virasoro(5, 0)),
    ] {
        for s in SUITES.iter().filter(|&&s| s != "hopf-axioms") {
            assert_clean(&run_suite(s, &params).unwrap(), label);
        }
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(run_suite("no-such-suite", &virasoro(5, 1)), Err(Error::UnknownSuite(_))));
}

#[test]
fn invalid_parameters_are_rejected() {
    let mut p = virasoro(5, 1);
    p.bound = 0;
    assert!(run_suite("symmetry", &p).is_err());
    let mut p = virasoro(5, 1);
    p.max_degree = 11;
    assert!(run_suite("symmetry", &p).is_err());
}

#[test]
fn reports_are_reproducible() {
    let mut p = virasoro(7, 2);
    p.seed = 11;
    for s in ["invariance", "dual-module", "module-lie"] {
        assert_eq!(run_suite(s, &p).unwrap(), run_suite(s, &p).unwrap());
    }
}

#[test]
fn report_records_parameters() {
    let mut p = affine(5, "sl2", 2);
    p.max_degree = 3;
    p.bound = 2;
    p.seed = 9;
    let r = run_suite("symmetry", &p).unwrap();
    assert_eq!(r.params.p, 5);
    assert_eq!(r.params.central, 2);
    assert_eq!((r.params.max_degree, r.params.bound, r.params.seed), (3, 2, 9));
}
