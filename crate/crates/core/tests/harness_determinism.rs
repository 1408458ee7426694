use penta_geom::domains::{penta_contains, Criterion, Verdict, DEFAULT_TOL};
use penta_geom::harness::{run_suite, sample_penta, SamplerConfig, SamplerStrategy, SuiteConfig};

#[test]
fn sampler_is_reproducible() {
    for strategy in SamplerStrategy::ALL {
        let cfg = SamplerConfig::new(strategy, 64, 99);
        let a = sample_penta(&cfg).unwrap();
        let b = sample_penta(&cfg).unwrap();
        assert_eq!(a, b, "{strategy}");
        let other = sample_penta(&SamplerConfig::new(strategy, 64, 100)).unwrap();
        assert_ne!(a, other, "{strategy}");
    }
}

#[test]
fn pushforward_samples_are_never_outside() {
    let pts = sample_penta(&SamplerConfig::new(SamplerStrategy::ContractionPushforward, 2000, 5)).unwrap();
    for x in pts {
        let v = penta_contains(&x, Criterion::All, DEFAULT_TOL).unwrap().verdict;
        assert_ne!(v, Verdict::Outside, "{x:?}");
    }
}

#[test]
fn report_json_is_identical_across_runs_and_threads() {
    for name in ["automorphism-group", "sup-family", "linear-convexity"] {
        let one = SuiteConfig { n: Some(40), threads: Some(1), ..SuiteConfig::default() };
        let many = SuiteConfig { threads: Some(4), ..one.clone() };
        let a = run_suite(name, &one, 42).unwrap().to_json().unwrap();
        let b = run_suite(name, &one, 42).unwrap().to_json().unwrap();
        let c = run_suite(name, &many, 42).unwrap().to_json().unwrap();
        assert_eq!(a, b, "{name}");
        assert_eq!(a, c, "{name}");
        assert!(!a.contains("wall_clock"));
    }
}

#[test]
fn unknown_suite_and_zero_n_are_rejected() {
    assert!(run_suite("no-such-suite", &SuiteConfig::default(), 1).is_err());
    let zero = SuiteConfig { n: Some(0), ..SuiteConfig::default() };
    assert!(run_suite("orbit-of-zero", &zero, 1).is_err());
}
