use tptori::explorer::{
    replay_counterexample, run_property_suite, scan_conjecture_a, scan_conjecture_b, Format, Mutation, Report,
    ScanConfig,
};

#[test]
fn reports_are_deterministic_and_roundtrip() {
    let cfg = ScanConfig::new(3, 42, 300).unwrap();
    let a1 = Report::Conjecture(scan_conjecture_a(&cfg).unwrap());
    let a2 = Report::Conjecture(scan_conjecture_a(&cfg).unwrap());
    assert_eq!(a1.to_json().unwrap(), a2.to_json().unwrap());
    assert_eq!(Report::parse_json(&a1.to_json().unwrap()).unwrap(), a1);
    let b = Report::Conjecture(scan_conjecture_b(&cfg).unwrap());
    assert_eq!(Report::parse_json(&b.render(Format::Json).unwrap()).unwrap(), b);
    assert_eq!(b.render(Format::Csv).unwrap().lines().count(), 1 + cfg.frames());
}

#[test]
fn different_seeds_differ() {
    let r1 = scan_conjecture_a(&ScanConfig::new(2, 1, 100).unwrap()).unwrap();
    let r2 = scan_conjecture_a(&ScanConfig::new(2, 2, 100).unwrap()).unwrap();
    assert_ne!(r1.part_a, r2.part_a);
}

#[test]
fn counterexamples_replay() {
    let r = scan_conjecture_a(&ScanConfig::new(3, 9, 500).unwrap()).unwrap();
    assert!(r.counterexamples.is_empty());
    for c in &r.counterexamples {
        assert!(replay_counterexample(c).unwrap());
    }
}

#[test]
fn suite_smoke_and_negative_control() {
    let cfg = ScanConfig::new(2, 3, 1).unwrap();
    assert!(run_property_suite(&cfg, Mutation::None).unwrap().passed);
    let bad = run_property_suite(&ScanConfig::new(2, 3, 4).unwrap(), Mutation::CorruptTilde).unwrap();
    assert!(!bad.passed);
    assert!(bad.failing_modules().iter().any(|m| m == "flags"));
}
