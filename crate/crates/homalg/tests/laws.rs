use homalg::complex::is_quasi_iso;
use homalg::laws::*;
use homalg::matrix::Ring;

fn spec(ring: Ring, seed: u64, count: usize) -> InstanceGenSpec {
    InstanceGenSpec::new(ring, seed, count)
}

#[test]
fn generator_is_deterministic() {
    let s = spec(Ring::Z, 7, 5);
    for kind in [Kind::Complex, Kind::ChainMap, Kind::ComposablePair, Kind::QisMap, Kind::RoofPair]
    {
        let a: Vec<String> =
            generate_instance(&s, kind).map(|i| i.to_json().to_string()).collect();
        let b: Vec<String> =
            generate_instance(&s, kind).map(|i| i.to_json().to_string()).collect();
        assert_eq!(a, b);
    }
}

#[test]
fn generated_complexes_validate() {
    // Complex::new checks d² = 0; reaching here means every case validated
    let s = spec(Ring::Z, 11, 10);
    assert_eq!(generate_instance(&s, Kind::Complex).count(), 10);
    let s = spec(Ring::Q, 11, 10);
    assert_eq!(generate_instance(&s, Kind::Complex).count(), 10);
}

#[test]
fn generated_qis_are_quasi_isomorphisms() {
    let s = spec(Ring::Z, 13, 10);
    for inst in generate_instance(&s, Kind::QisMap) {
        let Instance::Map(f) = inst else { panic!("wrong kind") };
        assert!(is_quasi_iso(&f));
    }
}

#[test]
fn instance_json_roundtrip() {
    let s = spec(Ring::Z, 17, 3);
    for kind in [Kind::Complex, Kind::ChainMap, Kind::ComposablePair, Kind::QisMap, Kind::RoofPair]
    {
        for inst in generate_instance(&s, kind) {
            let v = inst.to_json();
            let back = Instance::from_json(&v).unwrap();
            assert_eq!(v.to_string(), back.to_json().to_string());
        }
    }
}

fn run_all_pass(suite: &str, ring: Ring, seed: u64, count: usize) {
    let s = spec(ring, seed, count);
    let suite = Suite::parse(suite).unwrap();
    let rep = run_law_suite(suite, &s).unwrap();
    assert!(
        rep.all_pass(),
        "suite {} failed:\n{}",
        rep.suite,
        rep.canonical_text()
    );
}

#[test]
fn tr_suites_pass_over_z() {
    run_all_pass("TR1", Ring::Z, 1, 8);
    run_all_pass("TR2", Ring::Z, 2, 8);
    run_all_pass("TR3", Ring::Z, 3, 6);
    run_all_pass("TR4", Ring::Z, 4, 6);
    run_all_pass("TR4'", Ring::Z, 5, 6);
    run_all_pass("TR4''", Ring::Z, 6, 6);
}

#[test]
fn ms_suites_pass_over_z() {
    run_all_pass("MS1", Ring::Z, 7, 6);
    run_all_pass("MS2", Ring::Z, 8, 5);
    run_all_pass("MS3", Ring::Z, 9, 5);
    run_all_pass("MS4", Ring::Z, 10, 6);
    run_all_pass("MS5", Ring::Z, 11, 5);
}

#[test]
fn homexact_passes_both_rings() {
    run_all_pass("HOMEXACT", Ring::Z, 12, 6);
    run_all_pass("HOMEXACT", Ring::Q, 12, 6);
}

#[test]
fn suites_pass_over_q() {
    run_all_pass("TR2", Ring::Q, 21, 6);
    run_all_pass("TR4", Ring::Q, 22, 5);
    run_all_pass("MS3", Ring::Q, 23, 5);
}

#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let s = spec(Ring::Z, 42, 10);
    let suite = Suite::parse("TR2").unwrap();
    let base = run_law_suite(suite, &s).unwrap().canonical_text();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let single = pool.install(|| run_law_suite(suite, &s).unwrap().canonical_text());
    assert_eq!(base, single);
    assert_eq!(base, "suite TR2: 10/10 pass\n");
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(Suite::parse("TR9").is_err());
}
