use homalg::complex::Complex;
use homalg::fpmodule::FPModule;
use homalg::matrix::{Matrix, Ring};
use homalg::ser;
use serde_json::json;
use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homalg"))
}

/// ring Z; X = (Z —2→ Z) in degrees 0..1, A = (Z —2→ Z —π→ Z/2) in
/// degrees 0..2 (acyclic, not contractible), U = Z concentrated in 0;
/// identity maps on A and U.
fn fixture() -> String {
    let z = FPModule::free(Ring::Z, 1);
    let x = Complex::new(
        Ring::Z,
        0,
        vec![z.clone(), z.clone()],
        vec![Matrix::from_int_rows(&[&[2]])],
    );
    let a = Complex::new(
        Ring::Z,
        0,
        vec![z.clone(), z.clone(), FPModule::cyclic(Ring::Z, 2)],
        vec![Matrix::from_int_rows(&[&[2]]), Matrix::from_int_rows(&[&[1]])],
    );
    let u = Complex::concentrated(z, 0);
    let id1 = ser::matrix_to_json(&Matrix::identity(1));
    let ws = json!({
        "format_version": 1,
        "ring": "Z",
        "modules": {},
        "complexes": {
            "X": ser::complex_to_json(&x),
            "A": ser::complex_to_json(&a),
            "U": ser::complex_to_json(&u),
        },
        "maps": {
            "idA": { "source": "A", "target": "A",
                     "components": [id1.clone(), id1.clone(), id1.clone()] },
            "idU": { "source": "U", "target": "U", "components": [id1] },
        },
        "roofs": {},
        "dg_algebras": {},
        "dg_modules": {},
    });
    ser::canonical_text(&ws)
}

fn write_ws(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn cohomology_of_multiplication_by_two() {
    let f = write_ws(&fixture());
    let p = f.path().to_str().unwrap();
    let (stdout, _, code) = run(&["cohomology", "-w", p, "-x", "X", "--degree", "1"]);
    assert_eq!(stdout.trim(), "H^1 ≅ Z/2");
    assert_eq!(code, 0);
    let (stdout, _, code) = run(&["cohomology", "-w", p, "-x", "X", "--degree", "0"]);
    assert_eq!(stdout.trim(), "H^0 ≅ 0");
    assert_eq!(code, 0);
}

#[test]
fn ext_of_module_literals() {
    let f = write_ws(&fixture());
    let p = f.path().to_str().unwrap();
    let (stdout, _, code) =
        run(&["ext", "-w", p, "--from", "Z/4", "--to", "Z/6", "-n", "1"]);
    assert_eq!(stdout.trim(), "Ext^1 ≅ Z/2");
    assert_eq!(code, 0);
    let (stdout, _, code) =
        run(&["tor", "-w", p, "--from", "Z/4", "--to", "Z/6", "-n", "1"]);
    assert_eq!(stdout.trim(), "Tor_1 ≅ Z/2");
    assert_eq!(code, 0);
}

#[test]
fn separation_witness_exit_codes() {
    let f = write_ws(&fixture());
    let p = f.path().to_str().unwrap();
    // identity of the acyclic complex is zero in D ...
    let (stdout, _, code) = run(&["zero-in-d", "-w", p, "-f", "idA"]);
    assert_eq!(stdout.trim(), "zero in D");
    assert_eq!(code, 0);
    // ... the identity of Z is not
    let (stdout, _, code) = run(&["zero-in-d", "-w", p, "-f", "idU"]);
    assert_eq!(stdout.trim(), "nonzero in D");
    assert_eq!(code, 1);
}

#[test]
fn workspace_roundtrip_is_byte_identical() {
    let f = write_ws(&fixture());
    let p = f.path().to_str().unwrap();
    let (first, _, code) = run(&["validate", "-w", p, "--json"]);
    assert_eq!(code, 0);
    let g = write_ws(&first);
    let (second, _, code) = run(&["validate", "-w", g.path().to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(first, second);
}

#[test]
fn laws_from_the_command_line() {
    let (stdout, _, code) = run(&["laws", "--suite", "TR1", "--seed", "1", "--count", "3"]);
    assert_eq!(stdout, "suite TR1: 3/3 pass\n");
    assert_eq!(code, 0);
}

#[test]
fn bad_input_is_exit_two() {
    let (_, stderr, code) = run(&["cohomology", "-w", "/no/such/file", "-x", "X", "-n", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
    let f = write_ws(&fixture());
    let p = f.path().to_str().unwrap();
    let (_, stderr, code) = run(&["cohomology", "-w", p, "-x", "nope", "-n", "0"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown complex"));
    let (_, _, code) = run(&["laws", "--suite", "NOPE"]);
    assert_eq!(code, 2);
}

#[test]
fn certify_and_les_on_a_cone_triangle() {
    let f = write_ws(&fixture());
    let p = f.path().to_str().unwrap();
    let (stdout, _, code) = run(&["certify", "-w", p, "-f", "idU", "-t", "2"]);
    assert_eq!(stdout.trim(), "exact (certificate found)");
    assert_eq!(code, 0);
    let (stdout, _, code) = run(&["les", "-w", p, "-f", "idA"]);
    assert_eq!(code, 0, "les failed: {}", stdout);
    assert!(stdout.contains("connecting map identity: true"));
}
