use std::fs;
use std::path::Path;
use std::process::Command;

use hodgecert::blowup::ExampleRing;
use hodgecert::certify::CertificateReport;

const PHI4: &str = "0 0 0 -1\n1 0 0 1\n0 1 0 0\n0 0 1 0\n";
const PHI6: &str = "0 0 0 0 0 -1\n1 0 0 0 0 1\n0 1 0 0 0 0\n0 0 1 0 0 0\n0 0 0 1 0 0\n0 0 0 0 1 0\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hodgecert"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn code(cmd: &mut Command) -> i32 {
    cmd.output().unwrap().status.code().unwrap()
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let phi4 = write(dir.path(), "phi4.txt", PHI4);
    let phi6 = write(dir.path(), "phi6.txt", PHI6);
    let report = dir.path().join("r.json");
    let r = report.to_str().unwrap();

    assert_eq!(code(bin().args(["certify", "--variant", "weight1", "--phi", &phi4, "--report", r])), 0);
    let parsed = CertificateReport::from_json(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(parsed.recheck().unwrap());

    let args = ["certify", "--variant", "weight2", "--phi", &phi6, "--samples", "100", "--report", r];
    assert_eq!(code(bin().args(args)), 2);
    assert_eq!(code(bin().args(args).arg("--acknowledge-sampled")), 0);

    let real = write(dir.path(), "id.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
    assert_eq!(code(bin().args(["certify", "--variant", "weight1", "--phi", &real, "--report", r])), 1);
    let doubled = write(dir.path(), "two.txt", "2 0 0 0\n0 2 0 0\n0 0 2 0\n0 0 0 2\n");
    assert_eq!(code(bin().args(["certify", "--variant", "weight1", "--phi", &doubled, "--report", r])), 1);

    let out = bin().args(["certify", "--variant", "weight2", "--phi", &phi4, "--report", r]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Let n ≥ 3"));
    assert_eq!(code(bin().args(["certify", "--variant", "weight9", "--phi", &phi4, "--report", r])), 3);
    assert_eq!(code(bin().args(["certify", "--variant", "weight1", "--phi", "/nonexistent", "--report", r])), 3);
    assert_eq!(code(&mut bin()), 3);
}

#[test]
fn check_endo_and_build_example() {
    let dir = tempfile::tempdir().unwrap();
    let phi4 = write(dir.path(), "phi4.txt", PHI4);
    let out = bin().args(["check-endo", "--phi", &phi4, "--prime-bound", "200"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"Proven\""));

    let twice = write(dir.path(), "twice.txt", "0 -1 0 0\n1 1 0 0\n0 0 0 -1\n0 0 1 1\n");
    assert_eq!(code(bin().args(["check-endo", "--phi", &twice])), 1);

    let ring = dir.path().join("ring.json");
    let args = ["build-example", "--variant", "weight1-noP1", "--times-p1", "--phi", &phi4, "--out", ring.to_str().unwrap()];
    assert_eq!(code(bin().args(args)), 0);
    let ring = ExampleRing::from_json(&fs::read_to_string(&ring).unwrap()).unwrap();
    assert!(ring.times_p1);
    assert_eq!(ring.betti_numbers()[2], 33);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let phi6 = write(dir.path(), "phi6.txt", PHI6);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let args = ["certify", "--variant", "weight2", "--phi", &phi6, "--samples", "300", "--seed", "9", "--report", p.to_str().unwrap()];
        assert_eq!(code(bin().args(args)), 2);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}
