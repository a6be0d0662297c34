use std::path::{Path, PathBuf};
use std::process::Command;

use causal_beams::render::{far_zone_preset, near_zone_preset};
use causal_beams::scenario::Scenario;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_causal-beams"));
    c.env("CAUSAL_BEAMS_THREADS", "2");
    c
}

fn scenarios() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("causal-beams-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

#[test]
fn shipped_scenarios_parse_and_round_trip() {
    let mut n = 0;
    for entry in std::fs::read_dir(scenarios()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let s = Scenario::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(Scenario::from_json(&s.to_json().unwrap()).unwrap(), s);
            n += 1;
        }
    }
    assert!(n >= 8);
    assert_eq!(Scenario::load(scenarios().join("far_zone.json")).unwrap(), Scenario::Field(far_zone_preset()));
    assert_eq!(Scenario::load(scenarios().join("near_zone.json")).unwrap(), Scenario::Field(near_zone_preset()));
}

#[test]
fn field_run_writes_frames() {
    let out = scratch("field");
    let st = bin().args(["field", "--scenario"]).arg(scenarios().join("sampled_beam.json")).arg("--out").arg(&out).output().unwrap().status;
    assert!(st.success());
    let csv = std::fs::read_to_string(out.join("sampled_beam_000.csv")).unwrap();
    assert!(csv.starts_with("x1,x3,t,Re,Im,Abs\n"));
    let pgm = std::fs::read(out.join("sampled_beam_001.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n121 121\n255\n"));
    assert_eq!(pgm.len(), "P5\n121 121\n255\n".len() + 121 * 121);
    let index: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("sampled_beam_frames.json")).unwrap()).unwrap();
    assert_eq!(index["frames"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn spectrum_run_writes_columns() {
    let out = scratch("spectrum");
    let st = bin().args(["spectrum", "--scenario"]).arg(scenarios().join("spectrum.json")).arg("--out").arg(&out).output().unwrap().status;
    assert!(st.success());
    let text = std::fs::read_to_string(out.join("pulsed_beam_spectrum.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kx,ky,kz,omega,Re,Im"));
    assert!(lines.count() > 0);
    std::fs::remove_dir_all(out).unwrap();
}

#[test]
fn wrong_kind_is_an_error() {
    let st = bin().args(["em-field", "--scenario"]).arg(scenarios().join("weyl.json")).arg("--out").arg(scratch("kind")).output().unwrap().status;
    assert_eq!(st.code(), Some(2));
}

#[test]
fn verify_report_is_byte_stable() {
    let (a, b) = (scratch("verify-a"), scratch("verify-b"));
    for d in [&a, &b] {
        let st = bin().args(["verify-all", "--criteria", "1,2,5,6,8", "--seed", "7", "--out"]).arg(d).output().unwrap().status;
        assert!(st.success());
    }
    let ra = std::fs::read(a.join("verify_report.json")).unwrap();
    assert_eq!(ra, std::fs::read(b.join("verify_report.json")).unwrap());
    let timing: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("verify_report_timing.json")).unwrap()).unwrap();
    assert_eq!(timing.as_array().unwrap().len(), 5);
    for d in [a, b] {
        std::fs::remove_dir_all(d).unwrap();
    }
}

#[test]
fn injected_fault_fails_the_cancellation_check() {
    let out = scratch("fault");
    let o = bin()
        .args(["verify-all", "--criteria", "6", "--inject-fault", "flip-filter-sine", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("verify_report.json")).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].contains("I0 - I1"), "{failed:?}");
    std::fs::remove_dir_all(out).unwrap();
}
