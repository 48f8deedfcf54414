use std::path::Path;
use std::process::{Command, Output};

use liecomm::cert::{Certificate, Payload};

fn liecomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecomm"))
        .args(args)
        .env_remove("LIECOMM_TOL")
        .output()
        .expect("run liecomm")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn decompose_random_algebra_target() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.json");
    let o = liecomm(&[
        "decompose", "--level", "algebra", "--group", "su", "--n", "2", "--random", "--eps", "1e-4", "--seed", "7",
        "--out", path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert = Certificate::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    match &cert.payload {
        Payload::Algebra(c) => assert!(c.residual.0 <= 1e-9),
        other => panic!("unexpected payload {other:?}"),
    }
    let v = liecomm(&["verify", path_str(&out)]);
    assert_eq!(v.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&v.stdout).contains("commutator residual"));
}

#[test]
fn identity_group_target() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("identity.json");
    std::fs::write(&target, r#"{"matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}"#).unwrap();
    let o = liecomm(&["decompose", "--level", "group", "--n", "2", "--target", path_str(&target)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert = Certificate::parse(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let Payload::Group(c) = cert.payload else { panic!("expected a group certificate") };
    let id = liecomm::numkit::identity(2);
    assert_eq!(c.a.0, id);
    assert_eq!(c.b.0, id);
}

#[test]
fn oversized_target_is_a_solver_error() {
    let o = liecomm(&["decompose", "--n", "2", "--random", "--eps", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TargetTooLarge"));
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"matrix": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]}"#).unwrap();
    assert_eq!(liecomm(&["decompose", "--level", "group", "--n", "2", "--target", path_str(&bad)]).status.code(), Some(1));
    assert_eq!(liecomm(&["decompose", "--n", "3", "--target", path_str(&bad)]).status.code(), Some(1));
    assert_eq!(liecomm(&["decompose", "--n", "2", "--group", "so", "--random", "--eps", "1e-3"]).status.code(), Some(1));
    assert_eq!(liecomm(&["decompose", "--n", "2", "--random", "--eps", "1e-3", "--tol", "-1"]).status.code(), Some(1));
    assert_eq!(liecomm(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(liecomm(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_rejects_truncated_and_perturbed_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.json");
    let o = liecomm(&[
        "decompose", "--level", "group", "--n", "3", "--random", "--eps", "1e-3", "--seed", "2", "--out", path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();

    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, &text[..text.len() / 3]).unwrap();
    assert_eq!(liecomm(&["verify", path_str(&truncated)]).status.code(), Some(1));

    let mut cert = Certificate::parse(&text).unwrap();
    if let Payload::Group(c) = &mut cert.payload {
        c.b.0[(0, 2)].re += 1e-3;
    }
    let perturbed = dir.path().join("p.json");
    std::fs::write(&perturbed, cert.to_canonical_string()).unwrap();
    let v = liecomm(&["verify", path_str(&perturbed)]);
    assert_eq!(v.status.code(), Some(3));
    assert!(stderr(&v).contains("B unitary"));
}

#[test]
fn certificates_are_deterministic() {
    let args = ["decompose", "--level", "group", "--n", "2", "--random", "--eps", "1e-3", "--seed", "11"];
    assert_eq!(liecomm(&args).stdout, liecomm(&args).stdout);
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_liecomm"))
        .args(["decompose", "--n", "2", "--random", "--eps", "1e-3"])
        .env("LIECOMM_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let cert = Certificate::parse(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let Payload::Algebra(c) = cert.payload else { panic!() };
    assert_eq!(c.config.tol.0, 1e-7);
    let o = Command::new(env!("CARGO_BIN_EXE_liecomm"))
        .args(["decompose", "--n", "2", "--random", "--eps", "1e-3"])
        .env("LIECOMM_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn orthogonal_tori() {
    let o = liecomm(&["orth-torus", "--group", "su", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let Payload::Torus(t) = Certificate::parse(&String::from_utf8(o.stdout).unwrap()).unwrap().payload else {
        panic!()
    };
    assert!(t.orthogonal.0 <= 1e-10);
    assert_eq!(t.basis.len(), 3);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c3.json");
    let o = liecomm(&["orth-torus", "--type", "C", "--rank", "3", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let Payload::Torus(t) = Certificate::parse(&std::fs::read_to_string(&out).unwrap()).unwrap().payload else {
        panic!()
    };
    assert!(t.toral.0 <= 1e-9 && t.orthonormal.0 <= 1e-9 && t.orthogonal.0 <= 1e-9);
    assert_eq!(liecomm(&["verify", path_str(&out)]).status.code(), Some(0));

    let o = liecomm(&["orth-torus", "--type", "E", "--rank", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("UnsupportedType"));
}

#[test]
fn orth_torus_with_frame_file() {
    let dir = tempfile::tempdir().unwrap();
    let frame = dir.path().join("frame.json");
    let h = std::f64::consts::FRAC_1_SQRT_2;
    std::fs::write(&frame, format!(r#"{{"matrix": [[[{h}, 0], [{h}, 0]], [[{h}, 0], [-{h}, 0]]]}}"#)).unwrap();
    let o = liecomm(&["orth-torus", "--group", "su", "--n", "2", "--frame", path_str(&frame)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn measure_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let run = |jobs: &str| {
        let o = liecomm(&[
            "measure", "--level", "algebra", "--n", "3", "--eps", "1e-2,1e-3,1e-4,1e-5,1e-6", "--samples", "50", "--seed",
            "4", "--jobs", jobs, "--out", path_str(&out),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read_to_string(&out).unwrap()
    };
    let one = run("1");
    let three = run("3");
    assert_eq!(one, three);
    let Payload::OpennessReport(r) = Certificate::parse(&one).unwrap().payload else { panic!() };
    let beta = r.exponent.unwrap().0;
    assert!((0.4..=0.6).contains(&beta));
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert_eq!(liecomm(&["verify", path_str(&out)]).status.code(), Some(0));
}

#[test]
fn measure_single_row_and_group_level() {
    let o = liecomm(&["measure", "--n", "2", "--eps", "1e-3", "--samples", "1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let Payload::OpennessReport(r) = Certificate::parse(&String::from_utf8(o.stdout).unwrap()).unwrap().payload else {
        panic!()
    };
    assert_eq!(r.rows.len(), 1);

    let o = liecomm(&["measure", "--level", "group", "--n", "2", "--eps", "1e-2,1e-3,1e-4", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let Payload::OpennessReport(r) = Certificate::parse(&String::from_utf8(o.stdout).unwrap()).unwrap().payload else {
        panic!()
    };
    assert!((0.4..=0.6).contains(&r.exponent.unwrap().0));
    assert!(r.rows.iter().all(|row| row.max_residual.0 <= 1e-8));
}

#[test]
fn measure_reports_failures_with_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = liecomm(&["measure", "--n", "2", "--eps", "3,1e-3", "--samples", "2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TargetTooLarge"));
    let Payload::OpennessReport(r) = Certificate::parse(&std::fs::read_to_string(&out).unwrap()).unwrap().payload else {
        panic!()
    };
    assert_eq!(r.failures.len(), 2);
    assert_eq!(r.failures[0].seed, liecomm::solver::sample_seed(0, 0, 0));
}
