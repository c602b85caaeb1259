//! End-to-end tests of the `selmer` binary: output contracts, exit
//! codes, determinism, and the exactness of serialized traces.

use std::process::{Command, Output};

fn selmer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selmer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = selmer(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn golden_expansion_is_fixed() {
    let out = stdout(&[
        "expand",
        "--algo",
        "msa",
        "--field",
        "x^2-5:(2,3)",
        "--point",
        "(a-1)/2,(3-a)/2",
        "--steps",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 3);
    for step in steps {
        assert_eq!(step["digit"], "2");
        assert_eq!(step["point"], v["start"]);
    }
    assert_eq!(v["terminated"], false);
}

#[test]
fn ssa_expansion_closes_after_31_steps() {
    let out = stdout(&[
        "expand",
        "--algo",
        "ssa",
        "--field",
        "x^3-2:(1,2)",
        "--point",
        "a^2-1,a-1",
        "--steps",
        "31",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 31);
    // T^31 x = T x, exactly, comparing serialized exact coefficients
    assert_eq!(steps[30]["point"], steps[0]["point"]);
    assert_ne!(steps[30]["point"], v["start"]);
}

#[test]
fn trace_json_reproduces_exact_states() {
    let out = stdout(&[
        "expand",
        "--algo",
        "msa",
        "--field",
        "x^3-2:(1,2)",
        "--point",
        "a^2-1,a-1",
        "--steps",
        "12",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let (algo, states, digits) = selmer_cli::trace::trace_from_json(&v).unwrap();
    assert_eq!(algo, selmer_core::maps::Algo::Msa);
    assert_eq!(states.len(), 13);
    // re-run the dynamics from the parsed start: every state must match
    let mut x = states[0].clone();
    for (i, d) in digits.iter().enumerate() {
        let selmer_core::maps::StepOutcome::Step { next, digit } =
            selmer_core::maps::msa_step(&x)
        else {
            panic!("expansion should not terminate");
        };
        assert_eq!(&digit, d);
        assert_eq!(next, states[i + 1]);
        x = next;
    }
}

#[test]
fn rational_msa_reports_termination() {
    let out = stdout(&[
        "expand", "--algo", "msa", "--point", "2/3,1/2", "--steps", "10",
    ]);
    assert!(out.contains("terminated"));
    let detect = stdout(&[
        "detect-period",
        "--algo",
        "msa",
        "--point",
        "2/3,1/2",
        "--max-steps",
        "10",
    ]);
    assert!(detect.contains("status: terminated"));
}

#[test]
fn detect_period_reports_known_periods() {
    let out = stdout(&[
        "detect-period",
        "--algo",
        "ssa",
        "--field",
        "x^3-2:(1,2)",
        "--point",
        "a^2-1,a-1",
        "--max-steps",
        "64",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "periodic");
    assert_eq!(v["preperiod"], 1);
    assert_eq!(v["period"], 30);

    let golden = stdout(&[
        "detect-period",
        "--algo",
        "msa",
        "--field",
        "x^2-5:(2,3)",
        "--point",
        "(a-1)/2,(3-a)/2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&golden).unwrap();
    assert_eq!(v["status"], "periodic");
    assert_eq!(v["preperiod"], 0);
    assert_eq!(v["period"], 1);
    // char poly t^3 - 2t - 1, lowest degree first
    assert_eq!(
        v["char_poly"],
        serde_json::json!(["-1", "-2", "0", "1"])
    );
    // rho0 interval lies inside (1.6, 1.7)
    let lo = selmer_core::rational::parse_rational(v["rho0_interval"][0].as_str().unwrap())
        .unwrap();
    let hi = selmer_core::rational::parse_rational(v["rho0_interval"][1].as_str().unwrap())
        .unwrap();
    assert!(lo > selmer_core::rational::rat(16, 10));
    assert!(hi < selmer_core::rational::rat(17, 10));
}

#[test]
fn eventually_periodic_point_analyzed_from_cycle_entry() {
    // ((1+2√5)/19, (9−√5)/38) is the digit-5 preimage of the golden
    // point: expansion 5, 2, 2, 2, ... with preperiod 1
    let out = stdout(&[
        "detect-period",
        "--algo",
        "msa",
        "--field",
        "x^2-5:(2,3)",
        "--point",
        "(1+2*a)/19,(9-a)/38",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "periodic");
    assert_eq!(v["preperiod"], 1);
    assert_eq!(v["period"], 1);
    assert_eq!(v["cycle_digits"], serde_json::json!(["2"]));
    // the cycle entry is the golden point itself
    assert_eq!(
        v["cycle_entry"],
        serde_json::json!([["-1/2", "1/2"], ["3/2", "-1/2"]])
    );

    let analyzed = stdout(&[
        "analyze",
        "--field",
        "x^2-5:(2,3)",
        "--point",
        "(1+2*a)/19,(9-a)/38",
        "--s-max",
        "4",
        "--g-max",
        "3",
    ]);
    assert!(analyzed.contains("status: periodic, m = 1, p = 1"));
    assert!(analyzed.contains("char poly: t^3 - 2*t - 1"));
}

#[test]
fn msa_cube_root_not_found_within_budget() {
    let out = selmer(&[
        "detect-period",
        "--algo",
        "msa",
        "--field",
        "x^3-2:(1,2)",
        "--point",
        "a^2-1,a-1",
        "--max-steps",
        "40",
    ]);
    assert!(out.status.success(), "NotFound still exits 0");
    assert!(String::from_utf8_lossy(&out.stdout).contains("not-found"));
}

#[test]
fn byte_identical_reruns() {
    let args = [
        "expand", "--algo", "ssa", "--field", "x^3-2:(1,2)", "--point", "a^2-1,a-1",
        "--steps", "8", "--format", "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let vargs = ["verify", "roundtrip", "--trials", "10", "--seed", "7"];
    assert_eq!(stdout(&vargs), stdout(&vargs));
    let pargs = [
        "analyze", "--field", "x^2-5:(2,3)", "--point", "(a-1)/2,(3-a)/2", "--s-max", "6",
        "--g-max", "4", "--format", "csv",
    ];
    assert_eq!(stdout(&pargs), stdout(&pargs));
}

#[test]
fn exit_codes() {
    // parse failure: 2
    let bad = selmer(&["expand", "--algo", "msa", "--point", "2/3,,1/2", "--steps", "3"]);
    assert_eq!(bad.status.code(), Some(2));
    let bad_field = selmer(&[
        "expand", "--algo", "msa", "--field", "x^3-2:(2,3)", "--point", "a-1,a-1",
        "--steps", "3",
    ]);
    assert_eq!(bad_field.status.code(), Some(2));
    let bad_suite = selmer(&["verify", "nonsense"]);
    assert_eq!(bad_suite.status.code(), Some(2));
    // clap usage error: 2
    let unknown = selmer(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    // success: 0
    let ok = selmer(&["verify", "det", "--n", "2..3", "--k", "1..3"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn partition_writes_exact_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("fig");
    let out = selmer(&["partition", "--k-max", "5", "--out", base.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(base.with_extension("csv")).unwrap();
    assert!(csv.starts_with("kind,k,vertex,x1,x2"));
    // exact rationals, not decimals
    assert!(csv.contains("cell,3,0,1,1/3"));
    assert!(csv.contains("image,2,1,1/3,1/3"));
    assert!(!csv.contains("0.33"));
    // 5 cells and 5 images, 4 vertices each, plus header
    assert_eq!(csv.lines().count(), 1 + 5 * 4 + 5 * 4);
    let svg = std::fs::read_to_string(base.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("</svg>"));

    // degenerate single cell
    let base1 = dir.path().join("single");
    let out1 = selmer(&["partition", "--k-max", "1", "--out", base1.to_str().unwrap()]);
    assert!(out1.status.success());
    let csv1 = std::fs::read_to_string(base1.with_extension("csv")).unwrap();
    assert_eq!(csv1.lines().count(), 1 + 4 + 4);
    assert!(csv1.contains("cell,1,3,1/2,1/2"));
}

#[test]
fn analyze_reports_columns_and_envelope() {
    let out = stdout(&[
        "analyze",
        "--field",
        "x^2-5:(2,3)",
        "--point",
        "(a-1)/2,(3-a)/2",
        "--s-max",
        "10",
        "--g-max",
        "6",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "periodic");
    let conv = v["convergence"].as_array().unwrap();
    // columns 0..=2, 10 steps each
    assert_eq!(conv.len(), 30);
    let approx = &v["approximation"];
    assert_eq!(approx["rows"].as_array().unwrap().len(), 12);
    assert_eq!(approx["envelope_holds"], true);
    // eigen point present with exact coefficients
    assert_eq!(v["eigen_point"][0], serde_json::json!(["-1", "1"]));
}

#[test]
fn analyze_on_nonperiodic_reports_status() {
    let out = stdout(&[
        "analyze",
        "--field",
        "x^3-2:(1,2)",
        "--point",
        "a^2-1,a-1",
        "--max-steps",
        "40",
    ]);
    assert!(out.contains("not-found"));
}
