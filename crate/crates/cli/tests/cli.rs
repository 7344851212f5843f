use std::path::PathBuf;
use std::process::Command;

use fg_cli::run;
use fg_core::automaton::Automaton;
use fg_core::measures::genfunc_algi;
use fg_core::{RatFunc, Rational};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn fg(args: &[&str]) -> fg_cli::CommandResult {
    run(std::iter::once("fg").chain(args.iter().copied()))
}

#[test]
fn genfunc_of_full_group() {
    let r = fg(&["genfunc", &fixture("full.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.text, "1 / (1 - t)\n");
}

#[test]
fn worked_example_lambda_both_methods() {
    for method in ["eval", "chain"] {
        let r = fg(&["lambda", &fixture("worked_example.json"), "--method", method]);
        assert_eq!((r.code, r.text.as_str()), (0, "3/14\n"), "method {method}");
        assert_eq!(r.json["lambda"], "3/14");
    }
    let r = fg(&["genfunc", &fixture("worked_example.json")]);
    assert_eq!(r.text, "3*t^2 / (18 - 4*t^2)\n");
}

#[test]
fn lambda_of_thick_set_is_a_precondition_failure() {
    for method in ["eval", "chain"] {
        let r = fg(&["lambda", &fixture("full.json"), "--method", method]);
        assert_eq!(r.code, 2, "{}", r.text);
    }
}

#[test]
fn malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"rank": 2, "states": ["a"]}"#).unwrap();
    assert_eq!(fg(&["genfunc", bad.to_str().unwrap()]).code, 1);
    assert_eq!(fg(&["genfunc", "/nonexistent/file.json"]).code, 1);
    assert_eq!(fg(&["frobnicate"]).code, 1);
    assert_eq!(fg(&["make", "cone"]).code, 1);
    assert_eq!(fg(&["make", "gcone", "--word", "x1 x2"]).code, 1);
}

#[test]
fn classify_and_split_worked_example() {
    let r = fg(&["classify", &fixture("worked_example.json")]);
    assert_eq!(r.text, "exponentially negligible\n");
    let r = fg(&["split", &fixture("worked_example.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["saturated"], true);
    assert_eq!(r.json["a1"]["g"], "t^2 / 6");
    assert_eq!(r.json["a3"]["g"], "t^2 / 6");
    let r = fg(&["generators", &fixture("worked_example.json"), "--depth", "6"]);
    assert_eq!(r.text, "x1 x2\nX1 x2\n");
}

#[test]
fn classify_thick_gives_witness() {
    let r = fg(&["classify", &fixture("full.json"), "--depth", "4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["class"], "thick");
    assert_eq!(r.json["mu0"], "1/1");
    assert_eq!(r.json["witness"]["w"], "x1");
}

#[test]
fn split_rejects_non_special() {
    assert_eq!(fg(&["split", &fixture("full.json")]).code, 2);
}

#[test]
fn decompose_pieces_sum_to_source() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pieces");
    for name in ["full.json", "worked_example.json"] {
        let src = fg(&["genfunc", &fixture(name)]);
        let r = fg(&["decompose", &fixture(name), "--out", out.to_str().unwrap()]);
        assert_eq!(r.code, 0);
        let mut sum = RatFunc::zero();
        for piece in r.json["pieces"].as_array().unwrap() {
            let path = out.join(piece["file"].as_str().unwrap());
            let text = std::fs::read_to_string(&path).unwrap();
            let g = fg(&["genfunc", path.to_str().unwrap()]);
            assert_eq!(g.json["g"], piece["g"]);
            sum = &sum + &genfunc_algi::<Rational>(&Automaton::from_json(&text).unwrap()).unwrap().g;
        }
        assert_eq!(format!("{sum}\n"), src.text, "{name}");
        let manifest: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
        assert_eq!(manifest, r.json);
        std::fs::remove_dir_all(&out).unwrap();
    }
}

#[test]
fn make_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], &str); 4] = [
        (&["make", "cone", "--word", "x1 x2"], "t^2 / (12 - 12*t)"),
        (&["make", "even", "--m", "3"], "1 / (1 - t^2)"),
        (&["make", "ballcomp", "--radius", "2"], "t^2 / (1 - t)"),
        (&["make", "nontrivial"], "t / (1 - t)"),
    ];
    for (args, g) in cases {
        let r = fg(args);
        assert_eq!(r.code, 0);
        let path = dir.path().join("a.json");
        std::fs::write(&path, &r.text).unwrap();
        assert_eq!(fg(&["genfunc", path.to_str().unwrap()]).json["g"], g, "{args:?}");
    }
    let r = fg(&["make", "dcone", "--handles", "x1", "X1"]);
    assert_eq!(r.code, 0);
    let r = fg(&["make", "thickmonoid", "--word", "x2"]);
    assert_eq!(r.code, 0);
}

#[test]
fn verify_agrees_on_fixtures() {
    let r = fg(&["verify", &fixture("worked_example.json"), "--depth", "8"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["agrees"], true);
    assert_eq!(r.json["oracle"]["frequencies"][2], "1/6");
}

#[test]
fn errata_exits_3_naming_first_mismatch() {
    let r = fg(&["errata", "--m", "2", "--depth", "10"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json["first_mismatch"], "dcone(x1,x1) at k=3");
    assert!(r.text.contains("dcone(x1,x1) (m=2): first mismatch at k=3: ground truth 1/12, closed form 13/144"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["decompose".to_string(), fixture("worked_example.json")],
        vec!["split".to_string(), fixture("worked_example.json")],
        vec!["make".to_string(), "dcone".into(), "--handles".into(), "x1 x2".into(), "X2".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = serde_json::to_string(&fg(&args).json).unwrap();
        let b = serde_json::to_string(&fg(&args).json).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn binary_routes_streams_and_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_fg");
    let out = Command::new(exe).args(["genfunc", &fixture("full.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1 / (1 - t)\n");

    let out = Command::new(exe).args(["lambda", &fixture("full.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = Command::new(exe).args(["--json", "mu0", &fixture("worked_example.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["mu0"], "0/1");
}
