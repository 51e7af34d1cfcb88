use std::process::{Command, Output};

use serde_json::Value;

fn biquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biquad"))
        .args(args)
        .output()
        .expect("run biquad binary")
}

fn first_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().next().expect("some output")).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn generate_exit_codes() {
    let ok = biquad(&["generate", "--a", "2", "--b", "1"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(
        first_json(&ok)["pair"]["left"],
        serde_json::json!([7, 133, 153])
    );

    for (a, b, why) in [
        ("1", "0", "b = 0"),
        ("1", "2", "b = 2a"),
        ("0", "1", "a = 0"),
        ("3", "3", "a = b"),
        ("0", "0", "(0, 0)"),
    ] {
        let out = biquad(&["generate", "--a", a, "--b", b]);
        assert_eq!(code(&out), 2, "({a}, {b})");
        let v = first_json(&out);
        assert_eq!(v["status"], "degenerate");
        assert!(
            v["reason"].as_str().unwrap().contains(why) || why == "(0, 0)",
            "{v}"
        );
    }
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        code(&biquad(&[
            "verify",
            "--left",
            "7,133,153",
            "--right",
            "171,17,49"
        ])),
        0
    );
    let trivial = biquad(&["verify", "--left", "1,2,3", "--right", "3,2,1"]);
    assert_eq!(code(&trivial), 1);
    assert_eq!(first_json(&trivial)["status"], "trivial");
    let unequal = biquad(&["verify", "--left", "7,133,153", "--right", "17,49,170"]);
    assert_eq!(code(&unequal), 1);
    assert_eq!(first_json(&unequal)["sums_equal"], false);
    assert_eq!(
        code(&biquad(&[
            "verify",
            "--left",
            "-7,133,153",
            "--right",
            "17,49,171"
        ])),
        2
    );
    assert_eq!(
        code(&biquad(&[
            "verify",
            "--left",
            "7,133",
            "--right",
            "17,49,171"
        ])),
        2
    );
    assert_eq!(
        code(&biquad(&[
            "verify",
            "--left",
            "7,x,153",
            "--right",
            "17,49,171"
        ])),
        2
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&biquad(&["generate", "--a", "1"])), 2);
    assert_eq!(code(&biquad(&["search", "--max", "ten"])), 2);
    assert_eq!(code(&biquad(&["search", "--max", "0"])), 2);
}

#[test]
fn search_csv_layout() {
    let out = biquad(&["search", "--max", "130", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        [
            "left1,left2,left3,right1,right2,right3,sum4,prod",
            "22,93,116,29,66,124,256103393,237336",
        ]
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("triads_enumerated"));
}

#[test]
fn search_json_summary_is_last() {
    let out = biquad(&["search", "--max", "30", "--primitive"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["triads_enumerated"], 4960);
    assert_eq!(last["summary"]["pairs"], 0);
}

#[test]
fn generate_range_csv_and_json_agree() {
    let args = [
        "generate-range",
        "--a-min",
        "-2",
        "--a-max",
        "2",
        "--b-min",
        "-2",
        "--b-max",
        "2",
    ];
    let json = biquad(&args);
    assert_eq!(code(&json), 0);
    let text = String::from_utf8(json.stdout).unwrap();
    let rows: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let (summary, pairs) = rows.split_last().unwrap();
    assert_eq!(summary["summary"]["pairs"], pairs.len());
    assert_eq!(summary["summary"]["points"], 25);

    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = String::from_utf8(biquad(&csv_args).stdout).unwrap();
    assert_eq!(csv.lines().count(), pairs.len() + 1);
    for (line, pair) in csv.lines().skip(1).zip(pairs) {
        assert!(line.ends_with(&format!(
            "{},{}",
            pair["sum4"].as_str().unwrap(),
            pair["prod"].as_str().unwrap()
        )));
    }
}

#[test]
fn quartic_subcommands() {
    let t1 = biquad(&["quartic", "t1", "--p", "3", "--q", "2", "--r", "1"]);
    assert_eq!(code(&t1), 0);
    let v = first_json(&t1);
    assert_eq!(v["t"], "65/72");
    assert_eq!(v["curve"]["c3"], "-13/8");

    let t2 = first_json(&biquad(&[
        "quartic", "t2", "--p", "3", "--q", "2", "--r", "1",
    ]));
    assert_eq!(t2["t"], "-65/72");
    assert_eq!(t2["square"], "481/5184");

    let q2 = first_json(&biquad(&[
        "quartic", "q2", "--p", "3", "--q", "2", "--r", "1", "--t", "0",
    ]));
    assert_eq!(q2["value"], "-169/256");
    assert_eq!(q2["square"], Value::Null);

    let sec = biquad(&[
        "quartic", "compose", "--coeffs", "0,-5,0,4", "--t1", "0", "--t2", "1",
    ]);
    assert_eq!(code(&sec), 0);
    let variants = first_json(&sec)["variants"].as_array().unwrap().clone();
    assert_eq!(variants.len(), 4);
    assert_eq!(variants[0]["signs"], serde_json::json!(["+", "+"]));
    assert_eq!(
        variants[0]["point"],
        serde_json::json!({"t": "2", "y": "0"})
    );

    let tan = biquad(&["quartic", "tangent", "--coeffs", "-2,0,0,1", "--t", "0"]);
    let variants = first_json(&tan)["variants"].as_array().unwrap().clone();
    assert_eq!(
        variants[0]["point"],
        serde_json::json!({"t": "-1", "y": "2"})
    );
    assert_eq!(
        variants[1]["point"],
        serde_json::json!({"t": "1", "y": "0"})
    );

    assert_eq!(
        code(&biquad(&[
            "quartic", "tangent", "--coeffs", "-2,0,0,1", "--t", "1"
        ])),
        2
    );
    assert_eq!(
        code(&biquad(&[
            "quartic", "compose", "--coeffs", "0,-5,0,4", "--t1", "0", "--t2", "0"
        ])),
        2
    );
    assert_eq!(
        code(&biquad(&[
            "quartic", "q1", "--p", "0", "--q", "2", "--r", "1"
        ])),
        2
    );
}

#[test]
fn identity_check_reports_on_stderr_too() {
    let out = biquad(&["identity-check"]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("final family sum identity: degree-24 zero polynomial: PASS"));
    assert!(stderr.contains("informational"));
}
