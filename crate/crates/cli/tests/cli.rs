use std::process::{Command, Output};

fn twistkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cocycle_of_push_is_a_power() {
    let o = twistkit(&["cocycle", "-g", "3", "-w", "Push(a1)"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("x1^4"), "{out}");
    assert!(out.contains("exponents (4,0,0,0,0,0)"), "{out}");
}

#[test]
fn cocycle_json_and_identity() {
    let o = twistkit(&["cocycle", "-g", "2", "-w", "Ta2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["monomial"]["exponents"], serde_json::json!([0, 0, 0, 0]));

    let o = twistkit(&["cocycle", "-g", "2", "-w", ""]);
    assert!(stdout(&o).starts_with("A = 1\n"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(twistkit(&["cocycle", "-w", "Tq"]).status.code(), Some(2));
    assert_eq!(twistkit(&["verify", "--suite", "no-such"]).status.code(), Some(2));
    assert_eq!(twistkit(&["framing", "-g", "9"]).status.code(), Some(2));
    assert_eq!(twistkit(&["membership", "-g", "2"]).status.code(), Some(2));
}

#[test]
fn framing_values() {
    let o = twistkit(&["framing", "-g", "2"]);
    let out = stdout(&o);
    assert!(out.contains("W(delta) = 3"), "{out}");
    assert!(out.contains("W(s) = -1"), "{out}");

    let o = twistkit(&["framing", "-g", "3", "--json"]);
    let w: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(w["N"], 1);
    assert_eq!(w["point_values"]["p0"], 5);
}

#[test]
fn membership_of_separating_twist() {
    assert_eq!(stdout(&twistkit(&["membership", "-g", "2", "-w", "Ts"])).trim(), "true");
    assert_eq!(stdout(&twistkit(&["membership", "-g", "2", "-w", "Tc1"])).trim(), "false");
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "-g", "2", "--suite", "monomiality", "--cases", "10", "--seed", "7", "--json"];
    let a = twistkit(&args);
    let b = twistkit(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(r["seed"], 7);
    assert_eq!(r["failures"], serde_json::json!([]));
}
