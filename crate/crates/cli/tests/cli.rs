use std::process::{Command, Output};

fn exsplash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exsplash")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reducible_polynomial_is_a_config_error() {
    let o = exsplash(&["field", "--q", "7", "--poly", "0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ReduciblePolynomial"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(exsplash(&["field", "--q", "6"]).status.code(), Some(2));
    assert_eq!(exsplash(&["field", "--poly", "1,2"]).status.code(), Some(2));
    assert_eq!(exsplash(&["sublines", "--q", "2"]).status.code(), Some(2));
    assert_eq!(exsplash(&["field", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(exsplash(&["splash", "--line", "[1,0,0]"]).status.code(), Some(2));
}

#[test]
fn field_report() {
    let o = exsplash(&["field", "--q", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 27);
    assert_eq!(v["norm_fiber_size"], 13);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_all_q2_passes() {
    let o = exsplash(&["verify-all", "--q", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let checks: Vec<&str> = text.lines().filter(|l| !l.starts_with("NOTE")).collect();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn census_q2_json() {
    let o = exsplash(&["census", "--q", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exterior_subplanes"], 32256);
    assert_eq!(v["splashes"], 36);
    assert_eq!(v["per_splash_counts"]["896"], 36);
}

#[test]
fn output_is_deterministic() {
    let a = exsplash(&["census", "--q", "3", "--samples", "5", "--seed", "11"]);
    let b = exsplash(&["census", "--q", "3", "--samples", "5", "--seed", "11", "--jobs", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let p1 = exsplash(&["project", "--q", "2", "--format", "csv"]);
    let p2 = exsplash(&["project", "--q", "2", "--format", "csv", "--jobs", "2"]);
    assert_eq!(p1.stdout, p2.stdout);
    assert!(stdout(&p1).starts_with("kind,size,projection_points,orbit_size,carrier_match\n"));
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("exsplash-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("splash.json");
    let o = exsplash(&["splash", "--q", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["kind"], "exterior");
    assert_eq!(v["points"].as_array().unwrap().len(), 7);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn user_specified_subplane() {
    // a tangent pair: PG(2, 2) and a line through (1,0,0) that is not a line of it
    let o = exsplash(&[
        "splash",
        "--q",
        "2",
        "--quadrangle",
        "(1,0,0,0,0,0,0,0,0);(0,0,0,1,0,0,0,0,0);(0,0,0,0,0,0,1,0,0);(1,0,0,1,0,0,1,0,0)",
        "--line",
        "[0,0,0,1,0,0,0,1,0]",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "tangent");
    assert_eq!(v["points"].as_array().unwrap().len(), 5);
}
