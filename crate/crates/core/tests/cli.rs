use std::process::Command;

fn autseq(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_autseq")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn decide_true_and_false() {
    let (code, out) = autseq(&["--seq", "x=tm", "decide", "E i E n (n >= 1) & A m < n: x[i+m] = x[i+n+m]"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("TRUE"));
    let (code, out) = autseq(&["--seq", "x=tm", "decide", "E i E n (n >= 1) & A m <= n: x[i+m] = x[i+n+m]"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FALSE"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(autseq(&["decide", "E i (i <"]).0, 2);
    assert_eq!(autseq(&["measure", "no-such-kind", "tm"]).0, 2);
    assert_eq!(autseq(&["frobnicate"]).0, 2);
}

#[test]
fn resource_ceiling_exits_3() {
    assert_eq!(autseq(&["--max-states", "10", "measure", "subword-complexity", "tm"]).0, 3);
    assert_eq!(autseq(&["--prefix-len", "1000", "oracle-compare", "subword-complexity", "tm", "11"]).0, 3);
}

#[test]
fn measure_and_oracle_agree() {
    let (code, out) = autseq(&["measure", "subword-complexity", "tm", "0..4"]);
    assert_eq!(code, 0);
    let values: Vec<&str> = out.lines().skip(1).map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "2", "4", "6", "10"]);
    let (code, out) = autseq(&["oracle-compare", "repetitivity-I", "tm", "8"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn conjecture_verifies() {
    let (code, out) = autseq(&["verify-conjecture"]);
    assert_eq!(code, 0);
    assert!(out.contains("EQUIVALENT"));
    assert_eq!(out.matches("HOLDS").count(), 9);
}
