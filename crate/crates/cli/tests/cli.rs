//! End-to-end tests against the compiled binary: output shapes, exit
//! codes, and byte-stability of machine-readable formats.

use std::process::{Command, Output};

use bwcap::BivariatePoly;

fn bwcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwcap"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn code_of(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

const TABLE_CSV: &str = "k,0,1,2,3,4,5,6,7,8,9,10\n\
1,1,0,1,0,1,0,1,0,1,0,1\n\
2,1,1,2,3,6,10,20,35,70,126,252\n\
3,1,1,5,9,33,73,245,593,1921,4881,15525\n\
4,1,2,8,24,96,320,1280,4480,17920,64512,258048\n\
5,1,2,13,44,241,950,5005,21080,109345,477962,2458573\n\
6,1,3,18,81,486,2430,14580,76545,459270,2480058,14880348\n";

#[test]
fn stats_text_output() {
    let out = bwcap(&["stats", "152322"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("black: 7"), "{text}");
    assert!(text.contains("white: 8"), "{text}");
    assert!(text.contains("balanced: false"), "{text}");
}

#[test]
fn stats_json_output() {
    let out = bwcap(&["stats", "132", "--json"]);
    assert_eq!(code_of(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["word"], serde_json::json!([1, 3, 2]));
    assert_eq!(value["black"], "3");
    assert_eq!(value["white"], "3");
    assert_eq!(value["balanced"], true);
    assert_eq!(value["permutation"], true);
    assert_eq!(value["odd_displacements"], 2);
}

#[test]
fn stats_comma_form_and_empty_word() {
    let out = bwcap(&["stats", "15,2,3,2,2", "--json"]);
    assert_eq!(code_of(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["word"], serde_json::json!([15, 2, 3, 2, 2]));

    let out = bwcap(&["stats", ""]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("length: 0"), "{text}");
    assert!(text.contains("balanced: true"), "{text}");
}

#[test]
fn stats_rejects_bad_words() {
    let zero = bwcap(&["stats", "0"]);
    assert_eq!(code_of(&zero), 2);
    assert!(stderr_of(&zero).contains("position 1"));

    let junk = bwcap(&["stats", "1x2"]);
    assert_eq!(code_of(&junk), 2);

    let negative = bwcap(&["stats", "3,-1"]);
    assert_eq!(code_of(&negative), 2);
}

#[test]
fn table_default_is_byte_stable() {
    let first = bwcap(&["table1"]);
    assert_eq!(code_of(&first), 0);
    assert_eq!(stdout_of(&first), TABLE_CSV);

    // Identical bytes across repeated runs and across methods.
    let second = bwcap(&["table1", "--csv"]);
    assert_eq!(stdout_of(&second), TABLE_CSV);
    for method in ["jacobi", "series"] {
        let out = bwcap(&["table1", "--method", method]);
        assert_eq!(code_of(&out), 0);
        assert_eq!(stdout_of(&out), TABLE_CSV, "method {method}");
    }
}

#[test]
fn table_brute_is_jobs_invariant() {
    let reference = bwcap(&["table1", "--k", "4", "--n", "8"]);
    let brute_one = bwcap(&["table1", "--k", "4", "--n", "8", "--method", "brute"]);
    let brute_three = bwcap(&[
        "table1", "--k", "4", "--n", "8", "--method", "brute", "--jobs", "3",
    ]);
    assert_eq!(code_of(&brute_one), 0);
    assert_eq!(stdout_of(&reference), stdout_of(&brute_one));
    assert_eq!(stdout_of(&brute_one), stdout_of(&brute_three));
}

#[test]
fn table_json_shape() {
    let out = bwcap(&["table1", "--k", "2", "--n", "3", "--json"]);
    assert_eq!(code_of(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["method"], "sum");
    assert_eq!(value["counts"][1][3], "3");
}

#[test]
fn poly_routes_emit_identical_bytes() {
    let closed = bwcap(&["poly", "--family", "perm", "--n", "5", "--method", "closed"]);
    let permanent = bwcap(&["poly", "--family", "perm", "--n", "5", "--method", "permanent"]);
    let brute = bwcap(&["poly", "--family", "perm", "--n", "5", "--method", "brute"]);
    assert_eq!(code_of(&closed), 0);
    assert_eq!(stdout_of(&closed), stdout_of(&permanent));
    assert_eq!(stdout_of(&closed), stdout_of(&brute));
}

#[test]
fn poly_output_parses_back() {
    let out = bwcap(&["poly", "--family", "kary", "--k", "1", "--n", "2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert_eq!(
        text.trim(),
        r#"{"vars":["b","w"],"terms":[{"exp":[1,1],"coeff":"1"}]}"#
    );
    let poly = BivariatePoly::parse_json(&text).unwrap();
    assert_eq!(poly.coeff(1, 1), 1.into());

    let perm3 = bwcap(&["poly", "--family", "perm", "--n", "3"]);
    assert_eq!(
        stdout_of(&perm3).trim(),
        r#"{"vars":["b","w"],"terms":[{"exp":[3,3],"coeff":"4"},{"exp":[4,2],"coeff":"2"}]}"#
    );
}

#[test]
fn poly_usage_errors() {
    let missing_k = bwcap(&["poly", "--family", "kary", "--n", "2"]);
    assert_eq!(code_of(&missing_k), 2);

    let bad_method = bwcap(&["poly", "--family", "perm", "--n", "2", "--method", "magic"]);
    assert_eq!(code_of(&bad_method), 2);

    let bad_family = bwcap(&["poly", "--family", "words", "--n", "2"]);
    assert_eq!(code_of(&bad_family), 2);
}

#[test]
fn bal_single_and_sequence() {
    let single = bwcap(&["bal", "--family", "kary", "--k", "3", "--n", "5"]);
    assert_eq!(code_of(&single), 0);
    assert_eq!(stdout_of(&single).trim(), "73");

    for method in ["brute", "jacobi", "series"] {
        let out = bwcap(&["bal", "--family", "kary", "--k", "3", "--n", "5", "--method", method]);
        assert_eq!(stdout_of(&out).trim(), "73", "method {method}");
    }

    let seq = bwcap(&["bal", "--family", "perm", "--order", "8", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&seq)).unwrap();
    assert_eq!(
        value["counts"],
        serde_json::json!(["1", "0", "0", "4", "16", "0", "0", "2592", "20736"])
    );

    let neither = bwcap(&["bal", "--family", "perm"]);
    assert_eq!(code_of(&neither), 2);
}

#[test]
fn bal_budget_exhaustion_is_resource_error() {
    let out = bwcap(&[
        "bal", "--family", "kary", "--k", "3", "--n", "10", "--method", "brute", "--budget", "100",
    ]);
    assert_eq!(code_of(&out), 3);
    assert!(stderr_of(&out).contains("budget"));
}

#[test]
fn census_routes_and_class_lookup() {
    let closed = bwcap(&["census", "--n", "6"]);
    let brute = bwcap(&["census", "--n", "6", "--method", "brute"]);
    assert_eq!(code_of(&closed), 0);
    assert_eq!(stdout_of(&closed), stdout_of(&brute));
    assert_eq!(
        stdout_of(&closed),
        "d,count\n0,36\n2,324\n4,324\n6,36\n"
    );

    let json = bwcap(&["census", "--n", "3", "--json"]);
    assert_eq!(
        stdout_of(&json).trim(),
        r#"{"n":3,"counts":{"0":"2","2":"4"}}"#
    );

    let class = bwcap(&["census", "--n", "7", "--class", "3"]);
    assert_eq!(stdout_of(&class).trim(), "2592");
}

#[test]
fn asymptotics_csv_and_json() {
    let csv = bwcap(&["asymptotics", "--claim", "kary-even"]);
    assert_eq!(code_of(&csv), 0);
    let text = stdout_of(&csv);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,exact,estimate,relative_error"));
    assert_eq!(lines.clone().count(), 4);
    assert!(lines.next().unwrap().starts_with("8,"));

    let json = bwcap(&["asymptotics", "--claim", "jacobi-szego", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 3);

    let bad = bwcap(&["asymptotics", "--claim", "mystery"]);
    assert_eq!(code_of(&bad), 2);

    let odd_as_even = bwcap(&["asymptotics", "--claim", "kary-even", "--k", "3"]);
    assert_eq!(code_of(&odd_as_even), 2);
}

#[test]
fn verify_suites_pass_and_reject_unknown() {
    let kary = bwcap(&["verify", "kary"]);
    assert_eq!(code_of(&kary), 0, "{}", stderr_of(&kary));
    let text = stdout_of(&kary);
    assert!(text.contains("seed: 42"), "{text}");
    assert!(text.contains("[pass]"), "{text}");
    assert!(!text.contains("[FAIL]"), "{text}");

    let seeded = bwcap(&["verify", "identities", "--seed", "7"]);
    assert_eq!(code_of(&seeded), 0);
    assert!(stdout_of(&seeded).contains("seed: 7"));

    let unknown = bwcap(&["verify", "nonsense"]);
    assert_eq!(code_of(&unknown), 2);
}

#[test]
fn oeis_snapshot_comparisons() {
    let out = bwcap(&["oeis", "--id", "A001405"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("all compared terms match"));

    let strict = bwcap(&["oeis", "--id", "A084771", "--strict", "--terms", "12"]);
    assert_eq!(code_of(&strict), 0);

    let json = bwcap(&["oeis", "--id", "A226288", "--terms", "35", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(value["match"], true);
    assert_eq!(value["compared"], 35);
    assert_eq!(value["source"], "snapshot");

    let unknown = bwcap(&["oeis", "--id", "A000001"]);
    assert_eq!(code_of(&unknown), 2);

    let malformed = bwcap(&["oeis", "--id", "1405"]);
    assert_eq!(code_of(&malformed), 2);
}

#[test]
fn clap_usage_is_exit_two() {
    let none = bwcap(&[]);
    assert_eq!(code_of(&none), 2);

    let unknown = bwcap(&["frobnicate"]);
    assert_eq!(code_of(&unknown), 2);
}
