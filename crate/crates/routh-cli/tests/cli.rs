//! End-to-end checks of the `routh` binary: output bytes, exit codes, and
//! determinism.

use std::process::{Command, Output};

fn routh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_routh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

#[test]
fn volume_closed_form_json() {
    let out = routh(&["volume", "--n", "4", "--k", "2", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "{\"method\":\"closed_form\",\"value\":\"1/15\",\"n\":4,\
         \"x\":[\"2\",\"2\",\"2\",\"2\"],\"product_regime\":\"gt1\"}\n"
    );
}

#[test]
fn volume_output_is_byte_deterministic() {
    let args = ["volume", "--n", "5", "--ratios", "2/1,3,5/2,1/2,7"];
    let first = routh(&args);
    let second = routh(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn volume_by_subset_enumeration_matches_closed_form() {
    let closed = routh(&["volume", "--n", "5", "--k", "2"]);
    let ie = routh(&["volume", "--n", "5", "--k", "2", "--method", "ie"]);
    assert!(closed.status.success() && ie.status.success());
    assert!(stdout_of(&closed).contains("\"value\":\"1/31\""));
    assert!(stdout_of(&ie).contains("\"value\":\"1/31\""));
    assert!(stdout_of(&ie).contains("\"method\":\"inclusion_exclusion\""));
}

#[test]
fn volume_below_unit_product_reverses_the_cycle() {
    let out = routh(&["volume", "--n", "4", "--k", "1/2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\"value\":\"1/15\""));
    assert!(text.contains("\"product_regime\":\"lt1\""));
}

#[test]
fn first_kind_volume_json() {
    let out = routh(&["first-kind", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("\"method\":\"first_kind\",\"value\":\"5/27\""));
}

#[test]
fn oracle_cross_check_matches() {
    let out = routh(&["oracle", "--n", "3", "--ratios", "2/1,2/1,2/1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "{\"n\":3,\"x\":[\"2\",\"2\",\"2\"],\"closed_form\":\"1/7\",\"oracle\":\"1/7\",\
         \"match\":true,\"first_kind\":\"1/3\",\"first_kind_oracle\":\"1/3\",\
         \"first_kind_match\":true}\n"
    );
}

#[test]
fn oracle_handles_unit_and_low_products() {
    let unit = routh(&["oracle", "--n", "4", "--k", "1"]);
    assert!(unit.status.success());
    let text = stdout_of(&unit);
    assert!(text.contains("\"closed_form\":\"0\",\"oracle\":\"0\",\"match\":true"));

    let low = routh(&["oracle", "--n", "4", "--k", "1/2"]);
    assert!(low.status.success());
    assert!(stdout_of(&low).contains("\"closed_form\":\"1/15\",\"oracle\":\"1/15\",\"match\":true"));
}

#[test]
fn subset_reports_blocks_and_oracle_agreement() {
    let out = routh(&["subset", "--n", "6", "--k", "2", "--subset", "1,2,4,6"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "{\"n\":6,\"x\":[\"2\",\"2\",\"2\",\"2\",\"2\",\"2\"],\"subset\":[1,2,4,6],\
         \"blocks\":[[4],[6,1,2]],\"value\":\"128/945\",\"oracle\":\"128/945\",\
         \"match\":true}\n"
    );
}

#[test]
fn identity_rows_hold_and_exit_zero() {
    let out = routh(&[
        "identity", "--id", "e2", "--n", "5", "--samples", "4", "--seed", "7",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let value: serde_json::Value = serde_json::from_str(row).expect("row is json");
        assert_eq!(value["identity_id"], "e2_general");
        assert_eq!(value["n"], 5);
        assert_eq!(value["holds"], true);
        assert_eq!(value["lhs"], value["rhs"]);
    }
}

#[test]
fn identity_suite_is_deterministic_for_a_seed() {
    let args = [
        "identity", "--id", "first_kind_n4", "--samples", "6", "--seed", "3",
    ];
    let first = routh(&args);
    let second = routh(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn table_reproduces_the_equal_ratio_series() {
    let out = routh(&[
        "table", "--kind", "central", "--n", "3..8", "--k", "2", "--format", "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "kind,n,k,value\n\
         central,3,2,1/7\n\
         central,4,2,1/15\n\
         central,5,2,1/31\n\
         central,6,2,1/63\n\
         central,7,2,1/127\n\
         central,8,2,1/255\n"
    );
}

#[test]
fn invalid_inputs_exit_one() {
    // malformed rational
    let out = routh(&["volume", "--n", "3", "--ratios", "2,0.5,1"]);
    assert_eq!(out.status.code(), Some(1));

    // ratio count mismatch
    let out = routh(&["volume", "--n", "4", "--ratios", "2,2,2"]);
    assert_eq!(out.status.code(), Some(1));

    // non-positive ratio
    let out = routh(&["volume", "--n", "3", "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));

    // n below the smallest simplex
    let out = routh(&["volume", "--n", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));

    // subset enumeration bound
    let out = routh(&["volume", "--n", "25", "--k", "2", "--method", "ie"]);
    assert_eq!(out.status.code(), Some(1));

    // full subset is not proper
    let out = routh(&["subset", "--n", "4", "--k", "2", "--subset", "1,2,3,4"]);
    assert_eq!(out.status.code(), Some(1));

    // identity with a mismatched n
    let out = routh(&["identity", "--id", "ie_n4", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown flags come back as usage errors, not clap's default exit 2
    let out = routh(&["volume", "--n", "4", "--k", "2", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
}
