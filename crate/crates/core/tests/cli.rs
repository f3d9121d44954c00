use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use semipell::recurrence::CacheStore;
use semipell::Modulus;

fn semipell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semipell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(path).unwrap()
}

fn assert_golden(args: &[&str], name: &str) {
    let out = semipell(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}");
    assert_eq!(stdout(&out), golden(name), "{args:?} vs {name}");
}

#[test]
fn table_matches_golden() {
    assert_golden(&["table", "15", "2", "6"], "table_15_2_6.txt");
}

#[test]
fn listings_match_golden() {
    assert_golden(&["enum", "9", "2"], "enum_9_2_sp.txt");
    assert_golden(&["enum", "9", "2", "--side", "oc"], "enum_9_2_oc.txt");
    assert_golden(&["enum", "13", "3", "--side", "sp"], "enum_13_3_sp.txt");
    assert_golden(&["enum", "13", "3", "--side", "oc"], "enum_13_3_oc.txt");
}

#[test]
fn series_matches_golden() {
    assert_golden(&["series", "2", "15"], "series_2_15.txt");
    let q3 = stdout(&semipell(&["series", "3", "13"]));
    assert_eq!(q3.lines().nth(13), Some("13 13"));
    let q2 = stdout(&semipell(&["series", "2", "7"]));
    assert_eq!(q2.lines().last(), Some("7 11"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enum", "20", "2", "--side", "oc"][..],
        &["table", "40", "2", "9"],
        &["check", "special-cases"],
    ] {
        assert_eq!(stdout(&semipell(args)), stdout(&semipell(args)), "{args:?}");
    }
}

#[test]
fn count_text_and_json() {
    assert_eq!(stdout(&semipell(&["count", "7", "2"])), "sp(7,2) = 11\n");
    assert_eq!(
        stdout(&semipell(&["count", "13", "3", "--json"])),
        "{\"n\":13,\"m\":3,\"sp\":\"13\"}\n"
    );
}

#[test]
fn map_both_directions() {
    assert_eq!(stdout(&semipell(&["map", "14,3,18,27", "3"])), "(1^14,3,9^2,27)\n");
    assert_eq!(
        stdout(&semipell(&["map", "(1^14,3,9^2,27)", "3", "--direction", "from-oc"])),
        "(14,3,18,27)\n"
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| semipell(args).status.code();
    assert_eq!(code(&["check", "mod4"]), Some(0));
    assert_eq!(code(&["count", "5", "1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["enum", "100000", "2"]), Some(3));
    assert_eq!(code(&["check", "oracle", "--nmax", "30"]), Some(3));
    assert_eq!(code(&["map", "2,9,4", "2"]), Some(4));
    assert_eq!(code(&["map", "(1^2,2)", "2", "--direction", "from-oc"]), Some(4));
    assert_eq!(code(&["check", "partial-sum", "--m", "3"]), Some(4));
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sp.cache");
    let p = path.to_str().unwrap();
    let first = semipell(&["count", "1000", "3", "--cache", p]);
    assert_eq!(first.status.code(), Some(0));
    let written = fs::read_to_string(&path).unwrap();
    let second = semipell(&["count", "1000", "3", "--cache", p]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(fs::read_to_string(&path).unwrap(), written);

    let store = CacheStore::read_from(written.as_bytes()).unwrap();
    let cache = store.cache(Modulus::new(3).unwrap()).unwrap();
    assert!(cache.get(1000).is_some());

    fs::write(&path, "3 5 3\n3 4 3\n").unwrap();
    let bad = semipell(&["count", "10", "3", "--cache", p]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}
