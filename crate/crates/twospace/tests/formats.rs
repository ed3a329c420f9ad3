use std::fs;
use std::path::PathBuf;

use twospace::scheme_file::{parse_scheme, scheme_to_json};
use twospace::table::{parse_table, table_to_csv};
use twospace::CliError;
use twospace_core::reference::{kidney_stones, toy_v1, toy_v2};

fn data(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    fs::read_to_string(p).unwrap()
}

#[test]
fn shipped_fixtures_match_reference_constructors() {
    assert_eq!(parse_scheme(&data("toy-v1.json")).unwrap(), toy_v1());
    assert_eq!(parse_scheme(&data("toy-v2.json")).unwrap(), toy_v2());
    assert_eq!(parse_table(&data("kidney.csv")).unwrap(), kidney_stones());
    assert_eq!(scheme_to_json(&toy_v1()), data("toy-v1.json"));
    assert_eq!(table_to_csv(&kidney_stones()), data("kidney.csv"));
}

#[test]
fn broken_fixture_parses_but_fails_validation() {
    let s = parse_scheme(&data("broken.json")).unwrap();
    let v = s.validate();
    assert_eq!(v.len(), 1);
    assert!(v[0].to_string().contains("spaces not disjoint"));
}

#[test]
fn scheme_written_to_disk_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    fs::write(&p, scheme_to_json(&toy_v2())).unwrap();
    assert_eq!(parse_scheme(&fs::read_to_string(&p).unwrap()).unwrap(), toy_v2());
}

#[test]
fn malformed_inputs_are_parse_errors() {
    for text in ["", "{", "[]", r#"{"name": "x"}"#] {
        let e = parse_scheme(text).unwrap_err();
        assert!(matches!(e, CliError::Parse(_)), "{text}: {e:?}");
        assert_eq!(e.exit_code(), 2);
    }
    assert!(matches!(parse_table("a,b\n1,2\n"), Err(CliError::Parse(_))));
}
