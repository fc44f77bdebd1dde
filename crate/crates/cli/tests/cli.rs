use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use mori_core::catalog::catalog_names;
use proptest::prelude::*;

fn mori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mori")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn temp_file(contents: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{}-{n}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

const MINIMAL: &str = r#"{
  "name": "one",
  "kind": "surface",
  "labels": ["E1"],
  "gram": [
    [-1]
  ],
  "canonical": [-1],
  "meta": {}
}
"#;

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["classify", "HE8~", "--no-such-flag"],
        vec!["frobnicate"],
        vec!["classify"],
        vec!["classify", "HE8~", "--format", "xml"],
        vec!["bounds", "HE8~", "--c1", "one"],
        vec!["bounds", "HE8~", "--d", "-1"],
        vec!["classify", "HE8~", "--distance-mode", "sideways"],
        vec![],
    ] {
        let out = mori(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn domain_errors_exit_one() {
    let asym = temp_file(
        r#"{"name": "a", "kind": "surface", "labels": ["E1", "E2"], "gram": [[-1, 1], [0, -1]], "meta": {}}"#,
    );
    let broken = temp_file("{\n  \"name\": \"x\",\n  \"kind\": \n}\n");
    for (args, needle) in [
        (vec!["classify".to_string(), "no-such-entry".to_string()], "neither a catalog entry"),
        (vec!["classify".into(), asym.display().to_string()], "(0,1)"),
        (vec!["classify".into(), broken.display().to_string()], "line 4"),
        (vec!["cone".into(), "HE8~".into(), "--cap".into(), "9".into()], "cap 9"),
        (vec!["cone".into(), "table1-F4".into()], "expected a surface document"),
        (vec!["cy3".into(), "HE8~".into()], "expected a cy3 document"),
        (vec!["catalog".into(), "nope".into()], "unknown catalog entry"),
        (vec!["export".into(), "k3-counts".into()], "no graph"),
    ] {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = mori(&argv);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(stderr(&out).starts_with("error: "), "{args:?}");
        assert!(stderr(&out).contains(needle), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn file_input_works() {
    let path = temp_file(MINIMAL);
    let out = mori(&["classify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("delta (max -E^2): 1"));
    assert!(text.contains("[0] elliptic"));
}

#[test]
fn bounds_on_vacuous_configuration() {
    let path = temp_file(MINIMAL);
    let text = stdout(&mori(&["bounds", path.to_str().unwrap()]));
    assert!(text.contains("surface bound 96(C1 + C2/3) + 68 = 68\n"), "{text}");
    assert!(text.contains("threefold bound (16/3)C1 + 4C2 + 6 = 6\n"), "{text}");
}

#[test]
fn narrow_on_he8_succeeds_with_certificate() {
    let text = stdout(&mori(&["narrow", "HE8~"]));
    assert!(text.contains("success: yes"));
    assert!(text.contains("failed clauses: none"));
    assert!(text.contains("H^2 = "));
}

#[test]
fn cy3_on_f4() {
    let text = stdout(&mori(&["cy3", "table1-F4"]));
    assert!(text.contains("elliptic family: elliptic-family(F4)"));
    let text = stdout(&mori(&["cy3", "table1-F4", "--small-ray"]));
    assert!(text.contains("Fano bound rho <= 7: not applicable"));
}

#[test]
fn bounds_overrides_are_labelled() {
    let text = stdout(&mori(&["bounds", "HE8~", "--max-subset", "2", "--d", "1", "--c1", "1", "--c2", "1"]));
    assert!(text.contains("d = 1 (override)"));
    assert!(text.contains("surface bound 96(C1 + C2/3) + 68 = 196"));
}

#[test]
fn dot_export() {
    let out = mori(&["export", "HE8~"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph \"HE8~\" {"));
    assert_eq!(dot.matches("fillcolor=black").count(), 9);
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("f4-{}.dot", std::process::id()));
    let out = mori(&["classify", "table1-F4", "--dot", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.matches("->").count(), 6);
    assert_eq!(written, stdout(&mori(&["export", "table1-F4"])));
}

#[test]
fn catalog_emits_parseable_documents() {
    for name in catalog_names() {
        let out = mori(&["catalog", &name]);
        assert_eq!(code(&out), 0);
        let path = temp_file(&stdout(&out));
        let again = mori(&["catalog", &name]);
        assert_eq!(out.stdout, again.stdout);
        let via_file = mori(&["export", path.to_str().unwrap()]);
        let via_name = mori(&["export", &name]);
        assert_eq!(code(&via_file), code(&via_name));
        if code(&via_name) == 0 {
            assert_eq!(stdout(&via_file), stdout(&via_name));
        }
    }
}

#[test]
fn json_reports_validate_against_schema() {
    let schema_text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    let schema: serde_json::Value = serde_json::from_str(&schema_text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut checked = 0;
    let mut runs: Vec<Vec<String>> = vec![vec!["catalog".into()]];
    for name in catalog_names() {
        for cmd in ["classify", "cone", "narrow", "bounds", "cy3"] {
            runs.push(vec![cmd.into(), name.clone(), "--max-subset".into(), "3".into()]);
        }
    }
    for mut args in runs {
        if args[0] == "cone" || args[0] == "narrow" {
            args.truncate(2);
        }
        args.extend(["--format".into(), "json".into()]);
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = mori(&argv);
        if code(&out) != 0 {
            assert_eq!(code(&out), 1, "{args:?}");
            continue;
        }
        let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        checked += 1;
    }
    // catalog list, classify and bounds on 27 entries, cone and narrow on 3 surfaces, cy3 on 24 diagrams.
    assert_eq!(checked, 1 + 27 + 27 + 3 + 3 + 24);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn malformed_documents_exit_one(cut in 0usize..MINIMAL.len(), byte in any::<u8>(), replace in any::<bool>()) {
        let mut bytes = MINIMAL.as_bytes().to_vec();
        if replace {
            bytes[cut] = byte;
        } else {
            bytes.truncate(cut);
        }
        let text = String::from_utf8_lossy(&bytes).into_owned();
        let path = temp_file(&text);
        let out = mori(&["classify", path.to_str().unwrap()]);
        let c = code(&out);
        prop_assert!(c == 0 || c == 1, "exit {c} for {text:?}");
        if c == 1 {
            prop_assert!(stderr(&out).starts_with("error: "));
        }
    }

    #[test]
    fn unknown_flags_exit_two(flag in "--[a-z]{3,12}") {
        prop_assume!(!["--format", "--dot", "--max-subset", "--distance-mode", "--help", "--version"].contains(&flag.as_str()));
        let out = mori(&["classify", "HE8~", &flag]);
        prop_assert_eq!(code(&out), 2);
    }
}
