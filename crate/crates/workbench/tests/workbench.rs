//! Document round trips, golden files, schema errors, corpus determinism and
//! the `hofib` command line.
//!
//! Golden files are rewritten with
//! `HOFIB_BLESS=1 cargo test -p hofib-workbench --test workbench -- --test-threads=1`
//! (other tests read them, so blessing runs single-threaded).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use hofib_core::algebra::{FiniteCategory, FiniteGroupoid};
use hofib_core::bicat::Direction;
use hofib_core::instances::{m_omega, m_omega_theta, xm_mod2};
use hofib_core::nerve::category_nerve;
use hofib_core::Error;
use hofib_workbench::corpus::{generate_corpus, Bounds, CorpusSpec};
use hofib_workbench::schema::{self, Document};
use hofib_workbench::suites::{run_suite, Options, Suite};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn golden_docs() -> Vec<(&'static str, Document)> {
    let th = m_omega_theta();
    let corpus = generate_corpus(&CorpusSpec::new(0)).unwrap();
    let mv = run_suite(Suite::Mv, &corpus, &Options::default()).unwrap();
    vec![
        ("groupoid", Document::Groupoid(Arc::new(FiniteGroupoid::indiscrete("I2", &["0", "1"])))),
        ("bicategory", Document::Bicategory(m_omega().delooping())),
        ("xmod", Document::Xmod(xm_mod2())),
        ("monoidal", Document::Monoidal(m_omega())),
        ("sset", Document::Sset(category_nerve(&FiniteCategory::ordinal(1), 2).unwrap())),
        ("lax", Document::Lax(th.sigma(Direction::Lax).unwrap())),
        ("oplax", Document::Lax(th.sigma(Direction::Oplax).unwrap())),
        ("report", Document::Report(mv)),
    ]
}

fn golden(name: &str) -> PathBuf {
    golden_dir().join(format!("{name}.json"))
}

#[test]
fn golden_files_match_and_round_trip() {
    let bless = std::env::var_os("HOFIB_BLESS").is_some();
    if bless {
        std::fs::create_dir_all(golden_dir()).unwrap();
    }
    let tmp = tempfile::tempdir().unwrap();
    for (name, doc) in golden_docs() {
        let path = golden(name);
        if bless {
            schema::save(&path, &doc).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(doc.render(), on_disk, "{name} differs from its golden file");

        let back = schema::load(&path).unwrap();
        assert_eq!(back.schema(), doc.schema());
        let copy = tmp.path().join(format!("{name}.json"));
        schema::save(&copy, &back).unwrap();
        assert_eq!(std::fs::read_to_string(&copy).unwrap(), on_disk, "{name} is not byte-stable");
    }
}

fn golden_value(name: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(golden(name)).unwrap()).unwrap()
}

fn schema_error(v: &serde_json::Value) -> (String, String) {
    match schema::from_value(v) {
        Err(Error::Schema { pointer, message }) => (pointer, message),
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn missing_composite_names_the_pair() {
    let mut v = golden_value("groupoid");
    v["compose"].as_array_mut().unwrap().pop();
    let (pointer, message) = schema_error(&v);
    assert_eq!(pointer, "/compose");
    assert!(message.starts_with("missing composite ("), "{message}");
}

#[test]
fn other_version_is_a_version_error() {
    let mut v = golden_value("groupoid");
    v["schema"] = "groupoid.v2".into();
    match schema::from_value(&v) {
        Err(Error::SchemaVersion { found, expected }) => {
            assert_eq!(found, "groupoid.v2");
            assert_eq!(expected, "groupoid.v1");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_kind_points_at_the_schema_field() {
    let mut v = golden_value("groupoid");
    v["schema"] = "tricategory.v1".into();
    assert_eq!(schema_error(&v).0, "/schema");
}

#[test]
fn unknown_label_points_at_its_field() {
    let mut v = golden_value("groupoid");
    v["morphisms"][0]["src"] = "nowhere".into();
    let (pointer, message) = schema_error(&v);
    assert_eq!(pointer, "/morphisms/0/src");
    assert!(message.contains("nowhere"), "{message}");
}

#[test]
fn invalid_json_is_a_schema_error() {
    assert!(matches!(schema::parse("{"), Err(Error::Schema { .. })));
}

#[test]
fn corpus_is_a_function_of_the_seed() {
    let a = generate_corpus(&CorpusSpec::new(0)).unwrap();
    let b = generate_corpus(&CorpusSpec::new(0)).unwrap();
    let c = generate_corpus(&CorpusSpec::new(1)).unwrap();
    assert_eq!(a.fingerprint(), b.fingerprint());
    assert_ne!(a.fingerprint(), c.fingerprint());
    let names: Vec<&str> = a.cospans.iter().map(|c| c.0.as_str()).collect();
    assert!(names.contains(&"example-i") && names.contains(&"example-ii"), "{names:?}");
}

#[test]
fn oversized_bounds_are_refused() {
    let mut spec = CorpusSpec::new(0);
    spec.bounds = Bounds { max_objects: Bounds::MAX.max_objects + 1, ..Bounds::MAX };
    assert!(matches!(generate_corpus(&spec), Err(Error::ResourceLimit { .. })));
    spec.bounds = Bounds { max_cells_per_hom: Bounds::MAX.max_cells_per_hom + 1, ..Bounds::MAX };
    assert!(matches!(generate_corpus(&spec), Err(Error::ResourceLimit { .. })));
}

// ---------------------------------------------------------------- CLI

fn hofib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hofib")).args(args).env_remove("HOFIB_MAX_CELLS").output().unwrap()
}

fn text(o: &Output) -> String {
    format!("{}{}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr))
}

#[test]
fn injected_pentagon_fault_fails_with_its_instance() {
    let o = hofib(&["run", "axioms", "--inject", "pentagon"]);
    assert_eq!(o.status.code(), Some(1), "{}", text(&o));
    assert!(text(&o).contains("(1,1,0,0)"), "{}", text(&o));
}

#[test]
fn json_report_parses_as_a_report() {
    let o = hofib(&["run", "mv", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    match schema::parse(&String::from_utf8(o.stdout).unwrap()).unwrap() {
        Document::Report(r) => assert_eq!(r.exit_code(), 0),
        d => panic!("got {}", d.schema()),
    }
}

#[test]
fn validate_exit_codes() {
    for name in ["groupoid", "bicategory", "xmod", "monoidal", "sset", "lax"] {
        let o = hofib(&["validate", golden(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", text(&o));
    }
    let mut v = golden_value("groupoid");
    v["morphisms"][0]["src"] = "nowhere".into();
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = hofib(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/morphisms/0/src"), "{}", text(&o));
}

#[test]
fn cell_ceiling_is_a_resource_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_hofib"))
        .args(["nerve", golden("bicategory").to_str().unwrap(), "--dim", "4"])
        .env("HOFIB_MAX_CELLS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", text(&o));
}

#[test]
fn comma_command_writes_a_valid_bicategory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("comma.json");
    let o = hofib(&[
        "comma",
        "--lax",
        golden("lax").to_str().unwrap(),
        "--oplax",
        golden("oplax").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
    let b = schema::load_bicategory(&out).unwrap();
    assert!(b.validate().is_valid());
    let o = hofib(&["validate", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o));
}

#[test]
fn job_count_does_not_change_the_report() {
    let one = hofib(&["run", "xmod", "--json", "--jobs", "1"]);
    let many = hofib(&["run", "xmod", "--json"]);
    assert_eq!(one.status.code(), Some(0), "{}", text(&one));
    assert_eq!(one.stdout, many.stdout);
}
