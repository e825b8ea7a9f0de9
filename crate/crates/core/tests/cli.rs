//! End-to-end runs of the binary against golden reports in `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

use coalg::io::{digest, Document};

const BUILTINS: &[&str] = &[
    "dual-numbers",
    "regular-dual-numbers",
    "span-x",
    "sweedler-dual-numbers",
    "kc2",
    "kc3",
    "idempotent-monoid",
    "grouplikes-2",
    "graded-dual-numbers",
    "left-regular-kc2",
    "regular-comodule-kc2",
    "regular-comodule-algebra-kc2",
    "grouplike-parallel-pair",
    "pick-g0",
    "pick-g1",
];

fn coalg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalg"))
        .current_dir(dir)
        .env_remove("COALG_STORE")
        .args(args)
        .output()
        .expect("spawn coalg")
}

/// Builtin documents and `m2c.json`, written once per test binary.
fn fixtures() -> &'static Path {
    static DIR: OnceLock<PathBuf> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-fixtures");
        let _ = fs::remove_dir_all(&dir);
        fs::create_dir_all(&dir).unwrap();
        for name in BUILTINS {
            let out = format!("{name}.json");
            assert!(coalg(&dir, &["builtin", name, "--out", &out]).status.success(), "{name}");
        }
        assert!(coalg(&dir, &["comatrix", "--field", "F2", "--n", "2", "--out", "m2c.json"]).status.success());
        dir
    })
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "report differs from {}", path.display());
}

fn run_golden(name: &str, code: i32, args: &[&str]) {
    let out = coalg(fixtures(), args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(code), "{name}: {stderr}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report: serde_json::Value = serde_json::from_str(&stdout).expect("report is JSON");
    assert!(report.get("wall_time_ms").is_none());
    golden(name, &stdout);
}

macro_rules! golden_tests {
    ($($test:ident: $code:expr, [$($arg:expr),* $(,)?];)*) => {
        $(
            #[test]
            fn $test() {
                run_golden(stringify!($test), $code, &[$($arg),*]);
            }
        )*
    };
}

golden_tests! {
    check_comatrix: 0, ["check", "--in", "m2c.json"];
    check_kc2: 0, ["check", "--in", "kc2.json"];
    dual_dual_numbers: 0, ["dual", "--in", "dual-numbers.json"];
    comatrix_n2: 0, ["comatrix", "--field", "F2", "--n", "2"];
    comatrix_presentation_grouplikes: 0, ["comatrix", "--in", "grouplikes-2.json"];
    generate_closure_comatrix: 0, ["generate-closure", "--in", "m2c.json", "--vectors", "1 0 0 0"];
    largest_sub_diagonal: 0, ["largest-sub", "--in", "m2c.json", "--vectors", "1 0 0 0; 0 0 0 1"];
    equalizer_picks: 0, ["equalizer", "--in", "pick-g0.json", "pick-g1.json"];
    coequalizer_picks: 0, ["coequalizer", "--in", "pick-g0.json", "pick-g1.json"];
    coproduct_two: 0, ["coproduct", "--in", "grouplikes-2.json", "m2c.json"];
    colimit_parallel_pair: 0, ["colimit", "--in", "grouplike-parallel-pair.json"];
    cofree_vdim1_class1: 0, ["cofree-approx", "--field", "F2", "--vdim", "1", "--max-dim", "1"];
    bounded_limit_parallel_pair: 0, ["bounded-limit", "--in", "grouplike-parallel-pair.json", "--max-dim", "1"];
    enumerate_f2_dim2: 0, ["enumerate", "--field", "F2", "--max-dim", "2"];
    coring_check_sweedler: 0, ["coring-check", "--in", "sweedler-dual-numbers.json"];
    invariant_closure_sweedler: 0, ["invariant-closure", "--in", "sweedler-dual-numbers.json", "--vectors", "0 1 0 0"];
    cohn_saturate_span_x: 0, ["cohn-saturate", "--in", "regular-dual-numbers.json", "span-x.json"];
    subcoring_closure_sweedler: 0, ["subcoring-closure", "--in", "sweedler-dual-numbers.json", "--vectors", "0 1 0 0"];
    purity_span_x: 0, ["purity", "--in", "regular-dual-numbers.json", "span-x.json"];
    antipode_kc3: 0, ["antipode", "--in", "kc3.json"];
    antipode_idempotent_monoid: 0, ["antipode", "--in", "idempotent-monoid.json"];
    smash_graded: 0, ["smash", "--in", "graded-dual-numbers.json"];
    module_closure_left_regular: 0, ["module-closure", "--in", "left-regular-kc2.json", "--vectors", "1 0"];
    comodule_closure_graded: 0, ["comodule-closure", "--in", "graded-dual-numbers.json", "--vectors", "0 1"];
    coefficients_regular: 0, ["coefficients", "--in", "regular-comodule-kc2.json"];
    local_rep_dual_numbers: 0, ["local-rep", "--in", "dual-numbers.json", "--functional", "0 1"];
    dualize_regular: 0, ["dualize-comodule", "--in", "regular-comodule-kc2.json"];
    endo_algebra_regular: 0, ["endo-algebra", "--in", "regular-comodule-kc2.json"];
    regular_embedding_kc2: 0, ["regular-embedding", "--in", "regular-comodule-algebra-kc2.json"];
}

#[test]
fn builtin_list_names_every_builtin() {
    let out = coalg(fixtures(), &["builtin", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in BUILTINS {
        assert!(text.contains(name), "{name} missing from --list");
    }
}

#[test]
fn out_file_is_canonical_and_matches_report_digest() {
    let dir = tempfile::tempdir().unwrap();
    let out = coalg(dir.path(), &["comatrix", "--field", "F3", "--n", "2", "--out", "m.json"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("m.json")).unwrap();
    assert_eq!(Document::parse(&text).unwrap().to_text(), text);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["outputs"][0]["digest"], digest(&text));
}

#[test]
fn report_file_equals_stdout_and_timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let out = coalg(dir.path(), &["comatrix", "--field", "Q", "--n", "1", "--report", "r.json", "--timing"]);
    assert!(out.status.success());
    let file = fs::read(dir.path().join("r.json")).unwrap();
    assert_eq!(file, out.stdout);
    let report: serde_json::Value = serde_json::from_slice(&file).unwrap();
    assert!(report["wall_time_ms"].is_u64());
}

#[test]
fn failed_certificate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // one basis element with Δ(e) = e ⊗ e and ε(e) = 0
    let bad = r#"{"schema_version": 1, "kind": "coalgebra", "name": "bad", "field": "F2",
        "payload": {"name": "bad", "dim": 1, "counit": [],
                    "delta": {"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]}}}"#;
    fs::write(dir.path().join("bad.json"), bad).unwrap();
    let out = coalg(dir.path(), &["check", "--in", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let certs = report["certificates"].as_array().unwrap();
    assert!(certs.iter().any(|c| c["failed"].as_u64().unwrap() > 0));
}

#[test]
fn malformed_input_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("broken.json"), "{\n  \"kind\": \"coalgebra\",\n  oops\n}").unwrap();
    let out = coalg(dir.path(), &["check", "--in", "broken.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn wrong_kind_and_missing_input_exit_1() {
    let out = coalg(fixtures(), &["dual", "--in", "span-x.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kind"));
    let out = coalg(fixtures(), &["dual", "--in", "no-such-file.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = coalg(fixtures(), &["enumerate", "--field", "Q", "--max-dim", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumeration_budget_is_enforced() {
    let out = coalg(fixtures(), &["enumerate", "--field", "F2", "--max-dim", "2", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

fn store_cmd(dir: &Path, store: &Path, args: &[&str]) -> Output {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--store", store.to_str().unwrap()]);
    coalg(dir, &full)
}

#[test]
fn store_put_get_list() {
    let src = fixtures();
    let tmp = tempfile::tempdir().unwrap();
    let store = tmp.path().join("store");

    let out = store_cmd(src, &store, &["store", "list"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).trim().is_empty());

    let out = store_cmd(src, &store, &["store", "put", "--in", "kc2.json", "m2c.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = fs::read_to_string(src.join("m2c.json")).unwrap();
    let d = digest(&text);
    for key in ["M2c", d.as_str()] {
        let out = store_cmd(src, &store, &["store", "get", key]);
        assert!(out.status.success());
        assert_eq!(String::from_utf8(out.stdout).unwrap(), text, "get {key}");
    }

    let out = store_cmd(src, &store, &["store", "list"]);
    let listing = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = listing.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["M2c", "kc2"]);
    assert!(listing.contains(&d));

    // same name, different content
    let mut clash = Document::parse(&fs::read_to_string(src.join("grouplikes-2.json")).unwrap()).unwrap();
    clash.name = "M2c".into();
    fs::write(tmp.path().join("clash.json"), clash.to_text()).unwrap();
    let clash_path = tmp.path().join("clash.json");
    let clash_arg = clash_path.to_str().unwrap();
    let out = store_cmd(src, &store, &["store", "put", "--in", clash_arg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("M2c"));
    let out = store_cmd(src, &store, &["store", "put", "--force", "--in", clash_arg]);
    assert!(out.status.success());
    let out = store_cmd(src, &store, &["store", "get", "M2c"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), clash.to_text());
    // the old object is still reachable by digest
    let out = store_cmd(src, &store, &["store", "get", &d]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);

    let out = store_cmd(src, &store, &["store", "get", "nothing-here"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inputs_resolve_from_the_store_and_outputs_are_saved() {
    let tmp = tempfile::tempdir().unwrap();
    let store = tmp.path().join("store");
    let out = store_cmd(fixtures(), &store, &["store", "put", "--in", "kc2.json"]);
    assert!(out.status.success());
    let out = store_cmd(tmp.path(), &store, &["antipode", "--in", "kc2", "--name", "kc2-antipode"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = store_cmd(tmp.path(), &store, &["store", "list"]);
    let listing = String::from_utf8(out.stdout).unwrap();
    assert!(listing.contains("kc2-antipode"), "{listing}");

    // lookups through the environment variable
    let out = Command::new(env!("CARGO_BIN_EXE_coalg"))
        .current_dir(tmp.path())
        .env("COALG_STORE", &store)
        .args(["check", "--in", "kc2"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
