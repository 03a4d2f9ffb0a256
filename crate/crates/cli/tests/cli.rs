use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flataffine::algebra::json::AlgebraDoc;
use flataffine_cli::{execute, parse_text_table, prepare, RunOptions, TaskKind};
use serde_json::Value;

fn task_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tasks").join(name)
}

fn flataffine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flataffine")).args(args).output().expect("binary runs")
}

fn run_file(path: &Path, extra: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let mut args = vec!["run", path.to_str().unwrap(), "--out", out, "--format", "both"];
    args.extend_from_slice(extra);
    let o = flataffine(&args);
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let text = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    (o.status.code().unwrap(), serde_json::from_str(&json).unwrap(), text)
}

fn run_inline(doc: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tasks.json");
    std::fs::write(&path, doc).unwrap();
    flataffine(&["run", path.to_str().unwrap(), "--format", "json"])
}

fn task<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["tasks"].as_array().unwrap().iter().find(|t| t["id"] == id).unwrap()
}

#[test]
fn six_field_file_gives_a_five_dimensional_envelope() {
    let dir = tempfile::tempdir().unwrap();
    let o = flataffine(&[
        "run",
        task_file("six-field-envelope.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    let env = task(&report, "envelope");
    assert_eq!(env["status"], "ok");
    assert_eq!(env["result"]["dimension"], 5);
    assert_eq!(env["result"]["envelope"]["basis"], serde_json::json!(["e1-", "e2-", "C3", "C4", "C5"]));
    assert_eq!(task(&report, "table")["result"]["matches"], true);
    assert!(!dir.path().join("report.txt").exists());

    let per_task: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("envelope.json")).unwrap()).unwrap();
    assert_eq!(&per_task, env);
    assert!(dir.path().join("table.json").exists());
}

#[test]
fn corrupted_cell_is_named() {
    let (code, report, text) = run_file(&task_file("corrupted-table.json"), &[]);
    assert_eq!(code, 1);
    let t = task(&report, "table");
    assert_eq!(t["status"], "failed");
    assert_eq!(t["verdict"], false);
    assert_eq!(t["result"]["cell"], serde_json::json!([2, 6]));
    let w = t["witness"].as_str().unwrap();
    assert_eq!(w, "cell (2, 6) = e2- * C6: expected 2e1- - C5, got 2e1- - 2C5");
    assert!(text.contains(w));
}

#[test]
fn empty_task_list() {
    let o = run_inline(r#"{"schema": 1}"#);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["tasks"], serde_json::json!([]));
    assert_eq!(report["summary"]["total"], 0);
    assert_eq!(report["summary"]["exit_code"], 0);
}

fn without_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"timing_ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn reports_are_deterministic() {
    for name in ["all-kinds.json", "six-field-envelope.json"] {
        let path = task_file(name);
        let a = flataffine(&["run", path.to_str().unwrap(), "--format", "json"]);
        let b = flataffine(&["run", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(a.status.code(), Some(0));
        let (a, b) = (String::from_utf8(a.stdout).unwrap(), String::from_utf8(b.stdout).unwrap());
        assert!(a.contains("\"timing_ms\""));
        assert_eq!(without_timing(&a), without_timing(&b), "{name}");
    }
}

/// Grid lines of a text body: from the first header line through the last
/// row.
fn grid(text: &str, rows: usize) -> String {
    let lines: Vec<&str> = text.lines().collect();
    let rule = lines.iter().position(|l| l.starts_with("--") && l.contains("-+-")).unwrap();
    lines[rule - 1..rule + 1 + rows].iter().map(|l| format!("{l}\n")).collect()
}

#[test]
fn text_and_json_tables_agree() {
    let text = std::fs::read_to_string(task_file("all-kinds.json")).unwrap();
    let tasks = prepare(&text).unwrap();
    let report = execute(&tasks, RunOptions::default());
    assert_eq!(report.exit_code(), 0);
    let mut checked = 0;
    for t in &report.tasks {
        let doc = match t.kind {
            "product-table" | "bracket-table" | "opposite" | "adjoin-unit" | "closure" => &t.result["algebra"],
            "commutator" => &t.result["bracket"],
            _ => continue,
        };
        let doc: AlgebraDoc = serde_json::from_value(doc.clone()).unwrap();
        let from_json = doc.to_algebra().unwrap();
        let from_text = parse_text_table(&grid(&t.text, from_json.dim())).unwrap();
        // The grid does not mark a designated unit.
        assert_eq!(from_text.basis_names(), from_json.basis_names(), "{}", t.id);
        assert_eq!(from_text.constants(), from_json.constants(), "{}", t.id);
        checked += 1;
    }
    assert_eq!(checked, 6);
}

#[test]
fn every_kind_is_reachable() {
    for k in TaskKind::ALL {
        let parsed: TaskKind = serde_json::from_str(&format!("\"{}\"", k.name())).unwrap();
        assert_eq!(parsed, k);
    }
    // Core operation -> the task kind that exposes it.
    let exposed: &[(&str, TaskKind)] = &[
        ("SCAlgebra::check_left_symmetric", TaskKind::CheckLsa),
        ("SCAlgebra::check_associative", TaskKind::CheckAssociative),
        ("SCAlgebra::commutator_algebra", TaskKind::Commutator),
        ("SCAlgebra::opposite", TaskKind::Opposite),
        ("SCAlgebra::adjoin_unit", TaskKind::AdjoinUnit),
        ("SCAlgebra::is_unit", TaskKind::IsUnit),
        ("SCAlgebra::left_mult_matrix", TaskKind::LeftMult),
        ("SCAlgebra::subalgebra_closure", TaskKind::Closure),
        ("SCAlgebra::restrict", TaskKind::Closure),
        ("geometry::torsion", TaskKind::Torsion),
        ("geometry::curvature", TaskKind::Curvature),
        ("geometry::is_flat_affine", TaskKind::Flatness),
        ("geometry::is_infinitesimal_affine", TaskKind::CheckIat),
        ("geometry::solve_iat_ansatz", TaskKind::SolveIat),
        ("geometry::covariant_derivative", TaskKind::CovariantDerivative),
        ("geometry::lie_bracket", TaskKind::LieBracket),
        ("geometry::express_in_basis", TaskKind::Express),
        ("RationalFunction::differentiate", TaskKind::Differentiate),
        ("geometry::product_table", TaskKind::ProductTable),
        ("geometry::bracket_table", TaskKind::BracketTable),
        ("envelope::compute_envelope", TaskKind::Envelope),
        ("envelope::verify_bi_invariant_criterion", TaskKind::BiInvariantCheck),
        ("geometry::connection_from_frame", TaskKind::Flatness),
    ];
    let mapped: HashSet<TaskKind> = exposed.iter().map(|(_, k)| *k).collect();
    assert_eq!(mapped, TaskKind::ALL.into_iter().collect());

    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/taskfile-schema.json"))
            .unwrap(),
    )
    .unwrap();
    let documented: Vec<&str> = schema["$defs"]["task"]["properties"]["kind"]["enum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|k| k.as_str().unwrap())
        .collect();
    assert_eq!(documented, TaskKind::ALL.map(TaskKind::name));

    let (code, report, _) = run_file(&task_file("all-kinds.json"), &[]);
    assert_eq!(code, 0);
    let seen: HashSet<&str> = report["tasks"].as_array().unwrap().iter().map(|t| t["kind"].as_str().unwrap()).collect();
    for k in TaskKind::ALL {
        assert!(seen.contains(k.name()), "{} missing from the sample", k.name());
    }
}

fn input_error(doc: &str) -> String {
    let o = run_inline(doc);
    assert_eq!(o.status.code(), Some(2), "stdout: {}", String::from_utf8_lossy(&o.stdout));
    assert!(o.stdout.is_empty());
    String::from_utf8(o.stderr).unwrap()
}

const PRELUDE: &str = r#""schema": 1,
    "charts": [{"name": "xy", "variables": ["x", "y"]}],
    "algebras": [{"name": "A", "dim": 1, "basis": ["e"], "products": [{"left": 1, "right": 1, "result": ["1"]}]}],
    "fields": [{"name": "X", "chart": "xy", "coeffs": ["x", "0"]}],
    "connections": [{"name": "D", "chart": "xy", "christoffel": []}]"#;

#[test]
fn input_errors_exit_two_with_a_path() {
    let e = input_error(&format!(r#"{{{PRELUDE}, "tasks": [{{"kind": "check-lsa", "inputs": {{"algebra": "B"}}}}]}}"#));
    assert!(e.contains("tasks[0].inputs.algebra: unknown algebra `B`"), "{e}");

    let e = input_error(&format!(
        r#"{{{PRELUDE}, "tasks": [{{"kind": "check-lsa", "inputs": {{"algebra": "A", "x": 1}}}}]}}"#
    ));
    assert!(e.contains("tasks[0].inputs"), "{e}");
    assert!(e.contains("unknown field `x`"), "{e}");

    let e = input_error(&format!(r#"{{{PRELUDE}, "tasks": [{{"kind": "take-limit", "inputs": {{}}}}]}}"#));
    assert!(e.contains("tasks[0].kind"), "{e}");

    let e = input_error(
        r#"{"schema": 1, "charts": [{"name": "xy", "variables": ["x", "y"]}],
        "fields": [{"name": "X", "chart": "xy", "coeffs": ["x +", "0"]}]}"#,
    );
    assert!(e.contains("fields[0].coeffs[0]: syntax error at byte 3"), "{e}");

    let e = input_error(
        r#"{"schema": 1, "charts": [{"name": "xy", "variables": ["x", "y"]}],
        "fields": [{"name": "X", "chart": "xy", "coeffs": ["z", "0"]}]}"#,
    );
    assert!(e.contains("fields[0].coeffs[0]: unknown variable `z` at byte 0"), "{e}");

    let e = input_error(&format!(
        r#"{{{PRELUDE}, "tasks": [{{"kind": "check-iat", "inputs": {{"connection": "D", "field": "X"}}, "output": "../x.json"}}]}}"#
    ));
    assert!(e.contains("tasks[0].output"), "{e}");

    let e = input_error(r#"{"schema": 2}"#);
    assert!(e.contains("schema: unsupported schema version 2"), "{e}");

    let e = input_error(r#"{"schema": 1, "tasks": [}"#);
    assert!(e.contains("line 1"), "{e}");

    let e = input_error(&format!(
        r#"{{{PRELUDE}, "tasks": [{{"id": "a", "kind": "flatness", "inputs": {{"connection": "D"}}}},
            {{"id": "a", "kind": "flatness", "inputs": {{"connection": "D"}}}}]}}"#
    ));
    assert!(e.contains("tasks[1].id: duplicate task id `a`"), "{e}");

    let o = flataffine(&["run", "/nonexistent/tasks.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn christoffel_indices_are_checked() {
    let e = input_error(
        r#"{"schema": 1, "charts": [{"name": "xy", "variables": ["x", "y"]}],
        "connections": [{"name": "D", "chart": "xy", "christoffel": [{"k": 3, "i": 1, "j": 1, "expr": "1"}]}]}"#,
    );
    assert!(e.contains("connections[0].christoffel[0].k: index 3 outside 1..=2"), "{e}");

    let e = input_error(
        r#"{"schema": 1, "charts": [{"name": "xy", "variables": ["x", "y"]}],
        "connections": [{"name": "D", "chart": "xy"}]}"#,
    );
    assert!(e.contains("exactly one of"), "{e}");
}

#[test]
fn negative_verdicts_exit_one_with_witnesses() {
    let doc = r#"{"schema": 1,
        "charts": [{"name": "xy", "variables": ["x", "y"]}],
        "algebras": [{"name": "N", "dim": 3, "basis": ["a", "b", "c"], "products": [
            {"left": 1, "right": 2, "result": ["1", "0", "0"]},
            {"left": 2, "right": 3, "result": ["0", "1", "0"]},
            {"left": 3, "right": 1, "result": ["0", "1", "0"]}]}],
        "fields": [{"name": "Q", "chart": "xy", "coeffs": ["x^2", "0"]}, {"name": "L", "chart": "xy", "coeffs": ["x", "0"]}],
        "connections": [
            {"name": "D", "chart": "xy", "christoffel": []},
            {"name": "T", "chart": "xy", "christoffel": [{"k": 1, "i": 1, "j": 2, "expr": "1"}]}],
        "tasks": [
            {"id": "jacobi", "kind": "commutator", "inputs": {"algebra": "N"}},
            {"id": "iat", "kind": "check-iat", "inputs": {"connection": "D", "field": "Q"}},
            {"id": "span", "kind": "express", "inputs": {"target": "Q", "basis": ["L"]}},
            {"id": "flat", "kind": "flatness", "inputs": {"connection": "T"}},
            {"id": "not-flat", "kind": "check-iat", "inputs": {"connection": "T", "field": "L"}}]}"#;
    let o = run_inline(doc);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(task(&r, "jacobi")["status"], "failed");
    assert!(task(&r, "jacobi")["witness"].as_str().unwrap().starts_with("triple ("));
    assert_eq!(task(&r, "iat")["result"]["witness"], serde_json::json!([1, 1]));
    assert!(task(&r, "iat")["witness"].as_str().unwrap().starts_with("pair (1, 1)"));
    assert_eq!(task(&r, "span")["result"]["in_span"], false);
    assert_eq!(task(&r, "flat")["witness"], "torsion T[x,x,y] = 1");
    assert_eq!(task(&r, "not-flat")["status"], "error");
    assert!(task(&r, "not-flat")["error"].as_str().unwrap().contains("torsion T[x,x,y] = 1"));
    assert_eq!(r["summary"]["failed"], 4);
    assert_eq!(r["summary"]["error"], 1);
}

#[test]
fn fail_fast_skips_the_rest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let doc = format!(
        r#"{{{PRELUDE}, "tasks": [
            {{"id": "bad", "kind": "check-iat", "inputs": {{"connection": "D", "field": "Y"}}}},
            {{"id": "after", "kind": "flatness", "inputs": {{"connection": "D"}}}}]}}"#
    )
    .replace(
        r#""coeffs": ["x", "0"]}]"#,
        r#""coeffs": ["x", "0"]}, {"name": "Y", "chart": "xy", "coeffs": ["x^2", "0"]}]"#,
    );
    std::fs::write(&path, doc).unwrap();
    let (code, r, _) = run_file(&path, &["--fail-fast"]);
    assert_eq!(code, 1);
    assert_eq!(task(&r, "bad")["status"], "failed");
    assert_eq!(task(&r, "after")["status"], "skipped");
    let (code, r, _) = run_file(&path, &[]);
    assert_eq!(code, 1);
    assert_eq!(task(&r, "after")["status"], "ok");
}

#[test]
fn frame_connections_and_gl2() {
    let (code, r, text) = run_file(&task_file("gl2-envelope.json"), &[]);
    assert_eq!(code, 0);
    assert_eq!(task(&r, "flat")["verdict"], true);
    // D_{L_pq} R_rs = x_sp d/dx_rq with (p, q, r, s) = (1, 2, 2, 1).
    assert_eq!(task(&r, "D-L12-R21")["result"]["field"], serde_json::json!(["0", "0", "0", "x11"]));
    let env = &task(&r, "envelope")["result"];
    assert_eq!(env["dimension"], 16);
    assert_eq!(env["dropped"].as_array().unwrap().len(), 8);
    assert!(text.contains("envelope dimension: 16"));

    let (code, r, _) = run_file(&task_file("alpha-family.json"), &[]);
    assert_eq!(code, 0);
    assert_eq!(task(&r, "table")["result"]["matches"], true);
    assert_eq!(task(&r, "envelope")["result"]["dimension"], 4);
}

#[test]
fn default_output_is_text_on_stdout() {
    let o = flataffine(&["run", task_file("corrupted-table.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("== table [product-table] failed\n"));
    assert!(s.ends_with("summary: 1 tasks, 0 ok, 1 failed, 0 error, 0 skipped; exit 1\n"));
}
