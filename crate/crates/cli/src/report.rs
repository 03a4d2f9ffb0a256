//! Whole-run report, in JSON and text.

use std::fmt::Write as _;

use serde::Serialize;

use crate::run::{Status, TaskReport};
use crate::schema::SCHEMA_VERSION;

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub failed: usize,
    pub error: usize,
    pub skipped: usize,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u64,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(tasks: Vec<TaskReport>) -> Self {
        let count = |s: Status| tasks.iter().filter(|t| t.status == s).count();
        let (ok, failed, error, skipped) =
            (count(Status::Ok), count(Status::Failed), count(Status::Error), count(Status::Skipped));
        let exit_code = if ok == tasks.len() { 0 } else { 1 };
        let summary = Summary { total: tasks.len(), ok, failed, error, skipped, exit_code };
        RunReport { schema: SCHEMA_VERSION, tasks, summary }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let _ = writeln!(out, "== {} [{}] {}", t.id, t.kind, t.status.label());
            out.push_str(&t.text);
            if let Some(w) = &t.witness {
                let _ = writeln!(out, "witness: {w}");
            }
            if let Some(e) = &t.error {
                let _ = writeln!(out, "error: {e}");
            }
            let _ = writeln!(out, "time: {} ms", t.timing_ms);
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary: {} tasks, {} ok, {} failed, {} error, {} skipped; exit {}",
            s.total, s.ok, s.failed, s.error, s.skipped, s.exit_code
        );
        out
    }
}
