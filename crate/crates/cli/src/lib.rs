//! Batch front-end for `flataffine`: reads a JSON task file, runs every task
//! in file order and reports in JSON and text.

pub mod load;
pub mod report;
pub mod run;
pub mod schema;
pub mod table;

use std::path::{Component, Path};

pub use load::{parse_task_file, resolve, InputError, ResolvedTask};
pub use report::RunReport;
pub use schema::{TaskKind, SCHEMA_VERSION};
pub use table::{emit_table, parse_text_table, TableFormat};

/// Exit status for input problems: unreadable file, schema violation,
/// undefined name, bad expression.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub fail_fast: bool,
}

/// Parses and resolves a task file without running anything.
pub fn prepare(text: &str) -> Result<Vec<ResolvedTask>, InputError> {
    let file = parse_task_file(text)?;
    let tasks = resolve(&file)?;
    for (i, t) in tasks.iter().enumerate() {
        if let Some(out) = &t.output {
            let p = Path::new(out);
            if out.is_empty() || !p.components().all(|c| matches!(c, Component::Normal(_))) {
                return Err(InputError {
                    path: format!("tasks[{i}].output"),
                    message: format!("`{out}` must be a relative path inside the output directory"),
                });
            }
        }
    }
    Ok(tasks)
}

/// Runs resolved tasks sequentially. With `fail_fast`, tasks after the first
/// one that does not end `ok` are skipped.
pub fn execute(tasks: &[ResolvedTask], opts: RunOptions) -> RunReport {
    let mut reports = Vec::with_capacity(tasks.len());
    let mut stop = false;
    for t in tasks {
        if stop {
            reports.push(run::skipped(t));
            continue;
        }
        let r = run::run_task(t);
        stop = opts.fail_fast && r.status != run::Status::Ok;
        reports.push(r);
    }
    RunReport::new(reports)
}
