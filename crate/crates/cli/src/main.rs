use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flataffine_cli::{execute, prepare, RunOptions, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "flataffine", version, about = "Run flat affine geometry tasks from a JSON task file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in the file.
    Run {
        taskfile: PathBuf,
        /// Directory for report.json, report.txt and per-task outputs.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Skip the remaining tasks after the first one that is not ok.
        #[arg(long)]
        fail_fast: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Both,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("input error: {msg}");
    ExitCode::from(EXIT_INPUT as u8)
}

fn main() -> ExitCode {
    let Command::Run { taskfile, out, format, fail_fast } = Cli::parse().command;
    let text = match fs::read_to_string(&taskfile) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", taskfile.display())),
    };
    let tasks = match prepare(&text) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let report = execute(&tasks, RunOptions { fail_fast });
    let json = report.to_json();
    let txt = report.to_text();

    match &out {
        Some(dir) => {
            let write = || -> std::io::Result<()> {
                fs::create_dir_all(dir)?;
                if format != Format::Text {
                    fs::write(dir.join("report.json"), &json)?;
                }
                if format != Format::Json {
                    fs::write(dir.join("report.txt"), &txt)?;
                }
                for (task, r) in tasks.iter().zip(&report.tasks) {
                    if let Some(rel) = &task.output {
                        let path = dir.join(rel);
                        if let Some(parent) = path.parent() {
                            fs::create_dir_all(parent)?;
                        }
                        let mut body = serde_json::to_string_pretty(r).expect("reports serialize");
                        body.push('\n');
                        fs::write(path, body)?;
                    }
                }
                Ok(())
            };
            if let Err(e) = write() {
                eprintln!("cannot write reports under {}: {e}", dir.display());
                return ExitCode::from(1);
            }
            eprint!("{}", txt.lines().last().map(|l| format!("{l}\n")).unwrap_or_default());
        }
        None => match format {
            Format::Text => print!("{txt}"),
            Format::Json => print!("{json}"),
            Format::Both => print!("{txt}\n{json}"),
        },
    }
    ExitCode::from(report.exit_code() as u8)
}
