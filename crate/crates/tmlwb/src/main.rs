use std::io::{self, BufRead, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use tmlwb::fixtures::generate_fixtures;
use tmlwb::{FindingsFormat, Outcome, Session, Status, Store};
use tmlwb_core::command::split_commands;

#[derive(Parser)]
#[command(name = "tmlwb", version, about = "TimeML corpus workbench")]
struct Args {
    /// Run commands separated by `;` and exit.
    #[arg(short = 'c', long = "command", conflicts_with = "file")]
    command: Option<String>,
    /// Run commands from a script file and exit. Blank lines and lines
    /// starting with `#` are ignored.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
    /// Output format for check findings.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the synthetic test corpus to DIR and exit.
    #[arg(long, value_name = "DIR")]
    generate_fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

fn emit(outcome: &Outcome) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = out.flush();
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
}

/// Runs until the first failing command. Exit code 1 for a failed command,
/// 2 if a check reported errors, 0 otherwise.
fn run_batch(session: &mut Session, commands: &[String]) -> ExitCode {
    let mut findings = false;
    for cmd in commands {
        let outcome = session.execute(cmd);
        emit(&outcome);
        match outcome.status {
            Status::Ok => {}
            Status::Findings => findings = true,
            Status::Error => return ExitCode::from(1),
            Status::Exit => break,
        }
    }
    ExitCode::from(if findings { 2 } else { 0 })
}

fn run_interactive(session: &mut Session) -> ExitCode {
    let stdin = io::stdin();
    let prompt = stdin.is_terminal();
    let mut lines = stdin.lock().lines();
    loop {
        if prompt {
            print!("tmlwb> ");
            let _ = io::stdout().flush();
        }
        let Some(Ok(line)) = lines.next() else { break };
        for cmd in split_commands(&line) {
            let outcome = session.execute(&cmd);
            emit(&outcome);
            if outcome.status == Status::Exit {
                return ExitCode::SUCCESS;
            }
        }
    }
    if prompt {
        println!();
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(dir) = args.generate_fixtures {
        return match generate_fixtures(&dir) {
            Ok(files) => {
                for f in files {
                    println!("{}", f.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}: {e}", dir.display());
                ExitCode::from(1)
            }
        };
    }
    let store = match Store::default_root().and_then(Store::open) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut session = Session::new(store);
    session.findings_format = match args.format {
        Format::Text => FindingsFormat::Text,
        Format::JsonLines => FindingsFormat::JsonLines,
    };
    if let Some(line) = args.command {
        return run_batch(&mut session, &split_commands(&line));
    }
    if let Some(path) = args.file {
        let script = match std::fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        };
        let commands: Vec<String> = script
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .flat_map(split_commands)
            .collect();
        return run_batch(&mut session, &commands);
    }
    run_interactive(&mut session)
}
