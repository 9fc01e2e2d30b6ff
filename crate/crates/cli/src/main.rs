mod args;
mod cmd;
mod output;
mod suite;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use welding_core::{Error, Result};

use args::{Command, Format, RunConfig};
use output::{emit, Artifact, Style};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(config: &RunConfig) -> Result<u8> {
    let common = &config.common;
    if let Some(t) = common.threads {
        // Ignored when a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let style = Style {
        digits: common.digits as usize,
    };
    let artifact = match &config.command {
        Command::Moments(a) => cmd::moments::run(a, common.threads)?,
        Command::Operators(c) => cmd::operators::run(c)?,
        Command::Diagonal(c) => cmd::diagonal::run(c, style)?,
        Command::Family(a) => cmd::family::run(a, style)?,
        Command::ReproducePaper(a) => return reproduce(a.max_level, common),
    };
    publish(&artifact, common)
}

/// Writes the artifact and returns the exit code it implies.
fn publish(a: &Artifact, common: &args::Common) -> Result<u8> {
    emit(&a.render(common.format)?, common.output.as_deref())?;
    if !a.notes.is_empty() {
        let body = a.notes.join("\n") + "\n";
        // Keep machine-readable standard output parseable.
        if common.output.is_none() && common.format != Format::Text {
            eprint!("{body}");
        } else {
            emit(&body, None)?;
        }
    }
    for f in &a.failures {
        eprintln!("inconsistency: {f}");
    }
    Ok(if a.failures.is_empty() { 0 } else { 2 })
}

fn reproduce(max_level: u32, common: &args::Common) -> Result<u8> {
    if common.format != Format::Text {
        return Err(Error::InvalidInput(
            "reproduce-paper writes markdown; drop --format".into(),
        ));
    }
    let outcomes = suite::run_all(max_level);
    emit(&suite::markdown(&outcomes), common.output.as_deref())?;
    for o in &outcomes {
        eprintln!(
            "{} criterion {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title
        );
    }
    Ok(if outcomes.iter().all(|o| o.pass) {
        0
    } else {
        2
    })
}
