mod args;
mod catalog;
mod commands;
mod doc;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use lame_core::Error;

use args::{Cli, Command};

fn output(cmd: &Command) -> &args::Output {
    match cmd {
        Command::Profile { out, .. }
        | Command::Edges { out, .. }
        | Command::Partner { out, .. }
        | Command::Scan { out, .. }
        | Command::Dispersion { out, .. }
        | Command::Verify { out, .. }
        | Command::Parabolas { out, .. } => out,
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Precondition(_) | Error::DegenerateInput(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = output(&cli.command).clone();
    let outcome = match commands::run(cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("lame: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &out.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.doc.write(out.format, &mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            outcome.doc.write(out.format, &mut w)
        }
    };
    if let Err(e) = written {
        eprintln!("lame: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if outcome.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
