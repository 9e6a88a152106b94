use std::process::ExitCode;

use clap::Parser;
use hombound_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = serde_json::to_string_pretty(&report.value).expect("reports serialize") + "\n";
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if cli.json {
        print!("{text}");
    } else {
        for line in &report.summary {
            println!("{line}");
        }
    }
    if report.failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
