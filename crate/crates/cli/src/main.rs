use clap::error::ErrorKind;
use clap::Parser;
use cli::{config_from_env, execute, Cli, CliError};

fn run() -> i32 {
    let parsed = match Cli::try_parse() {
        Ok(p) => p,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let err = CliError::Validation(e.to_string());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    let mut cfg = match config_from_env(std::env::vars()) {
        Ok(cfg) => cfg,
        Err(err) => {
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    if let Some(seed) = parsed.seed {
        cfg.seed = seed;
    }
    match parsed.jobs {
        Some(0) => {
            let err = CliError::Validation("--jobs must be at least 1".into());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
        Some(j) => cfg.jobs = j,
        None => {}
    }
    match execute(&parsed.command, &cfg) {
        Ok(outcome) => {
            if let Some(path) = &parsed.out {
                if let Err(e) = std::fs::write(path, &outcome.stdout) {
                    let err = CliError::Validation(format!("cannot write {}: {e}", path.display()));
                    eprintln!("{}", err.to_json());
                    return err.exit_code();
                }
            } else {
                print!("{}", outcome.stdout);
            }
            match outcome.error {
                Some(err) => {
                    eprintln!("{}", err.to_json());
                    err.exit_code()
                }
                None => 0,
            }
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            err.exit_code()
        }
    }
}

fn main() {
    std::process::exit(run());
}
