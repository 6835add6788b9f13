use std::io::Read;
use std::process::exit;

use termite::{parse_args, run, EXIT_SYNTAX, USAGE};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let config = match parse_args(&args) {
        Ok(config) => config,
        Err(message) => {
            eprintln!("error: {}", message);
            eprintln!("{}", USAGE);
            exit(EXIT_SYNTAX);
        }
    };
    if config.help {
        println!("{}", USAGE);
        return;
    }
    if config.version {
        println!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
        return;
    }

    let source = match &config.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(source) => source,
            Err(e) => {
                eprintln!("error: cannot read {}: {}", path.display(), e);
                exit(EXIT_SYNTAX);
            }
        },
        None => {
            let mut buffer = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut buffer) {
                eprintln!("error: cannot read standard input: {}", e);
                exit(EXIT_SYNTAX);
            }
            buffer
        }
    };

    let outcome = run(&source, &config.options);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    if let Some(dot) = outcome.dot {
        match &config.dot_file {
            Some(path) => {
                if let Err(e) = std::fs::write(path, dot) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    exit(EXIT_SYNTAX);
                }
            }
            None => print!("{}", dot),
        }
    }
    exit(outcome.exit_code);
}
