//! Command-line driver: reads a program, prints the termination report
//! for each definition statement and the value of each evaluated term.
//!
//! Output format, one line per item:
//!
//! ```text
//! < =: add -> add
//! add passes termination check by lexical order 0
//! result: S(S(S(O())))
//! ```
//!
//! Call lines show the diagonal of one recursive call followed by the
//! call path; they precede the verdict line of their function.

pub mod dot;

use std::fmt;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::rc::Rc;

use termite_core::checker::{check_function, CallGraph, Verdict};
use termite_core::eval::{evaluate, render_value, Env};
use termite_core::extract::{Call, Extractor, FunId};
use termite_core::relations::Relation;
use termite_core::syntax::{parse_program, tokenize, Statement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SYNTAX: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_STRICT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DotMode {
    #[default]
    Off,
    /// Extracted edges only.
    Base,
    /// Extracted plus combined edges.
    Completed,
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Skip evaluation; print only the termination report.
    pub check_only: bool,
    /// Skip the termination report; print only results.
    pub eval_only: bool,
    /// Exit with [`EXIT_STRICT`] when any function fails the check.
    pub strict: bool,
    /// Append the full call matrix to every call line.
    pub verbose: bool,
    /// Evaluation step budget; unlimited when absent.
    pub fuel: Option<u64>,
    pub dot: DotMode,
}

#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Rendered graph when DOT export was requested and analysis ran.
    pub dot: Option<String>,
}

/// One line of the report.
#[derive(Debug, Clone)]
pub enum OutputLine {
    Call {
        diagonal: Vec<Relation>,
        path: Vec<String>,
        matrix: Option<String>,
    },
    Verdict {
        name: String,
        verdict: Verdict,
    },
    Result(String),
}

impl fmt::Display for OutputLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputLine::Call {
                diagonal,
                path,
                matrix,
            } => {
                for (i, r) in diagonal.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", r)?;
                }
                f.write_str(": ")?;
                f.write_str(&path.join(" -> "))?;
                if let Some(m) = matrix {
                    write!(f, " {}", m)?;
                }
                Ok(())
            }
            OutputLine::Verdict { name, verdict } => match verdict {
                Verdict::PassesNoRecursion => write!(f, "{} passes termination check", name),
                Verdict::PassesWithOrder(order) => {
                    write!(f, "{} passes termination check by lexical order {}", name, order)
                }
                Verdict::Fails => write!(f, "{} FAILS termination check", name),
            },
            OutputLine::Result(value) => write!(f, "result: {}", value),
        }
    }
}

/// Runs a whole program. Statements are processed in order: definitions
/// extend the environment and report their functions, bare terms are
/// evaluated. Analysis always sees the union of everything defined so
/// far, so later statements may call earlier functions.
pub fn run(source: &str, opts: &Options) -> Outcome {
    let tokens = match tokenize(source) {
        Ok(tokens) => tokens,
        Err(e) => return syntax_failure(format!("{}", e)),
    };
    let program = match parse_program(&tokens) {
        Ok(program) => program,
        Err(e) => return syntax_failure(format!("{}", e)),
    };

    let mut stdout = String::new();
    let mut extractor = Extractor::new();
    let mut env = Env::empty();
    let mut any_fails = false;

    for stmt in &program.statements {
        let introduced = extractor.add_statement(stmt);
        match stmt {
            Statement::Define(bindings) => {
                let frame: Vec<_> = bindings
                    .iter()
                    .map(|b| (b.name.clone(), b.term.clone()))
                    .collect();
                env = env.with_recursive(Rc::new(frame));
                if opts.eval_only {
                    continue;
                }
                let graph = CallGraph::new(
                    extractor.functions().to_vec(),
                    extractor.calls().to_vec(),
                );
                let completed = graph.complete();
                for index in introduced {
                    let verdict = report_function(&mut stdout, &completed, FunId(index), opts);
                    if matches!(verdict, Verdict::Fails) {
                        any_fails = true;
                    }
                }
            }
            Statement::Evaluate(term) => {
                if opts.check_only {
                    continue;
                }
                match evaluate(term, &env, opts.fuel) {
                    Ok(value) => {
                        let _ = writeln!(stdout, "{}", OutputLine::Result(render_value(&value)));
                    }
                    Err(e) => {
                        return Outcome {
                            exit_code: EXIT_RUNTIME,
                            stdout,
                            stderr: format!("error: {}\n", e),
                            dot: None,
                        }
                    }
                }
            }
        }
    }

    let dot = match opts.dot {
        DotMode::Off => None,
        DotMode::Base => {
            let graph =
                CallGraph::new(extractor.functions().to_vec(), extractor.calls().to_vec());
            Some(dot::export_dot(&graph))
        }
        DotMode::Completed => {
            let graph =
                CallGraph::new(extractor.functions().to_vec(), extractor.calls().to_vec());
            Some(dot::export_dot(&graph.complete()))
        }
    };

    Outcome {
        exit_code: if opts.strict && any_fails {
            EXIT_STRICT
        } else {
            EXIT_OK
        },
        stdout,
        stderr: String::new(),
        dot,
    }
}

fn syntax_failure(message: String) -> Outcome {
    Outcome {
        exit_code: EXIT_SYNTAX,
        stdout: String::new(),
        stderr: format!("error: {}\n", message),
        dot: None,
    }
}

/// Call lines of one function (deterministic order: path length, then
/// path, then matrix) followed by its verdict line.
fn report_function(out: &mut String, completed: &CallGraph, id: FunId, opts: &Options) -> Verdict {
    let name_of = |f: &FunId| completed.vertices()[f.0].name.clone();
    let mut self_edges: Vec<&Call> = completed.self_edges(id).collect();
    self_edges.sort_by(|a, b| {
        a.path
            .len()
            .cmp(&b.path.len())
            .then_with(|| {
                let an: Vec<String> = a.path.iter().map(name_of).collect();
                let bn: Vec<String> = b.path.iter().map(name_of).collect();
                an.cmp(&bn)
            })
            .then_with(|| a.matrix.cmp(&b.matrix))
    });
    for call in self_edges {
        let line = OutputLine::Call {
            diagonal: call.matrix.diagonal().expect("self calls are square"),
            path: call.path.iter().map(name_of).collect(),
            matrix: opts.verbose.then(|| call.matrix.to_string()),
        };
        let _ = writeln!(out, "{}", line);
    }
    let verdict = check_function(completed, id);
    let line = OutputLine::Verdict {
        name: completed.vertices()[id.0].name.clone(),
        verdict: verdict.clone(),
    };
    let _ = writeln!(out, "{}", line);
    verdict
}

#[derive(Debug, Clone, Default)]
pub struct CliConfig {
    pub options: Options,
    /// Program file; standard input when absent.
    pub input: Option<PathBuf>,
    /// Target for DOT output; standard output when absent.
    pub dot_file: Option<PathBuf>,
    pub help: bool,
    pub version: bool,
}

pub const USAGE: &str = "\
usage: termite [OPTIONS] [FILE]

Checks termination of every function defined in FILE (or standard input)
and evaluates its top-level terms.

options:
  --check-only     only run the termination check, skip evaluation
  --eval-only      only evaluate, skip the termination report
  --strict         exit with code 3 if any function fails the check
  --verbose        print full call matrices on call lines
  --fuel=N         abort evaluation after N reduction steps
  --dot[=FILE]     write the call graph in DOT format
  --dot-completed  DOT output includes combined calls
  --version        print version and exit
  -h, --help       print this help

exit codes: 0 ok, 1 syntax error, 2 runtime error, 3 failed check (--strict)";

pub fn parse_args<S: AsRef<str>>(args: &[S]) -> Result<CliConfig, String> {
    let mut config = CliConfig::default();
    for arg in args {
        let arg = arg.as_ref();
        match arg {
            "--check-only" => config.options.check_only = true,
            "--eval-only" => config.options.eval_only = true,
            "--strict" => config.options.strict = true,
            "--verbose" => config.options.verbose = true,
            "--version" => config.version = true,
            "-h" | "--help" => config.help = true,
            "--dot" => {
                if config.options.dot == DotMode::Off {
                    config.options.dot = DotMode::Base;
                }
            }
            "--dot-completed" => config.options.dot = DotMode::Completed,
            _ if arg.starts_with("--dot=") => {
                if config.options.dot == DotMode::Off {
                    config.options.dot = DotMode::Base;
                }
                config.dot_file = Some(PathBuf::from(&arg["--dot=".len()..]));
            }
            _ if arg.starts_with("--fuel=") => {
                let n = arg["--fuel=".len()..]
                    .parse::<u64>()
                    .map_err(|_| format!("invalid --fuel value in '{}'", arg))?;
                config.options.fuel = Some(n);
            }
            _ if arg.starts_with('-') && arg.len() > 1 => {
                return Err(format!("unknown option '{}'", arg));
            }
            _ => {
                if config.input.is_some() {
                    return Err("more than one input file given".to_string());
                }
                config.input = Some(PathBuf::from(arg));
            }
        }
    }
    Ok(config)
}
