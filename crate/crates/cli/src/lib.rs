//! Batch reports over the `golod-core` library.

pub mod args;
pub mod commands;
pub mod report;

use golod_core::constructions::{builtin, DEFAULT_CHAR};
use golod_core::{parse_ring_file, Error, PresentedRing};
use serde::Serialize;

use args::{Cli, Command};
use report::{Envelope, SCHEMA_VERSION};

/// Excerpt of the ring-file grammar, printed after input errors.
pub const RING_GRAMMAR: &str = "\
ring file:
  char  = <prime>                  (overridden by --char)
  vars  = [x, y, z]
  ideal = [\"<poly>\", ...]          (may span lines; generators in (vars)^2)
  cap   = <n>                      (optional truncation degree)
  # comments run to end of line
poly := term (('+'|'-') term)* ; term := [coeff '*'] var['^'n] ('*' var['^'n])*
";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceGuard(_) => 3,
        Error::Consistency(_) => 4,
        _ => 2,
    }
}

/// A ring file path, or `builtin:NAME`.
pub fn load_ring(input: &str, char_override: Option<u64>) -> golod_core::Result<PresentedRing> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return builtin(name, char_override.unwrap_or(DEFAULT_CHAR));
    }
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Input { file: input.to_string(), line: 0, msg: e.to_string() })?;
    parse_ring_file(&text, input, char_override)
}

pub(crate) fn emit<T: Serialize>(json: bool, command: &'static str, result: &T, text: impl FnOnce(&T) -> String) -> String {
    if json {
        let env = Envelope { schema_version: SCHEMA_VERSION, command, result };
        serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
    } else {
        text(result)
    }
}

pub fn run(cli: &Cli) -> Output {
    let work = || match &cli.command {
        Command::Analyze(a) => commands::analyze(&cli.global, a, false),
        Command::Trivext(a) => commands::analyze(&cli.global, a, true),
        Command::Quotient { input, power } => commands::quotient(&cli.global, input, *power),
        Command::Betti { inputs, quotient } => commands::betti(&cli.global, inputs, *quotient),
        Command::Series(s) => commands::series(&cli.global, s),
        Command::Pfaffian { matrix, compare } => commands::pfaffian(&cli.global, matrix, compare.as_deref()),
        Command::Ezd { input, mode, budget } => commands::ezd(&cli.global, input, *mode, *budget),
        Command::Builtin { name, list } => commands::builtin_cmd(&cli.global, name.as_deref(), *list),
    };
    let result = match cli.global.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(Error::InvalidArgument(format!("cannot start {n} workers: {e}"))),
        },
        None => work(),
    };
    match result {
        Ok(stdout) => Output { stdout, stderr: String::new(), code: 0 },
        Err(e) => {
            let mut stderr = format!("error: {e}\n");
            if matches!(e, Error::Input { .. } | Error::Syntax { .. } | Error::UnknownVariable { .. }) {
                stderr.push('\n');
                stderr.push_str(RING_GRAMMAR);
            }
            Output { stdout: String::new(), stderr, code: exit_code(&e) }
        }
    }
}
