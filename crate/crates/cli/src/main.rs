use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use homcount::interpolation::Mode;
use homcount::Graph;

mod commands;

/// Exact counting of homomorphisms, vertex-surjective homomorphisms and
/// compactions between small graphs with loops.
#[derive(Debug, Parser)]
#[command(name = "homcount", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hom,
    Vsurj,
    Vesurj,
    Aut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Vsurj,
    Vesurj,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Vsurj => Mode::Vsurj,
            ModeArg::Vesurj => Mode::Vesurj,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Count hom, vsurj or vesurj from G to H, or automorphisms of H.
    Count {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Pattern graph file (`-` reads standard input). Not used for `aut`.
        #[arg(long)]
        g: Option<String>,
        /// Target graph file.
        #[arg(long)]
        h: String,
        /// Skip the polynomial-time path even when H qualifies.
        #[arg(long)]
        force_bruteforce: bool,
        /// Largest assignment space |V(H)|^|V(G)| the brute-force path accepts.
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
    },
    /// Report membership of H in the tractable families.
    Classify {
        #[arg(long)]
        h: String,
    },
    /// Print the inverse dsub column of H.
    InverseColumn {
        #[arg(long)]
        h: String,
    },
    /// Print the homomorphic images of H.
    Images {
        #[arg(long)]
        h: String,
    },
    /// Check the counting identities on all graphs up to n_max vertices.
    Verify {
        #[arg(long)]
        n_max: usize,
    },
    /// Recover hom(G, H) from a vsurj or vesurj oracle for H.
    Recover {
        #[arg(long)]
        h: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// External oracle: program and arguments, split on whitespace. It
        /// receives a graph on standard input and prints a decimal integer.
        #[arg(long)]
        oracle_cmd: Option<String>,
    },
}

/// Failure classes, one exit code each.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Precondition(String),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Precondition(_) => 4,
            Failure::Internal(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Precondition(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<homcount::Error> for Failure {
    fn from(e: homcount::Error) -> Self {
        use homcount::Error::*;
        let msg = e.to_string();
        match e {
            Parse { .. } | VertexOutOfRange { .. } | SelfEdge(_) | DuplicateEdge(..) | DuplicateLoop(_) => {
                Failure::Parse(msg)
            }
            _ if e.is_internal() => Failure::Internal(msg),
            _ => Failure::Precondition(msg),
        }
    }
}

/// Rendered command output.
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

pub fn read_graph(path: &str) -> Result<Graph, Failure> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Parse(format!("standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(Path::new(path)).map_err(|e| Failure::Parse(format!("{path}: {e}")))?
    };
    text.parse::<Graph>()
        .map_err(|e| Failure::Parse(format!("{path}: {e}")))
}

fn dispatch(cli: Cli) -> Result<Output, Failure> {
    let format = cli.format;
    match cli.command {
        Cmd::Count {
            kind,
            g,
            h,
            force_bruteforce,
            budget,
        } => {
            let g = match (kind, g) {
                (Kind::Aut, _) => None,
                (_, Some(path)) => Some(read_graph(&path)?),
                (_, None) => {
                    return Err(Failure::Usage(format!(
                        "`count --kind {}` requires --g",
                        kind.to_possible_value().expect("not skipped").get_name()
                    )))
                }
            };
            let h = read_graph(&h)?;
            commands::count(kind, g.as_ref(), &h, force_bruteforce, budget, format)
        }
        Cmd::Classify { h } => Ok(commands::classify(&read_graph(&h)?, format)),
        Cmd::InverseColumn { h } => Ok(commands::inverse_column(&read_graph(&h)?, format)),
        Cmd::Images { h } => commands::images(&read_graph(&h)?, format),
        Cmd::Verify { n_max } => commands::verify(n_max, format),
        Cmd::Recover { h, g, mode, oracle_cmd } => {
            let (h, g) = (read_graph(&h)?, read_graph(&g)?);
            commands::recover(&h, &g, mode.into(), oracle_cmd.as_deref(), format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                // The report was produced but failed its own checks.
                ExitCode::from(5)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
