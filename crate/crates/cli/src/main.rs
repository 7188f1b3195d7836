use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semiprime::checks::{check_axiom, is_bounded, Axiom};
use semiprime::diagram::to_dot;
use semiprime::report::{EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use semiprime::suites::{run, Config, Suite};
use semiprime::{syntax, Error, Lattice, Ring, Window};

#[derive(Parser, Debug)]
#[command(name = "semiprime", version, about = "Verify semiprime closure operations on truncated ideal lattices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingKind {
    Dvr,
    Ded,
    Cusp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(clap::Args, Debug)]
struct WindowArgs {
    #[arg(long, value_enum)]
    ring: RingKind,
    /// Field size for the cusp ring.
    #[arg(long, default_value_t = 2)]
    p: u32,
    /// Number of maximal ideals for the Dedekind model.
    #[arg(long, default_value_t = 2)]
    lambda: usize,
    /// Largest degree or exponent in the window (default 8, 4, 6 for dvr, ded, cusp).
    #[arg(long)]
    max: Option<u32>,
}

impl WindowArgs {
    fn ring(&self) -> Ring {
        match self.ring {
            RingKind::Dvr => Ring::Dvr,
            RingKind::Ded => Ring::Dedekind { primes: self.lambda },
            RingKind::Cusp => Ring::Cusp { p: self.p },
        }
    }

    fn max(&self) -> u32 {
        self.max.unwrap_or(match self.ring {
            RingKind::Dvr => 8,
            RingKind::Ded => 4,
            RingKind::Cusp => 6,
        })
    }

    fn window(&self) -> Result<Window, Error> {
        Window::new(self.ring(), self.max()).map_err(|e| Error::Usage(e.to_string()))
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run verification suites and write a report.
    Verify {
        #[command(flatten)]
        window: WindowArgs,
        /// oracle, axioms, tables, act, enumeration, prime-scan, exceptional or all; repeatable.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the window's Hasse diagram in DOT syntax.
    Diagram {
        #[command(flatten)]
        window: WindowArgs,
        /// Operation literal whose arrows are drawn, e.g. `cusp:fpoint(m=4,a=0,zero=closed)`.
        #[arg(long)]
        op: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check axioms (a)-(e) and boundedness for one operation.
    Check {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        op: String,
    },
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Usage(format!("{}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn execute(cmd: Cmd) -> Result<i32, Error> {
    match cmd {
        Cmd::Verify { window, suite, format, out } => {
            let mut suites = Vec::new();
            for s in &suite {
                suites.extend(Suite::parse(s.trim())?);
            }
            let cfg = Config::new(window.ring(), window.max(), suites)?;
            let report = run(&cfg)?;
            let text = match format {
                Format::Human => report.to_human(),
                Format::Structured => report.to_structured(),
            };
            emit(out.as_ref(), &text)?;
            Ok(report.exit_code())
        }
        Cmd::Diagram { window, op, out } => {
            let lat = Lattice::new(window.window()?);
            let op = op.map(|s| syntax::parse(&s, lat.ring())).transpose()?;
            emit(out.as_ref(), &to_dot(&lat, op.as_ref())?)?;
            Ok(EXIT_OK)
        }
        Cmd::Check { window, op } => {
            let lat = Lattice::new(window.window()?);
            let op = syntax::parse(&op, lat.ring())?;
            let map = op.to_raw(&lat)?;
            let mut ok = true;
            let mut text = format!("{op}\n");
            for a in [Axiom::A, Axiom::B, Axiom::C, Axiom::D, Axiom::E] {
                let r = check_axiom(&lat, &map, a);
                ok &= r.passed();
                text.push_str(&format!("  ({a}) {:?}, {} checked, {} skipped", r.outcome, r.checked, r.skipped));
                if let Some(w) = r.witness {
                    text.push_str(&format!(": {w}"));
                }
                text.push('\n');
            }
            match is_bounded(&lat, &map) {
                Some(j) => text.push_str(&format!("  bounded by {j}\n")),
                None => text.push_str("  no bound visible in the window\n"),
            }
            emit(None, &text)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("SEMIPRIME_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| Error::Usage(format!("SEMIPRIME_THREADS={v} is not a number")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = threads().and_then(|_| execute(cli.cmd)).unwrap_or_else(|e| {
        eprintln!("semiprime: {e}");
        match e {
            Error::Usage(_) | Error::Parse { .. } | Error::InvalidOp(_) | Error::InvalidWindow(_) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    });
    ExitCode::from(code as u8)
}
