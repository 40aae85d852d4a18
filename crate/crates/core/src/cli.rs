//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 verification failure,
//! 3 internal invariant violation, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::atlas::{write_atlas, Format};
use crate::error::Error;
use crate::lens::{normalize_lens, HomologyClass};
use crate::lensd::d_all;
use crate::oracle::verify_all;
use crate::rational::ExactRational;
use crate::surgery::{
    dual_theta_bound_detailed, surgery_d, torsion_coefficients, AlexanderPoly,
};
use crate::theta::{simple_knot_invariants, theta_lower_bound, ThetaReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "ratgenus",
    version,
    about = "Correction terms of lens spaces and surgeries, and rational genus bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full table of correction terms of L(p,q)
    Dinv {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Lower bound on Theta for class k of L(p,q)
    Theta {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Exact rational genus and fiberedness of the simple knot in class k of L(p,q)
    Simple {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// p-surgery on an L-space knot in S^3: correction terms and the dual-knot bound
    Surgery {
        /// Torus knot shorthand, e.g. T(2,3)
        #[arg(long, conflicts_with = "alex", required_unless_present = "alex")]
        knot: Option<String>,
        /// Symmetric Alexander coefficients c_{-g},...,c_g
        #[arg(long, allow_hyphen_values = true)]
        alex: Option<String>,
        /// Surgery coefficient
        #[arg(long = "p")]
        p: u64,
    },
    /// Simple-knot invariants for every class of every L(p,q) with p <= pmax
    Atlas {
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
        /// Worker threads; 0 uses every core
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the verification suite
    Verify {
        #[arg(long)]
        pmax: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Serialize)]
struct DinvOut {
    p: u64,
    q: u64,
    d: Vec<ExactRational>,
}

#[derive(Serialize)]
struct ClassOut {
    p: u64,
    q: u64,
    k: u64,
    #[serde(flatten)]
    report: ThetaReport,
}

#[derive(Serialize)]
struct SurgeryOut {
    p: u64,
    alexander: String,
    genus: u64,
    v: Vec<u64>,
    d: Vec<ExactRational>,
    dual_bound: ExactRational,
    dual_maximizers: Vec<u64>,
    upper_bound: ExactRational,
    minimizer: bool,
}

enum Failure {
    Domain(Error),
    Usage(String),
    Io(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Usage(msg),
            Error::Io(msg) => Failure::Io(msg),
            other => Failure::Domain(other),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(v).expect("output serializes");
    bytes.push(b'\n');
    bytes
}

/// Parses `argv` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => {
            let _ = writeln!(err, "verification failed");
            EXIT_VERIFY
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    let bytes = match command {
        Command::Dinv { p, q } => {
            let lens = normalize_lens(p, q)?;
            to_json(&DinvOut {
                p: lens.p(),
                q: lens.q(),
                d: d_all(lens).values().to_vec(),
            })
        }
        Command::Theta { p, q, k } => {
            let lens = normalize_lens(p, q)?;
            let class = HomologyClass::new(k, lens.p());
            let report = theta_lower_bound(&d_all(lens), class);
            to_json(&ClassOut {
                p: lens.p(),
                q: lens.q(),
                k: class.k(),
                report,
            })
        }
        Command::Simple { p, q, k } => {
            let lens = normalize_lens(p, q)?;
            let k = HomologyClass::new(k, lens.p()).k();
            let report = simple_knot_invariants(lens, k)?;
            to_json(&ClassOut {
                p: lens.p(),
                q: lens.q(),
                k,
                report,
            })
        }
        Command::Surgery { knot, alex, p } => {
            let input = knot.or(alex).expect("clap requires one of --knot/--alex");
            let delta: AlexanderPoly = input.parse()?;
            if p == 0 {
                return Err(Error::InvalidOrder(0).into());
            }
            let v = torsion_coefficients(&delta)?;
            let table = surgery_d(p, &v, &ExactRational::zero())?;
            let bound = dual_theta_bound_detailed(p, &v)?;
            let upper = ExactRational::new(2 * delta.genus() as i64 - 1, p as i64);
            to_json(&SurgeryOut {
                p,
                alexander: delta.to_string(),
                genus: delta.genus(),
                v: v.values().to_vec(),
                d: table.values().to_vec(),
                minimizer: bound.value == upper,
                dual_bound: bound.value,
                dual_maximizers: bound.maximizers,
                upper_bound: upper,
            })
        }
        Command::Atlas {
            pmax,
            out: path,
            format,
            jobs,
        } => {
            let format: Format = format.parse()?;
            match path {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| Failure::Io(format!("creating {}: {e}", path.display())))?;
                    write_atlas(pmax, jobs, format, std::io::BufWriter::new(file))?;
                }
                None => {
                    write_atlas(pmax, jobs, format, std::io::BufWriter::new(&mut *out))?;
                    if format == Format::Json {
                        out.write_all(b"\n").map_err(|e| Failure::Io(e.to_string()))?;
                    }
                }
            }
            return Ok(());
        }
        Command::Verify { pmax, jobs } => {
            if pmax < 1 {
                return Err(Failure::Usage("--pmax must be at least 1".into()));
            }
            let report = verify_all(pmax, jobs);
            out.write_all(&to_json(&report))
                .map_err(|e| Failure::Io(e.to_string()))?;
            if !report.passed {
                return Err(Failure::Verify);
            }
            return Ok(());
        }
    };
    out.write_all(&bytes).map_err(|e| Failure::Io(e.to_string()))
}
