mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use causet_qft::reps::SignConvention;
use causet_qft::scattering::InteractionConfig;
use causet_qft::Error;

use report::{Format, ReportBundle};

const THREADS_ENV: &str = "CAUSET_QFT_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "causet-qft",
    version,
    about = "Tables and verification reports for the tetrahedral spacetime lattice"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Tolerance for floating-point checks.
    #[arg(long, default_value_t = 1e-10, global = true)]
    tol: f64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Attach wall-clock time outside the payload.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    FirstPositive,
    Reference,
}

impl From<Convention> for SignConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::FirstPositive => SignConvention::FirstPositive,
            Convention::Reference => SignConvention::Reference,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 24x24 multiplication table.
    GroupTable {
        /// Diff against the embedded reference table.
        #[arg(long)]
        check: bool,
    },
    /// Group axioms, listed subgroups and generating pairs.
    GroupVerify,
    /// Unitarity, homomorphism, eigenvalue and projective sign checks.
    RepsVerify {
        #[arg(long, value_enum, default_value = "first-positive")]
        convention: Convention,
    },
    /// Exhaustive search for boosts with entries bounded by B.
    NoBoost {
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Shell sizes and parent statistics up to time T.
    Shells {
        #[arg(long)]
        t: i64,
        #[arg(long)]
        sizes_only: bool,
    },
    /// Partial order, path length and covariance diagnostics.
    CausetVerify {
        #[arg(long, default_value_t = 3)]
        t: i64,
    },
    /// Average speeds sqrt(Q)/t for t = 1..T.
    Speeds {
        #[arg(long)]
        t: i64,
    },
    /// Mass-squared values for p0 = 0..K.
    Masses {
        #[arg(long, default_value_t = 7)]
        p0_max: i64,
    },
    /// Points of the truncated mass shell.
    Hyperboloid {
        #[arg(long)]
        m2: i64,
        #[arg(long)]
        pmax: i64,
    },
    /// Field operator and representation checks on a truncated Fock space.
    FockVerify {
        #[arg(long, default_value_t = 0)]
        m2: i64,
        #[arg(long, default_value_t = 1)]
        pmax: i64,
        #[arg(long, default_value_t = 2)]
        nmax: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Two-pi scattering amplitude in the pi^2 sigma model.
    Scatter {
        #[arg(long, default_value_t = 0.1)]
        g: f64,
        /// Mass squared of pi.
        #[arg(long, default_value_t = 0)]
        m2: i64,
        /// Mass squared of sigma.
        #[arg(long = "M2", default_value_t = 1)]
        sigma_m2: i64,
        #[arg(long, default_value_t = 3)]
        horizon: usize,
        #[arg(long, default_value_t = 0)]
        window: i64,
        #[arg(long, default_value_t = 1)]
        pmax: i64,
        #[arg(long, default_value_t = 2)]
        nmax_pi: usize,
        #[arg(long, default_value_t = 1)]
        nmax_sigma: usize,
        /// Shell point indices of the incoming pair, e.g. 0,1.
        #[arg(long = "in", value_parser = parse_pair)]
        incoming: Option<(usize, usize)>,
        /// Shell point indices of the outgoing pair.
        #[arg(long = "out", value_parser = parse_pair)]
        outgoing: Option<(usize, usize)>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two indices like 0,1")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Worker count requested through the environment, if any.
fn thread_count(raw: Option<&str>) -> Result<Option<usize>, String> {
    let Some(raw) = raw else {
        return Ok(None);
    };
    raw.parse()
        .ok()
        .filter(|n: &usize| *n > 0)
        .map(Some)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))
}

fn run(cli: &Cli, echo: Vec<String>) -> anyhow::Result<ReportBundle> {
    let tol = cli.tol;
    match &cli.command {
        Command::GroupTable { check } => commands::group_table(echo, *check),
        Command::GroupVerify => commands::group_verify(echo),
        Command::RepsVerify { convention } => {
            commands::reps_verify(echo, (*convention).into(), tol)
        }
        Command::NoBoost { bound } => commands::no_boost(echo, *bound),
        Command::Shells { t, sizes_only } => commands::shells(echo, *t, *sizes_only),
        Command::CausetVerify { t } => commands::causet_verify(echo, *t),
        Command::Speeds { t } => commands::speeds(echo, *t),
        Command::Masses { p0_max } => commands::masses(echo, *p0_max),
        Command::Hyperboloid { m2, pmax } => commands::hyperboloid(echo, *m2, *pmax),
        Command::FockVerify {
            m2,
            pmax,
            nmax,
            samples,
        } => commands::fock_verify(echo, *m2, *pmax, *nmax, *samples, tol),
        Command::Scatter {
            g,
            m2,
            sigma_m2,
            horizon,
            window,
            pmax,
            nmax_pi,
            nmax_sigma,
            incoming,
            outgoing,
        } => {
            let config = InteractionConfig {
                g: *g,
                pi_mass_sq: *m2,
                sigma_mass_sq: *sigma_m2,
                energy_cap: *pmax,
                pi_max_n: *nmax_pi,
                sigma_max_n: *nmax_sigma,
                window: *window,
                horizon: *horizon,
            };
            let args = commands::ScatterArgs {
                config,
                incoming: *incoming,
                outgoing: *outgoing,
            };
            commands::scatter(echo, args, tol)
        }
    }
}

/// Bad inputs are usage errors; anything else is a failed check.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidArgument(_) | Error::Config(_)) | None => 2,
        Some(_) => 1,
    }
}

struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn error(code: u8, msg: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: msg,
        }
    }
}

fn execute(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::error(code, text)
            };
        }
    };
    let echo = args.iter().skip(1).cloned().collect();
    let start = Instant::now();
    let mut bundle = match run(&cli, echo) {
        Ok(b) => b,
        Err(e) => return Outcome::error(exit_code_for(&e), format!("error: {e:#}\n")),
    };
    if cli.timing {
        bundle.meta = Some(json!({ "wall_clock_ms": start.elapsed().as_secs_f64() * 1e3 }));
    }

    let mut out = bundle.render(cli.format);
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &out) {
            return Outcome::error(2, format!("error: writing {}: {e}\n", path.display()));
        }
        out.clear();
    }
    if bundle.all_passed() {
        Outcome {
            code: 0,
            stdout: out,
            stderr: String::new(),
        }
    } else {
        let failing = format!("failed checks: {}\n", bundle.summary.failing.join(", "));
        Outcome {
            code: 1,
            stdout: out,
            stderr: failing,
        }
    }
}

fn main() -> ExitCode {
    let env = std::env::var(THREADS_ENV).ok();
    match thread_count(env.as_deref()) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let args: Vec<String> = std::env::args().collect();
    let outcome = execute(&args);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &str) -> Outcome {
        let v: Vec<String> = std::iter::once("causet-qft")
            .chain(args.split_whitespace())
            .map(String::from)
            .collect();
        execute(&v)
    }

    #[test]
    fn clean_table_exits_zero() {
        let o = exec("group-table --check");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("diff: 0 lines"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(exec("frobnicate").code, 2);
        assert_eq!(exec("shells --bogus").code, 2);
        assert_eq!(exec("shells").code, 2);
        assert_eq!(exec("no-boost --bound 2").code, 2);
        assert_eq!(exec("scatter --nmax-pi 1").code, 2);
        assert_eq!(exec("scatter --in 0").code, 2);
    }

    #[test]
    fn failed_checks_exit_one_and_are_named() {
        let o = exec("group-verify");
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("pairwise_noncommuting_generate"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let o = exec("--help");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("group-table"));
    }

    #[test]
    fn shell_sizes() {
        let o = exec("shells --t 1 --sizes-only --format json");
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["payload"]["shells"][1]["size"], 13);
        assert_eq!(o.code, 0);
    }

    #[test]
    fn csv_tables() {
        let o = exec("masses --p0-max 1 --format csv");
        assert_eq!(o.stdout, "p0,mass_squared\n0,\"0\"\n1,\"0,1\"\n");
        let o = exec("hyperboloid --m2 1 --pmax 1 --format csv");
        assert_eq!(o.stdout, "index,p0,n,p,q\n0,1,0,0,0\n");
    }

    #[test]
    fn output_file_is_written() {
        let path = std::env::temp_dir().join(format!("causet-qft-{}.json", std::process::id()));
        let o = exec(&format!(
            "speeds --t 2 --format json --output {}",
            path.display()
        ));
        assert_eq!(o.code, 0);
        assert!(o.stdout.is_empty());
        let s = std::fs::read_to_string(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert!(s.ends_with("}\n"));
    }

    #[test]
    fn thread_env_parsing() {
        assert_eq!(thread_count(None), Ok(None));
        assert_eq!(thread_count(Some("4")), Ok(Some(4)));
        assert!(thread_count(Some("0")).is_err());
        assert!(thread_count(Some("many")).is_err());
    }

    #[test]
    fn timing_stays_out_of_the_payload() {
        let o = exec("masses --p0-max 2 --format json --timing");
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert!(v["meta"]["wall_clock_ms"].is_number());
        assert!(v["payload"].to_string().find("wall_clock").is_none());
    }
}
