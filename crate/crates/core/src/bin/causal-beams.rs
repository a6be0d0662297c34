use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use causal_beams::cli::{format_check_lines, ALL_CRITERIA, init_threads, run_scenario, run_verify_all};
use causal_beams::scenario::Scenario;
use causal_beams::verify::{Fault, Profile, VerifyOptions};

#[derive(Parser)]
#[command(name = "causal-beams", version, about = "Pulsed beams from complex source points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scalar propagator or driven beam on an x1-x3 slice.
    Field(Common),
    /// Complex electromagnetic field of a dipole on an x1-x3 slice.
    EmField(Common),
    /// Fourier transforms on a (k, omega) grid.
    Spectrum(Common),
    /// Plane-wave synthesis against the closed form.
    WeylVerify(Common),
    /// Shielded and bare source checks.
    SourceTest(Common),
    /// The full acceptance suite.
    VerifyAll(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Default,
    Strict,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FlipFilterSine,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct Shared {
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "default")]
    tol_profile: ProfileArg,
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Optional scenario (kind "verify-all") naming the report stem.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[command(flatten)]
    shared: Shared,
    /// Negative control: run with a deliberate defect.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
    /// Run only these groups (comma separated).
    #[arg(long, value_delimiter = ',', hide = true)]
    criteria: Vec<usize>,
}

impl Shared {
    fn options(&self, fault: Option<Fault>) -> VerifyOptions {
        let profile = match self.tol_profile {
            ProfileArg::Default => Profile::Default,
            ProfileArg::Strict => Profile::Strict,
        };
        VerifyOptions { profile, seed: self.seed, fault }
    }
}

fn run(cli: Cli) -> causal_beams::Result<bool> {
    init_threads()?;
    let (expected, common) = match cli.command {
        Command::VerifyAll(v) => {
            let opts = v.shared.options(v.inject_fault.map(|FaultArg::FlipFilterSine| Fault::FlipFilterSine));
            let stem = match &v.scenario {
                Some(path) => match Scenario::load(path)? {
                    Scenario::VerifyAll(s) => s.output.stem,
                    other => return Err(kind_mismatch("verify-all", other.kind())),
                },
                None => "verify_report".to_string(),
            };
            let criteria = if v.criteria.is_empty() { ALL_CRITERIA.to_vec() } else { v.criteria.clone() };
            let report = run_verify_all(&opts, &criteria, &v.shared.out, &stem)?;
            for line in format_check_lines(&report) {
                println!("{line}");
            }
            println!("{}", if report.pass { "verify-all: PASS" } else { "verify-all: FAIL" });
            return Ok(report.pass);
        }
        Command::Field(c) => ("field", c),
        Command::EmField(c) => ("em-field", c),
        Command::Spectrum(c) => ("spectrum", c),
        Command::WeylVerify(c) => ("weyl-verify", c),
        Command::SourceTest(c) => ("source-test", c),
    };
    let sc = Scenario::load(&common.scenario)?;
    if sc.kind() != expected {
        return Err(kind_mismatch(expected, sc.kind()));
    }
    let base = common.scenario.parent().unwrap_or(Path::new("."));
    let pass = run_scenario(&sc, base, &common.shared.out, &common.shared.options(None))?;
    println!("{expected}: {} (output in {})", if pass { "PASS" } else { "FAIL" }, common.shared.out.display());
    Ok(pass)
}

fn kind_mismatch(expected: &str, got: &str) -> causal_beams::Error {
    causal_beams::Error::Scenario(format!("expected a {expected:?} scenario, got {got:?}"))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
