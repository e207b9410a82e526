//! Command-line front end: reproduces the library's sweep curves as
//! machine-readable tables and exposes one-shot swap, chain, teleport, and
//! witness runs.
//!
//! Exit codes: 0 on success, 2 on usage errors (malformed arguments or
//! config), 3 on numeric-domain errors (inadmissible probabilities,
//! visibilities, or dimension caps).

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qswap::measures::{
    avg_iconcurrence, avg_negativity, iconcurrence_isotropic, iconcurrence_outcome,
    isotropic_fidelity, negativity_isotropic, negativity_outcome, FidelityValue,
};
use qswap::separability::realignment_witness;
use qswap::states::{IsotropicState, SchmidtVector};
use qswap::swap::{swap_outcome_distribution, swap_pure};
use qswap::teleport::{repeater_chain, teleport_average_fidelity};

use config::{OutputFormat, RunConfig};
use report::{
    render, AverageRow, BranchRow, ChainRow, CurveRow, SweepRow, TeleportRow, WitnessRow,
};

#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation: exit code 2.
    Usage(String),
    /// Admissible syntax but inadmissible numbers: exit code 3.
    Domain(String),
}

impl From<qswap::Error> for CliError {
    fn from(e: qswap::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "qswap",
    version,
    about = "Qudit entanglement swapping, teleportation, and separability toolkit"
)]
struct Cli {
    /// Output format (overrides the config file)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// key=value config file; command-line flags take precedence
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// RNG seed for Monte Carlo commands
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Verdict tolerance
    #[arg(long, global = true)]
    eps: Option<f64>,

    /// Cap on the qudit dimension of dense density-matrix commands (2..=8)
    #[arg(long, global = true, value_name = "D")]
    dmax_dense: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Measure {
    Concurrence,
    Negativity,
}

#[derive(Subcommand)]
enum Command {
    /// Average swapped I-concurrence and negativity vs dimension for
    /// maximally entangled inputs
    SweepDimension {
        #[arg(long, default_value_t = 3)]
        dmin: usize,
        #[arg(long, default_value_t = 20)]
        dmax: usize,
    },
    /// I-concurrence or negativity of isotropic states as a function of
    /// fidelity
    IsotropicCurves {
        #[arg(long, value_enum)]
        measure: Measure,
        /// Dimensions to tabulate
        #[arg(long = "d", value_delimiter = ',', default_value = "2,3,4,5")]
        dims: Vec<usize>,
        /// Fidelity grid step
        #[arg(long, default_value_t = 0.01)]
        fstep: f64,
    },
    /// Swap two Schmidt-form inputs: per-branch table, one branch, or the
    /// averaged measures
    Swap {
        /// First Schmidt vector, e.g. 0.8,0.2
        #[arg(allow_hyphen_values = true)]
        p: String,
        /// Second Schmidt vector
        #[arg(allow_hyphen_values = true)]
        p2: String,
        /// Report a single branch (u, v)
        #[arg(long, num_args = 2, value_names = ["U", "V"], conflicts_with = "average")]
        branch: Option<Vec<usize>>,
        /// Report probability-averaged measures instead of the table
        #[arg(long)]
        average: bool,
    },
    /// Compose a repeater chain of isotropic links and teleport through it
    Chain {
        #[arg(long)]
        d: usize,
        /// Link visibilities, e.g. 0.9,0.9,0.9
        #[arg(long, value_delimiter = ',', required = true)]
        links: Vec<f64>,
        /// Monte Carlo samples for the teleportation fidelity
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Monte Carlo teleportation fidelity through one isotropic channel
    Teleport {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        visibility: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Realignment separability witness for an isotropic state
    Witness {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        visibility: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(eps) = cli.eps {
        cfg.eps = eps;
    }
    if let Some(dmax) = cli.dmax_dense {
        cfg.dmax_dense = dmax;
    }
    cfg.validate()?;

    match &cli.command {
        Command::SweepDimension { dmin, dmax } => cmd_sweep_dimension(*dmin, *dmax, &cfg),
        Command::IsotropicCurves {
            measure,
            dims,
            fstep,
        } => cmd_isotropic_curves(*measure, dims, *fstep, &cfg),
        Command::Swap {
            p,
            p2,
            branch,
            average,
        } => cmd_swap(p, p2, branch.as_deref(), *average, &cfg),
        Command::Chain { d, links, samples } => cmd_chain(*d, links, *samples, &cfg),
        Command::Teleport {
            d,
            visibility,
            samples,
        } => cmd_teleport(*d, *visibility, *samples, &cfg),
        Command::Witness { d, visibility } => cmd_witness(*d, *visibility, &cfg),
    }
}

/// Closed-form path only; no dense matrices at any dimension.
fn cmd_sweep_dimension(dmin: usize, dmax: usize, cfg: &RunConfig) -> Result<String, CliError> {
    if !(2 <= dmin && dmin <= dmax && dmax <= 50) {
        return Err(CliError::Usage(format!(
            "need 2 <= dmin <= dmax <= 50, got dmin={dmin} dmax={dmax}"
        )));
    }
    let mut rows = Vec::with_capacity(dmax - dmin + 1);
    for d in dmin..=dmax {
        let p = SchmidtVector::uniform(d)?;
        rows.push(SweepRow {
            d,
            avg_iconcurrence: avg_iconcurrence(&p, &p)?,
            avg_negativity: avg_negativity(&p, &p)?,
        });
    }
    Ok(render(&rows, cfg.format))
}

fn cmd_isotropic_curves(
    measure: Measure,
    dims: &[usize],
    fstep: f64,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    if !(fstep > 0.0 && fstep <= 0.1) {
        return Err(CliError::Usage(format!(
            "fstep must lie in (0, 0.1], got {fstep}"
        )));
    }
    if dims.is_empty() {
        return Err(CliError::Usage("need at least one dimension".into()));
    }
    if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
        return Err(CliError::Usage(format!(
            "dimensions must be at least 2, got {bad}"
        )));
    }
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();

    let steps = (1.0 / fstep + 1e-9).floor() as usize;
    let mut rows = Vec::new();
    for &d in &dims {
        let mut emit = |f: f64| -> Result<(), CliError> {
            let fid = FidelityValue::new(f.min(1.0))?;
            let value = match measure {
                Measure::Concurrence => iconcurrence_isotropic(d, fid),
                Measure::Negativity => negativity_isotropic(d, fid),
            };
            rows.push(CurveRow {
                d,
                fidelity: fid.value(),
                value,
            });
            Ok(())
        };
        let mut last = 0.0;
        for i in 0..=steps {
            last = i as f64 * fstep;
            emit(last)?;
        }
        if last < 1.0 - 1e-12 {
            emit(1.0)?;
        }
    }
    Ok(render(&rows, cfg.format))
}

fn parse_schmidt(label: &str, text: &str) -> Result<SchmidtVector, CliError> {
    let values = text
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{label}: cannot parse `{tok}` as a number")))
        })
        .collect::<Result<Vec<f64>, CliError>>()?;
    Ok(SchmidtVector::new(values)?)
}

fn branch_row(
    p: &SchmidtVector,
    p2: &SchmidtVector,
    u: usize,
    v: usize,
) -> Result<BranchRow, CliError> {
    let outcome = swap_pure(p, p2, u, v)?;
    let (iconcurrence, negativity) = if outcome.state.is_some() {
        (
            iconcurrence_outcome(p, p2, v)?,
            negativity_outcome(p, p2, v)?,
        )
    } else {
        // Zero-probability branch: measures carry zero weight.
        (0.0, 0.0)
    };
    Ok(BranchRow {
        u,
        v,
        probability: outcome.probability,
        iconcurrence,
        negativity,
    })
}

fn cmd_swap(
    p: &str,
    p2: &str,
    branch: Option<&[usize]>,
    average: bool,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    let p = parse_schmidt("first vector", p)?;
    let p2 = parse_schmidt("second vector", p2)?;
    if average {
        let rows = [AverageRow {
            avg_iconcurrence: avg_iconcurrence(&p, &p2)?,
            avg_negativity: avg_negativity(&p, &p2)?,
        }];
        return Ok(render(&rows, cfg.format));
    }
    if let Some(labels) = branch {
        let rows = [branch_row(&p, &p2, labels[0], labels[1])?];
        return Ok(render(&rows, cfg.format));
    }
    let mut rows = Vec::new();
    for outcome in swap_outcome_distribution(&p, &p2)? {
        rows.push(branch_row(&p, &p2, outcome.label.u, outcome.label.v)?);
    }
    Ok(render(&rows, cfg.format))
}

fn check_dense_dim(d: usize, cfg: &RunConfig) -> Result<(), CliError> {
    if d < 2 {
        return Err(CliError::Usage(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if d > cfg.dmax_dense {
        return Err(CliError::Domain(format!(
            "dimension {d} exceeds the dense cap dmax_dense = {}",
            cfg.dmax_dense
        )));
    }
    Ok(())
}

fn cmd_chain(d: usize, links: &[f64], samples: usize, cfg: &RunConfig) -> Result<String, CliError> {
    check_dense_dim(d, cfg)?;
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let report = repeater_chain(d, links, samples, cfg.seed)?;
    let rows = [ChainRow {
        link_count: report.link_count,
        end_visibility: report.end_visibility,
        end_fidelity: report.end_fidelity.value(),
        avg_teleport_fidelity: report.avg_teleport_fidelity,
    }];
    Ok(render(&rows, cfg.format))
}

fn cmd_teleport(
    d: usize,
    visibility: f64,
    samples: usize,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    check_dense_dim(d, cfg)?;
    if samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let iso = IsotropicState::new(d, visibility)?;
    let channel_fidelity = isotropic_fidelity(&iso).value();
    let avg = teleport_average_fidelity(&iso.density(), samples, cfg.seed)?;
    let expected = (channel_fidelity * d as f64 + 1.0) / (d as f64 + 1.0);
    let rows = [TeleportRow {
        d,
        visibility: iso.visibility(),
        channel_fidelity,
        avg_fidelity: avg,
        expected_fidelity: expected,
        samples,
        seed: cfg.seed,
    }];
    Ok(render(&rows, cfg.format))
}

fn cmd_witness(d: usize, visibility: f64, cfg: &RunConfig) -> Result<String, CliError> {
    check_dense_dim(d, cfg)?;
    let iso = IsotropicState::new(d, visibility)?;
    let report = realignment_witness(&iso.density())?;
    let entangled = report.excess > cfg.eps;
    let rows = [WitnessRow {
        d,
        visibility: iso.visibility(),
        excess: report.excess,
        verdict: if entangled { "entangled" } else { "separable" },
    }];
    Ok(render(&rows, cfg.format))
}
