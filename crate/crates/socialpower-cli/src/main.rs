//! Command-line front end: validation, eigenvectors, simulation, topology
//! construction, threshold reports, sweeps, crossover search, randomized
//! verification and the reference experiments.
//!
//! Exit codes: 0 on success, 1 on validation failure (bad matrices, specs,
//! files or arguments), 2 on convergence failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use socialpower::harness::write_sweep_csv;
use socialpower::prelude::*;

#[derive(Parser)]
#[command(
    name = "socialpower",
    about = "Social power dynamics on trust networks: simulate issue sequences and analyse who ends up dominant",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a matrix file against every interaction-matrix property.
    Validate {
        /// Matrix file (JSON `{"n":..,"rows":[[..]]}`, or headerless CSV by extension)
        matrix_file: PathBuf,
    },
    /// Compute the dominant left eigenvector of a matrix file.
    Gamma {
        matrix_file: PathBuf,
        /// Residual tolerance for the eigenvector iteration
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Iterate the self-weight dynamics to equilibrium.
    Simulate {
        matrix_file: PathBuf,
        /// Initial self-weights: `uniform` or a path to a JSON array
        #[arg(long, default_value = "uniform")]
        x0: String,
        /// Stop once successive issues differ by at most this
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Issue cap
        #[arg(long, default_value_t = 1_000_000)]
        max_issues: usize,
        /// Write the recorded trajectory to this CSV file
        #[arg(long)]
        trajectory: Option<PathBuf>,
        /// Record every k-th issue in the trajectory
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Build the interaction matrix described by a variation spec file.
    Build {
        spec_file: PathBuf,
        /// Write the matrix JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the dominance-threshold catalogue for a variation spec file.
    Threshold { spec_file: PathBuf },
    /// Run a parameter sweep from a config file and write it as CSV.
    Sweep {
        config_file: PathBuf,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Find the parameter value where two nodes exchange rank.
    Crossover {
        config_file: PathBuf,
        /// The two 1-based node labels, e.g. `--nodes 1,7`
        #[arg(long, value_parser = parse_node_pair)]
        nodes: (usize, usize),
        /// Bisection tolerance on the eigenvector gap
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Cross-check closed forms, verdicts and simulation on random draws.
    Verify {
        kind: KindArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reproduce the reference experiments into a directory.
    PaperExperiments {
        /// Output directory for the CSVs and their JSON sidecars
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    SingleAttack,
    CoordinatedDouble,
    UncoordinatedDouble,
    DissentingSubjects,
    LeadershipGroup,
}

impl From<KindArg> for VariationKind {
    fn from(arg: KindArg) -> Self {
        match arg {
            KindArg::SingleAttack => VariationKind::SingleAttack,
            KindArg::CoordinatedDouble => VariationKind::CoordinatedDouble,
            KindArg::UncoordinatedDouble => VariationKind::UncoordinatedDouble,
            KindArg::DissentingSubjects => VariationKind::DissentingSubjects,
            KindArg::LeadershipGroup => VariationKind::LeadershipGroup,
        }
    }
}

fn parse_node_pair(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected two comma-separated node labels, e.g. 1,7".into());
    }
    let a = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let b = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    if a == 0 || b == 0 {
        return Err("node labels are 1-based".into());
    }
    Ok((a, b))
}

fn load_spec(path: &Path) -> Result<VariationSpec, Error> {
    VariationSpec::from_json_str(&fs::read_to_string(path)?)
}

fn load_config(path: &Path) -> Result<SweepConfig, Error> {
    SweepConfig::from_json_str(&fs::read_to_string(path)?)
}

fn load_x0(arg: &str, n: usize) -> Result<SelfWeights, Error> {
    if arg == "uniform" {
        return Ok(SelfWeights::uniform(n));
    }
    let text = fs::read_to_string(arg)?;
    let values: Vec<f64> = serde_json::from_str(&text)?;
    SelfWeights::new(values)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Validate { matrix_file } => {
            let text = fs::read_to_string(&matrix_file)?;
            let rows = match matrix_file.extension().and_then(|e| e.to_str()) {
                Some("csv") => parse_csv_rows(&text)?,
                _ => {
                    let value: serde_json::Value = serde_json::from_str(&text)?;
                    serde_json::from_value(value["rows"].clone())?
                }
            };
            let report = validate(&rows)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Gamma { matrix_file, tol } => {
            let c = InteractionMatrix::from_file(&matrix_file)?;
            let gamma = c.dominant_left_eigenvector(tol)?;
            let ordering = power_ordering(gamma.as_slice());
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "gamma": gamma.as_slice(),
                    "residual": gamma.residual(&c),
                    "ranking": ordering.ranking,
                    "leader": ordering.leader,
                }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            matrix_file,
            x0,
            tol,
            max_issues,
            trajectory,
            stride,
        } => {
            let c = InteractionMatrix::from_file(&matrix_file)?;
            let start = load_x0(&x0, c.n())?;
            let traj = iterate_to_equilibrium_with(
                &c,
                &start,
                &IterateOptions {
                    tol,
                    max_issues,
                    record_stride: stride,
                    ..IterateOptions::default()
                },
            )?;
            if let Some(path) = trajectory {
                let mut out = Vec::new();
                traj.write_csv(&mut out)?;
                fs::write(path, out)?;
            }
            let ordering = power_ordering(traj.final_state().as_slice());
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "x_star": traj.final_state().as_slice(),
                    "converged": traj.converged,
                    "issues_run": traj.issues_run,
                    "final_residual": traj.final_residual,
                    "leader": ordering.leader,
                }))?
            );
            Ok(if traj.converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Build { spec_file, out } => {
            let spec = load_spec(&spec_file)?;
            let c = spec.build()?;
            match out {
                Some(path) => fs::write(path, c.to_json_string())?,
                None => println!("{}", c.to_json_string()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Threshold { spec_file } => {
            let spec = load_spec(&spec_file)?;
            let report = threshold_report(&spec)?;
            println!("{}", report.to_json_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { config_file, out } => {
            let config = load_config(&config_file)?;
            let rows = run_sweep(&config)?;
            let mut csv = Vec::new();
            write_sweep_csv(&rows, config.equilibrium_method, &mut csv)?;
            fs::write(&out, csv)?;
            eprintln!("wrote {} rows to {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Crossover {
            config_file,
            nodes: (a, b),
            tol,
        } => {
            let config = load_config(&config_file)?;
            let crossing = find_crossover(&config, a, b, tol)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "node_a": a,
                    "node_b": b,
                    "crossover": crossing,
                }))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            kind,
            samples,
            seed,
        } => {
            let summary = verify_variation(kind.into(), samples, seed)?;
            println!("{}", summary.to_json_string());
            Ok(ExitCode::SUCCESS)
        }
        Command::PaperExperiments { out } => {
            let manifest = run_paper_experiments(&out)?;
            for path in manifest {
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_csv_rows(text: &str) -> Result<Vec<Vec<f64>>, Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(e.to_string()))
                })
                .collect()
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Convergence { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
