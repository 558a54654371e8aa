use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_core::scenario::{self, Backend, ExportFormat, Report, RunOptions, Scenario};

/// Toric-code anyon simulator: run scenario scripts and export their reports.
#[derive(Parser, Debug)]
#[command(name = "toric", version, about)]
struct Cli {
    /// Seed for sampled measurements (overrides the scenario file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Simulation engine (overrides the scenario file).
    #[arg(long, global = true, value_enum)]
    backend: Option<BackendArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BackendArg {
    Stabilizer,
    Statevector,
    Both,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Stabilizer => Backend::Stabilizer,
            BackendArg::Statevector => Backend::Statevector,
            BackendArg::Both => Backend::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in scenarios.
    List,
    /// Run a scenario and print a summary (or the JSON report).
    Run {
        #[command(flatten)]
        source: Source,
        /// Print the full JSON report instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// Run a scenario and write its report as JSON or CSV files.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Output directory.
        #[arg(long, short, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Scenario JSON file.
    file: Option<PathBuf>,
    /// Name of a built-in scenario.
    #[arg(long)]
    builtin: Option<String>,
    /// Every built-in scenario.
    #[arg(long)]
    all: bool,
}

fn load(source: &Source) -> Result<Vec<Scenario>> {
    if source.all {
        return Ok(scenario::builtins());
    }
    if let Some(name) = &source.builtin {
        return Ok(vec![scenario::builtin(name)?]);
    }
    let path = source.file.as_ref().expect("clap enforces one source");
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(vec![
        Scenario::from_json(&text).with_context(|| format!("parsing {}", path.display()))?
    ])
}

fn run_many(scenarios: &[Scenario], opts: RunOptions) -> Result<Vec<Report>> {
    scenario::run_all(scenarios, opts)
        .into_iter()
        .zip(scenarios)
        .map(|(r, sc)| r.with_context(|| format!("scenario {}", sc.name)))
        .collect()
}

fn summary(rep: &Report) -> String {
    let mut lines = vec![format!(
        "{} [{} backend, {} qubits]",
        rep.scenario, rep.backend, rep.qubits
    )];
    if let Some(s) = &rep.source {
        lines.push(format!(
            "  source: success probability {:.6}, fidelity {:.9}",
            s.success_probability, s.fidelity
        ));
    }
    if let Some(o) = &rep.occupancy {
        lines.push(format!("  anyons on plaquettes {:?}", o.occupied));
        if !o.indefinite.is_empty() {
            lines.push(format!("  superposed occupation on {:?}", o.indefinite));
        }
    }
    for e in &rep.expectations {
        lines.push(format!("  <{}> = {:+.6}", e.operator, e.value));
    }
    if let Some(e) = rep.energy {
        lines.push(format!("  energy {e:.6}"));
    }
    if let Some(o) = &rep.overlap {
        lines.push(format!("  <psi_ini|psi_fin> = {:+.6} {:+.6}i", o.re, o.im));
    }
    if let Some(a) = &rep.analysis {
        let (dv, dphi, df) = match &a.error_bars {
            Some(b) => (
                format!(" ± {:.4}", b.visibility),
                format!(" ± {:.3}", b.phase / std::f64::consts::PI),
                b.fidelity.map(|f| format!(" ± {f:.4}")).unwrap_or_default(),
            ),
            None => Default::default(),
        };
        lines.push(format!(
            "  phase {:.3}{dphi} pi, visibility {:.4}{dv}",
            a.phase_pi, a.visibility
        ));
        lines.push(format!(
            "  P_HHHH {:.4}, P_VVVV {:.4}, fidelity {:.4}{df}, genuine 4-partite entanglement: {}",
            a.p_hhhh, a.p_vvvv, a.fidelity, a.witness
        ));
    }
    for c in &rep.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        lines.push(format!(
            "  [{mark}] {}: expected {}, got {}",
            c.name, c.expected, c.actual
        ));
    }
    lines.join("\n")
}

fn write_exports(reports: &[Report], format: ExportFormat, out: &Path) -> Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for rep in reports {
        for file in scenario::export(rep, format)? {
            let path = out.join(&file.name);
            fs::write(&path, file.contents)
                .with_context(|| format!("writing {}", path.display()))?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every scenario check passed.
fn execute(cli: Cli) -> Result<bool> {
    let opts = RunOptions {
        backend: cli.backend.map(Backend::from),
        seed: cli.seed,
    };
    match cli.command {
        Command::List => {
            let list = scenario::list_builtins();
            let width = list.iter().map(|b| b.name.len()).max().unwrap_or(0);
            for b in list {
                println!("{:width$}  {}", b.name, b.description);
            }
            Ok(true)
        }
        Command::Run { source, json } => {
            let reports = run_many(&load(&source)?, opts)?;
            if json {
                if let [one] = reports.as_slice() {
                    println!("{}", serde_json::to_string_pretty(one)?);
                } else {
                    println!("{}", serde_json::to_string_pretty(&reports)?);
                }
            } else {
                for rep in &reports {
                    println!("{}", summary(rep));
                }
            }
            Ok(reports.iter().all(|r| r.passed))
        }
        Command::Export {
            source,
            format,
            out,
        } => {
            let reports = run_many(&load(&source)?, opts)?;
            let format = match format {
                FormatArg::Json => ExportFormat::Json,
                FormatArg::Csv => ExportFormat::Csv,
            };
            write_exports(&reports, format, &out)?;
            if reports.is_empty() {
                bail!("nothing to export");
            }
            Ok(reports.iter().all(|r| r.passed))
        }
    }
}
