//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    compare_family, csv_string, format_g9, parse_measures, records_to_json, report_to_json,
    reproduce_figure, run_sweep, Axis, Measure, SweepGrid, SweepTemplate,
};
use crate::entanglement::{concurrence_with, residual_tangle, TangleBreakdown};
use crate::error::{Error, Result};
use crate::horizon::{build_reduced_with, dress_state, Family, ModelKind, ModelSpec};
use crate::numkernel::Tolerances;
use crate::qstate::{read_state, state_to_json, QubitLabel, State};
use crate::teleport::{fully_entangled_fraction, teleportation_fidelity, MIN_FEF_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Worker threads for sweeps; unset means one per core.
pub const THREADS_ENV: &str = "HORIZONQ_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "horizonq",
    version,
    about = "Entanglement and teleportation fidelity of qubit states near black holes"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled quantities.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Largest tolerated Hermiticity defect.
    #[arg(long, global = true)]
    pub hermitian_tol: Option<f64>,
    /// Eigenvalues down to minus this are clamped to zero before square roots.
    #[arg(long, global = true)]
    pub psd_floor: Option<f64>,
    #[arg(long, global = true)]
    pub max_sweeps: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an undressed three-qubit state.
    State {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dress a state near a horizon and reduce it.
    Dress {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Write the full dressed pure state, inaccessible modes included.
        #[arg(long)]
        pure: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate measures on a stored state.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        concurrence: bool,
        #[arg(long)]
        tangle: bool,
        #[arg(long)]
        fidelity: bool,
        /// Also estimate the fully entangled fraction by sampling.
        #[arg(long)]
        fef: bool,
        #[arg(long, default_value_t = 4000)]
        budget: usize,
        /// Pivot party for the tangle.
        #[arg(long, default_value = "A")]
        pivot: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate measures over a parameter grid.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// `name:start:stop:step`, names omega, temperature, dilaton, charge, mass.
        #[arg(long)]
        axis1: String,
        #[arg(long)]
        axis2: Option<String>,
        /// Comma separated: concurrence, one_tangle, residual_tangle, n_value, fidelity, useful.
        #[arg(long)]
        measures: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CSV data behind a figure.
    Reproduce {
        #[arg(long)]
        figure: u32,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Diff the published matrices of a family against computed ones.
    Crosscheck {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ScenarioArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub model: ModelKind,
    #[arg(long)]
    pub mass: Option<f64>,
    #[arg(long = "temp", alias = "temperature")]
    pub temperature: Option<f64>,
    #[arg(long)]
    pub dilaton: Option<f64>,
    #[arg(long)]
    pub charge: Option<f64>,
    #[arg(long)]
    pub omega: Option<f64>,
    /// Party traced out after the inaccessible modes.
    #[arg(long)]
    pub trace_qubit: Option<String>,
    /// Parties near the horizon.
    #[arg(long = "dress", value_delimiter = ',', default_value = "B,C")]
    pub dressed: Vec<String>,
}

impl ScenarioArgs {
    /// A dilaton model without `--mass` uses `M = 1`.
    fn model_spec(&self) -> ModelSpec {
        let mass = match (self.model, self.mass) {
            (ModelKind::Dilaton, None) => Some(1.0),
            (_, m) => m,
        };
        ModelSpec {
            kind: Some(self.model),
            mass,
            temperature: self.temperature,
            dilaton: self.dilaton,
            charge: self.charge,
        }
    }

    fn dressed(&self) -> Vec<QubitLabel> {
        self.dressed
            .iter()
            .map(|s| QubitLabel::new(s.trim()))
            .collect()
    }

    fn trace(&self) -> Option<QubitLabel> {
        self.trace_qubit.as_deref().map(QubitLabel::new)
    }

    fn omega(&self) -> Result<f64> {
        self.omega
            .ok_or_else(|| Error::Config("--omega is required".into()))
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Label(_) | Error::Domain(_) | Error::Unsupported(_) => EXIT_USAGE,
        Error::Shape(_) | Error::Contract(_) | Error::Numeric(_) | Error::NotPsd { .. } => {
            EXIT_NUMERIC
        }
        Error::Io { .. } | Error::Format { .. } => EXIT_IO,
    }
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code. Errors are reported on standard error.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_with_pool(&cfg) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run_with_pool(cfg: &CliConfig) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker threads: {e}")))?;
    pool.install(|| run(cfg))
}

fn tolerances(cfg: &CliConfig) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for (name, v) in [
        ("hermitian-tol", cfg.hermitian_tol),
        ("psd-floor", cfg.psd_floor),
    ] {
        if let Some(v) = v {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!("--{name} must be non-negative")));
            }
        }
    }
    if let Some(v) = cfg.hermitian_tol {
        tol.hermitian = v;
    }
    if let Some(v) = cfg.psd_floor {
        tol.psd_floor = v;
    }
    if let Some(v) = cfg.max_sweeps {
        tol.max_sweeps = v;
    }
    Ok(tol)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn json_only(cfg: &CliConfig, what: &str) -> Result<()> {
    if cfg.format == Format::Csv {
        return Err(Error::Config(format!("{what} output is JSON only")));
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn run(cfg: &CliConfig) -> Result<()> {
    let tol = tolerances(cfg)?;
    match &cfg.command {
        Command::State { family, out } => {
            json_only(cfg, "state")?;
            let text = state_to_json(&State::Pure(family.state()));
            emit(out.as_deref(), &with_newline(text))
        }
        Command::Dress {
            scenario,
            pure,
            out,
        } => {
            json_only(cfg, "state")?;
            let model = scenario.model_spec().to_model()?;
            let amps = crate::horizon::mode_amplitudes(&model, scenario.omega()?)?;
            let state = if *pure {
                if scenario.trace_qubit.is_some() {
                    return Err(Error::Config(
                        "--pure keeps every mode; drop --trace-qubit".into(),
                    ));
                }
                State::Pure(dress_state(
                    &scenario.family.state(),
                    &scenario.dressed(),
                    amps,
                )?)
            } else {
                State::Density(build_reduced_with(
                    scenario.family,
                    &scenario.dressed(),
                    scenario.trace().as_ref(),
                    amps,
                )?)
            };
            emit(out.as_deref(), &with_newline(state_to_json(&state)))
        }
        Command::Measure {
            input,
            concurrence,
            tangle,
            fidelity,
            fef,
            budget,
            pivot,
            out,
        } => {
            let report = measure(
                input,
                MeasureFlags {
                    concurrence: *concurrence,
                    tangle: *tangle,
                    fidelity: *fidelity,
                    fef: *fef,
                },
                *budget,
                cfg.seed,
                &QubitLabel::new(pivot.as_str()),
                &tol,
            )?;
            let text = match cfg.format {
                Format::Json => {
                    with_newline(serde_json::to_string_pretty(&report).expect("report serializes"))
                }
                Format::Csv => report.to_csv(),
            };
            emit(out.as_deref(), &text)
        }
        Command::Sweep {
            scenario,
            axis1,
            axis2,
            measures,
            out,
        } => {
            let measures = parse_measures(measures)?;
            let grid = SweepGrid::new(
                axis1.parse::<Axis>()?,
                axis2.as_deref().map(str::parse::<Axis>).transpose()?,
            )?;
            let mut tpl = SweepTemplate::new(scenario.family, scenario.model_spec());
            tpl.omega = scenario.omega;
            tpl.dressed = scenario.dressed();
            tpl.trace = match scenario.trace() {
                Some(t) => Some(t),
                None if measures.iter().any(|m| m.needs_pair()) => Some(QubitLabel::b()),
                None => None,
            };
            let records = run_sweep(&tpl, &grid, &measures)?;
            let text = match cfg.format {
                Format::Csv => csv_string(&records, &measures),
                Format::Json => with_newline(records_to_json(&records)),
            };
            emit(out.as_deref(), &text)
        }
        Command::Reproduce { figure, outdir } => {
            for path in reproduce_figure(*figure, outdir)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Crosscheck { scenario, out } => {
            json_only(cfg, "crosscheck")?;
            let model = scenario.model_spec().to_model()?;
            let amps = crate::horizon::mode_amplitudes(&model, scenario.omega()?)?;
            let reports = compare_family(scenario.family, amps)?;
            emit(out.as_deref(), &with_newline(report_to_json(&reports)))
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct MeasureFlags {
    concurrence: bool,
    tangle: bool,
    fidelity: bool,
    fef: bool,
}

/// Output of `measure`. Absent fields were not requested or do not apply.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MeasureReport {
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concurrence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub useful: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fully_entangled_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangle: Option<TangleBreakdown>,
}

impl MeasureReport {
    fn to_csv(&self) -> String {
        let mut rows = vec!["measure,value".to_string()];
        let mut push = |name: &str, v: Option<f64>| {
            if let Some(v) = v {
                rows.push(format!("{name},{}", format_g9(v)));
            }
        };
        push(Measure::Concurrence.as_str(), self.concurrence);
        push(Measure::NValue.as_str(), self.n_value);
        push(Measure::Fidelity.as_str(), self.fidelity);
        push(
            Measure::Useful.as_str(),
            self.useful.map(|u| f64::from(u8::from(u))),
        );
        push("fully_entangled_fraction", self.fully_entangled_fraction);
        if let Some(t) = &self.tangle {
            push(Measure::OneTangle.as_str(), Some(t.one_tangle));
            push(Measure::ResidualTangle.as_str(), Some(t.residual));
        }
        rows.push(String::new());
        rows.join("\n")
    }
}

/// With no flags, every measure that applies to the state is computed.
fn measure(
    input: &Path,
    flags: MeasureFlags,
    budget: usize,
    seed: u64,
    pivot: &QubitLabel,
    tol: &Tolerances,
) -> Result<MeasureReport> {
    if flags.fef && budget < MIN_FEF_BUDGET {
        return Err(Error::Config(format!(
            "--budget must be at least {MIN_FEF_BUDGET}"
        )));
    }
    let rho = read_state(input)?.into_density();
    let n = rho.num_qubits();
    let none = !(flags.concurrence || flags.tangle || flags.fidelity || flags.fef);
    let mut report = MeasureReport {
        labels: rho.labels().iter().map(|l| l.to_string()).collect(),
        ..Default::default()
    };
    if flags.concurrence || (none && n == 2) {
        report.concurrence = Some(concurrence_with(&rho, tol)?);
    }
    if flags.fidelity || (none && n == 2) {
        let f = teleportation_fidelity(&rho)?;
        report.n_value = Some(f.n_value);
        report.fidelity = Some(f.fidelity);
        report.useful = Some(f.useful);
    }
    if flags.fef {
        report.fully_entangled_fraction = Some(fully_entangled_fraction(&rho, budget, seed)?);
    }
    if flags.tangle || (none && n == 3) {
        report.tangle = Some(residual_tangle(&rho, pivot)?);
    }
    if none && n != 2 && n != 3 {
        return Err(Error::Shape(format!(
            "no measures apply to a {n}-qubit state"
        )));
    }
    Ok(report)
}
