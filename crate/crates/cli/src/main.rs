//! `dce-sweep`: sweeps, threshold searches and reports for the two-mode
//! radiation of a flux-driven SQUID-terminated waveguide.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gaussian_dce::dce::{output_state, OccupationConvention};
use gaussian_dce_cli::sweep::{Panel, SweepVariable};
use gaussian_dce_cli::{
    config_file, discord_threshold_ledger, emit_report, fig1_spec, fig2_spec, find_threshold,
    run_sweep, CliError, LineParams, MeasureSelection, Pipeline, SweepSpec, ThresholdMeasure,
    ThresholdPipeline, ThresholdVariable, Units,
};

#[derive(Parser)]
#[command(
    name = "dce-sweep",
    version,
    about = "Two-mode pair radiation of a driven superconducting line: \
             entanglement, discord and coherence over drive and temperature"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Preset: measures vs drive amplitude at fixed temperature
    /// (panel a: 30 mK, b: 50 mK, c: 70 mK)
    Fig1 {
        #[arg(value_enum, default_value = "a")]
        panel: PanelAbc,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Preset: measures vs temperature, 10-120 mK
    /// (panel a: epsilon = 0.1, b: epsilon = 0.5)
    Fig2 {
        #[arg(value_enum, default_value = "a")]
        panel: PanelAb,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Custom sweep over drive amplitude or temperature
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Swept variable
        #[arg(long, value_enum)]
        var: VarArg,
        /// Lower end of the swept range (epsilon, or mK)
        #[arg(long)]
        lo: f64,
        /// Upper end of the swept range
        #[arg(long)]
        hi: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Comma-separated subset of E,sqrtD,sqrtC
        #[arg(long)]
        measures: Option<String>,
    },
    /// Locate the temperature (or amplitude) where a measure vanishes
    Threshold {
        #[command(flatten)]
        common: CommonArgs,
        /// Measure to bisect: E, D or C
        #[arg(long)]
        measure: String,
        /// Bisected variable
        #[arg(long, value_enum, default_value = "temperature")]
        var: VarArg,
        /// Lower end of the search range (default: 10 mK, or epsilon 0)
        #[arg(long)]
        lo: Option<f64>,
        /// Upper end of the search range (default: 120 mK, or epsilon 0.6)
        #[arg(long)]
        hi: Option<f64>,
    },
    /// Evaluate one parameter point through both pipelines
    Report {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PanelAbc {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum PanelAb {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarArg {
    Epsilon,
    Temperature,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// Calibrated occupation, twice Bose-Einstein at omega_d/2
    Paper,
    /// Plain Bose-Einstein
    Be,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineArg {
    Exact,
    Perturbative,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    Nats,
    Bits,
}

#[derive(Args)]
struct CommonArgs {
    /// Drive amplitude (0 <= epsilon < 1)
    #[arg(long)]
    epsilon: Option<f64>,
    /// Temperature in millikelvin
    #[arg(long)]
    temperature_mk: Option<f64>,
    /// Drive frequency omega_d/2pi in GHz (default 10)
    #[arg(long)]
    omega_d_ghz: Option<f64>,
    /// Drive angular frequency omega_d in rad/s (overrides --omega-d-ghz)
    #[arg(long)]
    omega_d_rad: Option<f64>,
    /// Static effective length in mm (default 0.5)
    #[arg(long)]
    l_eff_mm: Option<f64>,
    /// Line speed of light in m/s (default 1.2e8)
    #[arg(long)]
    v_mps: Option<f64>,
    /// Temperature-to-occupation convention
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    /// Measure evaluation route
    #[arg(long, value_enum)]
    pipeline: Option<PipelineArg>,
    /// Unit for entropic quantities
    #[arg(long, value_enum)]
    units: Option<UnitsArg>,
    /// Write output to this file instead of stdout (report: JSON record)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permit amplitude ranges reaching f >= 0.08
    #[arg(long)]
    allow_nonperturbative: bool,
    /// Key-value config file; flags override file entries
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Everything a subcommand needs after merging flags, config file and
/// defaults (flags win over the file, the file wins over defaults).
struct Resolved {
    epsilon: Option<f64>,
    temperature_mk: Option<f64>,
    line: LineParams,
    pipeline: Pipeline,
    units: Units,
    out: Option<PathBuf>,
    allow_nonperturbative: bool,
}

fn resolve(common: &CommonArgs) -> Result<Resolved, CliError> {
    let file: BTreeMap<String, String> = match &common.config {
        Some(path) => config_file::parse_file(path)?,
        None => BTreeMap::new(),
    };
    let file_f64 = |key: &str| -> Result<Option<f64>, CliError> {
        file.get(key)
            .map(|v| config_file::parse_f64(key, v))
            .transpose()
    };

    let epsilon = match common.epsilon {
        Some(v) => Some(v),
        None => file_f64("epsilon")?,
    };
    let temperature_mk = match common.temperature_mk {
        Some(v) => Some(v),
        None => file_f64("temperature_mk")?,
    };

    let omega_d = if let Some(rad) = common.omega_d_rad {
        rad
    } else if let Some(ghz) = common.omega_d_ghz {
        2.0 * std::f64::consts::PI * 1e9 * ghz
    } else if let Some(rad) = file_f64("omega_d_rad")? {
        rad
    } else if let Some(ghz) = file_f64("omega_d_ghz")? {
        2.0 * std::f64::consts::PI * 1e9 * ghz
    } else {
        2.0 * std::f64::consts::PI * 1e10
    };

    let l_eff0 = match common.l_eff_mm {
        Some(v) => v * 1e-3,
        None => file_f64("l_eff_mm")?.map(|v| v * 1e-3).unwrap_or(0.5e-3),
    };
    let v_mps = match common.v_mps {
        Some(v) => v,
        None => file_f64("v_mps")?.unwrap_or(1.2e8),
    };
    if omega_d <= 0.0 || l_eff0 <= 0.0 || v_mps <= 0.0 {
        return Err(CliError::Config(
            "drive frequency, effective length and line speed must be positive".into(),
        ));
    }

    let convention = match common.convention {
        Some(ConventionArg::Paper) => OccupationConvention::Calibrated,
        Some(ConventionArg::Be) => OccupationConvention::BoseEinstein,
        None => match file.get("convention").map(String::as_str) {
            Some("paper") => OccupationConvention::Calibrated,
            Some("be") => OccupationConvention::BoseEinstein,
            Some(other) => {
                return Err(CliError::Config(format!(
                    "key `convention`: `{other}` is not one of paper, be"
                )))
            }
            None => OccupationConvention::Calibrated,
        },
    };
    let pipeline = match common.pipeline {
        Some(PipelineArg::Exact) => Pipeline::Exact,
        Some(PipelineArg::Perturbative) => Pipeline::Perturbative,
        Some(PipelineArg::Both) => Pipeline::Both,
        None => match file.get("pipeline").map(String::as_str) {
            Some("exact") => Pipeline::Exact,
            Some("perturbative") => Pipeline::Perturbative,
            Some("both") => Pipeline::Both,
            Some(other) => {
                return Err(CliError::Config(format!(
                    "key `pipeline`: `{other}` is not one of exact, perturbative, both"
                )))
            }
            None => Pipeline::Perturbative,
        },
    };
    let units = match common.units {
        Some(UnitsArg::Nats) => Units::Nats,
        Some(UnitsArg::Bits) => Units::Bits,
        None => match file.get("units").map(String::as_str) {
            Some("nats") => Units::Nats,
            Some("bits") => Units::Bits,
            Some(other) => {
                return Err(CliError::Config(format!(
                    "key `units`: `{other}` is not one of nats, bits"
                )))
            }
            None => Units::Nats,
        },
    };
    let out = common
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from));
    let allow_nonperturbative = common.allow_nonperturbative
        || match file.get("allow_nonperturbative") {
            Some(v) => config_file::parse_bool("allow_nonperturbative", v)?,
            None => false,
        };

    Ok(Resolved {
        epsilon,
        temperature_mk,
        line: LineParams {
            omega_d,
            l_eff0,
            v: v_mps,
            convention,
        },
        pipeline,
        units,
        out,
        allow_nonperturbative,
    })
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(CliError::Io),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn single_pipeline(pipeline: Pipeline) -> Vec<ThresholdPipeline> {
    match pipeline {
        Pipeline::Exact => vec![ThresholdPipeline::Exact],
        Pipeline::Perturbative => vec![ThresholdPipeline::Perturbative],
        Pipeline::Both => vec![ThresholdPipeline::Exact, ThresholdPipeline::Perturbative],
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fig1 { panel, common } => {
            let r = resolve(&common)?;
            let panel = match panel {
                PanelAbc::A => Panel::A,
                PanelAbc::B => Panel::B,
                PanelAbc::C => Panel::C,
            };
            let spec = fig1_spec(panel, r.line, r.pipeline, r.units);
            write_output(&r.out, &run_sweep(&spec)?.to_csv())
        }
        Command::Fig2 { panel, common } => {
            let r = resolve(&common)?;
            let panel = match panel {
                PanelAb::A => Panel::A,
                PanelAb::B => Panel::B,
            };
            let spec = fig2_spec(panel, r.line, r.pipeline, r.units);
            write_output(&r.out, &run_sweep(&spec)?.to_csv())
        }
        Command::Sweep {
            common,
            var,
            lo,
            hi,
            points,
            measures,
        } => {
            let r = resolve(&common)?;
            let measures = match measures {
                Some(text) => MeasureSelection::parse(&text)?,
                None => MeasureSelection::default(),
            };
            let (variable, label) = match var {
                VarArg::Epsilon => (SweepVariable::Epsilon, "sweep-epsilon"),
                VarArg::Temperature => (SweepVariable::TemperatureMk, "sweep-temperature"),
            };
            let spec = SweepSpec {
                variable,
                lo,
                hi,
                count: points,
                fixed_epsilon: match variable {
                    SweepVariable::TemperatureMk => r.epsilon.ok_or_else(|| {
                        CliError::Config("temperature sweep needs --epsilon".into())
                    })?,
                    SweepVariable::Epsilon => 0.0,
                },
                fixed_temperature_mk: match variable {
                    SweepVariable::Epsilon => r.temperature_mk.ok_or_else(|| {
                        CliError::Config("amplitude sweep needs --temperature-mk".into())
                    })?,
                    SweepVariable::TemperatureMk => 0.0,
                },
                line: r.line,
                measures,
                pipeline: r.pipeline,
                units: r.units,
                allow_nonperturbative: r.allow_nonperturbative,
                label: label.to_string(),
            };
            write_output(&r.out, &run_sweep(&spec)?.to_csv())
        }
        Command::Threshold {
            common,
            measure,
            var,
            lo,
            hi,
        } => {
            let r = resolve(&common)?;
            let measure = ThresholdMeasure::parse(&measure)?;
            let (variable, lo, hi) = match var {
                VarArg::Temperature => (
                    ThresholdVariable::TemperatureMk {
                        epsilon: r.epsilon.ok_or_else(|| {
                            CliError::Config("temperature threshold needs --epsilon".into())
                        })?,
                    },
                    lo.unwrap_or(10.0),
                    hi.unwrap_or(120.0),
                ),
                VarArg::Epsilon => (
                    ThresholdVariable::Epsilon {
                        temperature_mk: r.temperature_mk.ok_or_else(|| {
                            CliError::Config("amplitude threshold needs --temperature-mk".into())
                        })?,
                    },
                    lo.unwrap_or(0.0),
                    hi.unwrap_or(0.6),
                ),
            };
            let mut text = String::new();
            for pipeline in single_pipeline(r.pipeline) {
                let result = find_threshold(measure, pipeline, variable, lo, hi, &r.line)?;
                text.push_str(&result.render());
                text.push('\n');
            }
            if measure == ThresholdMeasure::Discord {
                text.push_str(&discord_threshold_ledger(&r.line)?);
            }
            write_output(&r.out, &text)
        }
        Command::Report { common } => {
            let r = resolve(&common)?;
            let epsilon = r
                .epsilon
                .ok_or_else(|| CliError::Config("report needs --epsilon".into()))?;
            let t_mk = r
                .temperature_mk
                .ok_or_else(|| CliError::Config("report needs --temperature-mk".into()))?;
            let drive = r.line.drive(epsilon)?;
            let env = r.line.environment(t_mk)?;
            let state = output_state(&drive, &env)?;
            let (text, json) = emit_report(&state, r.units)?;
            print!("{text}");
            if let Some(path) = &r.out {
                std::fs::write(path, json).map_err(CliError::Io)?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("dce-sweep: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
