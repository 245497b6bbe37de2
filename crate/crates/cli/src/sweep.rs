//! Parameter sweeps over drive amplitude or temperature, emitted as CSV
//! with a `#`-prefixed metadata header.

use gaussian_dce::dce::{
    self, dce_covariance, perturbative_measures, PERTURBATIVE_F_LIMIT,
};
use gaussian_dce::measures::{measure_report, Diagnostic};

use crate::{format_value, CliError, LineParams, Pipeline, Units};

/// Swept axis; the other parameter is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Epsilon,
    TemperatureMk,
}

impl SweepVariable {
    pub fn label(self) -> &'static str {
        match self {
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::TemperatureMk => "temperature_mk",
        }
    }
}

/// Which measure columns are evaluated; excluded measures are emitted as
/// empty CSV cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSelection {
    pub negativity: bool,
    pub sqrt_discord: bool,
    pub sqrt_coherence: bool,
}

impl Default for MeasureSelection {
    fn default() -> Self {
        Self {
            negativity: true,
            sqrt_discord: true,
            sqrt_coherence: true,
        }
    }
}

impl MeasureSelection {
    pub fn is_empty(&self) -> bool {
        !(self.negativity || self.sqrt_discord || self.sqrt_coherence)
    }

    /// Parses a comma-separated subset of `E,sqrtD,sqrtC`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut sel = Self {
            negativity: false,
            sqrt_discord: false,
            sqrt_coherence: false,
        };
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token {
                "E" => sel.negativity = true,
                "sqrtD" => sel.sqrt_discord = true,
                "sqrtC" => sel.sqrt_coherence = true,
                other => {
                    return Err(CliError::Config(format!(
                        "unknown measure `{other}` (expected E, sqrtD, sqrtC)"
                    )))
                }
            }
        }
        if sel.is_empty() {
            return Err(CliError::Config("no measures selected".into()));
        }
        Ok(sel)
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    /// Drive amplitude used when sweeping temperature.
    pub fixed_epsilon: f64,
    /// Temperature (mK) used when sweeping amplitude.
    pub fixed_temperature_mk: f64,
    pub line: LineParams,
    pub measures: MeasureSelection,
    pub pipeline: Pipeline,
    pub units: Units,
    pub allow_nonperturbative: bool,
    /// Free-text label echoed in the CSV header.
    pub label: String,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.lo < self.hi) {
            return Err(CliError::Config(format!(
                "sweep range must satisfy lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.count < 2 {
            return Err(CliError::Config(format!(
                "sweep needs at least 2 points, got {}",
                self.count
            )));
        }
        if self.measures.is_empty() {
            return Err(CliError::Config("no measures selected".into()));
        }
        match self.variable {
            SweepVariable::Epsilon => {
                if self.lo < 0.0 || self.hi >= 1.0 {
                    return Err(CliError::Config(format!(
                        "drive amplitude range [{}, {}] outside [0, 1)",
                        self.lo, self.hi
                    )));
                }
                let f_hi = self.line.f_of_epsilon(self.hi);
                if f_hi >= PERTURBATIVE_F_LIMIT && !self.allow_nonperturbative {
                    return Err(CliError::Config(format!(
                        "amplitude range reaches f = {f_hi:.4} >= {PERTURBATIVE_F_LIMIT}; \
                         pass --allow-nonperturbative to sweep it anyway"
                    )));
                }
                if self.fixed_temperature_mk <= 0.0 {
                    return Err(CliError::Config(
                        "temperature must be positive".to_string(),
                    ));
                }
            }
            SweepVariable::TemperatureMk => {
                if self.lo <= 0.0 {
                    return Err(CliError::Config(
                        "temperature sweep must start above 0 mK".to_string(),
                    ));
                }
                if !(0.0..1.0).contains(&self.fixed_epsilon) {
                    return Err(CliError::Config(format!(
                        "drive amplitude {} outside [0, 1)",
                        self.fixed_epsilon
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One grid point. Measure values are in the spec's units; `None` means the
/// measure was not selected.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub epsilon: f64,
    pub f: f64,
    pub t_mk: f64,
    pub n_th: f64,
    pub negativity: Option<f64>,
    pub sqrt_discord: Option<f64>,
    pub sqrt_coherence: Option<f64>,
    pub diag: String,
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Renders the table as CSV: `#` metadata header, one fixed column line,
    /// one row per grid point, nine significant digits throughout.
    pub fn to_csv(&self) -> String {
        let spec = &self.spec;
        let mut out = String::new();
        out.push_str(&format!(
            "# dce-sweep v{} ({})\n",
            env!("CARGO_PKG_VERSION"),
            crate::build_id()
        ));
        out.push_str(&format!("# label: {}\n", spec.label));
        out.push_str(&format!(
            "# constants: hbar_J_s={} k_B_J_per_K={}\n",
            format_value(dce::HBAR),
            format_value(dce::BOLTZMANN)
        ));
        out.push_str(&format!(
            "# line: omega_d_rad_s={} l_eff0_m={} v_mps={}\n",
            format_value(spec.line.omega_d),
            format_value(spec.line.l_eff0),
            format_value(spec.line.v)
        ));
        out.push_str(&format!(
            "# convention: occupation={} units={} pipeline={}\n",
            spec.line.convention_token(),
            spec.units.label(),
            spec.pipeline.label()
        ));
        let fixed = match spec.variable {
            SweepVariable::Epsilon => format!(
                "temperature_mk={}",
                format_value(spec.fixed_temperature_mk)
            ),
            SweepVariable::TemperatureMk => {
                format!("epsilon={}", format_value(spec.fixed_epsilon))
            }
        };
        out.push_str(&format!(
            "# sweep: variable={} lo={} hi={} points={} {}\n",
            spec.variable.label(),
            format_value(spec.lo),
            format_value(spec.hi),
            spec.count,
            fixed
        ));
        out.push_str("epsilon,f,T_mK,n_th,E,sqrtD,sqrtC,diag\n");
        for row in &self.rows {
            let opt = |v: Option<f64>| v.map(format_value).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                format_value(row.epsilon),
                format_value(row.f),
                format_value(row.t_mk),
                format_value(row.n_th),
                opt(row.negativity),
                opt(row.sqrt_discord),
                opt(row.sqrt_coherence),
                row.diag
            ));
        }
        out
    }
}

fn diag_token(d: &Diagnostic) -> String {
    d.to_string()
}

/// Raw measures (nats) for one grid point under one pipeline, plus the
/// diagnostic tokens the evaluation produced.
fn evaluate_point(
    f: f64,
    n_th: f64,
    pipeline: Pipeline,
    tokens: &mut Vec<String>,
) -> Result<(f64, f64, f64), CliError> {
    match pipeline {
        Pipeline::Perturbative => {
            let pm = perturbative_measures(f, n_th);
            for d in &pm.diagnostics {
                // the f-limit warning is emitted once per row, not per pipeline
                if !matches!(d, Diagnostic::NonPerturbative { .. }) {
                    tokens.push(diag_token(d));
                }
            }
            Ok((pm.negativity, pm.discord, pm.coherence))
        }
        Pipeline::Exact => {
            let report = measure_report(&dce_covariance(f, n_th)?)?;
            for d in &report.diagnostics {
                tokens.push(diag_token(d));
            }
            Ok((report.negativity, report.discord, report.coherence))
        }
        Pipeline::Both => {
            let exact = evaluate_point(f, n_th, Pipeline::Exact, tokens)?;
            let mut pert_tokens = Vec::new();
            let pert = evaluate_point(f, n_th, Pipeline::Perturbative, &mut pert_tokens)?;
            tokens.push(format!("pert_E={}", format_value(pert.0)));
            tokens.push(format!("pert_sqrtD={}", format_value(pert.1.sqrt())));
            tokens.push(format!("pert_sqrtC={}", format_value(pert.2.sqrt())));
            tokens.extend(pert_tokens);
            Ok(exact)
        }
    }
}

/// Runs the sweep; rows come out in grid order and the whole computation is
/// pure, so equal specs give equal tables.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable, CliError> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let x = spec.lo + (spec.hi - spec.lo) * i as f64 / (spec.count - 1) as f64;
        let (epsilon, t_mk) = match spec.variable {
            SweepVariable::Epsilon => (x, spec.fixed_temperature_mk),
            SweepVariable::TemperatureMk => (spec.fixed_epsilon, x),
        };
        let drive = spec.line.drive(epsilon)?;
        let f = drive.small_parameter();
        let n_th = spec.line.occupation_at_half_drive(t_mk)?;

        let mut tokens = Vec::new();
        if f >= PERTURBATIVE_F_LIMIT {
            tokens.push(diag_token(&Diagnostic::NonPerturbative { f }));
        }
        let (e, d, c) = evaluate_point(f, n_th, spec.pipeline, &mut tokens)?;
        tokens.dedup();

        let u = spec.units;
        rows.push(SweepRow {
            epsilon,
            f,
            t_mk,
            n_th,
            negativity: spec.measures.negativity.then(|| u.from_nats(e)),
            sqrt_discord: spec.measures.sqrt_discord.then(|| u.from_nats(d).sqrt()),
            sqrt_coherence: spec.measures.sqrt_coherence.then(|| u.from_nats(c).sqrt()),
            diag: tokens.join(";"),
        });
    }
    Ok(SweepTable {
        spec: spec.clone(),
        rows,
    })
}

/// Panel selector for the preset sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    A,
    B,
    C,
}

impl Panel {
    pub fn label(self) -> &'static str {
        match self {
            Panel::A => "a",
            Panel::B => "b",
            Panel::C => "c",
        }
    }
}

/// Measures against drive amplitude at fixed temperature (panels a/b/c:
/// 30, 50, 70 mK). The amplitude axis runs to ε = 0.6112, whose final grid
/// point sits just past f = 0.08 and deliberately carries the
/// non-perturbative warning as a marker of the range edge.
pub fn fig1_spec(panel: Panel, line: LineParams, pipeline: Pipeline, units: Units) -> SweepSpec {
    let t_mk = match panel {
        Panel::A => 30.0,
        Panel::B => 50.0,
        Panel::C => 70.0,
    };
    SweepSpec {
        variable: SweepVariable::Epsilon,
        lo: 0.0,
        hi: 0.6112,
        count: 101,
        fixed_epsilon: 0.0,
        fixed_temperature_mk: t_mk,
        line,
        measures: MeasureSelection::default(),
        pipeline,
        units,
        allow_nonperturbative: true,
        label: format!("fig1{}", panel.label()),
    }
}

/// Measures against temperature (10..120 mK in 1 mK steps) at fixed drive
/// amplitude (panel a: ε = 0.1, panel b: ε = 0.5).
pub fn fig2_spec(panel: Panel, line: LineParams, pipeline: Pipeline, units: Units) -> SweepSpec {
    let epsilon = match panel {
        Panel::A => 0.1,
        Panel::B => 0.5,
        Panel::C => 0.1,
    };
    SweepSpec {
        variable: SweepVariable::TemperatureMk,
        lo: 10.0,
        hi: 120.0,
        count: 111,
        fixed_epsilon: epsilon,
        fixed_temperature_mk: 0.0,
        line,
        measures: MeasureSelection::default(),
        pipeline,
        units,
        allow_nonperturbative: false,
        label: format!("fig2{}", panel.label()),
    }
}
