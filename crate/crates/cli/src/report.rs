//! Single-point state report: formatted text plus a machine-readable JSON
//! record.

use gaussian_dce::dce::{self, perturbative_measures, DceState};
use gaussian_dce::measures::measure_report;
use serde_json::json;

use crate::{format_value, CliError, Units};

/// Evaluates one output state through both pipelines and renders the result.
///
/// Returns the human-readable text and the JSON record; the text carries the
/// parameters, conventions and constants in force so a report is
/// self-contained.
pub fn emit_report(state: &DceState, units: Units) -> Result<(String, String), CliError> {
    let exact = measure_report(state.cm())?;
    let pert = perturbative_measures(state.f(), state.n_th());

    let mut diagnostics: Vec<String> = state.warnings().iter().map(|d| d.to_string()).collect();
    diagnostics.extend(exact.diagnostics.iter().map(|d| d.to_string()));
    diagnostics.extend(pert.diagnostics.iter().map(|d| d.to_string()));
    diagnostics.dedup();

    let u = |nats: f64| units.from_nats(nats);
    let drive = state.drive();
    let env = state.environment();

    let mut text = String::new();
    text.push_str("driven-line two-mode output state\n");
    text.push_str("=================================\n");
    text.push_str(&format!(
        "epsilon:          {}\n",
        format_value(drive.epsilon)
    ));
    text.push_str(&format!(
        "omega_d_rad_s:    {}  ({} GHz drive)\n",
        format_value(drive.omega_d),
        format_value(drive.omega_d / (2.0 * std::f64::consts::PI * 1e9))
    ));
    text.push_str(&format!(
        "l_eff0_m:         {}\n",
        format_value(drive.l_eff0)
    ));
    text.push_str(&format!("v_mps:            {}\n", format_value(drive.v)));
    text.push_str(&format!(
        "temperature_mk:   {}\n",
        format_value(env.temperature * 1e3)
    ));
    text.push_str(&format!(
        "occupation:       {}\n",
        match env.convention {
            dce::OccupationConvention::Calibrated => "paper (2x Bose-Einstein at omega_d/2)",
            dce::OccupationConvention::BoseEinstein => "be (Bose-Einstein at omega_d/2)",
        }
    ));
    text.push_str(&format!("f:                {}\n", format_value(state.f())));
    text.push_str(&format!(
        "n_th:             {}\n",
        format_value(state.n_th())
    ));
    text.push_str(&format!("units:            {}\n", units.label()));
    text.push_str(&format!(
        "constants:        hbar={} J.s  k_B={} J/K\n",
        format_value(dce::HBAR),
        format_value(dce::BOLTZMANN)
    ));
    text.push('\n');
    text.push_str("measure      exact            perturbative\n");
    text.push_str(&format!(
        "E            {}   {}\n",
        format_value(u(exact.negativity)),
        format_value(u(pert.negativity))
    ));
    text.push_str(&format!(
        "D            {}   {}\n",
        format_value(u(exact.discord)),
        format_value(u(pert.discord))
    ));
    text.push_str(&format!(
        "C            {}   {}\n",
        format_value(u(exact.coherence)),
        format_value(u(pert.coherence))
    ));
    text.push('\n');
    text.push_str(&format!(
        "symplectic_eigenvalues: {}\n",
        exact
            .symplectic_eigenvalues
            .iter()
            .map(|v| format_value(*v))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    text.push_str(&format!(
        "pt_min_eigenvalue:      {}\n",
        format_value(exact.pt_min_eigenvalue)
    ));
    text.push_str(&format!(
        "mean_occupations:       {}\n",
        exact
            .mean_occupations
            .iter()
            .map(|v| format_value(*v))
            .collect::<Vec<_>>()
            .join(" ")
    ));
    text.push_str(&format!(
        "diagnostics:            {}\n",
        if diagnostics.is_empty() {
            "none".to_string()
        } else {
            diagnostics.join(";")
        }
    ));

    let record = json!({
        "tool": format!("dce-sweep v{} ({})", env!("CARGO_PKG_VERSION"), crate::build_id()),
        "parameters": {
            "epsilon": drive.epsilon,
            "omega_d_rad_s": drive.omega_d,
            "l_eff0_m": drive.l_eff0,
            "v_mps": drive.v,
            "temperature_mk": env.temperature * 1e3,
            "occupation_convention": match env.convention {
                dce::OccupationConvention::Calibrated => "paper",
                dce::OccupationConvention::BoseEinstein => "be",
            },
            "f": state.f(),
            "n_th": state.n_th(),
        },
        "constants": { "hbar_J_s": dce::HBAR, "k_B_J_per_K": dce::BOLTZMANN },
        "units": units.label(),
        "exact": {
            "negativity": u(exact.negativity),
            "discord": u(exact.discord),
            "coherence": u(exact.coherence),
            "symplectic_eigenvalues": exact.symplectic_eigenvalues,
            "pt_min_eigenvalue": exact.pt_min_eigenvalue,
            "mean_occupations": exact.mean_occupations,
        },
        "perturbative": {
            "negativity": u(pert.negativity),
            "discord": u(pert.discord),
            "coherence": u(pert.coherence),
        },
        "diagnostics": diagnostics,
    });
    let json_text = serde_json::to_string_pretty(&record)
        .map_err(|e| CliError::Config(format!("could not serialize report: {e}")))?;
    Ok((text, json_text))
}
