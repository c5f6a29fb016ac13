//! Named, reproducible parameter sweeps producing plot-ready tables.
//!
//! Each named scenario fixes the register size, the drive-amplitude family,
//! the decay rate or decay grid, the initial state, and the observables; the
//! only free knobs are the output resolutions. Rows are ordered by
//! (family parameter, sweep value) and are bitwise deterministic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::SystemConfig;
use crate::entangle::{
    fidelity, optimize_local_phases, reduced_single_qubit, three_tangle, von_neumann_entropy,
    DensityMatrix,
};
use crate::error::{SimError, SimResult};
use crate::evolve::{linear_grid, normalize, propagate_grid, PropagationResult};
use crate::operator::build_hamiltonian;
use crate::state::{ghz_state, InitialState, SPIN_COHERENT_DEFAULT_PHI};

/// Time grid shared by the named time-series scenarios: 1001 points over
/// two full drive revivals.
pub const DEFAULT_TIME_POINTS: usize = 1001;
pub const DEFAULT_TIME_SPAN: f64 = 4.0 * std::f64::consts::PI;
/// Default resolution of the decay-rate sweeps.
pub const DEFAULT_PARAM_POINTS: usize = 101;

/// The named sweeps, plus `custom` for configurations assembled by hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioName {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4a,
    Fig4b,
    Custom,
}

impl ScenarioName {
    pub const ALL_NAMED: [ScenarioName; 10] = [
        ScenarioName::Fig2a,
        ScenarioName::Fig2b,
        ScenarioName::Fig2c,
        ScenarioName::Fig2d,
        ScenarioName::Fig3a,
        ScenarioName::Fig3b,
        ScenarioName::Fig3c,
        ScenarioName::Fig3d,
        ScenarioName::Fig4a,
        ScenarioName::Fig4b,
    ];
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScenarioName::Fig2a => "fig2a",
            ScenarioName::Fig2b => "fig2b",
            ScenarioName::Fig2c => "fig2c",
            ScenarioName::Fig2d => "fig2d",
            ScenarioName::Fig3a => "fig3a",
            ScenarioName::Fig3b => "fig3b",
            ScenarioName::Fig3c => "fig3c",
            ScenarioName::Fig3d => "fig3d",
            ScenarioName::Fig4a => "fig4a",
            ScenarioName::Fig4b => "fig4b",
            ScenarioName::Custom => "custom",
        };
        f.write_str(s)
    }
}

impl FromStr for ScenarioName {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig2a" => Ok(ScenarioName::Fig2a),
            "fig2b" => Ok(ScenarioName::Fig2b),
            "fig2c" => Ok(ScenarioName::Fig2c),
            "fig2d" => Ok(ScenarioName::Fig2d),
            "fig3a" => Ok(ScenarioName::Fig3a),
            "fig3b" => Ok(ScenarioName::Fig3b),
            "fig3c" => Ok(ScenarioName::Fig3c),
            "fig3d" => Ok(ScenarioName::Fig3d),
            "fig4a" => Ok(ScenarioName::Fig4a),
            "fig4b" => Ok(ScenarioName::Fig4b),
            "custom" => Ok(ScenarioName::Custom),
            other => Err(SimError::invalid(format!(
                "unknown scenario '{other}' (expected fig2a..fig2d, fig3a..fig3d, fig4a, fig4b)"
            ))),
        }
    }
}

/// Output-resolution overrides; `None` keeps a scenario's default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Resolution {
    pub time_points: Option<usize>,
    pub param_points: Option<usize>,
}

/// Which quantities are evaluated per grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObservableSet {
    pub tau: bool,
    pub entropy: bool,
    pub fidelity: bool,
    pub survival: bool,
}

impl ObservableSet {
    pub fn all() -> Self {
        Self { tau: true, entropy: true, fidelity: true, survival: true }
    }

    pub fn any_state_observable(&self) -> bool {
        self.tau || self.entropy || self.fidelity
    }
}

/// One selectable observable, as named in configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    Tau,
    Entropy,
    Fidelity,
    Survival,
    Spectrum,
}

impl ObservableSet {
    /// Collapse a list into the per-point set. `spectrum` is rejected here:
    /// it is not a time-series quantity.
    pub fn from_list(list: &[Observable]) -> SimResult<Self> {
        let mut set = Self { tau: false, entropy: false, fidelity: false, survival: false };
        for o in list {
            match o {
                Observable::Tau => set.tau = true,
                Observable::Entropy => set.entropy = true,
                Observable::Fidelity => set.fidelity = true,
                Observable::Survival => set.survival = true,
                Observable::Spectrum => {
                    return Err(SimError::invalid(
                        "spectrum is not a per-time-point observable; use the spectrum command",
                    ))
                }
            }
        }
        Ok(set)
    }
}

/// The swept axis: a time grid at fixed decay, or a decay grid at one time.
#[derive(Debug, Clone)]
pub enum SweepAxis {
    Time { start: f64, stop: f64, points: usize },
    Gamma { start: f64, stop: f64, points: usize, at_time: f64 },
}

/// Fully determined sweep: configuration template, drive family, axis,
/// initial state, observables.
#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub name: ScenarioName,
    pub n_qubits: usize,
    /// Drive amplitudes of the curve family, one group per value.
    pub omegas: Vec<f64>,
    /// Decay rate used by time sweeps; ignored when the axis sweeps gamma.
    pub gamma: f64,
    /// Uniform all-to-all coupling strength.
    pub coupling: f64,
    pub axis: SweepAxis,
    pub initial_state: InitialState,
    pub observables: ObservableSet,
    /// Assumptions worth surfacing next to the data.
    pub notes: Vec<String>,
}

impl ScenarioSpec {
    /// Build one of the named scenarios, with optional resolution overrides.
    pub fn named(name: ScenarioName, res: Resolution) -> SimResult<Self> {
        let tp = res.time_points.unwrap_or(DEFAULT_TIME_POINTS);
        let pp = res.param_points.unwrap_or(DEFAULT_PARAM_POINTS);
        if tp < 2 || pp < 2 {
            return Err(SimError::invalid("resolution must be at least 2 points"));
        }
        let time_axis = SweepAxis::Time { start: 0.0, stop: DEFAULT_TIME_SPAN, points: tp };
        let strong_drive = vec![10.0, 50.0, 100.0];
        let weak_drive = vec![0.0, 0.01, 0.1, 0.5];
        let coherent = InitialState::SpinCoherent { phi: SPIN_COHERENT_DEFAULT_PHI };
        let pi = std::f64::consts::PI;

        let spec = match name {
            ScenarioName::Fig2a | ScenarioName::Fig2b | ScenarioName::Fig2c => {
                let gamma = match name {
                    ScenarioName::Fig2a => 0.0,
                    ScenarioName::Fig2b => 1.0,
                    _ => 6.0,
                };
                Self {
                    name,
                    n_qubits: 3,
                    omegas: strong_drive,
                    gamma,
                    coupling: 1.0,
                    axis: time_axis,
                    initial_state: InitialState::AllF,
                    observables: ObservableSet::all(),
                    notes: vec![],
                }
            }
            ScenarioName::Fig2d => Self {
                name,
                n_qubits: 3,
                omegas: strong_drive,
                gamma: 0.0,
                coupling: 1.0,
                axis: SweepAxis::Gamma { start: 0.0, stop: 12.0, points: pp, at_time: pi },
                initial_state: InitialState::AllF,
                observables: ObservableSet::all(),
                notes: vec![
                    "gamma axis range [0, 12] chosen to cover the revival region".into(),
                ],
            },
            ScenarioName::Fig3a | ScenarioName::Fig3b | ScenarioName::Fig3c => {
                let gamma = match name {
                    ScenarioName::Fig3a => 0.0,
                    ScenarioName::Fig3b => 0.1,
                    _ => 0.25,
                };
                Self {
                    name,
                    n_qubits: 3,
                    omegas: weak_drive,
                    gamma,
                    coupling: 1.0,
                    axis: time_axis,
                    initial_state: coherent,
                    observables: ObservableSet::all(),
                    notes: vec![],
                }
            }
            ScenarioName::Fig3d => Self {
                name,
                n_qubits: 3,
                omegas: weak_drive,
                gamma: 0.0,
                coupling: 1.0,
                axis: SweepAxis::Gamma { start: 0.0, stop: 0.5, points: pp, at_time: pi / 2.0 },
                initial_state: coherent,
                observables: ObservableSet::all(),
                notes: vec!["gamma axis range [0, 0.5] covers the strong-coupling decay window".into()],
            },
            ScenarioName::Fig4a | ScenarioName::Fig4b => {
                let gamma = if name == ScenarioName::Fig4a { 0.0 } else { 6.0 };
                Self {
                    name,
                    n_qubits: 4,
                    omegas: strong_drive,
                    gamma,
                    coupling: 1.0,
                    axis: time_axis,
                    initial_state: InitialState::AllF,
                    observables: ObservableSet {
                        tau: false,
                        entropy: true,
                        fidelity: true,
                        survival: true,
                    },
                    notes: vec!["four-qubit runs start from the all-f product state".into()],
                }
            }
            ScenarioName::Custom => {
                return Err(SimError::invalid(
                    "the custom scenario is assembled from an explicit configuration",
                ))
            }
        };
        Ok(spec)
    }
}

/// One output record. Extinct rows keep the axis value and the survival
/// probability but carry NaN for every state-dependent observable.
#[derive(Debug, Clone)]
pub struct Row {
    pub values: Vec<f64>,
    pub extinct: bool,
}

/// Block of rows sharing one parameter tuple.
#[derive(Debug, Clone, Serialize)]
pub struct Group {
    pub label: String,
    pub params: Vec<(String, f64)>,
    pub first_row: usize,
    pub row_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepMetadata {
    pub scenario: String,
    pub artifact_version: String,
    pub initial_state: String,
    pub groups: Vec<Group>,
    pub notes: Vec<String>,
}

/// Tabular sweep output: named columns, ordered rows, and grouping metadata.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub metadata: SweepMetadata,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

pub(crate) fn artifact_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Column list for a sweep: the axis label first, then the requested
/// observables in canonical order.
pub fn column_names(axis_label: &str, n_qubits: usize, obs: &ObservableSet) -> Vec<String> {
    let mut cols = vec![axis_label.to_string()];
    if obs.tau {
        cols.push("tau".into());
    }
    if obs.entropy {
        for j in 1..=n_qubits {
            cols.push(format!("S{j}"));
        }
    }
    if obs.fidelity {
        cols.push("fidelity_ghz".into());
        cols.push("fidelity_local_phases".into());
    }
    if obs.survival {
        cols.push("survival".into());
    }
    cols
}

fn validate_observables(obs: &ObservableSet, n_qubits: usize) -> SimResult<()> {
    if obs.tau && n_qubits != 3 {
        return Err(SimError::invalid(format!(
            "tau is defined for 3 qubits only, configuration has {n_qubits}"
        )));
    }
    if obs.fidelity && n_qubits < 2 {
        return Err(SimError::invalid(
            "the GHZ fidelity observables require at least 2 qubits",
        ));
    }
    Ok(())
}

/// Observable columns for one propagated point, in `column_names` order.
fn observable_values(
    point: &PropagationResult,
    obs: &ObservableSet,
    n_qubits: usize,
    axis_value: f64,
) -> SimResult<Row> {
    let mut values = vec![axis_value];
    match normalize(&point.state) {
        Ok((psi, survival)) => {
            if obs.tau {
                values.push(three_tangle(&psi)?);
            }
            if obs.entropy {
                for j in 1..=n_qubits {
                    let rho = DensityMatrix::new(reduced_single_qubit(&psi, j)?, vec![j])?;
                    values.push(von_neumann_entropy(&rho));
                }
            }
            if obs.fidelity {
                let target = ghz_state(n_qubits)?;
                values.push(fidelity(&psi, &target)?);
                let (_, best) = optimize_local_phases(&psi, &target, 8)?;
                values.push(best);
            }
            if obs.survival {
                values.push(survival);
            }
            Ok(Row { values, extinct: false })
        }
        Err(SimError::PostSelectionExtinct { survival }) => {
            let n_state_cols = column_names("x", n_qubits, obs).len() - 1
                - if obs.survival { 1 } else { 0 };
            values.extend(std::iter::repeat(f64::NAN).take(n_state_cols));
            if obs.survival {
                values.push(survival);
            }
            Ok(Row { values, extinct: true })
        }
        Err(e) => Err(e),
    }
}

/// Time series for one configuration; the backbone of `simulate` and of the
/// per-drive groups inside the named scenarios.
pub fn run_time_series(
    config: &SystemConfig,
    initial_state: &InitialState,
    t_grid: &[f64],
    obs: &ObservableSet,
) -> SimResult<Vec<Row>> {
    validate_observables(obs, config.n_qubits())?;
    let h = build_hamiltonian(config);
    let psi0 = initial_state.build(config.n_qubits())?;
    let points = propagate_grid(&h, &psi0, t_grid)?;
    points
        .iter()
        .map(|p| observable_values(p, obs, config.n_qubits(), p.time))
        .collect()
}

/// Parameter that a custom sweep can scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    Gamma,
    Omega,
}

impl SweepParameter {
    pub fn label(&self) -> &'static str {
        match self {
            SweepParameter::Gamma => "gamma",
            SweepParameter::Omega => "omega",
        }
    }
}

/// Sweep a uniform parameter over `grid`, evolving to `at_time` for each
/// value.
pub fn run_parameter_sweep(
    config: &SystemConfig,
    parameter: SweepParameter,
    grid: &[f64],
    at_time: f64,
    initial_state: &InitialState,
    obs: &ObservableSet,
) -> SimResult<Vec<Row>> {
    validate_observables(obs, config.n_qubits())?;
    if grid.is_empty() {
        return Err(SimError::invalid("parameter grid must not be empty"));
    }
    if !at_time.is_finite() || at_time < 0.0 {
        return Err(SimError::invalid("sweep evaluation time must be finite and >= 0"));
    }
    let psi0 = initial_state.build(config.n_qubits())?;
    let mut rows = Vec::with_capacity(grid.len());
    for &value in grid {
        let cfg = match parameter {
            SweepParameter::Gamma => config.with_uniform_gamma(value)?,
            SweepParameter::Omega => config.with_uniform_omega(value)?,
        };
        let h = build_hamiltonian(&cfg);
        let point = crate::evolve::evolve(&h, &psi0, at_time)?;
        rows.push(observable_values(&point, obs, config.n_qubits(), value)?);
    }
    Ok(rows)
}

/// Run a named scenario: one group of rows per drive amplitude, ordered by
/// (drive amplitude, axis value).
pub fn run_scenario(spec: &ScenarioSpec) -> SimResult<SweepResult> {
    validate_observables(&spec.observables, spec.n_qubits)?;
    let axis_label = match spec.axis {
        SweepAxis::Time { .. } => "Jt",
        SweepAxis::Gamma { .. } => "gamma",
    };
    let columns = column_names(axis_label, spec.n_qubits, &spec.observables);

    let mut rows: Vec<Row> = Vec::new();
    let mut groups: Vec<Group> = Vec::new();
    for &omega in &spec.omegas {
        let first_row = rows.len();
        let mut new_rows = match spec.axis {
            SweepAxis::Time { start, stop, points } => {
                let cfg = SystemConfig::symmetric(
                    spec.n_qubits,
                    0.0,
                    spec.gamma,
                    omega,
                    spec.coupling,
                )?;
                let grid = linear_grid(start, stop, points);
                run_time_series(&cfg, &spec.initial_state, &grid, &spec.observables)?
            }
            SweepAxis::Gamma { start, stop, points, at_time } => {
                let cfg = SystemConfig::symmetric(spec.n_qubits, 0.0, 0.0, omega, spec.coupling)?;
                let grid = linear_grid(start, stop, points);
                run_parameter_sweep(
                    &cfg,
                    SweepParameter::Gamma,
                    &grid,
                    at_time,
                    &spec.initial_state,
                    &spec.observables,
                )?
            }
        };
        let row_count = new_rows.len();
        rows.append(&mut new_rows);
        let mut params = vec![("omega".to_string(), omega)];
        match spec.axis {
            SweepAxis::Time { .. } => params.push(("gamma".to_string(), spec.gamma)),
            SweepAxis::Gamma { at_time, .. } => params.push(("Jt".to_string(), at_time)),
        }
        groups.push(Group { label: format!("omega={omega}"), params, first_row, row_count });
    }

    let mut notes = spec.notes.clone();
    let extinct = rows.iter().filter(|r| r.extinct).count();
    if extinct > 0 {
        notes.push(format!(
            "{extinct} rows are past post-selection extinction; their observables are NaN"
        ));
    }
    Ok(SweepResult {
        metadata: SweepMetadata {
            scenario: spec.name.to_string(),
            artifact_version: artifact_version(),
            initial_state: spec.initial_state.label(),
            groups,
            notes,
        },
        columns,
        rows,
    })
}
