//! Non-unitary time evolution under exp(-i H t) and post-selection
//! normalization.
//!
//! With losses the propagated vector shrinks; its squared norm is the
//! probability that no quantum jump has occurred, and conditioning on that
//! record means renormalizing the state.

use num_complex::Complex64;

use crate::entangle::DensityMatrix;
use crate::error::{SimError, SimResult};
use crate::expm::expm;
use crate::operator::Operator;
use crate::state::StateVector;

/// Survival probabilities below this are treated as post-selection
/// extinction: the conditional state is numerically meaningless.
pub const SURVIVAL_FLOOR: f64 = 1e-24;

/// Result of propagating a normalized initial state to one time.
#[derive(Debug, Clone)]
pub struct PropagationResult {
    /// Unnormalized evolved state `exp(-i H t) |psi0>`.
    pub state: StateVector,
    /// Squared norm of `state`; the no-jump probability for normalized input.
    pub survival_probability: f64,
    /// Dimensionless evolution time.
    pub time: f64,
}

/// One entry of a [`time_series`]: the post-selected (renormalized) state.
#[derive(Debug, Clone)]
pub struct TimePoint {
    pub time: f64,
    pub state: StateVector,
    pub survival: f64,
}

/// Propagate `psi0` to time `t`: `state = exp(-i H t) |psi0>`, without
/// renormalizing.
pub fn evolve(h: &Operator, psi0: &StateVector, t: f64) -> SimResult<PropagationResult> {
    if h.dim() != psi0.dim() {
        return Err(SimError::invalid(format!(
            "dimension mismatch: Hamiltonian is {}x{} but state has length {}",
            h.dim(),
            h.dim(),
            psi0.dim()
        )));
    }
    if !t.is_finite() {
        return Err(SimError::invalid("evolution time must be finite"));
    }
    if !psi0.is_normalized(1e-9) {
        return Err(SimError::invalid(format!(
            "initial state must be normalized within 1e-9 (norm^2 = {})",
            psi0.norm_sqr()
        )));
    }
    let u = propagator(h, t)?;
    let state = u.apply(psi0)?;
    let survival_probability = state.norm_sqr();
    Ok(PropagationResult { state, survival_probability, time: t })
}

/// The non-unitary propagator `exp(-i H t)`.
pub fn propagator(h: &Operator, t: f64) -> SimResult<Operator> {
    let a = h.matrix().mapv(|z| z * Complex64::new(0.0, -t));
    Operator::new(expm(&a)?, h.n_qubits())
}

/// Renormalize a state, returning the unit vector and the squared norm of
/// the input. Fails with [`SimError::PostSelectionExtinct`] when the norm is
/// below [`SURVIVAL_FLOOR`].
pub fn normalize(psi: &StateVector) -> SimResult<(StateVector, f64)> {
    let survival = psi.norm_sqr();
    if !(survival >= SURVIVAL_FLOOR) {
        return Err(SimError::PostSelectionExtinct { survival });
    }
    let inv = Complex64::new(1.0 / survival.sqrt(), 0.0);
    Ok((psi.map_amplitudes(|a| a * inv), survival))
}

/// Pure-state density matrix `|psi><psi|` of a normalized state.
pub fn density_matrix(psi: &StateVector) -> SimResult<DensityMatrix> {
    if !psi.is_normalized(1e-9) {
        return Err(SimError::invalid(format!(
            "density matrix requires a normalized state (norm^2 = {})",
            psi.norm_sqr()
        )));
    }
    DensityMatrix::from_pure(psi)
}

/// Unnormalized propagation over a whole time grid.
///
/// Uniform grids reuse the one-step propagator `exp(-i H dt)` and apply it
/// repeatedly; non-uniform grids fall back to a direct exponential per
/// point. Both paths agree with direct evaluation to well below 1e-8 per
/// amplitude at the dimensions this crate supports.
pub fn propagate_grid(
    h: &Operator,
    psi0: &StateVector,
    t_grid: &[f64],
) -> SimResult<Vec<PropagationResult>> {
    if h.dim() != psi0.dim() {
        return Err(SimError::invalid(format!(
            "dimension mismatch: Hamiltonian is {}x{} but state has length {}",
            h.dim(),
            h.dim(),
            psi0.dim()
        )));
    }
    if t_grid.is_empty() {
        return Ok(Vec::new());
    }
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(SimError::invalid("time grid entries must be finite"));
    }
    if t_grid[0] < 0.0 {
        return Err(SimError::invalid(format!(
            "time grid must start at t >= 0, got {}",
            t_grid[0]
        )));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SimError::invalid("time grid must be strictly ascending"));
    }
    if !psi0.is_normalized(1e-9) {
        return Err(SimError::invalid(format!(
            "initial state must be normalized within 1e-9 (norm^2 = {})",
            psi0.norm_sqr()
        )));
    }

    let mut out = Vec::with_capacity(t_grid.len());
    if let Some(dt) = uniform_step(t_grid) {
        let u_step = propagator(h, dt)?;
        // land exactly on the first grid point, then step
        let mut current = if t_grid[0] == 0.0 {
            psi0.clone()
        } else {
            propagator(h, t_grid[0])?.apply(psi0)?
        };
        for (k, &t) in t_grid.iter().enumerate() {
            if k > 0 {
                current = u_step.apply(&current)?;
            }
            out.push(PropagationResult {
                survival_probability: current.norm_sqr(),
                state: current.clone(),
                time: t,
            });
        }
    } else {
        for &t in t_grid {
            let u = propagator(h, t)?;
            let state = u.apply(psi0)?;
            out.push(PropagationResult {
                survival_probability: state.norm_sqr(),
                state,
                time: t,
            });
        }
    }
    Ok(out)
}

/// Post-selected time series: propagate over the grid and renormalize at
/// every point. A vanishing survival probability anywhere aborts with
/// [`SimError::PostSelectionExtinct`].
pub fn time_series(h: &Operator, psi0: &StateVector, t_grid: &[f64]) -> SimResult<Vec<TimePoint>> {
    propagate_grid(h, psi0, t_grid)?
        .into_iter()
        .map(|p| {
            let (state, survival) = normalize(&p.state)?;
            Ok(TimePoint { time: p.time, state, survival })
        })
        .collect()
}

fn uniform_step(t_grid: &[f64]) -> Option<f64> {
    if t_grid.len() < 2 {
        return None;
    }
    let dt = t_grid[1] - t_grid[0];
    let tol = 1e-12 * dt.abs().max(1.0);
    if t_grid.windows(2).all(|w| ((w[1] - w[0]) - dt).abs() <= tol) {
        Some(dt)
    } else {
        None
    }
}

/// Uniform grid of `points` times covering `[start, stop]` inclusive.
pub fn linear_grid(start: f64, stop: f64, points: usize) -> Vec<f64> {
    if points == 0 {
        return Vec::new();
    }
    if points == 1 {
        return vec![start];
    }
    let step = (stop - start) / (points - 1) as f64;
    (0..points).map(|k| start + step * k as f64).collect()
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use ndarray::Array1;
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::config::SystemConfig;
    use crate::operator::build_hamiltonian;
    use crate::state::{ghz_state, product_state, InitialState, StateVector};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn all_f(n: usize) -> StateVector {
        InitialState::AllF.build(n).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let h = build_hamiltonian(&SystemConfig::symmetric(2, 0.0, 1.0, 3.0, 1.0).unwrap());
        let psi0 = all_f(2);
        let r = evolve(&h, &psi0, 0.0).unwrap();
        assert_abs_diff_eq!(r.survival_probability, 1.0, epsilon = 1e-12);
        for (a, b) in r.state.amplitudes().iter().zip(psi0.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rabi_half_flip() {
        // H = Omega sx from |f>: at Omega t = pi/2 the state is -i|e>
        let omega = 2.0;
        let h = build_hamiltonian(&SystemConfig::symmetric(1, 0.0, 0.0, omega, 0.0).unwrap());
        let psi0 = product_state(&[(c(0.0, 0.0), c(1.0, 0.0))]).unwrap();
        let r = evolve(&h, &psi0, FRAC_PI_2 / omega).unwrap();
        assert_abs_diff_eq!(r.survival_probability, 1.0, epsilon = 1e-12);
        assert!((r.state.amplitudes()[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!(r.state.amplitudes()[1].norm() < 1e-12);
    }

    #[test]
    fn survival_decays_with_loss() {
        let h = build_hamiltonian(&SystemConfig::symmetric(3, 0.0, 1.0, 10.0, 1.0).unwrap());
        let r = evolve(&h, &all_f(3), PI).unwrap();
        assert!(r.survival_probability < 1.0);
        assert!(r.survival_probability > 0.0);
    }

    #[test]
    fn evolve_rejects_mismatch_and_unnormalized() {
        let h = build_hamiltonian(&SystemConfig::symmetric(2, 0.0, 0.0, 1.0, 1.0).unwrap());
        assert!(evolve(&h, &all_f(3), 1.0).is_err());
        let unnorm =
            StateVector::new(Array1::from_vec(vec![c(2.0, 0.0), c(0.0, 0.0)]), 1).unwrap();
        let h1 = build_hamiltonian(&SystemConfig::symmetric(1, 0.0, 0.0, 1.0, 0.0).unwrap());
        assert!(evolve(&h1, &unnorm, 1.0).is_err());
    }

    #[test]
    fn normalize_examples() {
        let psi = ghz_state(3).unwrap();
        let (out, survival) = normalize(&psi).unwrap();
        assert_abs_diff_eq!(survival, 1.0, epsilon = 1e-12);
        for (a, b) in out.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }

        let mut amps = Array1::zeros(4);
        amps[0] = c(2.0, 0.0);
        let psi = StateVector::new(amps, 2).unwrap();
        let (out, survival) = normalize(&psi).unwrap();
        assert_abs_diff_eq!(survival, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.amplitudes()[0].re, 1.0, epsilon = 1e-12);
        assert!(out.is_normalized(1e-12));
    }

    #[test]
    fn normalize_zero_vector_is_extinct() {
        let psi = StateVector::new(Array1::zeros(4), 2).unwrap();
        match normalize(&psi) {
            Err(SimError::PostSelectionExtinct { survival }) => assert_eq!(survival, 0.0),
            other => panic!("expected extinction, got {other:?}"),
        }
    }

    #[test]
    fn density_matrix_of_ghz_has_four_corners() {
        let rho = density_matrix(&ghz_state(3).unwrap()).unwrap();
        let m = rho.matrix();
        for (r, k) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert_abs_diff_eq!(m[[r, k]].re, 0.5, epsilon = 1e-12);
        }
        let trace: Complex64 = (0..8).map(|i| m[[i, i]]).sum();
        assert_abs_diff_eq!(trace.re, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn density_matrix_rejects_unnormalized() {
        let mut amps = Array1::zeros(2);
        amps[0] = c(0.5, 0.0);
        let psi = StateVector::new(amps, 1).unwrap();
        assert!(density_matrix(&psi).is_err());
    }

    #[test]
    fn time_series_single_point_grid() {
        let h = build_hamiltonian(&SystemConfig::symmetric(2, 0.0, 0.5, 2.0, 1.0).unwrap());
        let psi0 = all_f(2);
        let pts = time_series(&h, &psi0, &[0.0]).unwrap();
        assert_eq!(pts.len(), 1);
        assert_abs_diff_eq!(pts[0].survival, 1.0, epsilon = 1e-12);
        for (a, b) in pts[0].state.amplitudes().iter().zip(psi0.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn stepped_grid_matches_direct_evaluation() {
        let h = build_hamiltonian(&SystemConfig::symmetric(3, 0.0, 1.0, 10.0, 1.0).unwrap());
        let psi0 = all_f(3);
        let grid = linear_grid(0.0, PI, 401);
        let pts = time_series(&h, &psi0, &grid).unwrap();
        for k in [57, 200, 400] {
            let direct = evolve(&h, &psi0, grid[k]).unwrap();
            let (direct_norm, _) = normalize(&direct.state).unwrap();
            for (a, b) in pts[k].state.amplitudes().iter().zip(direct_norm.amplitudes()) {
                assert!((a - b).norm() < 1e-8, "grid point {k} deviates");
            }
        }
    }

    #[test]
    fn lossless_series_has_unit_survival() {
        let h = build_hamiltonian(&SystemConfig::symmetric(3, 0.0, 0.0, 10.0, 1.0).unwrap());
        let pts = time_series(&h, &all_f(3), &linear_grid(0.0, 2.0 * PI, 201)).unwrap();
        for p in &pts {
            assert_abs_diff_eq!(p.survival, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn non_uniform_grid_takes_direct_path() {
        let h = build_hamiltonian(&SystemConfig::symmetric(2, 0.0, 0.7, 3.0, 1.0).unwrap());
        let psi0 = all_f(2);
        let pts = time_series(&h, &psi0, &[0.1, 0.2, 0.7, 1.9]).unwrap();
        assert_eq!(pts.len(), 4);
        let direct = evolve(&h, &psi0, 1.9).unwrap();
        assert_abs_diff_eq!(pts[3].survival, direct.survival_probability, epsilon = 1e-10);
    }

    #[test]
    fn grid_validation() {
        let h = build_hamiltonian(&SystemConfig::symmetric(2, 0.0, 0.0, 1.0, 1.0).unwrap());
        let psi0 = all_f(2);
        assert!(time_series(&h, &psi0, &[-1.0, 0.0]).is_err());
        assert!(time_series(&h, &psi0, &[0.0, 0.0]).is_err());
        assert!(time_series(&h, &psi0, &[0.5, 0.1]).is_err());
    }

    #[test]
    fn extinction_propagates_from_series() {
        // gamma large enough that |eee> dies within the grid
        let h = build_hamiltonian(&SystemConfig::symmetric(3, 0.0, 60.0, 0.0, 0.0).unwrap());
        let psi0 = product_state(&[(c(1.0, 0.0), c(0.0, 0.0)); 3]).unwrap();
        let err = time_series(&h, &psi0, &linear_grid(0.0, 2.0, 41)).unwrap_err();
        assert!(matches!(err, SimError::PostSelectionExtinct { .. }));
    }
}
