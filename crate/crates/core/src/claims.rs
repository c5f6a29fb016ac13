//! Built-in validation suite: every headline quantitative claim about the
//! model, evaluated as machine-readable pass/fail records.
//!
//! Failures are data, not errors: `check_claims` always returns the full
//! list. Several checks encode idealized target values that the exact model
//! provably does not meet; they are kept as stated and report honestly (see
//! the README's validation-status section for the mechanisms).

use std::f64::consts::{LN_2, PI, TAU};

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::SystemConfig;
use crate::entangle::{
    apply_local_phase, fidelity, optimize_local_phases, pairwise_concurrence, partial_trace,
    report, three_tangle, DensityMatrix,
};
use crate::error::SimResult;
use crate::evolve::{evolve, linear_grid, normalize, propagate_grid};
use crate::operator::{build_hamiltonian, Operator};
use crate::spectrum::{eigenvalues, spectrum};
use crate::state::{ghz_state, InitialState, StateVector, SPIN_COHERENT_DEFAULT_PHI};

/// Outcome of one claim check.
#[derive(Debug, Clone)]
pub struct Claim {
    /// Stable identifier, `c<criterion>[-<part>]`.
    pub id: String,
    /// What is being measured.
    pub description: String,
    /// The measured value (NaN when the measured object does not exist).
    pub measured: f64,
    /// Human-readable bound the measurement is held against.
    pub bound: String,
    pub passed: bool,
}

impl Claim {
    fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        measured: f64,
        bound: impl Into<String>,
        passed: bool,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            measured,
            bound: bound.into(),
            passed,
        }
    }

    /// One-line rendering, stable enough to grep.
    pub fn render(&self) -> String {
        format!(
            "{:<28} {}  measured = {:+.9e}  bound: {}  ({})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.measured,
            self.bound,
            self.description
        )
    }
}

fn sym_config(n: usize, omega: f64, gamma: f64) -> SystemConfig {
    SystemConfig::symmetric(n, 0.0, gamma, omega, 1.0).expect("valid symmetric configuration")
}

fn all_f(n: usize) -> StateVector {
    InitialState::AllF.build(n).expect("all-f state")
}

/// Normalized state at one time from a symmetric configuration.
fn evolved_normalized(n: usize, omega: f64, gamma: f64, init: &StateVector, t: f64) -> SimResult<StateVector> {
    let h = build_hamiltonian(&sym_config(n, omega, gamma));
    let r = evolve(&h, init, t)?;
    Ok(normalize(&r.state)?.0)
}

/// Three-tangle along a uniform time grid (gamma may be nonzero; extinct
/// points are not expected on the grids used here).
fn tau_series(omega: f64, gamma: f64, init: &StateVector, grid: &[f64]) -> SimResult<Vec<f64>> {
    let h = build_hamiltonian(&sym_config(3, omega, gamma));
    propagate_grid(&h, init, grid)?
        .iter()
        .map(|p| three_tangle(&normalize(&p.state)?.0))
        .collect()
}

/// Criterion 1: three-qubit strong drive at Jt = pi, lossless: tangle at
/// least 0.999 and phase-corrected GHZ fidelity at least 0.9999.
pub fn criterion_1() -> SimResult<Vec<Claim>> {
    let psi = evolved_normalized(3, 100.0, 0.0, &all_f(3), PI)?;
    let tau = three_tangle(&psi)?;
    let (_, f_lp) = optimize_local_phases(&psi, &ghz_state(3)?, 16)?;
    Ok(vec![
        Claim::new(
            "c1-tau",
            "three-tangle, omega=100, gamma=0, Jt=pi, from all-f",
            tau,
            ">= 0.999",
            tau >= 0.999,
        ),
        Claim::new(
            "c1-fidelity-local-phases",
            "GHZ fidelity up to per-qubit phase gates, same state",
            f_lp,
            ">= 0.9999",
            f_lp >= 0.9999,
        ),
    ])
}

/// Criterion 2: same point at gamma = 6.
pub fn criterion_2() -> SimResult<Vec<Claim>> {
    let psi = evolved_normalized(3, 100.0, 6.0, &all_f(3), PI)?;
    let (_, f_lp) = optimize_local_phases(&psi, &ghz_state(3)?, 16)?;
    Ok(vec![Claim::new(
        "c2-fidelity-local-phases",
        "GHZ fidelity up to per-qubit phase gates, omega=100, gamma=6, Jt=pi",
        f_lp,
        ">= 0.999",
        f_lp >= 0.999,
    )])
}

/// Criterion 3: lossless strong-drive tangle repeats after Jt = 2 pi to
/// 1e-6 on the 1001-point grid.
pub fn criterion_3() -> SimResult<Vec<Claim>> {
    let grid = linear_grid(0.0, 4.0 * PI, 1001);
    let init = all_f(3);
    let mut claims = Vec::new();
    for omega in [10.0, 50.0, 100.0] {
        let taus = tau_series(omega, 0.0, &init, &grid)?;
        let max_dev = (0..=500)
            .map(|i| (taus[i] - taus[i + 500]).abs())
            .fold(0.0f64, f64::max);
        claims.push(Claim::new(
            format!("c3-period-omega{omega}"),
            format!("max |tau(Jt) - tau(Jt + 2pi)|, omega={omega}, gamma=0"),
            max_dev,
            "< 1e-6",
            max_dev < 1e-6,
        ));
    }
    Ok(claims)
}

/// Criterion 4: tangle plateau over gamma in [0, 6] at omega = 100, Jt = pi.
pub fn criterion_4() -> SimResult<Vec<Claim>> {
    let init = all_f(3);
    let mut min_tau = f64::INFINITY;
    for &gamma in linear_grid(0.0, 6.0, 61).iter() {
        let psi = evolved_normalized(3, 100.0, gamma, &init, PI)?;
        min_tau = min_tau.min(three_tangle(&psi)?);
    }
    Ok(vec![Claim::new(
        "c4-plateau",
        "min three-tangle over gamma in [0, 6] (61 points), omega=100, Jt=pi",
        min_tau,
        ">= 0.99",
        min_tau >= 0.99,
    )])
}

/// Criterion 5: at omega = 10 and Jt = pi, tau(gamma) on [0, 12] has an
/// interior local maximum between gamma = 7 and gamma = 11.
pub fn criterion_5() -> SimResult<Vec<Claim>> {
    let init = all_f(3);
    let grid = linear_grid(0.0, 12.0, 121);
    let mut taus = Vec::with_capacity(grid.len());
    for &gamma in &grid {
        let h = build_hamiltonian(&sym_config(3, 10.0, gamma));
        let r = evolve(&h, &init, PI)?;
        match normalize(&r.state) {
            Ok((psi, _)) => taus.push(three_tangle(&psi)?),
            Err(crate::error::SimError::PostSelectionExtinct { .. }) => taus.push(f64::NAN),
            Err(e) => return Err(e),
        }
    }
    // best interior local maximum over finite triples
    let mut best: Option<(f64, f64)> = None; // (tau, gamma)
    for i in 1..grid.len() - 1 {
        let (a, b, c) = (taus[i - 1], taus[i], taus[i + 1]);
        if a.is_finite() && b.is_finite() && c.is_finite() && b > a && b > c {
            if best.map_or(true, |(t, _)| b > t) {
                best = Some((b, grid[i]));
            }
        }
    }
    let location = best.map_or(f64::NAN, |(_, g)| g);
    let passed = best.is_some() && (7.0..=11.0).contains(&location);
    Ok(vec![Claim::new(
        "c5-revival",
        "location of the interior tau(gamma) maximum, omega=10, Jt=pi, gamma in [0, 12]",
        location,
        "in [7, 11]",
        passed,
    )])
}

/// Criterion 6: with exchange only (omega = gamma = 0) from the spin
/// coherent state, the tangle maxima over [0, 2 pi] sit at pi/2 and 3 pi/2
/// to within one grid step.
pub fn criterion_6() -> SimResult<Vec<Claim>> {
    let points = 1001;
    let grid = linear_grid(0.0, 2.0 * PI, points);
    let step = grid[1] - grid[0];
    let init = InitialState::SpinCoherent { phi: SPIN_COHERENT_DEFAULT_PHI }.build(3)?;
    let taus = tau_series(0.0, 0.0, &init, &grid)?;

    let argmax = |range: std::ops::Range<usize>| -> usize {
        let mut best = range.start;
        for i in range {
            if taus[i] > taus[best] {
                best = i;
            }
        }
        best
    };
    let half = points / 2;
    let t1 = grid[argmax(0..half + 1)];
    let t2 = grid[argmax(half..points)];
    let tol = step + 1e-12;
    Ok(vec![
        Claim::new(
            "c6-argmax-first",
            "argmax of tau over Jt in [0, pi], exchange only, spin-coherent start",
            t1,
            format!("|t - pi/2| <= {step:.4e}"),
            (t1 - PI / 2.0).abs() <= tol,
        ),
        Claim::new(
            "c6-argmax-second",
            "argmax of tau over Jt in [pi, 2pi], exchange only, spin-coherent start",
            t2,
            format!("|t - 3pi/2| <= {step:.4e}"),
            (t2 - 1.5 * PI).abs() <= tol,
        ),
    ])
}

/// Criterion 7: the strong-coupling spectrum at J = 1, omega = gamma = 0.1
/// classifies as real after removing the uniform loss shift, at tolerance
/// 1e-6 times the spectral radius.
pub fn criterion_7() -> SimResult<Vec<Claim>> {
    let h = build_hamiltonian(&sym_config(3, 0.1, 0.1));
    let vals = eigenvalues(&h)?;
    let radius = vals.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let tol = 1e-6 * radius;
    let rep = spectrum(&h, tol)?;
    let mean: f64 = vals.iter().map(|z| z.im).sum::<f64>() / vals.len() as f64;
    let max_resid = vals.iter().map(|z| (z.im - mean).abs()).fold(0.0f64, f64::max);
    Ok(vec![Claim::new(
        "c7-pt-phase",
        "max shifted imaginary residual, J=1, omega=0.1, gamma=0.1, n=3",
        max_resid,
        format!("<= 1e-6 * spectral radius = {tol:.4e}"),
        rep.is_pt_symmetric_phase,
    )])
}

/// Criterion 8: four-qubit strong drive: every single-qubit entropy within
/// 1% of ln 2 at Jt = pi, and the entropy repeats after 2 pi as in
/// criterion 3.
pub fn criterion_8() -> SimResult<Vec<Claim>> {
    let psi = evolved_normalized(4, 100.0, 0.0, &all_f(4), PI)?;
    let rep = report(&psi, PI, 1.0)?;
    let max_rel_dev = rep
        .entropies
        .iter()
        .map(|s| (s - LN_2).abs() / LN_2)
        .fold(0.0f64, f64::max);
    let mut claims = vec![Claim::new(
        "c8-entropy-ln2",
        "max relative deviation of S_j from ln 2, omega=100, gamma=0, Jt=pi, n=4",
        max_rel_dev,
        "<= 0.01",
        max_rel_dev <= 0.01,
    )];

    let grid = linear_grid(0.0, 4.0 * PI, 1001);
    let init = all_f(4);
    for omega in [10.0, 50.0, 100.0] {
        let h = build_hamiltonian(&sym_config(4, omega, 0.0));
        let entropies: Vec<f64> = propagate_grid(&h, &init, &grid)?
            .iter()
            .map(|p| {
                let psi = normalize(&p.state)?.0;
                let rho = DensityMatrix::new(
                    crate::entangle::reduced_single_qubit(&psi, 1)?,
                    vec![1],
                )?;
                Ok(crate::entangle::von_neumann_entropy(&rho))
            })
            .collect::<SimResult<_>>()?;
        let max_dev = (0..=500)
            .map(|i| (entropies[i] - entropies[i + 500]).abs())
            .fold(0.0f64, f64::max);
        claims.push(Claim::new(
            format!("c8-period-omega{omega}"),
            format!("max |S_1(Jt) - S_1(Jt + 2pi)|, omega={omega}, gamma=0, n=4"),
            max_dev,
            "< 1e-6",
            max_dev < 1e-6,
        ));
    }
    Ok(claims)
}

/// Criterion 9: a single phase gate of 3 pi / 4 on qubit 1 aligns the
/// four-qubit Jt = pi state with the GHZ state.
pub fn criterion_9() -> SimResult<Vec<Claim>> {
    let target = ghz_state(4)?;
    let mut claims = Vec::new();
    for (gamma, bound) in [(0.0, 0.998), (6.0, 0.99)] {
        let psi = evolved_normalized(4, 100.0, gamma, &all_f(4), PI)?;
        let corrected = apply_local_phase(&psi, 1, 0.75 * PI)?;
        let f = fidelity(&corrected, &target)?;
        claims.push(Claim::new(
            format!("c9-zgate-gamma{gamma}"),
            format!("GHZ fidelity after Z(3pi/4) on qubit 1, omega=100, gamma={gamma}, Jt=pi"),
            f,
            format!(">= {bound}"),
            f >= bound,
        ));
    }
    Ok(claims)
}

/// Parameter families used by the trajectory-level property checks.
fn trajectory_sets() -> Vec<(usize, f64, f64, InitialState)> {
    let mut sets = Vec::new();
    for &omega in &[10.0, 50.0, 100.0] {
        for &gamma in &[0.0, 1.0, 6.0] {
            sets.push((3, omega, gamma, InitialState::AllF));
        }
    }
    let coherent = InitialState::SpinCoherent { phi: SPIN_COHERENT_DEFAULT_PHI };
    for &omega in &[0.0, 0.01, 0.1, 0.5] {
        for &gamma in &[0.0, 0.1, 0.25] {
            sets.push((3, omega, gamma, coherent));
        }
    }
    for &omega in &[10.0, 50.0, 100.0] {
        for &gamma in &[0.0, 6.0] {
            sets.push((4, omega, gamma, InitialState::AllF));
        }
    }
    sets
}

/// Truncated-Taylor single-step propagator, the reference path for the
/// substep oracle. Independent of the Pade evaluation used by `evolve`.
fn taylor_step_matrix(h: &Operator, dt: f64) -> Array2<Complex64> {
    let dim = h.dim();
    let a = h.matrix().mapv(|z| z * Complex64::new(0.0, -dt));
    let mut sum: Array2<Complex64> = Array2::eye(dim);
    let mut term: Array2<Complex64> = Array2::eye(dim);
    for k in 1..60 {
        term = term.dot(&a).mapv(|z| z / k as f64);
        sum = &sum + &term;
        let biggest = term.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if biggest < 1e-22 {
            break;
        }
    }
    sum
}

/// Criterion 10: oracle- and invariant-based property suite.
pub fn criterion_10() -> SimResult<Vec<Claim>> {
    let mut claims = Vec::new();
    let grid = linear_grid(0.0, 4.0 * PI, 501);

    // (a) survival probability never increases along a trajectory
    let mut worst_increase = f64::NEG_INFINITY;
    // (b) lossless trajectories keep survival at 1
    let mut worst_unit_dev = 0.0f64;
    for (n, omega, gamma, init) in trajectory_sets() {
        let h = build_hamiltonian(&sym_config(n, omega, gamma));
        let psi0 = init.build(n)?;
        let points = propagate_grid(&h, &psi0, &grid)?;
        for w in points.windows(2) {
            worst_increase =
                worst_increase.max(w[1].survival_probability - w[0].survival_probability);
        }
        if gamma == 0.0 {
            for p in &points {
                worst_unit_dev = worst_unit_dev.max((p.survival_probability - 1.0).abs());
            }
        }
    }
    claims.push(Claim::new(
        "c10a-norm-monotone",
        "max increase of survival between consecutive grid points, all parameter sets",
        worst_increase,
        "<= 1e-9",
        worst_increase <= 1e-9,
    ));
    claims.push(Claim::new(
        "c10b-survival-unit",
        "max |survival - 1| along lossless trajectories",
        worst_unit_dev,
        "<= 1e-9",
        worst_unit_dev <= 1e-9,
    ));

    // (b) the lossless propagator is unitary
    let mut worst_unitarity = 0.0f64;
    for &(n, omega) in &[(3usize, 100.0), (3, 0.5), (4, 50.0)] {
        let h = build_hamiltonian(&sym_config(n, omega, 0.0));
        let u = crate::evolve::propagator(&h, PI)?;
        let gram = u.dagger().compose(&u)?;
        for r in 0..u.dim() {
            for c in 0..u.dim() {
                let want = if r == c { 1.0 } else { 0.0 };
                worst_unitarity =
                    worst_unitarity.max((gram.matrix()[[r, c]] - want).norm());
            }
        }
    }
    claims.push(Claim::new(
        "c10b-unitarity",
        "max |U^dag U - I| entry for lossless propagators at Jt=pi",
        worst_unitarity,
        "<= 1e-10",
        worst_unitarity <= 1e-10,
    ));

    // (c) agreement with the 1e4-substep Taylor oracle at Jt = pi
    let mut worst_oracle = 0.0f64;
    for (n, omega, gamma, init) in trajectory_sets() {
        if n != 3 {
            continue; // oracle suite covers the three-qubit parameter sets
        }
        let h = build_hamiltonian(&sym_config(n, omega, gamma));
        let psi0 = init.build(n)?;
        let direct = normalize(&evolve(&h, &psi0, PI)?.state)?.0;
        let steps = 10_000usize;
        let u_dt = taylor_step_matrix(&h, PI / steps as f64);
        let mut amps: Array1<Complex64> = psi0.amplitudes().clone();
        for _ in 0..steps {
            amps = u_dt.dot(&amps);
        }
        let oracle = normalize(&StateVector::new(amps, n)?)?.0;
        // compare up to the global phase the two normalizations share
        for (a, b) in direct.amplitudes().iter().zip(oracle.amplitudes()) {
            worst_oracle = worst_oracle.max((a - b).norm());
        }
    }
    claims.push(Claim::new(
        "c10c-substep-oracle",
        "max per-amplitude deviation from the 1e4-substep propagator at Jt=pi",
        worst_oracle,
        "<= 1e-8",
        worst_oracle <= 1e-8,
    ));

    // (d) three-tangle is invariant under local unitaries
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a_6e_67_6c_65);
    let mut worst_tau_dev = 0.0f64;
    for _ in 0..1000 {
        let psi = random_state(&mut rng, 3);
        let tau = three_tangle(&psi)?;
        let rotated = apply_random_local_unitaries(&mut rng, &psi);
        let tau_rot = three_tangle(&rotated)?;
        worst_tau_dev = worst_tau_dev.max((tau - tau_rot).abs());
    }
    claims.push(Claim::new(
        "c10d-tau-lu-invariance",
        "max |tau(U_loc psi) - tau(psi)| over 1000 random states and local unitaries",
        worst_tau_dev,
        "<= 1e-9",
        worst_tau_dev <= 1e-9,
    ));

    // (e) three-tangle reference values
    let mut worst_ref = (three_tangle(&ghz_state(3)?)? - 1.0).abs();
    let w_state = {
        let w = 1.0 / 3f64.sqrt();
        let mut amps = Array1::zeros(8);
        amps[1] = Complex64::new(w, 0.0);
        amps[2] = Complex64::new(w, 0.0);
        amps[4] = Complex64::new(w, 0.0);
        StateVector::new(amps, 3)?
    };
    worst_ref = worst_ref.max(three_tangle(&w_state)?.abs());
    for k in 0..=32 {
        let theta = k as f64 / 32.0 * PI;
        let mut amps = Array1::zeros(8);
        amps[0] = Complex64::new(theta.cos(), 0.0);
        amps[7] = Complex64::new(theta.sin(), 0.0);
        let tau = three_tangle(&StateVector::new(amps, 3)?)?;
        worst_ref = worst_ref.max((tau - (2.0 * theta).sin().powi(2)).abs());
    }
    claims.push(Claim::new(
        "c10e-tau-reference",
        "max deviation of tau from its closed forms on GHZ, W, and corner superpositions",
        worst_ref,
        "<= 1e-10",
        worst_ref <= 1e-10,
    ));

    // (f) GHZ two-qubit marginals carry no concurrence
    let mut worst_conc = 0.0f64;
    for n in [3usize, 4] {
        let rho = DensityMatrix::from_pure(&ghz_state(n)?)?;
        for a in 1..=n {
            for b in (a + 1)..=n {
                let marginal = partial_trace(&rho, &[a, b])?;
                worst_conc = worst_conc.max(pairwise_concurrence(&marginal)?);
            }
        }
    }
    claims.push(Claim::new(
        "c10f-ghz-marginal-concurrence",
        "max pairwise concurrence over all GHZ two-qubit marginals, n=3 and 4",
        worst_conc,
        "<= 1e-9",
        worst_conc <= 1e-9,
    ));

    // (g) symmetric configurations keep every qubit's entropy equal
    let mut worst_perm = 0.0f64;
    for (n, omega, gamma, t) in [
        (3usize, 50.0, 1.0, 0.7),
        (3, 0.1, 0.1, PI / 2.0),
        (3, 10.0, 6.0, PI),
        (4, 50.0, 6.0, PI),
    ] {
        let init = if omega < 1.0 {
            InitialState::SpinCoherent { phi: SPIN_COHERENT_DEFAULT_PHI }.build(n)?
        } else {
            all_f(n)
        };
        let psi = evolved_normalized(n, omega, gamma, &init, t)?;
        let rep = report(&psi, t, 1.0)?;
        for s in &rep.entropies {
            worst_perm = worst_perm.max((s - rep.entropies[0]).abs());
        }
    }
    claims.push(Claim::new(
        "c10g-entropy-permutation",
        "max |S_j - S_1| for evolved symmetric configurations",
        worst_perm,
        "<= 1e-9",
        worst_perm <= 1e-9,
    ));

    Ok(claims)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> StateVector {
    let dim = 1usize << n;
    let amps: Array1<Complex64> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let psi = StateVector::new(amps, n).expect("dimension is 2^n by construction");
    normalize(&psi).expect("Gaussian vectors are nonzero").0
}

/// Random product of single-qubit unitaries applied through the dense embed
/// path.
fn apply_random_local_unitaries(rng: &mut ChaCha8Rng, psi: &StateVector) -> StateVector {
    let n = psi.n_qubits();
    let mut out = psi.clone();
    for j in 1..=n {
        let (a, b, g) = (
            rng.random_range(0.0..TAU),
            rng.random_range(0.0..PI),
            rng.random_range(0.0..TAU),
        );
        // Rz(a) Ry(b) Rz(g), an arbitrary SU(2) element up to global phase
        let (cb, sb) = ((b / 2.0).cos(), (b / 2.0).sin());
        let u = ndarray::array![
            [
                Complex64::from_polar(cb, (a + g) / 2.0),
                Complex64::from_polar(-sb, (a - g) / 2.0)
            ],
            [
                Complex64::from_polar(sb, -(a - g) / 2.0),
                Complex64::from_polar(cb, -(a + g) / 2.0)
            ]
        ];
        let embedded = crate::operator::embed_single_qubit_op(&u, j, n)
            .expect("valid qubit index");
        out = embedded.apply(&out).expect("dimensions agree");
    }
    out
}

/// Evaluate every claim. Failures are reported, never raised.
pub fn check_claims() -> SimResult<Vec<Claim>> {
    let mut all = Vec::new();
    all.extend(criterion_1()?);
    all.extend(criterion_2()?);
    all.extend(criterion_3()?);
    all.extend(criterion_4()?);
    all.extend(criterion_5()?);
    all.extend(criterion_6()?);
    all.extend(criterion_7()?);
    all.extend(criterion_8()?);
    all.extend(criterion_9()?);
    all.extend(criterion_10()?);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_rendering_is_stable() {
        let c = Claim::new("x-check", "a measured thing", 0.5, ">= 0.25", true);
        let line = c.render();
        assert!(line.contains("x-check"));
        assert!(line.contains("PASS"));
        assert!(line.contains(">= 0.25"));
    }

    #[test]
    fn random_states_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..32 {
            let psi = random_state(&mut rng, 3);
            assert!(psi.is_normalized(1e-12));
            let rotated = apply_random_local_unitaries(&mut rng, &psi);
            assert!(rotated.is_normalized(1e-9));
        }
    }
}
