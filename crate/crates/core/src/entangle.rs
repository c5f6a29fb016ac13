//! Entanglement diagnostics: partial trace, von Neumann entropy, the
//! three-tangle, target-state fidelity, pairwise concurrence, and local
//! phase-gate corrections.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64;

use crate::error::{SimError, SimResult};
use crate::state::{ghz_state, qubit_bit, qubit_mask, StateVector};

/// Eigenvalues below this are treated as exact zeros inside logarithms and
/// square roots, absorbing round-off negativity.
const EIGEN_CLAMP: f64 = 1e-12;

/// Dense Hermitian density matrix over a subset of the register's qubits.
///
/// `labels` records which original qubits (1-based) the matrix lives on, in
/// ascending order; `labels[0]` is the most significant bit of the reduced
/// basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Array2<Complex64>,
    labels: Vec<usize>,
}

impl DensityMatrix {
    /// Wrap a matrix over the given qubit labels.
    pub fn new(matrix: Array2<Complex64>, labels: Vec<usize>) -> SimResult<Self> {
        if labels.is_empty() {
            return Err(SimError::invalid("density matrix needs at least one qubit label"));
        }
        if labels.windows(2).any(|w| w[1] <= w[0]) || labels[0] == 0 {
            return Err(SimError::invalid(
                "qubit labels must be ascending, unique, and 1-based",
            ));
        }
        let dim = 1usize << labels.len();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(SimError::invalid(format!(
                "density matrix over {} qubits must be {dim}x{dim}, got {}x{}",
                labels.len(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix, labels })
    }

    /// Pure-state density matrix `|psi><psi|` over all qubits of `psi`.
    pub fn from_pure(psi: &StateVector) -> SimResult<Self> {
        let dim = psi.dim();
        let a = psi.amplitudes();
        let mut m = Array2::zeros((dim, dim));
        for r in 0..dim {
            for c in 0..dim {
                m[[r, c]] = a[r] * a[c].conj();
            }
        }
        Self::new(m, (1..=psi.n_qubits()).collect())
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Original qubit indices this matrix lives on, ascending.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.matrix[[i, i]]).sum()
    }

    /// Check the density-matrix invariants: Hermitian and unit trace within
    /// 1e-10, eigenvalues above -1e-10.
    pub fn validate(&self) -> SimResult<()> {
        let n = self.dim();
        for r in 0..n {
            for c in r..n {
                if (self.matrix[[r, c]] - self.matrix[[c, r]].conj()).norm() > 1e-10 {
                    return Err(SimError::invalid(format!(
                        "density matrix is not Hermitian at ({r}, {c})"
                    )));
                }
            }
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(SimError::invalid(format!(
                "density matrix trace must be 1, got {tr}"
            )));
        }
        let evals = hermitian_eigenvalues(&self.matrix)?;
        if evals.iter().any(|&l| l < -1e-10) {
            return Err(SimError::invalid(
                "density matrix has an eigenvalue below -1e-10",
            ));
        }
        Ok(())
    }
}

fn hermitian_eigenvalues(m: &Array2<Complex64>) -> SimResult<Vec<f64>> {
    let (vals, _) = m
        .eigh(UPLO::Lower)
        .map_err(|e| SimError::NumericalFailure(format!("Hermitian eigensolver failed: {e}")))?;
    Ok(vals.to_vec())
}

/// Trace out every qubit not listed in `keep`, preserving the trace.
///
/// `keep` is interpreted as a set of original qubit labels; it must be a
/// nonempty, duplicate-free subset of `rho.labels()`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> SimResult<DensityMatrix> {
    if keep.is_empty() {
        return Err(SimError::invalid("partial trace requires a nonempty keep set"));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    if keep_sorted.windows(2).any(|w| w[1] == w[0]) {
        return Err(SimError::invalid("keep set contains duplicate qubit labels"));
    }
    let positions: Vec<usize> = keep_sorted
        .iter()
        .map(|q| {
            rho.labels().iter().position(|l| l == q).ok_or_else(|| {
                SimError::invalid(format!(
                    "qubit {q} is not among the density matrix labels {:?}",
                    rho.labels()
                ))
            })
        })
        .collect::<SimResult<_>>()?;

    let total = rho.n_qubits();
    let traced: Vec<usize> = (0..total).filter(|p| !positions.contains(p)).collect();
    let (nk, nt) = (positions.len(), traced.len());
    let (dim_k, dim_t) = (1usize << nk, 1usize << nt);

    // scatter tables from reduced / environment indices to full indices
    let scatter = |bits: usize, posns: &[usize]| -> usize {
        let mut full = 0usize;
        for (i, &p) in posns.iter().enumerate() {
            if (bits >> (posns.len() - 1 - i)) & 1 == 1 {
                full |= 1 << (total - 1 - p);
            }
        }
        full
    };
    let scat_k: Vec<usize> = (0..dim_k).map(|b| scatter(b, &positions)).collect();
    let scat_t: Vec<usize> = (0..dim_t).map(|b| scatter(b, &traced)).collect();

    let mut out = Array2::zeros((dim_k, dim_k));
    for r in 0..dim_k {
        for c in 0..dim_k {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..dim_t {
                acc += rho.matrix[[scat_k[r] | scat_t[e], scat_k[c] | scat_t[e]]];
            }
            out[[r, c]] = acc;
        }
    }
    DensityMatrix::new(out, keep_sorted)
}

/// Single-qubit marginal of a pure state without materializing the full
/// density matrix; agrees with `partial_trace(from_pure(psi), [j])`.
pub(crate) fn reduced_single_qubit(psi: &StateVector, j: usize) -> SimResult<Array2<Complex64>> {
    let n = psi.n_qubits();
    if j < 1 || j > n {
        return Err(SimError::invalid(format!(
            "qubit index must satisfy 1 <= j <= {n}, got {j}"
        )));
    }
    let mask = qubit_mask(j, n);
    let a = psi.amplitudes();
    let mut rho = Array2::zeros((2, 2));
    for i in 0..psi.dim() {
        if i & mask != 0 {
            continue;
        }
        let flip = i | mask;
        rho[[0, 0]] += a[i] * a[i].conj();
        rho[[0, 1]] += a[i] * a[flip].conj();
        rho[[1, 0]] += a[flip] * a[i].conj();
        rho[[1, 1]] += a[flip] * a[flip].conj();
    }
    Ok(rho)
}

/// Von Neumann entropy `-Tr[rho ln rho]` in nats. Eigenvalues at or below
/// 1e-12 contribute zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let evals = hermitian_eigenvalues(&rho.matrix)
        .expect("Hermitian eigendecomposition of a density matrix");
    evals
        .iter()
        .filter(|&&l| l > EIGEN_CLAMP)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Residual tripartite entanglement of a normalized three-qubit pure state:
/// `tau = 4 |d1 - 2 d2 + 4 d3|`, built from degree-4 amplitude invariants.
/// 1 for the GHZ state, 0 for product, biseparable, and W states.
pub fn three_tangle(psi: &StateVector) -> SimResult<f64> {
    if psi.n_qubits() != 3 {
        return Err(SimError::invalid(format!(
            "three-tangle is defined for 3 qubits, got {}",
            psi.n_qubits()
        )));
    }
    if !psi.is_normalized(1e-9) {
        return Err(SimError::invalid(format!(
            "three-tangle requires a normalized state (norm^2 = {})",
            psi.norm_sqr()
        )));
    }
    let a = psi.amplitudes();
    let (aeee, aeef, aefe, aeff) = (a[0], a[1], a[2], a[3]);
    let (afee, afef, affe, afff) = (a[4], a[5], a[6], a[7]);
    let sq = |z: Complex64| z * z;

    let d1 = sq(aeee * afff) + sq(aeef * affe) + sq(aefe * afef) + sq(afee * aeff);
    let d2 = aeee * afff * (aeff * afee + afef * aefe + affe * aeef)
        + aeff * afee * afef * aefe
        + aeff * afee * affe * aeef
        + afef * aefe * affe * aeef;
    let d3 = aeee * affe * afef * aeff + afff * aeef * aefe * afee;

    let tau = 4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm();
    Ok(tau.min(1.0 + 1e-9))
}

/// Squared overlap `|<psi|target>|^2`; invariant under global phases.
pub fn fidelity(psi: &StateVector, target: &StateVector) -> SimResult<f64> {
    let overlap = psi.inner(target)?;
    Ok(overlap.norm_sqr())
}

/// Apply the phase gate `diag(e^{i phi}, 1)` (phase on `|e>`) to qubit `j`.
pub fn apply_local_phase(psi: &StateVector, j: usize, phi: f64) -> SimResult<StateVector> {
    let n = psi.n_qubits();
    if j < 1 || j > n {
        return Err(SimError::invalid(format!(
            "qubit index must satisfy 1 <= j <= {n}, got {j}"
        )));
    }
    if !phi.is_finite() {
        return Err(SimError::invalid("phase must be finite"));
    }
    let mask = qubit_mask(j, n);
    let phase = Complex64::from_polar(1.0, phi);
    let amps: Array1<Complex64> = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| if i & mask == 0 { a * phase } else { a })
        .collect();
    StateVector::new(amps, n)
}

/// Maximize `F((Z(phi_1) x .. x Z(phi_n)) psi, target)` over per-qubit phase
/// gates: coarse grid search over `[0, 2pi)^n` followed by cyclic coordinate
/// refinement, each coordinate update being the exact one-dimensional
/// optimum. Returns the phases and the achieved fidelity, which is never
/// below the uncorrected `fidelity(psi, target)`.
pub fn optimize_local_phases(
    psi: &StateVector,
    target: &StateVector,
    grid_points: usize,
) -> SimResult<(Vec<f64>, f64)> {
    if grid_points < 8 {
        return Err(SimError::invalid(format!(
            "grid_points must be >= 8, got {grid_points}"
        )));
    }
    if psi.dim() != target.dim() {
        return Err(SimError::invalid(format!(
            "dimension mismatch: {} vs {}",
            psi.dim(),
            target.dim()
        )));
    }
    let n = psi.n_qubits();
    let dim = psi.dim();
    // overlap(phases) = sum_i w_i exp(i sum_{j in e-set(i)} phi_j)
    let w: Vec<Complex64> = (0..dim)
        .map(|i| target.amplitudes()[i].conj() * psi.amplitudes()[i])
        .collect();

    let objective = |phases: &[f64]| -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &wi) in w.iter().enumerate() {
            let mut theta = 0.0;
            for (j, &p) in phases.iter().enumerate() {
                if qubit_bit(i, j + 1, n) == 0 {
                    theta += p;
                }
            }
            acc += wi * Complex64::from_polar(1.0, theta);
        }
        acc.norm_sqr()
    };

    // coarse stage: full grid when affordable, a fixed set of starts otherwise
    let step = std::f64::consts::TAU / grid_points as f64;
    let mut best_phases = vec![0.0; n];
    let mut best = objective(&best_phases);
    let full_grid_size = (grid_points as f64).powi(n as i32);
    if full_grid_size <= (1u64 << 22) as f64 {
        let total = grid_points.pow(n as u32);
        let mut phases = vec![0.0; n];
        for flat in 0..total {
            let mut rem = flat;
            for p in phases.iter_mut() {
                *p = (rem % grid_points) as f64 * step;
                rem /= grid_points;
            }
            let f = objective(&phases);
            if f > best {
                best = f;
                best_phases.copy_from_slice(&phases);
            }
        }
    } else {
        for g in 0..grid_points {
            let phases = vec![g as f64 * step; n];
            let f = objective(&phases);
            if f > best {
                best = f;
                best_phases = phases;
            }
        }
    }

    // refinement: along each coordinate the overlap is A + e^{i phi} B, so
    // the exact maximizer is phi = arg(A) - arg(B)
    let mut phases = best_phases;
    for _ in 0..200 {
        let mut largest_update = 0.0f64;
        for j in 0..n {
            let mut a = Complex64::new(0.0, 0.0);
            let mut b = Complex64::new(0.0, 0.0);
            for (i, &wi) in w.iter().enumerate() {
                let mut theta = 0.0;
                for (jj, &p) in phases.iter().enumerate() {
                    if jj != j && qubit_bit(i, jj + 1, n) == 0 {
                        theta += p;
                    }
                }
                let term = wi * Complex64::from_polar(1.0, theta);
                if qubit_bit(i, j + 1, n) == 0 {
                    b += term;
                } else {
                    a += term;
                }
            }
            if a.norm() < 1e-300 || b.norm() < 1e-300 {
                continue; // objective is flat in this coordinate
            }
            let new = (a.arg() - b.arg()).rem_euclid(std::f64::consts::TAU);
            let mut delta = (new - phases[j]).abs();
            delta = delta.min(std::f64::consts::TAU - delta);
            largest_update = largest_update.max(delta);
            phases[j] = new;
        }
        if largest_update < 1e-7 {
            break;
        }
    }
    let refined = objective(&phases);
    if refined >= best {
        best = refined;
    } else {
        phases = vec![0.0; n]; // unreachable: refinement never decreases
    }
    Ok((phases, best))
}

/// Wootters concurrence of a two-qubit density matrix:
/// `max(0, l1 - l2 - l3 - l4)` with `l_i` the descending square roots of the
/// eigenvalues of `rho (Y x Y) rho* (Y x Y)`.
pub fn pairwise_concurrence(rho2: &DensityMatrix) -> SimResult<f64> {
    if rho2.n_qubits() != 2 {
        return Err(SimError::invalid(format!(
            "pairwise concurrence is defined for 2-qubit density matrices, got {} qubits",
            rho2.n_qubits()
        )));
    }
    rho2.validate()?;

    let (evals, vecs) = rho2
        .matrix
        .eigh(UPLO::Lower)
        .map_err(|e| SimError::NumericalFailure(format!("Hermitian eigensolver failed: {e}")))?;
    // rho^{1/2} from the clamped spectral decomposition
    let mut sqrt_rho: Array2<Complex64> = Array2::zeros((4, 4));
    for (k, &l) in evals.iter().enumerate() {
        let s = l.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        let v = vecs.column(k);
        for r in 0..4 {
            for c in 0..4 {
                sqrt_rho[[r, c]] += Complex64::new(s, 0.0) * v[r] * v[c].conj();
            }
        }
    }

    // (Y x Y) is real: antidiagonal (-1, 1, 1, -1)
    let mut yy: Array2<Complex64> = Array2::zeros((4, 4));
    yy[[0, 3]] = Complex64::new(-1.0, 0.0);
    yy[[1, 2]] = Complex64::new(1.0, 0.0);
    yy[[2, 1]] = Complex64::new(1.0, 0.0);
    yy[[3, 0]] = Complex64::new(-1.0, 0.0);

    let rho_tilde = yy.dot(&rho2.matrix.mapv(|z| z.conj())).dot(&yy);
    let m = sqrt_rho.dot(&rho_tilde).dot(&sqrt_rho);
    // symmetrize before the Hermitian solver to absorb round-off
    let m = (&m + &m.t().mapv(|z| z.conj())) * Complex64::new(0.5, 0.0);

    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&m)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Per-time-point bundle of the entanglement diagnostics.
#[derive(Debug, Clone)]
pub struct EntanglementReport {
    /// Dimensionless time of the sample.
    pub time: f64,
    /// Three-tangle; present only for three-qubit states.
    pub tau: Option<f64>,
    /// Single-qubit entropies `S_j` in nats, qubit 1 first.
    pub entropies: Vec<f64>,
    /// Squared overlap with the GHZ state.
    pub fidelity_ghz: f64,
    /// Best squared overlap with the GHZ state over per-qubit phase gates.
    pub fidelity_ghz_up_to_local_phases: f64,
    /// No-jump probability carried through from the propagation.
    pub survival: f64,
}

/// Grid points per axis used by [`report`] for the phase-gate search. The
/// GHZ overlap depends on the phases only through their sum, so a coarse
/// grid followed by exact coordinate refinement already finds the optimum.
const REPORT_PHASE_GRID: usize = 8;

/// Evaluate every diagnostic on a normalized state.
pub fn report(psi: &StateVector, time: f64, survival: f64) -> SimResult<EntanglementReport> {
    if !psi.is_normalized(1e-9) {
        return Err(SimError::invalid(format!(
            "report requires a normalized state (norm^2 = {})",
            psi.norm_sqr()
        )));
    }
    let n = psi.n_qubits();
    let tau = if n == 3 { Some(three_tangle(psi)?) } else { None };
    let mut entropies = Vec::with_capacity(n);
    for j in 1..=n {
        let rho_j = DensityMatrix::new(reduced_single_qubit(psi, j)?, vec![j])?;
        entropies.push(von_neumann_entropy(&rho_j));
    }
    let target = ghz_state(n)?;
    let fidelity_ghz = fidelity(psi, &target)?;
    let (_, fidelity_lp) = optimize_local_phases(psi, &target, REPORT_PHASE_GRID)?;
    Ok(EntanglementReport {
        time,
        tau,
        entropies,
        fidelity_ghz,
        fidelity_ghz_up_to_local_phases: fidelity_lp,
        survival,
    })
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use ndarray::Array1;
    use std::f64::consts::{LN_2, PI};

    use super::*;
    use crate::state::{ghz_state, product_state, InitialState};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state_from(amps: Vec<Complex64>, n: usize) -> StateVector {
        StateVector::new(Array1::from_vec(amps), n).unwrap()
    }

    fn w_state() -> StateVector {
        let w = 1.0 / 3f64.sqrt();
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[1] = c(w, 0.0); // |eef>
        amps[2] = c(w, 0.0); // |efe>
        amps[4] = c(w, 0.0); // |fee>
        state_from(amps, 3)
    }

    #[test]
    fn ghz_marginal_is_maximally_mixed() {
        let rho = DensityMatrix::from_pure(&ghz_state(3).unwrap()).unwrap();
        let r1 = partial_trace(&rho, &[1]).unwrap();
        assert_abs_diff_eq!(r1.matrix()[[0, 0]].re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r1.matrix()[[1, 1]].re, 0.5, epsilon = 1e-12);
        assert!(r1.matrix()[[0, 1]].norm() < 1e-12);
        assert_eq!(r1.labels(), &[1]);
    }

    #[test]
    fn product_state_marginal_is_pure() {
        // |ef>: tracing out qubit 2 leaves |e><e|
        let psi = product_state(&[(c(1.0, 0.0), c(0.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0))])
            .unwrap();
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let r = partial_trace(&rho, &[1]).unwrap();
        assert_abs_diff_eq!(r.matrix()[[0, 0]].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.matrix()[[1, 1]].re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn schmidt_marginal_by_hand() {
        let theta = 0.7f64;
        let mut amps = vec![c(0.0, 0.0); 4];
        amps[0] = c(theta.cos(), 0.0);
        amps[3] = c(theta.sin(), 0.0);
        let rho = DensityMatrix::from_pure(&state_from(amps, 2)).unwrap();
        let r = partial_trace(&rho, &[2]).unwrap();
        assert_abs_diff_eq!(r.matrix()[[0, 0]].re, theta.cos().powi(2), epsilon = 1e-12);
        assert_abs_diff_eq!(r.matrix()[[1, 1]].re, theta.sin().powi(2), epsilon = 1e-12);
        assert!(r.matrix()[[0, 1]].norm() < 1e-12);
    }

    #[test]
    fn partial_trace_composes_and_preserves_trace() {
        let psi = crate::evolve::normalize(&state_from(
            vec![
                c(0.3, 0.1),
                c(-0.2, 0.4),
                c(0.0, 0.5),
                c(0.1, -0.1),
                c(0.25, 0.0),
                c(-0.3, -0.3),
                c(0.4, 0.2),
                c(0.05, 0.35),
            ],
            3,
        ))
        .unwrap()
        .0;
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let direct = partial_trace(&rho, &[1]).unwrap();
        let staged = partial_trace(&partial_trace(&rho, &[1, 2]).unwrap(), &[1]).unwrap();
        for r in 0..2 {
            for cc in 0..2 {
                assert!((direct.matrix()[[r, cc]] - staged.matrix()[[r, cc]]).norm() < 1e-10);
            }
        }
        assert_abs_diff_eq!(direct.trace().re, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn partial_trace_rejects_bad_keep_sets() {
        let rho = DensityMatrix::from_pure(&ghz_state(3).unwrap()).unwrap();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[4]).is_err());
        assert!(partial_trace(&rho, &[1, 1]).is_err());
    }

    #[test]
    fn fast_single_qubit_marginal_matches_general_path() {
        let psi = crate::evolve::normalize(&state_from(
            (0..16).map(|k| c(0.1 * k as f64, 0.05 * (k as f64 - 7.0))).collect(),
            4,
        ))
        .unwrap()
        .0;
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        for j in 1..=4 {
            let fast = reduced_single_qubit(&psi, j).unwrap();
            let general = partial_trace(&rho, &[j]).unwrap();
            for r in 0..2 {
                for cc in 0..2 {
                    assert!((fast[[r, cc]] - general.matrix()[[r, cc]]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn entropy_examples() {
        // pure state
        let rho = DensityMatrix::from_pure(&ghz_state(2).unwrap()).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 0.0, epsilon = 1e-9);
        // maximally mixed qubit
        let mixed = DensityMatrix::new(
            Array2::from_diag(&Array1::from_vec(vec![c(0.5, 0.0), c(0.5, 0.0)])),
            vec![1],
        )
        .unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&mixed), LN_2, epsilon = 1e-12);
        // diag(0.9, 0.1); frozen from -0.9 ln 0.9 - 0.1 ln 0.1
        let skew = DensityMatrix::new(
            Array2::from_diag(&Array1::from_vec(vec![c(0.9, 0.0), c(0.1, 0.0)])),
            vec![1],
        )
        .unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&skew), 0.325082973391, epsilon = 1e-9);
    }

    #[test]
    fn three_tangle_reference_states() {
        assert_abs_diff_eq!(three_tangle(&ghz_state(3).unwrap()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(three_tangle(&w_state()).unwrap(), 0.0, epsilon = 1e-12);
        // cos t |eee> + sin t |fff> -> sin^2(2t)
        let theta = PI / 6.0;
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = c(theta.cos(), 0.0);
        amps[7] = c(theta.sin(), 0.0);
        let tau = three_tangle(&state_from(amps, 3)).unwrap();
        assert_abs_diff_eq!(tau, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn three_tangle_rejects_wrong_qubit_count() {
        assert!(three_tangle(&ghz_state(4).unwrap()).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let ghz = ghz_state(3).unwrap();
        assert_abs_diff_eq!(fidelity(&ghz, &ghz).unwrap(), 1.0, epsilon = 1e-12);

        let eee = product_state(&[(c(1.0, 0.0), c(0.0, 0.0)); 3]).unwrap();
        let fff = InitialState::AllF.build(3).unwrap();
        assert_abs_diff_eq!(fidelity(&eee, &fff).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fidelity(&ghz, &eee).unwrap(), 0.5, epsilon = 1e-12);

        // symmetry and global-phase invariance
        assert_abs_diff_eq!(
            fidelity(&eee, &ghz).unwrap(),
            fidelity(&ghz, &eee).unwrap(),
            epsilon = 1e-12
        );
        let rotated = eee.map_amplitudes(|a| a * Complex64::from_polar(1.0, 1.234));
        assert_abs_diff_eq!(
            fidelity(&rotated, &ghz).unwrap(),
            fidelity(&eee, &ghz).unwrap(),
            epsilon = 1e-12
        );

        assert!(fidelity(&ghz, &ghz_state(4).unwrap()).is_err());
    }

    #[test]
    fn local_phase_gate_examples() {
        let ghz2 = ghz_state(2).unwrap();
        let same = apply_local_phase(&ghz2, 1, 0.0).unwrap();
        assert_eq!(same, ghz2);

        // Z(pi) on qubit 1 flips the |ee> corner sign, killing the overlap
        let flipped = apply_local_phase(&ghz2, 1, PI).unwrap();
        assert_abs_diff_eq!(flipped.amplitudes()[0].re, -ghz2.amplitudes()[0].re, epsilon = 1e-12);
        assert_abs_diff_eq!(flipped.amplitudes()[3].re, ghz2.amplitudes()[3].re, epsilon = 1e-12);
        assert_abs_diff_eq!(fidelity(&flipped, &ghz2).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(flipped.norm_sqr(), 1.0, epsilon = 1e-12);

        assert!(apply_local_phase(&ghz2, 3, 0.1).is_err());
        assert!(apply_local_phase(&ghz2, 0, 0.1).is_err());
    }

    #[test]
    fn phase_optimization_recovers_known_rotation() {
        let ghz2 = ghz_state(2).unwrap();
        let (phases, best) = optimize_local_phases(&ghz2, &ghz2, 8).unwrap();
        assert!(best >= 1.0 - 1e-12);
        assert_eq!(phases.len(), 2);

        let twisted = apply_local_phase(&ghz2, 1, PI / 3.0).unwrap();
        let (_, recovered) = optimize_local_phases(&twisted, &ghz2, 8).unwrap();
        assert!((recovered - 1.0).abs() < 1e-6);
        // never worse than the raw fidelity
        assert!(recovered >= fidelity(&twisted, &ghz2).unwrap());
    }

    #[test]
    fn phase_optimization_validates_inputs() {
        let ghz2 = ghz_state(2).unwrap();
        assert!(optimize_local_phases(&ghz2, &ghz2, 7).is_err());
        assert!(optimize_local_phases(&ghz2, &ghz_state(3).unwrap(), 8).is_err());
    }

    #[test]
    fn concurrence_reference_states() {
        // Bell pair
        let bell = ghz_state(2).unwrap();
        let rho = DensityMatrix::from_pure(&bell).unwrap();
        assert_abs_diff_eq!(pairwise_concurrence(&rho).unwrap(), 1.0, epsilon = 1e-9);

        // product state |ef>
        let ef = product_state(&[(c(1.0, 0.0), c(0.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0))])
            .unwrap();
        let rho = DensityMatrix::from_pure(&ef).unwrap();
        assert_abs_diff_eq!(pairwise_concurrence(&rho).unwrap(), 0.0, epsilon = 1e-9);

        // two-qubit marginal of the GHZ state carries no pairwise entanglement
        let ghz3 = DensityMatrix::from_pure(&ghz_state(3).unwrap()).unwrap();
        let marginal = partial_trace(&ghz3, &[1, 2]).unwrap();
        assert_abs_diff_eq!(pairwise_concurrence(&marginal).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn concurrence_requires_two_qubits() {
        let rho = DensityMatrix::from_pure(&ghz_state(3).unwrap()).unwrap();
        assert!(pairwise_concurrence(&rho).is_err());
    }

    #[test]
    fn report_on_reference_states() {
        let rep = report(&ghz_state(3).unwrap(), 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(rep.tau.unwrap(), 1.0, epsilon = 1e-10);
        for s in &rep.entropies {
            assert_abs_diff_eq!(*s, LN_2, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(rep.fidelity_ghz, 1.0, epsilon = 1e-10);
        assert!(rep.fidelity_ghz_up_to_local_phases >= 1.0 - 1e-10);

        let rep = report(&InitialState::AllF.build(3).unwrap(), 0.5, 0.9).unwrap();
        assert_abs_diff_eq!(rep.tau.unwrap(), 0.0, epsilon = 1e-12);
        for s in &rep.entropies {
            assert_abs_diff_eq!(*s, 0.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(rep.fidelity_ghz, 0.5, epsilon = 1e-12);
        assert_eq!(rep.time, 0.5);
        assert_eq!(rep.survival, 0.9);

        // four qubits: no tangle entry, four entropies
        let rep = report(&ghz_state(4).unwrap(), 0.0, 1.0).unwrap();
        assert!(rep.tau.is_none());
        assert_eq!(rep.entropies.len(), 4);
    }
}
