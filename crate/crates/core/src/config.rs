//! System parameterization: qubit count, detunings, decay rates, drive
//! amplitudes, and the all-to-all coupling matrix.
//!
//! All rates are dimensionless, expressed in units of a reference coupling
//! strength, and times are the corresponding dimensionless products.

use ndarray::Array2;

use crate::error::{SimError, SimResult};

/// Largest supported qubit count. Everything downstream is dense, so the
/// Hilbert-space dimension is capped at 2^12 = 4096.
pub const MAX_QUBITS: usize = 12;

/// Full parameterization of the qubit register Hamiltonian.
///
/// Holds per-qubit detunings `delta`, decay rates `gamma`, drive amplitudes
/// `omega`, and the symmetric coupling matrix `coupling` with zero diagonal.
/// Qubit indices are 1-based throughout the crate; vector entry `j - 1`
/// belongs to qubit `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    n_qubits: usize,
    delta: Vec<f64>,
    gamma: Vec<f64>,
    omega: Vec<f64>,
    coupling: Array2<f64>,
}

impl SystemConfig {
    /// Validating constructor. The qubit count is inferred from the input
    /// lengths, which must agree.
    pub fn new(
        delta: Vec<f64>,
        gamma: Vec<f64>,
        omega: Vec<f64>,
        coupling: Array2<f64>,
    ) -> SimResult<Self> {
        let n = delta.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(SimError::invalid(format!(
                "qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n}"
            )));
        }
        if gamma.len() != n || omega.len() != n {
            return Err(SimError::invalid(format!(
                "delta, gamma, omega must have equal lengths (got {}, {}, {})",
                n,
                gamma.len(),
                omega.len()
            )));
        }
        if coupling.nrows() != n || coupling.ncols() != n {
            return Err(SimError::invalid(format!(
                "coupling must be {n}x{n}, got {}x{}",
                coupling.nrows(),
                coupling.ncols()
            )));
        }
        for (name, v) in [("delta", &delta), ("gamma", &gamma), ("omega", &omega)] {
            if let Some(j) = v.iter().position(|x| !x.is_finite()) {
                return Err(SimError::invalid(format!("{name}[{j}] is not finite")));
            }
        }
        if let Some(j) = gamma.iter().position(|&g| g < 0.0) {
            return Err(SimError::invalid(format!(
                "gamma[{j}] = {} violates gamma >= 0",
                gamma[j]
            )));
        }
        for j in 0..n {
            if coupling[[j, j]] != 0.0 {
                return Err(SimError::invalid(format!(
                    "coupling[{j}][{j}] = {} violates zero diagonal",
                    coupling[[j, j]]
                )));
            }
            for k in 0..n {
                if !coupling[[j, k]].is_finite() {
                    return Err(SimError::invalid(format!("coupling[{j}][{k}] is not finite")));
                }
                if coupling[[j, k]] != coupling[[k, j]] {
                    return Err(SimError::invalid(format!(
                        "coupling[{j}][{k}] = {} != coupling[{k}][{j}] = {} violates symmetry",
                        coupling[[j, k]],
                        coupling[[k, j]]
                    )));
                }
            }
        }
        Ok(Self { n_qubits: n, delta, gamma, omega, coupling })
    }

    /// Uniform configuration: every qubit shares `delta`, `gamma`, `omega`,
    /// and every pair is coupled with the same strength `j`.
    pub fn symmetric(n: usize, delta: f64, gamma: f64, omega: f64, j: f64) -> SimResult<Self> {
        let coupling = Array2::from_shape_fn((n.max(1), n.max(1)), |(r, c)| {
            if r == c {
                0.0
            } else {
                j
            }
        });
        Self::new(vec![delta; n], vec![gamma; n], vec![omega; n], coupling)
    }

    /// True iff all detunings, decays, drives, and off-diagonal couplings are
    /// equal, which makes the dynamics identical on every qubit.
    pub fn is_symmetric(&self) -> bool {
        let eq = |v: &[f64]| v.iter().all(|&x| x == v[0]);
        if !(eq(&self.delta) && eq(&self.gamma) && eq(&self.omega)) {
            return false;
        }
        let n = self.n_qubits;
        if n < 2 {
            return true;
        }
        let j0 = self.coupling[[0, 1]];
        (0..n).all(|r| (0..n).all(|c| r == c || self.coupling[[r, c]] == j0))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Hilbert-space dimension 2^n.
    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn coupling(&self) -> &Array2<f64> {
        &self.coupling
    }

    /// Copy of this configuration with every decay rate set to `gamma`.
    pub fn with_uniform_gamma(&self, gamma: f64) -> SimResult<Self> {
        Self::new(
            self.delta.clone(),
            vec![gamma; self.n_qubits],
            self.omega.clone(),
            self.coupling.clone(),
        )
    }

    /// Copy of this configuration with every drive amplitude set to `omega`.
    pub fn with_uniform_omega(&self, omega: f64) -> SimResult<Self> {
        Self::new(
            self.delta.clone(),
            self.gamma.clone(),
            vec![omega; self.n_qubits],
            self.coupling.clone(),
        )
    }
}
