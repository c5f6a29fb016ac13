//! State vectors over the 2^n bare basis, and the named initial/target
//! states used throughout.
//!
//! Basis convention, binding for the whole crate: basis index `i` is read as
//! `n` bits with qubit 1 in the most significant position; bit value 0 means
//! the qubit is in `|e>`, bit value 1 means `|f>`. For n = 3 this makes index
//! 0 = `|eee>` and index 7 = `|fff>`.

use std::f64::consts::PI;

use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::MAX_QUBITS;
use crate::error::{SimError, SimResult};

/// Bit mask selecting qubit `j` (1-based) in an `n`-qubit basis index.
#[inline]
pub fn qubit_mask(j: usize, n: usize) -> usize {
    debug_assert!(j >= 1 && j <= n);
    1 << (n - j)
}

/// Bit of qubit `j` (1-based) in basis index `i`: 0 for `|e>`, 1 for `|f>`.
#[inline]
pub fn qubit_bit(i: usize, j: usize, n: usize) -> usize {
    (i >> (n - j)) & 1
}

/// Default spin-coherent phase, used when no phase is given explicitly.
pub const SPIN_COHERENT_DEFAULT_PHI: f64 = 0.288 * PI;

/// Complex amplitude vector over the 2^n bare basis. Not necessarily
/// normalized; evolution under a lossy Hamiltonian shrinks the norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Array1<Complex64>,
    n_qubits: usize,
}

impl StateVector {
    /// Wrap an amplitude vector; its length must be 2^n.
    pub fn new(amplitudes: Array1<Complex64>, n_qubits: usize) -> SimResult<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(SimError::invalid(format!(
                "qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n_qubits}"
            )));
        }
        if amplitudes.len() != 1 << n_qubits {
            return Err(SimError::invalid(format!(
                "amplitude vector has length {}, expected 2^{n_qubits} = {}",
                amplitudes.len(),
                1usize << n_qubits
            )));
        }
        Ok(Self { amplitudes, n_qubits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Array1<Complex64> {
        self.amplitudes
    }

    /// Squared Euclidean norm <psi|psi>.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product <self|other>, conjugating `self`.
    pub fn inner(&self, other: &StateVector) -> SimResult<Complex64> {
        if self.dim() != other.dim() {
            return Err(SimError::invalid(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub(crate) fn map_amplitudes(&self, f: impl FnMut(Complex64) -> Complex64) -> Self {
        Self { amplitudes: self.amplitudes.mapv(f), n_qubits: self.n_qubits }
    }
}

/// Normalized tensor product of per-qubit states given as `(amp_e, amp_f)`
/// pairs, one per qubit, qubit 1 first.
pub fn product_state(per_qubit: &[(Complex64, Complex64)]) -> SimResult<StateVector> {
    let n = per_qubit.len();
    if n == 0 || n > MAX_QUBITS {
        return Err(SimError::invalid(format!(
            "qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n}"
        )));
    }
    let mut amps: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
    for (j, &(e, f)) in per_qubit.iter().enumerate() {
        let norm = (e.norm_sqr() + f.norm_sqr()).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(SimError::invalid(format!(
                "qubit {} single-qubit state has zero or non-finite norm",
                j + 1
            )));
        }
        let (e, f) = (e / norm, f / norm);
        let mut next = Vec::with_capacity(amps.len() * 2);
        for &a in &amps {
            next.push(a * e);
            next.push(a * f);
        }
        amps = next;
    }
    StateVector::new(Array1::from_vec(amps), n)
}

/// Identical superposition `(|f> + e^{i phi} |e>)/sqrt(2)` on every qubit.
pub fn spin_coherent_state(phi: f64, n: usize) -> SimResult<StateVector> {
    if !phi.is_finite() {
        return Err(SimError::invalid("spin-coherent phase must be finite"));
    }
    let e = Complex64::from_polar(1.0, phi);
    let f = Complex64::new(1.0, 0.0);
    product_state(&vec![(e, f); n])
}

/// `(|e..e> + |f..f>)/sqrt(2)`; requires n >= 2.
pub fn ghz_state(n: usize) -> SimResult<StateVector> {
    if n < 2 {
        return Err(SimError::invalid(format!("GHZ state requires n >= 2, got {n}")));
    }
    if n > MAX_QUBITS {
        return Err(SimError::invalid(format!("qubit count must be <= {MAX_QUBITS}, got {n}")));
    }
    let dim = 1 << n;
    let mut amps = Array1::zeros(dim);
    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = w;
    amps[dim - 1] = w;
    StateVector::new(amps, n)
}

/// Selector for the named initial states reachable from configuration files
/// and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialState {
    /// `|f>^(x n)`, every qubit in the long-lived level.
    AllF,
    /// Spin coherent state with azimuthal phase `phi` (radians).
    SpinCoherent { phi: f64 },
    /// The GHZ target state itself.
    Ghz,
}

impl InitialState {
    pub fn build(&self, n: usize) -> SimResult<StateVector> {
        match *self {
            InitialState::AllF => {
                product_state(&vec![(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)); n])
            }
            InitialState::SpinCoherent { phi } => spin_coherent_state(phi, n),
            InitialState::Ghz => ghz_state(n),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            InitialState::AllF => "all-f".into(),
            InitialState::SpinCoherent { phi } => format!("spin-coherent:{phi}"),
            InitialState::Ghz => "ghz".into(),
        }
    }
}
