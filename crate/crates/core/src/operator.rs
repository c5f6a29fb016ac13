//! Dense operators on the n-qubit space: single-qubit embeddings and the
//! driven, lossy, all-to-all coupled Hamiltonian.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::config::{SystemConfig, MAX_QUBITS};
use crate::error::{SimError, SimResult};
use crate::state::{qubit_bit, qubit_mask, StateVector};

/// Dense complex 2^n x 2^n matrix acting on the n-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: Array2<Complex64>,
    n_qubits: usize,
}

impl Operator {
    /// Wrap a matrix; it must be square with dimension 2^n.
    pub fn new(matrix: Array2<Complex64>, n_qubits: usize) -> SimResult<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(SimError::invalid(format!(
                "qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n_qubits}"
            )));
        }
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(SimError::invalid(format!(
                "operator must be {dim}x{dim} for n = {n_qubits}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { matrix, n_qubits })
    }

    pub fn identity(n_qubits: usize) -> SimResult<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(SimError::invalid(format!(
                "qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n_qubits}"
            )));
        }
        let dim = 1usize << n_qubits;
        Ok(Self { matrix: Array2::eye(dim), n_qubits })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<Complex64> {
        self.matrix
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self { matrix: self.matrix.t().mapv(|z| z.conj()), n_qubits: self.n_qubits }
    }

    /// Matrix-vector application `M |psi>`.
    pub fn apply(&self, psi: &StateVector) -> SimResult<StateVector> {
        if psi.dim() != self.dim() {
            return Err(SimError::invalid(format!(
                "dimension mismatch: operator is {}x{} but state has length {}",
                self.dim(),
                self.dim(),
                psi.dim()
            )));
        }
        let amps: Array1<Complex64> = self.matrix.dot(psi.amplitudes());
        StateVector::new(amps, self.n_qubits)
    }

    /// Matrix-matrix product `self * other`.
    pub fn compose(&self, other: &Operator) -> SimResult<Operator> {
        if self.dim() != other.dim() {
            return Err(SimError::invalid(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Operator { matrix: self.matrix.dot(&other.matrix), n_qubits: self.n_qubits })
    }

    /// Largest entrywise deviation from Hermiticity, max |M - M^dag|.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let d = (self.matrix[[r, c]] - self.matrix[[c, r]].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Transition operator `|e><f|` on one qubit, in the (|e>, |f>) basis.
pub fn sigma() -> Array2<Complex64> {
    ndarray::array![[c(0.0), c(1.0)], [c(0.0), c(0.0)]]
}

/// `|f><e|`, the adjoint of [`sigma`].
pub fn sigma_dagger() -> Array2<Complex64> {
    ndarray::array![[c(0.0), c(0.0)], [c(1.0), c(0.0)]]
}

/// Drive operator `sigma + sigma^dag`, flipping |e> <-> |f|.
pub fn sigma_x() -> Array2<Complex64> {
    ndarray::array![[c(0.0), c(1.0)], [c(1.0), c(0.0)]]
}

/// Projector `|e><e|` onto the decaying level.
pub fn excited_projector() -> Array2<Complex64> {
    ndarray::array![[c(1.0), c(0.0)], [c(0.0), c(0.0)]]
}

/// Embed a single-qubit operator on qubit `j` (1-based) of an `n`-qubit
/// register: identity on every other tensor factor.
pub fn embed_single_qubit_op(
    op: &Array2<Complex64>,
    j: usize,
    n: usize,
) -> SimResult<Operator> {
    if op.nrows() != 2 || op.ncols() != 2 {
        return Err(SimError::invalid(format!(
            "single-qubit operator must be 2x2, got {}x{}",
            op.nrows(),
            op.ncols()
        )));
    }
    if n == 0 || n > MAX_QUBITS {
        return Err(SimError::invalid(format!(
            "qubit count must satisfy 1 <= n <= {MAX_QUBITS}, got {n}"
        )));
    }
    if j < 1 || j > n {
        return Err(SimError::invalid(format!(
            "qubit index must satisfy 1 <= j <= {n}, got {j}"
        )));
    }
    let dim = 1usize << n;
    let mask = qubit_mask(j, n);
    let mut m = Array2::zeros((dim, dim));
    // Walk the indices with qubit j in |e>; each yields a 2x2 block against
    // its partner index with qubit j flipped to |f>.
    for base in 0..dim {
        if base & mask != 0 {
            continue;
        }
        let flipped = base | mask;
        m[[base, base]] = op[[0, 0]];
        m[[base, flipped]] = op[[0, 1]];
        m[[flipped, base]] = op[[1, 0]];
        m[[flipped, flipped]] = op[[1, 1]];
    }
    Operator::new(m, n)
}

/// Assemble the register Hamiltonian
///
/// ```text
/// H = sum_j [(delta_j - i gamma_j / 2) |e><e|_j + omega_j sx_j]
///   + sum_{j<k} J_jk (sigma_j^dag sigma_k + sigma_j sigma_k^dag)
/// ```
///
/// under the crate-wide basis convention. With all `gamma = 0` the result is
/// Hermitian; otherwise `H - H^dag = -i sum_j gamma_j |e><e|_j`.
pub fn build_hamiltonian(config: &SystemConfig) -> Operator {
    let n = config.n_qubits();
    let dim = config.dim();
    let mut h: Array2<Complex64> = Array2::zeros((dim, dim));

    for i in 0..dim {
        // Diagonal: each qubit in |e> contributes delta_j - i gamma_j / 2.
        let mut d = Complex64::new(0.0, 0.0);
        for j in 1..=n {
            if qubit_bit(i, j, n) == 0 {
                d += Complex64::new(config.delta()[j - 1], -0.5 * config.gamma()[j - 1]);
            }
        }
        h[[i, i]] = d;

        // Drive: omega_j flips qubit j either way.
        for j in 1..=n {
            let flipped = i ^ qubit_mask(j, n);
            h[[flipped, i]] += c(config.omega()[j - 1]);
        }

        // Exchange: J_jk moves the |e> label between qubits j and k.
        for j in 1..=n {
            for k in (j + 1)..=n {
                if qubit_bit(i, j, n) != qubit_bit(i, k, n) {
                    let target = i ^ qubit_mask(j, n) ^ qubit_mask(k, n);
                    h[[target, i]] += c(config.coupling()[[j - 1, k - 1]]);
                }
            }
        }
    }

    Operator { matrix: h, n_qubits: n }
}
