//! Matrix exponential by scaling-and-squaring with a diagonal Padé(13,13)
//! approximant.
//!
//! The propagators here are exponentials of non-normal matrices, which rules
//! out eigendecomposition: near parameter values where eigenvectors coalesce
//! the eigenbasis is arbitrarily ill-conditioned, while Padé plus squaring
//! stays backward-stable. Strong drives push the scaled norm up to ~2e3,
//! which costs only a handful of extra squarings.

use ndarray::{Array1, Array2, Axis};
use num_complex::Complex64;

use crate::error::{SimError, SimResult};
use crate::operator::Operator;

/// Padé(13,13) numerator coefficients b_0..b_13.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Largest 1-norm for which Padé(13) alone meets double precision.
const THETA13: f64 = 5.371_920_351_148_152;

/// exp(A) for a square complex matrix, valid for non-normal `A`.
pub fn matrix_exponential(a: &Operator) -> SimResult<Operator> {
    let m = expm(a.matrix())?;
    Operator::new(m, a.n_qubits())
}

/// Raw matrix exponential on `Array2`, shared by the operator wrapper and
/// the propagation routines.
pub(crate) fn expm(a: &Array2<Complex64>) -> SimResult<Array2<Complex64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(SimError::invalid(format!(
            "matrix exponential requires a square matrix, got {}x{}",
            n,
            a.ncols()
        )));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SimError::invalid("matrix exponential input has non-finite entries"));
    }
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    if n == 1 {
        let mut out = Array2::zeros((1, 1));
        out[[0, 0]] = a[[0, 0]].exp();
        return Ok(out);
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new((0.5f64).powi(squarings as i32), 0.0);
    let scaled = a.mapv(|z| z * scale);

    let mut result = pade13(&scaled)?;
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Ok(result)
}

/// Padé(13,13) evaluation: exp(A) ~ (V - U)^-1 (V + U) with
/// U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I),
/// V =    A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I.
fn pade13(a: &Array2<Complex64>) -> SimResult<Array2<Complex64>> {
    let n = a.nrows();
    let eye: Array2<Complex64> = Array2::eye(n);
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    let b = |i: usize| Complex64::new(PADE13[i], 0.0);

    let w1 = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let w = a6.dot(&w1) + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &eye * b(1);
    let u = a.dot(&w);

    let v1 = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let v = a6.dot(&v1) + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &eye * b(0);

    let denom = &v - &u;
    let numer = &v + &u;
    solve_matrix(denom, numer)
}

/// Solve D X = N for X with one LU factorization of D.
fn solve_matrix(d: Array2<Complex64>, n: Array2<Complex64>) -> SimResult<Array2<Complex64>> {
    use ndarray_linalg::{Factorize, Solve};

    let lu = d
        .factorize()
        .map_err(|e| SimError::NumericalFailure(format!("LU factorization failed: {e}")))?;
    let dim = n.nrows();
    let mut out = Array2::zeros((dim, n.ncols()));
    for (c, col) in n.axis_iter(Axis(1)).enumerate() {
        let b: Array1<Complex64> = col.to_owned();
        let x = lu
            .solve(&b)
            .map_err(|e| SimError::NumericalFailure(format!("linear solve failed: {e}")))?;
        out.column_mut(c).assign(&x);
    }
    Ok(out)
}

/// Maximum column sum of entry moduli.
fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for c in a.axis_iter(Axis(1)) {
        worst = worst.max(c.iter().map(|z| z.norm()).sum());
    }
    worst
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use std::f64::consts::FRAC_PI_2;

    use super::*;
    use crate::config::SystemConfig;
    use crate::operator::build_hamiltonian;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z: Array2<Complex64> = Array2::zeros((4, 4));
        let e = expm(&z).unwrap();
        for r in 0..4 {
            for k in 0..4 {
                let want = if r == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(e[[r, k]].re, want, epsilon = 1e-14);
                assert_abs_diff_eq!(e[[r, k]].im, 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn rabi_rotation_closed_form() {
        // exp(-i t Omega sx) = cos(Omega t) I - i sin(Omega t) sx
        let omega_t = FRAC_PI_2;
        let a = array![[c(0.0, 0.0), c(0.0, -omega_t)], [c(0.0, -omega_t), c(0.0, 0.0)]];
        let e = expm(&a).unwrap();
        assert_abs_diff_eq!(e[[0, 0]].norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e[[0, 1]].im, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e[[1, 0]].im, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e[[1, 1]].norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn triangular_closed_form() {
        // exp([[-1, 3], [0, -2]]) has diagonal (e^-1, e^-2) and upper entry
        // 3 (e^-1 - e^-2) / ((-1) - (-2))
        let a = array![[c(-1.0, 0.0), c(3.0, 0.0)], [c(0.0, 0.0), c(-2.0, 0.0)]];
        let e = expm(&a).unwrap();
        let (e1, e2) = ((-1.0f64).exp(), (-2.0f64).exp());
        assert_abs_diff_eq!(e[[0, 0]].re, e1, epsilon = 1e-13);
        assert_abs_diff_eq!(e[[1, 1]].re, e2, epsilon = 1e-13);
        assert_abs_diff_eq!(e[[0, 1]].re, 3.0 * (e1 - e2), epsilon = 1e-13);
        assert_abs_diff_eq!(e[[1, 0]].norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn large_diagonal_needs_scaling() {
        let a = array![[c(50.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-50.0, 0.0)]];
        let e = expm(&a).unwrap();
        assert!((e[[0, 0]].re - 50f64.exp()).abs() / 50f64.exp() < 1e-12);
        assert!((e[[1, 1]].re - (-50f64).exp()).abs() < 1e-24);
    }

    #[test]
    fn strong_drive_propagator_is_unitary() {
        // ||A|| ~ 1.9e3: lossless strong drive over a full plotted window
        let cfg = SystemConfig::symmetric(3, 0.0, 0.0, 100.0, 1.0).unwrap();
        let h = build_hamiltonian(&cfg);
        let t = 2.0 * std::f64::consts::PI;
        let a = h.matrix().mapv(|z| z * c(0.0, -t));
        let u = expm(&a).unwrap();
        let udag_u = u.t().mapv(|z| z.conj()).dot(&u);
        for r in 0..8 {
            for k in 0..8 {
                let want = if r == k { 1.0 } else { 0.0 };
                assert!((udag_u[[r, k]].re - want).abs() < 1e-10);
                assert!(udag_u[[r, k]].im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn non_finite_input_rejected() {
        let a = array![[c(f64::NAN, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        assert!(expm(&a).is_err());
        let b = array![[c(f64::INFINITY, 0.0)]];
        assert!(expm(&b).is_err());
    }

    #[test]
    fn wrapper_checks_and_preserves_qubit_count() {
        let cfg = SystemConfig::symmetric(2, 0.0, 1.0, 2.0, 1.0).unwrap();
        let h = build_hamiltonian(&cfg);
        let e = matrix_exponential(&h).unwrap();
        assert_eq!(e.n_qubits(), 2);
        assert_eq!(e.dim(), 4);
    }
}
