//! Eigenvalue spectrum of the (generally non-Hermitian) Hamiltonian and its
//! phase classification.
//!
//! With pure loss the whole spectrum is shifted into the lower half plane by
//! a uniform imaginary offset, so realness is judged on the residuals after
//! subtracting the mean imaginary part. The raw eigenvalues are kept in the
//! report so the unshifted reading stays recoverable.

use num_complex::Complex64;

use crate::error::{SimError, SimResult};
use crate::operator::Operator;

/// Eigenvalue report for one Hamiltonian.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// All 2^n eigenvalues, sorted by real part (ties by imaginary part).
    pub eigenvalues: Vec<Complex64>,
    /// True iff every eigenvalue's imaginary part, after removing the mean
    /// imaginary offset, has magnitude at most the given tolerance.
    pub is_pt_symmetric_phase: bool,
    /// Max minus min imaginary part of the raw eigenvalues.
    pub imag_spread: f64,
}

/// Compute the eigenvalues of `h` and classify the phase at the given
/// absolute `tolerance` on the shifted imaginary residuals.
pub fn spectrum(h: &Operator, tolerance: f64) -> SimResult<SpectrumReport> {
    if !(tolerance > 0.0) {
        return Err(SimError::invalid(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let eigenvalues = eigenvalues(h)?;
    let mean_imag: f64 =
        eigenvalues.iter().map(|z| z.im).sum::<f64>() / eigenvalues.len() as f64;
    let max_residual = eigenvalues
        .iter()
        .map(|z| (z.im - mean_imag).abs())
        .fold(0.0f64, f64::max);
    let (lo, hi) = eigenvalues.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| {
        (lo.min(z.im), hi.max(z.im))
    });
    Ok(SpectrumReport {
        eigenvalues,
        is_pt_symmetric_phase: max_residual <= tolerance,
        imag_spread: hi - lo,
    })
}

/// Eigenvalues of a general complex operator, deterministically ordered.
pub fn eigenvalues(h: &Operator) -> SimResult<Vec<Complex64>> {
    use ndarray_linalg::Eig;

    if h.matrix().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SimError::invalid("spectrum input has non-finite entries"));
    }
    let (vals, _) = h
        .matrix()
        .eig()
        .map_err(|e| SimError::NumericalFailure(format!("eigensolver failed: {e}")))?;
    let mut vals: Vec<Complex64> = vals.to_vec();
    vals.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(vals)
}
