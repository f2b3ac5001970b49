//! Independent checks of synthesized interferometers.
//!
//! Everything here evaluates a unitary on its inputs through the Fock
//! amplitude engine or through the two-photon matrix action, and compares the
//! result with the requested state up to a global phase.
//!
//! Coefficient bookkeeping for two-photon states lives in this module only:
//! the amplitude of `|1_i 1_j⟩` (i ≠ j) is `S_ij + S_ji = 2 S_ij` and the
//! amplitude of `|2_i⟩` is `√2 S_ii`.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::fock::{amplitude, evolve_two_photon, FockState, Interferometer};
use crate::herald::HeraldPattern;
use crate::linalg::{c64, ComplexMatrix, C64};
use crate::twophoton::{QuditTarget, TwoPhotonState};

/// Fidelity deficit accepted when a synthesizer checks its own output.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ExtractionReport {
    /// For post-selection, the raw `d1 x d2` coefficient block (norm² = probability).
    /// For heralding, the normalized two-photon matrix.
    pub extracted: ComplexMatrix,
    pub probability: f64,
    pub fidelity_vs_target: f64,
    /// `c` with `extracted / |extracted| ≈ c · target / |target|`.
    pub global_phase: C64,
}

impl ExtractionReport {
    fn new(extracted: ComplexMatrix, probability: f64, target: &ComplexMatrix) -> Self {
        let fidelity_vs_target = fidelity(&extracted, target);
        let global_phase = best_phase(&extracted, target);
        Self { extracted, probability: probability.clamp(0.0, 1.0), fidelity_vs_target, global_phase }
    }
}

/// `|⟨A, B⟩_F| / (‖A‖_F ‖B‖_F)`; 0 when either side vanishes or shapes differ.
pub fn fidelity(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.shape() != b.shape() {
        return 0.0;
    }
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (b.dotc(a).norm() / (na * nb)).min(1.0)
}

/// Unit `c` minimizing `‖A − c B‖_F`.
fn best_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    if a.shape() != b.shape() {
        return c64(1.0, 0.0);
    }
    let overlap = b.dotc(a);
    if overlap.norm() == 0.0 {
        c64(1.0, 0.0)
    } else {
        overlap / overlap.norm()
    }
}

/// Whether `‖S1 − c S2‖_F < tol` for some unit `c`, together with the best `c`.
pub fn states_equal_up_to_phase(s1: &ComplexMatrix, s2: &ComplexMatrix, tol: f64) -> (bool, C64) {
    if s1.shape() != s2.shape() {
        return (false, c64(1.0, 0.0));
    }
    let c = best_phase(s1, s2);
    ((s1 - s2 * c).norm() < tol, c)
}

/// Fock expansion of `(a^†)^T S a^† |vac⟩`, zero terms dropped.
pub fn fock_terms(s: &ComplexMatrix) -> Vec<(FockState, C64)> {
    let m = s.nrows();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i..m {
            let coeff = if i == j { s[(i, i)] * SQRT_2 } else { s[(i, j)] + s[(j, i)] };
            if coeff.norm() > 0.0 {
                out.push((FockState::with_photons_in(m, &[i, j]), coeff));
            }
        }
    }
    out
}

/// Inverse of [`fock_terms`]: symmetric matrix from the amplitude of each
/// two-photon output `|1_i 1_j⟩` / `|2_i⟩`, given as `amp(i, j)` for `i <= j`.
pub fn matrix_from_pair_amplitudes(m: usize, mut amp: impl FnMut(usize, usize) -> Result<C64>) -> Result<ComplexMatrix> {
    let mut s = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let a = amp(i, j)?;
            if i == j {
                s[(i, i)] = a / SQRT_2;
            } else {
                s[(i, j)] = a * 0.5;
                s[(j, i)] = a * 0.5;
            }
        }
    }
    Ok(s)
}

fn check_postselect_dims(u: &Interferometer, s_in: &TwoPhotonState, d1: usize, d2: usize) -> Result<()> {
    if u.modes() < d1 + d2 {
        return Err(Error::DimensionMismatch(format!("{}-mode interferometer cannot host {d1}+{d2} qudit modes", u.modes())));
    }
    if s_in.modes() > u.modes() {
        return Err(Error::DimensionMismatch(format!("{}-mode input for a {}-mode interferometer", s_in.modes(), u.modes())));
    }
    Ok(())
}

/// Computational block of `U S̃_in U^T`: coefficient `2 S'_{i, d1+j}` of
/// `|i⟩|j⟩`.
fn postselected_block(u: &Interferometer, s_in: &TwoPhotonState, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    check_postselect_dims(u, s_in, d1, d2)?;
    let evolved = evolve_two_photon(u, s_in.padded(u.modes()).matrix())?;
    Ok(crate::twophoton::qudit_block(&evolved, d1, d2))
}

/// The same block computed photon-by-photon with permanents.
pub fn postselected_block_via_amplitudes(u: &Interferometer, s_in: &TwoPhotonState, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    check_postselect_dims(u, s_in, d1, d2)?;
    let m = u.modes();
    let inputs = fock_terms(s_in.padded(m).matrix());
    let mut block = ComplexMatrix::zeros(d1, d2);
    for i in 0..d1 {
        for j in 0..d2 {
            let out = FockState::with_photons_in(m, &[i, d1 + j]);
            let mut total = c64(0.0, 0.0);
            for (input, coeff) in &inputs {
                total += coeff * amplitude(u, &out, input)?;
            }
            block[(i, j)] = total;
        }
    }
    Ok(block)
}

/// Post-selects on one photon in each qudit register and none elsewhere.
pub fn extract_postselected(u: &Interferometer, s_in: &TwoPhotonState, target: &QuditTarget) -> Result<ExtractionReport> {
    let (d1, d2) = (target.d1(), target.d2());
    let block = postselected_block(u, s_in, d1, d2)?;
    let probability = block.norm_squared();
    Ok(ExtractionReport::new(block, probability, target.coefficients()))
}

/// Probability that the two photons land one per qudit register.
pub fn success_probability_postselect(u: &Interferometer, s_in: &TwoPhotonState, d1: usize, d2: usize) -> Result<f64> {
    Ok(postselected_block(u, s_in, d1, d2)?.norm_squared().clamp(0.0, 1.0))
}

/// Output Fock state with `(i, j)` in the payload, the herald signal on modes
/// `m..m+h` and vacuum elsewhere.
pub(crate) fn heralded_output(dim: usize, m: usize, pattern: &HeraldPattern, i: usize, j: usize) -> FockState {
    let mut occ = vec![0; dim];
    occ[i] += 1;
    occ[j] += 1;
    for (k, &s) in pattern.signal().iter().enumerate() {
        occ[m + k] = s;
    }
    FockState::new(occ)
}

fn check_herald_dims(u: &Interferometer, n: usize, pattern: &HeraldPattern, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 input photons, got {n}")));
    }
    if pattern.photons() != n - 2 {
        return Err(Error::SignalMismatch { got: pattern.photons(), expected: n - 2 });
    }
    let dim = u.modes();
    if m + pattern.modes() > dim || n > dim {
        return Err(Error::DimensionMismatch(format!(
            "{dim}-mode interferometer cannot host {m} payload modes, {} herald modes and {n} input photons",
            pattern.modes()
        )));
    }
    Ok(())
}

/// Sends single photons into modes `0..n`, conditions on `pattern` over modes
/// `m..m+h` and vacuum on the remaining auxiliaries, and reads the two-photon
/// state left on modes `0..m`.
pub fn extract_heralded(u: &Interferometer, n: usize, pattern: &HeraldPattern, m: usize, target: &ComplexMatrix) -> Result<ExtractionReport> {
    check_herald_dims(u, n, pattern, m)?;
    let dim = u.modes();
    let input = FockState::with_photons_in(dim, &(0..n).collect::<Vec<_>>());
    let unnormalized = matrix_from_pair_amplitudes(m, |i, j| amplitude(u, &heralded_output(dim, m, pattern, i, j), &input))?;
    let probability = 2.0 * unnormalized.norm_squared();
    let extracted = if probability > 0.0 { unnormalized / c64(probability.sqrt(), 0.0) } else { unnormalized };
    Ok(ExtractionReport::new(extracted, probability, target))
}
