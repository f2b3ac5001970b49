//! Post-selected generalized controlled-phase gates `C^{n−1}Z(φ)`.
//!
//! Qubit `i` is dual-rail encoded: mode `i` (the `a` rail) carries `|1⟩`,
//! mode `n + i` (the `b` rail) carries `|0⟩`. The `a` rails see
//! `I_n + α J_n` with `αⁿ = e^{iφ} − 1` and `J_n` the cyclic shift
//! `i ↦ i + 1 mod n`; the `b` rails see the identity. For the all-ones input
//! only two permutations survive post-selection: every photon stays, or every
//! photon moves one rail along the cycle, giving `1 + αⁿ = e^{iφ}`. Any other
//! input keeps amplitude 1. Scaling both blocks by `1/σ_max` makes the pair
//! embeddable in a unitary, and the gate succeeds with `p_s = σ_max^{−2n}`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::fock::{amplitude, FockState, Interferometer};
use crate::linalg::{block_diag, c64, unitary_extension, ComplexMatrix, C64};
use crate::postselect::SynthesisResult;

#[derive(Debug, Clone, PartialEq)]
pub struct CnZSpec {
    pub n: usize,
    /// Phase reduced to `[0, 2π)`.
    pub phi: f64,
    /// The chosen root of `αⁿ = e^{iφ} − 1`.
    pub alpha: C64,
    pub p_s: f64,
}

fn reduce_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU { 0.0 } else { r }
}

/// `α_j = (2 sin(φ/2))^{1/n} e^{i(φ+π)/(2n)} w^j` with `w = e^{2πi/n}`.
pub fn cnz_root(n: usize, phi: f64, j: usize) -> C64 {
    let phi = reduce_phase(phi);
    let modulus = (2.0 * (phi / 2.0).sin()).max(0.0).powf(1.0 / n as f64);
    let angle = (phi + PI) / (2.0 * n as f64) + TAU * j as f64 / n as f64;
    C64::from_polar(modulus, angle)
}

/// `σ_max = max(1, max_k |1 + α w^k|)`, the largest singular value of
/// `diag(I_n + α J_n, I_n)`.
fn sigma_max(n: usize, alpha: C64) -> f64 {
    (0..n)
        .map(|k| (c64(1.0, 0.0) + alpha * C64::from_polar(1.0, TAU * k as f64 / n as f64)).norm())
        .fold(1.0, f64::max)
}

/// Success probability when the construction uses root `α_j`.
pub fn cnz_success_probability_for_root(n: usize, phi: f64, j: usize) -> f64 {
    sigma_max(n, cnz_root(n, phi, j)).powi(-2 * n as i32)
}

/// `p_s = (max_k |1 + (2 sin(φ/2))^{1/n} e^{i(φ+π)/(2n)} w^k|)^{−2n}`.
pub fn cnz_success_probability(n: usize, phi: f64) -> f64 {
    cnz_success_probability_for_root(n, phi, 0)
}

/// `(1 + (2 sin(φ/2))^{1/n})^{−2n}`, a lower bound on [`cnz_success_probability`].
pub fn cnz_success_lower_bound(n: usize, phi: f64) -> f64 {
    let phi = reduce_phase(phi);
    (1.0 + (2.0 * (phi / 2.0).sin()).max(0.0).powf(1.0 / n as f64)).powi(-2 * n as i32)
}

/// `I_n + α J_n` with `J_n` mapping mode `i` to `i + 1 mod n`.
pub fn cycle_block(n: usize, alpha: C64) -> ComplexMatrix {
    let mut a = ComplexMatrix::identity(n, n);
    for i in 0..n {
        a[((i + 1) % n, i)] += alpha;
    }
    a
}

pub fn build_cnz(n: usize, phi: f64) -> Result<(SynthesisResult, CnZSpec)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("controlled-phase gate needs n >= 2 qubits, got {n}")));
    }
    if !phi.is_finite() {
        return Err(Error::InvalidArgument(format!("phase must be finite, got {phi}")));
    }
    let phi = reduce_phase(phi);
    let alpha = cnz_root(n, phi, 0);
    let blocks = block_diag(&[&cycle_block(n, alpha), &ComplexMatrix::identity(n, n)]);
    let ext = unitary_extension(&blocks)?;
    let interferometer = Interferometer::new(ext.u)?;
    let success_probability = ext.sigma1.powi(-2 * n as i32);

    let spec = CnZSpec { n, phi, alpha, p_s: cnz_success_probability(n, phi) };
    let result = SynthesisResult {
        aux_modes: interferometer.modes() - 2 * n,
        interferometer,
        relevant_modes: 2 * n,
        scale_alpha: 1.0 / ext.sigma1,
        herald: None,
        success_probability,
    };
    Ok((result, spec))
}

/// Logical basis state `|x⟩_L` (bit `i` of `x` is qubit `i`) over `modes` modes.
pub fn logical_state(n: usize, x: usize, modes: usize) -> FockState {
    let occupied: Vec<usize> = (0..n).map(|i| if x >> i & 1 == 1 { i } else { n + i }).collect();
    FockState::with_photons_in(modes, &occupied)
}

/// Ideal gate on `2ⁿ` logical states: identity except `e^{iφ}` on `|1…1⟩`.
pub fn ideal_gate(n: usize, phi: f64) -> ComplexMatrix {
    let dim = 1 << n;
    let mut g = ComplexMatrix::identity(dim, dim);
    g[(dim - 1, dim - 1)] = C64::from_polar(1.0, phi);
    g
}

/// Post-selected logical action `⟨y|_L 𝒰 |x⟩_L` for all `x`, `y`.
pub fn logical_action(u: &Interferometer, n: usize) -> Result<ComplexMatrix> {
    let dim = 1 << n;
    let mut g = ComplexMatrix::zeros(dim, dim);
    for x in 0..dim {
        let input = logical_state(n, x, u.modes());
        for y in 0..dim {
            g[(y, x)] = amplitude(u, &logical_state(n, y, u.modes()), &input)?;
        }
    }
    Ok(g)
}

/// Checks every logical amplitude against `√p_s · C^{n−1}Z(φ)`.
pub fn verify_cnz(result: &SynthesisResult, n: usize, phi: f64, tol: f64) -> bool {
    if n < 2 || result.modes() < 2 * n || result.success_probability.is_nan() || result.success_probability <= 0.0 {
        return false;
    }
    let Ok(action) = logical_action(&result.interferometer, n) else {
        return false;
    };
    let expected = ideal_gate(n, phi) * c64(result.success_probability.sqrt(), 0.0);
    action.iter().zip(expected.iter()).all(|(a, e)| (a - e).norm() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cz_gate() {
        let (res, spec) = build_cnz(2, PI).unwrap();
        assert!((spec.p_s - 1.0 / 9.0).abs() < 1e-12);
        assert!((res.success_probability - 1.0 / 9.0).abs() < 1e-12);
        assert!(verify_cnz(&res, 2, PI, 1e-9));
        let action = logical_action(&res.interferometer, 2).unwrap();
        let third = 1.0 / 3.0;
        for (x, want) in [third, third, third, -third].into_iter().enumerate() {
            assert!((action[(x, x)] - c64(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn root_satisfies_its_equation() {
        for n in 2..=5 {
            for phi in [0.3, PI / 2.0, PI, 5.0] {
                for j in 0..n {
                    let a = cnz_root(n, phi, j);
                    let lhs = a.powu(n as u32);
                    let rhs = C64::from_polar(1.0, phi) - c64(1.0, 0.0);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn identity_gate_at_zero_phase() {
        let (res, spec) = build_cnz(3, 0.0).unwrap();
        assert_eq!(spec.alpha, c64(0.0, 0.0));
        assert!((spec.p_s - 1.0).abs() < 1e-15);
        assert!((res.success_probability - 1.0).abs() < 1e-12);
        assert!(verify_cnz(&res, 3, 0.0, 1e-9));
        assert!((cnz_success_probability(4, TAU) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn toffoli_like_probability() {
        // |1 + a e^{iπ/3}|² = 1 + a + a² for a = 2^{1/3}.
        let a = 2f64.cbrt();
        let sigma_sq = 1.0 + a + a * a;
        let p = cnz_success_probability(3, PI);
        assert!((p - sigma_sq.powi(-3)).abs() < 1e-14, "p_s = {p}");
        assert!((p - 0.017560).abs() < 1e-6);
    }

    #[test]
    fn lower_bound_holds() {
        for n in 2..=6 {
            for k in 0..=40 {
                let phi = TAU * k as f64 / 40.0;
                assert!(cnz_success_probability(n, phi) >= cnz_success_lower_bound(n, phi) - 1e-15);
            }
        }
    }

    #[test]
    fn tampering_is_detected() {
        let (mut res, _) = build_cnz(2, PI).unwrap();
        let mut u = res.interferometer.clone().into_matrix();
        u[(0, 0)] += c64(1e-3, 0.0);
        res.interferometer = Interferometer::new_unchecked(u);
        assert!(!verify_cnz(&res, 2, PI, 1e-9));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(build_cnz(1, PI).is_err());
        assert!(build_cnz(2, f64::NAN).is_err());
    }
}
