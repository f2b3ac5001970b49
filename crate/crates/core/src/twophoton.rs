//! Two-photon states as symmetric matrices.
//!
//! A state over `m` modes is `(a^†)^T S a^† |vac⟩ = Σ_ij S_ij a_i^† a_j^† |vac⟩`
//! with `S` complex symmetric. Normalization is `2 Tr(S^† S) = 1`.
//! Its rank is invariant under linear optics.

use crate::error::{Error, Result};
use crate::linalg::{c64, ensure_finite, numerical_rank, symmetrize, symmetry_error, zero_pad, ComplexMatrix, UNITARY_TOL};

/// Tolerance on `2 Tr(S^† S) = 1` and on `Σ |C_ij|² = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonState {
    s: ComplexMatrix,
}

impl TwoPhotonState {
    /// Validates symmetry and normalization; the stored matrix is `(S + S^T)/2`.
    pub fn new(s: ComplexMatrix) -> Result<Self> {
        check_symmetric(&s)?;
        let s = symmetrize(&s);
        let norm = 2.0 * s.norm_squared();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidArgument(format!("state is not normalized: 2 Tr(S^†S) = {norm}")));
        }
        Ok(Self { s })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.s
    }

    pub fn modes(&self) -> usize {
        self.s.nrows()
    }

    /// `2 Tr(S^† S)`; 1 for a normalized state.
    pub fn norm(&self) -> f64 {
        2.0 * self.s.norm_squared()
    }

    /// The same state over `modes >= self.modes()` modes, extra modes empty.
    pub fn padded(&self, modes: usize) -> Self {
        Self { s: zero_pad(&self.s, modes, modes) }
    }
}

fn check_symmetric(s: &ComplexMatrix) -> Result<()> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch(format!("state matrix must be square, got {}x{}", s.nrows(), s.ncols())));
    }
    if s.nrows() < 2 {
        return Err(Error::TooFewModes(s.nrows()));
    }
    ensure_finite(s)?;
    let deviation = symmetry_error(s);
    if deviation >= UNITARY_TOL {
        return Err(Error::NotSymmetric { deviation, tol: UNITARY_TOL });
    }
    Ok(())
}

/// Scales a symmetric matrix to `2 Tr(S^† S) = 1`.
pub fn normalize(s: &ComplexMatrix) -> Result<TwoPhotonState> {
    check_symmetric(s)?;
    let s = symmetrize(s);
    let norm = (2.0 * s.norm_squared()).sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(TwoPhotonState { s: s / c64(norm, 0.0) })
}

/// Two qudits of dimensions `d1 x d2`, one photon each, in d-rail encoding:
/// `Σ_ij C_ij |i⟩|j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditTarget {
    c: ComplexMatrix,
}

impl QuditTarget {
    pub fn new(c: ComplexMatrix) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::DimensionMismatch("empty coefficient matrix".into()));
        }
        ensure_finite(&c)?;
        let norm = c.norm_squared();
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidArgument(format!("qudit target is not normalized: Σ|C_ij|² = {norm}")));
        }
        Ok(Self { c })
    }

    /// Rescales `c` to unit Frobenius norm.
    pub fn normalized(c: ComplexMatrix) -> Result<Self> {
        let norm = c.norm();
        if norm == 0.0 {
            return Err(Error::ZeroState);
        }
        Self::new(c / c64(norm, 0.0))
    }

    pub fn coefficients(&self) -> &ComplexMatrix {
        &self.c
    }

    pub fn d1(&self) -> usize {
        self.c.nrows()
    }

    pub fn d2(&self) -> usize {
        self.c.ncols()
    }

    pub fn rank(&self, tol: f64) -> usize {
        numerical_rank(&self.c, tol)
    }

    /// Maximally entangled `d x d` pair, `I_d / √d`.
    pub fn bell(d: usize) -> Self {
        let id = ComplexMatrix::identity(d, d) / c64((d as f64).sqrt(), 0.0);
        Self { c: id }
    }
}

/// `S = (1/2) [[0, C], [C^T, 0]]` over `d1 + d2` modes: qudit 1 on modes
/// `0..d1`, qudit 2 on `d1..d1+d2`.
pub fn from_qudit_target(t: &QuditTarget) -> TwoPhotonState {
    let (d1, d2) = (t.d1(), t.d2());
    let mut s = ComplexMatrix::zeros(d1 + d2, d1 + d2);
    let half = t.c.map(|z| z * 0.5);
    s.view_mut((0, d1), (d1, d2)).copy_from(&half);
    s.view_mut((d1, 0), (d2, d1)).copy_from(&half.transpose());
    TwoPhotonState { s }
}

/// Reads `C` back from the off-diagonal block of a qudit-encoded state.
pub fn qudit_block(s: &ComplexMatrix, d1: usize, d2: usize) -> ComplexMatrix {
    s.view((0, d1), (d1, d2)).map(|z| z * 2.0)
}

/// `a_0^† a_1^† |vac⟩` over `m >= 2` modes.
pub fn single_photons_state(m: usize) -> Result<TwoPhotonState> {
    if m < 2 {
        return Err(Error::TooFewModes(m));
    }
    let mut s = ComplexMatrix::zeros(m, m);
    s[(0, 1)] = c64(0.5, 0.0);
    s[(1, 0)] = c64(0.5, 0.0);
    Ok(TwoPhotonState { s })
}

pub fn state_rank(s: &TwoPhotonState, tol: f64) -> usize {
    numerical_rank(&s.s, tol)
}
