//! Fock-space amplitudes of linear-optical interferometers via permanents.
//!
//! Convention: column `j` of an interferometer matrix is the image of input
//! mode `j`, i.e. `a_j^† ↦ Σ_i u_ij a_i^†`. Rows index output modes.

use crate::error::{Error, Result};
use crate::linalg::{c64, symmetry_error, unitarity_error, ComplexMatrix, C64, UNITARY_TOL};

/// Largest matrix handled by [`permanent`] (and largest photon number handled
/// by [`amplitude`]).
pub const MAX_PERMANENT_SIZE: usize = 20;

/// Photon numbers per mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState(Vec<usize>);

impl FockState {
    pub fn new(occupations: Vec<usize>) -> Self {
        Self(occupations)
    }

    pub fn vacuum(modes: usize) -> Self {
        Self(vec![0; modes])
    }

    /// One photon in each listed mode (repeats add photons).
    pub fn with_photons_in(modes: usize, occupied: &[usize]) -> Self {
        let mut occ = vec![0; modes];
        for &m in occupied {
            occ[m] += 1;
        }
        Self(occ)
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn photons(&self) -> usize {
        self.0.iter().sum()
    }

    /// Mode index of each photon, in ascending order (mode `i` repeated `n_i` times).
    pub fn photon_modes(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(i, n)).collect()
    }

    fn factorial_product(&self) -> u128 {
        self.0.iter().map(|&n| factorial(n)).product()
    }

    /// Every Fock state with `photons` photons over `modes` modes.
    pub fn enumerate(modes: usize, photons: usize) -> Vec<FockState> {
        fn rec(prefix: &mut Vec<usize>, modes: usize, left: usize, out: &mut Vec<FockState>) {
            if prefix.len() + 1 == modes {
                prefix.push(left);
                out.push(FockState(prefix.clone()));
                prefix.pop();
                return;
            }
            for n in (0..=left).rev() {
                prefix.push(n);
                rec(prefix, modes, left - n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if modes == 0 {
            if photons == 0 {
                out.push(FockState(Vec::new()));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(modes), modes, photons, &mut out);
        out
    }
}

impl From<Vec<usize>> for FockState {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// A square mode transformation, unitary within [`UNITARY_TOL`] unless built
/// with [`Interferometer::new_unchecked`].
#[derive(Debug, Clone, PartialEq)]
pub struct Interferometer(ComplexMatrix);

impl Interferometer {
    pub fn new(u: ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::DimensionMismatch(format!("interferometer must be square, got {}x{}", u.nrows(), u.ncols())));
        }
        crate::linalg::ensure_finite(&u)?;
        let err = unitarity_error(&u);
        if err >= UNITARY_TOL {
            return Err(Error::InvalidArgument(format!("matrix is not unitary: |U^†U - I|_F = {err:.3e}")));
        }
        Ok(Self(u))
    }

    /// Skips the unitarity check; amplitudes of a non-unitary matrix are still
    /// well defined as permanents.
    pub fn new_unchecked(u: ComplexMatrix) -> Self {
        assert!(u.is_square(), "interferometer must be square");
        Self(u)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn modes(&self) -> usize {
        self.0.nrows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// Permanent by Ryser's inclusion–exclusion formula, walking column subsets
/// in Gray-code order so each step updates the row sums by one column.
pub fn permanent(m: &ComplexMatrix) -> Result<C64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("permanent needs a square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    if n > MAX_PERMANENT_SIZE {
        return Err(Error::TooLarge { what: "permanent", size: n, limit: MAX_PERMANENT_SIZE });
    }
    if n == 0 {
        return Ok(c64(1.0, 0.0));
    }

    let mut row_sums = vec![c64(0.0, 0.0); n];
    let mut in_subset = vec![false; n];
    let mut total = c64(0.0, 0.0);
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let sign = if in_subset[j] { -1.0 } else { 1.0 };
        in_subset[j] = !in_subset[j];
        for (i, s) in row_sums.iter_mut().enumerate() {
            *s += m[(i, j)] * sign;
        }
        let prod: C64 = row_sums.iter().product();
        // Each step flips one column, so the subset size has the parity of k.
        if k % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Permanent by direct summation over all `n!` permutations. Reference
/// implementation for cross-checking [`permanent`]; only practical for small `n`.
pub fn permanent_by_expansion(m: &ComplexMatrix) -> C64 {
    assert!(m.is_square());
    let n = m.nrows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = c64(0.0, 0.0);
    fn visit(m: &ComplexMatrix, perm: &mut Vec<usize>, k: usize, total: &mut C64) {
        if k == perm.len() {
            *total += perm.iter().enumerate().map(|(i, &j)| m[(i, j)]).product::<C64>();
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            visit(m, perm, k + 1, total);
            perm.swap(k, i);
        }
    }
    visit(m, &mut perm, 0, &mut total);
    total
}

/// `⟨k| 𝒰 |ℓ⟩ = Per(U_{k,ℓ}) / √(Π k_i! Π ℓ_j!)`, where `U_{k,ℓ}` repeats row
/// `i` of `U` `k_i` times and column `j` `ℓ_j` times.
pub fn amplitude(u: &Interferometer, k: &FockState, l: &FockState) -> Result<C64> {
    let m = u.modes();
    if k.modes() != m || l.modes() != m {
        return Err(Error::DimensionMismatch(format!(
            "Fock states over {} and {} modes for a {m}-mode interferometer",
            k.modes(),
            l.modes()
        )));
    }
    if k.photons() != l.photons() {
        return Err(Error::PhotonNumberMismatch { input: l.photons(), output: k.photons() });
    }
    let n = k.photons();
    if n > MAX_PERMANENT_SIZE {
        return Err(Error::TooLarge { what: "photon number", size: n, limit: MAX_PERMANENT_SIZE });
    }
    let rows = k.photon_modes();
    let cols = l.photon_modes();
    let sub = ComplexMatrix::from_fn(n, n, |a, b| u.matrix()[(rows[a], cols[b])]);
    let norm = ((k.factorial_product() * l.factorial_product()) as f64).sqrt();
    Ok(permanent(&sub)? / norm)
}

/// Two-photon state matrix after the interferometer: `U S U^T`.
///
/// With rows indexing output modes this is the transformation induced on
/// `(a^†)^T S a^†`; in the transposed (row-action) convention the same map
/// reads `U^T S U`.
pub fn evolve_two_photon(u: &Interferometer, s: &ComplexMatrix) -> Result<ComplexMatrix> {
    if s.shape() != (u.modes(), u.modes()) {
        return Err(Error::DimensionMismatch(format!(
            "state is {}x{}, interferometer has {} modes",
            s.nrows(),
            s.ncols(),
            u.modes()
        )));
    }
    let deviation = symmetry_error(s);
    if deviation >= UNITARY_TOL {
        return Err(Error::NotSymmetric { deviation, tol: UNITARY_TOL });
    }
    let out = u.matrix() * s * u.matrix().transpose();
    Ok(crate::linalg::symmetrize(&out))
}
