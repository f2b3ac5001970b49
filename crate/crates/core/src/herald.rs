//! Heralded preparation of two-photon states from `n` single photons.
//!
//! A state of rank `r` can be heralded from `n` single photons exactly when
//! `n >= r`. With the input photons on modes `0..n`, only the first `n`
//! entries of each row of the interferometer matter. For output mode `i`
//! call that row `ℓ_i`. Conditioning on the herald signal turns
//! `Per(·, ·, ℓ_s)` into a symmetric bilinear form on `ℂⁿ` whose matrix `F`
//! can reach rank `n`. Choosing payload rows along the Takagi basis of `F`
//! reproduces any diagonal target of rank at most `n`, and a unitary change
//! of payload modes then gives any target.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::fock::{permanent, Interferometer};
use crate::linalg::{c64, numerical_rank, takagi, unitary_extension, ComplexMatrix, C64, RANK_TOL, UNITARY_TOL};
use crate::postselect::SynthesisResult;
use crate::twophoton::{state_rank, TwoPhotonState};
use crate::verify::{extract_heralded, VERIFY_TOL};

/// Photon counts `s = (s_1, …, s_h)` expected on the `h` herald modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeraldPattern {
    signal: Vec<usize>,
}

impl HeraldPattern {
    /// Every entry must be positive; a mode expecting no photon is an
    /// auxiliary vacuum mode, not a herald.
    pub fn new(signal: Vec<usize>) -> Result<Self> {
        if signal.contains(&0) {
            return Err(Error::InvalidArgument("herald signal entries must be positive".into()));
        }
        Ok(Self { signal })
    }

    pub fn none() -> Self {
        Self { signal: Vec::new() }
    }

    pub fn signal(&self) -> &[usize] {
        &self.signal
    }

    pub fn modes(&self) -> usize {
        self.signal.len()
    }

    pub fn photons(&self) -> usize {
        self.signal.iter().sum()
    }

    /// `s_1! … s_h!`.
    pub fn factorial_product(&self) -> f64 {
        self.signal.iter().map(|&s| (1..=s).map(|k| k as f64).product::<f64>()).product()
    }
}

/// A herald row in `ℂⁿ` and the number of photons detected in its mode.
#[derive(Debug, Clone, PartialEq)]
pub struct HeraldRow {
    pub row: DVector<C64>,
    pub multiplicity: usize,
}

fn permanent_of_rows(rows: &[&DVector<C64>]) -> Result<C64> {
    let n = rows.len();
    permanent(&ComplexMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn expand_rows(herald: &[HeraldRow]) -> Vec<&DVector<C64>> {
    herald.iter().flat_map(|h| std::iter::repeat_n(&h.row, h.multiplicity)).collect()
}

/// `Per(x, y, ℓ_s)` for payload rows `x`, `y`.
pub fn herald_permanent(x: &DVector<C64>, y: &DVector<C64>, herald: &[HeraldRow]) -> Result<C64> {
    let mut rows = vec![x, y];
    rows.extend(expand_rows(herald));
    permanent_of_rows(&rows)
}

/// Matrix `F_ij = Per(e_i, e_j, ℓ_s)` of the bilinear form fixed by the
/// herald rows.
pub fn herald_bilinear_matrix(herald: &[HeraldRow], n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 photons, got {n}")));
    }
    let total: usize = herald.iter().map(|h| h.multiplicity).sum();
    if total != n - 2 {
        return Err(Error::MultiplicityMismatch { got: total, expected: n - 2 });
    }
    if let Some(bad) = herald.iter().find(|h| h.row.len() != n) {
        return Err(Error::DimensionMismatch(format!("herald row of length {} for {n} photons", bad.row.len())));
    }
    let basis: Vec<DVector<C64>> = (0..n)
        .map(|i| DVector::from_fn(n, |k, _| c64(if k == i { 1.0 } else { 0.0 }, 0.0)))
        .collect();
    let mut f = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = herald_permanent(&basis[i], &basis[j], herald)?;
            f[(i, j)] = v;
            f[(j, i)] = v;
        }
    }
    Ok(f)
}

/// `n − 2` photons on one herald mode whose row is `(1, …, 1) / √(n − 2)`;
/// no herald at all for `n = 2`.
pub fn default_herald(n: usize) -> Vec<HeraldRow> {
    if n <= 2 {
        return Vec::new();
    }
    let c = (1.0 / (n - 2) as f64).sqrt();
    vec![HeraldRow { row: DVector::from_element(n, c64(c, 0.0)), multiplicity: n - 2 }]
}

pub fn feasible_herald(s_out: &TwoPhotonState, n: usize, tol: f64) -> bool {
    n >= 2 && n >= state_rank(s_out, tol)
}

/// The rows built before the unitary embedding.
#[derive(Debug, Clone)]
pub struct HeraldConstruction {
    /// `ℓ_i` for the diagonalized target, one row per payload mode (`m x n`).
    pub diagonal_rows: ComplexMatrix,
    /// Payload rows for the actual target: `conj(V) · diagonal_rows`.
    pub payload_rows: ComplexMatrix,
    pub herald: Vec<HeraldRow>,
    pub pattern: HeraldPattern,
    /// Takagi diagonal `D` of the target (`V^T S_out V = D`).
    pub takagi_diagonal: Vec<f64>,
    pub takagi_v: ComplexMatrix,
}

impl HeraldConstruction {
    /// Largest deviation from `Per(ℓ_i, ℓ_j, ℓ_s) = √(2 s_1!…s_h!) D_ii δ_ij`
    /// over all payload pairs.
    pub fn identity_error(&self) -> Result<f64> {
        let scale = (2.0 * self.pattern.factorial_product()).sqrt();
        let m = self.diagonal_rows.nrows();
        let rows: Vec<DVector<C64>> = (0..m).map(|i| self.diagonal_rows.row(i).transpose()).collect();
        let mut worst: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                let expected = if i == j { scale * self.takagi_diagonal[i] } else { 0.0 };
                let got = herald_permanent(&rows[i], &rows[j], &self.herald)?;
                worst = worst.max((got - c64(expected, 0.0)).norm());
            }
        }
        Ok(worst)
    }
}

/// Constructs the payload and herald rows for `s_out` from `n` photons.
///
/// `herald` overrides the default herald rows; if it does not give a form of
/// full rank `n` the default is used instead.
pub fn herald_construction(s_out: &TwoPhotonState, n: usize, herald: Option<Vec<HeraldRow>>) -> Result<HeraldConstruction> {
    let rank = state_rank(s_out, RANK_TOL);
    if n < 2 || n < rank {
        return Err(Error::InfeasibleRank(format!(
            "state has rank {rank} but only {n} photons are available; heralding requires n >= rank(S_out)"
        )));
    }
    let m = s_out.modes();

    let mut herald = herald.unwrap_or_else(|| default_herald(n));
    let mut f = herald_bilinear_matrix(&herald, n)?;
    if numerical_rank(&f, RANK_TOL) < n {
        herald = default_herald(n);
        f = herald_bilinear_matrix(&herald, n)?;
    }
    let pattern = HeraldPattern::new(herald.iter().map(|h| h.multiplicity).collect())?;

    let target = takagi(s_out.matrix(), UNITARY_TOL)?;
    let form = takagi(&f, UNITARY_TOL)?;
    let d = target.diagonal();
    let f_diag = form.diagonal();
    let scale = (2.0 * pattern.factorial_product()).sqrt();

    let mut diagonal_rows = ComplexMatrix::zeros(m, n);
    for i in 0..m.min(n) {
        if d[i] == 0.0 {
            continue;
        }
        let weight = (scale * d[i] / f_diag[i]).sqrt();
        for k in 0..n {
            diagonal_rows[(i, k)] = form.v[(k, i)] * weight;
        }
    }
    let payload_rows = target.v.conjugate() * &diagonal_rows;

    Ok(HeraldConstruction { diagonal_rows, payload_rows, herald, pattern, takagi_diagonal: d, takagi_v: target.v })
}

/// Heralded synthesis with the default herald.
pub fn synthesize_herald(s_out: &TwoPhotonState, n: usize) -> Result<SynthesisResult> {
    synthesize_herald_with(s_out, n, None).map(|(res, _)| res)
}

/// Heralded synthesis; also returns the pre-embedding rows.
///
/// Mode layout: payload `0..m`, herald modes `m..m+h`, vacuum auxiliaries
/// after. Single photons enter modes `0..n`.
pub fn synthesize_herald_with(
    s_out: &TwoPhotonState,
    n: usize,
    herald: Option<Vec<HeraldRow>>,
) -> Result<(SynthesisResult, HeraldConstruction)> {
    let construction = herald_construction(s_out, n, herald)?;
    let m = s_out.modes();
    let h = construction.herald.len();

    let mut rows = ComplexMatrix::zeros(m + h, n);
    rows.view_mut((0, 0), (m, n)).copy_from(&construction.payload_rows);
    for (k, hr) in construction.herald.iter().enumerate() {
        rows.set_row(m + k, &hr.row.transpose());
    }
    let ext = unitary_extension(&rows)?;
    let interferometer = Interferometer::new(ext.u)?;

    let report = extract_heralded(&interferometer, n, &construction.pattern, m, s_out.matrix())?;
    if report.fidelity_vs_target < 1.0 - VERIFY_TOL {
        return Err(Error::VerificationFailure(format!("heralded state has fidelity {} with the target", report.fidelity_vs_target)));
    }
    if report.probability <= 0.0 {
        return Err(Error::VerificationFailure("zero heralding probability".into()));
    }

    let result = SynthesisResult {
        aux_modes: interferometer.modes() - m - h,
        interferometer,
        relevant_modes: m,
        scale_alpha: 1.0 / ext.sigma1,
        herald: Some(construction.pattern.clone()),
        success_probability: report.probability,
    };
    Ok((result, construction))
}
