//! Post-selected preparation of two-qudit states from a two-photon input.
//!
//! A `d1 x d2` target `C` can be post-selected from `S_in` exactly when
//! `rank(C) <= rank(S_in)` (equivalently `rank(S_out) <= 2 rank(S_in)`).
//! The construction builds a symmetric `S_ps` of rank `rank(C)` whose
//! off-diagonal block is `C`, maps `S_in` onto it through the two Takagi
//! factorizations and a diagonal rescaling `Λ`, and embeds the resulting
//! non-unitary mode map in a unitary with vacuum auxiliary modes.

use crate::error::{Error, Result};
use crate::fock::Interferometer;
use crate::herald::HeraldPattern;
use crate::linalg::{diag_from_reals, svd, takagi, unitary_extension, ComplexMatrix, RANK_TOL, RECONSTRUCTION_TOL, UNITARY_TOL};
use crate::twophoton::{normalize, state_rank, QuditTarget, TwoPhotonState};
use crate::verify::{extract_postselected, success_probability_postselect, VERIFY_TOL};

/// Output of every synthesizer.
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub interferometer: Interferometer,
    /// Modes carrying the input or the target (payload modes for heralding).
    pub relevant_modes: usize,
    /// Vacuum auxiliary modes, post-selected on zero photons.
    pub aux_modes: usize,
    /// Positive scale of the target inside the conditioned output.
    pub scale_alpha: f64,
    pub herald: Option<HeraldPattern>,
    pub success_probability: f64,
}

impl SynthesisResult {
    pub fn modes(&self) -> usize {
        self.interferometer.modes()
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        self.interferometer.matrix()
    }
}

/// `rank(C) <= rank(S_in)`.
pub fn feasible_postselect(s_in: &TwoPhotonState, t: &QuditTarget, tol: f64) -> bool {
    t.rank(tol) <= state_rank(s_in, tol)
}

/// `S_ps = (N/2) [[A, C], [C^T, B]]` with `A = W Σ_A W^T`, `B = conj(Y) Σ_B Y^†`
/// for `C = W Σ Y^†`, so that `rank(S_ps) = rank(C)`.
pub fn build_sps(t: &QuditTarget) -> Result<TwoPhotonState> {
    let c = t.coefficients();
    let (d1, d2) = (t.d1(), t.d2());
    let dec = svd(c)?;
    let diag = |k: usize| {
        let mut v = vec![0.0; k];
        for (i, &s) in dec.sigma.iter().enumerate() {
            v[i] = s;
        }
        diag_from_reals(&v)
    };
    let a = &dec.u * diag(d1) * dec.u.transpose();
    let b = dec.v.conjugate() * diag(d2) * dec.v.adjoint();

    let mut s = ComplexMatrix::zeros(d1 + d2, d1 + d2);
    s.view_mut((0, 0), (d1, d1)).copy_from(&a);
    s.view_mut((0, d1), (d1, d2)).copy_from(c);
    s.view_mut((d1, 0), (d2, d1)).copy_from(&c.transpose());
    s.view_mut((d1, d1), (d2, d2)).copy_from(&b);
    normalize(&s)
}

/// Diagonal `Λ` with `D_ps = Λ D_in Λ`: `Λ_ii = √(D_ps,ii / D_in,ii)` on the
/// support of `D_in`, 0 elsewhere. Supports are taken relative to each
/// diagonal's largest entry.
pub fn rescaling_lambda(d_in: &[f64], d_ps: &[f64], tol: f64) -> Result<Vec<f64>> {
    if d_in.len() != d_ps.len() {
        return Err(Error::DimensionMismatch(format!("diagonals of length {} and {}", d_in.len(), d_ps.len())));
    }
    let max_in = d_in.iter().copied().fold(0.0, f64::max);
    let max_ps = d_ps.iter().copied().fold(0.0, f64::max);
    d_in.iter()
        .zip(d_ps)
        .enumerate()
        .map(|(i, (&din, &dps))| {
            let in_support = din > tol * max_in && din > 0.0;
            let needed = dps > tol * max_ps && dps > 0.0;
            match (in_support, needed) {
                (true, _) => Ok((dps.max(0.0) / din).sqrt()),
                (false, false) => Ok(0.0),
                (false, true) => Err(Error::SupportMismatch { index: i }),
            }
        })
        .collect()
}

/// Builds an interferometer that turns `s_in` (photons on modes
/// `0..s_in.modes()`) into `α · C` on the qudit registers `0..d1`,
/// `d1..d1+d2`, conditioned on one photon per register.
pub fn synthesize_postselect(s_in: &TwoPhotonState, t: &QuditTarget) -> Result<SynthesisResult> {
    let rank_c = t.rank(RANK_TOL);
    let rank_in = state_rank(s_in, RANK_TOL);
    if rank_c > rank_in {
        return Err(Error::InfeasibleRank(format!(
            "target has rank(S_out) = 2 x {rank_c} = {} but 2 rank(S_in) = {}; post-selection requires rank(S_out) <= 2 rank(S_in)",
            2 * rank_c,
            2 * rank_in
        )));
    }

    let m = s_in.modes();
    let q = t.d1() + t.d2();
    let p = m.max(q);
    let s_in_p = s_in.padded(p);
    let s_ps_p = build_sps(t)?.padded(p);

    let tk_in = takagi(s_in_p.matrix(), UNITARY_TOL)?;
    let tk_ps = takagi(s_ps_p.matrix(), UNITARY_TOL)?;
    let lambda = rescaling_lambda(&tk_in.diagonal(), &tk_ps.diagonal(), RANK_TOL)?;

    // D_in = V_in^T S_in V_in, S_ps = conj(V_ps) D_ps V_ps^†, D_ps = Λ D_in Λ
    // => M^T S_in M = S_ps for M = V_in Λ V_ps^†.
    let map = &tk_in.v * diag_from_reals(&lambda) * tk_ps.v.adjoint();
    let residual = (map.transpose() * s_in_p.matrix() * &map - s_ps_p.matrix()).norm();
    if residual > RECONSTRUCTION_TOL {
        return Err(Error::VerificationFailure(format!("mode map misses S_ps by {residual:.3e}")));
    }

    // Rows of the interferometer index outputs: the q x m block is M^T restricted.
    let block = map.view((0, 0), (m, q)).transpose();
    let ext = unitary_extension(&block)?;
    let interferometer = Interferometer::new(ext.u)?;

    let report = extract_postselected(&interferometer, s_in, t)?;
    if report.fidelity_vs_target < 1.0 - VERIFY_TOL {
        return Err(Error::VerificationFailure(format!(
            "post-selected block has fidelity {} with the target",
            report.fidelity_vs_target
        )));
    }
    let success_probability = success_probability_postselect(&interferometer, s_in, t.d1(), t.d2())?;
    if success_probability <= 0.0 {
        return Err(Error::VerificationFailure("zero success probability".into()));
    }

    Ok(SynthesisResult {
        aux_modes: interferometer.modes() - p,
        interferometer,
        relevant_modes: p,
        scale_alpha: success_probability.sqrt(),
        herald: None,
        success_probability,
    })
}
