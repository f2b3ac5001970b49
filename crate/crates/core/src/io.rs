//! JSON documents exchanged by the command-line tool.
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{amplitude, Interferometer};
use crate::gates::{logical_state, verify_cnz};
use crate::herald::HeraldPattern;
use crate::linalg::{c64, ComplexMatrix, UNITARY_TOL};
use crate::postselect::SynthesisResult;
use crate::twophoton::{QuditTarget, TwoPhotonState};
use crate::verify::{extract_heralded, extract_postselected};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let mut data = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                data.push([z.re, z.im]);
            }
        }
        Self { rows: m.nrows(), cols: m.ncols(), data, label: None, tolerance: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Checks the declared shape and finiteness; `field` names the document
    /// field in error messages.
    pub fn to_matrix(&self, field: &str) -> Result<ComplexMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidArgument(format!("{field}.rows/{field}.cols: matrix must be nonempty")));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::InvalidArgument(format!(
                "{field}.data: expected rows x cols = {} entries, got {}",
                self.rows * self.cols,
                self.data.len()
            )));
        }
        if let Some(k) = self.data.iter().position(|[re, im]| !re.is_finite() || !im.is_finite()) {
            return Err(Error::InvalidArgument(format!("{field}.data[{k}]: non-finite entry")));
        }
        Ok(ComplexMatrix::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.data[i * self.cols + j];
            c64(re, im)
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SynthesisKind {
    Postselect,
    Herald,
    Cnz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeraldDocument {
    pub modes: usize,
    pub signal: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisDocument {
    pub kind: SynthesisKind,
    pub unitary: MatrixDocument,
    pub relevant_modes: usize,
    pub aux_modes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub herald: Option<HeraldDocument>,
    pub alpha: [f64; 2],
    pub success_probability: f64,
    /// `C` for post-selection, `S_out` for heralding, the ideal `2ⁿ x 2ⁿ`
    /// gate for `cnz`.
    pub target: MatrixDocument,
    /// Post-selection input state `S_in`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<MatrixDocument>,
    /// Heralding: number of single photons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub photons: Option<usize>,
    /// Gate: number of qubits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits: Option<usize>,
    /// Gate: phase in radians.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
}

fn herald_document(p: &HeraldPattern) -> HeraldDocument {
    HeraldDocument { modes: p.modes(), signal: p.signal().to_vec() }
}

impl SynthesisDocument {
    fn base(kind: SynthesisKind, r: &SynthesisResult, alpha: [f64; 2], target: MatrixDocument) -> Self {
        Self {
            kind,
            unitary: MatrixDocument::from_matrix(r.unitary()).with_label("interferometer"),
            relevant_modes: r.relevant_modes,
            aux_modes: r.aux_modes,
            herald: r.herald.as_ref().map(herald_document),
            alpha,
            success_probability: r.success_probability,
            target,
            input: None,
            photons: None,
            qubits: None,
            phi: None,
        }
    }

    pub fn postselect(r: &SynthesisResult, s_in: &TwoPhotonState, t: &QuditTarget) -> Self {
        let mut doc = Self::base(
            SynthesisKind::Postselect,
            r,
            [r.scale_alpha, 0.0],
            MatrixDocument::from_matrix(t.coefficients()).with_label("C"),
        );
        doc.input = Some(MatrixDocument::from_matrix(s_in.matrix()).with_label("S_in"));
        doc
    }

    pub fn herald(r: &SynthesisResult, s_out: &TwoPhotonState, photons: usize) -> Self {
        let mut doc = Self::base(
            SynthesisKind::Herald,
            r,
            [r.scale_alpha, 0.0],
            MatrixDocument::from_matrix(s_out.matrix()).with_label("S_out"),
        );
        doc.photons = Some(photons);
        doc
    }

    pub fn cnz(r: &SynthesisResult, spec: &crate::gates::CnZSpec) -> Self {
        let mut doc = Self::base(
            SynthesisKind::Cnz,
            r,
            [spec.alpha.re, spec.alpha.im],
            MatrixDocument::from_matrix(&crate::gates::ideal_gate(spec.n, spec.phi)).with_label("gate"),
        );
        doc.qubits = Some(spec.n);
        doc.phi = Some(spec.phi);
        doc
    }

    /// Loads the interferometer, rejecting non-unitary matrices.
    pub fn interferometer(&self) -> Result<Interferometer> {
        let u = self.unitary.to_matrix("unitary")?;
        if !u.is_square() {
            return Err(Error::InvalidArgument(format!("unitary: must be square, got {}x{}", u.nrows(), u.ncols())));
        }
        let err = crate::linalg::unitarity_error(&u);
        if err >= UNITARY_TOL {
            return Err(Error::InvalidArgument(format!("unitary: |U^†U - I|_F = {err:.3e} exceeds {UNITARY_TOL:e}")));
        }
        Interferometer::new(u)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub kind: SynthesisKind,
    pub passed: bool,
    /// Success probability recomputed from the interferometer.
    pub success_probability: f64,
    /// Overlap with the target (1 for a perfect gate).
    pub fidelity: f64,
}

fn missing(field: &str) -> Error {
    Error::InvalidArgument(format!("{field}: required for this kind"))
}

/// Re-derives the verdict and success probability of a synthesis document
/// from its interferometer alone.
pub fn verify_document(doc: &SynthesisDocument, tol: f64) -> Result<VerificationOutcome> {
    let u = doc.interferometer()?;
    match doc.kind {
        SynthesisKind::Postselect => {
            let s_in = TwoPhotonState::new(doc.input.as_ref().ok_or_else(|| missing("input"))?.to_matrix("input")?)?;
            let t = QuditTarget::new(doc.target.to_matrix("target")?)?;
            let r = extract_postselected(&u, &s_in, &t)?;
            Ok(VerificationOutcome {
                kind: doc.kind,
                passed: r.fidelity_vs_target > 1.0 - tol && r.probability > 0.0,
                success_probability: r.probability,
                fidelity: r.fidelity_vs_target,
            })
        }
        SynthesisKind::Herald => {
            let photons = doc.photons.ok_or_else(|| missing("photons"))?;
            let h = doc.herald.as_ref().ok_or_else(|| missing("herald"))?;
            if h.modes != h.signal.len() {
                return Err(Error::InvalidArgument(format!("herald.modes = {} but herald.signal has {} entries", h.modes, h.signal.len())));
            }
            let pattern = HeraldPattern::new(h.signal.clone())?;
            let target = doc.target.to_matrix("target")?;
            let r = extract_heralded(&u, photons, &pattern, target.nrows(), &target)?;
            Ok(VerificationOutcome {
                kind: doc.kind,
                passed: r.fidelity_vs_target > 1.0 - tol && r.probability > 0.0,
                success_probability: r.probability,
                fidelity: r.fidelity_vs_target,
            })
        }
        SynthesisKind::Cnz => {
            let n = doc.qubits.ok_or_else(|| missing("qubits"))?;
            let phi = doc.phi.ok_or_else(|| missing("phi"))?;
            if n < 2 || u.modes() < 2 * n {
                return Err(Error::InvalidArgument(format!("qubits: {n} qubits do not fit a {}-mode unitary", u.modes())));
            }
            let vacuum_logical = logical_state(n, 0, u.modes());
            let p = amplitude(&u, &vacuum_logical, &vacuum_logical)?.norm_sqr();
            let result = SynthesisResult {
                relevant_modes: 2 * n,
                aux_modes: u.modes() - 2 * n,
                scale_alpha: p.powf(0.5 / n as f64),
                herald: None,
                success_probability: p,
                interferometer: u,
            };
            let passed = verify_cnz(&result, n, phi, tol);
            Ok(VerificationOutcome { kind: doc.kind, passed, success_probability: p, fidelity: if passed { 1.0 } else { 0.0 } })
        }
    }
}
