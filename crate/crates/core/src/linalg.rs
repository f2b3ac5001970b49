//! Dense complex linear algebra used by the synthesizers.
//!
//! Matrices are plain `nalgebra::DMatrix<Complex<f64>>`. The SVD and the real
//! symmetric eigensolver are Jacobi iterations, which stay accurate on the
//! rank-deficient and degenerate matrices the synthesizers produce.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type RealMatrix = DMatrix<f64>;

/// Tolerance for unitarity and symmetry checks.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance for reconstruction checks (`V^T S V = D`, `U S V^† = M`).
pub const RECONSTRUCTION_TOL: f64 = 1e-9;
/// Relative cutoff used by [`numerical_rank`].
pub const RANK_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_EPS: f64 = 4.0 * f64::EPSILON;

pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn ensure_finite(m: &ComplexMatrix) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Frobenius norm of `U^† U - I`.
pub fn unitarity_error(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let n = u.nrows();
    (u.adjoint() * u - ComplexMatrix::identity(n, n)).norm()
}

pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    unitarity_error(u) < tol
}

/// Frobenius norm of `S - S^T`.
pub fn symmetry_error(s: &ComplexMatrix) -> f64 {
    if !s.is_square() {
        return f64::INFINITY;
    }
    (s - s.transpose()).norm()
}

/// `(S + S^T) / 2`.
pub fn symmetrize(s: &ComplexMatrix) -> ComplexMatrix {
    (s + s.transpose()) * c64(0.5, 0.0)
}

pub fn block_diag(blocks: &[&ComplexMatrix]) -> ComplexMatrix {
    let rows = blocks.iter().map(|b| b.nrows()).sum();
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), (b.nrows(), b.ncols())).copy_from(*b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// Embeds `m` in the top-left corner of a `rows x cols` zero matrix.
pub fn zero_pad(m: &ComplexMatrix, rows: usize, cols: usize) -> ComplexMatrix {
    assert!(rows >= m.nrows() && cols >= m.ncols(), "zero_pad cannot shrink");
    let mut out = ComplexMatrix::zeros(rows, cols);
    out.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    out
}

pub fn diag_from_reals(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { c64(values[i], 0.0) } else { c64(0.0, 0.0) })
}

/// Full singular value decomposition `M = U Σ V^†`.
///
/// `u` is `rows x rows`, `v` is `cols x cols`, both unitary; `sigma` holds the
/// `min(rows, cols)` singular values in descending order.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    /// The rectangular `rows x cols` diagonal factor.
    pub fn sigma_matrix(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.u.ncols(), self.v.ncols());
        for (i, &x) in self.sigma.iter().enumerate() {
            s[(i, i)] = c64(x, 0.0);
        }
        s
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        &self.u * self.sigma_matrix() * self.v.adjoint()
    }
}

/// One-sided Jacobi on the columns of a tall matrix (`rows >= cols`).
///
/// Returns `(W, V, converged)` with `W = A V` having mutually orthogonal
/// columns and `V` unitary; the column norms of `W` are the singular values.
fn one_sided_jacobi(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix, bool) {
    let n = a.ncols();
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n, n);
    let negligible = (JACOBI_EPS * a.norm()).powi(2);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g == 0.0 || g <= JACOBI_EPS * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut w, &mut v] {
                    for i in 0..mat.nrows() {
                        let xp = mat[(i, p)];
                        let xq = mat[(i, q)] * phase.conj();
                        mat[(i, p)] = xp * c - xq * s;
                        mat[(i, q)] = xp * s + xq * c;
                    }
                }
            }
        }
        if !rotated {
            return (w, v, true);
        }
    }
    (w, v, false)
}

/// Full SVD, tall or wide, with the convergence flag of the Jacobi sweeps.
fn jacobi_svd(m: &ComplexMatrix) -> (Svd, bool) {
    let (rows, cols) = m.shape();
    if rows < cols {
        let (t, converged) = jacobi_svd(&m.adjoint());
        return (Svd { u: t.v, sigma: t.sigma, v: t.u }, converged);
    }
    let (w, v, converged) = one_sided_jacobi(m);
    let norms: Vec<f64> = (0..cols).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let floor = sigma.first().copied().unwrap_or(0.0) * JACOBI_EPS * rows as f64;
    let kept = sigma.iter().take_while(|&&x| x > floor && x > 0.0).count();
    let u_kept = ComplexMatrix::from_fn(rows, kept, |r, c| w[(r, order[c])] / sigma[c]);
    let v_sorted = ComplexMatrix::from_fn(cols, cols, |r, c| v[(r, order[c])]);
    (Svd { u: complete_unitary(&u_kept), sigma, v: v_sorted }, converged)
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.is_empty() {
        return Err(Error::DimensionMismatch("svd of an empty matrix".into()));
    }
    ensure_finite(m)?;
    match jacobi_svd(m) {
        (dec, true) => Ok(dec),
        (_, false) => Err(Error::ConvergenceFailure("complex SVD")),
    }
}

/// Singular values in descending order. Never fails: returns the values
/// reached after the last sweep.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    jacobi_svd(m).0.sigma
}

/// Cyclic Jacobi eigendecomposition of a real symmetric matrix. Returns the
/// eigenvalues and the orthogonal matrix of eigenvectors (as columns).
fn symmetric_eigen(a: &RealMatrix) -> Result<(Vec<f64>, RealMatrix)> {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = RealMatrix::identity(n, n);
    let scale = a.norm();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[(i, j)].powi(2)).sum();
        if off.sqrt() <= JACOBI_EPS * scale || scale == 0.0 {
            return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::ConvergenceFailure("real symmetric eigensolver"))
}

/// Extends a set of orthonormal columns (`n x k`, `k <= n`) to an `n x n`
/// unitary. Existing columns are kept as the leading columns.
pub fn complete_unitary(cols: &ComplexMatrix) -> ComplexMatrix {
    let n = cols.nrows();
    let k = cols.ncols();
    assert!(k <= n);
    let mut basis: Vec<nalgebra::DVector<C64>> = (0..k).map(|j| cols.column(j).into_owned()).collect();

    let project_out = |v: &mut nalgebra::DVector<C64>, basis: &[nalgebra::DVector<C64>]| {
        for _ in 0..2 {
            for q in basis {
                let overlap = q.dotc(v);
                *v -= q * overlap;
            }
        }
    };

    while basis.len() < n {
        let mut best: Option<(f64, nalgebra::DVector<C64>)> = None;
        for j in 0..n {
            let mut e = nalgebra::DVector::<C64>::zeros(n);
            e[j] = c64(1.0, 0.0);
            project_out(&mut e, &basis);
            let norm = e.norm();
            if best.as_ref().is_none_or(|(b, _)| norm > *b) {
                best = Some((norm, e));
            }
        }
        let (norm, mut v) = best.expect("n > 0");
        v /= c64(norm, 0.0);
        project_out(&mut v, &basis);
        let norm = v.norm();
        basis.push(v / c64(norm, 0.0));
    }

    let mut out = ComplexMatrix::zeros(n, n);
    for (j, v) in basis.iter().enumerate() {
        out.set_column(j, v);
    }
    out
}

/// `V^T S V = D` with `V` unitary and `D` real, nonnegative, descending.
#[derive(Debug, Clone)]
pub struct TakagiFactorization {
    pub v: ComplexMatrix,
    pub d: ComplexMatrix,
}

impl TakagiFactorization {
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.d.nrows()).map(|i| self.d[(i, i)].re).collect()
    }

    /// `conj(V) D V^†`, the source matrix.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.v.conjugate() * &self.d * self.v.adjoint()
    }
}

/// Takagi (Autonne–Takagi) factorization of a complex symmetric matrix.
///
/// Writing `S = X + iY`, a Takagi vector `v = a + ib` with `S v = σ conj(v)`
/// corresponds to a real eigenvector `(a, b)` of the real symmetric matrix
/// `[[X, -Y], [-Y, -X]]` with eigenvalue `σ`. Eigenvalues come in `±σ`
/// pairs, and `(−b, a)` spans the `−σ` partner, so real orthonormal
/// eigenvectors for distinct positive eigenvalues give complex orthonormal
/// Takagi vectors, also inside degenerate clusters. The null space is filled
/// in by orthonormal completion.
pub fn takagi(s: &ComplexMatrix, tol: f64) -> Result<TakagiFactorization> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "takagi needs a square matrix, got {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    ensure_finite(s)?;
    let deviation = symmetry_error(s);
    if deviation >= tol {
        return Err(Error::NotSymmetric { deviation, tol });
    }
    let n = s.nrows();
    if n == 0 {
        return Err(Error::DimensionMismatch("takagi of an empty matrix".into()));
    }
    let s = symmetrize(s);

    let mut h = RealMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = s[(i, j)];
            h[(i, j)] = z.re;
            h[(i, n + j)] = -z.im;
            h[(n + i, j)] = -z.im;
            h[(n + i, n + j)] = -z.re;
        }
    }
    let (eigenvalues, eigenvectors) = symmetric_eigen(&h)?;

    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| eigenvalues[b].total_cmp(&eigenvalues[a]));
    let sigma_max = eigenvalues[order[0]].max(0.0);
    let cutoff = 64.0 * f64::EPSILON * (2 * n) as f64 * sigma_max;

    let mut vectors: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(n);
    let mut diag: Vec<f64> = Vec::with_capacity(n);
    for &idx in order.iter().take(n) {
        let lambda = eigenvalues[idx];
        if sigma_max == 0.0 || lambda <= cutoff {
            break;
        }
        let col = eigenvectors.column(idx);
        let mut v = nalgebra::DVector::<C64>::from_fn(n, |i, _| c64(col[i], col[n + i]));
        for _ in 0..2 {
            for q in &vectors {
                let overlap = q.dotc(&v);
                v -= q * overlap;
            }
        }
        let norm = v.norm();
        if norm < 0.5 {
            // Collapsed onto an earlier vector: numerically part of the null space.
            continue;
        }
        v /= c64(norm, 0.0);
        let z = (v.transpose() * &s * &v)[(0, 0)];
        if z.norm() > 0.0 {
            v *= C64::from_polar(1.0, -0.5 * z.arg());
        }
        vectors.push(v);
        diag.push(lambda);
    }

    let mut leading = ComplexMatrix::zeros(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        leading.set_column(j, v);
    }
    let v = complete_unitary(&leading);
    diag.resize(n, 0.0);
    Ok(TakagiFactorization { v, d: diag_from_reals(&diag) })
}

/// A unitary whose top-left block is `A / σ₁`.
#[derive(Debug, Clone)]
pub struct UnitaryExtension {
    pub u: ComplexMatrix,
    /// Largest singular value of the embedded matrix.
    pub sigma1: f64,
    /// Side length of `u`.
    pub dim: usize,
}

/// Embeds `A / σ₁` (`m1 x m2`) as the top-left block of an `(m1 + m2)`
/// square unitary.
///
/// For `m1 <= m2`, with `A / σ₁ = W (D 0) Y^†`:
///
/// ```text
/// U = diag(W, Y) · | D  0  √(1−D²) | · diag(Y^†, W^†)
///                  | 0  I     0    |
///                  |√(1−D²) 0  −D  |
/// ```
///
/// The `m1 > m2` case is the adjoint of the extension of `A^†`.
pub fn unitary_extension(a: &ComplexMatrix) -> Result<UnitaryExtension> {
    if a.is_empty() {
        return Err(Error::ZeroMatrix);
    }
    ensure_finite(a)?;
    if a.iter().all(|z| *z == c64(0.0, 0.0)) {
        return Err(Error::ZeroMatrix);
    }
    let (m1, m2) = a.shape();
    if m1 > m2 {
        let ext = unitary_extension(&a.adjoint())?;
        return Ok(UnitaryExtension { u: ext.u.adjoint(), ..ext });
    }

    let dec = svd(a)?;
    let sigma1 = dec.sigma[0];
    if sigma1 <= 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let dim = m1 + m2;
    let mut core = ComplexMatrix::zeros(dim, dim);
    for (i, &s) in dec.sigma.iter().enumerate() {
        let d = (s / sigma1).clamp(0.0, 1.0);
        let c = (1.0 - d * d).max(0.0).sqrt();
        core[(i, i)] = c64(d, 0.0);
        core[(i, m2 + i)] = c64(c, 0.0);
        core[(m2 + i, i)] = c64(c, 0.0);
        core[(m2 + i, m2 + i)] = c64(-d, 0.0);
    }
    for j in m1..m2 {
        core[(j, j)] = c64(1.0, 0.0);
    }

    let left = block_diag(&[&dec.u, &dec.v]);
    let right = block_diag(&[&dec.v.adjoint(), &dec.u.adjoint()]);
    Ok(UnitaryExtension { u: left * core * right, sigma1, dim })
}

/// Number of singular values above `tol * σ_max`; 0 for the zero matrix.
pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> usize {
    let sv = singular_values(m);
    match sv.first() {
        Some(&max) if max > 0.0 => sv.iter().filter(|&&s| s > tol * max).count(),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_complex, random_symmetric, random_unitary, seeded};

    fn real(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_row_slice(rows, cols, &data.iter().map(|&x| c64(x, 0.0)).collect::<Vec<_>>())
    }

    #[test]
    fn svd_of_identity() {
        let id = ComplexMatrix::identity(3, 3);
        let dec = svd(&id).unwrap();
        assert_eq!(dec.sigma.len(), 3);
        for s in &dec.sigma {
            assert!((s - 1.0).abs() < 1e-14);
        }
        assert!((dec.reconstruct() - id).norm() < 1e-13);
    }

    #[test]
    fn svd_of_diagonal_is_sorted() {
        let m = real(2, 2, &[0.0, 0.0, 0.0, 3.0]);
        let dec = svd(&m).unwrap();
        assert!((dec.sigma[0] - 3.0).abs() < 1e-14);
        assert!(dec.sigma[1].abs() < 1e-14);
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let mut rng = seeded(3);
        for (r, c) in [(5, 3), (3, 5), (1, 4), (4, 4)] {
            let m = random_complex(&mut rng, r, c);
            let dec = svd(&m).unwrap();
            assert!((dec.reconstruct() - &m).norm() < 1e-10);
            assert!(is_unitary(&dec.u, 1e-12));
            assert!(is_unitary(&dec.v, 1e-12));
            assert!(dec.sigma.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_rejects_nan() {
        let mut m = ComplexMatrix::identity(2, 2);
        m[(0, 1)] = c64(f64::NAN, 0.0);
        assert_eq!(svd(&m).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn takagi_of_diagonal_is_trivial() {
        let s = real(2, 2, &[0.3, 0.0, 0.0, 0.2]);
        let t = takagi(&s, UNITARY_TOL).unwrap();
        let d = t.diagonal();
        assert!((d[0] - 0.3).abs() < 1e-14 && (d[1] - 0.2).abs() < 1e-14);
        assert!((t.v.transpose() * &s * &t.v - &t.d).norm() < 1e-13);
    }

    #[test]
    fn takagi_of_single_photon_pair() {
        let s = real(2, 2, &[0.0, 0.5, 0.5, 0.0]);
        let t = takagi(&s, UNITARY_TOL).unwrap();
        let d = t.diagonal();
        assert!((d[0] - 0.5).abs() < 1e-14 && (d[1] - 0.5).abs() < 1e-14);
        assert!((t.v.transpose() * &s * &t.v - &t.d).norm() < 1e-13);
        assert!(is_unitary(&t.v, 1e-13));

        // The hand-derived factor from the degenerate pair also works.
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let v = ComplexMatrix::from_row_slice(2, 2, &[c64(r, 0.0), c64(0.0, r), c64(r, 0.0), c64(0.0, -r)]);
        assert!((v.transpose() * &s * &v - diag_from_reals(&[0.5, 0.5])).norm() < 1e-14);
    }

    #[test]
    fn takagi_rejects_hermitian_non_symmetric() {
        let s = ComplexMatrix::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 1.0), c64(0.0, -1.0), c64(1.0, 0.0)]);
        assert!(matches!(takagi(&s, UNITARY_TOL), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn takagi_random_and_rank_deficient() {
        let mut rng = seeded(11);
        let s = random_symmetric(&mut rng, 6);
        let t = takagi(&s, UNITARY_TOL).unwrap();
        assert!((t.v.transpose() * &s * &t.v - &t.d).norm() < 1e-9);

        let a = random_complex(&mut rng, 6, 2);
        let low = &a * a.transpose();
        let t = takagi(&low, UNITARY_TOL).unwrap();
        assert!((t.v.transpose() * &low * &t.v - &t.d).norm() < 1e-9);
        assert!(is_unitary(&t.v, 1e-10));
        assert_eq!(t.diagonal().iter().filter(|&&x| x > 1e-10).count(), 2);
    }

    #[test]
    fn takagi_of_zero() {
        let t = takagi(&ComplexMatrix::zeros(3, 3), UNITARY_TOL).unwrap();
        assert!(t.diagonal().iter().all(|&x| x == 0.0));
        assert!(is_unitary(&t.v, 1e-14));
    }

    #[test]
    fn extension_of_identity() {
        let ext = unitary_extension(&ComplexMatrix::identity(2, 2)).unwrap();
        assert!((ext.sigma1 - 1.0).abs() < 1e-14);
        assert!((ext.u.view((0, 0), (2, 2)) - ComplexMatrix::identity(2, 2)).norm() < 1e-13);
        assert!(ext.dim <= 4);
    }

    #[test]
    fn extension_of_scalar() {
        let ext = unitary_extension(&real(1, 1, &[0.6])).unwrap();
        assert!((ext.sigma1 - 0.6).abs() < 1e-14);
        assert!((ext.u - real(2, 2, &[1.0, 0.0, 0.0, -1.0])).norm() < 1e-13);
    }

    #[test]
    fn extension_of_random_rectangles() {
        let mut rng = seeded(5);
        for (r, c) in [(3, 5), (5, 3), (4, 4), (1, 6)] {
            let a = random_complex(&mut rng, r, c);
            let ext = unitary_extension(&a).unwrap();
            assert!(is_unitary(&ext.u, 1e-10));
            let block = ext.u.view((0, 0), (r, c)).into_owned();
            assert!((block - &a / c64(ext.sigma1, 0.0)).norm() < 1e-10);
            assert!(ext.dim <= r + c);
        }
    }

    #[test]
    fn extension_rejects_zero() {
        assert_eq!(unitary_extension(&ComplexMatrix::zeros(2, 3)).unwrap_err(), Error::ZeroMatrix);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(numerical_rank(&ComplexMatrix::zeros(4, 4), RANK_TOL), 0);
        assert_eq!(numerical_rank(&ComplexMatrix::identity(3, 3), RANK_TOL), 3);
        assert_eq!(numerical_rank(&real(2, 2, &[1.0, 1.0, 1.0, 1.0]), RANK_TOL), 1);
    }

    #[test]
    fn rank_survives_unitary_mixing() {
        let mut rng = seeded(8);
        let a = random_complex(&mut rng, 5, 3);
        let m = &a * random_complex(&mut rng, 3, 5);
        let u = random_unitary(&mut rng, 5);
        let v = random_unitary(&mut rng, 5);
        assert_eq!(numerical_rank(&(u * &m * v), RANK_TOL), 3);
    }
}
