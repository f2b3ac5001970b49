//! Seeded random instances for property suites and the self-test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, diag_from_reals, ComplexMatrix, C64};

pub type SuiteRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Ginibre matrix with i.i.d. standard complex normal entries.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase of `R` removed).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let qr = random_complex(rng, n, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c64(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Dense random complex symmetric matrix (not normalized).
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = random_complex(rng, n, n);
    (&g + g.transpose()) * c64(0.5, 0.0)
}

/// Random symmetric `n x n` matrix of exact rank `rank`, normalized so that
/// `2 Tr(S^† S) = 1`.
pub fn random_symmetric_of_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    assert!(rank <= n);
    let mut d: Vec<f64> = (0..n).map(|i| if i < rank { rng.random_range(0.2..1.0) } else { 0.0 }).collect();
    let norm = (2.0 * d.iter().map(|x| x * x).sum::<f64>()).sqrt();
    if norm > 0.0 {
        d.iter_mut().for_each(|x| *x /= norm);
    }
    let v = random_unitary(rng, n);
    crate::linalg::symmetrize(&(v.conjugate() * diag_from_reals(&d) * v.adjoint()))
}

/// Random `rank`-diagonal state over `n` modes, normalized.
pub fn random_diagonal_state<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let mut d: Vec<f64> = (0..n).map(|i| if i < rank { rng.random_range(0.2..1.0) } else { 0.0 }).collect();
    let norm = (2.0 * d.iter().map(|x| x * x).sum::<f64>()).sqrt();
    if norm > 0.0 {
        d.iter_mut().for_each(|x| *x /= norm);
    }
    diag_from_reals(&d)
}

/// Random `d1 x d2` matrix of the given rank with unit Frobenius norm.
pub fn random_coefficients_of_rank<R: Rng + ?Sized>(rng: &mut R, d1: usize, d2: usize, rank: usize) -> ComplexMatrix {
    assert!(rank >= 1 && rank <= d1.min(d2));
    let c = random_complex(rng, d1, rank) * random_complex(rng, rank, d2);
    let norm = c.norm();
    c / c64(norm, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_unitary, numerical_rank, RANK_TOL};

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = seeded(1);
        for n in 1..7 {
            assert!(is_unitary(&random_unitary(&mut rng, n), 1e-12));
        }
    }

    #[test]
    fn ranks_are_exact() {
        let mut rng = seeded(2);
        for r in 0..=5 {
            let s = random_symmetric_of_rank(&mut rng, 5, r);
            assert_eq!(numerical_rank(&s, RANK_TOL), r);
            if r > 0 {
                assert!((2.0 * s.norm_squared() - 1.0).abs() < 1e-12);
            }
        }
        let c = random_coefficients_of_rank(&mut rng, 4, 3, 2);
        assert_eq!(numerical_rank(&c, RANK_TOL), 2);
    }

    #[test]
    fn same_seed_same_stream() {
        let a = random_complex(&mut seeded(42), 3, 3);
        let b = random_complex(&mut seeded(42), 3, 3);
        assert_eq!(a, b);
    }
}
