//! Tolerance-aware dense linear algebra shared by the construction modules.

use crate::error::{Result, WaveletError};
use nalgebra::{DMatrix, DVector};

/// Dense real matrix used throughout the crate.
pub type Mat = DMatrix<f64>;
/// Dense real vector.
pub type Vect = DVector<f64>;

/// Numerical tolerances used by rank decisions, residual checks and
/// eigenvalue comparisons.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Maximum-absolute-entry residual accepted by consistency checks.
    pub residual_tol: f64,
    /// Slack used when comparing eigenvalues.
    pub eig_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_tol: 1e-10,
            residual_tol: 1e-9,
            eig_tol: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if self.rank_tol > 0.0 && self.residual_tol > 0.0 && self.eig_tol > 0.0 {
            Ok(())
        } else {
            Err(WaveletError::InvalidInput(
                "tolerances must be strictly positive".into(),
            ))
        }
    }
}

/// Checks that every entry of `m` is finite.
pub fn check_finite(m: &Mat) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(WaveletError::InvalidInput(
            "matrix contains NaN or infinite entries".into(),
        ))
    }
}

/// Largest eigenvalue modulus of a square matrix.
pub fn spectral_radius(m: &Mat) -> Result<f64> {
    if !m.is_square() {
        return Err(WaveletError::Dimension(format!(
            "spectral radius needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    let eigs = m.clone().complex_eigenvalues();
    Ok(eigs.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Number of singular values above `rank_tol` relative to the largest one.
pub fn numerical_rank(m: &Mat, tol: &Tolerances) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol.rank_tol * max).count()
}

/// Solves `M = 2*At0*M*A0^T + 2*At1*M*A1^T` for the fixed point `M`,
/// unique up to scale when 1 is a simple eigenvalue of the lifted operator.
///
/// The scale of the returned matrix is arbitrary; callers normalize it.
pub fn solve_sylvester_fixed_point(
    at0: &Mat,
    at1: &Mat,
    a0: &Mat,
    a1: &Mat,
    tol: &Tolerances,
) -> Result<Mat> {
    let rows = at0.nrows();
    let cols = a0.nrows();
    if at0.shape() != (rows, rows)
        || at1.shape() != (rows, rows)
        || a0.shape() != (cols, cols)
        || a1.shape() != (cols, cols)
    {
        return Err(WaveletError::Dimension(
            "fixed-point solve needs square A0/A1 pairs".into(),
        ));
    }
    // vec(M) column-stacking turns the equation into T vec(M) = vec(M) with
    // T = 2 (A0 (x) At0 + A1 (x) At1).
    let t = (a0.kronecker(at0) + a1.kronecker(at1)) * 2.0;
    let n = t.nrows();

    let eigs = t.clone().complex_eigenvalues();
    let near_one = eigs
        .iter()
        .filter(|z| (*z - nalgebra::Complex::new(1.0, 0.0)).norm() < tol.eig_tol.max(1e-8))
        .count();
    if near_one != 1 {
        return Err(WaveletError::NonSimpleEigenvalue {
            multiplicity: near_one,
        });
    }

    // Shifted inverse iteration on (T - I). The shift keeps the factorization
    // nonsingular while the eigenvector for 1 dominates.
    let shift = 1.0 + 1e-11;
    let shifted = &t - Mat::identity(n, n) * shift;
    let lu = shifted.full_piv_lu();
    let mut x = Vect::from_element(n, 1.0 / (n as f64).sqrt());
    for _ in 0..8 {
        let mut y = lu
            .solve(&x)
            .ok_or_else(|| WaveletError::Inconsistency("singular shifted operator".into()))?;
        let norm = y.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(WaveletError::Inconsistency(
                "inverse iteration diverged".into(),
            ));
        }
        y /= norm;
        x = y;
    }
    let residual = (&t * &x - &x).amax();
    if residual > 1e-8 {
        return Err(WaveletError::Inconsistency(format!(
            "fixed-point eigenvector residual {residual:.3e}"
        )));
    }
    Ok(Mat::from_column_slice(rows, cols, x.as_slice()))
}

/// Least-squares solve `A x = b` via SVD; returns the minimum-norm solution.
pub fn lstsq(a: &Mat, b: &Mat, tol: &Tolerances) -> Result<Mat> {
    let svd = a.clone().svd(true, true);
    svd.solve(b, tol.rank_tol)
        .map_err(|e| WaveletError::Inconsistency(format!("svd solve failed: {e}")))
}

/// Condition number estimate from singular values (inf for rank-deficient).
pub fn condition_number(a: &Mat) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 1.0;
    }
    let sv = a.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Rows of `candidates` that keep increasing the rank when visited in order.
///
/// Returns indices of the kept rows; `base` rows are always considered kept.
pub fn greedy_rank_rows(base: &Mat, candidates: &Mat, tol: &Tolerances) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut current = base.clone();
    let mut rank = numerical_rank(&current, tol);
    for i in 0..candidates.nrows() {
        let mut trial = Mat::zeros(current.nrows() + 1, candidates.ncols());
        trial.rows_mut(0, current.nrows()).copy_from(&current);
        trial
            .row_mut(current.nrows())
            .copy_from(&candidates.row(i));
        let r = numerical_rank(&trial, tol);
        if r > rank {
            rank = r;
            current = trial;
            kept.push(i);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn spectral_radius_identity() {
        let m = Mat::identity(3, 3);
        assert!((spectral_radius(&m).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spectral_radius_boundary_block() {
        let s2 = 2f64.sqrt();
        let m = Mat::from_row_slice(2, 2, &[0.75, s2 / 4.0, -s2 / 4.0, 0.0]);
        assert!((spectral_radius(&m).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn spectral_radius_diagonal() {
        let m = Mat::from_diagonal(&Vect::from_vec(vec![0.5, 0.25, 0.125]));
        assert!((spectral_radius(&m).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn spectral_radius_rejects_rectangular() {
        let m = Mat::zeros(2, 3);
        assert!(spectral_radius(&m).is_err());
    }

    #[test]
    fn rank_zero_matrix() {
        let m = Mat::zeros(2, 3);
        assert_eq!(numerical_rank(&m, &tols()), 0);
    }

    #[test]
    fn rank_one_matrix() {
        let m = Mat::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(numerical_rank(&m, &tols()), 1);
    }

    #[test]
    fn rank_orthonormal_columns() {
        // QR of a fixed full-rank 5x5 matrix gives orthonormal columns.
        let mut m = Mat::zeros(5, 5);
        let mut state = 1234567u64;
        for i in 0..5 {
            for j in 0..5 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                m[(i, j)] = ((state >> 33) as f64) / (u32::MAX as f64) - 0.5;
            }
        }
        let q = m.qr().q();
        assert_eq!(numerical_rank(&q, &tols()), 5);
    }

    #[test]
    fn sylvester_haar_unit() {
        let h = Mat::from_element(1, 1, 0.5);
        let m = solve_sylvester_fixed_point(&h, &h, &h, &h, &tols()).unwrap();
        // 1x1 solution, any scale; normalized by the caller.
        assert_eq!(m.shape(), (1, 1));
        assert!(m[(0, 0)].abs() > 1e-8);
    }

    #[test]
    fn sylvester_detects_degeneracy() {
        // A0 = A1 = I/2 on two entries that "are the same function" produces a
        // non-simple eigenvalue 1 in the lifted operator.
        let a = Mat::identity(2, 2) * 0.5;
        let err = solve_sylvester_fixed_point(&a, &a, &a, &a, &tols());
        assert!(matches!(
            err,
            Err(WaveletError::NonSimpleEigenvalue { .. })
        ));
    }

    proptest! {
        #[test]
        fn spectral_radius_transpose_invariant(vals in proptest::collection::vec(-2.0f64..2.0, 16)) {
            let m = Mat::from_row_slice(4, 4, &vals);
            let a = spectral_radius(&m).unwrap();
            let b = spectral_radius(&m.transpose()).unwrap();
            prop_assert!((a - b).abs() < 1e-8 * (1.0 + a.abs()));
        }

        #[test]
        fn rank_permutation_invariant(vals in proptest::collection::vec(-1.0f64..1.0, 12)) {
            let m = Mat::from_row_slice(3, 4, &vals);
            let r = numerical_rank(&m, &tols());
            // Swap two rows and two columns.
            let mut p = m.clone();
            p.swap_rows(0, 2);
            p.swap_columns(1, 3);
            prop_assert_eq!(numerical_rank(&p, &tols()), r);
        }
    }
}
