//! Numeric rank and null space helpers shared by the dimension and
//! correlated-equilibrium code.

use nalgebra::{DMatrix, DVector};

/// Relative singular-value cutoff for numeric ranks.
pub const RANK_TOL: f64 = 1e-9;

/// Number of singular values above `RANK_TOL·σ_max`.
pub fn numeric_rank(sv: &DVector<f64>) -> usize {
    let max = sv.iter().fold(0.0f64, |a, v| a.max(*v));
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * max).count()
}

pub fn matrix_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    numeric_rank(&m.singular_values())
}

/// Stacks equal-length vectors as matrix rows.
pub fn rows_matrix(rows: &[Vec<f64>], ncols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

/// Null space basis of `a`, with the same cutoff as [`matrix_rank`].
pub fn null_space(a: &DMatrix<f64>) -> Vec<Vec<f64>> {
    let n = a.ncols();
    // pad to at least n rows so the thin SVD returns all of V
    let padded = if a.nrows() < n {
        a.clone().resize_vertically(n, 0.0)
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let max = svd.singular_values.max();
    (0..n)
        .filter(|&k| max == 0.0 || svd.singular_values[k] <= RANK_TOL * max)
        .map(|k| v_t.row(k).iter().copied().collect())
        .collect()
}
