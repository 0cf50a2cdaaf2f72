//! Shared dense numerics: central finite differences and a pivoted solver.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Default step for central finite differences.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Pivot threshold, relative to the matrix infinity norm, below which a
/// dense solve is reported singular.
pub const SINGULARITY_TOL: f64 = 1e-14;

/// Central-difference gradient of a scalar field:
/// `(f(z + h e_i) - f(z - h e_i)) / (2 h)` per component.
pub fn finite_difference_gradient<F>(f: F, z: &DVector<f64>, h: f64) -> Result<DVector<f64>>
where
    F: Fn(&DVector<f64>) -> f64,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Invalid(format!("finite-difference step {h} must be positive")));
    }
    let mut grad = DVector::zeros(z.len());
    let mut probe = z.clone();
    for i in 0..z.len() {
        probe[i] = z[i] + h;
        let fp = f(&probe);
        probe[i] = z[i] - h;
        let fm = f(&probe);
        probe[i] = z[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NonFinite {
                context: "finite_difference_gradient",
                component: i,
            });
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    Ok(grad)
}

/// Central-difference Jacobian of a vector field. The step for component
/// `j` is scaled as `h * (1 + |z_j|)`.
pub fn finite_difference_jacobian<F>(f: F, z: &DVector<f64>, h: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Invalid(format!("finite-difference step {h} must be positive")));
    }
    let rows = f(z).len();
    let mut jac = DMatrix::zeros(rows, z.len());
    let mut probe = z.clone();
    for j in 0..z.len() {
        let hj = h * (1.0 + z[j].abs());
        probe[j] = z[j] + hj;
        let fp = f(&probe);
        probe[j] = z[j] - hj;
        let fm = f(&probe);
        probe[j] = z[j];
        if fp.iter().any(|v| !v.is_finite()) || fm.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "finite_difference_jacobian",
                component: j,
            });
        }
        for i in 0..rows {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * hj);
        }
    }
    Ok(jac)
}

/// Solve `A x = rhs` by Gaussian elimination with partial pivoting.
///
/// A pivot below `SINGULARITY_TOL * ||A||_inf` aborts with
/// [`Error::SingularMatrix`] carrying the offending pivot magnitude.
pub fn solve_dense_linear(a: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::Dimension {
            context: "solve_dense_linear matrix",
            expected: n,
            actual: a.ncols(),
        });
    }
    if rhs.len() != n {
        return Err(Error::Dimension {
            context: "solve_dense_linear rhs",
            expected: n,
            actual: rhs.len(),
        });
    }
    if n == 0 {
        return Ok(DVector::zeros(0));
    }

    let norm = (0..n)
        .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0_f64, f64::max);
    let tol = SINGULARITY_TOL * norm;

    let mut m = a.clone_owned();
    let mut x = rhs.clone_owned();

    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, m[(r, col)].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty pivot search");
        if pivot <= tol {
            return Err(Error::SingularMatrix { pivot });
        }
        if pivot_row != col {
            m.swap_rows(pivot_row, col);
            x.swap_rows(pivot_row, col);
        }
        for r in col + 1..n {
            let factor = m[(r, col)] / m[(col, col)];
            if factor != 0.0 {
                for c in col..n {
                    m[(r, c)] -= factor * m[(col, c)];
                }
                x[r] -= factor * x[col];
            }
        }
    }

    for col in (0..n).rev() {
        let mut s = x[col];
        for c in col + 1..n {
            s -= m[(col, c)] * x[c];
        }
        x[col] = s / m[(col, col)];
    }
    Ok(x)
}

/// Smallest singular value, used for numerical rank certificates.
pub fn smallest_singular_value(a: &DMatrix<f64>) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone_owned()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(f64::INFINITY, |acc, s| acc.min(*s))
}
