//! Phase-space data model in Darboux coordinates.
//!
//! States are block vectors `z = (q, p, lambda, lambda_h)`: configuration,
//! conjugate momenta, velocity-constraint multipliers, and (optionally)
//! holonomic multipliers. The structure matrix `J` is constant and
//! antisymmetric, with the canonical symplectic block on `(q, p)` and zeros
//! on the multiplier blocks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Block sizes of the Darboux coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DarbouxDims {
    n: usize,
    k: usize,
    l: usize,
}

impl DarbouxDims {
    /// `n` configuration coordinates, `k` velocity-constraint multipliers,
    /// `l` holonomic multipliers.
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid(
                "need at least one configuration coordinate".into(),
            ));
        }
        Ok(Self { n, k, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Total state dimension `m = 2n + k + l`.
    pub fn state_dim(&self) -> usize {
        2 * self.n + self.k + self.l
    }

    /// Dimension of the symplectic `(q, p)` block.
    pub fn qp_dim(&self) -> usize {
        2 * self.n
    }
}

/// A point `z = (q, p, lambda, lambda_h)` in the extended phase space.
///
/// Construction only checks component lengths; whether a state is
/// on-manifold for a given system (`H_lambda = 0`) is a testable predicate,
/// see [`crate::system::is_on_manifold`].
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub q: DVector<f64>,
    pub p: DVector<f64>,
    pub lambda: DVector<f64>,
    pub lambda_h: DVector<f64>,
}

impl PhaseState {
    pub fn new(
        q: DVector<f64>,
        p: DVector<f64>,
        lambda: DVector<f64>,
        lambda_h: DVector<f64>,
    ) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::Invalid("empty configuration vector".into()));
        }
        if p.len() != q.len() {
            return Err(Error::Dimension {
                context: "PhaseState momenta",
                expected: q.len(),
                actual: p.len(),
            });
        }
        Ok(Self {
            q,
            p,
            lambda,
            lambda_h,
        })
    }

    /// State without multipliers (`k = l = 0`).
    pub fn unconstrained(q: DVector<f64>, p: DVector<f64>) -> Result<Self> {
        Self::new(q, p, DVector::zeros(0), DVector::zeros(0))
    }

    pub fn dims(&self) -> DarbouxDims {
        DarbouxDims {
            n: self.q.len(),
            k: self.lambda.len(),
            l: self.lambda_h.len(),
        }
    }

    /// Flatten to a single vector `(q, p, lambda, lambda_h)`.
    pub fn to_vector(&self) -> DVector<f64> {
        let dims = self.dims();
        let mut z = DVector::zeros(dims.state_dim());
        let n = dims.n();
        z.rows_mut(0, n).copy_from(&self.q);
        z.rows_mut(n, n).copy_from(&self.p);
        z.rows_mut(2 * n, dims.k()).copy_from(&self.lambda);
        z.rows_mut(2 * n + dims.k(), dims.l()).copy_from(&self.lambda_h);
        z
    }

    pub fn from_vector(dims: DarbouxDims, z: &DVector<f64>) -> Result<Self> {
        if z.len() != dims.state_dim() {
            return Err(Error::Dimension {
                context: "PhaseState::from_vector",
                expected: dims.state_dim(),
                actual: z.len(),
            });
        }
        let n = dims.n();
        Ok(Self {
            q: z.rows(0, n).into_owned(),
            p: z.rows(n, n).into_owned(),
            lambda: z.rows(2 * n, dims.k()).into_owned(),
            lambda_h: z.rows(2 * n + dims.k(), dims.l()).into_owned(),
        })
    }

    pub fn is_finite(&self) -> bool {
        self.q.iter().all(|v| v.is_finite())
            && self.p.iter().all(|v| v.is_finite())
            && self.lambda.iter().all(|v| v.is_finite())
            && self.lambda_h.iter().all(|v| v.is_finite())
    }
}

/// The constant antisymmetric structure matrix in Darboux block form:
/// canonical symplectic block on `(q, p)`, zero on the multiplier blocks.
///
/// Hot paths never materialize the matrix; [`StructureMatrix::apply`]
/// exploits the block structure. [`StructureMatrix::dense`] exists for
/// tests and diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct StructureMatrix {
    dims: DarbouxDims,
}

impl StructureMatrix {
    pub fn new(dims: DarbouxDims) -> Self {
        Self { dims }
    }

    pub fn dims(&self) -> DarbouxDims {
        self.dims
    }

    /// `J z = (-p, q, 0, 0)` without forming the matrix.
    pub fn apply(&self, z: &DVector<f64>) -> DVector<f64> {
        assert_eq!(z.len(), self.dims.state_dim(), "structure matrix dimension");
        let n = self.dims.n();
        let mut out = DVector::zeros(z.len());
        for i in 0..n {
            out[i] = -z[n + i];
            out[n + i] = z[i];
        }
        out
    }

    /// Dense materialization of `J`.
    pub fn dense(&self) -> DMatrix<f64> {
        let m = self.dims.state_dim();
        let n = self.dims.n();
        let mut j = DMatrix::zeros(m, m);
        for i in 0..n {
            j[(i, n + i)] = -1.0;
            j[(n + i, i)] = 1.0;
        }
        j
    }

    /// The canonical `2n x 2n` symplectic matrix `(0, -I; I, 0)`.
    pub fn canonical(n: usize) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            j[(i, n + i)] = -1.0;
            j[(n + i, i)] = 1.0;
        }
        j
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_require_configuration_coordinates() {
        assert!(DarbouxDims::new(0, 1, 0).is_err());
        let d = DarbouxDims::new(3, 1, 2).unwrap();
        assert_eq!(d.state_dim(), 2 * 3 + 1 + 2);
        assert_eq!(d.qp_dim(), 6);
    }

    #[test]
    fn state_checks_momentum_length() {
        let q = DVector::from_vec(vec![1.0, 2.0]);
        let p = DVector::from_vec(vec![1.0]);
        assert!(PhaseState::new(q, p, DVector::zeros(0), DVector::zeros(0)).is_err());
    }

    #[test]
    fn vector_roundtrip() {
        let s = PhaseState::new(
            DVector::from_vec(vec![1.0, 2.0]),
            DVector::from_vec(vec![3.0, 4.0]),
            DVector::from_vec(vec![5.0]),
            DVector::from_vec(vec![6.0]),
        )
        .unwrap();
        let z = s.to_vector();
        assert_eq!(z.as_slice(), &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let back = PhaseState::from_vector(s.dims(), &z).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn structure_matrix_is_exactly_antisymmetric() {
        let dims = DarbouxDims::new(3, 2, 1).unwrap();
        let j = StructureMatrix::new(dims).dense();
        let defect = (&j + j.transpose()).amax();
        assert_eq!(defect, 0.0);
    }

    #[test]
    fn structure_matrix_rank_is_twice_n() {
        let dims = DarbouxDims::new(3, 2, 1).unwrap();
        let j = StructureMatrix::new(dims).dense();
        let sv = j.svd(false, false).singular_values;
        let rank = sv.iter().filter(|s| **s > 1e-12).count();
        assert_eq!(rank, 2 * dims.n());
    }

    #[test]
    fn apply_matches_dense() {
        let dims = DarbouxDims::new(2, 1, 1).unwrap();
        let jm = StructureMatrix::new(dims);
        let z = DVector::from_vec(vec![1.0, -2.0, 0.5, 3.0, 7.0, -1.0]);
        let lhs = jm.apply(&z);
        let rhs = jm.dense() * &z;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn qp_block_is_canonical() {
        let dims = DarbouxDims::new(2, 3, 0).unwrap();
        let j = StructureMatrix::new(dims).dense();
        let block = j.view((0, 0), (4, 4)).into_owned();
        assert_eq!(block, StructureMatrix::canonical(2));
    }
}
