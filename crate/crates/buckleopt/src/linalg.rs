//! Supporting linear algebra: banded Cholesky for the sparse path, a
//! deterministic start-vector stream, and dense reference factorizations
//! (delegated to nalgebra) for small problems and Rayleigh–Ritz steps.

use nalgebra::{DMatrix, DVector};

use crate::operators::SymmetricSparseOperator;
use crate::{Error, Result};

/// Linear congruential stream (Knuth MMIX multiplier); reproducible start
/// vectors regardless of platform.
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0xda3e39cb94b95bdb))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        2.0 * unit - 1.0
    }

    /// Uniform in [0, 1).
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Cholesky factor of a symmetric positive definite band matrix, stored by
/// rows: slot `i*(bw+1) + (j - i + bw)` holds `L[i][j]` for `i-bw <= j <= i`.
/// Natural (row-major raster) ordering keeps the bandwidth of grid stencils
/// at roughly twice the row width, so no reordering pass is needed.
pub struct BandCholesky {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl BandCholesky {
    pub fn factor(op: &SymmetricSparseOperator) -> Result<BandCholesky> {
        let n = op.n();
        let bw = op.bandwidth();
        let stride = bw + 1;
        let mut data = vec![0.0; n * stride];
        // upper-stored (r <= c) entries map to the lower-band slot of row c
        for &(r, c, v) in op.entries() {
            let (r, c) = (r as usize, c as usize);
            data[c * stride + (r + bw - c)] = v;
        }
        for i in 0..n {
            let jstart = i.saturating_sub(bw);
            let (before, row_i) = data.split_at_mut(i * stride);
            let row_i = &mut row_i[..stride];
            for j in jstart..i {
                let row_j = &before[j * stride..j * stride + stride];
                let off_i = jstart + bw - i;
                let off_j = jstart + bw - j;
                let len = j - jstart;
                let dot: f64 = row_i[off_i..off_i + len]
                    .iter()
                    .zip(&row_j[off_j..off_j + len])
                    .map(|(a, b)| a * b)
                    .sum();
                let slot = j + bw - i;
                row_i[slot] = (row_i[slot] - dot) / row_j[bw];
            }
            let off_i = jstart + bw - i;
            let sq: f64 = row_i[off_i..bw].iter().map(|v| v * v).sum();
            let pivot = row_i[bw] - sq;
            if pivot <= 0.0 || !pivot.is_finite() {
                return Err(Error::SolverFailure {
                    message: format!("matrix not positive definite at pivot {i}"),
                    residuals: vec![],
                });
            }
            row_i[bw] = pivot.sqrt();
        }
        Ok(BandCholesky { n, bw, data })
    }

    /// Solves L Lᵀ x = rhs.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let mut cols = vec![rhs.to_vec()];
        self.solve_block(&mut cols);
        cols.pop().unwrap()
    }

    /// Solves L Lᵀ x = rhs for several right-hand sides in place, streaming
    /// the factor once per sweep instead of once per column (the factor is
    /// the memory-bandwidth hot spot on large grids).
    pub fn solve_block(&self, cols: &mut [Vec<f64>]) {
        let stride = self.bw + 1;
        // forward: L y = rhs
        for i in 0..self.n {
            let jstart = i.saturating_sub(self.bw);
            let row = &self.data[i * stride..(i + 1) * stride];
            let off = jstart + self.bw - i;
            let band = &row[off..self.bw];
            let inv_diag = 1.0 / row[self.bw];
            for x in cols.iter_mut() {
                debug_assert_eq!(x.len(), self.n);
                let dot: f64 = band
                    .iter()
                    .zip(&x[jstart..i])
                    .map(|(l, v)| l * v)
                    .sum();
                x[i] = (x[i] - dot) * inv_diag;
            }
        }
        // backward: Lᵀ x = y, saxpy form over the stored rows
        for i in (0..self.n).rev() {
            let jstart = i.saturating_sub(self.bw);
            let row = &self.data[i * stride..(i + 1) * stride];
            let off = jstart + self.bw - i;
            let band = &row[off..self.bw];
            let inv_diag = 1.0 / row[self.bw];
            for x in cols.iter_mut() {
                x[i] *= inv_diag;
                let xi = x[i];
                for (l, v) in band.iter().zip(&mut x[jstart..i]) {
                    *v -= l * xi;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Expands symmetric storage into a dense nalgebra matrix.
pub fn to_dense(op: &SymmetricSparseOperator) -> DMatrix<f64> {
    let n = op.n();
    let mut m = DMatrix::zeros(n, n);
    for &(r, c, v) in op.entries() {
        let (r, c) = (r as usize, c as usize);
        m[(r, c)] = v;
        if r != c {
            m[(c, r)] = v;
        }
    }
    m
}

/// All eigenpairs of the dense symmetric pencil `(A, B)` (or `(A, I)` when
/// `mass` is `None`), ascending, with mass-orthonormal eigenvectors.
/// Reduction: `B = L Lᵀ`, then the standard symmetric problem for
/// `L⁻¹ A L⁻ᵀ`, mapping eigenvectors back through `L⁻ᵀ`.
pub fn dense_pencil_eigs(
    a: &SymmetricSparseOperator,
    mass: Option<&SymmetricSparseOperator>,
    ascending_count: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.n();
    let a_dense = to_dense(a);
    let (reduced, back): (DMatrix<f64>, Option<DMatrix<f64>>) = match mass {
        None => (a_dense, None),
        Some(b) => {
            let b_dense = to_dense(b);
            let chol = nalgebra::linalg::Cholesky::new(b_dense).ok_or_else(|| {
                Error::SolverFailure {
                    message: "mass matrix is not positive definite".into(),
                    residuals: vec![],
                }
            })?;
            let l = chol.l();
            let linv_a = l
                .solve_lower_triangular(&a_dense)
                .ok_or_else(|| Error::SolverFailure {
                    message: "singular triangular solve in dense reduction".into(),
                    residuals: vec![],
                })?;
            let c = l
                .solve_lower_triangular(&linv_a.transpose())
                .ok_or_else(|| Error::SolverFailure {
                    message: "singular triangular solve in dense reduction".into(),
                    residuals: vec![],
                })?;
            let sym = 0.5 * (&c + c.transpose());
            (sym, Some(l.transpose()))
        }
    };
    let eig = nalgebra::linalg::SymmetricEigen::new(reduced);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| {
        eig.eigenvalues[p]
            .partial_cmp(&eig.eigenvalues[q])
            .unwrap()
    });
    let take = ascending_count.min(n);
    let mut values = Vec::with_capacity(take);
    let mut vectors = Vec::with_capacity(take);
    for &idx in order.iter().take(take) {
        values.push(eig.eigenvalues[idx]);
        let y = eig.eigenvectors.column(idx).into_owned();
        let x: DVector<f64> = match &back {
            None => y,
            Some(lt) => lt
                .solve_upper_triangular(&y)
                .ok_or_else(|| Error::SolverFailure {
                    message: "singular triangular solve in dense back-substitution".into(),
                    residuals: vec![],
                })?,
        };
        vectors.push(x.iter().copied().collect());
    }
    Ok((values, vectors))
}
