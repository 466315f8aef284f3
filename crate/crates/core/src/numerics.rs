//! Dense complex linear algebra used throughout the crate.
//!
//! Matrices are `nalgebra::DMatrix<Complex<f64>>`. Factorizations (QR, SVD,
//! Hermitian eigendecomposition) come from nalgebra; this module adds the
//! clustering, nullspace and orthonormalization conventions the rest of the
//! crate relies on.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[allow(non_camel_case_types)]
pub type c64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<c64>;

pub const ZERO: c64 = Complex { re: 0.0, im: 0.0 };
pub const ONE: c64 = Complex { re: 1.0, im: 0.0 };

/// Library-wide default tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Unitarity and intertwining residuals.
    pub intertwine: f64,
    /// Singular-value cutoff for nullspaces and ranks, relative to the largest.
    pub nullspace: f64,
    /// Eigenvalue gap below which two eigenvalues belong to the same cluster.
    pub cluster: f64,
    /// Character comparisons and integrality of multiplicities.
    pub character: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { intertwine: 1e-8, nullspace: 1e-8, cluster: 1e-6, character: 1e-6 }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Child seed for sub-computation `index` of a computation seeded with `parent`.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    splitmix(splitmix(parent) ^ index.wrapping_mul(0x2545_f491_4f6c_dd1d))
}

pub fn random_complex<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    DMatrix::from_fn(rows, cols, |_, _| {
        c64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_complex(rng, n, n);
    (&a + a.adjoint()) * c64::new(0.5, 0.0)
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_complex(rng, n, n);
    let qr = a.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// `‖m†m − I‖_F`.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    (m.adjoint() * m - ComplexMatrix::identity(m.nrows(), m.ncols())).norm()
}

pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(m) <= tol
}

/// `‖Q†Q − I‖_F` for a column block.
pub fn orthonormality_residual(q: &ComplexMatrix) -> f64 {
    (q.adjoint() * q - ComplexMatrix::identity(q.ncols(), q.ncols())).norm()
}

pub fn trace(m: &ComplexMatrix) -> c64 {
    m.diagonal().iter().sum()
}

/// Column-major vectorization.
pub fn vectorize(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(m.len(), 1, m.as_slice())
}

pub fn unvectorize(v: &[c64], rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_column_slice(rows, cols, v)
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues grouped into
/// clusters of (numerically) equal values.
#[derive(Debug, Clone)]
pub struct EigenClustering {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Start index of each cluster in `eigenvalues`, plus a final sentinel
    /// equal to the dimension.
    pub cluster_boundaries: Vec<usize>,
    /// Orthonormal eigenvector block per cluster.
    pub eigenvector_blocks: Vec<ComplexMatrix>,
    /// Smallest gap between adjacent clusters (`inf` for a single cluster).
    pub min_separating_gap: f64,
}

impl EigenClustering {
    pub fn num_clusters(&self) -> usize {
        self.eigenvector_blocks.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.cluster_boundaries.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn cluster_values(&self) -> Vec<f64> {
        self.cluster_boundaries[..self.cluster_boundaries.len() - 1]
            .iter()
            .map(|&i| self.eigenvalues[i])
            .collect()
    }

    pub fn eigenvectors(&self) -> ComplexMatrix {
        hcat(&self.eigenvector_blocks, self.eigenvalues.len())
    }
}

pub fn hermitian_eigen(m: &ComplexMatrix, cluster_tol: f64) -> Result<EigenClustering> {
    if !m.is_square() {
        return Err(Error::Dimension("hermitian_eigen needs a square matrix".into()));
    }
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    let norm = m.norm();
    let deviation = (m - m.adjoint()).norm();
    if deviation > 1e-10 * (1.0 + norm) {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(EigenClustering {
            eigenvalues: vec![],
            cluster_boundaries: vec![0],
            eigenvector_blocks: vec![],
            min_separating_gap: f64::INFINITY,
        });
    }
    let sym = (m + m.adjoint()) * c64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();

    let mut boundaries = vec![0];
    let mut min_gap = f64::INFINITY;
    for i in 1..n {
        let gap = eigenvalues[i] - eigenvalues[i - 1];
        if gap > cluster_tol {
            boundaries.push(i);
            min_gap = min_gap.min(gap);
        }
    }
    boundaries.push(n);
    let blocks = boundaries
        .windows(2)
        .map(|w| {
            let cols: Vec<_> = order[w[0]..w[1]].iter().map(|&i| eig.eigenvectors.column(i)).collect();
            ComplexMatrix::from_columns(&cols)
        })
        .collect();
    Ok(EigenClustering {
        eigenvalues,
        cluster_boundaries: boundaries,
        eigenvector_blocks: blocks,
        min_separating_gap: min_gap,
    })
}

/// Horizontal concatenation; `rows` is used when `blocks` is empty.
pub fn hcat(blocks: &[ComplexMatrix], rows: usize) -> ComplexMatrix {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let rows = blocks.first().map_or(rows, |b| b.nrows());
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.view_mut((0, at), (rows, b.ncols())).copy_from(b);
        at += b.ncols();
    }
    out
}

pub fn vcat(blocks: &[ComplexMatrix], cols: usize) -> ComplexMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.view_mut((at, 0), (b.nrows(), cols)).copy_from(b);
        at += b.nrows();
    }
    out
}

/// Singular values (descending) and right singular vectors of `a`, reduced
/// through a QR step when `a` is tall. The returned `V` is always square.
fn right_singular(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.ncols();
    let reduced = if a.nrows() > n {
        a.clone().qr().r()
    } else if a.nrows() < n {
        let mut padded = ComplexMatrix::zeros(n, n);
        padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let svd = reduced.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v = ComplexMatrix::from_fn(n, n, |r, c| v_t[(order[c], r)].conj());
    (values, v)
}

/// Orthonormal basis of `{x : M x = 0 for all M in ms}`.
///
/// The matrices are stacked; a direction is null when its singular value is
/// at most `tol` times the largest singular value of the stack.
pub fn common_nullspace(ms: &[ComplexMatrix], ncols: usize, tol: f64) -> ComplexMatrix {
    common_nullspace_with_floor(ms, ncols, tol, 0.0)
}

/// As [`common_nullspace`], but the cutoff is `tol * max(σ_max, scale)`.
///
/// Intertwining systems `A_i X − X B_i` can vanish identically up to
/// rounding; `scale` (the size of the `A_i`, `B_i`) keeps such systems from
/// being read as full rank.
pub fn common_nullspace_with_floor(ms: &[ComplexMatrix], ncols: usize, tol: f64, scale: f64) -> ComplexMatrix {
    if ms.is_empty() || ncols == 0 {
        return ComplexMatrix::identity(ncols, ncols);
    }
    assert!(ms.iter().all(|m| m.ncols() == ncols), "column count mismatch");
    let stacked = vcat(ms, ncols);
    let (values, v) = right_singular(&stacked);
    let cutoff = tol * values.first().copied().unwrap_or(0.0).max(scale);
    let first_null = values.iter().position(|&s| s <= cutoff).unwrap_or(ncols);
    v.columns(first_null, ncols - first_null).into_owned()
}

/// Numerical rank of `a` with a cutoff relative to its largest singular value.
pub fn rank(a: &ComplexMatrix, tol: f64) -> usize {
    rank_with_floor(a, tol, 0.0)
}

/// As [`rank`], with cutoff `tol * max(σ_max, scale)`.
pub fn rank_with_floor(a: &ComplexMatrix, tol: f64, scale: f64) -> usize {
    if a.is_empty() {
        return 0;
    }
    let (values, _) = right_singular(a);
    let top = values.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    let cutoff = tol * top.max(scale);
    values.iter().filter(|&&s| s > cutoff).count()
}

/// Gram-Schmidt (twice) on the columns of `cols`, dropping columns whose
/// remaining norm is at most `tol` times the largest input column norm.
pub fn orthonormalize(cols: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    let scale = cols.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut basis: Vec<nalgebra::DVector<c64>> = Vec::new();
    if scale == 0.0 {
        return ComplexMatrix::zeros(cols.nrows(), 0);
    }
    for col in cols.column_iter() {
        let mut v = col.into_owned();
        for _ in 0..2 {
            for q in &basis {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
        }
        let norm = v.norm();
        if norm > tol * scale {
            basis.push(v / c64::new(norm, 0.0));
        }
    }
    if basis.is_empty() {
        return ComplexMatrix::zeros(cols.nrows(), 0);
    }
    ComplexMatrix::from_columns(&basis)
}

/// Sine of the largest principal angle between the column spans of two
/// orthonormal blocks (1 when the dimensions differ).
pub fn subspace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    if a.ncols() != b.ncols() {
        return 1.0;
    }
    if a.ncols() == 0 {
        return 0.0;
    }
    let residual = b - a * (a.adjoint() * b);
    residual.svd(false, false).singular_values.max()
}
