//! Power iteration for the Perron root and a deflated variant for the
//! second-largest eigenvalue modulus.

use num_traits::One;

use super::matrix::SparseMatrix;
use crate::counting::BigCount;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Relative change below which the second-modulus estimate is accepted.
pub const SECOND_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct Dominant {
    pub lambda: f64,
    /// Right eigenvector, unit L1 norm.
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// `|Ax - lambda x|_1 / (lambda |x|_1)` at the returned vector.
    pub residual: f64,
}

fn l1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

fn check_square(m: &SparseMatrix) -> Result<()> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::invalid(format!("need a nonempty square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if m.nnz() == 0 {
        return Err(Error::invalid("matrix has no nonzero entries"));
    }
    Ok(())
}

fn power<F>(dim: usize, mut apply: F, tol: f64, max_iter: usize) -> Result<Dominant>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let mut x = vec![1.0 / dim as f64; dim];
    let mut y = vec![0.0; dim];
    let mut prev = f64::NAN;
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        apply(&x, &mut y);
        lambda = l1(&y);
        if lambda == 0.0 {
            return Err(Error::invalid("iteration collapsed to the zero vector (nilpotent matrix?)"));
        }
        residual = y.iter().zip(&x).map(|(a, b)| (a - lambda * b).abs()).sum::<f64>() / lambda;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / lambda;
        }
        if (lambda - prev).abs() <= tol * lambda && residual <= tol {
            return Ok(Dominant { lambda, vector: x, iterations: it, residual });
        }
        prev = lambda;
    }
    Err(Error::NoConvergence { iterations: max_iter, estimate: lambda, residual })
}

/// Perron root of a nonnegative matrix by power iteration from the all-ones
/// vector. Stops once successive estimates agree to `tol` (relative) and
/// the residual is below `tol`.
pub fn dominant_eigenvalue(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<Dominant> {
    check_square(m)?;
    power(m.rows(), |x, y| m.mul_vec(x, y), tol, max_iter)
}

fn left_vector(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    Ok(power(m.rows(), |x, y| m.mul_vec_transposed(x, y), tol, max_iter)?.vector)
}

/// Block size used by [`second_modulus`].
pub const SECOND_BLOCK: usize = 8;

/// Modulus of the second-largest eigenvalue.
///
/// Runs subspace iteration on the matrix with the dominant right/left pair
/// projected out and reads the modulus from the Ritz values of the
/// projected block. Several eigenvalues of equal modulus (complex pairs,
/// rotations) are resolved as long as fewer than [`SECOND_BLOCK`] of them
/// share the second circle.
pub fn second_modulus(m: &SparseMatrix, dominant: &Dominant, max_iter: usize) -> Result<f64> {
    check_square(m)?;
    let n = m.rows();
    if n == 1 {
        return Ok(0.0);
    }
    let v = &dominant.vector;
    let mut w = left_vector(m, 1e-13, max_iter.max(1000))?;
    let wv = dot(&w, v);
    w.iter_mut().for_each(|a| *a /= wv);
    let project = |x: &mut [f64]| {
        let c = dot(&w, x);
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi -= c * vi;
        }
    };

    // deterministic starts with no special structure
    let p = SECOND_BLOCK.min(n - 1);
    let mut q: Vec<Vec<f64>> = (0..p)
        .map(|j| {
            let a = 0.618_033_988_749_895 * (j as f64 + 1.0) + 0.414_213_562_373_095;
            let mut x: Vec<f64> = (0..n).map(|i| ((i as f64 + 1.0) * a).fract() - 0.5).collect();
            project(&mut x);
            x
        })
        .collect();
    orthonormalize(&mut q);
    if q.is_empty() {
        return Ok(0.0);
    }

    let mut last = f64::NAN;
    let mut est = 0.0;
    let mut stable = 0;
    for _ in 0..max_iter {
        let z: Vec<Vec<f64>> = q
            .iter()
            .map(|x| {
                let mut y = vec![0.0; n];
                m.mul_vec(x, &mut y);
                project(&mut y);
                y
            })
            .collect();
        let k = q.len();
        let h = nalgebra::DMatrix::from_fn(k, k, |i, j| dot(&q[i], &z[j]));
        est = max_eigen_modulus(h)?;
        if (est - last).abs() <= SECOND_TOL * est.max(1e-300) {
            stable += 1;
            if stable >= 3 {
                return Ok(est);
            }
        } else {
            stable = 0;
        }
        last = est;
        q = z;
        orthonormalize(&mut q);
        if q.is_empty() {
            return Ok(0.0);
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, estimate: est, residual: (est - last).abs() })
}

fn max_eigen_modulus(h: nalgebra::DMatrix<f64>) -> Result<f64> {
    let schur = nalgebra::linalg::Schur::try_new(h, f64::EPSILON, 10_000)
        .ok_or(Error::NoConvergence { iterations: 10_000, estimate: f64::NAN, residual: f64::NAN })?;
    Ok(schur.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Columns that
/// become negligible are dropped.
fn orthonormalize(q: &mut Vec<Vec<f64>>) {
    let scale = q.iter().map(|x| dot(x, x).sqrt()).fold(0.0, f64::max);
    if scale < 1e-150 {
        q.clear();
        return;
    }
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(q.len());
    for mut x in q.drain(..) {
        for _ in 0..2 {
            for b in &out {
                let c = dot(b, &x);
                x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= c * bi);
            }
        }
        let nx = dot(&x, &x).sqrt();
        if nx > 1e-12 * scale {
            x.iter_mut().for_each(|xi| *xi /= nx);
            out.push(x);
        }
    }
    *q = out;
}

/// `(A^k e_full)[full]`, exact.
pub fn path_count(m: &SparseMatrix, full: usize, k: usize) -> BigCount {
    let mut x = vec![BigCount::default(); m.cols()];
    x[full] = BigCount::one();
    for _ in 0..k {
        x = m.mul_big(&x);
    }
    x.swap_remove(full)
}
