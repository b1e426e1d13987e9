//! Dense complex eigensolvers with post-hoc residual certification.
//!
//! The decomposition itself is delegated to `faer`; every result carries the
//! certificate `||A V - V diag(w)||_max / max(1, ||A||_max)` so callers can
//! reject a bad factorization instead of trusting the backend blindly.

use super::mat::CMat;
use crate::{Error, Result};
use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64 as C64;

/// Eigenvalues, right eigenvectors (columns) and the residual certificate.
pub struct EigDecomposition {
    pub values: Vec<C64>,
    pub vectors: CMat<C64>,
    /// `||A V - V diag(w)||_max / max(1, ||A||_max)`.
    pub residual: f64,
}

fn to_faer(a: &CMat<C64>) -> Mat<C64> {
    Mat::from_fn(a.rows, a.cols, |i, j| a[(i, j)])
}

fn certificate(a: &CMat<C64>, values: &[C64], vectors: &CMat<C64>) -> f64 {
    let av = a.matmul(vectors);
    let mut worst = 0.0f64;
    for j in 0..vectors.cols {
        for i in 0..vectors.rows {
            let r = av[(i, j)] - vectors[(i, j)] * values[j];
            worst = worst.max(r.norm());
        }
    }
    worst / a.max_abs().max(1.0)
}

/// Eigenvalues and right eigenvectors of a general complex matrix.
pub fn eig_dense(a: &CMat<C64>) -> Result<EigDecomposition> {
    a.require_square()?;
    let n = a.rows;
    if n == 0 {
        return Ok(EigDecomposition {
            values: vec![],
            vectors: CMat::zeros(0, 0)?,
            residual: 0.0,
        });
    }
    let m = to_faer(a);
    let evd = m.eigen().map_err(|_| Error::Shape {
        expected: "diagonalizable input".into(),
        got: "eigendecomposition failed to converge".into(),
    })?;
    let s = evd.S();
    let u = evd.U();
    let values: Vec<C64> = (0..n).map(|k| s[k]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| u[(i, j)])?;
    let residual = certificate(a, &values, &vectors);
    Ok(EigDecomposition { values, vectors, residual })
}

/// Eigendecomposition of a Hermitian matrix (real eigenvalues, ascending).
pub fn eigh(a: &CMat<C64>) -> Result<(Vec<f64>, CMat<C64>)> {
    a.require_square()?;
    let n = a.rows;
    let m = to_faer(a);
    let evd = m
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::Shape { expected: "hermitian input".into(), got: "eigh failed".into() })?;
    let s = evd.S();
    let u = evd.U();
    let mut idx: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|k| s[k].re).collect();
    idx.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
    let values: Vec<f64> = idx.iter().map(|&k| vals[k]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| u[(i, idx[j])])?;
    Ok((values, vectors))
}

/// Solve `A X = B` by partial-pivoting LU (float backend).
pub fn solve_lu(a: &CMat<C64>, b: &CMat<C64>) -> Result<CMat<C64>> {
    a.require_square()?;
    if a.rows != b.rows {
        return Err(Error::Shape {
            expected: format!("rhs with {} rows", a.rows),
            got: format!("{} rows", b.rows),
        });
    }
    let lu = to_faer(a).partial_piv_lu();
    let x = lu.solve(to_faer(b));
    CMat::from_fn(b.rows, b.cols, |i, j| x[(i, j)])
}

/// Orthonormal basis of the column span (columns with singular value above
/// `tol` times the largest), via SVD.
pub fn orthonormal_column_span(a: &CMat<C64>, tol: f64) -> Result<CMat<C64>> {
    let m = to_faer(a);
    let svd = m.thin_svd().map_err(|_| Error::Shape {
        expected: "svd-factorizable".into(),
        got: "svd failed".into(),
    })?;
    let s = svd.S();
    let u = svd.U();
    let smax = (0..a.rows.min(a.cols)).map(|k| s[k].re).fold(0.0f64, f64::max);
    let rank = (0..a.rows.min(a.cols)).take_while(|&k| s[k].re > tol * smax).count();
    CMat::from_fn(a.rows, rank, |i, j| u[(i, j)])
}

/// Roots of a monic polynomial via Durand-Kerner iteration.
///
/// Independent of the QR path; used as the characteristic-polynomial oracle
/// in tests. `coeffs` are `[c_0, ..., c_{n-1}]` of
/// `x^n + c_{n-1} x^{n-1} + ... + c_0`.
pub fn poly_roots_durand_kerner(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len();
    if n == 0 {
        return vec![];
    }
    let eval = |x: C64| -> C64 {
        let mut p = C64::new(1.0, 0.0);
        for k in (0..n).rev() {
            p = p * x + coeffs[k];
        }
        p
    };
    // standard starting points on a spiral
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion.
/// Returns `[c_0, ..., c_{n-1}]` with `p(x) = x^n + c_{n-1} x^{n-1} + ... + c_0`.
pub fn char_poly(a: &CMat<C64>) -> Vec<C64> {
    let n = a.rows;
    let mut m = CMat::<C64>::identity(n).unwrap();
    let mut coeffs = vec![C64::new(0.0, 0.0); n];
    let mut am = a.matmul(&m);
    for k in 1..=n {
        let c = -am.trace() / C64::new(k as f64, 0.0);
        coeffs[n - k] = c;
        if k < n {
            m = am.clone();
            for d in 0..n {
                m[(d, d)] += c;
            }
            am = a.matmul(&m);
        }
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(vals: &[f64]) -> CMat<C64> {
        CMat::from_fn(vals.len(), vals.len(), |i, j| {
            if i == j {
                C64::new(vals[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .unwrap()
    }

    #[test]
    fn eig_diagonal() {
        let a = diag(&[1.0, 2.0, 3.0]);
        let d = eig_dense(&a).unwrap();
        let mut vals: Vec<f64> = d.values.iter().map(|v| v.re).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 2.0).abs() < 1e-12);
        assert!((vals[2] - 3.0).abs() < 1e-12);
        assert!(d.residual <= 1e-9);
    }

    #[test]
    fn eig_of_two_site_nilpotent_hamiltonian() {
        // H = [[0,0,0,0],[0,i,1,0],[0,1,-i,0],[0,0,0,0]] has eigenvalues {0,0,0,0}
        let mut h = CMat::<C64>::zeros(4, 4).unwrap();
        h[(1, 1)] = C64::new(0.0, 1.0);
        h[(1, 2)] = C64::new(1.0, 0.0);
        h[(2, 1)] = C64::new(1.0, 0.0);
        h[(2, 2)] = C64::new(0.0, -1.0);
        let d = eig_dense(&h).unwrap();
        for v in &d.values {
            assert!(v.norm() < 1e-7, "eigenvalue {v} should vanish");
        }
    }

    #[test]
    fn eig_matches_char_poly_roots_hermitian8() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let n = 8;
        let mut a = CMat::<C64>::zeros(n, n).unwrap();
        for i in 0..n {
            for j in i..n {
                let v = C64::new(rng.gen_range(-1.0..1.0), if i == j { 0.0 } else { rng.gen_range(-1.0..1.0) });
                a[(i, j)] = v;
                a[(j, i)] = v.conj();
            }
        }
        let d = eig_dense(&a).unwrap();
        assert!(d.residual <= 1e-9, "residual {}", d.residual);
        let coeffs = char_poly(&a);
        let mut roots = poly_roots_durand_kerner(&coeffs);
        let mut vals = d.values.clone();
        roots.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        vals.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
        for (r, v) in roots.iter().zip(&vals) {
            assert!((r - v).norm() <= 1e-8, "root {r} vs eig {v}");
        }
    }
}
