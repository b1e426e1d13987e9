//! Dense row-major matrices generic over the scalar backend.

use super::scalar::Scalar;
use crate::{Error, Result, MAX_DENSE_DIM};
use num_complex::Complex64 as C64;

/// Dense matrix with entries in a [`Scalar`] backend.
#[derive(Clone, PartialEq)]
pub struct CMat<T: Scalar> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows > MAX_DENSE_DIM || cols > MAX_DENSE_DIM {
            return Err(Error::Capacity { dim: rows.max(cols) });
        }
        Ok(CMat { rows, cols, data: vec![T::zero(); rows * cols] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for k in 0..n {
            m[(k, k)] = T::one();
        }
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c)?;
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &T) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul: inner dimension mismatch");
        let mut out = CMat {
            rows: self.rows,
            cols: rhs.cols,
            data: vec![T::zero(); self.rows * rhs.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Kronecker product; result dimensions multiply.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Self::zeros(r, c)?;
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = &self.data[i1 * self.cols + j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = &rhs.data[i2 * rhs.cols + j2];
                        if b.is_zero() {
                            continue;
                        }
                        out[(i1 * rhs.rows + i2, j1 * rhs.cols + j2)] = a.mul(b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = CMat {
            rows: self.cols,
            cols: self.rows,
            data: vec![T::zero(); self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = self.transpose();
        for v in out.data.iter_mut() {
            *v = v.conj();
        }
        out
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for k in 0..self.rows.min(self.cols) {
            t = t.add(&self.data[k * self.cols + k]);
        }
        t
    }

    /// Outer product `|a><b|` over the plain (bilinear) bra, no conjugation.
    pub fn outer(a: &[T], b: &[T]) -> Result<Self> {
        let mut m = Self::zeros(a.len(), b.len())?;
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                m[(i, j)] = x.mul(y);
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = T::zero();
                for j in 0..self.cols {
                    let a = &self.data[i * self.cols + j];
                    if !a.is_zero() && !v[j].is_zero() {
                        s = s.add(&a.mul(&v[j]));
                    }
                }
                s
            })
            .collect()
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    /// Embed into the float backend.
    pub fn to_c64(&self) -> CMat<C64> {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_c64()).collect(),
        }
    }

    /// Largest entry magnitude after embedding.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_c64().norm()).fold(0.0, f64::max)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [T] {
        &mut self.data
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for CMat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Scaled max-abs distance between two float matrices.
pub fn max_abs_diff(a: &CMat<C64>, b: &CMat<C64>) -> f64 {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `||L - R||_max / max(1, ||L||_max)` — the residual norm used by checkers.
pub fn scaled_residual(l: &CMat<C64>, r: &CMat<C64>) -> f64 {
    max_abs_diff(l, r) / l.max_abs().max(1.0)
}

/// Exact Gaussian elimination solve for square systems over any scalar field.
/// Returns `None` when the matrix is singular.
pub fn solve_exact<T: Scalar>(a: &CMat<T>, b: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    assert!(a.is_square());
    let n = a.rows;
    let k = b.len();
    // augmented matrix
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row: Vec<T> = (0..n).map(|j| a[(i, j)].clone()).collect();
            for rhs in b {
                row.push(rhs[i].clone());
            }
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = T::one().div(&m[col][col]);
        for j in col..n + k {
            m[col][j] = m[col][j].mul(&inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..n + k {
                    let t = m[col][j].mul(&f);
                    m[r][j] = m[r][j].sub(&t);
                }
            }
        }
    }
    Some((0..k).map(|s| (0..n).map(|i| m[i][n + s].clone()).collect()).collect())
}

/// Nullspace basis of an exact matrix via reduced row echelon form.
pub fn nullspace_exact<T: Scalar>(a: &CMat<T>) -> Vec<Vec<T>> {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<T>> = (0..rows)
        .map(|i| (0..cols).map(|j| a[(i, j)].clone()).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        if let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            let inv = T::one().div(&m[r][c]);
            for j in 0..cols {
                m[r][j] = m[r][j].mul(&inv);
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..cols {
                        let t = m[r][j].mul(&f);
                        m[i][j] = m[i][j].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); cols];
            v[fc] = T::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = m[pr][fc].neg();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::cyc::ExactCyc8;
    use proptest::prelude::*;

    fn cm(rows: usize, cols: usize, vals: &[(f64, f64)]) -> CMat<C64> {
        CMat::from_fn(rows, cols, |i, j| {
            let (re, im) = vals[i * cols + j];
            C64::new(re, im)
        })
        .unwrap()
    }

    #[test]
    fn kron_identity() {
        let i2: CMat<C64> = CMat::identity(2).unwrap();
        let i4 = i2.kron(&i2).unwrap();
        assert_eq!(i4, CMat::identity(4).unwrap());
    }

    #[test]
    fn kron_sigma_plus_minus() {
        // kron(s+, s-) has a single 1 at row 2, col 3 (1-indexed)
        let sp = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let sm = sp.transpose();
        let k = sp.kron(&sm).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 2) { 1.0 } else { 0.0 };
                assert_eq!(k[(i, j)], C64::new(expect, 0.0));
            }
        }
    }

    proptest! {
        #[test]
        fn kron_mixed_product_law(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut r = |_: usize| CMat::from_fn(2, 2, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap();
            let (a, b, c, d) = (r(0), r(1), r(2), r(3));
            let lhs = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap());
            let rhs = a.matmul(&c).kron(&b.matmul(&d)).unwrap();
            prop_assert!(max_abs_diff(&lhs, &rhs) <= 1e-12);
        }

        #[test]
        fn dagger_antihomomorphism(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut r = |_: usize| CMat::from_fn(3, 3, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap();
            let (a, b) = (r(0), r(1));
            let lhs = a.matmul(&b).dagger();
            let rhs = b.dagger().matmul(&a.dagger());
            prop_assert!(max_abs_diff(&lhs, &rhs) <= 1e-12);
        }

        #[test]
        fn kron_associativity(seed in 0u64..200) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut r = |_: usize| CMat::from_fn(2, 2, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).unwrap();
            let (a, b, c) = (r(0), r(1), r(2));
            let lhs = a.kron(&b).unwrap().kron(&c).unwrap();
            let rhs = a.kron(&b.kron(&c).unwrap()).unwrap();
            prop_assert!(max_abs_diff(&lhs, &rhs) <= 1e-12);
        }
    }

    #[test]
    fn exact_solve_roundtrip() {
        let a: CMat<ExactCyc8> = CMat::from_fn(3, 3, |i, j| {
            if i == j {
                ExactCyc8::from_int(2)
            } else if (i + 1) % 3 == j {
                ExactCyc8::i()
            } else {
                ExactCyc8::zero()
            }
        })
        .unwrap();
        let rhs = vec![vec![ExactCyc8::one(), ExactCyc8::zeta(), ExactCyc8::from_int(-3)]];
        let sol = solve_exact(&a, &rhs).unwrap();
        let back = a.apply(&sol[0]);
        assert_eq!(back, rhs[0]);
    }

    #[test]
    fn capacity_rejected() {
        assert!(matches!(
            CMat::<C64>::zeros(5000, 5000),
            Err(crate::Error::Capacity { .. })
        ));
    }
}
