//! Small dense complex matrices: partial-pivot LU, determinants, Hankel builders.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{max_norm, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T: Real> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, entries: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Row-major construction. Panics when `entries.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        DenseMatrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        DenseMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Largest entry modulus.
    pub fn scale(&self) -> T {
        max_norm(&self.entries)
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Complex::zero(), |acc, j| acc + self[(i, j)] * x[j]))
            .collect()
    }

    pub fn matmul(&self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.cols, rhs.rows);
        DenseMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Complex::zero(), |acc, k| acc + self[(i, k)] * rhs[(k, j)])
        })
    }
}

impl<T: Real> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.entries[i * self.cols + j]
    }
}

impl<T: Real> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[i * self.cols + j]
    }
}

/// In-place LU factors with the row permutation folded into `perm`.
struct Lu<T: Real> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
    swaps: usize,
    /// Index of the first pivot below threshold, if any.
    singular_at: Option<usize>,
}

fn factor<T: Real>(a: &DenseMatrix<T>) -> Lu<T> {
    let n = a.rows;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut swaps = 0;
    let mut singular_at = None;
    let threshold = T::PIVOT_REL * a.scale();
    for k in 0..n {
        let (p, pmag) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, T::neg_infinity()), |best, cur| if cur.1 > best.1 { cur } else { best });
        if p != k {
            for j in 0..n {
                lu.entries.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            swaps += 1;
        }
        if pmag <= threshold || pmag.is_zero() {
            singular_at.get_or_insert(k);
            if pmag.is_zero() {
                continue;
            }
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let delta = factor * lu[(k, j)];
                lu[(i, j)] = lu[(i, j)] - delta;
            }
        }
    }
    Lu { lu, perm, swaps, singular_at }
}

/// Solves `A x = rhs` by LU with partial pivoting.
pub fn solve_linear<T: Real>(a: &DenseMatrix<T>, rhs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    assert!(a.is_square(), "solve_linear needs a square matrix");
    assert_eq!(a.rows, rhs.len(), "right-hand side length must match matrix size");
    let n = a.rows;
    let f = factor(a);
    if let Some(k) = f.singular_at {
        return Err(Error::SingularMatrix(k));
    }
    let mut y: Vec<Complex<T>> = f.perm.iter().map(|&p| rhs[p]).collect();
    for i in 0..n {
        for j in 0..i {
            let t = f.lu[(i, j)] * y[j];
            y[i] = y[i] - t;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let t = f.lu[(i, j)] * y[j];
            y[i] = y[i] - t;
        }
        y[i] = y[i] / f.lu[(i, i)];
    }
    Ok(y)
}

/// Product of LU pivots with the permutation sign; exactly zero when a
/// column has no nonzero pivot candidate.
pub fn determinant<T: Real>(a: &DenseMatrix<T>) -> Complex<T> {
    assert!(a.is_square(), "determinant needs a square matrix");
    let f = factor(a);
    let mut det = (0..a.rows).fold(Complex::one(), |acc, i| acc * f.lu[(i, i)]);
    if f.swaps % 2 == 1 {
        det = -det;
    }
    det
}

/// `(n+1) × (n+1)` Hankel matrix with 1-based entry `(i, j) = M_{i+j-1}`;
/// `m[0]` holds `M_1`.
pub fn hankel<T: Real>(m: &[Complex<T>], n: usize) -> Result<DenseMatrix<T>> {
    let needed = 2 * n + 1;
    if m.len() < needed {
        return Err(Error::InsufficientCoefficients { needed, got: m.len() });
    }
    Ok(DenseMatrix::from_fn(n + 1, n + 1, |i, j| m[i + j]))
}
