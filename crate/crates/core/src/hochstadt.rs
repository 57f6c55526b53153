//! Symmetric Jacobi matrices and reconstruction from the spectrum plus the
//! first half of the matrix entries.
//!
//! `A_{n-1} u_{n-1} + B_n u_n + A_n u_{n+1} = λ u_n` maps to the normalised
//! recurrence by `a_n = A_n²`, `b_n = B_n`. Knowing `A_1..A_{m-1}` and
//! `B_1..B_{m-1}` (with `l = 2m - 1`) fixes `P_0..P_m`; the remaining entries
//! solve a size-`m` problem with boundary condition
//! `P_{m-1}(λ) y_m - P_m(λ) y_{m-1} = 0`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forward::{solution_family, BoundaryConfig, BoundaryPolys, FamilyKind, StandardCoeffs};
use crate::reduction::{solve_poly_bc_detailed, PolyBcSolution};
use crate::roots::Spectrum;
use crate::scalar::Real;

/// Symmetric tridiagonal coefficients `A_1..A_{l-1}`, `B_1..B_l`,
/// with the convention `A_0 = A_l = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricJacobi<T: Real> {
    a: Vec<Complex<T>>,
    b: Vec<Complex<T>>,
}

impl<T: Real> SymmetricJacobi<T> {
    pub fn new(a: Vec<Complex<T>>, b: Vec<Complex<T>>) -> Result<Self> {
        if b.is_empty() || a.len() + 1 != b.len() {
            return Err(Error::InvalidInstance(format!(
                "symmetric Jacobi data needs l - 1 off-diagonal and l diagonal entries, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(n) = a.iter().position(|z| z.is_zero()) {
            return Err(Error::InvalidInstance(format!("A_{} must be nonzero", n + 1)));
        }
        Ok(SymmetricJacobi { a, b })
    }

    pub fn l(&self) -> usize {
        self.b.len()
    }

    /// `A_1..A_{l-1}`.
    pub fn off_diagonal(&self) -> &[Complex<T>] {
        &self.a
    }

    /// `B_1..B_l`.
    pub fn diagonal(&self) -> &[Complex<T>] {
        &self.b
    }

    pub fn convert<U: Real>(&self) -> SymmetricJacobi<U> {
        SymmetricJacobi { a: crate::scalar::convert(&self.a), b: crate::scalar::convert(&self.b) }
    }

    pub fn max_abs_diff(&self, other: &SymmetricJacobi<T>) -> T {
        self.a
            .iter()
            .zip(&other.a)
            .chain(self.b.iter().zip(&other.b))
            .map(|(x, y)| (x - y).norm())
            .fold(T::zero(), T::max)
    }
}

/// `a_n = A_n²` (so `a_l = 1`), `b_n = B_n`.
pub fn symmetric_to_standard<T: Real>(j: &SymmetricJacobi<T>) -> StandardCoeffs<T> {
    let a = j.a.iter().map(|x| x * x).collect();
    StandardCoeffs::new(a, j.b.clone()).expect("nonzero A gives nonzero a")
}

/// `A_n = √a_n` on the principal branch, `B_n = b_n`. The sign of each `A_n` is
/// not determined by `a_n`; the principal branch picks `Re A_n ≥ 0`.
pub fn standard_to_symmetric<T: Real>(s: &StandardCoeffs<T>) -> SymmetricJacobi<T> {
    let l = s.l();
    let a = s.a()[..l - 1].iter().map(|x| x.sqrt()).collect();
    SymmetricJacobi::new(a, s.b().to_vec()).expect("nonzero a gives nonzero A")
}

/// Completes a Jacobi matrix of odd size `l = 2m - 1` from `A_1..A_{m-1}`,
/// `B_1..B_{m-1}` and its eigenvalues `μ`.
pub fn solve_hochstadt_mixed<T: Real>(
    a_head: &[Complex<T>],
    b_head: &[Complex<T>],
    mu: &Spectrum<T>,
) -> Result<SymmetricJacobi<T>> {
    solve_hochstadt_mixed_detailed(a_head, b_head, mu).map(|(j, _)| j)
}

/// As [`solve_hochstadt_mixed`], also returning the solution of the reduced
/// size-`m` problem.
pub fn solve_hochstadt_mixed_detailed<T: Real>(
    a_head: &[Complex<T>],
    b_head: &[Complex<T>],
    mu: &Spectrum<T>,
) -> Result<(SymmetricJacobi<T>, PolyBcSolution<T>)> {
    let m = a_head.len() + 1;
    if b_head.len() + 1 != m || m < 2 {
        return Err(Error::InvalidInstance(format!(
            "need m - 1 >= 1 known entries of each kind, got {} and {}",
            a_head.len(),
            b_head.len()
        )));
    }
    let l = 2 * m - 1;
    if mu.len() != l {
        return Err(Error::SpectrumSize { expected: l, got: mu.len() });
    }
    if let Some(n) = a_head.iter().position(|z| z.is_zero()) {
        return Err(Error::InvalidInstance(format!("A_{} must be nonzero", n + 1)));
    }

    // P_0..P_m only involve the head; StandardCoeffs pins a_{m-1} to 1, so the
    // last polynomial is rescaled by the true a_{m-1}.
    let head_a: Vec<Complex<T>> = a_head.iter().map(|x| x * x).collect();
    let head = StandardCoeffs::new(head_a.clone(), b_head.to_vec())?;
    let mut p = solution_family(&head, FamilyKind::P).polys;
    p[m] = p[m].scale_by(head_a[m - 2].inv());

    let bc = BoundaryPolys::new(p[m - 1].clone(), p[m].clone(), BoundaryConfig::Hochstadt)?;
    let reduced = solve_poly_bc_detailed(&bc, mu)?;
    let tail = &reduced.coeffs;

    let mut a_full: Vec<Complex<T>> = a_head.to_vec();
    a_full.extend(tail.a()[..m - 1].iter().map(|x| x.sqrt()));
    let mut b_full = b_head.to_vec();
    b_full.extend_from_slice(tail.b());
    Ok((SymmetricJacobi::new(a_full, b_full)?, reduced))
}
