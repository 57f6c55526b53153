//! Reconstruction of the normalised recurrence from its Weyl coefficients,
//! and from two spectra.
//!
//! For each `n` the coefficients `c_{in}` of `P_{n+1}(λ) = Σ c_{in} λ^i` solve
//! the Hankel system `Σ_i c_{in} M_{i+k+1} = δ_{nk}`, `k = 0..n`. The last
//! column (`n = l`) would need `M_{2l+1}`; instead `c_{ll}` is fixed to
//! `c_{l-1,l-1}` (this is `a_l = 1`) and moved to the right-hand side, which
//! leaves an `l × l` system over `M_1..M_{2l}`. The coefficients then follow from
//! `a_n = c_{n-1,n-1} / c_{nn}` and
//! `b_n = (c_{n-2,n-1} - a_n c_{n-1,n}) / c_{n-1,n-1}`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forward::{StandardCoeffs, TwoSpectra, WeylData};
use crate::linalg::{determinant, hankel, solve_linear, DenseMatrix};
use crate::poly::{laurent_expand, Poly};
use crate::scalar::Real;

/// Columns `c_{·n}` of `P_{n+1}`, `n = 0..l`; column `n` has `n + 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CTable<T: Real> {
    pub columns: Vec<Vec<Complex<T>>>,
}

impl<T: Real> CTable<T> {
    pub fn get(&self, i: usize, n: usize) -> Complex<T> {
        self.columns[n][i]
    }

    /// `P_{n+1}` as a polynomial.
    pub fn poly(&self, n: usize) -> Poly<T> {
        Poly::new(self.columns[n].clone())
    }
}

/// Outcome of the Hankel determinant test.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelCheck<T: Real> {
    /// `Δ_1..Δ_{l-1}`.
    pub deltas: Vec<Complex<T>>,
    /// First `n` whose determinant falls below threshold.
    pub failed_at: Option<usize>,
}

impl<T: Real> HankelCheck<T> {
    pub fn passed(&self) -> bool {
        self.failed_at.is_none()
    }
}

/// Computes `Δ_n` for `n = 1..l-1` and tests each pivot `Δ_n / Δ_{n-1}`.
///
/// `Δ_n` scales like `ρ^{n(n+1)}` under `λ → ρλ`, so the pivot is compared
/// against `ρ_M^{2n}` with `ρ_M = max_k |M_k|^{1/(k-1)}` over the entries of
/// the `n`-th matrix; the test is then invariant under rescaling of `λ`.
pub fn hankel_condition<T: Real>(w: &WeylData<T>) -> HankelCheck<T> {
    let m = w.m();
    let mut failed_at = None;
    let mut prev = Complex::one();
    for (idx, delta) in w.deltas().iter().enumerate() {
        let n = idx + 1;
        let pivot = if prev == Complex::zero() { T::zero() } else { (delta / prev).norm() };
        let rho = (1..=2 * n)
            .map(|k| m[k].norm().powf(T::one() / crate::scalar::from_usize::<T>(k)))
            .fold(T::zero(), T::max);
        if !(pivot > T::HANKEL_REL * rho.powi(2 * n as i32)) {
            failed_at.get_or_insert(n);
        }
        prev = *delta;
    }
    HankelCheck { deltas: w.deltas().to_vec(), failed_at }
}

fn check_normalized<T: Real>(m: &[Complex<T>]) -> Result<()> {
    if (m[0] - Complex::one()).norm() > T::lit(1e3) * T::eps() {
        return Err(Error::WeylNotNormalized(format!("{}", m[0])));
    }
    Ok(())
}

/// Hankel right-hand side `δ_{nk}`, `k = 0..n`.
fn unit<T: Real>(n: usize) -> Vec<Complex<T>> {
    let mut e = vec![Complex::zero(); n + 1];
    e[n] = Complex::one();
    e
}

/// Recovers `a_1..a_{l-1}`, `b_1..b_l` (with `a_l = 1`) and the table of
/// `P_{n+1}` coefficients from `M_1..M_{2l}`.
pub fn solve_weyl<T: Real>(w: &WeylData<T>) -> Result<(StandardCoeffs<T>, CTable<T>)> {
    let m = w.m();
    let l = w.l();
    check_normalized(m)?;
    let check = hankel_condition(w);
    if let Some(n) = check.failed_at {
        return Err(Error::HankelConditionViolated { n });
    }

    let mut columns: Vec<Vec<Complex<T>>> = vec![vec![Complex::one()]];
    for n in 1..l {
        let h = hankel(m, n)?;
        let c = solve_linear(&h, &unit(n)).map_err(|_| Error::HankelConditionViolated { n })?;
        columns.push(c);
    }

    let c_ll = columns[l - 1][l - 1];
    let h = hankel(m, l - 1)?;
    let rhs: Vec<Complex<T>> = (0..l).map(|k| -(c_ll * m[l + k])).collect();
    let mut last = solve_linear(&h, &rhs).map_err(|_| Error::HankelConditionViolated { n: l - 1 })?;
    last.push(c_ll);
    #[cfg(debug_assertions)]
    cross_check_last_column(m, &last);
    columns.push(last);

    let table = CTable { columns };
    let mut a = Vec::with_capacity(l);
    let mut b = Vec::with_capacity(l);
    for n in 1..=l {
        let an = table.get(n - 1, n - 1) / table.get(n, n);
        let upper = if n >= 2 { table.get(n - 2, n - 1) } else { Complex::zero() };
        let bn = (upper - an * table.get(n - 1, n)) / table.get(n - 1, n - 1);
        a.push(an);
        b.push(bn);
    }
    let s = StandardCoeffs::new(a, b)?;
    Ok((s, table))
}

/// The last column by Cramer's rule with `det` replaced by `Δ_l = Δ_{l-1} / c_{ll}`.
///
/// Replacing column `i` of the `(l+1) × (l+1)` Hankel matrix by `e_l` and
/// expanding along it leaves the cofactor of entry `(l, i)`, whose minor omits
/// the row containing `M_{2l+1}`.
pub fn last_column_by_cramer<T: Real>(m: &[Complex<T>], c_ll: Complex<T>) -> Result<Vec<Complex<T>>> {
    let l = m.len() / 2;
    let delta_prev = if l >= 2 { determinant(&hankel(m, l - 1)?) } else { Complex::one() };
    let delta_l = delta_prev / c_ll;
    let mut out = Vec::with_capacity(l + 1);
    for i in 0..=l {
        // minor: rows k = 0..l-1, all columns except i
        let minor = DenseMatrix::from_fn(l, l, |k, j| {
            let col = if j < i { j } else { j + 1 };
            m[col + k]
        });
        let sign = if (l + i) % 2 == 0 { T::one() } else { -T::one() };
        out.push(determinant(&minor) * sign / delta_l);
    }
    Ok(out)
}

#[cfg(debug_assertions)]
fn cross_check_last_column<T: Real>(m: &[Complex<T>], last: &[Complex<T>]) {
    let l = m.len() / 2;
    // cofactor expansion is only trustworthy for small, well-scaled systems
    if l > 4 {
        return;
    }
    let c_ll = last[l];
    if let Ok(cramer) = last_column_by_cramer(m, c_ll) {
        let scale = crate::scalar::max_norm(last).max(T::one());
        for (x, y) in cramer.iter().zip(last) {
            debug_assert!(
                (*x - *y).norm() <= T::eps().sqrt() * T::lit(100.0) * scale,
                "Cramer cross-check disagrees: {x} vs {y}"
            );
        }
    }
}

/// Reconstruction from the zeros `μ` of `P_{l+1}` and `ν` of `Q_{l+1}`:
/// `M(λ) = ∏ (λ - ν_j) / ∏ (λ - μ_j)`.
pub fn solve_two_spectra<T: Real>(ts: &TwoSpectra<T>) -> Result<StandardCoeffs<T>> {
    let l = ts.mu.len();
    if l == 0 {
        return Err(Error::SpectrumSize { expected: 1, got: 0 });
    }
    if ts.nu.len() + 1 != l {
        return Err(Error::SpectrumSize { expected: l - 1, got: ts.nu.len() });
    }
    let tol = ts.mu.tol().max(ts.nu.tol());
    for x in ts.mu.values() {
        if ts.nu.values().iter().any(|y| (x - y).norm() <= tol) {
            return Err(Error::SpectraNotDisjoint);
        }
    }
    let num = Poly::from_roots(ts.nu.values(), Complex::one())?;
    let den = Poly::from_roots(ts.mu.values(), Complex::one())?;
    let m = laurent_expand(&num, &den, 2 * l)?;
    let (s, _) = solve_weyl(&WeylData::new(m)?)?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Spectrum;
    use crate::scalar::cx;

    fn c(re: f64) -> Complex<f64> {
        cx(re, 0.0)
    }

    fn reals(v: &[f64]) -> Vec<Complex<f64>> {
        v.iter().map(|&x| c(x)).collect()
    }

    fn weyl(v: &[f64]) -> WeylData<f64> {
        WeylData::new(reals(v)).unwrap()
    }

    #[test]
    fn hankel_condition_examples() {
        let chk = hankel_condition(&weyl(&[1.0, 0.0, 1.0, 0.0]));
        assert_eq!(chk.deltas, vec![c(1.0)]);
        assert!(chk.passed());
        let chk = hankel_condition(&weyl(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(chk.deltas, vec![c(0.0)]);
        assert_eq!(chk.failed_at, Some(1));
        // l = 1 has no determinants to test; Δ_0 = 1 implicitly
        assert!(hankel_condition(&weyl(&[1.0, 3.0])).passed());
    }

    #[test]
    fn single_step_recovery() {
        let (s, table) = solve_weyl(&weyl(&[1.0, 3.0])).unwrap();
        assert_eq!(s.a(), &[c(1.0)]);
        assert!((s.b()[0] - c(3.0)).norm() < 1e-14);
        assert_eq!(table.get(0, 1), c(-3.0));
    }

    #[test]
    fn free_pair_recovery() {
        let (s, table) = solve_weyl(&weyl(&[1.0, 0.0, 1.0, 0.0])).unwrap();
        assert_eq!(s.a(), reals(&[1.0, 1.0]).as_slice());
        assert_eq!(s.b(), reals(&[0.0, 0.0]).as_slice());
        assert_eq!(table.columns, vec![reals(&[1.0]), reals(&[0.0, 1.0]), reals(&[-1.0, 0.0, 1.0])]);
    }

    #[test]
    fn singular_hankel_rejected() {
        assert_eq!(solve_weyl(&weyl(&[1.0, 0.0, 0.0, 0.0])), Err(Error::HankelConditionViolated { n: 1 }));
    }

    #[test]
    fn unnormalised_rejected() {
        assert!(matches!(solve_weyl(&weyl(&[2.0, 0.0])), Err(Error::WeylNotNormalized(_))));
    }

    #[test]
    fn cramer_matches_reduced_system() {
        let m = reals(&[1.0, 0.3, 1.4, 0.9, 2.5, 2.2]);
        let w = WeylData::new(m.clone()).unwrap();
        let (_, table) = solve_weyl(&w).unwrap();
        let cramer = last_column_by_cramer(&m, table.get(3, 3)).unwrap();
        assert_eq!(cramer.len(), 4);
        for (x, y) in cramer.iter().zip(&table.columns[3]) {
            assert!((x - y).norm() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn two_spectra_examples() {
        let ts = TwoSpectra { mu: Spectrum::new(reals(&[1.0, -1.0])), nu: Spectrum::new(reals(&[0.0])) };
        let s = solve_two_spectra(&ts).unwrap();
        assert_eq!(s.a(), reals(&[1.0, 1.0]).as_slice());
        assert!(s.b().iter().all(|z| z.norm() < 1e-12));

        let ts = TwoSpectra { mu: Spectrum::new(reals(&[0.4])), nu: Spectrum::empty() };
        assert!((solve_two_spectra(&ts).unwrap().b()[0] - c(0.4)).norm() < 1e-15);

        let ts = TwoSpectra { mu: Spectrum::new(reals(&[1.0, -1.0])), nu: Spectrum::new(reals(&[1.0])) };
        assert_eq!(solve_two_spectra(&ts), Err(Error::SpectraNotDisjoint));
    }
}
