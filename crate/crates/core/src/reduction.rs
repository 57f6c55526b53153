//! Inverse problems with polynomial boundary conditions and the inverse
//! transmission problem.
//!
//! Given `R0`, `R1` and the eigenvalues of
//! `a_n y_{n+1} + b_n y_n + y_{n-1} = λ y_n`, `R0(λ) y_1 - R1(λ) y_0 = 0`,
//! `y_{l+1} = 0`, the characteristic polynomial `E = R0 v_1 - R1 v_0` is
//! rebuilt from its zeros, the monic `v_0`, `v_1` are recovered from it, and
//! the Weyl function `v_1 / v_0` is inverted.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forward::{build_boundary_polys, lift_standard, BoundaryConfig, BoundaryPolys, StandardCoeffs, WeylData};
use crate::linalg::{solve_linear, DenseMatrix};
use crate::poly::{laurent_expand, Poly};
use crate::roots::{cluster_roots, poly_roots, Spectrum};
use crate::scalar::{from_usize, max_norm, Real};
use crate::weyl::solve_weyl;

/// Relative tolerance on the leading coefficient of `E`.
const LEADING_REL: f64 = 1e-9;
/// Relative residual allowed in `R0 v1 - R1 v0 = E` after the linear solve.
const RESIDUAL_REL: f64 = 1e-9;

fn check_e<T: Real>(bc: &BoundaryPolys<T>, e: &Poly<T>, size: usize) -> Result<()> {
    let expected = bc.e_leading();
    if e.degree() != Some(2 * size - 1) {
        return Err(Error::LeadingMismatch);
    }
    let scale = expected.norm().max(e.leading().norm());
    if (e.leading() - expected).norm() > T::lit(LEADING_REL) * scale {
        return Err(Error::LeadingMismatch);
    }
    Ok(())
}

/// Recovers monic `v0` (degree `L`) and `v1` (degree `L - 1`) with
/// `R0 v1 - R1 v0 = E` by matching the coefficients of `λ^0..λ^{2L-2}`.
///
/// Unknowns are ordered `v1_0..v1_{L-2}, v0_0..v0_{L-1}`; the monic leading
/// terms contribute `-R0_{s-L+1} + R1_{s-L}` to the right-hand side.
pub fn recover_v_linear<T: Real>(bc: &BoundaryPolys<T>, e: &Poly<T>, size: usize) -> Result<(Poly<T>, Poly<T>)> {
    if size == 0 || bc.size() != size {
        return Err(Error::ConfigMismatch(bc.config.name()));
    }
    check_e(bc, e, size)?;
    let n = 2 * size - 1;
    let n1 = size - 1;
    let r0 = |k: isize| if k < 0 { Complex::zero() } else { bc.r0.coeff(k as usize) };
    let r1 = |k: isize| if k < 0 { Complex::zero() } else { bc.r1.coeff(k as usize) };
    let a = DenseMatrix::from_fn(n, n, |s, col| {
        let s = s as isize;
        if col < n1 {
            r0(s - col as isize)
        } else {
            -r1(s - (col - n1) as isize)
        }
    });
    let rhs: Vec<Complex<T>> = (0..n)
        .map(|s| {
            let s = s as isize;
            e.coeff(s as usize) - r0(s - n1 as isize) + r1(s - size as isize)
        })
        .collect();
    let x = solve_linear(&a, &rhs).map_err(|_| Error::SingularSystem)?;

    let mut v1c: Vec<Complex<T>> = x[..n1].to_vec();
    v1c.push(Complex::one());
    let mut v0c: Vec<Complex<T>> = x[n1..].to_vec();
    v0c.push(Complex::one());
    let (v0, v1) = (Poly::new(v0c), Poly::new(v1c));

    let residual = &(&(&bc.r0 * &v1) - &(&bc.r1 * &v0)) - e;
    let scale = e.scale().max(max_norm(&x)).max(T::one());
    if residual.scale() > T::lit(RESIDUAL_REL) * scale * from_len::<T>(n) {
        return Err(Error::SingularSystem);
    }
    Ok((v0, v1))
}

fn from_len<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("small size")
}

/// Same result as [`recover_v_linear`], by the constructive route: the scaled
/// derivatives of `v_j` at each root of `R_j` follow from a triangular
/// recursion, and `v_j` is the monic Hermite interpolant of degree `L - j`.
/// Only the `Paper` configuration is supported.
pub fn recover_v_hermite<T: Real>(bc: &BoundaryPolys<T>, e: &Poly<T>, size: usize) -> Result<(Poly<T>, Poly<T>)> {
    if bc.config != BoundaryConfig::Paper || bc.size() != size || size == 0 {
        return Err(Error::ConfigMismatch(bc.config.name()));
    }
    check_e(bc, e, size)?;
    let v0 = hermite_branch(&bc.r0, &bc.r1, e, -T::one())?;
    let v1 = hermite_branch(&bc.r1, &bc.r0, e, T::one())?;
    Ok((v0, v1))
}

/// Solves for the monic `v` with `deg v = deg own`, given
/// `sign · E = other · v` at every root of `own` (to the root's multiplicity).
fn hermite_branch<T: Real>(own: &Poly<T>, other: &Poly<T>, e: &Poly<T>, sign: T) -> Result<Poly<T>> {
    let lead = own.leading();
    let base = own.scale_by(lead.inv());
    if own.degree() == Some(0) {
        return Ok(Poly::one());
    }
    let roots = poly_roots(own)?;
    let tol = hermite_cluster_tol(&roots);
    let clusters = cluster_roots(&roots, tol)?;
    let other_scale = other.scale();

    let mut conditions: Vec<(Complex<T>, Vec<Complex<T>>)> = Vec::new();
    for (&xi, &mult) in clusters.distinct_roots.iter().zip(&clusters.multiplicities) {
        let xi = refine_multiple_root(own, xi, mult);
        let other_d: Vec<Complex<T>> = (0..mult).map(|nu| other.scaled_derivative(nu).eval(xi)).collect();
        let radius = xi.norm().max(T::one());
        let size_at = other_scale * radius.powi(other.degree().unwrap_or(0) as i32);
        if other_d[0].norm() <= T::lit(1e-10) * size_at {
            return Err(Error::CommonRoot);
        }
        let mut vd: Vec<Complex<T>> = Vec::with_capacity(mult);
        for nu in 0..mult {
            let mut acc = e.scaled_derivative(nu).eval(xi) * sign;
            for s in 0..nu {
                acc = acc - other_d[nu - s] * vd[s];
            }
            vd.push(acc / other_d[0]);
        }
        // v = own / lead + w: the monic product vanishes to order `mult` at ξ
        let targets = (0..mult).map(|nu| vd[nu] - base.scaled_derivative(nu).eval(xi)).collect();
        conditions.push((xi, targets));
    }
    let w = hermite_interpolate(&conditions);
    Ok(&base + &w)
}

/// A root of multiplicity `m` is a simple root of `p^{(m-1)}`; a few Newton
/// steps there recover full precision from the `eps^{1/m}`-accurate cluster
/// mean.
fn refine_multiple_root<T: Real>(p: &Poly<T>, xi: Complex<T>, mult: usize) -> Complex<T> {
    if mult < 2 {
        return xi;
    }
    let q = p.scaled_derivative(mult - 1);
    let dq = p.scaled_derivative(mult).scale_by(Complex::new(from_usize(mult), T::zero()));
    let mut z = xi;
    for _ in 0..4 {
        let d = dq.eval(z);
        if d.is_zero() {
            break;
        }
        let step = q.eval(z) / d;
        // only accept moves that stay inside the cluster
        if !(step.norm() <= newton_step_cap(xi)) {
            break;
        }
        z = z - step;
    }
    z
}

fn newton_step_cap<T: Real>(xi: Complex<T>) -> T {
    T::eps().sqrt() * T::lit(100.0) * xi.norm().max(T::one())
}

/// Clustering tolerance for roots of the boundary polynomials: a root of
/// multiplicity `k` is only resolved to about `eps^{1/k}`, so the default
/// tolerance is widened to `sqrt(eps)`-level separations.
fn hermite_cluster_tol<T: Real>(roots: &Spectrum<T>) -> T {
    let scale = max_norm(roots.values()).max(T::one());
    (T::eps().sqrt() * T::lit(100.0) * scale).max(roots.tol())
}

/// Polynomial of degree below the total number of conditions with prescribed
/// scaled derivatives `f^{<ν>}(ξ)` at each node, via confluent divided
/// differences in Newton form.
pub fn hermite_interpolate<T: Real>(conditions: &[(Complex<T>, Vec<Complex<T>>)]) -> Poly<T> {
    let mut nodes: Vec<(usize, Complex<T>)> = Vec::new();
    for (id, (xi, d)) in conditions.iter().enumerate() {
        nodes.extend(std::iter::repeat_n((id, *xi), d.len()));
    }
    let n = nodes.len();
    if n == 0 {
        return Poly::zero();
    }
    // column k of the table holds f[z_i, ..., z_{i+k}]
    let mut col: Vec<Complex<T>> = nodes.iter().map(|&(id, _)| conditions[id].1[0]).collect();
    let mut newton = vec![col[0]];
    for k in 1..n {
        let next: Vec<Complex<T>> = (0..n - k)
            .map(|i| {
                let (id_i, zi) = nodes[i];
                let (id_k, zk) = nodes[i + k];
                if id_i == id_k {
                    conditions[id_i].1[k]
                } else {
                    (col[i + 1] - col[i]) / (zk - zi)
                }
            })
            .collect();
        newton.push(next[0]);
        col = next;
    }
    // nested evaluation of the Newton form
    let mut p = Poly::constant(newton[n - 1]);
    for k in (0..n - 1).rev() {
        p = &(&p * &Poly::linear(nodes[k].1)) + &Poly::constant(newton[k]);
    }
    p
}

/// Full output of the polynomial-boundary inverse solve.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyBcSolution<T: Real> {
    pub coeffs: StandardCoeffs<T>,
    pub e: Poly<T>,
    pub v0: Poly<T>,
    pub v1: Poly<T>,
    pub weyl: WeylData<T>,
}

/// Recovers the normalised coefficients from `R0`, `R1` and `2L - 1`
/// eigenvalues. The leading coefficient of `E` is implied by the boundary
/// polynomials (`r0 - r1` for `Paper`, `-r1` for `Hochstadt`).
pub fn solve_poly_bc_detailed<T: Real>(bc: &BoundaryPolys<T>, spectrum: &Spectrum<T>) -> Result<PolyBcSolution<T>> {
    let size = bc.size();
    if size == 0 {
        return Err(Error::ConfigMismatch(bc.config.name()));
    }
    if spectrum.len() != 2 * size - 1 {
        return Err(Error::SpectrumSize { expected: 2 * size - 1, got: spectrum.len() });
    }
    let e = Poly::from_roots(spectrum.values(), bc.e_leading())?;
    let (v0, v1) = recover_v_linear(bc, &e, size)?;
    let m = laurent_expand(&v1, &v0, 2 * size)?;
    let weyl = WeylData::new(m)?;
    let (coeffs, _) = solve_weyl(&weyl)?;
    Ok(PolyBcSolution { coeffs, e, v0, v1, weyl })
}

pub fn solve_poly_bc<T: Real>(bc: &BoundaryPolys<T>, spectrum: &Spectrum<T>) -> Result<StandardCoeffs<T>> {
    solve_poly_bc_detailed(bc, spectrum).map(|s| s.coeffs)
}

/// Recovered transmission coefficients together with the intermediate data.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionSolution<T: Real> {
    pub alpha: Vec<Complex<T>>,
    pub beta: Vec<Complex<T>>,
    pub boundary: BoundaryPolys<T>,
    pub reduced: PolyBcSolution<T>,
}

/// Recovers `α_1..α_l` (with `α_l` as given) and `β_1..β_l` from the dotted
/// coefficients, `α_l` and the `2l - 1` transmission eigenvalues.
pub fn solve_transmission_detailed<T: Real>(
    alpha_dot: &[Complex<T>],
    beta_dot: &[Complex<T>],
    alpha_l: Complex<T>,
    spectrum: &Spectrum<T>,
) -> Result<TransmissionSolution<T>> {
    let boundary = build_boundary_polys(alpha_dot, beta_dot, alpha_l)?;
    let reduced = solve_poly_bc_detailed(&boundary, spectrum)?;
    let (alpha, beta) = lift_standard(&reduced.coeffs, alpha_l)?;
    Ok(TransmissionSolution { alpha, beta, boundary, reduced })
}

pub fn solve_transmission<T: Real>(
    alpha_dot: &[Complex<T>],
    beta_dot: &[Complex<T>],
    alpha_l: Complex<T>,
    spectrum: &Spectrum<T>,
) -> Result<(Vec<Complex<T>>, Vec<Complex<T>>)> {
    solve_transmission_detailed(alpha_dot, beta_dot, alpha_l, spectrum).map(|s| (s.alpha, s.beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type P = Poly<f64>;

    fn c(re: f64) -> Complex<f64> {
        cx(re, 0.0)
    }

    fn reals(v: &[f64]) -> Vec<Complex<f64>> {
        v.iter().map(|&x| c(x)).collect()
    }

    fn close(p: &P, q: &P, tol: f64) -> bool {
        (p - q).coeffs().iter().all(|z| z.norm() < tol)
    }

    fn single_step_bc() -> BoundaryPolys<f64> {
        BoundaryPolys::new(P::from_real(&[0.0, 2.0]), P::one(), BoundaryConfig::Paper).unwrap()
    }

    #[test]
    fn linear_single_step() {
        let (v0, v1) = recover_v_linear(&single_step_bc(), &P::from_real(&[1.0, 1.0]), 1).unwrap();
        assert!(close(&v0, &P::from_real(&[-1.0, 1.0]), 1e-15));
        assert_eq!(v1, P::one());
    }

    #[test]
    fn linear_hochstadt_config() {
        let bc = BoundaryPolys::new(P::one(), P::x(), BoundaryConfig::Hochstadt).unwrap();
        let e = P::from_real(&[0.0, 2.0, 0.0, -1.0]);
        let (v0, v1) = recover_v_linear(&bc, &e, 2).unwrap();
        assert!(close(&v0, &P::from_real(&[-1.0, 0.0, 1.0]), 1e-14));
        assert!(close(&v1, &P::x(), 1e-14));
    }

    #[test]
    fn wrong_leading_rejected() {
        let e = P::from_real(&[1.0, 3.0]);
        assert_eq!(recover_v_linear(&single_step_bc(), &e, 1), Err(Error::LeadingMismatch));
        assert_eq!(recover_v_hermite(&single_step_bc(), &e, 1), Err(Error::LeadingMismatch));
    }

    #[test]
    fn hermite_single_step() {
        let (v0, v1) = recover_v_hermite(&single_step_bc(), &P::from_real(&[1.0, 1.0]), 1).unwrap();
        assert!(close(&v0, &P::from_real(&[-1.0, 1.0]), 1e-15));
        assert_eq!(v1, P::one());
    }

    #[test]
    fn hermite_with_double_root_in_r1() {
        // R0 = λ² + 1 is paired with R1 = (λ - 1)² of the same degree class
        // by taking L = 3: R0 of degree 3, R1 of degree 2.
        let r0 = &P::from_real(&[1.0, 0.0, 1.0]) * &P::from_real(&[0.5, 3.0]);
        let r1 = P::from_real(&[1.0, -2.0, 1.0]);
        let bc = BoundaryPolys::new(r0, r1, BoundaryConfig::Paper).unwrap();
        let v0 = P::from_real(&[0.2, -0.4, 0.3, 1.0]);
        let v1 = P::from_real(&[-0.7, 0.1, 1.0]);
        let e = &(&bc.r0 * &v1) - &(&bc.r1 * &v0);
        let (h0, h1) = recover_v_hermite(&bc, &e, 3).unwrap();
        let (l0, l1) = recover_v_linear(&bc, &e, 3).unwrap();
        assert!(close(&h0, &v0, 1e-8) && close(&h1, &v1, 1e-8));
        assert!(close(&l0, &v0, 1e-12) && close(&l1, &v1, 1e-12));
    }

    #[test]
    fn common_root_rejected() {
        // R0 = λ (λ - 1), R1 = λ share the root 0
        let bc = BoundaryPolys::new(P::from_real(&[0.0, -1.0, 1.0]), P::from_real(&[0.0, 3.0]), BoundaryConfig::Paper)
            .unwrap();
        let e = P::from_real(&[0.0, 1.0, 0.0, -2.0]);
        assert_eq!(recover_v_hermite(&bc, &e, 2), Err(Error::CommonRoot));
        assert_eq!(recover_v_linear(&bc, &e, 2), Err(Error::SingularSystem));
    }

    #[test]
    fn hermite_interpolation_matches_derivatives() {
        let f = P::from_real(&[1.0, -2.0, 0.5, 3.0, -1.0]);
        let conds: Vec<_> = [(c(0.5), 2), (c(-1.0), 1), (cx(0.0, 1.0), 2)]
            .iter()
            .map(|&(z, m)| (z, (0..m).map(|nu| f.scaled_derivative(nu).eval(z)).collect()))
            .collect();
        let p = hermite_interpolate(&conds);
        assert!(close(&p, &f, 1e-12), "{p:?}");
    }

    #[test]
    fn poly_bc_examples() {
        let sol = solve_poly_bc_detailed(&single_step_bc(), &Spectrum::new(reals(&[-1.0]))).unwrap();
        assert!(close(&sol.e, &P::from_real(&[1.0, 1.0]), 1e-15));
        assert!(close(&sol.v0, &P::from_real(&[-1.0, 1.0]), 1e-15));
        assert_eq!(sol.v1, P::one());
        assert_eq!(sol.weyl.m(), reals(&[1.0, 1.0]).as_slice());
        assert_eq!(sol.coeffs.a(), &[c(1.0)]);
        assert!((sol.coeffs.b()[0] - c(1.0)).norm() < 1e-15);

        let s = solve_poly_bc(&single_step_bc(), &Spectrum::new(reals(&[0.0]))).unwrap();
        assert!(s.b()[0].norm() < 1e-15);

        let bad = solve_poly_bc(&single_step_bc(), &Spectrum::new(reals(&[0.0, 1.0])));
        assert_eq!(bad, Err(Error::SpectrumSize { expected: 1, got: 2 }));
    }

    #[test]
    fn transmission_examples() {
        let (alpha, beta) = solve_transmission(&reals(&[1.0]), &reals(&[0.0]), c(2.0), &Spectrum::new(reals(&[0.0]))).unwrap();
        assert!((alpha[0] - c(2.0)).norm() < 1e-12 && beta[0].norm() < 1e-12);

        // α = 2, β = 7 against α• = 1, β• = 0: D = λ - (λ - 7)/2 vanishes at -7
        let (alpha, beta) = solve_transmission(&reals(&[1.0]), &reals(&[0.0]), c(2.0), &Spectrum::new(reals(&[-7.0]))).unwrap();
        assert!((alpha[0] - c(2.0)).norm() < 1e-12);
        assert!((beta[0] - c(7.0)).norm() < 1e-12, "{beta:?}");

        let err = solve_transmission(&reals(&[1.0]), &reals(&[0.0]), c(1.0), &Spectrum::new(reals(&[0.0])));
        assert_eq!(err, Err(Error::DegenerateLeading));
    }
}
