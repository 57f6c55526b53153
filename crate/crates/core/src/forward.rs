//! Forward problems: recurrence solution families, characteristic polynomials,
//! spectra, Weyl coefficients and the reduction of the transmission form to the
//! normalised form with polynomial boundary conditions.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauge;
use crate::linalg::{determinant, hankel};
use crate::poly::{laurent_expand, Poly};
use crate::roots::{poly_roots, Spectrum};
use crate::scalar::{convert, Real};

/// Coefficients of `a_n y_{n+1} + b_n y_n + y_{n-1} = λ y_n`, `n = 1..l`,
/// normalised so that `a_l = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardCoeffs<T: Real> {
    a: Vec<Complex<T>>,
    b: Vec<Complex<T>>,
}

impl<T: Real> StandardCoeffs<T> {
    /// `a` may carry `l` or `l - 1` entries; `a_l` is overwritten with 1 either way.
    pub fn new(mut a: Vec<Complex<T>>, b: Vec<Complex<T>>) -> Result<Self> {
        let l = b.len();
        if l == 0 {
            return Err(Error::InvalidInstance("size l must be positive".into()));
        }
        match a.len() {
            n if n == l => a[l - 1] = Complex::one(),
            n if n + 1 == l => a.push(Complex::one()),
            n => {
                return Err(Error::InvalidInstance(format!("expected {l} or {} a-coefficients, got {n}", l - 1)))
            }
        }
        if let Some(n) = a[..l - 1].iter().position(|x| x.is_zero()) {
            return Err(Error::InvalidInstance(format!("a_{} must be nonzero", n + 1)));
        }
        if a.iter().chain(&b).any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidInstance("coefficients must be finite".into()));
        }
        Ok(StandardCoeffs { a, b })
    }

    pub fn l(&self) -> usize {
        self.b.len()
    }

    /// `a_1..a_l` (the last entry is 1).
    pub fn a(&self) -> &[Complex<T>] {
        &self.a
    }

    pub fn b(&self) -> &[Complex<T>] {
        &self.b
    }

    pub fn convert<U: Real>(&self) -> StandardCoeffs<U> {
        StandardCoeffs { a: convert(&self.a), b: convert(&self.b) }
    }

    /// Largest componentwise distance over `a_1..a_{l-1}` and `b_1..b_l`.
    pub fn max_abs_diff(&self, other: &StandardCoeffs<T>) -> T {
        assert_eq!(self.l(), other.l());
        let l = self.l();
        let da = (0..l - 1).map(|k| (self.a[k] - other.a[k]).norm());
        let db = (0..l).map(|k| (self.b[k] - other.b[k]).norm());
        da.chain(db).fold(T::zero(), T::max)
    }
}

fn check_nonzero<T: Real>(v: &[Complex<T>], name: &str) -> Result<()> {
    match v.iter().position(|z| z.is_zero()) {
        Some(n) => Err(Error::InvalidInstance(format!("{name}_{} must be nonzero", n + 1))),
        None => Ok(()),
    }
}

fn check_distinct_tail<T: Real>(alpha_l: Complex<T>, alpha_dot_l: Complex<T>) -> Result<()> {
    let scale = alpha_l.norm().max(alpha_dot_l.norm());
    if (alpha_l - alpha_dot_l).norm() <= T::TRIM_REL * scale {
        Err(Error::DegenerateLeading)
    } else {
        Ok(())
    }
}

/// Coefficients of the coupled pair
/// `α_n ψ_{n+1} + β_n ψ_n + α_n ψ_{n-1} = λ ψ_n` and the dotted twin.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionInstance<T: Real> {
    pub alpha: Vec<Complex<T>>,
    pub beta: Vec<Complex<T>>,
    pub alpha_dot: Vec<Complex<T>>,
    pub beta_dot: Vec<Complex<T>>,
}

impl<T: Real> TransmissionInstance<T> {
    pub fn new(
        alpha: Vec<Complex<T>>,
        beta: Vec<Complex<T>>,
        alpha_dot: Vec<Complex<T>>,
        beta_dot: Vec<Complex<T>>,
    ) -> Result<Self> {
        let l = alpha.len();
        if l == 0 {
            return Err(Error::InvalidInstance("size l must be positive".into()));
        }
        if beta.len() != l || alpha_dot.len() != l || beta_dot.len() != l {
            return Err(Error::InvalidInstance("all coefficient arrays must have length l".into()));
        }
        check_nonzero(&alpha, "alpha")?;
        check_nonzero(&alpha_dot, "alpha_dot")?;
        check_distinct_tail(alpha[l - 1], alpha_dot[l - 1])
            .map_err(|_| Error::InvalidInstance("alpha_l equals alpha_dot_l".into()))?;
        Ok(TransmissionInstance { alpha, beta, alpha_dot, beta_dot })
    }

    pub fn l(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha_l(&self) -> Complex<T> {
        self.alpha[self.l() - 1]
    }

    pub fn convert<U: Real>(&self) -> TransmissionInstance<U> {
        TransmissionInstance {
            alpha: convert(&self.alpha),
            beta: convert(&self.beta),
            alpha_dot: convert(&self.alpha_dot),
            beta_dot: convert(&self.beta_dot),
        }
    }

    /// Largest componentwise distance over `α_1..α_l` and `β_1..β_l`.
    pub fn max_abs_diff_alpha_beta(&self, alpha: &[Complex<T>], beta: &[Complex<T>]) -> T {
        self.alpha
            .iter()
            .zip(alpha)
            .chain(self.beta.iter().zip(beta))
            .map(|(x, y)| (x - y).norm())
            .fold(T::zero(), T::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `P_0 = 0`, `P_1 = 1`.
    P,
    /// `Q_0 = 1`, `Q_1 = 0`.
    Q,
    /// `v_{l+1} = 0`, `v_l = 1`.
    V,
    /// `φ_0 = 0`, `φ_1 = 1` for the undotted transmission equation.
    Phi,
    /// `φ•_0 = 0`, `φ•_1 = 1` for the dotted equation.
    PhiDot,
}

/// Polynomial solutions `y_0..y_{l+1}` of one recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFamily<T: Real> {
    pub kind: FamilyKind,
    pub polys: Vec<Poly<T>>,
}

impl<T: Real> SolutionFamily<T> {
    pub fn get(&self, n: usize) -> &Poly<T> {
        &self.polys[n]
    }

    pub fn last(&self) -> &Poly<T> {
        self.polys.last().expect("families are never empty")
    }
}

/// `P`, `Q` (forward from `n = 1`) or `v` (backward from `n = l`) for the
/// normalised recurrence.
pub fn solution_family<T: Real>(s: &StandardCoeffs<T>, kind: FamilyKind) -> SolutionFamily<T> {
    let l = s.l();
    let lambda = Poly::x();
    let polys = match kind {
        FamilyKind::P | FamilyKind::Q => {
            let (y0, y1) = if kind == FamilyKind::P { (Poly::zero(), Poly::one()) } else { (Poly::one(), Poly::zero()) };
            let mut ys = vec![y0, y1];
            for n in 1..=l {
                let shifted = &lambda - &Poly::constant(s.b[n - 1]);
                let next = &(&shifted * &ys[n]) - &ys[n - 1];
                ys.push(next.scale_by(s.a[n - 1].inv()));
            }
            ys
        }
        FamilyKind::V => {
            let mut ys = vec![Poly::zero(); l + 2];
            ys[l] = Poly::one();
            for n in (1..=l).rev() {
                let shifted = &lambda - &Poly::constant(s.b[n - 1]);
                ys[n - 1] = &(&shifted * &ys[n]) - &ys[n + 1].scale_by(s.a[n - 1]);
            }
            ys
        }
        FamilyKind::Phi | FamilyKind::PhiDot => {
            panic!("transmission families are built with phi_family")
        }
    };
    SolutionFamily { kind, polys }
}

/// `φ` with `φ_0 = 0`, `φ_1 = 1` for `α_n φ_{n+1} + β_n φ_n + α_n φ_{n-1} = λ φ_n`.
pub fn phi_family<T: Real>(alpha: &[Complex<T>], beta: &[Complex<T>], kind: FamilyKind) -> SolutionFamily<T> {
    let lambda = Poly::x();
    let mut ys = vec![Poly::zero(), Poly::one()];
    for n in 1..=alpha.len() {
        let shifted = &lambda - &Poly::constant(beta[n - 1]);
        let next = &(&shifted * &ys[n]) - &ys[n - 1].scale_by(alpha[n - 1]);
        ys.push(next.scale_by(alpha[n - 1].inv()));
    }
    SolutionFamily { kind, polys: ys }
}

/// Truncated Weyl data: `M_1..M_{2l}` and the Hankel determinants `Δ_1..Δ_{l-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylData<T: Real> {
    m: Vec<Complex<T>>,
    deltas: Vec<Complex<T>>,
}

impl<T: Real> WeylData<T> {
    /// Accepts `2l` coefficients with `l ≥ 1` and computes the Hankel determinants.
    pub fn new(m: Vec<Complex<T>>) -> Result<Self> {
        if m.is_empty() || m.len() % 2 != 0 {
            return Err(Error::InvalidInstance(format!(
                "Weyl data needs an even, positive number of coefficients, got {}",
                m.len()
            )));
        }
        let l = m.len() / 2;
        let deltas = (1..l)
            .map(|n| hankel(&m, n).map(|h| determinant(&h)))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylData { m, deltas })
    }

    pub fn l(&self) -> usize {
        self.m.len() / 2
    }

    /// `M_1..M_{2l}`; `m()[k]` is `M_{k+1}`.
    pub fn m(&self) -> &[Complex<T>] {
        &self.m
    }

    /// `Δ_1..Δ_{l-1}`.
    pub fn deltas(&self) -> &[Complex<T>] {
        &self.deltas
    }

    pub fn convert<U: Real>(&self) -> WeylData<U> {
        WeylData { m: convert(&self.m), deltas: convert(&self.deltas) }
    }
}

/// Weyl coefficients of `M(λ) = -Q_{l+1}(λ) / P_{l+1}(λ)`.
pub fn weyl_forward<T: Real>(s: &StandardCoeffs<T>) -> WeylData<T> {
    let p = solution_family(s, FamilyKind::P);
    let q = solution_family(s, FamilyKind::Q);
    let num = -q.last();
    let m = laurent_expand(&num, p.last(), 2 * s.l()).expect("deg Q_{l+1} = deg P_{l+1} - 1 by construction");
    WeylData::new(m).expect("2l coefficients")
}

/// Zeros `μ` of `P_{l+1}` and `ν` of `Q_{l+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSpectra<T: Real> {
    pub mu: Spectrum<T>,
    pub nu: Spectrum<T>,
}

impl<T: Real> TwoSpectra<T> {
    pub fn convert<U: Real>(&self) -> TwoSpectra<U> {
        TwoSpectra { mu: self.mu.convert(), nu: self.nu.convert() }
    }

    pub fn l(&self) -> usize {
        self.mu.len()
    }
}

pub fn two_spectra_forward<T: Real>(s: &StandardCoeffs<T>) -> Result<TwoSpectra<T>> {
    let p = solution_family(s, FamilyKind::P);
    let q = solution_family(s, FamilyKind::Q);
    let mu = poly_roots(p.last())?;
    let nu = if s.l() == 1 { Spectrum::empty() } else { poly_roots(q.last())? };
    Ok(TwoSpectra { mu, nu })
}

/// `D(λ) = φ_l φ•_{l+1} - φ_{l+1} φ•_l`; its zeros are the transmission eigenvalues.
pub fn char_poly_transmission<T: Real>(t: &TransmissionInstance<T>) -> Poly<T> {
    let l = t.l();
    let phi = phi_family(&t.alpha, &t.beta, FamilyKind::Phi);
    let phid = phi_family(&t.alpha_dot, &t.beta_dot, FamilyKind::PhiDot);
    &(phi.get(l) * phid.get(l + 1)) - &(phi.get(l + 1) * phid.get(l))
}

/// The `2l - 1` transmission eigenvalues with multiplicity.
pub fn transmission_spectrum<T: Real>(t: &TransmissionInstance<T>) -> Result<Spectrum<T>> {
    poly_roots(&char_poly_transmission(t))
}

/// Which degree pattern the boundary polynomials follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryConfig {
    /// `deg R0 = L`, `deg R1 = L - 1`, leading coefficients distinct.
    Paper,
    /// `deg R0 = L - 2`, `deg R1 = L - 1` (half-data Jacobi reduction).
    Hochstadt,
}

impl BoundaryConfig {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryConfig::Paper => "paper",
            BoundaryConfig::Hochstadt => "hochstadt",
        }
    }
}

/// Boundary condition `R0(λ) y_1 - R1(λ) y_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPolys<T: Real> {
    pub r0: Poly<T>,
    pub r1: Poly<T>,
    pub config: BoundaryConfig,
}

impl<T: Real> BoundaryPolys<T> {
    /// Checks the degree pattern of `config`; in the `Paper` configuration also
    /// requires `r0 ≠ r1`.
    pub fn new(r0: Poly<T>, r1: Poly<T>, config: BoundaryConfig) -> Result<Self> {
        let (d0, d1) = (r0.degree_signed(), r1.degree_signed());
        let ok = match config {
            BoundaryConfig::Paper => d1 >= 0 && d0 == d1 + 1,
            BoundaryConfig::Hochstadt => d0 >= 0 && d1 == d0 + 1,
        };
        if !ok {
            return Err(Error::ConfigMismatch(config.name()));
        }
        if config == BoundaryConfig::Paper {
            check_distinct_tail(r0.leading(), r1.leading())?;
        }
        Ok(BoundaryPolys { r0, r1, config })
    }

    /// Problem size `L` implied by the degrees.
    pub fn size(&self) -> usize {
        match self.config {
            BoundaryConfig::Paper => self.r0.degree().unwrap_or(0),
            BoundaryConfig::Hochstadt => self.r1.degree().unwrap_or(0) + 1,
        }
    }

    /// Leading coefficient of `E = R0 v1 - R1 v0` for monic `v0`, `v1`:
    /// the coefficient of `λ^L` in `R0` minus that of `λ^{L-1}` in `R1`.
    pub fn e_leading(&self) -> Complex<T> {
        let l = self.size();
        self.r0.coeff(l) - self.r1.coeff(l - 1)
    }

    pub fn convert<U: Real>(&self) -> BoundaryPolys<U> {
        BoundaryPolys { r0: self.r0.convert(), r1: self.r1.convert(), config: self.config }
    }
}

/// `E(λ) = R0(λ) v_1(λ) - R1(λ) v_0(λ)`.
pub fn char_poly_polybc<T: Real>(s: &StandardCoeffs<T>, bc: &BoundaryPolys<T>) -> Result<Poly<T>> {
    if bc.size() != s.l() {
        return Err(Error::ConfigMismatch(bc.config.name()));
    }
    let v = solution_family(s, FamilyKind::V);
    Ok(&(&bc.r0 * v.get(1)) - &(&bc.r1 * v.get(0)))
}

/// `R0 = α_l φ•_{l+1}`, `R1 = φ•_l` for the dotted coefficients.
pub fn build_boundary_polys<T: Real>(
    alpha_dot: &[Complex<T>],
    beta_dot: &[Complex<T>],
    alpha_l: Complex<T>,
) -> Result<BoundaryPolys<T>> {
    let l = alpha_dot.len();
    if l == 0 || beta_dot.len() != l {
        return Err(Error::InvalidInstance("dotted coefficient arrays must share a positive length".into()));
    }
    check_nonzero(alpha_dot, "alpha_dot")?;
    if alpha_l.is_zero() {
        return Err(Error::InvalidInstance("alpha_l must be nonzero".into()));
    }
    check_distinct_tail(alpha_l, alpha_dot[l - 1])?;
    let phid = phi_family(alpha_dot, beta_dot, FamilyKind::PhiDot);
    let r0 = phid.get(l + 1).scale_by(alpha_l);
    let r1 = phid.get(l).clone();
    BoundaryPolys::new(r0, r1, BoundaryConfig::Paper)
}

/// Gauge multipliers `d_1..d_{l+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeSequence<T: Real>(pub Vec<Complex<T>>);

/// Reduces a transmission instance to normalised coefficients with
/// polynomial boundary conditions.
pub fn reduce_transmission<T: Real>(
    t: &TransmissionInstance<T>,
) -> Result<(StandardCoeffs<T>, BoundaryPolys<T>, GaugeSequence<T>)> {
    let (a, b, d) = gauge::reduce_coefficients(&t.alpha, &t.beta);
    let s = StandardCoeffs::new(a, b)?;
    let bc = build_boundary_polys(&t.alpha_dot, &t.beta_dot, t.alpha_l())?;
    Ok((s, bc, GaugeSequence(d)))
}

/// Recovers `(α, β)` from normalised coefficients and the known `α_l`.
pub fn lift_standard<T: Real>(s: &StandardCoeffs<T>, alpha_l: Complex<T>) -> Result<(Vec<Complex<T>>, Vec<Complex<T>>)> {
    if alpha_l.is_zero() {
        return Err(Error::InvalidInstance("alpha_l must be nonzero".into()));
    }
    Ok(gauge::lift_coefficients(s.a(), s.b(), alpha_l))
}
