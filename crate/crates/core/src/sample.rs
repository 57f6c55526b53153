//! Seeded random instance generators used by round-trip checks and
//! stability experiments.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forward::{BoundaryConfig, BoundaryPolys, StandardCoeffs, TransmissionInstance};
use crate::hochstadt::SymmetricJacobi;
use crate::poly::Poly;
use crate::roots::poly_coprime;
use crate::scalar::Real;

/// Modulus range for off-diagonal coefficients (`a_n`, `α_n`, `α•_n`).
pub const OFFDIAG_MIN: f64 = 0.5;
pub const OFFDIAG_MAX: f64 = 2.0;
/// Radius of the disc diagonal coefficients are drawn from.
pub const DIAG_RADIUS: f64 = 2.0;
/// Minimum separation `|α_l - α•_l|` accepted by the transmission generator.
pub const TAIL_GAP: f64 = 0.25;

pub type SampleRng = ChaCha8Rng;

/// Generator for one trial of a seeded experiment; trials are independent.
pub fn trial_rng(seed: u64, trial: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial)
}

fn lit<T: Real>(x: f64) -> T {
    T::lit(x)
}

/// Uniform phase, modulus uniform in `[rmin, rmax]`.
pub fn in_annulus<T: Real, R: Rng + ?Sized>(rng: &mut R, rmin: f64, rmax: f64) -> Complex<T> {
    let r: f64 = rng.random_range(rmin..=rmax);
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::from_polar(lit(r), lit(theta))
}

/// Uniform in the disc of radius `r`.
pub fn in_disc<T: Real, R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex<T> {
    let u: f64 = rng.random_range(0.0..1.0);
    in_annulus_exact(rng, r * u.sqrt())
}

fn in_annulus_exact<T: Real, R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex<T> {
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::from_polar(lit(r), lit(theta))
}

/// Perturbation of modulus exactly `delta` with uniform phase.
pub fn perturbation<T: Real, R: Rng + ?Sized>(rng: &mut R, delta: f64) -> Complex<T> {
    in_annulus_exact(rng, delta)
}

pub fn standard<T: Real, R: Rng + ?Sized>(rng: &mut R, l: usize) -> StandardCoeffs<T> {
    let a = (0..l).map(|_| in_annulus(rng, OFFDIAG_MIN, OFFDIAG_MAX)).collect();
    let b = (0..l).map(|_| in_disc(rng, DIAG_RADIUS)).collect();
    StandardCoeffs::new(a, b).expect("generated coefficients are valid")
}

pub fn transmission<T: Real, R: Rng + ?Sized>(rng: &mut R, l: usize) -> TransmissionInstance<T> {
    loop {
        let alpha: Vec<Complex<T>> = (0..l).map(|_| in_annulus(rng, OFFDIAG_MIN, OFFDIAG_MAX)).collect();
        let beta = (0..l).map(|_| in_disc(rng, DIAG_RADIUS)).collect();
        let alpha_dot: Vec<Complex<T>> = (0..l).map(|_| in_annulus(rng, OFFDIAG_MIN, OFFDIAG_MAX)).collect();
        let beta_dot = (0..l).map(|_| in_disc(rng, DIAG_RADIUS)).collect();
        if (alpha[l - 1] - alpha_dot[l - 1]).norm() < lit(TAIL_GAP) {
            continue;
        }
        return TransmissionInstance::new(alpha, beta, alpha_dot, beta_dot).expect("valid by construction");
    }
}

/// Paper-configuration boundary polynomials of size `l`: random roots in the
/// disc of radius 2, leading coefficients with `|r0 - r1| ≥ TAIL_GAP`, roots of
/// `R0` and `R1` at least `0.1` apart. With `double_root`, the first two roots
/// of `R1` coincide (needs `l ≥ 3`).
pub fn paper_boundary<T: Real, R: Rng + ?Sized>(rng: &mut R, l: usize, double_root: bool) -> BoundaryPolys<T> {
    assert!(!double_root || l >= 3, "a double root in R1 needs deg R1 >= 2");
    loop {
        let r0: Complex<T> = in_annulus(rng, OFFDIAG_MIN, OFFDIAG_MAX);
        let r1: Complex<T> = in_annulus(rng, OFFDIAG_MIN, OFFDIAG_MAX);
        if (r0 - r1).norm() < lit(TAIL_GAP) {
            continue;
        }
        let roots0: Vec<Complex<T>> = (0..l).map(|_| in_disc(rng, DIAG_RADIUS)).collect();
        let mut roots1: Vec<Complex<T>> = (0..l - 1).map(|_| in_disc(rng, DIAG_RADIUS)).collect();
        if double_root {
            roots1[1] = roots1[0];
        }
        let p0 = Poly::from_roots(&roots0, r0).expect("nonzero leading");
        let p1 = Poly::from_roots(&roots1, r1).expect("nonzero leading");
        let separated = roots0.iter().all(|x| roots1.iter().all(|y| (x - y).norm() > lit(0.1)));
        if !separated || !poly_coprime(&p0, &p1, lit(1e-3)).unwrap_or(false) {
            continue;
        }
        if let Ok(bc) = BoundaryPolys::new(p0, p1, BoundaryConfig::Paper) {
            return bc;
        }
    }
}

/// Real symmetric Jacobi matrix with `A_n ∈ [0.5, 2]`, `B_n ∈ [-2, 2]`.
pub fn real_symmetric<T: Real, R: Rng + ?Sized>(rng: &mut R, l: usize) -> SymmetricJacobi<T> {
    let a = (0..l.saturating_sub(1))
        .map(|_| Complex::new(lit(rng.random_range(OFFDIAG_MIN..=OFFDIAG_MAX)), T::zero()))
        .collect();
    let b = (0..l)
        .map(|_| Complex::new(lit(rng.random_range(-DIAG_RADIUS..=DIAG_RADIUS)), T::zero()))
        .collect();
    SymmetricJacobi::new(a, b).expect("positive off-diagonal")
}
