//! Perturbation experiments for the local stability estimates.
//!
//! Every datum of an inverse problem is moved by an independent complex
//! perturbation of modulus exactly `δ`, the problem is solved again, and the
//! recovered coefficients are compared with the reconstruction from the
//! unperturbed data. Solvability failures are counted separately: the
//! estimates only hold for `δ` below a problem-dependent radius.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::forward::{
    char_poly_polybc, reduce_transmission, transmission_spectrum, weyl_forward, BoundaryPolys, StandardCoeffs,
    TransmissionInstance, WeylData,
};
use crate::poly::Poly;
use crate::reduction::{solve_poly_bc, solve_transmission};
use crate::roots::{poly_roots, Spectrum};
use crate::sample::{perturbation, trial_rng};
use crate::scalar::{convert_one, Real};
use crate::weyl::solve_weyl;

/// Known data of one inverse problem.
#[derive(Debug, Clone, PartialEq)]
pub enum StabilityData<T: Real> {
    /// Weyl coefficients; `M_1 = 1` is kept fixed.
    Weyl(WeylData<T>),
    /// Eigenvalues and both boundary polynomials.
    PolyBc { bc: BoundaryPolys<T>, spectrum: Spectrum<T> },
    /// Eigenvalues, the dotted coefficients and `α_l`.
    Transmission {
        alpha_dot: Vec<Complex<T>>,
        beta_dot: Vec<Complex<T>>,
        alpha_l: Complex<T>,
        spectrum: Spectrum<T>,
    },
}

impl<T: Real> StabilityData<T> {
    pub fn from_standard(s: &StandardCoeffs<T>) -> Self {
        StabilityData::Weyl(weyl_forward(s))
    }

    pub fn from_poly_bc(s: &StandardCoeffs<T>, bc: &BoundaryPolys<T>) -> Result<Self> {
        let spectrum = poly_roots(&char_poly_polybc(s, bc)?)?;
        Ok(StabilityData::PolyBc { bc: bc.clone(), spectrum })
    }

    pub fn from_transmission(t: &TransmissionInstance<T>) -> Result<Self> {
        // validates the reduction before any perturbation is applied
        reduce_transmission(t)?;
        Ok(StabilityData::Transmission {
            alpha_dot: t.alpha_dot.clone(),
            beta_dot: t.beta_dot.clone(),
            alpha_l: t.alpha_l(),
            spectrum: transmission_spectrum(t)?,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            StabilityData::Weyl(_) => "weyl",
            StabilityData::PolyBc { .. } => "polybc",
            StabilityData::Transmission { .. } => "transmission",
        }
    }

    /// Recovered coefficients as one flat vector: `(a_1..a_{l-1}, b)` or `(α, β)`.
    pub fn solve(&self) -> Result<Vec<Complex<T>>> {
        match self {
            StabilityData::Weyl(w) => solve_weyl(w).map(|(s, _)| flatten(&s)),
            StabilityData::PolyBc { bc, spectrum } => solve_poly_bc(bc, spectrum).map(|s| flatten(&s)),
            StabilityData::Transmission { alpha_dot, beta_dot, alpha_l, spectrum } => {
                solve_transmission(alpha_dot, beta_dot, *alpha_l, spectrum).map(|(mut a, b)| {
                    a.extend(b);
                    a
                })
            }
        }
    }

    /// Copy with every datum moved by `δ` in a uniformly random direction.
    /// Noise is drawn in `f64`, so runs at different precisions see the same
    /// perturbations.
    pub fn perturbed<R: Rng + ?Sized>(&self, rng: &mut R, delta: f64) -> Result<Self> {
        let mut bump = |z: &Complex<T>| *z + convert_one::<f64, T>(perturbation(rng, delta));
        let mut bump_all = |v: &[Complex<T>]| v.iter().map(&mut bump).collect::<Vec<_>>();
        Ok(match self {
            StabilityData::Weyl(w) => {
                let mut m = bump_all(w.m());
                m[0] = w.m()[0];
                StabilityData::Weyl(WeylData::new(m)?)
            }
            StabilityData::PolyBc { bc, spectrum } => {
                let r0 = Poly::new(bump_all(bc.r0.coeffs()));
                let r1 = Poly::new(bump_all(bc.r1.coeffs()));
                let spectrum = Spectrum::new(bump_all(spectrum.values()));
                StabilityData::PolyBc { bc: BoundaryPolys::new(r0, r1, bc.config)?, spectrum }
            }
            StabilityData::Transmission { alpha_dot, beta_dot, alpha_l, spectrum } => {
                let alpha_dot = bump_all(alpha_dot);
                let beta_dot = bump_all(beta_dot);
                let spectrum = Spectrum::new(bump_all(spectrum.values()));
                let alpha_l = bump_all(std::slice::from_ref(alpha_l))[0];
                StabilityData::Transmission { alpha_dot, beta_dot, alpha_l, spectrum }
            }
        })
    }
}

fn flatten<T: Real>(s: &StandardCoeffs<T>) -> Vec<Complex<T>> {
    let l = s.l();
    s.a()[..l - 1].iter().chain(s.b()).copied().collect()
}

/// Failures that mean the perturbed data left the solvability neighbourhood,
/// as opposed to malformed input.
pub fn is_solvability_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::HankelConditionViolated { .. }
            | Error::SingularSystem
            | Error::DegenerateLeading
            | Error::CommonRoot
            | Error::ConfigMismatch(_)
            | Error::InvalidInstance(_)
    )
}

/// Summary for one perturbation size.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityRow {
    pub delta: f64,
    pub trials: usize,
    /// Trials whose perturbed problem could not be solved.
    pub outside: usize,
    pub max_error: f64,
    pub mean_error: f64,
    /// `mean_error / δ`; zero when `δ = 0`.
    pub mean_ratio: f64,
    pub max_ratio: f64,
}

/// Runs `trials` perturbations for each `δ` and tabulates the coefficient
/// errors. Trial `k` of every `δ` uses generator `trial_rng(seed, k)`.
pub fn stability_sweep<T: Real>(
    data: &StabilityData<T>,
    deltas: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<StabilityRow>> {
    let base = data.solve()?;
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let mut errors = Vec::with_capacity(trials);
        let mut outside = 0;
        for k in 0..trials {
            let mut rng = trial_rng(seed, k as u64);
            let solved = data.perturbed(&mut rng, delta).and_then(|p| p.solve());
            match solved {
                Ok(x) => {
                    let err = x.iter().zip(&base).map(|(u, v)| (u - v).norm()).fold(T::zero(), T::max);
                    errors.push(err.to_f64().unwrap_or(f64::INFINITY));
                }
                Err(e) if is_solvability_failure(&e) => outside += 1,
                Err(e) => return Err(e),
            }
        }
        let max_error = errors.iter().copied().fold(0.0, f64::max);
        let mean_error = if errors.is_empty() { f64::NAN } else { errors.iter().sum::<f64>() / errors.len() as f64 };
        let ratio = |e: f64| if delta > 0.0 { e / delta } else { 0.0 };
        rows.push(StabilityRow {
            delta,
            trials,
            outside,
            max_error,
            mean_error,
            mean_ratio: ratio(mean_error),
            max_ratio: ratio(max_error),
        });
    }
    Ok(rows)
}

/// Largest over smallest mean ratio among rows with `δ > 0` and at least one
/// solved trial.
pub fn ratio_spread(rows: &[StabilityRow]) -> f64 {
    let ratios: Vec<f64> = rows.iter().filter(|r| r.delta > 0.0 && r.mean_ratio.is_finite()).map(|r| r.mean_ratio).collect();
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    hi / lo
}
