//! The four commands, generic over the working precision.

use std::fmt::Write as _;

use dtep::forward::{
    char_poly_polybc, char_poly_transmission, solution_family, transmission_spectrum, two_spectra_forward,
    weyl_forward, FamilyKind,
};
use dtep::hochstadt::{solve_hochstadt_mixed_detailed, symmetric_to_standard};
use dtep::poly::laurent_expand;
use dtep::reduction::{solve_poly_bc_detailed, solve_transmission_detailed};
use dtep::roots::poly_roots;
use dtep::sample::{self, trial_rng};
use dtep::scalar::convert;
use dtep::stability::{stability_sweep, StabilityData, StabilityRow};
use dtep::weyl::{solve_two_spectra, solve_weyl};
use dtep::{
    BoundaryConfig, BoundaryPolys, Error, Poly, Real, Spectrum, StandardCoeffs, SymmetricJacobi, TransmissionInstance,
    TwoSpectra, WeylData, Wide, C64,
};

use crate::format::{Diagnostics, Document, File};

/// Largest size accepted by `roundtrip`.
pub const MAX_L: usize = 12;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVABILITY: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Double-double.
    Wide,
    Double,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Wide => "wide",
            Precision::Double => "double",
        }
    }
}

/// A command failure with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HankelConditionViolated { .. }
            | Error::SingularSystem
            | Error::SingularMatrix(_)
            | Error::CommonRoot
            | Error::SpectraNotDisjoint
            | Error::AmbiguousClustering(..)
            | Error::LeadingMismatch => EXIT_SOLVABILITY,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome<T> = Result<T, Failure>;

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn widen<T: Real>(v: &[C64]) -> Vec<dtep::scalar::Cx<T>> {
    convert::<f64, T>(v)
}

fn narrow<T: Real>(v: &[dtep::scalar::Cx<T>]) -> Vec<C64> {
    convert::<T, f64>(v)
}

fn standard_from<T: Real>(doc: &Document) -> Outcome<StandardCoeffs<T>> {
    match doc {
        Document::Standard { a, b } => Ok(StandardCoeffs::new(widen(a), widen(b))?),
        Document::Symmetric { a, b } => Ok(symmetric_to_standard(&SymmetricJacobi::new(widen(a), widen(b))?)),
        other => Err(Failure::input(format!("expected a standard or symmetric instance, got {}", other.kind()))),
    }
}

fn transmission_from<T: Real>(doc: &Document) -> Outcome<TransmissionInstance<T>> {
    match doc {
        Document::Transmission { alpha, beta, alpha_dot, beta_dot } => {
            Ok(TransmissionInstance::new(widen(alpha), widen(beta), widen(alpha_dot), widen(beta_dot))?)
        }
        other => Err(Failure::input(format!("expected a transmission instance, got {}", other.kind()))),
    }
}

fn boundary_from<T: Real>(doc: &Document) -> Outcome<BoundaryPolys<T>> {
    match doc {
        Document::Boundary { l, config, r0, r1 } => {
            let bc = BoundaryPolys::new(Poly::new(widen(r0)), Poly::new(widen(r1)), *config)?;
            if bc.size() != *l {
                return Err(Failure::input(format!("boundary polynomials imply size {}, file declares {l}", bc.size())));
            }
            Ok(bc)
        }
        other => Err(Failure::input(format!("expected a boundary document, got {}", other.kind()))),
    }
}

fn spectrum_from<T: Real>(doc: &Document, expected: usize) -> Outcome<Spectrum<T>> {
    match doc {
        Document::Spectrum { eigenvalues, .. } if eigenvalues.len() == expected => Ok(Spectrum::new(widen(eigenvalues))),
        Document::Spectrum { eigenvalues, .. } => Err(Error::SpectrumSize { expected, got: eigenvalues.len() }.into()),
        other => Err(Failure::input(format!("expected a spectrum document, got {}", other.kind()))),
    }
}

/// Re-checks the invariants of the domain type behind a freshly read document.
pub fn validate(doc: &Document) -> Outcome<()> {
    match doc {
        Document::Standard { .. } | Document::Symmetric { .. } => standard_from::<f64>(doc).map(|_| ()),
        Document::Transmission { .. } => transmission_from::<f64>(doc).map(|_| ()),
        Document::TransmissionData { alpha_dot, beta_dot, alpha_l } => {
            dtep::forward::build_boundary_polys(alpha_dot, beta_dot, *alpha_l)?;
            Ok(())
        }
        Document::SymmetricHead { a, .. } => match a.iter().position(|z| *z == C64::new(0.0, 0.0)) {
            Some(n) => Err(Failure::input(format!("A_{} must be nonzero", n + 1))),
            None => Ok(()),
        },
        Document::Boundary { .. } => boundary_from::<f64>(doc).map(|_| ()),
        Document::Weyl { m } => WeylData::new(m.clone()).map(|_| ()).map_err(Into::into),
        Document::TwoSpectra { .. } | Document::Spectrum { .. } | Document::CharPoly { .. } => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardWhat {
    Spectrum,
    TwoSpectra,
    Weyl,
    CharPoly,
}

pub fn forward(input: &Document, what: ForwardWhat, boundary: Option<&Document>, precision: Precision) -> Outcome<File> {
    match precision {
        Precision::Wide => forward_in::<Wide>(input, what, boundary),
        Precision::Double => forward_in::<f64>(input, what, boundary),
    }
}

fn forward_in<T: Real>(input: &Document, what: ForwardWhat, boundary: Option<&Document>) -> Outcome<File> {
    let l = input.l();
    let char_poly: Poly<T> = match (input, boundary) {
        (Document::Transmission { .. }, None) => char_poly_transmission(&transmission_from::<T>(input)?),
        (Document::Transmission { .. }, Some(_)) => {
            return Err(Failure::input("transmission instances carry their own boundary data; drop --boundary"))
        }
        (_, Some(bc)) => char_poly_polybc(&standard_from::<T>(input)?, &boundary_from::<T>(bc)?)?,
        (_, None) => solution_family(&standard_from::<T>(input)?, FamilyKind::P).last().clone(),
    };
    let only_standard = |name: &str| {
        if boundary.is_some() || matches!(input, Document::Transmission { .. }) {
            Err(Failure::input(format!("{name} is defined for standard or symmetric instances without boundary polynomials")))
        } else {
            Ok(())
        }
    };
    let doc = match what {
        ForwardWhat::CharPoly => Document::CharPoly { l, coefficients: narrow(char_poly.coeffs()) },
        ForwardWhat::Spectrum => Document::Spectrum { l, eigenvalues: narrow(poly_roots(&char_poly)?.values()) },
        ForwardWhat::Weyl => {
            only_standard("Weyl data")?;
            Document::Weyl { m: narrow(weyl_forward(&standard_from::<T>(input)?).m()) }
        }
        ForwardWhat::TwoSpectra => {
            only_standard("the two-spectra data")?;
            let ts = two_spectra_forward(&standard_from::<T>(input)?)?;
            Document::TwoSpectra { mu: narrow(ts.mu.values()), nu: narrow(ts.nu.values()) }
        }
    };
    Ok(doc.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseMode {
    Weyl,
    TwoSpectra,
    PolyBc,
    Transmission,
    Hochstadt,
}

fn diagnostics<T: Real>(w: &WeylData<T>) -> Diagnostics {
    Diagnostics { hankel_condition: "Hankel condition satisfied".into(), hankel_determinants: narrow(w.deltas()) }
}

fn standard_doc<T: Real>(s: &StandardCoeffs<T>) -> Document {
    Document::Standard { a: narrow(&s.a()[..s.l() - 1]), b: narrow(s.b()) }
}

pub fn inverse(mode: InverseMode, input: &Document, spectrum: Option<&Document>, precision: Precision) -> Outcome<File> {
    match precision {
        Precision::Wide => inverse_in::<Wide>(mode, input, spectrum),
        Precision::Double => inverse_in::<f64>(mode, input, spectrum),
    }
}

fn inverse_in<T: Real>(mode: InverseMode, input: &Document, spectrum: Option<&Document>) -> Outcome<File> {
    let need_spectrum = || spectrum.ok_or_else(|| Failure::input("this mode needs --spectrum"));
    let l = input.l();
    match (mode, input) {
        (InverseMode::Weyl, Document::Weyl { m }) => {
            let w = WeylData::new(widen::<T>(m))?;
            let (s, _) = solve_weyl(&w)?;
            Ok(File { doc: standard_doc(&s), diagnostics: Some(diagnostics(&w)) })
        }
        (InverseMode::TwoSpectra, Document::TwoSpectra { mu, nu }) => {
            let ts = TwoSpectra { mu: Spectrum::new(widen::<T>(mu)), nu: Spectrum::new(widen::<T>(nu)) };
            let s = solve_two_spectra(&ts)?;
            // the same Weyl coefficients the solver inverted
            let one = dtep::scalar::cx(1.0, 0.0);
            let num = Poly::from_roots(ts.nu.values(), one)?;
            let den = Poly::from_roots(ts.mu.values(), one)?;
            let w = WeylData::new(laurent_expand(&num, &den, 2 * l)?)?;
            Ok(File { doc: standard_doc(&s), diagnostics: Some(diagnostics(&w)) })
        }
        (InverseMode::PolyBc, Document::Boundary { .. }) => {
            let bc = boundary_from::<T>(input)?;
            let sol = solve_poly_bc_detailed(&bc, &spectrum_from(need_spectrum()?, 2 * l - 1)?)?;
            Ok(File { doc: standard_doc(&sol.coeffs), diagnostics: Some(diagnostics(&sol.weyl)) })
        }
        (InverseMode::Transmission, Document::Transmission { .. } | Document::TransmissionData { .. }) => {
            let (alpha_dot, beta_dot, alpha_l) = match input {
                Document::Transmission { alpha, alpha_dot, beta_dot, .. } => (alpha_dot, beta_dot, alpha[l - 1]),
                Document::TransmissionData { alpha_dot, beta_dot, alpha_l } => (alpha_dot, beta_dot, *alpha_l),
                _ => unreachable!(),
            };
            let spec = spectrum_from::<T>(need_spectrum()?, 2 * l - 1)?;
            let (ad, bd) = (widen::<T>(alpha_dot), widen::<T>(beta_dot));
            let sol = solve_transmission_detailed(&ad, &bd, widen::<T>(&[alpha_l])[0], &spec)?;
            let doc = Document::Transmission {
                alpha: narrow(&sol.alpha),
                beta: narrow(&sol.beta),
                alpha_dot: alpha_dot.clone(),
                beta_dot: beta_dot.clone(),
            };
            Ok(File { doc, diagnostics: Some(diagnostics(&sol.reduced.weyl)) })
        }
        (InverseMode::Hochstadt, Document::SymmetricHead { a, b, .. } | Document::Symmetric { a, b }) => {
            if l % 2 == 0 || l < 3 {
                return Err(Failure::input(format!("half-data reconstruction needs odd l >= 3, got {l}")));
            }
            let m = (l + 1) / 2;
            let mu = spectrum_from::<T>(need_spectrum()?, l)?;
            let (j, reduced) = solve_hochstadt_mixed_detailed(&widen::<T>(&a[..m - 1]), &widen::<T>(&b[..m - 1]), &mu)?;
            let doc = Document::Symmetric { a: narrow(j.off_diagonal()), b: narrow(j.diagonal()) };
            Ok(File { doc, diagnostics: Some(diagnostics(&reduced.weyl)) })
        }
        (_, other) => Err(Failure::input(format!("mode {mode:?} cannot use a {} document", other.kind()))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Standard,
    Transmission,
    Symmetric,
    Boundary,
}

/// Random instance from trial 0 of `seed`, in the ranges used everywhere else.
pub fn generate(kind: Kind, l: usize, seed: u64) -> Outcome<File> {
    if l == 0 || l > MAX_L {
        return Err(Failure::input(format!("l must lie in 1..={MAX_L}, got {l}")));
    }
    let mut rng = trial_rng(seed, 0);
    let doc = match kind {
        Kind::Standard => standard_doc(&sample::standard::<f64, _>(&mut rng, l)),
        Kind::Transmission => {
            let t: TransmissionInstance<f64> = sample::transmission(&mut rng, l);
            Document::Transmission { alpha: t.alpha, beta: t.beta, alpha_dot: t.alpha_dot, beta_dot: t.beta_dot }
        }
        Kind::Symmetric => {
            let j: SymmetricJacobi<f64> = sample::real_symmetric(&mut rng, l);
            Document::Symmetric { a: j.off_diagonal().to_vec(), b: j.diagonal().to_vec() }
        }
        Kind::Boundary => {
            let bc: BoundaryPolys<f64> = sample::paper_boundary(&mut rng, l, false);
            Document::Boundary { l, config: BoundaryConfig::Paper, r0: bc.r0.into_coeffs(), r1: bc.r1.into_coeffs() }
        }
    };
    Ok(doc.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundtripMode {
    Weyl,
    TwoSpectra,
    PolyBc,
    Transmission,
    Hochstadt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundtripReport {
    pub max_error: f64,
    /// `(trial, error or solver message)` for every trial over tolerance.
    pub failures: Vec<(usize, String)>,
    pub text: String,
}

fn roundtrip_trial<T: Real>(mode: RoundtripMode, l: usize, seed: u64, k: usize) -> Result<f64, Error> {
    let mut rng = trial_rng(seed, k as u64);
    match mode {
        RoundtripMode::Weyl => {
            let s = sample::standard::<f64, _>(&mut rng, l).convert::<T>();
            Ok(to_f64(solve_weyl(&weyl_forward(&s))?.0.max_abs_diff(&s)))
        }
        RoundtripMode::TwoSpectra => {
            let s = sample::standard::<f64, _>(&mut rng, l).convert::<T>();
            Ok(to_f64(solve_two_spectra(&two_spectra_forward(&s)?)?.max_abs_diff(&s)))
        }
        RoundtripMode::PolyBc => {
            let s = sample::standard::<f64, _>(&mut rng, l).convert::<T>();
            let bc = sample::paper_boundary::<f64, _>(&mut rng, l, false).convert::<T>();
            let spectrum = poly_roots(&char_poly_polybc(&s, &bc)?)?;
            Ok(to_f64(solve_poly_bc_detailed(&bc, &spectrum)?.coeffs.max_abs_diff(&s)))
        }
        RoundtripMode::Transmission => {
            let t = sample::transmission::<f64, _>(&mut rng, l).convert::<T>();
            let sol = solve_transmission_detailed(&t.alpha_dot, &t.beta_dot, t.alpha_l(), &transmission_spectrum(&t)?)?;
            Ok(to_f64(t.max_abs_diff_alpha_beta(&sol.alpha, &sol.beta)))
        }
        RoundtripMode::Hochstadt => {
            let j = sample::real_symmetric::<f64, _>(&mut rng, l).convert::<T>();
            let m = (l + 1) / 2;
            let mu = poly_roots(solution_family(&symmetric_to_standard(&j), FamilyKind::P).last())?;
            let (r, _) = solve_hochstadt_mixed_detailed(&j.off_diagonal()[..m - 1], &j.diagonal()[..m - 1], &mu)?;
            Ok(to_f64(r.max_abs_diff(&j)))
        }
    }
}

pub fn roundtrip(
    mode: RoundtripMode,
    l: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    precision: Precision,
) -> Outcome<RoundtripReport> {
    if l == 0 || l > MAX_L {
        return Err(Failure::input(format!("l must lie in 1..={MAX_L}, got {l}")));
    }
    if mode == RoundtripMode::Hochstadt && (l % 2 == 0 || l < 3) {
        return Err(Failure::input(format!("half-data reconstruction needs odd l >= 3, got {l}")));
    }
    let mut text = format!(
        "roundtrip mode={mode:?} l={l} trials={trials} seed={seed} precision={} tol={tol:e}\n",
        precision.name()
    );
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    for k in 0..trials {
        let r = match precision {
            Precision::Wide => roundtrip_trial::<Wide>(mode, l, seed, k),
            Precision::Double => roundtrip_trial::<f64>(mode, l, seed, k),
        };
        match r {
            Ok(e) if e <= tol => max_error = max_error.max(e),
            Ok(e) => {
                max_error = max_error.max(if e.is_nan() { f64::INFINITY } else { e });
                failures.push((k, format!("error {e:.3e}")));
            }
            Err(e) => {
                max_error = f64::INFINITY;
                failures.push((k, e.to_string()));
            }
        }
    }
    for (k, why) in &failures {
        let _ = writeln!(text, "trial {k} failed (seed {seed}, trial {k}): {why}");
    }
    let _ = writeln!(text, "max error {max_error:.3e}");
    if failures.is_empty() {
        text.push_str("ok\n");
    } else {
        let _ = writeln!(text, "FAILED {} of {trials} trials; failing seed {seed}", failures.len());
    }
    Ok(RoundtripReport { max_error, failures, text })
}

pub fn stability(
    input: &Document,
    boundary: Option<&Document>,
    deltas: &[f64],
    trials: usize,
    seed: u64,
    precision: Precision,
) -> Outcome<(String, Vec<StabilityRow>)> {
    match precision {
        Precision::Wide => stability_in::<Wide>(input, boundary, deltas, trials, seed, precision),
        Precision::Double => stability_in::<f64>(input, boundary, deltas, trials, seed, precision),
    }
}

fn stability_in<T: Real>(
    input: &Document,
    boundary: Option<&Document>,
    deltas: &[f64],
    trials: usize,
    seed: u64,
    precision: Precision,
) -> Outcome<(String, Vec<StabilityRow>)> {
    if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
        return Err(Failure::input(format!("perturbation sizes must be finite and non-negative, got {d}")));
    }
    let data: StabilityData<T> = match (input, boundary) {
        (Document::Transmission { .. }, None) => StabilityData::from_transmission(&transmission_from(input)?)?,
        (Document::Weyl { m }, None) => StabilityData::Weyl(WeylData::new(widen(m))?),
        (Document::Standard { .. } | Document::Symmetric { .. }, None) => {
            StabilityData::from_standard(&standard_from(input)?)
        }
        (Document::Standard { .. } | Document::Symmetric { .. }, Some(bc)) => {
            StabilityData::from_poly_bc(&standard_from(input)?, &boundary_from(bc)?)?
        }
        (other, _) => {
            return Err(Failure::input(format!("no stability experiment for a {} document with these inputs", other.kind())))
        }
    };
    let rows = stability_sweep(&data, deltas, trials, seed)?;
    let mut text = format!(
        "stability problem={} l={} trials={trials} seed={seed} precision={}\n",
        data.name(),
        input.l(),
        precision.name()
    );
    text.push_str("delta       solved  outside_eps_ball  max_error   mean_error  mean_ratio  max_ratio\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<10.3e}  {:>6}  {:>16}  {:<10.3e}  {:<10.3e}  {:<10.3e}  {:.3e}",
            r.delta,
            r.trials - r.outside,
            r.outside,
            r.max_error,
            r.mean_error,
            r.mean_ratio,
            r.max_ratio
        );
    }
    Ok((text, rows))
}
