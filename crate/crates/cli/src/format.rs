//! On-disk documents.
//!
//! Every artifact is one JSON object with `kind` and `l` first, then the
//! arrays of that kind. Complex numbers are `[re, im]` pairs printed with 17
//! significant digits, so reading a file and writing it back reproduces it
//! byte for byte.
//!
//! Kinds and their arrays:
//!
//! | kind | arrays |
//! |---|---|
//! | `standard` | `a` (`l - 1` or `l` entries), `b` |
//! | `transmission` | `alpha`, `beta`, `alpha_dot`, `beta_dot` |
//! | `transmission-data` | `alpha_dot`, `beta_dot`, `alpha_l` (one entry) |
//! | `symmetric` | `A` (`l - 1`), `B` (`l`) |
//! | `symmetric-head` | `A`, `B` (`(l - 1) / 2` each) |
//! | `boundary` | `r0`, `r1` (ascending coefficients); also `config` |
//! | `weyl` | `M` (`2l` entries) |
//! | `spectrum` | `eigenvalues` (`l` or `2l - 1` entries) |
//! | `two-spectra` | `mu` (`l`), `nu` (`l - 1`) |
//! | `char-poly` | `coefficients` (ascending) |
//!
//! Inverse runs append a `diagnostics` object with the Hankel determinants.

use std::fmt::Write as _;

use dtep::{BoundaryConfig, C64};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Standard { a: Vec<C64>, b: Vec<C64> },
    Transmission { alpha: Vec<C64>, beta: Vec<C64>, alpha_dot: Vec<C64>, beta_dot: Vec<C64> },
    TransmissionData { alpha_dot: Vec<C64>, beta_dot: Vec<C64>, alpha_l: C64 },
    Symmetric { a: Vec<C64>, b: Vec<C64> },
    SymmetricHead { l: usize, a: Vec<C64>, b: Vec<C64> },
    Boundary { l: usize, config: BoundaryConfig, r0: Vec<C64>, r1: Vec<C64> },
    Weyl { m: Vec<C64> },
    Spectrum { l: usize, eigenvalues: Vec<C64> },
    TwoSpectra { mu: Vec<C64>, nu: Vec<C64> },
    CharPoly { l: usize, coefficients: Vec<C64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// Name of the condition checked and whether it held.
    pub hankel_condition: String,
    /// `Δ_1..Δ_{l-1}`.
    pub hankel_determinants: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct File {
    pub doc: Document,
    pub diagnostics: Option<Diagnostics>,
}

impl From<Document> for File {
    fn from(doc: Document) -> Self {
        File { doc, diagnostics: None }
    }
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Standard { .. } => "standard",
            Document::Transmission { .. } => "transmission",
            Document::TransmissionData { .. } => "transmission-data",
            Document::Symmetric { .. } => "symmetric",
            Document::SymmetricHead { .. } => "symmetric-head",
            Document::Boundary { .. } => "boundary",
            Document::Weyl { .. } => "weyl",
            Document::Spectrum { .. } => "spectrum",
            Document::TwoSpectra { .. } => "two-spectra",
            Document::CharPoly { .. } => "char-poly",
        }
    }

    pub fn l(&self) -> usize {
        match self {
            Document::Standard { b, .. } => b.len(),
            Document::Transmission { alpha, .. } => alpha.len(),
            Document::TransmissionData { alpha_dot, .. } => alpha_dot.len(),
            Document::Symmetric { b, .. } => b.len(),
            Document::Weyl { m } => m.len() / 2,
            Document::TwoSpectra { mu, .. } => mu.len(),
            Document::SymmetricHead { l, .. }
            | Document::Boundary { l, .. }
            | Document::Spectrum { l, .. }
            | Document::CharPoly { l, .. } => *l,
        }
    }

    fn arrays(&self) -> Vec<(&'static str, &[C64])> {
        match self {
            Document::Standard { a, b } => vec![("a", a), ("b", b)],
            Document::Transmission { alpha, beta, alpha_dot, beta_dot } => {
                vec![("alpha", alpha), ("beta", beta), ("alpha_dot", alpha_dot), ("beta_dot", beta_dot)]
            }
            Document::TransmissionData { alpha_dot, beta_dot, alpha_l } => {
                vec![("alpha_dot", alpha_dot), ("beta_dot", beta_dot), ("alpha_l", std::slice::from_ref(alpha_l))]
            }
            Document::Symmetric { a, b } | Document::SymmetricHead { a, b, .. } => vec![("A", a), ("B", b)],
            Document::Boundary { r0, r1, .. } => vec![("r0", r0), ("r1", r1)],
            Document::Weyl { m } => vec![("M", m)],
            Document::Spectrum { eigenvalues, .. } => vec![("eigenvalues", eigenvalues)],
            Document::TwoSpectra { mu, nu } => vec![("mu", mu), ("nu", nu)],
            Document::CharPoly { coefficients, .. } => vec![("coefficients", coefficients)],
        }
    }

    /// Shape checks that do not need the solvers.
    fn check_shape(&self) -> Result<(), String> {
        let l = self.l();
        if l == 0 {
            return Err("size l must be positive".into());
        }
        let want = |name: &str, got: usize, ok: bool, expected: String| {
            if ok {
                Ok(())
            } else {
                Err(format!("{name} has {got} entries, expected {expected}"))
            }
        };
        match self {
            Document::SymmetricHead { a, b, .. } => {
                if l % 2 == 0 || l < 3 {
                    return Err(format!("symmetric-head needs odd l >= 3, got {l}"));
                }
                let m1 = (l - 1) / 2;
                want("A", a.len(), a.len() == m1, m1.to_string())?;
                want("B", b.len(), b.len() == m1, m1.to_string())
            }
            Document::Spectrum { eigenvalues, .. } => {
                let n = eigenvalues.len();
                want("eigenvalues", n, n == l || n == 2 * l - 1, format!("{l} or {}", 2 * l - 1))
            }
            Document::TwoSpectra { nu, .. } => want("nu", nu.len(), nu.len() + 1 == l, (l - 1).to_string()),
            Document::Weyl { m } => want("M", m.len(), m.len() % 2 == 0, "an even count".into()),
            Document::CharPoly { coefficients, .. } => {
                want("coefficients", coefficients.len(), !coefficients.is_empty(), "at least one".into())
            }
            _ => Ok(()),
        }
    }
}

/// `x` with 17 significant digits; parses back to the same `f64`.
fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // not valid JSON; the reader rejects it with a clear message
        format!("\"{x}\"")
    }
}

fn complex_array(v: &[C64]) -> String {
    let items: Vec<String> = v.iter().map(|z| format!("[{}, {}]", number(z.re), number(z.im))).collect();
    format!("[{}]", items.join(", "))
}

pub fn write(file: &File) -> String {
    let doc = &file.doc;
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"kind\": \"{}\",", doc.kind());
    let _ = write!(out, "  \"l\": {}", doc.l());
    if let Document::Boundary { config, .. } = doc {
        let _ = write!(out, ",\n  \"config\": \"{}\"", config.name());
    }
    for (name, values) in doc.arrays() {
        let _ = write!(out, ",\n  \"{name}\": {}", complex_array(values));
    }
    if let Some(d) = &file.diagnostics {
        let _ = write!(
            out,
            ",\n  \"diagnostics\": {{\n    \"hankel_condition\": {},\n    \"hankel_determinants\": {}\n  }}",
            Value::String(d.hankel_condition.clone()),
            complex_array(&d.hankel_determinants)
        );
    }
    out.push_str("\n}\n");
    out
}

fn complex_list(obj: &Map<String, Value>, key: &str) -> Result<Vec<C64>, String> {
    let value = obj.get(key).ok_or_else(|| format!("missing field \"{key}\""))?;
    parse_complex_list(value).map_err(|e| format!("field \"{key}\": {e}"))
}

fn parse_complex_list(value: &Value) -> Result<Vec<C64>, String> {
    let items = value.as_array().ok_or("expected an array of [re, im] pairs")?;
    items
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let pair = z.as_array().filter(|p| p.len() == 2).ok_or(format!("entry {i} is not a [re, im] pair"))?;
            let part = |v: &Value| v.as_f64().filter(|x| x.is_finite()).ok_or(format!("entry {i} has a non-finite or non-numeric part"));
            Ok(C64::new(part(&pair[0])?, part(&pair[1])?))
        })
        .collect()
}

pub fn read(text: &str) -> Result<File, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("not a valid document: {e}"))?;
    let obj = value.as_object().ok_or("document must be a JSON object")?;
    let kind = obj.get("kind").and_then(Value::as_str).ok_or("missing string field \"kind\"")?;
    let l = obj
        .get("l")
        .and_then(Value::as_u64)
        .ok_or("missing non-negative integer field \"l\"")? as usize;
    let get = |key: &str| complex_list(obj, key);
    let doc = match kind {
        "standard" => Document::Standard { a: get("a")?, b: get("b")? },
        "transmission" => Document::Transmission {
            alpha: get("alpha")?,
            beta: get("beta")?,
            alpha_dot: get("alpha_dot")?,
            beta_dot: get("beta_dot")?,
        },
        "transmission-data" => {
            let alpha_l = get("alpha_l")?;
            if alpha_l.len() != 1 {
                return Err("alpha_l must hold exactly one entry".into());
            }
            Document::TransmissionData { alpha_dot: get("alpha_dot")?, beta_dot: get("beta_dot")?, alpha_l: alpha_l[0] }
        }
        "symmetric" => Document::Symmetric { a: get("A")?, b: get("B")? },
        "symmetric-head" => Document::SymmetricHead { l, a: get("A")?, b: get("B")? },
        "boundary" => {
            let config = match obj.get("config").and_then(Value::as_str) {
                Some("paper") | None => BoundaryConfig::Paper,
                Some("hochstadt") => BoundaryConfig::Hochstadt,
                Some(other) => return Err(format!("unknown boundary config \"{other}\"")),
            };
            Document::Boundary { l, config, r0: get("r0")?, r1: get("r1")? }
        }
        "weyl" => Document::Weyl { m: get("M")? },
        "spectrum" => Document::Spectrum { l, eigenvalues: get("eigenvalues")? },
        "two-spectra" => Document::TwoSpectra { mu: get("mu")?, nu: get("nu")? },
        "char-poly" => Document::CharPoly { l, coefficients: get("coefficients")? },
        other => return Err(format!("unknown kind \"{other}\"")),
    };
    if doc.l() != l {
        return Err(format!("declared l = {l} does not match the {} arrays (l = {})", kind, doc.l()));
    }
    doc.check_shape()?;
    let diagnostics = match obj.get("diagnostics") {
        None => None,
        Some(d) => {
            let d = d.as_object().ok_or("diagnostics must be an object")?;
            Some(Diagnostics {
                hankel_condition: d
                    .get("hankel_condition")
                    .and_then(Value::as_str)
                    .ok_or("diagnostics need a \"hankel_condition\" string")?
                    .to_string(),
                hankel_determinants: complex_list(d, "hankel_determinants")?,
            })
        }
    };
    Ok(File { doc, diagnostics })
}
