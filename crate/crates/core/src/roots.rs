//! Polynomial roots, spectra and multiplicity clustering.
//!
//! Roots are the eigenvalues of the balanced companion matrix of the monic
//! polynomial, computed with a single-shift complex QR iteration on the
//! (already Hessenberg) companion form, then polished with one guarded Newton
//! step each.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{from_usize, max_norm, Real};

/// Multiset of complex eigenvalues together with the tolerance used to decide
/// when two of them coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Real> {
    values: Vec<Complex<T>>,
    tol: T,
}

impl<T: Real> Spectrum<T> {
    /// Spectrum with the default clustering tolerance `CLUSTER_REL · max(1, max |λ|)`.
    pub fn new(values: Vec<Complex<T>>) -> Self {
        let tol = default_tol(&values);
        Spectrum { values, tol }
    }

    pub fn with_tol(values: Vec<Complex<T>>, tol: T) -> Self {
        Spectrum { values, tol }
    }

    pub fn empty() -> Self {
        Spectrum { values: Vec::new(), tol: T::CLUSTER_REL }
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same values in another precision, with that precision's default tolerance.
    pub fn convert<U: Real>(&self) -> Spectrum<U> {
        Spectrum::new(crate::scalar::convert(&self.values))
    }

    pub fn cluster(&self) -> Result<RootMultiset<T>> {
        cluster_roots(self, self.tol)
    }

    /// Values sorted by real part, then imaginary part.
    pub fn sorted(&self) -> Vec<Complex<T>> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
        });
        v
    }

    /// Largest distance between paired elements under a greedy nearest
    /// matching; `None` when the sizes differ.
    pub fn matching_distance(&self, other: &Spectrum<T>) -> Option<T> {
        if self.len() != other.len() {
            return None;
        }
        let mut unused: Vec<Complex<T>> = other.values.clone();
        let mut worst = T::zero();
        for &z in &self.values {
            let (k, d) = unused
                .iter()
                .enumerate()
                .map(|(k, w)| (k, (z - w).norm()))
                .fold((0, T::infinity()), |best, cur| if cur.1 < best.1 { cur } else { best });
            unused.swap_remove(k);
            worst = worst.max(d);
        }
        Some(worst)
    }
}

fn default_tol<T: Real>(values: &[Complex<T>]) -> T {
    T::CLUSTER_REL * max_norm(values).max(T::one())
}

/// Distinct roots with their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset<T: Real> {
    pub distinct_roots: Vec<Complex<T>>,
    pub multiplicities: Vec<usize>,
}

impl<T: Real> RootMultiset<T> {
    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// Greedy clustering: a value joins the first cluster whose members all lie
/// within `tol` of it. Cluster representatives are member means.
pub fn cluster_roots<T: Real>(s: &Spectrum<T>, tol: T) -> Result<RootMultiset<T>> {
    let mut clusters: Vec<Vec<Complex<T>>> = Vec::new();
    for &z in s.values() {
        match clusters.iter_mut().find(|c| c.iter().all(|w| (z - w).norm() <= tol)) {
            Some(c) => c.push(z),
            None => clusters.push(vec![z]),
        }
    }
    let distinct: Vec<Complex<T>> = clusters
        .iter()
        .map(|c| c.iter().fold(Complex::zero(), |a, &b| a + b) / from_usize::<T>(c.len()))
        .collect();
    let two_tol = tol + tol;
    for i in 0..distinct.len() {
        for j in i + 1..distinct.len() {
            if (distinct[i] - distinct[j]).norm() <= two_tol {
                return Err(Error::AmbiguousClustering(i, j));
            }
        }
    }
    Ok(RootMultiset {
        distinct_roots: distinct,
        multiplicities: clusters.iter().map(Vec::len).collect(),
    })
}

/// All roots of `p` with multiplicity.
pub fn poly_roots<T: Real>(p: &Poly<T>) -> Result<Spectrum<T>> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::DegreeZero),
        Some(n) => n,
    };
    let lead = p.leading();
    let monic: Vec<Complex<T>> = p.coeffs().iter().map(|&c| c / lead).collect();
    // zero roots are split off exactly
    let zeros = monic.iter().take_while(|c| c.is_zero()).count();
    let reduced = &monic[zeros..];
    let m = n - zeros;
    let mut roots = vec![Complex::zero(); zeros];
    if m > 0 {
        let mut h = companion(reduced);
        balance(&mut h);
        let mut eig = hessenberg_eigenvalues(h)?;
        let dp = p.scaled_derivative(1);
        for z in eig.iter_mut() {
            *z = newton_polish(p, &dp, *z);
        }
        roots.extend(eig);
    }
    let tol = default_tol(&roots);
    Ok(Spectrum::with_tol(roots, tol))
}

/// `poly_roots` followed by clustering at the spectrum's tolerance.
pub fn poly_root_multiset<T: Real>(p: &Poly<T>, tol: T) -> Result<RootMultiset<T>> {
    let s = poly_roots(p)?;
    cluster_roots(&s, tol)
}

fn newton_polish<T: Real>(p: &Poly<T>, dp: &Poly<T>, z: Complex<T>) -> Complex<T> {
    let fz = p.eval(z);
    let dz = dp.eval(z);
    if dz.is_zero() || !finite(dz) {
        return z;
    }
    let cand = z - fz / dz;
    if finite(cand) && p.eval(cand).norm() < fz.norm() {
        cand
    } else {
        z
    }
}

/// Companion matrix (upper Hessenberg) of the monic polynomial whose lower
/// coefficients are `monic[..n]`.
fn companion<T: Real>(monic: &[Complex<T>]) -> Vec<Vec<Complex<T>>> {
    let n = monic.len() - 1;
    let mut h = vec![vec![Complex::zero(); n]; n];
    for i in 1..n {
        h[i][i - 1] = Complex::one();
    }
    for i in 0..n {
        h[i][n - 1] = -monic[i];
    }
    h
}

fn finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn l1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

/// Diagonal similarity balancing with power-of-two factors.
fn balance<T: Real>(a: &mut [Vec<Complex<T>>]) {
    let n = a.len();
    let radix = T::lit(2.0);
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + l1(a[j][i]);
                    r = r + l1(a[i][j]);
                }
            }
            if c.is_zero() || r.is_zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f = f * radix;
                c = c * sqrdx;
            }
            g = r * radix;
            while c > g {
                f = f / radix;
                c = c / sqrdx;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let ginv = T::one() / f;
                for j in 0..n {
                    a[i][j] = a[i][j] * ginv;
                    a[j][i] = a[j][i] * f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by shifted complex QR with
/// Givens rotations and Wilkinson shifts.
fn hessenberg_eigenvalues<T: Real>(mut h: Vec<Vec<Complex<T>>>) -> Result<Vec<Complex<T>>> {
    let n = h.len();
    let eps = T::eps();
    let mut eig = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        if hi == 1 {
            eig.push(h[0][0]);
            break;
        }
        let mut lo = hi - 1;
        while lo > 0 {
            let s = l1(h[lo - 1][lo - 1]) + l1(h[lo][lo]);
            let sub = l1(h[lo][lo - 1]);
            if sub <= eps * s || sub < T::min_positive_value() {
                h[lo][lo - 1] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eig.push(h[hi - 1][hi - 1]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n {
            // QR failed to converge; fall back to whatever is on the diagonal
            eig.extend((0..hi).rev().map(|i| h[i][i]));
            break;
        }

        let a = h[hi - 2][hi - 2];
        let b = h[hi - 2][hi - 1];
        let c = h[hi - 1][hi - 2];
        let d = h[hi - 1][hi - 1];
        let shift = if iter % 10 == 0 {
            // exceptional shift
            let below = if hi >= lo + 3 { l1(h[hi - 2][hi - 3]) } else { T::zero() };
            d + Complex::new((l1(c) + below) * T::lit(0.75), T::zero())
        } else {
            let half = T::lit(0.5);
            let mean = (a + d) * half;
            let disc = (((a - d) * half) * ((a - d) * half) + b * c).sqrt();
            let (m1, m2) = (mean + disc, mean - disc);
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        for i in lo..hi {
            h[i][i] = h[i][i] - shift;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi - 1 {
            let x = h[k][k];
            let y = h[k + 1][k];
            let r = x.norm().hypot(y.norm());
            let (cs, sn) = if r.is_zero() {
                (Complex::one(), Complex::zero())
            } else {
                (x / r, y / r)
            };
            for j in k..hi {
                let (u, v) = (h[k][j], h[k + 1][j]);
                h[k][j] = cs.conj() * u + sn.conj() * v;
                h[k + 1][j] = -sn * u + cs * v;
            }
            rots.push((cs, sn));
        }
        for (idx, &(cs, sn)) in rots.iter().enumerate() {
            let k = lo + idx;
            let last = (k + 2).min(hi - 1);
            for i in lo..=last {
                let (u, v) = (h[i][k], h[i][k + 1]);
                h[i][k] = u * cs + v * sn;
                h[i][k + 1] = -(u * sn.conj()) + v * cs.conj();
            }
        }
        for i in lo..hi {
            h[i][i] = h[i][i] + shift;
        }
    }
    if eig.iter().any(|&z| !finite(z)) {
        return Err(Error::InvalidInstance("root finder produced non-finite values".into()));
    }
    Ok(eig)
}

/// True iff no root of `p` lies within `tol` of a root of `q`.
/// Constants have no roots and are coprime to everything nonzero.
pub fn poly_coprime<T: Real>(p: &Poly<T>, q: &Poly<T>, tol: T) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidInstance("coprimality needs nonzero polynomials".into()));
    }
    if p.degree() == Some(0) || q.degree() == Some(0) {
        return Ok(true);
    }
    let rp = poly_roots(p)?;
    let rq = poly_roots(q)?;
    Ok(rp.values().iter().all(|a| rq.values().iter().all(|b| (a - b).norm() > tol)))
}
