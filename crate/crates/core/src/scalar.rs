//! Real scalar abstraction.
//!
//! Every numeric routine in the crate is written against [`Real`] and works on
//! `Complex<T>` values. The trait carries the per-precision thresholds so that
//! `f32` builds do not inherit tolerances that only make sense for `f64`.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point base type for complex scalars: `f32`, `f64` or the
/// double-double [`Wide`].
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Trailing coefficient is treated as zero below this fraction of the
    /// polynomial's magnitude scale.
    const TRIM_REL: Self;
    /// Pivot threshold, relative to the matrix scale, for declaring a matrix singular.
    const PIVOT_REL: Self;
    /// Default root clustering tolerance relative to the magnitude scale.
    const CLUSTER_REL: Self;
    /// Hankel pivot threshold relative to the entry growth of the moments.
    const HANKEL_REL: Self;

    /// Unit roundoff used by convergence tests. `Float::epsilon` is not
    /// meaningful for every implementor.
    fn eps() -> Self {
        Self::epsilon()
    }

    /// Converts an `f64` literal; all literals used by the crate are representable.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f64 {
    const TRIM_REL: f64 = 1e-13;
    const PIVOT_REL: f64 = 1e-13;
    const CLUSTER_REL: f64 = 1e-8;
    const HANKEL_REL: f64 = 1e-12;
}

impl Real for f32 {
    const TRIM_REL: f32 = 1e-6;
    const PIVOT_REL: f32 = 1e-6;
    const CLUSTER_REL: f32 = 1e-3;
    const HANKEL_REL: f32 = 1e-5;
}

pub use crate::wide::Wide;

impl Real for Wide {
    const TRIM_REL: Wide = Wide::from_f64(1e-28);
    const PIVOT_REL: Wide = Wide::from_f64(1e-28);
    const CLUSTER_REL: Wide = Wide::from_f64(1e-14);
    const HANKEL_REL: Wide = Wide::from_f64(1e-24);

    fn eps() -> Self {
        Wide::from_f64(f64::EPSILON * f64::EPSILON)
    }

}

/// Complex scalar over `T`.
pub type Cx<T> = Complex<T>;

/// Complex literal from two `f64` parts.
pub fn cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub(crate) fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}

/// Changes the precision of a complex vector.
pub fn convert<S: Real, T: Real>(values: &[Complex<S>]) -> Vec<Complex<T>> {
    values.iter().map(|&z| convert_one(z)).collect()
}

pub fn convert_one<S: Real, T: Real>(z: Complex<S>) -> Complex<T> {
    let part = |x: S| {
        // double-double carries a second word; split before narrowing
        let hi = x.to_f64().expect("finite scalar");
        let lo = (x - S::lit(hi)).to_f64().expect("finite scalar");
        T::lit(hi) + T::lit(lo)
    };
    Complex::new(part(z.re), part(z.im))
}

/// Largest modulus in a slice, zero for an empty slice.
pub fn max_norm<T: Real>(values: &[Complex<T>]) -> T {
    values.iter().map(|z| z.norm()).fold(T::zero(), T::max)
}
