//! Double-double scalar.
//!
//! A thin wrapper over `twofloat::TwoFloat`. Its quotient routines form
//! `1 - b·t` without a fused multiply-add and so only deliver `f64` accuracy;
//! division here uses the long-division variant (a `TwoFloat × f64` product,
//! an exact subtraction and one correction term), which keeps the relative
//! error near `2^-104`. Every other operation is forwarded.

use std::cmp::Ordering;
use std::fmt;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_traits::{Float, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Clone, Copy, Debug, Default)]
pub struct Wide(TwoFloat);

impl Wide {
    pub const fn from_f64(x: f64) -> Self {
        Wide(TwoFloat::from_f64(x))
    }

    /// Leading word.
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    /// Trailing word.
    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    fn quotient(a: TwoFloat, b: TwoFloat) -> TwoFloat {
        let th = a.hi() / b.hi();
        let r = b * th;
        let d = a - r;
        let tl = d.hi() / b.hi();
        TwoFloat::new_add(th, tl)
    }
}

impl From<f64> for Wide {
    fn from(x: f64) -> Self {
        Wide::from_f64(x)
    }
}

impl PartialEq for Wide {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

// twofloat compares through a subtraction, which turns `inf` against `inf`
// (or against any finite value with an infinite low word) into NaN
impl PartialOrd for Wide {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi().partial_cmp(&other.hi())? {
            Ordering::Equal if self.hi().is_finite() => self.lo().partial_cmp(&other.lo()),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for Wide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl $tr for Wide {
            type Output = Wide;
            fn $f(self, rhs: Wide) -> Wide {
                Wide($tr::$f(self.0, rhs.0))
            }
        }
        impl $atr for Wide {
            fn $af(&mut self, rhs: Wide) {
                *self = $tr::$f(*self, rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);
forward_binop!(Rem, rem, RemAssign, rem_assign);

impl Div for Wide {
    type Output = Wide;
    fn div(self, rhs: Wide) -> Wide {
        Wide(Wide::quotient(self.0, rhs.0))
    }
}

impl DivAssign for Wide {
    fn div_assign(&mut self, rhs: Wide) {
        *self = *self / rhs;
    }
}

impl Neg for Wide {
    type Output = Wide;
    fn neg(self) -> Wide {
        Wide(-self.0)
    }
}

impl Zero for Wide {
    fn zero() -> Self {
        Wide(TwoFloat::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Wide {
    fn one() -> Self {
        Wide(TwoFloat::one())
    }
}

impl Num for Wide {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        <f64 as Num>::from_str_radix(s, radix).map(Wide::from_f64)
    }
}

impl ToPrimitive for Wide {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.hi() + self.0.lo())
    }
}

// the wrapped type routes from_f64 through from_i64, which truncates
impl FromPrimitive for Wide {
    fn from_i64(n: i64) -> Option<Self> {
        TwoFloat::from_i64(n).map(Wide)
    }
    fn from_u64(n: u64) -> Option<Self> {
        TwoFloat::from_u64(n).map(Wide)
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Wide::from_f64(x))
    }
    fn from_f32(x: f32) -> Option<Self> {
        Some(Wide::from_f64(x as f64))
    }
}

impl NumCast for Wide {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(Wide::from_f64)
    }
}

macro_rules! forward_unary {
    ($($f:ident),*) => {
        $(fn $f(self) -> Self { Wide(Float::$f(self.0)) })*
    };
}

macro_rules! forward_pred {
    ($($f:ident),*) => {
        $(fn $f(self) -> bool { Float::$f(self.0) })*
    };
}

macro_rules! forward_const {
    ($($f:ident),*) => {
        $(fn $f() -> Self { Wide(<TwoFloat as Float>::$f()) })*
    };
}

impl Float for Wide {
    forward_const!(nan, neg_zero, min_value, min_positive_value, max_value);

    fn infinity() -> Self {
        Wide::from_f64(f64::INFINITY)
    }

    fn neg_infinity() -> Self {
        Wide::from_f64(f64::NEG_INFINITY)
    }
    forward_pred!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    forward_unary!(
        floor, ceil, round, trunc, fract, abs, signum, sqrt, exp, exp2, ln, log2, log10, cbrt, sin, cos, tan,
        asin, acos, atan, exp_m1, ln_1p, sinh, cosh, tanh, asinh, acosh, atanh
    );

    fn epsilon() -> Self {
        Wide::from_f64(f64::EPSILON * f64::EPSILON)
    }

    fn classify(self) -> FpCategory {
        self.0.classify()
    }

    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }

    fn recip(self) -> Self {
        Wide::one() / self
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Wide::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn powf(self, n: Self) -> Self {
        (self.ln() * n).exp()
    }

    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }

    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self { other } else { self }
    }

    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self { other } else { self }
    }

    fn abs_sub(self, other: Self) -> Self {
        if self > other { self - other } else { Wide::zero() }
    }

    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let r = small / big;
        big * (Wide::one() + r * r).sqrt()
    }

    fn atan2(self, other: Self) -> Self {
        Wide(self.0.atan2(other.0))
    }

    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }

    fn integer_decode(self) -> (u64, i16, i8) {
        self.0.integer_decode()
    }
}
