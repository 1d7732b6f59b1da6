//! Scalar traits shared by the exact and floating-point code paths.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring operations. Enough for determinants, adjugates and traces.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact zero test (no tolerance).
    fn is_zero(&self) -> bool;
}

/// A field with a notion of size, used for pivoting and tolerance checks.
pub trait Field: Ring + Div<Output = Self> {
    /// `true` for arithmetic without rounding error.
    const EXACT: bool;

    fn from_ratio(num: i64, den: i64) -> Self;
    /// Modulus, approximated as `f64` for exact types.
    fn magnitude(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    fn conj(&self) -> Self;
    fn from_f64(x: f64) -> Self;
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(Zero::zero)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

/// Gaussian rationals `a + b i` with `a, b` rational.
pub type GaussRational = Complex<BigRational>;

impl Ring for GaussRational {
    fn zero() -> Self {
        Complex::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Complex::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(<BigRational as Ring>::from_i64(v), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
}

impl Field for GaussRational {
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(<BigRational as Field>::from_ratio(num, den), Zero::zero())
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_f64(x: f64) -> Self {
        gauss(<BigRational as Field>::from_f64(x))
    }
}

/// Lift a rational into the Gaussian rationals.
pub fn gauss(re: BigRational) -> GaussRational {
    Complex::new(re, Zero::zero())
}

/// First-order dual numbers `value + tangent * eps` with `eps^2 = 0`.
///
/// Evaluating any ring expression on duals yields its directional derivative
/// in the tangent slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub tangent: T,
}

impl<T: Ring> Dual<T> {
    pub fn new(value: T, tangent: T) -> Self {
        Dual { value, tangent }
    }
    pub fn constant(value: T) -> Self {
        Dual { value, tangent: T::zero() }
    }
}

impl<T: Ring> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.value + rhs.value, self.tangent + rhs.tangent)
    }
}

impl<T: Ring> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.value - rhs.value, self.tangent - rhs.tangent)
    }
}

impl<T: Ring> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let tangent = self.value.clone() * rhs.tangent + self.tangent * rhs.value.clone();
        Dual::new(self.value * rhs.value, tangent)
    }
}

impl<T: Ring> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.value, -self.tangent)
    }
}

impl<T: Field> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let denom = rhs.value.clone() * rhs.value.clone();
        let tangent =
            (self.tangent * rhs.value.clone() - self.value.clone() * rhs.tangent) / denom;
        Dual::new(self.value / rhs.value, tangent)
    }
}

impl<T: Ring> Ring for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn from_i64(v: i64) -> Self {
        Dual::constant(T::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.tangent.is_zero()
    }
}

impl<T: Field> Field for Dual<T> {
    const EXACT: bool = T::EXACT;

    fn from_ratio(num: i64, den: i64) -> Self {
        Dual::constant(T::from_ratio(num, den))
    }
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }
    fn to_c64(&self) -> Complex64 {
        self.value.to_c64()
    }
    fn conj(&self) -> Self {
        Dual::new(self.value.conj(), self.tangent.conj())
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }
}

/// Types that can absorb a complex floating-point constant.
pub trait FromC64: Field {
    fn from_c64(z: Complex64) -> Self;
}

impl FromC64 for Complex64 {
    fn from_c64(z: Complex64) -> Self {
        z
    }
}

impl FromC64 for Dual<Complex64> {
    fn from_c64(z: Complex64) -> Self {
        Dual::constant(z)
    }
}

/// Parse `"p/q"`, `"p"` or a decimal such as `"-0.25"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Some(BigRational::new(digits, scale));
    }
    Some(BigRational::from_integer(s.parse().ok()?))
}

/// Shorthand for a rational `num / den`.
pub fn q(num: i64, den: i64) -> BigRational {
    <BigRational as Field>::from_ratio(num, den)
}
