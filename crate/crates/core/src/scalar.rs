//! Scalar backends.
//!
//! Every algebraic routine in this crate is generic over a real field `R`
//! and works on complex numbers `Complex<R>`. Two families of backends are
//! provided:
//!
//! * [`BigRational`]: exact, arbitrary precision. Equality is decidable and
//!   vanishing tests take tolerance `0`.
//! * `f64` / `f32`: IEEE floating point. Vanishing tests compare
//!   `max(|re|, |im|)` against a nonnegative tolerance.
//!
//! Irrational amplitudes such as `1/sqrt(2)` are not representable exactly.
//! All minor and relation tests are homogeneous, so states can be fed
//! unnormalized with integer amplitudes instead.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default tolerance for vanishing tests on the floating-point backends.
pub const DEFAULT_FLOAT_TOL: f64 = 1e-10;

/// A complex scalar over the real field `R`.
pub type Scalar<R> = Complex<R>;

/// Which arithmetic backend a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float64,
    Float32,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float64 => "float64",
            Backend::Float32 => "float32",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Backend::Exact)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A real field usable as the component type of [`Scalar`].
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Tolerance used when the caller does not supply one.
    fn default_tol() -> f64 {
        if Self::BACKEND.is_exact() {
            0.0
        } else {
            DEFAULT_FLOAT_TOL
        }
    }

    /// `values` as Gaussian integers over one shared denominator, on
    /// backends where that is exact.
    fn integer_view(_values: &[Scalar<Self>]) -> Option<IntegerView> {
        None
    }
}

/// Gaussian-integer numerators over a common positive denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerView {
    pub nums: Vec<Complex<BigInt>>,
    pub den: BigInt,
}

impl IntegerView {
    /// `nums[a]·nums[b]`, still over `den²`.
    pub fn product(&self, a: usize, b: usize) -> Complex<BigInt> {
        let (x, y) = (&self.nums[a], &self.nums[b]);
        Complex::new(&x.re * &y.re - &x.im * &y.im, &x.re * &y.im + &x.im * &y.re)
    }

    /// Divides a numerator over `den²` back into the backend.
    pub fn rescale<R: Real>(&self, c: Complex<BigInt>) -> Scalar<R> {
        if c.is_zero() {
            return Scalar::zero();
        }
        let den2 = &self.den * &self.den;
        let part = |n: BigInt| {
            if n.is_zero() {
                R::zero()
            } else {
                R::from_rational(&BigRational::new(n, den2.clone()))
            }
        };
        Scalar::new(part(c.re), part(c.im))
    }

    /// `nums[a]·nums[b] − nums[c]·nums[d]` in the backend.
    pub fn product_difference<R: Real>(&self, a: usize, b: usize, c: usize, d: usize) -> Scalar<R> {
        self.rescale(self.product(a, b) - self.product(c, d))
    }
}

impl Real for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn integer_view(values: &[Scalar<Self>]) -> Option<IntegerView> {
        let den = values.iter().fold(BigInt::one(), |acc, z| {
            acc.lcm(z.re.denom()).lcm(z.im.denom())
        });
        let scale = |r: &BigRational| r.numer() * (&den / r.denom());
        let nums = values
            .iter()
            .map(|z| Complex::new(scale(&z.re), scale(&z.im)))
            .collect();
        Some(IntegerView { nums, den })
    }
}

impl Real for f64 {
    const BACKEND: Backend = Backend::Float64;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Real for f32 {
    const BACKEND: Backend = Backend::Float32;

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

/// Builds a scalar from integer real and imaginary parts.
pub fn int<R: Real>(re: i64, im: i64) -> Scalar<R> {
    Complex::new(R::from_int(re), R::from_int(im))
}

/// Builds a scalar from rational real and imaginary parts `re_n/re_d + i im_n/im_d`.
pub fn ratio<R: Real>(re: (i64, i64), im: (i64, i64)) -> Scalar<R> {
    Complex::new(R::from_ratio(re.0, re.1), R::from_ratio(im.0, im.1))
}

pub fn real<R: Real>(re: R) -> Scalar<R> {
    Complex::new(re, R::zero())
}

pub fn half<R: Real>() -> R {
    R::from_ratio(1, 2)
}

/// Checks a tolerance against the backend: nonnegative always, zero on exact.
pub fn validate_tol<R: Real>(tol: f64) -> Result<()> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::NegativeTolerance(tol));
    }
    if R::BACKEND.is_exact() && tol != 0.0 {
        return Err(Error::ToleranceOnExact(tol));
    }
    Ok(())
}

/// Vanishing test: exact equality with zero on the exact backend,
/// `max(|re|, |im|) <= tol` on the floating-point backends.
pub fn approx_zero<R: Real>(a: &Scalar<R>, tol: f64) -> Result<bool> {
    validate_tol::<R>(tol)?;
    Ok(is_negligible(a, tol))
}

/// [`approx_zero`] without tolerance validation, for hot loops that
/// validated once up front.
pub(crate) fn is_negligible<R: Real>(a: &Scalar<R>, tol: f64) -> bool {
    if R::BACKEND.is_exact() {
        a.is_zero()
    } else {
        a.re.to_f64().abs() <= tol && a.im.to_f64().abs() <= tol
    }
}

/// `|a|` as a double, for reporting.
pub fn modulus_f64<R: Real>(a: &Scalar<R>) -> f64 {
    a.norm_sqr().to_f64().sqrt()
}

/// `a` equals `b` up to the backend tolerance.
pub fn approx_eq<R: Real>(a: &Scalar<R>, b: &Scalar<R>, tol: f64) -> Result<bool> {
    approx_zero(&(a.clone() - b.clone()), tol)
}

/// A scalar whose backend is chosen at run time.
///
/// The generic API rules out mixing backends at compile time; this type is
/// for callers that decide the backend dynamically and need the mismatch
/// reported as a value.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyScalar {
    Exact(Scalar<BigRational>),
    Float64(Scalar<f64>),
}

impl AnyScalar {
    pub fn backend(&self) -> Backend {
        match self {
            AnyScalar::Exact(_) => Backend::Exact,
            AnyScalar::Float64(_) => Backend::Float64,
        }
    }

    fn combine(
        &self,
        other: &Self,
        exact: impl Fn(&Scalar<BigRational>, &Scalar<BigRational>) -> Scalar<BigRational>,
        float: impl Fn(&Scalar<f64>, &Scalar<f64>) -> Scalar<f64>,
    ) -> Result<Self> {
        match (self, other) {
            (AnyScalar::Exact(a), AnyScalar::Exact(b)) => Ok(AnyScalar::Exact(exact(a, b))),
            (AnyScalar::Float64(a), AnyScalar::Float64(b)) => Ok(AnyScalar::Float64(float(a, b))),
            _ => Err(Error::BackendMismatch {
                left: self.backend().name(),
                right: other.backend().name(),
            }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn approx_zero(&self, tol: f64) -> Result<bool> {
        match self {
            AnyScalar::Exact(a) => approx_zero(a, tol),
            AnyScalar::Float64(a) => approx_zero(a, tol),
        }
    }
}
