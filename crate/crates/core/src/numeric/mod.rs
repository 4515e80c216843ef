//! Scalar arithmetic shared by every other module.
//!
//! Three complex scalar kinds implement [`Scalar`]: [`ExactComplex`]
//! (Gaussian rationals, never rounded), [`BigComplex`] (MPFR-backed
//! floating point at an explicit precision) and `num_complex::Complex64`
//! (hardware doubles, used for path tracking). All generic code in the crate
//! is written against the trait so that the same evaluation, Jacobian and
//! solve routines serve both arithmetic modes.
//!
//! Norms are always handled squared; `‖x‖²` of a Gaussian-rational vector is
//! rational, `‖x‖` usually is not.

mod big;
mod double;
mod exact;
mod linalg;
mod parse;
mod precision;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Float, Rational};

pub use big::BigComplex;
pub use double::DOUBLE_BITS;
pub use exact::ExactComplex;
pub use linalg::{frobenius_norm_sq, norm1_sq, norm_sq, solve_columns, CMatrix};
pub use parse::{format_float, parse_rational, ParseNumberError};
pub use precision::{ArithmeticMode, PrecisionConfig, MIN_BITS};

use crate::error::NumericError;

/// One of the five elementary functions a polynomial-exponential link may
/// apply to its source coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExpKind {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl ExpKind {
    pub const ALL: [ExpKind; 5] = [
        ExpKind::Exp,
        ExpKind::Sin,
        ExpKind::Cos,
        ExpKind::Sinh,
        ExpKind::Cosh,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            ExpKind::Exp => "exp",
            ExpKind::Sin => "sin",
            ExpKind::Cos => "cos",
            ExpKind::Sinh => "sinh",
            ExpKind::Cosh => "cosh",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.keyword().eq_ignore_ascii_case(word))
    }

    /// The function whose value, times the inner constant, is this
    /// function's derivative: `d/dx g(cx) = c · g'(cx)`.
    pub fn derivative(self) -> (ExpKind, bool) {
        // (function, negated)
        match self {
            ExpKind::Exp => (ExpKind::Exp, false),
            ExpKind::Sin => (ExpKind::Cos, false),
            ExpKind::Cos => (ExpKind::Sin, true),
            ExpKind::Sinh => (ExpKind::Cosh, false),
            ExpKind::Cosh => (ExpKind::Sinh, false),
        }
    }
}

impl fmt::Display for ExpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Nonnegative magnitudes: squared norms, bounds and thresholds.
///
/// Implemented by [`Rational`] (exact mode) and [`Float`] (floating mode).
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Div<Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn from_rational(value: &Rational, bits: u32) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// Square root when the representation supports it (floating only).
    fn sqrt(&self) -> Option<Self>;
    /// Exact `p/q` rendering when the value is rational.
    fn to_exact_string(&self) -> Option<String>;
    /// Decimal rendering with `digits` significant digits.
    fn to_decimal(&self, digits: usize) -> String;
    /// Precision in bits for floats; [`MIN_BITS`] for rationals.
    fn precision(&self) -> u32;
    /// Rounds to a float of `bits` precision.
    fn to_float(&self, bits: u32) -> Float;

    fn from_int(value: i64, bits: u32) -> Self {
        Self::from_rational(&Rational::from(value), bits)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for Rational {
    fn from_rational(value: &Rational, _bits: u32) -> Self {
        value.clone()
    }

    fn is_zero(&self) -> bool {
        self.cmp0() == std::cmp::Ordering::Equal
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn sqrt(&self) -> Option<Self> {
        None
    }

    fn to_exact_string(&self) -> Option<String> {
        Some(self.to_string())
    }

    fn to_decimal(&self, digits: usize) -> String {
        // 64 extra bits keep the decimal correctly rounded for any sane digit count.
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
        format_float(&Float::with_val(bits, self), digits)
    }

    fn precision(&self) -> u32 {
        MIN_BITS
    }

    fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, self)
    }
}

impl Real for Float {
    fn from_rational(value: &Rational, bits: u32) -> Self {
        Float::with_val(bits, value)
    }

    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Float::sqrt(self.clone()))
    }

    fn to_exact_string(&self) -> Option<String> {
        None
    }

    fn to_decimal(&self, digits: usize) -> String {
        format_float(self, digits)
    }

    fn precision(&self) -> u32 {
        self.prec()
    }

    fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, self)
    }
}

/// A complex scalar in one of the two arithmetic modes.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    type Real: Real;

    const MODE: ArithmeticMode;

    fn zero(bits: u32) -> Self;
    fn from_exact(value: &ExactComplex, bits: u32) -> Self;
    fn from_real(value: &Self::Real, bits: u32) -> Self;
    /// Working precision in bits; zero for exact scalars.
    fn bits(&self) -> u32;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn abs_sq(&self) -> Self::Real;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// `kind(self)`, or `None` when the arithmetic mode cannot represent it.
    fn elementary(&self, kind: ExpKind) -> Option<Self>;
    fn to_c64(&self) -> (f64, f64);

    fn one(bits: u32) -> Self {
        Self::from_exact(&ExactComplex::one(), bits)
    }

    fn from_int(value: i64, bits: u32) -> Self {
        Self::from_exact(&ExactComplex::from_int(value), bits)
    }

    fn is_exact() -> bool {
        Self::MODE == ArithmeticMode::ExactRational
    }
}

/// Checks that every scalar in `xs` carries `bits` of precision.
pub fn check_uniform_precision<S: Scalar>(xs: &[S], bits: u32) -> Result<(), NumericError> {
    if S::is_exact() {
        return Ok(());
    }
    match xs.iter().find(|x| x.bits() != bits) {
        Some(x) => Err(NumericError::PrecisionMismatch {
            expected: bits,
            found: x.bits(),
        }),
        None => Ok(()),
    }
}

/// Converts a vector of exact scalars to the target scalar kind.
pub fn lift<S: Scalar>(xs: &[ExactComplex], bits: u32) -> Vec<S> {
    xs.iter().map(|x| S::from_exact(x, bits)).collect()
}
