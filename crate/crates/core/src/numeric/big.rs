use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Assign, Complex, Float};

use super::{ArithmeticMode, ExactComplex, ExpKind, Scalar};

/// Arbitrary-precision floating complex number.
///
/// Real and imaginary parts always share one precision. Every operation
/// rounds to nearest at the left operand's precision; elementary functions
/// come from MPC and are correctly rounded.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex(Complex);

impl BigComplex {
    pub fn new(bits: u32) -> Self {
        BigComplex(Complex::new(bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: u32) -> Self {
        BigComplex(Complex::with_val(bits, (re, im)))
    }

    pub fn from_parts(re: &Float, im: &Float, bits: u32) -> Self {
        BigComplex(Complex::with_val(bits, (re, im)))
    }

    pub fn inner(&self) -> &Complex {
        &self.0
    }

    pub fn into_inner(self) -> Complex {
        self.0
    }

    /// Rounds to a different working precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        BigComplex(Complex::with_val(bits, &self.0))
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.bits(), self.0.abs_ref())
    }

    pub fn exp(&self) -> Self {
        BigComplex(self.0.clone().exp())
    }

    pub fn sin(&self) -> Self {
        BigComplex(self.0.clone().sin())
    }

    pub fn cos(&self) -> Self {
        BigComplex(self.0.clone().cos())
    }

    pub fn sinh(&self) -> Self {
        BigComplex(self.0.clone().sinh())
    }

    pub fn cosh(&self) -> Self {
        BigComplex(self.0.clone().cosh())
    }

    pub fn apply(&self, kind: ExpKind) -> Self {
        match kind {
            ExpKind::Exp => self.exp(),
            ExpKind::Sin => self.sin(),
            ExpKind::Cos => self.cos(),
            ExpKind::Sinh => self.sinh(),
            ExpKind::Cosh => self.cosh(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.0.real().is_finite() && self.0.imag().is_finite()
    }
}

impl From<Complex> for BigComplex {
    fn from(value: Complex) -> Self {
        BigComplex(value)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr for BigComplex {
            type Output = BigComplex;
            fn $method(mut self, rhs: BigComplex) -> BigComplex {
                self.0.$assign_method(&rhs.0);
                self
            }
        }

        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(mut self, rhs: &BigComplex) -> BigComplex {
                self.0.$assign_method(&rhs.0);
                self
            }
        }

        impl $assign_tr<&BigComplex> for BigComplex {
            fn $assign_method(&mut self, rhs: &BigComplex) {
                self.0.$assign_method(&rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn div(mut self, rhs: &BigComplex) -> BigComplex {
        self.0 /= &rhs.0;
        self
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex(-self.0)
    }
}

impl Scalar for BigComplex {
    type Real = Float;

    const MODE: ArithmeticMode = ArithmeticMode::Floating;

    fn zero(bits: u32) -> Self {
        BigComplex::new(bits)
    }

    fn from_exact(value: &ExactComplex, bits: u32) -> Self {
        let mut c = Complex::new(bits);
        c.assign((value.re_part(), value.im_part()));
        BigComplex(c)
    }

    fn from_real(value: &Float, bits: u32) -> Self {
        BigComplex(Complex::with_val(bits, value))
    }

    fn bits(&self) -> u32 {
        self.0.prec().0
    }

    fn re(&self) -> Float {
        self.0.real().clone()
    }

    fn im(&self) -> Float {
        self.0.imag().clone()
    }

    fn abs_sq(&self) -> Float {
        Float::with_val(self.bits(), self.0.norm_ref())
    }

    fn conj(&self) -> Self {
        BigComplex(self.0.clone().conj())
    }

    fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    fn elementary(&self, kind: ExpKind) -> Option<Self> {
        Some(self.apply(kind))
    }

    fn to_c64(&self) -> (f64, f64) {
        (self.0.real().to_f64(), self.0.imag().to_f64())
    }
}
