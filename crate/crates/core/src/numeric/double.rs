//! Hardware double precision, used where speed matters more than digits
//! (path tracking between polished endpoints).

use num_complex::Complex64;
use rug::{Float, Rational};

use super::{format_float, ArithmeticMode, ExactComplex, ExpKind, Real, Scalar};

/// Mantissa bits of an IEEE double.
pub const DOUBLE_BITS: u32 = 53;

impl Real for f64 {
    fn from_rational(value: &Rational, _bits: u32) -> Self {
        value.to_f64()
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        Some(f64::sqrt(*self))
    }

    fn to_exact_string(&self) -> Option<String> {
        None
    }

    fn to_decimal(&self, digits: usize) -> String {
        format_float(&Float::with_val(DOUBLE_BITS, *self), digits)
    }

    fn precision(&self) -> u32 {
        DOUBLE_BITS
    }

    fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, *self)
    }
}

impl Scalar for Complex64 {
    type Real = f64;

    const MODE: ArithmeticMode = ArithmeticMode::Floating;

    fn zero(_bits: u32) -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn from_exact(value: &ExactComplex, _bits: u32) -> Self {
        Complex64::new(value.re_part().to_f64(), value.im_part().to_f64())
    }

    fn from_real(value: &f64, _bits: u32) -> Self {
        Complex64::new(*value, 0.0)
    }

    fn bits(&self) -> u32 {
        DOUBLE_BITS
    }

    fn re(&self) -> f64 {
        self.re
    }

    fn im(&self) -> f64 {
        self.im
    }

    fn abs_sq(&self) -> f64 {
        self.norm_sqr()
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn elementary(&self, kind: ExpKind) -> Option<Self> {
        Some(match kind {
            ExpKind::Exp => self.exp(),
            ExpKind::Sin => self.sin(),
            ExpKind::Cos => self.cos(),
            ExpKind::Sinh => self.sinh(),
            ExpKind::Cosh => self.cosh(),
        })
    }

    fn to_c64(&self) -> (f64, f64) {
        (self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values_round_to_nearest() {
        let z = Complex64::from_exact(&ExactComplex::from_ratio(1, 3), 0);
        assert_eq!(z, Complex64::new(1.0 / 3.0, 0.0));
        assert_eq!(z.bits(), DOUBLE_BITS);
    }

    #[test]
    fn elementary_matches_identity() {
        let z = Complex64::new(0.4, -1.1);
        let s = z.elementary(ExpKind::Sin).unwrap();
        let c = z.elementary(ExpKind::Cos).unwrap();
        assert!((s * s + c * c - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }
}
