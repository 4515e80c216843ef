use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Rational;

use super::{ArithmeticMode, ExpKind, Scalar};

/// A Gaussian rational `re + i·im`.
///
/// Both parts are kept in canonical reduced form by `rug::Rational`, so
/// equality is structural and arithmetic never rounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactComplex {
    re: Rational,
    im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ExactComplex {
            re,
            im: Rational::new(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        ExactComplex::new(Rational::new(), Rational::from(1))
    }

    pub fn from_int(value: i64) -> Self {
        Self::real(Rational::from(value))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::from((num, den)))
    }

    pub fn re_part(&self) -> &Rational {
        &self.re
    }

    pub fn im_part(&self) -> &Rational {
        &self.im
    }

    pub fn norm_sq(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0() == std::cmp::Ordering::Equal
    }

    pub fn is_zero_value(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero_value() {
            return None;
        }
        let n = self.norm_sq();
        Some(ExactComplex {
            re: Rational::from(&self.re / &n),
            im: -Rational::from(&self.im / &n),
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = ExactComplex::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }

    /// Scales by a rational factor.
    pub fn scale(&self, factor: &Rational) -> Self {
        ExactComplex {
            re: Rational::from(&self.re * factor),
            im: Rational::from(&self.im * factor),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.re, self.im)
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(mut self, rhs: ExactComplex) -> ExactComplex {
        self += &rhs;
        self
    }
}

impl Add<&ExactComplex> for ExactComplex {
    type Output = ExactComplex;
    fn add(mut self, rhs: &ExactComplex) -> ExactComplex {
        self += rhs;
        self
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(mut self, rhs: ExactComplex) -> ExactComplex {
        self -= &rhs;
        self
    }
}

impl Sub<&ExactComplex> for ExactComplex {
    type Output = ExactComplex;
    fn sub(mut self, rhs: &ExactComplex) -> ExactComplex {
        self -= rhs;
        self
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        self * &rhs
    }
}

impl Mul<&ExactComplex> for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        if self.is_real() && rhs.is_real() {
            return ExactComplex::real(self.re * &rhs.re);
        }
        let re = Rational::from(&self.re * &rhs.re) - Rational::from(&self.im * &rhs.im);
        let im = Rational::from(&self.re * &rhs.im) + Rational::from(&self.im * &rhs.re);
        ExactComplex { re, im }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&ExactComplex> for ExactComplex {
    type Output = ExactComplex;
    fn div(self, rhs: &ExactComplex) -> ExactComplex {
        let inv = rhs.recip().expect("division of an exact complex by zero");
        self * &inv
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&ExactComplex> for ExactComplex {
    fn add_assign(&mut self, rhs: &ExactComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ExactComplex> for ExactComplex {
    fn sub_assign(&mut self, rhs: &ExactComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ExactComplex> for ExactComplex {
    fn mul_assign(&mut self, rhs: &ExactComplex) {
        let lhs = std::mem::take(self);
        *self = lhs * rhs;
    }
}

impl Scalar for ExactComplex {
    type Real = Rational;

    const MODE: ArithmeticMode = ArithmeticMode::ExactRational;

    fn zero(_bits: u32) -> Self {
        ExactComplex::zero()
    }

    fn from_exact(value: &ExactComplex, _bits: u32) -> Self {
        value.clone()
    }

    fn from_real(value: &Rational, _bits: u32) -> Self {
        ExactComplex::real(value.clone())
    }

    fn bits(&self) -> u32 {
        0
    }

    fn re(&self) -> Rational {
        self.re.clone()
    }

    fn im(&self) -> Rational {
        self.im.clone()
    }

    fn abs_sq(&self) -> Rational {
        self.norm_sq()
    }

    fn conj(&self) -> Self {
        ExactComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }

    fn elementary(&self, kind: ExpKind) -> Option<Self> {
        // Only the trivial points where the value is rational.
        if !self.is_zero_value() {
            return None;
        }
        Some(match kind {
            ExpKind::Exp | ExpKind::Cos | ExpKind::Cosh => ExactComplex::one(),
            ExpKind::Sin | ExpKind::Sinh => ExactComplex::zero(),
        })
    }

    fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_after_arithmetic() {
        let a = ExactComplex::from_ratio(2, 4);
        assert_eq!(a.re_part(), &Rational::from((1, 2)));
        let b = a.clone() + &a;
        assert_eq!(b, ExactComplex::one());
    }

    #[test]
    fn complex_product_and_inverse() {
        let z = ExactComplex::new(Rational::from(3), Rational::from(4));
        let p = z.clone() * &z.conj();
        assert_eq!(p, ExactComplex::from_int(25));
        let q = ExactComplex::one() / &z;
        assert_eq!(q * &z, ExactComplex::one());
        assert!(ExactComplex::zero().recip().is_none());
    }

    #[test]
    fn integer_power() {
        let i = ExactComplex::i();
        assert_eq!(i.pow(2), ExactComplex::from_int(-1));
        assert_eq!(i.pow(0), ExactComplex::one());
        assert_eq!(ExactComplex::from_ratio(1, 2).pow(3), ExactComplex::from_ratio(1, 8));
    }
}
