//! Sparse polynomials with Gaussian-rational coefficients.
//!
//! Terms are kept in graded-lexicographic order (highest total degree
//! first) with no zero coefficients and no repeated monomials, so two
//! polynomials are equal exactly when their term lists are.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rug::{Integer, Rational};

use crate::error::{NumericError, SystemError};
use crate::numeric::{norm1_sq, solve_columns, CMatrix, ExactComplex, Real, Scalar};

/// Exponent vector `ρ` of a monomial `x^ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_var` to the first power.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    /// `|ρ|`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `ρ! = Π ρ_j!`.
    pub fn factorial(&self) -> Integer {
        self.0
            .iter()
            .map(|&e| Integer::from(Integer::factorial(e)))
            .product()
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order, largest first when sorted descending.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(ExactComplex, Monomial)>,
    degree: u32,
}

impl Polynomial {
    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self, SystemError>
    where
        I: IntoIterator<Item = (ExactComplex, Monomial)>,
    {
        let mut acc: BTreeMap<Monomial, ExactComplex> = BTreeMap::new();
        for (c, m) in terms {
            if m.nvars() != nvars {
                return Err(SystemError::Invalid(format!(
                    "monomial has {} exponents, expected {nvars}",
                    m.nvars()
                )));
            }
            *acc.entry(m).or_default() += &c;
        }
        Ok(Self::from_map(nvars, acc))
    }

    fn from_map(nvars: usize, map: BTreeMap<Monomial, ExactComplex>) -> Self {
        let terms: Vec<(ExactComplex, Monomial)> = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero_value())
            .map(|(m, c)| (c, m))
            .collect();
        let degree = terms.iter().map(|(_, m)| m.total_degree()).max().unwrap_or(0);
        Polynomial { nvars, terms, degree }
    }

    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
            degree: 0,
        }
    }

    pub fn constant(nvars: usize, c: ExactComplex) -> Self {
        Self::from_map(nvars, BTreeMap::from([(Monomial::constant(nvars), c)]))
    }

    /// `c · x_var`.
    pub fn linear(nvars: usize, var: usize, c: ExactComplex) -> Self {
        Self::from_map(nvars, BTreeMap::from([(Monomial::var(nvars, var), c)]))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(ExactComplex, Monomial)] {
        &self.terms
    }

    /// Degree of the actual terms; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_real())
    }

    /// Squared Bombieri–Weyl norm
    /// `‖g‖² = (1/d!) Σ ρ!·(d − |ρ|)!·|a_ρ|²`, exact.
    pub fn bw_norm_sq(&self) -> Rational {
        let d = self.degree;
        let mut sum = Rational::new();
        for (c, m) in &self.terms {
            let weight = m.factorial() * Integer::from(Integer::factorial(d - m.total_degree()));
            sum += c.norm_sq() * weight;
        }
        sum / Integer::from(Integer::factorial(d))
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut map = BTreeMap::new();
        for (c, m) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            map.insert(Monomial(exps), c.clone() * &ExactComplex::from_int(e as i64));
        }
        Self::from_map(self.nvars, map)
    }

    /// Evaluates at a point given as exact scalars or floats.
    pub fn evaluate<S: Scalar>(&self, x: &[S]) -> Result<S, NumericError> {
        if x.len() != self.nvars {
            return Err(NumericError::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        let bits = x.first().map_or(crate::numeric::MIN_BITS, Scalar::bits);
        let lifted = LiftedPoly::new(self, bits);
        let powers = PowerTable::new(x, self.degree);
        Ok(lifted.eval(&powers, bits))
    }

    pub(crate) fn add(&self, other: &Polynomial) -> Polynomial {
        let mut map: BTreeMap<Monomial, ExactComplex> =
            self.terms.iter().map(|(c, m)| (m.clone(), c.clone())).collect();
        for (c, m) in &other.terms {
            *map.entry(m.clone()).or_default() += c;
        }
        Self::from_map(self.nvars, map)
    }

    pub(crate) fn scale(&self, factor: &ExactComplex) -> Polynomial {
        let map = self
            .terms
            .iter()
            .map(|(c, m)| (m.clone(), c.clone() * factor))
            .collect();
        Self::from_map(self.nvars, map)
    }

    pub(crate) fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut map: BTreeMap<Monomial, ExactComplex> = BTreeMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                *map.entry(ma.product(mb)).or_default() += &(a.clone() * b);
            }
        }
        Self::from_map(self.nvars, map)
    }

    /// Substitutes `x_j ↦ images[j]`; the images share a new variable set.
    pub(crate) fn compose(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let target_vars = images.first().map_or(0, Polynomial::nvars);
        let mut out = Polynomial::zero(target_vars);
        let mut power_cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant(target_vars, ExactComplex::one()), p.clone()])
            .collect();
        for (c, m) in &self.terms {
            let mut term = Polynomial::constant(target_vars, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while power_cache[j].len() <= e as usize {
                    let next = power_cache[j].last().unwrap().mul(&images[j]);
                    power_cache[j].push(next);
                }
                term = term.mul(&power_cache[j][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}

/// `n` polynomials in a shared set of `nv` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSystem {
    nvars: usize,
    polys: Vec<Polynomial>,
}

impl PolynomialSystem {
    pub fn new(nvars: usize, polys: Vec<Polynomial>) -> Result<Self, SystemError> {
        for (index, p) in polys.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(SystemError::VariableCount {
                    index,
                    expected: nvars,
                    found: p.nvars(),
                });
            }
        }
        Ok(PolynomialSystem { nvars, polys })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.nvars
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Polynomial::degree).collect()
    }

    /// `D = max d_i`.
    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    /// `‖f‖² = Σ ‖f_i‖²`.
    pub fn bw_norm_sq(&self) -> Rational {
        self.polys.iter().map(Polynomial::bw_norm_sq).sum()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.polys.iter().all(Polynomial::has_real_coefficients)
    }

    pub fn evaluate<S: Scalar>(&self, x: &[S]) -> Result<Vec<S>, NumericError> {
        self.check_dim(x)?;
        Ok(LiftedPolys::new(self, point_bits(x)).eval(x))
    }

    /// `Df(x)`, by term-wise differentiation then evaluation.
    pub fn jacobian<S: Scalar>(&self, x: &[S]) -> Result<CMatrix<S>, NumericError> {
        self.check_dim(x)?;
        Ok(LiftedPolys::new(self, point_bits(x)).jacobian(x))
    }

    fn check_dim<S>(&self, x: &[S]) -> Result<(), NumericError> {
        if x.len() != self.nvars {
            return Err(NumericError::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn point_bits<S: Scalar>(x: &[S]) -> u32 {
    x.first().map_or(crate::numeric::MIN_BITS, Scalar::bits)
}

/// Squared diagonal of `Δ_(d)(x)`: `d_i · (‖x‖₁²)^(d_i − 1)`.
///
/// Entries for `d_i = 0` are zero.
pub fn delta_sq_entries<R: Real>(degrees: &[u32], n1sq: &R) -> Vec<R> {
    let bits = n1sq.precision();
    degrees
        .iter()
        .map(|&d| {
            let mut acc = R::from_int(d as i64, bits);
            for _ in 1..d {
                acc *= n1sq;
            }
            acc
        })
        .collect()
}

/// Frobenius bound for `‖A⁻¹ · diag(scale)‖²` given `A⁻¹`, where
/// `scale_sq` holds the squared column scales.
pub(crate) fn scaled_inverse_frobenius_sq<S: Scalar>(inverse: &CMatrix<S>, scale_sq: &[S::Real]) -> S::Real {
    let norms = inverse.column_norms_sq();
    let mut iter = norms.into_iter().zip(scale_sq);
    let Some((first, s0)) = iter.next() else {
        return S::Real::from_int(0, crate::numeric::MIN_BITS);
    };
    let mut acc = first * s0;
    for (n, s) in iter {
        acc += &(n * s);
    }
    acc
}

/// Square of the Shub–Smale bound `γ(f,x) ≤ μ(f,x)·D^{3/2} / (2‖x‖₁)`:
/// returns `μ²·D³ / (4‖x‖₁²)` with
/// `μ² = max{1, ‖f‖²·‖Df(x)⁻¹Δ_(d)(x)‖_F²}`.
///
/// Exact in rational mode. Fails with `SingularMatrix` when `Df(x)` is not
/// invertible.
pub fn gamma_bound_poly_sq<S: Scalar>(system: &PolynomialSystem, x: &[S]) -> Result<S::Real, NumericError> {
    if !system.is_square() {
        return Err(NumericError::NotSquare {
            rows: system.len(),
            cols: system.nvars(),
        });
    }
    let mu_sq = mu_poly_sq(system, x)?;
    let n1sq = norm1_sq(x);
    let d = system.max_degree() as i64;
    let bits = point_bits(x);
    let d3 = S::Real::from_int(d * d * d, bits);
    Ok(mu_sq * &d3 / (n1sq * S::Real::from_int(4, bits)))
}

/// `μ(f,x)²` with the Frobenius upper bound for the operator norm.
pub fn mu_poly_sq<S: Scalar>(system: &PolynomialSystem, x: &[S]) -> Result<S::Real, NumericError> {
    let bits = point_bits(x);
    let jac = system.jacobian(x)?;
    let inverse = solve_columns(&jac, &CMatrix::identity(system.len(), bits))?;
    let n1sq = norm1_sq(x);
    let delta = delta_sq_entries(&system.degrees(), &n1sq);
    let f_sq = S::Real::from_rational(&system.bw_norm_sq(), bits);
    let product = f_sq * scaled_inverse_frobenius_sq(&inverse, &delta);
    Ok(S::Real::from_int(1, bits).max_of(product))
}

/// Powers `x_j^k` for `k ≤ max_degree`.
pub(crate) struct PowerTable<S> {
    powers: Vec<Vec<S>>,
}

impl<S: Scalar> PowerTable<S> {
    pub(crate) fn new(x: &[S], max_degree: u32) -> Self {
        let bits = point_bits(x);
        let powers = x
            .iter()
            .map(|xi| {
                let mut row = Vec::with_capacity(max_degree as usize + 1);
                row.push(S::one(bits));
                for k in 1..=max_degree as usize {
                    let next = row[k - 1].clone() * xi;
                    row.push(next);
                }
                row
            })
            .collect();
        PowerTable { powers }
    }

    fn get(&self, var: usize, exp: u32) -> &S {
        &self.powers[var][exp as usize]
    }
}

/// A polynomial with coefficients converted once to the working scalar.
#[derive(Clone, Debug)]
pub(crate) struct LiftedPoly<S> {
    // (coefficient, sparse exponents)
    terms: Vec<(S, Vec<(usize, u32)>)>,
}

impl<S: Scalar> LiftedPoly<S> {
    pub(crate) fn new(p: &Polynomial, bits: u32) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(c, m)| {
                let sparse = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| (j, e))
                    .collect();
                (S::from_exact(c, bits), sparse)
            })
            .collect();
        LiftedPoly { terms }
    }

    pub(crate) fn eval(&self, powers: &PowerTable<S>, bits: u32) -> S {
        let mut acc = S::zero(bits);
        for (c, exps) in &self.terms {
            let mut t = c.clone();
            for &(j, e) in exps {
                t *= powers.get(j, e);
            }
            acc += &t;
        }
        acc
    }
}

/// Lifted polynomials plus their lifted partial derivatives.
#[derive(Clone, Debug)]
pub(crate) struct LiftedPolys<S> {
    nvars: usize,
    bits: u32,
    max_degree: u32,
    polys: Vec<LiftedPoly<S>>,
    // per row: (column, derivative)
    partials: Vec<Vec<(usize, LiftedPoly<S>)>>,
}

impl<S: Scalar> LiftedPolys<S> {
    pub(crate) fn new(system: &PolynomialSystem, bits: u32) -> Self {
        let polys = system.polys().iter().map(|p| LiftedPoly::new(p, bits)).collect();
        let partials = system
            .polys()
            .iter()
            .map(|p| {
                (0..system.nvars())
                    .filter_map(|j| {
                        let d = p.derivative(j);
                        (!d.is_zero()).then(|| (j, LiftedPoly::new(&d, bits)))
                    })
                    .collect()
            })
            .collect();
        LiftedPolys {
            nvars: system.nvars(),
            bits,
            max_degree: system.max_degree(),
            polys,
            partials,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.polys.len()
    }

    pub(crate) fn eval(&self, x: &[S]) -> Vec<S> {
        let powers = PowerTable::new(x, self.max_degree);
        self.polys.iter().map(|p| p.eval(&powers, self.bits)).collect()
    }

    pub(crate) fn eval_with(&self, powers: &PowerTable<S>) -> Vec<S> {
        self.polys.iter().map(|p| p.eval(powers, self.bits)).collect()
    }

    pub(crate) fn powers(&self, x: &[S]) -> PowerTable<S> {
        PowerTable::new(x, self.max_degree)
    }

    pub(crate) fn jacobian(&self, x: &[S]) -> CMatrix<S> {
        let powers = PowerTable::new(x, self.max_degree);
        let mut jac = CMatrix::zeros(self.polys.len(), self.nvars, self.bits);
        self.fill_jacobian(&powers, &mut jac, 0);
        jac
    }

    /// Writes the rows of this block into `jac` starting at `row_offset`.
    pub(crate) fn fill_jacobian(&self, powers: &PowerTable<S>, jac: &mut CMatrix<S>, row_offset: usize) {
        for (i, row) in self.partials.iter().enumerate() {
            for (j, d) in row {
                jac.set(row_offset + i, *j, d.eval(powers, self.bits));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::BigComplex;

    fn poly(nvars: usize, terms: &[(i64, i64, &[u32])]) -> Polynomial {
        Polynomial::new(
            nvars,
            terms
                .iter()
                .map(|&(p, q, e)| (ExactComplex::from_ratio(p, q), Monomial::new(e.to_vec()))),
        )
        .unwrap()
    }

    fn x2_minus_2() -> PolynomialSystem {
        PolynomialSystem::new(1, vec![poly(1, &[(1, 1, &[2]), (-2, 1, &[0])])]).unwrap()
    }

    #[test]
    fn normalizes_terms() {
        let p = poly(2, &[(1, 1, &[0, 1]), (2, 1, &[1, 1]), (-1, 1, &[0, 1]), (3, 1, &[2, 0])]);
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.degree(), 2);
        // graded lex, highest first
        assert_eq!(p.terms()[0].1.exponents(), &[2, 0]);
        assert_eq!(Polynomial::zero(3).degree(), 0);
        assert_eq!(Polynomial::zero(3).bw_norm_sq(), Rational::new());
    }

    #[test]
    fn evaluate_examples() {
        let s = x2_minus_2();
        let v = s.evaluate(&[ExactComplex::from_ratio(3, 2)]).unwrap();
        assert_eq!(v[0], ExactComplex::from_ratio(1, 4));
        let f = s.evaluate(&[BigComplex::from_f64(1.5, 0.0, 64)]).unwrap();
        assert_eq!(f[0].to_c64(), (0.25, 0.0));
        let sum = PolynomialSystem::new(2, vec![poly(2, &[(1, 1, &[1, 0]), (1, 1, &[0, 1])])]).unwrap();
        let z = sum
            .evaluate(&[ExactComplex::from_int(1), ExactComplex::from_int(-1)])
            .unwrap();
        assert!(z[0].is_zero_value());
        assert!(s.evaluate(&[ExactComplex::one(), ExactComplex::one()]).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let j = x2_minus_2().jacobian(&[ExactComplex::from_ratio(3, 2)]).unwrap();
        assert_eq!(j.get(0, 0), &ExactComplex::from_int(3));
        let prod = PolynomialSystem::new(2, vec![poly(2, &[(1, 1, &[1, 1])])]).unwrap();
        let (a, b) = (ExactComplex::from_int(5), ExactComplex::from_ratio(-2, 3));
        let j = prod.jacobian(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(j.get(0, 0), &b);
        assert_eq!(j.get(0, 1), &a);
    }

    #[test]
    fn bw_norm_examples() {
        assert_eq!(poly(1, &[(1, 1, &[1])]).bw_norm_sq(), Rational::from(1));
        assert_eq!(poly(2, &[(1, 1, &[1, 1])]).bw_norm_sq(), Rational::from((1, 2)));
        assert_eq!(x2_minus_2().bw_norm_sq(), Rational::from(5));
    }

    #[test]
    fn delta_examples() {
        let r = delta_sq_entries(&[1], &Rational::from(7));
        assert_eq!(r, vec![Rational::from(1)]);
        let r = delta_sq_entries(&[2], &Rational::from((13, 4)));
        assert_eq!(r, vec![Rational::from((13, 2))]);
        let r = delta_sq_entries(&[1, 1, 2, 2], &Rational::from(1));
        assert_eq!(r, [1, 1, 2, 2].map(Rational::from).to_vec());
        let r = delta_sq_entries(&[0, 3], &Rational::from(2));
        assert_eq!(r, vec![Rational::new(), Rational::from(12)]);
    }

    #[test]
    fn gamma_bound_hand_example() {
        let b = gamma_bound_poly_sq(&x2_minus_2(), &[ExactComplex::from_ratio(3, 2)]).unwrap();
        assert_eq!(b, Rational::from((20, 9)));
        let mu = mu_poly_sq(&x2_minus_2(), &[ExactComplex::from_ratio(3, 2)]).unwrap();
        assert_eq!(mu, Rational::from((65, 18)));
    }

    #[test]
    fn gamma_bound_singular_and_linear() {
        let s = x2_minus_2();
        assert!(matches!(
            gamma_bound_poly_sq(&s, &[ExactComplex::zero()]),
            Err(NumericError::SingularMatrix)
        ));
        // 2x − 1: Df⁻¹ = 1/2, Δ = 1, ‖f‖² = 4 + 1 = 5, μ² = 5/4, ‖x‖₁² = 1 at 0.
        let lin = PolynomialSystem::new(1, vec![poly(1, &[(2, 1, &[1]), (-1, 1, &[0])])]).unwrap();
        let b = gamma_bound_poly_sq(&lin, &[ExactComplex::zero()]).unwrap();
        assert_eq!(b, Rational::from((5, 16)));
    }

    #[test]
    fn compose_and_products() {
        // (x + 1)^2 with x ↦ 2t − 1 gives 4t²
        let q = poly(1, &[(1, 1, &[1]), (1, 1, &[0])]);
        let p = q.mul(&q);
        let image = poly(1, &[(2, 1, &[1]), (-1, 1, &[0])]);
        assert_eq!(p.compose(&[image]), poly(1, &[(4, 1, &[2])]));
    }
}
