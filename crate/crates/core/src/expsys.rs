//! Polynomial-exponential systems.
//!
//! A system is a polynomial part `P` in `N = n + m` variables together with
//! `m` links `y_dst = g(c · x_src)`, one per auxiliary variable. The square
//! system that gets certified is `[P(z); y_dst − g(c · x_src)]`.

use rug::Rational;

use crate::error::{NumericError, SystemError};
use crate::numeric::{norm1_sq, solve_columns, CMatrix, ExactComplex, ExpKind, Real, Scalar, MIN_BITS};
use crate::poly::{delta_sq_entries, point_bits, scaled_inverse_frobenius_sq, LiftedPolys, PolynomialSystem};

/// `y_dst = kind(c · x_src)`, with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpLink {
    pub kind: ExpKind,
    pub c: ExactComplex,
    pub src: usize,
    pub dst: usize,
}

impl ExpLink {
    pub fn new(kind: ExpKind, c: ExactComplex, src: usize, dst: usize) -> Self {
        ExpLink { kind, c, src, dst }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSystem {
    poly: PolynomialSystem,
    links: Vec<ExpLink>,
}

impl ExpSystem {
    /// Validates the shape: `P` has `n` rows in `n + m` variables, every
    /// link reads an `x` variable and defines a distinct `y` variable.
    pub fn new(poly: PolynomialSystem, links: Vec<ExpLink>) -> Result<Self, SystemError> {
        let n = poly.len();
        let m = links.len();
        if poly.nvars() != n + m {
            return Err(SystemError::NotSquare {
                equations: n + m,
                variables: poly.nvars(),
            });
        }
        let mut seen = vec![false; m];
        for (index, link) in links.iter().enumerate() {
            if link.src >= n {
                return Err(SystemError::LinkSource {
                    index,
                    src: link.src,
                    n,
                });
            }
            if link.dst < n || link.dst >= n + m {
                return Err(SystemError::LinkTarget {
                    index,
                    dst: link.dst,
                    lo: n,
                    hi: n + m - 1,
                });
            }
            if std::mem::replace(&mut seen[link.dst - n], true) {
                return Err(SystemError::DuplicateTarget { dst: link.dst });
            }
        }
        Ok(ExpSystem { poly, links })
    }

    /// A square polynomial system with no links.
    pub fn polynomial(poly: PolynomialSystem) -> Result<Self, SystemError> {
        Self::new(poly, Vec::new())
    }

    pub fn poly(&self) -> &PolynomialSystem {
        &self.poly
    }

    pub fn links(&self) -> &[ExpLink] {
        &self.links
    }

    /// Number of polynomial equations.
    pub fn n(&self) -> usize {
        self.poly.len()
    }

    /// Number of links.
    pub fn m(&self) -> usize {
        self.links.len()
    }

    /// Total dimension `N = n + m`.
    pub fn dim(&self) -> usize {
        self.poly.nvars()
    }

    /// Syntactic real-map test: every coefficient and link constant is real.
    pub fn has_real_data(&self) -> bool {
        self.poly.has_real_coefficients() && self.links.iter().all(|l| l.c.is_real())
    }

    /// Working-precision evaluator for repeated use.
    pub fn evaluator<S: Scalar>(&self, bits: u32) -> Result<Evaluator<S>, NumericError> {
        Evaluator::new(self, bits)
    }

    pub fn evaluate<S: Scalar>(&self, z: &[S]) -> Result<Vec<S>, NumericError> {
        self.check_dim(z)?;
        Ok(self.evaluator(point_bits(z))?.eval(z))
    }

    pub fn jacobian<S: Scalar>(&self, z: &[S]) -> Result<CMatrix<S>, NumericError> {
        self.check_dim(z)?;
        Ok(self.evaluator(point_bits(z))?.jacobian(z))
    }

    pub(crate) fn check_dim<S>(&self, z: &[S]) -> Result<(), NumericError> {
        if z.len() != self.dim() {
            return Err(NumericError::DimensionMismatch {
                expected: self.dim(),
                found: z.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct LiftedLink<S> {
    kind: ExpKind,
    c: S,
    src: usize,
    dst: usize,
}

/// An [`ExpSystem`] with all constants converted to one scalar kind.
#[derive(Clone, Debug)]
pub struct Evaluator<S> {
    bits: u32,
    dim: usize,
    poly: LiftedPolys<S>,
    links: Vec<LiftedLink<S>>,
}

impl<S: Scalar> Evaluator<S> {
    fn new(system: &ExpSystem, bits: u32) -> Result<Self, NumericError> {
        if S::is_exact() && system.m() > 0 {
            return Err(NumericError::ExactModeUnsupported);
        }
        Ok(Evaluator {
            bits,
            dim: system.dim(),
            poly: LiftedPolys::new(system.poly(), bits),
            links: system
                .links()
                .iter()
                .map(|l| LiftedLink {
                    kind: l.kind,
                    c: S::from_exact(&l.c, bits),
                    src: l.src,
                    dst: l.dst,
                })
                .collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn link_value(link: &LiftedLink<S>, z: &[S], kind: ExpKind) -> S {
        let arg = link.c.clone() * &z[link.src];
        arg.elementary(kind)
            .expect("exact evaluators are never built for systems with links")
    }

    pub fn eval(&self, z: &[S]) -> Vec<S> {
        let mut out = self.poly.eval(z);
        for link in &self.links {
            out.push(z[link.dst].clone() - Self::link_value(link, z, link.kind));
        }
        out
    }

    pub fn jacobian(&self, z: &[S]) -> CMatrix<S> {
        let powers = self.poly.powers(z);
        let mut jac = CMatrix::zeros(self.dim, self.dim, self.bits);
        self.poly.fill_jacobian(&powers, &mut jac, 0);
        let n = self.poly.len();
        for (i, link) in self.links.iter().enumerate() {
            let (dkind, negated) = link.kind.derivative();
            let mut d = link.c.clone() * &Self::link_value(link, z, dkind);
            if !negated {
                d = -d;
            }
            jac.set(n + i, link.src, d);
            jac.set(n + i, link.dst, S::one(self.bits));
        }
        jac
    }

    /// Value and Jacobian sharing one power table.
    pub fn eval_with_jacobian(&self, z: &[S]) -> (Vec<S>, CMatrix<S>) {
        let powers = self.poly.powers(z);
        let mut values = self.poly.eval_with(&powers);
        let mut jac = CMatrix::zeros(self.dim, self.dim, self.bits);
        self.poly.fill_jacobian(&powers, &mut jac, 0);
        let n = self.poly.len();
        for (i, link) in self.links.iter().enumerate() {
            values.push(z[link.dst].clone() - Self::link_value(link, z, link.kind));
            let (dkind, negated) = link.kind.derivative();
            let mut d = link.c.clone() * &Self::link_value(link, z, dkind);
            if !negated {
                d = -d;
            }
            jac.set(n + i, link.src, d);
            jac.set(n + i, link.dst, S::one(self.bits));
        }
        (values, jac)
    }
}

fn abs_of<S: Scalar>(x: &S) -> Option<S::Real> {
    x.abs_sq().sqrt()
}

/// Per-link term of the specialized bound: `A(c, x)` for exp,
/// `B(c, x)` for sin and cos, `C(c, x)` for sinh and cosh, where e.g.
/// `B(c, x) = max{|c|, |c² sin(cx)/2|, |c² cos(cx)/2|}`.
///
/// `None` in exact mode, where absolute values are not representable.
pub fn link_bound_term<S: Scalar>(link: &ExpLink, x: &S) -> Option<S::Real> {
    let bits = x.bits().max(MIN_BITS);
    let c = S::from_exact(&link.c, bits);
    let arg = c.clone() * x;
    let c_abs_sq = link.c.norm_sq();
    let half_c2 = S::Real::from_rational(&(c_abs_sq / Rational::from(2)), bits);
    let values: Vec<S> = match link.kind {
        ExpKind::Exp => vec![arg.elementary(ExpKind::Exp)?],
        ExpKind::Sin | ExpKind::Cos => vec![arg.elementary(ExpKind::Sin)?, arg.elementary(ExpKind::Cos)?],
        ExpKind::Sinh | ExpKind::Cosh => vec![arg.elementary(ExpKind::Sinh)?, arg.elementary(ExpKind::Cosh)?],
    };
    let mut best = abs_of(&c)?;
    for v in values {
        best = best.max_of(half_c2.clone() * &abs_of(&v)?);
    }
    Some(best)
}

/// `μ(F, z)²` with the Frobenius bound: the first `n` columns of
/// `DF(z)⁻¹` are scaled by `Δ_ii·‖P‖`, the link columns are left as is.
pub fn mu_exp_sq<S: Scalar>(system: &ExpSystem, z: &[S]) -> Result<S::Real, NumericError> {
    system.check_dim(z)?;
    let bits = point_bits(z);
    let jac = system.jacobian(z)?;
    let inverse = solve_columns(&jac, &CMatrix::identity(system.dim(), bits))?;
    let n1sq = norm1_sq(z);
    let p_sq = S::Real::from_rational(&system.poly().bw_norm_sq(), bits);
    let mut scale: Vec<S::Real> = delta_sq_entries(&system.poly().degrees(), &n1sq)
        .into_iter()
        .map(|d| d * &p_sq)
        .collect();
    scale.extend((0..system.m()).map(|_| S::Real::from_int(1, bits)));
    let product = scaled_inverse_frobenius_sq(&inverse, &scale);
    Ok(S::Real::from_int(1, bits).max_of(product))
}

/// `μ·(D^{3/2}/(2‖z‖₁) + Σ link terms)`, with `‖z‖₁` over all `N`
/// coordinates. Floating mode only.
pub fn gamma_bound_exp<S: Scalar>(system: &ExpSystem, z: &[S]) -> Result<S::Real, NumericError> {
    let mu = mu_exp_sq(system, z)?.sqrt().ok_or(NumericError::ExactModeUnsupported)?;
    let bits = point_bits(z);
    let n1 = norm1_sq(z).sqrt().ok_or(NumericError::ExactModeUnsupported)?;
    let d = system.poly().max_degree() as i64;
    let d32 = S::Real::from_int(d * d * d, bits)
        .sqrt()
        .ok_or(NumericError::ExactModeUnsupported)?;
    let mut inner = d32 / (n1 * S::Real::from_int(2, bits));
    for link in system.links() {
        let term = link_bound_term(link, &z[link.src]).ok_or(NumericError::ExactModeUnsupported)?;
        inner += &term;
    }
    Ok(mu * inner)
}

/// Squared γ-bound for any system: exact for polynomial systems in
/// rational mode, the specialized exponential bound otherwise.
pub fn gamma_bound_sq<S: Scalar>(system: &ExpSystem, z: &[S]) -> Result<S::Real, NumericError> {
    system.check_dim(z)?;
    if system.m() == 0 {
        return crate::poly::gamma_bound_poly_sq(system.poly(), z);
    }
    let g = gamma_bound_exp(system, z)?;
    Ok(g.clone() * g)
}

/// Order and ODE coefficient moduli of a function satisfying
/// `g^(r) = c_{r−1} g^(r−1) + … + c_0 g`.
#[derive(Clone, Debug, PartialEq)]
pub struct OdeBoundData<R> {
    order: u32,
    coeffs: Vec<R>,
    c_max: R,
}

impl<R: Real> OdeBoundData<R> {
    /// `coeffs` are the moduli `|c_0| … |c_{r−1}|`; the order is their count.
    pub fn new(coeffs: Vec<R>, bits: u32) -> Option<Self> {
        if coeffs.is_empty() {
            return None;
        }
        let c_max = coeffs
            .iter()
            .cloned()
            .fold(R::from_int(1, bits), R::max_of);
        Some(OdeBoundData {
            order: coeffs.len() as u32,
            coeffs,
            c_max,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// `C = max{1, |c_0|, …, |c_{r−1}|}`.
    pub fn c_max(&self) -> &R {
        &self.c_max
    }
}

impl OdeBoundData<rug::Float> {
    /// ODE data of `kind(c·x)` and `B(x) = max_{j<r} |g^(j)(x)|`.
    pub fn for_kind(kind: ExpKind, c: &ExactComplex, x: &crate::numeric::BigComplex) -> (Self, rug::Float) {
        use crate::numeric::BigComplex;
        let bits = x.bits().max(MIN_BITS);
        let cz = BigComplex::from_exact(c, bits);
        let arg = cz.clone() * x;
        let c_abs = cz.abs();
        let zero = rug::Float::new(bits);
        let (coeffs, b) = match kind {
            ExpKind::Exp => (vec![c_abs], arg.exp().abs()),
            _ => {
                let c2 = rug::Float::with_val(bits, c.norm_sq());
                let (f, fd) = match kind {
                    ExpKind::Sin => (arg.sin(), arg.cos()),
                    ExpKind::Cos => (arg.cos(), arg.sin()),
                    ExpKind::Sinh => (arg.sinh(), arg.cosh()),
                    _ => (arg.cosh(), arg.sinh()),
                };
                let b = f.abs().max_of(c_abs * fd.abs());
                (vec![c2, zero], b)
            }
        };
        (Self::new(coeffs, bits).expect("nonempty"), b)
    }
}

/// Bound on `|g^(k)(x)|`: `B` for `k < r`, else `(2C)^(k−r)·r·B·C`.
pub fn ode_derivative_bound<R: Real>(data: &OdeBoundData<R>, b: &R, k: u32) -> R {
    if k < data.order {
        return b.clone();
    }
    let bits = b.precision();
    let two_c = R::from_int(2, bits) * data.c_max();
    let mut acc = R::from_int(data.order as i64, bits) * b * data.c_max();
    for _ in 0..k - data.order {
        acc *= &two_c;
    }
    acc
}

/// `μ·(D^{3/2}/(2·n1) + 2·Σ C_i²·max{1, r_i·B_i})`.
///
/// Floating only: `n1` is the unsquared `‖z‖₁`.
pub fn gamma_bound_generic(
    mu: &rug::Float,
    max_degree: u32,
    n1: &rug::Float,
    odes: &[(OdeBoundData<rug::Float>, rug::Float)],
) -> rug::Float {
    use rug::Float;
    let bits = mu.prec();
    let d = Float::with_val(bits, max_degree);
    let mut inner = Float::with_val(bits, &d * &d) * &d;
    inner = inner.sqrt() / (Float::with_val(bits, 2) * n1);
    let one = Float::with_val(bits, 1);
    for (data, b) in odes {
        let rb = Float::with_val(bits, data.order()) * b;
        let c2 = Float::with_val(bits, data.c_max() * data.c_max());
        inner += Float::with_val(bits, 2) * c2 * one.clone().max_of(rb);
    }
    Float::with_val(bits, mu * &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::BigComplex;
    use crate::poly::{Monomial, Polynomial};
    use rug::Float;

    const BITS: u32 = 128;

    fn c(re: f64) -> BigComplex {
        BigComplex::from_f64(re, 0.0, BITS)
    }

    /// One dummy polynomial row `x − 0` plus a single link.
    fn single_link(kind: ExpKind, k: i64) -> ExpSystem {
        let p = Polynomial::new(2, [(ExactComplex::one(), Monomial::new(vec![1, 0]))]).unwrap();
        ExpSystem::new(
            PolynomialSystem::new(2, vec![p]).unwrap(),
            vec![ExpLink::new(kind, ExactComplex::from_int(k), 0, 1)],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let p = Polynomial::new(3, [(ExactComplex::one(), Monomial::new(vec![1, 0, 0]))]).unwrap();
        let sys = PolynomialSystem::new(3, vec![p]).unwrap();
        let link = |src, dst| ExpLink::new(ExpKind::Exp, ExactComplex::one(), src, dst);
        assert!(matches!(
            ExpSystem::new(sys.clone(), vec![link(0, 1), link(0, 1)]),
            Err(SystemError::DuplicateTarget { dst: 1 })
        ));
        assert!(matches!(
            ExpSystem::new(sys.clone(), vec![link(1, 1), link(0, 2)]),
            Err(SystemError::LinkSource { .. })
        ));
        assert!(matches!(
            ExpSystem::new(sys.clone(), vec![link(0, 0), link(0, 2)]),
            Err(SystemError::LinkTarget { .. })
        ));
        assert!(matches!(ExpSystem::new(sys.clone(), vec![link(0, 1)]), Err(SystemError::NotSquare { .. })));
        assert!(ExpSystem::new(sys, vec![link(0, 1), link(0, 2)]).is_ok());
    }

    #[test]
    fn residual_at_trivial_points() {
        let r = single_link(ExpKind::Sin, 1).evaluate(&[c(0.0), c(0.0)]).unwrap();
        assert!(r[1].is_zero());
        let r = single_link(ExpKind::Exp, 1).evaluate(&[c(0.0), c(1.0)]).unwrap();
        assert!(r[1].is_zero());
    }

    #[test]
    fn exact_mode_rejects_links() {
        let z = [ExactComplex::zero(), ExactComplex::zero()];
        assert!(matches!(
            single_link(ExpKind::Exp, 1).evaluate(&z),
            Err(NumericError::ExactModeUnsupported)
        ));
    }

    #[test]
    fn jacobian_link_rows() {
        let j = single_link(ExpKind::Cos, 1).jacobian(&[c(0.0), c(0.3)]).unwrap();
        assert!(j.get(1, 0).is_zero());
        assert_eq!(j.get(1, 1).to_c64(), (1.0, 0.0));
        let j = single_link(ExpKind::Exp, 2).jacobian(&[c(0.0), c(0.3)]).unwrap();
        assert_eq!(j.get(1, 0).to_c64(), (-2.0, 0.0));
        let j = single_link(ExpKind::Sinh, 3).jacobian(&[c(0.0), c(0.3)]).unwrap();
        assert_eq!(j.get(1, 0).to_c64(), (-3.0, 0.0));
    }

    #[test]
    fn link_terms_at_zero() {
        let term = |kind, k| {
            let link = ExpLink::new(kind, ExactComplex::from_int(k), 0, 1);
            link_bound_term(&link, &c(0.0)).unwrap().to_f64()
        };
        assert_eq!(term(ExpKind::Exp, 1), 1.0);
        assert_eq!(term(ExpKind::Exp, 2), 2.0);
        assert_eq!(term(ExpKind::Sin, 1), 1.0);
        assert_eq!(term(ExpKind::Sinh, 2), 2.0);
        assert_eq!(term(ExpKind::Cosh, 3), 4.5);
    }

    #[test]
    fn mu_with_identity_jacobian() {
        // x − 0 and y − exp(0·x): DF = I, ‖P‖ = 1, Δ = 1 at any point with x = 0
        let p = Polynomial::new(2, [(ExactComplex::one(), Monomial::new(vec![1, 0]))]).unwrap();
        let sys = ExpSystem::new(
            PolynomialSystem::new(2, vec![p]).unwrap(),
            vec![ExpLink::new(ExpKind::Exp, ExactComplex::zero(), 0, 1)],
        )
        .unwrap();
        let mu = mu_exp_sq(&sys, &[c(0.0), c(1.0)]).unwrap();
        assert_eq!(mu.to_f64(), 2.0);
    }

    #[test]
    fn ode_bound_examples() {
        let d = OdeBoundData::new(vec![Rational::from(3), Rational::new()], 0).unwrap();
        assert_eq!(ode_derivative_bound(&d, &Rational::from(5), 1), Rational::from(5));
        let unit = OdeBoundData::new(vec![Rational::from(1), Rational::new()], 0).unwrap();
        assert_eq!(ode_derivative_bound(&unit, &Rational::from(1), 2), Rational::from(2));
        assert_eq!(ode_derivative_bound(&unit, &Rational::from(1), 6), Rational::from(32));
    }

    #[test]
    fn generic_bound_examples() {
        let mu = Float::with_val(BITS, 1);
        let n1 = Float::with_val(BITS, 1);
        let base = gamma_bound_generic(&mu, 1, &n1, &[]);
        assert_eq!(base.to_f64(), 0.5);
        let ode = OdeBoundData::new(vec![Float::with_val(BITS, 1)], BITS).unwrap();
        let with = gamma_bound_generic(&mu, 1, &n1, &[(ode, Float::new(BITS))]);
        assert_eq!(with.to_f64(), 2.5);
        let (exp_data, b) = OdeBoundData::for_kind(ExpKind::Exp, &ExactComplex::one(), &c(0.0));
        assert_eq!((exp_data.order(), b.to_f64()), (1, 1.0));
        let with = gamma_bound_generic(&mu, 1, &n1, &[(exp_data, b)]);
        assert_eq!(with.to_f64(), 2.5);
    }
}
