//! Proptest strategies for small exact inputs.

use proptest::prelude::*;
use rug::Rational;

use expcert::{ExactComplex, ExpKind, Monomial, Polynomial, PolynomialSystem};

/// A Gaussian rational with parts `a/den`, `|a| ≤ span`.
pub fn exact(span: i64, den: i64) -> impl Strategy<Value = ExactComplex> {
    (-span..=span, -span..=span)
        .prop_map(move |(re, im)| ExactComplex::new(Rational::from((re, den)), Rational::from((im, den))))
}

pub fn real_exact(span: i64, den: i64) -> impl Strategy<Value = ExactComplex> {
    (-span..=span).prop_map(move |re| ExactComplex::real(Rational::from((re, den))))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<ExactComplex>> {
    proptest::collection::vec(exact(16, 8), n)
}

pub fn monomial(n: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_degree, n).prop_filter_map("degree cap", move |e| {
        (e.iter().sum::<u32>() <= max_degree).then(|| Monomial::new(e))
    })
}

pub fn polynomial(n: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((exact(8, 4), monomial(n, max_degree)), 1..6)
        .prop_map(move |terms| Polynomial::new(n, terms).expect("sized monomials"))
}

/// Real-coefficient polynomial with every variable present linearly, so the
/// Jacobian is generically invertible.
pub fn real_polynomial(n: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    (
        proptest::collection::vec((real_exact(8, 4), monomial(n, max_degree)), 1..5),
        proptest::collection::vec(real_exact(8, 4), n),
    )
        .prop_map(move |(terms, linear)| {
            let lin = linear.into_iter().enumerate().map(|(v, c)| (c, Monomial::var(n, v)));
            Polynomial::new(n, terms.into_iter().chain(lin)).expect("sized monomials")
        })
}

pub fn system(n: usize, max_degree: u32) -> impl Strategy<Value = PolynomialSystem> {
    proptest::collection::vec(polynomial(n, max_degree), n)
        .prop_map(move |rows| PolynomialSystem::new(n, rows).expect("square"))
}

pub fn real_system(n: usize, max_degree: u32) -> impl Strategy<Value = PolynomialSystem> {
    proptest::collection::vec(real_polynomial(n, max_degree), n)
        .prop_map(move |rows| PolynomialSystem::new(n, rows).expect("square"))
}

pub fn kind() -> impl Strategy<Value = ExpKind> {
    proptest::sample::select(ExpKind::ALL.to_vec())
}
