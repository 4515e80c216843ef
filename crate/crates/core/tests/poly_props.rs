mod common;

use expcert::numeric::norm_sq;
use expcert::poly::gamma_bound_poly_sq;
use expcert::{ExactComplex, Monomial, Polynomial, PolynomialSystem};
use num_complex::Complex64;
use proptest::prelude::*;
use rug::Rational;

use common::oracles;
use common::strategies::{point, polynomial, system};

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

fn reversed(p: &Polynomial) -> Polynomial {
    let terms = p.terms().iter().map(|(c, m)| {
        let mut e = m.exponents().to_vec();
        e.reverse();
        (c.clone(), Monomial::new(e))
    });
    Polynomial::new(p.nvars(), terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn evaluation_matches_expansion(p in polynomial(3, 5), x in point(3)) {
        let got = oracles::c(&p.evaluate(&x).unwrap());
        let want = oracles::directional_taylor(&p, &oracles::cvec(&x), &[Complex64::new(0.0, 0.0); 3])[0];
        prop_assert!(close(got, want), "{got} vs {want}");
    }

    /// `|p(x)| ≤ ‖p‖·(1 + ‖x‖²)^{d/2}`, decided exactly.
    #[test]
    fn bombieri_weyl_bounds_evaluation(p in polynomial(2, 5), x in point(2)) {
        let value = p.evaluate(&x).unwrap().norm_sq();
        let lift = Rational::from(1) + norm_sq(&x);
        let mut rhs = p.bw_norm_sq();
        for _ in 0..p.degree() {
            rhs *= &lift;
        }
        prop_assert!(value <= rhs);
    }

    #[test]
    fn bombieri_weyl_is_permutation_invariant(p in polynomial(3, 5)) {
        prop_assert_eq!(p.bw_norm_sq(), reversed(&p).bw_norm_sq());
    }

    #[test]
    fn jacobian_matches_directional_derivatives(s in system(2, 4), x in point(2)) {
        let jac = s.jacobian(&x).unwrap();
        let xc = oracles::cvec(&x);
        for (i, p) in s.polys().iter().enumerate() {
            for j in 0..2 {
                let mut e = [Complex64::new(0.0, 0.0); 2];
                e[j] = Complex64::new(1.0, 0.0);
                let want = oracles::directional_taylor(p, &xc, &e).get(1).copied().unwrap_or_default();
                prop_assert!(close(oracles::c(jac.get(i, j)), want));
                prop_assert_eq!(p.derivative(j).evaluate(&x).unwrap(), jac.get(i, j).clone());
            }
        }
    }

    /// In one variable the sampled oracle is exact, so the bound must
    /// dominate it.
    #[test]
    fn univariate_gamma_bound_dominates(p in polynomial(1, 5), x in point(1)) {
        let lin = Polynomial::linear(1, 0, ExactComplex::one());
        let p = Polynomial::new(1, p.terms().iter().cloned().chain(lin.terms().iter().cloned())).unwrap();
        let sys = PolynomialSystem::new(1, vec![p.clone()]).unwrap();
        if let Ok(bound_sq) = gamma_bound_poly_sq(&sys, &x) {
            let dirs = vec![vec![Complex64::new(1.0, 0.0)]];
            if let Some(lower) = oracles::gamma_lower(&[p], &oracles::cvec(&x), &dirs) {
                prop_assert!(bound_sq.to_f64().sqrt() >= lower * (1.0 - 1e-9));
            }
        }
    }
}
