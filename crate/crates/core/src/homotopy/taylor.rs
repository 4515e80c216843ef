use rug::{Integer, Rational};

use crate::expsys::ExpSystem;
use crate::numeric::{ExactComplex, ExpKind};
use crate::poly::{Monomial, Polynomial, PolynomialSystem};

/// Maclaurin coefficients of `kind(u)` up to `u^degree`, exact.
pub fn maclaurin(kind: ExpKind, degree: u32) -> Vec<Rational> {
    (0..=degree)
        .map(|j| {
            let inv_fact = Rational::from((Integer::from(1), Integer::from(Integer::factorial(j))));
            let odd = j % 2 == 1;
            // sign of the j-th coefficient for the trigonometric pair
            let alternating = if (j / 2) % 2 == 1 { -inv_fact.clone() } else { inv_fact.clone() };
            match kind {
                ExpKind::Exp => inv_fact,
                ExpKind::Sin if odd => alternating,
                ExpKind::Cos if !odd => alternating,
                ExpKind::Sinh if odd => inv_fact,
                ExpKind::Cosh if !odd => inv_fact,
                _ => Rational::new(),
            }
        })
        .collect()
}

/// Replaces every link `y = g(c·x)` by `y − T_r(g)(c·x)`, where `T_r` is
/// the degree-`r` Maclaurin polynomial. The result is square in `n + m`
/// variables: the rows of `P` followed by one row per link.
pub fn taylor_truncate(system: &ExpSystem, degrees: &[u32]) -> PolynomialSystem {
    assert_eq!(degrees.len(), system.m(), "one truncation degree per link");
    let nvars = system.dim();
    let mut rows: Vec<Polynomial> = system.poly().polys().to_vec();
    for (link, &r) in system.links().iter().zip(degrees) {
        let mut terms = vec![(ExactComplex::one(), Monomial::var(nvars, link.dst))];
        for (j, coeff) in maclaurin(link.kind, r).into_iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let mut exps = vec![0; nvars];
            exps[link.src] = j as u32;
            let c = link.c.pow(j as u32).scale(&-coeff);
            terms.push((c, Monomial::new(exps)));
        }
        rows.push(Polynomial::new(nvars, terms).expect("monomials sized to the system"));
    }
    PolynomialSystem::new(nvars, rows).expect("rows share the variable count")
}
