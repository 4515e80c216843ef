mod common;

use expcert::numeric::{frobenius_norm_sq, norm_sq, solve_columns};
use expcert::{BigComplex, CMatrix, ExactComplex, NumericError, Scalar};
use proptest::prelude::*;

use common::oracles;
use common::strategies::exact;

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<ExactComplex>>> {
    proptest::collection::vec(proptest::collection::vec(exact(16, 4), n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_solve_round_trips(
        (rows, x) in (1usize..6).prop_flat_map(|n| (square(n), proptest::collection::vec(exact(16, 4), n)))
    ) {
        let a = CMatrix::from_rows(rows).unwrap();
        let b = a.mul_vec(&x);
        match solve_columns(&a, &CMatrix::column(b)) {
            Ok(sol) => prop_assert_eq!(sol.into_column(), x),
            Err(NumericError::SingularMatrix) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn floating_solve_has_small_residual(rows in square(5), x in proptest::collection::vec(exact(16, 4), 5)) {
        let bits = 128;
        let a = CMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|v| BigComplex::from_exact(v, bits)).collect()).collect(),
        )
        .unwrap();
        let xb: Vec<BigComplex> = x.iter().map(|v| BigComplex::from_exact(v, bits)).collect();
        let b = a.mul_vec(&xb);
        if let Ok(sol) = solve_columns(&a, &CMatrix::column(b.clone())) {
            let r: Vec<BigComplex> = a.mul_vec(&sol.into_column()).into_iter().zip(&b).map(|(p, q)| p - q).collect();
            let scale = norm_sq(&b).to_f64().max(1.0);
            prop_assert!(norm_sq(&r).to_f64() <= 1e-60 * scale);
        }
    }

    #[test]
    fn frobenius_dominates_spectral(n in 1usize..7, rows in square(6)) {
        let rows: Vec<Vec<ExactComplex>> = rows.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
        let frob = frobenius_norm_sq(&CMatrix::from_rows(rows.clone()).unwrap()).to_f64().sqrt();
        let oracle: Vec<Vec<_>> = rows.iter().map(|r| oracles::cvec(r)).collect();
        prop_assert!(frob >= oracles::spectral_norm(&oracle, 200) * (1.0 - 1e-12));
    }

    #[test]
    fn exact_scalars_round_through_floats(z in exact(1000, 7)) {
        let f = BigComplex::from_exact(&z, 200);
        let (re, im) = f.to_c64();
        prop_assert!((re - z.re_part().to_f64()).abs() <= 1e-12 * re.abs().max(1.0));
        prop_assert!((im - z.im_part().to_f64()).abs() <= 1e-12 * im.abs().max(1.0));
    }
}
