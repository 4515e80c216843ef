//! Reference computations in plain double-precision complex arithmetic,
//! written without any of the crate's numeric routines.

use num_complex::Complex64 as C;
use rug::Rational;

use expcert::{ExactComplex, Polynomial};

pub fn c(x: &ExactComplex) -> C {
    C::new(x.re_part().to_f64(), x.im_part().to_f64())
}

pub fn cvec(xs: &[ExactComplex]) -> Vec<C> {
    xs.iter().map(c).collect()
}

pub fn norm(v: &[C]) -> f64 {
    v.iter().map(C::norm_sqr).sum::<f64>().sqrt()
}

/// `A·x` for a dense row-major matrix.
pub fn mat_vec(a: &[Vec<C>], x: &[C]) -> Vec<C> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

/// `Aᴴ·y`.
pub fn mat_h_vec(a: &[Vec<C>], y: &[C]) -> Vec<C> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().zip(y).map(|(row, yi)| row[j].conj() * yi).sum())
        .collect()
}

/// Largest singular value by power iteration on `AᴴA` (a lower bound that
/// converges from below).
pub fn spectral_norm(a: &[Vec<C>], iterations: usize) -> f64 {
    let cols = a.first().map_or(0, Vec::len);
    let mut v: Vec<C> = (0..cols).map(|j| C::new(1.0 + j as f64 * 0.37, 0.5 - j as f64 * 0.11)).collect();
    let mut sigma = 0.0;
    for _ in 0..iterations {
        let nv = norm(&v);
        if nv == 0.0 {
            return 0.0;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        let av = mat_vec(a, &v);
        sigma = norm(&av);
        v = mat_h_vec(a, &av);
    }
    sigma
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let n = b.len();
    let mut m: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().copied().chain(std::iter::once(*bi)).collect())
        .collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))?;
        if m[p][k].norm() == 0.0 {
            return None;
        }
        m.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..=n {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
        }
    }
    let mut x = vec![C::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: C = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    Some(x)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Coefficients in `s` of `p(x + s·u)`, up to `s^deg(p)`.
pub fn directional_taylor(p: &Polynomial, x: &[C], u: &[C]) -> Vec<C> {
    let d = p.degree() as usize;
    let mut out = vec![C::new(0.0, 0.0); d + 1];
    for (coeff, mono) in p.terms() {
        // Π_j (x_j + s u_j)^{e_j} as a polynomial in s
        let mut series = vec![c(coeff)];
        for (j, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor: Vec<C> = (0..=e)
                .map(|k| binomial(e, k) * x[j].powu(e - k) * u[j].powu(k))
                .collect();
            let mut next = vec![C::new(0.0, 0.0); series.len() + factor.len() - 1];
            for (a, sa) in series.iter().enumerate() {
                for (b, fb) in factor.iter().enumerate() {
                    next[a + b] += sa * fb;
                }
            }
            series = next;
        }
        for (k, v) in series.into_iter().enumerate() {
            out[k] += v;
        }
    }
    out
}

/// Lower bound on Smale's `γ(f, x)` from sampled unit directions:
/// `max_k max_u ‖Df(x)⁻¹·(D^k f(x)(u,…,u)/k!)‖^{1/(k−1)}`. The supremum of
/// a symmetric multilinear map over the unit sphere equals its norm, so the
/// bound is tight as the samples become dense; in one variable it is exact.
pub fn gamma_lower(polys: &[Polynomial], x: &[C], directions: &[Vec<C>]) -> Option<f64> {
    let n = x.len();
    let jac: Vec<Vec<C>> = polys
        .iter()
        .map(|p| {
            (0..n)
                .map(|j| {
                    let mut e = vec![C::new(0.0, 0.0); n];
                    e[j] = C::new(1.0, 0.0);
                    directional_taylor(p, x, &e).get(1).copied().unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let dmax = polys.iter().map(Polynomial::degree).max().unwrap_or(0) as usize;
    let mut best = 0.0_f64;
    for u in directions {
        let nu = norm(u);
        let u: Vec<C> = u.iter().map(|z| z / nu).collect();
        let series: Vec<Vec<C>> = polys.iter().map(|p| directional_taylor(p, x, &u)).collect();
        for k in 2..=dmax {
            let v: Vec<C> = series.iter().map(|s| s.get(k).copied().unwrap_or_default()).collect();
            let w = solve(&jac, &v)?;
            best = best.max(norm(&w).powf(1.0 / (k as f64 - 1.0)));
        }
    }
    Some(best)
}

/// `d^k/dx^k g(c·x)` in closed form.
pub fn elementary_derivative(kind: expcert::ExpKind, c: C, x: C, k: u32) -> C {
    use expcert::ExpKind::*;
    let arg = c * x;
    let ck = c.powu(k);
    let shifted = |f: fn(C) -> C, g: fn(C) -> C, sign_cycle: [f64; 4]| {
        let base = if k.is_multiple_of(2) { f(arg) } else { g(arg) };
        ck * base * sign_cycle[(k % 4) as usize]
    };
    match kind {
        Exp => ck * arg.exp(),
        Sin => shifted(|z| z.sin(), |z| z.cos(), [1.0, 1.0, -1.0, -1.0]),
        Cos => shifted(|z| z.cos(), |z| z.sin(), [1.0, -1.0, -1.0, 1.0]),
        Sinh => shifted(|z| z.sinh(), |z| z.cosh(), [1.0; 4]),
        Cosh => shifted(|z| z.cosh(), |z| z.sinh(), [1.0; 4]),
    }
}

/// `(13 − 3√17)/4 > p/q` decided in integers: `(13q − 4p)² > 153q²` with
/// `13q − 4p > 0`.
pub fn below_threshold_root(value: &Rational) -> bool {
    let (p, q) = (value.numer().clone(), value.denom().clone());
    let lhs = rug::Integer::from(13) * &q - rug::Integer::from(4) * &p;
    if lhs <= 0 {
        return false;
    }
    let sq = lhs.clone() * &lhs;
    sq > rug::Integer::from(153) * &q * &q
}
