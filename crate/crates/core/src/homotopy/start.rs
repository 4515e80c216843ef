use rand::Rng;
use rand_chacha::ChaCha20Rng;
use rug::Rational;

use crate::expsys::ExpSystem;
use crate::numeric::{BigComplex, ExactComplex};
use crate::poly::{Polynomial, PolynomialSystem};

/// Denominator of every randomly drawn rational coordinate.
const DRAW_SCALE: i64 = 1 << 16;

/// A nonzero Gaussian rational with both parts in `[-1, 1]`.
pub(crate) fn draw_complex(rng: &mut ChaCha20Rng) -> ExactComplex {
    loop {
        let re = rng.gen_range(-DRAW_SCALE..=DRAW_SCALE);
        let im = rng.gen_range(-DRAW_SCALE..=DRAW_SCALE);
        if re != 0 || im != 0 {
            return ExactComplex::new(
                Rational::from((re, DRAW_SCALE)),
                Rational::from((im, DRAW_SCALE)),
            );
        }
    }
}

/// A non-real point on the unit circle, `(1 − s² + 2si)/(1 + s²)`, so that
/// the value is exact and `|γ| = 1`.
pub(crate) fn draw_unit(rng: &mut ChaCha20Rng) -> ExactComplex {
    loop {
        let k = rng.gen_range(-4 * DRAW_SCALE..=4 * DRAW_SCALE);
        if k == 0 {
            continue;
        }
        let s = Rational::from((k, DRAW_SCALE));
        let s2 = s.clone() * &s;
        let den = Rational::from(1) + &s2;
        let re = (Rational::from(1) - s2) / &den;
        let im = Rational::from(2) * s / den;
        return ExactComplex::new(re, im);
    }
}

/// Coefficients of the factors `L_{i,1} = a_i·y + b_{i,1}·x + 1` and
/// `L_{i,j} = b_{i,j}·x + 1` for one link, where `x` is the link source
/// and `y` its target.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactors {
    pub a: ExactComplex,
    /// `b[j − 1]` for `j = 1..=r`.
    pub b: Vec<ExactComplex>,
}

impl LinearFactors {
    pub fn draw(rng: &mut ChaCha20Rng, degree: u32) -> Self {
        let a = draw_complex(rng);
        let b = (0..degree.max(1)).map(|_| draw_complex(rng)).collect();
        LinearFactors { a, b }
    }

    pub fn degree(&self) -> usize {
        self.b.len()
    }

    /// `L_{i,j}` as a polynomial in the full variable set (`j` is 1-based).
    pub fn factor(&self, nvars: usize, src: usize, dst: usize, j: usize) -> Polynomial {
        let mut p = Polynomial::constant(nvars, ExactComplex::one())
            .add(&Polynomial::linear(nvars, src, self.b[j - 1].clone()));
        if j == 1 {
            p = p.add(&Polynomial::linear(nvars, dst, self.a.clone()));
        }
        p
    }
}

/// The linear-product start system for a truncated exponential system.
#[derive(Clone, Debug)]
pub struct LinearProductStart {
    pub factors: Vec<LinearFactors>,
    /// `[P; Π_j L_{i,j}]`, square in `n + m` variables.
    pub system: PolynomialSystem,
    /// Factor choices `ν` (1-based per link) that can have solutions.
    pub choices: Vec<Vec<usize>>,
}

/// Enumerates `ν ∈ Π [1, r_i]`, dropping every `ν` in which two links with
/// the same source both pick a factor without `y`: both factors then fix
/// the same coordinate to different values.
pub fn admissible_choices(sources: &[usize], degrees: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut nu = vec![1; degrees.len()];
    if degrees.contains(&0) {
        return out;
    }
    loop {
        let conflict = (0..nu.len()).any(|i| {
            nu[i] > 1 && (i + 1..nu.len()).any(|j| nu[j] > 1 && sources[i] == sources[j])
        });
        if !conflict {
            out.push(nu.clone());
        }
        // odometer with the last link varying fastest
        let mut k = nu.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if nu[k] < degrees[k] {
                nu[k] += 1;
                break;
            }
            nu[k] = 1;
        }
    }
}

impl LinearProductStart {
    /// Builds the start system, drawing `a_i` then `b_{i,1..r_i}` link by link.
    pub fn new(target: &ExpSystem, degrees: &[u32], rng: &mut ChaCha20Rng) -> Self {
        let nvars = target.dim();
        let factors: Vec<LinearFactors> =
            degrees.iter().map(|&r| LinearFactors::draw(rng, r)).collect();
        let mut rows: Vec<Polynomial> = target.poly().polys().to_vec();
        for (link, f) in target.links().iter().zip(&factors) {
            let product = (1..=f.degree()).fold(
                Polynomial::constant(nvars, ExactComplex::one()),
                |acc, j| acc.mul(&f.factor(nvars, link.src, link.dst, j)),
            );
            rows.push(product);
        }
        let sources: Vec<usize> = target.links().iter().map(|l| l.src).collect();
        let sizes: Vec<usize> = factors.iter().map(LinearFactors::degree).collect();
        LinearProductStart {
            choices: admissible_choices(&sources, &sizes),
            system: PolynomialSystem::new(nvars, rows).expect("rows share the variable count"),
            factors,
        }
    }

    /// Parameterizes the solution set of the linear rows `L_{i,ν_i} = 0`.
    ///
    /// Returns the `n` free coordinates (as indices into the full point)
    /// and, for every full coordinate, its image as a polynomial in the
    /// free ones.
    pub fn slice(&self, target: &ExpSystem, nu: &[usize]) -> Slice {
        let n = target.n();
        let nvars = target.dim();
        // coordinates fixed by a factor without y
        let mut fixed: Vec<Option<ExactComplex>> = vec![None; nvars];
        for ((link, f), &j) in target.links().iter().zip(&self.factors).zip(nu) {
            if j > 1 {
                let b = &f.b[j - 1];
                fixed[link.src] = Some(-b.recip().expect("drawn coefficients are nonzero"));
            }
        }
        let eliminated: Vec<bool> = (0..nvars)
            .map(|v| v >= n && nu[v - n] == 1)
            .collect();
        let free: Vec<usize> = (0..nvars)
            .filter(|&v| fixed[v].is_none() && !eliminated[v])
            .collect();
        let k = free.len();
        let mut images: Vec<Polynomial> = vec![Polynomial::zero(k); nvars];
        for (slot, &v) in free.iter().enumerate() {
            images[v] = Polynomial::linear(k, slot, ExactComplex::one());
        }
        for v in 0..nvars {
            if let Some(value) = &fixed[v] {
                images[v] = Polynomial::constant(k, value.clone());
            }
        }
        for ((link, f), &j) in target.links().iter().zip(&self.factors).zip(nu) {
            if j == 1 {
                // y = −(b·x + 1)/a
                let inv_a = f.a.recip().expect("drawn coefficients are nonzero");
                let bx = images[link.src].scale(&f.b[0]);
                let numer = bx.add(&Polynomial::constant(k, ExactComplex::one()));
                images[link.dst] = numer.scale(&-inv_a);
            }
        }
        Slice { free, images }
    }
}

/// An affine parameterization of the linear part of one `Q_ν`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub free: Vec<usize>,
    pub images: Vec<Polynomial>,
}

impl Slice {
    /// `P` restricted to the slice, in the free coordinates.
    pub fn restrict(&self, p: &PolynomialSystem) -> PolynomialSystem {
        let rows = p.polys().iter().map(|q| q.compose(&self.images)).collect();
        PolynomialSystem::new(self.free.len(), rows).expect("images share the free variables")
    }

    /// Lifts a point in the free coordinates back to the full space.
    pub fn lift(&self, free_point: &[BigComplex]) -> Vec<BigComplex> {
        self.images
            .iter()
            .map(|p| p.evaluate(free_point).expect("point sized to the slice"))
            .collect()
    }
}
