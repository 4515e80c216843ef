use num_complex::Complex64;
use rug::Rational;

use crate::error::NumericError;
use crate::expsys::{Evaluator, ExpSystem};
use crate::numeric::{norm_sq, solve_columns, BigComplex, CMatrix, ExactComplex, Real, Scalar, DOUBLE_BITS};

/// Step-size control and acceptance thresholds for one path.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackerConfig {
    /// Precision of endpoint polishing, deduplication and everything
    /// handed to certification.
    pub bits: u32,
    /// Precision while following a path; at most [`DOUBLE_BITS`] selects
    /// hardware doubles.
    pub track_bits: u32,
    /// First and largest step in `t`.
    pub initial_dt: f64,
    /// A path whose step falls below this is reported as failed.
    pub min_dt: f64,
    /// Newton iterations allowed per corrector call.
    pub max_corrections: usize,
    /// Relative Newton step length at which the corrector stops.
    pub corrector_tol: f64,
    /// Each Newton step must shrink by at least this factor.
    pub contraction: f64,
    /// Relative Newton step length an endpoint must reach at `t = 0`.
    pub endpoint_tol: f64,
    /// Newton iterations allowed when polishing an endpoint.
    pub endgame_iterations: usize,
    /// A path leaving this ball is reported as diverged.
    pub blowup: f64,
    /// Consecutive accepted steps before `dt` grows by 1.5.
    pub growth_after: usize,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        TrackerConfig {
            bits: 256,
            track_bits: DOUBLE_BITS,
            initial_dt: 0.05,
            min_dt: 1e-12,
            max_corrections: 3,
            corrector_tol: 1e-10,
            contraction: 0.5,
            endpoint_tol: 1e-30,
            endgame_iterations: 16,
            blowup: 1e10,
            growth_after: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PathOutcome {
    /// Converged to a nonsingular zero of the target at `t = 0`.
    Endpoint { point: Vec<BigComplex>, steps: usize },
    /// Left the blowup ball at parameter `t`.
    Diverged { t: f64, steps: usize },
    /// Step size underflow, or a singular or unconverged endpoint.
    Failed { t: f64, steps: usize },
}

impl PathOutcome {
    pub fn endpoint(&self) -> Option<&[BigComplex]> {
        match self {
            PathOutcome::Endpoint { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            PathOutcome::Endpoint { steps, .. }
            | PathOutcome::Diverged { steps, .. }
            | PathOutcome::Failed { steps, .. } => *steps,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            PathOutcome::Endpoint { .. } => "endpoint",
            PathOutcome::Diverged { .. } => "diverged",
            PathOutcome::Failed { .. } => "failed",
        }
    }
}

/// `H(z, t) = (1 − t)·T(z) + γ·t·S(z)`, tracked from `t = 1` to `t = 0`.
///
/// Paths are followed at the tracking precision; endpoints are polished
/// against `T` at the full precision.
#[derive(Clone, Debug)]
pub struct StraightLine {
    fast: Option<Segment<Complex64>>,
    big: Option<Segment<BigComplex>>,
    polish: Evaluator<BigComplex>,
}

#[derive(Clone, Debug)]
struct Segment<S> {
    target: Evaluator<S>,
    start: Evaluator<S>,
    gamma: S,
    bits: u32,
}

impl StraightLine {
    pub fn new(
        target: &ExpSystem,
        start: &ExpSystem,
        gamma: &ExactComplex,
        cfg: &TrackerConfig,
    ) -> Result<Self, NumericError> {
        if target.dim() != start.dim() {
            return Err(NumericError::DimensionMismatch {
                expected: target.dim(),
                found: start.dim(),
            });
        }
        let (fast, big) = if cfg.track_bits <= DOUBLE_BITS {
            (Some(Segment::new(target, start, gamma, DOUBLE_BITS)?), None)
        } else {
            (None, Some(Segment::new(target, start, gamma, cfg.track_bits)?))
        };
        Ok(StraightLine {
            fast,
            big,
            polish: target.evaluator(cfg.bits)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.polish.dim()
    }
}

impl<S: Scalar> Segment<S> {
    fn new(target: &ExpSystem, start: &ExpSystem, gamma: &ExactComplex, bits: u32) -> Result<Self, NumericError> {
        Ok(Segment {
            target: target.evaluator(bits)?,
            start: start.evaluator(bits)?,
            gamma: S::from_exact(gamma, bits),
            bits,
        })
    }

    fn real(&self, x: f64) -> S {
        S::from_real(&S::Real::from_rational(&Rational::from_f64(x).expect("finite"), self.bits), self.bits)
    }

    fn weights(&self, t: f64) -> (S, S) {
        let t = self.real(t);
        let one_minus = S::one(self.bits) - &t;
        (one_minus, self.gamma.clone() * &t)
    }

    fn blend(&self, tj: &CMatrix<S>, sj: &CMatrix<S>, wt: &S, ws: &S) -> CMatrix<S> {
        let n = tj.rows();
        let mut jac = CMatrix::zeros(n, n, self.bits);
        for i in 0..n {
            for j in 0..n {
                jac.set(i, j, wt.clone() * tj.get(i, j) + &(ws.clone() * sj.get(i, j)));
            }
        }
        jac
    }

    /// `H` and `∂H/∂z` at `(z, t)`.
    fn value_jacobian(&self, z: &[S], t: f64) -> (Vec<S>, CMatrix<S>) {
        let (wt, ws) = self.weights(t);
        let (tv, tj) = self.target.eval_with_jacobian(z);
        let (sv, sj) = self.start.eval_with_jacobian(z);
        let values = tv
            .iter()
            .zip(&sv)
            .map(|(x, y)| wt.clone() * x + &(ws.clone() * y))
            .collect();
        (values, self.blend(&tj, &sj, &wt, &ws))
    }

    /// `∂H/∂z` at `(z, t)` and `∂H/∂t = γ·S(z) − T(z)`.
    fn tangent_data(&self, z: &[S], t: f64) -> (CMatrix<S>, Vec<S>) {
        let (wt, ws) = self.weights(t);
        let (tv, tj) = self.target.eval_with_jacobian(z);
        let (sv, sj) = self.start.eval_with_jacobian(z);
        let ht = tv.iter().zip(&sv).map(|(a, b)| self.gamma.clone() * b - a).collect();
        (self.blend(&tj, &sj, &wt, &ws), ht)
    }
}

fn solve<S: Scalar>(jac: &CMatrix<S>, rhs: Vec<S>) -> Option<Vec<S>> {
    solve_columns(jac, &CMatrix::column(rhs)).ok().map(CMatrix::into_column)
}

fn norm<S: Scalar>(z: &[S]) -> f64 {
    norm_sq(z).to_f64().sqrt()
}

/// Newton iterations driven by `step_of`; `None` unless they reach the
/// tolerance while every step shrinks by `contraction`.
fn newton_loop<S: Scalar>(
    mut z: Vec<S>,
    max_iter: usize,
    tol: f64,
    contraction: f64,
    step_of: impl Fn(&[S]) -> Option<Vec<S>>,
) -> Option<Vec<S>> {
    let mut previous = f64::INFINITY;
    for _ in 0..max_iter {
        let delta = step_of(&z)?;
        for (c, d) in z.iter_mut().zip(&delta) {
            *c -= d;
        }
        let step = norm(&delta);
        let scale = 1.0 + norm(&z);
        if !step.is_finite() || !scale.is_finite() {
            return None;
        }
        if step <= tol * scale {
            return Some(z);
        }
        if step > contraction * previous {
            return None;
        }
        previous = step;
    }
    None
}

fn follow<S: Scalar>(seg: &Segment<S>, start: Vec<S>, cfg: &TrackerConfig) -> Result<(Vec<S>, usize), PathOutcome> {
    let mut z = start;
    let mut t = 1.0_f64;
    let mut dt = cfg.initial_dt;
    let mut streak = 0;
    let mut steps = 0;
    while t > 0.0 {
        let step = dt.min(t);
        let next_t = if step >= t { 0.0 } else { t - step };
        let (jac, ht) = seg.tangent_data(&z, t);
        let predicted = solve(&jac, ht).map(|v| {
            // dz/dt = −H_z⁻¹·H_t and t decreases by `step`
            let h = seg.real(step);
            z.iter().zip(&v).map(|(a, b)| a.clone() + &(h.clone() * b)).collect::<Vec<_>>()
        });
        let corrected = predicted.and_then(|p| {
            newton_loop(p, cfg.max_corrections, cfg.corrector_tol, cfg.contraction, |x| {
                let (values, jac) = seg.value_jacobian(x, next_t);
                solve(&jac, values)
            })
        });
        steps += 1;
        match corrected {
            Some(next) => {
                z = next;
                t = next_t;
                streak += 1;
                if streak >= cfg.growth_after {
                    dt = (dt * 1.5).min(cfg.initial_dt);
                    streak = 0;
                }
                if norm(&z) > cfg.blowup {
                    return Err(PathOutcome::Diverged { t, steps });
                }
            }
            None => {
                dt /= 2.0;
                streak = 0;
                if dt < cfg.min_dt {
                    return Err(PathOutcome::Failed { t, steps });
                }
            }
        }
    }
    Ok((z, steps))
}

/// Follows one solution path of `h` from `t = 1` to `t = 0` with an Euler
/// predictor and a Newton corrector, then polishes the endpoint by Newton's
/// method on the target at full precision.
pub fn track_path(h: &StraightLine, start: &[BigComplex], cfg: &TrackerConfig) -> PathOutcome {
    let tracked = match (&h.fast, &h.big) {
        (Some(seg), _) => {
            let z: Vec<Complex64> = start.iter().map(|c| {
                let (re, im) = c.to_c64();
                Complex64::new(re, im)
            }).collect();
            follow(seg, z, cfg).map(|(z, steps)| {
                let z = z.iter().map(|c| BigComplex::from_f64(c.re, c.im, cfg.bits)).collect();
                (z, steps)
            })
        }
        (None, Some(seg)) => {
            let z = start.iter().map(|c| c.with_bits(seg.bits)).collect();
            follow(seg, z, cfg).map(|(z, steps)| (z.iter().map(|c| c.with_bits(cfg.bits)).collect(), steps))
        }
        (None, None) => unreachable!("one segment is always built"),
    };
    let (z, steps) = match tracked {
        Ok(done) => done,
        Err(outcome) => return outcome,
    };
    let polished = newton_loop(z, cfg.endgame_iterations, cfg.endpoint_tol, 1.0, |x| {
        let (values, jac) = h.polish.eval_with_jacobian(x);
        solve(&jac, values)
    });
    match polished {
        Some(point) if norm(&point) <= cfg.blowup => PathOutcome::Endpoint { point, steps },
        _ => PathOutcome::Failed { t: 0.0, steps },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Polynomial, PolynomialSystem};

    fn shifted_square(c: i64) -> ExpSystem {
        let p = Polynomial::new(
            1,
            [
                (ExactComplex::one(), Monomial::new(vec![2])),
                (ExactComplex::from_int(-c), Monomial::new(vec![0])),
            ],
        )
        .unwrap();
        ExpSystem::polynomial(PolynomialSystem::new(1, vec![p]).unwrap()).unwrap()
    }

    #[test]
    fn square_root_of_two() {
        let gamma = ExactComplex::new(rug::Rational::from((3, 5)), rug::Rational::from((4, 5)));
        let cfg = TrackerConfig {
            bits: 128,
            ..TrackerConfig::default()
        };
        let h = StraightLine::new(&shifted_square(2), &shifted_square(1), &gamma, &cfg).unwrap();
        let out = track_path(&h, &[BigComplex::one(128)], &cfg);
        let z = out.endpoint().expect("path converges");
        let (re, im) = z[0].to_c64();
        assert!((re - 2f64.sqrt()).abs() < 1e-15 && im.abs() < 1e-15, "{re} {im}");
        let err = rug::Float::with_val(128, z[0].re() * z[0].re()) - 2u32;
        assert!(err.abs() < 1e-35);
    }

    #[test]
    fn multiprecision_tracking_agrees() {
        let gamma = ExactComplex::new(rug::Rational::from((3, 5)), rug::Rational::from((4, 5)));
        let fast = TrackerConfig { bits: 128, ..TrackerConfig::default() };
        let slow = TrackerConfig { track_bits: 128, ..fast.clone() };
        let run = |cfg: &TrackerConfig| {
            let h = StraightLine::new(&shifted_square(2), &shifted_square(1), &gamma, cfg).unwrap();
            track_path(&h, &[BigComplex::one(128)], cfg).endpoint().unwrap()[0].to_c64()
        };
        let (a, b) = (run(&fast), run(&slow));
        assert!((a.0 - b.0).abs() < 1e-30 && (a.1 - b.1).abs() < 1e-30);
    }

    #[test]
    fn singular_endpoint_fails() {
        // x² with start x² − 1: both paths end at the double root 0
        let cfg = TrackerConfig {
            bits: 128,
            ..TrackerConfig::default()
        };
        let h = StraightLine::new(&shifted_square(0), &shifted_square(1), &ExactComplex::i(), &cfg).unwrap();
        let out = track_path(&h, &[BigComplex::one(128)], &cfg);
        assert!(matches!(out, PathOutcome::Failed { .. }), "{out:?}");
    }
}
