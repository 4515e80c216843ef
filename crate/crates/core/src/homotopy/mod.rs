//! Numerical continuation producing candidate zeros of a square
//! polynomial-exponential system.
//!
//! The system `F` is first replaced by a polynomial system `Fᵖ` in which
//! every link is truncated to a Maclaurin polynomial. A linear-product start
//! system built from seeded random data is solved factor choice by factor
//! choice, each on an affine slice by a total-degree homotopy. Its solutions
//! are continued to `Fᵖ` and then to `F`. Every random quantity is drawn
//! from a ChaCha stream seeded by the caller and recorded in a
//! [`RunLedger`], so a run can be replayed exactly.
//!
//! Nothing produced here is certified; endpoints are candidates for
//! [`crate::certify`].

mod start;
mod taylor;
mod track;

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use rug::{float::Constant, Complex, Float};

use crate::certify::{certify_solution, same_root, AlphaConstants, Certificate};
use crate::error::NumericError;
use crate::expsys::ExpSystem;
use crate::numeric::{norm_sq, BigComplex, ExactComplex};
use crate::poly::{Monomial, Polynomial, PolynomialSystem};

pub use start::{admissible_choices, LinearFactors, LinearProductStart, Slice};
pub use taylor::{maclaurin, taylor_truncate};
pub use track::{track_path, PathOutcome, StraightLine, TrackerConfig};

/// Everything that shapes a run besides the system itself.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyConfig {
    pub seed: u64,
    pub tracker: TrackerConfig,
    /// Relative distance below which two uncertified endpoints are merged.
    pub dedup_tol: f64,
    /// Extra attempts, each under a fresh γ, for paths of the final
    /// deformation that fail or diverge.
    pub retries: usize,
}

impl Default for HomotopyConfig {
    fn default() -> Self {
        HomotopyConfig {
            seed: 0,
            tracker: TrackerConfig::default(),
            dedup_tol: 1e-8,
            retries: 3,
        }
    }
}

/// One straight-line homotopy and the fate of each of its paths.
#[derive(Clone, Debug, PartialEq)]
pub struct StageLog {
    pub label: String,
    pub gamma: ExactComplex,
    pub outcomes: Vec<PathOutcome>,
}

/// A replayable record of a run: seed, random data and every path outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct RunLedger {
    pub seed: u64,
    pub bits: u32,
    pub degrees: Vec<u32>,
    pub factors: Vec<LinearFactors>,
    pub stages: Vec<StageLog>,
}

impl RunLedger {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format: {}", crate::format::FORMAT_VERSION);
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "precision {}", self.bits);
        let degrees: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "truncation {}", degrees.join(" "));
        for (i, f) in self.factors.iter().enumerate() {
            let _ = writeln!(out, "link {} a {} {}", i + 1, f.a.re_part(), f.a.im_part());
            for (j, b) in f.b.iter().enumerate() {
                let _ = writeln!(out, "link {} b {} {} {}", i + 1, j + 1, b.re_part(), b.im_part());
            }
        }
        for stage in &self.stages {
            let _ = writeln!(
                out,
                "stage {} gamma {} {} paths {}",
                stage.label,
                stage.gamma.re_part(),
                stage.gamma.im_part(),
                stage.outcomes.len()
            );
            for (k, o) in stage.outcomes.iter().enumerate() {
                let t = match o {
                    PathOutcome::Endpoint { .. } => 0.0,
                    PathOutcome::Diverged { t, .. } | PathOutcome::Failed { t, .. } => *t,
                };
                let _ = writeln!(out, "path {} {} steps {} t {:e}", k + 1, o.label(), o.steps(), t);
            }
        }
        out
    }
}

/// Path and solution counts for each phase of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveSummary {
    /// Factor choices `ν` kept after pruning.
    pub choices: usize,
    pub start_paths: usize,
    /// Distinct nonsingular solutions of the start system.
    pub start_solutions: usize,
    /// Distinct nonsingular solutions of the truncated system.
    pub truncated_solutions: usize,
    /// Final-deformation paths tracked again under a fresh γ.
    pub retried: usize,
    /// Finite nonsingular endpoints of the final deformation.
    pub endpoints: usize,
    /// Endpoints left after merging those that share a zero.
    pub candidates: usize,
}

impl SolveSummary {
    pub fn to_text(&self) -> String {
        format!(
            "factor choices        {}\nstart paths           {}\nstart solutions       {}\ntruncated solutions   {}\nretried paths         {}\nfinal endpoints       {}\ncandidates            {}\n",
            self.choices,
            self.start_paths,
            self.start_solutions,
            self.truncated_solutions,
            self.retried,
            self.endpoints,
            self.candidates
        )
    }
}

#[derive(Clone, Debug)]
pub struct SolveRun {
    /// Truncated system, or the input itself when it has no links.
    pub truncated: PolynomialSystem,
    pub start_solutions: Vec<Vec<BigComplex>>,
    pub truncated_solutions: Vec<Vec<BigComplex>>,
    pub endpoints: Vec<Vec<BigComplex>>,
    pub candidates: Vec<Vec<BigComplex>>,
    pub summary: SolveSummary,
    pub ledger: RunLedger,
}

/// Zeros of `x_k^{d_k} − 1`: every tuple of roots of unity.
fn roots_of_unity_grid(degrees: &[u32], bits: u32) -> Vec<Vec<BigComplex>> {
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let mut grid = vec![Vec::new()];
    for &d in degrees {
        let roots: Vec<BigComplex> = (0..d)
            .map(|l| {
                let angle = two_pi.clone() * l / d;
                BigComplex::from(Complex::with_val(bits, (Float::new(bits), angle)).exp())
            })
            .collect();
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                roots.iter().map(move |r| {
                    let mut p = prefix.clone();
                    p.push(r.clone());
                    p
                })
            })
            .collect();
    }
    grid
}

/// `{x_k^{d_k} − 1}` in `degrees.len()` variables.
fn total_degree_start(degrees: &[u32]) -> PolynomialSystem {
    let n = degrees.len();
    let rows = degrees
        .iter()
        .enumerate()
        .map(|(k, &d)| {
            let mut e = vec![0; n];
            e[k] = d;
            Polynomial::new(
                n,
                [
                    (ExactComplex::one(), Monomial::new(e)),
                    (ExactComplex::from_int(-1), Monomial::constant(n)),
                ],
            )
            .expect("monomials sized to the system")
        })
        .collect();
    PolynomialSystem::new(n, rows).expect("rows share the variable count")
}

fn poly_exp(p: &PolynomialSystem) -> ExpSystem {
    ExpSystem::polynomial(p.clone()).expect("square by construction")
}

/// Tracks every `(homotopy, start point)` job in parallel. Results keep the
/// job order, so they do not depend on the thread count.
fn track_all(jobs: &[(usize, Vec<BigComplex>)], homotopies: &[StraightLine], cfg: &TrackerConfig) -> Vec<PathOutcome> {
    jobs.par_iter()
        .map(|(h, z)| track_path(&homotopies[*h], z, cfg))
        .collect()
}

/// Indices of `points` to keep, merging a point into an earlier one when a
/// robust certificate of the earlier point places both on one zero, or,
/// failing a certificate, when their relative distance is below `tol`.
pub fn dedup_points(
    system: &ExpSystem,
    points: &[Vec<BigComplex>],
    tol: f64,
    constants: &AlphaConstants,
) -> Vec<usize> {
    let certs: Vec<Option<Certificate<Float>>> = points
        .par_iter()
        .map(|z| certify_solution(system, z, constants).ok())
        .collect();
    let mut kept: Vec<usize> = Vec::new();
    for (i, z) in points.iter().enumerate() {
        let duplicate = kept.iter().any(|&r| {
            let rep = &points[r];
            let robust = certs[r].as_ref().filter(|c| c.certified && c.is_robust(constants));
            match robust.map(|c| same_root(c, rep, z, constants)) {
                Some(Ok(same)) => same,
                _ => {
                    let diff: Vec<BigComplex> =
                        rep.iter().zip(z).map(|(a, b)| a.clone() - b).collect();
                    let scale = 1.0 + norm_sq(rep).to_f64().sqrt();
                    norm_sq(&diff).to_f64().sqrt() <= tol * scale
                }
            }
        });
        if !duplicate {
            kept.push(i);
        }
    }
    kept
}

fn endpoints_of(outcomes: &[PathOutcome]) -> Vec<Vec<BigComplex>> {
    outcomes
        .iter()
        .filter_map(|o| o.endpoint().map(<[BigComplex]>::to_vec))
        .collect()
}

fn select(points: &[Vec<BigComplex>], keep: &[usize]) -> Vec<Vec<BigComplex>> {
    keep.iter().map(|&i| points[i].clone()).collect()
}

/// Solves a square polynomial system by a total-degree homotopy.
fn solve_polynomial(
    system: &PolynomialSystem,
    config: &HomotopyConfig,
    rng: &mut ChaCha20Rng,
) -> Result<(StageLog, Vec<Vec<BigComplex>>), NumericError> {
    let bits = config.tracker.bits;
    let degrees = system.degrees();
    let gamma = start::draw_unit(rng);
    let label = "total-degree".to_string();
    if degrees.contains(&0) {
        return Ok((StageLog { label, gamma, outcomes: Vec::new() }, Vec::new()));
    }
    let h = StraightLine::new(&poly_exp(system), &poly_exp(&total_degree_start(&degrees)), &gamma, &config.tracker)?;
    let jobs: Vec<_> = roots_of_unity_grid(&degrees, bits).into_iter().map(|z| (0, z)).collect();
    let outcomes = track_all(&jobs, std::slice::from_ref(&h), &config.tracker);
    let found = endpoints_of(&outcomes);
    Ok((StageLog { label, gamma, outcomes }, found))
}

/// Candidate zeros of `target` by deformation from a linear-product start
/// system through the truncation with the given degrees (one per link).
pub fn solve_by_deformation(
    target: &ExpSystem,
    degrees: &[u32],
    config: &HomotopyConfig,
) -> Result<SolveRun, NumericError> {
    if degrees.len() != target.m() {
        return Err(NumericError::DimensionMismatch {
            expected: target.m(),
            found: degrees.len(),
        });
    }
    let bits = config.tracker.bits;
    let constants = AlphaConstants::default();
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let mut ledger = RunLedger {
        seed: config.seed,
        bits,
        degrees: degrees.to_vec(),
        factors: Vec::new(),
        stages: Vec::new(),
    };
    let mut summary = SolveSummary::default();

    if target.m() == 0 {
        let (log, found) = solve_polynomial(target.poly(), config, &mut rng)?;
        summary.choices = 1;
        summary.start_paths = log.outcomes.len();
        ledger.stages.push(log);
        let candidates = select(&found, &dedup_points(target, &found, config.dedup_tol, &constants));
        summary.start_solutions = candidates.len();
        summary.truncated_solutions = candidates.len();
        summary.endpoints = found.len();
        summary.candidates = candidates.len();
        return Ok(SolveRun {
            truncated: target.poly().clone(),
            start_solutions: candidates.clone(),
            truncated_solutions: candidates.clone(),
            endpoints: found,
            candidates,
            summary,
            ledger,
        });
    }

    let truncated = taylor_truncate(target, degrees);
    let lps = LinearProductStart::new(target, degrees, &mut rng);
    ledger.factors = lps.factors.clone();
    summary.choices = lps.choices.len();

    // Solve each Q_ν on its slice by a total-degree homotopy.
    let mut slices = Vec::new();
    let mut homotopies = Vec::new();
    let mut jobs = Vec::new();
    let mut stage_of_job = Vec::new();
    for nu in &lps.choices {
        let gamma = start::draw_unit(&mut rng);
        let slice = lps.slice(target, nu);
        let restricted = slice.restrict(target.poly());
        let rdeg = restricted.degrees();
        let label = format!(
            "choice {}",
            nu.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        );
        let stage = ledger.stages.len();
        ledger.stages.push(StageLog { label, gamma: gamma.clone(), outcomes: Vec::new() });
        if rdeg.contains(&0) {
            // constant rows: no isolated solutions on this slice
            continue;
        }
        let h = StraightLine::new(
            &poly_exp(&restricted),
            &poly_exp(&total_degree_start(&rdeg)),
            &gamma,
            &config.tracker,
        )?;
        for z in roots_of_unity_grid(&rdeg, bits) {
            jobs.push((homotopies.len(), z));
            stage_of_job.push((stage, slices.len()));
        }
        homotopies.push(h);
        slices.push(slice);
    }
    summary.start_paths = jobs.len();
    let outcomes = track_all(&jobs, &homotopies, &config.tracker);
    let mut lifted = Vec::new();
    for (o, &(stage, slice)) in outcomes.into_iter().zip(&stage_of_job) {
        if let Some(z) = o.endpoint() {
            lifted.push(slices[slice].lift(z));
        }
        ledger.stages[stage].outcomes.push(o);
    }
    let start_exp = poly_exp(&lps.system);
    let start_solutions = select(&lifted, &dedup_points(&start_exp, &lifted, config.dedup_tol, &constants));
    summary.start_solutions = start_solutions.len();

    // Start system to truncated system.
    let truncated_exp = poly_exp(&truncated);
    let gamma = start::draw_unit(&mut rng);
    let h = StraightLine::new(&truncated_exp, &start_exp, &gamma, &config.tracker)?;
    let jobs: Vec<_> = start_solutions.iter().map(|z| (0, z.clone())).collect();
    let outcomes = track_all(&jobs, std::slice::from_ref(&h), &config.tracker);
    let found = endpoints_of(&outcomes);
    ledger.stages.push(StageLog { label: "truncated".into(), gamma, outcomes });
    let truncated_solutions = select(&found, &dedup_points(&truncated_exp, &found, config.dedup_tol, &constants));
    summary.truncated_solutions = truncated_solutions.len();

    // Truncated system to the target. Paths that fail or diverge are
    // re-tracked under a fresh γ: this deformation is transcendental and an
    // escaping path says nothing about the start point.
    let mut endpoints_by_start: Vec<Option<Vec<BigComplex>>> = vec![None; truncated_solutions.len()];
    let mut pending: Vec<usize> = (0..truncated_solutions.len()).collect();
    for attempt in 0..=config.retries {
        if pending.is_empty() {
            break;
        }
        let gamma = start::draw_unit(&mut rng);
        let h = StraightLine::new(target, &truncated_exp, &gamma, &config.tracker)?;
        let jobs: Vec<_> = pending.iter().map(|&i| (0, truncated_solutions[i].clone())).collect();
        let outcomes = track_all(&jobs, std::slice::from_ref(&h), &config.tracker);
        let mut still = Vec::new();
        for (&i, o) in pending.iter().zip(&outcomes) {
            match o.endpoint() {
                Some(z) => endpoints_by_start[i] = Some(z.to_vec()),
                None => still.push(i),
            }
        }
        if attempt > 0 {
            summary.retried += pending.len();
        }
        let label = if attempt == 0 { "target".to_string() } else { format!("target-retry {attempt}") };
        ledger.stages.push(StageLog { label, gamma, outcomes });
        pending = still;
    }
    let endpoints: Vec<Vec<BigComplex>> = endpoints_by_start.into_iter().flatten().collect();
    let candidates = select(&endpoints, &dedup_points(target, &endpoints, config.dedup_tol, &constants));
    summary.endpoints = endpoints.len();
    summary.candidates = candidates.len();

    Ok(SolveRun {
        truncated,
        start_solutions,
        truncated_solutions,
        endpoints,
        candidates,
        summary,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Scalar;

    #[test]
    fn grid_size_is_bezout_number() {
        let grid = roots_of_unity_grid(&[2, 3], 64);
        assert_eq!(grid.len(), 6);
        for z in &grid {
            let v = total_degree_start(&[2, 3]).evaluate(z).unwrap();
            assert!(norm_sq(&v).to_f64() < 1e-30);
        }
    }

    #[test]
    fn polynomial_input_uses_total_degree() {
        // x² − 2, y − x: two zeros
        let p = PolynomialSystem::new(
            2,
            vec![
                Polynomial::new(
                    2,
                    [
                        (ExactComplex::one(), Monomial::new(vec![2, 0])),
                        (ExactComplex::from_int(-2), Monomial::constant(2)),
                    ],
                )
                .unwrap(),
                Polynomial::linear(2, 1, ExactComplex::one())
                    .add(&Polynomial::linear(2, 0, ExactComplex::from_int(-1))),
            ],
        )
        .unwrap();
        let sys = ExpSystem::polynomial(p).unwrap();
        let cfg = HomotopyConfig {
            tracker: TrackerConfig { bits: 128, ..TrackerConfig::default() },
            ..HomotopyConfig::default()
        };
        let run = solve_by_deformation(&sys, &[], &cfg).unwrap();
        assert_eq!(run.summary.candidates, 2);
        let mut xs: Vec<f64> = run.candidates.iter().map(|z| z[0].to_c64().0).collect();
        xs.sort_by(f64::total_cmp);
        assert!((xs[0] + 2f64.sqrt()).abs() < 1e-12 && (xs[1] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn ledger_is_deterministic() {
        let p = Polynomial::new(
            1,
            [
                (ExactComplex::one(), Monomial::new(vec![3])),
                (ExactComplex::from_int(-5), Monomial::constant(1)),
            ],
        )
        .unwrap();
        let sys = ExpSystem::polynomial(PolynomialSystem::new(1, vec![p]).unwrap()).unwrap();
        let cfg = HomotopyConfig { seed: 11, ..HomotopyConfig::default() };
        let a = solve_by_deformation(&sys, &[], &cfg).unwrap();
        let b = solve_by_deformation(&sys, &[], &cfg).unwrap();
        assert_eq!(a.ledger.to_text(), b.ledger.to_text());
        assert_eq!(a.candidates, b.candidates);
        assert_eq!(a.summary.candidates, 3);
    }
}
