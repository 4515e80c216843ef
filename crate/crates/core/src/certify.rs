//! α-theoretic certification: approximate solutions, distinctness, same
//! root and realness of associated solutions.
//!
//! Every comparison is done on squared magnitudes against rational
//! thresholds that sit strictly inside the true constants, so rounding of
//! the threshold can only lose certificates, never invent them.

use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{CertifyError, NumericError};
use crate::expsys::{gamma_bound_sq, Evaluator, ExpSystem};
use crate::numeric::{norm_sq, solve_columns, ArithmeticMode, CMatrix, Real, Scalar};
use crate::poly::point_bits;

/// Threshold constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaConstants {
    /// `0.15767²`, below `((13 − 3√17)/4)² ≈ 0.1576708²`.
    pub alpha_star_sq: Rational,
    /// Robust threshold `3/100` for the same-root and realness tests.
    pub robust_alpha: Rational,
    /// Radius factor `1/20` of the robust α-theorem.
    pub robust_radius_factor: Rational,
    /// Factor `2` in the separation bound.
    pub separation_factor: Rational,
}

impl Default for AlphaConstants {
    fn default() -> Self {
        let star = Self::alpha_star();
        AlphaConstants {
            alpha_star_sq: star.clone() * &star,
            robust_alpha: Rational::from((3, 100)),
            robust_radius_factor: Rational::from((1, 20)),
            separation_factor: Rational::from(2),
        }
    }
}

impl AlphaConstants {
    pub fn alpha_star() -> Rational {
        Rational::from((15_767, 100_000))
    }

    fn robust_alpha_sq(&self) -> Rational {
        self.robust_alpha.clone() * &self.robust_alpha
    }

    fn robust_radius_sq(&self) -> Rational {
        self.robust_radius_factor.clone() * &self.robust_radius_factor
    }
}

/// Result of certifying one point.
///
/// `None` in `gamma_bound_sq` or `alpha_bound_sq` stands for infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<R> {
    pub beta_sq: R,
    pub gamma_bound_sq: Option<R>,
    pub alpha_bound_sq: Option<R>,
    pub jacobian_invertible: bool,
    pub exact_zero: bool,
    pub certified: bool,
    pub mode: ArithmeticMode,
    pub bits: u32,
}

impl<R: Real> Certificate<R> {
    pub fn alpha_bound(&self) -> Option<Option<R>> {
        self.alpha_bound_sq.as_ref().map(Real::sqrt)
    }

    pub fn beta(&self) -> Option<R> {
        self.beta_sq.sqrt()
    }

    pub fn gamma_bound(&self) -> Option<Option<R>> {
        self.gamma_bound_sq.as_ref().map(Real::sqrt)
    }

    /// Strictly below the robust threshold `α < 0.03`.
    pub fn is_robust(&self, constants: &AlphaConstants) -> bool {
        match &self.alpha_bound_sq {
            Some(a) if self.gamma_bound_sq.is_some() => {
                *a < R::from_rational(&constants.robust_alpha_sq(), self.bits)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealStatus {
    Real,
    NotReal,
    Undecided,
}

impl std::fmt::Display for RealStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RealStatus::Real => "real",
            RealStatus::NotReal => "not-real",
            RealStatus::Undecided => "undecided",
        })
    }
}

/// Newton update `δ` solving `DF(z)·δ = F(z)`, or `None` when singular.
pub(crate) fn newton_correction<S: Scalar>(ev: &Evaluator<S>, z: &[S]) -> (Vec<S>, Option<Vec<S>>) {
    let (values, jac) = ev.eval_with_jacobian(z);
    let delta = match solve_columns(&jac, &CMatrix::column(values.clone())) {
        Ok(x) => Some(x.into_column()),
        Err(_) => None,
    };
    (values, delta)
}

/// `N_F(z) = z − DF(z)⁻¹F(z)`, or `z` itself when `DF(z)` is singular.
pub fn newton_step<S: Scalar>(system: &ExpSystem, z: &[S]) -> Result<(Vec<S>, bool), NumericError> {
    system.check_dim(z)?;
    let ev = system.evaluator::<S>(point_bits(z))?;
    Ok(match newton_correction(&ev, z).1 {
        Some(delta) => (z.iter().zip(&delta).map(|(a, d)| a.clone() - d).collect(), true),
        None => (z.to_vec(), false),
    })
}

/// `β(F, z)² = ‖DF(z)⁻¹F(z)‖²`, zero when `DF(z)` is singular.
pub fn beta_sq<S: Scalar>(system: &ExpSystem, z: &[S]) -> Result<S::Real, NumericError> {
    system.check_dim(z)?;
    let ev = system.evaluator::<S>(point_bits(z))?;
    Ok(match newton_correction(&ev, z).1 {
        Some(delta) => norm_sq(&delta),
        None => S::Real::from_int(0, point_bits(z)),
    })
}

/// Decides whether `z` is an approximate solution of `F = 0`.
///
/// In rational mode an exactly vanishing residual certifies immediately.
/// Otherwise the Jacobian must be invertible and `β²·γ² < α*²`. A singular
/// Jacobian never certifies in floating mode, even at a zero residual.
pub fn certify_solution<S: Scalar>(
    system: &ExpSystem,
    z: &[S],
    constants: &AlphaConstants,
) -> Result<Certificate<S::Real>, CertifyError> {
    system.check_dim(z)?;
    let bits = point_bits(z);
    let ev = system.evaluator::<S>(bits)?;
    let (values, delta) = newton_correction(&ev, z);
    let residual_zero = values.iter().all(Scalar::is_zero);
    let exact_zero = S::is_exact() && residual_zero;
    let zero = || S::Real::from_int(0, bits);
    let base = |beta_sq, gamma_bound_sq, alpha_bound_sq, invertible, certified| Certificate {
        beta_sq,
        gamma_bound_sq,
        alpha_bound_sq,
        jacobian_invertible: invertible,
        exact_zero,
        certified,
        mode: S::MODE,
        bits,
    };
    let Some(delta) = delta else {
        // β = 0 and γ = ∞; α is 0 at a zero and ∞ elsewhere.
        let alpha = residual_zero.then(zero);
        return Ok(base(zero(), None, alpha, false, exact_zero));
    };
    let beta_sq = norm_sq(&delta);
    let gamma_sq = match gamma_bound_sq(system, z) {
        Ok(g) => g,
        Err(NumericError::SingularMatrix) => {
            let alpha = residual_zero.then(zero);
            return Ok(base(beta_sq, None, alpha, false, exact_zero));
        }
        Err(e) => return Err(e.into()),
    };
    let alpha_sq = beta_sq.clone() * &gamma_sq;
    let certified = exact_zero || alpha_sq < S::Real::from_rational(&constants.alpha_star_sq, bits);
    Ok(base(beta_sq, Some(gamma_sq), Some(alpha_sq), true, certified))
}

fn difference_sq<S: Scalar>(a: &[S], b: &[S]) -> S::Real {
    let diff: Vec<S> = a.iter().zip(b).map(|(x, y)| x.clone() - y).collect();
    norm_sq(&diff)
}

/// Certifies that two approximate solutions have different associated
/// solutions: `‖z₁ − z₂‖ > 2(β₁ + β₂)`.
///
/// Rational mode uses the sufficient test `‖z₁ − z₂‖² > 8(β₁² + β₂²)`.
pub fn certify_distinct<S: Scalar>(
    first: (&Certificate<S::Real>, &[S]),
    second: (&Certificate<S::Real>, &[S]),
) -> Result<bool, CertifyError> {
    let (c1, z1) = first;
    let (c2, z2) = second;
    if !c1.certified {
        return Err(CertifyError::NotCertified(0));
    }
    if !c2.certified {
        return Err(CertifyError::NotCertified(1));
    }
    if z1.len() != z2.len() {
        return Err(NumericError::DimensionMismatch {
            expected: z1.len(),
            found: z2.len(),
        }
        .into());
    }
    let bits = point_bits(z1);
    let dist_sq = difference_sq(z1, z2);
    match (S::MODE, c1.beta(), c2.beta(), dist_sq.sqrt()) {
        (ArithmeticMode::Floating, Some(b1), Some(b2), Some(dist)) => {
            Ok(dist > S::Real::from_int(2, bits) * (b1 + b2))
        }
        _ => Ok(dist_sq > S::Real::from_int(8, bits) * (c1.beta_sq.clone() + &c2.beta_sq)),
    }
}

/// Robust same-root test: with `α(x) < 0.03`, `y` shares the associated
/// solution of `x` when `‖x − y‖·γ(x) < 1/20`.
pub fn same_root<S: Scalar>(
    cert_x: &Certificate<S::Real>,
    x: &[S],
    y: &[S],
    constants: &AlphaConstants,
) -> Result<bool, CertifyError> {
    if !cert_x.certified || !cert_x.is_robust(constants) {
        return Err(CertifyError::PreconditionFailed(
            "robust test needs a certified point with alpha < 0.03".into(),
        ));
    }
    let gamma_sq = cert_x.gamma_bound_sq.clone().expect("robust implies finite gamma");
    let bits = cert_x.bits;
    Ok(difference_sq(x, y) * gamma_sq < S::Real::from_rational(&constants.robust_radius_sq(), bits))
}

/// Decides whether the associated solution of a certified point is real.
///
/// `NotReal` when `‖Im z‖ > 2β`. `Real` when `z` is exactly real, or when
/// `α < 0.03` and `‖Im z‖·γ < 1/20`. `Undecided` otherwise.
///
/// Needs a system whose Newton map commutes with conjugation. Real data is
/// accepted automatically; `assume_real_map` vouches for other systems.
pub fn certify_real<S: Scalar>(
    system: &ExpSystem,
    cert: &Certificate<S::Real>,
    z: &[S],
    assume_real_map: bool,
    constants: &AlphaConstants,
) -> Result<RealStatus, CertifyError> {
    if !assume_real_map && !system.has_real_data() {
        return Err(CertifyError::NotRealMap);
    }
    system.check_dim(z)?;
    if !cert.certified {
        return Ok(RealStatus::Undecided);
    }
    let bits = cert.bits;
    let mut imag_sq = S::Real::from_int(0, bits);
    for zi in z {
        let im = zi.im();
        imag_sq += &(im.clone() * &im);
    }
    if imag_sq > S::Real::from_int(4, bits) * &cert.beta_sq {
        return Ok(RealStatus::NotReal);
    }
    // A real map sends real points to real points, so the Newton iterates of
    // an exactly real approximate solution stay real and so does their limit.
    if imag_sq.is_zero() {
        return Ok(RealStatus::Real);
    }
    if cert.is_robust(constants) {
        let gamma_sq = cert.gamma_bound_sq.clone().expect("robust implies finite gamma");
        if imag_sq * gamma_sq < S::Real::from_rational(&constants.robust_radius_sq(), bits) {
            return Ok(RealStatus::Real);
        }
    }
    Ok(RealStatus::Undecided)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BatchOptions {
    pub distinct: bool,
    pub real: bool,
    /// Treat the system as a real map even if its data is not real.
    pub assume_real_map: bool,
}

#[derive(Debug)]
pub struct PointRecord<R> {
    pub index: usize,
    pub outcome: Result<Certificate<R>, CertifyError>,
    /// Certified points share a class unless certified distinct.
    pub distinct_class: Option<usize>,
    pub real: Option<RealStatus>,
}

impl<R> PointRecord<R> {
    pub fn certificate(&self) -> Option<&Certificate<R>> {
        self.outcome.as_ref().ok()
    }

    pub fn is_certified(&self) -> bool {
        self.certificate().is_some_and(|c| c.certified)
    }
}

#[derive(Debug)]
pub struct BatchResult<R> {
    pub records: Vec<PointRecord<R>>,
    pub certified: usize,
    /// Number of distinctness classes among certified points.
    pub distinct_classes: Option<usize>,
    pub real: usize,
    pub not_real: usize,
    /// Set when realness was requested but the system is not a real map.
    pub real_map_error: bool,
}

/// Certifies every point, then runs the pairwise and realness stages.
/// Records keep input order regardless of scheduling.
pub fn certify_batch<S: Scalar>(
    system: &ExpSystem,
    points: &[Vec<S>],
    options: BatchOptions,
    constants: &AlphaConstants,
) -> BatchResult<S::Real> {
    let outcomes: Vec<Result<Certificate<S::Real>, CertifyError>> = points
        .par_iter()
        .map(|z| certify_solution(system, z, constants))
        .collect();
    let mut records: Vec<PointRecord<S::Real>> = outcomes
        .into_iter()
        .enumerate()
        .map(|(index, outcome)| PointRecord {
            index,
            outcome,
            distinct_class: None,
            real: None,
        })
        .collect();
    let certified_idx: Vec<usize> = records
        .iter()
        .filter(|r| r.is_certified())
        .map(|r| r.index)
        .collect();

    let mut distinct_classes = None;
    if options.distinct {
        let pairs: Vec<(usize, usize)> = certified_idx
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| certified_idx[a + 1..].iter().map(move |&j| (i, j)))
            .collect();
        let unresolved: Vec<(usize, usize)> = pairs
            .par_iter()
            .filter(|&&(i, j)| {
                let ci = records[i].certificate().expect("certified");
                let cj = records[j].certificate().expect("certified");
                !certify_distinct((ci, &points[i][..]), (cj, &points[j][..])).unwrap_or(false)
            })
            .copied()
            .collect();
        let mut uf = UnionFind::new(points.len());
        for (i, j) in unresolved {
            uf.union(i, j);
        }
        let mut class_of_root = std::collections::HashMap::new();
        for &i in &certified_idx {
            let next = class_of_root.len();
            let class = *class_of_root.entry(uf.find(i)).or_insert(next);
            records[i].distinct_class = Some(class);
        }
        distinct_classes = Some(class_of_root.len());
    }

    let mut real_map_error = false;
    if options.real {
        if !options.assume_real_map && !system.has_real_data() {
            real_map_error = true;
        } else {
            let statuses: Vec<Option<RealStatus>> = records
                .par_iter()
                .map(|r| {
                    let cert = r.certificate()?;
                    certify_real(system, cert, &points[r.index], true, constants).ok()
                })
                .collect();
            for (r, s) in records.iter_mut().zip(statuses) {
                r.real = s;
            }
        }
    }

    let real = records.iter().filter(|r| r.real == Some(RealStatus::Real)).count();
    let not_real = records.iter().filter(|r| r.real == Some(RealStatus::NotReal)).count();
    BatchResult {
        certified: certified_idx.len(),
        records,
        distinct_classes,
        real,
        not_real,
        real_map_error,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root for deterministic classes
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
