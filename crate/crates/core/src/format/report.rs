use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::certify::{BatchResult, Certificate, RealStatus};
use crate::numeric::{format_float, ArithmeticMode, Real};

use super::FORMAT_VERSION;

/// Significant digits of every decimal in a report.
pub const REPORT_DIGITS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub mode: ArithmeticMode,
    pub precision: u32,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCounts {
    pub points: usize,
    pub certified: usize,
    pub not_certified: usize,
    pub errors: usize,
    pub distinct_classes: Option<usize>,
    pub real: usize,
    pub not_real: usize,
    pub undecided: usize,
}

/// Exact squared values, present in rational mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValues {
    pub beta_sq: String,
    pub gamma_bound_sq: Option<String>,
    pub alpha_bound_sq: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub k: usize,
    pub beta: String,
}

/// Verdict of the same point at a second precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub precision: u32,
    pub alpha_bound: String,
    pub certified: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub index: usize,
    pub certified: bool,
    /// `"inf"` stands for an infinite bound.
    pub alpha_bound: Option<String>,
    pub beta: Option<String>,
    pub gamma_bound: Option<String>,
    pub jacobian_invertible: bool,
    pub exact_zero: bool,
    pub exact: Option<ExactValues>,
    pub distinct_class: Option<usize>,
    pub real: Option<RealStatus>,
    pub error: Option<String>,
    pub residuals: Option<Vec<ResidualEntry>>,
    pub audit: Option<AuditEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub format: u32,
    pub tool: String,
    pub version: String,
    pub mode: ArithmeticMode,
    pub precision: u32,
    pub seed: Option<u64>,
    pub counts: ReportCounts,
    pub points: Vec<PointReport>,
}

/// `sqrt(value)` rendered with the report's digit count.
pub fn sqrt_decimal<R: Real>(value_sq: &R) -> String {
    let bits = value_sq.precision().max(128);
    format_float(&value_sq.to_float(bits).sqrt(), REPORT_DIGITS)
}

fn bound_decimal<R: Real>(value_sq: &Option<R>) -> String {
    value_sq.as_ref().map_or_else(|| "inf".to_string(), sqrt_decimal)
}

impl PointReport {
    fn from_certificate<R: Real>(index: usize, cert: &Certificate<R>) -> Self {
        let exact = cert.beta_sq.to_exact_string().map(|beta_sq| ExactValues {
            beta_sq,
            gamma_bound_sq: cert.gamma_bound_sq.as_ref().and_then(Real::to_exact_string),
            alpha_bound_sq: cert.alpha_bound_sq.as_ref().and_then(Real::to_exact_string),
        });
        PointReport {
            index,
            certified: cert.certified,
            alpha_bound: Some(bound_decimal(&cert.alpha_bound_sq)),
            beta: Some(sqrt_decimal(&cert.beta_sq)),
            gamma_bound: Some(bound_decimal(&cert.gamma_bound_sq)),
            jacobian_invertible: cert.jacobian_invertible,
            exact_zero: cert.exact_zero,
            exact,
            distinct_class: None,
            real: None,
            error: None,
            residuals: None,
            audit: None,
        }
    }

    fn from_error(index: usize, error: String) -> Self {
        PointReport {
            index,
            certified: false,
            alpha_bound: None,
            beta: None,
            gamma_bound: None,
            jacobian_invertible: false,
            exact_zero: false,
            exact: None,
            distinct_class: None,
            real: None,
            error: Some(error),
            residuals: None,
            audit: None,
        }
    }
}

impl BatchReport {
    pub fn from_batch<R: Real>(result: &BatchResult<R>, meta: &ReportMeta) -> Self {
        let points: Vec<PointReport> = result
            .records
            .iter()
            .map(|r| {
                let mut p = match &r.outcome {
                    Ok(cert) => PointReport::from_certificate(r.index, cert),
                    Err(e) => PointReport::from_error(r.index, e.to_string()),
                };
                p.distinct_class = r.distinct_class;
                p.real = r.real;
                p
            })
            .collect();
        let mut report = BatchReport {
            format: FORMAT_VERSION,
            tool: "expcert".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            mode: meta.mode,
            precision: meta.precision,
            seed: meta.seed,
            counts: ReportCounts {
                points: 0,
                certified: 0,
                not_certified: 0,
                errors: 0,
                distinct_classes: result.distinct_classes,
                real: 0,
                not_real: 0,
                undecided: 0,
            },
            points,
        };
        report.recount();
        report
    }

    /// Recomputes the tallies from the per-point records.
    pub fn recount(&mut self) {
        let c = &mut self.counts;
        let pts = &self.points;
        c.points = pts.len();
        c.certified = pts.iter().filter(|p| p.certified).count();
        c.errors = pts.iter().filter(|p| p.error.is_some()).count();
        c.not_certified = c.points - c.certified;
        let status = |s| pts.iter().filter(|p| p.real == Some(s)).count();
        c.real = status(RealStatus::Real);
        c.not_real = status(RealStatus::NotReal);
        c.undecided = status(RealStatus::Undecided);
    }

    pub fn all_certified(&self) -> bool {
        self.counts.certified == self.counts.points
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "expcert {} | mode {} | precision {} bits{}",
            self.version,
            self.mode,
            self.precision,
            self.seed.map(|s| format!(" | seed {s}")).unwrap_or_default()
        )
        .unwrap();
        writeln!(
            out,
            "{:>5}  {:<9}  {:>12}  {:>12}  {:>12}  {:>8}  {:<9}",
            "point", "status", "alpha", "beta", "gamma", "class", "real"
        )
        .unwrap();
        for p in &self.points {
            if let Some(e) = &p.error {
                writeln!(out, "{:>5}  error: {e}", p.index + 1).unwrap();
                continue;
            }
            let dash = || "-".to_string();
            writeln!(
                out,
                "{:>5}  {:<9}  {:>12}  {:>12}  {:>12}  {:>8}  {:<9}",
                p.index + 1,
                if p.certified { "certified" } else { "failed" },
                p.alpha_bound.clone().unwrap_or_else(dash),
                p.beta.clone().unwrap_or_else(dash),
                p.gamma_bound.clone().unwrap_or_else(dash),
                p.distinct_class.map_or_else(dash, |c| c.to_string()),
                p.real.map_or_else(dash, |r| r.to_string()),
            )
            .unwrap();
            if let Some(rows) = &p.residuals {
                for r in rows {
                    writeln!(out, "         k={:<3} beta={}", r.k, r.beta).unwrap();
                }
            }
            if let Some(a) = &p.audit {
                writeln!(
                    out,
                    "         audit at {} bits: alpha={} {}{}",
                    a.precision,
                    a.alpha_bound,
                    if a.certified { "certified" } else { "failed" },
                    if a.agrees { "" } else { "  (VERDICT DISAGREES)" }
                )
                .unwrap();
            }
        }
        let c = &self.counts;
        writeln!(
            out,
            "points {}  certified {}  failed {}  errors {}  distinct classes {}  real {}  not real {}  undecided {}",
            c.points,
            c.certified,
            c.not_certified,
            c.errors,
            c.distinct_classes.map_or_else(|| "-".to_string(), |d| d.to_string()),
            c.real,
            c.not_real,
            c.undecided
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify_batch, AlphaConstants, BatchOptions};
    use crate::format::parse_system;
    use crate::numeric::ExactComplex;

    #[test]
    fn counts_match_records() {
        let sys = parse_system("format: 1\n1 0\n2\n2 1 0\n0 -2 0\n").unwrap();
        let pts = vec![
            vec![ExactComplex::from_ratio(3, 2)],
            vec![ExactComplex::from_ratio(-17, 12)],
            vec![ExactComplex::from_int(9)],
        ];
        let opts = BatchOptions {
            distinct: true,
            real: true,
            assume_real_map: false,
        };
        let result = certify_batch(&sys, &pts, opts, &AlphaConstants::default());
        let meta = ReportMeta {
            mode: ArithmeticMode::ExactRational,
            precision: 64,
            seed: None,
        };
        let report = BatchReport::from_batch(&result, &meta);
        assert_eq!(report.counts.certified, 2);
        assert_eq!(report.counts.distinct_classes, Some(2));
        assert_eq!(report.points[0].alpha_bound.as_deref(), Some("1.24226e-01"));
        assert_eq!(
            report.points[0].exact.as_ref().unwrap().alpha_bound_sq.as_deref(),
            Some("5/324")
        );
        let back: BatchReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert!(report.to_text().contains("certified 2"));
    }
}
