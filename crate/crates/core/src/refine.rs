//! Newton refinement with a record of the step length at every iterate.

use crate::certify::newton_correction;
use crate::error::NumericError;
use crate::expsys::ExpSystem;
use crate::numeric::{format_float, norm_sq, Real, Scalar};
use crate::poly::point_bits;

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualRow<R> {
    pub k: usize,
    /// `β(F, N_F^k(z))²`.
    pub beta_sq: R,
}

impl<R: Real> ResidualRow<R> {
    /// `β` rendered with `digits` significant digits.
    pub fn beta_decimal(&self, digits: usize) -> String {
        let bits = (digits as u32 * 4 + 64).max(self.beta_sq.precision());
        format_float(&self.beta_sq.to_float(bits).sqrt(), digits)
    }

    /// Decimal exponent `e` with `β = m·10^e`, `1 ≤ m < 10`; `None` at zero.
    pub fn beta_exponent(&self) -> Option<i64> {
        let s = self.beta_decimal(6);
        let (_, exp) = s.split_once('e')?;
        if self.beta_sq.is_zero() {
            return None;
        }
        exp.parse().ok()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualTable<R> {
    pub rows: Vec<ResidualRow<R>>,
    /// Iterate at which the Jacobian was singular, if the run stopped early.
    pub singular_at: Option<usize>,
}

/// Applies `k` Newton steps, recording `β` at `z, N(z), …, N^k(z)`.
///
/// A singular Jacobian stops the iteration and is noted in the table.
pub fn newton_refine<S: Scalar>(
    system: &ExpSystem,
    z: &[S],
    k: usize,
) -> Result<(Vec<S>, ResidualTable<S::Real>), NumericError> {
    system.check_dim(z)?;
    let bits = point_bits(z);
    let ev = system.evaluator::<S>(bits)?;
    let mut current = z.to_vec();
    let mut table = ResidualTable {
        rows: Vec::with_capacity(k + 1),
        singular_at: None,
    };
    for iter in 0..=k {
        let Some(delta) = newton_correction(&ev, &current).1 else {
            table.rows.push(ResidualRow {
                k: iter,
                beta_sq: S::Real::from_int(0, bits),
            });
            table.singular_at = Some(iter);
            break;
        };
        table.rows.push(ResidualRow {
            k: iter,
            beta_sq: norm_sq(&delta),
        });
        if iter < k {
            for (c, d) in current.iter_mut().zip(&delta) {
                *c -= d;
            }
        }
    }
    Ok((current, table))
}
