use rug::Rational;

use super::{ArithmeticMode, Real, Scalar};
use crate::error::NumericError;

/// Dense row-major matrix over one scalar kind.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> CMatrix<S> {
    pub fn zeros(rows: usize, cols: usize, bits: u32) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![S::zero(bits); rows * cols],
        }
    }

    pub fn identity(n: usize, bits: u32) -> Self {
        let mut m = Self::zeros(n, n, bits);
        for i in 0..n {
            m.data[i * n + i] = S::one(bits);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, NumericError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumericError::DimensionMismatch {
                expected: c,
                found: rows.iter().map(Vec::len).find(|&l| l != c).unwrap_or(0),
            });
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// A single-column matrix.
    pub fn column(values: Vec<S>) -> Self {
        CMatrix {
            rows: values.len(),
            cols: 1,
            data: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn into_column(self) -> Vec<S> {
        assert_eq!(self.cols, 1, "not a column matrix");
        self.data
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero(x.first().map_or(0, Scalar::bits));
                for (a, xj) in self.row(i).iter().zip(x) {
                    acc += &(a.clone() * xj);
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &CMatrix<S>) -> CMatrix<S> {
        assert_eq!(self.cols, other.rows);
        let bits = self.data.first().map_or(0, Scalar::bits);
        let mut out = CMatrix::zeros(self.rows, other.cols, bits);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = S::zero(bits);
                for k in 0..self.cols {
                    acc += &(self.get(i, k).clone() * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    /// Per-column squared Euclidean norms.
    pub fn column_norms_sq(&self) -> Vec<S::Real> {
        (0..self.cols)
            .map(|j| {
                let mut acc = self.get(0, j).abs_sq();
                for i in 1..self.rows {
                    acc += &self.get(i, j).abs_sq();
                }
                acc
            })
            .collect()
    }
}

/// Squared Euclidean norm `Σ |x_i|²`.
pub fn norm_sq<S: Scalar>(x: &[S]) -> S::Real {
    let bits = x.first().map_or(0, Scalar::bits);
    let mut acc = S::Real::from_int(0, bits.max(super::MIN_BITS));
    for xi in x {
        acc += &xi.abs_sq();
    }
    acc
}

/// `‖x‖₁² = 1 + ‖x‖²`.
pub fn norm1_sq<S: Scalar>(x: &[S]) -> S::Real {
    let bits = x.first().map_or(0, Scalar::bits).max(super::MIN_BITS);
    S::Real::from_int(1, bits) + norm_sq(x)
}

/// `Σ_ij |A_ij|²`, an upper bound for the squared spectral norm.
pub fn frobenius_norm_sq<S: Scalar>(a: &CMatrix<S>) -> S::Real {
    norm_sq(a.entries())
}

/// Solves `A·X = B` for `X`.
///
/// Exact scalars use Bareiss fraction-free elimination and a pivot is
/// singular only when it is exactly zero. Floating scalars use partial
/// pivoting and treat a pivot as zero when
/// `|pivot|² < 2^(16 − bits) · max_j |A_rj|²` for its original row `r`.
pub fn solve_columns<S: Scalar>(a: &CMatrix<S>, b: &CMatrix<S>) -> Result<CMatrix<S>, NumericError> {
    if a.rows != a.cols {
        return Err(NumericError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if b.rows != a.rows {
        return Err(NumericError::DimensionMismatch {
            expected: a.rows,
            found: b.rows,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(CMatrix {
            rows: 0,
            cols: b.cols,
            data: Vec::new(),
        });
    }
    let width = n + b.cols;
    let mut m: Vec<Vec<S>> = (0..n)
        .map(|i| a.row(i).iter().chain(b.row(i)).cloned().collect())
        .collect();
    match S::MODE {
        ArithmeticMode::ExactRational => bareiss_forward(&mut m, n, width)?,
        ArithmeticMode::Floating => pivoted_forward(&mut m, n, width)?,
    }
    let bits = a.data.first().map_or(0, Scalar::bits);
    let mut x = CMatrix::zeros(n, b.cols, bits);
    for c in 0..b.cols {
        for i in (0..n).rev() {
            let mut acc = m[i][n + c].clone();
            for j in i + 1..n {
                acc -= &(m[i][j].clone() * x.get(j, c));
            }
            x.set(i, c, acc / &m[i][i]);
        }
    }
    Ok(x)
}

fn bareiss_forward<S: Scalar>(m: &mut [Vec<S>], n: usize, width: usize) -> Result<(), NumericError> {
    let mut prev: Option<S> = None;
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(NumericError::SingularMatrix)?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..width {
                let t = m[i][j].clone() * &m[k][k] - m[i][k].clone() * &m[k][j];
                m[i][j] = match &prev {
                    Some(d) => t / d,
                    None => t,
                };
            }
            m[i][k] = S::zero(0);
        }
        prev = Some(m[k][k].clone());
    }
    Ok(())
}

fn pivoted_forward<S: Scalar>(m: &mut [Vec<S>], n: usize, width: usize) -> Result<(), NumericError> {
    let bits = m[0][0].bits();
    let threshold = S::Real::from_rational(&pow2(16i64 - bits as i64), bits);
    let mut scale: Vec<S::Real> = m
        .iter()
        .map(|row| {
            row[..n]
                .iter()
                .map(Scalar::abs_sq)
                .fold(S::Real::from_int(0, bits), Real::max_of)
        })
        .collect();
    for k in 0..n {
        let mut p = k;
        let mut best = m[k][k].abs_sq();
        for i in k + 1..n {
            let v = m[i][k].abs_sq();
            if v > best {
                best = v;
                p = i;
            }
        }
        if scale[p].is_zero() || best < threshold.clone() * &scale[p] {
            return Err(NumericError::SingularMatrix);
        }
        m.swap(k, p);
        scale.swap(k, p);
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let factor = row[k].clone() / &pivot_row[k];
            for j in k + 1..width {
                row[j] -= &(factor.clone() * &pivot_row[j]);
            }
            row[k] = S::zero(bits);
        }
    }
    Ok(())
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(rug::Integer::from(1) << e as u32)
    } else {
        Rational::from((rug::Integer::from(1), rug::Integer::from(1) << (-e) as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{BigComplex, ExactComplex};

    fn ex(v: &[&[i64]]) -> CMatrix<ExactComplex> {
        CMatrix::from_rows(
            v.iter()
                .map(|r| r.iter().map(|&x| ExactComplex::from_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn norm1_of_empty_and_pythagorean() {
        let empty: Vec<ExactComplex> = vec![];
        assert_eq!(norm1_sq(&empty), Rational::from(1));
        let x = vec![ExactComplex::from_ratio(3, 5), ExactComplex::from_ratio(4, 5)];
        assert_eq!(norm1_sq(&x), Rational::from(2));
        let y = vec![BigComplex::from_f64(1.5, 0.0, 64)];
        assert_eq!(norm1_sq(&y).to_f64(), 3.25);
    }

    #[test]
    fn identity_solve_returns_rhs() {
        let b = ex(&[&[1, 2], &[3, 4]]);
        let x = solve_columns(&CMatrix::identity(2, 0), &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn diagonal_solve() {
        let x = solve_columns(&ex(&[&[2, 0], &[0, 4]]), &ex(&[&[1], &[1]])).unwrap();
        assert_eq!(x.get(0, 0), &ExactComplex::from_ratio(1, 2));
        assert_eq!(x.get(1, 0), &ExactComplex::from_ratio(1, 4));
    }

    #[test]
    fn rank_deficient_is_singular() {
        let r = solve_columns(&ex(&[&[1, 1], &[1, 1]]), &ex(&[&[1], &[2]]));
        assert!(matches!(r, Err(NumericError::SingularMatrix)));
        let f = CMatrix::from_rows(vec![
            vec![BigComplex::from_f64(1.0, 0.0, 64), BigComplex::from_f64(1.0, 0.0, 64)],
            vec![BigComplex::from_f64(1.0, 0.0, 64), BigComplex::from_f64(1.0, 0.0, 64)],
        ])
        .unwrap();
        assert!(matches!(
            solve_columns(&f, &CMatrix::identity(2, 64)),
            Err(NumericError::SingularMatrix)
        ));
    }

    #[test]
    fn exact_solve_needs_pivot_swap() {
        let a = ex(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        let b = ex(&[&[1], &[2], &[3]]);
        let x = solve_columns(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_norm_sq(&ex(&[&[0, 0], &[0, 0]])), Rational::from(0));
        assert_eq!(frobenius_norm_sq(&CMatrix::<ExactComplex>::identity(3, 0)), Rational::from(3));
        let a = ex(&[&[1, 2], &[2, 1]]);
        assert_eq!(frobenius_norm_sq(&a), Rational::from(10));
    }
}
