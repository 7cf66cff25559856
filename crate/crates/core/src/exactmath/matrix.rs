use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Principal submatrix keeping only the listed indices, in the given order.
    pub fn principal_submatrix(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), keep.len(), |i, j| {
            self.get(keep[i], keep[j]).clone()
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant by pivoted Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] / &p;
                for j in col..n {
                    let delta = &factor * &a[col * n + j];
                    a[r * n + j] -= delta;
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(xI - M)`.
    ///
    /// Entries are scaled to integers by their common denominator `d`, the
    /// division-free Berkowitz recurrence runs over big integers, and the
    /// coefficient of `x^i` is rescaled by `d^(i-n)`.
    pub fn char_poly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let d = common_denominator(&self.entries);
        let scaled: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| (e * Rational::from_integer(d.clone())).to_integer())
            .collect();
        let desc = berkowitz(n, &scaled);
        // desc[k] is the coefficient of y^(n-k) in det(yI - dM).
        let mut coeffs = vec![Rational::zero(); n + 1];
        let mut d_pow = BigInt::one();
        for (k, c) in desc.into_iter().enumerate() {
            coeffs[n - k] = Rational::new(c, d_pow.clone());
            d_pow *= &d;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// Berkowitz: coefficients of `det(yI - A)` for an integer matrix, highest
/// power first.
pub(crate) fn berkowitz(n: usize, a: &[BigInt]) -> Vec<BigInt> {
    let at = |i: usize, j: usize| &a[i * n + j];
    let mut poly = vec![BigInt::one()];
    for r in 0..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^(r-1) C
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-at(r, r).clone());
        let mut w: Vec<BigInt> = (0..r).map(|i| at(i, r).clone()).collect();
        for k in 0..r {
            let dot: BigInt = (0..r).map(|j| at(r, j) * &w[j]).sum();
            t.push(-dot);
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).map(|j| at(i, j) * &w[j]).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, c) in poly.iter().enumerate().take(i + 1) {
                if !c.is_zero() {
                    *slot += &t[i - j] * c;
                }
            }
        }
        poly = next;
    }
    poly
}

/// Solves the square system `m * x = rhs` exactly.
pub fn solve_linear(m: &RationalMatrix, rhs: &[Rational]) -> Result<Vec<Rational>> {
    m.require_square()?;
    let n = m.rows;
    if rhs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a {n}x{n} system",
            rhs.len()
        )));
    }
    let width = n + 1;
    let mut aug: Vec<Rational> = Vec::with_capacity(n * width);
    for (i, b) in rhs.iter().enumerate() {
        aug.extend(m.row(i).iter().cloned());
        aug.push(b.clone());
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r * width + col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        if pivot != col {
            for j in 0..width {
                aug.swap(pivot * width + j, col * width + j);
            }
        }
        let p = aug[col * width + col].clone();
        for j in col..width {
            aug[col * width + j] /= &p;
        }
        for r in 0..n {
            if r == col || aug[r * width + col].is_zero() {
                continue;
            }
            let factor = aug[r * width + col].clone();
            for j in col..width {
                let delta = &factor * &aug[col * width + j];
                aug[r * width + j] -= delta;
            }
        }
    }
    Ok((0..n).map(|i| aug[i * width + n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, ratio};
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_solve() {
        let v = vec![int(3), ratio(-1, 2), int(0)];
        assert_eq!(solve_linear(&RationalMatrix::identity(3), &v).unwrap(), v);
    }

    #[test]
    fn homogeneous_nonsingular() {
        let m = mat(&[&[1, 1], &[1, 0]]);
        assert_eq!(
            solve_linear(&m, &[int(0), int(0)]).unwrap(),
            vec![int(0), int(0)]
        );
    }

    #[test]
    fn singular_is_reported() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            solve_linear(&m, &[int(1), int(1)]),
            Err(Error::SingularMatrix)
        );
        assert_eq!(m.determinant().unwrap(), int(0));
    }

    #[test]
    fn non_square_rejected() {
        let m = RationalMatrix::zeros(2, 3);
        assert!(matches!(m.char_poly(), Err(Error::NotSquare { .. })));
        assert!(matches!(
            solve_linear(&m, &[int(0), int(0)]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn empty_matrix_char_poly_is_one() {
        assert_eq!(
            RationalMatrix::zeros(0, 0).char_poly().unwrap(),
            Polynomial::one()
        );
        assert_eq!(RationalMatrix::zeros(0, 0).determinant().unwrap(), int(1));
    }

    #[test]
    fn two_by_two_char_poly_with_rational_q() {
        // [[q,1],[1,q]] -> x^2 - 2qx + q^2 - 1
        let q = ratio(-2, 3);
        let m = RationalMatrix::from_rows(vec![vec![q.clone(), int(1)], vec![int(1), q.clone()]])
            .unwrap();
        let expected = Polynomial::from_coeffs(vec![&q * &q - int(1), -(int(2) * &q), int(1)]);
        assert_eq!(m.char_poly().unwrap(), expected);
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec((-6i64..6, 1i64..4), n * n).prop_map(move |v| {
                RationalMatrix::new(n, n, v.into_iter().map(|(a, b)| ratio(a, b)).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn solution_satisfies_system(m in arb_matrix(5), seed in prop::collection::vec(-9i64..9, 5)) {
            let rhs: Vec<Rational> = seed.iter().take(m.rows()).map(|&v| int(v)).collect();
            match solve_linear(&m, &rhs) {
                Ok(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), rhs),
                Err(Error::SingularMatrix) => prop_assert_eq!(m.determinant().unwrap(), int(0)),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn char_poly_matches_pointwise_determinant(m in arb_matrix(5), x in -4i64..4) {
            let x = int(x);
            let n = m.rows();
            let shifted = RationalMatrix::from_fn(n, n, |i, j| {
                let diag = if i == j { x.clone() } else { int(0) };
                diag - m.get(i, j)
            });
            let p = m.char_poly().unwrap();
            prop_assert!(p.is_monic());
            prop_assert_eq!(p.degree().finite(), Some(n));
            prop_assert_eq!(p.eval(&x), shifted.determinant().unwrap());
        }
    }
}
