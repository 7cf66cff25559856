//! Recovering the family of `(H, V \ B)` from the family of `(H, B)`.
//!
//! Write `g_k = x^k f_{H,B,k}`; this puts every deleted polynomial back on a
//! common footing where unused vertices are counted in all of `H`. With
//! `c_{k,l}` the coefficient of `x^(n-l)` in `g_k`, and `ω_{i,j}` the total
//! scalar weight of cycle decompositions meeting `B` in `i` vertices and the
//! rest of `H` in `j` vertices,
//!
//! ```text
//! c_{k,l} = sum_i C(|B| - i, k) * ω_{i, l-i}
//! ```
//!
//! For each `l` a square slice of these equations is invertible, so the `ω`
//! table is determined by the family. The complement family is then
//! `x^-k * sum_{i,j} C(n - |B| - j, k) * ω_{i,j} * x^(n-i-j)`.

use num_traits::Zero;
use serde::Serialize;

use crate::coalescing::{coalescing_cospectral, family, FamilyTable};
use crate::error::{Error, Result};
use crate::exactmath::rational::{as_string, as_string_matrix};
use crate::exactmath::{binomial, solve_linear, Polynomial, Rational, RationalMatrix};
use crate::graph::{CoalescentPair, Graph, VertexSet};
use crate::spectral::{check_oracle_size, for_each_decomposition};

/// `c[k][l]` for `k = 0..=|B|`, `l = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientArray {
    pub n: usize,
    pub set_size: usize,
    #[serde(with = "as_string_matrix")]
    pub c: Vec<Vec<Rational>>,
}

/// `omega[i][j]` for `i = 0..=|B|`, `j = 0..=n-|B|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    pub n: usize,
    pub set_size: usize,
    #[serde(with = "as_string_matrix")]
    pub omega: Vec<Vec<Rational>>,
}

impl WeightTable {
    fn zeros(n: usize, set_size: usize) -> Self {
        Self {
            n,
            set_size,
            omega: vec![vec![Rational::zero(); n - set_size + 1]; set_size + 1],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.omega
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `c_{k,l}` predicted by this table.
    pub fn predicted_coefficient(&self, k: usize, l: usize) -> Rational {
        (0..=self.set_size.min(l))
            .map(|i| {
                Rational::from_integer(binomial(self.set_size - i, k as i64)) * self.get(i, l - i)
            })
            .sum()
    }
}

fn rat(b: num_bigint::BigInt) -> Rational {
    Rational::from_integer(b)
}

pub fn extract_coefficients(t: &FamilyTable) -> CoefficientArray {
    let n = t.n;
    let c = t
        .polys
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let g = f.shift_up(k);
            (0..=n).map(|l| g.coeff(n - l)).collect()
        })
        .collect();
    CoefficientArray {
        n,
        set_size: t.set_size,
        c,
    }
}

/// Row order (values of `k`) of the system for a given `l`.
fn system_rows(set_size: usize, l: usize) -> Vec<usize> {
    if l < set_size {
        (0..=l).collect()
    } else {
        (0..=set_size).rev().collect()
    }
}

/// Matrix of the square system solved for `ω_{i,l-i}`.
///
/// Columns are `i = 0..=m-1`. For `l < |B|` the rows are `k = 0..=l`; the
/// determinant is ±1. For `l >= |B|` the rows run `k = |B|` down to `0`, which
/// makes the matrix unit lower triangular.
pub fn weight_system_matrix(set_size: usize, l: usize) -> RationalMatrix {
    let rows = system_rows(set_size, l);
    let m = rows.len();
    RationalMatrix::from_fn(m, m, |r, i| rat(binomial(set_size - i, rows[r] as i64)))
}

pub fn solve_weights(coeffs: &CoefficientArray) -> Result<WeightTable> {
    let (n, b) = (coeffs.n, coeffs.set_size);
    if b > n || coeffs.c.len() != b + 1 || coeffs.c.iter().any(|row| row.len() != n + 1) {
        return Err(Error::DimensionMismatch(format!(
            "coefficient array does not match n = {n}, |B| = {b}"
        )));
    }
    let mut table = WeightTable::zeros(n, b);
    for l in 0..=n {
        let rows = system_rows(b, l);
        let matrix = weight_system_matrix(b, l);
        let rhs: Vec<Rational> = rows.iter().map(|&k| coeffs.c[k][l].clone()).collect();
        let solution = solve_linear(&matrix, &rhs).map_err(|e| match e {
            Error::SingularMatrix => {
                Error::Inconsistent(format!("weight system for l = {l} is singular"))
            }
            other => other,
        })?;
        for (i, w) in solution.into_iter().enumerate() {
            let j = l - i;
            if j <= n - b {
                table.omega[i][j] = w;
            } else if !w.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "ω[{i}][{j}] = {w} lies outside 0..={}",
                    n - b
                )));
            }
        }
    }
    for k in 0..=b {
        for l in 0..=n {
            if table.predicted_coefficient(k, l) != coeffs.c[k][l] {
                return Err(Error::Inconsistent(format!(
                    "c[{k}][{l}] is not reproduced by the solved weights"
                )));
            }
        }
    }
    Ok(table)
}

/// `ω` by direct enumeration of cycle decompositions of `h`.
pub fn weights_cycle_oracle(h: &Graph, b: &VertexSet, q: &Rational) -> Result<WeightTable> {
    h.check_set(b)?;
    check_oracle_size(h, h.order())?;
    let n = h.order();
    let b_mask = b.mask();
    let mut table = WeightTable::zeros(n, b.len());
    for_each_decomposition(h, q, VertexSet::full(n).mask(), |used, w| {
        let i = (used & b_mask).count_ones() as usize;
        let j = (used & !b_mask).count_ones() as usize;
        table.omega[i][j] += w;
    });
    Ok(table)
}

fn complement_from_weights(weights: &WeightTable, q: &Rational) -> Result<FamilyTable> {
    let n = weights.n;
    let comp = n - weights.set_size;
    let mut polys = Vec::with_capacity(comp + 1);
    for k in 0..=comp {
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, row) in weights.omega.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                if w.is_zero() || i + j > n {
                    continue;
                }
                coeffs[n - i - j] += rat(binomial(comp - j, k as i64)) * w;
            }
        }
        polys.push(Polynomial::from_coeffs(coeffs).shift_down(k)?);
    }
    Ok(FamilyTable {
        n,
        set_size: comp,
        q: q.clone(),
        polys,
    })
}

/// The family of `(H, V \ B)` computed from the family of `(H, B)` alone.
pub fn complement_family(t: &FamilyTable) -> Result<FamilyTable> {
    let weights = solve_weights(&extract_coefficients(t))?;
    complement_from_weights(&weights, &t.q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    #[serde(with = "as_string")]
    pub q: Rational,
    pub families_match: bool,
    /// Complement families reconstructed from each side's family agree.
    pub complements_match: bool,
    /// Reconstructed complement families equal the directly computed ones.
    pub reconstruction_exact: bool,
}

impl MainTheoremReport {
    /// Matching families and matching complement families imply each other.
    pub fn holds(&self) -> bool {
        self.reconstruction_exact && self.families_match == self.complements_match
    }
}

pub fn verify_main_theorem(
    p1: &CoalescentPair,
    p2: &CoalescentPair,
    q: &Rational,
) -> Result<MainTheoremReport> {
    let f1 = family(p1.graph(), p1.set(), q)?;
    let f2 = family(p2.graph(), p2.set(), q)?;
    let c1 = complement_family(&f1)?;
    let c2 = complement_family(&f2)?;
    let d1 = family(p1.graph(), p1.complement().set(), q)?;
    let d2 = family(p2.graph(), p2.complement().set(), q)?;
    Ok(MainTheoremReport {
        q: q.clone(),
        families_match: coalescing_cospectral(&f1, &f2)?,
        complements_match: coalescing_cospectral(&c1, &c2)?,
        reconstruction_exact: c1 == d1 && c2 == d2,
    })
}
