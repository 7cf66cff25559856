//! Characteristic polynomials of graph matrices.

mod cycles;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{int, Polynomial, Rational, RationalMatrix};
use crate::graph::{distances, Graph, VertexSet};

pub use cycles::{char_poly_cycle_oracle, CYCLE_ORACLE_LIMIT};
pub(crate) use cycles::{check_oracle_size, for_each_decomposition};

/// Which graph matrix to take the spectrum of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    /// `qD + A`.
    Lq(Rational),
    Distance,
    /// `D^{-1/2} A D^{-1/2}`, computed through the similar matrix `D^{-1} A`.
    NormalizedAdjacency,
}

/// `qD + A`.
pub fn lq_matrix(g: &Graph, q: &Rational) -> RationalMatrix {
    RationalMatrix::from_fn(g.order(), g.order(), |i, j| {
        if i == j {
            q * int(g.degree(i) as i64)
        } else if g.has_edge(i, j) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

pub fn char_poly(m: &RationalMatrix) -> Result<Polynomial> {
    m.char_poly()
}

pub fn lq_char_poly(g: &Graph, q: &Rational) -> Polynomial {
    deleted_char_poly(g, q, &VertexSet::empty()).expect("empty set is valid")
}

/// `p_{g,s}`: characteristic polynomial of `L_q(g)` with the rows and columns
/// of `s` removed. Diagonal entries keep the degrees of the full graph.
pub fn deleted_char_poly(g: &Graph, q: &Rational, s: &VertexSet) -> Result<Polynomial> {
    g.check_set(s)?;
    let keep = s.complement(g.order());
    let keep = keep.as_slice();
    let m = RationalMatrix::from_fn(keep.len(), keep.len(), |i, j| {
        let (u, v) = (keep[i], keep[j]);
        if u == v {
            q * int(g.degree(u) as i64)
        } else if g.has_edge(u, v) {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    m.char_poly()
}

pub fn distance_matrix(g: &Graph) -> Result<RationalMatrix> {
    let d = distances(g)?;
    Ok(RationalMatrix::from_fn(g.order(), g.order(), |i, j| {
        int(d[i][j] as i64)
    }))
}

pub fn distance_char_poly(g: &Graph) -> Result<Polynomial> {
    distance_matrix(g)?.char_poly()
}

/// `D^{-1} A`; requires every vertex to have an edge.
pub fn random_walk_matrix(g: &Graph) -> Result<RationalMatrix> {
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    Ok(RationalMatrix::from_fn(g.order(), g.order(), |i, j| {
        if g.has_edge(i, j) {
            Rational::new(1.into(), (g.degree(i) as i64).into())
        } else {
            Rational::zero()
        }
    }))
}

/// Characteristic polynomial of the normalized adjacency matrix.
pub fn normalized_char_poly(g: &Graph) -> Result<Polynomial> {
    random_walk_matrix(g)?.char_poly()
}

pub fn matrix_char_poly(g: &Graph, kind: &MatrixKind) -> Result<Polynomial> {
    match kind {
        MatrixKind::Lq(q) => Ok(lq_char_poly(g, q)),
        MatrixKind::Distance => distance_char_poly(g),
        MatrixKind::NormalizedAdjacency => normalized_char_poly(g),
    }
}

/// Exact coefficient equality.
pub fn cospectral(p: &Polynomial, r: &Polynomial) -> bool {
    p == r
}
