//! Cycle-decomposition expansion of `det(xI - L_q)`.
//!
//! A decomposition is a vertex-disjoint collection of loops, single edges and
//! cycles of length at least three. Its weight is
//! `x^unused * 2^long * (-1)^cycles * prod(q * deg(v))` over looped vertices,
//! with degrees taken in the full graph.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{int, Polynomial, Rational};
use crate::graph::{Graph, VertexSet};

pub const CYCLE_ORACLE_LIMIT: usize = 10;

/// Calls `visit(used_mask, scalar_weight)` for every cycle decomposition of the
/// vertices in `available` whose scalar weight is nonzero. The `x` power is
/// left to the caller.
pub(crate) fn for_each_decomposition(
    g: &Graph,
    q: &Rational,
    available: u64,
    mut visit: impl FnMut(u64, &Rational),
) {
    let loops: Vec<Rational> = (0..g.order())
        .map(|v| -(q * int(g.degree(v) as i64)))
        .collect();
    let mut walker = Walker {
        g,
        loops: &loops,
        visit: &mut visit,
    };
    walker.step(available, 0, Rational::one());
}

struct Walker<'a, F> {
    g: &'a Graph,
    loops: &'a [Rational],
    visit: &'a mut F,
}

impl<F: FnMut(u64, &Rational)> Walker<'_, F> {
    fn step(&mut self, free: u64, used: u64, weight: Rational) {
        if free == 0 {
            (self.visit)(used, &weight);
            return;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);

        self.step(rest, used, weight.clone());

        if !self.loops[v].is_zero() {
            self.step(rest, used | 1 << v, &weight * &self.loops[v]);
        }

        let g = self.g;
        for &w in g.neighbors(v) {
            if rest >> w & 1 == 1 {
                self.step(rest & !(1 << w), used | 1 << v | 1 << w, -weight.clone());
            }
        }

        // cycles of length >= 3 whose least vertex is v, one orientation each
        let long = &weight * int(-2);
        let mut path = vec![v];
        self.extend_cycle(v, rest, &mut path, &long, used);
    }

    fn extend_cycle(
        &mut self,
        start: usize,
        rest: u64,
        path: &mut Vec<usize>,
        weight: &Rational,
        used: u64,
    ) {
        let g = self.g;
        let last = *path.last().expect("path starts at the least vertex");
        for &w in g.neighbors(last) {
            if w <= start || rest >> w & 1 == 0 || path.contains(&w) {
                continue;
            }
            path.push(w);
            if path.len() >= 3 && path[1] < w && g.has_edge(w, start) {
                let mask = path.iter().fold(0u64, |m, &u| m | 1 << u);
                self.step(rest & !mask, used | mask, weight.clone());
            }
            self.extend_cycle(start, rest, path, weight, used);
            path.pop();
        }
    }
}

pub(crate) fn check_oracle_size(g: &Graph, remaining: usize) -> Result<()> {
    if remaining > CYCLE_ORACLE_LIMIT || g.order() > 64 {
        return Err(Error::SizeLimit {
            what: "vertices in cycle enumeration",
            actual: remaining,
            limit: CYCLE_ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// `p_{g,s}` by summing cycle-decomposition weights over `V(g) \ s`.
pub fn char_poly_cycle_oracle(g: &Graph, q: &Rational, s: &VertexSet) -> Result<Polynomial> {
    g.check_set(s)?;
    let remaining = g.order() - s.len();
    check_oracle_size(g, remaining)?;
    let available = s.complement(g.order()).mask();
    let mut coeffs = vec![Rational::zero(); remaining + 1];
    for_each_decomposition(g, q, available, |used, w| {
        coeffs[remaining - used.count_ones() as usize] += w;
    });
    Ok(Polynomial::from_coeffs(coeffs))
}
