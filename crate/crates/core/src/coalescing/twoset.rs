use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::rational::as_string;
use crate::exactmath::{Polynomial, Rational};
use crate::graph::random::random_rooted_graph;
use crate::graph::{coalesce, to_graph6, CoalescentPair, Graph, RootedGraph, VertexSet};
use crate::spectral::lq_char_poly;

use super::family::{coalescing_cospectral, family_cached, submasks, DeletionCache};

/// `p_{H,B,B',k,l}`: the sum of `p_{H,S ∪ T}` over `k`-subsets `S` of `B` and
/// `l`-subsets `T` of `B'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoSetTable {
    #[serde(with = "as_string")]
    pub q: Rational,
    /// `polys[k][l]`.
    pub polys: Vec<Vec<Polynomial>>,
}

impl TwoSetTable {
    pub fn get(&self, k: usize, l: usize) -> &Polynomial {
        &self.polys[k][l]
    }
}

pub fn two_set_family(
    h: &Graph,
    b: &VertexSet,
    b2: &VertexSet,
    q: &Rational,
) -> Result<TwoSetTable> {
    let mut cache = DeletionCache::new(h.clone(), q.clone())?;
    two_set_family_cached(&mut cache, b, b2)
}

pub fn two_set_family_cached(
    cache: &mut DeletionCache,
    b: &VertexSet,
    b2: &VertexSet,
) -> Result<TwoSetTable> {
    cache.graph().check_set(b)?;
    cache.graph().check_set(b2)?;
    if !b.is_disjoint(b2) {
        return Err(Error::Precondition(format!("sets {b} and {b2} overlap")));
    }
    let mut polys = vec![vec![Polynomial::zero(); b2.len() + 1]; b.len() + 1];
    for s in submasks(b.mask()) {
        for t in submasks(b2.mask()) {
            let (k, l) = (s.count_ones() as usize, t.count_ones() as usize);
            polys[k][l] = &polys[k][l] + cache.get(s | t);
        }
    }
    Ok(TwoSetTable {
        q: cache.q().clone(),
        polys,
    })
}

/// Sampling parameters for rooted probe graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    pub count: usize,
    pub seed: u64,
    pub max_order: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            count: 20,
            seed: 0,
            max_order: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleProbe {
    /// graph6 of the graph glued onto the sets, and its root.
    pub set_graph: String,
    pub set_root: usize,
    /// graph6 of the graph glued onto the single vertices, and its root.
    pub vertex_graph: String,
    pub vertex_root: usize,
    pub cospectral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoStepReport {
    #[serde(with = "as_string")]
    pub q: Rational,
    /// `(H1, B1)` and `(H2, B2)` coalescing cospectral.
    pub sets_match: bool,
    /// `(H1, {v1})` and `(H2, {v2})` coalescing cospectral.
    pub vertices_match: bool,
    /// `(H1, B1 ∪ {v1})` and `(H2, B2 ∪ {v2})` coalescing cospectral.
    pub unions_match: bool,
    /// Two-set tables for `(B_i, {v_i})` agree entry by entry.
    pub two_set_tables_match: bool,
    /// Empty unless all three hypotheses hold.
    pub probes: Vec<DoubleProbe>,
}

impl TwoStepReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.sets_match && self.vertices_match && self.unions_match
    }

    pub fn all_probes_cospectral(&self) -> bool {
        self.probes.iter().all(|p| p.cospectral)
    }
}

/// Glues `g` onto every vertex of `b`, then `g_hat` onto `v`.
pub fn double_coalesce(
    h: &Graph,
    b: &VertexSet,
    g: &RootedGraph,
    v: usize,
    g_hat: &RootedGraph,
) -> Result<Graph> {
    let first = coalesce(&CoalescentPair::new(h.clone(), b.clone())?, g).graph;
    let second = CoalescentPair::new(first, VertexSet::new([v]))?;
    Ok(coalesce(&second, g_hat).graph)
}

#[allow(clippy::too_many_arguments)]
pub fn twostep_check(
    h1: &Graph,
    b1: &VertexSet,
    v1: usize,
    h2: &Graph,
    b2: &VertexSet,
    v2: usize,
    q: &Rational,
    probes: &ProbeConfig,
) -> Result<TwoStepReport> {
    h1.check_vertex(v1)?;
    h2.check_vertex(v2)?;
    if b1.contains(v1) || b2.contains(v2) {
        return Err(Error::Precondition(
            "the single vertex must lie outside its set".into(),
        ));
    }
    let mut c1 = DeletionCache::new(h1.clone(), q.clone())?;
    let mut c2 = DeletionCache::new(h2.clone(), q.clone())?;
    let (s1, s2) = (VertexSet::new([v1]), VertexSet::new([v2]));
    let mut matches = |x: &VertexSet, y: &VertexSet| -> Result<bool> {
        coalescing_cospectral(&family_cached(&mut c1, x)?, &family_cached(&mut c2, y)?)
    };
    let sets_match = matches(b1, b2)?;
    let vertices_match = matches(&s1, &s2)?;
    let unions_match = matches(&b1.union(&s1), &b2.union(&s2))?;
    let two_set_tables_match =
        two_set_family_cached(&mut c1, b1, &s1)? == two_set_family_cached(&mut c2, b2, &s2)?;

    let mut report = TwoStepReport {
        q: q.clone(),
        sets_match,
        vertices_match,
        unions_match,
        two_set_tables_match,
        probes: Vec::new(),
    };
    if report.hypotheses_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(probes.seed);
        for _ in 0..probes.count {
            let g = random_rooted_graph(&mut rng, probes.max_order);
            let g_hat = random_rooted_graph(&mut rng, probes.max_order);
            let p1 = lq_char_poly(&double_coalesce(h1, b1, &g, v1, &g_hat)?, q);
            let p2 = lq_char_poly(&double_coalesce(h2, b2, &g, v2, &g_hat)?, q);
            report.probes.push(DoubleProbe {
                set_graph: to_graph6(g.graph()),
                set_root: g.root(),
                vertex_graph: to_graph6(g_hat.graph()),
                vertex_root: g_hat.root(),
                cospectral: p1 == p2,
            });
        }
    }
    Ok(report)
}
