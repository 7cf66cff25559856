use serde::Serialize;

use crate::coalescing::{coalescing_cospectral, family_cached, DeletionCache};
use crate::error::{Error, Result};
use crate::exactmath::{int, Polynomial, Rational};
use crate::graph::{coalesce, to_graph6, CoalescentPair, Graph, RootedGraph, VertexSet};
use crate::spectral::{lq_char_poly, normalized_char_poly};

use super::corpus::Corpus;
use super::pairs::{cospectral_candidates, matched_set_pairs, SetPair};

/// Adjacency check on induced subgraphs: for a `q = 0` coalescing
/// cospectral pair, `H1[B1]` and `H2[B2]` are cospectral, and so are the
/// subgraphs induced by the complements. `Ok(false)` means that implication
/// failed.
pub fn induced_check(h1: &Graph, b1: &VertexSet, h2: &Graph, b2: &VertexSet) -> Result<bool> {
    let zero = int(0);
    let mut c1 = DeletionCache::new(h1.clone(), zero.clone())?;
    let mut c2 = DeletionCache::new(h2.clone(), zero.clone())?;
    if !coalescing_cospectral(&family_cached(&mut c1, b1)?, &family_cached(&mut c2, b2)?)? {
        return Err(Error::Precondition(format!(
            "({b1}, {b2}) is not coalescing cospectral for the adjacency matrix"
        )));
    }
    let induced = |h: &Graph, b: &VertexSet| lq_char_poly(&h.induced_subgraph(b.as_slice()), &zero);
    let (d1, d2) = (b1.complement(h1.order()), b2.complement(h2.order()));
    Ok(induced(h1, b1) == induced(h2, b2) && induced(h1, &d1) == induced(h2, &d2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionVerdict {
    pub a_match: bool,
    pub b_match: bool,
    pub union_match: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn union_probe(
    h1: &Graph,
    a1: &VertexSet,
    b1: &VertexSet,
    h2: &Graph,
    a2: &VertexSet,
    b2: &VertexSet,
    q: &Rational,
) -> Result<UnionVerdict> {
    for (a, b) in [(a1, b1), (a2, b2)] {
        if !a.is_disjoint(b) {
            return Err(Error::Precondition(format!("sets {a} and {b} overlap")));
        }
    }
    let mut c1 = DeletionCache::new(h1.clone(), q.clone())?;
    let mut c2 = DeletionCache::new(h2.clone(), q.clone())?;
    let mut matches = |x: &VertexSet, y: &VertexSet| -> Result<bool> {
        coalescing_cospectral(&family_cached(&mut c1, x)?, &family_cached(&mut c2, y)?)
    };
    Ok(UnionVerdict {
        a_match: matches(a1, a2)?,
        b_match: matches(b1, b2)?,
        union_match: matches(&a1.union(b1), &a2.union(b2))?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionInstance {
    pub g1: String,
    pub g2: String,
    pub a: SetPair,
    pub b: SetPair,
    pub verdict: UnionVerdict,
}

/// First instance, in corpus order, of two disjoint coalescing cospectral
/// set pairs whose union is not coalescing cospectral. Both sets must be
/// non-empty on each side.
pub fn find_union_non_closure(
    corpus: &Corpus,
    q: &Rational,
    workers: usize,
) -> Result<Option<UnionInstance>> {
    for (i, j) in cospectral_candidates(corpus, q, workers) {
        let (h1, h2) = (&corpus.entries[i].graph, &corpus.entries[j].graph);
        let all = matched_set_pairs(h1, h2, q)?;
        let matched: std::collections::HashSet<(u64, u64)> =
            all.iter().map(|(x, y)| (x.mask(), y.mask())).collect();
        for (x, (a1, a2)) in all.iter().enumerate() {
            if a1.is_empty() {
                continue;
            }
            for (b1, b2) in &all[x + 1..] {
                if b1.is_empty() || !a1.is_disjoint(b1) || !a2.is_disjoint(b2) {
                    continue;
                }
                if matched.contains(&(a1.mask() | b1.mask(), a2.mask() | b2.mask())) {
                    continue;
                }
                let verdict = union_probe(h1, a1, b1, h2, a2, b2, q)?;
                return Ok(Some(UnionInstance {
                    g1: to_graph6(h1),
                    g2: to_graph6(h2),
                    a: SetPair::new(a1, a2),
                    b: SetPair::new(b1, b2),
                    verdict,
                }));
            }
        }
    }
    Ok(None)
}

/// A configuration `(B1, v1)`, `(B2, v2)` for which the sets, the single
/// vertices and the unions are all coalescing cospectral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoStepInstance {
    pub g1: String,
    pub g2: String,
    pub sets: SetPair,
    pub vertices: [usize; 2],
}

/// Up to `limit` two-step configurations between distinct corpus graphs,
/// with non-empty sets, in corpus order.
pub fn find_twostep_instances(
    corpus: &Corpus,
    q: &Rational,
    limit: usize,
    workers: usize,
) -> Result<Vec<TwoStepInstance>> {
    let mut out = Vec::new();
    for (i, j) in cospectral_candidates(corpus, q, workers) {
        let (h1, h2) = (&corpus.entries[i].graph, &corpus.entries[j].graph);
        let all = matched_set_pairs(h1, h2, q)?;
        let matched: std::collections::HashSet<(u64, u64)> =
            all.iter().map(|(x, y)| (x.mask(), y.mask())).collect();
        let singles: Vec<(usize, usize)> = all
            .iter()
            .filter(|(x, _)| x.len() == 1)
            .map(|(x, y)| (x.as_slice()[0], y.as_slice()[0]))
            .collect();
        for (b1, b2) in all.iter().filter(|(x, _)| !x.is_empty()) {
            for &(v1, v2) in &singles {
                if b1.contains(v1) || b2.contains(v2) {
                    continue;
                }
                if matched.contains(&(b1.mask() | 1 << v1, b2.mask() | 1 << v2)) {
                    out.push(TwoStepInstance {
                        g1: to_graph6(h1),
                        g2: to_graph6(h2),
                        sets: SetPair::new(b1, b2),
                        vertices: [v1, v2],
                    });
                    if out.len() == limit {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizedDemo {
    pub graphs: [String; 2],
    /// Normalized adjacency char polys before and after gluing a pendant
    /// edge at every vertex.
    pub before: [Polynomial; 2],
    pub after: [Polynomial; 2],
    /// Adjacency char polys of the same two coalesced graphs.
    pub adjacency_after: [Polynomial; 2],
}

impl NormalizedDemo {
    pub fn cospectral_before(&self) -> bool {
        self.before[0] == self.before[1]
    }

    pub fn cospectral_after(&self) -> bool {
        self.after[0] == self.after[1]
    }

    pub fn adjacency_cospectral_after(&self) -> bool {
        self.adjacency_after[0] == self.adjacency_after[1]
    }
}

/// `K_{1,3}` and `K_{2,2}` share the normalized adjacency spectrum, which
/// gluing a pendant edge at every vertex destroys.
pub fn normalized_demo() -> Result<NormalizedDemo> {
    let graphs = [Graph::star(3), Graph::complete_bipartite(2, 2)];
    let glued: Vec<Graph> = graphs
        .iter()
        .map(|g| {
            let pair = CoalescentPair::new(g.clone(), g.vertex_set())?;
            Ok(coalesce(&pair, &RootedGraph::star(1)).graph)
        })
        .collect::<Result<_>>()?;
    let zero = int(0);
    Ok(NormalizedDemo {
        graphs: [to_graph6(&graphs[0]), to_graph6(&graphs[1])],
        before: [
            normalized_char_poly(&graphs[0])?,
            normalized_char_poly(&graphs[1])?,
        ],
        after: [
            normalized_char_poly(&glued[0])?,
            normalized_char_poly(&glued[1])?,
        ],
        adjacency_after: [
            lq_char_poly(&glued[0], &zero),
            lq_char_poly(&glued[1], &zero),
        ],
    })
}
