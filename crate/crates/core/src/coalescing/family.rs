use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::rational::as_string;
use crate::exactmath::{format_rational, Polynomial, Rational};
use crate::graph::{Graph, VertexSet};
use crate::spectral::deleted_char_poly;

/// Largest graph whose vertex subsets fit in a `u64` mask.
pub const MASK_LIMIT: usize = 64;

/// Memoized `p_{H,S}` for one graph and one `q`, keyed by vertex mask.
#[derive(Clone, Debug)]
pub struct DeletionCache {
    graph: Graph,
    q: Rational,
    polys: HashMap<u64, Polynomial>,
}

impl DeletionCache {
    pub fn new(graph: Graph, q: Rational) -> Result<Self> {
        if graph.order() > MASK_LIMIT {
            return Err(Error::SizeLimit {
                what: "graph order",
                actual: graph.order(),
                limit: MASK_LIMIT,
            });
        }
        Ok(Self {
            graph,
            q,
            polys: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn get(&mut self, mask: u64) -> &Polynomial {
        let (graph, q) = (&self.graph, &self.q);
        self.polys.entry(mask).or_insert_with(|| {
            deleted_char_poly(graph, q, &VertexSet::from_mask(mask))
                .expect("mask lies inside the graph")
        })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// `f_{H,B,k}` for `k = 0..=|B|` at a fixed `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyTable {
    pub n: usize,
    pub set_size: usize,
    #[serde(with = "as_string")]
    pub q: Rational,
    pub polys: Vec<Polynomial>,
}

impl FamilyTable {
    /// Sums `lookup(S)` over every subset `S` of `set_mask`, grouped by `|S|`.
    pub(crate) fn assemble(
        n: usize,
        set_mask: u64,
        q: &Rational,
        mut lookup: impl FnMut(u64) -> Polynomial,
    ) -> Self {
        let set_size = set_mask.count_ones() as usize;
        let mut polys = vec![Polynomial::zero(); set_size + 1];
        for sub in submasks(set_mask) {
            let k = sub.count_ones() as usize;
            polys[k] = &polys[k] + &lookup(sub);
        }
        Self {
            n,
            set_size,
            q: q.clone(),
            polys,
        }
    }

    pub fn f(&self, k: usize) -> &Polynomial {
        &self.polys[k]
    }

    pub fn q_text(&self) -> String {
        format_rational(&self.q)
    }
}

/// Every submask of `mask`, including `0` and `mask` itself.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & mask)
        };
        Some(cur)
    })
}

/// `f_k = sum over k-subsets S of b of p_{h,S}`.
pub fn family(h: &Graph, b: &VertexSet, q: &Rational) -> Result<FamilyTable> {
    let mut cache = DeletionCache::new(h.clone(), q.clone())?;
    family_cached(&mut cache, b)
}

pub fn family_cached(cache: &mut DeletionCache, b: &VertexSet) -> Result<FamilyTable> {
    cache.graph().check_set(b)?;
    let n = cache.graph().order();
    let q = cache.q().clone();
    Ok(FamilyTable::assemble(n, b.mask(), &q, |s| {
        cache.get(s).clone()
    }))
}

/// True iff both tables have the same order, set size and every `f_k`.
pub fn coalescing_cospectral(a: &FamilyTable, b: &FamilyTable) -> Result<bool> {
    if a.q != b.q {
        return Err(Error::MismatchedQ(a.q_text(), b.q_text()));
    }
    Ok(a.n == b.n && a.set_size == b.set_size && a.polys == b.polys)
}
