use crate::coalescing::FamilyTable;
use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational};
use crate::graph::{Graph, VertexSet};
use crate::spectral::deleted_char_poly;

use super::corpus::DEFAULT_ORDER_LIMIT;

/// `p_{H,S}` for every `S ⊆ V(H)`, indexed by vertex mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetTable {
    n: usize,
    q: Rational,
    polys: Vec<Polynomial>,
}

impl SubsetTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn get(&self, set: &VertexSet) -> &Polynomial {
        &self.polys[set.mask() as usize]
    }

    pub fn by_mask(&self, mask: u64) -> &Polynomial {
        &self.polys[mask as usize]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn family(&self, set: &VertexSet) -> FamilyTable {
        FamilyTable::assemble(self.n, set.mask(), &self.q, |s| self.by_mask(s).clone())
    }
}

pub fn subset_table(g: &Graph, q: &Rational) -> Result<SubsetTable> {
    let n = g.order();
    if n > DEFAULT_ORDER_LIMIT {
        return Err(Error::SizeLimit {
            what: "graph order",
            actual: n,
            limit: DEFAULT_ORDER_LIMIT,
        });
    }
    let polys = (0..1u64 << n)
        .map(|mask| {
            deleted_char_poly(g, q, &VertexSet::from_mask(mask)).expect("mask inside graph")
        })
        .collect();
    Ok(SubsetTable {
        n,
        q: q.clone(),
        polys,
    })
}
