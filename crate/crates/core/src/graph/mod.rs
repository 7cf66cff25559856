//! Simple undirected graphs, coalescent pairs and the coalescing construction.

mod coalesce;
mod distance;
mod edgelist;
mod graph6;
pub mod random;
mod symmetry;

use std::fmt;

use crate::error::{Error, Result};

pub use coalesce::{coalesce, Coalescence};
pub use distance::distances;
pub use edgelist::{parse_edge_json, parse_edge_json_list, to_edge_json, EdgeList};
pub use graph6::{parse_graph6, to_graph6};
pub use symmetry::{
    automorphisms, automorphisms_with_limit, canonical_form, subset_orbits, DEFAULT_SYMMETRY_LIMIT,
};
pub(crate) use symmetry::{orbit_representative, orbits_under};

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::EdgeList(format!("loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::EdgeList(format!(
                "duplicate edge {{{}, {}}}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_edges(n, list))
    }

    fn from_sorted_edges(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Self { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|v| (0..v).map(move |u| (u, v)))
            .collect::<Vec<_>>();
        Self::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect::<Vec<_>>();
        Self::new(a + b, edges).expect("complete bipartite graph is simple")
    }

    /// Disjoint union; the vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union is simple")
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Precondition(
                "relabeling is not a permutation".into(),
            ));
        }
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Induced subgraph on `keep` (relabeled in the given order).
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|v| self.check_vertex(v))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// Bit mask of the set; ids must be below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Parses comma-separated ids such as `"0,2"`; empty text is the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "-" {
            return Ok(Self::empty());
        }
        t.split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Precondition(format!("invalid vertex id {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn complement(&self, n: usize) -> Self {
        Self((0..n).filter(|&v| !self.contains(v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        Self::new(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn image(&self, perm: &[usize]) -> Self {
        Self::new(self.iter().map(|v| perm[v]))
    }

    /// Every `k`-element subset, in lexicographic order.
    pub fn subsets_of_size(&self, k: usize) -> Vec<VertexSet> {
        let items = &self.0;
        let mut out = Vec::new();
        if k > items.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self(idx.iter().map(|&i| items[i]).collect()));
            let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
                return out;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Compact label: digits for the first graph of a pair, letters for the
    /// second, `∅` for the empty set.
    pub fn notation(&self, letters: bool) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        self.iter()
            .map(|v| {
                if letters && v < 26 {
                    char::from(b'a' + v as u8).to_string()
                } else if !letters && v < 10 {
                    char::from(b'0' + v as u8).to_string()
                } else {
                    format!("({v})")
                }
            })
            .collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// A graph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    graph: Graph,
    root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        graph.check_vertex(root)?;
        Ok(Self { graph, root })
    }

    /// Single vertex.
    pub fn k1() -> Self {
        Self {
            graph: Graph::empty(1),
            root: 0,
        }
    }

    /// `K_{1,leaves}` rooted at its center.
    pub fn star(leaves: usize) -> Self {
        Self {
            graph: Graph::star(leaves),
            root: 0,
        }
    }

    /// Path on `n` vertices rooted at an end.
    pub fn path_end(n: usize) -> Self {
        Self {
            graph: Graph::path(n),
            root: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }
}

/// A graph `H` together with a vertex subset `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoalescentPair {
    graph: Graph,
    set: VertexSet,
}

impl CoalescentPair {
    pub fn new(graph: Graph, set: VertexSet) -> Result<Self> {
        graph.check_set(&set)?;
        Ok(Self { graph, set })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    /// `(H, V(H) \ B)`.
    pub fn complement(&self) -> CoalescentPair {
        Self {
            set: self.set.complement(self.graph.order()),
            graph: self.graph.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::EdgeList(_))));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::EdgeList(_))
        ));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn subsets_enumerate_binomially() {
        let s = VertexSet::full(5);
        assert_eq!(s.subsets_of_size(2).len(), 10);
        assert_eq!(s.subsets_of_size(0), vec![VertexSet::empty()]);
        assert!(s.subsets_of_size(6).is_empty());
        let three = s.subsets_of_size(3);
        assert!(three.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn notation_matches_compact_form() {
        assert_eq!(VertexSet::new([1, 2]).notation(false), "12");
        assert_eq!(VertexSet::new([1, 3]).notation(true), "bd");
        assert_eq!(VertexSet::empty().notation(true), "∅");
    }

    #[test]
    fn set_parsing() {
        assert_eq!(VertexSet::parse("2, 0,2").unwrap(), VertexSet::new([0, 2]));
        assert_eq!(VertexSet::parse("").unwrap(), VertexSet::empty());
        assert!(VertexSet::parse("a").is_err());
    }

    #[test]
    fn pair_validates_membership() {
        assert!(CoalescentPair::new(Graph::path(3), VertexSet::new([3])).is_err());
        let pair = CoalescentPair::new(Graph::path(3), VertexSet::new([1])).unwrap();
        assert_eq!(pair.complement().set(), &VertexSet::new([0, 2]));
    }

    #[test]
    fn tree_detection() {
        assert!(Graph::star(3).is_tree());
        assert!(!Graph::complete(3)
            .disjoint_union(&Graph::empty(1))
            .is_tree());
        assert!(!Graph::empty(2).is_tree());
    }
}
