use super::{CoalescentPair, Graph, RootedGraph};

/// Result of gluing a rooted graph onto every vertex of a coalescent pair's set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalescence {
    pub graph: Graph,
    /// `copies[c][u]` is the id of vertex `u` of the rooted graph in copy `c`;
    /// copies follow the sorted set, and the root maps onto the set vertex.
    pub copies: Vec<Vec<usize>>,
}

/// Glues one copy of `g` onto each vertex of the pair's set, identifying the
/// root with that vertex.
///
/// Vertices of `H` keep their ids. Each copy's non-root vertices are appended
/// in ascending order, copy after copy in the order of the sorted set.
pub fn coalesce(pair: &CoalescentPair, g: &RootedGraph) -> Coalescence {
    let h = pair.graph();
    let gg = g.graph();
    let mut next = h.order();
    let mut edges: Vec<(usize, usize)> = h.edges().to_vec();
    let mut copies = Vec::with_capacity(pair.set().len());
    for b in pair.set().iter() {
        let map: Vec<usize> = (0..gg.order())
            .map(|u| {
                if u == g.root() {
                    b
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        edges.extend(gg.edges().iter().map(|&(u, v)| (map[u], map[v])));
        copies.push(map);
    }
    let graph = Graph::new(next, edges).expect("coalescing preserves simplicity");
    Coalescence { graph, copies }
}
