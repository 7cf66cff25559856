//! Seeded random graphs.
//!
//! Every generator draws from a caller-supplied RNG; the crate uses
//! `ChaCha8Rng::seed_from_u64(seed)` so output is identical on every platform.

use rand::Rng;

use super::{Graph, RootedGraph};

/// `G(n, 1/2)`: each of the `n(n-1)/2` pairs is an edge with probability 1/2,
/// drawn in graph6 bit order.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// `G(n, 1/2)` conditioned on connectivity by rejection.
pub fn random_connected_graph<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    loop {
        let g = random_graph(rng, n);
        if g.is_connected() {
            return g;
        }
    }
}

/// Order uniform in `1..=max_order`, edges from `G(n, 1/2)`, uniform root.
pub fn random_rooted_graph<R: Rng + ?Sized>(rng: &mut R, max_order: usize) -> RootedGraph {
    let n = rng.gen_range(1..=max_order.max(1));
    let g = random_graph(rng, n);
    let root = rng.gen_range(0..n);
    RootedGraph::new(g, root).expect("root drawn inside the graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a: Vec<Graph> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..20)
                .map(|_| random_connected_graph(&mut rng, 6))
                .collect()
        };
        let b: Vec<Graph> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..20)
                .map(|_| random_connected_graph(&mut rng, 6))
                .collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(Graph::is_connected));
    }

    #[test]
    fn rooted_orders_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let g = random_rooted_graph(&mut rng, 5);
            assert!((1..=5).contains(&g.graph().order()));
            assert!(g.root() < g.graph().order());
        }
    }
}
