//! Brute-force symmetry utilities for small graphs.

use std::collections::BTreeSet;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};

pub const DEFAULT_SYMMETRY_LIMIT: usize = 10;

fn guard(g: &Graph, limit: usize) -> Result<()> {
    if g.order() > limit {
        return Err(Error::SizeLimit {
            what: "graph order",
            actual: g.order(),
            limit,
        });
    }
    Ok(())
}

pub fn automorphisms(g: &Graph) -> Result<Vec<Vec<usize>>> {
    automorphisms_with_limit(g, DEFAULT_SYMMETRY_LIMIT)
}

/// All adjacency-preserving permutations, in lexicographic order (so the
/// identity comes first). `perm[v]` is the image of `v`.
pub fn automorphisms_with_limit(g: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    guard(g, limit)?;
    let n = g.order();
    let degrees = g.degrees();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_automorphism(g, &degrees, 0, &mut perm, &mut used, &mut out);
    Ok(out)
}

fn extend_automorphism(
    g: &Graph,
    degrees: &[usize],
    v: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = g.order();
    if v == n {
        out.push(perm.clone());
        return;
    }
    for image in 0..n {
        if used[image] || degrees[image] != degrees[v] {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(perm[u], image)) {
            continue;
        }
        perm[v] = image;
        used[image] = true;
        extend_automorphism(g, degrees, v + 1, perm, used, out);
        used[image] = false;
    }
    perm[v] = usize::MAX;
}

/// Orbits of the `k`-subsets under the automorphism group. Each class is
/// sorted, so its first member is the lexicographically least
/// representative; classes are ordered by representative.
pub fn subset_orbits(g: &Graph, k: usize) -> Result<Vec<Vec<VertexSet>>> {
    let autos = automorphisms(g)?;
    Ok(orbits_under(&autos, g.order(), k))
}

pub(crate) fn orbits_under(autos: &[Vec<usize>], n: usize, k: usize) -> Vec<Vec<VertexSet>> {
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for subset in VertexSet::full(n).subsets_of_size(k) {
        if seen.contains(&subset) {
            continue;
        }
        let orbit: BTreeSet<VertexSet> = autos.iter().map(|p| subset.image(p)).collect();
        seen.extend(orbit.iter().cloned());
        classes.push(orbit.into_iter().collect());
    }
    classes
}

/// Lexicographically least representative of the orbit of `set`.
pub(crate) fn orbit_representative(autos: &[Vec<usize>], set: &VertexSet) -> VertexSet {
    autos
        .iter()
        .map(|p| set.image(p))
        .min()
        .unwrap_or_else(|| set.clone())
}

/// Isomorphism-invariant relabeling of `g`.
///
/// Vertices are first split by iterated neighbourhood-color refinement; the
/// result is the relabeling, among those respecting the refined color order,
/// whose graph6 bit string is least. Returns the canonical graph and the
/// permutation taking `g` onto it.
pub fn canonical_form(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    guard(g, 12)?;
    let n = g.order();
    let colors = refine_colors(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| colors[v]);
    let class_of_position: Vec<usize> = order.iter().map(|&v| colors[v]).collect();

    let mut search = CanonSearch {
        g,
        colors: &colors,
        class_of_position,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::new(),
        best_bits: None,
        best: Vec::new(),
    };
    search.run();
    let placed = search.best;
    let mut perm = vec![0; n];
    for (pos, &v) in placed.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((g.relabel(&perm)?, perm))
}

fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = g.degrees();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = signatures.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| ranked.binary_search(&s).expect("signature present"))
            .collect();
        let before = colors.iter().collect::<BTreeSet<_>>().len();
        if ranked.len() == before {
            return next;
        }
        colors = next;
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    class_of_position: Vec<usize>,
    placed: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best_bits: Option<Vec<bool>>,
    best: Vec<usize>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let n = self.g.order();
        let p = self.placed.len();
        if p == n {
            if self.best_bits.as_ref().is_none_or(|b| self.bits < *b) {
                self.best_bits = Some(self.bits.clone());
                self.best = self.placed.clone();
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.colors[v] != self.class_of_position[p] {
                continue;
            }
            // graph6 bit order is column-major, so column p extends the prefix
            let mark = self.bits.len();
            for &u in &self.placed {
                self.bits.push(self.g.has_edge(u, v));
            }
            let worse = self
                .best_bits
                .as_ref()
                .is_some_and(|b| self.bits[..] > b[..self.bits.len()]);
            if !worse {
                self.used[v] = true;
                self.placed.push(v);
                self.run();
                self.placed.pop();
                self.used[v] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::to_graph6;

    fn is_automorphism(g: &Graph, p: &[usize]) -> bool {
        g.relabel(p).unwrap() == *g
    }

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphisms(&Graph::complete(3)).unwrap().len(), 6);
        assert_eq!(
            automorphisms(&Graph::path(3)).unwrap(),
            vec![vec![0, 1, 2], vec![2, 1, 0]]
        );
        assert_eq!(automorphisms(&Graph::star(3)).unwrap().len(), 6);
    }

    #[test]
    fn matches_unpruned_filter() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (2, 5)]).unwrap();
        let mut brute: Vec<Vec<usize>> = all_permutations(6)
            .into_iter()
            .filter(|p| is_automorphism(&g, p))
            .collect();
        brute.sort();
        let autos = automorphisms(&g).unwrap();
        assert_eq!(autos, brute);
        assert_eq!(autos[0], (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn closed_under_composition() {
        let g = Graph::cycle(6);
        let autos = automorphisms(&g).unwrap();
        assert_eq!(autos.len(), 12);
        for a in &autos {
            for b in &autos {
                let c: Vec<usize> = (0..6).map(|v| a[b[v]]).collect();
                assert!(autos.contains(&c));
            }
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            automorphisms(&Graph::path(11)),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(
            automorphisms_with_limit(&Graph::path(11), 11)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn orbit_examples() {
        let p3 = subset_orbits(&Graph::path(3), 1).unwrap();
        assert_eq!(
            p3,
            vec![
                vec![VertexSet::new([0]), VertexSet::new([2])],
                vec![VertexSet::new([1])]
            ]
        );
        assert_eq!(subset_orbits(&Graph::complete(3), 2).unwrap().len(), 1);
        let star = subset_orbits(&Graph::star(3), 2).unwrap();
        assert_eq!(star.len(), 2);
        assert_eq!(star[0][0], VertexSet::new([0, 1]));
        assert_eq!(star[1][0], VertexSet::new([1, 2]));
    }

    #[test]
    fn orbits_partition_subsets() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        for k in 0..=5 {
            let classes = subset_orbits(&g, k).unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total, VertexSet::full(5).subsets_of_size(k).len());
        }
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let corpus =
            std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/graphs6.g6"))
                .unwrap();
        let perms = [
            vec![5, 3, 1, 0, 2, 4],
            vec![1, 0, 3, 2, 5, 4],
            vec![2, 4, 0, 5, 1, 3],
        ];
        let mut seen = BTreeSet::new();
        for line in corpus.lines() {
            let g = crate::graph::parse_graph6(line).unwrap();
            let (canon, perm) = canonical_form(&g).unwrap();
            assert_eq!(g.relabel(&perm).unwrap(), canon);
            for p in &perms {
                let (other, _) = canonical_form(&g.relabel(p).unwrap()).unwrap();
                assert_eq!(other, canon);
            }
            // the corpus is isomorph-free, so canonical forms are distinct
            assert!(seen.insert(to_graph6(&canon)));
        }
    }
}
