use crate::error::{Error, Result};
use crate::exactmath::{int, Polynomial, Rational};
use crate::graph::{CoalescentPair, Graph, RootedGraph, VertexSet};
use crate::spectral::{deleted_char_poly, lq_char_poly};

use super::family::{submasks, DeletionCache};

/// The two factors a rooted graph contributes: `p_{G,r}` and
/// `p_G - x * p_{G,r}`.
pub fn rooted_factors(g: &RootedGraph, q: &Rational) -> (Polynomial, Polynomial) {
    let deleted =
        deleted_char_poly(g.graph(), q, &VertexSet::new([g.root()])).expect("root is a vertex");
    let full = lq_char_poly(g.graph(), q);
    let glued = &full - &(&Polynomial::x() * &deleted);
    (deleted, glued)
}

/// `p_{G,T}` of the coalescence of `pair` with `g`, expanded over subsets of
/// the pair's set without building the coalesced graph.
pub fn coalesced_char_poly_formula(
    pair: &CoalescentPair,
    g: &RootedGraph,
    q: &Rational,
    t: &VertexSet,
) -> Result<Polynomial> {
    let h = pair.graph();
    h.check_set(t)?;
    if !t.is_disjoint(pair.set()) {
        return Err(Error::Precondition(format!(
            "T = {t} meets B = {}",
            pair.set()
        )));
    }
    let mut cache = DeletionCache::new(h.clone(), q.clone())?;
    let b = pair.set().len();
    let t_mask = t.mask();
    let mut sums = vec![Polynomial::zero(); b + 1];
    for s in submasks(pair.set().mask()) {
        let k = s.count_ones() as usize;
        sums[k] = &sums[k] + cache.get(s | t_mask);
    }
    let (root_deleted, glued) = rooted_factors(g, q);
    Ok(sums
        .iter()
        .enumerate()
        .map(|(k, f)| &(&root_deleted.pow(b - k) * &glued.pow(k)) * f)
        .sum())
}

/// Gluing at a single vertex:
/// `p = p_{G,r} * p_H + (p_G - x * p_{G,r}) * p_{H,v}`.
pub fn schwenk_single(h: &Graph, v: usize, g: &RootedGraph, q: &Rational) -> Result<Polynomial> {
    h.check_vertex(v)?;
    let (root_deleted, glued) = rooted_factors(g, q);
    let p_h = lq_char_poly(h, q);
    let p_hv = deleted_char_poly(h, q, &VertexSet::new([v]))?;
    Ok(&(&root_deleted * &p_h) + &(&glued * &p_hv))
}

/// Closed forms for `K_{1,ell}` rooted at its center:
/// `((x - q)^ell, ell * (x - q)^(ell - 1) * (q^2 - q x - 1))`.
pub fn star_factors(ell: usize, q: &Rational) -> Result<(Polynomial, Polynomial)> {
    if ell == 0 {
        return Err(Error::Precondition("stars need at least one leaf".into()));
    }
    let shifted = Polynomial::linear_root(q);
    let quadratic = Polynomial::from_coeffs(vec![q * q - int(1), -q.clone()]);
    let second = (&shifted.pow(ell - 1) * &quadratic).scale(&int(ell as i64));
    Ok((shifted.pow(ell), second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;
    use crate::graph::coalesce;

    fn pair(g: Graph, set: &[usize]) -> CoalescentPair {
        CoalescentPair::new(g, VertexSet::new(set.iter().copied())).unwrap()
    }

    #[test]
    fn pendant_edge() {
        let z = int(0);
        let p = coalesced_char_poly_formula(
            &pair(Graph::complete(2), &[0]),
            &RootedGraph::star(1),
            &z,
            &VertexSet::empty(),
        )
        .unwrap();
        assert_eq!(p, Polynomial::from_ints(&[0, -2, 0, 1]));
        assert_eq!(p, lq_char_poly(&Graph::path(3), &z));
    }

    #[test]
    fn both_ends_gives_p4() {
        let p = coalesced_char_poly_formula(
            &pair(Graph::complete(2), &[0, 1]),
            &RootedGraph::star(1),
            &int(0),
            &VertexSet::empty(),
        )
        .unwrap();
        assert_eq!(p, Polynomial::from_ints(&[1, 0, -3, 0, 1]));
        assert_eq!(p, lq_char_poly(&Graph::path(4), &int(0)));
    }

    #[test]
    fn k1_degenerates_to_deleted_poly() {
        let h = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let p = pair(h.clone(), &[1, 3]);
        let t = VertexSet::new([0]);
        let q = ratio(1, 2);
        assert_eq!(
            coalesced_char_poly_formula(&p, &RootedGraph::k1(), &q, &t).unwrap(),
            deleted_char_poly(&h, &q, &t).unwrap()
        );
        let (root_deleted, glued) = rooted_factors(&RootedGraph::k1(), &q);
        assert_eq!(root_deleted, Polynomial::one());
        assert!(glued.is_zero());
    }

    #[test]
    fn rejects_overlapping_t() {
        let r = coalesced_char_poly_formula(
            &pair(Graph::path(3), &[0, 1]),
            &RootedGraph::k1(),
            &int(0),
            &VertexSet::new([1]),
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn single_vertex_cases() {
        let z = int(0);
        assert_eq!(
            schwenk_single(&Graph::complete(2), 0, &RootedGraph::star(1), &z).unwrap(),
            Polynomial::from_ints(&[0, -2, 0, 1])
        );
        assert_eq!(
            schwenk_single(&Graph::empty(1), 0, &RootedGraph::k1(), &z).unwrap(),
            Polynomial::x()
        );
        let star2 = RootedGraph::star(2);
        let direct = coalesce(&pair(Graph::complete(2), &[0]), &star2).graph;
        assert_eq!(direct.order(), 4);
        for q in [z, int(1), int(-1), ratio(1, 2)] {
            assert_eq!(
                schwenk_single(&Graph::complete(2), 0, &star2, &q).unwrap(),
                lq_char_poly(&direct, &q)
            );
        }
        assert!(schwenk_single(&Graph::complete(2), 2, &star2, &int(0)).is_err());
    }

    #[test]
    fn star_closed_forms() {
        let q = ratio(5, 3);
        let (a, b) = star_factors(1, &q).unwrap();
        assert_eq!(a, Polynomial::linear_root(&q));
        assert_eq!(
            b,
            Polynomial::from_coeffs(vec![&q * &q - int(1), -q.clone()])
        );
        let (a, b) = star_factors(2, &int(0)).unwrap();
        assert_eq!(a, Polynomial::from_ints(&[0, 0, 1]));
        assert_eq!(b, Polynomial::from_ints(&[0, -2]));
        assert_eq!(
            star_factors(3, &int(1)).unwrap(),
            rooted_factors(&RootedGraph::star(3), &int(1))
        );
        assert!(star_factors(0, &int(0)).is_err());
    }
}
