//! Random search for distance-matrix pairs that survive a probe battery on a
//! set pair but not on the complementary set pair.
//!
//! Samples are drawn from `G(n, 1/2)` with `ChaCha8Rng::seed_from_u64(seed)`,
//! `n` uniform in the configured range, rejecting disconnected graphs.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactmath::{int, Polynomial, Rational, RationalMatrix};
use crate::graph::{
    automorphisms, canonical_form, coalesce, orbits_under, random::random_connected_graph,
    to_graph6, CoalescentPair, Graph, RootedGraph, VertexSet,
};
use crate::spectral::{distance_char_poly, distance_matrix};

use super::pairs::{with_workers, SetPair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub count: usize,
    pub min_order: usize,
    pub max_order: usize,
    pub workers: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 1000,
            min_order: 4,
            max_order: 7,
            workers: 1,
        }
    }
}

/// The rooted graphs every candidate pair is glued with.
pub fn probe_battery() -> Vec<(&'static str, RootedGraph)> {
    vec![
        ("K2", RootedGraph::star(1)),
        ("K1,2", RootedGraph::star(2)),
        ("K1,3", RootedGraph::star(3)),
        ("P3-end", RootedGraph::path_end(3)),
    ]
}

/// `det(xI - D)` rebuilt by Lagrange interpolation through determinants at
/// `x = 0..=n`, each taken by Gaussian elimination.
pub fn distance_char_poly_interpolated(g: &Graph) -> Result<Polynomial> {
    let d = distance_matrix(g)?;
    let n = g.order();
    let points: Vec<(Rational, Rational)> = (0..=n)
        .map(|x| {
            let xv = int(x as i64);
            let m = RationalMatrix::from_fn(n, n, |i, j| {
                let diag = if i == j { xv.clone() } else { int(0) };
                diag - d.get(i, j)
            });
            m.determinant().map(|det| (xv, det))
        })
        .collect::<Result<_>>()?;
    let mut total = Polynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Polynomial::constant(yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = (&basis * &Polynomial::linear_root(xj)).scale(&(int(1) / (xi - xj)));
            }
        }
        total = &total + &basis;
    }
    Ok(total)
}

struct ProbeCache {
    graph: Graph,
    battery: Vec<(&'static str, RootedGraph)>,
    polys: HashMap<(u64, usize), Polynomial>,
}

impl ProbeCache {
    fn new(graph: Graph) -> Self {
        Self {
            graph,
            battery: probe_battery(),
            polys: HashMap::new(),
        }
    }

    fn get(&mut self, set: &VertexSet, probe: usize) -> Result<Polynomial> {
        if let Some(p) = self.polys.get(&(set.mask(), probe)) {
            return Ok(p.clone());
        }
        let pair = CoalescentPair::new(self.graph.clone(), set.clone())?;
        let p = distance_char_poly(&coalesce(&pair, &self.battery[probe].1).graph)?;
        self.polys.insert((set.mask(), probe), p.clone());
        Ok(p)
    }
}

/// First battery probe whose coalescences differ, with both polynomials.
fn first_failure(
    c1: &mut ProbeCache,
    b1: &VertexSet,
    c2: &mut ProbeCache,
    b2: &VertexSet,
) -> Result<Option<(&'static str, [Polynomial; 2])>> {
    for probe in 0..c1.battery.len() {
        let (p1, p2) = (c1.get(b1, probe)?, c2.get(b2, probe)?);
        if p1 != p2 {
            return Ok(Some((c1.battery[probe].0, [p1, p2])));
        }
    }
    Ok(None)
}

/// Whether `(g1, b1)` and `(g2, b2)` pass the whole battery under the
/// distance matrix.
pub fn passes_distance_battery(
    g1: &Graph,
    b1: &VertexSet,
    g2: &Graph,
    b2: &VertexSet,
) -> Result<bool> {
    let (mut c1, mut c2) = (ProbeCache::new(g1.clone()), ProbeCache::new(g2.clone()));
    Ok(first_failure(&mut c1, b1, &mut c2, b2)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CospectralGroup {
    pub order: usize,
    pub poly: Polynomial,
    /// Canonical graph6 of each member.
    pub graphs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatteryPass {
    pub g1: String,
    pub g2: String,
    pub sets: SetPair,
    pub complement: SetPair,
    pub complement_passed_battery: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleCandidate {
    pub g1: String,
    pub g2: String,
    /// Passed the whole battery.
    pub sets: SetPair,
    /// Failed on `failing_probe`.
    pub complement: SetPair,
    pub failing_probe: String,
    pub polys: [Polynomial; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub count: usize,
    pub min_order: usize,
    pub max_order: usize,
    pub distinct_graphs: usize,
    /// graph6 of samples whose two char poly computations disagree.
    pub oracle_mismatches: Vec<String>,
    pub cospectral_groups: Vec<CospectralGroup>,
    /// Set pairs, up to symmetry, that passed the battery, with the outcome
    /// on their complements.
    pub passed_battery: Vec<BatteryPass>,
    pub counterexample_candidates: Vec<CounterexampleCandidate>,
}

impl FuzzReport {
    pub fn has_counterexample(&self) -> bool {
        !self.counterexample_candidates.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Sample {
    canonical: Graph,
    key: String,
    poly: Polynomial,
    oracle_ok: bool,
}

/// Battery results for every set pair of two graphs, up to symmetry, and
/// for the complements of those that pass.
pub fn probe_distance_pair(
    g1: &Graph,
    g2: &Graph,
) -> Result<(Vec<BatteryPass>, Vec<CounterexampleCandidate>)> {
    let n = g1.order();
    let (a1, a2) = (automorphisms(g1)?, automorphisms(g2)?);
    let (mut c1, mut c2) = (ProbeCache::new(g1.clone()), ProbeCache::new(g2.clone()));
    let (mut passes, mut candidates) = (Vec::new(), Vec::new());
    for k in 0..=n {
        let left = orbits_under(&a1, n, k);
        let right = orbits_under(&a2, n, k);
        let mut buckets: HashMap<Polynomial, Vec<&VertexSet>> = HashMap::new();
        for orbit in &right {
            buckets
                .entry(c2.get(&orbit[0], 0)?)
                .or_default()
                .push(&orbit[0]);
        }
        for orbit in &left {
            let b1 = &orbit[0];
            let Some(hits) = buckets.get(&c1.get(b1, 0)?) else {
                continue;
            };
            for &b2 in hits {
                if first_failure(&mut c1, b1, &mut c2, b2)?.is_some() {
                    continue;
                }
                let (d1, d2) = (b1.complement(n), b2.complement(n));
                let failure = first_failure(&mut c1, &d1, &mut c2, &d2)?;
                passes.push(BatteryPass {
                    g1: to_graph6(g1),
                    g2: to_graph6(g2),
                    sets: SetPair::new(b1, b2),
                    complement: SetPair::new(&d1, &d2),
                    complement_passed_battery: failure.is_none(),
                });
                if let Some((probe, polys)) = failure {
                    candidates.push(CounterexampleCandidate {
                        g1: to_graph6(g1),
                        g2: to_graph6(g2),
                        sets: SetPair::new(b1, b2),
                        complement: SetPair::new(&d1, &d2),
                        failing_probe: probe.to_string(),
                        polys,
                    });
                }
            }
        }
    }
    Ok((passes, candidates))
}

pub fn distance_fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let graphs: Vec<Graph> = (0..config.count)
        .map(|_| {
            let n = rng.gen_range(config.min_order..=config.max_order);
            random_connected_graph(&mut rng, n)
        })
        .collect();

    with_workers(config.workers, || {
        let samples: Vec<Sample> = graphs
            .par_iter()
            .map(|g| {
                let (canonical, _) = canonical_form(g)?;
                let poly = distance_char_poly(g)?;
                let oracle_ok = distance_char_poly_interpolated(g)? == poly;
                Ok(Sample {
                    key: to_graph6(&canonical),
                    canonical,
                    poly,
                    oracle_ok,
                })
            })
            .collect::<Result<_>>()?;

        let oracle_mismatches = graphs
            .iter()
            .zip(&samples)
            .filter(|(_, s)| !s.oracle_ok)
            .map(|(g, _)| to_graph6(g))
            .collect();

        let mut distinct: BTreeMap<&str, &Sample> = BTreeMap::new();
        for s in &samples {
            distinct.entry(&s.key).or_insert(s);
        }
        let mut grouped: BTreeMap<(usize, Vec<String>), Vec<&Sample>> = BTreeMap::new();
        for s in distinct.values() {
            grouped
                .entry((s.canonical.order(), s.poly.to_strings()))
                .or_default()
                .push(s);
        }
        let groups: Vec<&Vec<&Sample>> = grouped.values().filter(|m| m.len() > 1).collect();

        let pairs: Vec<(&Sample, &Sample)> = groups
            .iter()
            .flat_map(|m| {
                m.iter()
                    .enumerate()
                    .flat_map(move |(i, a)| m[i + 1..].iter().map(move |b| (*a, *b)))
            })
            .collect();
        let outcomes: Vec<(Vec<BatteryPass>, Vec<CounterexampleCandidate>)> = pairs
            .par_iter()
            .map(|(a, b)| probe_distance_pair(&a.canonical, &b.canonical))
            .collect::<Result<_>>()?;

        let (mut passed_battery, mut counterexample_candidates) = (Vec::new(), Vec::new());
        for (p, c) in outcomes {
            passed_battery.extend(p);
            counterexample_candidates.extend(c);
        }
        Ok(FuzzReport {
            seed: config.seed,
            count: config.count,
            min_order: config.min_order,
            max_order: config.max_order,
            distinct_graphs: distinct.len(),
            oracle_mismatches,
            cospectral_groups: groups
                .iter()
                .map(|m| CospectralGroup {
                    order: m[0].canonical.order(),
                    poly: m[0].poly.clone(),
                    graphs: m.iter().map(|s| s.key.clone()).collect(),
                })
                .collect(),
            passed_battery,
            counterexample_candidates,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_matches_p3() {
        let p = distance_char_poly_interpolated(&Graph::path(3)).unwrap();
        assert_eq!(p, Polynomial::from_ints(&[-4, -6, 0, 1]));
    }

    #[test]
    fn automorphic_sets_pass() {
        let c6 = Graph::cycle(6);
        let (b1, b2) = (VertexSet::new([0, 1]), VertexSet::new([3, 4]));
        assert!(passes_distance_battery(&c6, &b1, &c6, &b2).unwrap());
        assert!(passes_distance_battery(&c6, &b1.complement(6), &c6, &b2.complement(6)).unwrap());
        assert!(!passes_distance_battery(&c6, &b1, &c6, &VertexSet::new([0, 2])).unwrap());
    }

    #[test]
    fn small_run_is_reproducible() {
        let config = FuzzConfig {
            seed: 7,
            count: 40,
            ..FuzzConfig::default()
        };
        let a = distance_fuzz(&config).unwrap().to_json();
        let b = distance_fuzz(&FuzzConfig {
            workers: 3,
            ..config
        })
        .unwrap()
        .to_json();
        assert_eq!(a, b);
    }
}
