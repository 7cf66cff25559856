use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::complement::complement_family;
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Polynomial, Rational};
use crate::graph::{
    automorphisms, orbit_representative, orbits_under, to_graph6, Graph, VertexSet,
};
use crate::spectral::lq_char_poly;

use super::corpus::{Corpus, CorpusEntry, SkippedEntry, DEFAULT_ORDER_LIMIT};
use super::table::{subset_table, SubsetTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Size of the worker pool; `0` and `1` both mean a single worker.
    pub workers: usize,
    /// Rebuild every complement family from the matched family and compare
    /// it with the directly computed one.
    pub verify_complements: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            verify_complements: true,
        }
    }
}

pub(crate) fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool")
        .install(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetPair {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub notation: String,
}

impl SetPair {
    pub fn new(b1: &VertexSet, b2: &VertexSet) -> Self {
        Self {
            b1: b1.as_slice().to_vec(),
            b2: b2.as_slice().to_vec(),
            notation: format!("{}:{}", b1.notation(false), b2.notation(true)),
        }
    }

    pub fn sets(&self) -> (VertexSet, VertexSet) {
        (
            VertexSet::new(self.b1.iter().copied()),
            VertexSet::new(self.b2.iter().copied()),
        )
    }
}

/// One matched class: orbit representatives on each side, plus the class
/// reached by complementing both sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedClass {
    pub b1: Vec<usize>,
    pub b2: Vec<usize>,
    pub notation: String,
    /// Sizes of the automorphism orbits of `b1` and `b2`.
    pub orbit_sizes: [usize; 2],
    pub complement: SetPair,
    pub complement_present: bool,
}

impl MatchedClass {
    pub fn sets(&self) -> (VertexSet, VertexSet) {
        (
            VertexSet::new(self.b1.iter().copied()),
            VertexSet::new(self.b2.iter().copied()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    /// graph6 of each graph.
    pub g1: String,
    pub g2: String,
    pub g1_source: String,
    pub g2_source: String,
    pub q: String,
    pub trees: [bool; 2],
    pub classes: Vec<MatchedClass>,
    pub complement_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub q: String,
    pub corpus_size: usize,
    pub skipped: Vec<SkippedEntry>,
    pub pairs: Vec<PairReport>,
    /// For pairs made of one tree and one non-tree: how many listed classes
    /// (counting complements) have each set size.
    pub tree_nontree_set_sizes: BTreeMap<usize, usize>,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Prepared {
    table: SubsetTable,
    autos: Vec<Vec<usize>>,
}

impl Prepared {
    fn new(g: &Graph, q: &Rational) -> Result<Self> {
        Ok(Self {
            table: subset_table(g, q)?,
            autos: automorphisms(g)?,
        })
    }
}

type ClassKey = (usize, VertexSet, VertexSet);

/// Every pair `(B1, B2)` with equal families, without any deduplication,
/// ordered by set size and then lexicographically.
pub fn matched_set_pairs(
    h1: &Graph,
    h2: &Graph,
    q: &Rational,
) -> Result<Vec<(VertexSet, VertexSet)>> {
    if h1.order() != h2.order() {
        return Ok(Vec::new());
    }
    let (t1, t2) = (subset_table(h1, q)?, subset_table(h2, q)?);
    let full = VertexSet::full(h1.order());
    let mut out = Vec::new();
    for k in 0..=h1.order() {
        let right = full.subsets_of_size(k);
        let mut index: HashMap<Vec<Polynomial>, Vec<usize>> = HashMap::new();
        for (i, b2) in right.iter().enumerate() {
            index.entry(t2.family(b2).polys).or_default().push(i);
        }
        for b1 in full.subsets_of_size(k) {
            if let Some(hits) = index.get(&t1.family(&b1).polys) {
                out.extend(hits.iter().map(|&i| (b1.clone(), right[i].clone())));
            }
        }
    }
    Ok(out)
}

/// All set pairs represented by a class: images of its representatives
/// under the automorphisms of each graph.
pub fn class_members(
    h1: &Graph,
    h2: &Graph,
    class: &MatchedClass,
) -> Result<Vec<(VertexSet, VertexSet)>> {
    let (b1, b2) = class.sets();
    let left: BTreeSet<VertexSet> = automorphisms(h1)?.iter().map(|p| b1.image(p)).collect();
    let right: BTreeSet<VertexSet> = automorphisms(h2)?.iter().map(|p| b2.image(p)).collect();
    Ok(left
        .iter()
        .flat_map(|a| right.iter().map(move |b| (a.clone(), b.clone())))
        .collect())
}

fn matched_classes(p1: &Prepared, p2: &Prepared, n: usize) -> BTreeMap<ClassKey, [usize; 2]> {
    let mut matched = BTreeMap::new();
    for k in 0..=n {
        let left = orbits_under(&p1.autos, n, k);
        let right = orbits_under(&p2.autos, n, k);
        let mut index: HashMap<Vec<Polynomial>, Vec<usize>> = HashMap::new();
        for (i, orbit) in right.iter().enumerate() {
            index
                .entry(p2.table.family(&orbit[0]).polys)
                .or_default()
                .push(i);
        }
        for orbit in &left {
            if let Some(hits) = index.get(&p1.table.family(&orbit[0]).polys) {
                for &i in hits {
                    let key = (k, orbit[0].clone(), right[i][0].clone());
                    matched.insert(key, [orbit.len(), right[i].len()]);
                }
            }
        }
    }
    matched
}

fn complement_reconstructs(p: &Prepared, set: &VertexSet, n: usize) -> Result<bool> {
    let rebuilt = complement_family(&p.table.family(set))?;
    Ok(rebuilt == p.table.family(&set.complement(n)))
}

fn pair_report(
    e1: &CorpusEntry,
    e2: &CorpusEntry,
    p1: &Prepared,
    p2: &Prepared,
    q: &Rational,
    options: &SearchOptions,
) -> Result<PairReport> {
    let n = e1.graph.order();
    let matched = matched_classes(p1, p2, n);
    let mut classes = Vec::new();
    let mut verified = true;
    for (key, sizes) in &matched {
        let (k, b1, b2) = key;
        let c1 = orbit_representative(&p1.autos, &b1.complement(n));
        let c2 = orbit_representative(&p2.autos, &b2.complement(n));
        let comp_key = (n - k, c1, c2);
        let present = matched.contains_key(&comp_key);
        if present && comp_key < *key {
            continue;
        }
        verified &= present;
        if options.verify_complements {
            verified &= complement_reconstructs(p1, b1, n)? && complement_reconstructs(p2, b2, n)?;
        }
        let here = SetPair::new(b1, b2);
        classes.push(MatchedClass {
            b1: here.b1,
            b2: here.b2,
            notation: here.notation,
            orbit_sizes: *sizes,
            complement: SetPair::new(&comp_key.1, &comp_key.2),
            complement_present: present,
        });
    }
    Ok(PairReport {
        g1: to_graph6(&e1.graph),
        g2: to_graph6(&e2.graph),
        g1_source: e1.provenance(),
        g2_source: e2.provenance(),
        q: format_rational(q),
        trees: [e1.graph.is_tree(), e2.graph.is_tree()],
        classes,
        complement_verified: verified,
    })
}

/// Index pairs `i < j` of equal order and equal `L_q` characteristic
/// polynomial, in corpus order.
pub fn cospectral_candidates(corpus: &Corpus, q: &Rational, workers: usize) -> Vec<(usize, usize)> {
    let polys: Vec<Polynomial> = with_workers(workers, || {
        corpus
            .entries
            .par_iter()
            .map(|e| lq_char_poly(&e.graph, q))
            .collect()
    });
    let mut groups: HashMap<(usize, &Polynomial), Vec<usize>> = HashMap::new();
    for (i, p) in polys.iter().enumerate() {
        groups
            .entry((corpus.entries[i].graph.order(), p))
            .or_default()
            .push(i);
    }
    let mut pairs: Vec<(usize, usize)> = groups
        .values()
        .flat_map(|members| {
            members
                .iter()
                .enumerate()
                .flat_map(move |(a, &i)| members[a + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Every unordered pair of plain-cospectral corpus graphs with all of its
/// coalescing cospectral classes, one representative per automorphism class
/// and per complementary couple.
pub fn find_pairs(corpus: &Corpus, q: &Rational, options: &SearchOptions) -> Result<SearchReport> {
    for e in &corpus.entries {
        if e.graph.order() > DEFAULT_ORDER_LIMIT {
            return Err(Error::SizeLimit {
                what: "graph order",
                actual: e.graph.order(),
                limit: DEFAULT_ORDER_LIMIT,
            });
        }
    }
    let candidates = cospectral_candidates(corpus, q, options.workers);
    let involved: Vec<usize> = candidates
        .iter()
        .flat_map(|&(i, j)| [i, j])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let pairs = with_workers(options.workers, || -> Result<Vec<PairReport>> {
        let prepared: HashMap<usize, Prepared> = involved
            .par_iter()
            .map(|&i| Prepared::new(&corpus.entries[i].graph, q).map(|p| (i, p)))
            .collect::<Result<_>>()?;
        candidates
            .par_iter()
            .map(|&(i, j)| {
                pair_report(
                    &corpus.entries[i],
                    &corpus.entries[j],
                    &prepared[&i],
                    &prepared[&j],
                    q,
                    options,
                )
            })
            .collect()
    })?;

    let mut sizes = BTreeMap::new();
    for pair in pairs.iter().filter(|p| p.trees[0] != p.trees[1]) {
        for class in &pair.classes {
            *sizes.entry(class.b1.len()).or_insert(0) += 1;
            if class.complement_present && class.complement.b1 != class.b1 {
                *sizes.entry(class.complement.b1.len()).or_insert(0) += 1;
            }
        }
    }
    Ok(SearchReport {
        q: format_rational(q),
        corpus_size: corpus.len(),
        skipped: corpus.skipped.clone(),
        pairs,
        tree_nontree_set_sizes: sizes,
    })
}

/// Human-readable table of a search report.
pub fn render_text(report: &SearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "q = {}; {} graphs; {} cospectral pair{}",
        report.q,
        report.corpus_size,
        report.pairs.len(),
        if report.pairs.len() == 1 { "" } else { "s" }
    );
    for s in &report.skipped {
        let _ = writeln!(out, "skipped {}:{}: {}", s.source, s.line, s.reason);
    }
    for p in &report.pairs {
        let _ = writeln!(
            out,
            "\n{} ({}) vs {} ({}): {} classes, complements {}",
            p.g1,
            p.g1_source,
            p.g2,
            p.g2_source,
            p.classes.len(),
            if p.complement_verified {
                "verified"
            } else {
                "NOT verified"
            }
        );
        let width = p
            .classes
            .iter()
            .map(|c| c.notation.chars().count())
            .max()
            .unwrap_or(0);
        for c in &p.classes {
            let pad = width - c.notation.chars().count();
            let _ = writeln!(
                out,
                "  {}{}  orbits {}x{}  complement {}{}",
                c.notation,
                " ".repeat(pad),
                c.orbit_sizes[0],
                c.orbit_sizes[1],
                c.complement.notation,
                if c.complement_present {
                    ""
                } else {
                    " (missing)"
                }
            );
        }
    }
    if !report.tree_nontree_set_sizes.is_empty() {
        let _ = writeln!(out, "\ntree/non-tree set sizes:");
        for (size, count) in &report.tree_nontree_set_sizes {
            let _ = writeln!(out, "  |B| = {size}: {count}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn identical_p3() {
        let corpus = Corpus::from_graphs("mem", [Graph::path(3), Graph::path(3)]);
        let report = find_pairs(&corpus, &int(0), &SearchOptions::default()).unwrap();
        assert_eq!(report.pairs.len(), 1);
        let p = &report.pairs[0];
        let notations: Vec<&str> = p.classes.iter().map(|c| c.notation.as_str()).collect();
        assert_eq!(notations, ["∅:∅", "0:a", "1:b"]);
        assert_eq!(p.classes[1].orbit_sizes, [2, 2]);
        assert_eq!(p.classes[1].complement.notation, "01:ab");
        assert!(p.classes.iter().all(|c| c.complement_present));
        assert!(p.complement_verified);

        let members = class_members(&Graph::path(3), &Graph::path(3), &p.classes[1]).unwrap();
        assert!(members.contains(&(VertexSet::new([0]), VertexSet::new([2]))));
    }

    #[test]
    fn matched_pairs_are_complete() {
        let all = matched_set_pairs(&Graph::path(3), &Graph::path(3), &int(0)).unwrap();
        for pair in [
            (VertexSet::new([0]), VertexSet::new([0])),
            (VertexSet::new([0]), VertexSet::new([2])),
            (VertexSet::new([1]), VertexSet::new([1])),
            (VertexSet::new([1, 2]), VertexSet::new([0, 1])),
        ] {
            assert!(all.contains(&pair));
        }
        assert!(!all.contains(&(VertexSet::new([0]), VertexSet::new([1]))));
    }

    #[test]
    fn text_rendering() {
        let corpus = Corpus::from_graphs("mem", [Graph::path(3), Graph::path(3)]);
        let report = find_pairs(&corpus, &int(0), &SearchOptions::default()).unwrap();
        let text = render_text(&report);
        assert!(text.contains("1 cospectral pair\n"));
        assert!(text.contains("complement 01:ab"));
    }
}
