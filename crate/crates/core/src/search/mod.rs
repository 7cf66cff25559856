//! Corpus search for coalescing cospectral pairs, set-union and two-step
//! probes, and the distance-matrix fuzzer.

mod corpus;
mod fuzz;
mod pairs;
mod probes;
mod table;

pub use corpus::{Corpus, CorpusEntry, SkippedEntry, DEFAULT_ORDER_LIMIT};
pub use fuzz::{
    distance_char_poly_interpolated, distance_fuzz, passes_distance_battery, probe_battery,
    probe_distance_pair, BatteryPass, CospectralGroup, CounterexampleCandidate, FuzzConfig,
    FuzzReport,
};
pub use pairs::{
    class_members, cospectral_candidates, find_pairs, matched_set_pairs, render_text, MatchedClass,
    PairReport, SearchOptions, SearchReport, SetPair,
};
pub use probes::{
    find_twostep_instances, find_union_non_closure, induced_check, normalized_demo, union_probe,
    NormalizedDemo, TwoStepInstance, UnionInstance, UnionVerdict,
};
pub use table::{subset_table, SubsetTable};
