//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export takes and returns plain strings; results are JSON documents
//! and failures come back as JavaScript exceptions carrying the message.
//! The `*_json` functions hold the logic and are callable from native code.

use serde_json::json;
use wasm_bindgen::prelude::*;

use cospectral_core::coalescing::{coalesced_char_poly_formula, coalescing_cospectral, family};
use cospectral_core::complement::complement_family;
use cospectral_core::exactmath::{format_rational, parse_rational};
use cospectral_core::graph::{coalesce, parse_edge_json, parse_graph6, to_graph6};
use cospectral_core::spectral::{lq_char_poly, matrix_char_poly, MatrixKind};
use cospectral_core::{CoalescentPair, Graph, Rational, RootedGraph, VertexSet};

type Outcome = Result<String, String>;

fn graph(text: &str) -> Result<Graph, String> {
    let t = text.trim();
    let parsed = if t.starts_with('{') {
        parse_edge_json(t)
    } else {
        parse_graph6(t)
    };
    parsed.map_err(|e| e.to_string())
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text.trim()).map_err(|e| e.to_string())
}

fn set(text: &str, g: &Graph) -> Result<VertexSet, String> {
    let s = VertexSet::parse(text).map_err(|e| e.to_string())?;
    if let Some(v) = s.iter().find(|&v| v >= g.order()) {
        return Err(format!(
            "vertex {v} out of range for a graph on {} vertices",
            g.order()
        ));
    }
    Ok(s)
}

fn edges(g: &Graph) -> serde_json::Value {
    json!({"n": g.order(), "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>()})
}

/// `matrix` is `lq`, `distance` or `normalized`; `q` is read only for `lq`.
pub fn charpoly_json(graph_text: &str, matrix: &str, q: &str) -> Outcome {
    let g = graph(graph_text)?;
    let kind = match matrix {
        "lq" => MatrixKind::Lq(rational(q)?),
        "distance" => MatrixKind::Distance,
        "normalized" => MatrixKind::NormalizedAdjacency,
        other => return Err(format!("unknown matrix {other:?}")),
    };
    let p = matrix_char_poly(&g, &kind).map_err(|e| e.to_string())?;
    Ok(json!({"graph": edges(&g), "poly": p.to_string(), "coefficients": p}).to_string())
}

/// Families of both pairs, the verdict, and both complement families.
pub fn check_pair_json(g1: &str, set1: &str, g2: &str, set2: &str, q: &str) -> Outcome {
    let q = rational(q)?;
    let (h1, h2) = (graph(g1)?, graph(g2)?);
    let (b1, b2) = (set(set1, &h1)?, set(set2, &h2)?);
    let err = |e: cospectral_core::Error| e.to_string();
    let f1 = family(&h1, &b1, &q).map_err(err)?;
    let f2 = family(&h2, &b2, &q).map_err(err)?;
    let c1 = complement_family(&f1).map_err(err)?;
    let c2 = complement_family(&f2).map_err(err)?;
    let show = |t: &cospectral_core::coalescing::FamilyTable| {
        t.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>()
    };
    Ok(json!({
        "q": format_rational(&q),
        "coalescing_cospectral": coalescing_cospectral(&f1, &f2).map_err(err)?,
        "families": [show(&f1), show(&f2)],
        "complement_sets": [b1.complement(h1.order()).as_slice(), b2.complement(h2.order()).as_slice()],
        "complement_families": [show(&c1), show(&c2)],
    })
    .to_string())
}

/// The coalesced graph, its char poly, and the same poly from the families.
pub fn coalesce_json(
    graph_text: &str,
    set_text: &str,
    rooted: &str,
    root: usize,
    q: &str,
) -> Outcome {
    let q = rational(q)?;
    let h = graph(graph_text)?;
    let b = set(set_text, &h)?;
    let err = |e: cospectral_core::Error| e.to_string();
    let g = RootedGraph::new(graph(rooted)?, root).map_err(err)?;
    let pair = CoalescentPair::new(h, b).map_err(err)?;
    let glued = coalesce(&pair, &g);
    let direct = lq_char_poly(&glued.graph, &q);
    let formula = coalesced_char_poly_formula(&pair, &g, &q, &VertexSet::empty()).map_err(err)?;
    Ok(json!({
        "graph6": to_graph6(&glued.graph),
        "graph": edges(&glued.graph),
        "copies": glued.copies,
        "poly": direct.to_string(),
        "formula_agrees": direct == formula,
    })
    .to_string())
}

fn js(outcome: Outcome) -> Result<String, JsValue> {
    outcome.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn charpoly(graph_text: &str, matrix: &str, q: &str) -> Result<String, JsValue> {
    js(charpoly_json(graph_text, matrix, q))
}

#[wasm_bindgen(js_name = checkPair)]
pub fn check_pair(g1: &str, set1: &str, g2: &str, set2: &str, q: &str) -> Result<String, JsValue> {
    js(check_pair_json(g1, set1, g2, set2, q))
}

#[wasm_bindgen(js_name = coalescePreview)]
pub fn coalesce_preview(
    graph_text: &str,
    set_text: &str,
    rooted: &str,
    root: usize,
    q: &str,
) -> Result<String, JsValue> {
    js(coalesce_json(graph_text, set_text, rooted, root, q))
}
