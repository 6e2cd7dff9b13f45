//! Browser bindings for the demo page in `www/`. Every export takes the
//! input box contents (ideal text such as `ab, bcg, cdg` or hypergraph JSON)
//! and returns a JSON string for the page to draw.

use std::collections::BTreeMap;

use hyperpd::{
  hypergraph::HypergraphDoc,
  lattice::{lattice_from_hypergraph, union_edge_elements},
  pd::{pd, PdOptions},
  reduction::{full_reduce, replay, ReduceOptions, ReductionTrace},
  Hypergraph,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse(input: &str) -> Result<(Hypergraph, BTreeMap<usize, [f64; 2]>), String> {
  let text = input.trim();
  if !text.starts_with('{') {
    let ideal = hyperpd::parse_ideal(text).map_err(|e| e.to_string())?;
    return Ok((Hypergraph::dual_hypergraph(&ideal).map_err(|e| e.to_string())?, BTreeMap::new()));
  }
  let doc: HypergraphDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
  let h = Hypergraph::from_doc(&doc).map_err(|e| e.to_string())?;
  let mut positions = BTreeMap::new();
  for (k, p) in doc.positions.iter().flatten() {
    let Ok(idx) = k.parse::<usize>() else { continue };
    let label = doc.vertex_labels.as_ref().and_then(|l| l.get(idx.wrapping_sub(1)).copied()).unwrap_or(idx);
    positions.insert(label, *p);
  }
  Ok((h, positions))
}

fn view(h: &Hypergraph) -> Value {
  let unions = union_edge_elements(h);
  json!({
    "vertices": h.vertices().map(|v| json!({ "id": v, "closed": h.is_closed(v) })).collect::<Vec<_>>(),
    "edges": h.edges().filter(|e| e.len() >= 2).map(|e| json!({
      "members": e.to_vec(),
      "labels": h.edge_labels(e).map(|l| l.iter().cloned().collect::<Vec<_>>()).unwrap_or_default(),
      "union": unions.contains(&e),
    })).collect::<Vec<_>>(),
  })
}

/// Dual hypergraph, with drawing positions when the input carries them.
pub fn hypergraph_view(input: &str) -> Result<String, String> {
  let (h, positions) = parse(input)?;
  let mut v = view(&h);
  v["positions"] = json!(positions);
  Ok(v.to_string())
}

/// Elements ranked by size with their cover relations.
pub fn hasse_view(input: &str) -> Result<String, String> {
  let (h, _) = parse(input)?;
  let l = lattice_from_hypergraph(&h).map_err(|e| e.to_string())?;
  let index = |x| l.index_of(x).expect("covers are elements");
  Ok(
    json!({
      "elements": l.elements().iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
      "covers": l.hasse_covers().into_iter().map(|(a, b)| [index(a), index(b)]).collect::<Vec<_>>(),
      "meet_irreducible": l.meet_irreducibles().into_iter().map(index).collect::<Vec<_>>(),
    })
    .to_string(),
  )
}

/// Every intermediate hypergraph of the reduction, starting with the input.
pub fn reduction_states(input: &str) -> Result<String, String> {
  let (h, positions) = parse(input)?;
  let (_, trace) = full_reduce(&h, ReduceOptions::default()).map_err(|e| e.to_string())?;
  let mut states = vec![json!({ "step": Value::Null, "graph": view(&h) })];
  for k in 1..=trace.len() {
    let prefix = ReductionTrace { steps: trace.steps[..k].to_vec() };
    let state = replay(&h, &prefix).map_err(|e| e.to_string())?;
    states.push(json!({ "step": trace.steps[k - 1], "graph": view(&state) }));
  }
  Ok(json!({ "positions": positions, "states": states }).to_string())
}

/// Projective dimension with its per-component breakdown.
pub fn pd_summary(input: &str) -> Result<String, String> {
  let (h, _) = parse(input)?;
  let r = pd(&h, PdOptions::default()).map_err(|e| e.to_string())?;
  let mut v = serde_json::to_value(&r).map_err(|e| e.to_string())?;
  v["breakdown"] = json!(r.breakdown());
  Ok(v.to_string())
}

/// Bundled inputs: `example`, `eleven` and `bush`.
pub fn sample(name: &str) -> Option<String> {
  match name {
    "example" => Some(hyperpd::fixtures::EXAMPLE44.trim().to_string()),
    "eleven" => Some(hyperpd::fixtures::FIGURE2.trim().to_string()),
    "bush" => Some(hyperpd::fixtures::FIGURE4.to_string()),
    _ => None,
  }
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
  r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = hypergraphView)]
pub fn hypergraph_view_js(input: &str) -> Result<String, JsError> {
  js(hypergraph_view(input))
}

#[wasm_bindgen(js_name = hasseView)]
pub fn hasse_view_js(input: &str) -> Result<String, JsError> {
  js(hasse_view(input))
}

#[wasm_bindgen(js_name = reductionStates)]
pub fn reduction_states_js(input: &str) -> Result<String, JsError> {
  js(reduction_states(input))
}

#[wasm_bindgen(js_name = pdSummary)]
pub fn pd_summary_js(input: &str) -> Result<String, JsError> {
  js(pd_summary(input))
}

#[wasm_bindgen(js_name = sample)]
pub fn sample_js(name: &str) -> Option<String> {
  sample(name)
}

#[cfg(test)]
mod tests {
  use super::*;

  const EXAMPLE: &str = "ab, bcg, cdg, de, efg";

  #[test]
  fn hypergraph_view_marks_union_edge() {
    let v: Value = serde_json::from_str(&hypergraph_view(EXAMPLE).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
    let unions: Vec<&Value> = v["edges"].as_array().unwrap().iter().filter(|e| e["union"] == true).collect();
    assert_eq!(unions.len(), 1);
    assert_eq!(unions[0]["labels"], json!(["g"]));
  }

  #[test]
  fn hasse_view_of_example() {
    let v: Value = serde_json::from_str(&hasse_view(EXAMPLE).unwrap()).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 21);
    assert!(v["covers"].as_array().unwrap().len() >= 20);
  }

  #[test]
  fn stepper_ends_at_reduced_graph() {
    let v: Value = serde_json::from_str(&reduction_states(EXAMPLE).unwrap()).unwrap();
    let states = v["states"].as_array().unwrap();
    assert!(states.len() >= 2);
    assert!(states[0]["step"].is_null());
    assert_eq!(states[1]["step"]["rule"], "union_edge_removed");
  }

  #[test]
  fn positions_follow_vertex_labels() {
    let v: Value = serde_json::from_str(&hypergraph_view(hyperpd::fixtures::FIGURE4).unwrap()).unwrap();
    assert_eq!(v["positions"].as_object().unwrap().len(), 43);
    let s: Value = serde_json::from_str(&pd_summary(hyperpd::fixtures::FIGURE4).unwrap()).unwrap();
    assert!(s["pd"].as_u64().is_some());
  }

  #[test]
  fn samples_parse() {
    for name in ["example", "eleven", "bush"] {
      assert!(hypergraph_view(&sample(name).unwrap()).is_ok(), "{name}");
    }
    assert!(sample("nope").is_none());
  }

  #[test]
  fn bad_input_is_an_error() {
    assert!(pd_summary("a^2").is_err());
    assert!(hasse_view("{").is_err());
  }
}
