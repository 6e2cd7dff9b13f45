//! Projective dimension of `R/I` for a dual hypergraph: reduce, split into
//! connected components, and use a closed formula where one is known, the
//! Betti oracle otherwise. Components add up.

use serde::Serialize;

use crate::{
  bits::Bits,
  error::{Error, Result},
  hypergraph::{Hypergraph, ShapeKind, Vertex},
  ideal::MonomialIdeal,
  lattice::union_edge_elements,
  oracle::hypergraph_oracle_pd,
  reduction::{full_reduce, ReduceOptions, ReductionTrace},
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
  FormulaOpenString,
  FormulaTwoStar,
  FormulaClosedIsolated,
  Additivity,
  Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentPd {
  /// Vertex labels of the component (all closed isolated vertices are grouped).
  pub vertices: Vec<Vertex>,
  pub pd: usize,
  pub method: Method,
  /// Oracle value when verification ran.
  #[serde(skip_serializing_if = "Option::is_none")]
  pub oracle: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PdResult {
  pub pd: usize,
  pub method: Method,
  pub per_component: Vec<ComponentPd>,
  #[serde(skip)]
  pub trace: ReductionTrace,
  #[serde(skip)]
  pub reduced: Hypergraph,
  /// Oracle pd of the unreduced input, when verification ran and it fit.
  #[serde(skip_serializing_if = "Option::is_none")]
  pub input_oracle: Option<usize>,
}

impl PdResult {
  pub fn breakdown(&self) -> Vec<usize> {
    self.per_component.iter().map(|c| c.pd).collect()
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdOptions {
  pub reduce: ReduceOptions,
  pub verify: bool,
  pub field_char: u32,
}

impl Default for PdOptions {
  fn default() -> Self {
    PdOptions { reduce: ReduceOptions::default(), verify: false, field_char: 2 }
  }
}

pub fn pd_open_string(mu: usize) -> Result<usize> {
  if mu == 0 {
    return Err(Error::Precondition("a string needs at least one vertex".into()));
  }
  Ok(mu - mu / 3)
}

pub fn pd_closed_isolated(count: usize) -> usize {
  count
}

/// `|V| - 1` for a separated hypergraph whose 1-skeleton is a 2-star.
pub fn pd_two_star(h: &Hypergraph) -> Result<usize> {
  if !is_two_star(h) {
    return Err(Error::Precondition("the 1-skeleton is not a 2-star".into()));
  }
  Ok(h.num_vertices() - 1)
}

fn is_closed_isolated(h: &Hypergraph) -> bool {
  h.num_vertices() == 1 && h.num_edges() == 1
}

/// A string whose vertices other than its two ends are open.
pub fn is_open_string(h: &Hypergraph) -> bool {
  if !h.is_connected() || h.is_empty() {
    return false;
  }
  let Ok(report) = h.classify_shape() else {
    return false;
  };
  report.kind == ShapeKind::String && h.vertices().all(|v| h.pair_degree(v) < 2 || h.is_open(v))
}

/// A 2-star with every branch end closed and an open joint, carrying at most
/// one edge of cardinality >= 3, which must not be a union of smaller edges.
pub fn is_two_star(h: &Hypergraph) -> bool {
  let Ok(report) = h.skeleton(1).classify_shape() else {
    return false;
  };
  report.kind == ShapeKind::TwoStar
    && h.is_connected()
    && h.is_separated()
    && report.joints.iter().all(|&j| h.is_open(j))
    && h.vertices().all(|v| h.pair_degree(v) != 1 || h.is_closed(v))
    && h.higher_edges().count() <= 1
    && union_edge_elements(h).iter().all(|e| e.len() < 3)
}

fn component_pd(c: &Hypergraph, ch: u32) -> Result<(usize, Method)> {
  if is_open_string(c) {
    Ok((pd_open_string(c.num_vertices())?, Method::FormulaOpenString))
  } else if is_two_star(c) {
    Ok((pd_two_star(c)?, Method::FormulaTwoStar))
  } else {
    Ok((hypergraph_oracle_pd(c, ch)?, Method::Oracle))
  }
}

pub fn pd(h: &Hypergraph, opts: PdOptions) -> Result<PdResult> {
  let (reduced, trace) = full_reduce(h, opts.reduce)?;
  let mut isolated = Vec::new();
  let mut others = Vec::new();
  for c in reduced.components() {
    if is_closed_isolated(&c) {
      isolated.push(c.vertex_set().min().unwrap());
      continue;
    }
    let (value, method) = component_pd(&c, opts.field_char)?;
    let oracle = if opts.verify { Some(hypergraph_oracle_pd(&c, opts.field_char)?) } else { None };
    if let Some(o) = oracle {
      if o != value {
        return Err(Error::VerifyMismatch { component: c.vertex_set(), formula: value, oracle: o });
      }
    }
    others.push(ComponentPd { vertices: c.vertices().collect(), pd: value, method, oracle });
  }
  others.sort_by_key(|c| (c.pd, c.vertices[0]));
  let mut per_component = Vec::new();
  if !isolated.is_empty() {
    let oracle = if opts.verify {
      let single = Hypergraph::new([1], [Bits::singleton(1)])?;
      Some(isolated.len() * hypergraph_oracle_pd(&single, opts.field_char)?)
    } else {
      None
    };
    per_component.push(ComponentPd {
      pd: pd_closed_isolated(isolated.len()),
      vertices: isolated,
      method: Method::FormulaClosedIsolated,
      oracle,
    });
  }
  per_component.extend(others);
  let total = per_component.iter().map(|c| c.pd).sum();
  let method = match per_component.as_slice() {
    [one] => one.method,
    _ => Method::Additivity,
  };
  let input_oracle = if opts.verify {
    match hypergraph_oracle_pd(h, opts.field_char) {
      Ok(o) if o != total => {
        return Err(Error::VerifyMismatch { component: h.vertex_set(), formula: total, oracle: o });
      }
      Ok(o) => Some(o),
      Err(Error::OracleLimit { .. }) => None,
      Err(e) => return Err(e),
    }
  } else {
    None
  };
  Ok(PdResult { pd: total, method, per_component, trace, reduced, input_oracle })
}

pub fn pd_of_ideal(i: &MonomialIdeal, opts: PdOptions) -> Result<PdResult> {
  pd(&Hypergraph::dual_hypergraph(i)?, opts)
}

/// Oracle check that `small`, an edge sub-family of `big` on the same
/// vertices, has no larger projective dimension.
pub fn pd_monotonicity_check(small: &Hypergraph, big: &Hypergraph, ch: u32) -> Result<bool> {
  if small.vertex_set() != big.vertex_set() || !small.edge_family().is_subset(big.edge_family()) {
    return Err(Error::Precondition(
      "the first edge family must sit inside the second on the same vertices".into(),
    ));
  }
  Ok(hypergraph_oracle_pd(small, ch)? <= hypergraph_oracle_pd(big, ch)?)
}
