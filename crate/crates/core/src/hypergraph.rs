//! Dual hypergraphs of square-free monomial ideals.
//!
//! Vertices are generators, labelled `1..=mu` in generator order; every
//! variable contributes the edge of generators it divides. Vertex labels
//! survive surgery unchanged, so a hypergraph's vertex set need not be
//! contiguous. Serialization renumbers to `1..=mu'` and records the
//! original labels.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{
  bits::{Bits, CAPACITY},
  error::{Error, Result},
  ideal::{MonomialIdeal, Ring},
};

pub type Vertex = usize;

/// Largest usable vertex label.
pub const MAX_VERTEX: Vertex = CAPACITY - 1;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypergraph {
  vertices: Bits,
  edges: BTreeSet<Bits>,
  labels: BTreeMap<Bits, BTreeSet<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
  pub vertex: Vertex,
  pub open: bool,
  pub degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
  String,
  Cycle,
  TwoStar,
  Bush,
  Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "vertex")]
pub enum BranchEnd {
  /// The branch stops at a vertex of 1-skeleton degree one.
  Leaf,
  /// The branch runs into another joint (or back into its own).
  Joint(Vertex),
}

/// A maximal path of non-joint vertices leaving a joint. `path` excludes the
/// joint it departs from and any joint it runs into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
  pub path: Vec<Vertex>,
  pub end: BranchEnd,
}

impl Branch {
  pub fn len(&self) -> usize {
    self.path.len()
  }

  pub fn is_empty(&self) -> bool {
    self.path.is_empty()
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
  pub kind: ShapeKind,
  pub joints: Vec<Vertex>,
  pub branches: BTreeMap<Vertex, Vec<Branch>>,
}

impl ShapeReport {
  pub fn max_branch_len(&self) -> usize {
    self.branches.values().flatten().map(Branch::len).max().unwrap_or(0)
  }
}

fn check_vertex(v: Vertex) -> Result<()> {
  if v == 0 || v > MAX_VERTEX {
    return Err(Error::Capacity { what: "vertex label", count: v, limit: MAX_VERTEX });
  }
  Ok(())
}

impl Hypergraph {
  /// Builds a hypergraph on `vertices` with the given edges (duplicates merge).
  pub fn new(
    vertices: impl IntoIterator<Item = Vertex>,
    edges: impl IntoIterator<Item = Bits>,
  ) -> Result<Self> {
    let mut vs = Bits::EMPTY;
    for v in vertices {
      check_vertex(v)?;
      vs.insert(v);
    }
    let mut h = Hypergraph { vertices: vs, ..Default::default() };
    for e in edges {
      h.insert_edge(e)?;
    }
    Ok(h)
  }

  /// Convenience constructor on vertices `1..=mu` from edge lists.
  pub fn from_edge_lists(mu: usize, edges: &[&[Vertex]]) -> Result<Self> {
    Hypergraph::new(1..=mu, edges.iter().map(|e| e.iter().copied().collect::<Bits>()))
  }

  /// Adds `edge` (no-op if present).
  pub fn insert_edge(&mut self, edge: Bits) -> Result<()> {
    if edge.is_empty() || !edge.is_subset(self.vertices) {
      return Err(Error::Document(format!("edge {edge} is empty or not contained in the vertex set")));
    }
    self.edges.insert(edge);
    Ok(())
  }

  pub fn insert_labeled_edge(&mut self, edge: Bits, label: impl Into<String>) -> Result<()> {
    self.insert_edge(edge)?;
    self.labels.entry(edge).or_default().insert(label.into());
    Ok(())
  }

  pub fn vertex_set(&self) -> Bits {
    self.vertices
  }

  pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
    self.vertices.iter()
  }

  pub fn num_vertices(&self) -> usize {
    self.vertices.len()
  }

  pub fn num_edges(&self) -> usize {
    self.edges.len()
  }

  pub fn is_empty(&self) -> bool {
    self.vertices.is_empty()
  }

  pub fn edges(&self) -> impl Iterator<Item = Bits> + '_ {
    self.edges.iter().copied()
  }

  pub fn edge_family(&self) -> &BTreeSet<Bits> {
    &self.edges
  }

  pub fn has_edge(&self, e: Bits) -> bool {
    self.edges.contains(&e)
  }

  pub fn contains_vertex(&self, v: Vertex) -> bool {
    self.vertices.contains(v)
  }

  pub fn labels(&self) -> &BTreeMap<Bits, BTreeSet<String>> {
    &self.labels
  }

  pub fn edge_labels(&self, e: Bits) -> Option<&BTreeSet<String>> {
    self.labels.get(&e)
  }

  pub fn has_labels(&self) -> bool {
    self.edges.iter().all(|e| self.labels.get(e).is_some_and(|l| !l.is_empty()))
  }

  /// Same vertices and edge family, labels ignored.
  pub fn same_edges(&self, other: &Hypergraph) -> bool {
    self.vertices == other.vertices && self.edges == other.edges
  }

  pub fn is_closed(&self, v: Vertex) -> bool {
    self.edges.contains(&Bits::singleton(v))
  }

  pub fn is_open(&self, v: Vertex) -> bool {
    !self.is_closed(v)
  }

  pub fn closed_vertices(&self) -> Bits {
    self.vertices.iter().filter(|&v| self.is_closed(v)).collect()
  }

  /// Number of edges of any cardinality containing `v`.
  pub fn degree(&self, v: Vertex) -> usize {
    self.edges.iter().filter(|e| e.contains(v)).count()
  }

  /// Neighbours of `v` through 2-element edges.
  pub fn pair_neighbors(&self, v: Vertex) -> Bits {
    self
      .edges
      .iter()
      .filter(|e| e.len() == 2 && e.contains(v))
      .fold(Bits::EMPTY, |acc, e| acc.union(e.without(v)))
  }

  /// Degree of `v` in the graph formed by the 2-element edges.
  pub fn pair_degree(&self, v: Vertex) -> usize {
    self.pair_neighbors(v).len()
  }

  pub fn has_pair(&self, u: Vertex, v: Vertex) -> bool {
    u != v && self.edges.contains(&Bits::singleton(u).with(v))
  }

  pub fn is_one_dimensional(&self) -> bool {
    self.edges.iter().all(|e| e.len() <= 2)
  }

  pub fn higher_edges(&self) -> impl Iterator<Item = Bits> + '_ {
    self.edges.iter().copied().filter(|e| e.len() >= 3)
  }

  pub fn is_isolated(&self, v: Vertex) -> bool {
    self.edges.iter().all(|e| !e.contains(v) || e.len() == 1)
  }

  /// `vertices` are the generators of `ideal`; one edge per used variable.
  pub fn dual_hypergraph(ideal: &MonomialIdeal) -> Result<Hypergraph> {
    if ideal.is_empty() {
      return Err(Error::EmptyIdeal);
    }
    let mut h = Hypergraph::new(1..=ideal.len(), [])?;
    let ring = ideal.ring();
    for var in 0..ring.len() {
      let edge: Bits =
        ideal.supports().iter().enumerate().filter(|(_, g)| g.contains(var)).map(|(j, _)| j + 1).collect();
      if !edge.is_empty() {
        h.insert_labeled_edge(edge, ring.name(var))?;
      }
    }
    Ok(h)
  }

  /// One fresh variable per edge (in edge order); generator `j` is the product
  /// of the variables of the edges containing the `j`-th smallest vertex.
  pub fn ideal_from_hypergraph(&self) -> Result<MonomialIdeal> {
    let edges: Vec<Bits> = self.edges().collect();
    let ring = Ring::fresh(edges.len())?;
    let mut gens = Vec::with_capacity(self.num_vertices());
    for v in self.vertices() {
      let s: Bits = edges.iter().enumerate().filter(|(_, e)| e.contains(v)).map(|(k, _)| k).collect();
      if s.is_empty() {
        return Err(Error::IsolatedVertex(v));
      }
      gens.push(s);
    }
    if gens.is_empty() {
      return Err(Error::EmptyIdeal);
    }
    MonomialIdeal::new(&ring, gens)
  }

  /// First pair of vertices not distinguished by edges, if any.
  pub fn separation_witness(&self) -> Option<(Vertex, Vertex)> {
    let vs: Vec<Vertex> = self.vertices().collect();
    for (a, &u) in vs.iter().enumerate() {
      for &v in &vs[a + 1..] {
        let u_not_v = self.edges.iter().any(|e| e.contains(u) && !e.contains(v));
        let v_not_u = self.edges.iter().any(|e| e.contains(v) && !e.contains(u));
        if !(u_not_v && v_not_u) {
          return Some((u, v));
        }
      }
    }
    None
  }

  pub fn is_separated(&self) -> bool {
    self.separation_witness().is_none()
  }

  pub fn classify_vertices(&self) -> Vec<VertexClass> {
    self
      .vertices()
      .map(|v| VertexClass { vertex: v, open: self.is_open(v), degree: self.degree(v) })
      .collect()
  }

  /// Edges of cardinality at most `dim + 1`.
  pub fn skeleton(&self, dim: usize) -> Hypergraph {
    let keep = |e: &Bits| e.len() <= dim + 1;
    Hypergraph {
      vertices: self.vertices,
      edges: self.edges.iter().copied().filter(keep).collect(),
      labels: self.labels.iter().filter(|(e, _)| keep(e)).map(|(e, l)| (*e, l.clone())).collect(),
    }
  }

  pub fn remove_edge(&self, edge: Bits) -> Result<Hypergraph> {
    if !self.edges.contains(&edge) {
      return Err(Error::NotAnEdge(edge));
    }
    let mut h = self.clone();
    h.edges.remove(&edge);
    h.labels.remove(&edge);
    Ok(h)
  }

  /// Deletes `v` from the vertex set and from every edge; emptied edges
  /// vanish and coinciding edges merge their labels. Non-vertices are ignored.
  pub fn remove_vertex(&self, v: Vertex) -> Hypergraph {
    self.remove_vertices(Bits::singleton(v))
  }

  pub fn remove_vertices(&self, gone: Bits) -> Hypergraph {
    let mut h = Hypergraph { vertices: self.vertices.difference(gone), ..Default::default() };
    for e in &self.edges {
      let f = e.difference(gone);
      if f.is_empty() {
        continue;
      }
      h.edges.insert(f);
      if let Some(l) = self.labels.get(e) {
        h.labels.entry(f).or_default().extend(l.iter().cloned());
      }
    }
    h
  }

  /// Next unused label: one past every label seen so far.
  pub fn fresh_vertex(&self) -> Vertex {
    self.vertices.max().map_or(1, |m| m + 1)
  }

  /// Image of `(I, x_F)`: every vertex of `edge` is removed and one new
  /// closed isolated vertex (the generator `x_F`) is adjoined.
  pub fn add_edge_vertex(&self, edge: Bits) -> Result<Hypergraph> {
    if !self.edges.contains(&edge) {
      return Err(Error::NotAnEdge(edge));
    }
    let fresh = self.fresh_vertex();
    check_vertex(fresh)?;
    let mut h = self.remove_vertices(edge);
    h.vertices.insert(fresh);
    let single = Bits::singleton(fresh);
    h.edges.insert(single);
    if let Some(l) = self.labels.get(&edge) {
      h.labels.insert(single, l.clone());
    }
    Ok(h)
  }

  /// Sub-hypergraph on `keep` with the edges lying inside it.
  pub fn induced(&self, keep: Bits) -> Hypergraph {
    let keep = keep.intersection(self.vertices);
    Hypergraph {
      vertices: keep,
      edges: self.edges.iter().copied().filter(|e| e.is_subset(keep)).collect(),
      labels: self.labels.iter().filter(|(e, _)| e.is_subset(keep)).map(|(e, l)| (*e, l.clone())).collect(),
    }
  }

  /// Connected components (vertices sharing an edge are adjacent), ordered by
  /// smallest vertex.
  pub fn components(&self) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    let mut left = self.vertices;
    while let Some(start) = left.min() {
      let mut comp = Bits::singleton(start);
      loop {
        let grown = self.edges.iter().filter(|e| !e.is_disjoint(comp)).fold(comp, |acc, e| acc.union(*e));
        if grown == comp {
          break;
        }
        comp = grown;
      }
      out.push(self.induced(comp));
      left = left.difference(comp);
    }
    out
  }

  pub fn is_connected(&self) -> bool {
    self.components().len() <= 1
  }

  /// Union with a hypergraph on disjoint vertex labels.
  pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
    if !self.vertices.is_disjoint(other.vertices) {
      return Err(Error::Document("vertex labels overlap".into()));
    }
    let mut h = self.clone();
    h.vertices = h.vertices.union(other.vertices);
    h.edges.extend(other.edges.iter().copied());
    for (e, l) in &other.labels {
      h.labels.entry(*e).or_default().extend(l.iter().cloned());
    }
    Ok(h)
  }

  /// Copy with every vertex label increased by `by`.
  pub fn shifted(&self, by: usize) -> Result<Hypergraph> {
    let shift = |b: Bits| b.iter().map(|v| v + by).collect::<Bits>();
    if let Some(m) = self.vertices.max() {
      check_vertex(m + by)?;
    }
    Ok(Hypergraph {
      vertices: shift(self.vertices),
      edges: self.edges.iter().map(|e| shift(*e)).collect(),
      labels: self.labels.iter().map(|(e, l)| (shift(*e), l.clone())).collect(),
    })
  }

  /// Branches leaving `joint` in the graph of 2-element edges.
  pub fn branches_from(&self, joint: Vertex) -> Vec<Branch> {
    let is_joint = |v: Vertex| self.pair_degree(v) >= 3;
    let mut out = Vec::new();
    for first in self.pair_neighbors(joint) {
      let mut path = Vec::new();
      let mut prev = joint;
      let mut cur = first;
      let end = loop {
        if cur == joint || is_joint(cur) {
          break BranchEnd::Joint(cur);
        }
        path.push(cur);
        let next = self.pair_neighbors(cur).without(prev);
        match next.min() {
          None => break BranchEnd::Leaf,
          Some(n) => {
            prev = cur;
            cur = n;
          }
        }
      };
      out.push(Branch { path, end });
    }
    out
  }

  /// Shape of a connected hypergraph; string and cycle require it to be
  /// 1-dimensional, the star-like kinds look at the 1-skeleton only.
  pub fn classify_shape(&self) -> Result<ShapeReport> {
    if !self.is_connected() {
      return Err(Error::Disconnected);
    }
    let joints: Vec<Vertex> = self.vertices().filter(|&v| self.pair_degree(v) >= 3).collect();
    let branches: BTreeMap<Vertex, Vec<Branch>> =
      joints.iter().map(|&j| (j, self.branches_from(j))).collect();
    let pair_edges = self.edges.iter().filter(|e| e.len() == 2).count();
    let n = self.num_vertices();
    let pair_connected = self.skeleton(1).components().len() == 1;
    let one_dim = self.is_one_dimensional();

    let kind = if joints.is_empty() {
      let max_deg = self.vertices().map(|v| self.pair_degree(v)).max().unwrap_or(0);
      if one_dim && pair_connected && max_deg <= 2 && pair_edges + 1 == n {
        ShapeKind::String
      } else if one_dim && pair_connected && n >= 3 && pair_edges == n {
        ShapeKind::Cycle
      } else {
        ShapeKind::Other
      }
    } else {
      let short = branches.values().flatten().all(|b| b.len() <= 2);
      if !pair_connected || !short {
        ShapeKind::Other
      } else if joints.len() == 1 && branches.values().flatten().all(|b| b.end == BranchEnd::Leaf) {
        ShapeKind::TwoStar
      } else {
        ShapeKind::Bush
      }
    };
    Ok(ShapeReport { kind, joints, branches })
  }

  /// Vertices in ascending order, positioned as `1..=mu` for serialization.
  fn numbering(&self) -> BTreeMap<Vertex, usize> {
    self.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect()
  }

  pub fn to_doc(&self) -> HypergraphDoc {
    let num = self.numbering();
    let renum = |e: Bits| e.iter().map(|v| num[&v]).collect::<Vec<_>>();
    let mut edges: Vec<Vec<usize>> = self.edges().map(renum).collect();
    edges.sort();
    let labels = self
      .labels
      .iter()
      .filter(|(_, l)| !l.is_empty())
      .map(|(e, l)| (edge_key(&renum(*e)), l.iter().cloned().collect()))
      .collect();
    let contiguous = self.vertices().eq(1..=self.num_vertices());
    HypergraphDoc {
      mu: self.num_vertices(),
      edges,
      labels,
      vertex_labels: if contiguous { None } else { Some(self.vertices().collect()) },
      positions: None,
    }
  }

  pub fn from_doc(doc: &HypergraphDoc) -> Result<Hypergraph> {
    let names: Vec<Vertex> = match &doc.vertex_labels {
      Some(l) => {
        if l.len() != doc.mu {
          return Err(Error::Document(format!("{} vertex labels for mu = {}", l.len(), doc.mu)));
        }
        l.clone()
      }
      None => (1..=doc.mu).collect(),
    };
    if names.len() > MAX_VERTEX {
      return Err(Error::Capacity { what: "vertices", count: names.len(), limit: MAX_VERTEX });
    }
    let mut h = Hypergraph::new(names.iter().copied(), [])?;
    if h.num_vertices() != names.len() {
      return Err(Error::Document("duplicate vertex labels".into()));
    }
    let map_edge = |e: &[usize]| -> Result<Bits> {
      let mut b = Bits::EMPTY;
      for &i in e {
        if i == 0 || i > doc.mu {
          return Err(Error::Document(format!("vertex index {i} outside 1..={}", doc.mu)));
        }
        b.insert(names[i - 1]);
      }
      Ok(b)
    };
    for e in &doc.edges {
      h.insert_edge(map_edge(e)?)?;
    }
    for (key, names) in &doc.labels {
      let e: Vec<usize> =
        serde_json::from_str(key).map_err(|_| Error::Document(format!("bad label key `{key}`")))?;
      let e = map_edge(&e)?;
      if !h.has_edge(e) {
        return Err(Error::Document(format!("label key `{key}` is not an edge")));
      }
      h.labels.entry(e).or_default().extend(names.iter().cloned());
    }
    Ok(h)
  }

  /// Graphviz rendering: closed vertices filled, 2-element edges as graph
  /// edges, larger edges as boxed hyperedge nodes joined by dashed lines.
  pub fn to_dot(&self) -> String {
    use std::fmt::Write;
    let mut s = String::from("graph hypergraph {\n  node [shape=circle, fontsize=10];\n");
    for v in self.vertices() {
      let style = if self.is_closed(v) { ", style=filled, fillcolor=black, fontcolor=white" } else { "" };
      let _ = writeln!(s, "  v{v} [label=\"{v}\"{style}];");
    }
    let label_of = |e: &Bits| {
      self.labels.get(e).map(|l| l.iter().cloned().collect::<Vec<_>>().join(",")).unwrap_or_default()
    };
    for (k, e) in self.edges.iter().filter(|e| e.len() >= 2).enumerate() {
      let label = label_of(e);
      if e.len() == 2 {
        let v = e.to_vec();
        let _ = writeln!(s, "  v{} -- v{} [label=\"{label}\", penwidth=2];", v[0], v[1]);
      } else {
        let _ = writeln!(
          s,
          "  h{k} [shape=box, style=filled, fillcolor=palegreen, label=\"{label}\", fontsize=9];"
        );
        for v in e.iter() {
          let _ = writeln!(s, "  h{k} -- v{v} [style=dashed];");
        }
      }
    }
    s.push_str("}\n");
    s
  }
}

fn edge_key(e: &[usize]) -> String {
  serde_json::to_string(e).expect("vec of usize serializes")
}

/// JSON form of a hypergraph: 1-based vertex indices, edges as sorted arrays.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HypergraphDoc {
  pub mu: usize,
  pub edges: Vec<Vec<usize>>,
  #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
  pub labels: BTreeMap<String, Vec<String>>,
  /// Original vertex labels when they differ from `1..=mu`.
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub vertex_labels: Option<Vec<Vertex>>,
  /// Optional drawing coordinates keyed by 1-based index.
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub positions: Option<BTreeMap<String, [f64; 2]>>,
}
