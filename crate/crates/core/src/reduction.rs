//! Projective-dimension preserving rewrites of dual hypergraphs, each step
//! logged so that a trace can be replayed and audited.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{
  bits::Bits,
  error::{Error, Result},
  hypergraph::{Branch, BranchEnd, Hypergraph, ShapeKind, Vertex},
  lattice::union_edge_elements,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
  UnionEdgeRemoved,
  ClosedEdgeRemoved,
  JointRemoved,
  BranchColon,
  BranchVertexRemoved,
}

impl Rule {
  pub fn cite(self) -> &'static str {
    match self {
      Rule::UnionEdgeRemoved => "union of smaller edges: not meet-irreducible, total Betti numbers unchanged",
      Rule::ClosedEdgeRemoved => "every vertex of the edge is closed: pd unchanged",
      Rule::JointRemoved => "joint with a branch of length 2 in a bush: pd unchanged",
      Rule::BranchColon => "branch with 1 mod 3 vertices: colon by the connecting edge",
      Rule::BranchVertexRemoved => "branch with 2 mod 3 vertices: joint removed",
    }
  }

  pub fn removes_vertex(self) -> bool {
    matches!(self, Rule::JointRemoved | Rule::BranchVertexRemoved)
  }
}

impl fmt::Display for Rule {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.write_str(serde_json::to_value(self).unwrap().as_str().unwrap())
  }
}

/// One rewrite. Edges and vertices use the labels of the input hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
  pub rule: Rule,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub edge: Option<Vec<Vertex>>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub vertex: Option<Vertex>,
  pub cite: String,
}

impl Step {
  fn edge(rule: Rule, e: Bits) -> Step {
    Step { rule, edge: Some(e.to_vec()), vertex: None, cite: rule.cite().into() }
  }

  fn vertex(rule: Rule, v: Vertex) -> Step {
    Step { rule, edge: None, vertex: Some(v), cite: rule.cite().into() }
  }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
  pub steps: Vec<Step>,
}

impl ReductionTrace {
  pub fn len(&self) -> usize {
    self.steps.len()
  }

  pub fn is_empty(&self) -> bool {
    self.steps.is_empty()
  }

  pub fn extend(&mut self, other: ReductionTrace) {
    self.steps.extend(other.steps)
  }

  pub fn count(&self, rule: Rule) -> usize {
    self.steps.iter().filter(|s| s.rule == rule).count()
  }

  /// One JSON object per line.
  pub fn to_json_lines(&self) -> String {
    self.steps.iter().map(|s| serde_json::to_string(s).unwrap() + "\n").collect()
  }

  pub fn from_json_lines(text: &str) -> Result<ReductionTrace> {
    let steps = text
      .lines()
      .filter(|l| !l.trim().is_empty())
      .map(|l| serde_json::from_str(l).map_err(|e| Error::Replay(format!("bad trace line: {e}"))))
      .collect::<Result<_>>()?;
    Ok(ReductionTrace { steps })
  }
}

fn step_edge(step: &Step) -> Result<Bits> {
  step
    .edge
    .as_ref()
    .map(|e| e.iter().copied().collect())
    .ok_or_else(|| Error::Replay(format!("{} step without an edge", step.rule)))
}

fn step_vertex(step: &Step) -> Result<Vertex> {
  step.vertex.ok_or_else(|| Error::Replay(format!("{} step without a vertex", step.rule)))
}

/// Re-applies `trace` to `start`, checking that each step's rule applies.
pub fn replay(start: &Hypergraph, trace: &ReductionTrace) -> Result<Hypergraph> {
  let mut h = start.clone();
  for (n, step) in trace.steps.iter().enumerate() {
    let fail = |why: &str| Error::Replay(format!("step {}: {why}", n + 1));
    h = match step.rule {
      Rule::UnionEdgeRemoved => {
        let e = step_edge(step)?;
        if !union_edge_elements(&h).contains(&e) {
          return Err(fail("edge is not a union of smaller edges"));
        }
        h.remove_edge(e)?
      }
      Rule::ClosedEdgeRemoved => {
        let e = step_edge(step)?;
        if e.len() < 2 || !e.iter().all(|v| h.is_closed(v)) {
          return Err(fail("edge has an open vertex"));
        }
        h.remove_edge(e)?
      }
      Rule::JointRemoved => {
        let v = step_vertex(step)?;
        if !removable_joint(&h, v) {
          return Err(fail("vertex is not a joint with a branch of length 2"));
        }
        h.remove_vertex(v)
      }
      Rule::BranchColon | Rule::BranchVertexRemoved => {
        let (e, v) = (step.edge.as_ref(), step.vertex);
        match (step.rule, e, v) {
          (Rule::BranchColon, Some(_), _) => h.remove_edge(step_edge(step)?)?,
          (Rule::BranchVertexRemoved, _, Some(v)) => {
            if !h.contains_vertex(v) {
              return Err(Error::NotAVertex(v));
            }
            h.remove_vertex(v)
          }
          _ => return Err(fail("missing payload")),
        }
      }
    };
  }
  Ok(h)
}

/// How the branch size in the mod-3 branch rule is counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchCount {
  /// Number of vertices on the branch.
  #[default]
  BranchVertices,
  /// Branch vertices plus the joint.
  WithJoint,
}

/// Removes the edges of cardinality at least 3 that are unions of other
/// edges. In strict mode any other edge of that size is an error; otherwise
/// the survivors are returned.
pub fn remove_union_edges(h: &Hypergraph, strict: bool) -> Result<(Hypergraph, ReductionTrace, Vec<Bits>)> {
  let mut out = h.clone();
  let mut trace = ReductionTrace::default();
  while let Some(e) = union_edge_elements(&out).into_iter().find(|e| e.len() >= 3) {
    out = out.remove_edge(e)?;
    trace.steps.push(Step::edge(Rule::UnionEdgeRemoved, e));
  }
  let survivors: Vec<Bits> = out.higher_edges().collect();
  if strict {
    if let Some(&e) = survivors.first() {
      return Err(Error::NonUnionHigherEdge(e));
    }
  }
  Ok((out, trace, survivors))
}

/// Removes every edge with at least two vertices, all of them closed.
pub fn remove_closed_vertex_edges(h: &Hypergraph) -> (Hypergraph, ReductionTrace) {
  let closed = h.closed_vertices();
  let doomed: Vec<Bits> = h.edges().filter(|e| e.len() >= 2 && e.is_subset(closed)).collect();
  let mut out = h.clone();
  let mut trace = ReductionTrace::default();
  for e in doomed {
    out = out.remove_edge(e).expect("edge listed from the hypergraph");
    trace.steps.push(Step::edge(Rule::ClosedEdgeRemoved, e));
  }
  (out, trace)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Preconditions {
  pub bush: bool,
  pub higher_edges_same_joint: bool,
  pub no_connected_closed: bool,
  /// Offending vertices, edges or pairs, in words.
  pub witnesses: Vec<String>,
}

impl Preconditions {
  pub fn all(&self) -> bool {
    self.bush && self.higher_edges_same_joint && self.no_connected_closed
  }
}

/// Vertices within distance 2 of `v` along 2-element edges.
fn pair_ball2(h: &Hypergraph, v: Vertex) -> Bits {
  let first = h.pair_neighbors(v).with(v);
  first.iter().fold(first, |acc, u| acc.union(h.pair_neighbors(u)))
}

/// Checks the bush hypotheses on every connected component.
pub fn check_preconditions(h: &Hypergraph) -> Preconditions {
  let mut pre =
    Preconditions { bush: true, higher_edges_same_joint: true, no_connected_closed: true, witnesses: vec![] };
  let skeleton = h.skeleton(1);
  for comp in skeleton.components() {
    if comp.num_vertices() == 1 {
      continue;
    }
    let report = comp.classify_shape().expect("components are connected");
    let ok = matches!(report.kind, ShapeKind::String | ShapeKind::TwoStar | ShapeKind::Bush);
    if !ok {
      pre.bush = false;
      let long: Vec<&Branch> = report.branches.values().flatten().filter(|b| b.len() > 2).collect();
      pre.witnesses.push(match long.first() {
        Some(b) => format!("branch {:?} is longer than 2", b.path),
        None => format!("component {} is not a bush", comp.vertex_set()),
      });
    }
  }
  let joints: Vec<Vertex> = h.vertices().filter(|&v| h.pair_degree(v) >= 3).collect();
  for e in h.higher_edges() {
    if !joints.iter().any(|&j| e.is_subset(pair_ball2(h, j))) {
      pre.higher_edges_same_joint = false;
      pre.witnesses.push(format!("edge {e} does not sit on the branches of one joint"));
    }
  }
  let closed = h.closed_vertices();
  for e in h.edges().filter(|e| e.len() == 2 && e.is_subset(closed)) {
    pre.no_connected_closed = false;
    pre.witnesses.push(format!("closed vertices {e} are joined by an edge"));
  }
  pre
}

/// A joint `i` with a neighbour `j` of pair-degree 2 whose other neighbour is
/// an end vertex, i.e. a branch `i - j - k` of length 2.
fn removable_joint(h: &Hypergraph, i: Vertex) -> bool {
  h.contains_vertex(i)
    && h.pair_degree(i) > 2
    && h
      .pair_neighbors(i)
      .iter()
      .any(|j| h.pair_degree(j) == 2 && h.pair_neighbors(j).without(i).iter().any(|k| h.pair_degree(k) == 1))
}

/// Repeatedly removes joints having a branch of length 2, scanning vertices
/// in ascending order and wrapping around until a full pass removes nothing.
pub fn remove_joints(h: &Hypergraph) -> Result<(Hypergraph, ReductionTrace)> {
  let pre = check_preconditions(h);
  if !pre.all() {
    return Err(Error::Precondition(pre.witnesses.join("; ")));
  }
  Ok(remove_joints_unchecked(h))
}

fn remove_joints_unchecked(h: &Hypergraph) -> (Hypergraph, ReductionTrace) {
  let mut out = h.clone();
  let mut trace = ReductionTrace::default();
  loop {
    let mut removed = false;
    let labels: Vec<Vertex> = out.vertices().collect();
    for i in labels {
      if removable_joint(&out, i) {
        out = out.remove_vertex(i);
        trace.steps.push(Step::vertex(Rule::JointRemoved, i));
        removed = true;
      }
    }
    if !removed {
      return (out, trace);
    }
  }
}

/// Applies the mod-3 branch rule at joint `w` along `branch`.
pub fn branch_reduce(
  h: &Hypergraph,
  w: Vertex,
  branch: &Branch,
  count: BranchCount,
) -> Result<(Hypergraph, Step)> {
  if !h.is_one_dimensional() {
    return Err(Error::Precondition("the branch rule needs a 1-dimensional hypergraph".into()));
  }
  if h.pair_degree(w) < 3 {
    return Err(Error::Precondition(format!("vertex {w} is not a joint")));
  }
  let path = &branch.path;
  let valid = branch.end == BranchEnd::Leaf
    && !path.is_empty()
    && h.has_pair(w, path[0])
    && path.windows(2).all(|p| h.has_pair(p[0], p[1]))
    && path[..path.len() - 1].iter().all(|&v| h.is_open(v))
    && h.is_closed(*path.last().unwrap());
  if !valid {
    return Err(Error::Precondition(format!(
      "{path:?} is not a branch of {w} with only its end vertex closed"
    )));
  }
  let n = match count {
    BranchCount::BranchVertices => path.len(),
    BranchCount::WithJoint => path.len() + 1,
  };
  match n % 3 {
    1 => {
      let e = Bits::singleton(w).with(path[0]);
      Ok((h.remove_edge(e)?, Step::edge(Rule::BranchColon, e)))
    }
    2 => Ok((h.remove_vertex(w), Step::vertex(Rule::BranchVertexRemoved, w))),
    r => Err(Error::UnsupportedBranchResidue(r)),
  }
}

/// Applies the branch rule wherever it fires, smallest joint first.
pub fn prune_branches(h: &Hypergraph, count: BranchCount) -> (Hypergraph, ReductionTrace) {
  let mut out = h.clone();
  let mut trace = ReductionTrace::default();
  'outer: loop {
    if !out.is_one_dimensional() {
      break;
    }
    let joints: Vec<Vertex> = out.vertices().filter(|&v| out.pair_degree(v) >= 3).collect();
    for w in joints {
      for b in out.branches_from(w) {
        if let Ok((next, step)) = branch_reduce(&out, w, &b, count) {
          out = next;
          trace.steps.push(step);
          continue 'outer;
        }
      }
    }
    break;
  }
  (out, trace)
}

/// Pipeline options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReduceOptions {
  pub strict: bool,
  pub branch_count: BranchCount,
}

/// Joint removal on components meeting the bush hypotheses, then union-edge
/// and closed-edge removal, then the branch rule on 1-dimensional
/// components, repeated until nothing changes.
pub fn full_reduce(h: &Hypergraph, opts: ReduceOptions) -> Result<(Hypergraph, ReductionTrace)> {
  let mut cur = h.clone();
  let mut trace = ReductionTrace::default();
  loop {
    let before = trace.len();
    for comp in cur.components() {
      if comp.num_vertices() > 1 && check_preconditions(&comp).all() {
        let (_, t) = remove_joints_unchecked(&comp);
        for s in &t.steps {
          cur = cur.remove_vertex(s.vertex.unwrap());
        }
        trace.extend(t);
      }
    }
    let (next, t, _) = remove_union_edges(&cur, opts.strict)?;
    cur = next;
    trace.extend(t);
    let (next, t) = remove_closed_vertex_edges(&cur);
    cur = next;
    trace.extend(t);
    for comp in cur.components() {
      if comp.is_one_dimensional() {
        let (_, t) = prune_branches(&comp, opts.branch_count);
        cur = replay(&cur, &t)?;
        trace.extend(t);
      }
    }
    if trace.len() == before {
      return Ok((cur, trace));
    }
  }
}
