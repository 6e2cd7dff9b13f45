mod common;

use hyperpd::{Bits, Hypergraph, MonomialIdeal, Ring};
use proptest::prelude::*;

fn ideal() -> impl Strategy<Value = MonomialIdeal> {
  prop::collection::vec(1u128..(1 << 9), 1..=8).prop_map(|raw| {
    let gens = common::minimal(&raw).into_iter().map(Bits);
    MonomialIdeal::new(&Ring::fresh(9).unwrap(), gens).unwrap()
  })
}

/// Edge families on `1..=n` covering every vertex.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
  (2usize..=7).prop_flat_map(|n| {
    prop::collection::vec(1u128..(1 << n), 1..=10).prop_map(move |raw| {
      let mut edges: Vec<Bits> = raw.into_iter().map(|e| Bits(e << 1)).collect();
      let covered = edges.iter().fold(Bits::EMPTY, |a, e| a.union(*e));
      edges.extend(Bits::range_inclusive(1, n).difference(covered).iter().map(Bits::singleton));
      Hypergraph::new(1..=n, edges).unwrap()
    })
  })
}

proptest! {
  #[test]
  fn minimal_ideals_give_separated_hypergraphs(i in ideal()) {
    let h = Hypergraph::dual_hypergraph(&i).unwrap();
    prop_assert_eq!(h.num_vertices(), i.len());
    prop_assert!(h.is_separated(), "{:?}", h.separation_witness());
  }

  #[test]
  fn ideal_round_trip(h in hypergraph()) {
    let back = Hypergraph::dual_hypergraph(&h.ideal_from_hypergraph().unwrap());
    if h.is_separated() {
      prop_assert!(back.unwrap().same_edges(&h));
    }
  }

  #[test]
  fn skeleton_composes(h in hypergraph(), i in 0usize..4, j in 0usize..4) {
    prop_assert_eq!(h.skeleton(i).skeleton(j), h.skeleton(i.min(j)));
  }

  #[test]
  fn vertex_removal_shrinks(h in hypergraph(), pick in 0usize..7) {
    let v = h.vertices().nth(pick % h.num_vertices()).unwrap();
    let r = h.remove_vertex(v);
    prop_assert!(r.num_edges() <= h.num_edges());
    prop_assert!(!r.contains_vertex(v));
    for e in r.edges() {
      prop_assert!(h.edges().any(|f| f.without(v) == e));
    }
  }

  #[test]
  fn degrees_match_brute_force(h in hypergraph()) {
    for c in h.classify_vertices() {
      prop_assert_eq!(c.degree, h.edges().filter(|e| e.contains(c.vertex)).count());
      prop_assert_eq!(c.open, !h.edges().any(|e| e == Bits::singleton(c.vertex)));
    }
  }

  #[test]
  fn components_partition_vertices(a in hypergraph(), b in hypergraph()) {
    let u = a.disjoint_union(&b.shifted(a.vertex_set().max().unwrap()).unwrap()).unwrap();
    let parts = u.components();
    prop_assert_eq!(parts.iter().map(Hypergraph::num_vertices).sum::<usize>(), u.num_vertices());
    prop_assert_eq!(parts.iter().map(Hypergraph::num_edges).sum::<usize>(), u.num_edges());
    prop_assert_eq!(parts.len(), a.components().len() + b.components().len());
  }
}

#[test]
fn example_shapes() {
  use hyperpd::hypergraph::ShapeKind;
  let s = common::open_string(5);
  assert_eq!(s.classify_shape().unwrap().kind, ShapeKind::String);
  let star = common::two_star(1, 2, &[2, 4, 6]);
  let report = star.classify_shape().unwrap();
  assert_eq!(report.kind, ShapeKind::TwoStar);
  assert_eq!(report.joints, [1]);
  let cycle = Hypergraph::from_edge_lists(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap();
  assert_eq!(cycle.classify_shape().unwrap().kind, ShapeKind::Cycle);
  let dot = hyperpd::fixtures::figure4().to_dot();
  assert!(dot.starts_with("graph"));
}
