//! Worked examples shipped with the crate.

use crate::{
  coord::{Labeling, LabelingDoc},
  error::Result,
  hypergraph::{Hypergraph, HypergraphDoc},
  ideal::{parse_ideal, MonomialIdeal},
  lattice::{LatticeDoc, SetFamilyLattice},
};

pub const EXAMPLE44: &str = include_str!("../../../fixtures/example44.txt");
pub const FIGURE2: &str = include_str!("../../../fixtures/figure2.txt");
pub const FIGURE4: &str = include_str!("../../../fixtures/figure4.json");
pub const FIGURE1_LATTICE: &str = include_str!("../../../fixtures/figure1_lattice.json");
pub const FIGURE1_LABELS: &str = include_str!("../../../fixtures/figure1_labels.json");

/// `(ab, bcg, cdg, de, efg)`.
pub fn example44() -> MonomialIdeal {
  parse_ideal(EXAMPLE44.trim()).expect("fixture parses")
}

/// The eleven-generator ideal whose hypergraph has the union edges `q`, `r`.
pub fn figure2() -> MonomialIdeal {
  parse_ideal(FIGURE2.trim()).expect("fixture parses")
}

pub fn figure4_doc() -> HypergraphDoc {
  serde_json::from_str(FIGURE4).expect("fixture is valid JSON")
}

/// The 43-vertex bush with five higher edges.
pub fn figure4() -> Hypergraph {
  Hypergraph::from_doc(&figure4_doc()).expect("fixture is a hypergraph")
}

/// Four-atom lattice with its labelling by `a, b, c, d`.
pub fn figure1() -> Result<(SetFamilyLattice, Labeling)> {
  let l: LatticeDoc = serde_json::from_str(FIGURE1_LATTICE).expect("fixture is valid JSON");
  let lab: LabelingDoc = serde_json::from_str(FIGURE1_LABELS).expect("fixture is valid JSON");
  Ok((SetFamilyLattice::from_doc(&l)?, Labeling::from_doc(&lab)?))
}
