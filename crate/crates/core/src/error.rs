use thiserror::Error;

use crate::bits::Bits;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
  #[error("syntax error at byte {position}: {message}")]
  Syntax { position: usize, message: String },

  #[error(
    "variable `{variable}` has exponent {exponent} at byte {position}; only square-free input is accepted"
  )]
  NotSquareFree { variable: String, exponent: u32, position: usize },

  #[error("the ideal has no generators")]
  EmptyIdeal,

  #[error("monomials belong to different rings")]
  RingMismatch,

  #[error("unknown variable `{0}`")]
  UnknownVariable(String),

  #[error("too many {what}: {count} exceeds the limit of {limit}")]
  Capacity { what: &'static str, count: usize, limit: usize },

  #[error("generator index {index} out of range 1..={len}")]
  IndexOutOfRange { index: usize, len: usize },

  #[error("{0} is not an edge of the hypergraph")]
  NotAnEdge(Bits),

  #[error("{0} is not a vertex of the hypergraph")]
  NotAVertex(usize),

  #[error("vertex {0} lies in no edge")]
  IsolatedVertex(usize),

  #[error("the hypergraph is not separated: vertices {0} and {1} are not distinguished by any edge")]
  NotSeparated(usize, usize),

  #[error("the hypergraph is not connected")]
  Disconnected,

  #[error("{0} is not an element of the lattice")]
  NotAnElement(Bits),

  #[error("invalid lattice: {0}")]
  InvalidLattice(String),

  #[error("labeling leaves meet-irreducible element {0} unlabeled")]
  UnlabeledMeetIrreducible(Bits),

  #[error("labels of incomparable elements {0} and {1} share a variable")]
  IncomparableSharedVariable(Bits, Bits),

  #[error("reduction precondition failed: {0}")]
  Precondition(String),

  #[error("strict mode: edge {0} of cardinality >= 3 is not a union of other edges")]
  NonUnionHigherEdge(Bits),

  #[error("branch with {0} vertices has residue 0 mod 3; no reduction rule applies")]
  UnsupportedBranchResidue(usize),

  #[error("oracle limit exceeded: {what} = {count} (limit {limit})")]
  OracleLimit { what: &'static str, count: usize, limit: usize },

  #[error("{0} is not prime")]
  NotPrime(u32),

  #[error("trace replay failed: {0}")]
  Replay(String),

  #[error("formula and oracle disagree on component {component}: formula {formula}, oracle {oracle}")]
  VerifyMismatch { component: Bits, formula: usize, oracle: usize },

  #[error("invalid document: {0}")]
  Document(String),
}

impl Error {
  /// Stable snake_case name of the variant.
  pub fn kind(&self) -> &'static str {
    match self {
      Error::Syntax { .. } => "syntax",
      Error::NotSquareFree { .. } => "not_square_free",
      Error::EmptyIdeal => "empty_ideal",
      Error::RingMismatch => "ring_mismatch",
      Error::UnknownVariable(_) => "unknown_variable",
      Error::Capacity { .. } => "capacity",
      Error::IndexOutOfRange { .. } => "index_out_of_range",
      Error::NotAnEdge(_) => "not_an_edge",
      Error::NotAVertex(_) => "not_a_vertex",
      Error::IsolatedVertex(_) => "isolated_vertex",
      Error::NotSeparated(..) => "not_separated",
      Error::Disconnected => "disconnected",
      Error::NotAnElement(_) => "not_an_element",
      Error::InvalidLattice(_) => "invalid_lattice",
      Error::UnlabeledMeetIrreducible(_) => "unlabeled_meet_irreducible",
      Error::IncomparableSharedVariable(..) => "incomparable_shared_variable",
      Error::Precondition(_) => "precondition",
      Error::NonUnionHigherEdge(_) => "non_union_higher_edge",
      Error::UnsupportedBranchResidue(_) => "unsupported_branch_residue",
      Error::OracleLimit { .. } => "oracle_limit",
      Error::NotPrime(_) => "not_prime",
      Error::Replay(_) => "replay",
      Error::VerifyMismatch { .. } => "verify_mismatch",
      Error::Document(_) => "document",
    }
  }
}
