//! Projective dimension of square-free monomial ideals through their dual
//! hypergraphs, with an LCM-lattice Betti-number oracle.

pub mod bits;
pub mod coord;
pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod ideal;
pub mod lattice;
pub mod oracle;
pub mod pd;
pub mod reduction;

pub use bits::Bits;
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use ideal::{parse_ideal, MonomialIdeal, Ring};
