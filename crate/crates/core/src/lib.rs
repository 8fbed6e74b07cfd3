//! Chern numbers of matroids computed tropically on Bergman fans.

pub mod analysis;
pub mod bergman;
pub mod canonical;
pub mod corpus;
pub mod error;
pub mod field;
pub mod geography;
pub mod intersection;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod matroid;
pub mod subset;
pub mod table;

pub use analysis::{ChernPair, EqualityCase, TheoremReport};
pub use bergman::{BergmanFan, FlatChain, LatticeVector, MinkowskiWeight, Weight};
pub use error::{Error, Result};
pub use intersection::{chern_number, ChernExponents};
pub use lattice::{CharPoly, FlatLattice, RankTwoProfile};
pub use matroid::{Matroid, Minor};
pub use subset::Subset;
