//! Taxotopy invariants of finite posets: Galois connections, taxotopy
//! preorders between monotone maps, fundamental posets and the structural
//! theorems that compute them.

pub mod bits;
pub mod chains;
pub mod covers;
pub mod decomposition;
pub mod equivalence;
pub mod error;
pub mod fundamental;
pub mod galois;
pub mod generate;
pub mod iso;
pub mod limits;
pub mod map;
pub mod poset;
pub mod preorder;
pub mod structure;

pub use bits::{BitMatrix, BitSet};
pub use error::{Error, Result};
pub use fundamental::{fundamental_poset, lambda, FundamentalPoset, TaxotopyWitness};
pub use galois::{AdjunctionSet, GaloisConnection};
pub use limits::Limits;
pub use map::MonotoneMap;
pub use poset::{catalog, FinitePoset};
pub use preorder::{posetal_reflection, Preorder, QuotientResult};
