//! Block monoids `B(g)` of sequences in finitely generated abelian groups.

pub mod block;
pub mod bounds;
pub mod congruence;
pub mod error;
pub mod groebner;
pub mod group;
pub mod hilbert;
pub mod lattice;
pub mod monoid;
pub mod sweep;
pub mod tilde;
pub mod word;

pub use block::{BlockMonoid, Sequence};
pub use error::{Error, Result};
pub use group::{Group, GroupElement, GroupSpec, Order};
pub use monoid::{AffineMonoid, Element, Grading};
pub use word::Word;
