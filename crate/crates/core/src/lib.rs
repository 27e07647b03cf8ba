//! Exact combinatorics of the box category `Q` and the symmetric cubical site `QΣ`.
//!
//! Arrows are formal cubical products ([`site::Morphism`]); finite cubical and
//! extended cubical sets are [`presheaf::Presheaf`] values stored as truncated
//! level data. On top of these sit Day convolution and the `i_! ⊣ i*`
//! adjunction ([`monoidal`]), simplicial realization with integral homology
//! ([`realize`]) and finite lifting and homotopy searches ([`homotopy`]).
#![no_std]

extern crate alloc;

pub mod error;
pub mod homotopy;
pub mod monoidal;
pub mod perm;
pub mod presheaf;
pub mod realize;
pub mod site;
pub mod unionfind;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use presheaf::{Kind, Presheaf, PresheafMap};
pub use site::{Entry, Morphism, Site};
