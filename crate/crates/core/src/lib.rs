//! Finite-group machinery for the group ν(G), the non-abelian tensor square
//! `G ⊗ G ≅ [G, G^φ]`, left Engel conditions and the graded Lie ring attached
//! to the dimension subgroups of a finite p-group.

pub mod abelian;
pub mod cache;
pub mod catalog;
pub mod check;
pub mod engel;
pub mod error;
pub mod fpres;
pub mod group;
pub mod input;
pub mod lie;
pub mod nu;
pub mod perm;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup, SeriesKind, SeriesReport, Subgroup};
pub use perm::Permutation;
