//! Exact computations with finite complex reflection groups: conjugacy
//! classes and codimensions, character tables, the codimension filtration of
//! the centre of the group algebra, and the equivariant Chern character
//! image lattice built from parabolic subgroups.

pub mod center;
pub mod chartab;
pub mod chern;
pub mod exact;
pub mod g4;
pub mod groups;
pub mod identities;
