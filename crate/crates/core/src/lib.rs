//! Symbolic verification engine for Hamiltonian circle actions whose fixed
//! set has exactly two components of minimal dimension.
//!
//! The crate works purely on fixed-point data: the dimension of each fixed
//! component, its moment value, and the weight decomposition of its normal
//! bundle together with Chern classes. From that data it
//!
//! * integrates equivariant classes exactly by localization ([`localization`]),
//! * checks the consistency conditions forced on the data ([`fixeddata`],
//!   [`localization`], [`classify`]),
//! * sorts two-component data into projective-space type or quadric type and
//!   emits the integral cohomology ring and total Chern class of the total
//!   space ([`classify`]),
//! * enumerates admissible isotropy weight multisets ([`weights`]).
//!
//! Standard examples and mutation fixtures live in [`models`]; the
//! `hamfix` binary and the small class-expression language are in [`cli`]
//! and [`expr`].

pub mod classify;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fixeddata;
pub mod localization;
pub mod models;
pub mod polyring;
pub mod weights;

pub use error::{Error, Result};
