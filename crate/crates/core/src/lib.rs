//! Exact A-Hilb(C³) for finite diagonal abelian subgroups `A ⊂ SL(3,C)`.
//!
//! The pipeline runs: [`group`] (elements, invariant lattice, characters),
//! [`fan`] (the triangulation of the junior simplex), [`charts`]
//! (affine charts and A-graphs), [`recipe`] (Reid's recipe marking),
//! [`relations`] (tautological bundle relations) and [`cohomology`]
//! (the integral cohomology basis and duality check). [`io`] handles the
//! text grammar, JSON and SVG; [`pipeline`] runs everything and collects
//! the report, and [`cli`] is the command line on top.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod charts;
pub mod cli;
pub mod cohomology;
pub mod fan;
pub mod group;
pub mod io;
pub mod lattice;
pub mod pipeline;
pub mod recipe;
pub mod relations;

pub use error::{Error, Result};
pub use group::{AbelianGroup, Character, Generator, GroupSpec, Monomial};
