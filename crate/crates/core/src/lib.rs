//! Ramsey numbers of k-uniform loose paths and cycles at desk scale.
//!
//! - [`template`]: vertices, edges and the loose path/cycle templates
//! - [`coloring`]: 2-colorings of complete hosts and lower-bound witnesses
//! - [`embed`]: finding, counting and verifying monochromatic copies
//! - [`constructive`]: proof procedures that return checkable certificates
//! - [`prover`]: arrowing decisions, CNF export and value tables
//! - [`cli`]: the `ramsey-lab` command line

pub mod cli;
pub mod coloring;
pub mod combinat;
pub mod constructive;
pub mod embed;
pub mod error;
pub mod prover;
pub mod template;

pub use coloring::{Color, TwoColoring};
pub use error::{Error, Result};
pub use template::{Edge, Kind, LooseTemplate, Vertex};
