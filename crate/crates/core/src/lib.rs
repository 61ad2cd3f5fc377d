//! Exact geometry-of-numbers toolkit for lattice sphere packings.
//!
//! The crate computes, with exact rational arithmetic wherever a quantity
//! can be stated in squared form: packing and covering radii, covering
//! minima, per-lattice Rankin values with minimizing planes, dual-lattice
//! identities, and certified free affine planes in lattice sphere packings,
//! together with a closed-form bound engine (ball volumes, projection
//! constants, density bounds, zeta-product lower bounds).

pub mod bounds;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod imat;
pub mod lattice;
pub mod minima;
pub mod planes;
pub mod qmat;
pub mod rational;
pub mod selftest;
pub mod voronoi;

pub use config::RunConfig;
pub use error::Error;
pub use lattice::{catalog, CatalogName, Lattice, LatticePlane, Subspace};
pub use rational::Rat;
