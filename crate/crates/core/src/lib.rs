//! Cubical spun 2-knots on the canonical cubulation of R^4.
//!
//! Everything here is exact integer or small-rational arithmetic. Points of the
//! lattice `(1/λ)Z^4` are stored as integer numerators, and the denominator `λ`
//! lives on the container (arc, knot, surface).
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! - [`lattice`]: lattice points, cubical arcs, cubical 1-knots, reduced arcs.
//! - [`surface`]: square complexes in the 2-skeleton, sphere recognition, homothety.
//! - [`spin`]: the spun surface built from an arc, closed-form areas, piece decomposition.
//! - [`moves`]: subdivision and face-boundary moves, weak minimality.
//! - [`invariants`]: projection diagrams, Fox colorings, determinant, crossing steps.
//! - [`search`]: canonical forms and constrained enumeration of lattice knots.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod moves;
pub mod search;
pub mod spin;
pub mod surface;

pub use lattice::{
    arc_from_knot, reduce_arc, validate_arc, Lattice1Knot, LatticeArc, LatticeError, Rational,
    ReducedArc, ScaledPoint, Step,
};
pub use surface::{CubicalSurface, SurfaceReport, UnitEdge, UnitSquare};
