//! Geodesic Voronoi diagrams of point sites in a simple polygon.
//!
//! The crate computes geodesic nearest-point, order-k and farthest-point
//! Voronoi diagrams with a polygon sweep over the topological structure
//! (adjacency graph plus exact degree-1/degree-3 vertices), expands the
//! structure into full diagrams of hyperbolic/linear arc pieces, and
//! maintains a bucketed dynamic index for nearest/farthest queries.
//! Everything is validated against independent brute-force geodesic
//! oracles built on a visibility-graph Dijkstra.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature enables the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod center;
pub mod dynamic;
pub mod farthest;
pub mod geom;
pub mod instances;
pub mod kernel;
pub mod oracle;
pub mod order_k;
pub mod polygon;
pub mod sweep;
pub mod topology;

pub use geom::Point;
pub use kernel::{BoundaryPoint, GeodesicKernel, GeodesicPath, ShortestPathMap};
pub use polygon::SimplePolygon;
pub use topology::{AdjacencyGraph, ArcPiece, VoronoiDiagram};

use core::fmt;

/// Errors shared across the diagram builders and query structures.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A query point lies outside the polygon beyond tolerance.
    PointOutsidePolygon(Point),
    /// The polygon violates the simple-polygon invariants.
    InvalidPolygon(&'static str),
    /// Input sites violate the general position assumption; the payload
    /// names the offending sites.
    GeneralPositionViolation(alloc::vec::Vec<usize>),
    /// No boundary point attains the requested path distance.
    KeyNotFound,
    /// A bisector trace failed to reach its target vertex within budget.
    TraceDiverged,
    /// Level sequences lost a breakpoint expected by a cascade.
    InconsistentLevels,
    /// Deleting a site that is not present in the dynamic index.
    SiteNotFound(Point),
    /// Querying an empty dynamic index.
    EmptyIndex,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PointOutsidePolygon(p) => write!(f, "point ({}, {}) lies outside the polygon", p.x, p.y),
            Error::InvalidPolygon(msg) => write!(f, "invalid polygon: {msg}"),
            Error::GeneralPositionViolation(sites) => {
                write!(f, "general position violated by sites {sites:?}")
            }
            Error::KeyNotFound => write!(f, "no boundary point attains the requested distance"),
            Error::TraceDiverged => write!(f, "bisector trace diverged"),
            Error::InconsistentLevels => write!(f, "level sequences lost an expected breakpoint"),
            Error::SiteNotFound(p) => write!(f, "site ({}, {}) not found in index", p.x, p.y),
            Error::EmptyIndex => write!(f, "query on empty index"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
