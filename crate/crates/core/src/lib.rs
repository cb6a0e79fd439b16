//! Demand-driven generation of continuous-space roadmaps for homogeneous
//! mobile-robot fleets.
//!
//! The crate is `no_std` (it needs `alloc`). It covers the whole algorithmic
//! pipeline:
//!
//! * [`geometry`]: clearance queries against a polygonal free space, crossing
//!   tests, convex-corner extraction and visibility graphs.
//! * [`model`]: robot, environment, transport matrix and roadmap types.
//! * [`discretize`]: node placement at interaction points, convex corners and
//!   on iteratively growing local grids.
//! * [`edges`]: the full (possibly non-planar) edge set under the node-edge
//!   clearance constraint.
//! * [`optimize`]: penalized K-shortest paths per demand pair, pruning,
//!   planarization by importance factor and structural refinement.
//! * [`smooth`]: corner-blending cubic curves with a bounded deviation.
//! * [`baselines`]: grid and random-sampling roadmaps with Delaunay edges.
//! * [`metrics`]: the graph-theoretic evaluation battery.
//!
//! File formats, rendering and the command-line tool live in the `roadmap`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod baselines;
pub mod discretize;
pub mod edges;
mod error;
pub mod geometry;
pub mod graph;
pub mod metrics;
pub mod model;
pub mod optimize;
pub mod pipeline;
pub mod smooth;
mod spatial;

pub use error::{Error, Result};
pub use geometry::{FreeSpace, Point, Polygon, Segment};
pub use model::{
    Constraints, Environment, InteractionPoint, Node, NodeKind, Roadmap, Robot, Station,
    TransportMatrix,
};
