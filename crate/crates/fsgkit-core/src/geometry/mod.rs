//! Shared geometric primitives.

mod cloud;
mod hpr;
mod hull;
mod kdtree;
mod mesh;
pub mod planar;
pub mod ply;
mod sampling;
mod transform;

pub use cloud::{ContactFace, FaceKind, FrameTag, SurfaceCloud, SurfacePoint};
pub use hpr::remove_hidden_points;
pub use hull::{convex_hull, Hull, HullFacet};
pub use kdtree::{build_kdtree, NeighborIndex};
pub use mesh::{box_mesh, icosphere, TriangleMesh};
pub use planar::{
    largest_inscribed_axis_rect, largest_inscribed_circle, project_to_plane, Polygon2,
};
pub use sampling::{pds_radius, poisson_disk_sample};
pub use transform::RigidTransform;

use thiserror::Error;

/// Errors raised by the geometry layer.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("mesh is empty or degenerate: {0}")]
    InvalidMesh(String),
    #[error("viewpoint coincides with a cloud point")]
    HprDegenerate,
    #[error("operation requires a non-empty cloud")]
    EmptyCloud,
    #[error("input is affinely degenerate (rank {rank} < {dim})")]
    DegenerateHull { rank: usize, dim: usize },
    #[error("rotation matrix is not orthonormal with determinant +1")]
    NotARotation,
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error in {path}: {msg}")]
    Parse { path: String, msg: String },
}
