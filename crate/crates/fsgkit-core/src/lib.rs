//! Grasp synthesis and data augmentation for multi-fingered hands.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`geometry`] — rigid transforms, surface clouds, mesh sampling,
//!   hidden-point removal, kd-trees, convex hulls, planar shape fitting.
//! * [`hand`] — kinematic hand models: joint chains, limits, coupling,
//!   forward kinematics, joint-space sweeps, link skeletons.
//! * [`autows`] — automatic generation of per-finger workspace clouds:
//!   every point carries the joint angles that reach it plus a planar
//!   contact-face descriptor, so no inverse kinematics is needed later.
//! * [`object`] — object cloud preparation: surface sampling, curvature
//!   filtering, affordance-part extraction, table-frame conventions.
//! * [`quality`] — grasp wrench space construction and the Q1 (GWS
//!   epsilon) force-closure metric.
//! * [`fsg`] — the fingertip-contact-aware sampler: palm pose candidates,
//!   per-finger contact determination, finger iteration, link-penetration
//!   checks, and assembly of scored grasp poses.
//! * [`dataset`] — JSONL grasp records and demonstration ingestion.
//!
//! All randomized operations take explicit 64-bit seeds and are
//! deterministic for a given seed, independent of thread count.

pub mod autows;
pub mod dataset;
pub mod fsg;
pub mod geometry;
pub mod hand;
pub mod object;
pub mod quality;
pub(crate) mod rng;

pub use geometry::{
    ContactFace, FaceKind, FrameTag, GeometryError, Hull, NeighborIndex, RigidTransform,
    SurfaceCloud, SurfacePoint, TriangleMesh,
};
pub use hand::{FingerChain, HandError, HandModel, JointCombination, JointSpec};
