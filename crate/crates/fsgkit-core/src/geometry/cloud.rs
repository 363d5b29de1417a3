use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::RigidTransform;

/// Coordinate frame a cloud is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameTag {
    Tip,
    Palm,
    Obj,
}

/// An oriented surface sample: position in meters, unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub position: Vector3<f64>,
    pub normal: Vector3<f64>,
}

impl SurfacePoint {
    pub fn new(position: Vector3<f64>, normal: Vector3<f64>) -> Self {
        Self { position, normal }
    }

    pub fn transformed(&self, t: &RigidTransform) -> Self {
        Self {
            position: t.transform_point(&self.position),
            normal: t.transform_vector(&self.normal),
        }
    }
}

/// An ordered, immutable collection of surface points in a fixed frame.
/// Transforms produce a new cloud; the frame tag travels with it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCloud {
    points: Vec<SurfacePoint>,
    frame: FrameTag,
}

impl SurfaceCloud {
    pub fn new(points: Vec<SurfacePoint>, frame: FrameTag) -> Self {
        Self { points, frame }
    }

    pub fn frame(&self) -> FrameTag {
        self.frame
    }

    pub fn points(&self) -> &[SurfacePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// New cloud with every point mapped by `t`, retagged to `frame`.
    pub fn transformed(&self, t: &RigidTransform, frame: FrameTag) -> Self {
        Self {
            points: self.points.iter().map(|p| p.transformed(t)).collect(),
            frame,
        }
    }

    /// Subset by index, order preserved. Panics on out-of-range indices.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            points: indices.iter().map(|&i| self.points[i]).collect(),
            frame: self.frame,
        }
    }

    pub fn centroid(&self) -> Vector3<f64> {
        if self.points.is_empty() {
            return Vector3::zeros();
        }
        self.points
            .iter()
            .fold(Vector3::zeros(), |acc, p| acc + p.position)
            / self.points.len() as f64
    }
}

/// Planar shape used to approximate the usable pulp region of a fingertip.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    Circle,
    Rectangle,
}

/// A planar circle or rectangle lying in the plane through `center.position`
/// perpendicular to `center.normal`. For rectangles `edge_u`/`edge_v` point
/// along the two perpendicular edges and their norms are the half edge
/// lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactFace {
    pub kind: FaceKind,
    pub center: SurfacePoint,
    pub circle_radius: f64,
    pub edge_u: Vector3<f64>,
    pub edge_v: Vector3<f64>,
}

impl ContactFace {
    pub fn circle(center: SurfacePoint, radius: f64) -> Self {
        Self {
            kind: FaceKind::Circle,
            center,
            circle_radius: radius,
            edge_u: Vector3::zeros(),
            edge_v: Vector3::zeros(),
        }
    }

    pub fn rectangle(center: SurfacePoint, edge_u: Vector3<f64>, edge_v: Vector3<f64>) -> Self {
        Self {
            kind: FaceKind::Rectangle,
            center,
            circle_radius: 0.0,
            edge_u,
            edge_v,
        }
    }

    pub fn area(&self) -> f64 {
        match self.kind {
            FaceKind::Circle => std::f64::consts::PI * self.circle_radius * self.circle_radius,
            FaceKind::Rectangle => 4.0 * self.edge_u.norm() * self.edge_v.norm(),
        }
    }

    /// Extent from the center along unit direction `dir` (assumed in-plane):
    /// the support of the shape in that direction.
    pub fn extent_along(&self, dir: &Vector3<f64>) -> f64 {
        match self.kind {
            FaceKind::Circle => self.circle_radius,
            FaceKind::Rectangle => dir.dot(&self.edge_u).abs() + dir.dot(&self.edge_v).abs(),
        }
    }

    pub fn transformed(&self, t: &RigidTransform) -> Self {
        Self {
            kind: self.kind,
            center: self.center.transformed(t),
            circle_radius: self.circle_radius,
            edge_u: t.transform_vector(&self.edge_u),
            edge_v: t.transform_vector(&self.edge_v),
        }
    }

    /// True if `p` projects inside the shape and lies within `normal_tol`
    /// of the face plane along its normal.
    pub fn contains(&self, p: &Vector3<f64>, normal_tol: f64) -> bool {
        let n = self.center.normal;
        let d = p - self.center.position;
        let along = d.dot(&n);
        if along.abs() > normal_tol {
            return false;
        }
        let in_plane = d - along * n;
        match self.kind {
            FaceKind::Circle => in_plane.norm() <= self.circle_radius,
            FaceKind::Rectangle => {
                let hu = self.edge_u.norm();
                let hv = self.edge_v.norm();
                let du = in_plane.dot(&self.edge_u) / hu;
                let dv = in_plane.dot(&self.edge_v) / hv;
                du.abs() <= hu && dv.abs() <= hv
            }
        }
    }

    /// Boundary vertices used for table-clearance checks: rectangle corners,
    /// or eight rim samples for a circle.
    pub fn boundary_vertices(&self) -> Vec<Vector3<f64>> {
        let c = self.center.position;
        match self.kind {
            FaceKind::Rectangle => vec![
                c + self.edge_u + self.edge_v,
                c + self.edge_u - self.edge_v,
                c - self.edge_u + self.edge_v,
                c - self.edge_u - self.edge_v,
            ],
            FaceKind::Circle => {
                let u = super::transform::any_orthonormal(&self.center.normal);
                let v = self.center.normal.cross(&u);
                (0..8)
                    .map(|k| {
                        let a = std::f64::consts::TAU * k as f64 / 8.0;
                        c + self.circle_radius * (a.cos() * u + a.sin() * v)
                    })
                    .collect()
            }
        }
    }
}
