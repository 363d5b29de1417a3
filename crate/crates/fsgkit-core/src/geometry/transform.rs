use nalgebra::{Matrix3, Rotation3, UnitQuaternion, UnitVector3, Vector3};
use serde::{Deserialize, Serialize};

use super::GeometryError;

const ORTHO_TOL: f64 = 1e-9;

/// A proper rigid transform: orthonormal rotation (det +1) plus translation.
///
/// `t.transform_point(p)` maps coordinates expressed in the source frame
/// into the target frame. Composition reads right-to-left:
/// `a.compose(&b)` applies `b` first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// Build from parts, validating orthonormality and det = +1 to 1e-9.
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self, GeometryError> {
        let gram = rotation.transpose() * rotation;
        if (gram - Matrix3::identity()).amax() > ORTHO_TOL
            || (rotation.determinant() - 1.0).abs() > ORTHO_TOL
        {
            return Err(GeometryError::NotARotation);
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    pub fn from_rotation(rotation: Rotation3<f64>, translation: Vector3<f64>) -> Self {
        Self {
            rotation: *rotation.matrix(),
            translation,
        }
    }

    /// Translation plus intrinsic X-Y-Z roll/pitch/yaw (radians).
    pub fn from_xyz_rpy(xyz: Vector3<f64>, rpy: Vector3<f64>) -> Self {
        Self::from_rotation(Rotation3::from_euler_angles(rpy.x, rpy.y, rpy.z), xyz)
    }

    pub fn rotation_about(axis: UnitVector3<f64>, angle: f64) -> Self {
        Self::from_rotation(Rotation3::from_axis_angle(&axis, angle), Vector3::zeros())
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> Self {
        let rt = self.rotation.transpose();
        Self {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    pub fn transform_point(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    pub fn transform_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * v
    }

    /// Unit quaternion (w, x, y, z) of the rotation part.
    pub fn quaternion_wxyz(&self) -> [f64; 4] {
        let q = UnitQuaternion::from_matrix(&self.rotation);
        [q.w, q.i, q.j, q.k]
    }

    pub fn from_quaternion_wxyz(q: [f64; 4], translation: Vector3<f64>) -> Self {
        let uq = UnitQuaternion::from_quaternion(nalgebra::Quaternion::new(q[0], q[1], q[2], q[3]));
        Self {
            rotation: uq.to_rotation_matrix().into_inner(),
            translation,
        }
    }

    /// Angle (radians) of the relative rotation between `self` and `other`.
    pub fn rotation_angle_to(&self, other: &Self) -> f64 {
        let rel = self.rotation.transpose() * other.rotation;
        let c = ((rel.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
        c.acos()
    }
}

impl std::ops::Mul for RigidTransform {
    type Output = RigidTransform;
    fn mul(self, rhs: RigidTransform) -> RigidTransform {
        self.compose(&rhs)
    }
}

/// Deterministic unit vector orthogonal to `n` (assumed unit length).
pub(crate) fn any_orthonormal(n: &Vector3<f64>) -> Vector3<f64> {
    // Pick the coordinate axis least aligned with n to stay well-conditioned.
    let a = n.map(f64::abs);
    let e = if a.x <= a.y && a.x <= a.z {
        Vector3::x()
    } else if a.y <= a.z {
        Vector3::y()
    } else {
        Vector3::z()
    };
    n.cross(&e).normalize()
}

/// Rotation taking unit vector `from` onto unit vector `to`.
/// Antiparallel inputs rotate 180° about a deterministic orthogonal axis.
pub(crate) fn rotation_between(from: &Vector3<f64>, to: &Vector3<f64>) -> Rotation3<f64> {
    match Rotation3::rotation_between(from, to) {
        Some(r) => r,
        None => Rotation3::from_axis_angle(
            &UnitVector3::new_unchecked(any_orthonormal(from)),
            std::f64::consts::PI,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::RngExt;

    fn random_transform(rng: &mut impl rand::Rng) -> RigidTransform {
        let axis = UnitVector3::new_normalize(Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ));
        let t = Vector3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        RigidTransform::from_rotation(
            Rotation3::from_axis_angle(&axis, rng.random_range(-3.0..3.0)),
            t,
        )
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let mut rng = crate::rng::stream(11, 0);
        for _ in 0..50 {
            let t = random_transform(&mut rng);
            let id = t.compose(&t.inverse());
            assert!((id.rotation - Matrix3::identity()).amax() < 1e-9);
            assert!(id.translation.amax() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_rotation() {
        let m = Matrix3::new(1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 1.0);
        assert!(RigidTransform::new(m, Vector3::zeros()).is_err());
        // Reflections (det -1) are not rigid transforms here.
        let refl = Matrix3::new(-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0);
        assert!(RigidTransform::new(refl, Vector3::zeros()).is_err());
    }

    #[test]
    fn quaternion_round_trip() {
        let mut rng = crate::rng::stream(12, 0);
        for _ in 0..20 {
            let t = random_transform(&mut rng);
            let q = t.quaternion_wxyz();
            let back = RigidTransform::from_quaternion_wxyz(q, t.translation);
            assert!((back.rotation - t.rotation).amax() < 1e-9);
        }
    }

    #[test]
    fn rotation_between_handles_antiparallel() {
        let a = Vector3::new(0.0, 0.0, 1.0);
        let r = rotation_between(&a, &-a);
        assert_relative_eq!((r * a + a).norm(), 0.0, epsilon = 1e-12);
    }
}
