use nalgebra::Vector3;

use super::{convex_hull, FrameTag, GeometryError, SurfaceCloud};

/// Visibility filtering by spherical flipping: points are mapped to
/// `q + 2(R − ‖q‖)·q/‖q‖` about the viewpoint with `R = 1000 × max ‖q‖`,
/// and exactly the points whose image lands on the convex hull of the
/// flipped set (plus the viewpoint itself) are visible.
///
/// Returns the visible subset in input order. A point coincident with the
/// viewpoint makes the inversion undefined.
pub fn remove_hidden_points(
    cloud: &SurfaceCloud,
    viewpoint: &Vector3<f64>,
) -> Result<SurfaceCloud, GeometryError> {
    if cloud.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    let rel: Vec<Vector3<f64>> = cloud
        .points()
        .iter()
        .map(|p| p.position - viewpoint)
        .collect();
    let max_norm = rel.iter().map(|q| q.norm()).fold(0.0, f64::max);
    if rel.iter().any(|q| q.norm() == 0.0) {
        return Err(GeometryError::HprDegenerate);
    }
    let radius = 1000.0 * max_norm;

    let mut flipped: Vec<Vec<f64>> = rel
        .iter()
        .map(|q| {
            let n = q.norm();
            let f = q + 2.0 * (radius - n) * q / n;
            vec![f.x, f.y, f.z]
        })
        .collect();
    // The viewpoint maps to the origin of the flipped space; including it
    // closes the hull on the near side.
    flipped.push(vec![0.0, 0.0, 0.0]);

    let hull = convex_hull(&flipped, 3)?;
    let visible: Vec<usize> = hull
        .vertices
        .iter()
        .copied()
        .filter(|&i| i < cloud.len())
        .collect();
    // hull.vertices is sorted, so input order is preserved.
    Ok(cloud.select(&visible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::mesh::icosphere;
    use crate::geometry::{SurfacePoint, TriangleMesh};

    /// Möller–Trumbore ray/triangle test used as a visibility oracle.
    fn segment_blocked(mesh: &TriangleMesh, from: &Vector3<f64>, to: &Vector3<f64>) -> bool {
        let dir = to - from;
        for t in mesh.triangles() {
            let (v0, v1, v2) = (
                mesh.vertices()[t[0]],
                mesh.vertices()[t[1]],
                mesh.vertices()[t[2]],
            );
            let e1 = v1 - v0;
            let e2 = v2 - v0;
            let p = dir.cross(&e2);
            let det = e1.dot(&p);
            if det.abs() < 1e-14 {
                continue;
            }
            let inv = 1.0 / det;
            let s = from - v0;
            let u = s.dot(&p) * inv;
            if !(0.0..=1.0).contains(&u) {
                continue;
            }
            let q = s.cross(&e1);
            let v = dir.dot(&q) * inv;
            if v < 0.0 || u + v > 1.0 {
                continue;
            }
            let hit = e2.dot(&q) * inv;
            // A hit strictly before the endpoint occludes it.
            if hit > 1e-9 && hit < 1.0 - 1e-6 {
                return true;
            }
        }
        false
    }

    #[test]
    fn hemisphere_fully_visible_from_its_pole() {
        let mesh = icosphere(1.0, 2);
        let pts: Vec<SurfacePoint> = mesh
            .vertices()
            .iter()
            .filter(|v| v.z > 0.05)
            .map(|&v| SurfacePoint::new(v, v.normalize()))
            .collect();
        let n = pts.len();
        let cloud = SurfaceCloud::new(pts, FrameTag::Obj);
        let kept = remove_hidden_points(&cloud, &Vector3::new(0.0, 0.0, 50.0)).unwrap();
        assert_eq!(kept.len(), n, "front hemisphere should be fully visible");
    }

    #[test]
    fn sphere_back_side_removed_matches_ray_oracle() {
        let mesh = icosphere(1.0, 3);
        // ~640-point cloud on the mesh: its vertices, so the ray oracle and
        // the cloud describe the same surface.
        let pts: Vec<SurfacePoint> = mesh
            .vertices()
            .iter()
            .map(|&v| SurfacePoint::new(v, v.normalize()))
            .collect();
        let cloud = SurfaceCloud::new(pts.clone(), FrameTag::Obj);
        let view = Vector3::new(0.0, 0.0, 10.0);
        let kept = remove_hidden_points(&cloud, &view).unwrap();
        let kept_set: std::collections::HashSet<u64> = kept
            .points()
            .iter()
            .map(|p| p.position.x.to_bits() ^ p.position.y.to_bits() ^ p.position.z.to_bits())
            .collect();
        let key = |p: &SurfacePoint| {
            p.position.x.to_bits() ^ p.position.y.to_bits() ^ p.position.z.to_bits()
        };

        let mut back_total = 0;
        let mut back_removed = 0;
        for p in &pts {
            let oracle_visible = !segment_blocked(&mesh, &view, &p.position);
            if p.position.z > 0.1 {
                // Clearly front-facing points are visible by the oracle and
                // must be retained.
                assert!(oracle_visible);
                assert!(kept_set.contains(&key(p)), "front point removed: {p:?}");
            }
            if p.position.z < -0.1 {
                assert!(!oracle_visible);
                back_total += 1;
                if !kept_set.contains(&key(p)) {
                    back_removed += 1;
                }
            }
        }
        assert!(back_total > 100);
        assert!(
            back_removed as f64 >= 0.95 * back_total as f64,
            "only {back_removed}/{back_total} hidden points removed"
        );
    }

    #[test]
    fn lower_of_two_parallel_planes_is_hidden() {
        let mut pts = Vec::new();
        for i in 0..12 {
            for j in 0..12 {
                let (x, y) = (i as f64 / 11.0 - 0.5, j as f64 / 11.0 - 0.5);
                pts.push(SurfacePoint::new(Vector3::new(x, y, 1.0), Vector3::z()));
                pts.push(SurfacePoint::new(Vector3::new(x, y, 0.0), Vector3::z()));
            }
        }
        let cloud = SurfaceCloud::new(pts, FrameTag::Obj);
        let kept = remove_hidden_points(&cloud, &Vector3::new(0.0, 0.0, 30.0)).unwrap();
        for p in kept.points() {
            assert!(
                (p.position.z - 1.0).abs() < 1e-12,
                "bottom-plane point survived: {p:?}"
            );
        }
        // No fabricated points: every survivor is an input point.
        assert!(kept.len() < cloud.len());
    }

    #[test]
    fn viewpoint_on_a_point_is_degenerate() {
        let cloud = SurfaceCloud::new(
            vec![
                SurfacePoint::new(Vector3::zeros(), Vector3::z()),
                SurfacePoint::new(Vector3::x(), Vector3::z()),
                SurfacePoint::new(Vector3::y(), Vector3::z()),
                SurfacePoint::new(Vector3::z(), Vector3::z()),
            ],
            FrameTag::Obj,
        );
        assert!(matches!(
            remove_hidden_points(&cloud, &Vector3::zeros()),
            Err(GeometryError::HprDegenerate)
        ));
    }
}
