//! Planar geometry: plane projection and largest inscribed shapes in a
//! convex polygon.

use nalgebra::{Vector2, Vector3};

use super::transform::any_orthonormal;
use super::{convex_hull, GeometryError, SurfacePoint};

/// A convex polygon, vertices in counter-clockwise order.
#[derive(Debug, Clone)]
pub struct Polygon2 {
    vertices: Vec<Vector2<f64>>,
}

impl Polygon2 {
    /// Convex hull of arbitrary 2d points; errors if they are affinely
    /// dependent.
    pub fn convex_hull_of(points: &[Vector2<f64>]) -> Result<Self, GeometryError> {
        let raw: Vec<Vec<f64>> = points.iter().map(|p| vec![p.x, p.y]).collect();
        let hull = convex_hull(&raw, 2)?;
        // Order hull vertices counter-clockwise around their centroid.
        let mut verts: Vec<Vector2<f64>> = hull.vertices.iter().map(|&i| points[i]).collect();
        let c = verts.iter().sum::<Vector2<f64>>() / verts.len() as f64;
        verts.sort_by(|a, b| {
            let aa = (a.y - c.y).atan2(a.x - c.x);
            let ab = (b.y - c.y).atan2(b.x - c.x);
            aa.partial_cmp(&ab).unwrap()
        });
        Ok(Self { vertices: verts })
    }

    pub fn from_ccw_vertices(vertices: Vec<Vector2<f64>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vector2<f64>] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        let mut a = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            a += p.x * q.y - q.x * p.y;
        }
        a / 2.0
    }

    /// Edge inequalities `n · p ≤ b` with unit outward normals.
    pub fn edge_inequalities(&self) -> Vec<(Vector2<f64>, f64)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % n];
                let e = q - p;
                let normal = Vector2::new(e.y, -e.x).normalize();
                (normal, normal.dot(&p))
            })
            .collect()
    }

    pub fn contains(&self, p: &Vector2<f64>, tol: f64) -> bool {
        self.edge_inequalities()
            .iter()
            .all(|(n, b)| n.dot(p) <= b + tol)
    }

    pub fn bounding_box(&self) -> (Vector2<f64>, Vector2<f64>) {
        let mut lo = Vector2::repeat(f64::INFINITY);
        let mut hi = Vector2::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }
}

/// Project oriented points onto the plane through `plane_point` with unit
/// normal `plane_normal`, returning 2d coordinates in an orthonormal basis
/// of the plane. Projection never increases pairwise distances.
///
/// `up_hint`, when given and not parallel to the normal, fixes the second
/// basis axis to the in-plane direction of the hint (useful for keeping
/// rectangle axes aligned with a finger's up direction).
pub fn project_to_plane(
    points: &[SurfacePoint],
    plane_point: &Vector3<f64>,
    plane_normal: &Vector3<f64>,
    up_hint: Option<&Vector3<f64>>,
) -> Vec<Vector2<f64>> {
    let (u, v) = plane_basis(plane_normal, up_hint);
    points
        .iter()
        .map(|p| {
            let d = p.position - plane_point;
            Vector2::new(d.dot(&u), d.dot(&v))
        })
        .collect()
}

/// Orthonormal in-plane basis (u, v) with v following `up_hint` if usable.
pub fn plane_basis(
    normal: &Vector3<f64>,
    up_hint: Option<&Vector3<f64>>,
) -> (Vector3<f64>, Vector3<f64>) {
    let v = up_hint
        .map(|up| up - up.dot(normal) * normal)
        .filter(|w| w.norm() > 1e-9)
        .map(|w| w.normalize())
        .unwrap_or_else(|| any_orthonormal(normal));
    let u = v.cross(normal);
    (u, v)
}

/// Lift a 2d plane coordinate back to 3d.
pub fn lift_from_plane(
    p: &Vector2<f64>,
    plane_point: &Vector3<f64>,
    plane_normal: &Vector3<f64>,
    up_hint: Option<&Vector3<f64>>,
) -> Vector3<f64> {
    let (u, v) = plane_basis(plane_normal, up_hint);
    plane_point + p.x * u + p.y * v
}

/// Chebyshev center and radius of a convex polygon: the largest inscribed
/// circle. Solved exactly by enumerating triples of active edge
/// constraints of the LP `max r s.t. nᵢ·c + r ≤ bᵢ`.
pub fn largest_inscribed_circle(poly: &Polygon2) -> Result<(Vector2<f64>, f64), GeometryError> {
    let cons = poly.edge_inequalities();
    if cons.len() < 3 || poly.area() <= 0.0 {
        return Err(GeometryError::DegenerateHull {
            rank: if cons.len() < 2 { 0 } else { 1 },
            dim: 2,
        });
    }
    let feasible = |c: &Vector2<f64>, r: f64| cons.iter().all(|(n, b)| n.dot(c) + r <= b + 1e-9);
    let mut best: Option<(Vector2<f64>, f64)> = None;
    let m = cons.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                // Solve [nᵢ 1; nⱼ 1; nₖ 1] (cx, cy, r)ᵀ = (bᵢ, bⱼ, bₖ)ᵀ.
                let (n1, b1) = cons[i];
                let (n2, b2) = cons[j];
                let (n3, b3) = cons[k];
                let mut a = [
                    [n1.x, n1.y, 1.0, b1],
                    [n2.x, n2.y, 1.0, b2],
                    [n3.x, n3.y, 1.0, b3],
                ];
                if let Some(sol) = solve3(&mut a) {
                    let c = Vector2::new(sol[0], sol[1]);
                    let r = sol[2];
                    if r > 0.0 && feasible(&c, r) && best.map_or(true, |(_, br)| r > br) {
                        best = Some((c, r));
                    }
                }
            }
        }
    }
    best.ok_or(GeometryError::DegenerateHull { rank: 1, dim: 2 })
}

fn solve3(a: &mut [[f64; 4]; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&r, &s| {
            a[r][col]
                .abs()
                .partial_cmp(&a[s][col].abs())
                .unwrap()
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(pivot, col);
        for r in 0..3 {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..4 {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    Some([a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]])
}

/// Largest axis-aligned rectangle inscribed in a convex polygon, as
/// `(corner_min, corner_max)`. Grid search over the x-interval with the
/// exact maximal y-extent per interval, followed by two refinement passes;
/// the result area is within 2% of the optimum.
pub fn largest_inscribed_axis_rect(
    poly: &Polygon2,
) -> Result<(Vector2<f64>, Vector2<f64>), GeometryError> {
    let cons = poly.edge_inequalities();
    if cons.len() < 3 || poly.area() <= 0.0 {
        return Err(GeometryError::DegenerateHull {
            rank: if cons.len() < 2 { 0 } else { 1 },
            dim: 2,
        });
    }
    let (lo, hi) = poly.bounding_box();

    // For a fixed x-interval, every corner constraint reduces to a bound on
    // y0 (normals with n.y < 0) or y1 (n.y > 0), using the worst x corner.
    let y_extent = |x0: f64, x1: f64| -> Option<(f64, f64)> {
        let mut y0 = f64::NEG_INFINITY;
        let mut y1 = f64::INFINITY;
        for (n, b) in &cons {
            let worst = f64::max(n.x * x0, n.x * x1);
            if n.y > 1e-12 {
                y1 = y1.min((b - worst) / n.y);
            } else if n.y < -1e-12 {
                y0 = y0.max((b - worst) / n.y);
            } else if worst > b + 1e-12 {
                return None;
            }
        }
        (y1 > y0).then_some((y0, y1))
    };

    let grid = 64usize;
    let mut window = (lo.x, hi.x, lo.x, hi.x); // (x0 lo, x0 hi, x1 lo, x1 hi)
    let mut best: Option<(f64, Vector2<f64>, Vector2<f64>)> = None;
    for _pass in 0..3 {
        let (a0, a1, b0, b1) = window;
        for i in 0..=grid {
            let x0 = a0 + (a1 - a0) * i as f64 / grid as f64;
            for j in 0..=grid {
                let x1 = b0 + (b1 - b0) * j as f64 / grid as f64;
                if x1 <= x0 {
                    continue;
                }
                if let Some((y0, y1)) = y_extent(x0, x1) {
                    let area = (x1 - x0) * (y1 - y0);
                    if best.as_ref().map_or(true, |(ba, _, _)| area > *ba) {
                        best = Some((area, Vector2::new(x0, y0), Vector2::new(x1, y1)));
                    }
                }
            }
        }
        if let Some((_, cmin, cmax)) = best {
            let sx0 = (a1 - a0) / grid as f64 * 2.0;
            let sx1 = (b1 - b0) / grid as f64 * 2.0;
            window = (
                (cmin.x - sx0).max(lo.x),
                (cmin.x + sx0).min(hi.x),
                (cmax.x - sx1).max(lo.x),
                (cmax.x + sx1).min(hi.x),
            );
        } else {
            break;
        }
    }
    best.map(|(_, cmin, cmax)| (cmin, cmax))
        .ok_or(GeometryError::DegenerateHull { rank: 1, dim: 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::RngExt;

    fn square() -> Polygon2 {
        Polygon2::from_ccw_vertices(vec![
            Vector2::new(0.0, 0.0),
            Vector2::new(1.0, 0.0),
            Vector2::new(1.0, 1.0),
            Vector2::new(0.0, 1.0),
        ])
    }

    #[test]
    fn chebyshev_center_of_unit_square() {
        let (c, r) = largest_inscribed_circle(&square()).unwrap();
        assert_relative_eq!(c.x, 0.5, epsilon = 1e-9);
        assert_relative_eq!(c.y, 0.5, epsilon = 1e-9);
        assert_relative_eq!(r, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn chebyshev_radius_of_2x1_rectangle() {
        let poly = Polygon2::from_ccw_vertices(vec![
            Vector2::new(0.0, 0.0),
            Vector2::new(2.0, 0.0),
            Vector2::new(2.0, 1.0),
            Vector2::new(0.0, 1.0),
        ]);
        let (_, r) = largest_inscribed_circle(&poly).unwrap();
        assert_relative_eq!(r, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn incircle_of_right_triangle() {
        let poly = Polygon2::from_ccw_vertices(vec![
            Vector2::new(0.0, 0.0),
            Vector2::new(1.0, 0.0),
            Vector2::new(0.0, 1.0),
        ]);
        let (_, r) = largest_inscribed_circle(&poly).unwrap();
        // r = (a + b - c) / 2 for a right triangle.
        let expect = (2.0 - 2.0_f64.sqrt()) / 2.0;
        assert_relative_eq!(r, expect, epsilon = 1e-9);
    }

    #[test]
    fn axis_rect_in_unit_square_is_the_square() {
        let (cmin, cmax) = largest_inscribed_axis_rect(&square()).unwrap();
        let area = (cmax.x - cmin.x) * (cmax.y - cmin.y);
        assert_relative_eq!(area, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn axis_rect_in_3x1_rectangle_is_itself() {
        let poly = Polygon2::from_ccw_vertices(vec![
            Vector2::new(0.0, 0.0),
            Vector2::new(3.0, 0.0),
            Vector2::new(3.0, 1.0),
            Vector2::new(0.0, 1.0),
        ]);
        let (cmin, cmax) = largest_inscribed_axis_rect(&poly).unwrap();
        let area = (cmax.x - cmin.x) * (cmax.y - cmin.y);
        assert_relative_eq!(area, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn axis_rect_in_polygonized_disk() {
        // The inscribed axis-aligned square of a unit disk has area 2.
        let verts: Vec<Vector2<f64>> = (0..64)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 64.0;
                Vector2::new(a.cos(), a.sin())
            })
            .collect();
        let poly = Polygon2::from_ccw_vertices(verts);
        let (cmin, cmax) = largest_inscribed_axis_rect(&poly).unwrap();
        let area = (cmax.x - cmin.x) * (cmax.y - cmin.y);
        assert!((area - 2.0).abs() / 2.0 < 0.02, "area {area}");
        // Result must actually lie inside the polygon.
        for corner in [
            cmin,
            cmax,
            Vector2::new(cmin.x, cmax.y),
            Vector2::new(cmax.x, cmin.y),
        ] {
            assert!(poly.contains(&corner, 1e-9));
        }
    }

    #[test]
    fn projection_is_distance_non_increasing() {
        let mut rng = crate::rng::stream(41, 0);
        let pts: Vec<SurfacePoint> = (0..40)
            .map(|_| {
                SurfacePoint::new(
                    Vector3::new(
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    ),
                    Vector3::z(),
                )
            })
            .collect();
        let n = Vector3::new(0.3, -0.5, 0.8).normalize();
        let proj = project_to_plane(&pts, &Vector3::new(0.1, 0.2, 0.3), &n, None);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d3 = (pts[i].position - pts[j].position).norm();
                let d2 = (proj[i] - proj[j]).norm();
                assert!(d2 <= d3 + 1e-12);
            }
        }
    }

    #[test]
    fn in_plane_points_keep_their_coordinates() {
        let pts = vec![
            SurfacePoint::new(Vector3::new(0.25, -0.75, 0.0), Vector3::z()),
            SurfacePoint::new(Vector3::new(-1.5, 2.0, 0.0), Vector3::z()),
        ];
        // With up_hint +y the basis is (x, y) exactly.
        let proj = project_to_plane(&pts, &Vector3::zeros(), &Vector3::z(), Some(&Vector3::y()));
        assert_relative_eq!(proj[0].x, 0.25, epsilon = 1e-12);
        assert_relative_eq!(proj[0].y, -0.75, epsilon = 1e-12);
        assert_relative_eq!(proj[1].x, -1.5, epsilon = 1e-12);
        assert_relative_eq!(proj[1].y, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn pure_offset_projects_to_origin() {
        let pts = vec![SurfacePoint::new(Vector3::new(0.0, 0.0, 5.0), Vector3::z())];
        let proj = project_to_plane(&pts, &Vector3::zeros(), &Vector3::z(), None);
        assert!(proj[0].norm() < 1e-12);
    }

    #[test]
    fn degenerate_polygon_is_an_error() {
        let poly = Polygon2::from_ccw_vertices(vec![
            Vector2::new(0.0, 0.0),
            Vector2::new(1.0, 0.0),
            Vector2::new(2.0, 0.0),
        ]);
        assert!(largest_inscribed_circle(&poly).is_err());
        assert!(largest_inscribed_axis_rect(&poly).is_err());
    }
}
