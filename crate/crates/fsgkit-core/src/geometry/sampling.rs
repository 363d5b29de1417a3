use std::collections::HashMap;

use nalgebra::Vector3;
use rand::RngExt;

use super::{FrameTag, GeometryError, SurfaceCloud, SurfacePoint, TriangleMesh};

/// Poisson-disk radius implied by a target sample count on a surface of the
/// given area: `r = sqrt(area / (2·√3·count))`.
pub fn pds_radius(area: f64, target_count: usize) -> f64 {
    (area / (2.0 * 3.0_f64.sqrt() * target_count as f64)).sqrt()
}

/// Blue-noise surface sampling by seeded dart throwing.
///
/// Candidate points are drawn area-weighted over the triangles and accepted
/// when no previously accepted point lies within the Poisson radius; a hash
/// grid with cell size `r` makes the rejection test O(1). Sampling stops at
/// `target_count` accepted points or when the attempt budget runs out, which
/// on reasonable meshes yields a count within [0.75, 1.25]·target_count.
pub fn poisson_disk_sample(
    mesh: &TriangleMesh,
    target_count: usize,
    seed: u64,
) -> Result<SurfaceCloud, GeometryError> {
    if mesh.is_empty() {
        return Err(GeometryError::InvalidMesh("no triangles".into()));
    }
    let area = mesh.surface_area();
    if !(area > 0.0) {
        return Err(GeometryError::InvalidMesh("zero surface area".into()));
    }
    let r = pds_radius(area, target_count.max(1));
    let r2 = r * r;
    let inv_cell = 1.0 / r;

    // Cumulative areas for area-weighted triangle selection.
    let mut cumulative = Vec::with_capacity(mesh.triangles().len());
    let mut acc = 0.0;
    for k in 0..mesh.triangles().len() {
        acc += mesh.triangle_area(k);
        cumulative.push(acc);
    }

    let mut rng = crate::rng::stream(seed, 0x5045_4453);
    let mut grid: HashMap<(i64, i64, i64), Vec<usize>> = HashMap::new();
    let mut accepted: Vec<SurfacePoint> = Vec::with_capacity(target_count);
    let cell_of = |p: &Vector3<f64>| {
        (
            (p.x * inv_cell).floor() as i64,
            (p.y * inv_cell).floor() as i64,
            (p.z * inv_cell).floor() as i64,
        )
    };

    let max_attempts = 100 * target_count.max(16);
    let mut attempts = 0;
    while accepted.len() < target_count && attempts < max_attempts {
        attempts += 1;
        let pick = rng.random_range(0.0..acc);
        let tri = cumulative.partition_point(|&c| c < pick).min(
            mesh.triangles().len() - 1, // guard the acc == pick edge
        );
        let [a, b, c] = mesh.triangles()[tri];
        let (mut u, mut v) = (
            rng.random_range(0.0..1.0f64),
            rng.random_range(0.0..1.0f64),
        );
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        let p = mesh.vertices()[a]
            + u * (mesh.vertices()[b] - mesh.vertices()[a])
            + v * (mesh.vertices()[c] - mesh.vertices()[a]);
        let (cx, cy, cz) = cell_of(&p);
        let mut conflict = false;
        'scan: for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(bucket) = grid.get(&(cx + dx, cy + dy, cz + dz)) {
                        for &i in bucket {
                            if (accepted[i].position - p).norm_squared() < r2 {
                                conflict = true;
                                break 'scan;
                            }
                        }
                    }
                }
            }
        }
        if conflict {
            continue;
        }
        grid.entry((cx, cy, cz))
            .or_default()
            .push(accepted.len());
        accepted.push(SurfacePoint::new(p, mesh.triangle_normal(tri)));
    }

    Ok(SurfaceCloud::new(accepted, FrameTag::Obj))
}
