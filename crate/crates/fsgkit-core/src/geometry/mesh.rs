use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use nalgebra::Vector3;

use super::GeometryError;

/// Indexed triangle mesh with per-triangle unit normals (from winding).
///
/// Construction rejects out-of-range indices and zero-area triangles.
#[derive(Debug, Clone)]
pub struct TriangleMesh {
    vertices: Vec<Vector3<f64>>,
    triangles: Vec<[usize; 3]>,
    normals: Vec<Vector3<f64>>,
    areas: Vec<f64>,
}

const MIN_TRIANGLE_AREA: f64 = 1e-16;

impl TriangleMesh {
    pub fn new(
        vertices: Vec<Vector3<f64>>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, GeometryError> {
        let mut normals = Vec::with_capacity(triangles.len());
        let mut areas = Vec::with_capacity(triangles.len());
        for (k, t) in triangles.iter().enumerate() {
            if t.iter().any(|&i| i >= vertices.len()) {
                return Err(GeometryError::InvalidMesh(format!(
                    "triangle {k} references a vertex beyond {}",
                    vertices.len()
                )));
            }
            let cross =
                (vertices[t[1]] - vertices[t[0]]).cross(&(vertices[t[2]] - vertices[t[0]]));
            let area = 0.5 * cross.norm();
            if area <= MIN_TRIANGLE_AREA {
                return Err(GeometryError::InvalidMesh(format!(
                    "triangle {k} has zero area"
                )));
            }
            normals.push(cross.normalize());
            areas.push(area);
        }
        Ok(Self {
            vertices,
            triangles,
            normals,
            areas,
        })
    }

    pub fn vertices(&self) -> &[Vector3<f64>] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_normal(&self, k: usize) -> Vector3<f64> {
        self.normals[k]
    }

    pub fn triangle_area(&self, k: usize) -> f64 {
        self.areas[k]
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn surface_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    /// Area-weighted centroid of the surface.
    pub fn centroid(&self) -> Vector3<f64> {
        let mut acc = Vector3::zeros();
        let mut total = 0.0;
        for (t, &a) in self.triangles.iter().zip(&self.areas) {
            let c = (self.vertices[t[0]] + self.vertices[t[1]] + self.vertices[t[2]]) / 3.0;
            acc += a * c;
            total += a;
        }
        if total > 0.0 {
            acc / total
        } else {
            acc
        }
    }

    pub fn bounding_box(&self) -> (Vector3<f64>, Vector3<f64>) {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    /// Diagonal length of the axis-aligned bounding box.
    pub fn bbox_diagonal(&self) -> f64 {
        if self.vertices.is_empty() {
            return 0.0;
        }
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Uniform scale about the origin.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v * s).collect(),
            triangles: self.triangles.clone(),
            normals: self.normals.clone(),
            areas: self.areas.iter().map(|a| a * s * s).collect(),
        }
    }

    pub fn translated(&self, d: Vector3<f64>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v + d).collect(),
            triangles: self.triangles.clone(),
            normals: self.normals.clone(),
            areas: self.areas.clone(),
        }
    }

    /// Load a mesh from an OBJ (`v`/`f`, polygons fan-triangulated) or a
    /// binary STL file, chosen by extension.
    pub fn load(path: &Path) -> Result<Self, GeometryError> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("obj") => Self::load_obj(path),
            Some("stl") => Self::load_stl(path),
            other => Err(GeometryError::Parse {
                path: path.display().to_string(),
                msg: format!("unsupported mesh extension {other:?}"),
            }),
        }
    }

    pub fn load_obj(path: &Path) -> Result<Self, GeometryError> {
        let text = std::fs::read_to_string(path)?;
        let perr = |msg: String| GeometryError::Parse {
            path: path.display().to_string(),
            msg,
        };
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let mut it = line.split_whitespace();
            match it.next() {
                Some("v") => {
                    let mut coord = [0.0; 3];
                    for c in &mut coord {
                        *c = it
                            .next()
                            .and_then(|s| s.parse().ok())
                            .ok_or_else(|| perr(format!("line {}: bad vertex", ln + 1)))?;
                    }
                    vertices.push(Vector3::new(coord[0], coord[1], coord[2]));
                }
                Some("f") => {
                    let idx: Vec<usize> = it
                        .map(|tok| {
                            let first = tok.split('/').next().unwrap_or("");
                            first
                                .parse::<i64>()
                                .ok()
                                .and_then(|i| {
                                    // OBJ indices are 1-based; negatives count from the end.
                                    let n = vertices.len() as i64;
                                    let j = if i < 0 { n + i } else { i - 1 };
                                    (j >= 0).then_some(j as usize)
                                })
                                .ok_or_else(|| perr(format!("line {}: bad face index", ln + 1)))
                        })
                        .collect::<Result<_, _>>()?;
                    if idx.len() < 3 {
                        return Err(perr(format!("line {}: face with <3 vertices", ln + 1)));
                    }
                    for k in 1..idx.len() - 1 {
                        triangles.push([idx[0], idx[k], idx[k + 1]]);
                    }
                }
                _ => {}
            }
        }
        Self::new(vertices, triangles)
    }

    pub fn load_stl(path: &Path) -> Result<Self, GeometryError> {
        let mut buf = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut buf)?;
        let perr = |msg: &str| GeometryError::Parse {
            path: path.display().to_string(),
            msg: msg.to_string(),
        };
        if buf.len() < 84 {
            return Err(perr("file shorter than binary STL header"));
        }
        let count = u32::from_le_bytes(buf[80..84].try_into().unwrap()) as usize;
        if buf.len() < 84 + count * 50 {
            return Err(perr("truncated binary STL body"));
        }
        let f32_at = |off: usize| f32::from_le_bytes(buf[off..off + 4].try_into().unwrap()) as f64;
        let mut vertices = Vec::new();
        let mut triangles = Vec::with_capacity(count);
        let mut dedup: HashMap<[u64; 3], usize> = HashMap::new();
        for k in 0..count {
            let base = 84 + k * 50 + 12; // skip the stored facet normal
            let mut tri = [0usize; 3];
            for (vi, slot) in tri.iter_mut().enumerate() {
                let off = base + vi * 12;
                let v = Vector3::new(f32_at(off), f32_at(off + 4), f32_at(off + 8));
                let key = [v.x.to_bits(), v.y.to_bits(), v.z.to_bits()];
                *slot = *dedup.entry(key).or_insert_with(|| {
                    vertices.push(v);
                    vertices.len() - 1
                });
            }
            triangles.push(tri);
        }
        Self::new(vertices, triangles)
    }
}

/// Axis-aligned box as a 12-triangle mesh, for tests and toy assets.
pub fn box_mesh(lo: Vector3<f64>, hi: Vector3<f64>) -> TriangleMesh {
    let v = |x: f64, y: f64, z: f64| Vector3::new(x, y, z);
    let verts = vec![
        v(lo.x, lo.y, lo.z),
        v(hi.x, lo.y, lo.z),
        v(hi.x, hi.y, lo.z),
        v(lo.x, hi.y, lo.z),
        v(lo.x, lo.y, hi.z),
        v(hi.x, lo.y, hi.z),
        v(hi.x, hi.y, hi.z),
        v(lo.x, hi.y, hi.z),
    ];
    // Outward winding per face.
    let tris = vec![
        [0, 2, 1],
        [0, 3, 2], // z = lo
        [4, 5, 6],
        [4, 6, 7], // z = hi
        [0, 1, 5],
        [0, 5, 4], // y = lo
        [3, 7, 6],
        [3, 6, 2], // y = hi
        [0, 4, 7],
        [0, 7, 3], // x = lo
        [1, 2, 6],
        [1, 6, 5], // x = hi
    ];
    TriangleMesh::new(verts, tris).expect("box mesh is valid")
}

/// Icosphere: subdivided icosahedron scaled to `radius`, for tests.
pub fn icosphere(radius: f64, subdivisions: u32) -> TriangleMesh {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut verts: Vec<Vector3<f64>> = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
    .collect();
    let mut tris: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..subdivisions {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next = Vec::with_capacity(tris.len() * 4);
        for t in &tris {
            let mut mid = [0usize; 3];
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                let key = (a.min(b), a.max(b));
                mid[e] = *midpoints.entry(key).or_insert_with(|| {
                    verts.push(((verts[a] + verts[b]) / 2.0).normalize());
                    verts.len() - 1
                });
            }
            next.push([t[0], mid[0], mid[2]]);
            next.push([t[1], mid[1], mid[0]]);
            next.push([t[2], mid[2], mid[1]]);
            next.push([mid[0], mid[1], mid[2]]);
        }
        tris = next;
    }
    for v in &mut verts {
        *v *= radius;
    }
    TriangleMesh::new(verts, tris).expect("icosphere is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_mesh_normals_point_outward() {
        let m = box_mesh(Vector3::new(-1.0, -1.0, -1.0), Vector3::new(1.0, 1.0, 1.0));
        assert!((m.surface_area() - 24.0).abs() < 1e-12);
        for (k, t) in m.triangles().iter().enumerate() {
            let c = (m.vertices()[t[0]] + m.vertices()[t[1]] + m.vertices()[t[2]]) / 3.0;
            assert!(m.triangle_normal(k).dot(&c) > 0.0, "triangle {k} inward");
        }
    }

    #[test]
    fn icosphere_area_approaches_sphere() {
        let m = icosphere(1.0, 3);
        let exact = 4.0 * std::f64::consts::PI;
        assert!((m.surface_area() - exact).abs() / exact < 0.01);
        assert!((m.centroid().norm()) < 1e-9);
    }

    #[test]
    fn rejects_bad_indices_and_degenerate_triangles() {
        let verts = vec![Vector3::zeros(), Vector3::x(), Vector3::y()];
        assert!(TriangleMesh::new(verts.clone(), vec![[0, 1, 3]]).is_err());
        assert!(TriangleMesh::new(verts, vec![[0, 1, 1]]).is_err());
    }

    #[test]
    fn obj_round_trip_via_text() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tri.obj");
        std::fs::write(&path, "v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 3//1\n").unwrap();
        let m = TriangleMesh::load(&path).unwrap();
        assert_eq!(m.vertices().len(), 3);
        assert_eq!(m.triangles().len(), 1);
        assert!((m.triangle_normal(0) - Vector3::z()).norm() < 1e-12);
    }

    #[test]
    fn stl_round_trip_via_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tri.stl");
        let mut buf = vec![0u8; 80];
        buf.extend_from_slice(&1u32.to_le_bytes());
        for f in [0.0f32, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0] {
            buf.extend_from_slice(&f.to_le_bytes());
        }
        buf.extend_from_slice(&0u16.to_le_bytes());
        std::fs::write(&path, buf).unwrap();
        let m = TriangleMesh::load(&path).unwrap();
        assert_eq!(m.triangles().len(), 1);
        assert_eq!(m.vertices().len(), 3);
    }
}
