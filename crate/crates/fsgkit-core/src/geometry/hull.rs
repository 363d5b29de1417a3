use std::collections::HashMap;

use super::GeometryError;
use crate::rng::mix64;

/// One hull facet: unit outward normal and offset, so every hull point `x`
/// satisfies `normal · x ≤ offset`. `vertices` index into the input slice.
#[derive(Debug, Clone)]
pub struct HullFacet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

/// Convex hull of a point set in `dim` dimensions.
#[derive(Debug, Clone)]
pub struct Hull {
    pub dim: usize,
    pub facets: Vec<HullFacet>,
    /// Sorted indices of input points that are hull vertices.
    pub vertices: Vec<usize>,
    /// d-dimensional volume (area for `dim == 2`).
    pub volume: f64,
}

impl Hull {
    /// Smallest facet offset; for a hull containing the origin this is the
    /// distance from the origin to the nearest facet.
    pub fn min_offset(&self) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset)
            .fold(f64::INFINITY, f64::min)
    }

    /// Signed distance of `p` outside the hull (≤ 0 means inside all facets).
    pub fn excess(&self, p: &[f64]) -> f64 {
        self.facets
            .iter()
            .map(|f| dot(&f.normal, p) - f.offset)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Convex hull of `points` in `dim` dimensions (supported: 2 ≤ dim ≤ 8).
///
/// Affinely dependent input yields [`GeometryError::DegenerateHull`] with
/// the affine rank. Points in special position are handled by a
/// deterministic joggle of magnitude ~1e-12 × coordinate scale, so facet
/// planes are exact to well below the 1e-9 containment tolerance.
pub fn convex_hull(points: &[Vec<f64>], dim: usize) -> Result<Hull, GeometryError> {
    assert!((2..=8).contains(&dim), "unsupported hull dimension {dim}");
    for p in points {
        assert_eq!(p.len(), dim, "point dimension mismatch");
    }
    if points.len() < dim + 1 {
        let rank = affine_rank(points, dim, 1e-9 * coord_scale(points)).0;
        return Err(GeometryError::DegenerateHull { rank, dim });
    }
    let scale = coord_scale(points);
    let (rank, simplex) = affine_rank(points, dim, 1e-9 * scale);
    if rank < dim {
        return Err(GeometryError::DegenerateHull { rank, dim });
    }
    let mut magnitude = 1e-12 * scale;
    for attempt in 0..3 {
        match build_hull(points, dim, &simplex, magnitude, attempt) {
            Ok(h) => return Ok(h),
            Err(BuildFailure) => magnitude *= 100.0,
        }
    }
    // Three joggle levels failed; the input is pathologically conditioned.
    Err(GeometryError::DegenerateHull { rank, dim })
}

fn coord_scale(points: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .flat_map(|p| p.iter().map(|c| c.abs()))
        .fold(0.0, f64::max)
        .max(1e-300)
}

/// Greedy farthest-point affine rank estimate. Returns the rank and up to
/// `dim + 1` indices of well-spread, affinely independent points.
fn affine_rank(points: &[Vec<f64>], dim: usize, tol: f64) -> (usize, Vec<usize>) {
    if points.is_empty() {
        return (0, vec![]);
    }
    let mut chosen = vec![0usize];
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < dim {
        // Residual of p - p0 after removing components along the basis.
        let mut best = (tol, usize::MAX, Vec::new());
        for (i, p) in points.iter().enumerate() {
            let mut r: Vec<f64> = p
                .iter()
                .zip(&points[chosen[0]])
                .map(|(a, b)| a - b)
                .collect();
            for b in &basis {
                let c = dot(&r, b);
                for (rj, bj) in r.iter_mut().zip(b) {
                    *rj -= c * bj;
                }
            }
            let n = dot(&r, &r).sqrt();
            if n > best.0 {
                best = (n, i, r);
            }
        }
        if best.1 == usize::MAX {
            break;
        }
        let n = best.0;
        let mut b = best.2;
        for x in &mut b {
            *x /= n;
        }
        basis.push(b);
        chosen.push(best.1);
    }
    (basis.len(), chosen)
}

struct BuildFailure;

fn joggled(points: &[Vec<f64>], dim: usize, magnitude: f64, salt: u64) -> Vec<Vec<f64>> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.iter()
                .enumerate()
                .map(|(j, &c)| {
                    let h = mix64((i * dim + j) as u64 ^ salt.wrapping_mul(0x517c_c1b7_2722_0a95));
                    let u = (h >> 11) as f64 / (1u64 << 53) as f64; // [0, 1)
                    c + magnitude * (2.0 * u - 1.0)
                })
                .collect()
        })
        .collect()
}

fn build_hull(
    points: &[Vec<f64>],
    dim: usize,
    simplex: &[usize],
    magnitude: f64,
    salt: u64,
) -> Result<Hull, BuildFailure> {
    let pts = joggled(points, dim, magnitude, salt);
    let scale = coord_scale(&pts);
    let eps_vis = 1e-11 * scale;

    // Interior reference: centroid of the initial simplex. The hull only
    // grows, so it stays strictly interior.
    let mut interior = vec![0.0; dim];
    for &i in simplex {
        for (c, x) in interior.iter_mut().zip(&pts[i]) {
            *c += x;
        }
    }
    for c in &mut interior {
        *c /= simplex.len() as f64;
    }

    let mut facets: Vec<HullFacet> = Vec::new();
    for skip in 0..simplex.len() {
        let verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &i)| i)
            .collect();
        facets.push(make_facet(&pts, dim, verts, &interior)?);
    }

    // Insert remaining points farthest-first: extreme points early keep the
    // intermediate facet count down.
    let mut order: Vec<usize> = (0..points.len()).filter(|i| !simplex.contains(i)).collect();
    let center = interior.clone();
    order.sort_by(|&a, &b| {
        let da: f64 = pts[a]
            .iter()
            .zip(&center)
            .map(|(x, c)| (x - c) * (x - c))
            .sum();
        let db: f64 = pts[b]
            .iter()
            .zip(&center)
            .map(|(x, c)| (x - c) * (x - c))
            .sum();
        db.partial_cmp(&da).unwrap().then(a.cmp(&b))
    });

    for &pi in &order {
        let p = &pts[pi];
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| dot(&f.normal, p) - f.offset > eps_vis)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue; // interior point
        }
        // Horizon ridges appear exactly once among the visible facets.
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for (fi, f) in facets.iter().enumerate() {
            if !visible[fi] {
                continue;
            }
            let vs = &f.vertices;
            for skip in 0..vs.len() {
                let mut ridge: Vec<usize> = vs
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> = ridges
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort_unstable(); // HashMap order must not leak into facet order
        let mut next: Vec<HullFacet> = Vec::with_capacity(facets.len());
        for (fi, f) in facets.drain(..).enumerate() {
            if !visible[fi] {
                next.push(f);
            }
        }
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(pi);
            next.push(make_facet(&pts, dim, verts, &interior)?);
        }
        facets = next;
    }

    let mut vertex_set: Vec<usize> = facets.iter().flat_map(|f| f.vertices.clone()).collect();
    vertex_set.sort_unstable();
    vertex_set.dedup();

    // Volume by summing simplices (interior, facet) over all facets.
    let mut volume = 0.0;
    let mut mat = vec![0.0; dim * dim];
    for f in &facets {
        for (r, &v) in f.vertices.iter().enumerate() {
            for c in 0..dim {
                mat[r * dim + c] = pts[v][c] - interior[c];
            }
        }
        volume += det_in_place(&mut mat, dim).abs();
    }
    volume /= factorial(dim);

    Ok(Hull {
        dim,
        facets,
        vertices: vertex_set,
        volume,
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Facet through `verts` (d points), oriented away from `interior`.
fn make_facet(
    pts: &[Vec<f64>],
    dim: usize,
    verts: Vec<usize>,
    interior: &[f64],
) -> Result<HullFacet, BuildFailure> {
    let base = &pts[verts[0]];
    // Generalized cross product: normal_j = (-1)^j det(E without column j)
    // where E rows are the d-1 edge vectors.
    let mut edges = vec![0.0; (dim - 1) * dim];
    let mut edge_scale = 0.0f64;
    for (r, &v) in verts[1..].iter().enumerate() {
        for c in 0..dim {
            let e = pts[v][c] - base[c];
            edges[r * dim + c] = e;
            edge_scale = edge_scale.max(e.abs());
        }
    }
    let mut normal = vec![0.0; dim];
    let mut minor = vec![0.0; (dim - 1) * (dim - 1)];
    for j in 0..dim {
        for r in 0..dim - 1 {
            let mut cc = 0;
            for c in 0..dim {
                if c != j {
                    minor[r * (dim - 1) + cc] = edges[r * dim + c];
                    cc += 1;
                }
            }
        }
        let d = det_in_place(&mut minor, dim - 1);
        normal[j] = if j % 2 == 0 { d } else { -d };
    }
    let norm = dot(&normal, &normal).sqrt();
    if !(norm > 1e-9 * edge_scale.powi(dim as i32 - 1).max(1e-300)) {
        return Err(BuildFailure);
    }
    for x in &mut normal {
        *x /= norm;
    }
    let mut offset = dot(&normal, base);
    if dot(&normal, interior) > offset {
        for x in &mut normal {
            *x = -*x;
        }
        offset = -offset;
    }
    Ok(HullFacet {
        normal,
        offset,
        vertices: verts,
    })
}

/// Determinant by Gaussian elimination with partial pivoting; clobbers `m`.
fn det_in_place(m: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[r * n + col].abs() > m[pivot * n + col].abs() {
                pivot = r;
            }
        }
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            det = -det;
        }
        let d = m[col * n + col];
        det *= d;
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            for c in col..n {
                m[r * n + c] -= f * m[col * n + c];
            }
        }
    }
    det
}
