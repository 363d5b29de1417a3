use nalgebra::Vector3;

use super::{GeometryError, SurfaceCloud};

/// Spatial index over the positions of a [`SurfaceCloud`].
///
/// Queries are exact (they agree with a linear scan) and reentrant;
/// the index never mutates after construction. Distance ties resolve
/// to the lowest point index so results are deterministic.
#[derive(Debug, Clone)]
pub struct NeighborIndex {
    points: Vec<Vector3<f64>>,
    // Implicit kd-tree: `order` is a permutation of point indices arranged
    // by recursive median splits along the widest axis of each cell.
    order: Vec<u32>,
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, Copy)]
struct Node {
    axis: u8,
    split: f64,
    // Children index into `nodes`; u32::MAX marks a leaf covering
    // order[start..end].
    left: u32,
    right: u32,
    start: u32,
    end: u32,
}

const LEAF_SIZE: usize = 12;

/// Build a [`NeighborIndex`]; errors on an empty cloud.
pub fn build_kdtree(cloud: &SurfaceCloud) -> Result<NeighborIndex, GeometryError> {
    if cloud.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    Ok(NeighborIndex::new(
        cloud.points().iter().map(|p| p.position).collect(),
    ))
}

impl NeighborIndex {
    pub fn new(points: Vec<Vector3<f64>>) -> Self {
        assert!(!points.is_empty(), "NeighborIndex needs at least one point");
        let mut order: Vec<u32> = (0..points.len() as u32).collect();
        let mut nodes = Vec::new();
        build(&points, &mut order, 0, points.len(), &mut nodes);
        Self {
            points,
            order,
            nodes,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index and distance of the nearest point to `query`.
    pub fn nearest(&self, query: &Vector3<f64>) -> (usize, f64) {
        let mut best = (usize::MAX, f64::INFINITY);
        self.nearest_rec(0, query, &mut best);
        (best.0, best.1.sqrt())
    }

    /// All `(index, distance)` pairs within `radius` of `query`,
    /// sorted by index.
    pub fn within_radius(&self, query: &Vector3<f64>, radius: f64) -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        self.radius_rec(0, query, radius, radius * radius, &mut out);
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }

    /// The `k` nearest points (index, distance), closest first.
    pub fn knn(&self, query: &Vector3<f64>, k: usize) -> Vec<(usize, f64)> {
        if k == 0 {
            return Vec::new();
        }
        // Max-heap on (distance², index) keeps the current k best.
        let mut heap: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
        self.knn_rec(0, query, k, &mut heap);
        heap.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        heap.into_iter().map(|(d2, i)| (i, d2.sqrt())).collect()
    }

    fn nearest_rec(&self, node: usize, q: &Vector3<f64>, best: &mut (usize, f64)) {
        let n = self.nodes[node];
        if n.left == u32::MAX {
            for &i in &self.order[n.start as usize..n.end as usize] {
                let d2 = (self.points[i as usize] - q).norm_squared();
                if d2 < best.1 || (d2 == best.1 && (i as usize) < best.0) {
                    *best = (i as usize, d2);
                }
            }
            return;
        }
        let delta = q[n.axis as usize] - n.split;
        let (near, far) = if delta <= 0.0 {
            (n.left, n.right)
        } else {
            (n.right, n.left)
        };
        self.nearest_rec(near as usize, q, best);
        if delta * delta <= best.1 {
            self.nearest_rec(far as usize, q, best);
        }
    }

    fn radius_rec(
        &self,
        node: usize,
        q: &Vector3<f64>,
        r: f64,
        r2: f64,
        out: &mut Vec<(usize, f64)>,
    ) {
        let n = self.nodes[node];
        if n.left == u32::MAX {
            for &i in &self.order[n.start as usize..n.end as usize] {
                let d2 = (self.points[i as usize] - q).norm_squared();
                if d2 <= r2 {
                    out.push((i as usize, d2.sqrt()));
                }
            }
            return;
        }
        let delta = q[n.axis as usize] - n.split;
        if delta <= r {
            self.radius_rec(n.left as usize, q, r, r2, out);
        }
        if -delta <= r {
            self.radius_rec(n.right as usize, q, r, r2, out);
        }
    }

    fn knn_rec(&self, node: usize, q: &Vector3<f64>, k: usize, heap: &mut Vec<(f64, usize)>) {
        let n = self.nodes[node];
        if n.left == u32::MAX {
            for &i in &self.order[n.start as usize..n.end as usize] {
                let d2 = (self.points[i as usize] - q).norm_squared();
                let entry = (d2, i as usize);
                if heap.len() < k {
                    heap.push(entry);
                    heap.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
                } else if entry < heap[0] {
                    heap[0] = entry;
                    heap.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
                }
            }
            return;
        }
        let delta = q[n.axis as usize] - n.split;
        let (near, far) = if delta <= 0.0 {
            (n.left, n.right)
        } else {
            (n.right, n.left)
        };
        self.knn_rec(near as usize, q, k, heap);
        if heap.len() < k || delta * delta <= heap[0].0 {
            self.knn_rec(far as usize, q, k, heap);
        }
    }
}

fn build(
    points: &[Vector3<f64>],
    order: &mut [u32],
    start: usize,
    end: usize,
    nodes: &mut Vec<Node>,
) -> u32 {
    let id = nodes.len() as u32;
    nodes.push(Node {
        axis: 0,
        split: 0.0,
        left: u32::MAX,
        right: u32::MAX,
        start: start as u32,
        end: end as u32,
    });
    if end - start <= LEAF_SIZE {
        return id;
    }
    let slice = &mut order[start..end];
    let mut lo = Vector3::repeat(f64::INFINITY);
    let mut hi = Vector3::repeat(f64::NEG_INFINITY);
    for &i in slice.iter() {
        lo = lo.inf(&points[i as usize]);
        hi = hi.sup(&points[i as usize]);
    }
    let extent = hi - lo;
    let axis = if extent.x >= extent.y && extent.x >= extent.z {
        0
    } else if extent.y >= extent.z {
        1
    } else {
        2
    };
    if extent[axis] <= 0.0 {
        return id; // all coincident along every axis: keep as leaf
    }
    let mid = slice.len() / 2;
    slice.select_nth_unstable_by(mid, |&a, &b| {
        points[a as usize][axis]
            .partial_cmp(&points[b as usize][axis])
            .unwrap()
            .then(a.cmp(&b))
    });
    let split = points[slice[mid] as usize][axis];
    let left = build(points, order, start, start + mid, nodes);
    let right = build(points, order, start + mid, end, nodes);
    nodes[id as usize].axis = axis as u8;
    nodes[id as usize].split = split;
    nodes[id as usize].left = left;
    nodes[id as usize].right = right;
    id
}
