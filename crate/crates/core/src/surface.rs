//! Square complexes in the 2-skeleton of `(1/λ)Z^4`.
//!
//! A [`UnitSquare`] is a 2-cell of the (sub)cubulation: a minimal corner plus
//! an ordered pair of spanning axes. A [`CubicalSurface`] is a finite set of
//! such squares together with the result of validating it as a closed
//! 2-manifold; its area is the number of squares.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

/// A lattice vertex of `(1/λ)Z^4` in numerator form.
pub type Vertex = [i64; 4];

/// A unit edge: minimal endpoint plus the axis it runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitEdge {
    pub base: Vertex,
    pub axis: usize,
}

impl UnitEdge {
    pub fn new(base: Vertex, axis: usize) -> Self {
        assert!(axis < 4, "axis out of range");
        UnitEdge { base, axis }
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        let mut end = self.base;
        end[self.axis] += 1;
        [self.base, end]
    }
}

/// An axis-aligned unit square. Axes are 0-based with `axes.0 < axes.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitSquare {
    base: Vertex,
    axes: (usize, usize),
}

impl UnitSquare {
    /// Square spanned from `base` along two distinct axes (in either order).
    pub fn new(base: Vertex, a: usize, b: usize) -> Self {
        assert!(a < 4 && b < 4 && a != b, "square needs two distinct axes in 0..4");
        let axes = if a < b { (a, b) } else { (b, a) };
        UnitSquare { base, axes }
    }

    /// Square with the four given corners, in any order.
    ///
    /// Returns `None` if the points are not the corners of an axis-aligned unit square.
    pub fn from_corners(corners: [Vertex; 4]) -> Option<Self> {
        let mut base = corners[0];
        for c in &corners[1..] {
            for k in 0..4 {
                base[k] = base[k].min(c[k]);
            }
        }
        let varying: Vec<usize> = (0..4)
            .filter(|&k| corners.iter().any(|c| c[k] != base[k]))
            .collect();
        if varying.len() != 2 {
            return None;
        }
        let sq = UnitSquare::new(base, varying[0], varying[1]);
        let mut want = sq.corners();
        let mut got = corners;
        want.sort();
        got.sort();
        (want == got).then_some(sq)
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn axes(&self) -> (usize, usize) {
        self.axes
    }

    /// Corners in cyclic order: `base`, `base + e_i`, `base + e_i + e_j`, `base + e_j`.
    pub fn corners(&self) -> [Vertex; 4] {
        let (i, j) = self.axes;
        let b = self.base;
        let mut bi = b;
        bi[i] += 1;
        let mut bij = bi;
        bij[j] += 1;
        let mut bj = b;
        bj[j] += 1;
        [b, bi, bij, bj]
    }

    /// The four boundary edges, in the same cyclic order as [`corners`](Self::corners).
    pub fn edges(&self) -> [UnitEdge; 4] {
        let (i, j) = self.axes;
        let [b, bi, _, bj] = self.corners();
        [
            UnitEdge::new(b, i),
            UnitEdge::new(bi, j),
            UnitEdge::new(bj, i),
            UnitEdge::new(b, j),
        ]
    }

    /// The two edges of this square incident to the corner `v`.
    fn edges_at(&self, v: &Vertex) -> Option<[UnitEdge; 2]> {
        let corners = self.corners();
        let edges = self.edges();
        let k = corners.iter().position(|c| c == v)?;
        // Edge `k` joins corners k and k+1; edge `k-1` joins corners k-1 and k.
        Some([edges[k], edges[(k + 3) % 4]])
    }

    pub fn translated(&self, t: &Vertex) -> Self {
        let mut base = self.base;
        for k in 0..4 {
            base[k] += t[k];
        }
        UnitSquare { base, axes: self.axes }
    }

    /// Image under a signed permutation of the axes: coordinate `k` of the
    /// result is `signs[k] * v[perm[k]]`.
    pub fn transformed(&self, perm: [usize; 4], signs: [i64; 4]) -> Self {
        let map = |v: &Vertex| -> Vertex {
            let mut out = [0; 4];
            for k in 0..4 {
                out[k] = signs[k] * v[perm[k]];
            }
            out
        };
        let c = self.corners();
        UnitSquare::from_corners([map(&c[0]), map(&c[1]), map(&c[2]), map(&c[3])])
            .expect("signed permutations map squares to squares")
    }

    /// The `m * m` squares of the `m`-fold subdivision, in numerators over `m λ`.
    pub fn subdivide(&self, m: i64) -> impl Iterator<Item = UnitSquare> + '_ {
        let (i, j) = self.axes;
        let mut scaled = self.base;
        for c in scaled.iter_mut() {
            *c *= m;
        }
        (0..m).flat_map(move |a| {
            (0..m).map(move |b| {
                let mut base = scaled;
                base[i] += a;
                base[j] += b;
                UnitSquare { base, axes: (i, j) }
            })
        })
    }
}

/// Outcome of validating a square set as a closed surface.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceReport {
    /// Every edge of the complex lies on exactly two squares.
    pub closed: bool,
    /// Closed, and the link of every vertex is a single cycle.
    pub manifold: bool,
    pub connected: bool,
    /// Connected closed manifold with Euler characteristic 2.
    pub sphere: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub euler_characteristic: i64,
    /// Edges whose square degree is not 2, with that degree.
    pub bad_edges: Vec<(UnitEdge, usize)>,
    /// Vertices whose link is not a single cycle.
    pub bad_vertices: Vec<Vertex>,
}

/// A finite set of unit squares sharing a denominator, with validity flags.
#[derive(Clone, Debug)]
pub struct CubicalSurface {
    denominator: i64,
    squares: BTreeSet<UnitSquare>,
    report: SurfaceReport,
}

impl PartialEq for CubicalSurface {
    fn eq(&self, other: &Self) -> bool {
        self.denominator == other.denominator && self.squares == other.squares
    }
}

impl Eq for CubicalSurface {}

impl CubicalSurface {
    /// Builds and validates. Duplicate squares collapse.
    pub fn new(denominator: i64, squares: impl IntoIterator<Item = UnitSquare>) -> Self {
        assert!(denominator >= 1, "denominator must be positive");
        let squares: BTreeSet<UnitSquare> = squares.into_iter().collect();
        let report = validate_squares(&squares);
        CubicalSurface {
            denominator,
            squares,
            report,
        }
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn squares(&self) -> &BTreeSet<UnitSquare> {
        &self.squares
    }

    pub fn into_squares(self) -> BTreeSet<UnitSquare> {
        self.squares
    }

    pub fn report(&self) -> &SurfaceReport {
        &self.report
    }

    pub fn is_sphere(&self) -> bool {
        self.report.sphere
    }

    /// Number of squares, in cells of side `1/λ`.
    pub fn area(&self) -> usize {
        self.squares.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.report.euler_characteristic
    }

    pub fn contains(&self, sq: &UnitSquare) -> bool {
        self.squares.contains(sq)
    }

    pub fn translated(&self, t: &Vertex) -> CubicalSurface {
        CubicalSurface::new(self.denominator, self.squares.iter().map(|s| s.translated(t)))
    }

    pub fn transformed(&self, perm: [usize; 4], signs: [i64; 4]) -> CubicalSurface {
        CubicalSurface::new(
            self.denominator,
            self.squares.iter().map(|s| s.transformed(perm, signs)),
        )
    }

    /// Sorted distinct corners of all squares.
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.squares.iter().flat_map(|s| s.corners()).collect()
    }

    /// Componentwise minimum and maximum over all corners.
    pub fn bounding_box(&self) -> Option<(Vertex, Vertex)> {
        let mut it = self.squares.iter().flat_map(|s| s.corners());
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            for k in 0..4 {
                lo[k] = lo[k].min(c[k]);
                hi[k] = hi[k].max(c[k]);
            }
        }
        Some((lo, hi))
    }
}

/// Total number of squares.
pub fn area(surface: &CubicalSurface) -> usize {
    surface.area()
}

/// Validates a square set; see [`CubicalSurface::new`].
pub fn validate_surface(denominator: i64, squares: impl IntoIterator<Item = UnitSquare>) -> CubicalSurface {
    CubicalSurface::new(denominator, squares)
}

/// `V - E + F` over the distinct vertices, edges and squares of the set.
pub fn euler_characteristic(squares: &BTreeSet<UnitSquare>) -> i64 {
    let vertices: BTreeSet<Vertex> = squares.iter().flat_map(|s| s.corners()).collect();
    let edges: BTreeSet<UnitEdge> = squares.iter().flat_map(|s| s.edges()).collect();
    vertices.len() as i64 - edges.len() as i64 + squares.len() as i64
}

fn validate_squares(squares: &BTreeSet<UnitSquare>) -> SurfaceReport {
    let mut edge_degree: BTreeMap<UnitEdge, usize> = BTreeMap::new();
    let mut links: BTreeMap<Vertex, Vec<[UnitEdge; 2]>> = BTreeMap::new();
    for sq in squares {
        for e in sq.edges() {
            *edge_degree.entry(e).or_insert(0) += 1;
        }
        for c in sq.corners() {
            let pair = sq.edges_at(&c).expect("corner of its own square");
            links.entry(c).or_default().push(pair);
        }
    }

    let bad_edges: Vec<(UnitEdge, usize)> = edge_degree
        .iter()
        .filter(|(_, &d)| d != 2)
        .map(|(e, &d)| (*e, d))
        .collect();
    let closed = !squares.is_empty() && bad_edges.is_empty();

    let bad_vertices: Vec<Vertex> = links
        .iter()
        .filter(|(_, link)| !is_single_cycle(link))
        .map(|(v, _)| *v)
        .collect();
    let manifold = closed && bad_vertices.is_empty();

    let connected = count_components(squares) == 1;
    let euler = links.len() as i64 - edge_degree.len() as i64 + squares.len() as i64;
    SurfaceReport {
        closed,
        manifold,
        connected,
        sphere: connected && manifold && euler == 2,
        vertex_count: links.len(),
        edge_count: edge_degree.len(),
        euler_characteristic: euler,
        bad_edges,
        bad_vertices,
    }
}

/// The link of a vertex has one node per incident edge and one link edge per
/// incident square. It is a single cycle iff every node has degree 2 and the
/// graph is connected.
fn is_single_cycle(link: &[[UnitEdge; 2]]) -> bool {
    let mut adjacency: BTreeMap<UnitEdge, Vec<UnitEdge>> = BTreeMap::new();
    for [a, b] in link {
        adjacency.entry(*a).or_default().push(*b);
        adjacency.entry(*b).or_default().push(*a);
    }
    if adjacency.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = match adjacency.keys().next() {
        Some(s) => *s,
        None => return false,
    };
    let mut seen = BTreeSet::new();
    let mut stack = Vec::from([start]);
    while let Some(e) = stack.pop() {
        if seen.insert(e) {
            stack.extend(adjacency[&e].iter().copied());
        }
    }
    seen.len() == adjacency.len()
}

/// Number of connected components of the union of the squares.
pub fn count_components(squares: &BTreeSet<UnitSquare>) -> usize {
    if squares.is_empty() {
        return 0;
    }
    let list: Vec<&UnitSquare> = squares.iter().collect();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (idx, sq) in list.iter().enumerate() {
        for c in sq.corners() {
            match owner.get(&c) {
                Some(&other) => {
                    let (a, b) = (find(&mut parent, idx), find(&mut parent, other));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    owner.insert(c, idx);
                }
            }
        }
    }
    (0..list.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Result of [`homothety_factor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homothety {
    /// Largest `k` with `surface = offset + k * coarse`.
    pub factor: i64,
    pub offset: Vertex,
    /// The preimage surface, present when `factor > 1`. It keeps the
    /// denominator of the input, so it is the input shrunk by `k` about `offset`.
    pub coarse: Option<CubicalSurface>,
}

/// Largest `k >= 1` such that the surface is the image of a cubical surface
/// under `x -> offset + k x`.
///
/// The offset is forced: the minimal corner coordinate along each axis must be
/// a coarse lattice value. For a candidate `k` every square is sent to the
/// coarse square containing it; the surface qualifies iff each coarse square is
/// fully covered by its `k^2` fine squares.
pub fn homothety_factor(surface: &CubicalSurface) -> Homothety {
    let trivial = Homothety {
        factor: 1,
        offset: [0; 4],
        coarse: None,
    };
    let (lo, hi) = match surface.bounding_box() {
        Some(b) => b,
        None => return trivial,
    };
    let max_extent = (0..4).map(|k| hi[k] - lo[k]).max().unwrap_or(0);
    for k in (2..=max_extent).rev() {
        if let Some(coarse) = coarsen(surface.squares(), &lo, k) {
            if coarse.len() as i64 * k * k == surface.area() as i64 {
                return Homothety {
                    factor: k,
                    offset: lo,
                    coarse: Some(CubicalSurface::new(surface.denominator(), coarse)),
                };
            }
        }
    }
    Homothety {
        offset: lo,
        ..trivial
    }
}

fn coarsen(squares: &BTreeSet<UnitSquare>, offset: &Vertex, k: i64) -> Option<BTreeSet<UnitSquare>> {
    let mut coarse = BTreeSet::new();
    for sq in squares {
        let (i, j) = sq.axes();
        let mut base = [0; 4];
        for a in 0..4 {
            let rel = sq.base()[a] - offset[a];
            if a == i || a == j {
                base[a] = rel.div_euclid(k);
            } else if rel % k != 0 {
                return None;
            } else {
                base[a] = rel / k;
            }
        }
        coarse.insert(UnitSquare::new(base, i, j));
    }
    // Every fine square of each coarse square must be present.
    for c in &coarse {
        let (i, j) = c.axes();
        for a in 0..k {
            for b in 0..k {
                let mut base = [0; 4];
                for ax in 0..4 {
                    base[ax] = c.base()[ax] * k + offset[ax];
                }
                base[i] += a;
                base[j] += b;
                if !squares.contains(&UnitSquare::new(base, i, j)) {
                    return None;
                }
            }
        }
    }
    Some(coarse)
}

/// Boundary of the axis-aligned 3-dimensional box `[lo, lo + size]` spanned by
/// three axes, as unit squares. Useful for building test fixtures.
pub fn box_boundary(lo: Vertex, axes: [usize; 3], size: [i64; 3]) -> BTreeSet<UnitSquare> {
    let mut out = BTreeSet::new();
    for f in 0..3 {
        let (p, q) = match f {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let normal = axes[f];
        for side in [0, size[f]] {
            for a in 0..size[p] {
                for b in 0..size[q] {
                    let mut base = lo;
                    base[normal] += side;
                    base[axes[p]] += a;
                    base[axes[q]] += b;
                    out.insert(UnitSquare::new(base, axes[p], axes[q]));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> BTreeSet<UnitSquare> {
        box_boundary([0; 4], [0, 1, 2], [1, 1, 1])
    }

    #[test]
    fn cube_boundary_is_sphere() {
        let s = CubicalSurface::new(1, cube());
        assert_eq!(s.area(), 6);
        assert!(s.report().closed && s.report().manifold && s.report().connected);
        assert!(s.is_sphere());
        assert_eq!(s.euler_characteristic(), 2);
        assert_eq!(s.report().vertex_count, 8);
        assert_eq!(s.report().edge_count, 12);
    }

    #[test]
    fn open_box_is_not_closed() {
        let mut sq = cube();
        let top = *sq.iter().last().unwrap();
        sq.remove(&top);
        let s = CubicalSurface::new(1, sq);
        assert!(!s.report().closed);
        assert!(!s.is_sphere());
        assert_eq!(s.report().bad_edges.len(), 4);
        assert!(s.report().bad_edges.iter().all(|(_, d)| *d == 1));
    }

    #[test]
    fn glued_cubes_with_inner_wall_are_not_manifold() {
        let mut sq = box_boundary([0; 4], [0, 1, 2], [2, 1, 1]);
        assert_eq!(sq.len(), 10);
        sq.insert(UnitSquare::new([1, 0, 0, 0], 1, 2));
        let s = CubicalSurface::new(1, sq);
        assert!(!s.report().manifold);
        let degree3: Vec<_> = s.report().bad_edges.iter().filter(|(_, d)| *d == 3).collect();
        assert_eq!(degree3.len(), 4);
        assert!(degree3.iter().all(|(e, _)| e.base[0] == 1));
    }

    #[test]
    fn empty_surface() {
        let s = CubicalSurface::new(1, []);
        assert_eq!(s.area(), 0);
        assert!(!s.report().closed);
        assert!(!s.report().connected);
    }

    #[test]
    fn two_cubes_have_euler_four() {
        let mut sq = cube();
        sq.extend(box_boundary([5, 0, 0, 0], [0, 1, 2], [1, 1, 1]));
        let s = CubicalSurface::new(1, sq);
        assert_eq!(s.euler_characteristic(), 4);
        assert!(!s.report().connected);
        assert!(s.report().manifold);
        assert!(!s.is_sphere());
    }

    #[test]
    fn pinched_cubes_fail_the_link_test() {
        // Two cube boundaries sharing only the vertex (1,1,1,0).
        let mut sq = cube();
        sq.extend(box_boundary([1, 1, 1, 0], [0, 1, 2], [1, 1, 1]));
        let s = CubicalSurface::new(1, sq);
        assert!(s.report().closed);
        assert!(!s.report().manifold);
        assert_eq!(s.report().bad_vertices, alloc::vec![[1, 1, 1, 0]]);
    }

    #[test]
    fn corner_order_and_edges() {
        let s = UnitSquare::new([0, 0, 0, 0], 3, 1);
        assert_eq!(s.axes(), (1, 3));
        assert_eq!(s.corners(), [[0, 0, 0, 0], [0, 1, 0, 0], [0, 1, 0, 1], [0, 0, 0, 1]]);
        assert_eq!(UnitSquare::from_corners(s.corners()), Some(s));
        assert_eq!(UnitSquare::from_corners([[0; 4], [1, 0, 0, 0], [1, 1, 0, 0], [0, 2, 0, 0]]), None);
    }

    #[test]
    fn homothety_of_scaled_cube() {
        let cube = CubicalSurface::new(1, cube());
        assert_eq!(homothety_factor(&cube).factor, 1);
        let big = CubicalSurface::new(1, box_boundary([2, -1, 4, 7], [0, 1, 2], [3, 3, 3]));
        assert_eq!(big.area(), 54);
        let h = homothety_factor(&big);
        assert_eq!(h.factor, 3);
        assert_eq!(h.offset, [2, -1, 4, 7]);
        assert_eq!(h.coarse.unwrap().squares(), &box_boundary([0; 4], [0, 1, 2], [1, 1, 1]));
    }

    #[test]
    fn homothety_rejects_box_with_odd_side() {
        let b = CubicalSurface::new(1, box_boundary([0; 4], [0, 1, 3], [2, 2, 3]));
        assert_eq!(homothety_factor(&b).factor, 1);
        let b = CubicalSurface::new(1, box_boundary([0; 4], [0, 1, 3], [2, 4, 6]));
        assert_eq!(homothety_factor(&b).factor, 2);
    }
}
