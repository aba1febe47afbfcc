//! Projection diagrams of lattice 1-knots and the invariants read off them.
//!
//! The knot is projected along `(p/q, r/q, 1)`; with `ε = 1/s` the default
//! direction `(ε², ε, 1)` is `p = 1, r = s, q = s²`. A point `(x, y, z)` lands
//! at `(q x - p z, q y - r z)`, an integer point, so every genericity and
//! crossing test is an exact `i128` orientation test. Over and under are
//! decided by `z`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::lattice::{Lattice1Knot, ScaledPoint};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("no generic projection found after {attempts} attempts")]
    DegenerateProjection { attempts: u32 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("determinant overflowed i128")]
    Overflow,
}

/// Projection direction `(p/q, r/q, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Direction {
    pub p: i64,
    pub r: i64,
    pub q: i64,
}

impl Direction {
    /// `(ε², ε, 1)` with `ε = 1/s`.
    pub fn epsilon(s: i64) -> Direction {
        Direction { p: 1, r: s, q: s * s }
    }

    fn image(&self, v: &ScaledPoint) -> [i128; 2] {
        let (x, y, z) = (v.x() as i128, v.y() as i128, v.z() as i128);
        let q = self.q as i128;
        [q * x - self.p as i128 * z, q * y - self.r as i128 * z]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    /// Arc ending at this crossing.
    pub under_in: usize,
    /// Arc starting at this crossing.
    pub under_out: usize,
    pub sign: i8,
}

/// One passage through a crossing while traversing the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussEntry {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub direction: Direction,
    pub crossings: Vec<Crossing>,
    /// Number of arcs (maximal over-strands); 1 for a crossingless diagram.
    pub arcs: usize,
    pub gauss: Vec<GaussEntry>,
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Rows `2 over - under_in - under_out`, one per crossing, over the arcs.
    pub fn coloring_matrix(&self) -> Vec<Vec<i64>> {
        self.crossings
            .iter()
            .map(|c| {
                let mut row = vec![0i64; self.arcs];
                row[c.over] += 2;
                row[c.under_in] -= 1;
                row[c.under_out] -= 1;
                row
            })
            .collect()
    }
}

fn orient(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> i128 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [i128; 2], b: [i128; 2], c: [i128; 2]) -> bool {
    orient(a, b, c) == 0
        && c[0] >= a[0].min(b[0])
        && c[0] <= a[0].max(b[0])
        && c[1] >= a[1].min(b[1])
        && c[1] <= a[1].max(b[1])
}

/// Exact fraction `num / den` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        if den < 0 {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    fn cmp(&self, other: &Frac) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// A crossing point found on segment pairs before arcs are assigned.
struct RawCrossing {
    over_seg: usize,
    under_seg: usize,
    t_over: Frac,
    t_under: Frac,
    sign: i8,
}

/// Projects `knot` along `direction`, or `None` if the projection is not generic.
pub fn project_along(knot: &Lattice1Knot, direction: Direction) -> Option<Diagram> {
    let verts = knot.vertices();
    let n = verts.len();
    let img: Vec<[i128; 2]> = verts.iter().map(|v| direction.image(v)).collect();
    let seg = |i: usize| (img[i], img[(i + 1) % n]);

    let mut sorted = img.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }

    let mut raw = Vec::new();
    for i in 0..n {
        let (a, b) = seg(i);
        for j in i + 1..n {
            let (c, d) = seg(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Images share one endpoint; they must not fold back onto each other.
                let (shared, other_i, other_j) = if j == i + 1 { (b, a, d) } else { (a, b, c) };
                if orient(shared, other_i, other_j) == 0
                    && (other_i[0] - shared[0]) * (other_j[0] - shared[0]) + (other_i[1] - shared[1]) * (other_j[1] - shared[1]) > 0
                {
                    return None;
                }
                continue;
            }
            if on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b) {
                return None;
            }
            let o1 = orient(a, b, c);
            let o2 = orient(a, b, d);
            let o3 = orient(c, d, a);
            let o4 = orient(c, d, b);
            if (o1 > 0) == (o2 > 0) || (o3 > 0) == (o4 > 0) {
                continue;
            }
            let ti = Frac::new(o3, o3 - o4);
            let tj = Frac::new(o1, o1 - o2);
            // Heights at the crossing, scaled by the positive denominators.
            let (zi0, zi1) = (verts[i].z() as i128, verts[(i + 1) % n].z() as i128);
            let (zj0, zj1) = (verts[j].z() as i128, verts[(j + 1) % n].z() as i128);
            let hi = Frac::new(zi0 * ti.den + (zi1 - zi0) * ti.num, ti.den);
            let hj = Frac::new(zj0 * tj.den + (zj1 - zj0) * tj.num, tj.den);
            let dir_i = [b[0] - a[0], b[1] - a[1]];
            let dir_j = [d[0] - c[0], d[1] - c[1]];
            let (over_seg, under_seg, t_over, t_under, od, ud) = match hi.cmp(&hj) {
                Ordering::Greater => (i, j, ti, tj, dir_i, dir_j),
                Ordering::Less => (j, i, tj, ti, dir_j, dir_i),
                Ordering::Equal => return None,
            };
            let cross = od[0] * ud[1] - od[1] * ud[0];
            raw.push(RawCrossing {
                over_seg,
                under_seg,
                t_over,
                t_under,
                sign: if cross > 0 { 1 } else { -1 },
            });
        }
    }

    // Passages along each segment, ordered by parameter.
    let mut per_seg: Vec<Vec<(Frac, usize, bool)>> = vec![Vec::new(); n];
    for (k, c) in raw.iter().enumerate() {
        per_seg[c.over_seg].push((c.t_over, k, true));
        per_seg[c.under_seg].push((c.t_under, k, false));
    }
    let mut gauss = Vec::with_capacity(2 * raw.len());
    for list in per_seg.iter_mut() {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        for w in list.windows(2) {
            if w[0].0.cmp(&w[1].0) == Ordering::Equal {
                // Three strands through one point.
                return None;
            }
        }
        gauss.extend(list.iter().map(|&(_, crossing, over)| GaussEntry { crossing, over }));
    }

    if raw.is_empty() {
        return Some(Diagram {
            direction,
            crossings: Vec::new(),
            arcs: 1,
            gauss,
        });
    }

    // Renumber crossings by first appearance, then walk from the first under passage.
    let mut order = BTreeMap::new();
    for g in &gauss {
        let next = order.len();
        order.entry(g.crossing).or_insert(next);
    }
    for g in gauss.iter_mut() {
        g.crossing = order[&g.crossing];
    }
    let mut renumbered: Vec<Option<&RawCrossing>> = vec![None; raw.len()];
    for (old, &new) in &order {
        renumbered[new] = Some(&raw[*old]);
    }

    let m = gauss.len();
    let start = gauss.iter().position(|g| !g.over).expect("every crossing has an under passage");
    let arcs = raw.len();
    let mut over_arc = vec![0usize; arcs];
    let mut under_in = vec![0usize; arcs];
    let mut under_out = vec![0usize; arcs];
    // The arc leaving the first under passage is arc 0; the one entering it is the last.
    under_in[gauss[start].crossing] = arcs - 1;
    under_out[gauss[start].crossing] = 0;
    let mut arc = 0;
    for step in 1..m {
        let g = gauss[(start + step) % m];
        if g.over {
            over_arc[g.crossing] = arc;
        } else {
            under_in[g.crossing] = arc;
            arc += 1;
            under_out[g.crossing] = arc;
        }
    }
    debug_assert_eq!(arc, arcs - 1);

    let crossings = (0..arcs)
        .map(|k| Crossing {
            over: over_arc[k],
            under_in: under_in[k],
            under_out: under_out[k],
            sign: renumbered[k].expect("renumbered").sign,
        })
        .collect();
    Some(Diagram {
        direction,
        crossings,
        arcs,
        gauss,
    })
}

/// Retry schedule length for [`project_diagram`].
pub const PROJECTION_ATTEMPTS: u32 = 16;

/// Projects along `(ε², ε, 1)` with `ε = 1/(8D)`, halving `ε` until generic.
pub fn project_diagram(knot: &Lattice1Knot) -> Result<Diagram, InvariantError> {
    let mut s = 8 * knot.diameter().max(1);
    for _ in 0..PROJECTION_ATTEMPTS {
        if let Some(d) = project_along(knot, Direction::epsilon(s)) {
            return Ok(d);
        }
        match s.checked_mul(2) {
            Some(next) if next.checked_mul(next).is_some() => s = next,
            _ => break,
        }
    }
    Err(InvariantError::DegenerateProjection {
        attempts: PROJECTION_ATTEMPTS,
    })
}

fn is_odd_prime(p: u64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Number of Fox `p`-colorings of the diagram (saturating at `u128::MAX`).
pub fn fox_colorings(diagram: &Diagram, p: u64) -> Result<u128, InvariantError> {
    if !is_odd_prime(p) {
        return Err(InvariantError::NotOddPrime(p));
    }
    let k = linalg::nullity_mod_p(&diagram.coloring_matrix(), diagram.arcs, p);
    Ok((p as u128).saturating_pow(k as u32))
}

/// `|Δ(-1)|`: the absolute value of a first minor of the coloring matrix.
pub fn determinant(diagram: &Diagram) -> Result<u128, InvariantError> {
    let n = diagram.crossings.len();
    if n == 0 {
        return Ok(1);
    }
    let minor: Vec<Vec<i64>> = diagram.coloring_matrix()[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    linalg::determinant(&minor)
        .map(|d| d.unsigned_abs())
        .ok_or(InvariantError::Overflow)
}

/// Determinant and Fox counts for `p = 3, 5, 7` of one projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotSummary {
    pub crossings: usize,
    pub determinant: u128,
    pub fox3: u128,
    pub fox5: u128,
    pub fox7: u128,
}

pub fn summarize(knot: &Lattice1Knot) -> Result<KnotSummary, InvariantError> {
    let d = project_diagram(knot)?;
    Ok(KnotSummary {
        crossings: d.crossing_count(),
        determinant: determinant(&d)?,
        fox3: fox_colorings(&d, 3)?,
        fox5: fox_colorings(&d, 5)?,
        fox7: fox_colorings(&d, 7)?,
    })
}

/// A run of at least three vertices at height 2 crossing over a height-1 strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingStep {
    /// Indices of the consecutive height-2 vertices.
    pub run: Vec<usize>,
    /// Height-1 vertices just before and after the run.
    pub flank: (usize, usize),
    /// Three consecutive height-1 vertices, the middle one directly below the run.
    pub under: [usize; 3],
    /// The maximal height-1 strand containing `under`, when longer than three.
    pub under_strand: Vec<usize>,
}

impl CrossingStep {
    /// All vertex indices of the step, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.run.clone();
        v.push(self.flank.0);
        v.push(self.flank.1);
        v.extend_from_slice(&self.under);
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }
}

/// Maximal runs at height 2 flanked by height-1 vertices, each paired with
/// every three-vertex height-1 strand passing transversally beneath an
/// interior vertex of the run.
pub fn crossing_steps(knot: &Lattice1Knot) -> Vec<CrossingStep> {
    let v = knot.vertices();
    let n = v.len();
    let z = |i: usize| v[i % n].z();
    let mut out = Vec::new();
    if (0..n).all(|i| z(i) == 2) {
        return out;
    }
    let start = (0..n).find(|&i| z(i) != 2).expect("some vertex is below 2");
    let mut i = 0;
    while i < n {
        let a = (start + i) % n;
        if z(a) != 2 {
            i += 1;
            continue;
        }
        let mut len = 0;
        while z(a + len) == 2 {
            len += 1;
        }
        i += len;
        let before = (a + n - 1) % n;
        let after = (a + len) % n;
        if len < 3 || z(before) != 1 || z(after) != 1 {
            continue;
        }
        let run: Vec<usize> = (0..len).map(|k| (a + k) % n).collect();
        let mut found: Vec<[usize; 3]> = Vec::new();
        for &top in &run[1..len - 1] {
            for mid in 0..n {
                let below = &v[mid];
                if below.z() != 1 || below.x() != v[top].x() || below.y() != v[top].y() {
                    continue;
                }
                let prev = (mid + n - 1) % n;
                let next = (mid + 1) % n;
                if z(prev) != 1 || z(next) != 1 {
                    continue;
                }
                // The under strand must cross the run, not run alongside it.
                let run_axis = horizontal_axis(&v[(top + n - 1) % n], &v[top]);
                let under_axis = horizontal_axis(&v[prev], &v[mid]);
                let under_axis2 = horizontal_axis(&v[mid], &v[next]);
                if under_axis.is_none() || under_axis != under_axis2 || under_axis == run_axis {
                    continue;
                }
                let run_axis2 = horizontal_axis(&v[top], &v[(top + 1) % n]);
                if run_axis != run_axis2 {
                    continue;
                }
                found.push([prev, mid, next]);
            }
        }
        for under in found {
            let strand = height_one_strand(knot, under[1]);
            out.push(CrossingStep {
                run: run.clone(),
                flank: (before, after),
                under,
                under_strand: if strand.len() > 3 { strand } else { Vec::new() },
            });
        }
    }
    out.sort_by(|a, b| a.run.cmp(&b.run).then(a.under.cmp(&b.under)));
    out
}

fn horizontal_axis(a: &ScaledPoint, b: &ScaledPoint) -> Option<usize> {
    if a.z() != b.z() {
        return None;
    }
    if a.x() != b.x() {
        Some(0)
    } else {
        Some(1)
    }
}

/// Maximal run of consecutive height-1 vertices containing `mid`, in traversal order.
fn height_one_strand(knot: &Lattice1Knot, mid: usize) -> Vec<usize> {
    let v = knot.vertices();
    let n = v.len();
    let mut lo = 0;
    while lo < n - 1 && v[(mid + n - lo - 1) % n].z() == 1 {
        lo += 1;
    }
    let mut hi = 0;
    while hi < n - 1 - lo && v[(mid + hi + 1) % n].z() == 1 {
        hi += 1;
    }
    (0..=lo + hi).map(|k| (mid + n - lo + k) % n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Lattice1Knot {
        Lattice1Knot::from_xyz(&[[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]).unwrap()
    }

    /// A loop at height 1 with one segment lifted to height 2 over another
    /// strand of the same loop: two crossings of opposite sign.
    fn overpass() -> Lattice1Knot {
        Lattice1Knot::from_xyz(&[
            [0, 0, 0],
            [0, 1, 0],
            [0, 2, 0],
            [1, 2, 0],
            [2, 2, 0],
            [2, 1, 0],
            [2, 0, 0],
            [3, 0, 0],
            [3, 0, 1],
            [2, 0, 1],
            [1, 0, 1],
            [1, 1, 1],
            [1, 2, 1],
            [1, 3, 1],
            [0, 3, 1],
            [-1, 3, 1],
            [-1, 3, 0],
            [-1, 2, 0],
            [-1, 1, 0],
            [-1, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn planar_square_has_no_crossings() {
        let d = project_diagram(&square()).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arcs, 1);
        assert_eq!(determinant(&d).unwrap(), 1);
        assert_eq!(fox_colorings(&d, 3).unwrap(), 3);
        assert!(crossing_steps(&square()).is_empty());
    }

    #[test]
    fn overpass_gives_two_opposite_crossings() {
        let d = project_diagram(&overpass()).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.writhe(), 0);
        assert_eq!(determinant(&d).unwrap(), 1);
        assert_eq!(fox_colorings(&d, 3).unwrap(), 3);
    }

    #[test]
    fn prime_checks() {
        let d = project_diagram(&square()).unwrap();
        assert_eq!(fox_colorings(&d, 2), Err(InvariantError::NotOddPrime(2)));
        assert_eq!(fox_colorings(&d, 9), Err(InvariantError::NotOddPrime(9)));
        assert!(is_odd_prime(7) && is_odd_prime(3) && !is_odd_prime(1) && !is_odd_prime(15));
    }

    #[test]
    fn degenerate_direction_is_rejected() {
        // Straight down: vertices of a vertical edge collide.
        let knot = overpass();
        assert!(project_along(&knot, Direction { p: 0, r: 0, q: 1 }).is_none());
    }
}
