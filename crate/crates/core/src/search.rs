//! Constrained enumeration of lattice knots in `R^3_+`.
//!
//! Two enumerators live here:
//!
//! - [`enumerate_cycles`] lists closed lattice polygons touching `z = 0` in a
//!   single run, one per symmetry class.
//! - The arc enumerator ([`arc_subtasks`], [`run_arc_subtask`]) lists the arcs
//!   obtained by removing that run. Knot type and spun areas depend on the arc
//!   alone: every plane closure lies below the arc, and any two of them are
//!   isotopic through the lower half-space. The shortest closure is an L-shaped
//!   path of length `|dx| + |dy|` inside the bounding box of the endpoints, so
//!   an arc admits a closing cycle within the constraints iff
//!   `edges + |dx| + |dy| <= max_len` and the arc itself fits the footprint.
//!   Certification and minimisation therefore run over arcs.
//!
//! Symmetries: translations in `(x, y)`, the 8 symmetries of the square acting
//! on `(x, y)`, and reversal. `z` is never reflected.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::Cell;

use crate::invariants::{determinant, project_diagram};
use crate::lattice::{Lattice1Knot, LatticeArc};

pub type Point = [i64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConstraints {
    pub max_height: i64,
    /// Cap on the sum of heights of the vertices off the plane.
    pub max_zsum: i64,
    /// Cap on the number of edges of the closed cycle.
    pub max_len: usize,
    /// `(w, d)`: the cycle occupies at most `w` lattice columns in one
    /// horizontal direction and `d` in the other (either orientation).
    pub footprint: (i64, i64),
    /// Must be set for [`find_min_spun`]; certification ignores it.
    pub require_knotted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("constraint {0} must be at least 1")]
    InvalidConstraints(&'static str),
    #[error("search stopped by its budget before completing")]
    ResourceBudgetExceeded,
    #[error("no knotted arc within the constraints")]
    NotFound,
}

impl SearchConstraints {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_height < 1 {
            return Err(SearchError::InvalidConstraints("max_height"));
        }
        if self.max_zsum < 1 {
            return Err(SearchError::InvalidConstraints("max_zsum"));
        }
        if self.max_len < 1 {
            return Err(SearchError::InvalidConstraints("max_len"));
        }
        if self.footprint.0 < 1 || self.footprint.1 < 1 {
            return Err(SearchError::InvalidConstraints("footprint"));
        }
        Ok(())
    }

    /// Whether horizontal extents `ex`, `ey` (max minus min) fit the footprint.
    pub fn fits(&self, ex: i64, ey: i64) -> bool {
        let (w, d) = self.footprint;
        (ex < w && ey < d) || (ex < d && ey < w)
    }

    fn span(&self) -> i64 {
        self.footprint.0.max(self.footprint.1) - 1
    }
}

/// `(x, y) -> (a x + b y, c x + d y)`.
const D4: [[i64; 4]; 8] = [
    [1, 0, 0, 1],
    [-1, 0, 0, 1],
    [1, 0, 0, -1],
    [-1, 0, 0, -1],
    [0, 1, 1, 0],
    [0, -1, 1, 0],
    [0, 1, -1, 0],
    [0, -1, -1, 0],
];

fn apply(g: &[i64; 4], p: &Point) -> Point {
    [g[0] * p[0] + g[1] * p[1], g[2] * p[0] + g[3] * p[1], p[2]]
}

/// Canonical representative of a cycle: translated so that `min x = min y = 0`,
/// then the lexicographically least sequence over the square's symmetries,
/// both directions and all starting vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCycle(pub Vec<Point>);

impl CanonicalCycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_knot(&self) -> Lattice1Knot {
        Lattice1Knot::from_xyz(&self.0).expect("canonical cycles are valid knots")
    }
}

pub fn canonical_form(knot: &Lattice1Knot) -> CanonicalCycle {
    let seq: Vec<Point> = knot.vertices().iter().map(|v| [v.x(), v.y(), v.z()]).collect();
    CanonicalCycle(canonical_cycle(&seq))
}

/// Canonical form of a raw vertex cycle.
pub fn canonical_cycle(seq: &[Point]) -> Vec<Point> {
    let n = seq.len();
    let mut best: Option<Vec<Point>> = None;
    for g in &D4 {
        let mut img: Vec<Point> = seq.iter().map(|p| apply(g, p)).collect();
        let mx = img.iter().map(|p| p[0]).min().unwrap_or(0);
        let my = img.iter().map(|p| p[1]).min().unwrap_or(0);
        for p in img.iter_mut() {
            p[0] -= mx;
            p[1] -= my;
        }
        let start = (0..n).min_by_key(|&i| img[i]).unwrap_or(0);
        for forward in [true, false] {
            let cand: Vec<Point> = (0..n)
                .map(|k| if forward { img[(start + k) % n] } else { img[(start + n - k) % n] })
                .collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn contact_runs(seq: &[Point]) -> usize {
    let n = seq.len();
    (0..n).filter(|&i| seq[i][2] == 0 && seq[(i + 1) % n][2] > 0).count()
}

fn extents(seq: &[Point]) -> (i64, i64) {
    let (mut lx, mut hx, mut ly, mut hy) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for p in seq {
        lx = lx.min(p[0]);
        hx = hx.max(p[0]);
        ly = ly.min(p[1]);
        hy = hy.max(p[1]);
    }
    (hx - lx, hy - ly)
}

fn zsum(seq: &[Point]) -> i64 {
    seq.iter().map(|p| p[2]).sum()
}

fn is_knotted_cycle(seq: &[Point]) -> Option<u128> {
    let knot = Lattice1Knot::from_xyz(seq).ok()?;
    let d = project_diagram(&knot).ok().and_then(|d| determinant(&d).ok())?;
    Some(d)
}

/// Whether a vertex cycle satisfies the constraints (ignoring `require_knotted`).
pub fn cycle_admissible(seq: &[Point], c: &SearchConstraints) -> bool {
    let (ex, ey) = extents(seq);
    seq.len() >= 4
        && seq.len() <= c.max_len
        && seq.iter().all(|p| p[2] >= 0 && p[2] <= c.max_height)
        && zsum(seq) <= c.max_zsum
        && contact_runs(seq) == 1
        && c.fits(ex, ey)
}

/// Every admissible cycle once per symmetry class, in sorted order.
pub fn enumerate_cycles(c: &SearchConstraints) -> Vec<CanonicalCycle> {
    let mut out = Vec::new();
    for_each_cycle(c, |seq| out.push(CanonicalCycle(seq.to_vec())));
    out.sort();
    out
}

/// Calls `f` on the canonical sequence of each admissible cycle.
///
/// The walk starts at the lexicographically least vertex `(0, y0, z0)` and
/// only visits larger vertices; a closed walk is reported iff it already is
/// its own canonical form.
pub fn for_each_cycle(c: &SearchConstraints, mut f: impl FnMut(&[Point])) {
    if c.validate().is_err() || c.max_len < 4 {
        return;
    }
    let span = c.span();
    let mut w = CycleWalker {
        c,
        span,
        visited: vec![false; ((span + 1) * (span + 1) * (c.max_height + 1)) as usize],
        path: Vec::new(),
        zsum: 0,
        leaves: 0,
    };
    for y0 in 0..=span {
        for z0 in 0..=c.max_height {
            let start = [0, y0, z0];
            w.push(start);
            w.extend(&mut f);
            w.pop();
        }
    }
}

struct CycleWalker<'a> {
    c: &'a SearchConstraints,
    span: i64,
    visited: Vec<bool>,
    path: Vec<Point>,
    zsum: i64,
    /// Steps from `z = 0` to `z > 0` along the path.
    leaves: usize,
}

impl CycleWalker<'_> {
    fn index(&self, p: &Point) -> Option<usize> {
        let s = self.span;
        if p[0] < 0 || p[0] > s || p[1] < 0 || p[1] > s || p[2] < 0 || p[2] > self.c.max_height {
            return None;
        }
        Some(((p[2] * (s + 1) + p[1]) * (s + 1) + p[0]) as usize)
    }

    fn push(&mut self, p: Point) {
        if let Some(&last) = self.path.last() {
            if last[2] == 0 && p[2] > 0 {
                self.leaves += 1;
            }
        }
        let i = self.index(&p).expect("in range");
        self.visited[i] = true;
        self.zsum += p[2];
        self.path.push(p);
    }

    fn pop(&mut self) {
        let p = self.path.pop().expect("nonempty");
        let i = self.index(&p).expect("in range");
        self.visited[i] = false;
        self.zsum -= p[2];
        if let Some(&last) = self.path.last() {
            if last[2] == 0 && p[2] > 0 {
                self.leaves -= 1;
            }
        }
    }

    fn extend(&mut self, f: &mut impl FnMut(&[Point])) {
        let start = self.path[0];
        let cur = *self.path.last().expect("nonempty");
        let n = self.path.len();
        if n >= 4 && l1(&cur, &start) == 1 {
            let closing_leave = cur[2] == 0 && start[2] > 0;
            let runs = self.leaves + closing_leave as usize;
            if runs == 1 && cycle_admissible(&self.path, self.c) {
                let min_y = self.path.iter().map(|p| p[1]).min().unwrap_or(0);
                if min_y == 0 && canonical_cycle(&self.path) == self.path {
                    f(&self.path);
                }
            }
        }
        if n >= self.c.max_len {
            return;
        }
        for d in DIRS {
            let next = [cur[0] + d[0], cur[1] + d[1], cur[2] + d[2]];
            let Some(i) = self.index(&next) else { continue };
            if self.visited[i] || next <= start {
                continue;
            }
            // Edges after the step plus the distance back to the start.
            if n + l1(&next, &start) > self.c.max_len {
                continue;
            }
            let between = heights_between(next[2], start[2]);
            if self.zsum + next[2] + between > self.c.max_zsum {
                continue;
            }
            let leaves = self.leaves + (cur[2] == 0 && next[2] > 0) as usize;
            if leaves > 1 {
                continue;
            }
            self.push(next);
            let (ex, ey) = extents(&self.path);
            if self.c.fits(ex, ey) {
                self.extend(f);
            }
            self.pop();
        }
    }
}

const DIRS: [Point; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

fn l1(a: &Point, b: &Point) -> usize {
    ((a[0] - b[0]).abs() + (a[1] - b[1]).abs() + (a[2] - b[2]).abs()) as usize
}

/// Sum of the integers strictly between `a` and `b`.
fn heights_between(a: i64, b: i64) -> i64 {
    let (lo, hi) = (a.min(b), a.max(b));
    if hi - lo < 2 {
        0
    } else {
        (lo + 1..hi).sum()
    }
}

// ---------------------------------------------------------------------------
// Arc enumeration.

/// Translates the arc to start at the origin and applies the unique square
/// symmetry making the first horizontal step `+x` and the first `y` step `+y`.
pub fn normalize_arc(seq: &[Point]) -> Vec<Point> {
    let g = normalizing_symmetry(seq);
    let o = seq[0];
    seq.iter().map(|p| apply(&g, &[p[0] - o[0], p[1] - o[1], p[2]])).collect()
}

/// The square symmetry sending the first horizontal step to `+x` and the
/// first step perpendicular to it to `+y`.
fn normalizing_symmetry(seq: &[Point]) -> [i64; 4] {
    let mut first: Option<Point> = None;
    let mut second: Option<Point> = None;
    for w in seq.windows(2) {
        let d = [w[1][0] - w[0][0], w[1][1] - w[0][1], 0];
        if d == [0, 0, 0] {
            continue;
        }
        match first {
            None => first = Some(d),
            Some(f) if f[0] * d[0] + f[1] * d[1] == 0 => {
                second = Some(d);
                break;
            }
            Some(_) => {}
        }
    }
    let Some(f) = first else { return D4[0] };
    *D4.iter()
        .find(|g| apply(g, &f) == [1, 0, 0] && second.map_or(true, |s| apply(g, &s) == [0, 1, 0]))
        .expect("some symmetry normalises any pair of perpendicular unit steps")
}

/// Compares the normalised reversal of `seq` with `seq` without allocating.
fn reversed_is_smaller(seq: &[Point]) -> bool {
    let n = seq.len();
    let rev = |k: usize| seq[n - 1 - k];
    let mut first: Option<Point> = None;
    let mut second: Option<Point> = None;
    for k in 0..n - 1 {
        let (a, b) = (rev(k), rev(k + 1));
        let d = [b[0] - a[0], b[1] - a[1], 0];
        if d == [0, 0, 0] {
            continue;
        }
        match first {
            None => first = Some(d),
            Some(f) if f[0] * d[0] + f[1] * d[1] == 0 => {
                second = Some(d);
                break;
            }
            Some(_) => {}
        }
    }
    let g = match first {
        None => D4[0],
        Some(f) => *D4
            .iter()
            .find(|g| apply(g, &f) == [1, 0, 0] && second.map_or(true, |s| apply(g, &s) == [0, 1, 0]))
            .expect("normalising symmetry exists"),
    };
    let o = rev(0);
    for k in 0..n {
        let p = rev(k);
        let img = apply(&g, &[p[0] - o[0], p[1] - o[1], p[2]]);
        match img.cmp(&seq[k]) {
            core::cmp::Ordering::Less => return true,
            core::cmp::Ordering::Greater => return false,
            core::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Whether the vertical projection of the arc might cross itself.
///
/// Vertical edges collapse to points. If the resulting plane polyline is
/// simple, the arc is a graph over a simple curve: lowering it towards the
/// plane is an isotopy, after which the arc lies entirely above its closure
/// and the knot is trivial. A `false` answer therefore certifies an unknot.
pub fn arc_may_self_cross(seq: &[Point]) -> bool {
    let mut poly: Vec<[i64; 2]> = Vec::with_capacity(seq.len());
    for p in seq {
        if poly.last() != Some(&[p[0], p[1]]) {
            poly.push([p[0], p[1]]);
        }
    }
    let m = poly.len();
    if m < 2 {
        return false;
    }
    let seg = |i: usize| {
        let (a, b) = (poly[i], poly[i + 1]);
        [a[0].min(b[0]), a[0].max(b[0]), a[1].min(b[1]), a[1].max(b[1])]
    };
    for i in 0..m - 1 {
        let si = seg(i);
        if i + 2 < m {
            // Consecutive segments folding back onto each other.
            let (a, b, c) = (poly[i], poly[i + 1], poly[i + 2]);
            if (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) < 0 {
                return true;
            }
        }
        for j in i + 2..m - 1 {
            let sj = seg(j);
            // Axis-parallel segments meet iff their bounding boxes do.
            if si[0] <= sj[1] && sj[0] <= si[1] && si[2] <= sj[3] && sj[2] <= si[3] {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
fn is_normalized(seq: &[Point]) -> bool {
    let mut seen_h = false;
    let mut seen_y = false;
    for w in seq.windows(2) {
        let dx = w[1][0] - w[0][0];
        let dy = w[1][1] - w[0][1];
        if !seen_h && (dx != 0 || dy != 0) {
            if dx != 1 {
                return false;
            }
            seen_h = true;
        }
        if !seen_y && dy != 0 {
            if dy != 1 {
                return false;
            }
            seen_y = true;
        }
    }
    true
}

/// Canonical representative of an arc under translations, square symmetries and reversal.
pub fn canonical_arc(seq: &[Point]) -> Vec<Point> {
    let fwd = normalize_arc(seq);
    let mut rev = seq.to_vec();
    rev.reverse();
    let rev = normalize_arc(&rev);
    if rev < fwd {
        rev
    } else {
        fwd
    }
}

/// A knotted arc found by a search, with the numbers needed to compare it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnottedArc {
    /// Canonical arc vertices, from the plane back to the plane.
    pub arc: Vec<Point>,
    pub determinant: u128,
    pub zsum: i64,
    /// Arc vertex count `n`, both plane endpoints included.
    pub vertex_count: usize,
    /// Vertices off the plane, `n - 2`.
    pub nonzero_vertices: usize,
    /// Edges of the shortest closing cycle.
    pub cycle_len: usize,
    /// `8 Σz - 4n + 6`.
    pub reduced_area: i64,
    /// `8 Σz`.
    pub cspin_area: i64,
}

impl KnottedArc {
    /// Fills in the derived counts of an arc with a known determinant.
    pub fn from_arc(arc: Vec<Point>, determinant: u128) -> KnottedArc {
        let n = arc.len();
        let zsum = zsum(&arc);
        let first = arc[0];
        let last = arc[n - 1];
        let closure = (first[0] - last[0]).unsigned_abs() + (first[1] - last[1]).unsigned_abs();
        KnottedArc {
            determinant,
            zsum,
            vertex_count: n,
            nonzero_vertices: n - 2,
            cycle_len: n - 1 + closure as usize,
            reduced_area: 8 * zsum - 4 * n as i64 + 6,
            cspin_area: 8 * zsum,
            arc,
        }
    }

    pub fn lattice_arc(&self) -> LatticeArc {
        LatticeArc::from_xyz(&self.arc, 1).expect("search arcs are valid")
    }

    fn key(&self) -> (i64, &Vec<Point>) {
        (self.reduced_area, &self.arc)
    }
}

fn arc_determinant(seq: &[Point]) -> Option<u128> {
    let arc = LatticeArc::from_xyz(seq, 1).ok()?;
    let knot = Lattice1Knot::close_arc(&arc).ok()?;
    let d = project_diagram(&knot).ok()?;
    determinant(&d).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Record every knotted arc.
    Certify,
    /// Branch and bound on the reduced area; keep the best knotted arc.
    Minimize,
}

/// Hooks a driver uses to budget, abort and share bounds between subtasks.
pub trait SearchControl {
    /// Called before each subtask with 0 and then every few thousand nodes
    /// with the number of nodes visited since the previous call.
    /// Returning `false` aborts the subtask.
    fn proceed(&self, _new_nodes: u64) -> bool {
        true
    }

    /// Best reduced area known to the driver, used for pruning in
    /// [`SearchMode::Minimize`].
    fn bound(&self) -> Option<i64> {
        None
    }

    /// Reports a knotted arc with the given reduced area.
    fn offer(&self, _reduced_area: i64) {}
}

/// A control that never stops.
pub struct Unlimited;

impl SearchControl for Unlimited {}

/// Stops the search once more than a fixed number of nodes were visited in total.
pub struct NodeBudget {
    limit: u64,
    used: Cell<u64>,
}

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        NodeBudget {
            limit,
            used: Cell::new(0),
        }
    }
}

impl SearchControl for NodeBudget {
    fn proceed(&self, new_nodes: u64) -> bool {
        self.used.set(self.used.get() + new_nodes);
        self.used.get() <= self.limit
    }
}

/// Outcome of one subtask.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubtaskOutcome {
    pub arcs: u64,
    pub nodes: u64,
    pub knotted: Vec<KnottedArc>,
    pub best: Option<KnottedArc>,
    pub complete: bool,
}

/// Default depth (in steps after the start) at which the arc tree is split.
pub const DEFAULT_SPLIT_DEPTH: usize = 6;

const CHECK_INTERVAL: u64 = 1 << 12;

struct ArcWalker<'a> {
    c: &'a SearchConstraints,
    mode: SearchMode,
    control: &'a dyn SearchControl,
    span: i64,
    visited: Vec<bool>,
    path: Vec<Point>,
    box_stack: Vec<[i64; 4]>,
    /// Horizontal steps and `y` steps on the path, for the normalisation rule.
    h_steps: usize,
    y_steps: usize,
    zsum: i64,
    /// `Σ (2z - 1)` over interior vertices; the reduced area is `4 S - 2`.
    score: i64,
    outcome: SubtaskOutcome,
    aborted: bool,
    local_best: Option<i64>,
}

impl<'a> ArcWalker<'a> {
    fn new(c: &'a SearchConstraints, mode: SearchMode, control: &'a dyn SearchControl) -> Self {
        let span = c.span();
        let side = 2 * span + 1;
        ArcWalker {
            c,
            mode,
            control,
            span,
            visited: vec![false; (side * side * (c.max_height + 1)) as usize],
            path: Vec::new(),
            box_stack: Vec::new(),
            h_steps: 0,
            y_steps: 0,
            zsum: 0,
            score: 0,
            outcome: SubtaskOutcome::default(),
            aborted: false,
            local_best: None,
        }
    }

    fn index(&self, p: &Point) -> Option<usize> {
        let s = self.span;
        if p[0].abs() > s || p[1].abs() > s || p[2] < 0 || p[2] > self.c.max_height {
            return None;
        }
        let side = 2 * s + 1;
        Some(((p[2] * side + p[1] + s) * side + p[0] + s) as usize)
    }

    fn push(&mut self, p: Point) {
        let i = self.index(&p).expect("in range");
        self.visited[i] = true;
        let b = match self.box_stack.last() {
            Some(b) => [b[0].min(p[0]), b[1].max(p[0]), b[2].min(p[1]), b[3].max(p[1])],
            None => [p[0], p[0], p[1], p[1]],
        };
        self.box_stack.push(b);
        if let Some(last) = self.path.last() {
            self.h_steps += (last[2] == p[2]) as usize;
            self.y_steps += (last[1] != p[1]) as usize;
        }
        if p[2] > 0 {
            self.zsum += p[2];
            self.score += 2 * p[2] - 1;
        }
        self.path.push(p);
    }

    fn pop(&mut self) {
        let p = self.path.pop().expect("nonempty");
        let i = self.index(&p).expect("in range");
        self.visited[i] = false;
        self.box_stack.pop();
        if let Some(last) = self.path.last() {
            self.h_steps -= (last[2] == p[2]) as usize;
            self.y_steps -= (last[1] != p[1]) as usize;
        }
        if p[2] > 0 {
            self.zsum -= p[2];
            self.score -= 2 * p[2] - 1;
        }
    }

    fn area_cap(&self) -> Option<i64> {
        if self.mode != SearchMode::Minimize {
            return None;
        }
        match (self.control.bound(), self.local_best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Checks the step to `next`; on success the caller pushes it.
    fn admissible(&self, next: &Point) -> bool {
        let Some(i) = self.index(next) else { return false };
        if self.visited[i] {
            return false;
        }
        let b = self.box_stack.last().expect("nonempty");
        let ex = b[1].max(next[0]) - b[0].min(next[0]);
        let ey = b[3].max(next[1]) - b[2].min(next[1]);
        if !self.c.fits(ex, ey) {
            return false;
        }
        // Normalisation: the first horizontal step is +x, the first y step is +y.
        let cur = self.path.last().expect("nonempty");
        let (dx, dy) = (next[0] - cur[0], next[1] - cur[1]);
        if dx != 0 || dy != 0 {
            if self.h_steps == 0 && dx != 1 {
                return false;
            }
            if dy != 0 && self.y_steps == 0 && dy != 1 {
                return false;
            }
        }
        let h = next[2];
        let edges = self.path.len();
        let closure = (next[0].abs() + next[1].abs()) as usize;
        if h == 0 {
            return edges + closure <= self.c.max_len;
        }
        if edges + h as usize + closure > self.c.max_len {
            return false;
        }
        if self.zsum + h + h * (h - 1) / 2 > self.c.max_zsum {
            return false;
        }
        if let Some(cap) = self.area_cap() {
            // Heights h-1, ..., 1 still have to be visited.
            let s = self.score + 2 * h - 1 + (h - 1) * (h - 1);
            if 4 * s - 2 > cap {
                return false;
            }
        }
        true
    }

    fn tick(&mut self) -> bool {
        self.outcome.nodes += 1;
        if self.outcome.nodes % CHECK_INTERVAL == 0 && !self.control.proceed(CHECK_INTERVAL) {
            self.aborted = true;
        }
        !self.aborted
    }

    fn finish_arc(&mut self) {
        if reversed_is_smaller(&self.path) {
            return;
        }
        self.outcome.arcs += 1;
        if !arc_may_self_cross(&self.path) {
            return;
        }
        let Some(det) = arc_determinant(&self.path) else { return };
        if det == 1 {
            return;
        }
        let found = KnottedArc::from_arc(self.path.clone(), det);
        match self.mode {
            SearchMode::Certify => self.outcome.knotted.push(found),
            SearchMode::Minimize => {
                let area = found.reduced_area;
                self.control.offer(area);
                if self.local_best.map_or(true, |b| area <= b) {
                    self.local_best = Some(area);
                }
                let better = match &self.outcome.best {
                    Some(b) => found.key() < b.key(),
                    None => true,
                };
                if better {
                    self.outcome.best = Some(found);
                }
            }
        }
    }

    fn successors(&self) -> ([Point; 6], usize) {
        let cur = *self.path.last().expect("nonempty");
        let mut out = [[0; 3]; 6];
        if self.path.len() == 1 {
            out[0] = [cur[0], cur[1], 1];
            return (out, 1);
        }
        let mut k = 0;
        for d in DIRS {
            let next = [cur[0] + d[0], cur[1] + d[1], cur[2] + d[2]];
            if self.admissible(&next) {
                out[k] = next;
                k += 1;
            }
        }
        (out, k)
    }

    fn complete(&self) -> bool {
        self.path.len() > 1 && self.path.last().map_or(false, |p| p[2] == 0)
    }

    fn dfs(&mut self) {
        if !self.tick() {
            return;
        }
        if self.complete() {
            self.finish_arc();
            return;
        }
        let (next, k) = self.successors();
        for &next in &next[..k] {
            self.push(next);
            self.dfs();
            self.pop();
            if self.aborted {
                return;
            }
        }
    }

    fn split(&mut self, depth: usize, out: &mut Vec<Vec<Point>>) {
        if self.complete() || self.path.len() > depth {
            out.push(self.path.clone());
            return;
        }
        let (next, k) = self.successors();
        for &next in &next[..k] {
            self.push(next);
            self.split(depth, out);
            self.pop();
        }
    }
}

/// Arc prefixes with `depth` steps (or complete arcs that are shorter), in DFS order.
///
/// Pruning uses no area bound, so the list depends only on the constraints.
pub fn arc_subtasks(c: &SearchConstraints, depth: usize) -> Vec<Vec<Point>> {
    let mut out = Vec::new();
    if c.validate().is_err() {
        return out;
    }
    let mut w = ArcWalker::new(c, SearchMode::Certify, &Unlimited);
    w.push([0, 0, 0]);
    w.split(depth.max(1), &mut out);
    out
}

/// Exhausts the subtree below one prefix from [`arc_subtasks`].
pub fn run_arc_subtask(
    c: &SearchConstraints,
    mode: SearchMode,
    prefix: &[Point],
    control: &dyn SearchControl,
) -> SubtaskOutcome {
    let mut w = ArcWalker::new(c, mode, control);
    if !control.proceed(0) {
        return w.outcome;
    }
    for &p in prefix {
        w.push(p);
    }
    if mode == SearchMode::Minimize {
        if let Some(cap) = w.area_cap() {
            let h = prefix.last().map_or(0, |p| p[2]);
            let bound = w.score + (h - 1).max(0).pow(2);
            if 4 * bound - 2 > cap {
                w.outcome.complete = true;
                return w.outcome;
            }
        }
    }
    w.dfs();
    if !w.aborted {
        // Account for the tail; an exhausted budget stops the next subtask.
        control.proceed(w.outcome.nodes % CHECK_INTERVAL);
    }
    w.outcome.complete = !w.aborted;
    w.outcome
}

pub const ASSUMPTION_DETERMINANT: &str =
    "knottedness is screened by the determinant: determinant != 1 certifies knotted, determinant = 1 is treated as unknotted";
pub const ASSUMPTION_ARCS: &str =
    "each arc stands for every cycle obtained by closing it in the plane z = 0; these share knot type and spun areas, and the shortest uses an L-shaped closure";
pub const ASSUMPTION_FOOTPRINT: &str =
    "the footprint and height caps bound the search; results are exhaustive only inside them";

/// Result of a certification or minimisation run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub constraints: SearchConstraints,
    /// Arc classes enumerated, each standing for its closing cycles.
    pub cycles_enumerated: u64,
    pub nodes: u64,
    /// Sorted by reduced area, then canonical arc.
    pub knotted_found: Vec<KnottedArc>,
    /// `8 Σz - 4n + 6` of the best knotted arc.
    pub min_reduced_area: Option<i64>,
    pub assumptions: Vec<&'static str>,
    pub subtasks_total: usize,
    pub subtasks_done: usize,
    pub complete: bool,
    /// Filled in by drivers that can read a clock.
    pub wall_time_ms: Option<u64>,
}

/// Merges subtask outcomes deterministically; the input order does not matter.
pub fn merge_outcomes<'a>(
    c: &SearchConstraints,
    subtasks_total: usize,
    outcomes: impl IntoIterator<Item = &'a SubtaskOutcome>,
) -> CertificateReport {
    let mut arcs = 0;
    let mut nodes = 0;
    let mut done = 0;
    let mut found: BTreeMap<(i64, Vec<Point>), KnottedArc> = BTreeMap::new();
    for o in outcomes {
        arcs += o.arcs;
        nodes += o.nodes;
        done += o.complete as usize;
        for k in o.knotted.iter().chain(o.best.iter()) {
            found.insert((k.reduced_area, k.arc.clone()), k.clone());
        }
    }
    let knotted_found: Vec<KnottedArc> = found.into_values().collect();
    CertificateReport {
        constraints: *c,
        cycles_enumerated: arcs,
        nodes,
        min_reduced_area: knotted_found.first().map(|k| k.reduced_area),
        knotted_found,
        assumptions: vec![ASSUMPTION_DETERMINANT, ASSUMPTION_ARCS, ASSUMPTION_FOOTPRINT],
        subtasks_total,
        subtasks_done: done,
        complete: done == subtasks_total,
        wall_time_ms: None,
    }
}

/// Sequential run over all subtasks.
pub fn run_search(c: &SearchConstraints, mode: SearchMode, control: &dyn SearchControl) -> CertificateReport {
    let tasks = arc_subtasks(c, DEFAULT_SPLIT_DEPTH);
    let mut outcomes: Vec<SubtaskOutcome> = Vec::with_capacity(tasks.len());
    let mut best: Option<i64> = None;
    for t in &tasks {
        let shared = SharedBound { inner: control, best };
        let o = run_arc_subtask(c, mode, t, &shared);
        if let Some(b) = &o.best {
            best = Some(best.map_or(b.reduced_area, |x| x.min(b.reduced_area)));
        }
        let stop = !o.complete;
        outcomes.push(o);
        if stop {
            break;
        }
    }
    let mut report = merge_outcomes(c, tasks.len(), &outcomes);
    if mode == SearchMode::Minimize {
        report.knotted_found.truncate(1);
    }
    report
}

struct SharedBound<'a> {
    inner: &'a dyn SearchControl,
    best: Option<i64>,
}

impl SearchControl for SharedBound<'_> {
    fn proceed(&self, nodes: u64) -> bool {
        self.inner.proceed(nodes)
    }

    fn bound(&self) -> Option<i64> {
        match (self.inner.bound(), self.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    fn offer(&self, reduced_area: i64) {
        self.inner.offer(reduced_area)
    }
}

/// Enumerates every admissible arc and screens it for knottedness.
pub fn certify_lower_bound(c: &SearchConstraints, control: &dyn SearchControl) -> Result<CertificateReport, SearchError> {
    c.validate()?;
    Ok(run_search(c, SearchMode::Certify, control))
}

/// Best knotted arc, both spun areas, and the arc's closing knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinSpun {
    pub best: KnottedArc,
    pub report: CertificateReport,
}

/// The knotted arc minimising `8 Σz - 4n + 6` within the constraints.
pub fn find_min_spun(c: &SearchConstraints, control: &dyn SearchControl) -> Result<MinSpun, SearchError> {
    c.validate()?;
    if !c.require_knotted {
        return Err(SearchError::InvalidConstraints("require_knotted"));
    }
    let report = run_search(c, SearchMode::Minimize, control);
    finish_min(report)
}

/// Turns a merged minimisation report into a [`MinSpun`].
pub fn finish_min(report: CertificateReport) -> Result<MinSpun, SearchError> {
    if !report.complete {
        return Err(SearchError::ResourceBudgetExceeded);
    }
    match report.knotted_found.first() {
        Some(best) => Ok(MinSpun {
            best: best.clone(),
            report,
        }),
        None => Err(SearchError::NotFound),
    }
}

/// Knottedness screen for a whole cycle, as used by the searches.
pub fn cycle_determinant(seq: &[Point]) -> Option<u128> {
    is_knotted_cycle(seq)
}
