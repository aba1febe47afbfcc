//! Spun surfaces built from lattice arcs.
//!
//! Rotating an arc of `R^3_+` about the plane `x3 = x4 = 0` sweeps a 2-sphere
//! in `R^4`. Replacing each circle of radius `z` by the boundary of the square
//! `[-z, z]^2` in the `(x3, x4)`-plane turns the sweep into a union of unit
//! squares:
//!
//! - a vertical edge sweeps a square annulus between half-sides `z_i` and
//!   `z_{i+1}` (a filled square, the disk, when one end is on the plane);
//! - a horizontal edge at height `z` sweeps a square cylinder of half-side `z`
//!   with no caps.
//!
//! The square cross-section is an `L∞` circle, so the map from the arc times
//! the circle onto the surface is injective whenever the arc is simple: every
//! surface built here from a valid arc is an embedded sphere. The builder still
//! validates the union instead of trusting that argument.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::lattice::{LatticeArc, Rational, ReducedArc, ScaledPoint, Step};
use crate::surface::{CubicalSurface, UnitEdge, UnitSquare};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    Disk,
    SquareAnnulus,
    SquareCylinder,
}

impl PieceKind {
    pub fn name(&self) -> &'static str {
        match self {
            PieceKind::Disk => "disk",
            PieceKind::SquareAnnulus => "square_annulus",
            PieceKind::SquareCylinder => "square_cylinder",
        }
    }
}

/// The squares swept by one edge of the arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinPiece {
    pub kind: PieceKind,
    /// 0-based index `i` of the edge `v_i v_{i+1}`.
    pub edge: usize,
    pub step: Step,
    pub squares: BTreeSet<UnitSquare>,
}

impl SpinPiece {
    pub fn area(&self) -> usize {
        self.squares.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpinSource {
    Arc(LatticeArc),
    Reduced(ReducedArc),
}

/// A spun surface together with its per-edge pieces and the arc it came from.
#[derive(Clone, Debug)]
pub struct SpunSurface {
    surface: CubicalSurface,
    pieces: Vec<SpinPiece>,
    source: SpinSource,
}

impl SpunSurface {
    pub fn surface(&self) -> &CubicalSurface {
        &self.surface
    }

    pub fn into_surface(self) -> CubicalSurface {
        self.surface
    }

    pub fn pieces(&self) -> &[SpinPiece] {
        &self.pieces
    }

    pub fn source(&self) -> &SpinSource {
        &self.source
    }

    pub fn area(&self) -> usize {
        self.surface.area()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpinError {
    #[error("edge index {edge} out of range for an arc with {edges} edges")]
    EdgeOutOfRange { edge: usize, edges: usize },
    #[error("horizontal edge {edge} lies on the plane z = 0 and spins to a segment")]
    ZeroRadiusCylinder { edge: usize },
    #[error("pieces of edges {edge} and {next} do not share their boundary circle")]
    GluingMismatch { edge: usize, next: usize },
    #[error("pieces of edges {first} and {second} share a square")]
    OverlappingPieces { first: usize, second: usize },
    #[error("piece of edge {edge} does not land on the integer lattice after translation")]
    NonIntegralAfterTranslation { edge: usize },
    #[error("the union of the pieces is not an embedded sphere")]
    NotASphere,
    #[error("denominator {0} is not supported; use 1 or 2")]
    UnsupportedDenominator(i64),
}

/// Output grid: `cell` input numerator units per output unit, applied after
/// translating by `offset` (also in input numerators).
#[derive(Clone, Copy, Debug)]
struct Grid {
    cell: i64,
    offset: [i64; 4],
}

const NATIVE: Grid = Grid {
    cell: 1,
    offset: [0; 4],
};

/// Translation `b = (0, 0, 1/2, 1/2)` in numerators over 2, then unit cells.
const REDUCED: Grid = Grid {
    cell: 2,
    offset: [0, 0, 1, 1],
};

/// Axis-aligned box `[lo, hi]`; degenerate along every axis where `lo == hi`.
#[derive(Clone, Copy, Debug)]
struct Block {
    lo: [i64; 4],
    hi: [i64; 4],
}

impl Block {
    fn spanning(&self) -> Vec<usize> {
        (0..4).filter(|&k| self.hi[k] > self.lo[k]).collect()
    }

    /// Maps the block onto the output grid, or `None` if a face is off-grid.
    fn on_grid(&self, grid: &Grid) -> Option<Block> {
        let mut lo = [0; 4];
        let mut hi = [0; 4];
        for k in 0..4 {
            let a = self.lo[k] + grid.offset[k];
            let b = self.hi[k] + grid.offset[k];
            if a % grid.cell != 0 || b % grid.cell != 0 {
                return None;
            }
            lo[k] = a / grid.cell;
            hi[k] = b / grid.cell;
        }
        Some(Block { lo, hi })
    }

    fn squares(&self, out: &mut BTreeSet<UnitSquare>) {
        let span = self.spanning();
        if span.len() != 2 {
            return;
        }
        let (i, j) = (span[0], span[1]);
        for a in self.lo[i]..self.hi[i] {
            for b in self.lo[j]..self.hi[j] {
                let mut base = self.lo;
                base[i] = a;
                base[j] = b;
                out.insert(UnitSquare::new(base, i, j));
            }
        }
    }

    fn edges(&self, out: &mut BTreeSet<UnitEdge>) {
        let span = self.spanning();
        if span.len() != 1 {
            return;
        }
        let i = span[0];
        for a in self.lo[i]..self.hi[i] {
            let mut base = self.lo;
            base[i] = a;
            out.insert(UnitEdge::new(base, i));
        }
    }
}

fn block(lo: [i64; 4], hi: [i64; 4]) -> Block {
    Block { lo, hi }
}

/// The four blocks of a square annulus between half-sides `r < big_r` in the
/// `(x3, x4)`-plane over `(x, y)`. With `r = 0` the full square is one block.
fn annulus_blocks(x: i64, y: i64, r: i64, big_r: i64) -> Vec<Block> {
    if r == 0 {
        return alloc::vec![block([x, y, -big_r, -big_r], [x, y, big_r, big_r])];
    }
    alloc::vec![
        block([x, y, -big_r, r], [x, y, big_r, big_r]),
        block([x, y, -big_r, -big_r], [x, y, big_r, -r]),
        block([x, y, -big_r, -r], [x, y, -r, r]),
        block([x, y, r, -r], [x, y, big_r, r]),
    ]
}

/// The four side blocks of a square cylinder of half-side `r` swept along
/// horizontal `axis` over `[t0, t1]`, with the other horizontal coordinate `s`.
fn cylinder_blocks(axis: usize, t0: i64, t1: i64, s: i64, r: i64) -> Vec<Block> {
    let other = 1 - axis;
    let make = |l3: i64, h3: i64, l4: i64, h4: i64| {
        let mut lo = [0; 4];
        let mut hi = [0; 4];
        lo[axis] = t0;
        hi[axis] = t1;
        lo[other] = s;
        hi[other] = s;
        lo[2] = l3;
        hi[2] = h3;
        lo[3] = l4;
        hi[3] = h4;
        block(lo, hi)
    };
    alloc::vec![
        make(-r, r, -r, -r),
        make(-r, r, r, r),
        make(-r, -r, -r, r),
        make(r, r, -r, r),
    ]
}

/// The square circle of half-side `r` over `(x, y)`.
fn circle_blocks(x: i64, y: i64, r: i64) -> [Block; 4] {
    [
        block([x, y, -r, -r], [x, y, r, -r]),
        block([x, y, -r, r], [x, y, r, r]),
        block([x, y, -r, -r], [x, y, -r, r]),
        block([x, y, r, -r], [x, y, r, r]),
    ]
}

fn spin_segment(from: &ScaledPoint, to: &ScaledPoint, edge: usize, grid: &Grid) -> Result<SpinPiece, SpinError> {
    let step = Step::between(from, to).expect("arc steps are axis-parallel");
    let (kind, blocks) = if step.is_vertical() {
        let r = from.z().min(to.z());
        let big_r = from.z().max(to.z());
        let kind = if r == 0 {
            PieceKind::Disk
        } else {
            PieceKind::SquareAnnulus
        };
        (kind, annulus_blocks(from.x(), from.y(), r, big_r))
    } else {
        let r = from.z();
        if r == 0 {
            return Err(SpinError::ZeroRadiusCylinder { edge });
        }
        let axis = step.axis;
        let (t0, t1) = (from.0[axis].min(to.0[axis]), from.0[axis].max(to.0[axis]));
        let s = from.0[1 - axis];
        (PieceKind::SquareCylinder, cylinder_blocks(axis, t0, t1, s, r))
    };
    let mut squares = BTreeSet::new();
    for b in &blocks {
        b.on_grid(grid)
            .ok_or(SpinError::NonIntegralAfterTranslation { edge })?
            .squares(&mut squares);
    }
    Ok(SpinPiece {
        kind,
        edge,
        step,
        squares,
    })
}

fn circle_edges(v: &ScaledPoint, grid: &Grid) -> Option<BTreeSet<UnitEdge>> {
    let mut out = BTreeSet::new();
    for b in &circle_blocks(v.x(), v.y(), v.z()) {
        b.on_grid(grid)?.edges(&mut out);
    }
    Some(out)
}

fn boundary_edges(squares: &BTreeSet<UnitSquare>) -> BTreeSet<UnitEdge> {
    let mut odd = BTreeSet::new();
    for e in squares.iter().flat_map(|s| s.edges()) {
        if !odd.remove(&e) {
            odd.insert(e);
        }
    }
    odd
}

/// Squares swept by edge `i` (0-based) of the arc, in cells of side `1/λ`.
pub fn spin_edge(arc: &LatticeArc, i: usize) -> Result<SpinPiece, SpinError> {
    if i >= arc.edge_count() {
        return Err(SpinError::EdgeOutOfRange {
            edge: i,
            edges: arc.edge_count(),
        });
    }
    spin_segment(&arc.vertices()[i], &arc.vertices()[i + 1], i, &NATIVE)
}

/// Squares swept by edge `i` of a reduced arc, translated onto `Z^4`.
pub fn spin_reduced_edge(arc: &ReducedArc, i: usize) -> Result<SpinPiece, SpinError> {
    if i + 1 >= arc.len() {
        return Err(SpinError::EdgeOutOfRange {
            edge: i,
            edges: arc.len() - 1,
        });
    }
    spin_segment(&arc.vertices()[i], &arc.vertices()[i + 1], i, &REDUCED)
}

fn assemble(
    vertices: &[ScaledPoint],
    grid: &Grid,
    denominator: i64,
    source: SpinSource,
) -> Result<SpunSurface, SpinError> {
    let pieces = vertices
        .windows(2)
        .enumerate()
        .map(|(i, w)| spin_segment(&w[0], &w[1], i, grid))
        .collect::<Result<Vec<_>, _>>()?;

    let boundaries: Vec<BTreeSet<UnitEdge>> = pieces.iter().map(|p| boundary_edges(&p.squares)).collect();
    for i in 0..pieces.len().saturating_sub(1) {
        let mismatch = SpinError::GluingMismatch { edge: i, next: i + 1 };
        let circle = circle_edges(&vertices[i + 1], grid).ok_or(SpinError::NonIntegralAfterTranslation { edge: i })?;
        if circle.is_empty() || !circle.is_subset(&boundaries[i]) || !circle.is_subset(&boundaries[i + 1]) {
            return Err(mismatch);
        }
    }

    let mut all = BTreeSet::new();
    for p in &pieces {
        for sq in &p.squares {
            if !all.insert(*sq) {
                let first = pieces
                    .iter()
                    .find(|q| q.squares.contains(sq))
                    .map(|q| q.edge)
                    .unwrap_or(0);
                return Err(SpinError::OverlappingPieces {
                    first,
                    second: p.edge,
                });
            }
        }
    }
    let surface = CubicalSurface::new(denominator, all);
    if !surface.is_sphere() {
        return Err(SpinError::NotASphere);
    }
    Ok(SpunSurface {
        surface,
        pieces,
        source,
    })
}

/// The subcubical spun sphere of a `λ`-arc, in cells of side `1/λ`.
pub fn build_cspin(arc: &LatticeArc) -> Result<SpunSurface, SpinError> {
    if !(1..=2).contains(&arc.denominator()) {
        return Err(SpinError::UnsupportedDenominator(arc.denominator()));
    }
    assemble(arc.vertices(), &NATIVE, arc.denominator(), SpinSource::Arc(arc.clone()))
}

/// The reduced spun sphere: the `λ = 2` spin translated by `(0, 0, 1/2, 1/2)`,
/// emitted as unit squares of `Z^4`.
pub fn build_rcspin(reduced: &ReducedArc) -> Result<SpunSurface, SpinError> {
    assemble(reduced.vertices(), &REDUCED, 1, SpinSource::Reduced(reduced.clone()))
}

/// Closed-form area `(8/λ) Σ z_i` over the interior vertices, in units of area.
pub fn area_formula(arc: &LatticeArc) -> Rational {
    let lambda = arc.denominator();
    Rational::new(8 * arc.z_sum_numerator(), lambda * lambda)
}

/// Closed-form area `8 Σ z_i - 2` of the reduced spun sphere.
pub fn reduced_area_formula(reduced: &ReducedArc) -> i64 {
    // Σ z_i = N / 2 for the numerator sum N.
    4 * reduced.z_sum_numerator() - 2
}

/// `8 Σ z_i - 4n + 6` for a `λ = 1` arc: the area of the reduced spin of its reduction.
pub fn upper_bound_formula(arc: &LatticeArc) -> Option<i64> {
    (arc.denominator() == 1).then(|| 8 * arc.z_sum_numerator() - 4 * arc.len() as i64 + 6)
}

/// A maximal run of consecutive edges moving in the same direction, with the
/// union of their pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedPiece {
    pub label: String,
    pub kind: PieceKind,
    pub edges: Range<usize>,
    pub area: usize,
}

/// Merges per-edge pieces into runs of equal edge direction, labelled `D1, D2, ...`.
///
/// A disk followed by an annulus in the same vertical direction is a larger
/// disk; consecutive cylinders along the same direction form one longer cylinder.
pub fn decompose_pieces(spun: &SpunSurface) -> Vec<MergedPiece> {
    let mut out: Vec<MergedPiece> = Vec::new();
    let mut prev: Option<Step> = None;
    for p in spun.pieces() {
        let extend = prev.map(|s| s.same_direction(&p.step)).unwrap_or(false);
        if extend {
            let last = out.last_mut().expect("run started");
            last.edges.end = p.edge + 1;
            last.area += p.area();
            if p.kind == PieceKind::Disk {
                last.kind = PieceKind::Disk;
            }
        } else {
            out.push(MergedPiece {
                label: format!("D{}", out.len() + 1),
                kind: p.kind,
                edges: p.edge..p.edge + 1,
                area: p.area(),
            });
        }
        prev = Some(p.step);
    }
    out
}
