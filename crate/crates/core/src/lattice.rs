//! Lattice points, cubical arcs, cubical 1-knots and reduced arcs.
//!
//! Coordinates are integer numerators over a denominator `λ` shared by the
//! whole container. A vertex `v = (x, y, z, w)` of an arc or knot always has
//! `w = 0`; the spin construction is what populates the fourth axis.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

/// Exact rational used for every non-integral quantity in the crate.
pub type Rational = Ratio<i64>;

/// A point of `(1/λ)Z^4`, stored as its four integer numerators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScaledPoint(pub [i64; 4]);

impl ScaledPoint {
    pub const fn new(x: i64, y: i64, z: i64, w: i64) -> Self {
        ScaledPoint([x, y, z, w])
    }

    /// Point of `R^3 x {0}`.
    pub const fn xyz(x: i64, y: i64, z: i64) -> Self {
        ScaledPoint([x, y, z, 0])
    }

    pub const fn x(&self) -> i64 {
        self.0[0]
    }

    pub const fn y(&self) -> i64 {
        self.0[1]
    }

    pub const fn z(&self) -> i64 {
        self.0[2]
    }

    pub const fn w(&self) -> i64 {
        self.0[3]
    }

    /// Exact value of coordinate `k` for the given denominator.
    pub fn value(&self, k: usize, denominator: i64) -> Rational {
        Rational::new(self.0[k], denominator)
    }

    pub fn offset(&self, axis: usize, amount: i64) -> Self {
        let mut c = self.0;
        c[axis] += amount;
        ScaledPoint(c)
    }

    pub fn l1_distance(&self, other: &ScaledPoint) -> i64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

impl fmt::Display for ScaledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = self.0;
        write!(f, "({x},{y},{z},{w})")
    }
}

/// Direction of an axis-parallel step: `axis` in `0..4` and a sign.
///
/// The canonical vector `e_{±k}` of the 1-based notation is `Step { axis: k - 1, .. }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub axis: usize,
    pub positive: bool,
    /// Step length in numerator units.
    pub length: i64,
}

impl Step {
    /// Decomposes `to - from` into an axis-parallel step.
    ///
    /// Returns `None` for the zero step and for steps moving along more than one axis.
    pub fn between(from: &ScaledPoint, to: &ScaledPoint) -> Option<Step> {
        let mut found = None;
        for axis in 0..4 {
            let d = to.0[axis] - from.0[axis];
            if d != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(Step {
                    axis,
                    positive: d > 0,
                    length: d.abs(),
                });
            }
        }
        found
    }

    /// Signed axis label in `{±1, ±2, ±3, ±4}`.
    pub fn signed_label(&self) -> i8 {
        let k = self.axis as i8 + 1;
        if self.positive {
            k
        } else {
            -k
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.axis == 2
    }

    pub fn same_direction(&self, other: &Step) -> bool {
        self.axis == other.axis && self.positive == other.positive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("denominator must be positive, got {0}")]
    InvalidDenominator(i64),
    #[error("need at least {min} vertices, got {got}")]
    TooFewVertices { got: usize, min: usize },
    #[error("vertex {index} has a nonzero fourth coordinate")]
    FourthCoordinate { index: usize },
    #[error("step {index} is axis-parallel but does not have length 1/λ")]
    NonUnitStep { index: usize },
    #[error("step {index} is not parallel to a coordinate axis")]
    DiagonalStep { index: usize },
    #[error("endpoint {index} is not on the plane z = 0")]
    EndpointOffPlane { index: usize },
    #[error("interior vertex {index} is not strictly above the plane z = 0")]
    InteriorOnPlane { index: usize },
    #[error("vertex {index} lies below the plane z = 0")]
    BelowPlane { index: usize },
    #[error("vertex {index} repeats vertex {first}")]
    SelfIntersection { index: usize, first: usize },
    #[error("knot never touches the plane z = 0")]
    NoPlaneContact,
    #[error("knot meets the plane z = 0 in {components} separate sub-paths")]
    DisconnectedPlaneContact { components: usize },
    #[error("knot lies entirely in the plane z = 0")]
    EntirelyOnPlane,
    #[error("operation needs denominator {expected}, got {got}")]
    WrongDenominator { expected: i64, got: i64 },
    #[error("step {index} of a reduced arc has the wrong length")]
    ReducedStepLength { index: usize },
    #[error("vertex {index} of a reduced arc is off the half-integer grid")]
    ReducedGrid { index: usize },
}

fn check_fourth(vertices: &[ScaledPoint]) -> Result<(), LatticeError> {
    match vertices.iter().position(|v| v.w() != 0) {
        Some(index) => Err(LatticeError::FourthCoordinate { index }),
        None => Ok(()),
    }
}

fn check_unit_step(from: &ScaledPoint, to: &ScaledPoint, index: usize) -> Result<Step, LatticeError> {
    match Step::between(from, to) {
        Some(s) if s.length == 1 => Ok(s),
        Some(_) => Err(LatticeError::NonUnitStep { index }),
        None if from == to => Err(LatticeError::NonUnitStep { index }),
        None => Err(LatticeError::DiagonalStep { index }),
    }
}

fn check_distinct(vertices: &[ScaledPoint]) -> Result<(), LatticeError> {
    let mut seen = alloc::collections::BTreeMap::new();
    for (index, v) in vertices.iter().enumerate() {
        if let Some(&first) = seen.get(v) {
            return Err(LatticeError::SelfIntersection { index, first });
        }
        seen.insert(*v, index);
    }
    Ok(())
}

/// An open axis-parallel path of unit steps `1/λ` in `R^3_+ x {0}`, with both
/// endpoints on `z = 0` and every interior vertex strictly above it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeArc {
    denominator: i64,
    vertices: Vec<ScaledPoint>,
}

/// Checks every arc invariant and reports the first one violated.
pub fn validate_arc(vertices: Vec<ScaledPoint>, denominator: i64) -> Result<LatticeArc, LatticeError> {
    LatticeArc::new(vertices, denominator)
}

impl LatticeArc {
    pub fn new(vertices: Vec<ScaledPoint>, denominator: i64) -> Result<Self, LatticeError> {
        if denominator < 1 {
            return Err(LatticeError::InvalidDenominator(denominator));
        }
        if vertices.len() < 2 {
            return Err(LatticeError::TooFewVertices {
                got: vertices.len(),
                min: 2,
            });
        }
        check_fourth(&vertices)?;
        for (i, pair) in vertices.windows(2).enumerate() {
            check_unit_step(&pair[0], &pair[1], i)?;
        }
        let n = vertices.len();
        if vertices[0].z() != 0 {
            return Err(LatticeError::EndpointOffPlane { index: 0 });
        }
        if vertices[n - 1].z() != 0 {
            return Err(LatticeError::EndpointOffPlane { index: n - 1 });
        }
        if let Some(i) = (1..n - 1).find(|&i| vertices[i].z() <= 0) {
            return Err(LatticeError::InteriorOnPlane { index: i });
        }
        check_distinct(&vertices)?;
        Ok(LatticeArc {
            denominator,
            vertices,
        })
    }

    /// Convenience constructor from `(x, y, z)` numerator triples.
    pub fn from_xyz(points: &[[i64; 3]], denominator: i64) -> Result<Self, LatticeError> {
        let vertices = points
            .iter()
            .map(|&[x, y, z]| ScaledPoint::xyz(x, y, z))
            .collect();
        Self::new(vertices, denominator)
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn vertices(&self) -> &[ScaledPoint] {
        &self.vertices
    }

    /// Number of vertices `n`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Direction of edge `i` (0-based, from `v_i` to `v_{i+1}`).
    pub fn step(&self, i: usize) -> Step {
        Step::between(&self.vertices[i], &self.vertices[i + 1]).expect("validated arc")
    }

    /// Sum of interior heights as numerators over `λ`.
    pub fn z_sum_numerator(&self) -> i64 {
        let n = self.vertices.len();
        self.vertices[1..n - 1].iter().map(|v| v.z()).sum()
    }

    /// Exact sum of the interior `z` coordinates.
    pub fn z_sum(&self) -> Rational {
        Rational::new(self.z_sum_numerator(), self.denominator)
    }

    /// Total polyline length.
    pub fn length(&self) -> Rational {
        Rational::new(self.edge_count() as i64, self.denominator)
    }

    pub fn max_height(&self) -> i64 {
        self.vertices.iter().map(|v| v.z()).max().unwrap_or(0)
    }

    /// The same arc traversed from the other end.
    pub fn reversed(&self) -> LatticeArc {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        LatticeArc {
            denominator: self.denominator,
            vertices,
        }
    }

    /// Image under an `(x, y)` map that fixes `z`; the map must be a lattice isometry.
    pub fn map_xy(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> LatticeArc {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = f(v.x(), v.y());
                ScaledPoint::xyz(x, y, v.z())
            })
            .collect();
        LatticeArc {
            denominator: self.denominator,
            vertices,
        }
    }
}

/// Exact sum of interior heights of an arc.
pub fn z_sum(arc: &LatticeArc) -> Rational {
    arc.z_sum()
}

/// Total polyline length of an arc.
pub fn arc_length(arc: &LatticeArc) -> Rational {
    arc.length()
}

/// A closed self-avoiding cycle of unit steps in `Z^3 x {0}` with `z >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice1Knot {
    vertices: Vec<ScaledPoint>,
}

impl Lattice1Knot {
    /// Validates a cyclically ordered vertex list; the closing step from the last
    /// vertex back to the first is implicit.
    pub fn new(vertices: Vec<ScaledPoint>) -> Result<Self, LatticeError> {
        if vertices.len() < 4 {
            return Err(LatticeError::TooFewVertices {
                got: vertices.len(),
                min: 4,
            });
        }
        check_fourth(&vertices)?;
        let n = vertices.len();
        for i in 0..n {
            check_unit_step(&vertices[i], &vertices[(i + 1) % n], i)?;
        }
        if let Some(index) = vertices.iter().position(|v| v.z() < 0) {
            return Err(LatticeError::BelowPlane { index });
        }
        check_distinct(&vertices)?;
        Ok(Lattice1Knot { vertices })
    }

    pub fn from_xyz(points: &[[i64; 3]]) -> Result<Self, LatticeError> {
        Self::new(
            points
                .iter()
                .map(|&[x, y, z]| ScaledPoint::xyz(x, y, z))
                .collect(),
        )
    }

    /// Closes a `λ = 1` arc with an L-shaped path in the plane `z = 0`, first
    /// along `x`, then along `y`, from the last arc vertex back to the first.
    ///
    /// The knot type does not depend on the choice of plane path: every plane
    /// closure lies below the open arc.
    pub fn close_arc(arc: &LatticeArc) -> Result<Self, LatticeError> {
        if arc.denominator() != 1 {
            return Err(LatticeError::WrongDenominator {
                expected: 1,
                got: arc.denominator(),
            });
        }
        let mut vertices: Vec<ScaledPoint> = arc.vertices().to_vec();
        let start = arc.vertices()[0];
        let end = arc.vertices()[arc.len() - 1];
        let mut cur = end;
        while cur.x() != start.x() {
            cur = cur.offset(0, (start.x() - cur.x()).signum());
            vertices.push(cur);
        }
        while cur.y() != start.y() {
            cur = cur.offset(1, (start.y() - cur.y()).signum());
            vertices.push(cur);
        }
        // `cur == start` now and is already the first vertex.
        vertices.pop();
        Lattice1Knot::new(vertices)
    }

    pub fn vertices(&self) -> &[ScaledPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn max_height(&self) -> i64 {
        self.vertices.iter().map(|v| v.z()).max().unwrap_or(0)
    }

    /// Extent of the knot along its longest axis.
    pub fn diameter(&self) -> i64 {
        (0..3)
            .map(|k| {
                let lo = self.vertices.iter().map(|v| v.0[k]).min().unwrap_or(0);
                let hi = self.vertices.iter().map(|v| v.0[k]).max().unwrap_or(0);
                hi - lo
            })
            .max()
            .unwrap_or(0)
    }

    /// The open arc of the knot above the plane `z = 0`.
    pub fn arc(&self) -> Result<LatticeArc, LatticeError> {
        arc_from_knot(self)
    }
}

/// Removes the plane sub-path of a knot and returns the complementary open arc.
///
/// The vertices with `z = 0` must form one contiguous sub-path of the cycle; the
/// arc starts at the last vertex of that sub-path and ends at its first.
pub fn arc_from_knot(knot: &Lattice1Knot) -> Result<LatticeArc, LatticeError> {
    let v = knot.vertices();
    let n = v.len();
    let on_plane: Vec<bool> = v.iter().map(|p| p.z() == 0).collect();
    let contacts = on_plane.iter().filter(|&&b| b).count();
    if contacts == 0 {
        return Err(LatticeError::NoPlaneContact);
    }
    if contacts == n {
        return Err(LatticeError::EntirelyOnPlane);
    }
    // A component starts where the cycle enters the plane.
    let starts: Vec<usize> = (0..n)
        .filter(|&i| on_plane[i] && !on_plane[(i + n - 1) % n])
        .collect();
    if starts.len() > 1 {
        return Err(LatticeError::DisconnectedPlaneContact {
            components: starts.len(),
        });
    }
    // Both neighbours of an isolated plane vertex would sit directly above it,
    // so a valid knot always meets the plane in at least one edge.
    let first = starts[0];
    let last = (first + contacts - 1) % n;
    let arc_len = n - contacts + 2;
    let vertices = (0..arc_len).map(|k| v[(last + k) % n]).collect();
    LatticeArc::new(vertices, 1)
}

/// A `λ = 2` arc whose first and last steps have length `1/2` and whose other
/// steps have length `1`.
///
/// Its `x`, `y` coordinates are integers and its interior heights are
/// half-integers, so the spin translated by `(0, 0, 1/2, 1/2)` lands on the
/// integer lattice. Only those vertices are stored; the midpoints of the unit
/// steps, which are also points of `(1/2)Z^4`, are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedArc {
    vertices: Vec<ScaledPoint>,
    alphas: Vec<Rational>,
}

impl ReducedArc {
    pub const DENOMINATOR: i64 = 2;

    /// Validates numerators over the fixed denominator 2.
    pub fn new(vertices: Vec<ScaledPoint>) -> Result<Self, LatticeError> {
        let n = vertices.len();
        if n < 4 {
            return Err(LatticeError::TooFewVertices { got: n, min: 4 });
        }
        check_fourth(&vertices)?;
        let mut alphas = Vec::with_capacity(n - 1);
        for (i, pair) in vertices.windows(2).enumerate() {
            let step = match Step::between(&pair[0], &pair[1]) {
                Some(s) => s,
                None if pair[0] == pair[1] => return Err(LatticeError::ReducedStepLength { index: i }),
                None => return Err(LatticeError::DiagonalStep { index: i }),
            };
            let want = if i == 0 || i == n - 2 { 1 } else { 2 };
            if step.length != want {
                return Err(LatticeError::ReducedStepLength { index: i });
            }
            alphas.push(Rational::new(step.length, Self::DENOMINATOR));
        }
        if vertices[0].z() != 0 {
            return Err(LatticeError::EndpointOffPlane { index: 0 });
        }
        if vertices[n - 1].z() != 0 {
            return Err(LatticeError::EndpointOffPlane { index: n - 1 });
        }
        for (i, v) in vertices.iter().enumerate() {
            let interior = i != 0 && i != n - 1;
            if interior && v.z() <= 0 {
                return Err(LatticeError::InteriorOnPlane { index: i });
            }
            let z_ok = if interior { v.z() % 2 == 1 } else { true };
            if v.x() % 2 != 0 || v.y() % 2 != 0 || !z_ok {
                return Err(LatticeError::ReducedGrid { index: i });
            }
        }
        check_distinct(&vertices)?;
        Ok(ReducedArc { vertices, alphas })
    }

    pub fn vertices(&self) -> &[ScaledPoint] {
        &self.vertices
    }

    /// Step lengths `α_i = |v_{i+1} - v_i|`.
    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn step(&self, i: usize) -> Step {
        Step::between(&self.vertices[i], &self.vertices[i + 1]).expect("validated arc")
    }

    /// Sum of interior heights in numerators over 2.
    pub fn z_sum_numerator(&self) -> i64 {
        let n = self.vertices.len();
        self.vertices[1..n - 1].iter().map(|v| v.z()).sum()
    }

    pub fn z_sum(&self) -> Rational {
        Rational::new(self.z_sum_numerator(), Self::DENOMINATOR)
    }

    pub fn length(&self) -> Rational {
        self.alphas.iter().copied().sum()
    }

    /// Inverse of [`reduce_arc`].
    pub fn unreduce(&self) -> LatticeArc {
        let n = self.vertices.len();
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let z = if i == 0 || i == n - 1 { 0 } else { (v.z() + 1) / 2 };
                ScaledPoint::xyz(v.x() / 2, v.y() / 2, z)
            })
            .collect();
        LatticeArc::new(vertices, 1).expect("a reduced arc unreduces to a valid arc")
    }
}

/// Lowers every interior vertex of a `λ = 1` arc by `1/2`.
pub fn reduce_arc(arc: &LatticeArc) -> Result<ReducedArc, LatticeError> {
    if arc.denominator() != 1 {
        return Err(LatticeError::WrongDenominator {
            expected: 1,
            got: arc.denominator(),
        });
    }
    let n = arc.len();
    let vertices = arc
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let z = if i == 0 || i == n - 1 { 0 } else { 2 * v.z() - 1 };
            ScaledPoint::xyz(2 * v.x(), 2 * v.y(), z)
        })
        .collect();
    ReducedArc::new(vertices)
}

/// Inverse of [`reduce_arc`].
pub fn unreduce_arc(reduced: &ReducedArc) -> LatticeArc {
    reduced.unreduce()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pts(p: &[[i64; 4]]) -> Vec<ScaledPoint> {
        p.iter().map(|&c| ScaledPoint(c)).collect()
    }

    #[test]
    fn smallest_arc_validates() {
        let arc = validate_arc(pts(&[[0, 0, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0], [1, 0, 0, 0]]), 1).unwrap();
        assert_eq!(arc.len(), 4);
        assert_eq!(arc.z_sum(), Rational::from_integer(2));
        assert_eq!(arc.length(), Rational::from_integer(3));
    }

    #[test]
    fn arc_errors() {
        assert_eq!(
            validate_arc(pts(&[[0, 0, 0, 0], [0, 0, 2, 0]]), 1),
            Err(LatticeError::NonUnitStep { index: 0 })
        );
        assert_eq!(
            validate_arc(pts(&[[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]), 1),
            Err(LatticeError::SelfIntersection { index: 2, first: 0 })
        );
        assert_eq!(
            validate_arc(pts(&[[0, 0, 0, 0], [1, 0, 1, 0]]), 1),
            Err(LatticeError::DiagonalStep { index: 0 })
        );
        assert_eq!(
            validate_arc(pts(&[[0, 0, 1, 0], [0, 0, 2, 0], [0, 0, 1, 0]]), 1),
            Err(LatticeError::EndpointOffPlane { index: 0 })
        );
        assert_eq!(
            validate_arc(pts(&[[0, 0, 0, 0], [1, 0, 0, 0], [2, 0, 0, 0]]), 1),
            Err(LatticeError::InteriorOnPlane { index: 1 })
        );
        assert_eq!(
            validate_arc(pts(&[[0, 0, 0, 0], [0, 0, 1, 1]]), 1),
            Err(LatticeError::FourthCoordinate { index: 1 })
        );
        assert_eq!(validate_arc(pts(&[[0, 0, 0, 0]]), 1).unwrap_err(), LatticeError::TooFewVertices { got: 1, min: 2 });
        assert_eq!(validate_arc(vec![], 0), Err(LatticeError::InvalidDenominator(0)));
    }

    #[test]
    fn half_step_arc_at_lambda_two() {
        let arc = LatticeArc::from_xyz(&[[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0]], 2).unwrap();
        assert_eq!(arc.z_sum(), Rational::from_integer(1));
        assert_eq!(arc.length(), Rational::new(3, 2));
    }

    #[test]
    fn arc_from_square_cycle() {
        let knot = Lattice1Knot::from_xyz(&[[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0]]).unwrap();
        let arc = arc_from_knot(&knot).unwrap();
        assert_eq!(arc.vertices(), pts(&[[0, 0, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0], [1, 0, 0, 0]]).as_slice());
    }

    #[test]
    fn arc_from_knot_errors() {
        let lifted = Lattice1Knot::from_xyz(&[[0, 0, 1], [0, 1, 1], [1, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(arc_from_knot(&lifted), Err(LatticeError::NoPlaneContact));
        let flat = Lattice1Knot::from_xyz(&[[0, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, 0]]).unwrap();
        assert_eq!(arc_from_knot(&flat), Err(LatticeError::EntirelyOnPlane));
        // Touches the plane at (0,0) and (2,0) separately.
        let two = Lattice1Knot::from_xyz(&[
            [0, 0, 0],
            [0, 0, 1],
            [1, 0, 1],
            [2, 0, 1],
            [2, 0, 0],
            [2, 1, 0],
            [2, 1, 1],
            [1, 1, 1],
            [0, 1, 1],
            [0, 1, 0],
        ])
        .unwrap();
        assert_eq!(arc_from_knot(&two), Err(LatticeError::DisconnectedPlaneContact { components: 2 }));
    }

    #[test]
    fn contact_along_two_vertices() {
        let knot = Lattice1Knot::from_xyz(&[
            [0, 0, 0],
            [0, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
            [1, 0, 1],
            [1, -1, 1],
            [0, -1, 1],
            [0, -1, 0],
        ])
        .unwrap();
        let arc = arc_from_knot(&knot).unwrap();
        assert_eq!(arc.len(), 8);
        assert_eq!(arc.vertices()[0], ScaledPoint::xyz(0, 0, 0));
        assert_eq!(arc.vertices()[7], ScaledPoint::xyz(0, -1, 0));
    }

    #[test]
    fn reduce_unknot_arc() {
        let arc = LatticeArc::from_xyz(&[[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0]], 1).unwrap();
        let r = reduce_arc(&arc).unwrap();
        assert_eq!(r.vertices()[1].z(), 1);
        assert_eq!(r.vertices()[2].z(), 1);
        assert_eq!(r.z_sum(), Rational::from_integer(1));
        assert_eq!(
            r.alphas(),
            &[Rational::new(1, 2), Rational::from_integer(1), Rational::new(1, 2)]
        );
        assert_eq!(r.unreduce(), arc);
    }

    #[test]
    fn reduced_arc_errors() {
        let bad = ReducedArc::new(pts(&[[0, 0, 0, 0], [0, 0, 2, 0], [2, 0, 2, 0], [2, 0, 0, 0]]));
        assert_eq!(bad, Err(LatticeError::ReducedStepLength { index: 0 }));
        let bad = ReducedArc::new(pts(&[[0, 0, 0, 0], [0, 0, 1, 0], [1, 0, 1, 0], [1, 0, 0, 0]]));
        assert_eq!(bad, Err(LatticeError::ReducedStepLength { index: 1 }));
        let lam2 = LatticeArc::from_xyz(&[[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0]], 2).unwrap();
        assert_eq!(reduce_arc(&lam2), Err(LatticeError::WrongDenominator { expected: 1, got: 2 }));
    }

    #[test]
    fn close_arc_round_trips() {
        let arc = LatticeArc::from_xyz(&[[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 1, 1], [1, 1, 0]], 1).unwrap();
        let knot = Lattice1Knot::close_arc(&arc).unwrap();
        assert_eq!(knot.len(), 6);
        assert_eq!(knot.arc().unwrap(), arc);
    }
}
