//! Cubulated moves on cubical surfaces.
//!
//! - M1: uniform subdivision of every square into `m^2` squares.
//! - M2: inside a unit 3-cube, replace a disk `A` of `p` boundary faces lying
//!   on the surface by the complementary disk `B` of `6 - p` faces. The area
//!   changes by `6 - 2p`.
//!
//! A move is applicable when the result is again an embedded sphere; this is
//! decided by applying it and validating the result.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::surface::{count_components, euler_characteristic, homothety_factor, CubicalSurface, UnitSquare, Vertex};

/// A unit 3-cube `[base, base + e_a + e_b + e_c]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cube {
    base: Vertex,
    axes: [usize; 3],
}

impl Cube {
    /// # Panics
    /// If the axes are not three distinct values below 4.
    pub fn new(base: Vertex, mut axes: [usize; 3]) -> Self {
        axes.sort_unstable();
        assert!(axes[2] < 4 && axes[0] < axes[1] && axes[1] < axes[2], "cube axes must be distinct in 0..4");
        Cube { base, axes }
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn axes(&self) -> [usize; 3] {
        self.axes
    }

    /// The six boundary squares.
    pub fn faces(&self) -> [UnitSquare; 6] {
        let [a, b, c] = self.axes;
        let shifted = |axis: usize| {
            let mut v = self.base;
            v[axis] += 1;
            v
        };
        [
            UnitSquare::new(self.base, b, c),
            UnitSquare::new(shifted(a), b, c),
            UnitSquare::new(self.base, a, c),
            UnitSquare::new(shifted(b), a, c),
            UnitSquare::new(self.base, a, b),
            UnitSquare::new(shifted(c), a, b),
        ]
    }

    /// The four unit 3-cubes having `sq` as a face.
    pub fn containing(sq: &UnitSquare) -> [Cube; 4] {
        let (i, j) = sq.axes();
        let others: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
        let make = |k: usize, back: bool| {
            let mut base = sq.base();
            if back {
                base[k] -= 1;
            }
            Cube::new(base, [i, j, k])
        };
        [
            make(others[0], false),
            make(others[0], true),
            make(others[1], false),
            make(others[1], true),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Move {
    pub cube: Cube,
    /// Faces of the cube on the surface, removed by the move.
    pub patch_a: BTreeSet<UnitSquare>,
    /// The remaining faces, added by the move.
    pub patch_b: BTreeSet<UnitSquare>,
    /// Whether applying the move yields an embedded sphere.
    pub applicable: bool,
}

impl M2Move {
    /// Number of squares removed.
    pub fn p(&self) -> usize {
        self.patch_a.len()
    }

    pub fn delta_area(&self) -> i64 {
        6 - 2 * self.p() as i64
    }

    /// The move in the same cube with the patches exchanged.
    pub fn inverse(&self) -> M2Move {
        M2Move {
            cube: self.cube,
            patch_a: self.patch_b.clone(),
            patch_b: self.patch_a.clone(),
            applicable: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("patches do not partition the faces of the cube into two disks")]
    InvalidPatches,
    #[error("patch A is not contained in the surface")]
    PatchNotOnSurface,
    #[error("the replacement patch collides with the rest of the surface")]
    CollisionWithComplement,
}

/// Connected with Euler characteristic 1; for faces of one cube this is a disk.
pub fn is_disk(patch: &BTreeSet<UnitSquare>) -> bool {
    !patch.is_empty() && count_components(patch) == 1 && euler_characteristic(patch) == 1
}

/// The M1 move: each square becomes `m^2` squares of side `1/(mλ)`.
///
/// # Panics
/// If `m < 1`.
pub fn m1_subdivide(surface: &CubicalSurface, m: i64) -> CubicalSurface {
    assert!(m >= 1, "subdivision factor must be positive");
    let squares: Vec<UnitSquare> = surface.squares().iter().flat_map(|s| s.subdivide(m)).collect();
    CubicalSurface::new(surface.denominator() * m, squares)
}

/// Applies the face-boundary move, returning a new surface.
pub fn apply_m2(surface: &CubicalSurface, mv: &M2Move) -> Result<CubicalSurface, MoveError> {
    let faces: BTreeSet<UnitSquare> = mv.cube.faces().into_iter().collect();
    let union: BTreeSet<UnitSquare> = mv.patch_a.union(&mv.patch_b).copied().collect();
    if union != faces || !mv.patch_a.is_disjoint(&mv.patch_b) || !is_disk(&mv.patch_a) || !is_disk(&mv.patch_b) {
        return Err(MoveError::InvalidPatches);
    }
    if !mv.patch_a.is_subset(surface.squares()) {
        return Err(MoveError::PatchNotOnSurface);
    }
    if mv.patch_b.iter().any(|s| surface.contains(s)) {
        return Err(MoveError::CollisionWithComplement);
    }
    let squares = surface
        .squares()
        .iter()
        .filter(|s| !mv.patch_a.contains(s))
        .chain(mv.patch_b.iter())
        .copied();
    let result = CubicalSurface::new(surface.denominator(), squares);
    if result.is_sphere() {
        Ok(result)
    } else {
        Err(MoveError::CollisionWithComplement)
    }
}

/// Every unit 3-cube meeting the surface, in sorted order.
pub fn candidate_cubes(surface: &CubicalSurface) -> BTreeSet<Cube> {
    surface.squares().iter().flat_map(Cube::containing).collect()
}

/// Candidate M2 move for one cube, if its patch sizes are in `1..=5` and both patches are disks.
pub fn move_in_cube(surface: &CubicalSurface, cube: &Cube) -> Option<M2Move> {
    let (a, b): (BTreeSet<UnitSquare>, BTreeSet<UnitSquare>) =
        cube.faces().into_iter().partition(|s| surface.contains(s));
    if a.is_empty() || b.is_empty() || !is_disk(&a) || !is_disk(&b) {
        return None;
    }
    let mut mv = M2Move {
        cube: *cube,
        patch_a: a,
        patch_b: b,
        applicable: false,
    };
    mv.applicable = apply_m2(surface, &mv).is_ok();
    Some(mv)
}

/// All M2 candidates of a surface, each tagged with applicability.
pub fn enumerate_m2(surface: &CubicalSurface) -> Vec<M2Move> {
    candidate_cubes(surface).iter().filter_map(|c| move_in_cube(surface, c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An applicable move that lowers the area.
    Move(M2Move),
    /// The surface is a `k`-fold scaled copy; the inverse of M1 applies.
    Homothety(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakMinimality {
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// Number of candidate cubes examined.
    pub cubes_checked: usize,
}

/// Weakly minimal: no applicable M2 move lowers the area and the surface is
/// not a scaled copy of a coarser one.
pub fn is_weakly_minimal(surface: &CubicalSurface) -> WeakMinimality {
    let cubes = candidate_cubes(surface);
    let k = homothety_factor(surface).factor;
    if k > 1 {
        return WeakMinimality {
            verdict: false,
            witness: Some(Witness::Homothety(k)),
            cubes_checked: 0,
        };
    }
    for c in &cubes {
        let faces_on = c.faces().iter().filter(|s| surface.contains(s)).count();
        if faces_on < 4 {
            continue;
        }
        if let Some(mv) = move_in_cube(surface, c) {
            if mv.applicable && mv.delta_area() < 0 {
                return WeakMinimality {
                    verdict: false,
                    witness: Some(Witness::Move(mv)),
                    cubes_checked: cubes.len(),
                };
            }
        }
    }
    WeakMinimality {
        verdict: true,
        witness: None,
        cubes_checked: cubes.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::box_boundary;

    fn cube_surface() -> CubicalSurface {
        CubicalSurface::new(1, box_boundary([0; 4], [0, 1, 2], [1, 1, 1]))
    }

    #[test]
    fn cube_faces_are_a_sphere() {
        let c = Cube::new([0; 4], [2, 0, 1]);
        let s = CubicalSurface::new(1, c.faces());
        assert!(s.is_sphere());
        assert_eq!(s, cube_surface());
        assert_eq!(c.axes(), [0, 1, 2]);
    }

    #[test]
    fn disk_recognition() {
        let f = Cube::new([0; 4], [0, 1, 2]).faces();
        let set = |idx: &[usize]| idx.iter().map(|&i| f[i]).collect::<BTreeSet<_>>();
        assert!(is_disk(&set(&[0])));
        assert!(!is_disk(&set(&[0, 1])), "opposite faces");
        assert!(is_disk(&set(&[0, 2])));
        assert!(is_disk(&set(&[0, 2, 4])), "corner");
        assert!(is_disk(&set(&[0, 1, 2])), "strip");
        assert!(!is_disk(&set(&[0, 1, 2, 3])), "band");
        assert!(is_disk(&set(&[0, 1, 2, 4])));
        assert!(is_disk(&set(&[0, 1, 2, 3, 4])));
        assert!(!is_disk(&set(&[])));
    }

    #[test]
    fn unit_cube_moves() {
        let s = cube_surface();
        let moves = enumerate_m2(&s);
        // 6 faces x 3 outward cubes in R^4 (the fourth cube is the inner one).
        assert_eq!(moves.len(), 18);
        assert!(moves.iter().all(|m| m.p() == 1 && m.delta_area() == 4 && m.applicable));
        let w = is_weakly_minimal(&s);
        assert!(w.verdict);
        assert_eq!(w.witness, None);
    }

    #[test]
    fn push_and_pull_back() {
        let s = cube_surface();
        let mv = enumerate_m2(&s).into_iter().find(|m| m.cube.axes() == [0, 1, 2]).unwrap();
        let bumped = apply_m2(&s, &mv).unwrap();
        assert_eq!(bumped.area(), 10);
        let w = is_weakly_minimal(&bumped);
        assert!(!w.verdict);
        match w.witness {
            Some(Witness::Move(m)) => {
                assert_eq!(m.p(), 5);
                assert_eq!(apply_m2(&bumped, &m).unwrap(), s);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert_eq!(apply_m2(&bumped, &mv.inverse()).unwrap(), s);
    }

    #[test]
    fn apply_errors() {
        let s = cube_surface();
        let mv = enumerate_m2(&s).remove(0);
        let mut bad = mv.clone();
        bad.patch_b.pop_first();
        assert_eq!(apply_m2(&s, &bad), Err(MoveError::InvalidPatches));
        assert_eq!(apply_m2(&s, &mv.inverse()), Err(MoveError::PatchNotOnSurface));
    }

    #[test]
    fn subdivision() {
        let s = cube_surface();
        let t = m1_subdivide(&s, 2);
        assert_eq!(t.area(), 24);
        assert_eq!(t.denominator(), 2);
        assert!(t.is_sphere());
        assert_eq!(m1_subdivide(&s, 1), s);
        assert_eq!(homothety_factor(&t).factor, 2);
        let w = is_weakly_minimal(&t);
        assert_eq!(w.witness, Some(Witness::Homothety(2)));
    }
}
