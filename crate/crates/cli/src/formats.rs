//! JSON formats for arcs, knots and surfaces.
//!
//! Coordinates are integer numerators over the file's `denominator`. Axes are
//! 1-based in files (`1..=4`) and 0-based in memory.

use std::fs;
use std::path::Path;

use cubispin_core::lattice::{Lattice1Knot, LatticeArc, LatticeError, ReducedArc, ScaledPoint};
use cubispin_core::surface::{CubicalSurface, UnitSquare};
use cubispin_core::Rational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("unsupported schema {0}")]
    Schema(u32),
    #[error("vertex {index} has {got} coordinates, expected 3 or 4")]
    Arity { index: usize, got: usize },
    #[error("square {index}: axes must be two distinct values in 1..=4")]
    Axes { index: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PointsFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default = "one")]
    pub denominator: i64,
    pub vertices: Vec<Vec<i64>>,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SquareRecord {
    pub base: [i64; 4],
    pub axes: [usize; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    #[serde(default = "one")]
    pub denominator: i64,
    pub squares: Vec<SquareRecord>,
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn check_schema(schema: Option<u32>) -> Result<(), FormatError> {
    match schema {
        None | Some(SCHEMA) => Ok(()),
        Some(s) => Err(FormatError::Schema(s)),
    }
}

fn points(rows: &[Vec<i64>]) -> Result<Vec<ScaledPoint>, FormatError> {
    rows.iter()
        .enumerate()
        .map(|(index, r)| match r.len() {
            3 => Ok(ScaledPoint([r[0], r[1], r[2], 0])),
            4 => Ok(ScaledPoint([r[0], r[1], r[2], r[3]])),
            got => Err(FormatError::Arity { index, got }),
        })
        .collect()
}

fn rows(vertices: &[ScaledPoint]) -> Vec<Vec<i64>> {
    vertices.iter().map(|v| v.0[..3].to_vec()).collect()
}

/// An arc file holds either a plain arc or, with `"kind": "reduced_arc"`, a reduced one.
pub enum ArcInput {
    Plain(LatticeArc),
    Reduced(ReducedArc),
}

pub fn parse_arc(file: &PointsFile) -> Result<ArcInput, FormatError> {
    check_schema(file.schema)?;
    let pts = points(&file.vertices)?;
    if file.kind.as_deref() == Some("reduced_arc") {
        if file.denominator != ReducedArc::DENOMINATOR {
            return Err(LatticeError::WrongDenominator {
                expected: ReducedArc::DENOMINATOR,
                got: file.denominator,
            }
            .into());
        }
        return Ok(ArcInput::Reduced(ReducedArc::new(pts)?));
    }
    Ok(ArcInput::Plain(LatticeArc::new(pts, file.denominator)?))
}

pub fn read_arc(path: &Path) -> Result<ArcInput, FormatError> {
    parse_arc(&read_json(path)?)
}

pub fn parse_knot(file: &PointsFile) -> Result<Lattice1Knot, FormatError> {
    check_schema(file.schema)?;
    Ok(Lattice1Knot::new(points(&file.vertices)?)?)
}

pub fn read_knot(path: &Path) -> Result<Lattice1Knot, FormatError> {
    parse_knot(&read_json(path)?)
}

pub fn arc_file(arc: &LatticeArc) -> PointsFile {
    PointsFile {
        schema: Some(SCHEMA),
        kind: Some("arc".into()),
        denominator: arc.denominator(),
        vertices: rows(arc.vertices()),
    }
}

pub fn reduced_arc_file(arc: &ReducedArc) -> PointsFile {
    PointsFile {
        schema: Some(SCHEMA),
        kind: Some("reduced_arc".into()),
        denominator: ReducedArc::DENOMINATOR,
        vertices: rows(arc.vertices()),
    }
}

pub fn knot_file(knot: &Lattice1Knot) -> PointsFile {
    PointsFile {
        schema: Some(SCHEMA),
        kind: Some("knot".into()),
        denominator: 1,
        vertices: rows(knot.vertices()),
    }
}

pub fn parse_surface(file: &SurfaceFile) -> Result<CubicalSurface, FormatError> {
    check_schema(file.schema)?;
    let mut squares = Vec::with_capacity(file.squares.len());
    for (index, s) in file.squares.iter().enumerate() {
        let [a, b] = s.axes;
        if !(1..=4).contains(&a) || !(1..=4).contains(&b) || a == b {
            return Err(FormatError::Axes { index });
        }
        squares.push(UnitSquare::new(s.base, a - 1, b - 1));
    }
    Ok(CubicalSurface::new(file.denominator, squares))
}

pub fn read_surface(path: &Path) -> Result<CubicalSurface, FormatError> {
    parse_surface(&read_json(path)?)
}

pub fn surface_file(surface: &CubicalSurface) -> SurfaceFile {
    SurfaceFile {
        schema: Some(SCHEMA),
        denominator: surface.denominator(),
        squares: surface.squares().iter().map(square_record).collect(),
    }
}

pub fn square_record(s: &UnitSquare) -> SquareRecord {
    let (a, b) = s.axes();
    SquareRecord {
        base: s.base(),
        axes: [a + 1, b + 1],
    }
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        Value::from(*r.numer())
    } else {
        Value::from(format!("{}/{}", r.numer(), r.denom()))
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialise");
    s.push('\n');
    s
}
