//! OBJ and OFF export of a cubical surface projected to `R^3`.

use std::collections::BTreeMap;
use std::fmt::Write;

use cubispin_core::surface::CubicalSurface;
use cubispin_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Off,
}

/// Linear map `R^4 -> R^3`.
#[derive(Clone, Debug, PartialEq)]
pub enum Projection {
    /// Forget one coordinate (0-based).
    Drop(usize),
    /// Rows of a rational 3x4 matrix.
    Matrix([[Rational; 4]; 3]),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("axis to drop must be in 1..=4")]
    Axis,
    #[error("expected 3 rows of 4 entries separated by ';' and ','")]
    Shape,
    #[error("bad matrix entry {0:?}")]
    Entry(String),
}

impl Projection {
    /// Parses `"a,b,c,d;e,f,g,h;i,j,k,l"` with entries like `1`, `-1/2`.
    pub fn parse_matrix(text: &str) -> Result<Projection, ProjectionError> {
        let rows: Vec<&str> = text.split(';').collect();
        if rows.len() != 3 {
            return Err(ProjectionError::Shape);
        }
        let mut m = [[Rational::from_integer(0); 4]; 3];
        for (i, row) in rows.iter().enumerate() {
            let entries: Vec<&str> = row.split(',').map(str::trim).collect();
            if entries.len() != 4 {
                return Err(ProjectionError::Shape);
            }
            for (j, e) in entries.iter().enumerate() {
                m[i][j] = parse_rational(e).ok_or_else(|| ProjectionError::Entry(e.to_string()))?;
            }
        }
        Ok(Projection::Matrix(m))
    }

    /// `k` is 1-based as on the command line.
    pub fn drop_axis(k: usize) -> Result<Projection, ProjectionError> {
        if (1..=4).contains(&k) {
            Ok(Projection::Drop(k - 1))
        } else {
            Err(ProjectionError::Axis)
        }
    }

    fn apply(&self, v: &[Rational; 4]) -> [Rational; 3] {
        match self {
            Projection::Drop(k) => {
                let mut out = [Rational::from_integer(0); 3];
                let mut i = 0;
                for (a, x) in v.iter().enumerate() {
                    if a != *k {
                        out[i] = *x;
                        i += 1;
                    }
                }
                out
            }
            Projection::Matrix(m) => {
                let mut out = [Rational::from_integer(0); 3];
                for i in 0..3 {
                    for j in 0..4 {
                        out[i] += m[i][j] * v[j];
                    }
                }
                out
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Decimal digits printed per coordinate.
pub const PRECISION: usize = 6;

fn fmt_coord(r: &Rational, out: &mut String) {
    let v = *r.numer() as f64 / *r.denom() as f64;
    // Avoid "-0.000000".
    let v = if v == 0.0 { 0.0 } else { v };
    write!(out, "{v:.PRECISION$}").expect("string write");
}

/// Renders the surface. Vertices are listed in sorted 4D order, faces as quads
/// with corners `base, base + e_i, base + e_i + e_j, base + e_j`.
pub fn export(surface: &CubicalSurface, projection: &Projection, format: MeshFormat) -> String {
    let lambda = surface.denominator();
    let index: BTreeMap<[i64; 4], usize> = surface.vertices().into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = String::new();
    match format {
        MeshFormat::Obj => {
            writeln!(out, "# cubical surface: {} squares, denominator {}", surface.area(), lambda).expect("write");
        }
        MeshFormat::Off => {
            writeln!(out, "OFF").expect("write");
            writeln!(out, "{} {} 0", index.len(), surface.area()).expect("write");
        }
    }
    for v in index.keys() {
        let p = projection.apply(&v.map(|x| Rational::new(x, lambda)));
        if format == MeshFormat::Obj {
            out.push_str("v ");
        }
        for (k, c) in p.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            fmt_coord(c, &mut out);
        }
        out.push('\n');
    }
    for sq in surface.squares() {
        let ids = sq.corners().map(|c| index[&c]);
        match format {
            MeshFormat::Obj => writeln!(out, "f {} {} {} {}", ids[0] + 1, ids[1] + 1, ids[2] + 1, ids[3] + 1),
            MeshFormat::Off => writeln!(out, "4 {} {} {} {}", ids[0], ids[1], ids[2], ids[3]),
        }
        .expect("write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubispin_core::surface::box_boundary;

    fn cube() -> CubicalSurface {
        CubicalSurface::new(1, box_boundary([0; 4], [0, 1, 2], [1, 1, 1]))
    }

    #[test]
    fn off_counts() {
        let text = export(&cube(), &Projection::Drop(3), MeshFormat::Off);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "OFF");
        assert_eq!(lines[1], "8 6 0");
        assert_eq!(lines[2], "0.000000 0.000000 0.000000");
        assert_eq!(lines.len(), 2 + 8 + 6);
        assert!(lines[10].starts_with("4 "));
    }

    #[test]
    fn obj_faces_are_one_based() {
        let text = export(&cube(), &Projection::Drop(3), MeshFormat::Obj);
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 8);
        let faces: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| !f.split(' ').any(|t| t == "0")));
    }

    #[test]
    fn matrices() {
        let p = Projection::parse_matrix("1,0,0,1/2; 0,1,0,0; 0,0,1,-1/3").unwrap();
        let img = p.apply(&[1, 2, 3, 6].map(Rational::from_integer));
        assert_eq!(img, [4, 2, 1].map(Rational::from_integer));
        assert_eq!(Projection::parse_matrix("1,0;0,1"), Err(ProjectionError::Shape));
        assert!(matches!(Projection::parse_matrix("1,0,0,x;0,1,0,0;0,0,1,0"), Err(ProjectionError::Entry(_))));
        assert_eq!(Projection::drop_axis(5), Err(ProjectionError::Axis));
        assert_eq!(Projection::drop_axis(4), Ok(Projection::Drop(3)));
    }
}
