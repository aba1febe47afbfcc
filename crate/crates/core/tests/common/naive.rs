//! Unpruned cycle enumeration and canonical forms, written independently of the crate.

use std::collections::BTreeSet;

pub type P = [i64; 3];

pub struct Bounds {
    pub max_height: i64,
    pub max_zsum: i64,
    pub max_len: usize,
    pub footprint: (i64, i64),
}

const DIRS: [P; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

/// Least vertex sequence over the 8 symmetries of the square acting on `(x, y)`,
/// translations in `(x, y)`, starting vertices and both directions.
pub fn canonical(cycle: &[P]) -> Vec<P> {
    let n = cycle.len();
    let mut best: Option<Vec<P>> = None;
    for swap in [false, true] {
        for sx in [1, -1] {
            for sy in [1, -1] {
                let img: Vec<P> = cycle
                    .iter()
                    .map(|p| {
                        let (x, y) = if swap { (p[1], p[0]) } else { (p[0], p[1]) };
                        [sx * x, sy * y, p[2]]
                    })
                    .collect();
                let mx = img.iter().map(|p| p[0]).min().unwrap();
                let my = img.iter().map(|p| p[1]).min().unwrap();
                let img: Vec<P> = img.iter().map(|p| [p[0] - mx, p[1] - my, p[2]]).collect();
                for s in 0..n {
                    for dir in [1, n - 1] {
                        let seq: Vec<P> = (0..n).map(|k| img[(s + k * dir) % n]).collect();
                        if best.as_ref().map_or(true, |b| seq < *b) {
                            best = Some(seq);
                        }
                    }
                }
            }
        }
    }
    best.unwrap()
}

fn admissible(cycle: &[P], b: &Bounds) -> bool {
    let n = cycle.len();
    let xs: Vec<i64> = cycle.iter().map(|p| p[0]).collect();
    let ys: Vec<i64> = cycle.iter().map(|p| p[1]).collect();
    let w = xs.iter().max().unwrap() - xs.iter().min().unwrap() + 1;
    let d = ys.iter().max().unwrap() - ys.iter().min().unwrap() + 1;
    let fits = (w <= b.footprint.0 && d <= b.footprint.1) || (w <= b.footprint.1 && d <= b.footprint.0);
    let on_plane: Vec<bool> = cycle.iter().map(|p| p[2] == 0).collect();
    // One cyclic run of plane vertices, and at least one vertex above.
    let starts = (0..n).filter(|&i| on_plane[i] && !on_plane[(i + n - 1) % n]).count();
    let zsum: i64 = cycle.iter().map(|p| p[2]).sum();
    fits && starts == 1 && zsum <= b.max_zsum && cycle.iter().all(|p| p[2] <= b.max_height)
}

/// Every admissible cycle, canonicalised.
pub fn cycles(b: &Bounds) -> BTreeSet<Vec<P>> {
    let mut out = BTreeSet::new();
    let span = b.footprint.0.max(b.footprint.1) - 1;
    let mut path = vec![[0i64, 0, 0]];
    walk(&mut path, b, span, &mut out);
    out
}

fn walk(path: &mut Vec<P>, b: &Bounds, span: i64, out: &mut BTreeSet<Vec<P>>) {
    let cur = *path.last().unwrap();
    let n = path.len();
    let dist = |p: &P| (p[0].abs() + p[1].abs() + p[2].abs()) as usize;
    if n >= 4 && dist(&cur) == 1 {
        let lo = path.iter().map(|p| p[2]).min().unwrap();
        let shifted: Vec<P> = path.iter().map(|p| [p[0], p[1], p[2] - lo]).collect();
        if admissible(&shifted, b) {
            out.insert(canonical(&shifted));
        }
    }
    if n == b.max_len {
        return;
    }
    for d in DIRS {
        let next = [cur[0] + d[0], cur[1] + d[1], cur[2] + d[2]];
        // The origin is the least vertex of the cycle; the walk must still be able to close.
        if next <= [0, 0, 0] || path.contains(&next) || n + dist(&next) > b.max_len {
            continue;
        }
        let zs: Vec<i64> = path.iter().map(|p| p[2]).chain([next[2]]).collect();
        if zs.iter().max().unwrap() - zs.iter().min().unwrap() > b.max_height {
            continue;
        }
        if next[0].abs() > span || next[1].abs() > span {
            continue;
        }
        path.push(next);
        walk(path, b, span, out);
        path.pop();
    }
}
