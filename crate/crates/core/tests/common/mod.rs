//! Random valid arcs for property tests.
#![allow(dead_code)]

pub mod naive;

use std::collections::HashSet;

pub type P = [i64; 3];

const DIRS: [P; 6] = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]];

fn column_free(seen: &HashSet<P>, p: P) -> bool {
    (0..p[2]).all(|z| !seen.contains(&[p[0], p[1], z]))
}

/// A self-avoiding arc from `(0,0,0)` up, through `choices` (each a preferred
/// direction, skipped forward when blocked), then straight down to `z = 0`.
/// Heights stay in `1..=max_height` strictly between the endpoints.
pub fn arc_from_choices(choices: &[u8], max_height: i64) -> Vec<P> {
    let mut path: Vec<P> = vec![[0, 0, 0], [0, 0, 1]];
    let mut seen: HashSet<P> = path.iter().copied().collect();
    for &c in choices {
        let cur = *path.last().unwrap();
        let next = (0..6).map(|k| DIRS[(c as usize + k) % 6]).map(|d| [cur[0] + d[0], cur[1] + d[1], cur[2] + d[2]]).find(
            |n| n[2] >= 1 && n[2] <= max_height && !seen.contains(n),
        );
        match next {
            Some(n) => {
                seen.insert(n);
                path.push(n);
            }
            None => break,
        }
    }
    // Back off until the column below the last vertex is free.
    while path.len() > 2 {
        let last = *path.last().unwrap();
        if column_free(&seen, last) {
            break;
        }
        seen.remove(&last);
        path.pop();
    }
    if path.len() == 2 {
        path.push([1, 0, 1]);
    }
    let last = *path.last().unwrap();
    for z in (0..last[2]).rev() {
        path.push([last[0], last[1], z]);
    }
    path
}

pub fn zsum(a: &[P]) -> i64 {
    a.iter().map(|p| p[2]).sum()
}

/// The verified 23-vertex trefoil arc of height 2.
pub const TREFOIL23: [P; 23] = [
    [1, -3, 0],
    [1, -3, 1],
    [1, -3, 2],
    [0, -3, 2],
    [-1, -3, 2],
    [-1, -3, 1],
    [-1, -2, 1],
    [-1, -1, 1],
    [0, -1, 1],
    [1, -1, 1],
    [2, -1, 1],
    [2, -2, 1],
    [2, -3, 1],
    [2, -4, 1],
    [1, -4, 1],
    [0, -4, 1],
    [0, -3, 1],
    [0, -2, 1],
    [0, -2, 2],
    [0, -1, 2],
    [0, 0, 2],
    [0, 0, 1],
    [0, 0, 0],
];

/// One braid generator drawn in `x0..=x0 + 4`: strands at `y = 2i` and `y = 2i + 2`
/// swap, one of them bridging over the other at height 1.
fn crossing(x0: i64, i: usize, inverse: bool) -> (Vec<P>, Vec<P>) {
    let y = 2 * i as i64;
    if !inverse {
        (
            vec![[x0, y, 0], [x0 + 1, y, 0], [x0 + 1, y + 1, 0], [x0 + 2, y + 1, 0], [x0 + 3, y + 1, 0], [x0 + 3, y + 2, 0], [x0 + 4, y + 2, 0]],
            vec![
                [x0, y + 2, 0],
                [x0 + 1, y + 2, 0],
                [x0 + 2, y + 2, 0],
                [x0 + 2, y + 2, 1],
                [x0 + 2, y + 1, 1],
                [x0 + 2, y, 1],
                [x0 + 2, y, 0],
                [x0 + 3, y, 0],
                [x0 + 4, y, 0],
            ],
        )
    } else {
        (
            vec![
                [x0, y, 0],
                [x0 + 1, y, 0],
                [x0 + 1, y, 1],
                [x0 + 1, y + 1, 1],
                [x0 + 2, y + 1, 1],
                [x0 + 3, y + 1, 1],
                [x0 + 3, y + 1, 0],
                [x0 + 3, y + 2, 0],
                [x0 + 4, y + 2, 0],
            ],
            vec![[x0, y + 2, 0], [x0 + 1, y + 2, 0], [x0 + 2, y + 2, 0], [x0 + 2, y + 1, 0], [x0 + 2, y, 0], [x0 + 3, y, 0], [x0 + 4, y, 0]],
        )
    }
}

/// Lattice closure of a braid word on `m` strands; `(i, inverse)` is `σ_{i+1}^{±1}`.
/// The closure must be a knot (one component). Heights stay in `{0, 1}`.
pub fn braid_closure(word: &[(usize, bool)], m: usize) -> Vec<P> {
    let blocks: Vec<Vec<(Vec<P>, usize)>> = word
        .iter()
        .enumerate()
        .map(|(b, &(i, inv))| {
            let x0 = 4 * b as i64;
            let (a, c) = crossing(x0, i, inv);
            (0..m)
                .map(|p| match p {
                    _ if p == i => (a.clone(), i + 1),
                    _ if p == i + 1 => (c.clone(), i),
                    _ => ((0..5).map(|k| [x0 + k, 2 * p as i64, 0]).collect(), p),
                })
                .collect()
        })
        .collect();
    let xe = 4 * word.len() as i64;
    let closure = |p: usize| -> Vec<P> {
        let o = (m - p) as i64;
        let y0 = 2 * p as i64;
        let yp = 2 * m as i64 + 2 * (m - 1 - p) as i64;
        let mut v: Vec<P> = (0..=o).map(|k| [xe + k, y0, 0]).collect();
        v.extend((y0 + 1..=yp).map(|y| [xe + o, y, 0]));
        v.extend((-o..xe + o).rev().map(|x| [x, yp, 0]));
        v.extend((y0..yp).rev().map(|y| [-o, y, 0]));
        v.extend((-o + 1..=0).map(|x| [x, y0, 0]));
        v
    };
    let mut path: Vec<P> = Vec::new();
    let mut p = 0;
    loop {
        for b in &blocks {
            let (seg, next) = &b[p];
            let skip = usize::from(path.last() == seg.first());
            path.extend_from_slice(&seg[skip..]);
            p = *next;
        }
        path.extend_from_slice(&closure(p)[1..]);
        if p == 0 {
            break;
        }
    }
    if path.last() == path.first() {
        path.pop();
    }
    path
}

pub const FIGURE_EIGHT: [(usize, bool); 4] = [(0, false), (1, true), (0, false), (1, true)];
pub const TREFOIL_BRAID: [(usize, bool); 4] = [(0, false), (1, false), (0, false), (1, false)];
