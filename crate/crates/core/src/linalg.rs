//! Small exact linear algebra over `Z` and `Z/p`.

use alloc::vec::Vec;

/// Dimension of the null space of `m` (rows of equal length) over `Z/p`.
///
/// `p` must be prime; entries may be negative.
pub fn nullity_mod_p(m: &[Vec<i64>], cols: usize, p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = inverse_mod(a[rank][col], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..cols {
                    a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    cols - rank
}

fn inverse_mod(x: i64, p: i64) -> i64 {
    // Fermat: x^(p-2).
    let mut result = 1i64;
    let mut base = x.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Determinant of a square integer matrix by fraction-free elimination.
///
/// Returns `None` on `i128` overflow.
pub fn determinant(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                // Exact by Sylvester's identity.
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}
