//! Exact linear algebra over `Q` for fans, walls and stability pairings.

use num::rational::Ratio;
use num::{Signed, Zero};

pub type Q = Ratio<i64>;

pub fn q(x: i64) -> Q {
    Ratio::from_integer(x)
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let piv = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let m = row[c];
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x -= m * *y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut a = rows.to_vec();
    rref(&mut a).len()
}

/// Basis of `{x : row · x = 0 for every row}` in `Q^ncols`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = q(1);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f];
            }
            v
        })
        .collect()
}

/// Some `c` with `Σ c_j cols_j = target`, if one exists.
pub fn solve(cols: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = cols.len();
    let d = target.len();
    let mut a: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][n];
    }
    Some(x)
}

/// Whether `v` is a nonnegative combination of `gens`, by Carathéodory: some linearly
/// independent subset of generators carries `v` with nonnegative coefficients.
pub fn in_cone(gens: &[Vec<Q>], v: &[Q]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let d = v.len();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(gens: &[Vec<Q>], v: &[Q], d: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if !chosen.is_empty() {
            let cols: Vec<Vec<Q>> = chosen.iter().map(|&i| gens[i].clone()).collect();
            if let Some(c) = solve(&cols, v) {
                if c.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
        if chosen.len() == d {
            return false;
        }
        for i in start..gens.len() {
            chosen.push(i);
            let cols: Vec<Vec<Q>> = chosen.iter().map(|&j| gens[j].clone()).collect();
            if rank(&cols) == chosen.len() && rec(gens, v, d, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(gens, v, d, 0, &mut chosen)
}

/// Smith normal form diagonal (nonzero invariant factors, then zeros) of an integer matrix.
pub fn smith_invariants(m: &[Vec<i64>], ncols: usize) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let nrows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut done = true;
            for i in t + 1..nrows {
                let f = a[i][t] / p;
                if f != 0 {
                    let pr = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(pr) {
                        *x -= f * y;
                    }
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..ncols {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // divisibility of the rest of the block
                let bad = (t + 1..nrows).flat_map(|i| (t + 1..ncols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let ri = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(ri) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag.resize(ncols, 0);
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_membership() {
        let g = vec![qvec(&[1, 0]), qvec(&[0, 1])];
        assert!(in_cone(&g, &qvec(&[2, 3])));
        assert!(!in_cone(&g, &qvec(&[-1, 3])));
        let g = vec![qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[-1, -1])];
        assert!(in_cone(&g, &qvec(&[-5, 2])));
    }

    #[test]
    fn smith_of_small_matrices() {
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![1, 1]], 2), vec![1, 0]);
        assert_eq!(smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3), vec![2, 6, 12]);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![qvec(&[1, 2, 3])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(dot(&rows[0], &v).is_zero());
        }
    }
}
