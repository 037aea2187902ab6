//! Shared test oracles, independent of the library's computation paths.
//! Not every test binary uses every oracle.
#![allow(dead_code, clippy::needless_range_loop)]

/// Solves `gamma^T M = gamma^T`, `sum(gamma) = 1` by dense Gaussian
/// elimination with partial pivoting. The eigen equations are rank n-1 for
/// an irreducible row-stochastic matrix (they sum to zero), so the last one
/// is replaced by the normalisation.
pub fn solve_left_eigenvector_dense(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let mut a = vec![vec![0.0f64; n + 1]; n];
    for j in 0..n - 1 {
        for i in 0..n {
            a[j][i] = rows[i][j] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for i in 0..n {
        a[n - 1][i] = 1.0;
    }
    a[n - 1][n] = 1.0;

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        let p = a[col][col];
        assert!(p.abs() > 1e-13, "singular eigen system");
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col] / p;
                for k in col..=n {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

/// Star detection by trying every node as the centre against every edge.
pub fn brute_force_star_center(rows: &[Vec<f64>]) -> Option<usize> {
    let n = rows.len();
    'candidate: for c in 0..n {
        let mut has_edge = false;
        for i in 0..n {
            for j in 0..n {
                if i != j && rows[i][j] > 0.0 {
                    has_edge = true;
                    if i != c && j != c {
                        continue 'candidate;
                    }
                }
            }
        }
        if has_edge {
            return Some(c + 1);
        }
    }
    None
}

/// Irreducibility via boolean matrix powers: squares `I | A` until the
/// reachability pattern is closed, then checks it is all-ones.
pub fn irreducible_by_matrix_powers(rows: &[Vec<f64>]) -> bool {
    let n = rows.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            reach[i][j] = i == j || rows[i][j] > 0.0;
        }
    }
    let mut steps = 1usize;
    while steps < n {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        next[i][j] |= reach[k][j];
                    }
                }
            }
        }
        reach = next;
        steps *= 2;
    }
    reach.iter().all(|row| row.iter().all(|&b| b))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
