//! Brute-force oracles shared by the integration tests and the acceptance
//! target.
#![allow(dead_code, clippy::needless_range_loop)]

use rootcast::*;

pub fn all_trees(max_n: usize) -> impl Iterator<Item = Tree> {
    (1..=max_n).flat_map(|n| {
        let trees: Box<dyn Iterator<Item = Tree>> =
            if n == 1 { Box::new(std::iter::once(Tree::single(0))) } else { Box::new(enumerate_trees(n).unwrap()) };
        trees
    })
}

pub fn connected(tree: &Tree, mask: u32) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in tree.neighbors(x) {
            let bit = 1u32 << y;
            if mask & bit != 0 && seen & bit == 0 {
                seen |= bit;
                stack.push(y);
            }
        }
    }
    seen == mask
}

/// Connected vertex subsets containing `v` and avoiding `banned`.
pub fn subsets_through(tree: &Tree, v: usize, banned: u32) -> u64 {
    let n = tree.len();
    (1u32..1 << n)
        .filter(|&m| m & (1 << v) != 0 && m & banned == 0 && connected(tree, m))
        .count() as u64
}

pub fn brute_betweenness(tree: &Tree) -> Vec<i64> {
    let n = tree.len();
    let mut out = vec![0i64; n];
    for s in 0..n {
        for t in 0..n {
            if s != t {
                let path = tree.path_between(s, t);
                for &x in &path[1..path.len() - 1] {
                    out[x] += 1;
                }
            }
        }
    }
    out
}

pub fn dist_matrix(tree: &Tree) -> Vec<Vec<usize>> {
    (0..tree.len()).map(|v| tree.distances_from(v)).collect()
}

/// Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

pub fn dense_pagerank(tree: &Tree, alpha: f64) -> Vec<f64> {
    let n = tree.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = 1.0;
        for &j in tree.neighbors(i) {
            a[i][j] -= alpha / tree.degree(j) as f64;
        }
    }
    solve(a, vec![(1.0 - alpha) / n as f64; n])
}

/// Cyclic Jacobi rotations on the symmetric `A + I`; returns the unit
/// eigenvector of the largest eigenvalue with nonnegative entries.
pub fn jacobi_top(tree: &Tree) -> Vec<f64> {
    let n = tree.len();
    let mut a = vec![vec![0.0; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1.0;
        for &j in tree.neighbors(i) {
            row[j] = 1.0;
        }
    }
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let top = (0..n).max_by(|&i, &j| a[i][i].total_cmp(&a[j][j])).unwrap();
    let mut x: Vec<f64> = v.iter().map(|row| row[top]).collect();
    let norm = x.iter().map(|y| y * y).sum::<f64>().sqrt();
    let sign = if x.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
    x.iter_mut().for_each(|y| *y *= sign / norm);
    x
}

pub fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * 1f64.max(x.abs()).max(y.abs()))
}

pub fn decay_direct(tree: &Tree, alpha: f64) -> Vec<f64> {
    dist_matrix(tree).iter().map(|row| row.iter().filter(|&&d| d > 0).map(|&d| alpha.powi(d as i32)).sum()).collect()
}

/// Root set of the C* measure, derived from eccentricities and subtree sizes.
pub fn cstar_root_oracle(tree: &Tree) -> Vec<usize> {
    let n = tree.len();
    if n == 1 {
        return vec![0];
    }
    let d = dist_matrix(tree);
    let ecc: Vec<usize> = d.iter().map(|r| *r.iter().max().unwrap()).collect();
    let min = *ecc.iter().min().unwrap();
    let centers: Vec<usize> = (0..n).filter(|&v| ecc[v] == min).collect();
    let side = |u: usize, v: usize| (0..n).filter(|&x| d[x][u] < d[x][v]).count();
    if let [a, b] = centers[..] {
        return match side(a, b).cmp(&side(b, a)) {
            std::cmp::Ordering::Greater => vec![a],
            std::cmp::Ordering::Less => vec![b],
            std::cmp::Ordering::Equal => vec![a, b],
        };
    }
    let w = centers[0];
    let sizes: Vec<(usize, usize)> = tree.neighbors(w).iter().map(|&u| (side(u, w), u)).collect();
    let best = sizes.iter().map(|s| s.0).max().unwrap();
    let top: Vec<usize> = sizes.iter().filter(|s| s.0 == best).map(|s| s.1).collect();
    let mut roots = vec![w];
    if top.len() == 1 {
        roots.push(top[0]);
    }
    roots.sort_unstable();
    roots
}
