//! Pruefer codes: the bijection between labeled trees on `n` vertices and
//! sequences of length `n - 2` over `0..n`. Exhaustive and random tree
//! streams are both built on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Largest `n` accepted by [`enumerate_trees`] (`8^6 = 262144` trees).
pub const MAX_EXHAUSTIVE_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PruferCode(pub Vec<usize>);

pub fn prufer_decode(code: &PruferCode, n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let seq = &code.0;
    if seq.len() != n - 2 {
        return Err(Error::CodeLength { len: seq.len(), n });
    }
    if let Some(&entry) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::EntryOutOfRange { entry, n });
    }
    Tree::from_dense_edges(n, &decode_edges(seq, n))
}

/// Linear-time decoding; `seq` must already be validated.
fn decode_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a tree has leaves");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

pub fn prufer_encode(tree: &Tree) -> PruferCode {
    let n = tree.len();
    if n <= 2 {
        return PruferCode(Vec::new());
    }
    // Root at n - 1 so every other vertex has a parent.
    let (_, parent) = tree.bfs_from(n - 1, None);
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut code = Vec::with_capacity(n - 2);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a tree has leaves");
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = parent[leaf];
        code.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    PruferCode(code)
}

/// Number of labeled trees on `n` vertices, `n^(n-2)`.
pub fn cayley_count(n: usize) -> u64 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u64).pow((n - 2) as u32),
    }
}

/// The `index`-th labeled tree in enumeration order: the code is `index`
/// written in base `n`, most significant digit first.
pub fn tree_by_index(n: usize, index: u64) -> Tree {
    let len = n.saturating_sub(2);
    let mut seq = vec![0usize; len];
    let mut rest = index;
    for slot in seq.iter_mut().rev() {
        *slot = (rest % n as u64) as usize;
        rest /= n as u64;
    }
    Tree::from_dense_edges(n, &decode_edges(&seq, n)).expect("decoded codes are trees")
}

/// All `n^(n-2)` labeled trees on `n` vertices, in code order.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Tree>> {
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge { n, max: MAX_EXHAUSTIVE_N });
    }
    Ok((0..cayley_count(n)).map(move |i| tree_by_index(n, i)))
}

pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    assert!(n >= 1);
    if n == 1 {
        return Tree::single(0);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    Tree::from_dense_edges(n, &decode_edges(&seq, n)).expect("decoded codes are trees")
}

/// `count` uniformly random labeled trees on `n` vertices; deterministic
/// per `seed`.
pub fn random_trees(n: usize, count: usize, seed: u64) -> Result<impl Iterator<Item = Tree>> {
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(move |_| random_tree(n, &mut rng)))
}
