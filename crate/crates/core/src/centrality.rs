//! Centrality measures on trees.
//!
//! Every measure maps each vertex to a [`ScoreKey`]; larger keys (in the
//! key's own orientation) mean more central.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::constructive::{eval_rooted, with_arith, Arith, ConstructiveSpec};
use crate::error::{Error, Result};
use crate::params::{lookup, parse_f64, split_id};
use crate::score::{ScoreKey, Tally};
use crate::tree::Tree;

pub const PAGERANK_DEFAULT_ALPHA: f64 = 0.85;
/// Residual at which the iterative measures stop.
pub const ITERATION_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureId {
    Degree,
    Closeness,
    Eccentricity,
    AllSubgraphs,
    Betweenness,
    Decay(f64),
    PageRank(f64),
    Eigenvector,
    /// Rooting measure built from eccentricity centers; it has no potential
    /// function.
    CStar,
    /// `Eccentricity - Closeness / |T|^2`: roots trees but not consistently.
    EccMinusCloseness,
    /// The value `f(v, T)` of a constructive potential, used as a measure.
    Potential(Box<ConstructiveSpec>),
}

/// Names accepted by [`MeasureId::from_str`] (parameters omitted).
pub const MEASURE_NAMES: [&str; 11] = [
    "degree",
    "closeness",
    "eccentricity",
    "all-subgraphs",
    "betweenness",
    "decay:alpha=A",
    "pagerank[:alpha=A]",
    "eigenvector",
    "cstar",
    "ecc-minus-closeness",
    "abc:a=A,b=B,c=C",
];

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

impl MeasureId {
    pub fn decay(alpha: f64) -> Result<Self> {
        Ok(MeasureId::Decay(check_alpha(alpha)?))
    }

    pub fn pagerank(alpha: f64) -> Result<Self> {
        Ok(MeasureId::PageRank(check_alpha(alpha)?))
    }

    /// Whether keys of this measure are compared exactly.
    pub fn is_exact(&self) -> bool {
        !matches!(
            self,
            MeasureId::Decay(_) | MeasureId::PageRank(_) | MeasureId::Eigenvector | MeasureId::CStar
        ) && !matches!(self, MeasureId::Potential(s) if s.mode != crate::constructive::NumericMode::Exact)
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = split_id(s)?;
        let no_params = |m: MeasureId| {
            if params.is_empty() {
                Ok(m)
            } else {
                Err(Error::BadParameter(format!("`{name}` takes no parameters")))
            }
        };
        match name {
            "degree" => no_params(MeasureId::Degree),
            "closeness" => no_params(MeasureId::Closeness),
            "eccentricity" => no_params(MeasureId::Eccentricity),
            "all-subgraphs" => no_params(MeasureId::AllSubgraphs),
            "betweenness" => no_params(MeasureId::Betweenness),
            "eigenvector" => no_params(MeasureId::Eigenvector),
            "cstar" => no_params(MeasureId::CStar),
            "ecc-minus-closeness" => no_params(MeasureId::EccMinusCloseness),
            "decay" => {
                let alpha = lookup(&params, "alpha", &["alpha"])?
                    .ok_or_else(|| Error::BadParameter("decay needs `alpha`".into()))?;
                MeasureId::decay(parse_f64(alpha)?)
            }
            "pagerank" => {
                let alpha = lookup(&params, "alpha", &["alpha"])?.map(parse_f64).transpose()?;
                MeasureId::pagerank(alpha.unwrap_or(PAGERANK_DEFAULT_ALPHA))
            }
            "abc" => Ok(MeasureId::Potential(Box::new(s.parse()?))),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureId::Degree => f.write_str("degree"),
            MeasureId::Closeness => f.write_str("closeness"),
            MeasureId::Eccentricity => f.write_str("eccentricity"),
            MeasureId::AllSubgraphs => f.write_str("all-subgraphs"),
            MeasureId::Betweenness => f.write_str("betweenness"),
            MeasureId::Decay(a) => write!(f, "decay:alpha={a}"),
            MeasureId::PageRank(a) => write!(f, "pagerank:alpha={a}"),
            MeasureId::Eigenvector => f.write_str("eigenvector"),
            MeasureId::CStar => f.write_str("cstar"),
            MeasureId::EccMinusCloseness => f.write_str("ecc-minus-closeness"),
            MeasureId::Potential(spec) => f.write_str(&spec.name),
        }
    }
}

/// BFS order from `root`, parents, and subtree sizes.
fn rooted_sizes(tree: &Tree, root: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let (order, parent) = tree.bfs_from(root, None);
    let mut size = vec![1usize; tree.len()];
    for &x in order[1..].iter().rev() {
        size[parent[x]] += size[x];
    }
    (order, parent, size)
}

/// `sum_u d(v, u)` for every `v`, by rerooting.
pub fn distance_sums(tree: &Tree) -> Vec<u64> {
    let n = tree.len();
    let (order, parent, size) = rooted_sizes(tree, 0);
    let mut sums = vec![0u64; n];
    // Each non-root x lies in the subtrees of all its ancestors, so summing
    // sizes over non-root vertices gives the root's distance sum.
    sums[0] = order[1..].iter().map(|&x| size[x] as u64).sum();
    for &x in &order[1..] {
        sums[x] = sums[parent[x]] + n as u64 - 2 * size[x] as u64;
    }
    sums
}

pub fn eccentricities(tree: &Tree) -> Vec<usize> {
    let farthest = |d: &[usize]| (0..d.len()).max_by_key(|&i| (d[i], std::cmp::Reverse(i))).unwrap();
    let a = farthest(&tree.distances_from(0));
    let da = tree.distances_from(a);
    let db = tree.distances_from(farthest(&da));
    da.iter().zip(&db).map(|(x, y)| *x.max(y)).collect()
}

/// Number of connected subgraphs of `T` containing `v`.
pub fn all_subgraphs_count(tree: &Tree, v: usize) -> Result<BigUint> {
    tree.check_vertex(v)?;
    let (order, parent) = tree.bfs_from(v, None);
    Ok(down_counts(tree, &order, &parent).swap_remove(v))
}

pub(crate) fn down_counts(tree: &Tree, order: &[usize], parent: &[usize]) -> Vec<BigUint> {
    let mut down = vec![BigUint::one(); tree.len()];
    for &x in order[1..].iter().rev() {
        let term = &down[x] + 1u32;
        down[parent[x]] *= term;
    }
    down
}

/// Connected-subgraph counts for all vertices, by rerooting.
pub fn all_subgraph_counts(tree: &Tree) -> Vec<BigUint> {
    let (order, parent) = tree.bfs_from(0, None);
    let down = down_counts(tree, &order, &parent);
    let mut count = vec![BigUint::one(); tree.len()];
    count[0] = down[0].clone();
    for &x in &order[1..] {
        let p = parent[x];
        // Subgraphs of T_{p,x} containing p.
        let up = &count[p] / (&down[x] + 1u32);
        count[x] = &down[x] * (up + 1u32);
    }
    count
}

/// Ordered pairs `(u, w)`, both different from `v`, whose path runs
/// through `v`.
pub fn betweenness_counts(tree: &Tree) -> Vec<i64> {
    let n = tree.len();
    let (_, parent, size) = rooted_sizes(tree, 0);
    let mut squares = vec![0i64; n];
    for v in 0..n {
        if parent[v] != usize::MAX {
            squares[parent[v]] += (size[v] * size[v]) as i64;
            let rest = (n - size[v]) as i64;
            squares[v] += rest * rest;
        }
    }
    let m = n as i64 - 1;
    squares.iter().map(|s| m * m - s).collect()
}

pub fn decay_scores(tree: &Tree, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    Ok((0..tree.len())
        .map(|v| {
            tree.distances_from(v)
                .iter()
                .filter(|&&d| d > 0)
                .map(|&d| alpha.powi(d as i32))
                .sum()
        })
        .collect())
}

/// Fixed point of `x = (1 - alpha)/n + alpha * P x` with `P` the
/// column-stochastic random-walk matrix.
pub fn pagerank_scores(tree: &Tree, alpha: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let n = tree.len();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let teleport = (1.0 - alpha) / n as f64;
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..MAX_ITERATIONS {
        let share: Vec<f64> = (0..n).map(|j| x[j] / tree.degree(j) as f64).collect();
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = teleport + alpha * tree.neighbors(i).iter().map(|&j| share[j]).sum::<f64>();
        }
        let residual: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if residual <= ITERATION_TOL {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence { what: "pagerank", iterations: MAX_ITERATIONS })
}

/// Principal eigenvector of the adjacency matrix, unit L2 norm, by power
/// iteration on `A + I` (trees are bipartite, so `A` alone oscillates).
pub fn eigenvector_scores(tree: &Tree) -> Result<Vec<f64>> {
    let n = tree.len();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut next = vec![0.0; n];
    for _ in 0..MAX_ITERATIONS {
        for (i, slot) in next.iter_mut().enumerate() {
            *slot = x[i] + tree.neighbors(i).iter().map(|&j| x[j]).sum::<f64>();
        }
        let norm = next.iter().map(|y| y * y).sum::<f64>().sqrt();
        next.iter_mut().for_each(|y| *y /= norm);
        let residual = x.iter().zip(&next).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        std::mem::swap(&mut x, &mut next);
        if residual <= ITERATION_TOL {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence { what: "eigenvector", iterations: MAX_ITERATIONS })
}

/// The vertex set scored 2 by C*: built from the eccentricity centers, with
/// ties broken toward the larger hanging subtree.
pub fn cstar_roots(tree: &Tree) -> Vec<usize> {
    let n = tree.len();
    if n == 1 {
        return vec![0];
    }
    let ecc = eccentricities(tree);
    let best = *ecc.iter().min().unwrap();
    let centers: Vec<usize> = (0..n).filter(|&v| ecc[v] == best).collect();
    let size = |u: usize, v: usize| tree.bfs_from(u, Some(v)).0.len();
    match centers[..] {
        [w1, w2] => {
            let (s1, s2) = (size(w1, w2), size(w2, w1));
            match s1.cmp(&s2) {
                std::cmp::Ordering::Greater => vec![w1],
                std::cmp::Ordering::Less => vec![w2],
                std::cmp::Ordering::Equal => vec![w1, w2],
            }
        }
        [w] => {
            let sizes: Vec<(usize, usize)> = tree.neighbors(w).iter().map(|&u| (size(u, w), u)).collect();
            let top = sizes.iter().map(|s| s.0).max().unwrap();
            let heavy: Vec<usize> = sizes.iter().filter(|s| s.0 == top).map(|s| s.1).collect();
            if let [m] = heavy[..] {
                let mut r = vec![w, m];
                r.sort_unstable();
                r
            } else {
                vec![w]
            }
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

pub fn cstar_scores(tree: &Tree) -> Vec<f64> {
    let roots = cstar_roots(tree);
    let dist: Vec<Vec<usize>> = roots.iter().map(|&r| tree.distances_from(r)).collect();
    (0..tree.len())
        .map(|v| {
            if roots.contains(&v) {
                2.0
            } else {
                dist.iter().map(|d| 1.0 / d[v] as f64).fold(0.0, f64::max)
            }
        })
        .collect()
}

fn need_two(tree: &Tree, measure: &'static str) -> Result<()> {
    if tree.len() < 2 {
        Err(Error::SingleVertex { measure })
    } else {
        Ok(())
    }
}

pub fn score_all(measure: &MeasureId, tree: &Tree) -> Result<Vec<ScoreKey>> {
    let n = tree.len();
    let floats = |v: Vec<f64>| v.into_iter().map(ScoreKey::Float).collect();
    Ok(match measure {
        MeasureId::Degree => (0..n).map(|v| ScoreKey::int(tree.degree(v) as i64)).collect(),
        MeasureId::Closeness => {
            need_two(tree, "closeness")?;
            distance_sums(tree).into_iter().map(|s| ScoreKey::int_desc(s as i64)).collect()
        }
        MeasureId::Eccentricity => {
            need_two(tree, "eccentricity")?;
            eccentricities(tree).into_iter().map(|e| ScoreKey::int_desc(e as i64)).collect()
        }
        MeasureId::AllSubgraphs => all_subgraph_counts(tree).into_iter().map(ScoreKey::Big).collect(),
        MeasureId::Betweenness => betweenness_counts(tree).into_iter().map(ScoreKey::int).collect(),
        MeasureId::Decay(alpha) => floats(decay_scores(tree, *alpha)?),
        MeasureId::PageRank(alpha) => floats(pagerank_scores(tree, *alpha)?),
        MeasureId::Eigenvector => floats(eigenvector_scores(tree)?),
        MeasureId::CStar => floats(cstar_scores(tree)),
        MeasureId::EccMinusCloseness => {
            need_two(tree, "ecc-minus-closeness")?;
            let nn = BigInt::from(n * n);
            eccentricities(tree)
                .into_iter()
                .zip(distance_sums(tree))
                .map(|(e, s)| {
                    let ecc = BigRational::new(1.into(), BigInt::from(e));
                    ScoreKey::Ratio(ecc - BigRational::new(1.into(), &nn * BigInt::from(s)))
                })
                .collect()
        }
        MeasureId::Potential(spec) => potential_scores(spec, tree)?,
    })
}

fn potential_scores(spec: &ConstructiveSpec, tree: &Tree) -> Result<Vec<ScoreKey>> {
    with_arith!(spec, |a| {
        let mut out = Vec::with_capacity(tree.len());
        for v in 0..tree.len() {
            let values = eval_rooted(&a, tree, v)?;
            out.push(a.key(&values[v]));
        }
        Ok::<_, Error>(out)
    })
}

pub fn score(measure: &MeasureId, tree: &Tree, v: usize) -> Result<ScoreKey> {
    tree.check_vertex(v)?;
    Ok(score_all(measure, tree)?.swap_remove(v))
}

/// Indices whose key ties the maximum.
pub fn max_set_of(keys: &[ScoreKey]) -> Vec<usize> {
    Tally::default().max_set(keys)
}

/// `Max_C(T)`. A single vertex is its own maximum for every measure.
pub fn max_set(measure: &MeasureId, tree: &Tree) -> Result<Vec<usize>> {
    if tree.len() == 1 {
        return Ok(vec![0]);
    }
    Ok(max_set_of(&score_all(measure, tree)?))
}
