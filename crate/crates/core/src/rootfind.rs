//! Finding the root of a tree from a symmetric constructive potential in
//! `O(n log n)`, plus the quadratic score-everything baseline.
//!
//! Leaves start in a min-queue with potential `1`. The cheapest frontier
//! vertex is pulled and folded into its only unprocessed neighbor; a vertex
//! joins the frontier once a single unprocessed neighbor remains. The last
//! vertex standing is a root.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::centrality::{max_set_of, score_all, MeasureId};
use crate::constructive::{eval_hanging, eval_rooted, with_arith, Arith, ConstructiveSpec, Monoid, NumericMode};
use crate::error::{Error, Result};
use crate::prufer::random_tree;
use crate::score::ScoreKey;
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Algorithm1,
    Naive,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Algorithm1 => "algorithm1",
            Method::Naive => "naive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootResult {
    /// One vertex or two adjacent vertices, ascending.
    pub roots: Vec<usize>,
    /// Value per root: `f(r, T)` for potentials, the score for measures.
    pub values: Vec<ScoreKey>,
    pub method: Method,
}

/// Min-heap keyed by `(value, vertex)` under the backend's total order.
struct FrontierHeap<'a, A: Arith> {
    arith: &'a A,
    items: Vec<(A::Value, usize)>,
}

impl<'a, A: Arith> FrontierHeap<'a, A> {
    fn new(arith: &'a A) -> Self {
        FrontierHeap { arith, items: Vec::new() }
    }

    fn less(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.items[i], &self.items[j]);
        self.arith.total_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)) == Ordering::Less
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn push(&mut self, value: A::Value, v: usize) {
        self.items.push((value, v));
        let mut i = self.items.len() - 1;
        while i > 0 {
            let p = (i - 1) / 2;
            if !self.less(i, p) {
                break;
            }
            self.items.swap(i, p);
            i = p;
        }
    }

    fn pop(&mut self) -> Option<(A::Value, usize)> {
        if self.items.is_empty() {
            return None;
        }
        let top = self.items.swap_remove(0);
        let n = self.items.len();
        let mut i = 0;
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut m = i;
            if l < n && self.less(l, m) {
                m = l;
            }
            if r < n && self.less(r, m) {
                m = r;
            }
            if m == i {
                break;
            }
            self.items.swap(i, m);
            i = m;
        }
        Some(top)
    }
}

/// Raw output of the pruning loop.
pub struct Pruned<V> {
    pub root: usize,
    /// `f(root, T)`.
    pub value: V,
    /// For every vertex other than the root, `f(x, T_{x,p})` where `p` is
    /// the neighbor `x` was folded into.
    pub pushed: Vec<Option<V>>,
    pub pulls: usize,
}

/// The pruning loop itself, on any arithmetic backend.
pub fn algorithm1<A: Arith>(arith: &A, tree: &Tree) -> Result<Pruned<A::Value>> {
    let n = tree.len();
    let mut pushed: Vec<Option<A::Value>> = vec![None; n];
    if n == 1 {
        return Ok(Pruned { root: 0, value: arith.identity(), pushed, pulls: 0 });
    }
    let mut pending: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    // XOR of the ids of unprocessed neighbors: once one remains, this is it.
    let mut open: Vec<usize> = (0..n).map(|v| tree.neighbors(v).iter().fold(0, |a, &b| a ^ b)).collect();
    let mut acc: Vec<A::Value> = vec![arith.identity(); n];
    let mut heap = FrontierHeap::new(arith);
    for v in 0..n {
        if pending[v] == 1 {
            pushed[v] = Some(arith.identity());
            heap.push(arith.identity(), v);
        }
    }
    let mut pulls = 0;
    while heap.len() > 1 {
        let (value, v) = heap.pop().expect("heap has two entries");
        pulls += 1;
        debug_assert_eq!(pending[v], 1, "frontier vertex {v} must have exactly one open neighbor");
        let w = open[v];
        pending[v] = 0;
        open[w] ^= v;
        pending[w] -= 1;
        let up = arith.leaf(&value);
        arith.check(&up)?;
        let merged = arith.op(&acc[w], &up);
        arith.check(&merged)?;
        acc[w] = merged;
        if pending[w] == 1 {
            pushed[w] = Some(acc[w].clone());
            heap.push(acc[w].clone(), w);
        }
    }
    let (_, root) = heap.pop().expect("one vertex remains");
    debug_assert_eq!(pulls, n - 1);
    // The root's last open neighbor (if any) was folded in above, so its
    // accumulator is the whole tree.
    let value = acc[root].clone();
    pushed[root] = None;
    Ok(Pruned { root, value, pushed, pulls })
}

fn require_symmetric(spec: &ConstructiveSpec) -> Result<()> {
    if spec.satisfies_lemma() {
        Ok(())
    } else {
        Err(Error::NotSymmetric)
    }
}

/// One root of `T` with respect to the potential.
pub fn find_root(tree: &Tree, spec: &ConstructiveSpec) -> Result<RootResult> {
    require_symmetric(spec)?;
    with_arith!(spec, |a| {
        let p = algorithm1(&a, tree)?;
        Ok(RootResult { roots: vec![p.root], values: vec![a.key(&p.value)], method: Method::Algorithm1 })
    })
}

/// All roots: the one found by [`find_root`] plus a neighbor that ties it.
pub fn find_roots_both(tree: &Tree, spec: &ConstructiveSpec) -> Result<RootResult> {
    require_symmetric(spec)?;
    with_arith!(spec, |a| both_roots(&a, tree))
}

fn both_roots<A: Arith>(arith: &A, tree: &Tree) -> Result<RootResult> {
    let p = algorithm1(arith, tree)?;
    let r = p.root;
    let nbrs = tree.neighbors(r);
    // Every neighbor of the root was folded into it.
    let ups: Vec<A::Value> = nbrs
        .iter()
        .map(|&w| arith.leaf(p.pushed[w].as_ref().expect("neighbor of the root was pushed")))
        .collect();
    let k = nbrs.len();
    let mut prefix = vec![arith.identity(); k + 1];
    let mut suffix = vec![arith.identity(); k + 1];
    for i in 0..k {
        prefix[i + 1] = arith.op(&prefix[i], &ups[i]);
        suffix[k - 1 - i] = arith.op(&suffix[k - i], &ups[k - 1 - i]);
    }
    let mut roots = vec![(r, arith.key(&p.value))];
    for (i, &w) in nbrs.iter().enumerate() {
        // f(r, T_{r,w}) against f(w, T_{w,r}).
        let without = arith.op(&prefix[i], &suffix[i + 1]);
        let fw = p.pushed[w].as_ref().expect("pushed");
        if arith.tie_cmp(fw, &without) == Ordering::Equal {
            let whole = arith.op(fw, &arith.leaf(&without));
            roots.push((w, arith.key(&whole)));
        }
    }
    roots.sort_by_key(|x| x.0);
    Ok(RootResult {
        roots: roots.iter().map(|x| x.0).collect(),
        values: roots.into_iter().map(|x| x.1).collect(),
        method: Method::Algorithm1,
    })
}

/// What the baseline scores.
#[derive(Debug, Clone, Copy)]
pub enum NaiveTarget<'a> {
    Measure(&'a MeasureId),
    Spec(&'a ConstructiveSpec),
}

fn validate_root_set(tree: &Tree, set: Vec<usize>) -> Result<Vec<usize>> {
    match set[..] {
        [_] => Ok(set),
        [a, b] if tree.has_edge(a, b) => Ok(set),
        _ => Err(Error::NotARoot(set)),
    }
}

/// Scores every vertex separately and returns the argmax set.
pub fn naive_root(tree: &Tree, target: NaiveTarget<'_>) -> Result<RootResult> {
    let keys = naive_scores(tree, target)?;
    let roots = validate_root_set(tree, max_set_of(&keys))?;
    Ok(RootResult { values: roots.iter().map(|&r| keys[r].clone()).collect(), roots, method: Method::Naive })
}

fn naive_scores(tree: &Tree, target: NaiveTarget<'_>) -> Result<Vec<ScoreKey>> {
    let spec = match target {
        NaiveTarget::Measure(m) => {
            if tree.len() == 1 {
                return Ok(vec![ScoreKey::int(0)]);
            }
            return score_all(m, tree);
        }
        NaiveTarget::Spec(spec) => spec,
    };
    let builtin = spec.classical_measure();
    if let Some(m) = builtin {
        return naive_scores(tree, NaiveTarget::Measure(&m));
    }
    with_arith!(spec, |a| {
        if let Monoid::ScaledProduct { .. } = spec.monoid {
            // The potential of the whole tree is itself the centrality.
            let mut out = Vec::with_capacity(tree.len());
            for v in 0..tree.len() {
                out.push(a.key(&eval_rooted(&a, tree, v)?[v]));
            }
            Ok(out)
        } else {
            local_scores(&a, tree)
        }
    })
}

/// For other potentials: a vertex scores 1 when no neighbor beats it across
/// their shared edge, 0 otherwise.
fn local_scores<A: Arith>(arith: &A, tree: &Tree) -> Result<Vec<ScoreKey>> {
    let mut out = Vec::with_capacity(tree.len());
    for v in 0..tree.len() {
        let mut top = true;
        for &u in tree.neighbors(v) {
            let fu = eval_hanging(arith, tree, u, Some(v))?.swap_remove(u);
            let fv = eval_hanging(arith, tree, v, Some(u))?.swap_remove(v);
            top &= arith.tie_cmp(&fu, &fv) != Ordering::Greater;
        }
        out.push(ScoreKey::int(top as i64));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub algo1_ms: f64,
    pub naive_ms: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Random trees per size; the median time is reported.
    pub trees: usize,
    /// Largest size the baseline is run on.
    pub naive_max_n: usize,
    /// Each tree is re-run until this much time has accumulated, and the
    /// mean per run is taken.
    pub min_sample: Duration,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { trees: 5, naive_max_n: 20_000, min_sample: Duration::from_millis(20) }
    }
}

fn time_per_run(min_sample: Duration, mut f: impl FnMut() -> Result<()>) -> Result<f64> {
    let start = Instant::now();
    let mut runs = 0u32;
    loop {
        f()?;
        runs += 1;
        let elapsed = start.elapsed();
        if elapsed >= min_sample {
            return Ok(elapsed.as_secs_f64() * 1e3 / runs as f64);
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Median wall time per size for Algorithm 1 and, up to
/// `naive_max_n`, the baseline. Trees are drawn from `seed`.
pub fn bench_scaling(sizes: &[usize], spec: &ConstructiveSpec, seed: u64, config: &BenchConfig) -> Result<Vec<BenchRow>> {
    require_symmetric(spec)?;
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let trees: Vec<Tree> = (0..config.trees.max(1)).map(|_| random_tree(n.max(1), &mut rng)).collect();
        let mut algo = Vec::new();
        let mut naive = Vec::new();
        for tree in &trees {
            algo.push(time_per_run(config.min_sample, || find_root(tree, spec).map(drop))?);
            if n <= config.naive_max_n {
                naive.push(time_per_run(config.min_sample, || {
                    std::hint::black_box(naive_scores(tree, NaiveTarget::Spec(spec))?);
                    Ok(())
                })?);
            }
        }
        rows.push(BenchRow { n, algo1_ms: median(algo), naive_ms: (!naive.is_empty()).then(|| median(naive)) });
    }
    Ok(rows)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// The all-subgraphs potential carried in log space, for timing on large
/// trees.
pub fn logspace_all_subgraphs() -> ConstructiveSpec {
    crate::constructive::builtin_spec("all-subgraphs")
        .expect("built-in")
        .with_mode(NumericMode::LogSpace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructive::builtin_spec;

    fn spec(name: &str) -> ConstructiveSpec {
        builtin_spec(name).unwrap()
    }

    #[test]
    fn single_vertex() {
        let r = find_root(&Tree::single(0), &spec("closeness")).unwrap();
        assert_eq!(r.roots, vec![0]);
        let r = naive_root(&Tree::single(0), NaiveTarget::Measure(&MeasureId::Betweenness)).unwrap();
        assert_eq!(r.roots, vec![0]);
    }

    #[test]
    fn lines() {
        assert_eq!(find_root(&Tree::line(7), &spec("all-subgraphs")).unwrap().roots, vec![3]);
        assert_eq!(find_roots_both(&Tree::line(4), &spec("closeness")).unwrap().roots, vec![1, 2]);
        assert_eq!(find_roots_both(&Tree::line(5), &spec("closeness")).unwrap().roots, vec![2]);
        let r = naive_root(&Tree::line(9), NaiveTarget::Measure(&MeasureId::Closeness)).unwrap();
        assert_eq!(r.roots, vec![4]);
    }

    #[test]
    fn degree_is_refused() {
        assert_eq!(find_root(&Tree::line(3), &spec("degree")).unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn pull_count() {
        let t = Tree::join(&Tree::star(4), 2, &Tree::line(6), 3).unwrap();
        let s = spec("eccentricity");
        let p = algorithm1(&crate::constructive::ExactArith::new(&s), &t).unwrap();
        assert_eq!(p.pulls, t.len() - 1);
    }

    #[test]
    fn double_star_has_no_degree_root() {
        // Two degree-3 centers joined by a path of length 2.
        let t = Tree::from_dense_edges(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let r = naive_root(&t, NaiveTarget::Measure(&MeasureId::Degree));
        assert_eq!(r.unwrap_err(), Error::NotARoot(vec![0, 4]));
    }

    #[test]
    fn log_space_agrees_with_exact() {
        let t = Tree::join(&Tree::star(5), 1, &Tree::line(9), 4).unwrap();
        let exact = find_roots_both(&t, &spec("all-subgraphs")).unwrap();
        let log = find_roots_both(&t, &logspace_all_subgraphs()).unwrap();
        assert_eq!(exact.roots, log.roots);
        let abc: ConstructiveSpec = "abc:a=2,b=1,c=3".parse().unwrap();
        let naive = naive_root(&t, NaiveTarget::Spec(&abc)).unwrap();
        assert_eq!(find_roots_both(&t, &abc).unwrap().roots, naive.roots);
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = [1.0, 10.0, 100.0].iter().map(|&x| (x, 3.0 * x * x)).collect();
        assert!((loglog_slope(&pts) - 2.0).abs() < 1e-12);
    }
}
