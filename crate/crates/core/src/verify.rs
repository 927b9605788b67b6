//! Executable tree-rooting properties and sweeps over tree streams.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{cstar_scores, max_set, score_all, MeasureId};
use crate::edgelist;
use crate::error::{Error, Result};
use crate::par;
use crate::potential::{equivalence_verdict, registered_potential};
use crate::prufer::{cayley_count, random_tree, tree_by_index, MAX_EXHAUSTIVE_N};
use crate::score::{ScoreKey, Tally, TIE_EPS};
use crate::tree::{multi_source_parents, Tree};

/// Outcome of one check on one tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub holds: bool,
    /// Vertices implicated in a failure, ascending and deduplicated.
    pub offending: Vec<usize>,
    /// Float comparisons decided within ten times the tie tolerance.
    pub fragile: usize,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { holds: true, offending: Vec::new(), fragile: 0 }
    }

    pub fn from_offending(mut offending: Vec<usize>, fragile: usize) -> Self {
        offending.sort_unstable();
        offending.dedup();
        Verdict { holds: offending.is_empty(), offending, fragile }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    Rooting,
    Amop,
    Symmetry,
    Consistency,
    Monotonicity,
    PotentialEquivalence,
    CstarNoPotential,
}

pub const PROPERTY_NAMES: [&str; 7] = [
    "rooting",
    "amop",
    "symmetry",
    "consistency",
    "monotonicity",
    "potential-equivalence",
    "cstar-no-potential",
];

impl PropertyId {
    pub const ALL: [PropertyId; 7] = [
        PropertyId::Rooting,
        PropertyId::Amop,
        PropertyId::Symmetry,
        PropertyId::Consistency,
        PropertyId::Monotonicity,
        PropertyId::PotentialEquivalence,
        PropertyId::CstarNoPotential,
    ];

    pub fn name(self) -> &'static str {
        PROPERTY_NAMES[self as usize]
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which roots of `T` the consistency check quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantifier {
    /// Every root must satisfy the inclusion.
    #[default]
    ForAll,
    /// Some root suffices.
    Exists,
}

fn scores_or_trivial(measure: &MeasureId, tree: &Tree) -> Result<Option<Vec<ScoreKey>>> {
    if tree.len() == 1 {
        Ok(None)
    } else {
        score_all(measure, tree).map(Some)
    }
}

/// Rooting: the maximum set is one vertex or two adjacent ones, and scores
/// strictly drop along every path leaving it. Offending vertices are the
/// maxima when the set is malformed, else the vertices not strictly below
/// their parent.
pub fn rooting_verdict(measure: &MeasureId, tree: &Tree) -> Result<Verdict> {
    let Some(keys) = scores_or_trivial(measure, tree)? else { return Ok(Verdict::pass()) };
    Ok(rooting_of_scores(tree, &keys))
}

pub(crate) fn rooting_of_scores(tree: &Tree, keys: &[ScoreKey]) -> Verdict {
    let mut tally = Tally::default();
    let top = tally.max_set(keys);
    let shaped = match top[..] {
        [_] => true,
        [a, b] => tree.has_edge(a, b),
        _ => false,
    };
    if !shaped {
        return Verdict::from_offending(top, tally.fragile);
    }
    let parent = multi_source_parents(tree, &top);
    let offending = (0..tree.len())
        .filter(|&v| parent[v] != usize::MAX && tally.cmp(&keys[v], &keys[parent[v]]).is_ge())
        .collect();
    Verdict::from_offending(offending, tally.fragile)
}

pub fn check_rooting(measure: &MeasureId, tree: &Tree) -> Result<bool> {
    Ok(rooting_verdict(measure, tree)?.holds)
}

/// At most one neighbor scores at least as high as each vertex.
pub fn amop_verdict(measure: &MeasureId, tree: &Tree) -> Result<Verdict> {
    let Some(keys) = scores_or_trivial(measure, tree)? else { return Ok(Verdict::pass()) };
    let mut tally = Tally::default();
    let offending = (0..tree.len())
        .filter(|&v| tree.neighbors(v).iter().filter(|&&u| tally.cmp(&keys[u], &keys[v]).is_ge()).count() > 1)
        .collect();
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn check_amop(measure: &MeasureId, tree: &Tree) -> Result<bool> {
    Ok(amop_verdict(measure, tree)?.holds)
}

/// Neighbors of `v` with isomorphic hanging subtrees both score strictly
/// below `v`. Offending vertices are such `v`.
pub fn symmetry_verdict(measure: &MeasureId, tree: &Tree) -> Result<Verdict> {
    let Some(keys) = scores_or_trivial(measure, tree)? else { return Ok(Verdict::pass()) };
    let mut tally = Tally::default();
    let mut offending = Vec::new();
    for v in 0..tree.len() {
        let mut groups: HashMap<String, Vec<usize>> = HashMap::new();
        for &u in tree.neighbors(v) {
            groups.entry(tree.canonical_excluding(u, Some(v))).or_default().push(u);
        }
        for members in groups.values().filter(|m| m.len() > 1) {
            if members.iter().any(|&u| tally.cmp(&keys[u], &keys[v]).is_ge()) {
                offending.push(v);
            }
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn check_symmetry_measure(measure: &MeasureId, tree: &Tree) -> Result<bool> {
    Ok(symmetry_verdict(measure, tree)?.holds)
}

fn max_with(tally: &mut Tally, measure: &MeasureId, tree: &Tree) -> Result<Vec<usize>> {
    if tree.len() == 1 {
        return Ok(vec![0]);
    }
    Ok(tally.max_set(&score_all(measure, tree)?))
}

/// Attaching a fresh leaf `w` anywhere moves the maximum set only onto the
/// path from an old root to `w`. Offending vertices are the attachment
/// points that break this.
pub fn consistency_verdict(measure: &MeasureId, tree: &Tree, quantifier: Quantifier) -> Result<Verdict> {
    let mut tally = Tally::default();
    let top = max_with(&mut tally, measure, tree)?;
    let w = tree.len();
    let mut offending = Vec::new();
    for v in 0..tree.len() {
        let grown = tree.add_leaf(v)?;
        let new_top = max_with(&mut tally, measure, &grown)?;
        let fits = |u: usize| {
            let path = grown.path_between(u, w);
            new_top.iter().all(|x| path.contains(x) || top.contains(x))
        };
        let ok = match quantifier {
            Quantifier::ForAll => top.iter().all(|&u| fits(u)),
            Quantifier::Exists => top.iter().any(|&u| fits(u)),
        };
        if !ok {
            offending.push(v);
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn check_consistency(measure: &MeasureId, tree: &Tree) -> Result<bool> {
    Ok(consistency_verdict(measure, tree, Quantifier::ForAll)?.holds)
}

/// A strict win of `u` over its neighbor `v` survives attaching a leaf on
/// `u`'s side. Offending vertices are the attachment points that flip or
/// tie some such comparison.
pub fn monotonicity_verdict(measure: &MeasureId, tree: &Tree) -> Result<Verdict> {
    let Some(keys) = scores_or_trivial(measure, tree)? else { return Ok(Verdict::pass()) };
    let mut tally = Tally::default();
    // Ordered edges (loser, winner) with the winner's side.
    let mut wins = Vec::new();
    for (a, b) in tree.edges() {
        match tally.cmp(&keys[a], &keys[b]) {
            std::cmp::Ordering::Less => wins.push((a, b, tree.hang_subtree(b, a)?)),
            std::cmp::Ordering::Greater => wins.push((b, a, tree.hang_subtree(a, b)?)),
            std::cmp::Ordering::Equal => {}
        }
    }
    let mut offending = Vec::new();
    for w in 0..tree.len() {
        if !wins.iter().any(|(_, _, side)| side.contains(w)) {
            continue;
        }
        let grown = score_all(measure, &tree.add_leaf(w)?)?;
        for (v, u, side) in &wins {
            if side.contains(w) && tally.cmp(&grown[*v], &grown[*u]).is_ge() {
                offending.push(w);
            }
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn check_monotonic(measure: &MeasureId, tree: &Tree) -> Result<bool> {
    Ok(monotonicity_verdict(measure, tree)?.holds)
}

/// Dispatches a per-tree property.
pub fn check_tree(property: PropertyId, measure: &MeasureId, tree: &Tree, quantifier: Quantifier) -> Result<Verdict> {
    match property {
        PropertyId::Rooting => rooting_verdict(measure, tree),
        PropertyId::Amop => amop_verdict(measure, tree),
        PropertyId::Symmetry => symmetry_verdict(measure, tree),
        PropertyId::Consistency => consistency_verdict(measure, tree, quantifier),
        PropertyId::Monotonicity => monotonicity_verdict(measure, tree),
        PropertyId::PotentialEquivalence => equivalence_verdict(measure, &registered_potential(measure)?, tree),
        PropertyId::CstarNoPotential => rooting_verdict(&MeasureId::CStar, tree),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    /// Position in the sweep's tree stream.
    pub index: u64,
    /// Edge-list text of the tree.
    pub edges: String,
    pub offending: Vec<usize>,
    /// Rendered score per vertex (empty when the measure fails to score).
    pub scores: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub measure: String,
    pub quantifier: Quantifier,
    pub n_max: usize,
    pub random: u64,
    pub random_max_n: usize,
    pub seed: u64,
    pub trees_checked: u64,
    pub pass: bool,
    pub fragile: usize,
    pub counterexample: Option<Counterexample>,
    /// Extra human-readable findings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Not serialized, so records are reproducible byte for byte.
    #[serde(skip)]
    pub wall_ms: f64,
}

impl PropertyReport {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "all-pass"
        } else {
            "fail"
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> Result<PropertyReport> {
        serde_json::from_str(line).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Exhaustive part covers every labeled tree with `2..=n_max` vertices.
    pub n_max: usize,
    /// Random trees appended after the exhaustive part.
    pub random: u64,
    /// Random trees have `2..=random_max_n` vertices.
    pub random_max_n: usize,
    pub seed: u64,
    pub quantifier: Quantifier,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { n_max: 7, random: 0, random_max_n: 12, seed: 0, quantifier: Quantifier::ForAll, jobs: None }
    }
}

impl SweepConfig {
    pub fn exhaustive(n_max: usize) -> Self {
        SweepConfig { n_max, ..Default::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.n_max > MAX_EXHAUSTIVE_N {
            return Err(Error::TooLarge { n: self.n_max, max: MAX_EXHAUSTIVE_N });
        }
        if self.random > 0 && self.random_max_n < 2 {
            return Err(Error::TooSmall(self.random_max_n));
        }
        Ok(())
    }

    fn exhaustive_len(&self) -> u64 {
        (2..=self.n_max).map(cayley_count).sum()
    }

    pub fn len(&self) -> u64 {
        self.exhaustive_len() + self.random
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `index`-th tree of the stream: labeled trees by size then code
    /// order, then the random trees. Random trees depend only on
    /// `(seed, index)`.
    pub fn tree_at(&self, index: u64) -> Tree {
        let mut rest = index;
        for n in 2..=self.n_max {
            let count = cayley_count(n);
            if rest < count {
                return tree_by_index(n, rest);
            }
            rest -= count;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(rest);
        let n = rng.random_range(2..=self.random_max_n);
        random_tree(n, &mut rng)
    }
}

/// Partial sweep result; combining keeps the earliest failure or error.
struct Acc {
    fragile: usize,
    failure: Option<(u64, Verdict)>,
    error: Option<(u64, Error)>,
}

impl Acc {
    fn empty() -> Acc {
        Acc { fragile: 0, failure: None, error: None }
    }

    fn merge(self, other: Acc) -> Acc {
        fn first<T>(a: Option<(u64, T)>, b: Option<(u64, T)>) -> Option<(u64, T)> {
            match (a, b) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, y) => x.or(y),
            }
        }
        Acc {
            fragile: self.fragile + other.fragile,
            failure: first(self.failure, other.failure),
            error: first(self.error, other.error),
        }
    }
}

/// Runs `property` for `measure` over the configured tree stream. The
/// reported counterexample is the earliest failing tree, which makes it
/// minimal by vertex count.
pub fn sweep(property: PropertyId, measure: &MeasureId, config: &SweepConfig) -> Result<PropertyReport> {
    if property == PropertyId::CstarNoPotential {
        return cstar_no_potential_demo(config);
    }
    config.validate()?;
    let start = Instant::now();
    let total = config.len();
    let acc = par::with_jobs(config.jobs, || {
        par::map_reduce(
            total,
            Acc::empty,
            |i| {
                let tree = config.tree_at(i);
                match check_tree(property, measure, &tree, config.quantifier) {
                    Ok(v) => Acc {
                        fragile: v.fragile,
                        failure: (!v.holds).then_some((i, v)),
                        error: None,
                    },
                    Err(e) => Acc { fragile: 0, failure: None, error: Some((i, e)) },
                }
            },
            Acc::merge,
        )
    });
    if let Some((_, e)) = acc.error {
        return Err(e);
    }
    let counterexample = acc.failure.map(|(index, v)| {
        let tree = config.tree_at(index);
        counterexample_for(measure, &tree, index, v.offending)
    });
    Ok(PropertyReport {
        property,
        measure: measure.to_string(),
        quantifier: config.quantifier,
        n_max: config.n_max,
        random: config.random,
        random_max_n: config.random_max_n,
        seed: config.seed,
        trees_checked: total,
        pass: counterexample.is_none(),
        fragile: acc.fragile,
        counterexample,
        detail: None,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn counterexample_for(measure: &MeasureId, tree: &Tree, index: u64, offending: Vec<usize>) -> Counterexample {
    let scores = score_all(measure, tree).map(|k| k.iter().map(ScoreKey::render).collect()).unwrap_or_default();
    Counterexample { n: tree.len(), index, edges: edgelist::write(tree), offending, scores }
}

/// Re-runs a report's failing check on its serialized counterexample tree.
/// Returns whether the failure reproduces; reports without a
/// counterexample replay as `false`.
pub fn replay(report: &PropertyReport) -> Result<bool> {
    let Some(cx) = &report.counterexample else { return Ok(false) };
    let tree = edgelist::parse(&cx.edges)?;
    let measure: MeasureId = report.measure.parse()?;
    Ok(!check_tree(report.property, &measure, &tree, report.quantifier)?.holds)
}

/// C* on the three two-tree joins: `(C*(left root), C*(right root))` for
/// (star(3) at its center, line(5) at 2), (line(5) at 2, line(5) at 1) and
/// (star(3) at its center, line(5) at 1).
pub fn cstar_three_joins() -> [(f64, f64); 3] {
    let star = Tree::star(3);
    let line = Tree::line(5);
    let pieces = [(&star, 0usize, &line, 2usize), (&line, 2, &line, 1), (&star, 0, &line, 1)];
    pieces.map(|(t1, v1, t2, v2)| {
        let joined = Tree::join(t1, v1, t2, v2).expect("vertices exist");
        let c = cstar_scores(&joined);
        (c[v1], c[t1.len() + v2])
    })
}

/// Whether the joins show the `(=, =, <)` pattern: with a potential `f`,
/// the first two equalities would force `f(v1, T1) = f(v3, T3)`, while the
/// third comparison is strict.
pub fn cstar_pattern_holds(values: &[(f64, f64); 3]) -> bool {
    let cmp = |a: f64, b: f64| ScoreKey::Float(a).compare(&ScoreKey::Float(b), TIE_EPS).ordering;
    cmp(values[0].0, values[0].1).is_eq() && cmp(values[1].0, values[1].1).is_eq() && cmp(values[2].0, values[2].1).is_lt()
}

/// C* roots every tree of the stream yet the three joins rule out any
/// potential function.
pub fn cstar_no_potential_demo(config: &SweepConfig) -> Result<PropertyReport> {
    let mut report = sweep(PropertyId::Rooting, &MeasureId::CStar, config)?;
    let values = cstar_three_joins();
    let pattern = cstar_pattern_holds(&values);
    report.property = PropertyId::CstarNoPotential;
    report.pass &= pattern;
    report.detail = Some(format!(
        "joins (=,=,<) {}: ({}, {}), ({}, {}), ({}, {})",
        if pattern { "holds" } else { "FAILS" },
        values[0].0,
        values[0].1,
        values[1].0,
        values[1].1,
        values[2].0,
        values[2].1
    ));
    Ok(report)
}

/// `{floor((n-1)/2), ceil((n-1)/2)}`.
pub fn line_root_set(n: usize) -> Vec<usize> {
    let mut set = vec![(n - 1) / 2, n / 2];
    set.dedup();
    set
}

/// `Max_C(L_n)` for the measure.
pub fn line_max_set(measure: &MeasureId, n: usize) -> Result<Vec<usize>> {
    max_set(measure, &Tree::line(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_star() -> Tree {
        Tree::from_dense_edges(7, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for p in PropertyId::ALL {
            assert_eq!(p.name().parse::<PropertyId>().unwrap(), p);
        }
        assert!("roots".parse::<PropertyId>().is_err());
    }

    #[test]
    fn rooting_examples() {
        assert!(!check_rooting(&MeasureId::Degree, &double_star()).unwrap());
        assert!(check_rooting(&MeasureId::Degree, &Tree::single(3)).unwrap());
        assert!(check_rooting(&MeasureId::Closeness, &double_star()).unwrap());
        assert!(check_amop(&MeasureId::Eccentricity, &Tree::line(6)).unwrap());
        assert!(!check_amop(&MeasureId::PageRank(0.85), &Tree::line(6)).unwrap());
    }

    #[test]
    fn symmetry_examples() {
        let spider = Tree::from_dense_edges(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert!(check_symmetry_measure(&MeasureId::Closeness, &Tree::star(2)).unwrap());
        assert!(check_symmetry_measure(&MeasureId::AllSubgraphs, &spider).unwrap());
        // Two degree-3 vertices hanging off a degree-2 vertex.
        let bridge = Tree::from_dense_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert!(!check_symmetry_measure(&MeasureId::Degree, &bridge).unwrap());
    }

    #[test]
    fn consistency_examples() {
        assert!(check_consistency(&MeasureId::Closeness, &Tree::single(0)).unwrap());
        assert!(check_consistency(&MeasureId::Closeness, &Tree::line(5)).unwrap());
        assert!(check_monotonic(&MeasureId::Closeness, &Tree::line(5)).unwrap());
    }

    #[test]
    fn cstar_joins() {
        let v = cstar_three_joins();
        assert_eq!(v, [(2.0, 2.0), (2.0, 2.0), (1.0, 2.0)]);
        assert!(cstar_pattern_holds(&v));
    }

    #[test]
    fn stream_layout() {
        let config = SweepConfig { n_max: 4, random: 5, random_max_n: 9, seed: 3, ..Default::default() };
        assert_eq!(config.len(), 1 + 3 + 16 + 5);
        assert_eq!(config.tree_at(0), Tree::line(2));
        assert_eq!(config.tree_at(20), config.tree_at(20));
        assert!((2..=9).contains(&config.tree_at(22).len()));
    }

    #[test]
    fn sweep_finds_minimal_witness_and_replays() {
        let report = sweep(PropertyId::Rooting, &MeasureId::Betweenness, &SweepConfig::exhaustive(7)).unwrap();
        assert!(!report.pass);
        let cx = report.counterexample.as_ref().unwrap();
        assert_eq!(cx.n, 7);
        assert!(replay(&report).unwrap());
        let back = PropertyReport::from_json_line(&report.to_json_line()).unwrap();
        assert_eq!(back, PropertyReport { wall_ms: 0.0, ..report });
    }

    #[test]
    fn line_roots() {
        assert_eq!(line_root_set(4), vec![1, 2]);
        assert_eq!(line_root_set(5), vec![2]);
        assert_eq!(line_max_set(&MeasureId::Eccentricity, 2).unwrap(), vec![0, 1]);
    }
}
