//! Potential functions `f(v, T)` and the checks that relate them to
//! centrality measures.
//!
//! A potential `f` belongs to a measure `C` when, across every edge
//! `{u, v}`, `C(u, T) <= C(v, T)` exactly when `f(u, T_{u,v}) <= f(v, T_{v,u})`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::centrality::{down_counts, score_all, MeasureId};
use crate::constructive::{eval_hanging, with_arith, Arith, ConstructiveSpec};
use crate::error::{Error, Result};
use crate::params::{lookup, parse_f64, split_id};
use crate::score::{ScoreKey, Tally};
use crate::tree::Tree;
use crate::verify::Verdict;

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialId {
    /// `|N_T(v)|`
    Degree,
    /// `|V(T)|`
    Closeness,
    /// Height of `T` rooted at `v`.
    Eccentricity,
    /// Connected subgraphs of `T` containing `v`.
    AllSubgraphs,
    /// `Betweenness(v, T) + 2|T|`
    Betweenness,
    /// `(1 - alpha) Decay(v, T)`
    Decay(f64),
    /// `h(v, T) + 1/|T|`, the potential of the eccentricity-minus-closeness
    /// measure.
    HeightInvSize,
    /// `h(v, T) - 1/|T|`. Kept to show that it does *not* match the
    /// eccentricity-minus-closeness measure: it breaks height ties the
    /// wrong way.
    HeightMinusInvSize,
    Constructive(Box<ConstructiveSpec>),
}

impl FromStr for PotentialId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = split_id(s)?;
        let plain = |p: PotentialId| {
            if params.is_empty() {
                Ok(p)
            } else {
                Err(Error::BadParameter(format!("`{name}` takes no parameters")))
            }
        };
        match name {
            "degree" => plain(PotentialId::Degree),
            "closeness" => plain(PotentialId::Closeness),
            "eccentricity" => plain(PotentialId::Eccentricity),
            "all-subgraphs" => plain(PotentialId::AllSubgraphs),
            "betweenness" => plain(PotentialId::Betweenness),
            "height-inv-size" => plain(PotentialId::HeightInvSize),
            "height-minus-inv-size" => plain(PotentialId::HeightMinusInvSize),
            "decay" => {
                let alpha = lookup(&params, "alpha", &["alpha"])?
                    .ok_or_else(|| Error::BadParameter("decay needs `alpha`".into()))?;
                match MeasureId::decay(parse_f64(alpha)?)? {
                    MeasureId::Decay(a) => Ok(PotentialId::Decay(a)),
                    _ => unreachable!(),
                }
            }
            "abc" => Ok(PotentialId::Constructive(Box::new(s.parse()?))),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for PotentialId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialId::Degree => f.write_str("degree"),
            PotentialId::Closeness => f.write_str("closeness"),
            PotentialId::Eccentricity => f.write_str("eccentricity"),
            PotentialId::AllSubgraphs => f.write_str("all-subgraphs"),
            PotentialId::Betweenness => f.write_str("betweenness"),
            PotentialId::Decay(a) => write!(f, "decay:alpha={a}"),
            PotentialId::HeightInvSize => f.write_str("height-inv-size"),
            PotentialId::HeightMinusInvSize => f.write_str("height-minus-inv-size"),
            PotentialId::Constructive(spec) => write!(f, "constructive({spec})"),
        }
    }
}

/// The potential function registered for `measure`.
pub fn registered_potential(measure: &MeasureId) -> Result<PotentialId> {
    Ok(match measure {
        MeasureId::Degree => PotentialId::Degree,
        MeasureId::Closeness => PotentialId::Closeness,
        MeasureId::Eccentricity => PotentialId::Eccentricity,
        MeasureId::AllSubgraphs => PotentialId::AllSubgraphs,
        MeasureId::Betweenness => PotentialId::Betweenness,
        MeasureId::Decay(a) => PotentialId::Decay(*a),
        MeasureId::EccMinusCloseness => PotentialId::HeightInvSize,
        MeasureId::Potential(spec) => PotentialId::Constructive(spec.clone()),
        other => return Err(Error::NoPotential(other.to_string())),
    })
}

/// `f(u, T_{u, blocked})`, or `f(u, T)` when `blocked` is `None`.
pub fn eval_hanging_potential(p: &PotentialId, tree: &Tree, u: usize, blocked: Option<usize>) -> Result<ScoreKey> {
    tree.check_vertex(u)?;
    if let Some(b) = blocked {
        if !tree.has_edge(u, b) {
            return Err(Error::NotAnEdge { u, v: b });
        }
    }
    if let PotentialId::Constructive(spec) = p {
        return with_arith!(spec.as_ref(), |a| Ok(a.key(&eval_hanging(&a, tree, u, blocked)?[u])));
    }
    let (order, parent) = tree.bfs_from(u, blocked);
    let size = order.len();
    let mut depth = vec![0usize; tree.len()];
    for &x in &order[1..] {
        depth[x] = depth[parent[x]] + 1;
    }
    let height = order.iter().map(|&x| depth[x]).max().unwrap_or(0);
    let height_frac = |sign: i64| {
        let h = BigRational::from_integer(BigInt::from(height));
        ScoreKey::Ratio(h + BigRational::new(BigInt::from(sign), BigInt::from(size)))
    };
    Ok(match p {
        PotentialId::Degree => ScoreKey::int((tree.degree(u) - blocked.is_some() as usize) as i64),
        PotentialId::Closeness => ScoreKey::int(size as i64),
        PotentialId::Eccentricity => ScoreKey::int(height as i64),
        PotentialId::AllSubgraphs => ScoreKey::Big(down_counts(tree, &order, &parent).swap_remove(u)),
        PotentialId::Betweenness => {
            let mut sub = vec![1i64; tree.len()];
            for &x in order[1..].iter().rev() {
                sub[parent[x]] += sub[x];
            }
            let squares: i64 = order[1..].iter().filter(|&&x| parent[x] == u).map(|&x| sub[x] * sub[x]).sum();
            let s = size as i64;
            ScoreKey::int((s - 1) * (s - 1) - squares + 2 * s)
        }
        PotentialId::Decay(alpha) => {
            let sum: f64 = order[1..].iter().map(|&x| alpha.powi(depth[x] as i32)).sum();
            ScoreKey::Float((1.0 - alpha) * sum)
        }
        PotentialId::HeightInvSize => height_frac(1),
        PotentialId::HeightMinusInvSize => height_frac(-1),
        PotentialId::Constructive(_) => unreachable!(),
    })
}

/// `f(v, T)`.
pub fn eval_potential(p: &PotentialId, tree: &Tree, v: usize) -> Result<ScoreKey> {
    eval_hanging_potential(p, tree, v, None)
}

/// Per-edge comparison of the measure against the potential; offending
/// vertices are the endpoints of edges where the two orderings differ.
pub fn equivalence_verdict(measure: &MeasureId, p: &PotentialId, tree: &Tree) -> Result<Verdict> {
    if tree.len() == 1 {
        return Ok(Verdict::pass());
    }
    let scores = score_all(measure, tree)?;
    let mut tally = Tally::default();
    let mut offending = Vec::new();
    for (u, v) in tree.edges() {
        let by_measure = tally.cmp(&scores[u], &scores[v]);
        let fu = eval_hanging_potential(p, tree, u, Some(v))?;
        let fv = eval_hanging_potential(p, tree, v, Some(u))?;
        if tally.cmp(&fu, &fv) != by_measure {
            offending.extend([u, v]);
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn check_potential_equivalence(measure: &MeasureId, p: &PotentialId, tree: &Tree) -> Result<bool> {
    Ok(equivalence_verdict(measure, p, tree)?.holds)
}

/// `f(u, T_{u,v}) < f(v, T)` for every ordered adjacent pair; offending
/// vertices are the `u` that fail.
pub fn symmetry_verdict(p: &PotentialId, tree: &Tree) -> Result<Verdict> {
    let whole: Vec<ScoreKey> = (0..tree.len()).map(|v| eval_potential(p, tree, v)).collect::<Result<_>>()?;
    let mut tally = Tally::default();
    let mut offending = Vec::new();
    for (v, fv) in whole.iter().enumerate() {
        for &u in tree.neighbors(v) {
            let fu = eval_hanging_potential(p, tree, u, Some(v))?;
            if tally.cmp(&fu, fv) != Ordering::Less {
                offending.push(u);
            }
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn is_symmetric_on(p: &PotentialId, tree: &Tree) -> Result<bool> {
    Ok(symmetry_verdict(p, tree)?.holds)
}

/// Largest tree on which subtree enumeration is attempted.
pub const MAX_SUBTREE_N: usize = 20;

/// Potentials of every vertex of every connected vertex subset, keyed by
/// bitmask.
struct SubtreeTable {
    values: HashMap<u32, Vec<(usize, ScoreKey)>>,
}

impl SubtreeTable {
    fn build(p: &PotentialId, tree: &Tree) -> Result<SubtreeTable> {
        let n = tree.len();
        if n > MAX_SUBTREE_N {
            return Err(Error::TooLarge { n, max: MAX_SUBTREE_N });
        }
        let mut values = HashMap::new();
        for mask in 1u32..(1u32 << n) {
            let vertices: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !connected(tree, mask, vertices[0]) {
                continue;
            }
            let (sub, map) = tree.induced(&vertices);
            let mut row = Vec::with_capacity(vertices.len());
            for &v in &vertices {
                row.push((v, eval_potential(p, &sub, map[v])?));
            }
            values.insert(mask, row);
        }
        Ok(SubtreeTable { values })
    }
}

fn connected(tree: &Tree, mask: u32, start: usize) -> bool {
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in tree.neighbors(x) {
            if mask >> y & 1 == 1 && seen >> y & 1 == 0 {
                seen |= 1 << y;
                stack.push(y);
            }
        }
    }
    seen == mask
}

/// `f(v, T') <= f(v, T'')` whenever `T'` is `T''` minus one leaf, over all
/// subtrees `T''` of `T`. Chains of leaf deletions reach every subtree, so
/// this is `f(v, T) >= f(v, T')` for all subtrees `T'` containing `v`.
/// Offending vertices are the `v` where a deletion raised the potential.
pub fn subtree_monotone_verdict(p: &PotentialId, tree: &Tree) -> Result<Verdict> {
    let table = SubtreeTable::build(p, tree)?;
    let mut tally = Tally::default();
    let mut offending = Vec::new();
    let mut masks: Vec<&u32> = table.values.keys().collect();
    masks.sort_unstable();
    for &mask in masks {
        let row = &table.values[&mask];
        if row.len() < 2 {
            continue;
        }
        for &(leaf, _) in row {
            let inside = tree.neighbors(leaf).iter().filter(|&&y| mask >> y & 1 == 1).count();
            if inside != 1 {
                continue;
            }
            let smaller = &table.values[&(mask & !(1 << leaf))];
            for (v, f_small) in smaller {
                let f_big = &row.iter().find(|(x, _)| x == v).expect("subset").1;
                if tally.cmp(f_small, f_big) == Ordering::Greater {
                    offending.push(*v);
                }
            }
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn is_subtree_monotone_on(p: &PotentialId, tree: &Tree) -> Result<bool> {
    Ok(subtree_monotone_verdict(p, tree)?.holds)
}

/// Monotone and symmetric at once: for `u != v`, `f(u, T') < f(v, T)` for
/// every subtree `T'` that contains `u` but not the neighbor of `u` toward
/// `v`; and `f(v, T') <= f(v, T)` for every subtree `T'` containing `v`.
///
/// Demanding `f(u, T') < f(v, T)` for *every* proper subtree is too strong:
/// see [`all_subtrees_strict_verdict`].
pub fn combined_strict_verdict(p: &PotentialId, tree: &Tree) -> Result<Verdict> {
    let n = tree.len();
    let table = SubtreeTable::build(p, tree)?;
    let full = (1u32 << n) - 1;
    let whole = &table.values[&full];
    // toward[u][v]: neighbor of u on the path to v.
    let toward: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let (_, parent) = tree.bfs_from(u, None);
            (0..n)
                .map(|v| {
                    let mut x = v;
                    while x != u && parent[x] != u {
                        x = parent[x];
                    }
                    x
                })
                .collect()
        })
        .collect();
    let mut tally = Tally::default();
    let mut offending = Vec::new();
    for (&mask, row) in &table.values {
        for (v, fv) in whole {
            for (u, fu) in row {
                let ok = if u == v {
                    tally.cmp(fv, fu) != Ordering::Less
                } else if mask >> toward[*u][*v] & 1 == 0 {
                    tally.cmp(fv, fu) == Ordering::Greater
                } else {
                    true
                };
                if !ok {
                    offending.push(*v);
                }
            }
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

/// `f(v, T) > f(u, T')` for every proper subtree `T'`, `u` in `T'` and
/// `v != u` in `T`, with no restriction on `T'`. The all-subgraphs
/// potential already fails this on the path with four vertices (the
/// middle of a three-vertex subpath ties the far endpoint), so it is not a
/// consequence of monotonicity and symmetry.
pub fn all_subtrees_strict_verdict(p: &PotentialId, tree: &Tree) -> Result<Verdict> {
    let n = tree.len();
    let table = SubtreeTable::build(p, tree)?;
    let full = (1u32 << n) - 1;
    let whole = &table.values[&full];
    let mut tally = Tally::default();
    let mut offending = Vec::new();
    for (&mask, row) in &table.values {
        if mask == full {
            continue;
        }
        for (v, fv) in whole {
            for (u, fu) in row {
                let ord = tally.cmp(fv, fu);
                let ok = if u == v { ord != Ordering::Less } else { ord == Ordering::Greater };
                if !ok {
                    offending.push(*v);
                }
            }
        }
    }
    Ok(Verdict::from_offending(offending, tally.fragile))
}

pub fn combined_strict_check(p: &PotentialId, tree: &Tree) -> Result<bool> {
    Ok(combined_strict_verdict(p, tree)?.holds)
}
