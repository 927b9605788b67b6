//! Constructive potentials `f(v, T)` built from a commutative monoid and a
//! leaf function.
//!
//! The single vertex has potential equal to the monoid identity, and
//!
//! ```text
//! f(v, T) = l(f(u_1, T_{u_1,v})) (+) ... (+) l(f(u_k, T_{u_k,v}))
//! ```
//!
//! over the neighbors `u_i` of `v`. Only a closed set of named monoids and
//! leaf functions is supported; every member can be evaluated exactly over
//! the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centrality::MeasureId;
use crate::error::{Error, Result};
use crate::params::{format_rational, lookup, parse_rational, split_id};
use crate::prufer::enumerate_trees;
use crate::score::{float_compare, ScoreKey, TIE_EPS};
use crate::tree::Tree;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A commutative monoid over a real interval `[lower, inf)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Monoid {
    /// `(R>=0, +, 0)`
    Sum,
    /// `(R>=1, a + b - 1, 1)`
    ShiftedSum,
    /// `(R>=0, max, 0)`
    Max,
    /// `(R>=c, x*y/c, c)` with `c > 0`
    ScaledProduct { c: BigRational },
}

impl Monoid {
    pub fn identity(&self) -> BigRational {
        match self {
            Monoid::Sum | Monoid::Max => rat(0),
            Monoid::ShiftedSum => rat(1),
            Monoid::ScaledProduct { c } => c.clone(),
        }
    }

    /// Lower end of the carrier; it coincides with the identity for every
    /// supported monoid.
    pub fn lower_bound(&self) -> BigRational {
        self.identity()
    }

    pub fn op(&self, x: &BigRational, y: &BigRational) -> BigRational {
        // Integer operands skip the gcd normalisation of rational arithmetic.
        let ints = x.is_integer() && y.is_integer();
        match self {
            Monoid::Sum if ints => BigRational::from_integer(x.numer() + y.numer()),
            Monoid::Sum => x + y,
            Monoid::ShiftedSum if ints => BigRational::from_integer(x.numer() + y.numer() - 1),
            Monoid::ShiftedSum => x + y - rat(1),
            Monoid::Max => x.max(y).clone(),
            Monoid::ScaledProduct { c } if ints && c.is_one() => BigRational::from_integer(x.numer() * y.numer()),
            Monoid::ScaledProduct { c } => x * y / c,
        }
    }

    fn op_f64(&self, c: f64, x: f64, y: f64) -> f64 {
        match self {
            Monoid::Sum => x + y,
            Monoid::ShiftedSum => x + y - 1.0,
            Monoid::Max => x.max(y),
            Monoid::ScaledProduct { .. } => x * y / c,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LeafFn {
    Const(BigRational),
    /// `x -> a*x + b`
    Affine { a: BigRational, b: BigRational },
}

impl LeafFn {
    pub fn apply(&self, x: &BigRational) -> BigRational {
        match self {
            LeafFn::Const(k) => k.clone(),
            LeafFn::Affine { a, b } if a.is_integer() && b.is_integer() && x.is_integer() => {
                BigRational::from_integer(a.numer() * x.numer() + b.numer())
            }
            LeafFn::Affine { a, b } => a * x + b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumericMode {
    /// Exact rationals.
    #[default]
    Exact,
    Float,
    /// Carries `ln f`; only for `ScaledProduct` with an affine leaf. Meant
    /// for timing runs on large trees.
    LogSpace,
}

impl NumericMode {
    pub fn name(self) -> &'static str {
        match self {
            NumericMode::Exact => "exact",
            NumericMode::Float => "float",
            NumericMode::LogSpace => "logspace",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructiveSpec {
    pub name: String,
    pub monoid: Monoid,
    pub leaf: LeafFn,
    pub mode: NumericMode,
}

pub const BUILTIN_NAMES: [&str; 4] = ["degree", "closeness", "eccentricity", "all-subgraphs"];

/// The monoid and leaf function for the four classical potentials.
pub fn builtin_spec(name: &str) -> Result<ConstructiveSpec> {
    let succ = || LeafFn::Affine { a: rat(1), b: rat(1) };
    let (monoid, leaf) = match name {
        "degree" => (Monoid::Sum, LeafFn::Const(rat(1))),
        "closeness" => (Monoid::ShiftedSum, succ()),
        "eccentricity" => (Monoid::Max, succ()),
        "all-subgraphs" => (Monoid::ScaledProduct { c: rat(1) }, succ()),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(ConstructiveSpec { name: name.to_string(), monoid, leaf, mode: NumericMode::Exact })
}

/// `x (+) y = x*y/c`, `l(x) = a*x + b`, for `a >= 1, b > 0, c > 0`.
pub fn family_abc(a: BigRational, b: BigRational, c: BigRational) -> Result<ConstructiveSpec> {
    if a < rat(1) || !b.is_positive() || !c.is_positive() {
        return Err(Error::ParamsOutOfRegion {
            a: format_rational(&a),
            b: format_rational(&b),
            c: format_rational(&c),
        });
    }
    let name = format!("abc:a={},b={},c={}", format_rational(&a), format_rational(&b), format_rational(&c));
    Ok(ConstructiveSpec {
        name,
        monoid: Monoid::ScaledProduct { c },
        leaf: LeafFn::Affine { a, b },
        mode: NumericMode::Exact,
    })
}

impl FromStr for ConstructiveSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = split_id(s)?;
        if name == "abc" {
            let get = |k: &str| -> Result<BigRational> {
                let v = lookup(&params, k, &["a", "b", "c"])?
                    .ok_or_else(|| Error::BadParameter(format!("abc needs parameter `{k}`")))?;
                parse_rational(v)
            };
            return family_abc(get("a")?, get("b")?, get("c")?);
        }
        if !params.is_empty() {
            return Err(Error::BadParameter(format!("`{name}` takes no parameters")));
        }
        builtin_spec(name)
    }
}

impl fmt::Display for ConstructiveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl ConstructiveSpec {
    /// Custom combination of a supported monoid and leaf function.
    pub fn new(name: impl Into<String>, monoid: Monoid, leaf: LeafFn) -> Result<Self> {
        if let Monoid::ScaledProduct { c } = &monoid {
            if !c.is_positive() {
                return Err(Error::BadParameter("scaled product needs c > 0".into()));
            }
        }
        Ok(ConstructiveSpec { name: name.into(), monoid, leaf, mode: NumericMode::Exact })
    }

    pub fn with_mode(mut self, mode: NumericMode) -> Self {
        self.mode = mode;
        self
    }

    /// Whether the leaf function and monoid meet the sufficient conditions
    /// for a consistently rooting potential: `x < l(x)` on the carrier, `l`
    /// monotone, and the monoid positively ordered. Decided symbolically
    /// from the family parameters.
    pub fn satisfies_lemma(&self) -> bool {
        let lower = self.monoid.lower_bound();
        match &self.leaf {
            // The carrier is unbounded, so some x >= k exists.
            LeafFn::Const(_) => false,
            LeafFn::Affine { a, b } => *a >= rat(1) && ((a - rat(1)) * &lower + b).is_positive(),
        }
    }

    /// The centrality measure this potential belongs to, when there is one:
    /// the named measures for the built-ins, and for scaled-product
    /// potentials the potential of the whole tree itself.
    pub fn induced_measure(&self) -> Option<MeasureId> {
        if let Some(m) = self.classical_measure() {
            return Some(m);
        }
        match (&self.monoid, &self.leaf) {
            (Monoid::ScaledProduct { .. }, LeafFn::Affine { b, .. }) if b.is_positive() => {
                Some(MeasureId::Potential(Box::new(self.clone().with_mode(NumericMode::Exact))))
            }
            _ => None,
        }
    }

    /// Degree, closeness or eccentricity when this potential is one of their
    /// built-in potentials; there `f(v, T)` alone does not rank vertices.
    pub fn classical_measure(&self) -> Option<MeasureId> {
        let succ = LeafFn::Affine { a: rat(1), b: rat(1) };
        match (&self.monoid, &self.leaf) {
            (Monoid::Sum, LeafFn::Const(k)) if k.is_one() => Some(MeasureId::Degree),
            (Monoid::ShiftedSum, l) if *l == succ => Some(MeasureId::Closeness),
            (Monoid::Max, l) if *l == succ => Some(MeasureId::Eccentricity),
            _ => None,
        }
    }
}

/// Arithmetic backend for evaluating a constructive potential.
pub trait Arith {
    type Value: Clone + fmt::Debug + Send + Sync;

    fn identity(&self) -> Self::Value;
    fn op(&self, x: &Self::Value, y: &Self::Value) -> Self::Value;
    fn leaf(&self, x: &Self::Value) -> Self::Value;
    /// Strict total order, used for queue priorities.
    fn total_cmp(&self, x: &Self::Value, y: &Self::Value) -> Ordering;
    /// Order with float ties collapsed, used for root decisions.
    fn tie_cmp(&self, x: &Self::Value, y: &Self::Value) -> Ordering;
    fn check(&self, x: &Self::Value) -> Result<()>;
    fn key(&self, x: &Self::Value) -> ScoreKey;
    fn render(&self, x: &Self::Value) -> String;
    fn sample<R: Rng>(&self, rng: &mut R) -> Self::Value;
}

pub struct ExactArith<'a> {
    spec: &'a ConstructiveSpec,
    lower: BigRational,
}

impl<'a> ExactArith<'a> {
    pub fn new(spec: &'a ConstructiveSpec) -> Self {
        ExactArith { spec, lower: spec.monoid.lower_bound() }
    }
}

impl Arith for ExactArith<'_> {
    type Value = BigRational;

    fn identity(&self) -> BigRational {
        self.spec.monoid.identity()
    }
    fn op(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.spec.monoid.op(x, y)
    }
    fn leaf(&self, x: &BigRational) -> BigRational {
        self.spec.leaf.apply(x)
    }
    fn total_cmp(&self, x: &BigRational, y: &BigRational) -> Ordering {
        x.cmp(y)
    }
    fn tie_cmp(&self, x: &BigRational, y: &BigRational) -> Ordering {
        x.cmp(y)
    }
    fn check(&self, x: &BigRational) -> Result<()> {
        if *x >= self.lower {
            Ok(())
        } else {
            Err(Error::CarrierViolation { value: format_rational(x), lower: format_rational(&self.lower) })
        }
    }
    fn key(&self, x: &BigRational) -> ScoreKey {
        ScoreKey::Ratio(x.clone())
    }
    fn render(&self, x: &BigRational) -> String {
        format_rational(x)
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> BigRational {
        let den = rng.random_range(1..=64i64);
        let num = rng.random_range(0..=64 * 64i64);
        &self.lower + BigRational::new(num.into(), den.into())
    }
}

pub struct FloatArith<'a> {
    spec: &'a ConstructiveSpec,
    lower: f64,
    c: f64,
    leaf: (f64, f64, bool),
}

impl<'a> FloatArith<'a> {
    pub fn new(spec: &'a ConstructiveSpec) -> Self {
        let c = match &spec.monoid {
            Monoid::ScaledProduct { c } => to_f64(c),
            _ => 1.0,
        };
        let leaf = match &spec.leaf {
            LeafFn::Const(k) => (0.0, to_f64(k), true),
            LeafFn::Affine { a, b } => (to_f64(a), to_f64(b), false),
        };
        FloatArith { spec, lower: to_f64(&spec.monoid.lower_bound()), c, leaf }
    }
}

impl Arith for FloatArith<'_> {
    type Value = f64;

    fn identity(&self) -> f64 {
        self.lower
    }
    fn op(&self, x: &f64, y: &f64) -> f64 {
        self.spec.monoid.op_f64(self.c, *x, *y)
    }
    fn leaf(&self, x: &f64) -> f64 {
        let (a, b, constant) = self.leaf;
        if constant {
            b
        } else {
            a * x + b
        }
    }
    fn total_cmp(&self, x: &f64, y: &f64) -> Ordering {
        x.total_cmp(y)
    }
    fn tie_cmp(&self, x: &f64, y: &f64) -> Ordering {
        float_compare(*x, *y, TIE_EPS).ordering
    }
    fn check(&self, x: &f64) -> Result<()> {
        if x.is_finite() && float_compare(*x, self.lower, TIE_EPS).ordering != Ordering::Less {
            Ok(())
        } else {
            Err(Error::CarrierViolation { value: x.to_string(), lower: self.lower.to_string() })
        }
    }
    fn key(&self, x: &f64) -> ScoreKey {
        ScoreKey::Float(*x)
    }
    fn render(&self, x: &f64) -> String {
        crate::score::format_sig(*x, 12)
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        self.lower + rng.random_range(0.0..64.0)
    }
}

/// Scaled-product potentials carried as natural logarithms.
pub struct LogArith {
    ln_c: f64,
    a: f64,
    b: f64,
}

impl LogArith {
    pub fn new(spec: &ConstructiveSpec) -> Result<Self> {
        match (&spec.monoid, &spec.leaf) {
            (Monoid::ScaledProduct { c }, LeafFn::Affine { a, b }) if a.is_positive() && !b.is_negative() => {
                Ok(LogArith { ln_c: to_f64(c).ln(), a: to_f64(a), b: to_f64(b) })
            }
            _ => Err(Error::UnsupportedMode { mode: "logspace" }),
        }
    }
}

impl Arith for LogArith {
    type Value = f64;

    fn identity(&self) -> f64 {
        self.ln_c
    }
    fn op(&self, x: &f64, y: &f64) -> f64 {
        x + y - self.ln_c
    }
    fn leaf(&self, x: &f64) -> f64 {
        // ln(a e^x + b) = x + ln(a + b e^-x)
        x + (self.a + self.b * (-x).exp()).ln()
    }
    fn total_cmp(&self, x: &f64, y: &f64) -> Ordering {
        x.total_cmp(y)
    }
    fn tie_cmp(&self, x: &f64, y: &f64) -> Ordering {
        float_compare(*x, *y, TIE_EPS).ordering
    }
    fn check(&self, x: &f64) -> Result<()> {
        if x.is_finite() && float_compare(*x, self.ln_c, TIE_EPS).ordering != Ordering::Less {
            Ok(())
        } else {
            Err(Error::CarrierViolation { value: format!("exp({x})"), lower: format!("exp({})", self.ln_c) })
        }
    }
    fn key(&self, x: &f64) -> ScoreKey {
        ScoreKey::Float(*x)
    }
    fn render(&self, x: &f64) -> String {
        format!("exp({})", crate::score::format_sig(*x, 12))
    }
    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        self.ln_c + rng.random_range(0.0..16.0)
    }
}

/// Runs `$body` with `$a` bound to the arithmetic backend of `$spec`.
macro_rules! with_arith {
    ($spec:expr, |$a:ident| $body:expr) => {
        match $spec.mode {
            $crate::constructive::NumericMode::Exact => {
                let $a = $crate::constructive::ExactArith::new($spec);
                $body
            }
            $crate::constructive::NumericMode::Float => {
                let $a = $crate::constructive::FloatArith::new($spec);
                $body
            }
            $crate::constructive::NumericMode::LogSpace => {
                let $a = $crate::constructive::LogArith::new($spec)?;
                $body
            }
        }
    };
}
pub(crate) use with_arith;

/// `f(x, T_{x, parent(x)})` for every vertex when `T` is rooted at `root`;
/// the root entry is `f(root, T)`.
pub fn eval_rooted<A: Arith>(arith: &A, tree: &Tree, root: usize) -> Result<Vec<A::Value>> {
    eval_hanging(arith, tree, root, None)
}

/// Like [`eval_rooted`] but confined to `T_{root, blocked}`; entries
/// outside it are left at the identity.
pub fn eval_hanging<A: Arith>(arith: &A, tree: &Tree, root: usize, blocked: Option<usize>) -> Result<Vec<A::Value>> {
    let (order, parent) = tree.bfs_from(root, blocked);
    let mut acc: Vec<A::Value> = vec![arith.identity(); tree.len()];
    for &x in order[1..].iter().rev() {
        let up = arith.leaf(&acc[x]);
        arith.check(&up)?;
        let p = parent[x];
        let merged = arith.op(&acc[p], &up);
        arith.check(&merged)?;
        acc[p] = merged;
    }
    Ok(acc)
}

pub fn eval_with<A: Arith>(arith: &A, tree: &Tree, v: usize) -> Result<A::Value> {
    tree.check_vertex(v)?;
    Ok(eval_rooted(arith, tree, v)?.swap_remove(v))
}

/// `f(v, T)` as a score key (exact rational in exact mode, float otherwise).
pub fn eval_constructive(spec: &ConstructiveSpec, tree: &Tree, v: usize) -> Result<ScoreKey> {
    with_arith!(spec, |a| eval_with(&a, tree, v).map(|x| a.key(&x)))
}

/// Outcome of one sufficient condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionVerdict {
    pub condition: &'static str,
    /// Held on every value the potential attains on trees with up to
    /// `range_max_n` vertices.
    pub on_range: bool,
    /// Held on the random carrier samples.
    pub on_samples: bool,
    pub witness: Option<String>,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.on_range && self.on_samples
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub spec: String,
    pub range_max_n: usize,
    pub range_size: usize,
    pub samples: usize,
    pub conditions: Vec<ConditionVerdict>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(ConditionVerdict::holds)
    }
}

/// Largest tree size whose potential values form the checked range.
pub const RANGE_MAX_N: usize = 7;

/// The distinct values `f(0, T)` over all labeled trees with at most
/// `max_n` vertices, sorted. Every rooted shape appears rooted at 0.
pub fn value_range<A: Arith>(arith: &A, max_n: usize) -> Result<Vec<A::Value>> {
    let mut values = vec![arith.identity()];
    for n in 2..=max_n {
        for tree in enumerate_trees(n)? {
            values.push(eval_with(arith, &tree, 0)?);
        }
    }
    values.sort_by(|x, y| arith.total_cmp(x, y));
    values.dedup_by(|x, y| arith.total_cmp(x, y) == Ordering::Equal);
    Ok(values)
}

/// Checks `x < l(x)`, monotone `l`, and a positively ordered monoid on the
/// attained value range (trees up to [`RANGE_MAX_N`] vertices) and on
/// `samples` random carrier values.
pub fn check_lemma_conditions(spec: &ConstructiveSpec, samples: usize, seed: u64) -> Result<LemmaReport> {
    with_arith!(spec, |a| lemma_conditions(&a, spec, samples, seed))
}

fn lemma_conditions<A: Arith>(arith: &A, spec: &ConstructiveSpec, samples: usize, seed: u64) -> Result<LemmaReport> {
    let range = value_range(arith, RANGE_MAX_N)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled: Vec<A::Value> = (0..samples).map(|_| arith.sample(&mut rng)).collect();
    sampled.push(arith.identity());
    sampled.sort_by(|x, y| arith.total_cmp(x, y));

    let lt = |x: &A::Value, y: &A::Value| arith.tie_cmp(x, y) == Ordering::Less;
    let gt = |x: &A::Value, y: &A::Value| arith.tie_cmp(x, y) == Ordering::Greater;

    // (1) x < l(x)
    let grows = |values: &[A::Value]| values.iter().find(|x| !lt(x, &arith.leaf(x))).cloned();
    // (2) l monotone; on a sorted list consecutive pairs suffice.
    let monotone = |values: &[A::Value]| {
        values.windows(2).find(|w| gt(&arith.leaf(&w[0]), &arith.leaf(&w[1]))).map(|w| w[0].clone())
    };
    // (3) identity <= x and x <= y => x (+) z <= y (+) z, for z drawn from
    // the same values.
    let ordered = |values: &[A::Value]| {
        let id = arith.identity();
        if let Some(x) = values.iter().find(|x| lt(x, &id)) {
            return Some(x.clone());
        }
        for z in values {
            for w in values.windows(2) {
                if gt(&arith.op(&w[0], z), &arith.op(&w[1], z)) {
                    return Some(w[0].clone());
                }
            }
        }
        None
    };

    let mut conditions = Vec::new();
    type Check<'c, V> = &'c dyn Fn(&[V]) -> Option<V>;
    let checks: [(&'static str, Check<A::Value>); 3] = [
        ("x < l(x)", &grows),
        ("l monotone", &monotone),
        ("positively ordered monoid", &ordered),
    ];
    for (condition, check) in checks {
        let on_range = check(&range);
        let on_samples = check(&sampled);
        let witness = on_range.as_ref().or(on_samples.as_ref()).map(|x| arith.render(x));
        conditions.push(ConditionVerdict {
            condition,
            on_range: on_range.is_none(),
            on_samples: on_samples.is_none(),
            witness,
        });
    }
    Ok(LemmaReport {
        spec: spec.name.clone(),
        range_max_n: RANGE_MAX_N,
        range_size: range.len(),
        samples,
        conditions,
    })
}

/// Two parameter triples that root the same star-plus-line tree on
/// opposite sides of the bridging edge.
#[derive(Debug, Clone, PartialEq)]
pub struct RootingWitness {
    pub first: ConstructiveSpec,
    pub second: ConstructiveSpec,
    /// Star leaves.
    pub star_leaves: usize,
    /// Line vertices.
    pub line_len: usize,
    pub tree: Tree,
    pub first_roots: Vec<usize>,
    pub second_roots: Vec<usize>,
}

/// The star `S_k` (center 0) joined at its center to an endpoint of `L_m`.
pub fn star_plus_line(star_leaves: usize, line_len: usize) -> Tree {
    Tree::join(&Tree::star(star_leaves), 0, &Tree::line(line_len), 0).expect("both roots exist")
}

/// Searches star sizes `stars` and line lengths `lines` for a tree on which
/// two of `specs` pick roots in different halves (star side versus line
/// side). Returns the first hit in (star, line, pair) order.
pub fn find_rooting_witness(
    specs: &[ConstructiveSpec],
    stars: std::ops::RangeInclusive<usize>,
    lines: std::ops::RangeInclusive<usize>,
) -> Result<Option<RootingWitness>> {
    for k in stars {
        for m in lines.clone() {
            let tree = star_plus_line(k, m);
            let side = |roots: &[usize]| -> Option<bool> {
                let star = roots.iter().all(|&r| r <= k);
                let line = roots.iter().all(|&r| r > k);
                (star || line).then_some(star)
            };
            let mut placed = Vec::with_capacity(specs.len());
            for spec in specs {
                let roots = crate::rootfind::find_roots_both(&tree, spec)?.roots;
                placed.push((side(&roots), roots));
            }
            for i in 0..specs.len() {
                for j in i + 1..specs.len() {
                    if let (Some(si), Some(sj)) = (placed[i].0, placed[j].0) {
                        if si != sj {
                            return Ok(Some(RootingWitness {
                                first: specs[i].clone(),
                                second: specs[j].clone(),
                                star_leaves: k,
                                line_len: m,
                                tree,
                                first_roots: placed[i].1.clone(),
                                second_roots: placed[j].1.clone(),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// In-region triples with every coordinate drawn from `values`.
pub fn abc_grid(values: &[BigRational]) -> Vec<ConstructiveSpec> {
    let mut out = Vec::new();
    for a in values {
        for b in values {
            for c in values {
                if let Ok(spec) = family_abc(a.clone(), b.clone(), c.clone()) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

impl ConstructiveSpec {
    /// Identity value as text, in exact form.
    pub fn identity_text(&self) -> String {
        format_rational(&self.monoid.identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(spec: &ConstructiveSpec, tree: &Tree, v: usize) -> BigRational {
        match eval_constructive(spec, tree, v).unwrap() {
            ScoreKey::Ratio(r) => r,
            other => panic!("expected exact value, got {other:?}"),
        }
    }

    #[test]
    fn single_vertex_is_identity() {
        for name in BUILTIN_NAMES {
            let spec = builtin_spec(name).unwrap();
            assert_eq!(exact(&spec, &Tree::single(0), 0), spec.monoid.identity());
        }
        let abc = family_abc(rat(2), q(1, 2), rat(3)).unwrap();
        assert_eq!(exact(&abc, &Tree::single(0), 0), rat(3));
    }

    #[test]
    fn builtin_values() {
        let subgraphs = builtin_spec("all-subgraphs").unwrap();
        for k in 0..8 {
            assert_eq!(exact(&subgraphs, &Tree::star(k), 0), rat(1 << k));
        }
        let closeness = builtin_spec("closeness").unwrap();
        assert_eq!(exact(&closeness, &Tree::line(6), 2), rat(6));
        assert_eq!(exact(&builtin_spec("eccentricity").unwrap(), &Tree::line(4), 0), rat(3));
        assert_eq!(exact(&builtin_spec("degree").unwrap(), &Tree::star(5), 0), rat(5));
        assert!(matches!(builtin_spec("pagerank"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn abc_region() {
        assert!(family_abc(rat(1), rat(1), rat(1)).is_ok());
        assert!(matches!(family_abc(q(1, 2), rat(1), rat(1)), Err(Error::ParamsOutOfRegion { .. })));
        assert!(family_abc(rat(1), rat(0), rat(1)).is_err());
        assert!(family_abc(rat(1), rat(1), rat(0)).is_err());
        let spec: ConstructiveSpec = "abc:a=2,b=1,c=0.5".parse().unwrap();
        assert_eq!(spec.name, "abc:a=2,b=1,c=0.5");
        assert!("abc:a=2,b=1".parse::<ConstructiveSpec>().is_err());
        assert!("closeness:x=1".parse::<ConstructiveSpec>().is_err());
    }

    #[test]
    fn abc_one_one_one_is_all_subgraphs() {
        let abc = family_abc(rat(1), rat(1), rat(1)).unwrap();
        for n in 0..10 {
            assert_eq!(exact(&abc, &Tree::star(n), 0), rat(1 << n));
        }
    }

    #[test]
    fn carrier_violation_is_an_error() {
        let spec = ConstructiveSpec::new("neg", Monoid::Sum, LeafFn::Const(rat(-1))).unwrap();
        assert!(matches!(
            eval_constructive(&spec, &Tree::line(2), 0),
            Err(Error::CarrierViolation { .. })
        ));
        // A single vertex never applies the leaf function.
        assert!(eval_constructive(&spec, &Tree::single(0), 0).is_ok());
    }

    #[test]
    fn symbolic_gate() {
        assert!(!builtin_spec("degree").unwrap().satisfies_lemma());
        for name in ["closeness", "eccentricity", "all-subgraphs"] {
            assert!(builtin_spec(name).unwrap().satisfies_lemma());
        }
        let shrink = ConstructiveSpec::new("shrink", Monoid::Max, LeafFn::Affine { a: q(1, 2), b: rat(1) }).unwrap();
        assert!(!shrink.satisfies_lemma());
    }

    #[test]
    fn lemma_report_for_degree_names_a_witness() {
        let report = check_lemma_conditions(&builtin_spec("degree").unwrap(), 50, 3).unwrap();
        let growth = &report.conditions[0];
        assert!(!growth.on_range);
        assert!(growth.witness.is_some());
        assert!(report.conditions[1].holds());
        assert!(report.conditions[2].holds());
    }

    #[test]
    fn log_space_tracks_exact_values() {
        let spec = family_abc(rat(2), q(1, 2), rat(3)).unwrap();
        let tree = Tree::join(&Tree::star(4), 1, &Tree::line(6), 2).unwrap();
        let exact_v = exact(&spec, &tree, 3);
        let log = eval_constructive(&spec.clone().with_mode(NumericMode::LogSpace), &tree, 3).unwrap();
        let ScoreKey::Float(ln) = log else { panic!() };
        assert!((ln - exact_v.to_f64().unwrap().ln()).abs() < 1e-12);
        assert!(matches!(
            eval_constructive(&builtin_spec("closeness").unwrap().with_mode(NumericMode::LogSpace), &tree, 0),
            Err(Error::UnsupportedMode { .. })
        ));
    }
}
