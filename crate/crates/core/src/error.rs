use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge list is empty; declare a lone vertex with `v <id>`")]
    EmptyInput,
    #[error("self-loop at vertex {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u64, u64),
    #[error("edge {0}-{1} closes a cycle")]
    Cyclic(u64, u64),
    #[error("graph is disconnected: component containing vertex {first} has {size} of {total} vertices")]
    Disconnected { first: u64, size: usize, total: usize },
    #[error("{u}-{v} is not an edge of the tree")]
    NotAnEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range for a tree with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("Pruefer entry {entry} out of range for n = {n}")]
    EntryOutOfRange { entry: usize, n: usize },
    #[error("Pruefer code of length {len} does not match n = {n}")]
    CodeLength { len: usize, n: usize },
    #[error("exhaustive enumeration is capped at n = {max} (got {n}); use random_trees instead")]
    TooLarge { n: usize, max: usize },
    #[error("tree size {0} is below the minimum of 2")]
    TooSmall(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{measure} is undefined on a single-vertex tree")]
    SingleVertex { measure: &'static str },
    #[error("alpha = {0} is outside (0, 1)")]
    AlphaOutOfRange(f64),
    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("parameters a = {a}, b = {b}, c = {c} outside the region a >= 1, b > 0, c > 0")]
    ParamsOutOfRegion { a: String, b: String, c: String },
    #[error("value {value} left the carrier [{lower}, inf)")]
    CarrierViolation { value: String, lower: String },
    #[error("numeric mode {mode} is not supported for this spec")]
    UnsupportedMode { mode: &'static str },

    #[error("potential is not symmetric: leaf function must satisfy x < l(x) on a positively ordered monoid")]
    NotSymmetric,
    #[error("argmax set {0:?} is not one vertex or two adjacent vertices")]
    NotARoot(Vec<usize>),
    #[error("measure {0} has no registered potential function")]
    NoPotential(String),
}
