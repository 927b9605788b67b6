//! Centrality measures on trees, potential functions, root finding and
//! exhaustive property sweeps.
//!
//! ```
//! use rootcast::{builtin_spec, find_roots_both, Tree};
//!
//! let roots = find_roots_both(&Tree::line(4), &builtin_spec("closeness").unwrap()).unwrap();
//! assert_eq!(roots.roots, vec![1, 2]);
//! ```

pub mod centrality;
pub mod constructive;
pub mod edgelist;
pub mod error;
pub mod par;
pub mod params;
pub mod potential;
pub mod prufer;
pub mod rootfind;
pub mod score;
pub mod tree;
pub mod verify;

pub use centrality::{max_set, score, score_all, MeasureId};
pub use constructive::{builtin_spec, check_lemma_conditions, eval_constructive, family_abc, ConstructiveSpec, NumericMode};
pub use error::{Error, Result};
pub use potential::{eval_potential, PotentialId};
pub use prufer::{enumerate_trees, prufer_decode, prufer_encode, random_trees, PruferCode};
pub use rootfind::{find_root, find_roots_both, naive_root, NaiveTarget, RootResult};
pub use score::ScoreKey;
pub use tree::{SubtreeView, Tree};
pub use verify::{sweep, PropertyId, PropertyReport, SweepConfig};
