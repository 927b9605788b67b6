//! Edge-list text format.
//!
//! One edge per line as two whitespace-separated nonnegative integers. `#`
//! starts a comment. A line `v <id>` declares a lone vertex and must be the
//! only content of the file.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tree::Tree;

pub fn parse(text: &str) -> Result<Tree> {
    let mut edges = Vec::new();
    let mut lone: Option<(usize, u64)> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_id = |s: &str| {
            s.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("`{s}` is not a nonnegative integer"),
            })
        };
        match fields.as_slice() {
            ["v", id] => {
                if lone.is_some() {
                    return Err(Error::Parse { line: lineno, msg: "second lone-vertex declaration".into() });
                }
                lone = Some((lineno, parse_id(id)?));
            }
            [a, b] => edges.push((parse_id(a)?, parse_id(b)?)),
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `<u> <v>` or `v <id>`, got `{line}`"),
                })
            }
        }
    }
    match lone {
        Some((line, _)) if !edges.is_empty() => Err(Error::Parse {
            line,
            msg: "a lone-vertex declaration cannot be mixed with edges".into(),
        }),
        Some((_, id)) => Ok(Tree::single(id)),
        None => Tree::from_edge_list(&edges),
    }
}

/// Writes the tree with its labels, one `u v` line per edge in sorted
/// dense order.
pub fn write(tree: &Tree) -> String {
    let mut out = String::new();
    if tree.len() == 1 {
        writeln!(out, "v {}", tree.label(0)).unwrap();
        return out;
    }
    for (u, v) in tree.edges() {
        writeln!(out, "{} {}", tree.label(u), tree.label(v)).unwrap();
    }
    out
}
