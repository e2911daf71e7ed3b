//! Named infinite trees.

use super::{Tree, UpperSetOracle};
use crate::error::{Error, Result};

pub const BUILTIN_TREES: &[&str] = &["zeros", "binary", "zeros_noise", "alt_path"];

fn alternating(i: usize) -> u64 {
    1 - (i as u64 % 2)
}

fn on_alt_path(s: &[u64]) -> bool {
    s.iter().enumerate().all(|(i, &x)| x == alternating(i))
}

/// * `zeros`: `{0ⁿ}`, bounded by 1.
/// * `binary`: all binary sequences.
/// * `zeros_noise`: `{0ⁿ}` plus every binary sequence of length at most 2.
/// * `alt_path`: the path `1,0,1,0,...` plus every binary sequence of length
///   at most 3; the path is the only infinite branch.
pub fn builtin_tree(name: &str) -> Result<Tree> {
    let binary = |s: &[u64]| s.iter().all(|&x| x < 2);
    Ok(match name {
        "zeros" => Tree::bounded("zeros", |s| s.iter().all(|&x| x == 0), |_| 1),
        "binary" => Tree::bounded("binary", binary, |_| 2),
        "zeros_noise" => Tree::bounded(
            "zeros_noise",
            move |s| s.iter().all(|&x| x == 0) || (s.len() <= 2 && binary(s)),
            |_| 2,
        ),
        "alt_path" => Tree::bounded(
            "alt_path",
            move |s| binary(s) && (s.len() <= 3 || on_alt_path(s)),
            |_| 2,
        ),
        _ => return Err(Error::UnknownTree(name.to_string())),
    })
}

/// The upper set used for path extraction on a builtin tree: the whole
/// tree for `zeros`, `binary` and `zeros_noise`; for `alt_path`, the
/// prefixes of the path and everything to their right.
pub fn builtin_upper(name: &str) -> Result<UpperSetOracle> {
    let t = builtin_tree(name)?;
    Ok(match name {
        "alt_path" => UpperSetOracle::new(move |s| {
            t.contains(s)
                && match s.iter().enumerate().find(|&(i, &x)| x != alternating(i)) {
                    None => true,
                    Some((i, &x)) => x > alternating(i),
                }
        }),
        _ => UpperSetOracle::new(move |s| t.contains(s)),
    })
}
