use std::fmt;
use std::sync::Arc;

use super::neighbors::{kb_predecessor, kb_successor, leftmost_leaf};
use super::{FinSeq, Tree};
use crate::error::{Error, Result};
use crate::order::ExtPoint;

/// Membership in the upper side `A⁺` of a cut of `(T, <_KB)`.
#[derive(Clone)]
pub struct UpperSetOracle {
    in_upper: Arc<dyn Fn(&[u64]) -> bool + Send + Sync>,
}

impl fmt::Debug for UpperSetOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("UpperSetOracle { .. }")
    }
}

impl UpperSetOracle {
    pub fn new(in_upper: impl Fn(&[u64]) -> bool + Send + Sync + 'static) -> Self {
        UpperSetOracle {
            in_upper: Arc::new(in_upper),
        }
    }

    pub fn contains(&self, s: &[u64]) -> bool {
        (self.in_upper)(s)
    }
}

/// Whether `σ ∈ A⁺` while no `(σ↾i)⌢n` with `n < σ(i)` is in `A⁺`.
pub fn is_leftmost_in_upper(upper: &UpperSetOracle, s: &FinSeq) -> bool {
    upper.contains(&s.0)
        && (0..s.len()).all(|i| {
            let base = s.restrict(i);
            (0..s.0[i]).all(|n| !upper.contains(&base.child(n).0))
        })
}

/// `σ_0 = ⟨⟩` and `σ_{n+1} = σ_n⌢m` for the least `m` with `σ_n⌢m ∈ A⁺`,
/// returning `σ_0, ..., σ_steps`.
pub fn extract_path(t: &Tree, upper: &UpperSetOracle, steps: usize) -> Result<Vec<FinSeq>> {
    let mut s = FinSeq::empty();
    if !upper.contains(&s.0) || !t.contains(&s.0) {
        return Err(Error::NoLeastViolated("the upper set misses the root".into()));
    }
    let mut out = vec![s.clone()];
    for _ in 0..steps {
        let next = (0..t.branching(&s.0))
            .map(|m| s.child(m))
            .find(|c| t.contains(&c.0) && upper.contains(&c.0));
        match next {
            Some(c) => {
                out.push(c.clone());
                s = c;
            }
            None => return Err(Error::NoLeastViolated(s.to_string())),
        }
    }
    Ok(out)
}

/// `A⁺ = T_σ`, together with the prefixes of `σ` so that extraction can
/// start at the root.
pub fn subtree_upper_set(t: &Tree, s: &FinSeq) -> UpperSetOracle {
    let t = t.clone();
    let s = s.clone();
    UpperSetOracle::new(move |u| t.contains(u) && (u.starts_with(&s.0) || s.0.starts_with(u)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineOutcome {
    /// Leftmost descent from `root` ran past the budget; `prefixes` follow
    /// the leftmost path through `T_root`.
    Path { root: FinSeq, prefixes: Vec<FinSeq> },
    /// Every subtree has a leftmost leaf; `d(σ)` for each node.
    Discrete {
        witnesses: Vec<(FinSeq, ExtPoint<FinSeq>, ExtPoint<FinSeq>)>,
    },
}

const NODE_LIMIT: usize = 1 << 20;

/// Looks, breadth-first up to depth `budget`, for a node whose leftmost
/// descent exceeds `budget` steps and extracts a path through it. If the
/// tree is exhausted first, reports the discreteness witnesses instead.
pub fn reversal_pipeline(t: &Tree, budget: usize) -> Result<PipelineOutcome> {
    let nodes = t.members_upto(budget, NODE_LIMIT);
    for s in &nodes {
        match leftmost_leaf(t, s, budget) {
            Ok(_) => {}
            Err(Error::CapExceeded { .. }) => {
                let prefixes = extract_path(t, &subtree_upper_set(t, s), budget.max(s.len()))?;
                return Ok(PipelineOutcome::Path {
                    root: s.clone(),
                    prefixes,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let frontier = nodes.len() >= NODE_LIMIT || nodes.iter().any(|s| s.len() == budget && !t.is_leaf(s));
    if frontier {
        return Err(Error::BudgetExhausted(budget as u64));
    }
    let witnesses = nodes
        .iter()
        .map(|s| Ok((s.clone(), kb_predecessor(t, s)?, kb_successor(t, s, budget)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PipelineOutcome::Discrete { witnesses })
}
