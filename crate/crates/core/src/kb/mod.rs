//! Trees of finite sequences under the Kleene–Brouwer order.

mod builtin;
mod neighbors;
mod paths;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use builtin::{builtin_tree, builtin_upper, BUILTIN_TREES};
pub use neighbors::{
    kb_discrete_witness, kb_predecessor, kb_sort, kb_successor, kb_view, leftmost_leaf, DiscreteWitness,
};
pub use paths::{
    extract_path, is_leftmost_in_upper, reversal_pipeline, subtree_upper_set, PipelineOutcome, UpperSetOracle,
};

/// A finite sequence of naturals. Displays as comma-separated entries, or
/// `-` when empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSeq(pub Vec<u64>);

impl FinSeq {
    pub fn empty() -> Self {
        FinSeq(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `σ ↾ n`.
    pub fn restrict(&self, n: usize) -> FinSeq {
        FinSeq(self.0[..n.min(self.len())].to_vec())
    }

    /// `σ ⌢ m`.
    pub fn child(&self, m: u64) -> FinSeq {
        let mut v = self.0.clone();
        v.push(m);
        FinSeq(v)
    }

    pub fn parent(&self) -> Option<FinSeq> {
        (!self.is_empty()).then(|| self.restrict(self.len() - 1))
    }

    /// `σ ! m`: the last entry replaced by `m`.
    pub fn with_last(&self, m: u64) -> Option<FinSeq> {
        let mut v = self.0.clone();
        *v.last_mut()? = m;
        Some(FinSeq(v))
    }

    pub fn is_prefix_of(&self, other: &FinSeq) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<u64>> for FinSeq {
    fn from(v: Vec<u64>) -> Self {
        FinSeq(v)
    }
}

impl fmt::Display for FinSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for FinSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(FinSeq::empty());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Input(format!("bad sequence entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(FinSeq)
    }
}

/// `σ <_KB τ` iff `σ` properly extends `τ`, or `σ` is left of `τ` at the
/// first place they differ.
pub fn kb_compare(s: &[u64], t: &[u64]) -> Ordering {
    match s.iter().zip(t).find(|(a, b)| a != b) {
        Some((a, b)) => a.cmp(b),
        None => t.len().cmp(&s.len()),
    }
}

type MemberFn = Arc<dyn Fn(&[u64]) -> bool + Send + Sync>;
type BranchFn = Arc<dyn Fn(&[u64]) -> u64 + Send + Sync>;
type BoundFn = Arc<dyn Fn(usize) -> u64 + Send + Sync>;

/// A tree given by a membership oracle and a branching oracle: the children
/// of `σ` are among `σ⌢m` for `m < branching(σ)`. A level bound `g`, when
/// present, promises `σ(n) < g(n)` for all members. Finite trees also carry
/// their node listing.
#[derive(Clone)]
pub struct Tree {
    name: String,
    member: MemberFn,
    branching: BranchFn,
    bound: Option<BoundFn>,
    listing: Option<Arc<Vec<FinSeq>>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("name", &self.name)
            .field("bounded", &self.bound.is_some())
            .field("nodes", &self.listing.as_ref().map(|l| l.len()))
            .finish()
    }
}

/// Level bound from a list `g(0), g(1), ...`; the last value repeats.
fn repeat_last(bound: Vec<u64>) -> Option<BoundFn> {
    let last = *bound.last()?;
    Some(Arc::new(move |n| bound.get(n).copied().unwrap_or(last)))
}

impl Tree {
    /// A finite tree from its nodes. Prefix closure is not enforced here;
    /// `check_tree` reports violations.
    pub fn finite(nodes: impl IntoIterator<Item = FinSeq>, bound: Option<Vec<u64>>) -> Self {
        let set: BTreeSet<FinSeq> = nodes.into_iter().collect();
        let mut width: HashMap<FinSeq, u64> = HashMap::new();
        for s in &set {
            if let (Some(p), Some(&last)) = (s.parent(), s.0.last()) {
                let w = width.entry(p).or_default();
                *w = (*w).max(last + 1);
            }
        }
        let mut listing: Vec<FinSeq> = set.iter().cloned().collect();
        listing.sort_by(|a, b| kb_compare(&a.0, &b.0));
        let set = Arc::new(set);
        Tree {
            name: "finite".into(),
            member: Arc::new(move |s| set.contains(&FinSeq(s.to_vec()))),
            branching: Arc::new(move |s| width.get(&FinSeq(s.to_vec())).copied().unwrap_or(0)),
            bound: bound.and_then(repeat_last),
            listing: Some(Arc::new(listing)),
        }
    }

    /// A tree bounded by `g`.
    pub fn bounded(
        name: impl Into<String>,
        member: impl Fn(&[u64]) -> bool + Send + Sync + 'static,
        g: impl Fn(usize) -> u64 + Send + Sync + 'static,
    ) -> Self {
        let g: BoundFn = Arc::new(g);
        let g2 = g.clone();
        Tree {
            name: name.into(),
            member: Arc::new(member),
            branching: Arc::new(move |s| g2(s.len())),
            bound: Some(g),
            listing: None,
        }
    }

    /// A finitely-branching tree with a per-node branching oracle and no
    /// uniform bound.
    pub fn finitely_branching(
        name: impl Into<String>,
        member: impl Fn(&[u64]) -> bool + Send + Sync + 'static,
        branching: impl Fn(&[u64]) -> u64 + Send + Sync + 'static,
    ) -> Self {
        Tree {
            name: name.into(),
            member: Arc::new(member),
            branching: Arc::new(branching),
            bound: None,
            listing: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, s: &[u64]) -> bool {
        (self.member)(s)
    }

    pub fn branching(&self, s: &[u64]) -> u64 {
        (self.branching)(s)
    }

    pub fn bound(&self, level: usize) -> Option<u64> {
        self.bound.as_ref().map(|g| g(level))
    }

    /// The nodes in `<_KB` order, for finite trees.
    pub fn nodes(&self) -> Option<&[FinSeq]> {
        self.listing.as_ref().map(|l| l.as_slice())
    }

    /// Children of `σ`, left to right.
    pub fn children(&self, s: &FinSeq) -> Vec<FinSeq> {
        (0..self.branching(&s.0))
            .map(|m| s.child(m))
            .filter(|c| self.contains(&c.0))
            .collect()
    }

    pub fn is_leaf(&self, s: &FinSeq) -> bool {
        (0..self.branching(&s.0)).all(|m| !self.contains(&s.child(m).0))
    }

    pub(crate) fn require(&self, s: &FinSeq) -> Result<()> {
        if self.contains(&s.0) {
            Ok(())
        } else {
            Err(Error::Input(format!("{s} is not in the tree {}", self.name)))
        }
    }

    /// Members of length `≤ depth` in breadth-first order, at most `limit`.
    pub fn members_upto(&self, depth: usize, limit: usize) -> Vec<FinSeq> {
        let mut out = Vec::new();
        if !self.contains(&[]) {
            return out;
        }
        let mut level = vec![FinSeq::empty()];
        for d in 0..=depth {
            let mut next = Vec::new();
            for s in level {
                if out.len() >= limit {
                    return out;
                }
                if d < depth {
                    next.extend(self.children(&s));
                }
                out.push(s);
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeViolation {
    MissingPrefix { node: FinSeq, prefix: FinSeq },
    BoundExceeded { node: FinSeq, level: usize, value: u64, bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeReport {
    pub nodes_checked: usize,
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

const CANDIDATE_LIMIT: usize = 1 << 16;

/// Checks prefix closure and the level bound on members of length
/// `≤ depth`. Finite trees are checked on their listing; oracle trees on
/// every candidate sequence allowed by the bound (or by the branching
/// oracle from the root when there is no bound).
pub fn check_tree(t: &Tree, depth: usize) -> TreeReport {
    let nodes: Vec<FinSeq> = match (&t.listing, &t.bound) {
        (Some(l), _) => l.iter().filter(|s| s.len() <= depth).cloned().collect(),
        (None, Some(g)) => {
            let mut all = vec![FinSeq::empty()];
            let mut level = vec![FinSeq::empty()];
            for d in 0..depth {
                let next: Vec<FinSeq> = level.iter().flat_map(|s| (0..g(d)).map(move |m| s.child(m))).collect();
                if all.len() + next.len() > CANDIDATE_LIMIT {
                    break;
                }
                all.extend(next.iter().cloned());
                level = next;
            }
            all.into_iter().filter(|s| t.contains(&s.0)).collect()
        }
        (None, None) => t.members_upto(depth, CANDIDATE_LIMIT),
    };
    let mut violations = Vec::new();
    for s in &nodes {
        if let Some(prefix) = (0..s.len()).map(|n| s.restrict(n)).find(|p| !t.contains(&p.0)) {
            violations.push(TreeViolation::MissingPrefix {
                node: s.clone(),
                prefix,
            });
        }
        if let Some(g) = &t.bound {
            if let Some((level, &value)) = s.0.iter().enumerate().find(|&(n, &v)| v >= g(n)) {
                violations.push(TreeViolation::BoundExceeded {
                    node: s.clone(),
                    level,
                    value,
                    bound: g(level),
                });
            }
        }
    }
    TreeReport {
        nodes_checked: nodes.len(),
        violations,
    }
}
