use std::collections::BTreeSet;
use std::sync::Arc;

use crate::coding::{untriple, unpair};
use crate::error::{Error, Result};

/// A sequence of open sets coded uniformly: the `m`-th set is the union of
/// `U_i` over `i ∈ h(m, n)` for all stages `n`.
#[derive(Clone)]
pub struct HonestSequence<I> {
    h2: Arc<dyn Fn(u64, u64) -> BTreeSet<I> + Send + Sync>,
}

impl<I: Ord + Clone> HonestSequence<I> {
    pub fn new(h2: impl Fn(u64, u64) -> BTreeSet<I> + Send + Sync + 'static) -> Self {
        HonestSequence { h2: Arc::new(h2) }
    }

    /// An honest sequence from a finite table; cells outside are empty.
    pub fn from_table(table: Vec<Vec<BTreeSet<I>>>) -> Self
    where
        I: Send + Sync + 'static,
    {
        HonestSequence::new(move |m, n| {
            table
                .get(m as usize)
                .and_then(|row| row.get(n as usize))
                .cloned()
                .unwrap_or_default()
        })
    }

    pub fn at(&self, m: u64, n: u64) -> BTreeSet<I> {
        (self.h2)(m, n)
    }
}

/// The single sequence `g` of basic-open indices obtained from an honest
/// sequence, with `p = <m, n, s>` in the triple coding.
#[derive(Clone)]
pub struct Flattening<I> {
    hs: HonestSequence<I>,
    fallback: I,
    fallback_origin: (u64, u64),
}

impl<I: Ord + Clone> Flattening<I> {
    /// `g(<m, n, s>)` is the `(s+1)`-th smallest member of `h(m, n)`, or the
    /// fallback index `i0` when `h(m, n)` is smaller than that.
    pub fn g(&self, p: u64) -> I {
        let (m, n, s) = untriple(p);
        usize::try_from(s)
            .ok()
            .and_then(|s| self.hs.at(m, n).into_iter().nth(s))
            .unwrap_or_else(|| self.fallback.clone())
    }

    /// A pair `(m, n)` with `g(p) ∈ h(m, n)`.
    pub fn origin(&self, p: u64) -> (u64, u64) {
        let (m, n, s) = untriple(p);
        let direct = usize::try_from(s).is_ok_and(|s| self.hs.at(m, n).len() > s);
        if direct { (m, n) } else { self.fallback_origin }
    }

    pub fn fallback(&self) -> &I {
        &self.fallback
    }

    pub fn fallback_origin(&self) -> (u64, u64) {
        self.fallback_origin
    }

    /// `M` such that the first `M` honest sets absorb `g(0), ..., g(P-1)`.
    pub fn stage_bound(&self, p_bound: u64) -> u64 {
        subcover_stage_bound(p_bound, |p| self.origin(p))
    }
}

/// Flattens `hs`. The fallback `i0` is the least member of the first
/// non-empty `h(m, n)`, scanning `<m, n>` in pairing order below `budget`.
pub fn honest_flatten<I: Ord + Clone>(hs: &HonestSequence<I>, budget: u64) -> Result<Flattening<I>> {
    for q in 0..budget {
        let (m, n) = unpair(q);
        if let Some(first) = hs.at(m, n).into_iter().next() {
            return Ok(Flattening {
                hs: hs.clone(),
                fallback: first,
                fallback_origin: (m, n),
            });
        }
    }
    Err(Error::NoFallbackIndex { budget })
}

/// `1 + max{m : p < P}` over the provenance pairs of the first `P`
/// flattened indices, and `0` when `P = 0`.
pub fn subcover_stage_bound(p_bound: u64, origin: impl Fn(u64) -> (u64, u64)) -> u64 {
    (0..p_bound).map(|p| origin(p).0 + 1).max().unwrap_or(0)
}
