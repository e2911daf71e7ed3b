//! Countable second-countable spaces with a strong base.

mod honest;
mod injection;

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::sync::Arc;

pub use honest::{honest_flatten, subcover_stage_bound, Flattening, HonestSequence};
pub use injection::{range_decode, InjIndex, InjectionSpace, RangeVerdict};

/// A space `(X, U, k)`: points and basic-open indices are enumerable,
/// membership `x ∈ U_i` is decidable and `refine` is the function `k`.
pub trait CscSpace {
    type Index: Clone + Ord + Debug;

    /// Points in enumeration order (possibly infinite).
    fn points(&self) -> Box<dyn Iterator<Item = u64> + '_>;

    fn is_point(&self, x: u64) -> bool;

    /// Indices of basic opens in enumeration order (possibly infinite).
    fn indices(&self) -> Box<dyn Iterator<Item = Self::Index> + '_>;

    fn is_index(&self, i: &Self::Index) -> bool;

    /// `x ∈ U_i`.
    fn member(&self, i: &Self::Index, x: u64) -> bool;

    /// `k(x, i, j)`: when `x ∈ U_i ∩ U_j`, an index with
    /// `x ∈ U_k ⊆ U_i ∩ U_j`.
    fn refine(&self, x: u64, i: &Self::Index, j: &Self::Index) -> Self::Index;

    /// Some basic open containing `x`.
    fn point_cover(&self, x: u64) -> Self::Index;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseViolation<I> {
    PointUncovered { x: u64, index: I },
    RefineMissesPoint { x: u64, i: I, j: I, k: I },
    RefineNotSubset { x: u64, i: I, j: I, k: I, witness: u64 },
    IndexOutsideDomain { x: u64, index: I },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseReport<I> {
    pub points_checked: usize,
    pub indices_checked: usize,
    pub violations: Vec<BaseViolation<I>>,
}

impl<I> BaseReport<I> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both strong-base axioms on the first `point_sample` points and
/// the first `index_sample` indices. Inclusion `U_k ⊆ U_i ∩ U_j` is tested
/// on the sampled points.
pub fn check_base_axioms<S: CscSpace + ?Sized>(
    space: &S,
    point_sample: usize,
    index_sample: usize,
) -> BaseReport<S::Index> {
    let points: Vec<u64> = space.points().take(point_sample).collect();
    let indices: Vec<S::Index> = space.indices().take(index_sample).collect();
    let mut violations = Vec::new();

    for &x in &points {
        let c = space.point_cover(x);
        if !space.is_index(&c) {
            violations.push(BaseViolation::IndexOutsideDomain { x, index: c });
        } else if !space.member(&c, x) {
            violations.push(BaseViolation::PointUncovered { x, index: c });
        }
    }

    for &x in &points {
        for i in &indices {
            if !space.member(i, x) {
                continue;
            }
            for j in &indices {
                if !space.member(j, x) {
                    continue;
                }
                let k = space.refine(x, i, j);
                if !space.is_index(&k) {
                    violations.push(BaseViolation::IndexOutsideDomain { x, index: k });
                    continue;
                }
                if !space.member(&k, x) {
                    violations.push(BaseViolation::RefineMissesPoint {
                        x,
                        i: i.clone(),
                        j: j.clone(),
                        k,
                    });
                    continue;
                }
                if let Some(&y) = points
                    .iter()
                    .find(|&&y| space.member(&k, y) && !(space.member(i, y) && space.member(j, y)))
                {
                    violations.push(BaseViolation::RefineNotSubset {
                        x,
                        i: i.clone(),
                        j: j.clone(),
                        k,
                        witness: y,
                    });
                }
            }
        }
    }

    BaseReport {
        points_checked: points.len(),
        indices_checked: indices.len(),
        violations,
    }
}

/// Code of an effectively open set: stage `n` emits the finite set `h(n)`.
#[derive(Clone)]
pub struct OpenSetCode<I> {
    h: Arc<dyn Fn(u64) -> Vec<I> + Send + Sync>,
}

impl<I> OpenSetCode<I> {
    pub fn new(h: impl Fn(u64) -> Vec<I> + Send + Sync + 'static) -> Self {
        OpenSetCode { h: Arc::new(h) }
    }

    pub fn stage(&self, n: u64) -> Vec<I> {
        (self.h)(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<I> {
    Yes { stage: u64, index: I },
    Unknown,
}

/// Semi-decides `x ∈ G_h` by scanning stages `n < budget`.
pub fn open_member<S: CscSpace + ?Sized>(
    code: &OpenSetCode<S::Index>,
    x: u64,
    budget: u64,
    space: &S,
) -> Membership<S::Index> {
    for n in 0..budget {
        if let Some(index) = code
            .stage(n)
            .into_iter()
            .find(|i| space.is_index(i) && space.member(i, x))
        {
            return Membership::Yes { stage: n, index };
        }
    }
    Membership::Unknown
}

/// Whether `d` maps each of the first `sample` points to a basic open that
/// contains it and no other sampled point.
pub fn is_discrete_witness<S: CscSpace + ?Sized>(
    space: &S,
    d: impl Fn(u64) -> S::Index,
    sample: usize,
) -> bool {
    let points: Vec<u64> = space.points().take(sample).collect();
    points.iter().all(|&x| {
        let i = d(x);
        space.is_index(&i)
            && space.member(&i, x)
            && points.iter().all(|&y| y == x || !space.member(&i, y))
    })
}

/// A finite space given by explicit basic opens; index `i` names
/// `opens[i]`. Without an explicit `refine`, `k(x, i, j)` is the first
/// index containing `x` inside `U_i ∩ U_j`.
#[derive(Clone)]
pub struct FiniteSpace {
    points: Vec<u64>,
    opens: Vec<BTreeSet<u64>>,
    refine: Option<Arc<dyn Fn(u64, usize, usize) -> usize + Send + Sync>>,
}

impl FiniteSpace {
    pub fn new(points: Vec<u64>, opens: Vec<BTreeSet<u64>>) -> Self {
        FiniteSpace {
            points,
            opens,
            refine: None,
        }
    }

    pub fn with_refine(mut self, k: impl Fn(u64, usize, usize) -> usize + Send + Sync + 'static) -> Self {
        self.refine = Some(Arc::new(k));
        self
    }
}

impl CscSpace for FiniteSpace {
    type Index = usize;

    fn points(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(self.points.iter().copied())
    }

    fn is_point(&self, x: u64) -> bool {
        self.points.contains(&x)
    }

    fn indices(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        Box::new(0..self.opens.len())
    }

    fn is_index(&self, i: &usize) -> bool {
        *i < self.opens.len()
    }

    fn member(&self, i: &usize, x: u64) -> bool {
        self.opens.get(*i).is_some_and(|u| u.contains(&x))
    }

    fn refine(&self, x: u64, i: &usize, j: &usize) -> usize {
        if let Some(k) = &self.refine {
            return k(x, *i, *j);
        }
        let (ui, uj) = (&self.opens[*i], &self.opens[*j]);
        self.opens
            .iter()
            .position(|u| u.contains(&x) && u.iter().all(|y| ui.contains(y) && uj.contains(y)))
            .unwrap_or(*i)
    }

    fn point_cover(&self, x: u64) -> usize {
        self.opens
            .iter()
            .position(|u| u.contains(&x))
            .unwrap_or(self.opens.len())
    }
}
