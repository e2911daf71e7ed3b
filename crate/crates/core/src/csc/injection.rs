//! The discrete space built from an injection `f`, whose honest covers by
//! finite basic opens decode the range of `f`.
//!
//! Points are the naturals and the basic opens are
//!
//! ```text
//! U<0,n>       = {n} ∪ {t : (∃ s ≤ t) f(s) = n}
//! U<1,<n,s>>   = {n} if f(s) = n, else ∅
//! U<2,s>       = {t : t ≥ s}
//! ```

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::CscSpace;
use crate::coding::unpair;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InjIndex {
    /// `<0, n>`
    Single(u64),
    /// `<1, <n, s>>`
    Graph { n: u64, s: u64 },
    /// `<2, s>`
    Tail(u64),
}

impl fmt::Display for InjIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InjIndex::Single(n) => write!(f, "0 {n}"),
            InjIndex::Graph { n, s } => write!(f, "1 {n} {s}"),
            InjIndex::Tail(s) => write!(f, "2 {s}"),
        }
    }
}

pub const DEFAULT_INJECTIVITY_PREFIX: u64 = 1024;

#[derive(Clone)]
pub struct InjectionSpace {
    f: Arc<dyn Fn(u64) -> u64 + Send + Sync>,
}

impl fmt::Debug for InjectionSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("InjectionSpace { .. }")
    }
}

impl InjectionSpace {
    /// Builds the space, checking injectivity of `f` on
    /// `s < DEFAULT_INJECTIVITY_PREFIX`.
    pub fn new(f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Result<Self> {
        let space = InjectionSpace { f: Arc::new(f) };
        space.verify_injective(DEFAULT_INJECTIVITY_PREFIX)?;
        Ok(space)
    }

    pub fn verify_injective(&self, prefix: u64) -> Result<()> {
        let mut seen = HashMap::new();
        for s in 0..prefix {
            let v = self.f(s);
            if let Some(t) = seen.insert(v, s) {
                return Err(Error::Input(format!("f({t}) = f({s}) = {v}: not an injection")));
            }
        }
        Ok(())
    }

    pub fn f(&self, s: u64) -> u64 {
        (self.f)(s)
    }

    /// Some `s ≤ t` with `f(s) = n`.
    pub fn preimage_upto(&self, n: u64, t: u64) -> Option<u64> {
        (0..=t).find(|&s| self.f(s) == n)
    }

    /// The basic open isolating `n`: `<1,<n,s>>` when some `s < search` has
    /// `f(s) = n`, otherwise `<0,n>` (a singleton only if `n` is truly
    /// outside the range).
    pub fn discreteness_index(&self, n: u64, search: u64) -> InjIndex {
        match (0..search).find(|&s| self.f(s) == n) {
            Some(s) => InjIndex::Graph { n, s },
            None => InjIndex::Single(n),
        }
    }

    /// A cover by finite basic opens: even positions `2s` give
    /// `<1,<f(s),s>>`, odd positions `2j+1` give `<0,j>` for `j` outside the
    /// range, or the graph index of `j`. Range membership is decided by
    /// searching `s < search`, so this is a genuine cover of the points whose
    /// preimages (if any) lie below `search`.
    pub fn canonical_cover(&self, search: u64) -> impl Fn(u64) -> InjIndex + Send + Sync + 'static {
        let space = self.clone();
        move |m| {
            let half = m / 2;
            if m % 2 == 0 {
                InjIndex::Graph { n: space.f(half), s: half }
            } else {
                space.discreteness_index(half, search)
            }
        }
    }
}

impl CscSpace for InjectionSpace {
    type Index = InjIndex;

    fn points(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(0..)
    }

    fn is_point(&self, _x: u64) -> bool {
        true
    }

    fn indices(&self) -> Box<dyn Iterator<Item = InjIndex> + '_> {
        Box::new((0..).map(|k: u64| {
            let p = k / 3;
            match k % 3 {
                0 => InjIndex::Single(p),
                1 => {
                    let (n, s) = unpair(p);
                    InjIndex::Graph { n, s }
                }
                _ => InjIndex::Tail(p),
            }
        }))
    }

    fn is_index(&self, _i: &InjIndex) -> bool {
        true
    }

    fn member(&self, i: &InjIndex, x: u64) -> bool {
        match *i {
            InjIndex::Single(n) => x == n || self.preimage_upto(n, x).is_some(),
            InjIndex::Graph { n, s } => x == n && self.f(s) == n,
            InjIndex::Tail(s) => x >= s,
        }
    }

    fn refine(&self, x: u64, i: &InjIndex, j: &InjIndex) -> InjIndex {
        use InjIndex::*;
        // `<2,x>` if x has a preimage at most x, else `<0,x>`
        let own = || {
            if self.preimage_upto(x, x).is_some() {
                Tail(x)
            } else {
                Single(x)
            }
        };
        match (*i, *j) {
            (Single(m), Single(n)) => {
                if m == n {
                    Single(m)
                } else if x == m || x == n {
                    own()
                } else {
                    Tail(x)
                }
            }
            (Single(_), g @ Graph { .. }) | (g @ Graph { .. }, Single(_)) => g,
            (Single(m), Tail(_)) | (Tail(_), Single(m)) => {
                if x == m {
                    own()
                } else {
                    Tail(x)
                }
            }
            (g @ Graph { .. }, Graph { .. }) => g,
            (g @ Graph { .. }, Tail(_)) | (Tail(_), g @ Graph { .. }) => g,
            (Tail(s), Tail(t)) => Tail(s.max(t)),
        }
    }

    fn point_cover(&self, x: u64) -> InjIndex {
        InjIndex::Single(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeVerdict {
    InRange(u64),
    NotInRange,
    Unknown,
}

/// Decides `n ∈ ran(f)` from a cover of the injection space by finite basic
/// opens, scanning cover positions `m < budget`. Graph indices with
/// `f(s) ≠ n` name the empty set and are skipped.
pub fn range_decode(
    space: &InjectionSpace,
    cover: impl Fn(u64) -> InjIndex,
    n: u64,
    budget: u64,
) -> Result<RangeVerdict> {
    for m in 0..budget {
        match cover(m) {
            InjIndex::Tail(s) => {
                return Err(Error::NotFiniteBasicCover {
                    position: m,
                    index: InjIndex::Tail(s).to_string(),
                })
            }
            InjIndex::Graph { n: k, s } if k == n && space.f(s) == n => {
                return Ok(RangeVerdict::InRange(s));
            }
            InjIndex::Single(k) if k == n => return Ok(RangeVerdict::NotInRange),
            _ => {}
        }
    }
    Ok(RangeVerdict::Unknown)
}
