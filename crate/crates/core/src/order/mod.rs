//! Countable linear orders presented by oracles over the naturals.
//!
//! A presentation fixes an enumeration of the carrier, a decidable
//! membership test and a decidable strict comparison. The optional oracles
//! (`between`, `above`, `below`) let finite questions about an infinite
//! order be answered, and a presentation may carry a certified gap.

mod gallery;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use gallery::{gallery, GALLERY_NAMES};

pub type Pred = Arc<dyn Fn(u64) -> bool + Send + Sync>;
pub type Witness = Arc<dyn Fn(u64) -> Option<u64> + Send + Sync>;
pub type LessFn = Arc<dyn Fn(u64, u64) -> bool + Send + Sync>;
pub type BetweenFn = Arc<dyn Fn(u64, u64) -> Option<u64> + Send + Sync>;
pub type EnumFn = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// A carrier member extended with the two fresh endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtPoint<T = u64> {
    NegInf,
    Point(T),
    PosInf,
}

impl<T> ExtPoint<T> {
    pub fn point(&self) -> Option<&T> {
        match self {
            ExtPoint::Point(x) => Some(x),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> ExtPoint<U> {
        match self {
            ExtPoint::NegInf => ExtPoint::NegInf,
            ExtPoint::Point(x) => ExtPoint::Point(f(x)),
            ExtPoint::PosInf => ExtPoint::PosInf,
        }
    }
}

impl<T: fmt::Display> fmt::Display for ExtPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::NegInf => f.write_str("-inf"),
            ExtPoint::Point(x) => x.fmt(f),
            ExtPoint::PosInf => f.write_str("+inf"),
        }
    }
}

/// The basic open set `(lo, hi)`. Reversed or equal endpoints are legal and
/// denote the empty set.
///
/// The derived `Ord` is structural (used for deterministic set ordering),
/// not the order of the underlying presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: ExtPoint,
    pub hi: ExtPoint,
}

impl Interval {
    pub fn new(lo: ExtPoint, hi: ExtPoint) -> Self {
        Interval { lo, hi }
    }

    pub fn whole() -> Self {
        Interval::new(ExtPoint::NegInf, ExtPoint::PosInf)
    }

    pub fn below(b: u64) -> Self {
        Interval::new(ExtPoint::NegInf, ExtPoint::Point(b))
    }

    pub fn above(a: u64) -> Self {
        Interval::new(ExtPoint::Point(a), ExtPoint::PosInf)
    }

    pub fn open(a: u64, b: u64) -> Self {
        Interval::new(ExtPoint::Point(a), ExtPoint::Point(b))
    }

    fn endpoints(&self) -> impl Iterator<Item = u64> + '_ {
        [&self.lo, &self.hi].into_iter().filter_map(|p| p.point().copied())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Clone)]
enum Carrier {
    /// Members listed in `≺`-order; enumeration follows the listing.
    Finite {
        list: Arc<[u64]>,
        rank: Arc<HashMap<u64, usize>>,
    },
    Infinite {
        nth: EnumFn,
        contains: Pred,
        less: LessFn,
    },
}

/// Whether a presentation has a least (or greatest) element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    At(u64),
    Missing,
    Unknown,
}

#[derive(Clone)]
pub struct OrderPresentation {
    name: String,
    carrier: Carrier,
    between: Option<BetweenFn>,
    above: Option<Witness>,
    below: Option<Witness>,
    least: Endpoint,
    greatest: Endpoint,
    gap: Option<GapCertificate>,
}

impl fmt::Debug for OrderPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderPresentation")
            .field("name", &self.name)
            .field("len", &self.len())
            .finish_non_exhaustive()
    }
}

impl OrderPresentation {
    /// A finite order whose members are `labels`, listed in increasing order.
    pub fn finite(labels: Vec<u64>) -> Result<Self> {
        let mut rank = HashMap::with_capacity(labels.len());
        for (i, &x) in labels.iter().enumerate() {
            if rank.insert(x, i).is_some() {
                return Err(Error::Input(format!("duplicate label {x}")));
            }
        }
        let name = format!("finite({})", labels.len());
        Ok(OrderPresentation {
            name,
            least: labels.first().map_or(Endpoint::Missing, |&x| Endpoint::At(x)),
            greatest: labels.last().map_or(Endpoint::Missing, |&x| Endpoint::At(x)),
            carrier: Carrier::Finite {
                list: labels.into(),
                rank: Arc::new(rank),
            },
            between: None,
            above: None,
            below: None,
            gap: None,
        })
    }

    /// An infinite order enumerated by `nth` (injective, total).
    pub fn infinite(
        name: impl Into<String>,
        nth: impl Fn(u64) -> u64 + Send + Sync + 'static,
        contains: impl Fn(u64) -> bool + Send + Sync + 'static,
        less: impl Fn(u64, u64) -> bool + Send + Sync + 'static,
    ) -> Self {
        OrderPresentation {
            name: name.into(),
            carrier: Carrier::Infinite {
                nth: Arc::new(nth),
                contains: Arc::new(contains),
                less: Arc::new(less),
            },
            between: None,
            above: None,
            below: None,
            least: Endpoint::Unknown,
            greatest: Endpoint::Unknown,
            gap: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_between(mut self, f: impl Fn(u64, u64) -> Option<u64> + Send + Sync + 'static) -> Self {
        self.between = Some(Arc::new(f));
        self
    }

    pub fn with_above(mut self, f: impl Fn(u64) -> Option<u64> + Send + Sync + 'static) -> Self {
        self.above = Some(Arc::new(f));
        self
    }

    pub fn with_below(mut self, f: impl Fn(u64) -> Option<u64> + Send + Sync + 'static) -> Self {
        self.below = Some(Arc::new(f));
        self
    }

    /// Declares the endpoints of an infinite presentation. `None` certifies
    /// that the endpoint does not exist.
    pub fn with_endpoints(mut self, least: Option<u64>, greatest: Option<u64>) -> Self {
        self.least = least.map_or(Endpoint::Missing, Endpoint::At);
        self.greatest = greatest.map_or(Endpoint::Missing, Endpoint::At);
        self
    }

    pub fn with_gap(mut self, cert: GapCertificate) -> Self {
        self.gap = Some(cert);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.carrier, Carrier::Finite { .. })
    }

    /// Carrier size, `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        match &self.carrier {
            Carrier::Finite { list, .. } => Some(list.len()),
            Carrier::Infinite { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The `i`-th carrier member in enumeration order.
    pub fn element(&self, i: u64) -> Option<u64> {
        match &self.carrier {
            Carrier::Finite { list, .. } => usize::try_from(i).ok().and_then(|i| list.get(i).copied()),
            Carrier::Infinite { nth, .. } => Some(nth(i)),
        }
    }

    /// The first `n` carrier members (fewer if the carrier is smaller).
    pub fn elements(&self, n: u64) -> Vec<u64> {
        (0..n).map_while(|i| self.element(i)).collect()
    }

    /// Finite members in `≺`-order.
    pub fn finite_members(&self) -> Option<&[u64]> {
        match &self.carrier {
            Carrier::Finite { list, .. } => Some(list),
            Carrier::Infinite { .. } => None,
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        match &self.carrier {
            Carrier::Finite { rank, .. } => rank.contains_key(&x),
            Carrier::Infinite { contains, .. } => contains(x),
        }
    }

    /// Strict comparison of two carrier members.
    pub fn less(&self, x: u64, y: u64) -> bool {
        match &self.carrier {
            Carrier::Finite { rank, .. } => match (rank.get(&x), rank.get(&y)) {
                (Some(a), Some(b)) => a < b,
                _ => false,
            },
            Carrier::Infinite { less, .. } => less(x, y),
        }
    }

    pub fn compare(&self, x: u64, y: u64) -> Ordering {
        if x == y {
            Ordering::Equal
        } else if self.less(x, y) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// `None` when no oracle is available; `Some(None)` when the order has
    /// nothing strictly between `a` and `b`.
    pub fn between(&self, a: u64, b: u64) -> Option<Option<u64>> {
        match &self.carrier {
            Carrier::Finite { list, rank } => {
                let (ra, rb) = (*rank.get(&a)?, *rank.get(&b)?);
                Some((ra + 1 < rb).then(|| list[ra + 1]))
            }
            Carrier::Infinite { .. } => self.between.as_ref().map(|f| f(a, b)),
        }
    }

    /// Some member strictly above `a`, through the oracle.
    pub fn above(&self, a: u64) -> Option<Option<u64>> {
        match &self.carrier {
            Carrier::Finite { list, rank } => {
                let ra = *rank.get(&a)?;
                Some(list.get(ra + 1).copied())
            }
            Carrier::Infinite { .. } => self.above.as_ref().map(|f| f(a)),
        }
    }

    /// Some member strictly below `b`, through the oracle.
    pub fn below(&self, b: u64) -> Option<Option<u64>> {
        match &self.carrier {
            Carrier::Finite { list, rank } => {
                let rb = *rank.get(&b)?;
                Some(rb.checked_sub(1).map(|i| list[i]))
            }
            Carrier::Infinite { .. } => self.below.as_ref().map(|f| f(b)),
        }
    }

    pub fn least(&self) -> Endpoint {
        self.least
    }

    pub fn greatest(&self) -> Endpoint {
        self.greatest
    }

    pub fn gap_certificate(&self) -> Option<&GapCertificate> {
        self.gap.as_ref()
    }

    /// `p ≺ q` on extended points, without validating payloads.
    pub fn ext_less(&self, p: &ExtPoint, q: &ExtPoint) -> bool {
        use ExtPoint::*;
        match (p, q) {
            (NegInf, NegInf) | (PosInf, PosInf) => false,
            (NegInf, _) | (_, PosInf) => true,
            (_, NegInf) | (PosInf, _) => false,
            (Point(x), Point(y)) => self.less(*x, *y),
        }
    }

    /// Membership in `(lo, hi)`, without validating payloads.
    pub fn in_interval(&self, iv: &Interval, x: u64) -> bool {
        let p = ExtPoint::Point(x);
        self.ext_less(&iv.lo, &p) && self.ext_less(&p, &iv.hi)
    }

    pub fn ext_max(&self, p: &ExtPoint, q: &ExtPoint) -> ExtPoint {
        if self.ext_less(p, q) { q.clone() } else { p.clone() }
    }

    pub fn ext_min(&self, p: &ExtPoint, q: &ExtPoint) -> ExtPoint {
        if self.ext_less(q, p) { q.clone() } else { p.clone() }
    }

    pub(crate) fn check_member(&self, x: u64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Input(format!("{x} is not a member of {}", self.name)))
        }
    }

    pub(crate) fn check_ext(&self, p: &ExtPoint) -> Result<()> {
        match p {
            ExtPoint::Point(x) => self.check_member(*x),
            _ => Ok(()),
        }
    }

    /// Whether every endpoint of `iv` is an extended carrier member.
    pub fn is_index(&self, iv: &Interval) -> bool {
        iv.endpoints().all(|x| self.contains(x))
    }
}

pub fn ext_compare(p: &ExtPoint, q: &ExtPoint, ord: &OrderPresentation) -> Result<Ordering> {
    ord.check_ext(p)?;
    ord.check_ext(q)?;
    Ok(if p == q {
        Ordering::Equal
    } else if ord.ext_less(p, q) {
        Ordering::Less
    } else {
        Ordering::Greater
    })
}

pub fn interval_contains(iv: &Interval, x: u64, ord: &OrderPresentation) -> Result<bool> {
    ord.check_member(x)?;
    ord.check_ext(&iv.lo)?;
    ord.check_ext(&iv.hi)?;
    Ok(ord.in_interval(iv, x))
}

/// A partition of the carrier into a lower and an upper part.
#[derive(Clone)]
pub struct Cut {
    lower: Pred,
    upper: Pred,
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Cut { .. }")
    }
}

impl Cut {
    pub fn new(
        lower: impl Fn(u64) -> bool + Send + Sync + 'static,
        upper: impl Fn(u64) -> bool + Send + Sync + 'static,
    ) -> Self {
        Cut {
            lower: Arc::new(lower),
            upper: Arc::new(upper),
        }
    }

    /// The cut whose upper part is the complement of `lower`.
    pub fn from_lower(lower: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        let lower: Pred = Arc::new(lower);
        let l = lower.clone();
        Cut {
            lower,
            upper: Arc::new(move |x| !l(x)),
        }
    }

    pub fn from_sets(lower: impl IntoIterator<Item = u64>, upper: impl IntoIterator<Item = u64>) -> Self {
        let lo: std::collections::HashSet<u64> = lower.into_iter().collect();
        let up: std::collections::HashSet<u64> = upper.into_iter().collect();
        Cut::new(move |x| lo.contains(&x), move |x| up.contains(&x))
    }

    pub fn in_lower(&self, x: u64) -> bool {
        (self.lower)(x)
    }

    pub fn in_upper(&self, x: u64) -> bool {
        (self.upper)(x)
    }
}

/// Checks the partition and ordering invariants of `cut` on the first
/// `sample_size` carrier members.
pub fn check_cut(cut: &Cut, ord: &OrderPresentation, sample_size: u64) -> bool {
    let sample = ord.elements(sample_size);
    if sample.iter().any(|&x| cut.in_lower(x) == cut.in_upper(x)) {
        return false;
    }
    sample.iter().filter(|&&x| cut.in_lower(x)).all(|&x| {
        sample
            .iter()
            .filter(|&&y| cut.in_upper(y))
            .all(|&y| ord.less(x, y))
    })
}

/// A cut together with evidence that the lower part has no maximum and the
/// upper part has no minimum.
#[derive(Clone)]
pub struct GapCertificate {
    pub cut: Cut,
    no_max: Witness,
    no_min: Witness,
}

impl fmt::Debug for GapCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GapCertificate { .. }")
    }
}

impl GapCertificate {
    pub fn new(
        cut: Cut,
        no_max: impl Fn(u64) -> Option<u64> + Send + Sync + 'static,
        no_min: impl Fn(u64) -> Option<u64> + Send + Sync + 'static,
    ) -> Self {
        GapCertificate {
            cut,
            no_max: Arc::new(no_max),
            no_min: Arc::new(no_min),
        }
    }

    /// A lower member strictly above `a`, checked against the order.
    pub fn above_in_lower(&self, a: u64, ord: &OrderPresentation) -> Result<u64> {
        match (self.no_max)(a) {
            Some(b) if self.cut.in_lower(b) && ord.less(a, b) => Ok(b),
            Some(b) => Err(Error::InvalidCertificate(format!(
                "no-max witness {b} for {a} is not a larger lower member"
            ))),
            None => Err(Error::InvalidCertificate(format!("no-max witness missing for {a}"))),
        }
    }

    /// An upper member strictly below `b`, checked against the order.
    pub fn below_in_upper(&self, b: u64, ord: &OrderPresentation) -> Result<u64> {
        match (self.no_min)(b) {
            Some(a) if self.cut.in_upper(a) && ord.less(a, b) => Ok(a),
            Some(a) => Err(Error::InvalidCertificate(format!(
                "no-min witness {a} for {b} is not a smaller upper member"
            ))),
            None => Err(Error::InvalidCertificate(format!("no-min witness missing for {b}"))),
        }
    }

    /// Queries both witnesses for every member of `sample`.
    pub fn verify_on(&self, ord: &OrderPresentation, sample: &[u64]) -> Result<()> {
        for &x in sample {
            match (self.cut.in_lower(x), self.cut.in_upper(x)) {
                (true, false) => {
                    self.above_in_lower(x, ord)?;
                }
                (false, true) => {
                    self.below_in_upper(x, ord)?;
                }
                _ => {
                    return Err(Error::InvalidCertificate(format!("{x} is not on exactly one side")));
                }
            }
        }
        Ok(())
    }
}

/// Brute-force completeness of a finite order: every one of the `2^n`
/// subsets is tried as a lower part, and every genuine cut must have a
/// boundary element.
pub fn is_complete_finite(ord: &OrderPresentation) -> Result<bool> {
    let members = ord
        .finite_members()
        .ok_or_else(|| Error::Input("completeness by exhaustion needs a finite carrier".into()))?;
    let n = members.len();
    if n == 0 {
        return Err(Error::Input("empty order".into()));
    }
    if n > 24 {
        return Err(Error::Input(format!("{n} elements is too many to enumerate cuts")));
    }
    for mask in 0u32..(1 << n) {
        let lower = |i: usize| mask & (1 << i) != 0;
        let is_cut = (0..n).filter(|&i| lower(i)).all(|i| {
            (0..n)
                .filter(|&j| !lower(j))
                .all(|j| ord.less(members[i], members[j]))
        });
        if !is_cut {
            continue;
        }
        let has_max = (0..n)
            .filter(|&i| lower(i))
            .any(|i| (0..n).filter(|&j| lower(j)).all(|j| !ord.less(members[i], members[j])));
        let has_min = (0..n)
            .filter(|&j| !lower(j))
            .any(|j| (0..n).filter(|&i| !lower(i)).all(|i| !ord.less(members[i], members[j])));
        if !has_max && !has_min {
            return Ok(false);
        }
    }
    Ok(true)
}
