//! Order topologies as countable second-countable spaces.

mod linkage;

use std::fmt;
use std::sync::Arc;

use crate::csc::CscSpace;
use crate::error::{Error, Result};
use crate::order::{ExtPoint, GapCertificate, Interval, OrderPresentation};

pub use linkage::{
    find_finite_subcover, gap_finder, is_linkage, linkage_member, linkage_reachable, linkage_tree_member,
    reachable_within, DichotomyResult, Linkage, LinkageTreeParams, Reach, StagedCut,
};

/// The ordered space of a linear order: `I = (L ∪ {±∞})²`, `U<a,b> = (a, b)`
/// and `k(x, <a0,b0>, <a1,b1>) = <max(a0,a1), min(b0,b1)>`.
#[derive(Clone, Debug)]
pub struct OrderedSpace {
    ord: OrderPresentation,
}

pub fn ordered_space(ord: OrderPresentation) -> Result<OrderedSpace> {
    if ord.is_empty() {
        return Err(Error::Input("the ordered space of an empty order".into()));
    }
    Ok(OrderedSpace { ord })
}

impl OrderedSpace {
    pub fn order(&self) -> &OrderPresentation {
        &self.ord
    }

    /// Extended point with code `c`: `0` is `-∞`, `1` is `+∞` and `c ≥ 2` is
    /// the `(c-2)`-th carrier member.
    fn ext_of_code(&self, c: u64) -> Option<ExtPoint> {
        match c {
            0 => Some(ExtPoint::NegInf),
            1 => Some(ExtPoint::PosInf),
            c => self.ord.element(c - 2).map(ExtPoint::Point),
        }
    }

    /// The finite cover relation.
    pub fn covers(&self, family: &[Interval]) -> Result<bool> {
        Ok(finite_cover_check(self, family)?.is_covered())
    }
}

impl CscSpace for OrderedSpace {
    type Index = Interval;

    fn points(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new((0..).map_while(|i| self.ord.element(i)))
    }

    fn is_point(&self, x: u64) -> bool {
        self.ord.contains(x)
    }

    /// Pairs of extended-point codes in Cantor order.
    fn indices(&self) -> Box<dyn Iterator<Item = Interval> + '_> {
        let codes = self.ord.len().map(|n| n as u64 + 2);
        let last_diagonal = codes.map(|c| 2 * (c - 1));
        Box::new(
            (0u64..)
                .take_while(move |&d| last_diagonal.is_none_or(|l| d <= l))
                .flat_map(move |d| (0..=d).map(move |b| (d - b, b)))
                .filter(move |&(a, b)| codes.is_none_or(|c| a < c && b < c))
                .filter_map(move |(a, b)| Some(Interval::new(self.ext_of_code(a)?, self.ext_of_code(b)?))),
        )
    }

    fn is_index(&self, i: &Interval) -> bool {
        self.ord.is_index(i)
    }

    fn member(&self, i: &Interval, x: u64) -> bool {
        self.ord.contains(x) && self.ord.in_interval(i, x)
    }

    fn refine(&self, _x: u64, i: &Interval, j: &Interval) -> Interval {
        Interval::new(self.ord.ext_max(&i.lo, &j.lo), self.ord.ext_min(&i.hi, &j.hi))
    }

    fn point_cover(&self, _x: u64) -> Interval {
        Interval::whole()
    }
}

/// An indexed stream of intervals, finite or infinite. Entries may fail to
/// be produced (for instance when a certificate turns out to be invalid).
#[derive(Clone)]
pub struct Cover {
    len: Option<u64>,
    at: Arc<dyn Fn(u64) -> Result<Interval> + Send + Sync>,
}

impl fmt::Debug for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cover").field("len", &self.len).finish_non_exhaustive()
    }
}

impl Cover {
    pub fn from_list(list: Vec<Interval>) -> Self {
        let len = list.len() as u64;
        let list: Arc<[Interval]> = list.into();
        Cover {
            len: Some(len),
            at: Arc::new(move |m| Ok(list[m as usize].clone())),
        }
    }

    pub fn from_fn(f: impl Fn(u64) -> Interval + Send + Sync + 'static) -> Self {
        Cover {
            len: None,
            at: Arc::new(move |m| Ok(f(m))),
        }
    }

    pub fn from_fallible(len: Option<u64>, f: impl Fn(u64) -> Result<Interval> + Send + Sync + 'static) -> Self {
        Cover { len, at: Arc::new(f) }
    }

    pub fn len(&self) -> Option<u64> {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == Some(0)
    }

    pub fn get(&self, m: u64) -> Result<Option<Interval>> {
        if self.len.is_some_and(|l| m >= l) {
            return Ok(None);
        }
        (self.at)(m).map(Some)
    }

    /// Entries at positions `< k`.
    pub fn prefix(&self, k: u64) -> Result<Vec<Interval>> {
        let mut out = Vec::new();
        for m in 0..k {
            match self.get(m)? {
                Some(iv) => out.push(iv),
                None => break,
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverCheck {
    Covered,
    Uncovered(u64),
}

impl CoverCheck {
    pub fn is_covered(self) -> bool {
        self == CoverCheck::Covered
    }
}

/// Decides whether a finite family of intervals covers the order.
///
/// Finite orders are checked point by point. For infinite orders the sorted
/// endpoints split the line into finitely many regions (the points
/// themselves, the open gaps between consecutive endpoints and the two
/// outer rays); each interval covers a region entirely or not at all, and
/// an uncovered region is non-empty exactly when the `between`/`above`/
/// `below` oracle produces a witness in it.
pub fn finite_cover_check(space: &OrderedSpace, family: &[Interval]) -> Result<CoverCheck> {
    let ord = &space.ord;
    for iv in family {
        ord.check_ext(&iv.lo)?;
        ord.check_ext(&iv.hi)?;
    }
    if let Some(members) = ord.finite_members() {
        return Ok(members
            .iter()
            .find(|&&x| !family.iter().any(|iv| ord.in_interval(iv, x)))
            .map_or(CoverCheck::Covered, |&x| CoverCheck::Uncovered(x)));
    }

    let mut points: Vec<u64> = family
        .iter()
        .flat_map(|iv| [&iv.lo, &iv.hi])
        .filter_map(|p| p.point().copied())
        .collect();
    points.sort_by(|&x, &y| ord.compare(x, y));
    points.dedup();

    let le = |p: &ExtPoint, q: &ExtPoint| !ord.ext_less(q, p);
    let undecidable = |what: &str| Error::Undecidable(format!("{} has no {what} oracle", ord.name()));

    let (Some(&first), Some(&last)) = (points.first(), points.last()) else {
        if family.iter().any(|iv| iv.lo == ExtPoint::NegInf && iv.hi == ExtPoint::PosInf) {
            return Ok(CoverCheck::Covered);
        }
        let x = ord.element(0).ok_or_else(|| Error::Input("empty order".into()))?;
        return Ok(CoverCheck::Uncovered(x));
    };

    // ray below the first endpoint
    let first_p = ExtPoint::Point(first);
    if !family.iter().any(|iv| iv.lo == ExtPoint::NegInf && le(&first_p, &iv.hi)) {
        if let Some(x) = ord.below(first).ok_or_else(|| undecidable("below"))? {
            return Ok(CoverCheck::Uncovered(x));
        }
    }
    for (i, &p) in points.iter().enumerate() {
        if !family.iter().any(|iv| ord.in_interval(iv, p)) {
            return Ok(CoverCheck::Uncovered(p));
        }
        if let Some(&q) = points.get(i + 1) {
            let (pp, qq) = (ExtPoint::Point(p), ExtPoint::Point(q));
            if !family.iter().any(|iv| le(&iv.lo, &pp) && le(&qq, &iv.hi)) {
                if let Some(x) = ord.between(p, q).ok_or_else(|| undecidable("between"))? {
                    return Ok(CoverCheck::Uncovered(x));
                }
            }
        }
    }
    let last_p = ExtPoint::Point(last);
    if !family.iter().any(|iv| iv.hi == ExtPoint::PosInf && le(&iv.lo, &last_p)) {
        if let Some(x) = ord.above(last).ok_or_else(|| undecidable("above"))? {
            return Ok(CoverCheck::Uncovered(x));
        }
    }
    Ok(CoverCheck::Covered)
}

/// The cover `(−∞, x)` for lower `x`, `(x, +∞)` for upper `x`, with `x`
/// running through the carrier in enumeration order. Position `m` checks
/// the certificate's witness for the `m`-th member, which is what makes the
/// stream a cover.
pub fn cover_from_gap(ord: &OrderPresentation, cert: &GapCertificate) -> Cover {
    let ord = ord.clone();
    let cert = cert.clone();
    Cover::from_fallible(ord.len().map(|n| n as u64), move |m| {
        let x = ord
            .element(m)
            .ok_or_else(|| Error::Input(format!("no carrier member at position {m}")))?;
        match (cert.cut.in_lower(x), cert.cut.in_upper(x)) {
            (true, false) => {
                cert.above_in_lower(x, &ord)?;
                Ok(Interval::below(x))
            }
            (false, true) => {
                cert.below_in_upper(x, &ord)?;
                Ok(Interval::above(x))
            }
            _ => Err(Error::InvalidCertificate(format!("{x} is not on exactly one side"))),
        }
    })
}
