use super::{kb_compare, FinSeq, Tree};
use crate::coding::{seq_code, seq_decode};
use crate::error::{Error, Result};
use crate::order::{ExtPoint, Interval, OrderPresentation};

pub fn kb_sort(nodes: &mut [FinSeq]) {
    nodes.sort_by(|a, b| kb_compare(&a.0, &b.0));
}

/// The `<_KB`-least element of `T_η`, found by following leftmost children
/// from `η` for at most `cap` steps.
pub fn leftmost_leaf(t: &Tree, eta: &FinSeq, cap: usize) -> Result<FinSeq> {
    t.require(eta)?;
    let mut s = eta.clone();
    for _ in 0..cap {
        match t.children(&s).into_iter().next() {
            Some(c) => s = c,
            None => return Ok(s),
        }
    }
    if t.is_leaf(&s) {
        return Ok(s);
    }
    Err(Error::CapExceeded {
        from: eta.to_string(),
        cap,
    })
}

/// Immediate `<_KB`-predecessor: the rightmost child of an inner node; for
/// a leaf, `(σ↾i)⌢m` with `i` greatest and then `m < σ(i)` greatest such
/// that it lies in the tree; `-∞` when `σ` is least.
pub fn kb_predecessor(t: &Tree, s: &FinSeq) -> Result<ExtPoint<FinSeq>> {
    t.require(s)?;
    if let Some(c) = t.children(s).pop() {
        return Ok(ExtPoint::Point(c));
    }
    for i in (0..s.len()).rev() {
        let base = s.restrict(i);
        if let Some(m) = (0..s.0[i]).rev().find(|&m| t.contains(&base.child(m).0)) {
            return Ok(ExtPoint::Point(base.child(m)));
        }
    }
    Ok(ExtPoint::NegInf)
}

/// Immediate `<_KB`-successor: `+∞` for the root; the parent when no
/// `σ!m` with `m > σ(|σ|-1)` lies in the tree; otherwise the leftmost leaf
/// under `σ!m` for the least such `m`.
pub fn kb_successor(t: &Tree, s: &FinSeq, cap: usize) -> Result<ExtPoint<FinSeq>> {
    t.require(s)?;
    let (Some(parent), Some(&last)) = (s.parent(), s.0.last()) else {
        return Ok(ExtPoint::PosInf);
    };
    let sibling = (last + 1..t.branching(&parent.0))
        .filter_map(|m| s.with_last(m))
        .find(|c| t.contains(&c.0));
    match sibling {
        None => Ok(ExtPoint::Point(parent)),
        Some(c) => leftmost_leaf(t, &c, cap).map(ExtPoint::Point),
    }
}

/// `d(σ) = (ℓ(σ), r(σ))`, whose open interval in `(T, <_KB)` is `{σ}`.
#[derive(Clone, Debug)]
pub struct DiscreteWitness {
    tree: Tree,
    cap: usize,
}

pub fn kb_discrete_witness(t: &Tree, cap: usize) -> DiscreteWitness {
    DiscreteWitness { tree: t.clone(), cap }
}

impl DiscreteWitness {
    pub fn at(&self, s: &FinSeq) -> Result<(ExtPoint<FinSeq>, ExtPoint<FinSeq>)> {
        Ok((kb_predecessor(&self.tree, s)?, kb_successor(&self.tree, s, self.cap)?))
    }

    /// The witness as an index of the ordered space of `kb_view`.
    pub fn interval(&self, s: &FinSeq) -> Result<Interval> {
        let (l, r) = self.at(s)?;
        Ok(Interval::new(code_ext(l)?, code_ext(r)?))
    }
}

fn code_of(s: &FinSeq) -> Result<u64> {
    seq_code(&s.0).ok_or_else(|| Error::Input(format!("{s} has no 64-bit code")))
}

fn code_ext(p: ExtPoint<FinSeq>) -> Result<ExtPoint> {
    Ok(match p {
        ExtPoint::NegInf => ExtPoint::NegInf,
        ExtPoint::PosInf => ExtPoint::PosInf,
        ExtPoint::Point(s) => ExtPoint::Point(code_of(&s)?),
    })
}

/// `(T, <_KB)` as an order on sequence codes. Oracle trees are enumerated
/// breadth-first and are assumed infinite.
pub fn kb_view(t: &Tree) -> Result<OrderPresentation> {
    let name = format!("kb({})", t.name());
    if let Some(nodes) = t.nodes() {
        let codes = nodes.iter().map(code_of).collect::<Result<Vec<_>>>()?;
        return Ok(OrderPresentation::finite(codes)?.with_name(name));
    }
    let (enum_tree, member_tree) = (t.clone(), t.clone());
    Ok(OrderPresentation::infinite(
        name,
        move |i| {
            let i = i as usize;
            let nodes = enum_tree.members_upto(usize::MAX, i + 1);
            nodes.get(i).and_then(|s| seq_code(&s.0)).unwrap_or(0)
        },
        move |c| member_tree.contains(&seq_decode(c)),
        |x, y| kb_compare(&seq_decode(x), &seq_decode(y)).is_lt(),
    ))
}
