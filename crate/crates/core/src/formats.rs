//! Line-oriented text formats. Blank lines and `#` comments are ignored
//! everywhere.
//!
//! | object | format |
//! |---|---|
//! | order | `finite n` then the `n` labels in increasing order (any line breaks), or `gallery NAME` |
//! | cut | `lower: x y ...` and `upper: x y ...`, or `gallery-gap NAME` |
//! | cover | one interval `a b` per line (`-inf`, `+inf` allowed), or `gallery-gap NAME` |
//! | injection cover | `0 n`, `1 n s` or `2 s` per line |
//! | tree | optional `bound: g0 g1 ...` header, then one sequence per line (`-` is the empty sequence), or `builtin NAME` |
//! | honest table | `m n : a b ; a b ; ...` per line, giving the intervals of `h(m, n)` |

use std::collections::{BTreeMap, BTreeSet};
use std::fs;

use crate::csc::{HonestSequence, InjIndex};
use crate::error::{Error, Result};
use crate::kb::{builtin_tree, FinSeq, Tree};
use crate::order::{gallery, Cut, ExtPoint, Interval, OrderPresentation};
use crate::topology::{cover_from_gap, Cover};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn nat(tok: &str, line: usize) -> Result<u64> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a natural number, found {tok:?}")))
}

pub fn parse_ext(tok: &str, line: usize) -> Result<ExtPoint> {
    match tok {
        "-inf" => Ok(ExtPoint::NegInf),
        "+inf" | "inf" => Ok(ExtPoint::PosInf),
        _ => nat(tok, line).map(ExtPoint::Point),
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))
}

/// The single `keyword NAME` line of a named-object file, if that is what
/// `text` is.
fn named<'a>(text: &'a str, keyword: &str) -> Option<(usize, &'a str)> {
    let mut lines = content_lines(text);
    let (n, first) = lines.next()?;
    let name = first.strip_prefix(keyword)?.trim();
    (lines.next().is_none() && !name.is_empty()).then_some((n, name))
}

pub fn parse_order(text: &str) -> Result<OrderPresentation> {
    if let Some((_, name)) = named(text, "gallery ") {
        return gallery(name);
    }
    let mut toks = content_lines(text).flat_map(|(n, l)| l.split_whitespace().map(move |t| (n, t)));
    match (toks.next(), toks.next()) {
        (Some((_, "finite")), Some((n, count))) => {
            let count = nat(count, n)?;
            let mut last = n;
            let labels = toks
                .map(|(n, t)| {
                    last = n;
                    nat(t, n)
                })
                .collect::<Result<Vec<_>>>()?;
            if labels.is_empty() {
                return OrderPresentation::finite((0..count).collect());
            }
            if labels.len() as u64 != count {
                return Err(Error::parse(last, format!("expected {count} labels, found {}", labels.len())));
            }
            OrderPresentation::finite(labels)
        }
        (Some((n, _)), _) => Err(Error::parse(n, "expected `finite n` or `gallery NAME`")),
        (None, _) => Err(Error::parse(0, "empty order file")),
    }
}

/// `gallery:NAME` or a path to an order file.
pub fn load_order(spec: &str) -> Result<OrderPresentation> {
    match spec.strip_prefix("gallery:") {
        Some(name) => gallery(name),
        None => parse_order(&read(spec)?),
    }
}

pub fn parse_cut(text: &str) -> Result<Cut> {
    if let Some((n, name)) = named(text, "gallery-gap ") {
        return gallery_gap(name, n).map(|(_, cert)| cert.cut.clone());
    }
    let (mut lower, mut upper) = (None, None);
    for (n, l) in content_lines(text) {
        let (side, rest) = if let Some(r) = l.strip_prefix("lower:") {
            (&mut lower, r)
        } else if let Some(r) = l.strip_prefix("upper:") {
            (&mut upper, r)
        } else {
            return Err(Error::parse(n, "expected `lower:` or `upper:`"));
        };
        if side.is_some() {
            return Err(Error::parse(n, "side given twice"));
        }
        *side = Some(rest.split_whitespace().map(|t| nat(t, n)).collect::<Result<Vec<_>>>()?);
    }
    match (lower, upper) {
        (Some(lo), Some(up)) => Ok(Cut::from_sets(lo, up)),
        _ => Err(Error::parse(0, "a cut needs both `lower:` and `upper:` lines")),
    }
}

fn gallery_gap(name: &str, line: usize) -> Result<(OrderPresentation, crate::order::GapCertificate)> {
    let ord = gallery(name)?;
    let cert = ord
        .gap_certificate()
        .cloned()
        .ok_or_else(|| Error::parse(line, format!("{name} has no certified gap")))?;
    Ok((ord, cert))
}

pub fn parse_intervals(text: &str) -> Result<Vec<Interval>> {
    content_lines(text)
        .map(|(n, l)| match l.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b] => Ok(Interval::new(parse_ext(a, n)?, parse_ext(b, n)?)),
            _ => Err(Error::parse(n, "expected an interval `a b`")),
        })
        .collect()
}

/// An interval list, or the infinite cover of a gallery order's gap.
pub fn parse_cover(text: &str) -> Result<Cover> {
    if let Some((n, name)) = named(text, "gallery-gap ") {
        let (ord, cert) = gallery_gap(name, n)?;
        return Ok(cover_from_gap(&ord, &cert));
    }
    parse_intervals(text).map(Cover::from_list)
}

/// `gallery-gap:NAME` or a path to a cover file.
pub fn load_cover(spec: &str) -> Result<Cover> {
    match spec.strip_prefix("gallery-gap:") {
        Some(name) => parse_cover(&format!("gallery-gap {name}")),
        None => parse_cover(&read(spec)?),
    }
}

pub fn format_intervals(ivs: &[Interval]) -> String {
    ivs.iter().map(|iv| format!("{} {}\n", iv.lo, iv.hi)).collect()
}

pub fn parse_injection_stream(text: &str) -> Result<Vec<InjIndex>> {
    content_lines(text)
        .map(|(n, l)| {
            let toks = l
                .split_whitespace()
                .map(|t| nat(t, n))
                .collect::<Result<Vec<_>>>()?;
            match toks[..] {
                [0, k] => Ok(InjIndex::Single(k)),
                [1, k, s] => Ok(InjIndex::Graph { n: k, s }),
                [2, s] => Ok(InjIndex::Tail(s)),
                _ => Err(Error::parse(n, "expected `0 n`, `1 n s` or `2 s`")),
            }
        })
        .collect()
}

pub fn parse_tree(text: &str) -> Result<Tree> {
    if let Some((_, name)) = named(text, "builtin ") {
        return builtin_tree(name);
    }
    let mut bound = None;
    let mut nodes = Vec::new();
    for (n, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("bound:") {
            if bound.is_some() || !nodes.is_empty() {
                return Err(Error::parse(n, "`bound:` must be the first line"));
            }
            let g = rest.split_whitespace().map(|t| nat(t, n)).collect::<Result<Vec<_>>>()?;
            if g.is_empty() {
                return Err(Error::parse(n, "empty bound"));
            }
            bound = Some(g);
            continue;
        }
        nodes.push(l.parse::<FinSeq>().map_err(|e| Error::parse(n, e.to_string()))?);
    }
    Ok(Tree::finite(nodes, bound))
}

/// `builtin:NAME` or a path to a tree file.
pub fn load_tree(spec: &str) -> Result<Tree> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin_tree(name),
        None => parse_tree(&read(spec)?),
    }
}

pub fn parse_honest_table(text: &str) -> Result<HonestSequence<Interval>> {
    let mut cells: BTreeMap<(u64, u64), BTreeSet<Interval>> = BTreeMap::new();
    for (n, l) in content_lines(text) {
        let (head, body) = l
            .split_once(':')
            .ok_or_else(|| Error::parse(n, "expected `m n : intervals`"))?;
        let (m, s) = match head.split_whitespace().collect::<Vec<_>>()[..] {
            [m, s] => (nat(m, n)?, nat(s, n)?),
            _ => return Err(Error::parse(n, "expected `m n` before `:`")),
        };
        let cell = cells.entry((m, s)).or_default();
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_whitespace().collect::<Vec<_>>()[..] {
                [a, b] => {
                    cell.insert(Interval::new(parse_ext(a, n)?, parse_ext(b, n)?));
                }
                _ => return Err(Error::parse(n, format!("bad interval {part:?}"))),
            }
        }
    }
    Ok(HonestSequence::new(move |m, n| cells.get(&(m, n)).cloned().unwrap_or_default()))
}
