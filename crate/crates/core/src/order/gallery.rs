//! Canonical test orders.

use super::{Cut, GapCertificate, OrderPresentation};
use crate::error::{Error, Result};

pub const GALLERY_NAMES: &[&str] = &[
    "finite(n)",
    "omega_plus_one",
    "omega_plus_omega_star",
    "dense_unbounded",
];

pub fn gallery(name: &str) -> Result<OrderPresentation> {
    let name = name.trim();
    if let Some(n) = name
        .strip_prefix("finite(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| Error::UnknownGallery(name.to_string()))?;
        return OrderPresentation::finite((0..n).collect());
    }
    match name {
        "omega_plus_one" => Ok(omega_plus_one()),
        "omega_plus_omega_star" => Ok(omega_plus_omega_star()),
        "dense_unbounded" => Ok(dense_unbounded()),
        _ => Err(Error::UnknownGallery(name.to_string())),
    }
}

/// `0 ≺ 2 ≺ 3 ≺ 4 ≺ ⋯ ≺ 1`: code `1` is the top point `ω`, code `n ≥ 2`
/// stands for `n - 1`.
fn omega_plus_one() -> OrderPresentation {
    fn rank(x: u64) -> u64 {
        match x {
            0 => 0,
            1 => u64::MAX,
            n => n - 1,
        }
    }
    fn succ(a: u64) -> u64 {
        if a == 0 { 2 } else { a + 1 }
    }
    OrderPresentation::infinite("omega_plus_one", |i| i, |_| true, |x, y| rank(x) < rank(y))
        .with_between(|a, b| {
            if rank(a) >= rank(b) || a == 1 {
                None
            } else if b == 1 || rank(a) + 1 < rank(b) {
                Some(succ(a))
            } else {
                None
            }
        })
        .with_above(|a| (a != 1).then(|| succ(a)))
        .with_below(|b| match b {
            0 => None,
            1 | 2 => Some(0),
            n => Some(n - 1),
        })
        .with_endpoints(Some(0), Some(1))
}

/// Evens ascending then odds descending: `0 ≺ 2 ≺ 4 ≺ ⋯ ≺ 5 ≺ 3 ≺ 1`, with
/// the gap between the two halves.
fn omega_plus_omega_star() -> OrderPresentation {
    fn less(x: u64, y: u64) -> bool {
        match (x % 2, y % 2) {
            (0, 0) => x < y,
            (1, 1) => x > y,
            (0, 1) => true,
            _ => false,
        }
    }
    let cert = GapCertificate::new(
        Cut::new(|x| x % 2 == 0, |x| x % 2 == 1),
        |a| (a % 2 == 0).then(|| a + 2),
        |b| (b % 2 == 1).then(|| b + 2),
    );
    OrderPresentation::infinite("omega_plus_omega_star", |i| i, |_| true, less)
        .with_between(|a, b| {
            if !less(a, b) {
                return None;
            }
            match (a % 2, b % 2) {
                (0, 0) => (b - a > 2).then(|| a + 2),
                (1, 1) => (a - b > 2).then(|| a - 2),
                _ => Some(a + 2),
            }
        })
        .with_above(|a| match a % 2 {
            0 => Some(a + 2),
            _ => (a > 1).then(|| a - 2),
        })
        .with_below(|b| match b % 2 {
            0 => b.checked_sub(2),
            _ => Some(b + 2),
        })
        .with_endpoints(Some(0), Some(1))
        .with_gap(cert)
}

// Dense order: code `x` is the node `x + 1` of the infinite binary tree in
// heap numbering, ordered in-order. Node `n` with bit length `L` sits at the
// dyadic `(2(n - 2^(L-1)) + 1) / 2^L` in `(0, 1)`. Values are handled scaled
// by `2^64`.

const ONE: u128 = 1 << 64;

fn scaled(x: u64) -> u128 {
    let n = x as u128 + 1;
    let len = 128 - n.leading_zeros();
    let num = 2 * (n - (1u128 << (len - 1))) + 1;
    num << (64 - len)
}

#[derive(Clone, Copy)]
enum Bound {
    Dyadic(u128),
    Third,
}

/// The shallowest tree node strictly between `lo` and `hi`.
fn shallowest(lo: Bound, hi: Bound) -> Option<u64> {
    for len in 1..=64u32 {
        let unit: u128 = 1 << (64 - len);
        let k = match lo {
            Bound::Dyadic(v) => v / unit + 1,
            Bound::Third => ONE / (3 * unit) + 1,
        };
        let cand = k * unit;
        let fits = match hi {
            Bound::Dyadic(v) => cand < v,
            Bound::Third => 3 * cand < ONE,
        };
        if fits {
            let n = (1u128 << (len - 1)) + (k - 1) / 2;
            return u64::try_from(n - 1).ok();
        }
    }
    None
}

fn dense_unbounded() -> OrderPresentation {
    let below_third = |x: u64| 3 * scaled(x) < ONE;
    let cert = GapCertificate::new(
        Cut::new(below_third, move |x| !below_third(x)),
        move |a| below_third(a).then(|| shallowest(Bound::Dyadic(scaled(a)), Bound::Third)).flatten(),
        move |b| (!below_third(b)).then(|| shallowest(Bound::Third, Bound::Dyadic(scaled(b)))).flatten(),
    );
    OrderPresentation::infinite("dense_unbounded", |i| i, |_| true, |x, y| scaled(x) < scaled(y))
        .with_between(|a, b| {
            let (va, vb) = (scaled(a), scaled(b));
            (va < vb).then(|| shallowest(Bound::Dyadic(va), Bound::Dyadic(vb))).flatten()
        })
        .with_above(|a| shallowest(Bound::Dyadic(scaled(a)), Bound::Dyadic(ONE)))
        .with_below(|b| shallowest(Bound::Dyadic(0), Bound::Dyadic(scaled(b))))
        .with_endpoints(None, None)
        .with_gap(cert)
}
