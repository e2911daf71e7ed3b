//! Fixed codings of tuples and finite sequences as naturals.
//!
//! Pairs use the Cantor bijection
//!
//! ```text
//! <a, b> = (a + b)(a + b + 1) / 2 + b
//! ```
//!
//! so `<0,0> = 0`, `<1,0> = 1`, `<0,1> = 2`, `<2,0> = 3`, ... Triples nest to
//! the right: `<m, n, s> = <m, <n, s>>`.
//!
//! Finite sequences use the bit-position code: `<x0, ..., x(k-1)>` is the
//! natural whose set bits sit at positions `p0 < p1 < ... < p(k-1)` with
//! `p0 = x0` and `p(i+1) = p(i) + x(i+1) + 1`. The empty sequence is `0`,
//! `<0> = 1`, `<1> = 2`, `<0,0> = 3`, `<2> = 4`. Every natural decodes to
//! exactly one sequence, and the code of a sequence is at least as large as
//! the code of each of its prefixes and each of its entries.

/// Cantor pairing. `None` on overflow.
pub fn pair(a: u64, b: u64) -> Option<u64> {
    let s = (a as u128) + (b as u128);
    let v = s.checked_mul(s + 1)? / 2 + b as u128;
    u64::try_from(v).ok()
}

pub fn unpair(z: u64) -> (u64, u64) {
    let z = z as u128;
    let w = ((8 * z + 1).isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = z - t;
    let a = w - b;
    (a as u64, b as u64)
}

pub fn triple(m: u64, n: u64, s: u64) -> Option<u64> {
    pair(m, pair(n, s)?)
}

pub fn untriple(p: u64) -> (u64, u64, u64) {
    let (m, rest) = unpair(p);
    let (n, s) = unpair(rest);
    (m, n, s)
}

/// Bit-position code of a finite sequence. `None` when the code needs more
/// than 64 bits.
pub fn seq_code(seq: &[u64]) -> Option<u64> {
    let mut code: u64 = 0;
    let mut pos: u64 = 0;
    for (i, &x) in seq.iter().enumerate() {
        pos = if i == 0 { x } else { pos.checked_add(x)?.checked_add(1)? };
        if pos >= 64 {
            return None;
        }
        code |= 1 << pos;
    }
    Some(code)
}

pub fn seq_decode(mut code: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(code.count_ones() as usize);
    let mut prev: Option<u64> = None;
    while code != 0 {
        let pos = code.trailing_zeros() as u64;
        out.push(match prev {
            None => pos,
            Some(p) => pos - p - 1,
        });
        prev = Some(pos);
        code &= code - 1;
    }
    out
}
