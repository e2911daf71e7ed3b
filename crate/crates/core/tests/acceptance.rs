//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; any failure makes the
//! process exit non-zero.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ordcompact::coding::triple;
use ordcompact::csc::{
    check_base_axioms, honest_flatten, range_decode, subcover_stage_bound, CscSpace, HonestSequence, InjIndex,
    InjectionSpace, RangeVerdict,
};
use ordcompact::kb::{
    builtin_tree, builtin_upper, extract_path, kb_compare, kb_discrete_witness, kb_predecessor, kb_successor,
    FinSeq, Tree, UpperSetOracle,
};
use ordcompact::order::{gallery, ExtPoint, Interval, OrderPresentation};
use ordcompact::topology::{
    cover_from_gap, finite_cover_check, find_finite_subcover, gap_finder, is_linkage, linkage_member,
    ordered_space, Cover, CoverCheck, DichotomyResult,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZERO_VIOLATIONS: usize = 0;
const AC1_TIME_LIMIT: Duration = Duration::from_secs(60);
const AC3_TIME_LIMIT: Duration = Duration::from_secs(30);
const MAX_ORDER_SIZE: u64 = 5;
const MAX_FAMILY_SIZE: usize = 4;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AC1 subcover oracle equivalence", ac1_subcover_oracle),
        ("AC2 linkage unions are intervals", ac2_linkage_convexity),
        ("AC3 KB neighbour oracle", ac3_kb_neighbours),
        ("AC4 gap pipeline on omega+omega*", ac4_gap_pipeline),
        ("AC5 path extraction", ac5_path_extraction),
        ("AC6 injection space suite", ac6_injection_space),
        ("AC7 flattening and absorption", ac7_flattening),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn verdict(violations: usize, detail: String) -> Outcome {
    if violations == ZERO_VIOLATIONS {
        Ok(detail)
    } else {
        Err(format!("{violations} violations; {detail}"))
    }
}

// Orders 0 < 1 < ... < n-1, plus one relabelled copy of each size so that
// labels and order positions differ.
fn finite_orders() -> Vec<OrderPresentation> {
    let mut out = Vec::new();
    for n in 1..=MAX_ORDER_SIZE {
        out.push(OrderPresentation::finite((0..n).collect()).unwrap());
        out.push(OrderPresentation::finite((0..n).rev().collect()).unwrap());
    }
    out
}

/// Every interval with endpoints in `L ∪ {±∞}`.
fn all_intervals(members: &[u64]) -> Vec<Interval> {
    let mut ends = vec![ExtPoint::NegInf, ExtPoint::PosInf];
    ends.extend(members.iter().map(|&x| ExtPoint::Point(x)));
    let mut out = Vec::new();
    for lo in &ends {
        for hi in &ends {
            out.push(Interval::new(lo.clone(), hi.clone()));
        }
    }
    out
}

/// Position of `x` in the listing; the oracle never consults the library's
/// comparison.
fn pos(members: &[u64], x: u64) -> usize {
    members.iter().position(|&y| y == x).unwrap()
}

fn ext_pos(members: &[u64], p: &ExtPoint) -> i64 {
    match p {
        ExtPoint::NegInf => -1,
        ExtPoint::PosInf => members.len() as i64,
        ExtPoint::Point(x) => pos(members, *x) as i64,
    }
}

fn oracle_contains(members: &[u64], iv: &Interval, x: u64) -> bool {
    let p = pos(members, x) as i64;
    ext_pos(members, &iv.lo) < p && p < ext_pos(members, &iv.hi)
}

fn oracle_covers(members: &[u64], fam: &[&Interval]) -> bool {
    members.iter().all(|&x| fam.iter().any(|iv| oracle_contains(members, iv, x)))
}

/// Multisets of size `≤ k` from `0..n`, as non-decreasing index vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for v in &frontier {
            let start = v.last().copied().unwrap_or(0);
            for i in start..n {
                let mut w: Vec<usize> = v.clone();
                w.push(i);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn ac1_subcover_oracle() -> Outcome {
    let start = Instant::now();
    let mut families = 0usize;
    let mut violations = 0usize;
    let mut found = 0usize;
    for ord in finite_orders() {
        let members = ord.finite_members().unwrap().to_vec();
        let space = ordered_space(ord.clone()).unwrap();
        let alphabet = all_intervals(&members);
        for pick in multisets(alphabet.len(), MAX_FAMILY_SIZE) {
            for reversed in [false, true] {
                let mut fam: Vec<Interval> = pick.iter().map(|&i| alphabet[i].clone()).collect();
                if reversed {
                    fam.reverse();
                }
                families += 1;
                let k = fam.len();
                let brute = (0u32..1 << k).any(|mask| {
                    let sub: Vec<&Interval> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &fam[i]).collect();
                    oracle_covers(&members, &sub)
                });
                let cover = Cover::from_list(fam.clone());
                match find_finite_subcover(&space, &cover, k as u64) {
                    Ok(Some(ix)) => {
                        found += 1;
                        let sub: Vec<&Interval> = ix.iter().map(|&i| &fam[i as usize]).collect();
                        let in_range = ix.iter().all(|&i| (i as usize) < k);
                        if !brute || !in_range || !oracle_covers(&members, &sub) {
                            violations += 1;
                        }
                    }
                    Ok(None) => violations += usize::from(brute),
                    Err(_) => violations += 1,
                }
                // the finite cover relation agrees with the oracle as well
                let check = finite_cover_check(&space, &fam);
                let all: Vec<&Interval> = fam.iter().collect();
                match check {
                    Ok(CoverCheck::Covered) => violations += usize::from(!oracle_covers(&members, &all)),
                    Ok(CoverCheck::Uncovered(x)) => {
                        violations += usize::from(all.iter().any(|iv| oracle_contains(&members, iv, x)))
                    }
                    Err(_) => violations += 1,
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{families} families, {found} subcovers, {:.1}s (limit {}s)",
        elapsed.as_secs_f64(),
        AC1_TIME_LIMIT.as_secs()
    );
    if elapsed > AC1_TIME_LIMIT {
        return Err(format!("too slow; {detail}"));
    }
    verdict(violations, detail)
}

fn ac2_linkage_convexity() -> Outcome {
    let mut linkages = 0usize;
    let mut violations = 0usize;
    for ord in finite_orders() {
        let members = ord.finite_members().unwrap().to_vec();
        let alphabet = all_intervals(&members);
        // depth-first over chains; prefixes of linkages are linkages
        let mut stack: Vec<Vec<Interval>> = alphabet.iter().map(|iv| vec![iv.clone()]).collect();
        while let Some(chain) = stack.pop() {
            if !is_linkage(&chain, &ord) {
                continue;
            }
            linkages += 1;
            let inside: Vec<bool> = members.iter().map(|&x| linkage_member(&chain, x, &ord)).collect();
            let first = inside.iter().position(|&b| b);
            let last = inside.iter().rposition(|&b| b);
            if let (Some(f), Some(l)) = (first, last) {
                violations += inside[f..=l].iter().filter(|&&b| !b).count();
            }
            if chain.len() < MAX_FAMILY_SIZE {
                for iv in &alphabet {
                    let mut next = chain.clone();
                    next.push(iv.clone());
                    stack.push(next);
                }
            }
        }
    }
    verdict(violations, format!("{linkages} linkages checked"))
}

/// `σ ≤_KB τ` straight from the definition.
fn kb_le(s: &[u64], t: &[u64]) -> bool {
    s.starts_with(t) || (0..s.len().min(t.len())).any(|n| s[n] < t[n] && s[..n] == t[..n])
}

fn kb_oracle_cmp(s: &[u64], t: &[u64]) -> Ordering {
    match (kb_le(s, t), kb_le(t, s)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

fn random_tree(rng: &mut ChaCha8Rng) -> BTreeSet<Vec<u64>> {
    let target = rng.gen_range(1..=40);
    let mut nodes = BTreeSet::from([vec![]]);
    let mut attempts = 0;
    while nodes.len() < target && attempts < 10_000 {
        attempts += 1;
        let list: Vec<&Vec<u64>> = nodes.iter().filter(|s| s.len() < 5).collect();
        let mut child = list[rng.gen_range(0..list.len())].clone();
        child.push(rng.gen_range(0..4));
        nodes.insert(child);
    }
    nodes
}

/// Every prefix-closed set of binary sequences with at most `max` nodes.
fn small_binary_trees(max: usize) -> Vec<BTreeSet<Vec<u64>>> {
    let mut seen = BTreeSet::new();
    let mut frontier = vec![BTreeSet::from([vec![]])];
    seen.insert(frontier[0].clone());
    while let Some(t) = frontier.pop() {
        if t.len() == max {
            continue;
        }
        for s in t.iter() {
            for m in 0..2 {
                let mut c = s.clone();
                c.push(m);
                if !t.contains(&c) {
                    let mut u = t.clone();
                    u.insert(c);
                    if seen.insert(u.clone()) {
                        frontier.push(u);
                    }
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn ac3_kb_neighbours() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut corpus: Vec<BTreeSet<Vec<u64>>> = (0..200).map(|_| random_tree(&mut rng)).collect();
    let small = small_binary_trees(7);
    let small_count = small.len();
    corpus.extend(small);
    let mut violations = 0usize;
    let mut nodes_checked = 0usize;
    for set in &corpus {
        let tree = Tree::finite(set.iter().cloned().map(FinSeq), Some(vec![4]));
        let mut sorted: Vec<Vec<u64>> = set.iter().cloned().collect();
        sorted.sort_by(|a, b| kb_oracle_cmp(a, b));
        let d = kb_discrete_witness(&tree, 64);
        for (i, s) in sorted.iter().enumerate() {
            nodes_checked += 1;
            let sigma = FinSeq(s.clone());
            let want_pred = if i == 0 { ExtPoint::NegInf } else { ExtPoint::Point(FinSeq(sorted[i - 1].clone())) };
            let want_succ = sorted
                .get(i + 1)
                .map_or(ExtPoint::PosInf, |t| ExtPoint::Point(FinSeq(t.clone())));
            violations += usize::from(kb_predecessor(&tree, &sigma) != Ok(want_pred));
            violations += usize::from(kb_successor(&tree, &sigma, 64) != Ok(want_succ));
            if i > 0 {
                violations += usize::from(kb_compare(&sorted[i - 1], s) != Ordering::Less);
            }
            // the open interval (l, r) meets the tree exactly in σ
            match d.at(&sigma) {
                Ok((l, r)) => {
                    let above = |t: &Vec<u64>| match &l {
                        ExtPoint::NegInf => true,
                        ExtPoint::PosInf => false,
                        ExtPoint::Point(p) => kb_oracle_cmp(&p.0, t) == Ordering::Less,
                    };
                    let below = |t: &Vec<u64>| match &r {
                        ExtPoint::NegInf => false,
                        ExtPoint::PosInf => true,
                        ExtPoint::Point(q) => kb_oracle_cmp(t, &q.0) == Ordering::Less,
                    };
                    let inside: Vec<&Vec<u64>> = sorted.iter().filter(|t| above(t) && below(t)).collect();
                    violations += usize::from(inside != vec![s]);
                }
                Err(_) => violations += 1,
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} trees ({small_count} exhaustive), {nodes_checked} nodes, {:.1}s (limit {}s)",
        corpus.len(),
        elapsed.as_secs_f64(),
        AC3_TIME_LIMIT.as_secs()
    );
    if elapsed > AC3_TIME_LIMIT {
        return Err(format!("too slow; {detail}"));
    }
    verdict(violations, detail)
}

fn ac4_gap_pipeline() -> Outcome {
    const MAX_PREFIX: u64 = 30;
    const SCAN: u64 = 64;
    let ord = gallery("omega_plus_omega_star").unwrap();
    let cert = ord.gap_certificate().unwrap().clone();
    let space = ordered_space(ord.clone()).unwrap();
    let cover = cover_from_gap(&ord, &cert);
    let mut violations = 0usize;
    for k in 0..=MAX_PREFIX {
        let prefix = cover.prefix(k).unwrap();
        match finite_cover_check(&space, &prefix) {
            Ok(CoverCheck::Uncovered(x)) => {
                violations += usize::from(prefix.iter().any(|iv| ord.in_interval(iv, x)));
            }
            _ => violations += 1,
        }
    }
    for budget in 10..=30 {
        match gap_finder(&ord, &cover, budget, SCAN) {
            Ok(DichotomyResult::StagedCut(c)) => {
                for x in (0..budget).filter(|&x| ord.contains(x)) {
                    let lower = c.lower.contains(&x);
                    let upper = c.upper.contains(&x);
                    if lower == upper || lower != cert.cut.in_lower(x) || upper != cert.cut.in_upper(x) {
                        violations += 1;
                    }
                }
            }
            _ => violations += 1,
        }
    }
    verdict(
        violations,
        format!("prefixes 0..={MAX_PREFIX}, budgets 10..=30, scan {SCAN}"),
    )
}

/// Path checks: a strict ⊆-chain of the right length, every element in the
/// tree and in `A⁺`, each step the least child in `A⁺`.
fn check_path(t: &Tree, upper: &UpperSetOracle, path: &[FinSeq], steps: usize) -> usize {
    let mut v = usize::from(path.len() != steps + 1);
    v += usize::from(path.first().is_none_or(|s| !s.is_empty()));
    for s in path {
        v += usize::from(!t.contains(&s.0) || !upper.contains(&s.0));
    }
    for w in path.windows(2) {
        let (a, b) = (&w[0].0, &w[1].0);
        if b.len() != a.len() + 1 || !b.starts_with(a) {
            v += 1;
            continue;
        }
        let m = *b.last().unwrap();
        v += (0..m)
            .filter(|&n| {
                let mut c = a.clone();
                c.push(n);
                t.contains(&c) && upper.contains(&c)
            })
            .count();
    }
    v
}

/// Sequences of length `n` satisfying the leftmost-in-`A⁺` predicate, by
/// scanning every binary sequence of that length.
fn leftmost_count(upper: &UpperSetOracle, n: usize) -> usize {
    (0u64..1 << n)
        .map(|bits| (0..n).map(|i| bits >> i & 1).collect::<Vec<u64>>())
        .filter(|s| {
            upper.contains(s)
                && (0..s.len()).all(|i| {
                    (0..s[i]).all(|m| {
                        let mut c = s[..i].to_vec();
                        c.push(m);
                        !upper.contains(&c)
                    })
                })
        })
        .count()
}

fn ac5_path_extraction() -> Outcome {
    const STEPS: usize = 25;
    let mut violations = 0usize;
    for (name, expect) in [("zeros_noise", 0u64), ("alt_path", 1)] {
        let t = builtin_tree(name).unwrap();
        let upper = builtin_upper(name).unwrap();
        match extract_path(&t, &upper, STEPS) {
            Ok(path) => {
                violations += check_path(&t, &upper, &path, STEPS);
                let last = &path.last().unwrap().0;
                let want: Vec<u64> = (0..STEPS as u64)
                    .map(|i| if expect == 0 { 0 } else { 1 - i % 2 })
                    .collect();
                violations += usize::from(last != &want);
            }
            Err(_) => violations += 1,
        }
        for n in 0..=10 {
            violations += usize::from(leftmost_count(&upper, n) > 1);
        }
    }
    verdict(violations, format!("{STEPS} steps on zeros_noise and alt_path"))
}

fn seeded_injection() -> impl Fn(u64) -> u64 + Send + Sync + Clone + 'static {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut targets: Vec<u64> = (0..40).collect();
    targets.shuffle(&mut rng);
    let head: Vec<u64> = targets[..20].to_vec();
    move |s| if s < 20 { head[s as usize] } else { s + 20 }
}

fn ac6_injection_space() -> Outcome {
    const SEARCH: u64 = 100;
    let spaces: Vec<(&str, InjectionSpace)> = vec![
        ("2s", InjectionSpace::new(|s| 2 * s).unwrap()),
        ("seeded", InjectionSpace::new(seeded_injection()).unwrap()),
    ];
    let mut violations = 0usize;
    for (_, sp) in &spaces {
        violations += check_base_axioms(sp, 8, 12).violations.len();
        for n in 0..20u64 {
            let points: Vec<u64> = (0..200).collect();
            let singleton = |i: InjIndex| points.iter().filter(|&&x| sp.member(&i, x)).eq([n].iter());
            let isolated = singleton(InjIndex::Single(n)) || (0..SEARCH).any(|s| singleton(InjIndex::Graph { n, s }));
            violations += usize::from(!isolated);
        }
        let range: BTreeSet<u64> = (0..SEARCH).map(|s| sp.f(s)).collect();
        let cover = sp.canonical_cover(SEARCH);
        for n in 0..50u64 {
            match range_decode(sp, &cover, n, 2 * SEARCH + 2) {
                Ok(RangeVerdict::InRange(s)) => violations += usize::from(!range.contains(&n) || sp.f(s) != n),
                Ok(RangeVerdict::NotInRange) => violations += usize::from(range.contains(&n)),
                _ => violations += 1,
            }
        }
    }
    verdict(violations, "f(s) = 2s and a seeded injection".into())
}

fn ac7_flattening() -> Outcome {
    const ROWS: usize = 3;
    const COLS: usize = 3;
    let p_all = triple(ROWS as u64 - 1, COLS as u64 - 1, 1).unwrap() + 1;
    let p_checks: Vec<u64> = [0, 1, 2, 5, 10, 20, 35, p_all].to_vec();
    let mut tables = 0usize;
    let mut violations = 0usize;
    for n in 1..=4u64 {
        let ord = OrderPresentation::finite((0..n).collect()).unwrap();
        let members: Vec<u64> = (0..n).collect();
        let alphabet = [Interval::below(n / 2), Interval::above(n / 2 - u64::from(n > 1))];
        let covered = |fam: &mut dyn Iterator<Item = Interval>| -> BTreeSet<u64> {
            let fam: Vec<Interval> = fam.collect();
            members.iter().copied().filter(|&x| fam.iter().any(|iv| ord.in_interval(iv, x))).collect()
        };
        for rows in 1..=ROWS {
            for cols in 1..=COLS {
                let cells = rows * cols;
                for assign in 0u64..1 << (2 * cells) {
                    tables += 1;
                    let table: Vec<Vec<BTreeSet<Interval>>> = (0..rows)
                        .map(|r| {
                            (0..cols)
                                .map(|c| {
                                    let bits = assign >> (2 * (r * cols + c)) & 3;
                                    (0..2).filter(|b| bits >> b & 1 == 1).map(|b| alphabet[b].clone()).collect()
                                })
                                .collect()
                        })
                        .collect();
                    let honest_points = covered(&mut table.iter().flatten().flatten().cloned());
                    let hs = HonestSequence::from_table(table.clone());
                    let g = match honest_flatten(&hs, 16) {
                        Ok(g) => g,
                        Err(_) => {
                            violations += usize::from(assign != 0);
                            continue;
                        }
                    };
                    let flat: Vec<Interval> = (0..p_all).map(|p| g.g(p)).collect();
                    let origins: Vec<(u64, u64)> = (0..p_all).map(|p| g.origin(p)).collect();
                    violations += usize::from(covered(&mut flat.iter().cloned()) != honest_points);
                    for &p in &p_checks {
                        let m = subcover_stage_bound(p, |q| origins[q as usize]);
                        violations += usize::from(m != g.stage_bound(p));
                        let firsts = covered(&mut table.iter().take(m as usize).flatten().flatten().cloned());
                        let flat_p = covered(&mut flat[..p as usize].iter().cloned());
                        violations += usize::from(!flat_p.is_subset(&firsts));
                    }
                }
            }
        }
    }
    verdict(violations, format!("{tables} tables over finite(1..=4)"))
}
