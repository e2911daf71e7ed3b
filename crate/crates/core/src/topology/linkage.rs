//! Linkages: chains of cover intervals whose right endpoints climb and which
//! overlap step by step. The reachable set of the least element drives both
//! the finite-subcover search and the staged gap finder.

use std::collections::{BTreeSet, VecDeque};

use super::{Cover, OrderedSpace};
use crate::coding::seq_decode;
use crate::error::{Error, Result};
use crate::order::{Cut, Endpoint, Interval, OrderPresentation};

/// `a_{i+1} ≺ b_i ≺ b_{i+1}` for every consecutive pair.
pub fn is_linkage(chain: &[Interval], ord: &OrderPresentation) -> bool {
    chain
        .windows(2)
        .all(|w| ord.ext_less(&w[1].lo, &w[0].hi) && ord.ext_less(&w[0].hi, &w[1].hi))
}

/// Whether `x` lies in the union of the chain.
pub fn linkage_member(chain: &[Interval], x: u64, ord: &OrderPresentation) -> bool {
    chain.iter().any(|iv| ord.in_interval(iv, x))
}

/// A linkage together with the cover positions of its intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linkage {
    steps: Vec<(u64, Interval)>,
}

impl Linkage {
    pub fn new(steps: Vec<(u64, Interval)>, ord: &OrderPresentation) -> Result<Self> {
        let ivs: Vec<Interval> = steps.iter().map(|(_, iv)| iv.clone()).collect();
        if !is_linkage(&ivs, ord) {
            return Err(Error::Input("intervals do not form a linkage".into()));
        }
        Ok(Linkage { steps })
    }

    pub fn steps(&self) -> &[(u64, Interval)] {
        &self.steps
    }

    pub fn indices(&self) -> BTreeSet<u64> {
        self.steps.iter().map(|(m, _)| *m).collect()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.steps.iter().map(|(_, iv)| iv.clone()).collect()
    }

    pub fn contains(&self, x: u64, ord: &OrderPresentation) -> bool {
        self.steps.iter().any(|(_, iv)| ord.in_interval(iv, x))
    }
}

/// Result of the breadth-first linkage closure from the least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reach {
    /// Cover positions reachable by a linkage starting at the least element.
    pub reached: BTreeSet<u64>,
    /// Carrier members below the element bound lying in a reached interval.
    pub members: BTreeSet<u64>,
    /// A linkage from the least to the greatest element, if one was found.
    pub to_greatest: Option<Linkage>,
}

/// Closes the intervals at cover positions `< index_bound` containing
/// `least` under the linkage step `i → j` iff `a_j ≺ b_i ≺ b_j`, scanning
/// positions in stream order.
pub fn reachable_within(
    ord: &OrderPresentation,
    cover: &Cover,
    least: u64,
    greatest: Option<u64>,
    element_bound: u64,
    index_bound: u64,
) -> Result<Reach> {
    let intervals = cover.prefix(index_bound)?;
    let n = intervals.len();
    let mut parent: Vec<Option<Option<usize>>> = vec![None; n];
    let mut queue = VecDeque::new();
    let mut goal = None;

    let mut visit = |j: usize, from: Option<usize>, parent: &mut Vec<Option<Option<usize>>>, queue: &mut VecDeque<usize>| {
        parent[j] = Some(from);
        queue.push_back(j);
        if goal.is_none() && greatest.is_some_and(|g| ord.in_interval(&intervals[j], g)) {
            goal = Some(j);
        }
    };

    for (j, iv) in intervals.iter().enumerate() {
        if ord.in_interval(iv, least) {
            visit(j, None, &mut parent, &mut queue);
        }
    }
    while let Some(i) = queue.pop_front() {
        let b = &intervals[i].hi;
        for j in 0..n {
            if parent[j].is_none() && ord.ext_less(&intervals[j].lo, b) && ord.ext_less(b, &intervals[j].hi) {
                visit(j, Some(i), &mut parent, &mut queue);
            }
        }
    }

    let reached: BTreeSet<u64> = (0..n).filter(|&j| parent[j].is_some()).map(|j| j as u64).collect();
    let members = (0..element_bound)
        .filter(|&x| ord.contains(x))
        .filter(|&x| reached.iter().any(|&j| ord.in_interval(&intervals[j as usize], x)))
        .collect();
    let to_greatest = goal.map(|mut j| {
        let mut steps = vec![(j as u64, intervals[j].clone())];
        while let Some(Some(p)) = parent[j] {
            steps.push((p as u64, intervals[p].clone()));
            j = p;
        }
        steps.reverse();
        Linkage { steps }
    });
    Ok(Reach {
        reached,
        members,
        to_greatest,
    })
}

/// An order with a designated least and greatest member, plus a cover.
#[derive(Clone, Debug)]
pub struct LinkageTreeParams {
    pub ord: OrderPresentation,
    pub cover: Cover,
    pub least: u64,
    pub greatest: u64,
}

impl LinkageTreeParams {
    /// Takes the order's declared (or, for finite orders, computed)
    /// endpoints.
    pub fn new(ord: OrderPresentation, cover: Cover) -> Result<Self> {
        let least = endpoint(ord.least(), "least", &ord)?;
        let greatest = endpoint(ord.greatest(), "greatest", &ord)?;
        Ok(LinkageTreeParams {
            ord,
            cover,
            least,
            greatest,
        })
    }

    /// Checks the designated endpoints against the first `sample` members.
    pub fn check_endpoints(&self, sample: u64) -> bool {
        self.ord
            .elements(sample)
            .into_iter()
            .all(|x| !self.ord.less(x, self.least) && !self.ord.less(self.greatest, x))
    }
}

fn endpoint(e: Endpoint, which: &'static str, ord: &OrderPresentation) -> Result<u64> {
    match e {
        Endpoint::At(x) => Ok(x),
        Endpoint::Missing => Err(Error::MissingEndpoint(which)),
        Endpoint::Unknown => Err(Error::Undecidable(format!("{} declares no {which} element", ord.name()))),
    }
}

/// The set `D` at stage `n`: carrier members `< n` joined to the least
/// element by a linkage over cover positions `< n`.
pub fn linkage_reachable(params: &LinkageTreeParams, n: u64) -> Result<BTreeSet<u64>> {
    Ok(reachable_within(&params.ord, &params.cover, params.least, Some(params.greatest), n, n)?.members)
}

/// Membership of a binary string in the tree of approximations to a
/// downward-closed, linkage-closed set containing the least element and not
/// the greatest. Linkages range over index sequences with code `< |σ|`.
pub fn linkage_tree_member(params: &LinkageTreeParams, sigma: &[bool]) -> Result<bool> {
    let len = sigma.len() as u64;
    let ord = &params.ord;
    let bit = |x: u64| sigma[x as usize];
    if params.least < len && !bit(params.least) {
        return Ok(false);
    }
    if params.greatest < len && bit(params.greatest) {
        return Ok(false);
    }
    let carrier: Vec<u64> = (0..len).filter(|&x| ord.contains(x)).collect();
    if (0..len).any(|x| bit(x) && !ord.contains(x)) {
        return Ok(false);
    }
    for &y in carrier.iter().filter(|&&y| bit(y)) {
        if carrier.iter().any(|&x| !bit(x) && ord.less(x, y)) {
            return Ok(false);
        }
    }
    for code in 0..len {
        let positions = seq_decode(code);
        let mut chain = Vec::with_capacity(positions.len());
        for &m in &positions {
            match params.cover.get(m)? {
                Some(iv) => chain.push(iv),
                None => break,
            }
        }
        if chain.len() < positions.len() || !is_linkage(&chain, ord) {
            continue;
        }
        let inside: Vec<u64> = carrier.iter().copied().filter(|&x| linkage_member(&chain, x, ord)).collect();
        if inside.iter().any(|&y| bit(y)) && inside.iter().any(|&x| !bit(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A cut restricted to the carrier members below `stage`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StagedCut {
    pub stage: u64,
    pub lower: BTreeSet<u64>,
    pub upper: BTreeSet<u64>,
}

impl StagedCut {
    pub fn to_cut(&self) -> Cut {
        Cut::from_sets(self.lower.iter().copied(), self.upper.iter().copied())
    }

    /// Every lower member precedes every upper member.
    pub fn is_separated(&self, ord: &OrderPresentation) -> bool {
        self.lower.iter().all(|&a| self.upper.iter().all(|&b| ord.less(a, b)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DichotomyResult {
    Subcover(Linkage),
    StagedCut(StagedCut),
}

/// Either a linkage from the least to the greatest element among cover
/// positions `< scan`, or the cut with lower side the stage-`budget`
/// reachable set. Orders missing an endpoint yield the one-sided cut at
/// once.
pub fn gap_finder(ord: &OrderPresentation, cover: &Cover, budget: u64, scan: u64) -> Result<DichotomyResult> {
    let sample: BTreeSet<u64> = (0..budget).filter(|&x| ord.contains(x)).collect();
    let staged = |lower: BTreeSet<u64>| {
        let upper = sample.difference(&lower).copied().collect();
        DichotomyResult::StagedCut(StagedCut {
            stage: budget,
            lower,
            upper,
        })
    };
    let params = match LinkageTreeParams::new(ord.clone(), cover.clone()) {
        Ok(p) => p,
        Err(Error::MissingEndpoint("least")) => return Ok(staged(BTreeSet::new())),
        Err(Error::MissingEndpoint(_)) => return Ok(staged(sample.clone())),
        Err(e) => return Err(e),
    };
    let reach = reachable_within(ord, cover, params.least, Some(params.greatest), budget, scan)?;
    Ok(match reach.to_greatest {
        Some(link) => DichotomyResult::Subcover(link),
        None => staged(reach.members),
    })
}

/// A finite subcover among cover positions `< scan`, found as a linkage
/// from the least to the greatest element.
pub fn find_finite_subcover(os: &OrderedSpace, cover: &Cover, scan: u64) -> Result<Option<BTreeSet<u64>>> {
    let ord = os.order();
    let members = ord
        .finite_members()
        .ok_or_else(|| Error::Input("subcover search needs a finite order".into()))?;
    let (Some(&least), Some(&greatest)) = (members.first(), members.last()) else {
        return Ok(None);
    };
    let reach = reachable_within(ord, cover, least, Some(greatest), 0, scan)?;
    Ok(reach.to_greatest.map(|l| l.indices()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::gallery;
    use crate::topology::{cover_from_gap, ordered_space};

    fn finite(n: u64) -> OrderPresentation {
        gallery(&format!("finite({n})")).unwrap()
    }

    fn bridge() -> Vec<Interval> {
        vec![Interval::below(2), Interval::open(1, 3), Interval::above(2)]
    }

    fn split() -> Vec<Interval> {
        vec![Interval::below(2), Interval::above(2)]
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn linkage_examples() {
        let ord = finite(4);
        assert!(is_linkage(&bridge(), &ord));
        assert!(is_linkage(&[Interval::below(2)], &ord));
        assert!(!is_linkage(&split(), &ord));
        assert!(linkage_member(&bridge(), 0, &ord));
        assert!(linkage_member(&bridge(), 3, &ord));
        assert!(!linkage_member(&[], 0, &ord));
        let steps: Vec<_> = bridge().into_iter().enumerate().map(|(i, iv)| (i as u64, iv)).collect();
        assert!(Linkage::new(steps, &ord).is_ok());
        assert!(Linkage::new(vec![(0, Interval::below(2)), (1, Interval::above(2))], &ord).is_err());
    }

    #[test]
    fn reachable_sets() {
        let ord = finite(4);
        let p = LinkageTreeParams::new(ord.clone(), Cover::from_list(bridge())).unwrap();
        assert_eq!(linkage_reachable(&p, 10).unwrap(), BTreeSet::from([0, 1, 2, 3]));
        let p = LinkageTreeParams::new(ord, Cover::from_list(split())).unwrap();
        assert_eq!(linkage_reachable(&p, 10).unwrap(), BTreeSet::from([0, 1]));
        assert!(linkage_reachable(&p, 1).unwrap().is_subset(&BTreeSet::from([0])));
    }

    #[test]
    fn reachable_is_monotone_in_stage() {
        let ord = gallery("omega_plus_omega_star").unwrap();
        let cover = cover_from_gap(&ord, ord.gap_certificate().unwrap());
        let p = LinkageTreeParams::new(ord, cover).unwrap();
        let mut prev = BTreeSet::new();
        for n in 0..30 {
            let d = linkage_reachable(&p, n).unwrap();
            assert!(prev.is_subset(&d));
            prev = d;
        }
    }

    #[test]
    fn subcover_examples() {
        let os = ordered_space(finite(4)).unwrap();
        assert_eq!(
            find_finite_subcover(&os, &Cover::from_list(bridge()), 3),
            Ok(Some(BTreeSet::from([0, 1, 2])))
        );
        assert_eq!(find_finite_subcover(&os, &Cover::from_list(split()), 2), Ok(None));
        let os1 = ordered_space(finite(1)).unwrap();
        assert_eq!(
            find_finite_subcover(&os1, &Cover::from_list(vec![Interval::whole()]), 1),
            Ok(Some(BTreeSet::from([0])))
        );
        let dense = ordered_space(gallery("dense_unbounded").unwrap()).unwrap();
        assert!(find_finite_subcover(&dense, &Cover::from_list(vec![]), 1).is_err());
    }

    #[test]
    fn linkage_tree_examples() {
        let ord = finite(4);
        let p = LinkageTreeParams::new(ord.clone(), Cover::from_list(split())).unwrap();
        assert_eq!(linkage_tree_member(&p, &[]), Ok(true));
        assert_eq!(linkage_tree_member(&p, &bits("0")), Ok(false));
        // characteristic vector of D = {0, 1}
        assert_eq!(linkage_tree_member(&p, &bits("1100")), Ok(true));
        assert_eq!(linkage_tree_member(&p, &bits("1000")), Ok(false));
        assert_eq!(linkage_tree_member(&p, &bits("1010")), Ok(false));
        // with the bridge cover D reaches the greatest element
        let pb = LinkageTreeParams::new(ord, Cover::from_list(bridge())).unwrap();
        let d = linkage_reachable(&pb, 4).unwrap();
        let sigma: Vec<bool> = (0..4).map(|x| d.contains(&x)).collect();
        assert_eq!(linkage_tree_member(&pb, &sigma), Ok(false));
    }

    #[test]
    fn linkage_tree_has_members_of_every_length() {
        let ord = gallery("omega_plus_omega_star").unwrap();
        let cover = cover_from_gap(&ord, ord.gap_certificate().unwrap());
        let p = LinkageTreeParams::new(ord.clone(), cover.clone()).unwrap();
        for n in 0..=12u64 {
            // D with enough cover positions to realise every needed linkage
            let d = reachable_within(&ord, &cover, p.least, Some(p.greatest), n, 64).unwrap().members;
            let sigma: Vec<bool> = (0..n).map(|x| d.contains(&x)).collect();
            assert_eq!(linkage_tree_member(&p, &sigma), Ok(true), "n = {n}");
            let some_member = (0u64..1 << n).any(|bits| {
                let s: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                linkage_tree_member(&p, &s).unwrap()
            });
            assert!(some_member, "n = {n}");
        }
        // with only the first n cover positions, D can miss the least element
        assert!(linkage_reachable(&p, 1).unwrap().is_empty());
    }

    #[test]
    fn gap_finder_examples() {
        let ord = finite(4);
        match gap_finder(&ord, &Cover::from_list(bridge()), 64, 64).unwrap() {
            DichotomyResult::Subcover(l) => assert_eq!(l.indices(), BTreeSet::from([0, 1, 2])),
            other => panic!("{other:?}"),
        }
        let one = finite(1);
        match gap_finder(&one, &Cover::from_list(vec![Interval::whole()]), 64, 64).unwrap() {
            DichotomyResult::Subcover(l) => assert_eq!(l.indices(), BTreeSet::from([0])),
            other => panic!("{other:?}"),
        }
        let ord = gallery("omega_plus_omega_star").unwrap();
        let cover = cover_from_gap(&ord, ord.gap_certificate().unwrap());
        match gap_finder(&ord, &cover, 20, 64).unwrap() {
            DichotomyResult::StagedCut(c) => {
                assert_eq!(c.stage, 20);
                assert_eq!(c.lower, (0..20).filter(|x| x % 2 == 0).collect());
                assert_eq!(c.upper, (0..20).filter(|x| x % 2 == 1).collect());
                assert!(c.is_separated(&ord));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_endpoint_gives_one_sided_cut() {
        let ord = gallery("dense_unbounded").unwrap();
        match gap_finder(&ord, &Cover::from_list(vec![Interval::whole()]), 10, 10).unwrap() {
            DichotomyResult::StagedCut(c) => {
                assert!(c.lower.is_empty());
                assert_eq!(c.upper.len(), 10);
            }
            other => panic!("{other:?}"),
        }
        let bare = OrderPresentation::infinite("bare", |i| i, |_| true, |x, y| x < y);
        assert!(matches!(gap_finder(&bare, &Cover::from_list(vec![]), 5, 5), Err(Error::Undecidable(_))));
    }
}
