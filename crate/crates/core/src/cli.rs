//! Command dispatch for the `ordcompact` binary. Reports are plain text
//! lines and depend only on the inputs and budgets, which are echoed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::csc::{
    check_base_axioms, honest_flatten, range_decode, InjIndex, InjectionSpace, RangeVerdict,
};
use crate::error::{Error, Result};
use crate::formats::{load_cover, load_order, load_tree, parse_honest_table, parse_injection_stream};
use crate::kb::{
    builtin_upper, extract_path, kb_predecessor, kb_sort, kb_successor, subtree_upper_set, FinSeq,
};
use crate::order::Interval;
use crate::topology::{
    finite_cover_check, find_finite_subcover, gap_finder, ordered_space, CoverCheck, DichotomyResult,
};

pub const DEFAULT_BUDGET: u64 = 64;
pub const DEFAULT_SAMPLE: u64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    CheckCover,
    Subcover,
    GapFind,
    KbSort,
    KbNeighbors,
    ExtractPath,
    InjectionDemo,
    Flatten,
    VerifyBase,
}

impl Verb {
    pub const ALL: [Verb; 9] = [
        Verb::CheckCover,
        Verb::Subcover,
        Verb::GapFind,
        Verb::KbSort,
        Verb::KbNeighbors,
        Verb::ExtractPath,
        Verb::InjectionDemo,
        Verb::Flatten,
        Verb::VerifyBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::CheckCover => "check-cover",
            Verb::Subcover => "subcover",
            Verb::GapFind => "gap-find",
            Verb::KbSort => "kb-sort",
            Verb::KbNeighbors => "kb-neighbors",
            Verb::ExtractPath => "extract-path",
            Verb::InjectionDemo => "injection-demo",
            Verb::Flatten => "flatten",
            Verb::VerifyBase => "verify-base",
        }
    }
}

impl FromStr for Verb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Verb::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub order: Option<String>,
    pub cover: Option<String>,
    pub tree: Option<String>,
    pub sigma: Option<String>,
    pub injection: Option<String>,
    pub budget: Option<u64>,
    pub scan: Option<u64>,
    pub depth: Option<u64>,
    pub sample: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Found,
    None,
    Staged,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Found => 0,
            Status::None | Status::Staged => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub status: Status,
    pub lines: Vec<String>,
}

impl Report {
    fn new(status: Status) -> Self {
        Report {
            status,
            lines: Vec::new(),
        }
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn join<T: fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn required<'a>(opt: &'a Option<String>, flag: &str) -> Result<&'a str> {
    opt.as_deref()
        .ok_or_else(|| Error::Input(format!("missing --{flag}")))
}

/// Runs a command; failures become an `error` report.
pub fn run(cmd: &Command) -> Report {
    dispatch(cmd).unwrap_or_else(|e| Report::new(Status::Error).line(format!("error: {e}")))
}

fn dispatch(cmd: &Command) -> Result<Report> {
    let o = &cmd.options;
    let budget = o.budget.unwrap_or(DEFAULT_BUDGET);
    let scan = o.scan.unwrap_or(DEFAULT_BUDGET);
    let depth = o.depth.unwrap_or(DEFAULT_BUDGET) as usize;
    let sample = o.sample.unwrap_or(DEFAULT_SAMPLE);
    match cmd.verb {
        Verb::CheckCover => {
            let space = ordered_space(load_order(required(&o.order, "order")?)?)?;
            let cover = load_cover(required(&o.cover, "cover")?)?;
            let family = cover.prefix(scan)?;
            let r = match finite_cover_check(&space, &family)? {
                CoverCheck::Covered => Report::new(Status::Ok).line("covered"),
                CoverCheck::Uncovered(x) => Report::new(Status::None).line(format!("uncovered: {x}")),
            };
            Ok(r.line(format!("intervals: {}", family.len())).line(format!("scan: {scan}")))
        }
        Verb::Subcover => {
            let space = ordered_space(load_order(required(&o.order, "order")?)?)?;
            let cover = load_cover(required(&o.cover, "cover")?)?;
            let r = match find_finite_subcover(&space, &cover, scan)? {
                Some(ix) => Report::new(Status::Found).line(format!("found: {}", join(ix))),
                None => Report::new(Status::None).line("none"),
            };
            Ok(r.line(format!("scan: {scan}")))
        }
        Verb::GapFind => {
            let ord = load_order(required(&o.order, "order")?)?;
            let cover = load_cover(required(&o.cover, "cover")?)?;
            let r = match gap_finder(&ord, &cover, budget, scan)? {
                DichotomyResult::Subcover(link) => {
                    Report::new(Status::Found).line(format!("subcover: {}", join(link.indices())))
                }
                DichotomyResult::StagedCut(c) => Report::new(Status::Staged)
                    .line(format!("staged: {}", c.stage))
                    .line(format!("lower: {}", join(&c.lower)))
                    .line(format!("upper: {}", join(&c.upper))),
            };
            Ok(r.line(format!("budget: {budget}")).line(format!("scan: {scan}")))
        }
        Verb::KbSort => {
            let tree = load_tree(required(&o.tree, "tree")?)?;
            let mut nodes = match tree.nodes() {
                Some(n) => n.to_vec(),
                None => tree.members_upto(depth, sample as usize),
            };
            kb_sort(&mut nodes);
            let mut r = Report::new(Status::Ok);
            for s in &nodes {
                r = r.line(s.to_string());
            }
            if tree.nodes().is_none() {
                r = r.line(format!("depth: {depth}")).line(format!("sample: {sample}"));
            }
            Ok(r)
        }
        Verb::KbNeighbors => {
            let tree = load_tree(required(&o.tree, "tree")?)?;
            let sigma: FinSeq = required(&o.sigma, "sigma")?.parse()?;
            Ok(Report::new(Status::Ok)
                .line(format!("pred: {}", kb_predecessor(&tree, &sigma)?))
                .line(format!("succ: {}", kb_successor(&tree, &sigma, depth)?))
                .line(format!("depth: {depth}")))
        }
        Verb::ExtractPath => {
            let spec = required(&o.tree, "tree")?;
            let tree = load_tree(spec)?;
            let upper = match (&o.sigma, spec.strip_prefix("builtin:")) {
                (Some(s), _) => subtree_upper_set(&tree, &s.parse()?),
                (None, Some(name)) => builtin_upper(name)?,
                (None, None) => subtree_upper_set(&tree, &FinSeq::empty()),
            };
            let mut r = Report::new(Status::Ok);
            for s in extract_path(&tree, &upper, budget as usize)? {
                r = r.line(s.to_string());
            }
            Ok(r.line(format!("budget: {budget}")))
        }
        Verb::InjectionDemo => {
            let space = injection(o.injection.as_deref().unwrap_or("double"))?;
            let listed = o
                .cover
                .as_deref()
                .map(|p| {
                    std::fs::read_to_string(p)
                        .map_err(|e| Error::Input(format!("{p}: {e}")))
                        .and_then(|t| parse_injection_stream(&t))
                })
                .transpose()?;
            let canonical = space.canonical_cover(scan);
            let (positions, cover): (u64, Box<dyn Fn(u64) -> InjIndex>) = match listed {
                Some(list) => (budget.min(list.len() as u64), Box::new(move |m| list[m as usize])),
                None => (budget, Box::new(canonical)),
            };
            let mut r = Report::new(Status::Ok);
            for n in 0..sample {
                let verdict = match range_decode(&space, &cover, n, positions)? {
                    RangeVerdict::InRange(s) => format!("in-range {s}"),
                    RangeVerdict::NotInRange => "not-in-range".into(),
                    RangeVerdict::Unknown => "unknown".into(),
                };
                r = r.line(format!("{n}: {verdict}"));
            }
            Ok(r.line(format!("budget: {budget}")).line(format!("scan: {scan}")))
        }
        Verb::Flatten => {
            let path = required(&o.cover, "cover")?;
            let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))?;
            let hs = parse_honest_table(&text)?;
            let g = honest_flatten(&hs, budget)?;
            let m = g.stage_bound(sample);
            let (fm, fn_) = g.fallback_origin();
            let mut r = Report::new(Status::Ok).line(format!("fallback: {} from h({fm}, {fn_})", g.fallback()));
            for p in 0..sample {
                r = r.line(format!("g({p}) = {}", g.g(p)));
            }
            r = r.line(format!("stage bound: {m}"));
            if let Some(spec) = &o.order {
                let ord = load_order(spec)?;
                let members = ord
                    .finite_members()
                    .ok_or_else(|| Error::Input("absorption check needs a finite order".into()))?;
                let flat: Vec<Interval> = (0..sample).map(|p| g.g(p)).collect();
                let honest: Vec<Interval> = (0..m).flat_map(|i| (0..budget).flat_map(|n| hs.at(i, n)).collect::<Vec<_>>()).collect();
                let covered = |fam: &[Interval]| -> BTreeSet<u64> {
                    members.iter().copied().filter(|&x| fam.iter().any(|iv| ord.in_interval(iv, x))).collect()
                };
                let absorbed = covered(&flat).is_subset(&covered(&honest));
                r = r.line(format!("absorbed: {}", if absorbed { "yes" } else { "no" }));
                if !absorbed {
                    r.status = Status::None;
                }
            }
            Ok(r.line(format!("budget: {budget}")).line(format!("sample: {sample}")))
        }
        Verb::VerifyBase => {
            let (points, indices, violations) = match (&o.order, &o.injection) {
                (Some(spec), _) => {
                    let space = ordered_space(load_order(spec)?)?;
                    let rep = check_base_axioms(&space, sample as usize, scan as usize);
                    let v: Vec<String> = rep.violations.iter().map(|v| format!("{v:?}")).collect();
                    (rep.points_checked, rep.indices_checked, v)
                }
                (None, Some(name)) => {
                    let space = injection(name)?;
                    let rep = check_base_axioms(&space, sample as usize, scan as usize);
                    let v: Vec<String> = rep.violations.iter().map(|v| format!("{v:?}")).collect();
                    (rep.points_checked, rep.indices_checked, v)
                }
                (None, None) => return Err(Error::Input("missing --order or --injection".into())),
            };
            let status = if violations.is_empty() { Status::Ok } else { Status::None };
            let mut r = Report::new(status)
                .line(format!("points: {points}"))
                .line(format!("indices: {indices}"))
                .line(format!("violations: {}", violations.len()));
            for v in violations.iter().take(10) {
                r = r.line(v.clone());
            }
            Ok(r)
        }
    }
}

/// Named injections: `double` (`2s`), `odd` (`2s + 1`) and `square` (`s²`).
pub fn injection(name: &str) -> Result<InjectionSpace> {
    let name = name.strip_prefix("injection:").unwrap_or(name);
    match name {
        "double" => InjectionSpace::new(|s| 2 * s),
        "odd" => InjectionSpace::new(|s| 2 * s + 1),
        "square" => InjectionSpace::new(|s| s * s),
        _ => Err(Error::Input(format!("unknown injection {name:?}"))),
    }
}
