//! Python bindings. Endpoints cross the boundary as ints or the strings
//! `"-inf"` / `"+inf"`; intervals as `(lo, hi)` tuples; tree nodes as lists
//! of ints.

use std::collections::BTreeSet;

use ordcompact::cli::injection;
use ordcompact::coding;
use ordcompact::csc::{honest_flatten, range_decode, HonestSequence, RangeVerdict};
use ordcompact::formats::{load_cover, load_order, load_tree};
use ordcompact::kb::{self, builtin_upper, extract_path, subtree_upper_set, FinSeq};
use ordcompact::order::{gallery, ExtPoint, Interval, OrderPresentation};
use ordcompact::topology::{
    finite_cover_check, find_finite_subcover, gap_finder, ordered_space, Cover, CoverCheck, DichotomyResult,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: ordcompact::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject, IntoPyObject)]
enum End {
    Int(u64),
    Str(String),
}

fn ext_in(e: End) -> PyResult<ExtPoint> {
    match e {
        End::Int(x) => Ok(ExtPoint::Point(x)),
        End::Str(s) if s == "-inf" => Ok(ExtPoint::NegInf),
        End::Str(s) if s == "+inf" || s == "inf" => Ok(ExtPoint::PosInf),
        End::Str(s) => Err(PyValueError::new_err(format!("bad endpoint {s:?}"))),
    }
}

fn ext_out(p: &ExtPoint) -> End {
    match p {
        ExtPoint::NegInf => End::Str("-inf".into()),
        ExtPoint::PosInf => End::Str("+inf".into()),
        ExtPoint::Point(x) => End::Int(*x),
    }
}

fn interval_in((lo, hi): (End, End)) -> PyResult<Interval> {
    Ok(Interval::new(ext_in(lo)?, ext_in(hi)?))
}

fn interval_out(iv: &Interval) -> (End, End) {
    (ext_out(&iv.lo), ext_out(&iv.hi))
}

fn intervals_in(list: Vec<(End, End)>) -> PyResult<Vec<Interval>> {
    list.into_iter().map(interval_in).collect()
}

#[derive(IntoPyObject)]
enum Node {
    Seq(Vec<u64>),
    Inf(String),
}

fn node_out(p: ExtPoint<FinSeq>) -> Node {
    match p {
        ExtPoint::NegInf => Node::Inf("-inf".into()),
        ExtPoint::PosInf => Node::Inf("+inf".into()),
        ExtPoint::Point(s) => Node::Seq(s.0),
    }
}

/// A countable linear order.
#[pyclass(frozen, name = "Order")]
struct PyOrder(OrderPresentation);

#[pymethods]
impl PyOrder {
    /// Finite order listing `labels` from least to greatest.
    #[staticmethod]
    fn finite(labels: Vec<u64>) -> PyResult<Self> {
        OrderPresentation::finite(labels).map(PyOrder).map_err(err)
    }

    #[staticmethod]
    fn gallery(name: &str) -> PyResult<Self> {
        gallery(name).map(PyOrder).map_err(err)
    }

    /// `gallery:NAME` or a path to an order file.
    #[staticmethod]
    fn load(spec: &str) -> PyResult<Self> {
        load_order(spec).map(PyOrder).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn contains(&self, x: u64) -> bool {
        self.0.contains(x)
    }

    fn less(&self, x: u64, y: u64) -> bool {
        self.0.less(x, y)
    }

    /// The first `n` elements of the carrier enumeration.
    fn elements(&self, n: u64) -> Vec<u64> {
        self.0.elements(n)
    }

    fn in_interval(&self, interval: (End, End), x: u64) -> PyResult<bool> {
        Ok(self.0.in_interval(&interval_in(interval)?, x))
    }

    fn __repr__(&self) -> String {
        format!("Order({:?})", self.0.name())
    }
}

/// A tree of finite sequences.
#[pyclass(frozen, name = "Tree")]
struct PyTree(kb::Tree);

#[pymethods]
impl PyTree {
    #[staticmethod]
    #[pyo3(signature = (nodes, bound=None))]
    fn finite(nodes: Vec<Vec<u64>>, bound: Option<Vec<u64>>) -> Self {
        PyTree(kb::Tree::finite(nodes.into_iter().map(FinSeq), bound))
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        kb::builtin_tree(name).map(PyTree).map_err(err)
    }

    /// `builtin:NAME` or a path to a tree file.
    #[staticmethod]
    fn load(spec: &str) -> PyResult<Self> {
        load_tree(spec).map(PyTree).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn contains(&self, sigma: Vec<u64>) -> bool {
        self.0.contains(&sigma)
    }

    /// Nodes in Kleene-Brouwer order; oracle trees are listed to `depth`.
    #[pyo3(signature = (depth=6, limit=4096))]
    fn kb_sorted(&self, depth: usize, limit: usize) -> Vec<Vec<u64>> {
        let mut nodes = match self.0.nodes() {
            Some(n) => n.to_vec(),
            None => self.0.members_upto(depth, limit),
        };
        kb::kb_sort(&mut nodes);
        nodes.into_iter().map(|s| s.0).collect()
    }

    fn predecessor(&self, sigma: Vec<u64>) -> PyResult<Node> {
        kb::kb_predecessor(&self.0, &FinSeq(sigma)).map(node_out).map_err(err)
    }

    #[pyo3(signature = (sigma, cap=64))]
    fn successor(&self, sigma: Vec<u64>, cap: usize) -> PyResult<Node> {
        kb::kb_successor(&self.0, &FinSeq(sigma), cap).map(node_out).map_err(err)
    }

    /// The leftmost path, `steps` long, through the upper set of nodes
    /// comparable with `sigma`; a builtin tree's own upper set when `sigma`
    /// is omitted.
    #[pyo3(signature = (steps, sigma=None))]
    fn extract_path(&self, steps: usize, sigma: Option<Vec<u64>>) -> PyResult<Vec<Vec<u64>>> {
        let upper = match sigma {
            Some(s) => subtree_upper_set(&self.0, &FinSeq(s)),
            None => builtin_upper(self.0.name()).unwrap_or_else(|_| subtree_upper_set(&self.0, &FinSeq::empty())),
        };
        extract_path(&self.0, &upper, steps)
            .map(|p| p.into_iter().map(|s| s.0).collect())
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Tree({:?})", self.0.name())
    }
}

#[pyfunction]
fn kb_compare(a: Vec<u64>, b: Vec<u64>) -> i8 {
    kb::kb_compare(&a, &b) as i8
}

#[pyfunction]
fn pair(a: u64, b: u64) -> PyResult<u64> {
    coding::pair(a, b).ok_or_else(|| PyValueError::new_err("pair overflows u64"))
}

#[pyfunction]
fn unpair(z: u64) -> (u64, u64) {
    coding::unpair(z)
}

/// `None` when the family covers the order, else an uncovered element.
#[pyfunction]
fn uncovered_point(order: &PyOrder, intervals: Vec<(End, End)>) -> PyResult<Option<u64>> {
    let space = ordered_space(order.0.clone()).map_err(err)?;
    match finite_cover_check(&space, &intervals_in(intervals)?).map_err(err)? {
        CoverCheck::Covered => Ok(None),
        CoverCheck::Uncovered(x) => Ok(Some(x)),
    }
}

/// Indices of a finite subcover among the first `scan` intervals, if any.
#[pyfunction]
#[pyo3(signature = (order, intervals, scan=64))]
fn find_subcover(order: &PyOrder, intervals: Vec<(End, End)>, scan: u64) -> PyResult<Option<Vec<u64>>> {
    let space = ordered_space(order.0.clone()).map_err(err)?;
    let cover = Cover::from_list(intervals_in(intervals)?);
    Ok(find_finite_subcover(&space, &cover, scan)
        .map_err(err)?
        .map(|s| s.into_iter().collect()))
}

/// Either `("subcover", [(index, interval), ...])` or
/// `("staged", lower, upper)`. `cover` is a list of intervals or a cover
/// shortcut such as `gallery-gap:NAME`.
#[pyfunction]
#[pyo3(signature = (order, cover, budget=64, scan=64))]
fn find_gap(py: Python<'_>, order: &PyOrder, cover: &Bound<'_, PyAny>, budget: u64, scan: u64) -> PyResult<Py<PyAny>> {
    let cover = match cover.extract::<String>() {
        Ok(spec) => load_cover(&spec).map_err(err)?,
        Err(_) => Cover::from_list(intervals_in(cover.extract()?)?),
    };
    Ok(match gap_finder(&order.0, &cover, budget, scan).map_err(err)? {
        DichotomyResult::Subcover(link) => {
            let steps: Vec<(u64, (End, End))> = link.steps().iter().map(|(i, iv)| (*i, interval_out(iv))).collect();
            ("subcover", steps).into_pyobject(py)?.into_any().unbind()
        }
        DichotomyResult::StagedCut(c) => {
            let lower: Vec<u64> = c.lower.into_iter().collect();
            let upper: Vec<u64> = c.upper.into_iter().collect();
            ("staged", lower, upper).into_pyobject(py)?.into_any().unbind()
        }
    })
}

/// Range membership of `n` for the named injection, read off its canonical
/// cover: `("in-range", s)`, `("not-in-range",)` or `("unknown",)`.
#[pyfunction]
#[pyo3(signature = (name, n, budget=256, search=128))]
fn decode_range(py: Python<'_>, name: &str, n: u64, budget: u64, search: u64) -> PyResult<Py<PyAny>> {
    let space = injection(name).map_err(err)?;
    let cover = space.canonical_cover(search);
    Ok(match range_decode(&space, cover, n, budget).map_err(err)? {
        RangeVerdict::InRange(s) => ("in-range", s).into_pyobject(py)?.into_any().unbind(),
        RangeVerdict::NotInRange => ("not-in-range",).into_pyobject(py)?.into_any().unbind(),
        RangeVerdict::Unknown => ("unknown",).into_pyobject(py)?.into_any().unbind(),
    })
}

/// Flatten a table `table[m][n]` of interval lists. Returns
/// `(g(0..count), fallback, stage_bound(count))`.
#[pyfunction]
#[pyo3(signature = (table, count, budget=64))]
fn flatten(
    table: Vec<Vec<Vec<(End, End)>>>,
    count: u64,
    budget: u64,
) -> PyResult<(Vec<(End, End)>, (End, End), u64)> {
    let cells = table
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|cell| intervals_in(cell).map(BTreeSet::from_iter))
                .collect::<PyResult<Vec<_>>>()
        })
        .collect::<PyResult<Vec<_>>>()?;
    let g = honest_flatten(&HonestSequence::from_table(cells), budget).map_err(err)?;
    let values = (0..count).map(|p| interval_out(&g.g(p))).collect();
    Ok((values, interval_out(g.fallback()), g.stage_bound(count)))
}

#[pymodule]
fn pyordcompact(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOrder>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(kb_compare, m)?)?;
    m.add_function(wrap_pyfunction!(pair, m)?)?;
    m.add_function(wrap_pyfunction!(unpair, m)?)?;
    m.add_function(wrap_pyfunction!(uncovered_point, m)?)?;
    m.add_function(wrap_pyfunction!(find_subcover, m)?)?;
    m.add_function(wrap_pyfunction!(find_gap, m)?)?;
    m.add_function(wrap_pyfunction!(decode_range, m)?)?;
    m.add_function(wrap_pyfunction!(flatten, m)?)?;
    Ok(())
}
