//! Composition tables: every instantiable parameter tuple is composed,
//! classified and compared against the row that covers it.

use std::fmt;

use rayon::prelude::*;

use crate::catalog::{box_ops, dedekind_ops, int_ops, point_ops, Catalog};
use crate::error::{Error, Result};
use crate::field::FieldSet;
use crate::monoid::{classify, compose_tables};
use crate::ops::{BoxOp, ClosureOp, CuspOp, DedekindOp, DvrOp, IntOp, PointOp, RawMap, Zero};
use crate::ring::{Lattice, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    Dvr,
    Ded,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    L1,
    L2,
    L3a,
    L3b,
    L4a,
    L4b,
    L5a,
    L5b,
    L6a,
    L6b,
}

impl TableId {
    pub const CUSP: [TableId; 16] = [
        TableId::M1,
        TableId::M2,
        TableId::M3,
        TableId::M4,
        TableId::M5,
        TableId::M6,
        TableId::L1,
        TableId::L2,
        TableId::L3a,
        TableId::L3b,
        TableId::L4a,
        TableId::L4b,
        TableId::L5a,
        TableId::L5b,
        TableId::L6a,
        TableId::L6b,
    ];

    pub fn for_ring(ring: Ring) -> Vec<TableId> {
        match ring {
            Ring::Dvr => vec![TableId::Dvr],
            Ring::Dedekind { .. } => vec![TableId::Ded],
            Ring::Cusp { .. } => TableId::CUSP.to_vec(),
        }
    }

    pub fn parse(s: &str) -> Result<TableId> {
        let all = [TableId::Dvr, TableId::Ded].into_iter().chain(TableId::CUSP);
        all.into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown table `{s}`")))
    }

    /// Whether the table's rows are claimed for both composition orders.
    pub fn both_orders(self) -> bool {
        matches!(self, TableId::M1 | TableId::M2 | TableId::M3 | TableId::M4 | TableId::M5 | TableId::M6 | TableId::L1 | TableId::L2)
    }

    fn ring_ok(self, ring: Ring) -> bool {
        match self {
            TableId::Dvr => ring == Ring::Dvr,
            TableId::Ded => matches!(ring, Ring::Dedekind { .. }),
            _ => matches!(ring, Ring::Cusp { .. }),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableId::Dvr => "DVR",
            TableId::Ded => "DED",
            TableId::M1 => "M1",
            TableId::M2 => "M2",
            TableId::M3 => "M3",
            TableId::M4 => "M4",
            TableId::M5 => "M5",
            TableId::M6 => "M6",
            TableId::L1 => "L1",
            TableId::L2 => "L2",
            TableId::L3a => "L3a",
            TableId::L3b => "L3b",
            TableId::L4a => "L4a",
            TableId::L4b => "L4b",
            TableId::L5a => "L5a",
            TableId::L5b => "L5b",
            TableId::L6a => "L6a",
            TableId::L6b => "L6b",
        };
        f.write_str(s)
    }
}

/// `Forward` composes `f ∘ g` for the table's `(f, g)`; `Reverse` is `g ∘ f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Forward,
    Reverse,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Order::Forward { "fg" } else { "gf" })
    }
}

/// Right-hand side of a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Op(ClosureOp),
    /// "not a semiprime operation"
    Failure,
    /// The row's parameters do not name a valid operation.
    Invalid(String),
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Op(o) => write!(f, "{o}"),
            Expect::Failure => f.write_str("not-semiprime"),
            Expect::Invalid(why) => write!(f, "invalid({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFailure {
    pub left: ClosureOp,
    pub right: ClosureOp,
    pub expected: String,
    pub got: String,
}

/// Tally for one `(table, row, order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowRecord {
    pub table: TableId,
    /// 1-based, in the order the rows are listed.
    pub row: usize,
    pub order: Order,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<RowFailure>,
}

impl RowRecord {
    pub fn instantiable(&self) -> bool {
        self.instances > 0
    }

    pub fn holds(&self) -> bool {
        self.instances > 0 && self.failed == 0
    }
}

/// Two rows that both apply to one tuple but predict different tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub f: ClosureOp,
    pub g: ClosureOp,
    pub rows: Vec<(usize, String)>,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub table: TableId,
    pub rows: Vec<RowRecord>,
    /// Tuples no row covers.
    pub uncovered: usize,
    pub uncovered_example: Option<(ClosureOp, ClosureOp)>,
    pub overlaps: Vec<Overlap>,
}

impl TableReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds()) && self.overlaps.is_empty()
    }

    pub fn instances(&self) -> usize {
        self.rows.iter().map(|r| r.instances).sum()
    }
}

struct Cx {
    p: u32,
    k: FieldSet,
}

impl Cx {
    fn int(&self, i: u32, s: FieldSet, t: FieldSet) -> Expect {
        wrap(IntOp::new(self.p, i, s, t).map(CuspOp::IntUnbounded))
    }

    fn pt(&self, m: u32, a: u32, zero: Zero) -> Expect {
        wrap(PointOp::new(self.p, m, a, zero).map(CuspOp::BoundedPoint))
    }

    fn bx(&self, n: u32, s: FieldSet, t: FieldSet, m: u32, zero: Zero) -> Expect {
        wrap(BoxOp::canonical(self.p, n, s, t, m, zero, false).map(CuspOp::BoundedBox))
    }

    /// `BOX(n-1, K, K, n)`.
    fn collapse(&self, n: u32, zero: Zero) -> Expect {
        if n < 2 {
            return Expect::Invalid(format!("box at m={n}"));
        }
        self.bx(n - 1, self.k, self.k, n, zero)
    }
}

fn wrap(r: Result<CuspOp>) -> Expect {
    match r {
        Ok(op) => Expect::Op(ClosureOp::Cusp(op)),
        Err(e) => Expect::Invalid(e.to_string()),
    }
}

/// The `g`-version of a prediction.
fn gz(e: Expect) -> Expect {
    match e {
        Expect::Op(ClosureOp::Cusp(CuspOp::BoundedPoint(x))) => {
            Expect::Op(ClosureOp::Cusp(CuspOp::BoundedPoint(x.with_zero(Zero::ToTarget))))
        }
        Expect::Op(ClosureOp::Cusp(CuspOp::BoundedBox(x))) => {
            Expect::Op(ClosureOp::Cusp(CuspOp::BoundedBox(x.with_zero(Zero::ToTarget))))
        }
        other => other,
    }
}

fn int_params(op: &ClosureOp) -> (u32, FieldSet, FieldSet) {
    match op {
        ClosureOp::Cusp(CuspOp::IntUnbounded(x)) => x.params(),
        _ => unreachable!("table family mismatch"),
    }
}

fn pt_params(op: &ClosureOp) -> (u32, u32) {
    match op {
        ClosureOp::Cusp(CuspOp::BoundedPoint(x)) => {
            let (m, a, _) = x.params();
            (m, a)
        }
        _ => unreachable!("table family mismatch"),
    }
}

fn box_params(op: &ClosureOp) -> (u32, FieldSet, FieldSet, u32) {
    match op {
        ClosureOp::Cusp(CuspOp::BoundedBox(x)) => {
            let (n, s, t, m, _, _) = x.params();
            (n, s, t, m)
        }
        _ => unreachable!("table family mismatch"),
    }
}

type Rows = Vec<(bool, Expect)>;

fn rows_m1(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (m, s, t) = int_params(f);
    let (n, u, v) = int_params(g);
    let c = |i, s, t| cx.int(i, s, t);
    vec![
        (m + 2 <= n, c(m, s, t)),
        (m + 1 == n, c(m, s, t.union(u))),
        (m == n, c(m, s.union(u), t.union(v))),
        (n + 1 == m, c(n, u, v.union(s))),
        (n + 2 <= m, c(n, u, v)),
    ]
}

fn rows_m2(cx: &Cx, f: &ClosureOp, g: &ClosureOp, z: Zero) -> Rows {
    let (n, s, t, m) = box_params(f);
    let (l, u, v) = int_params(g);
    vec![
        (n + 1 <= m && m < l, cx.bx(n, s, t, m, z)),
        (n + 1 == l && l <= m, cx.bx(n, s, t.union(u), m, z)),
        (n == l && l + 1 <= m, cx.bx(n, s.union(u), t.union(v), m, z)),
        (l + 1 == n && n + 1 <= m, cx.bx(l, u, s.union(v), m, z)),
        (l + 1 < n && n + 1 <= m, cx.bx(l, u, v, m, z)),
    ]
}

fn rows_m3(cx: &Cx, f: &ClosureOp, g: &ClosureOp, z: Zero) -> Rows {
    let (m, a) = pt_params(f);
    let (l, u, v) = int_params(g);
    vec![
        (m < l || (m == l && !u.contains(a)) || (l + 1 == m && !v.contains(a)), cx.pt(m, a, z)),
        (m == l && u.contains(a), cx.bx(m - 1, cx.k, cx.k, m, z)),
        (l + 1 == m && v.contains(a), cx.bx(m - 1, u, cx.k, m, z)),
        (l + 1 < m, cx.bx(l, u, v, m, z)),
    ]
}

fn rows_m4(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (n, s, t, m) = box_params(f);
    let (l, u, v, k) = box_params(g);
    let z = Zero::Closed;
    vec![
        (n + 1 < m && n + 1 < l, cx.bx(n, s, t, m, z)),
        (n + 1 == l && l <= m && m < k, cx.bx(n, s, t.union(u), m, z)),
        (n + 1 == l && l + 1 <= k && k <= m, cx.bx(n, s, t.union(u), k, z)),
        (n == l && l + 1 < m && m < k, cx.bx(n, s.union(u), t.union(v), m, z)),
        (n == l && l + 1 < k && k <= m, cx.bx(n, s.union(u), t.union(v), k, z)),
        (l + 1 == n && n + 1 <= m && m < k, cx.bx(l, u, s.union(v), m, z)),
        (l + 1 == n && n < k && k <= m, cx.bx(n, u, s.union(v), k, z)),
        (l + 1 < m && l + 1 < k, cx.bx(l, u, v, k, z)),
    ]
}

fn rows_m5(cx: &Cx, f: &ClosureOp, g: &ClosureOp, z: Zero) -> Rows {
    let (n, s, t, m) = box_params(f);
    let (l, a) = pt_params(g);
    let ac = FieldSet::single(a).complement(cx.p);
    vec![
        (m <= l, cx.bx(n, s, t, m, z)),
        (n + 1 < l && l <= m, cx.bx(n, s, t, l, z)),
        (n + 1 == l && l <= m, cx.bx(n, cx.k, t.union(ac), l, z)),
        (n == l && l + 1 <= m, cx.collapse(n, z)),
        (l < n, cx.pt(l, a, z)),
    ]
}

fn rows_m6(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (n, a) = pt_params(f);
    let (m, b) = pt_params(g);
    let z = Zero::Closed;
    vec![
        (n + 1 < m, cx.pt(n, a, z)),
        (m <= n && n <= m + 1, cx.collapse(n, z)),
        (n + 1 == m, cx.collapse(m, z)),
        (m + 1 < n, cx.pt(m, b, z)),
    ]
}

fn rows_l1(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (n, s, t, m) = box_params(f);
    let (l, u, v) = int_params(g);
    let z = Zero::ToTarget;
    vec![
        (n + 1 <= m && n + 1 <= l, cx.bx(n, s, t, m, z)),
        (n + 1 == l && l <= m, cx.bx(n, s, t.union(u), m, z)),
        (n == l && l + 1 <= m, cx.bx(n, s.union(u), t.union(v), m, z)),
        (l + 1 == n && n + 1 <= m, cx.bx(l, u, s.union(v), m, z)),
        (l < n && n + 1 <= m, cx.bx(l, u, v, m, z)),
    ]
}

fn rows_l3a(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (n, s, t, m) = box_params(f);
    let (l, u, v, k) = box_params(g);
    let z = Zero::ToTarget;
    vec![
        (n + 1 < l && m <= k, cx.bx(n, s, t, m, z)),
        (n + 1 == l && l < m && m <= k, cx.bx(n, s, t.union(u), m, z)),
        (n == l && l + 1 <= m && m <= k, cx.bx(n, s.union(u), t.union(v), m, z)),
        (k < m, Expect::Failure),
    ]
}

/// `f` is the `f`-box `(l,U,V,k)` and `g` the `g`-box `(n,S,T,m)`.
fn rows_l3b(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (l, u, v, k) = box_params(f);
    let (n, s, t, m) = box_params(g);
    let z = Zero::ToTarget;
    vec![
        (n + 1 < l && m <= k, cx.bx(n, s, t, m, z)),
        (n + 1 == l && l < m && m <= k, cx.bx(n, s, t.union(u), m, z)),
        (n + 1 == l && l <= k && k < m, cx.bx(n, s, t.union(u), k, z)),
        (n == l && l + 1 <= m && m <= k, cx.bx(n, s.union(u), t.union(v), m, z)),
        (n == l && l < k && k <= m, cx.bx(n, s.union(u), t.union(v), k, z)),
        (l + 1 == n && n < m && m <= k, cx.bx(l, u, v.union(s), m, z)),
        (l + 1 == n && n <= k && k < m, cx.bx(l, u, v.union(s), k, z)),
        (l + 1 < n && k <= m, cx.bx(l, u, v, k, z)),
    ]
}

fn rows_l4a(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (n, a) = pt_params(f);
    let (m, _) = pt_params(g);
    vec![(n + 1 < m, cx.pt(n, a, Zero::ToTarget)), (m <= n + 1, Expect::Failure)]
}

/// `f` is the `f`-point `(m,b)` and `g` the `g`-point `(n,a)`.
fn rows_l4b(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (m, b) = pt_params(f);
    let (n, a) = pt_params(g);
    let z = Zero::ToTarget;
    vec![
        (n + 1 < m, cx.pt(n, a, z)),
        (m <= n && n <= m + 1, cx.collapse(n, z)),
        (n + 1 == m, cx.collapse(m, z)),
        (m + 1 < n, cx.pt(m, b, z)),
    ]
}

fn rows_l5a(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (n, s, t, m) = box_params(f);
    let (l, _) = pt_params(g);
    vec![(m <= l, cx.bx(n, s, t, m, Zero::ToTarget)), (l < m, Expect::Failure)]
}

fn rows_l6a(cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (l, a) = pt_params(f);
    let (n, _, _, _) = box_params(g);
    vec![(l < n, cx.pt(l, a, Zero::ToTarget)), (l >= n, Expect::Failure)]
}

fn min_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

fn rows_dvr(f: &ClosureOp, g: &ClosureOp) -> Rows {
    let param = |o: &ClosureOp| match o {
        ClosureOp::Dvr(DvrOp::F(m)) => (*m, false),
        ClosureOp::Dvr(DvrOp::G(m)) => (*m, true),
        _ => unreachable!("table family mismatch"),
    };
    let ((a, ag), (b, bg)) = (param(f), param(g));
    let op = |o| Expect::Op(ClosureOp::Dvr(o));
    vec![
        (!ag && !bg, op(DvrOp::F(a.min(b)))),
        (ag && bg, op(DvrOp::G(a.min(b)))),
        (!ag && bg, op(DvrOp::G(a.min(b)))),
        (ag && !bg && a > b, Expect::Failure),
    ]
}

fn rows_ded(f: &ClosureOp, g: &ClosureOp) -> Rows {
    let (ClosureOp::Dedekind(b), ClosureOp::Dedekind(c)) = (f, g) else { unreachable!("table family mismatch") };
    let meet: Vec<Option<u32>> = b.bounds().iter().zip(c.bounds()).map(|(x, y)| min_bound(*x, *y)).collect();
    let op = |z| match DedekindOp::new(meet.clone(), z) {
        Ok(o) => Expect::Op(ClosureOp::Dedekind(o)),
        Err(e) => Expect::Invalid(e.to_string()),
    };
    let (bg, cg) = (b.zero() == Zero::ToTarget, c.zero() == Zero::ToTarget);
    vec![
        (!bg && !cg, op(Zero::Closed)),
        (bg && cg, op(Zero::ToTarget)),
        (!bg && cg, op(Zero::ToTarget)),
        (bg && !cg && meet != b.bounds(), Expect::Failure),
    ]
}

/// Left and right operand families of a table.
fn families(table: TableId, lat: &Lattice) -> (Vec<ClosureOp>, Vec<ClosureOp>) {
    let max = lat.window().max();
    match lat.ring() {
        Ring::Dvr => {
            let fg: Vec<ClosureOp> = (0..=max)
                .map(|m| ClosureOp::Dvr(DvrOp::F(m)))
                .chain((0..=max).map(|m| ClosureOp::Dvr(DvrOp::G(m))))
                .collect();
            (fg.clone(), fg)
        }
        Ring::Dedekind { primes } => {
            let ops = dedekind_ops(primes, max);
            (ops.clone(), ops)
        }
        Ring::Cusp { p } => {
            let ints = int_ops(p, max);
            let pts = point_ops(p, max, Zero::Closed);
            let gpts = point_ops(p, max, Zero::ToTarget);
            let boxes = box_ops(p, max, Zero::Closed, false, false);
            let gboxes = box_ops(p, max, Zero::ToTarget, false, false);
            match table {
                TableId::M1 => (ints.clone(), ints),
                TableId::M2 => (boxes, ints),
                TableId::M3 => (pts, ints),
                TableId::M4 => (boxes.clone(), boxes),
                TableId::M5 => (boxes, pts),
                TableId::M6 => (pts.clone(), pts),
                TableId::L1 => (gboxes, ints),
                TableId::L2 => (gpts, ints),
                TableId::L3a => (gboxes, boxes),
                TableId::L3b => (boxes, gboxes),
                TableId::L4a => (gpts, pts),
                TableId::L4b => (pts, gpts),
                TableId::L5a => (gboxes, pts),
                TableId::L5b => (pts, gboxes),
                TableId::L6a => (gpts, boxes),
                TableId::L6b => (boxes, gpts),
                TableId::Dvr | TableId::Ded => unreachable!(),
            }
        }
    }
}

fn rows_for(table: TableId, cx: &Cx, f: &ClosureOp, g: &ClosureOp) -> Rows {
    let closed = |e: ClosureOp| match e {
        ClosureOp::Cusp(CuspOp::BoundedPoint(x)) => ClosureOp::Cusp(CuspOp::BoundedPoint(x.with_zero(Zero::Closed))),
        ClosureOp::Cusp(CuspOp::BoundedBox(x)) => ClosureOp::Cusp(CuspOp::BoundedBox(x.with_zero(Zero::Closed))),
        other => other,
    };
    let g_all = |r: Rows| r.into_iter().map(|(c, e)| (c, gz(e))).collect();
    match table {
        TableId::Dvr => rows_dvr(f, g),
        TableId::Ded => rows_ded(f, g),
        TableId::M1 => rows_m1(cx, f, g),
        TableId::M2 => rows_m2(cx, f, g, Zero::Closed),
        TableId::M3 => rows_m3(cx, f, g, Zero::Closed),
        TableId::M4 => rows_m4(cx, f, g),
        TableId::M5 => rows_m5(cx, f, g, Zero::Closed),
        TableId::M6 => rows_m6(cx, f, g),
        TableId::L1 => rows_l1(cx, f, g),
        TableId::L2 => g_all(rows_m3(cx, &closed(f.clone()), g, Zero::Closed)),
        TableId::L3a => rows_l3a(cx, f, g),
        TableId::L3b => rows_l3b(cx, f, g),
        TableId::L4a => rows_l4a(cx, f, g),
        TableId::L4b => rows_l4b(cx, f, g),
        TableId::L5a => rows_l5a(cx, f, g),
        TableId::L5b => g_all(rows_m5(cx, &closed(g.clone()), f, Zero::Closed)),
        TableId::L6a => rows_l6a(cx, f, g),
        TableId::L6b => g_all(rows_m5(cx, f, &closed(g.clone()), Zero::Closed)),
    }
}

/// Per-pair outcome, merged afterwards in input order.
#[derive(Default)]
struct Partial {
    tallies: Vec<[(usize, usize, Option<RowFailure>); 2]>,
    uncovered: usize,
    uncovered_example: Option<(ClosureOp, ClosureOp)>,
    overlaps: Vec<Overlap>,
}

/// Whether the composite fails an axiom, and its classification.
fn status_of(lat: &Lattice, cat: &Catalog, table: &[usize]) -> (bool, String) {
    let c = classify(lat, cat, &RawMap::from_indices(lat, table));
    (c.is_failure(), c.describe())
}

/// Checks one table on the lattice's window.
pub fn verify_table(lat: &Lattice, cat: &Catalog, table: TableId) -> Result<TableReport> {
    if !table.ring_ok(lat.ring()) {
        return Err(Error::Usage(format!("table {table} does not apply to {}", lat.ring())));
    }
    let p = match lat.ring() {
        Ring::Cusp { p } => p,
        _ => 2,
    };
    let cx = Cx { p, k: FieldSet::full(p) };
    let (left, right) = families(table, lat);
    let tab = |ops: &[ClosureOp]| -> Result<Vec<Vec<usize>>> {
        ops.iter()
            .map(|o| {
                o.to_raw(lat)?
                    .index_table(lat)
                    .ok_or_else(|| Error::Invariant(format!("{o} leaves the window")))
            })
            .collect()
    };
    let (lt, rt) = (tab(&left)?, tab(&right)?);
    let orders: &[Order] = if table.both_orders() { &[Order::Forward, Order::Reverse] } else { &[Order::Forward] };
    let nrows = left.first().zip(right.first()).map_or(0, |(f, g)| rows_for(table, &cx, f, g).len());

    let parts: Vec<Partial> = (0..left.len())
        .into_par_iter()
        .map(|a| {
            let mut part = Partial { tallies: vec![Default::default(); nrows], ..Default::default() };
            let f = &left[a];
            for (b, g) in right.iter().enumerate() {
                let rows = rows_for(table, &cx, f, g);
                let live: Vec<(usize, &Expect)> =
                    rows.iter().enumerate().filter(|(_, (c, _))| *c).map(|(k, (_, e))| (k, e)).collect();
                if live.is_empty() {
                    part.uncovered += orders.len();
                    part.uncovered_example.get_or_insert((f.clone(), g.clone()));
                    continue;
                }
                let predicted: Vec<Option<Vec<usize>>> = live
                    .iter()
                    .map(|(_, e)| match e {
                        Expect::Op(o) => o.to_raw(lat).ok().and_then(|m| m.index_table(lat)),
                        _ => None,
                    })
                    .collect();
                let distinct: std::collections::BTreeSet<String> = live.iter().map(|(_, e)| e.to_string()).collect();
                if distinct.len() > 1 {
                    let tables_differ = predicted.windows(2).any(|w| w[0] != w[1]);
                    if tables_differ {
                        part.overlaps.push(Overlap {
                            f: f.clone(),
                            g: g.clone(),
                            rows: live.iter().map(|(k, e)| (k + 1, e.to_string())).collect(),
                        });
                    }
                }
                for (oi, order) in orders.iter().enumerate() {
                    let composite = match order {
                        Order::Forward => compose_tables(&lt[a], &rt[b]),
                        Order::Reverse => compose_tables(&rt[b], &lt[a]),
                    };
                    let mut status: Option<(bool, String)> = None;
                    for ((k, e), pred) in live.iter().zip(&predicted) {
                        let ok = match e {
                            Expect::Op(_) => pred.as_ref() == Some(&composite),
                            Expect::Failure => status.get_or_insert_with(|| status_of(lat, cat, &composite)).0,
                            Expect::Invalid(_) => false,
                        };
                        let slot = &mut part.tallies[*k][oi];
                        if ok {
                            slot.0 += 1;
                        } else {
                            slot.1 += 1;
                            if slot.2.is_none() {
                                let got = status.get_or_insert_with(|| status_of(lat, cat, &composite)).1.clone();
                                let (l, r) = match order {
                                    Order::Forward => (f.clone(), g.clone()),
                                    Order::Reverse => (g.clone(), f.clone()),
                                };
                                slot.2 = Some(RowFailure { left: l, right: r, expected: e.to_string(), got });
                            }
                        }
                    }
                }
            }
            part
        })
        .collect();

    let mut rows: Vec<RowRecord> = Vec::new();
    for k in 0..nrows {
        for (oi, order) in orders.iter().enumerate() {
            let mut rec = RowRecord {
                table,
                row: k + 1,
                order: *order,
                instances: 0,
                passed: 0,
                failed: 0,
                first_failure: None,
            };
            for part in &parts {
                let (pa, fa, ex) = &part.tallies[k][oi];
                rec.passed += pa;
                rec.failed += fa;
                if rec.first_failure.is_none() {
                    rec.first_failure = ex.clone();
                }
            }
            rec.instances = rec.passed + rec.failed;
            rows.push(rec);
        }
    }
    let mut report = TableReport { table, rows, uncovered: 0, uncovered_example: None, overlaps: Vec::new() };
    for part in parts {
        report.uncovered += part.uncovered;
        if report.uncovered_example.is_none() {
            report.uncovered_example = part.uncovered_example;
        }
        report.overlaps.extend(part.overlaps);
    }
    Ok(report)
}

/// Every table for the lattice's ring.
pub fn verify_tables(lat: &Lattice) -> Result<Vec<TableReport>> {
    let cat = Catalog::new(lat);
    TableId::for_ring(lat.ring()).into_iter().map(|t| verify_table(lat, &cat, t)).collect()
}
