//! Exhaustive parameter sweeps of the operation families on a window.

use std::collections::HashMap;

use crate::field::FieldSet;
use crate::ops::{BoxOp, ClosureOp, CuspOp, DedekindOp, DvrOp, IntOp, PointOp, Zero};
use crate::ring::{Lattice, Ring, Window};

/// How far past the window bound parameters are swept so that operations
/// whose action is invisible in the window show up as aliases.
pub const ALIAS_MARGIN: u32 = 2;

pub fn int_ops(p: u32, max: u32) -> Vec<ClosureOp> {
    let mut out = Vec::new();
    for i in 2..=max {
        for s in FieldSet::all(p).filter(|s| !s.is_empty()) {
            for t in FieldSet::all(p) {
                out.push(ClosureOp::Cusp(CuspOp::IntUnbounded(IntOp::new(p, i, s, t).unwrap())));
            }
        }
    }
    out
}

pub fn point_ops(p: u32, max: u32, zero: Zero) -> Vec<ClosureOp> {
    (2..=max)
        .flat_map(|m| (0..p).map(move |a| ClosureOp::Cusp(CuspOp::BoundedPoint(PointOp::new(p, m, a, zero).unwrap()))))
        .collect()
}

/// Every strictly valid box with `m <= max`. The degenerate `(1,K,K,2)`
/// is included only when `degenerate` is set.
pub fn box_ops(p: u32, max: u32, zero: Zero, exceptional: bool, degenerate: bool) -> Vec<ClosureOp> {
    let mut out = Vec::new();
    let first = if degenerate { 1 } else { 2 };
    for m in 2..=max {
        for n in first..m {
            for s in FieldSet::all(p) {
                for t in FieldSet::all(p) {
                    if let Ok(b) = BoxOp::new(p, n, s, t, m, zero, exceptional) {
                        out.push(ClosureOp::Cusp(CuspOp::BoundedBox(b)));
                    }
                }
            }
        }
    }
    out
}

pub fn dvr_ops(max: u32) -> Vec<ClosureOp> {
    let mut out = vec![ClosureOp::Dvr(DvrOp::Identity)];
    out.extend((0..=max).map(|m| ClosureOp::Dvr(DvrOp::F(m))));
    out.extend((0..=max).map(|m| ClosureOp::Dvr(DvrOp::G(m))));
    out
}

pub fn dedekind_ops(primes: usize, max: u32) -> Vec<ClosureOp> {
    let choices: Vec<Option<u32>> = (0..=max).map(Some).chain([None]).collect();
    let mut vecs: Vec<Vec<Option<u32>>> = vec![vec![]];
    for _ in 0..primes {
        vecs = vecs
            .into_iter()
            .flat_map(|v| {
                choices.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(*c);
                    w
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for b in vecs {
        for z in [Zero::Closed, Zero::ToTarget] {
            if let Ok(op) = DedekindOp::new(b.clone(), z) {
                out.push(ClosureOp::Dedekind(op));
            }
        }
    }
    out
}

/// Every semiprime family member with parameters up to `max`: the
/// classification targets.
pub fn semiprime_family(ring: Ring, max: u32) -> Vec<ClosureOp> {
    match ring {
        Ring::Dvr => dvr_ops(max),
        Ring::Dedekind { primes } => dedekind_ops(primes, max),
        Ring::Cusp { p } => {
            let mut out = vec![ClosureOp::Cusp(CuspOp::Identity)];
            out.extend(int_ops(p, max));
            for z in [Zero::Closed, Zero::ToTarget] {
                out.extend(point_ops(p, max, z));
                out.extend(box_ops(p, max, z, false, true));
                out.extend(box_ops(p, max, z, true, false));
            }
            out
        }
    }
}

/// The closure-but-not-semiprime families (jump maps, single integral
/// closure).
pub fn non_semiprime_family(ring: Ring, max: u32) -> Vec<ClosureOp> {
    match ring {
        Ring::Dvr => (2..=max).map(|n| ClosureOp::Dvr(DvrOp::JumpG(n))).collect(),
        Ring::Dedekind { .. } => Vec::new(),
        Ring::Cusp { .. } => (2..=max).map(|i| ClosureOp::Cusp(CuspOp::IntSingle(i))).collect(),
    }
}

/// Family members sharing one window table.
#[derive(Clone, Debug)]
pub struct Group {
    pub table: Vec<usize>,
    /// Sorted by [`ClosureOp::sort_key`]; the first is the representative.
    pub ops: Vec<ClosureOp>,
}

impl Group {
    pub fn representative(&self) -> &ClosureOp {
        &self.ops[0]
    }
}

/// Semiprime family members with in-window tables, grouped by table.
#[derive(Clone, Debug)]
pub struct Catalog {
    window: Window,
    groups: Vec<Group>,
    by_table: HashMap<Vec<usize>, usize>,
}

impl Catalog {
    pub fn new(lat: &Lattice) -> Self {
        Catalog::from_ops(lat, semiprime_family(lat.ring(), lat.window().max() + ALIAS_MARGIN))
    }

    pub fn from_ops(lat: &Lattice, ops: Vec<ClosureOp>) -> Self {
        let mut by_table: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut groups: Vec<Group> = Vec::new();
        for op in ops {
            let Some(table) = op.to_raw(lat).ok().and_then(|m| m.index_table(lat)) else {
                continue;
            };
            match by_table.get(&table) {
                Some(&g) => groups[g].ops.push(op),
                None => {
                    by_table.insert(table.clone(), groups.len());
                    groups.push(Group { table, ops: vec![op] });
                }
            }
        }
        for g in &mut groups {
            g.ops.sort_by_key(|o| o.sort_key());
        }
        groups.sort_by_key(|g| g.ops[0].sort_key());
        let by_table = groups.iter().enumerate().map(|(k, g)| (g.table.clone(), k)).collect();
        Catalog { window: *lat.window(), groups, by_table }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn lookup(&self, table: &[usize]) -> Option<&Group> {
        self.by_table.get(table).map(|&k| &self.groups[k])
    }

    /// Pairs of distinct members that agree on the whole window.
    pub fn aliased(&self) -> Vec<(ClosureOp, ClosureOp)> {
        self.groups
            .iter()
            .flat_map(|g| g.ops[1..].iter().map(move |o| (g.ops[0].clone(), o.clone())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dvr_catalog_aliases_f_max_with_identity() {
        let lat = Lattice::new(Window::dvr(8).unwrap());
        let cat = Catalog::new(&lat);
        assert_eq!(cat.groups().len(), 18);
        let id = cat.lookup(&(0..lat.len()).collect::<Vec<_>>()).unwrap();
        assert!(id.representative().is_identity());
        assert!(id.ops.contains(&ClosureOp::Dvr(DvrOp::F(8))));
    }

    #[test]
    fn cusp_catalog_sizes() {
        let lat = Lattice::new(Window::cusp(2, 6).unwrap());
        assert_eq!(Catalog::new(&lat).groups().len(), 171);
    }
}
