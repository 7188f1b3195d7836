//! Backtracking enumeration of closure and semiprime maps on a window,
//! and comparison with the family catalog.

use rayon::prelude::*;

use crate::catalog::{Catalog, ALIAS_MARGIN};
use crate::checks::{bound_consistent, check_axiom, closure_failure, Axiom};
use crate::error::{Error, Result};
use crate::field::FieldSet;
use crate::ops::{BoxOp, ClosureOp, CuspOp, RawMap, Zero};
use crate::ring::{CuspIdeal, DvrIdeal, Ideal, Lattice, Ring};

/// Largest window the enumerator accepts.
pub const MAX_IDEALS: usize = 40;

/// Partial assignments fanned out to worker threads.
const SPLIT_TARGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Enforce (d) during the search.
    pub semiprime: bool,
    /// Propagate the constancy lemmas as forced values.
    pub lemma_pruning: bool,
}

impl Options {
    pub const CLOSURE: Options = Options { semiprime: false, lemma_pruning: false };
    pub const SEMIPRIME: Options = Options { semiprime: true, lemma_pruning: false };
    pub const PRUNED: Options = Options { semiprime: true, lemma_pruning: true };
}

const FREE: usize = usize::MAX;

struct Search<'a> {
    lat: &'a Lattice,
    n: usize,
    sup: Vec<Vec<usize>>,
    /// `prod_in[(a*n + b)*n + c]`: ideal c contains ideal a times ideal b.
    prod_in: Vec<bool>,
    /// `(i, j, r)` with `ij = r` in the window, keyed by `max(i, j, r)`.
    triples: Vec<Vec<(usize, usize, usize)>>,
    pins: Vec<Option<usize>>,
    /// Forcing triggers for lemma pruning: on assigning `k`, when `f(k)`
    /// equals `target(k)`, every later index in the list is forced to it.
    triggers: Vec<Option<(Trigger, Vec<usize>)>>,
}

#[derive(Clone, Copy)]
enum Trigger {
    /// `f(k) = f(k-1)` on consecutive powers.
    SameAsPrevious,
    /// `f(k) = ` the given index.
    Equals(usize),
}

#[derive(Clone)]
struct State {
    f: Vec<usize>,
    forced: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(lat: &'a Lattice, opts: Options, pins: Vec<Option<usize>>) -> Self {
        let n = lat.len();
        let ring = lat.ring();
        let sup = (0..n).map(|k| (0..n).filter(|&j| lat.le(k, j)).collect()).collect();
        let mut prod_in = vec![false; n * n * n];
        if opts.semiprime {
            for a in 0..n {
                for b in a..n {
                    let ab = ring.product_unchecked(lat.ideal(a), lat.ideal(b));
                    for c in 0..n {
                        let v = ring.contains_unchecked(lat.ideal(c), &ab);
                        prod_in[(a * n + b) * n + c] = v;
                        prod_in[(b * n + a) * n + c] = v;
                    }
                }
            }
        }
        let mut triples = vec![Vec::new(); n];
        if opts.semiprime {
            for i in 0..n {
                for j in i..n {
                    if let Some(r) = lat.product(i, j) {
                        triples[i.max(j).max(r)].push((i, j, r));
                    }
                }
            }
        }
        let mut triggers = vec![None; n];
        if opts.lemma_pruning {
            match ring {
                Ring::Dvr => {
                    let powers: Vec<usize> = (0..n).filter(|&k| k != lat.zero()).collect();
                    for w in powers.windows(2) {
                        let later = powers.iter().copied().filter(|&x| x > w[1]).collect();
                        triggers[w[1]] = Some((Trigger::SameAsPrevious, later));
                    }
                }
                Ring::Cusp { .. } => {
                    for k in 0..n {
                        if let Ideal::Cusp(CuspIdeal::M(j2)) = lat.ideal(k) {
                            if *j2 >= 4 {
                                let mj = lat.index_of(&Ideal::Cusp(CuspIdeal::M(j2 - 2))).unwrap();
                                let later = (k + 1..n).filter(|&x| x != lat.zero() && lat.le(x, mj)).collect();
                                triggers[k] = Some((Trigger::Equals(mj), later));
                            }
                        }
                    }
                }
                Ring::Dedekind { .. } => {}
            }
        }
        Search { lat, n, sup, prod_in, triples, pins, triggers }
    }

    fn candidates(&self, st: &State, k: usize) -> Vec<usize> {
        let pin = self.pins[k];
        let forced = st.forced[k];
        self.sup[k]
            .iter()
            .copied()
            .filter(|&v| pin.map_or(true, |x| x == v) && forced.map_or(true, |x| x == v))
            .collect()
    }

    fn consistent(&self, f: &[usize], k: usize) -> bool {
        let v = f[k];
        if v != k && f[v] != v {
            return false;
        }
        for i in 0..k {
            if self.lat.le(k, i) && !self.lat.le(v, f[i]) {
                return false;
            }
        }
        let n = self.n;
        self.triples[k].iter().all(|&(i, j, r)| self.prod_in[(f[i] * n + f[j]) * n + f[r]])
    }

    /// Applies the lemma trigger at `k`; returns the indices newly forced,
    /// or `None` on a conflict.
    fn propagate(&self, st: &mut State, k: usize) -> Option<Vec<usize>> {
        let Some((trigger, later)) = &self.triggers[k] else { return Some(Vec::new()) };
        let v = st.f[k];
        let fire = match trigger {
            Trigger::SameAsPrevious => v == st.f[k - 1],
            Trigger::Equals(t) => v == *t,
        };
        if !fire {
            return Some(Vec::new());
        }
        let mut set = Vec::new();
        for &x in later {
            match st.forced[x] {
                Some(y) if y != v => {
                    for &u in &set {
                        st.forced[u] = None;
                    }
                    return None;
                }
                Some(_) => {}
                None => {
                    st.forced[x] = Some(v);
                    set.push(x);
                }
            }
        }
        Some(set)
    }

    fn rec(&self, st: &mut State, k: usize, out: &mut Vec<Vec<usize>>, first_only: bool) {
        if k == self.n {
            out.push(st.f.clone());
            return;
        }
        for v in self.candidates(st, k) {
            st.f[k] = v;
            if self.consistent(&st.f, k) {
                if let Some(set) = self.propagate(st, k) {
                    self.rec(st, k + 1, out, first_only);
                    for u in set {
                        st.forced[u] = None;
                    }
                }
            }
            st.f[k] = FREE;
            if first_only && !out.is_empty() {
                return;
            }
        }
    }

    /// Partial states at the first depth with at least `SPLIT_TARGET` of them.
    fn split(&self) -> (usize, Vec<State>) {
        let mut level = vec![State { f: vec![FREE; self.n], forced: vec![None; self.n] }];
        let mut depth = 0;
        while depth < self.n && level.len() < SPLIT_TARGET {
            let mut next = Vec::new();
            for st in &level {
                for v in self.candidates(st, depth) {
                    let mut s = st.clone();
                    s.f[depth] = v;
                    if self.consistent(&s.f, depth) && self.propagate(&mut s, depth).is_some() {
                        next.push(s);
                    }
                }
            }
            level = next;
            depth += 1;
        }
        (depth, level)
    }

    fn run(&self) -> Vec<Vec<usize>> {
        let (depth, level) = self.split();
        level
            .into_par_iter()
            .map(|mut st| {
                let mut out = Vec::new();
                self.rec(&mut st, depth, &mut out, false);
                out
            })
            .flatten()
            .collect()
    }

    fn exists(&self) -> bool {
        let mut st = State { f: vec![FREE; self.n], forced: vec![None; self.n] };
        let mut out = Vec::new();
        self.rec(&mut st, 0, &mut out, true);
        !out.is_empty()
    }
}

/// Upper bound on the search space: the number of extensive maps.
pub fn search_estimate(lat: &Lattice) -> f64 {
    (0..lat.len()).map(|k| (0..lat.len()).filter(|&j| lat.le(k, j)).count() as f64).product()
}

fn guard(lat: &Lattice) -> Result<()> {
    if lat.len() > MAX_IDEALS {
        return Err(Error::WindowTooLarge { ideals: lat.len(), limit: MAX_IDEALS, estimate: search_estimate(lat) });
    }
    Ok(())
}

/// Every map on the window satisfying the selected axioms, as index
/// tables in lexicographic order. Each result is re-checked with the
/// axiom checkers.
pub fn enumerate(lat: &Lattice, opts: Options) -> Result<Vec<Vec<usize>>> {
    guard(lat)?;
    let mut found = Search::new(lat, opts, vec![None; lat.len()]).run();
    found.sort();
    for t in &found {
        let map = RawMap::from_indices(lat, t);
        let bad = closure_failure(lat, &map).or_else(|| {
            let d = check_axiom(lat, &map, Axiom::D);
            (opts.semiprime && !d.passed() && d.outcome != crate::checks::Outcome::NoInstances).then_some(d)
        });
        if let Some(r) = bad {
            return Err(Error::Invariant(format!("enumerated map fails ({}): {}", r.axiom, map.describe(lat))));
        }
    }
    Ok(found)
}

pub fn enumerate_closure_maps(lat: &Lattice) -> Result<Vec<RawMap>> {
    Ok(enumerate(lat, Options::CLOSURE)?.iter().map(|t| RawMap::from_indices(lat, t)).collect())
}

pub fn enumerate_semiprime(lat: &Lattice) -> Result<Vec<RawMap>> {
    Ok(enumerate(lat, Options::SEMIPRIME)?.iter().map(|t| RawMap::from_indices(lat, t)).collect())
}

/// All extensive maps filtered by the axiom checkers: the unpruned oracle
/// for tiny windows.
pub fn brute_force(lat: &Lattice, semiprime: bool) -> Result<Vec<Vec<usize>>> {
    if search_estimate(lat) > 1e6 {
        return Err(Error::WindowTooLarge { ideals: lat.len(), limit: lat.len(), estimate: search_estimate(lat) });
    }
    let n = lat.len();
    let sup: Vec<Vec<usize>> = (0..n).map(|k| (0..n).filter(|&j| lat.le(k, j)).collect()).collect();
    let mut out = Vec::new();
    let mut pos = vec![0usize; n];
    loop {
        let t: Vec<usize> = (0..n).map(|k| sup[k][pos[k]]).collect();
        let map = RawMap::from_indices(lat, &t);
        let ok = closure_failure(lat, &map).is_none()
            && (!semiprime || check_axiom(lat, &map, Axiom::D).witness.is_none());
        if ok {
            out.push(t);
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return Ok(out);
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < sup[k].len() {
                break;
            }
            pos[k] = 0;
        }
    }
}

/// Whether a semiprime map on `lat` is the restriction of a semiprime map
/// on the window widened by `extra`.
pub fn extends(lat: &Lattice, table: &[usize], extra: u32) -> bool {
    let big = Lattice::new(lat.window().widen(extra));
    let pins = big
        .ideals()
        .iter()
        .map(|i| lat.index_of(i).map(|k| big.index_of(lat.ideal(table[k])).unwrap()))
        .collect();
    Search::new(&big, Options::SEMIPRIME, pins).exists()
}

/// A found map with no catalog counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unmatched {
    pub table: Vec<usize>,
    pub description: String,
}

#[derive(Clone, Debug)]
pub struct ClassificationDiff {
    /// Found, uncatalogued, and extending past the window.
    pub unexpected: Vec<Unmatched>,
    /// Found, uncatalogued, but not extending: truncation artifacts.
    pub boundary_ambiguous: Vec<Unmatched>,
    /// Catalog classes never found.
    pub missing: Vec<ClosureOp>,
    pub aliased: Vec<(ClosureOp, ClosureOp)>,
}

impl ClassificationDiff {
    pub fn is_empty(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty()
    }
}

pub fn match_classification(lat: &Lattice, found: &[Vec<usize>]) -> ClassificationDiff {
    let cat = Catalog::new(lat);
    let found_set: std::collections::HashSet<&Vec<usize>> = found.iter().collect();
    let extra: Vec<&Vec<usize>> = found.iter().filter(|t| cat.lookup(t).is_none()).collect();
    let verdicts: Vec<bool> = extra.par_iter().map(|t| extends(lat, t, ALIAS_MARGIN)).collect();
    let mut diff = ClassificationDiff {
        unexpected: Vec::new(),
        boundary_ambiguous: Vec::new(),
        missing: cat
            .groups()
            .iter()
            .filter(|g| !found_set.contains(&g.table))
            .map(|g| g.representative().clone())
            .collect(),
        aliased: cat.aliased(),
    };
    for (t, ext) in extra.into_iter().zip(verdicts) {
        let u = Unmatched { table: t.clone(), description: RawMap::from_indices(lat, t).describe(lat) };
        if ext {
            diff.unexpected.push(u);
        } else {
            diff.boundary_ambiguous.push(u);
        }
    }
    diff
}

/// Semiprime maps outside the published families, valid over any prime
/// field: the constant-unit map on nonzero ideals, and the exceptional box
/// with `n = 2`, `m = 4`, `S = ∅`; each with the zero ideal closed or not.
pub fn documented_findings(lat: &Lattice) -> Vec<(String, Vec<usize>)> {
    let Ring::Cusp { p } = lat.ring() else { return Vec::new() };
    let mut out = Vec::new();
    let unit = lat.unit();
    for (name, zero_img) in [("const-unit(zero=closed)", lat.zero()), ("const-unit(zero=unit)", unit)] {
        let t = (0..lat.len()).map(|k| if k == lat.zero() { zero_img } else { unit }).collect();
        out.push((name.to_string(), t));
    }
    if lat.window().max() >= 4 {
        for (name, zero) in [("exc-box(n=2,S={},m=4,zero=closed)", Zero::Closed), ("exc-box(n=2,S={},m=4,zero=target)", Zero::ToTarget)] {
            let b = BoxOp::unchecked(p, 2, FieldSet::EMPTY, FieldSet::full(p), 4, zero, true);
            let op = ClosureOp::Cusp(CuspOp::BoundedBox(b));
            if let Some(t) = op.to_raw(lat).ok().and_then(|m| m.index_table(lat)) {
                out.push((name.to_string(), t));
            }
        }
    }
    out
}

/// A violated lemma instance: premise, and the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaViolation {
    pub lemma: &'static str,
    pub premise: String,
    pub map: String,
}

/// Checks the constancy and boundedness lemmas on every map. Premises are
/// only read where the lemma's conclusion is visible in the window: for
/// the cusp, `j + 2 <= D`. Boundedness is the window-consistent version,
/// since the window cannot see a bound propagate past its top degree.
pub fn check_lemmas(lat: &Lattice, maps: &[Vec<usize>]) -> (usize, Vec<LemmaViolation>) {
    let mut premises = 0;
    let mut out = Vec::new();
    let max = lat.window().max();
    for t in maps {
        let map = RawMap::from_indices(lat, t);
        let img = |i: Ideal| lat.index_of(&i).map(|k| t[k]);
        match lat.ring() {
            Ring::Dvr => {
                let f = |i: u32| img(Ideal::Dvr(DvrIdeal::Power(i))).unwrap();
                for m in 0..max {
                    if f(m) != f(m + 1) {
                        continue;
                    }
                    premises += 1;
                    let held = (0..=m).any(|j| {
                        let pj = lat.index_of(&Ideal::Dvr(DvrIdeal::Power(j))).unwrap();
                        (j..=max).all(|i| f(i) == pj)
                    });
                    if !held {
                        out.push(LemmaViolation {
                            lemma: "dvr-constancy",
                            premise: format!("f(P^{m}) = f(P^{})", m + 1),
                            map: map.describe(lat),
                        });
                    }
                }
            }
            Ring::Cusp { p } => {
                let m = |j: u32| img(Ideal::Cusp(CuspIdeal::M(j))).unwrap();
                let bounded = bound_consistent(lat, &map).is_some();
                let mut fired: Vec<(&'static str, String)> = Vec::new();
                for j in 2..=max.saturating_sub(2) {
                    if m(j + 2) == lat.index_of(&Ideal::Cusp(CuspIdeal::M(j))).unwrap() {
                        fired.push(("M_j = f(M_j+2)", format!("j={j}")));
                    }
                    if m(j) == m(j + 2) {
                        fired.push(("f(M_j) = f(M_j+2)", format!("j={j}")));
                    }
                    if m(j) == m(j + 1) {
                        fired.push(("f(M_j) = f(M_j+1)", format!("j={j}")));
                    }
                    if j >= 4 {
                        for b in 0..p {
                            if img(Ideal::Cusp(CuspIdeal::P(j - 2, b))).unwrap() == m(j) {
                                fired.push(("f(M_j) = f(P_j-2,b)", format!("j={j},b={b}")));
                            }
                        }
                    }
                }
                premises += fired.len();
                if !bounded {
                    for (lemma, premise) in fired {
                        out.push(LemmaViolation { lemma, premise, map: map.describe(lat) });
                    }
                }
            }
            Ring::Dedekind { .. } => {}
        }
    }
    (premises, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::DvrOp;
    use crate::ring::Window;

    fn tables(lat: &Lattice, ops: &[ClosureOp]) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = ops.iter().map(|o| o.to_raw(lat).unwrap().index_table(lat).unwrap()).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn dvr_two_matches_brute_force() {
        let lat = Lattice::new(Window::dvr(2).unwrap());
        for (opts, semi) in [(Options::CLOSURE, false), (Options::SEMIPRIME, true)] {
            assert_eq!(enumerate(&lat, opts).unwrap(), brute_force(&lat, semi).unwrap());
        }
        let semi = enumerate(&lat, Options::SEMIPRIME).unwrap();
        let fam: Vec<ClosureOp> = [DvrOp::Identity, DvrOp::F(0), DvrOp::F(1), DvrOp::F(2), DvrOp::G(0), DvrOp::G(1), DvrOp::G(2)]
            .into_iter()
            .map(ClosureOp::Dvr)
            .collect();
        assert_eq!(semi, tables(&lat, &fam));
        let closure = enumerate(&lat, Options::CLOSURE).unwrap();
        let jump = ClosureOp::Dvr(DvrOp::JumpG(2)).to_raw(&lat).unwrap().index_table(&lat).unwrap();
        assert!(closure.contains(&jump) && !semi.contains(&jump));
        assert_eq!((closure.len(), semi.len()), (8, 6));
    }

    #[test]
    fn pruning_is_neutral() {
        for w in [Window::dvr(8).unwrap(), Window::cusp(2, 5).unwrap(), Window::cusp(3, 4).unwrap()] {
            let lat = Lattice::new(w);
            assert_eq!(enumerate(&lat, Options::SEMIPRIME).unwrap(), enumerate(&lat, Options::PRUNED).unwrap());
        }
    }

    #[test]
    fn guard_refuses_large_windows() {
        let lat = Lattice::new(Window::cusp(3, 12).unwrap());
        assert!(matches!(enumerate(&lat, Options::SEMIPRIME), Err(Error::WindowTooLarge { .. })));
    }

    #[test]
    fn dvr_eight_diff_is_empty() {
        let lat = Lattice::new(Window::dvr(8).unwrap());
        let found = enumerate(&lat, Options::SEMIPRIME).unwrap();
        let diff = match_classification(&lat, &found);
        assert!(diff.is_empty() && diff.boundary_ambiguous.is_empty(), "{diff:?}");
        assert_eq!(found.len(), 18);
    }
}
