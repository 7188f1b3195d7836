//! Classification of composed tables, act structure, exceptional
//! operations and prime scans.

use std::collections::HashSet;

use crate::catalog::{box_ops, dedekind_ops, dvr_ops, int_ops, point_ops, Catalog};
use crate::checks::{check_axiom, closure_failure, is_bounded, Axiom, AxiomReport, Witness};
use crate::error::{Error, Result};
use crate::field::FieldSet;
use crate::ops::{compose, BoxOp, ClosureOp, CuspOp, PointOp, RawMap, Zero};
use crate::ring::{CuspIdeal, Ideal, Lattice, Ring};

#[derive(Clone, Debug)]
pub enum Classified {
    Op { op: ClosureOp, aliases: Vec<ClosureOp> },
    NotClosure(AxiomReport),
    NotSemiprime(AxiomReport),
    UnknownInWindow(RawMap),
}

impl Classified {
    pub fn op(&self) -> Option<&ClosureOp> {
        match self {
            Classified::Op { op, .. } => Some(op),
            _ => None,
        }
    }

    /// Failed closure or semiprime axiom.
    pub fn is_failure(&self) -> bool {
        matches!(self, Classified::NotClosure(_) | Classified::NotSemiprime(_))
    }

    pub fn describe(&self) -> String {
        match self {
            Classified::Op { op, .. } => op.to_string(),
            Classified::NotClosure(r) => format!("not-closure({}: {})", r.axiom, r.witness.as_ref().unwrap()),
            Classified::NotSemiprime(r) => format!("not-semiprime({})", r.witness.as_ref().unwrap()),
            Classified::UnknownInWindow(_) => "unknown-in-window".into(),
        }
    }
}

pub fn classify(lat: &Lattice, cat: &Catalog, map: &RawMap) -> Classified {
    if let Some(r) = closure_failure(lat, map) {
        if r.witness.is_some() {
            return Classified::NotClosure(r);
        }
    }
    let d = check_axiom(lat, map, Axiom::D);
    if d.witness.is_some() {
        return Classified::NotSemiprime(d);
    }
    match map.index_table(lat).and_then(|t| cat.lookup(&t)) {
        Some(g) => Classified::Op { op: g.ops[0].clone(), aliases: g.ops[1..].to_vec() },
        None => Classified::UnknownInWindow(map.clone()),
    }
}

/// `table(f ∘ g)` by index, when every image stays in the window.
pub fn compose_tables(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&k| f[k]).collect()
}

/// The two submonoids and their members on the window. Exceptional
/// operations are left out of both, as is the degenerate-box pair unless
/// it is the only member of its kind.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub m0: Vec<ClosureOp>,
    pub mf: Vec<ClosureOp>,
}

pub fn decomposition(ring: Ring, max: u32) -> Decomposition {
    let id = ClosureOp::identity(ring);
    let (mut m0, mut mf) = (vec![id.clone()], vec![id]);
    let ops: Vec<ClosureOp> = match ring {
        Ring::Dvr => dvr_ops(max).into_iter().skip(1).collect(),
        Ring::Dedekind { primes } => dedekind_ops(primes, max).into_iter().filter(|o| !o.is_identity()).collect(),
        Ring::Cusp { p } => {
            let mut v = int_ops(p, max);
            for z in [Zero::Closed, Zero::ToTarget] {
                v.extend(point_ops(p, max, z));
                v.extend(box_ops(p, max, z, false, true));
            }
            v
        }
    };
    for op in ops {
        if op.fixes_zero() {
            m0.push(op);
        } else {
            mf.push(op);
        }
    }
    Decomposition { m0, mf }
}

#[derive(Clone, Debug)]
pub struct PairFailure {
    pub left: ClosureOp,
    pub right: ClosureOp,
    pub got: String,
}

#[derive(Clone, Debug)]
pub struct ClosureCheck {
    pub pairs: usize,
    pub failures: usize,
    pub examples: Vec<PairFailure>,
}

impl ClosureCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.pairs > 0
    }
}

#[derive(Clone, Debug)]
pub struct ActReport {
    pub m0_size: usize,
    pub mf_size: usize,
    /// `M₀ ∘ M₀ ⊆ M₀`.
    pub m0_closed: ClosureCheck,
    /// `M_f ∘ M_f ⊆ M_f`.
    pub mf_closed: ClosureCheck,
    /// `M₀ ∘ (M_f \ {e}) ⊆ M_f`.
    pub left_act: ClosureCheck,
    /// Violations of `δ(st,a) = δ(s,δ(t,a))` or `δ(e,a) = a`.
    pub act_identity_failures: usize,
    /// A `g ∘ f` (g in M_f, f in M₀) that is not a closure operation.
    pub right_failure: Option<PairFailure>,
}

impl ActReport {
    pub fn holds(&self) -> bool {
        self.m0_closed.holds()
            && self.mf_closed.holds()
            && self.left_act.holds()
            && self.act_identity_failures == 0
            && self.right_failure.is_some()
    }
}

const MAX_EXAMPLES: usize = 5;

fn closure_check(
    lat: &Lattice,
    cat: &Catalog,
    left: &[(ClosureOp, Vec<usize>)],
    right: &[(ClosureOp, Vec<usize>)],
    target: &HashSet<Vec<usize>>,
) -> ClosureCheck {
    let mut c = ClosureCheck { pairs: 0, failures: 0, examples: Vec::new() };
    for (f, tf) in left {
        for (g, tg) in right {
            c.pairs += 1;
            let t = compose_tables(tf, tg);
            if !target.contains(&t) {
                c.failures += 1;
                if c.examples.len() < MAX_EXAMPLES {
                    let got = classify(lat, cat, &RawMap::from_indices(lat, &t)).describe();
                    c.examples.push(PairFailure { left: f.clone(), right: g.clone(), got });
                }
            }
        }
    }
    c
}

fn tabulate(lat: &Lattice, ops: &[ClosureOp]) -> Vec<(ClosureOp, Vec<usize>)> {
    ops.iter()
        .filter_map(|o| o.to_raw(lat).ok()?.index_table(lat).map(|t| (o.clone(), t)))
        .collect()
}

/// Checks the submonoid and left-act claims on every in-window pair and
/// looks for a right-act failure.
pub fn verify_act_structure(lat: &Lattice) -> ActReport {
    let cat = Catalog::new(lat);
    let dec = decomposition(lat.ring(), lat.window().max());
    let m0 = tabulate(lat, &dec.m0);
    let mf = tabulate(lat, &dec.mf);
    let mf_nontrivial: Vec<_> = mf.iter().filter(|(o, _)| !o.is_identity()).cloned().collect();
    let t0: HashSet<Vec<usize>> = m0.iter().map(|(_, t)| t.clone()).collect();
    let tf: HashSet<Vec<usize>> = mf.iter().map(|(_, t)| t.clone()).collect();

    let m0_closed = closure_check(lat, &cat, &m0, &m0, &t0);
    let mf_closed = closure_check(lat, &cat, &mf, &mf, &tf);
    let left_act = closure_check(lat, &cat, &m0, &mf_nontrivial, &tf);

    let mut act_identity_failures = 0;
    let id: Vec<usize> = (0..lat.len()).collect();
    for (_, a) in &mf_nontrivial {
        if compose_tables(&id, a) != *a {
            act_identity_failures += 1;
        }
        for (_, s) in &m0 {
            for (_, t) in &m0 {
                let st = compose_tables(s, t);
                if compose_tables(&st, a) != compose_tables(s, &compose_tables(t, a)) {
                    act_identity_failures += 1;
                }
            }
        }
    }

    // Box-after-point pairs first, then everything else.
    let preferred = |g: &ClosureOp, f: &ClosureOp| {
        matches!(
            (g, f),
            (ClosureOp::Cusp(CuspOp::BoundedBox(_)), ClosureOp::Cusp(CuspOp::BoundedPoint(_)))
        )
    };
    let mut right_failure = None;
    'outer: for pass in [true, false] {
        for (g, tg) in &mf_nontrivial {
            for (f, tf_) in &m0 {
                if pass && !preferred(g, f) {
                    continue;
                }
                let map = RawMap::from_indices(lat, &compose_tables(tg, tf_));
                if let Some(r) = closure_failure(lat, &map) {
                    if let Some(w) = r.witness {
                        right_failure = Some(PairFailure {
                            left: g.clone(),
                            right: f.clone(),
                            got: format!("not-closure({}: {w})", r.axiom),
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    ActReport {
        m0_size: m0.len(),
        mf_size: mf.len(),
        m0_closed,
        mf_closed,
        left_act,
        act_identity_failures,
        right_failure,
    }
}

/// Outcome of the exceptional test for one bounded operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalVerdict {
    /// The absorbing ideal `J`.
    pub bound: Ideal,
    /// `𝔞 = a_0 ⊆ a_1 ⊆ … ⊆ a_k = f(𝔞)` when exceptional.
    pub chain: Option<Vec<Ideal>>,
}

/// Conductor of the semigroup ⟨2,3⟩.
pub const CONDUCTOR: u32 = 2;

/// Tests whether a bounded cusp operation is exceptional: some ideal
/// incomparable to the bound `J` has a closure containing `J`, reached by
/// a composition series of length at least the conductor whose terms
/// after the first all contain `J`. Errors when the operation is not
/// bounded on the window.
pub fn is_exceptional(lat: &Lattice, op: &ClosureOp) -> Result<ExceptionalVerdict> {
    let Ring::Cusp { .. } = lat.ring() else {
        return Err(Error::Usage("exceptional operations are defined for the cusp ring".into()));
    };
    let map = op.to_raw(lat)?;
    let j = is_bounded(lat, &map).ok_or_else(|| Error::Usage(format!("{op} is not bounded on the window")))?;
    let jk = lat.index_of(&j).unwrap();
    let ring = lat.ring();
    let zero = lat.zero();
    for a in 0..lat.len() {
        if a == zero || lat.le(a, jk) || lat.le(jk, a) {
            continue;
        }
        let Some(fa) = lat.index_of(map.image(a)) else { continue };
        if !lat.le(jk, fa) {
            continue;
        }
        if ring.colength(lat.ideal(a), lat.ideal(fa))? < CONDUCTOR {
            continue;
        }
        if let Some(chain) = series(lat, a, fa, jk) {
            return Ok(ExceptionalVerdict {
                bound: j,
                chain: Some(chain.into_iter().map(|k| lat.ideal(k).clone()).collect()),
            });
        }
    }
    Ok(ExceptionalVerdict { bound: j, chain: None })
}

/// A maximal chain from `a` up to `top` through ideals containing `j`.
fn series(lat: &Lattice, a: usize, top: usize, j: usize) -> Option<Vec<usize>> {
    if a == top {
        return Some(vec![a]);
    }
    let ring = lat.ring();
    for x in 0..lat.len() {
        if x == a || !lat.le(a, x) || !lat.le(x, top) || !lat.le(j, x) {
            continue;
        }
        if ring.colength(lat.ideal(a), lat.ideal(x)).ok()? != 1 {
            continue;
        }
        if let Some(mut rest) = series(lat, x, top, j) {
            rest.insert(0, a);
            return Some(rest);
        }
    }
    None
}

/// One side of a non-commutativity pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonCommuting {
    pub f: ClosureOp,
    pub g: ClosureOp,
    pub at: Ideal,
    /// `(f∘g)(at)` and `(g∘f)(at)`.
    pub values: (Ideal, Ideal),
}

/// The two displayed non-commuting pairs, built from an exceptional box
/// `(n,S,T,m)`: the boxes at `m` and `m-1` evaluated at `M(m)`, and the box
/// at `m` against `f^f_{m-1,a}` evaluated at `M(m+1)`. Parameters are
/// canonicalised before construction.
pub fn noncommutativity_witnesses(
    lat: &Lattice,
    n: u32,
    s: FieldSet,
    t: FieldSet,
    m: u32,
    a: u32,
) -> Result<[NonCommuting; 2]> {
    let Ring::Cusp { p } = lat.ring() else {
        return Err(Error::Usage("non-commutativity witnesses live on the cusp ring".into()));
    };
    if m + 1 > lat.window().max() {
        return Err(Error::Usage(format!("window must reach degree {}", m + 1)));
    }
    let e1 = ClosureOp::Cusp(CuspOp::BoundedBox(BoxOp::canonical(p, n, s, t, m, Zero::Closed, true)?));
    let e2 = ClosureOp::Cusp(CuspOp::BoundedBox(BoxOp::canonical(p, n, s, t, m - 1, Zero::Closed, true)?));
    let pt = ClosureOp::Cusp(CuspOp::BoundedPoint(PointOp::new(p, m - 1, a, Zero::Closed)?));
    let eval = |f: &ClosureOp, g: &ClosureOp, at: Ideal| -> Result<NonCommuting> {
        let k = lat.index_of(&at).unwrap();
        let fg = compose(f, g, lat)?.image(k).clone();
        let gf = compose(g, f, lat)?.image(k).clone();
        Ok(NonCommuting { f: f.clone(), g: g.clone(), at, values: (fg, gf) })
    };
    Ok([
        eval(&e1, &e2, Ideal::Cusp(CuspIdeal::M(m)))?,
        eval(&e1, &pt, Ideal::Cusp(CuspIdeal::M(m + 1)))?,
    ])
}

#[derive(Clone, Debug)]
pub struct PrimeScan {
    /// Representatives passing (e) on the window generators.
    pub survivors: Vec<ClosureOp>,
    /// An (e) violation for every other semiprime class.
    pub witnesses: Vec<(ClosureOp, Witness)>,
}

pub fn prime_scan(lat: &Lattice) -> PrimeScan {
    let cat = Catalog::new(lat);
    let mut scan = PrimeScan { survivors: Vec::new(), witnesses: Vec::new() };
    for g in cat.groups() {
        let map = RawMap::from_indices(lat, &g.table);
        let r = check_axiom(lat, &map, Axiom::E);
        match r.witness {
            Some(w) => scan.witnesses.push((g.representative().clone(), w)),
            None if r.passed() => scan.survivors.push(g.representative().clone()),
            None => {}
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::DvrOp;
    use crate::ring::{DvrIdeal, Window};

    #[test]
    fn dvr_compositions() {
        let lat = Lattice::new(Window::dvr(6).unwrap());
        let cat = Catalog::new(&lat);
        let f = |m| ClosureOp::Dvr(DvrOp::F(m));
        let g = |m| ClosureOp::Dvr(DvrOp::G(m));
        assert_eq!(compose(&f(2), &f(5), &lat).unwrap(), f(2).to_raw(&lat).unwrap());
        assert_eq!(compose(&f(2), &g(5), &lat).unwrap(), g(2).to_raw(&lat).unwrap());
        let gf = compose(&g(5), &f(2), &lat).unwrap();
        assert_eq!(gf.image(lat.zero()), &Ideal::Dvr(DvrIdeal::Power(5)));
        match classify(&lat, &cat, &gf) {
            Classified::NotClosure(r) => {
                assert_eq!(r.axiom, Axiom::C);
                assert_eq!(r.witness.unwrap().inputs, vec![Ideal::Dvr(DvrIdeal::Zero)]);
            }
            other => panic!("{other:?}"),
        }
        assert!(classify(&lat, &cat, &RawMap::identity(&lat)).op().unwrap().is_identity());
    }

    #[test]
    fn int_composition_classifies() {
        let lat = Lattice::new(Window::cusp(2, 6).unwrap());
        let cat = Catalog::new(&lat);
        let a = crate::syntax::parse("cusp:int(i=2,S={0},T={})", lat.ring()).unwrap();
        let b = crate::syntax::parse("cusp:int(i=3,S={1},T={})", lat.ring()).unwrap();
        let got = classify(&lat, &cat, &compose(&a, &b, &lat).unwrap());
        assert_eq!(got.op().unwrap().to_string(), "cusp:int(i=2,S={0},T={1})");
    }

    #[test]
    fn exceptional_examples() {
        let lat = Lattice::new(Window::cusp(2, 8).unwrap());
        let r = lat.ring();
        let exc = crate::syntax::parse("cusp:fbox(n=2,S={0},T={0,1},m=6,zero=closed,exc=true)", r).unwrap();
        let v = is_exceptional(&lat, &exc).unwrap();
        assert_eq!(v.bound, Ideal::Cusp(CuspIdeal::M(6)));
        let chain: Vec<String> = v.chain.unwrap().iter().map(|i| i.to_string()).collect();
        assert_eq!(chain, ["P(5,0)", "M(5)", "M(4)"]);
        for text in ["cusp:fpoint(m=4,a=0,zero=closed)", "cusp:fbox(n=2,S={0},T={0,1},m=6,zero=closed,exc=false)"] {
            let op = crate::syntax::parse(text, r).unwrap();
            assert!(is_exceptional(&lat, &op).unwrap().chain.is_none(), "{text}");
        }
        let int = crate::syntax::parse("cusp:int(i=2,S={0},T={})", r).unwrap();
        assert!(is_exceptional(&lat, &int).is_err());
    }

    #[test]
    fn noncommuting_pairs() {
        let lat = Lattice::new(Window::cusp(2, 8).unwrap());
        let [a, b] = noncommutativity_witnesses(&lat, 2, FieldSet::single(0), FieldSet::EMPTY, 6, 0).unwrap();
        let m = |i| Ideal::Cusp(CuspIdeal::M(i));
        assert_eq!(a.values, (m(4), m(5)));
        assert_eq!(b.values, (m(4), m(5)));
    }

    #[test]
    fn dvr_prime_scan() {
        let lat = Lattice::new(Window::dvr(8).unwrap());
        let s = prime_scan(&lat);
        assert_eq!(s.survivors, vec![ClosureOp::Dvr(DvrOp::Identity)]);
        assert_eq!(s.witnesses.len(), 17);
    }
}
