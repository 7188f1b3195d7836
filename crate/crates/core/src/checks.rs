//! Axiom checkers (a)–(e) and boundedness on a window.

use std::fmt;

use crate::ops::RawMap;
use crate::ring::{Ideal, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Extensive: `I ⊆ f(I)`.
    A,
    /// Monotone.
    B,
    /// Idempotent.
    C,
    /// Semiprime: `f(I) f(J) ⊆ f(IJ)`.
    D,
    /// Prime: `b f(I) = f(bI)`.
    E,
    Bounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Every instance was out of the window; not a pass.
    NoInstances,
}

/// A concrete violation: the inputs, the computed values, and the
/// relation that should have held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inputs: Vec<Ideal>,
    pub values: Vec<Ideal>,
    pub relation: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub outcome: Outcome,
    pub checked: usize,
    pub skipped: usize,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    fn finish(axiom: Axiom, checked: usize, skipped: usize, witness: Option<Witness>) -> Self {
        let outcome = match (&witness, checked) {
            (Some(_), _) => Outcome::Fail,
            (None, 0) => Outcome::NoInstances,
            (None, _) => Outcome::Pass,
        };
        AxiomReport { axiom, outcome, checked, skipped, witness }
    }
}

/// Image indices cached for the fast path.
struct View<'a> {
    lat: &'a Lattice,
    map: &'a RawMap,
    idx: Vec<Option<usize>>,
}

impl<'a> View<'a> {
    fn new(lat: &'a Lattice, map: &'a RawMap) -> Self {
        let idx = map.images().iter().map(|i| lat.index_of(i)).collect();
        View { lat, map, idx }
    }

    fn img(&self, k: usize) -> &Ideal {
        self.map.image(k)
    }

    /// `f(y) ⊆ f(x)` style containment between two images.
    fn img_contains(&self, x: usize, y: usize) -> bool {
        match (self.idx[x], self.idx[y]) {
            (Some(a), Some(b)) => self.lat.le(b, a),
            _ => self.lat.ring().contains_unchecked(self.img(x), self.img(y)),
        }
    }
}

pub fn check_axiom(lat: &Lattice, map: &RawMap, which: Axiom) -> AxiomReport {
    let v = View::new(lat, map);
    let ring = lat.ring();
    let n = lat.len();
    let (mut checked, mut skipped) = (0, 0);
    match which {
        Axiom::A => {
            for k in 0..n {
                checked += 1;
                let ok = match v.idx[k] {
                    Some(a) => lat.le(k, a),
                    None => ring.contains_unchecked(v.img(k), lat.ideal(k)),
                };
                if !ok {
                    let w = Witness {
                        inputs: vec![lat.ideal(k).clone()],
                        values: vec![v.img(k).clone()],
                        relation: "I ⊆ f(I)",
                    };
                    return AxiomReport::finish(which, checked, skipped, Some(w));
                }
            }
        }
        Axiom::B => {
            for i in 0..n {
                for j in 0..n {
                    if i == j || !lat.le(j, i) {
                        continue;
                    }
                    checked += 1;
                    if !v.img_contains(i, j) {
                        let w = Witness {
                            inputs: vec![lat.ideal(i).clone(), lat.ideal(j).clone()],
                            values: vec![v.img(i).clone(), v.img(j).clone()],
                            relation: "J ⊆ I ⇒ f(J) ⊆ f(I)",
                        };
                        return AxiomReport::finish(which, checked, skipped, Some(w));
                    }
                }
            }
        }
        Axiom::C => {
            for k in 0..n {
                let Some(a) = v.idx[k] else {
                    skipped += 1;
                    continue;
                };
                checked += 1;
                if v.img(a) != v.img(k) {
                    let w = Witness {
                        inputs: vec![lat.ideal(k).clone()],
                        values: vec![v.img(k).clone(), v.img(a).clone()],
                        relation: "f(f(I)) = f(I)",
                    };
                    return AxiomReport::finish(which, checked, skipped, Some(w));
                }
            }
        }
        Axiom::D => {
            for i in 0..n {
                for j in i..n {
                    let Some(r) = lat.product(i, j) else {
                        skipped += 1;
                        continue;
                    };
                    checked += 1;
                    let ok = match (v.idx[i], v.idx[j], v.idx[r]) {
                        (Some(a), Some(b), Some(c)) => match lat.product(a, b) {
                            Some(ab) => lat.le(ab, c),
                            None => ring.contains_unchecked(v.img(r), &ring.product_unchecked(v.img(i), v.img(j))),
                        },
                        _ => ring.contains_unchecked(v.img(r), &ring.product_unchecked(v.img(i), v.img(j))),
                    };
                    if !ok {
                        let w = Witness {
                            inputs: vec![lat.ideal(i).clone(), lat.ideal(j).clone()],
                            values: vec![ring.product_unchecked(v.img(i), v.img(j)), v.img(r).clone()],
                            relation: "f(I) f(J) ⊆ f(IJ)",
                        };
                        return AxiomReport::finish(which, checked, skipped, Some(w));
                    }
                }
            }
        }
        Axiom::E => {
            for &b in lat.generators() {
                for k in 0..n {
                    let Some(r) = lat.product(b, k) else {
                        skipped += 1;
                        continue;
                    };
                    checked += 1;
                    let lhs = ring.product_unchecked(lat.ideal(b), v.img(k));
                    if &lhs != v.img(r) {
                        let w = Witness {
                            inputs: vec![lat.ideal(b).clone(), lat.ideal(k).clone()],
                            values: vec![lhs, v.img(r).clone()],
                            relation: "b f(I) = f(bI)",
                        };
                        return AxiomReport::finish(which, checked, skipped, Some(w));
                    }
                }
            }
        }
        Axiom::Bounded => {
            return match is_bounded(lat, map) {
                Some(_) => AxiomReport::finish(which, 1, 0, None),
                None => AxiomReport {
                    axiom: which,
                    outcome: Outcome::Fail,
                    checked: 1,
                    skipped: 0,
                    witness: None,
                },
            }
        }
    }
    AxiomReport::finish(which, checked, skipped, None)
}

impl Witness {
    /// Recomputes the violation from scratch.
    pub fn recheck(&self, axiom: Axiom, lat: &Lattice, map: &RawMap) -> bool {
        let ring = lat.ring();
        let f = |i: &Ideal| map.lookup(lat, i).cloned();
        match (axiom, self.inputs.as_slice()) {
            (Axiom::A, [i]) => f(i).map_or(false, |fi| !ring.contains_unchecked(&fi, i)),
            (Axiom::B, [i, j]) => match (f(i), f(j)) {
                (Some(fi), Some(fj)) => ring.contains_unchecked(i, j) && !ring.contains_unchecked(&fi, &fj),
                _ => false,
            },
            (Axiom::C, [i]) => match f(i) {
                Some(fi) => f(&fi).map_or(false, |ffi| ffi != fi),
                None => false,
            },
            (Axiom::D, [i, j]) => match (f(i), f(j), lat.window().product(i, j).ok().and_then(|r| f(&r))) {
                (Some(fi), Some(fj), Some(fr)) => !ring.contains_unchecked(&fr, &ring.product_unchecked(&fi, &fj)),
                _ => false,
            },
            (Axiom::E, [b, i]) => match (f(i), lat.window().product(b, i).ok().and_then(|r| f(&r))) {
                (Some(fi), Some(fr)) => ring.product_unchecked(b, &fi) != fr,
                _ => false,
            },
            _ => false,
        }
    }
}

/// (a), (b), (c) in that order.
pub fn is_closure(lat: &Lattice, map: &RawMap) -> [AxiomReport; 3] {
    [Axiom::A, Axiom::B, Axiom::C].map(|a| check_axiom(lat, map, a))
}

/// First failing closure axiom, if any.
pub fn closure_failure(lat: &Lattice, map: &RawMap) -> Option<AxiomReport> {
    is_closure(lat, map).into_iter().find(|r| !r.passed())
}

/// Semiprime on the window: closure and (d).
pub fn is_semiprime(lat: &Lattice, map: &RawMap) -> bool {
    closure_failure(lat, map).is_none() && check_axiom(lat, map, Axiom::D).passed()
}

/// An in-window `I₀` such that every nonzero `J ⊆ I₀` in the window maps
/// to `I₀`, with at least two such `J`. `I₀` must lie strictly below the
/// window bound, otherwise the top degree absorbs trivially.
pub fn is_bounded(lat: &Lattice, map: &RawMap) -> Option<Ideal> {
    absorbing(lat, map, false)
}

/// Like [`is_bounded`] but also accepting a bound of top degree: the
/// window does not rule boundedness out.
pub fn bound_consistent(lat: &Lattice, map: &RawMap) -> Option<Ideal> {
    absorbing(lat, map, true)
}

fn absorbing(lat: &Lattice, map: &RawMap, top: bool) -> Option<Ideal> {
    let zero = lat.zero();
    let max = lat.window().max();
    let inner = |k: usize| lat.ring().degree(lat.ideal(k)).is_some_and(|d| d < max || top);
    (0..lat.len()).filter(|&k| k != zero && inner(k)).find_map(|k| {
        let below: Vec<usize> = (0..lat.len()).filter(|&j| j != zero && lat.le(j, k)).collect();
        let absorbs = below.len() >= 2 && below.iter().all(|&j| map.image(j) == lat.ideal(k));
        absorbs.then(|| lat.ideal(k).clone())
    })
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::A => "a",
            Axiom::B => "b",
            Axiom::C => "c",
            Axiom::D => "d",
            Axiom::E => "e",
            Axiom::Bounded => "bounded",
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ins: Vec<String> = self.inputs.iter().map(|i| i.to_string()).collect();
        let vals: Vec<String> = self.values.iter().map(|i| i.to_string()).collect();
        write!(f, "inputs=({}) values=({}) violates {}", ins.join(","), vals.join(","), self.relation)
    }
}
