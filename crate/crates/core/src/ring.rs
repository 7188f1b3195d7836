//! Ideal lattices of the three ring families and their truncation windows.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_prime, MAX_P};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DvrIdeal {
    /// `Power(0)` is the unit ideal.
    Power(u32),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DedekindIdeal {
    /// Exponent of each maximal ideal; all zeros is the unit ideal.
    Exponents(Vec<u32>),
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CuspIdeal {
    Unit,
    /// `(t^i, t^{i+1})`, `i >= 2`.
    M(u32),
    /// `(t^i + a t^{i+1})`, `i >= 2`, `a` in F_p.
    P(u32, u32),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ideal {
    Dvr(DvrIdeal),
    Dedekind(DedekindIdeal),
    Cusp(CuspIdeal),
}

/// A ring instance: the family plus its fixed parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Dvr,
    Dedekind { primes: usize },
    Cusp { p: u32 },
}

impl CuspIdeal {
    pub fn degree(self) -> Option<u32> {
        match self {
            CuspIdeal::Unit => Some(0),
            CuspIdeal::M(i) | CuspIdeal::P(i, _) => Some(i),
            CuspIdeal::Zero => None,
        }
    }

    /// `J ⊆ self`.
    pub fn contains(self, j: CuspIdeal) -> bool {
        use CuspIdeal::*;
        match (self, j) {
            (_, Zero) | (Unit, _) => true,
            (Zero, _) | (_, Unit) => false,
            (M(i), M(k)) | (M(i), P(k, _)) => i <= k,
            (P(i, _), M(k)) => k >= i + 2,
            (P(i, a), P(k, b)) => (i == k && a == b) || k >= i + 2,
        }
    }

    pub fn product(self, j: CuspIdeal, p: u32) -> CuspIdeal {
        use CuspIdeal::*;
        match (self, j) {
            (Zero, _) | (_, Zero) => Zero,
            (Unit, x) | (x, Unit) => x,
            (P(i, a), P(k, b)) => P(i + k, (a + b) % p),
            (M(i), M(k)) | (M(i), P(k, _)) | (P(i, _), M(k)) => M(i + k),
        }
    }

    pub fn integral_closure(self) -> CuspIdeal {
        match self {
            CuspIdeal::P(i, _) => CuspIdeal::M(i),
            x => x,
        }
    }
}

impl Ring {
    pub fn dedekind(primes: usize) -> Self {
        Ring::Dedekind { primes }
    }

    pub fn cusp(p: u32) -> Self {
        Ring::Cusp { p }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Ring::Dvr => "dvr",
            Ring::Dedekind { .. } => "ded",
            Ring::Cusp { .. } => "cusp",
        }
    }

    pub fn unit(&self) -> Ideal {
        match *self {
            Ring::Dvr => Ideal::Dvr(DvrIdeal::Power(0)),
            Ring::Dedekind { primes } => Ideal::Dedekind(DedekindIdeal::Exponents(vec![0; primes])),
            Ring::Cusp { .. } => Ideal::Cusp(CuspIdeal::Unit),
        }
    }

    pub fn zero(&self) -> Ideal {
        match self {
            Ring::Dvr => Ideal::Dvr(DvrIdeal::Zero),
            Ring::Dedekind { .. } => Ideal::Dedekind(DedekindIdeal::Zero),
            Ring::Cusp { .. } => Ideal::Cusp(CuspIdeal::Zero),
        }
    }

    /// Checks that `i` is a well-formed ideal of this instance.
    pub fn check(&self, i: &Ideal) -> Result<()> {
        let ok = match (self, i) {
            (Ring::Dvr, Ideal::Dvr(_)) => true,
            (Ring::Dedekind { primes }, Ideal::Dedekind(d)) => match d {
                DedekindIdeal::Exponents(v) => v.len() == *primes,
                DedekindIdeal::Zero => true,
            },
            (Ring::Cusp { p }, Ideal::Cusp(c)) => match *c {
                CuspIdeal::M(i) => i >= 2,
                CuspIdeal::P(i, a) => i >= 2 && a < *p,
                _ => true,
            },
            _ => return Err(Error::MixedInstances(self.to_string(), i.to_string())),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidIdeal(i.to_string(), self.to_string()))
        }
    }

    /// `J ⊆ I`.
    pub fn contains(&self, i: &Ideal, j: &Ideal) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.contains_unchecked(i, j))
    }

    pub(crate) fn contains_unchecked(&self, i: &Ideal, j: &Ideal) -> bool {
        match (i, j) {
            (Ideal::Dvr(a), Ideal::Dvr(b)) => match (a, b) {
                (_, DvrIdeal::Zero) => true,
                (DvrIdeal::Zero, _) => false,
                (DvrIdeal::Power(x), DvrIdeal::Power(y)) => x <= y,
            },
            (Ideal::Dedekind(a), Ideal::Dedekind(b)) => match (a, b) {
                (_, DedekindIdeal::Zero) => true,
                (DedekindIdeal::Zero, _) => false,
                (DedekindIdeal::Exponents(x), DedekindIdeal::Exponents(y)) => {
                    x.iter().zip(y).all(|(u, v)| u <= v)
                }
            },
            (Ideal::Cusp(a), Ideal::Cusp(b)) => a.contains(*b),
            _ => false,
        }
    }

    /// Product without any window bound.
    pub fn product(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.product_unchecked(i, j))
    }

    pub(crate) fn product_unchecked(&self, i: &Ideal, j: &Ideal) -> Ideal {
        match (i, j) {
            (Ideal::Dvr(a), Ideal::Dvr(b)) => Ideal::Dvr(match (a, b) {
                (DvrIdeal::Power(x), DvrIdeal::Power(y)) => DvrIdeal::Power(x + y),
                _ => DvrIdeal::Zero,
            }),
            (Ideal::Dedekind(a), Ideal::Dedekind(b)) => Ideal::Dedekind(match (a, b) {
                (DedekindIdeal::Exponents(x), DedekindIdeal::Exponents(y)) => {
                    DedekindIdeal::Exponents(x.iter().zip(y).map(|(u, v)| u + v).collect())
                }
                _ => DedekindIdeal::Zero,
            }),
            (Ideal::Cusp(a), Ideal::Cusp(b)) => {
                let Ring::Cusp { p } = self else { unreachable!() };
                Ideal::Cusp(a.product(*b, *p))
            }
            _ => unreachable!("checked by caller"),
        }
    }

    /// Largest ideal contained in both.
    pub fn intersect(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        self.check(i)?;
        self.check(j)?;
        if self.contains_unchecked(i, j) {
            return Ok(j.clone());
        }
        if self.contains_unchecked(j, i) {
            return Ok(i.clone());
        }
        Ok(match (i, j) {
            (Ideal::Dvr(_), _) => unreachable!("the DVR lattice is a chain"),
            (Ideal::Dedekind(DedekindIdeal::Exponents(x)), Ideal::Dedekind(DedekindIdeal::Exponents(y))) => {
                Ideal::Dedekind(DedekindIdeal::Exponents(
                    x.iter().zip(y).map(|(u, v)| *u.max(v)).collect(),
                ))
            }
            (Ideal::Cusp(a), Ideal::Cusp(b)) => {
                let Ring::Cusp { p } = *self else { unreachable!() };
                Ideal::Cusp(cusp_meet(*a, *b, p)?)
            }
            _ => unreachable!("comparable whenever one side is zero"),
        })
    }

    pub fn integral_closure(&self, i: &Ideal) -> Result<Ideal> {
        self.check(i)?;
        Ok(match i {
            Ideal::Cusp(c) => Ideal::Cusp(c.integral_closure()),
            x => x.clone(),
        })
    }

    /// Exponent/degree used for window membership; `None` for zero.
    pub fn degree(&self, i: &Ideal) -> Option<u32> {
        match i {
            Ideal::Dvr(DvrIdeal::Power(n)) => Some(*n),
            Ideal::Dedekind(DedekindIdeal::Exponents(v)) => Some(v.iter().copied().max().unwrap_or(0)),
            Ideal::Cusp(c) => c.degree(),
            _ => None,
        }
    }

    /// Length of `I/J` as an R-module (equal to its dimension over the
    /// residue field).
    pub fn colength(&self, j: &Ideal, i: &Ideal) -> Result<u32> {
        self.check(i)?;
        self.check(j)?;
        if !self.contains_unchecked(i, j) {
            return Err(Error::Usage(format!("{j} is not contained in {i}")));
        }
        let (Some(_), Some(_)) = (self.degree(i), self.degree(j)) else {
            return Err(Error::Usage("colength needs nonzero ideals".into()));
        };
        Ok(match (i, j) {
            (Ideal::Dvr(DvrIdeal::Power(a)), Ideal::Dvr(DvrIdeal::Power(b))) => b - a,
            (
                Ideal::Dedekind(DedekindIdeal::Exponents(a)),
                Ideal::Dedekind(DedekindIdeal::Exponents(b)),
            ) => a.iter().zip(b).map(|(x, y)| y - x).sum(),
            (Ideal::Cusp(a), Ideal::Cusp(b)) => {
                let Ring::Cusp { p } = *self else { unreachable!() };
                let n = b.degree().unwrap() + 3;
                (to_subspace(*a, p, n)?.rank() - to_subspace(*b, p, n)?.rank()) as u32
            }
            _ => unreachable!(),
        })
    }
}

/// Coefficient vectors of the generators of `i`.
fn generators(i: CuspIdeal, len: usize) -> Vec<Vec<u32>> {
    let mono = |d: u32, a: u32| {
        let mut v = vec![0; len];
        if (d as usize) < len {
            v[d as usize] = 1;
        }
        if a != 0 && (d as usize + 1) < len {
            v[d as usize + 1] = a;
        }
        v
    };
    match i {
        CuspIdeal::Unit => vec![mono(0, 0)],
        CuspIdeal::M(d) => vec![mono(d, 0), mono(d + 1, 0)],
        CuspIdeal::P(d, a) => vec![mono(d, a)],
        CuspIdeal::Zero => vec![],
    }
}

/// Greatest common lower bound among the listed cusp ideals, found from
/// containment alone. Anything below both has degree at most `max + 3`.
fn cusp_meet(a: CuspIdeal, b: CuspIdeal, p: u32) -> Result<CuspIdeal> {
    let top = a.degree().unwrap_or(0).max(b.degree().unwrap_or(0)) + 3;
    let mut lower = vec![CuspIdeal::Zero];
    for d in 2..=top {
        lower.push(CuspIdeal::M(d));
        lower.extend((0..p).map(|x| CuspIdeal::P(d, x)));
    }
    lower.retain(|c| a.contains(*c) && b.contains(*c));
    lower
        .iter()
        .copied()
        .find(|c| lower.iter().all(|o| c.contains(*o)))
        .ok_or_else(|| Error::Invariant(format!("no meet for {a:?} and {b:?}")))
}

/// Truncated span of `g t^s`, `s ∈ {0,2,3,…}`, over the generators `g` of `i`.
pub fn to_subspace(i: CuspIdeal, p: u32, d: u32) -> Result<Subspace> {
    if let Some(deg) = i.degree() {
        if deg + 2 > d && i != CuspIdeal::Unit {
            return Err(Error::Usage(format!("truncation degree {d} too small for {}", Ideal::Cusp(i))));
        }
    }
    let len = d as usize + 1;
    let mut rows = Vec::new();
    for g in generators(i, len) {
        for s in std::iter::once(0).chain(2..len) {
            let mut v = vec![0; len];
            for (k, &x) in g.iter().enumerate() {
                if k + s < len {
                    v[k + s] = x;
                }
            }
            rows.push(v);
        }
    }
    Ok(Subspace::span(p, len, rows))
}

/// Recognises the subspace of a cusp ideal. Fails with the offending
/// basis when the subspace has none of the expected shapes.
pub fn from_subspace(s: &Subspace) -> Result<CuspIdeal> {
    let len = s.len();
    let piv = s.pivots();
    let bad = || Error::Invariant(format!("subspace is not a cusp ideal:\n{s}"));
    let Some(&lo) = piv.first() else {
        return Ok(CuspIdeal::Zero);
    };
    let candidate = if lo == 0 {
        CuspIdeal::Unit
    } else if lo < 2 {
        return Err(bad());
    } else if piv.get(1) == Some(&(lo + 1)) {
        CuspIdeal::M(lo as u32)
    } else {
        let a = s.basis()[0].get(lo + 1).copied().unwrap_or(0);
        CuspIdeal::P(lo as u32, a)
    };
    if candidate.degree().unwrap() as usize + 2 > len - 1 && candidate != CuspIdeal::Unit {
        return Err(bad());
    }
    if to_subspace(candidate, s.p(), (len - 1) as u32)? == *s {
        Ok(candidate)
    } else {
        Err(bad())
    }
}

/// A finite truncation of an ideal lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    ring: Ring,
    max: u32,
}

impl Window {
    pub fn new(ring: Ring, max: u32) -> Result<Self> {
        match ring {
            Ring::Dvr if max < 1 => return Err(Error::InvalidWindow("DVR window needs max >= 1".into())),
            Ring::Dedekind { primes } if primes == 0 || primes > 8 => {
                return Err(Error::InvalidWindow(format!("need 1..=8 primes, got {primes}")))
            }
            Ring::Dedekind { .. } if max < 1 => {
                return Err(Error::InvalidWindow("Dedekind window needs max >= 1".into()))
            }
            Ring::Cusp { p } if !is_prime(p) || p > MAX_P => {
                return Err(Error::InvalidWindow(format!("characteristic {p} is not a supported prime")))
            }
            Ring::Cusp { .. } if max < 4 => {
                return Err(Error::InvalidWindow(format!("cusp window needs max degree >= 4, got {max}")))
            }
            _ => {}
        }
        Ok(Window { ring, max })
    }

    pub fn dvr(max: u32) -> Result<Self> {
        Window::new(Ring::Dvr, max)
    }

    pub fn dedekind(primes: usize, max: u32) -> Result<Self> {
        Window::new(Ring::Dedekind { primes }, max)
    }

    pub fn cusp(p: u32, max: u32) -> Result<Self> {
        Window::new(Ring::Cusp { p }, max)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max(&self) -> u32 {
        self.max
    }

    /// Same ring, larger bound.
    pub fn widen(&self, extra: u32) -> Window {
        Window { ring: self.ring, max: self.max + extra }
    }

    pub fn holds(&self, i: &Ideal) -> bool {
        self.ring.check(i).is_ok() && self.ring.degree(i).map_or(true, |d| d <= self.max)
    }

    /// Product, or [`Error::Overflow`] if it leaves the window.
    pub fn product(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        let r = self.ring.product(i, j)?;
        if self.holds(&r) {
            Ok(r)
        } else {
            Err(Error::Overflow(r.to_string(), self.max))
        }
    }

    /// Unit first, then by increasing degree (M before P, P by field
    /// element; Dedekind vectors by total exponent then lexicographically),
    /// zero last.
    pub fn enumerate_ideals(&self) -> Vec<Ideal> {
        let mut out = Vec::new();
        match self.ring {
            Ring::Dvr => {
                out.extend((0..=self.max).map(|n| Ideal::Dvr(DvrIdeal::Power(n))));
            }
            Ring::Dedekind { primes } => {
                let mut vecs: Vec<Vec<u32>> = vec![vec![]];
                for _ in 0..primes {
                    vecs = vecs
                        .into_iter()
                        .flat_map(|v| {
                            (0..=self.max).map(move |e| {
                                let mut w = v.clone();
                                w.push(e);
                                w
                            })
                        })
                        .collect();
                }
                vecs.sort_by_key(|v| (v.iter().sum::<u32>(), v.clone()));
                out.extend(vecs.into_iter().map(|v| Ideal::Dedekind(DedekindIdeal::Exponents(v))));
            }
            Ring::Cusp { p } => {
                out.push(Ideal::Cusp(CuspIdeal::Unit));
                for d in 2..=self.max {
                    out.push(Ideal::Cusp(CuspIdeal::M(d)));
                    out.extend((0..p).map(|a| Ideal::Cusp(CuspIdeal::P(d, a))));
                }
            }
        }
        out.push(self.ring.zero());
        out
    }

    /// Principal generators used for the prime-operation check: `(b) = P`
    /// for a DVR, each maximal ideal for Dedekind, `t^i + a t^{i+1}` for
    /// the cusp.
    pub fn principal_generators(&self) -> Vec<Ideal> {
        match self.ring {
            Ring::Dvr => vec![Ideal::Dvr(DvrIdeal::Power(1))],
            Ring::Dedekind { primes } => (0..primes)
                .map(|l| {
                    let mut v = vec![0; primes];
                    v[l] = 1;
                    Ideal::Dedekind(DedekindIdeal::Exponents(v))
                })
                .collect(),
            Ring::Cusp { p } => (2..=self.max)
                .flat_map(|d| (0..p).map(move |a| Ideal::Cusp(CuspIdeal::P(d, a))))
                .collect(),
        }
    }
}

/// A window with its ideals indexed and the containment and product
/// tables precomputed.
#[derive(Clone, Debug)]
pub struct Lattice {
    window: Window,
    ideals: Vec<Ideal>,
    index: HashMap<Ideal, usize>,
    /// `contains[i][j]`: ideal `j` ⊆ ideal `i`.
    contains: Vec<Vec<bool>>,
    /// `None` when the product leaves the window.
    product: Vec<Vec<Option<usize>>>,
    generators: Vec<usize>,
}

impl Lattice {
    pub fn new(window: Window) -> Self {
        let ring = window.ring();
        let ideals = window.enumerate_ideals();
        let index: HashMap<Ideal, usize> = ideals.iter().cloned().enumerate().map(|(k, i)| (i, k)).collect();
        let contains = ideals
            .iter()
            .map(|a| ideals.iter().map(|b| ring.contains_unchecked(a, b)).collect())
            .collect();
        let product = ideals
            .iter()
            .map(|a| {
                ideals
                    .iter()
                    .map(|b| index.get(&ring.product_unchecked(a, b)).copied())
                    .collect()
            })
            .collect();
        let generators = window.principal_generators().iter().map(|g| index[g]).collect();
        Lattice { window, ideals, index, contains, product, generators }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn ring(&self) -> Ring {
        self.window.ring()
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideal(&self, k: usize) -> &Ideal {
        &self.ideals[k]
    }

    pub fn index_of(&self, i: &Ideal) -> Option<usize> {
        self.index.get(i).copied()
    }

    /// Ideal `j` ⊆ ideal `i`.
    pub fn le(&self, j: usize, i: usize) -> bool {
        self.contains[i][j]
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.product[i][j]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn zero(&self) -> usize {
        self.ideals.len() - 1
    }

    /// Covering pairs `(i, j)`: `j ⊊ i` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.le(j, i)
                    && !(0..n).any(|k| k != i && k != j && self.le(k, i) && self.le(j, k))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub(crate) fn prime_name(l: usize) -> String {
    match l {
        0 => "P".into(),
        1 => "Q".into(),
        _ => format!("P{l}"),
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Dvr => f.write_str("dvr"),
            Ring::Dedekind { primes } => write!(f, "ded(lambda={primes})"),
            Ring::Cusp { p } => write!(f, "cusp(p={p})"),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Dvr(DvrIdeal::Power(0)) => f.write_str("R"),
            Ideal::Dvr(DvrIdeal::Power(1)) => f.write_str("P"),
            Ideal::Dvr(DvrIdeal::Power(n)) => write!(f, "P^{n}"),
            Ideal::Dvr(DvrIdeal::Zero) => f.write_str("0"),
            Ideal::Dedekind(DedekindIdeal::Exponents(v)) => {
                if v.iter().all(|&e| e == 0) {
                    return f.write_str("R");
                }
                let mut first = true;
                for (l, &e) in v.iter().enumerate().filter(|(_, e)| **e > 0) {
                    if !first {
                        f.write_str("*")?;
                    }
                    first = false;
                    f.write_str(&prime_name(l))?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
                Ok(())
            }
            Ideal::Dedekind(DedekindIdeal::Zero) => f.write_str("0"),
            Ideal::Cusp(CuspIdeal::Unit) => f.write_str("R"),
            Ideal::Cusp(CuspIdeal::M(i)) => write!(f, "M({i})"),
            Ideal::Cusp(CuspIdeal::P(i, a)) => write!(f, "P({i},{a})"),
            Ideal::Cusp(CuspIdeal::Zero) => f.write_str("0"),
        }
    }
}
