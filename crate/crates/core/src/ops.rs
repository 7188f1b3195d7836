//! Closure-operation families as values, and their action on ideals.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSet;
use crate::ring::{CuspIdeal, DedekindIdeal, DvrIdeal, Ideal, Lattice, Ring, Window};

/// What an operation does with the zero ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zero {
    Closed,
    /// Zero goes to the bound ideal (`g` families).
    ToTarget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DvrOp {
    Identity,
    /// `P^i ↦ P^min(i,m)`, zero fixed.
    F(u32),
    /// As `F(m)` but zero goes to `P^m`.
    G(u32),
    /// Closure operation with a finite jump: `P^i ↦ R` for `i < n`,
    /// `P^n` for `i >= n`. Not semiprime.
    JumpG(u32),
}

/// Identity Λ-box: per-prime bounds (`None` = ∞) and zero behaviour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DedekindOp {
    bounds: Vec<Option<u32>>,
    zero: Zero,
}

impl DedekindOp {
    pub fn new(bounds: Vec<Option<u32>>, zero: Zero) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidOp("a box needs at least one prime".into()));
        }
        if zero == Zero::ToTarget && bounds.iter().any(Option::is_none) {
            return Err(Error::InvalidOp(
                "zero=box needs every bound finite; an infinite bound makes the map non-monotone at zero".into(),
            ));
        }
        Ok(DedekindOp { bounds, zero })
    }

    pub fn identity(primes: usize) -> Self {
        DedekindOp { bounds: vec![None; primes], zero: Zero::Closed }
    }

    pub fn bounds(&self) -> &[Option<u32>] {
        &self.bounds
    }

    pub fn zero(&self) -> Zero {
        self.zero
    }

    pub fn is_identity(&self) -> bool {
        self.zero == Zero::Closed && self.bounds.iter().all(Option::is_none)
    }

    fn target(&self) -> Vec<u32> {
        self.bounds.iter().map(|b| b.expect("finite")).collect()
    }
}

/// `f^int_{i,S,T}`: unbounded semiprime operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntOp {
    p: u32,
    i: u32,
    s: FieldSet,
    t: FieldSet,
}

/// `f^f_{m,a}` / `g^f_{m,a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PointOp {
    p: u32,
    m: u32,
    a: u32,
    zero: Zero,
}

/// `f^f_{n,S,T,m}` / `g^f_{n,S,T,m}`, regular or exceptional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxOp {
    p: u32,
    n: u32,
    s: FieldSet,
    t: FieldSet,
    m: u32,
    zero: Zero,
    exceptional: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspOp {
    Identity,
    IntUnbounded(IntOp),
    /// `f^int_i`: collapses only the principal ideals of degree `i`. Not semiprime.
    IntSingle(u32),
    BoundedPoint(PointOp),
    BoundedBox(BoxOp),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ClosureOp {
    Dvr(DvrOp),
    Dedekind(DedekindOp),
    Cusp(CuspOp),
}

fn check_set(name: &str, s: FieldSet, p: u32) -> Result<()> {
    if s.within(p) {
        Ok(())
    } else {
        Err(Error::InvalidOp(format!("{name}={s} is not a subset of F_{p}")))
    }
}

impl IntOp {
    pub fn new(p: u32, i: u32, s: FieldSet, t: FieldSet) -> Result<Self> {
        check_set("S", s, p)?;
        check_set("T", t, p)?;
        if i < 2 || s.is_empty() {
            return Err(Error::InvalidOp(format!("int needs i >= 2 and S nonempty (i={i}, S={s})")));
        }
        Ok(IntOp { p, i, s, t })
    }

    pub fn params(&self) -> (u32, FieldSet, FieldSet) {
        (self.i, self.s, self.t)
    }
}

impl PointOp {
    pub fn new(p: u32, m: u32, a: u32, zero: Zero) -> Result<Self> {
        if m < 2 || a >= p {
            return Err(Error::InvalidOp(format!("fpoint needs m >= 2 and a in F_{p} (m={m}, a={a})")));
        }
        Ok(PointOp { p, m, a, zero })
    }

    pub fn params(&self) -> (u32, u32, Zero) {
        (self.m, self.a, self.zero)
    }

    pub fn with_zero(self, zero: Zero) -> Self {
        PointOp { zero, ..self }
    }
}

impl BoxOp {
    /// Strict constructor. Besides the displayed constraints it rejects
    /// parameter sets whose `S` or `T` is overridden by the collapse near
    /// `m`; such sets must be given as all of F_p (see [`BoxOp::canonical`]).
    ///
    /// `n = 1` is admitted only as the degenerate `(1, K, K, 2)`, the
    /// operation sending every nonzero nonunit ideal to `M(2)`.
    pub fn new(p: u32, n: u32, s: FieldSet, t: FieldSet, m: u32, zero: Zero, exceptional: bool) -> Result<Self> {
        check_set("S", s, p)?;
        check_set("T", t, p)?;
        let k = FieldSet::full(p);
        let err = |why: &str| Error::InvalidOp(format!("fbox(n={n},S={s},T={t},m={m},exc={exceptional}): {why}"));
        let bad = |why: &str| Err(err(why));
        if n == 1 {
            return if m == 2 && s == k && t == k && !exceptional {
                Ok(BoxOp { p, n, s, t, m, zero, exceptional })
            } else {
                bad("n = 1 is only the degenerate (1,K,K,2)")
            };
        }
        if n < 2 {
            return bad("n >= 2 required");
        }
        if s.is_empty() {
            return bad("S must be nonempty");
        }
        let need = |cond: bool, why: &str| if cond { Ok(()) } else { Err(err(why)) };
        if !exceptional {
            need(m > n, "regular box needs m-1 >= n")?;
            if m == n + 1 {
                need(s == k && t == k, "m = n+1 forces S = T = K")?;
            }
            if m == n + 2 {
                need(t == k, "m = n+2 forces T = K")?;
            }
        } else {
            need(m >= n + 2, "exceptional box needs m-2 >= n")?;
            if m == n + 2 {
                need(n == 2, "m = n+2 with n > 2 is not monotone at P(n-1,*)")?;
                need(t == k, "m = n+2 forces T = K")?;
            }
            if m == n + 3 {
                need(s == k, "m = n+3 forces S = K")?;
            }
            if m == n + 4 {
                need(t == k, "m = n+4 forces T = K")?;
            }
        }
        Ok(BoxOp { p, n, s, t, m, zero, exceptional })
    }

    /// Replaces `S`/`T` by all of F_p wherever the collapse near `m`
    /// overrides them, then constructs strictly.
    pub fn canonical(p: u32, n: u32, s: FieldSet, t: FieldSet, m: u32, zero: Zero, exceptional: bool) -> Result<Self> {
        let k = FieldSet::full(p);
        let (mut s, mut t) = (s, t);
        // Degrees whose principal ideals must collapse: m-1 for the regular
        // family; m-3 and m-1 for the exceptional one.
        let forced = |d: u32| {
            if exceptional {
                d + 3 == m || d + 1 == m
            } else {
                d + 1 >= m
            }
        };
        if forced(n) {
            s = k;
        }
        if forced(n + 1) {
            t = k;
        }
        BoxOp::new(p, n, s, t, m, zero, exceptional)
    }

    /// Skips every parameter constraint; for rules outside the family.
    pub(crate) fn unchecked(p: u32, n: u32, s: FieldSet, t: FieldSet, m: u32, zero: Zero, exceptional: bool) -> Self {
        BoxOp { p, n, s, t, m, zero, exceptional }
    }

    pub fn params(&self) -> (u32, FieldSet, FieldSet, u32, Zero, bool) {
        (self.n, self.s, self.t, self.m, self.zero, self.exceptional)
    }

    pub fn is_exceptional(&self) -> bool {
        self.exceptional
    }

    pub fn with_zero(self, zero: Zero) -> Self {
        BoxOp { zero, ..self }
    }
}

impl DvrOp {
    fn apply(&self, i: &DvrIdeal) -> DvrIdeal {
        use DvrIdeal::*;
        match (*self, i) {
            (DvrOp::Identity, x) => x.clone(),
            (DvrOp::F(m), Power(k)) | (DvrOp::G(m), Power(k)) => Power(*k.min(&m)),
            (DvrOp::F(_), Zero) => Zero,
            (DvrOp::G(m), Zero) => Power(m),
            (DvrOp::JumpG(n), Power(k)) => Power(if *k < n { 0 } else { n }),
            (DvrOp::JumpG(_), Zero) => Zero,
        }
    }
}

impl DedekindOp {
    fn apply(&self, i: &DedekindIdeal) -> DedekindIdeal {
        match i {
            DedekindIdeal::Exponents(v) => DedekindIdeal::Exponents(
                v.iter().zip(&self.bounds).map(|(&e, b)| b.map_or(e, |b| e.min(b))).collect(),
            ),
            DedekindIdeal::Zero => match self.zero {
                Zero::Closed => DedekindIdeal::Zero,
                Zero::ToTarget => DedekindIdeal::Exponents(self.target()),
            },
        }
    }
}

impl CuspOp {
    pub fn characteristic(&self) -> Option<u32> {
        match self {
            CuspOp::IntUnbounded(o) => Some(o.p),
            CuspOp::BoundedPoint(o) => Some(o.p),
            CuspOp::BoundedBox(o) => Some(o.p),
            _ => None,
        }
    }

    pub fn apply(&self, i: CuspIdeal) -> CuspIdeal {
        use CuspIdeal::*;
        match *self {
            CuspOp::Identity => i,
            CuspOp::IntSingle(d) => match i {
                P(k, _) if k == d => M(k),
                x => x,
            },
            CuspOp::IntUnbounded(IntOp { i: d, s, t, .. }) => match i {
                P(k, b) if (k == d && s.contains(b)) || (k == d + 1 && t.contains(b)) || k >= d + 2 => M(k),
                x => x,
            },
            CuspOp::BoundedPoint(PointOp { m, a, zero, .. }) => match i {
                Unit => Unit,
                Zero => match zero {
                    crate::ops::Zero::Closed => Zero,
                    crate::ops::Zero::ToTarget => P(m, a),
                },
                x if x.contains(P(m, a)) => x,
                P(k, _) if k + 1 == m => M(k),
                P(k, _) if k == m => M(m),
                M(k) | P(k, _) if k == m + 1 => M(m),
                _ => P(m, a),
            },
            CuspOp::BoundedBox(BoxOp { n, s, t, m, zero, exceptional, .. }) => {
                let k = match i {
                    Unit => return Unit,
                    Zero => {
                        return match zero {
                            crate::ops::Zero::Closed => Zero,
                            crate::ops::Zero::ToTarget => M(m),
                        }
                    }
                    M(k) | P(k, _) => k,
                };
                if k >= m {
                    return M(m);
                }
                if exceptional && k + 1 == m {
                    return M(m - 2);
                }
                match i {
                    P(k, b) if k >= n => {
                        let collapse = k + 1 == m
                            || (k == n && s.contains(b))
                            || (k == n + 1 && t.contains(b))
                            || k >= n + 2;
                        if collapse {
                            M(k)
                        } else {
                            i
                        }
                    }
                    x => x,
                }
            }
        }
    }
}

impl ClosureOp {
    pub fn identity(ring: Ring) -> Self {
        match ring {
            Ring::Dvr => ClosureOp::Dvr(DvrOp::Identity),
            Ring::Dedekind { primes } => ClosureOp::Dedekind(DedekindOp::identity(primes)),
            Ring::Cusp { .. } => ClosureOp::Cusp(CuspOp::Identity),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            ClosureOp::Dvr(o) => *o == DvrOp::Identity,
            ClosureOp::Dedekind(o) => o.is_identity(),
            ClosureOp::Cusp(o) => *o == CuspOp::Identity,
        }
    }

    /// Checks the operation belongs to `ring` and its parameters are valid.
    pub fn validate(&self, ring: Ring) -> Result<()> {
        let mismatch = || Err(Error::MixedInstances(ring.to_string(), self.to_string()));
        match (self, ring) {
            (ClosureOp::Dvr(DvrOp::JumpG(n)), Ring::Dvr) if *n < 2 => {
                Err(Error::InvalidOp(format!("jump({n}) needs n >= 2")))
            }
            (ClosureOp::Dvr(_), Ring::Dvr) => Ok(()),
            (ClosureOp::Dedekind(o), Ring::Dedekind { primes }) if o.bounds.len() == primes => Ok(()),
            (ClosureOp::Cusp(CuspOp::IntSingle(i)), Ring::Cusp { .. }) if *i < 2 => {
                Err(Error::InvalidOp(format!("intsingle({i}) needs i >= 2")))
            }
            (ClosureOp::Cusp(o), Ring::Cusp { p }) if o.characteristic().map_or(true, |q| q == p) => Ok(()),
            _ => mismatch(),
        }
    }

    /// Image of `i`.
    pub fn apply(&self, ring: Ring, i: &Ideal) -> Result<Ideal> {
        self.validate(ring)?;
        ring.check(i)?;
        Ok(self.apply_unchecked(i))
    }

    pub(crate) fn apply_unchecked(&self, i: &Ideal) -> Ideal {
        match (self, i) {
            (ClosureOp::Dvr(o), Ideal::Dvr(x)) => Ideal::Dvr(o.apply(x)),
            (ClosureOp::Dedekind(o), Ideal::Dedekind(x)) => Ideal::Dedekind(o.apply(x)),
            (ClosureOp::Cusp(o), Ideal::Cusp(x)) => Ideal::Cusp(o.apply(*x)),
            _ => unreachable!("validated"),
        }
    }

    /// Tabulates the operation over the window.
    pub fn to_raw(&self, lat: &Lattice) -> Result<RawMap> {
        self.validate(lat.ring())?;
        let images = lat.ideals().iter().map(|i| self.apply_unchecked(i)).collect();
        Ok(RawMap::new(*lat.window(), images))
    }

    /// Whether zero is fixed (the `M_0` side of the decomposition).
    pub fn fixes_zero(&self) -> bool {
        match self {
            ClosureOp::Dvr(DvrOp::G(_)) => false,
            ClosureOp::Dvr(_) => true,
            ClosureOp::Dedekind(o) => o.zero == Zero::Closed,
            ClosureOp::Cusp(CuspOp::BoundedPoint(o)) => o.zero == Zero::Closed,
            ClosureOp::Cusp(CuspOp::BoundedBox(o)) => o.zero == Zero::Closed,
            ClosureOp::Cusp(_) => true,
        }
    }

    /// Ordering key: family variant first, then parameters ascending.
    /// The smallest key is the canonical representative of an alias class.
    pub fn sort_key(&self) -> Vec<u64> {
        let z = |z: Zero| z as u64;
        let inf = |b: &Option<u32>| b.map_or(u64::MAX, |x| x as u64);
        match self {
            ClosureOp::Dvr(o) => match *o {
                DvrOp::Identity => vec![0],
                DvrOp::F(m) => vec![1, m as u64],
                DvrOp::G(m) => vec![2, m as u64],
                DvrOp::JumpG(n) => vec![3, n as u64],
            },
            ClosureOp::Dedekind(o) => {
                if o.is_identity() {
                    return vec![0];
                }
                let mut k = vec![1, z(o.zero)];
                k.extend(o.bounds.iter().map(|b| u64::MAX - inf(b)));
                k
            }
            ClosureOp::Cusp(o) => match *o {
                CuspOp::Identity => vec![0],
                CuspOp::IntUnbounded(IntOp { i, s, t, .. }) => vec![1, i as u64, s.bits(), t.bits()],
                CuspOp::IntSingle(i) => vec![2, i as u64],
                CuspOp::BoundedPoint(PointOp { m, a, zero, .. }) => vec![3, z(zero), m as u64, a as u64],
                CuspOp::BoundedBox(BoxOp { n, s, t, m, zero, exceptional, .. }) => {
                    vec![4, z(zero), exceptional as u64, m as u64, n as u64, s.bits(), t.bits()]
                }
            },
        }
    }
}

/// An explicit table `Ideal → Ideal` on a window, aligned with
/// [`Window::enumerate_ideals`]. Images may lie outside the window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawMap {
    window: Window,
    images: Vec<Ideal>,
}

impl RawMap {
    pub fn new(window: Window, images: Vec<Ideal>) -> Self {
        RawMap { window, images }
    }

    pub fn from_indices(lat: &Lattice, table: &[usize]) -> Self {
        RawMap::new(*lat.window(), table.iter().map(|&k| lat.ideal(k).clone()).collect())
    }

    pub fn identity(lat: &Lattice) -> Self {
        RawMap::new(*lat.window(), lat.ideals().to_vec())
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn images(&self) -> &[Ideal] {
        &self.images
    }

    pub fn image(&self, k: usize) -> &Ideal {
        &self.images[k]
    }

    /// Image indices when every image is in the window.
    pub fn index_table(&self, lat: &Lattice) -> Option<Vec<usize>> {
        self.images.iter().map(|i| lat.index_of(i)).collect()
    }

    /// Image of an arbitrary ideal, if it lies in the window.
    pub fn lookup(&self, lat: &Lattice, i: &Ideal) -> Option<&Ideal> {
        lat.index_of(i).map(|k| &self.images[k])
    }

    /// Pointwise `self ∘ other`. An image of `other` outside the window
    /// cannot be fed to `self`; that entry is `None`.
    pub fn compose(&self, other: &RawMap, lat: &Lattice) -> Option<RawMap> {
        let images = other
            .images
            .iter()
            .map(|i| self.lookup(lat, i).cloned())
            .collect::<Option<Vec<_>>>()?;
        Some(RawMap::new(self.window, images))
    }

    /// Non-identity entries, for display.
    pub fn moved(&self, lat: &Lattice) -> Vec<(Ideal, Ideal)> {
        lat.ideals()
            .iter()
            .zip(&self.images)
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    }

    pub fn describe(&self, lat: &Lattice) -> String {
        let moved = self.moved(lat);
        if moved.is_empty() {
            return "{identity}".into();
        }
        let parts: Vec<String> = moved.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// `f ∘ g` tabulated on the window.
pub fn compose(f: &ClosureOp, g: &ClosureOp, lat: &Lattice) -> Result<RawMap> {
    f.validate(lat.ring())?;
    g.validate(lat.ring())?;
    let images = lat.ideals().iter().map(|i| f.apply_unchecked(&g.apply_unchecked(i))).collect();
    Ok(RawMap::new(*lat.window(), images))
}

impl fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print(self))
    }
}
