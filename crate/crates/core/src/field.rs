//! Subsets of the prime field F_p, stored as bitmasks.

use std::fmt;

/// Largest characteristic a [`FieldSet`] can hold.
pub const MAX_P: u32 = 61;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSet(u64);

impl FieldSet {
    pub const EMPTY: FieldSet = FieldSet(0);

    pub fn full(p: u32) -> Self {
        FieldSet((1u64 << p) - 1)
    }

    pub fn single(a: u32) -> Self {
        FieldSet(1u64 << a)
    }

    pub fn from_elems<I: IntoIterator<Item = u32>>(it: I) -> Self {
        FieldSet(it.into_iter().fold(0, |acc, a| acc | (1u64 << a)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, a: u32) -> bool {
        a < 64 && self.0 >> a & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        FieldSet(self.0 | other.0)
    }

    /// `K \ self` for K = F_p.
    pub fn complement(self, p: u32) -> Self {
        FieldSet(!self.0 & Self::full(p).0)
    }

    pub fn is_full(self, p: u32) -> bool {
        self == Self::full(p)
    }

    pub fn within(self, p: u32) -> bool {
        self.0 & !Self::full(p).0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..64u32).filter(move |&a| self.contains(a))
    }

    /// All 2^p subsets in increasing bitmask order.
    pub fn all(p: u32) -> impl Iterator<Item = FieldSet> {
        (0..(1u64 << p)).map(FieldSet)
    }
}

impl fmt::Display for FieldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, a) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
