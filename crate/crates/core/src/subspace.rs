//! Row-reduced subspaces of F_p[t]/(t^{N+1}).
//!
//! This is the linear-algebra oracle for the cusp ring: an ideal of
//! K[[t^2,t^3]] is represented by the span of its elements truncated at
//! degree N, and containment, products and intersections are computed by
//! Gaussian elimination without reference to the closed-form rules.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    len: usize,
    rows: Vec<Vec<u32>>,
}

fn inv(a: u32, p: u32) -> u32 {
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<u32>>, p: u32, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * s as u64 % p as u64) as u32;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c] as u64;
                for j in 0..rows[k].len() {
                    let sub = f * rows[r][j] as u64 % p as u64;
                    rows[k][j] = ((rows[k][j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

impl Subspace {
    /// Span of `vectors` (each of length `len`) over F_p.
    pub fn span(p: u32, len: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors
            .into_iter()
            .map(|mut v| {
                v.resize(len, 0);
                v.iter_mut().for_each(|x| *x %= p);
                v
            })
            .collect();
        rref(&mut rows, p, len);
        Subspace { p, len, rows }
    }

    pub fn zero(p: u32, len: usize) -> Self {
        Subspace { p, len, rows: Vec::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of coefficient columns (truncation degree + 1).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("rows are nonzero"))
            .collect()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let mut w: Vec<u32> = v.iter().map(|x| x % self.p).collect();
        w.resize(self.len, 0);
        for row in &self.rows {
            let c = row.iter().position(|&x| x != 0).unwrap();
            if w[c] != 0 {
                let f = w[c] as u64;
                for j in 0..self.len {
                    let sub = f * row[j] as u64 % self.p as u64;
                    w[j] = ((w[j] as u64 + self.p as u64 - sub) % self.p as u64) as u32;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.p, self.len, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Span of pairwise products of basis vectors, truncated.
    pub fn product(&self, other: &Subspace) -> Subspace {
        let mut out = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.rows {
            for b in &other.rows {
                out.push(mul_trunc(a, b, self.p, self.len));
            }
        }
        Subspace::span(self.p, self.len, out)
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let n = self.len;
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| r.iter().chain(r.iter()).copied().collect())
            .chain(other.rows.iter().map(|r| {
                r.iter().copied().chain(std::iter::repeat(0).take(n)).collect()
            }))
            .collect();
        rref(&mut rows, self.p, 2 * n);
        let inter = rows
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec());
        Subspace::span(self.p, n, inter)
    }

    /// Multiply every basis vector by `t^s` (truncating) and re-reduce.
    pub fn shift(&self, s: usize) -> Subspace {
        let rows = self.rows.iter().map(|r| {
            let mut v = vec![0; self.len];
            for (j, &x) in r.iter().enumerate() {
                if j + s < self.len {
                    v[j + s] = x;
                }
            }
            v
        });
        Subspace::span(self.p, self.len, rows)
    }

    /// Closed under multiplication by every monomial of K[[t^2,t^3]].
    pub fn is_semigroup_ideal(&self) -> bool {
        (2..self.len).all(|s| self.contains(&self.shift(s)))
    }

    /// One row per basis vector, coefficients by ascending degree.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(p: u32, len: usize, text: &str) -> Option<Subspace> {
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let v: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse().ok())
                .collect::<Option<_>>()?;
            if v.len() != len {
                return None;
            }
            rows.push(v);
        }
        Some(Subspace::span(p, len, rows))
    }
}

pub(crate) fn mul_trunc(a: &[u32], b: &[u32], p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x as u64 * y as u64;
        }
    }
    out.into_iter().map(|x| (x % p as u64) as u32).collect()
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
