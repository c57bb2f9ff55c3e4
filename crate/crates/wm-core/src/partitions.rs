//! The rectangle-bounded partition lattice Λ, Vandermonde weights q_λ, and
//! box geometry.
//!
//! Everything here is exact integer arithmetic. Partitions carry their
//! bounding rectangle with them: a `Partition` is a weakly decreasing list of
//! `d` parts, each at most `n−d`. Boxes use 1-based (row, col) coordinates in
//! the English convention.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ambient rectangle: subspace dimension `d` inside degree bound `n`,
/// giving the d×(n−d) rectangle with N = d(n−d) boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RectBound {
    pub d: usize,
    pub n: usize,
}

impl RectBound {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d == 0 || d >= n {
            return Err(Error::invalid(format!("need 0 < d < n, got d={d}, n={n}")));
        }
        Ok(RectBound { d, n })
    }

    /// Number of columns of the rectangle, n−d.
    pub fn cols(&self) -> usize {
        self.n - self.d
    }

    /// Total number of boxes N = d(n−d).
    pub fn boxes(&self) -> usize {
        self.d * (self.n - self.d)
    }

    /// The empty partition ∅.
    pub fn empty(&self) -> Partition {
        Partition {
            parts: vec![0; self.d],
            bound: *self,
        }
    }

    /// The full rectangle ■.
    pub fn full(&self) -> Partition {
        Partition {
            parts: vec![self.cols(); self.d],
            bound: *self,
        }
    }

    /// All partitions fitting in the rectangle, ordered by (size, parts).
    pub fn all_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut parts = vec![0usize; self.d];
        loop {
            out.push(Partition {
                parts: parts.clone(),
                bound: *self,
            });
            // advance: increment the last part that can grow while staying
            // weakly decreasing and bounded
            let mut i = self.d;
            loop {
                if i == 0 {
                    parts.clear();
                    break;
                }
                i -= 1;
                let cap = if i == 0 { self.cols() } else { parts[i - 1] };
                if parts[i] < cap {
                    parts[i] += 1;
                    for p in parts.iter_mut().skip(i + 1) {
                        *p = 0;
                    }
                    break;
                }
            }
            if parts.is_empty() {
                break;
            }
        }
        out.sort_by_key(|p| (p.size(), p.parts.clone()));
        out
    }

    /// All partitions of a given size fitting in the rectangle.
    pub fn partitions_of(&self, k: usize) -> Vec<Partition> {
        self.all_partitions()
            .into_iter()
            .filter(|p| p.size() == k)
            .collect()
    }
}

/// A 1-based (row, col) box in English convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxCoord {
    pub row: usize,
    pub col: usize,
}

impl BoxCoord {
    pub fn new(row: usize, col: usize) -> Self {
        BoxCoord { row, col }
    }
}

/// Taxicab distance between two boxes: |Δrow| + |Δcol|.
pub fn box_distance(b1: BoxCoord, b2: BoxCoord) -> usize {
    b1.row.abs_diff(b2.row) + b1.col.abs_diff(b2.col)
}

/// A partition λ in a fixed rectangle bound, stored as exactly `d` weakly
/// decreasing parts (padded with zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
    bound: RectBound,
}

impl Partition {
    pub fn new(parts: impl Into<Vec<usize>>, bound: RectBound) -> Result<Self> {
        let mut parts: Vec<usize> = parts.into();
        if parts.len() > bound.d {
            // trailing zeros may be trimmed by callers; real parts may not
            if parts[bound.d..].iter().any(|&p| p != 0) {
                return Err(Error::invalid("more than d nonzero parts"));
            }
            parts.truncate(bound.d);
        }
        parts.resize(bound.d, 0);
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::invalid("parts not weakly decreasing"));
            }
        }
        if parts[0] > bound.cols() {
            return Err(Error::invalid("part exceeds n-d"));
        }
        Ok(Partition { parts, bound })
    }

    pub fn bound(&self) -> RectBound {
        self.bound
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn part(&self, row: usize) -> usize {
        self.parts[row - 1]
    }

    /// |λ| = Σ parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn is_full(&self) -> bool {
        self.parts.iter().all(|&p| p == self.bound.cols())
    }

    /// Containment order μ ≤ λ.
    pub fn contains(&self, other: &Partition) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| a >= b)
    }

    /// The boxes of the Young diagram, row-major.
    pub fn diagram(&self) -> Vec<BoxCoord> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.parts.iter().enumerate() {
            for c in 1..=p {
                out.push(BoxCoord::new(i + 1, c));
            }
        }
        out
    }

    pub fn has_box(&self, b: BoxCoord) -> bool {
        b.row >= 1 && b.row <= self.bound.d && b.col >= 1 && b.col <= self.parts[b.row - 1]
    }

    /// The column set J(λ) = {j + λ_{d+1−j} : 1 ≤ j ≤ d} ⊆ {1,…,n}.
    pub fn column_set(&self) -> Vec<usize> {
        let d = self.bound.d;
        (1..=d).map(|j| j + self.parts[d - j]).collect()
    }

    /// Vandermonde weight q_λ = ∏_{i<j} (k_j − k_i) with k = column_set(λ).
    /// Always a positive integer.
    pub fn q_weight(&self) -> BigInt {
        let k = self.column_set();
        let mut q = BigInt::from(1);
        for i in 0..k.len() {
            for j in (i + 1)..k.len() {
                q *= BigInt::from(k[j] as i64 - k[i] as i64);
            }
        }
        q
    }

    /// Componentwise min (meet in the lattice Λ).
    pub fn meet(&self, other: &Partition) -> Partition {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| *a.min(b))
            .collect();
        Partition {
            parts,
            bound: self.bound,
        }
    }

    /// Componentwise max (join in the lattice Λ).
    pub fn join(&self, other: &Partition) -> Partition {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| *a.max(b))
            .collect();
        Partition {
            parts,
            bound: self.bound,
        }
    }

    /// The 180°-rotated complement μ^∨, with parts (n−d) − μ_{d+1−i}.
    pub fn rotate_complement(&self) -> Partition {
        let d = self.bound.d;
        let parts = (0..d)
            .map(|i| self.bound.cols() - self.parts[d - 1 - i])
            .collect();
        Partition {
            parts,
            bound: self.bound,
        }
    }

    /// The skew complement μ^c = ■/μ together with μ^∨.
    pub fn complement_rotate(&self) -> (SkewShape, Partition) {
        let skew = SkewShape::new(self.bound.full(), self.clone()).expect("■ contains μ");
        (skew, self.rotate_complement())
    }

    /// Partitions covering λ (one box added) within the bound.
    pub fn covers_above(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.bound.d {
            let cap = if i == 0 {
                self.bound.cols()
            } else {
                self.parts[i - 1]
            };
            if self.parts[i] < cap {
                let mut parts = self.parts.clone();
                parts[i] += 1;
                out.push(Partition {
                    parts,
                    bound: self.bound,
                });
            }
        }
        out
    }

    /// The unique box of λ'/λ for a cover λ ⋖ λ'.
    pub fn added_box(&self, larger: &Partition) -> Option<BoxCoord> {
        let mut found = None;
        for i in 0..self.bound.d {
            match larger.parts[i].checked_sub(self.parts[i]) {
                Some(0) => {}
                Some(1) if found.is_none() => {
                    found = Some(BoxCoord::new(i + 1, larger.parts[i]));
                }
                _ => return None,
            }
        }
        found
    }
}

/// A skew shape λ/μ with μ ≤ λ in a common bound.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if outer.bound != inner.bound {
            return Err(Error::invalid("mismatched bounds"));
        }
        if !outer.contains(&inner) {
            return Err(Error::invalid("inner not contained in outer"));
        }
        Ok(SkewShape { outer, inner })
    }

    /// A straight shape λ = λ/∅.
    pub fn straight(outer: Partition) -> Self {
        let inner = outer.bound.empty();
        SkewShape { outer, inner }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn bound(&self) -> RectBound {
        self.outer.bound
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    /// Boxes of the skew diagram, row-major.
    pub fn boxes(&self) -> Vec<BoxCoord> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.bound().d {
            for c in (self.inner.parts[i] + 1)..=self.outer.parts[i] {
                out.push(BoxCoord::new(i + 1, c));
            }
        }
        out
    }

    pub fn has_box(&self, b: BoxCoord) -> bool {
        self.outer.has_box(b) && !self.inner.has_box(b)
    }

    /// Count of standard Young tableaux of this shape, by lattice-path
    /// enumeration (sequences of covers from inner to outer).
    pub fn syt_count(&self) -> u64 {
        fn count(cur: &Partition, outer: &Partition) -> u64 {
            if cur == outer {
                return 1;
            }
            cur.covers_above()
                .iter()
                .filter(|p| outer.contains(p))
                .map(|p| count(p, outer))
                .sum()
        }
        count(&self.inner, &self.outer)
    }
}

/// Hook-length formula for straight shapes; used as an independent
/// cross-check of `syt_count`.
pub fn hook_length_count(lam: &Partition) -> u64 {
    let m = lam.size();
    if m == 0 {
        return 1;
    }
    let parts = lam.parts();
    let conj: Vec<usize> = (1..=lam.parts()[0])
        .map(|c| parts.iter().filter(|&&p| p >= c).count())
        .collect();
    let mut num = BigInt::from(1);
    for k in 1..=m {
        num *= BigInt::from(k as u64);
    }
    let mut den = BigInt::from(1);
    for (i, &p) in parts.iter().enumerate() {
        for c in 1..=p {
            let hook = (p - c) + (conj[c - 1] - (i + 1)) + 1;
            den *= BigInt::from(hook as u64);
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    debug_assert_eq!(r, BigInt::from(0));
    let digits = q.to_u64_digits();
    match digits.1.len() {
        0 => 0,
        1 => digits.1[0],
        _ => panic!("syt count overflow"),
    }
}
