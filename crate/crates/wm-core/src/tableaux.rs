//! Norm-valued and ordinary standard Young tableaux.
//!
//! Entries of a valued tableau live in 𝔽P¹: finite values with a
//! multiplicative norm, plus a distinguished ∞ whose norm dominates
//! everything. Validity means entry norms strictly increase along rows and
//! columns, 0 may only appear when the inner shape is empty, and ∞ may only
//! appear when the outer shape is the full rectangle.
//!
//! Exact rational values are the native representation; floats coming out of
//! the tracker are converted exactly (every f64 is a binary rational).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{BoxCoord, Partition, SkewShape};

/// A totally ordered norm: a non-negative rational, or +∞.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Norm {
    Finite(BigRational),
    Infinite,
}

impl Norm {
    pub fn is_zero(&self) -> bool {
        matches!(self, Norm::Finite(q) if q.is_zero())
    }
}

/// Anything that can fill a tableau box: all we need is a norm and the two
/// distinguished values 0 and ∞.
pub trait TabEntry: Clone + std::fmt::Debug + PartialEq {
    fn norm(&self) -> Norm;
    fn is_zero(&self) -> bool {
        self.norm().is_zero()
    }
    fn is_infinite(&self) -> bool {
        matches!(self.norm(), Norm::Infinite)
    }
}

/// An element of 𝔽P¹ over the rationals: a finite rational or ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(BigRational),
    Infinity,
}

impl ExtValue {
    pub fn from_int(v: i64) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// Exact conversion: every finite f64 is a binary rational.
    pub fn from_f64(v: f64) -> Result<Self> {
        if v.is_infinite() {
            return Ok(ExtValue::Infinity);
        }
        BigRational::from_float(v)
            .map(ExtValue::Finite)
            .ok_or_else(|| Error::invalid("NaN is not a tableau value"))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtValue::Finite(q) => rational_to_f64(q),
            ExtValue::Infinity => f64::INFINITY,
        }
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl TabEntry for ExtValue {
    fn norm(&self) -> Norm {
        match self {
            ExtValue::Finite(q) => Norm::Finite(q.abs()),
            ExtValue::Infinity => Norm::Infinite,
        }
    }
}

/// A tableau with values attached to the boxes of a skew shape.
/// Box order is row-major and fixed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuedTableau<E: TabEntry> {
    shape: SkewShape,
    entries: Vec<(BoxCoord, E)>,
}

impl<E: TabEntry> ValuedTableau<E> {
    /// Build from a row-major list of values matching `shape.boxes()`.
    pub fn new(shape: SkewShape, values: Vec<E>) -> Result<Self> {
        let boxes = shape.boxes();
        if boxes.len() != values.len() {
            return Err(Error::invalid(format!(
                "shape has {} boxes, got {} values",
                boxes.len(),
                values.len()
            )));
        }
        Ok(ValuedTableau {
            shape,
            entries: boxes.into_iter().zip(values).collect(),
        })
    }

    /// Build from explicit (box, value) pairs in any order.
    pub fn from_pairs(shape: SkewShape, mut pairs: Vec<(BoxCoord, E)>) -> Result<Self> {
        pairs.sort_by_key(|(b, _)| (b.row, b.col));
        let boxes = shape.boxes();
        if pairs.len() != boxes.len() || pairs.iter().map(|(b, _)| *b).ne(boxes) {
            return Err(Error::invalid("box set does not match shape"));
        }
        Ok(ValuedTableau {
            shape,
            entries: pairs,
        })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn entries(&self) -> &[(BoxCoord, E)] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, b: BoxCoord) -> Option<&E> {
        self.entries.iter().find(|(bb, _)| *bb == b).map(|(_, e)| e)
    }

    pub fn values(&self) -> Vec<E> {
        self.entries.iter().map(|(_, e)| e.clone()).collect()
    }

    /// Replace the value in one box (caller is responsible for validity).
    pub fn set(&mut self, b: BoxCoord, v: E) {
        for (bb, e) in self.entries.iter_mut() {
            if *bb == b {
                *e = v;
                return;
            }
        }
        panic!("box not in tableau");
    }

    /// Validity: strict norm increase along rows and columns, restriction
    /// (II) (no 0 unless the inner shape is empty), restriction (III) (no ∞
    /// unless the outer shape is the full rectangle). With
    /// `require_distinct_norms` also restriction (I).
    pub fn validate(&self, require_distinct_norms: bool) -> bool {
        let inner_empty = self.shape.inner().is_empty();
        let outer_full = self.shape.outer().is_full();
        for (b, e) in &self.entries {
            if e.is_zero() && !inner_empty {
                return false;
            }
            if e.is_infinite() && !outer_full {
                return false;
            }
            for nb in [
                BoxCoord::new(b.row, b.col + 1),
                BoxCoord::new(b.row + 1, b.col),
            ] {
                if let Some(next) = self.get(nb) {
                    if e.norm() >= next.norm() {
                        return false;
                    }
                }
            }
        }
        if require_distinct_norms {
            let mut norms: Vec<Norm> = self.entries.iter().map(|(_, e)| e.norm()).collect();
            norms.sort();
            if norms.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        true
    }

    /// Weak validity, for diagonally increasing tableaux: norms weakly
    /// increase along rows and columns.
    pub fn validate_weak(&self) -> bool {
        for (b, e) in &self.entries {
            for nb in [
                BoxCoord::new(b.row, b.col + 1),
                BoxCoord::new(b.row + 1, b.col),
            ] {
                if let Some(next) = self.get(nb) {
                    if e.norm() > next.norm() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Strict norm increase along every diagonal step (r,c) → (r+1,c+1).
    /// Together with `validate_weak` this is the DIT condition.
    pub fn is_diagonally_increasing(&self) -> bool {
        for (b, e) in &self.entries {
            if let Some(diag) = self.get(BoxCoord::new(b.row + 1, b.col + 1)) {
                if e.norm() >= diag.norm() {
                    return false;
                }
            }
        }
        true
    }

    /// Boxes sorted by increasing entry norm. Errors on ties.
    pub fn boxes_by_norm(&self) -> Result<Vec<BoxCoord>> {
        let mut idx: Vec<usize> = (0..self.entries.len()).collect();
        idx.sort_by(|&i, &j| self.entries[i].1.norm().cmp(&self.entries[j].1.norm()));
        for w in idx.windows(2) {
            if self.entries[w[0]].1.norm() == self.entries[w[1]].1.norm() {
                return Err(Error::invalid("ambiguous ordinal: tied norms"));
            }
        }
        Ok(idx.into_iter().map(|i| self.entries[i].0).collect())
    }

    /// Rank-replace entries by norm, giving an ordinary standard tableau.
    pub fn ordinalize(&self) -> Result<OrdTableau> {
        let order = self.boxes_by_norm()?;
        let mut pairs = Vec::with_capacity(order.len());
        for (rank, b) in order.iter().enumerate() {
            pairs.push((*b, rank + 1));
        }
        OrdTableau::from_pairs(self.shape.clone(), pairs)
    }

    /// Restrict to a subset of entries given by box membership. When the
    /// selected values form a norm-consecutive run the result is a valued
    /// tableau of a well-defined skew shape; otherwise this errors.
    pub fn restrict_boxes(&self, keep: &[BoxCoord]) -> Result<ValuedTableau<E>> {
        let order = self.boxes_by_norm()?;
        let ranks: Vec<usize> = keep
            .iter()
            .map(|b| {
                order
                    .iter()
                    .position(|bb| bb == b)
                    .ok_or_else(|| Error::invalid("box not in tableau"))
            })
            .collect::<Result<_>>()?;
        let (lo, hi) = match (ranks.iter().min(), ranks.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => {
                // empty restriction: empty shape
                let shape = SkewShape::new(self.shape.inner().clone(), self.shape.inner().clone())?;
                return ValuedTableau::new(shape, vec![]);
            }
        };
        if hi - lo + 1 != ranks.len() {
            return Err(Error::invalid("not a subtableau: non-consecutive norms"));
        }
        // shape of ranks lo..=hi: inner ∪ (ranks < lo) over inner ∪ (ranks ≤ hi)
        let grow = |upto: usize| -> Result<Partition> {
            let mut parts: Vec<usize> = self.shape.inner().parts().to_vec();
            for b in order.iter().take(upto) {
                if b.col != parts[b.row - 1] + 1 {
                    return Err(Error::invalid("not a subtableau: ragged prefix"));
                }
                parts[b.row - 1] += 1;
            }
            Partition::new(parts, self.shape.bound())
        };
        let inner = grow(lo)?;
        let outer = grow(hi + 1)?;
        let shape = SkewShape::new(outer, inner)?;
        let pairs: Vec<(BoxCoord, E)> = self
            .entries
            .iter()
            .filter(|(b, _)| keep.contains(b))
            .cloned()
            .collect();
        ValuedTableau::from_pairs(shape, pairs)
    }

    /// Restrict to the entries with the given values (matched by equality).
    pub fn restrict(&self, values: &[E]) -> Result<ValuedTableau<E>> {
        let keep: Vec<BoxCoord> = self
            .entries
            .iter()
            .filter(|(_, e)| values.contains(e))
            .map(|(b, _)| *b)
            .collect();
        if keep.len() != values.len() {
            return Err(Error::invalid("values not all present in tableau"));
        }
        self.restrict_boxes(&keep)
    }
}

/// An ordinary standard Young tableau: entries 1..m, strictly increasing
/// along rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdTableau {
    shape: SkewShape,
    entries: Vec<(BoxCoord, usize)>,
}

impl OrdTableau {
    pub fn from_pairs(shape: SkewShape, mut pairs: Vec<(BoxCoord, usize)>) -> Result<Self> {
        pairs.sort_by_key(|(b, _)| (b.row, b.col));
        let boxes = shape.boxes();
        if pairs.len() != boxes.len() || pairs.iter().map(|(b, _)| *b).ne(boxes) {
            return Err(Error::invalid("box set does not match shape"));
        }
        let t = OrdTableau {
            shape,
            entries: pairs,
        };
        if !t.is_standard() {
            return Err(Error::invalid("not a standard filling"));
        }
        Ok(t)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn entries(&self) -> &[(BoxCoord, usize)] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, b: BoxCoord) -> Option<usize> {
        self.entries.iter().find(|(bb, _)| *bb == b).map(|(_, k)| *k)
    }

    /// Box holding entry k.
    pub fn box_of(&self, k: usize) -> Option<BoxCoord> {
        self.entries.iter().find(|(_, kk)| *kk == k).map(|(b, _)| *b)
    }

    fn is_standard(&self) -> bool {
        let m = self.entries.len();
        let mut seen = vec![false; m + 1];
        for (_, k) in &self.entries {
            if *k == 0 || *k > m || seen[*k] {
                return false;
            }
            seen[*k] = true;
        }
        for (b, k) in &self.entries {
            for nb in [
                BoxCoord::new(b.row, b.col + 1),
                BoxCoord::new(b.row + 1, b.col),
            ] {
                if let Some(next) = self.get(nb) {
                    if *k >= next {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Attach values to ranks: entry k gets `values[k−1]`. Values must be
    /// norm-increasing for the result to be valid.
    pub fn to_valued<E: TabEntry>(&self, values: &[E]) -> Result<ValuedTableau<E>> {
        if values.len() != self.entries.len() {
            return Err(Error::invalid("value count mismatch"));
        }
        let pairs = self
            .entries
            .iter()
            .map(|(b, k)| (*b, values[*k - 1].clone()))
            .collect();
        ValuedTableau::from_pairs(self.shape.clone(), pairs)
    }

    /// All standard tableaux of a shape, by enumerating cover chains.
    pub fn enumerate(shape: &SkewShape) -> Vec<OrdTableau> {
        fn rec(
            cur: &Partition,
            outer: &Partition,
            k: usize,
            acc: &mut Vec<(BoxCoord, usize)>,
            shape: &SkewShape,
            out: &mut Vec<OrdTableau>,
        ) {
            if cur == outer {
                out.push(OrdTableau {
                    shape: shape.clone(),
                    entries: {
                        let mut e = acc.clone();
                        e.sort_by_key(|(b, _)| (b.row, b.col));
                        e
                    },
                });
                return;
            }
            for next in cur.covers_above() {
                if outer.contains(&next) {
                    let b = cur.added_box(&next).unwrap();
                    acc.push((b, k));
                    rec(&next, outer, k + 1, acc, shape, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        let mut acc = Vec::new();
        rec(
            shape.inner(),
            shape.outer(),
            1,
            &mut acc,
            shape,
            &mut out,
        );
        out
    }

    /// The row-superstandard tableau of a shape: 1,2,… filled along rows.
    pub fn row_superstandard(shape: &SkewShape) -> OrdTableau {
        let pairs = shape
            .boxes()
            .into_iter()
            .enumerate()
            .map(|(i, b)| (b, i + 1))
            .collect();
        OrdTableau {
            shape: shape.clone(),
            entries: pairs,
        }
    }
}

/// All standard fillings of `shape` with the given norm-increasing values.
pub fn enumerate_syt<E: TabEntry>(
    shape: &SkewShape,
    values: &[E],
) -> Result<Vec<ValuedTableau<E>>> {
    if values.len() != shape.size() {
        return Err(Error::invalid("value count does not match shape size"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.norm().cmp(&b.norm()));
    for w in sorted.windows(2) {
        if w[0].norm() == w[1].norm() {
            return Err(Error::invalid("values must have distinct norms"));
        }
    }
    OrdTableau::enumerate(shape)
        .into_iter()
        .map(|t| t.to_valued(&sorted))
        .collect()
}
