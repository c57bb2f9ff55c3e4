//! Polynomial subspaces and the Wronski map: Plücker coordinates, the
//! Wronskian computed two ways (derivative determinant and the q-weighted
//! Plücker expansion), root multisets in ℂP¹, the SL₂ action, and
//! Schubert-membership tests by Plücker vanishing patterns.

use itertools::Itertools;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partitions::{Partition, RectBound};
use crate::scalar::Scalar;

/// Dense univariate polynomial, coefficients lowest-degree first.
/// Trailing zeros are allowed; `degree` and equality ignore them.
#[derive(Debug, Clone)]
pub struct Poly<T: Scalar> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PartialEq for Poly<T> {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl<T: Scalar> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Poly { coeffs }
    }

    pub fn zero_poly() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: T) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// z^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = T::one();
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficients padded/truncated to exactly m+1 entries.
    pub fn coeffs_padded(&self, m: usize) -> Vec<T> {
        (0..=m).map(|k| self.coeff(k)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn eval(&self, z: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Poly<T> {
        if self.coeffs.len() <= 1 {
            return Poly::zero_poly();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| T::from_int(k as i64) * c.clone())
            .collect();
        Poly { coeffs }
    }

    pub fn add(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly { coeffs }
    }

    pub fn sub(&self, other: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly { coeffs }
    }

    pub fn neg(&self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly<T>) -> Poly<T> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly::zero_poly();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly { coeffs }
    }

    pub fn scale(&self, s: &T) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| s.clone() * c.clone()).collect(),
        }
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }

    /// First nonzero coefficient (lowest degree).
    pub fn leading_low(&self) -> Option<T> {
        self.coeffs.iter().find(|c| !c.is_zero()).cloned()
    }
}

/// (φ₂₁ z + φ₁₁)^k style binomial powers, as polynomials.
fn linear_power<T: Scalar>(c1: T, c0: T, k: usize) -> Poly<T> {
    // (c1 z + c0)^k
    let mut acc = Poly::constant(T::one());
    let lin = Poly::new(vec![c0, c1]);
    for _ in 0..k {
        acc = acc.mul(&lin);
    }
    acc
}

/// A d-dimensional subspace of ℂ_{n−1}[z], stored as d basis polynomials.
/// The associated d×n coefficient matrix A has A_{ij} = [z^{j−1}] f_i(z).
#[derive(Debug, Clone)]
pub struct SubspaceBasis<T: Scalar> {
    bound: RectBound,
    rows: Vec<Poly<T>>,
}

impl<T: Scalar> SubspaceBasis<T> {
    pub fn new(bound: RectBound, rows: Vec<Poly<T>>) -> Result<Self> {
        if rows.len() != bound.d {
            return Err(Error::invalid("need d basis polynomials"));
        }
        for r in &rows {
            if let Some(deg) = r.degree() {
                if deg >= bound.d + bound.cols() {
                    return Err(Error::invalid("basis polynomial degree too large"));
                }
            }
        }
        let b = SubspaceBasis { bound, rows };
        if b.plucker().is_zero() {
            return Err(Error::invalid("rank-deficient basis"));
        }
        Ok(b)
    }

    /// Construct from a d×n coefficient matrix.
    pub fn from_matrix(bound: RectBound, a: Vec<Vec<T>>) -> Result<Self> {
        let n = bound.d + bound.cols();
        if a.len() != bound.d || a.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be d×n"));
        }
        SubspaceBasis::new(bound, a.into_iter().map(Poly::new).collect())
    }

    pub fn bound(&self) -> RectBound {
        self.bound
    }

    pub fn rows(&self) -> &[Poly<T>] {
        &self.rows
    }

    pub fn matrix(&self) -> Vec<Vec<T>> {
        let n = self.bound.d + self.bound.cols();
        self.rows.iter().map(|r| r.coeffs_padded(n - 1)).collect()
    }

    pub fn plucker(&self) -> PluckerVector<T> {
        let a = self.matrix();
        let parts = self.bound.all_partitions();
        let values = parts
            .iter()
            .map(|lam| {
                let cols = lam.column_set();
                let minor: Vec<Vec<T>> = a
                    .iter()
                    .map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect())
                    .collect();
                det(&minor)
            })
            .collect();
        PluckerVector {
            bound: self.bound,
            parts,
            values,
        }
    }
}

/// Determinant by permutation expansion; fine for the d ≤ 4 sizes here.
pub fn det<T: Scalar>(m: &[Vec<T>]) -> T {
    let d = m.len();
    let mut acc = T::zero();
    for perm in (0..d).permutations(d) {
        let mut term = if parity(&perm) { -T::one() } else { T::one() };
        for (i, &j) in perm.iter().enumerate() {
            term = term * m[i][j].clone();
        }
        acc = acc + term;
    }
    acc
}

/// Determinant of a matrix of polynomials, same expansion.
pub fn det_poly<T: Scalar>(m: &[Vec<Poly<T>>]) -> Poly<T> {
    let d = m.len();
    let mut acc = Poly::zero_poly();
    for perm in (0..d).permutations(d) {
        let mut term = Poly::constant(if parity(&perm) { -T::one() } else { T::one() });
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&m[i][j]);
        }
        acc = acc.add(&term);
    }
    acc
}

fn parity(perm: &[usize]) -> bool {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// Wronskian as the determinant of the derivative matrix (f_j^{(i−1)}).
pub fn wronskian_det<T: Scalar>(b: &SubspaceBasis<T>) -> Result<Poly<T>> {
    let d = b.bound.d;
    let mut rows: Vec<Vec<Poly<T>>> = vec![b.rows.to_vec()];
    for i in 1..d {
        let prev = &rows[i - 1];
        rows.push(prev.iter().map(|p| p.derivative()).collect());
    }
    let w = det_poly(&rows);
    if w.is_zero() {
        return Err(Error::invalid("rank-deficient basis: zero Wronskian"));
    }
    Ok(w)
}

/// Plücker coordinates, stored in the fixed `RectBound::all_partitions`
/// order and considered up to global scale.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerVector<T: Scalar> {
    bound: RectBound,
    parts: Vec<Partition>,
    values: Vec<T>,
}

impl<T: Scalar> PluckerVector<T> {
    pub fn from_fn(bound: RectBound, mut f: impl FnMut(&Partition) -> T) -> Self {
        let parts = bound.all_partitions();
        let values = parts.iter().map(&mut f).collect();
        PluckerVector {
            bound,
            parts,
            values,
        }
    }

    pub fn bound(&self) -> RectBound {
        self.bound
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, lam: &Partition) -> &T {
        let i = self
            .parts
            .iter()
            .position(|p| p == lam)
            .expect("partition within bound");
        &self.values[i]
    }

    pub fn set(&mut self, lam: &Partition, v: T) {
        let i = self
            .parts
            .iter()
            .position(|p| p == lam)
            .expect("partition within bound");
        self.values[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.values
            .iter()
            .map(|v| v.magnitude())
            .fold(0.0, f64::max)
    }

    /// Scale so the largest-magnitude entry has magnitude 1, dividing by
    /// that entry (which also fixes its phase to 1).
    pub fn normalized(&self) -> PluckerVector<T> {
        let i = self
            .values
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
            .map(|(i, _)| i)
            .unwrap();
        let s = self.values[i].clone();
        PluckerVector {
            bound: self.bound,
            parts: self.parts.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.clone() / s.clone())
                .collect(),
        }
    }

    /// Exact projective equality: cross-ratios agree.
    pub fn projectively_equal(&self, other: &PluckerVector<T>) -> bool {
        if self.bound != other.bound {
            return false;
        }
        for i in 0..self.values.len() {
            for j in 0..self.values.len() {
                let lhs = self.values[i].clone() * other.values[j].clone();
                let rhs = self.values[j].clone() * other.values[i].clone();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The signed coordinate p_{i₁…i_d} for an arbitrary column list:
    /// 0 on repeats, otherwise sgn(sort) · p_λ.
    pub fn signed_coordinate(&self, cols: &[usize]) -> T {
        let mut sorted: Vec<usize> = cols.to_vec();
        let mut sign = false;
        // insertion sort, tracking parity
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                sign = !sign;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return T::zero();
        }
        let lam = match partition_from_columns(&sorted, self.bound) {
            Some(l) => l,
            None => return T::zero(),
        };
        let v = self.get(&lam).clone();
        if sign {
            -v
        } else {
            v
        }
    }

    /// Residuals of all quadratic Plücker relations
    /// Σ_m (−1)^m p_{i…,j_m} p_{j…ĵ_m…}; exact zeros for minors of a matrix.
    pub fn relation_residuals(&self) -> Vec<T> {
        let d = self.bound.d;
        let n = d + self.bound.cols();
        let mut out = Vec::new();
        for itup in (1..=n).combinations(d - 1) {
            for jtup in (1..=n).combinations(d + 1) {
                let mut acc = T::zero();
                for (m, &jm) in jtup.iter().enumerate() {
                    let mut left = itup.clone();
                    left.push(jm);
                    let mut right = jtup.clone();
                    right.remove(m);
                    let term = self.signed_coordinate(&left)
                        * self.signed_coordinate(&right);
                    acc = if m % 2 == 0 { acc - term } else { acc + term };
                }
                out.push(acc);
            }
        }
        out
    }
}

/// Invert λ ↦ J(λ): given a sorted d-element column set, recover λ.
pub fn partition_from_columns(cols: &[usize], bound: RectBound) -> Option<Partition> {
    let d = bound.d;
    if cols.len() != d {
        return None;
    }
    // k_j = j + λ_{d+1−j}
    let mut parts = vec![0usize; d];
    for (j0, &k) in cols.iter().enumerate() {
        let j = j0 + 1;
        if k < j || k - j > bound.cols() {
            return None;
        }
        parts[d - j] = k - j;
    }
    Partition::new(parts, bound).ok()
}

/// The Plücker expansion of the Wronskian: Σ_λ q_λ p_λ z^{|λ|}.
pub fn wronskian_plucker<T: Scalar>(p: &PluckerVector<T>) -> Poly<T> {
    let nn = p.bound.boxes();
    let mut coeffs = vec![T::zero(); nn + 1];
    for (lam, v) in p.parts.iter().zip(&p.values) {
        let q = T::from_rational(&BigRational::from_integer(lam.q_weight()));
        coeffs[lam.size()] = coeffs[lam.size()].clone() + q * v.clone();
    }
    Poly::new(coeffs)
}

/// π(x): the multiset of roots of Wr(x;−z), padded with ∞ to size N.
#[derive(Debug, Clone)]
pub struct RootMultiset {
    pub finite: Vec<Complex64>,
    pub infinite: usize,
}

impl RootMultiset {
    pub fn total(&self) -> usize {
        self.finite.len() + self.infinite
    }

    /// Greedy nearest matching; requires equal ∞ counts and pairwise
    /// distances within tol (absolute on the finite values).
    pub fn approx_eq(&self, other: &RootMultiset, tol: f64) -> bool {
        if self.infinite != other.infinite || self.finite.len() != other.finite.len() {
            return false;
        }
        let mut remaining: Vec<Complex64> = other.finite.clone();
        for a in &self.finite {
            let best = remaining
                .iter()
                .enumerate()
                .min_by(|x, y| (x.1 - a).norm().total_cmp(&(y.1 - a).norm()));
            match best {
                Some((i, b)) if (b - a).norm() <= tol => {
                    remaining.swap_remove(i);
                }
                _ => return false,
            }
        }
        true
    }

    /// Cluster the finite roots with the given radius, returning
    /// (representative, multiplicity) pairs.
    pub fn clustered(&self, radius: f64) -> Vec<(Complex64, usize)> {
        let mut clusters: Vec<(Complex64, usize)> = Vec::new();
        for r in &self.finite {
            match clusters
                .iter_mut()
                .find(|(c, _)| (*c - *r).norm() <= radius)
            {
                Some((c, m)) => {
                    // running mean keeps the representative centered
                    *c = (*c * (*m as f64) + r) / ((*m + 1) as f64);
                    *m += 1;
                }
                None => clusters.push((*r, 1)),
            }
        }
        clusters
    }
}

/// Roots of a complex polynomial via the companion matrix (Schur form).
pub fn poly_roots(p: &Poly<Complex64>, rel_tol: f64) -> Result<Vec<Complex64>> {
    let maxmag = p.max_magnitude();
    if maxmag == 0.0 {
        return Err(Error::numerical("zero polynomial has no root set"));
    }
    // effective degree: drop top coefficients below rel_tol of the max
    let mut deg = p.coeffs().len();
    while deg > 0 && p.coeff(deg - 1).norm() <= rel_tol * maxmag {
        deg -= 1;
    }
    if deg == 0 {
        return Err(Error::numerical("polynomial is numerically constant-zero"));
    }
    let deg = deg - 1; // degree of the trimmed polynomial
    if deg == 0 {
        return Ok(vec![]);
    }
    let lead = p.coeff(deg);
    let mut m = nalgebra::DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = Complex64::one();
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -p.coeff(i) / lead;
    }
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-14, 10_000)
        .ok_or_else(|| Error::numerical("Schur iteration failed"))?;
    let eig = schur
        .eigenvalues()
        .ok_or_else(|| Error::numerical("companion eigenvalues unavailable"))?;
    Ok(eig.iter().copied().collect())
}

/// π(x) for a complex basis: roots of Wr(x;−z) padded with ∞.
pub fn roots_multiset(x: &SubspaceBasis<Complex64>) -> Result<RootMultiset> {
    let w = wronskian_det(x)?;
    let nn = x.bound.boxes();
    let maxmag = w.max_magnitude();
    let w = w.scale(&Complex64::new(1.0 / maxmag, 0.0));
    let roots = poly_roots(&w, 1e-10)?;
    let finite: Vec<Complex64> = roots.iter().map(|r| -r).collect();
    if finite.len() > nn {
        return Err(Error::numerical("Wronskian degree exceeds N"));
    }
    Ok(RootMultiset {
        infinite: nn - finite.len(),
        finite,
    })
}

/// A Möbius transformation with nonzero determinant. All three actions are
/// projective, so the determinant-1 normalization is not enforced.
#[derive(Debug, Clone)]
pub struct Mobius<T: Scalar> {
    pub m: [[T; 2]; 2],
}

impl<T: Scalar> Mobius<T> {
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Result<Self> {
        let det = m11.clone() * m22.clone() - m12.clone() * m21.clone();
        if det.is_zero() {
            return Err(Error::invalid("singular Möbius matrix"));
        }
        Ok(Mobius {
            m: [[m11, m12], [m21, m22]],
        })
    }

    pub fn identity() -> Self {
        Mobius {
            m: [[T::one(), T::zero()], [T::zero(), T::one()]],
        }
    }

    /// w ↦ w − a (sends a to 0).
    pub fn translation_to_zero(a: T) -> Self {
        Mobius {
            m: [[T::one(), -a], [T::zero(), T::one()]],
        }
    }

    /// w ↦ −1/w (sends ∞ to 0).
    pub fn inversion() -> Self {
        Mobius {
            m: [[T::zero(), T::one()], [-T::one(), T::zero()]],
        }
    }

    /// Action on ℂP¹; `None` is the point ∞.
    pub fn apply_value(&self, w: &Option<T>) -> Option<T> {
        let [[a, b], [c, d]] = &self.m;
        match w {
            Some(w) => {
                let den = c.clone() * w.clone() + d.clone();
                if den.is_zero() {
                    None
                } else {
                    Some((a.clone() * w.clone() + b.clone()) / den)
                }
            }
            None => {
                if c.is_zero() {
                    None
                } else {
                    Some(a.clone() / c.clone())
                }
            }
        }
    }

    /// Action on C_m[z]: φf(z) = (φ₂₁z + φ₁₁)^m f((φ₂₂z + φ₁₂)/(φ₂₁z + φ₁₁)).
    pub fn apply_poly(&self, f: &Poly<T>, m: usize) -> Poly<T> {
        let [[a, b], [c, d]] = &self.m;
        let mut acc = Poly::zero_poly();
        for k in 0..=m {
            let fk = f.coeff(k);
            if fk.is_zero() {
                continue;
            }
            let term = linear_power(c.clone(), a.clone(), m - k)
                .mul(&linear_power(d.clone(), b.clone(), k));
            acc = acc.add(&term.scale(&fk));
        }
        acc
    }

    pub fn apply_basis(&self, x: &SubspaceBasis<T>) -> Result<SubspaceBasis<T>> {
        let n = x.bound.d + x.bound.cols();
        let rows = x
            .rows
            .iter()
            .map(|f| self.apply_poly(f, n - 1))
            .collect();
        SubspaceBasis::new(x.bound, rows)
    }
}

impl Mobius<Complex64> {
    /// Action on an extended-complex root multiset.
    pub fn apply_roots(&self, r: &RootMultiset) -> RootMultiset {
        let mut finite = Vec::new();
        let mut infinite = 0usize;
        for a in &r.finite {
            match self.apply_value(&Some(*a)) {
                Some(v) => finite.push(v),
                None => infinite += 1,
            }
        }
        for _ in 0..r.infinite {
            match self.apply_value(&None) {
                Some(v) => finite.push(v),
                None => infinite += 1,
            }
        }
        RootMultiset { finite, infinite }
    }
}

/// Vanishing-pattern verdict at a = 0: (in X_λ(0), in the open cell).
/// `p` should be normalized to max magnitude 1.
pub fn schubert_pattern(
    p: &PluckerVector<Complex64>,
    lam: &Partition,
    tol: f64,
) -> (bool, bool) {
    let mut in_variety = true;
    for (mu, v) in p.partitions().iter().zip(p.values()) {
        if !mu.contains(lam) && v.norm() > tol {
            in_variety = false;
            break;
        }
    }
    let in_cell = in_variety && p.get(lam).norm() > tol;
    (in_variety, in_cell)
}

/// All λ ⊢ k with x ∈ X_λ(a), computed by translating a to 0 and reading
/// the Plücker vanishing pattern. `a = None` is ∞.
pub fn schubert_membership_at(
    x: &SubspaceBasis<Complex64>,
    a: Option<Complex64>,
    k: usize,
    tol: f64,
) -> Result<Vec<Partition>> {
    let phi = match a {
        Some(a) => Mobius::translation_to_zero(a),
        None => Mobius::inversion(),
    };
    let y = phi.apply_basis(x)?;
    let p = y.plucker().normalized();
    Ok(x.bound()
        .partitions_of(k)
        .into_iter()
        .filter(|lam| schubert_pattern(&p, lam, tol).0)
        .collect())
}
