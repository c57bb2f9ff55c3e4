//! Asymptotic (leading-term) solutions of Wronski fiber systems.
//!
//! When the roots `a_i` are geometrically separated — think of each as a
//! short Puiseux series in a parameter u → 0 — the Plücker coordinates of
//! every fiber point collapse to monomials c·u^w, and the fiber system
//! collapses to a small multiplicative system for the leading coefficients.
//! This module works with *jets* (leading coefficient + valuation only),
//! solves that system exactly, and turns the solutions into numerical Plücker
//! seeds for the tracker and labels for fiber points.
//!
//! The solvable tie patterns are: no ties (one solution per tableau), a tied
//! pair in the same row or column (one solution shared by two tableaux), and
//! a tied pair in distinct rows and columns (a quadratic: generically two
//! solutions). Anything denser is rejected rather than guessed at.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::{BoxCoord, Partition, SkewShape};
use crate::scalar::Scalar;
use crate::tableaux::{rational_to_f64, Norm, TabEntry, ValuedTableau};
use crate::wronski::PluckerVector;

/// The leading term of a scalar-valued Puiseux series: coefficient and
/// valuation, with 0 (valuation +∞) and ∞ (valuation −∞) adjoined.
#[derive(Debug, Clone, PartialEq)]
pub enum Jet<T: Scalar> {
    Zero,
    Finite { coeff: T, val: BigRational },
    Infinity,
}

impl<T: Scalar> Jet<T> {
    /// A finite jet c·u^v; a zero coefficient collapses to the zero jet.
    pub fn finite(coeff: T, val: BigRational) -> Self {
        if coeff.is_zero() {
            Jet::Zero
        } else {
            Jet::Finite { coeff, val }
        }
    }

    /// A constant: valuation 0.
    pub fn constant(coeff: T) -> Self {
        Jet::finite(coeff, BigRational::zero())
    }

    pub fn int_jet(coeff: i64, val: i64) -> Self {
        Jet::finite(T::from_int(coeff), BigRational::from_integer(BigInt::from(val)))
    }

    pub fn coeff(&self) -> Option<&T> {
        match self {
            Jet::Finite { coeff, .. } => Some(coeff),
            _ => None,
        }
    }

    pub fn val(&self) -> Option<&BigRational> {
        match self {
            Jet::Finite { val, .. } => Some(val),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Jet::Finite { .. })
    }
}

/// Order-preserving embedding of valuations into norms: larger valuation
/// means the series vanishes faster, i.e. a *smaller* norm. The map
/// x ↦ x+1 (x ≥ 0), x ↦ 1/(1−x) (x < 0) applied to −val is a strictly
/// increasing bijection ℚ → ℚ_{>0}, leaving norm 0 free for the zero jet.
fn val_to_norm(val: &BigRational) -> BigRational {
    let x = -val.clone();
    if x >= BigRational::zero() {
        x + BigRational::one()
    } else {
        BigRational::one() / (BigRational::one() - x)
    }
}

impl<T: Scalar> TabEntry for Jet<T> {
    fn norm(&self) -> Norm {
        match self {
            Jet::Zero => Norm::Finite(BigRational::zero()),
            Jet::Finite { val, .. } => Norm::Finite(val_to_norm(val)),
            Jet::Infinity => Norm::Infinite,
        }
    }
}

/// Leading behaviour of a *sum* of jet monomials: the minimal valuation seen
/// among the terms, and the coefficient sum at that valuation. Cancellation
/// keeps the valuation but may zero the coefficient — exactly the convention
/// needed for the elementary symmetric functions below.
#[derive(Clone)]
struct LeadSum<T: Scalar> {
    /// `None` means no terms at all (the empty sum).
    term: Option<(BigRational, T)>,
}

impl<T: Scalar> LeadSum<T> {
    fn empty() -> Self {
        LeadSum { term: None }
    }

    fn one() -> Self {
        LeadSum {
            term: Some((BigRational::zero(), T::one())),
        }
    }

    fn add(&self, other: &Self) -> Self {
        match (&self.term, &other.term) {
            (None, t) | (t, None) => LeadSum { term: t.clone() },
            (Some((v1, c1)), Some((v2, c2))) => {
                let term = if v1 < v2 {
                    (v1.clone(), c1.clone())
                } else if v2 < v1 {
                    (v2.clone(), c2.clone())
                } else {
                    (v1.clone(), c1.clone() + c2.clone())
                };
                LeadSum { term: Some(term) }
            }
        }
    }

    fn mul_jet(&self, jet: &Jet<T>) -> Self {
        match (&self.term, jet) {
            (Some((v, c)), Jet::Finite { coeff, val }) => LeadSum {
                term: Some((v + val, c.clone() * coeff.clone())),
            },
            // multiplying by the zero jet kills every term
            _ => LeadSum::empty(),
        }
    }

    fn coeff(&self) -> T {
        match &self.term {
            Some((_, c)) => c.clone(),
            None => T::zero(),
        }
    }
}

/// e_i(𝐚): the coefficient of u^{ℓ} in the (|𝐚|−i)-th elementary symmetric
/// function of the jets, where ℓ is the minimal valuation among its terms.
/// May vanish by cancellation. Infinite jets are not meaningful here.
pub fn elementary_lead<T: Scalar>(a: &[Jet<T>], i: usize) -> T {
    assert!(i <= a.len(), "index out of range");
    assert!(
        a.iter().all(|j| !matches!(j, Jet::Infinity)),
        "infinite jet in elementary symmetric function"
    );
    let degree = a.len() - i;
    // dp[j] = leading behaviour of the degree-j elementary symmetric function
    let mut dp: Vec<LeadSum<T>> = vec![LeadSum::empty(); a.len() + 1];
    dp[0] = LeadSum::one();
    for (seen, jet) in a.iter().enumerate() {
        for j in (1..=seen + 1).rev() {
            dp[j] = dp[j].add(&dp[j - 1].mul_jet(jet));
        }
    }
    dp[degree].coeff()
}

/// Sum of the valuations of the entries of `t` lying outside `nu`.
fn val_outside<T: Scalar>(t: &ValuedTableau<Jet<T>>, nu: &Partition) -> BigRational {
    let mut total = BigRational::zero();
    for (b, e) in t.entries() {
        if !nu.has_box(*b) {
            match e {
                Jet::Finite { val, .. } => total += val,
                _ => panic!("val_outside needs finite jets"),
            }
        }
    }
    total
}

/// M_i(T): the partitions ν with μ ≤ ν ≤ λ and |ν| = |μ|+i minimizing the
/// valuation of T restricted to λ/ν.
pub fn min_shapes<T: Scalar>(t: &ValuedTableau<Jet<T>>, i: usize) -> Vec<Partition> {
    let shape = t.shape();
    let (outer, inner) = (shape.outer(), shape.inner());
    let bound = shape.bound();
    let mut best: Option<BigRational> = None;
    let mut shapes = Vec::new();
    for nu in bound.partitions_of(inner.size() + i) {
        if !nu.contains(inner) || !outer.contains(&nu) {
            continue;
        }
        let v = val_outside(t, &nu);
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => shapes.push(nu),
            _ => {
                best = Some(v);
                shapes = vec![nu];
            }
        }
    }
    shapes
}

/// An assignment of complex (or rational) values ω_i to the boxes of a skew
/// shape, indexed in the norm order of the tableau it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaAssignment<T: Scalar> {
    shape: SkewShape,
    boxes: Vec<BoxCoord>,
    omegas: Vec<T>,
}

impl<T: Scalar> OmegaAssignment<T> {
    pub fn new(shape: SkewShape, boxes: Vec<BoxCoord>, omegas: Vec<T>) -> Result<Self> {
        if boxes.len() != omegas.len() {
            return Err(Error::invalid("one ω per box"));
        }
        let mut sorted = boxes.clone();
        sorted.sort_by_key(|b| (b.row, b.col));
        if sorted != shape.boxes() {
            return Err(Error::invalid("boxes do not tile the shape"));
        }
        Ok(OmegaAssignment { shape, boxes, omegas })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// The box carrying ω_{i+1} (zero-based index).
    pub fn boxes(&self) -> &[BoxCoord] {
        &self.boxes
    }

    pub fn omegas(&self) -> &[T] {
        &self.omegas
    }

    /// Ω_ν: the product of the ω over boxes outside ν, or 0 when ν is not
    /// between the inner and outer shapes. Ω over the outer shape is 1.
    pub fn omega_product(&self, nu: &Partition) -> T {
        if !nu.contains(self.shape.inner()) || !self.shape.outer().contains(nu) {
            return T::zero();
        }
        let mut prod = T::one();
        for (b, w) in self.boxes.iter().zip(&self.omegas) {
            if !nu.has_box(*b) {
                prod = prod * w.clone();
            }
        }
        prod
    }

    /// ∂Ω_ν/∂ω_j (zero-based j): the same product with the j-th factor
    /// removed, or 0 when the j-th box lies inside ν (or ν is out of range).
    fn omega_product_derivative(&self, nu: &Partition, j: usize) -> T {
        if !nu.contains(self.shape.inner()) || !self.shape.outer().contains(nu) {
            return T::zero();
        }
        if nu.has_box(self.boxes[j]) {
            return T::zero();
        }
        let mut prod = T::one();
        for (i, (b, w)) in self.boxes.iter().zip(&self.omegas).enumerate() {
            if i != j && !nu.has_box(*b) {
                prod = prod * w.clone();
            }
        }
        prod
    }
}

fn q_scalar<T: Scalar>(p: &Partition) -> T {
    T::from_rational(&BigRational::from_integer(p.q_weight()))
}

fn add_box(p: &Partition, b: BoxCoord) -> Result<Partition> {
    // box coordinates are 1-based
    let mut parts: Vec<usize> = p.parts().to_vec();
    while parts.len() < b.row {
        parts.push(0);
    }
    if parts[b.row - 1] + 1 != b.col {
        return Err(Error::invalid("box is not addable"));
    }
    parts[b.row - 1] += 1;
    Partition::new(parts, p.bound())
}

/// Entries of `t` sorted by increasing norm, ties broken row-major (which
/// puts the forced element of a same-row or same-column tie first).
fn ranked_entries<T: Scalar>(
    t: &ValuedTableau<Jet<T>>,
) -> Vec<(BoxCoord, T, BigRational, Norm)> {
    let mut items: Vec<(BoxCoord, T, BigRational, Norm)> = t
        .entries()
        .iter()
        .map(|(b, e)| match e {
            Jet::Finite { coeff, val } => (*b, coeff.clone(), val.clone(), e.norm()),
            _ => panic!("ranked_entries needs finite jets"),
        })
        .collect();
    items.sort_by(|x, y| x.3.cmp(&y.3).then_with(|| (x.0.row, x.0.col).cmp(&(y.0.row, y.0.col))));
    items
}

/// Remove 0 entries (absorbing them into the inner shape) and ∞ entries
/// (releasing them from the outer shape). The remaining skew tableau solves
/// the same leading-term system, so all solvers strip first.
pub fn strip_zero_infinity<T: Scalar>(
    t: &ValuedTableau<Jet<T>>,
) -> Result<ValuedTableau<Jet<T>>> {
    let shape = t.shape();
    let bound = shape.bound();
    let mut inner: Vec<usize> = shape.inner().parts().to_vec();
    inner.resize(bound.d, 0);
    let mut outer: Vec<usize> = shape.outer().parts().to_vec();
    outer.resize(bound.d, 0);
    let mut finite = Vec::new();
    let mut zeros: Vec<BoxCoord> = Vec::new();
    let mut infs: Vec<BoxCoord> = Vec::new();
    for (b, e) in t.entries() {
        match e {
            Jet::Zero => zeros.push(*b),
            Jet::Infinity => infs.push(*b),
            Jet::Finite { .. } => finite.push((*b, e.clone())),
        }
    }
    zeros.sort_by_key(|b| (b.row, b.col));
    for b in zeros {
        if b.col != inner[b.row - 1] + 1 {
            return Err(Error::invalid("0 entry not at an inner corner"));
        }
        inner[b.row - 1] += 1;
    }
    infs.sort_by_key(|b| (b.row, std::cmp::Reverse(b.col)));
    for b in infs {
        if b.col != outer[b.row - 1] {
            return Err(Error::invalid("∞ entry not at an outer corner"));
        }
        outer[b.row - 1] -= 1;
    }
    let shape = SkewShape::new(
        Partition::new(outer, bound)?,
        Partition::new(inner, bound)?,
    )?;
    ValuedTableau::from_pairs(shape, finite)
}

/// The unique leading-coefficient solution for a tableau whose entry norms
/// are pairwise distinct: ω_i = q_{α_i} c_i / q_{α_{i−1}}, where α_i is the
/// shape of the first i entries grown from the inner shape.
pub fn solve_distinct<T: Scalar>(t: &ValuedTableau<Jet<T>>) -> Result<OmegaAssignment<T>> {
    let t = strip_zero_infinity(t)?;
    let ranked = ranked_entries(&t);
    for w in ranked.windows(2) {
        if w[0].3 == w[1].3 {
            return Err(Error::invalid("tied norms; use solve_full"));
        }
    }
    let mut alpha = t.shape().inner().clone();
    let mut boxes = Vec::with_capacity(ranked.len());
    let mut omegas = Vec::with_capacity(ranked.len());
    for (b, c, _, _) in ranked {
        let next = add_box(&alpha, b)?;
        omegas.push(q_scalar::<T>(&next) * c / q_scalar::<T>(&alpha));
        boxes.push(b);
        alpha = next;
    }
    OmegaAssignment::new(t.shape().clone(), boxes, omegas)
}

/// Both solutions of the tied-pair quadratic, given the q-weights of the
/// diamond α_{k−1} ⊂ α_k, α'_k ⊂ α_{k+1} and the tied coefficients. The
/// second pair is always (q_{α_k}ω_{k+1}/q_{α'_k}, q_{α'_k}ω_k/q_{α_k})
/// applied to the first.
pub struct TwoRoots<T: Scalar> {
    pub pairs: [(T, T); 2],
    pub discriminant: T,
}

pub fn solve_tworoots<T: Scalar>(
    q_prev: &BigInt,
    q_a: &BigInt,
    q_b: &BigInt,
    q_next: &BigInt,
    c_k: &T,
    c_k1: &T,
) -> Result<TwoRoots<T>> {
    if c_k.is_zero() || c_k1.is_zero() {
        return Err(Error::invalid("tied pair with a zero coefficient"));
    }
    let qr = |n: &BigInt| T::from_rational(&BigRational::from_integer(n.clone()));
    let (qp, qa, qb, qn) = (qr(q_prev), qr(q_a), qr(q_b), qr(q_next));
    // (q_b/q_next) ω² − (c_k+c_{k+1}) ω + (q_a/q_prev) c_k c_{k+1} = 0
    let a = qb.clone() / qn.clone();
    let b = c_k.clone() + c_k1.clone();
    let c = qa.clone() / qp.clone() * c_k.clone() * c_k1.clone();
    let disc = b.clone() * b.clone() - T::from_int(4) * a.clone() * c;
    let root = disc
        .sqrt_checked()
        .ok_or_else(|| Error::numerical("discriminant has no square root in the field"))?;
    let two_a = T::from_int(2) * a;
    let w1 = (b.clone() + root.clone()) / two_a.clone();
    let w2 = (b - root) / two_a;
    // companion value from the product relation ω_k ω_{k+1} = (q_next/q_prev) c_k c_{k+1}
    let prod = qn / qp * c_k.clone() * c_k1.clone();
    let pair = |w: T| {
        let partner = prod.clone() / w.clone();
        (w, partner)
    };
    Ok(TwoRoots {
        pairs: [pair(w1), pair(w2)],
        discriminant: disc,
    })
}

/// A solution of the leading-term system, with its Jacobian determinant.
/// `degenerate` marks (numerically) singular Jacobians: such solutions do
/// not certify a fiber point.
#[derive(Debug, Clone)]
pub struct OmegaSolution<T: Scalar> {
    pub omega: OmegaAssignment<T>,
    pub jacobian: T,
    pub degenerate: bool,
}

/// All leading-coefficient solutions for a diagonally increasing tableau
/// whose ties are isolated pairs. A same-row/column pair contributes one
/// solution, a pair in distinct rows and columns contributes the two roots
/// of a quadratic; denser ties are rejected.
pub fn solve_full<T: Scalar>(t: &ValuedTableau<Jet<T>>) -> Result<Vec<OmegaSolution<T>>> {
    let t = strip_zero_infinity(t)?;
    let m = t.size();
    if m == 0 {
        let omega = OmegaAssignment::new(t.shape().clone(), Vec::new(), Vec::new())?;
        return Ok(vec![OmegaSolution {
            omega,
            jacobian: T::one(),
            degenerate: false,
        }]);
    }
    let ranked = ranked_entries(&t);
    let mut omegas: Vec<Option<T>> = vec![None; m];
    let mut boxes: Vec<BoxCoord> = ranked.iter().map(|r| r.0).collect();
    // each tie pair in distinct rows/columns yields a list of alternatives
    let mut branches: Vec<Vec<Vec<(usize, T)>>> = Vec::new();
    let mut alpha = t.shape().inner().clone();
    let mut k = 0;
    while k < m {
        let mut run = 1;
        while k + run < m && ranked[k + run].3 == ranked[k].3 {
            run += 1;
        }
        match run {
            1 => {
                let (b, c, _, _) = &ranked[k];
                let next = add_box(&alpha, *b)?;
                omegas[k] = Some(q_scalar::<T>(&next) * c.clone() / q_scalar::<T>(&alpha));
                alpha = next;
                k += 1;
            }
            2 => {
                let (b1, c1) = (ranked[k].0, ranked[k].1.clone());
                let (b2, c2) = (ranked[k + 1].0, ranked[k + 1].1.clone());
                let top = add_box(&add_box(&alpha, b1).or_else(|_| add_box(&alpha, b2))?,
                    if add_box(&alpha, b1).is_ok() { b2 } else { b1 })
                .map_err(|_| Error::TiePattern("tied pair does not span a diamond".into()))?;
                if b1.row == b2.row || b1.col == b2.col {
                    // forced order: only one of the two boxes is addable first
                    let (first, cf, cs) = if add_box(&alpha, b1).is_ok() {
                        (b1, c1.clone(), c2.clone())
                    } else {
                        (b2, c2.clone(), c1.clone())
                    };
                    let mid = add_box(&alpha, first)?;
                    let merged = cf.clone() + cs.clone();
                    if merged.is_zero() {
                        return Err(Error::TiePattern(
                            "same-row/column tie with vanishing coefficient sum".into(),
                        ));
                    }
                    omegas[k] = Some(
                        q_scalar::<T>(&mid) * cf * cs / (q_scalar::<T>(&alpha) * merged.clone()),
                    );
                    omegas[k + 1] =
                        Some(q_scalar::<T>(&top) * merged / q_scalar::<T>(&mid));
                    if first != b1 {
                        boxes.swap(k, k + 1);
                    }
                } else {
                    let mid_a = add_box(&alpha, b1)?;
                    let mid_b = add_box(&alpha, b2)?;
                    let roots = solve_tworoots(
                        &alpha.q_weight(),
                        &mid_a.q_weight(),
                        &mid_b.q_weight(),
                        &top.q_weight(),
                        &c1,
                        &c2,
                    )?;
                    branches.push(
                        roots
                            .pairs
                            .iter()
                            .map(|(wk, wk1)| vec![(k, wk.clone()), (k + 1, wk1.clone())])
                            .collect(),
                    );
                }
                alpha = top;
                k += 2;
            }
            _ => {
                return Err(Error::TiePattern(format!(
                    "{run} entries share a norm; only isolated pairs are supported"
                )))
            }
        }
    }
    // expand the branch choices into complete assignments
    let mut partials: Vec<Vec<Option<T>>> = vec![omegas];
    for branch in &branches {
        let mut next = Vec::new();
        for partial in &partials {
            for choice in branch {
                let mut p = partial.clone();
                for (idx, w) in choice {
                    p[*idx] = Some(w.clone());
                }
                next.push(p);
            }
        }
        partials = next;
    }
    let mut solutions = Vec::new();
    for p in partials {
        let vals: Vec<T> = p.into_iter().map(|w| w.expect("all ω assigned")).collect();
        let scale: f64 = vals.iter().map(|w| w.magnitude().max(1.0)).product();
        let omega = OmegaAssignment::new(t.shape().clone(), boxes.clone(), vals)?;
        let jacobian = jacobian_det(&t, &omega);
        let degenerate = jacobian.is_zero() || jacobian.magnitude() < 1e-10 * scale;
        solutions.push(OmegaSolution {
            omega,
            jacobian,
            degenerate,
        });
    }
    Ok(solutions)
}

/// Determinant of J_{ij} = ∂/∂ω_j Σ_{ν ∈ M_{i−1}(T)} q_ν Ω_ν, exact in the
/// scalar field (Gaussian elimination with magnitude pivoting).
pub fn jacobian_det<T: Scalar>(t: &ValuedTableau<Jet<T>>, omega: &OmegaAssignment<T>) -> T {
    let m = omega.omegas().len();
    let mut mat: Vec<Vec<T>> = Vec::with_capacity(m);
    for i in 0..m {
        let shapes = min_shapes(t, i);
        let row: Vec<T> = (0..m)
            .map(|j| {
                shapes.iter().fold(T::zero(), |acc, nu| {
                    acc + q_scalar::<T>(nu) * omega.omega_product_derivative(nu, j)
                })
            })
            .collect();
        mat.push(row);
    }
    det_gauss(mat)
}

fn det_gauss<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i][col]
                    .magnitude()
                    .partial_cmp(&m[j][col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if m[pivot][col].is_zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det = det * m[col][col].clone();
        for i in col + 1..n {
            let f = m[i][col].clone() / m[col][col].clone();
            for j in col..n {
                m[i][j] = m[i][j].clone() - f.clone() * m[col][j].clone();
            }
        }
    }
    det
}

/// Residuals of the leading-term system: entry i is
/// Σ_{ν ∈ M_i(T)} q_ν Ω_ν − q_λ e_i(𝐚) for 0 ≤ i < |λ/μ|. A valid solution
/// makes every residual zero (exactly so over the rationals).
pub fn lead_term_residuals<T: Scalar>(
    t: &ValuedTableau<Jet<T>>,
    omega: &OmegaAssignment<T>,
) -> Result<Vec<T>> {
    let t = strip_zero_infinity(t)?;
    let jets = t.values();
    let q_outer = q_scalar::<T>(t.shape().outer());
    let mut res = Vec::with_capacity(t.size());
    for i in 0..t.size() {
        let lhs = min_shapes(&t, i).iter().fold(T::zero(), |acc, nu| {
            acc + q_scalar::<T>(nu) * omega.omega_product(nu)
        });
        res.push(lhs - q_outer.clone() * elementary_lead(&jets, i));
    }
    Ok(res)
}

/// The predicted leading term of every Plücker coordinate,
/// LT(p_ν) = Ω_ν u^{val(T|_{λ/ν})}, returned as jets.
pub fn lead_terms<T: Scalar>(
    t: &ValuedTableau<Jet<T>>,
    omega: &OmegaAssignment<T>,
) -> Result<Vec<(Partition, Jet<T>)>> {
    let t = strip_zero_infinity(t)?;
    let bound = t.shape().bound();
    Ok(bound
        .all_partitions()
        .into_iter()
        .map(|nu| {
            let c = omega.omega_product(&nu);
            let jet = if c.is_zero() {
                Jet::Zero
            } else {
                Jet::finite(c, val_outside(&t, &nu))
            };
            (nu, jet)
        })
        .collect())
}

/// Numerical Plücker seed: the leading terms evaluated at u = ε, computed in
/// log space so that rational valuations are handled stably.
pub fn predicted_pluckers<T: Scalar>(
    t: &ValuedTableau<Jet<T>>,
    omega: &OmegaAssignment<T>,
    eps: f64,
) -> Result<PluckerVector<Complex64>> {
    assert!(eps > 0.0 && eps < 1.0, "ε must lie in (0,1)");
    let terms = lead_terms(t, omega)?;
    let bound = t.shape().bound();
    let log_eps = eps.ln();
    let mut i = 0;
    Ok(PluckerVector::from_fn(bound, |_| {
        let (_, jet) = &terms[i];
        i += 1;
        match jet {
            Jet::Finite { coeff, val } => {
                coeff.to_c64() * (rational_to_f64(val) * log_eps).exp()
            }
            _ => Complex64::new(0.0, 0.0),
        }
    }))
}

/// The weight vector 𝐰(T): ν ↦ val of the entries of T outside ν. Distinct
/// standard tableaux on the full rectangle have distinct weight vectors,
/// which is what makes the vector usable as a fiber-point label.
pub fn weight_vector<T: Scalar>(
    t: &ValuedTableau<Jet<T>>,
) -> Result<Vec<(Partition, BigRational)>> {
    let t = strip_zero_infinity(&t.clone())?;
    Ok(t.shape()
        .bound()
        .all_partitions()
        .into_iter()
        .map(|nu| {
            let w = val_outside(&t, &nu);
            (nu, w)
        })
        .collect())
}

/// Gelfand-Tsetlin check: c_λ c_{λ'} = c_{λ∨λ'} c_{λ∧λ'} for all pairs,
/// within `tol` relative to the squared magnitude scale (take tol = 0 for an
/// exact check over the rationals).
pub fn gt_check<T: Scalar>(c: &PluckerVector<T>, tol: f64) -> bool {
    let parts = c.partitions();
    let scale = c.max_magnitude().powi(2).max(1.0);
    for (i, lam) in parts.iter().enumerate() {
        for mu in &parts[i + 1..] {
            let lhs = c.get(lam).clone() * c.get(mu).clone();
            let rhs = c.get(&lam.join(mu)).clone() * c.get(&lam.meet(mu)).clone();
            if (lhs - rhs).magnitude() > tol * scale {
                return false;
            }
        }
    }
    true
}

/// The two unit-modulus ratios r = c_k/c_{k+1} at which a tied pair at box
/// distance L has a double root: r = e^{±iθ} with cos θ = 1 − 2/L².
pub fn critical_ratio(l: u32) -> (Complex64, Complex64) {
    assert!(l >= 2, "box distance is at least 2");
    let cos = 1.0 - 2.0 / (l as f64).powi(2);
    let sin = (1.0 - cos * cos).sqrt();
    (Complex64::new(cos, sin), Complex64::new(cos, -sin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{box_distance, RectBound};
    use crate::tableaux::OrdTableau;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    type Q = BigRational;

    fn bq(n: i64, d: i64) -> Q {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn part(parts: &[usize], d: usize, n: usize) -> Partition {
        Partition::new(parts.to_vec(), RectBound::new(d, n).unwrap()).unwrap()
    }

    /// The worked 2×2 example: λ=(2,2), μ=(1,0), entries 4u+2u², 1, 1.
    fn square_example() -> ValuedTableau<Jet<Q>> {
        let bound = RectBound::new(2, 4).unwrap();
        let shape = SkewShape::new(
            Partition::new(vec![2, 2], bound).unwrap(),
            Partition::new(vec![1], bound).unwrap(),
        )
        .unwrap();
        // boxes row-major: (0,1), (1,0), (1,1)
        ValuedTableau::new(
            shape,
            vec![Jet::<Q>::int_jet(4, 1), Jet::int_jet(1, 0), Jet::int_jet(1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn elementary_lead_examples() {
        let a: Vec<Jet<Q>> = vec![Jet::<Q>::int_jet(4, 1), Jet::int_jet(1, 0), Jet::int_jet(1, 0)];
        assert_eq!(elementary_lead(&a, 0), bq(4, 1));
        assert_eq!(elementary_lead(&a, 1), bq(1, 1));
        assert_eq!(elementary_lead(&a, 2), bq(2, 1));
        // empty product convention
        assert_eq!(elementary_lead(&a, 3), bq(1, 1));
        // cancellation: {u, -u} has e₀ = -1 (full product -u²) and e₁ = 0
        let b: Vec<Jet<Q>> = vec![Jet::int_jet(1, 1), Jet::int_jet(-1, 1)];
        assert_eq!(elementary_lead(&b, 0), bq(-1, 1));
        assert_eq!(elementary_lead(&b, 1), bq(0, 1));
        // a zero jet contributes nothing
        let c: Vec<Jet<Q>> = vec![Jet::Zero, Jet::int_jet(3, 0)];
        assert_eq!(elementary_lead(&c, 0), bq(0, 1));
        assert_eq!(elementary_lead(&c, 1), bq(3, 1));
    }

    #[test]
    fn min_shapes_examples() {
        let t = square_example();
        assert_eq!(min_shapes(&t, 0), vec![part(&[1], 2, 4)]);
        assert_eq!(min_shapes(&t, 1), vec![part(&[2], 2, 4)]);
        assert_eq!(min_shapes(&t, 2), vec![part(&[2, 1], 2, 4)]);

        // a tied pair in distinct rows and columns doubles M at its rank
        let bound = RectBound::new(2, 4).unwrap();
        let shape = SkewShape::straight(Partition::new(vec![2, 1], bound).unwrap());
        let t = ValuedTableau::new(
            shape,
            vec![Jet::<Q>::int_jet(1, 2), Jet::int_jet(2, 1), Jet::int_jet(3, 1)],
        )
        .unwrap();
        let m2 = min_shapes(&t, 2);
        assert_eq!(m2.len(), 2);
        assert!(m2.contains(&part(&[2], 2, 4)));
        assert!(m2.contains(&part(&[1, 1], 2, 4)));
    }

    #[test]
    fn omega_product_examples() {
        let t = square_example();
        let sols = solve_full(&t).unwrap();
        assert_eq!(sols.len(), 1);
        let omega = &sols[0].omega;
        assert_eq!(omega.omegas(), &[bq(6, 1), bq(1, 3), bq(1, 1)]);
        // Ω over the outer shape is the empty product
        assert_eq!(omega.omega_product(&part(&[2, 2], 2, 4)), bq(1, 1));
        assert_eq!(omega.omega_product(&part(&[1], 2, 4)), bq(2, 1));
        // shapes outside the interval give 0
        assert_eq!(omega.omega_product(&part(&[], 2, 4)), bq(0, 1));
    }

    #[test]
    fn square_example_full_solution() {
        let t = square_example();
        let sols = solve_full(&t).unwrap();
        assert_eq!(sols.len(), 1);
        let sol = &sols[0];
        assert!(!sol.degenerate);
        assert_eq!(sol.jacobian, bq(4, 1));
        assert_eq!(
            lead_term_residuals(&t, &sol.omega).unwrap(),
            vec![bq(0, 1); 3]
        );

        // the predicted Plücker leading terms of the example
        let lt = lead_terms(&t, &sol.omega).unwrap();
        let get = |p: &[usize]| {
            lt.iter()
                .find(|(nu, _)| *nu == part(p, 2, 4))
                .map(|(_, j)| j.clone())
                .unwrap()
        };
        assert_eq!(get(&[]), Jet::Zero);
        assert_eq!(get(&[1]), Jet::finite(bq(2, 1), bq(1, 1)));
        assert_eq!(get(&[1, 1]), Jet::finite(bq(6, 1), bq(1, 1)));
        assert_eq!(get(&[2]), Jet::finite(bq(1, 3), bq(0, 1)));
        assert_eq!(get(&[2, 1]), Jet::finite(bq(1, 1), bq(0, 1)));
        assert_eq!(get(&[2, 2]), Jet::finite(bq(1, 1), bq(0, 1)));
    }

    #[test]
    fn solve_distinct_small_cases() {
        // 1×1 rectangle: single equation q_■ ω = q_■ c
        let bound = RectBound::new(1, 2).unwrap();
        let shape = SkewShape::straight(bound.full());
        let t = ValuedTableau::new(shape, vec![Jet::int_jet(7, -1) as Jet<Q>]).unwrap();
        let omega = solve_distinct(&t).unwrap();
        assert_eq!(omega.omegas(), &[bq(7, 1)]);

        // 2×2 rectangle, row-reading tableau: chain ∅,(1),(2),(2,1),(2,2)
        // with q = 1,2,3,2,1, so ω = (2c₁, 3c₂/2, 2c₃/3, c₄/2)
        let bound = RectBound::new(2, 4).unwrap();
        let shape = SkewShape::straight(bound.full());
        let t = ValuedTableau::new(
            shape,
            vec![
                Jet::<Q>::int_jet(5, 4),
                Jet::int_jet(7, 3),
                Jet::int_jet(11, 2),
                Jet::int_jet(13, 1),
            ],
        )
        .unwrap();
        let omega = solve_distinct(&t).unwrap();
        assert_eq!(
            omega.omegas(),
            &[bq(10, 1), bq(21, 2), bq(22, 3), bq(13, 2)]
        );
        assert_eq!(
            lead_term_residuals(&t, &omega).unwrap(),
            vec![bq(0, 1); 4]
        );
    }

    #[test]
    fn solve_distinct_random_residuals() {
        let mut rng = StdRng::seed_from_u64(0x1eadfe11);
        for (d, n) in [(2usize, 4usize), (2, 5), (3, 6)] {
            let bound = RectBound::new(d, n).unwrap();
            let shape = SkewShape::straight(bound.full());
            let fillings = OrdTableau::enumerate(&shape);
            for _ in 0..40 {
                let ord = &fillings[rng.gen_range(0..fillings.len())];
                let m = shape.size();
                let jets: Vec<Jet<Q>> = (0..m)
                    .map(|i| {
                        Jet::finite(
                            bq(rng.gen_range(1..400) * if rng.gen() { 1 } else { -1 }, 1),
                            bq(3 * (m as i64 - i as i64), 1) + bq(rng.gen_range(0..3), 3),
                        )
                    })
                    .collect();
                let t = ord.to_valued(&jets).unwrap();
                let omega = solve_distinct(&t).unwrap();
                for r in lead_term_residuals(&t, &omega).unwrap() {
                    assert!(r.is_zero());
                }
                // restriction (I) inputs delegate cleanly
                let sols = solve_full(&t).unwrap();
                assert_eq!(sols.len(), 1);
                assert_eq!(sols[0].omega, omega);
                assert!(!sols[0].degenerate);
            }
        }
    }

    /// Every diamond α ⊂ β,β' ⊂ γ in rectangles up to 3×3 satisfies
    /// q_β q_{β'} / (q_α q_γ) = 1 − 1/L², L the box distance.
    fn diamonds(bound: RectBound) -> Vec<(Partition, Partition, Partition, Partition)> {
        let mut out = Vec::new();
        for alpha in bound.all_partitions() {
            let covers = alpha.covers_above();
            for (i, b1) in covers.iter().enumerate() {
                for b2 in &covers[i + 1..] {
                    let top = b1.join(b2);
                    if top.size() == alpha.size() + 2 {
                        out.push((alpha.clone(), b1.clone(), b2.clone(), top));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn diamond_ratio_is_distance_formula() {
        for (d, n) in [(2usize, 4usize), (2, 5), (3, 6)] {
            let bound = RectBound::new(d, n).unwrap();
            for (alpha, beta, betap, gamma) in diamonds(bound) {
                let c1 = alpha.added_box(&beta).unwrap();
                let c2 = alpha.added_box(&betap).unwrap();
                let l = box_distance(c1, c2) as i64;
                let ratio = BigRational::new(
                    beta.q_weight() * betap.q_weight(),
                    alpha.q_weight() * gamma.q_weight(),
                );
                assert_eq!(ratio, bq(1, 1) - bq(1, l * l));
            }
        }
    }

    #[test]
    fn tworoots_diamond_examples() {
        // L=2 diamond in the 2×2 rectangle: q-weights 2,3,1,2
        let (qp, qa, qb, qn) = (
            BigInt::from(2),
            BigInt::from(3),
            BigInt::from(1),
            BigInt::from(2),
        );
        let roots = solve_tworoots(&qp, &qa, &qb, &qn, &1.0f64, &-1.0f64).unwrap();
        assert!((roots.discriminant - 3.0).abs() < 1e-14);
        for (wk, wk1) in roots.pairs {
            // sum and product relations
            let sum = (1.0 * wk + 3.0 * wk1) / 2.0;
            assert!((sum - 0.0).abs() < 1e-12);
            assert!((2.0 / 2.0 * wk * wk1 - -1.0).abs() < 1e-12);
        }
        // the second pair is the stated transform of the first
        let r = solve_tworoots(&qp, &qa, &qb, &qn, &2.0f64, &5.0f64).unwrap();
        let (w1, w2) = r.pairs[0];
        let (v1, v2) = r.pairs[1];
        assert!((v1 - 3.0 * w2 / 1.0).abs() < 1e-12);
        assert!((v2 - 1.0 * w1 / 3.0).abs() < 1e-12);
        // zero coefficients are rejected
        assert!(solve_tworoots(&qp, &qa, &qb, &qn, &0.0f64, &5.0f64).is_err());
    }

    #[test]
    fn discriminant_positive_for_real_pairs() {
        let mut rng = StdRng::seed_from_u64(0xd15c);
        for (d, n) in [(2usize, 4usize), (3, 6)] {
            let bound = RectBound::new(d, n).unwrap();
            for (alpha, beta, betap, gamma) in diamonds(bound) {
                let l = box_distance(
                    alpha.added_box(&beta).unwrap(),
                    alpha.added_box(&betap).unwrap(),
                ) as f64;
                for _ in 0..200 {
                    let ck: f64 = rng.gen_range(-10.0..10.0);
                    let ck1: f64 = rng.gen_range(-10.0..10.0);
                    if ck == 0.0 || ck1 == 0.0 {
                        continue;
                    }
                    let disc = (ck + ck1).powi(2) - 4.0 * (1.0 - l.powi(-2)) * ck * ck1;
                    assert!(disc > 0.0);
                    if ck * ck1 > 0.0 {
                        assert!(disc > (ck - ck1).powi(2));
                    }
                    let roots = solve_tworoots(
                        &alpha.q_weight(),
                        &beta.q_weight(),
                        &betap.q_weight(),
                        &gamma.q_weight(),
                        &ck,
                        &ck1,
                    )
                    .unwrap();
                    assert!(roots.discriminant > 0.0);
                    assert!(roots.pairs[0] != roots.pairs[1]);
                }
            }
        }
    }

    #[test]
    fn tied_pair_gives_two_real_solutions() {
        // straight shape (2,1), tie at ranks 2,3 in distinct rows/columns
        let bound = RectBound::new(2, 4).unwrap();
        let shape = SkewShape::straight(Partition::new(vec![2, 1], bound).unwrap());
        let t = ValuedTableau::new(
            shape,
            vec![
                Jet::finite(3.0f64, bq(2, 1)),
                Jet::finite(2.0f64, bq(1, 1)),
                Jet::finite(5.0f64, bq(1, 1)),
            ],
        )
        .unwrap();
        let sols = solve_full(&t).unwrap();
        assert_eq!(sols.len(), 2);
        for sol in &sols {
            assert!(!sol.degenerate);
            for r in lead_term_residuals(&t, &sol.omega).unwrap() {
                assert!(r.abs() < 1e-10, "residual {r}");
            }
        }
        assert!(sols[0].omega != sols[1].omega);
    }

    #[test]
    fn same_row_tie_has_unique_solution() {
        let t = square_example();
        let sols = solve_full(&t).unwrap();
        assert_eq!(sols.len(), 1);
        // a vanishing coefficient sum is rejected
        let bound = RectBound::new(2, 4).unwrap();
        let shape = SkewShape::new(
            Partition::new(vec![2, 2], bound).unwrap(),
            Partition::new(vec![1], bound).unwrap(),
        )
        .unwrap();
        let t = ValuedTableau::new(
            shape,
            vec![
                Jet::int_jet(4, 1) as Jet<Q>,
                Jet::int_jet(1, 0),
                Jet::int_jet(-1, 0),
            ],
        )
        .unwrap();
        assert!(matches!(solve_full(&t), Err(Error::TiePattern(_))));
    }

    #[test]
    fn dense_ties_are_rejected() {
        let bound = RectBound::new(2, 4).unwrap();
        let shape = SkewShape::straight(Partition::new(vec![2, 1], bound).unwrap());
        let t = ValuedTableau::new(
            shape,
            vec![
                Jet::int_jet(1, 0) as Jet<Q>,
                Jet::int_jet(2, 0),
                Jet::int_jet(3, 0),
            ],
        )
        .unwrap();
        assert!(matches!(solve_full(&t), Err(Error::TiePattern(_))));
    }

    #[test]
    fn zero_and_infinity_entries_strip_away() {
        // full 2×2 tableau with a 0 in the corner and an ∞ at the end
        // solves the same system as the stripped two-box skew tableau
        let bound = RectBound::new(2, 4).unwrap();
        let full = SkewShape::straight(bound.full());
        let t = ValuedTableau::new(
            full,
            vec![
                Jet::Zero as Jet<Q>,
                Jet::int_jet(3, 2),
                Jet::int_jet(5, 1),
                Jet::Infinity,
            ],
        )
        .unwrap();
        let sols = solve_full(&t).unwrap();
        assert_eq!(sols.len(), 1);
        let stripped = strip_zero_infinity(&t).unwrap();
        assert_eq!(stripped.shape().outer(), &part(&[2, 1], 2, 4));
        assert_eq!(stripped.shape().inner(), &part(&[1], 2, 4));
        assert_eq!(stripped.size(), 2);
        let direct = solve_distinct(&stripped).unwrap();
        assert_eq!(sols[0].omega, direct);
        // a 0 away from an inner corner is structural nonsense
        let bad = ValuedTableau::new(
            SkewShape::straight(bound.full()),
            vec![
                Jet::int_jet(1, 3) as Jet<Q>,
                Jet::Zero,
                Jet::int_jet(5, 1),
                Jet::int_jet(7, 0),
            ],
        )
        .unwrap();
        assert!(strip_zero_infinity(&bad).is_err());
    }

    #[test]
    fn predicted_pluckers_seed() {
        let t = square_example();
        let sol = &solve_full(&t).unwrap()[0];
        let eps = 1e-2;
        let p = predicted_pluckers(&t, &sol.omega, eps).unwrap();
        let at = |s: &[usize]| *p.get(&part(s, 2, 4));
        assert!((at(&[]).norm()) == 0.0);
        assert!((at(&[1]) - Complex64::new(2.0 * eps, 0.0)).norm() < 1e-15);
        assert!((at(&[1, 1]) - Complex64::new(6.0 * eps, 0.0)).norm() < 1e-15);
        assert!((at(&[2]) - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((at(&[2, 2]) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(gt_check(&p, 1e-12));
    }

    #[test]
    fn gt_check_examples() {
        // any Ω-generated vector passes exactly
        let mut rng = StdRng::seed_from_u64(7);
        let bound = RectBound::new(2, 5).unwrap();
        let shape = SkewShape::straight(bound.full());
        let boxes = shape.boxes();
        let omegas: Vec<Q> = (0..boxes.len()).map(|_| bq(rng.gen_range(1..30), 1)).collect();
        let omega = OmegaAssignment::new(shape, boxes, omegas).unwrap();
        let c = PluckerVector::from_fn(bound, |nu| omega.omega_product(nu));
        assert!(gt_check(&c, 0.0));
        // perturbing one nonzero coordinate breaks a relation
        let mut bad = c.clone();
        bad.set(&part(&[2, 1], 2, 5), bad.get(&part(&[2, 1], 2, 5)).clone() + bq(1, 1));
        assert!(!gt_check(&bad, 0.0));
        // the delta vector supported on the full shape passes trivially
        let delta = PluckerVector::from_fn(bound, |nu| {
            if nu.is_full() {
                bq(1, 1)
            } else {
                bq(0, 1)
            }
        });
        assert!(gt_check(&delta, 0.0));
    }

    #[test]
    fn weight_vectors_separate_tableaux() {
        for (d, n) in [(2usize, 4usize), (2, 5)] {
            let bound = RectBound::new(d, n).unwrap();
            let shape = SkewShape::straight(bound.full());
            let m = shape.size();
            let jets: Vec<Jet<Q>> = (0..m).map(|i| Jet::int_jet(1, m as i64 - i as i64)).collect();
            let mut seen = Vec::new();
            for ord in OrdTableau::enumerate(&shape) {
                let t = ord.to_valued(&jets).unwrap();
                let w = weight_vector(&t).unwrap();
                assert_eq!(
                    w.iter().find(|(nu, _)| nu.is_full()).unwrap().1,
                    BigRational::zero()
                );
                assert!(!seen.contains(&w), "weight vectors must be distinct");
                seen.push(w);
            }
        }
    }

    #[test]
    fn critical_ratio_properties() {
        for l in 2u32..=6 {
            let (r1, r2) = critical_ratio(l);
            assert!((r1.norm() - 1.0).abs() < 1e-15);
            assert!((r2.norm() - 1.0).abs() < 1e-15);
            assert!(r1.im != 0.0 && r2.im != 0.0, "critical ratios are never real");
            assert_eq!(r1.conj(), r2);
            // substituting r = c_k/c_{k+1} kills the discriminant
            for r in [r1, r2] {
                let resid = (r + 1.0).powi(2) - 4.0 * (1.0 - (l as f64).powi(-2)) * r;
                assert!(resid.norm() < 1e-12);
            }
        }
        let (r1, _) = critical_ratio(2);
        assert!((r1 - Complex64::new(0.5, 0.75f64.sqrt())).norm() < 1e-15);
    }
}
