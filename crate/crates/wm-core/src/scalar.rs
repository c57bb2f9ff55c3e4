//! The scalar abstraction shared by the exact and floating-point halves of
//! the crate: one trait covering ℚ, ℝ (f64) and ℂ (Complex64), so that the
//! polynomial and leading-term machinery can be written once and run either
//! exactly or numerically.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    /// A square root within the field, if one exists (for ℚ: the argument
    /// must be a perfect square; for ℝ: nonnegative; for ℂ: always).
    fn sqrt_checked(&self) -> Option<Self>;

    /// |·| as a double, for diagnostics and tolerances.
    fn magnitude(&self) -> f64;

    /// Lossy embedding into ℂ as doubles, for handing exact results to the
    /// numerical tracker.
    fn to_c64(&self) -> Complex64;
}

fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn sqrt_checked(&self) -> Option<Self> {
        let num = perfect_sqrt(self.numer())?;
        let den = perfect_sqrt(self.denom())?;
        Some(BigRational::new(num, den))
    }

    fn magnitude(&self) -> f64 {
        crate::tableaux::rational_to_f64(&self.abs())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(crate::tableaux::rational_to_f64(self), 0.0)
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        crate::tableaux::rational_to_f64(q)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(crate::tableaux::rational_to_f64(q), 0.0)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        Some(self.sqrt())
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// Exact conversion of a rational to a complex double may lose precision;
/// this helper exists for call sites that need to be explicit about it.
pub fn rational_to_c64(q: &BigRational) -> Complex64 {
    Complex64::from_rational(q)
}

/// Integer power with exact semantics for any scalar.
pub fn powi<T: Scalar>(base: &T, mut e: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b.clone();
        }
        b = b.clone() * b;
        e >>= 1;
    }
    acc
}

/// Convert a big rational to f64 via i128 when it fits, else via string
/// parsing (used by tableaux as well; re-exported here for symmetry).
pub fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

// ---------------------------------------------------------------------------
// Double-double arithmetic.
//
// The fiber equations at geometric roots mix coefficient magnitudes across
// dozens of orders, and the small coefficients are sums of much larger
// products. Plain f64 evaluation leaves them with absolute noise ~2⁻⁵³ times
// the largest product, which silently erases exactly the Plücker coordinates
// that distinguish nearby fiber points. Evaluating residuals in a compensated
// (hi, lo) pair pushes that noise floor down to ~2⁻¹⁰⁶ while the Jacobian —
// which only steers Newton — can stay in f64.

/// An unevaluated sum hi + lo of two doubles with |lo| ≤ ulp(hi)/2
/// (Dekker/Knuth error-free transformations, products via FMA).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e2) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e2 + f);
        DD { hi, lo }
    }

    pub fn sub(self, o: DD) -> DD {
        self.add(DD {
            hi: -o.hi,
            lo: -o.lo,
        })
    }

    pub fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }

    pub fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(DD::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(DD::from_f64(q2)));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        DD { hi, lo }
    }

    pub fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn from_rational(q: &BigRational) -> DD {
        let hi = crate::tableaux::rational_to_f64(q);
        if !hi.is_finite() {
            return DD::from_f64(hi);
        }
        let rest = q - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        DD {
            hi,
            lo: crate::tableaux::rational_to_f64(&rest),
        }
    }
}

/// Complex numbers over [`DD`]; the scalar the tracker uses for residual
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDD {
    pub re: DD,
    pub im: DD,
}

impl ComplexDD {
    pub fn from_c64(z: Complex64) -> ComplexDD {
        ComplexDD {
            re: DD::from_f64(z.re),
            im: DD::from_f64(z.im),
        }
    }
}

impl Add for ComplexDD {
    type Output = ComplexDD;
    fn add(self, o: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }
}

impl Sub for ComplexDD {
    type Output = ComplexDD;
    fn sub(self, o: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }
}

impl Mul for ComplexDD {
    type Output = ComplexDD;
    fn mul(self, o: ComplexDD) -> ComplexDD {
        ComplexDD {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }
}

impl Div for ComplexDD {
    type Output = ComplexDD;
    fn div(self, o: ComplexDD) -> ComplexDD {
        let w = o.re.mul(o.re).add(o.im.mul(o.im));
        ComplexDD {
            re: self.re.mul(o.re).add(self.im.mul(o.im)).div(w),
            im: self.im.mul(o.re).sub(self.re.mul(o.im)).div(w),
        }
    }
}

impl Neg for ComplexDD {
    type Output = ComplexDD;
    fn neg(self) -> ComplexDD {
        ComplexDD {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

impl Zero for ComplexDD {
    fn zero() -> Self {
        ComplexDD {
            re: DD::ZERO,
            im: DD::ZERO,
        }
    }
    fn is_zero(&self) -> bool {
        self.re == DD::ZERO && self.im == DD::ZERO
    }
}

impl One for ComplexDD {
    fn one() -> Self {
        ComplexDD {
            re: DD::from_f64(1.0),
            im: DD::ZERO,
        }
    }
}

impl Scalar for ComplexDD {
    fn from_rational(q: &BigRational) -> Self {
        ComplexDD {
            re: DD::from_rational(q),
            im: DD::ZERO,
        }
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // f64 seed plus one Newton step x ← (x + z/x)/2 carried in DD
        let seed = self.to_c64().sqrt();
        let x = ComplexDD::from_c64(seed);
        let half = ComplexDD {
            re: DD::from_f64(0.5),
            im: DD::ZERO,
        };
        Some((x + *self / x) * half)
    }

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt() {
        let q = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(
            q.sqrt_checked(),
            Some(BigRational::new(BigInt::from(3), BigInt::from(2)))
        );
        let q = BigRational::new(BigInt::from(2), BigInt::from(1));
        assert_eq!(q.sqrt_checked(), None);
        let q = BigRational::from_integer(BigInt::from(-4));
        assert_eq!(q.sqrt_checked(), None);
    }

    #[test]
    fn float_and_complex_sqrt() {
        assert_eq!(4.0_f64.sqrt_checked(), Some(2.0));
        assert_eq!((-1.0_f64).sqrt_checked(), None);
        let z = Complex64::new(-1.0, 0.0).sqrt_checked().unwrap();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn dd_tracks_exact_rationals() {
        // sum of products whose exact value is ~53 bits below the summands
        let big = DD::from_f64(3.0).mul(DD::from_f64(1e16));
        let tiny = DD::from_f64(7.0);
        let s = big.add(tiny).sub(big);
        assert_eq!(s.to_f64(), 7.0);

        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let d = DD::from_rational(&q);
        let back = d.hi + d.lo;
        assert!((back - 1.0 / 3.0).abs() < 1e-18);
        // the lo part captures the rounding error of hi
        assert!(d.lo.abs() > 0.0);

        // division round trip at double-double accuracy
        let a = DD::from_f64(1.0).div(DD::from_f64(3.0));
        let r = a.mul(DD::from_f64(3.0)).sub(DD::from_f64(1.0));
        assert!(r.to_f64().abs() < 1e-30);
    }

    #[test]
    fn complex_dd_matches_c64_at_low_precision() {
        let a = ComplexDD::from_c64(Complex64::new(1.25, -0.5));
        let b = ComplexDD::from_c64(Complex64::new(-2.0, 3.0));
        let exact = Complex64::new(1.25, -0.5) * Complex64::new(-2.0, 3.0);
        assert!(((a * b).to_c64() - exact).norm() < 1e-15);
        let q = (a / b) * b - a;
        assert!(q.to_c64().norm() < 1e-30);
        let s = (a * a).sqrt_checked().unwrap();
        assert!((s.to_c64() - Complex64::new(1.25, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn powers() {
        assert_eq!(powi(&BigRational::from_int(3), 4), BigRational::from_int(81));
        assert_eq!(powi(&2.0f64, 10), 1024.0);
        assert_eq!(powi(&Complex64::new(0.0, 1.0), 2), Complex64::new(-1.0, 0.0));
    }
}
