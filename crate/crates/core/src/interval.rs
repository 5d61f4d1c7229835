//! Real and rectangular complex interval arithmetic with outward rounding.
//!
//! Intervals are stored by their endpoints. Every operation computes each
//! endpoint in round-to-nearest and then recovers the exact rounding error
//! with an error-free transformation (TwoSum for sums, FMA for products,
//! quotients and square roots). The endpoint is moved one step outward only
//! when the error points outward, so results are the tightest directed-rounded
//! enclosures and exact operations stay exact.
//!
//! Arithmetic overflow saturates to infinite endpoints, which still contain
//! the exact result. Public constructors reject non-finite input; callers that
//! need finite results check [`RealInterval::is_finite`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalError {
    #[error("lower endpoint {lo} exceeds upper endpoint {hi}")]
    Inverted { lo: f64, hi: f64 },
    #[error("non-finite interval input")]
    NonFinite,
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("division by an interval containing zero")]
    DivisionByZero,
}

/// Below this magnitude the FMA residual of a product or quotient may itself
/// underflow, so the result is widened unconditionally instead.
const UNDERFLOW_GUARD: f64 = 1e-270;

pub(crate) mod round {
    use super::UNDERFLOW_GUARD;

    #[inline]
    fn saturate(x: f64) -> (f64, f64) {
        if x == f64::INFINITY {
            (f64::MAX, f64::INFINITY)
        } else if x == f64::NEG_INFINITY {
            (f64::NEG_INFINITY, f64::MIN)
        } else {
            (f64::NEG_INFINITY, f64::INFINITY)
        }
    }

    #[inline]
    fn from_error(x: f64, err: f64) -> (f64, f64) {
        let lo = if err < 0.0 { x.next_down() } else { x };
        let hi = if err > 0.0 { x.next_up() } else { x };
        (lo, hi)
    }

    /// Rounded-down and rounded-up values of `a + b`.
    #[inline]
    pub fn add(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        if !s.is_finite() {
            return saturate(s);
        }
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        from_error(s, err)
    }

    #[inline]
    pub fn sub(a: f64, b: f64) -> (f64, f64) {
        add(a, -b)
    }

    /// Rounded-down and rounded-up values of `a * b`.
    #[inline]
    pub fn mul(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        if !p.is_finite() {
            return saturate(p);
        }
        if a == 0.0 || b == 0.0 {
            return (0.0, 0.0);
        }
        if p.abs() < UNDERFLOW_GUARD {
            return (p.next_down(), p.next_up());
        }
        from_error(p, a.mul_add(b, -p))
    }

    /// Rounded-down and rounded-up values of `a / b`, `b != 0`.
    #[inline]
    pub fn div(a: f64, b: f64) -> (f64, f64) {
        let q = a / b;
        if !q.is_finite() {
            return saturate(q);
        }
        if a == 0.0 {
            return (0.0, 0.0);
        }
        if q.abs() < UNDERFLOW_GUARD || a.abs() < UNDERFLOW_GUARD {
            return (q.next_down(), q.next_up());
        }
        // a/b - q = r/b with r exact.
        let r = (-q).mul_add(b, a);
        let err = if b > 0.0 { r } else { -r };
        from_error(q, err)
    }

    /// Rounded-down and rounded-up values of `sqrt(x)`, `x >= 0`.
    #[inline]
    pub fn sqrt(x: f64) -> (f64, f64) {
        let s = x.sqrt();
        if x == 0.0 || !s.is_finite() {
            return (s, s);
        }
        if x < UNDERFLOW_GUARD {
            return (s.next_down().max(0.0), s.next_up());
        }
        from_error(s, (-s).mul_add(s, x))
    }

    #[inline]
    pub fn add_up(a: f64, b: f64) -> f64 {
        add(a, b).1
    }

    #[inline]
    pub fn mul_up(a: f64, b: f64) -> f64 {
        mul(a, b).1
    }

    #[inline]
    pub fn sub_up(a: f64, b: f64) -> f64 {
        sub(a, b).1
    }

    #[inline]
    pub fn div_up(a: f64, b: f64) -> f64 {
        div(a, b).1
    }

    #[inline]
    pub fn sqrt_up(x: f64) -> f64 {
        sqrt(x).1
    }

    /// Upper bound of `sqrt(a^2 + b^2)`.
    #[inline]
    pub fn hypot_up(a: f64, b: f64) -> f64 {
        let (a, b) = (a.abs(), b.abs());
        if a == 0.0 {
            return b;
        }
        if b == 0.0 {
            return a;
        }
        sqrt_up(add_up(mul_up(a, a), mul_up(b, b)))
    }

    /// Upper bound of a sum of nonnegative terms.
    pub fn sum_up(terms: impl IntoIterator<Item = f64>) -> f64 {
        terms.into_iter().fold(0.0, add_up)
    }
}

/// The four basic arithmetic operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub const ALL: [ArithOp; 4] = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];
}

/// A closed real interval `[lo, hi]`.
#[derive(Clone, Copy, PartialEq)]
pub struct RealInterval {
    lo: f64,
    hi: f64,
}

impl RealInterval {
    pub const ZERO: RealInterval = RealInterval { lo: 0.0, hi: 0.0 };
    pub const ONE: RealInterval = RealInterval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::NonFinite);
        }
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    ///
    /// Panics if `x` is not finite.
    #[inline]
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "point interval from non-finite value {x}");
        Self { lo: x, hi: x }
    }

    /// `[mid - rad, mid + rad]` with outward-rounded endpoints.
    pub fn from_midrad(mid: f64, rad: f64) -> Result<Self, IntervalError> {
        if !mid.is_finite() || !rad.is_finite() {
            return Err(IntervalError::NonFinite);
        }
        if rad < 0.0 {
            return Err(IntervalError::NegativeRadius(rad));
        }
        let r = Self {
            lo: round::sub(mid, rad).0,
            hi: round::add(mid, rad).1,
        };
        if r.is_finite() {
            Ok(r)
        } else {
            Err(IntervalError::NonFinite)
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    #[inline]
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Midpoint, rounded to nearest.
    #[inline]
    pub fn mid(&self) -> f64 {
        if self.lo == self.hi {
            return self.lo;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound of `max(hi - m, m - lo)` for `m = self.mid()`.
    pub fn rad_up(&self) -> f64 {
        let m = self.mid();
        round::sub_up(self.hi, m).max(round::sub_up(m, self.lo))
    }

    /// Upper bound of the width `hi - lo`.
    pub fn width_up(&self) -> f64 {
        round::sub_up(self.hi, self.lo)
    }

    /// `max |x|` over the interval. Exact.
    #[inline]
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `self` lies in the open interior of `other`.
    pub fn is_interior_of(&self, other: &Self) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Product with a real scalar; two endpoint products instead of four.
    #[inline]
    pub fn scale(&self, s: f64) -> Self {
        if s >= 0.0 {
            Self {
                lo: round::mul(s, self.lo).0,
                hi: round::mul(s, self.hi).1,
            }
        } else {
            Self {
                lo: round::mul(s, self.hi).0,
                hi: round::mul(s, self.lo).1,
            }
        }
    }

    /// Tight enclosure of `{x^2 : x in self}`.
    pub fn sqr(&self) -> Self {
        if self.lo >= 0.0 {
            Self {
                lo: round::mul(self.lo, self.lo).0,
                hi: round::mul(self.hi, self.hi).1,
            }
        } else if self.hi <= 0.0 {
            Self {
                lo: round::mul(self.hi, self.hi).0,
                hi: round::mul(self.lo, self.lo).1,
            }
        } else {
            let m = self.mag();
            Self {
                lo: 0.0,
                hi: round::mul(m, m).1,
            }
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, IntervalError> {
        if rhs.contains_zero() {
            return Err(IntervalError::DivisionByZero);
        }
        let q = [
            round::div(self.lo, rhs.lo),
            round::div(self.lo, rhs.hi),
            round::div(self.hi, rhs.lo),
            round::div(self.hi, rhs.hi),
        ];
        Ok(Self::enclose(q))
    }

    pub fn apply(&self, op: ArithOp, rhs: &Self) -> Result<Self, IntervalError> {
        Ok(match op {
            ArithOp::Add => *self + *rhs,
            ArithOp::Sub => *self - *rhs,
            ArithOp::Mul => *self * *rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    #[inline]
    fn enclose(bounds: [(f64, f64); 4]) -> Self {
        let mut lo = bounds[0].0;
        let mut hi = bounds[0].1;
        for &(l, h) in &bounds[1..] {
            lo = lo.min(l);
            hi = hi.max(h);
        }
        Self { lo, hi }
    }
}

impl fmt::Debug for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl Add for RealInterval {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self {
            lo: round::add(self.lo, rhs.lo).0,
            hi: round::add(self.hi, rhs.hi).1,
        }
    }
}

impl Sub for RealInterval {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self {
            lo: round::sub(self.lo, rhs.hi).0,
            hi: round::sub(self.hi, rhs.lo).1,
        }
    }
}

impl Mul for RealInterval {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.is_point() {
            return rhs.scale(self.lo);
        }
        if rhs.is_point() {
            return self.scale(rhs.lo);
        }
        Self::enclose([
            round::mul(self.lo, rhs.lo),
            round::mul(self.lo, rhs.hi),
            round::mul(self.hi, rhs.lo),
            round::mul(self.hi, rhs.hi),
        ])
    }
}

impl Neg for RealInterval {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

/// A rectangle `re + i im` in the complex plane.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

impl ComplexInterval {
    pub const ZERO: ComplexInterval = ComplexInterval {
        re: RealInterval::ZERO,
        im: RealInterval::ZERO,
    };
    pub const ONE: ComplexInterval = ComplexInterval {
        re: RealInterval::ONE,
        im: RealInterval::ZERO,
    };

    #[inline]
    pub fn new(re: RealInterval, im: RealInterval) -> Self {
        Self { re, im }
    }

    /// Panics if `z` has a non-finite part.
    #[inline]
    pub fn point(z: Complex64) -> Self {
        Self {
            re: RealInterval::point(z.re),
            im: RealInterval::point(z.im),
        }
    }

    /// The rectangle `[mid_re ± rad_re] + i[mid_im ± rad_im]`.
    pub fn from_midrad(
        mid_re: f64,
        mid_im: f64,
        rad_re: f64,
        rad_im: f64,
    ) -> Result<Self, IntervalError> {
        Ok(Self {
            re: RealInterval::from_midrad(mid_re, rad_re)?,
            im: RealInterval::from_midrad(mid_im, rad_im)?,
        })
    }

    /// Rectangle center, rounded to nearest.
    #[inline]
    pub fn mid(&self) -> Complex64 {
        Complex64::new(self.re.mid(), self.im.mid())
    }

    /// Upper bound of `max |w - mid()|` over the rectangle.
    pub fn rad_up(&self) -> f64 {
        round::hypot_up(self.re.rad_up(), self.im.rad_up())
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    #[inline]
    pub fn is_point(&self) -> bool {
        self.re.is_point() && self.im.is_point()
    }

    /// The imaginary part is exactly the point zero.
    #[inline]
    pub fn is_real(&self) -> bool {
        self.im.lo == 0.0 && self.im.hi == 0.0
    }

    /// Upper bound of `max { |w| : w in self }`.
    #[inline]
    pub fn mag_sup(&self) -> f64 {
        round::hypot_up(self.re.mag(), self.im.mag())
    }

    #[inline]
    pub fn contains(&self, w: Complex64) -> bool {
        self.re.contains(w.re) && self.im.contains(w.im)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.re.is_subset_of(&other.re) && self.im.is_subset_of(&other.im)
    }

    pub fn is_interior_of(&self, other: &Self) -> bool {
        self.re.is_interior_of(&other.re) && self.im.is_interior_of(&other.im)
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            re: self.re.hull(&other.re),
            im: self.im.hull(&other.im),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    /// Product with a complex point.
    #[inline]
    pub fn mul_point(&self, z: Complex64) -> Self {
        Self {
            re: self.re.scale(z.re) - self.im.scale(z.im),
            im: self.im.scale(z.re) + self.re.scale(z.im),
        }
    }

    /// Enclosure of `{|w|^2 : w in self}`.
    pub fn abs_sqr(&self) -> RealInterval {
        self.re.sqr() + self.im.sqr()
    }

    /// Division as multiplication by the conjugate over `|rhs|^2`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, IntervalError> {
        let denom = rhs.abs_sqr();
        if denom.lo <= 0.0 {
            return Err(IntervalError::DivisionByZero);
        }
        let num = *self * rhs.conj();
        Ok(Self {
            re: num.re.checked_div(&denom)?,
            im: num.im.checked_div(&denom)?,
        })
    }

    pub fn apply(&self, op: ArithOp, rhs: &Self) -> Result<Self, IntervalError> {
        Ok(match op {
            ArithOp::Add => *self + *rhs,
            ArithOp::Sub => *self - *rhs,
            ArithOp::Mul => *self * *rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }
}

impl From<RealInterval> for ComplexInterval {
    fn from(re: RealInterval) -> Self {
        Self {
            re,
            im: RealInterval::ZERO,
        }
    }
}

impl fmt::Debug for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

impl Add for ComplexInterval {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexInterval {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for ComplexInterval {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Neg for ComplexInterval {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}
