//! Midpoint-radius interval arithmetic at arbitrary binary precision.
//!
//! A [`Ball`] is a dyadic midpoint `mant * 2^exp` together with a radius
//! bound. Every operation returns a ball that contains the exact result for
//! every choice of inputs inside the operand balls, so a chain of ball
//! operations is a proof of the enclosure it produces.
//!
//! Each ball carries the working precision it was produced at. Binary
//! operations run at the larger of the two precisions; precision `0` marks
//! exact values (integers, dyadic rationals) which stay exact under `+`,
//! `-` and `*`.

mod complex;
mod elementary;
mod mag;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use complex::CBall;
pub use mag::Mag;
pub(crate) use mag::ldexp;

/// Precision used by inexact operations on two exact operands.
pub const FALLBACK_PREC: u32 = 128;

/// Exact dyadic number `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        Dyadic { mant, exp }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        (
            &self.mant << (self.exp - e) as usize,
            &other.mant << (other.exp - e) as usize,
            e,
        )
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        bigint_to_f64_scaled(&self.mant, self.exp)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

fn bigint_to_f64_scaled(m: &BigInt, e: i64) -> f64 {
    let bits = m.bits();
    if bits <= 60 {
        return ldexp(m.to_f64().unwrap_or(0.0), e);
    }
    let shift = bits - 60;
    let top: BigInt = m >> shift as usize;
    ldexp(top.to_f64().unwrap_or(0.0), e + shift as i64)
}

/// Real interval `[mid - rad, mid + rad]` with a dyadic midpoint.
#[derive(Clone)]
pub struct Ball {
    mant: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ball({:e} ± {:.3e}, {} bits)", self.mid_f64(), self.rad.to_f64(), self.prec)
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {:.2e}]", self.mid_f64(), self.rad.to_f64())
    }
}

fn eff(prec: u32) -> u32 {
    if prec == 0 {
        FALLBACK_PREC
    } else {
        prec
    }
}

/// Rounds `mant * 2^exp` to `prec` bits (no-op for `prec == 0`), returning
/// the rounding error bound.
fn round_to(mant: BigInt, exp: i64, prec: u32) -> (BigInt, i64, Mag) {
    if prec == 0 {
        return (mant, exp, Mag::ZERO);
    }
    let bits = mant.bits();
    if bits <= prec as u64 {
        return (mant, exp, Mag::ZERO);
    }
    let shift = bits - prec as u64;
    let kept: BigInt = &mant >> shift as usize;
    let new_exp = exp + shift as i64;
    let lost = (&kept << shift as usize) != mant;
    let err = if lost { Mag::pow2(new_exp) } else { Mag::ZERO };
    (kept, new_exp, err)
}

impl Ball {
    fn raw(mant: BigInt, exp: i64, rad: Mag, prec: u32) -> Ball {
        Ball { mant, exp, rad, prec }
    }

    fn rounded(mant: BigInt, exp: i64, rad: Mag, prec: u32) -> Ball {
        let (m, e, err) = round_to(mant, exp, prec);
        Ball::raw(m, e, rad.add_up(err), prec)
    }

    pub fn zero() -> Ball {
        Ball::raw(BigInt::zero(), 0, Mag::ZERO, 0)
    }

    pub fn one() -> Ball {
        Ball::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Ball {
        Ball::raw(BigInt::from(v), 0, Mag::ZERO, 0)
    }

    pub fn from_bigint(v: BigInt) -> Ball {
        Ball::raw(v, 0, Mag::ZERO, 0)
    }

    /// Exact dyadic value.
    pub fn from_dyadic(d: Dyadic) -> Ball {
        Ball::raw(d.mant, d.exp, Mag::ZERO, 0)
    }

    /// Every finite `f64` is a dyadic rational, so this is exact.
    pub fn from_f64(x: f64) -> Ball {
        assert!(x.is_finite(), "non-finite ball midpoint");
        if x == 0.0 {
            return Ball::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1i64 << 52), exp - 1075) };
        Ball::raw(BigInt::from(sign * m), e, Mag::ZERO, 0)
    }

    /// Encloses a rational number at `prec` bits (exact when dyadic).
    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        let den = q.denom();
        if (den & (den - BigInt::one())).is_zero() {
            let shift = den.bits() as i64 - 1;
            return Ball::raw(q.numer().clone(), -shift, Mag::ZERO, 0);
        }
        let p = eff(prec);
        let num = q.numer();
        let s = (p as i64 + den.bits() as i64 - num.bits() as i64 + 2).max(0);
        let (quot, rem) = (num << s as usize).div_rem(den);
        let err = if rem.is_zero() { Mag::ZERO } else { Mag::pow2(-s) };
        Ball::rounded(quot, -s, err, p)
    }

    /// Ball with the given midpoint and radius.
    pub fn with_radius(mid: Dyadic, rad: Mag, prec: u32) -> Ball {
        Ball::raw(mid.mant, mid.exp, rad, prec)
    }

    /// Smallest ball (up to rounding) containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Ball {
        let sum = lo.add(hi);
        let diff = hi.sub(lo);
        let mid = Dyadic::new(sum.mant, sum.exp - 1);
        let rad = Mag::from_bigint_up(&diff.mant, diff.exp - 1);
        let (m, e, err) = round_to(mid.mant, mid.exp, prec);
        Ball::raw(m, e, rad.add_up(err).add_up(err), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same enclosure, re-rounded to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Ball {
        Ball::rounded(self.mant.clone(), self.exp, self.rad, prec)
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn mid(&self) -> Dyadic {
        Dyadic::new(self.mant.clone(), self.exp)
    }

    /// The midpoint as an exact (zero-radius) ball.
    pub fn midpoint(&self) -> Ball {
        Ball::raw(self.mant.clone(), self.exp, Mag::ZERO, self.prec)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn mid_f64(&self) -> f64 {
        bigint_to_f64_scaled(&self.mant, self.exp)
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    fn rad_dyadic(&self) -> Dyadic {
        let (m, e) = self.rad.to_dyadic();
        Dyadic::new(m, e)
    }

    pub fn lower(&self) -> Dyadic {
        self.mid().sub(&self.rad_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        self.mid().add(&self.rad_dyadic())
    }

    pub fn lower_f64(&self) -> f64 {
        self.lower().to_f64()
    }

    pub fn upper_f64(&self) -> f64 {
        self.upper().to_f64()
    }

    /// Upper bound on `|mid|`.
    pub fn mid_mag_up(&self) -> Mag {
        Mag::from_bigint_up(&self.mant, self.exp)
    }

    pub fn mid_mag_down(&self) -> Mag {
        Mag::from_bigint_down(&self.mant, self.exp)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid_mag_up().add_up(self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball touches zero).
    pub fn abs_lower(&self) -> Mag {
        self.mid_mag_down().sub_down(self.rad)
    }

    pub fn is_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus && !self.abs_lower().is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus && !self.abs_lower().is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mant.is_zero() && self.rad.is_zero()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        &lo <= q && q <= &hi
    }

    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Ball containing both operands.
    pub fn hull(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// Width `2 * rad` is strictly below `2^k`.
    pub fn width_below_pow2(&self, k: i64) -> bool {
        self.rad.mul_2exp(1).lt(&Mag::pow2(k))
    }

    /// The unique integer inside the ball, if the ball is narrower than 1/2
    /// and contains one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        if !self.width_below_pow2(-1) {
            return None;
        }
        // round(mid) = floor(mid + 1/2)
        let k = if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            let half = BigInt::one() << (-self.exp - 1) as usize;
            (&self.mant + half) >> (-self.exp) as usize
        };
        let kd = Dyadic::new(k.clone(), 0);
        if self.lower() <= kd && kd <= self.upper() {
            Some(k)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Ball {
        Ball::raw(-&self.mant, self.exp, self.rad, self.prec)
    }

    /// `|x|` as a ball.
    pub fn abs(&self) -> Ball {
        if self.is_negative() {
            self.neg()
        } else if self.is_positive() || self.mant.is_zero() && self.rad.is_zero() {
            self.clone()
        } else {
            let hi = self.abs_upper();
            let (m, e) = hi.to_dyadic();
            Ball::raw(m, e - 1, hi.mul_2exp(-1), self.prec)
        }
    }

    /// Encloses `max(1, x)`.
    pub fn max_one(&self) -> Ball {
        let one = Dyadic::new(BigInt::one(), 0);
        if self.lower() >= one {
            self.clone()
        } else if self.upper() <= one {
            Ball::one()
        } else {
            Ball::from_endpoints(&one, &self.upper(), self.prec)
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Ball {
        Ball::raw(self.mant.clone(), self.exp + k, self.rad.mul_2exp(k), self.prec)
    }

    fn add_impl(&self, other: &Ball, negate_other: bool) -> Ball {
        let prec = self.prec.max(other.prec);
        let mut rad = self.rad.add_up(other.rad);
        let mut a = (self.mant.clone(), self.exp);
        let mut b = (if negate_other { -&other.mant } else { other.mant.clone() }, other.exp);
        if a.0.is_zero() {
            return Ball::rounded(b.0, b.1, rad, prec);
        }
        if b.0.is_zero() {
            return Ball::rounded(a.0, a.1, rad, prec);
        }
        if prec > 0 {
            let top = (a.1 + a.0.bits() as i64).max(b.1 + b.0.bits() as i64);
            let floor = top - prec as i64 - 8;
            for x in [&mut a, &mut b] {
                if x.1 < floor {
                    let shift = (floor - x.1) as usize;
                    let kept: BigInt = &x.0 >> shift;
                    if (&kept << shift) != x.0 {
                        rad = rad.add_up(Mag::pow2(floor));
                    }
                    *x = (kept, floor);
                }
            }
        }
        let e = a.1.min(b.1);
        let sum = (a.0 << (a.1 - e) as usize) + (b.0 << (b.1 - e) as usize);
        Ball::rounded(sum, e, rad, prec)
    }

    pub fn add(&self, other: &Ball) -> Ball {
        self.add_impl(other, false)
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add_impl(other, true)
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let rad = self
            .mid_mag_up()
            .mul_up(other.rad)
            .add_up(other.mid_mag_up().mul_up(self.rad))
            .add_up(self.rad.mul_up(other.rad));
        Ball::rounded(&self.mant * &other.mant, self.exp + other.exp, rad, prec)
    }

    pub fn sqr(&self) -> Ball {
        self.mul(self)
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        self.mul(&Ball::from_i64(k))
    }

    /// `self / other`, or `None` when the divisor ball contains zero.
    pub fn checked_div(&self, other: &Ball) -> Option<Ball> {
        let prec = eff(self.prec.max(other.prec));
        let b_lo = other.abs_lower();
        if b_lo.is_zero() {
            return None;
        }
        let b_mid_up = other.mid_mag_up();
        let b_mid_down = other.mid_mag_down();
        // |x/y - a/b| <= (|b| ra + |a| rb) / (|b| (|b| - rb))
        let num = b_mid_up.mul_up(self.rad).add_up(self.mid_mag_up().mul_up(other.rad));
        let den = b_mid_down.mul_down(b_lo);
        let prop = if num.is_zero() { Mag::ZERO } else { num.div_up(den) };
        if self.mant.is_zero() {
            return Some(Ball::raw(BigInt::zero(), 0, prop, prec));
        }
        let s = (prec as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 2).max(0);
        let (q, r) = (&self.mant << s as usize).div_rem(&other.mant);
        let qexp = self.exp - s - other.exp;
        let err = if r.is_zero() { Mag::ZERO } else { Mag::pow2(qexp) };
        Some(Ball::rounded(q, qexp, prop.add_up(err), prec))
    }

    pub fn div(&self, other: &Ball) -> Ball {
        self.checked_div(other).expect("ball division by an interval containing zero")
    }

    pub fn inv(&self) -> Option<Ball> {
        Ball::one().with_prec_floor(self.prec).checked_div(self)
    }

    fn with_prec_floor(mut self, prec: u32) -> Ball {
        self.prec = self.prec.max(prec);
        self
    }

    pub fn div_i64(&self, k: i64) -> Ball {
        self.div(&Ball::from_i64(k))
    }

    /// Square root of a ball that lies strictly above zero.
    pub fn sqrt(&self) -> Option<Ball> {
        if !self.is_positive() {
            return None;
        }
        let prec = eff(self.prec);
        let mut m = self.mant.clone();
        let mut e = self.exp;
        let want = 2 * prec as i64 + 4;
        let mut s = (want - m.bits() as i64).max(0);
        if (e - s).rem_euclid(2) != 0 {
            s += 1;
        }
        m <<= s as usize;
        e -= s;
        let r = m.sqrt();
        let rexp = e / 2;
        let err = if &r * &r == m { Mag::ZERO } else { Mag::pow2(rexp) };
        let r_down = Mag::from_bigint_down(&r, rexp);
        let prop = if self.rad.is_zero() { Mag::ZERO } else { self.rad.div_up(r_down) };
        Some(Ball::rounded(r, rexp, prop.add_up(err), prec))
    }

    /// Square root of a quantity known to be non-negative; a ball reaching
    /// below zero is clipped to `[0, sqrt(upper)]`.
    pub fn sqrt_nonneg(&self) -> Ball {
        if let Some(r) = self.sqrt() {
            return r;
        }
        if self.is_exact_zero() {
            return Ball::zero();
        }
        let hi = if self.mant.sign() == Sign::Minus {
            self.rad.sub_down(self.mid_mag_down())
        } else {
            self.abs_upper()
        };
        let hi = hi.sqrt_up();
        let (m, e) = hi.to_dyadic();
        Ball::raw(m, e - 1, hi.mul_2exp(-1), self.prec)
    }

    pub fn pow(&self, n: u64) -> Ball {
        let mut result = Ball::one().with_prec_floor(self.prec);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        result
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                Ball::$inner(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::neg(self)
    }
}

impl From<i64> for Ball {
    fn from(v: i64) -> Ball {
        Ball::from_i64(v)
    }
}

impl From<&BigInt> for Ball {
    fn from(v: &BigInt) -> Ball {
        Ball::from_bigint(v.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rational_strategy() -> impl Strategy<Value = BigRational> {
        (-1_000_000i64..1_000_000, 1i64..100_000).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_exact_rationals(a in rational_strategy(), b in rational_strategy(), prec in 8u32..200) {
            let x = Ball::from_rational(&a, prec);
            let y = Ball::from_rational(&b, prec);
            prop_assert!(x.contains_rational(&a));
            prop_assert!((&x + &y).contains_rational(&(&a + &b)));
            prop_assert!((&x - &y).contains_rational(&(&a - &b)));
            prop_assert!((&x * &y).contains_rational(&(&a * &b)));
            if !b.is_zero() {
                let quotient = x.checked_div(&y).unwrap();
                prop_assert!(quotient.contains_rational(&(&a / &b)));
            }
        }

        #[test]
        fn sqrt_squares_back(n in 1u64..1_000_000_000, prec in 16u32..300) {
            let x = Ball::from_rational(&q(n as i64, 7), prec);
            let r = x.sqrt().unwrap();
            let back = r.sqr();
            prop_assert!(back.contains_rational(&q(n as i64, 7)));
            prop_assert!(r.rad_f64() <= r.mid_f64() * 2f64.powi(-(r.prec() as i32) + 4));
        }

        #[test]
        fn wide_inputs_still_enclose(a in rational_strategy(), b in rational_strategy()) {
            // Balls with a visible radius: test every endpoint combination.
            let x = Ball::from_rational(&a, 64).add(&Ball::with_radius(Dyadic::new(BigInt::zero(), 0), Mag::pow2(-10), 0));
            let y = Ball::from_rational(&b, 64).add(&Ball::with_radius(Dyadic::new(BigInt::zero(), 0), Mag::pow2(-12), 0));
            for dx in [-1i64, 1] {
                for dy in [-1i64, 1] {
                    let xa = &a + q(dx, 1024);
                    let yb = &b + q(dy, 4096);
                    prop_assert!((&x * &y).contains_rational(&(&xa * &yb)));
                    if let Some(d) = x.checked_div(&y) {
                        prop_assert!(d.contains_rational(&(&xa / &yb)));
                    }
                }
            }
        }
    }

    #[test]
    fn rounding_keeps_precision_bounded() {
        let third = Ball::from_rational(&q(1, 3), 100);
        assert!(third.mant.bits() <= 100);
        assert!(third.rad_f64() < 2f64.powi(-98));
        let x = third.pow(50);
        assert!(x.contains_rational(&q(1, 3).pow(50)));
    }

    #[test]
    fn unique_integer_requires_narrow_ball() {
        let x = Ball::from_rational(&q(7, 1), 64);
        assert_eq!(x.unique_integer(), Some(BigInt::from(7)));
        let y = Ball::from_rational(&q(15, 2), 64);
        assert_eq!(y.unique_integer(), None);
        let wide = Ball::with_radius(Dyadic::new(BigInt::from(7), 0), Mag::pow2(-1), 64);
        assert_eq!(wide.unique_integer(), None);
        let neg = Ball::from_rational(&q(-1201, 100), 64);
        assert_eq!(neg.unique_integer(), None);
        let near = Ball::from_rational(&q(-12001, 1000), 64)
            .add(&Ball::with_radius(Dyadic::new(BigInt::zero(), 0), Mag::pow2(-8), 0));
        assert_eq!(near.unique_integer(), Some(BigInt::from(-12)));
    }

    #[test]
    fn sqrt_nonneg_clips_at_zero() {
        let x = Ball::with_radius(Dyadic::new(BigInt::from(1), -40), Mag::pow2(-30), 64);
        let r = x.sqrt_nonneg();
        assert!(r.lower_f64() <= 0.0);
        assert!(r.upper_f64() >= 2f64.powi(-15));
    }

    #[test]
    fn hull_and_abs() {
        let a = Ball::from_i64(-3);
        let b = Ball::from_i64(5);
        let h = a.hull(&b);
        assert_eq!(h.lower_f64(), -3.0);
        assert_eq!(h.upper_f64(), 5.0);
        let abs = h.abs();
        assert!(abs.lower_f64() <= 0.0 && abs.upper_f64() >= 5.0);
        assert_eq!(a.abs().mid_f64(), 3.0);
    }

    #[test]
    fn tiny_addend_is_absorbed_into_radius() {
        let big = Ball::from_rational(&q(1, 3), 64).mul_2exp(1000);
        let tiny = Ball::from_rational(&q(1, 3), 64).mul_2exp(-1000);
        let s = &big + &tiny;
        assert!(s.mant.bits() <= 64);
        assert!(s.contains(&big.midpoint()) || s.overlaps(&big));
    }
}
