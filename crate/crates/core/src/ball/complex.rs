//! Rectangular complex balls.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;

use super::{Ball, Dyadic, Mag};

/// `re + i*im` with independent real and imaginary enclosures.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> CBall {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> CBall {
        CBall { re, im: Ball::zero() }
    }

    pub fn zero() -> CBall {
        CBall::real(Ball::zero())
    }

    pub fn one() -> CBall {
        CBall::real(Ball::one())
    }

    pub fn from_c64(z: Complex64, prec: u32) -> CBall {
        CBall::new(Ball::from_f64(z.re).with_prec(prec), Ball::from_f64(z.im).with_prec(prec))
    }

    /// Disk around an exact centre, enclosed in a square of half-width `r`.
    pub fn disk(center: &CBall, r: Mag) -> CBall {
        CBall::new(
            Ball::with_radius(center.re.mid(), r, center.re.prec()),
            Ball::with_radius(center.im.mid(), r, center.im.prec()),
        )
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> CBall {
        CBall::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.mid_f64(), self.im.mid_f64())
    }

    /// Centre with the radii dropped.
    pub fn midpoint(&self) -> CBall {
        CBall::new(self.re.midpoint(), self.im.midpoint())
    }

    /// Upper bound on the distance from the midpoint to any point.
    pub fn radius(&self) -> Mag {
        let r = self.re.rad().max(self.im.rad());
        // sqrt(2) < 3/2
        r.mul_up(Mag::from_u64_up(3, -1))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &CBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn contains(&self, other: &CBall) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn hull(&self, other: &CBall) -> CBall {
        CBall::new(self.re.hull(&other.re), self.im.hull(&other.im))
    }

    pub fn conj(&self) -> CBall {
        CBall::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> CBall {
        CBall::new(self.re.neg(), self.im.neg())
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        if o.im.is_exact_zero() {
            return self.mul_real(&o.re);
        }
        if self.im.is_exact_zero() {
            return o.mul_real(&self.re);
        }
        CBall::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn sqr(&self) -> CBall {
        self.mul(self)
    }

    pub fn mul_real(&self, r: &Ball) -> CBall {
        CBall::new(self.re.mul(r), self.im.mul(r))
    }

    pub fn mul_2exp(&self, k: i64) -> CBall {
        CBall::new(self.re.mul_2exp(k), self.im.mul_2exp(k))
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> Ball {
        if self.im.is_exact_zero() {
            return self.re.abs();
        }
        self.norm_sqr().sqrt_nonneg()
    }

    pub fn inv(&self) -> Option<CBall> {
        let n = self.norm_sqr();
        let c = self.conj();
        Some(CBall::new(c.re.checked_div(&n)?, c.im.checked_div(&n)?))
    }

    pub fn checked_div(&self, o: &CBall) -> Option<CBall> {
        if o.im.is_exact_zero() {
            return Some(CBall::new(self.re.checked_div(&o.re)?, self.im.checked_div(&o.re)?));
        }
        let n = o.norm_sqr();
        let num = self.mul(&o.conj());
        Some(CBall::new(num.re.checked_div(&n)?, num.im.checked_div(&n)?))
    }

    /// `exp(i * pi * p / q)`.
    pub fn cis_pi_rational(p: &BigInt, q: &BigInt, prec: u32) -> CBall {
        CBall::new(Ball::cos_pi_rational(p, q, prec), Ball::sin_pi_rational(p, q, prec))
    }

    pub fn pow(&self, n: u64) -> CBall {
        let mut result = CBall::one();
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

    /// Principal square root, choosing the formula that avoids cancellation.
    pub fn sqrt(&self) -> Option<CBall> {
        if self.im.is_exact_zero() {
            if self.re.is_positive() || self.re.is_exact_zero() {
                return Some(CBall::real(self.re.sqrt_nonneg()));
            }
            if self.re.is_negative() {
                return Some(CBall::new(Ball::zero(), self.re.neg().sqrt()?));
            }
            return None;
        }
        let r = self.abs();
        // t = sqrt((|z| + |re|)/2) > 0; the other component is im / (2t).
        let t = r.add(&self.re.abs()).mul_2exp(-1).sqrt()?;
        let other = self.im.checked_div(&t.mul_2exp(1))?;
        if self.re.is_positive() {
            Some(CBall::new(t, other))
        } else if self.re.is_negative() {
            let t = if self.im.is_negative() { t.neg() } else { t };
            let other = if self.im.is_negative() { other.neg() } else { other };
            Some(CBall::new(other, t))
        } else {
            // Near the imaginary axis both formulas are well conditioned as
            // long as im stays away from zero.
            if self.im.contains_zero() {
                return None;
            }
            Some(CBall::new(t, other))
        }
    }

    /// Enclosing real ball for a number known to be real.
    pub fn real_part_checked(&self) -> Option<Ball> {
        if self.im.contains_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    pub fn from_dyadics(re: Dyadic, im: Dyadic) -> CBall {
        CBall::new(Ball::from_dyadic(re), Ball::from_dyadic(im))
    }
}

macro_rules! forward_cbinop {
    ($tr:ident, $method:ident) => {
        impl $tr<&CBall> for &CBall {
            type Output = CBall;
            fn $method(self, rhs: &CBall) -> CBall {
                CBall::$method(self, rhs)
            }
        }
    };
}

forward_cbinop!(Add, add);
forward_cbinop!(Sub, sub);
forward_cbinop!(Mul, mul);

impl Neg for &CBall {
    type Output = CBall;
    fn neg(self) -> CBall {
        CBall::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    #[test]
    fn roots_of_unity_multiply_exactly_enough() {
        let w = CBall::cis_pi_rational(&BigInt::from(2), &BigInt::from(7), 128);
        let one = w.pow(7);
        assert!(one.re.contains_rational(&BigRational::one()));
        assert!(one.im.contains_rational(&BigRational::zero()));
    }

    #[test]
    fn sqrt_of_negative_real() {
        let z = CBall::real(Ball::from_i64(-7).with_prec(128));
        let r = z.sqrt().unwrap();
        let back = r.sqr();
        assert!(back.re.contains_rational(&BigRational::from_integer(BigInt::from(-7))));
        assert!((r.im.mid_f64() - 7f64.sqrt()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(a in -100.0f64..100.0, b in -100.0f64..100.0,
                                           c in 0.5f64..100.0, d in -100.0f64..100.0) {
            let x = CBall::from_c64(Complex64::new(a, b), 128);
            let y = CBall::from_c64(Complex64::new(c, d), 128);
            let back = x.mul(&y).checked_div(&y).unwrap();
            prop_assert!(back.overlaps(&x));
            prop_assert!(back.re.rad_f64() < 1e-25);
        }

        #[test]
        fn sqrt_squares_back(a in -100.0f64..100.0, b in -100.0f64..100.0) {
            prop_assume!(b.abs() > 1e-3);
            let z = CBall::from_c64(Complex64::new(a, b), 128);
            let r = z.sqrt().unwrap();
            prop_assert!(r.sqr().overlaps(&z));
            let f = Complex64::new(a, b).sqrt();
            prop_assert!((r.to_c64() - f).norm() < 1e-10);
        }
    }
}
