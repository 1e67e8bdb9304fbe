//! Unsigned magnitudes with a short mantissa and an unbounded exponent.
//!
//! A `Mag` is used for ball radii and for one-sided bounds on absolute
//! values. Every constructor and operation documents its rounding
//! direction; radii are always rounded up.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};

const MAG_BITS: u32 = 32;

/// `m * 2^e`. Zero is `m == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    m: u64,
    e: i64,
}

/// `x * 2^e` with saturation.
pub(crate) fn ldexp(x: f64, e: i64) -> f64 {
    let mut v = x;
    let mut e = e.clamp(-3000, 3000);
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

fn bitlen(x: u128) -> u32 {
    128 - x.leading_zeros()
}

impl Mag {
    pub const ZERO: Mag = Mag { m: 0, e: 0 };

    pub fn is_zero(&self) -> bool {
        self.m == 0
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Mag {
        Mag { m: 1, e }
    }

    fn normalize(m: u128, e: i64, up: bool) -> Mag {
        if m == 0 {
            return Mag::ZERO;
        }
        let len = bitlen(m);
        if len <= MAG_BITS {
            return Mag { m: m as u64, e };
        }
        let shift = len - MAG_BITS;
        let mut top = (m >> shift) as u64;
        let lost = m & ((1u128 << shift) - 1) != 0;
        if up && lost {
            top += 1;
        }
        Mag { m: top, e: e + shift as i64 }
    }

    pub fn from_u64_up(m: u64, e: i64) -> Mag {
        Mag::normalize(m as u128, e, true)
    }

    pub fn from_u64_down(m: u64, e: i64) -> Mag {
        Mag::normalize(m as u128, e, false)
    }

    fn from_biguint(x: &BigUint, e: i64, up: bool) -> Mag {
        let bits = x.bits();
        if bits <= 64 {
            let v = x.iter_u64_digits().next().unwrap_or(0);
            return Mag::normalize(v as u128, e, up);
        }
        let shift = bits - 64;
        let top: BigUint = x >> shift;
        let v = top.iter_u64_digits().next().unwrap_or(0);
        // Bits below `shift` are dropped; one extra unit covers them when rounding up.
        let m = if up { v as u128 + 1 } else { v as u128 };
        Mag::normalize(m, e + shift as i64, up)
    }

    /// Upper bound on `|x| * 2^e`.
    pub fn from_bigint_up(x: &BigInt, e: i64) -> Mag {
        Mag::from_biguint(x.magnitude(), e, true)
    }

    /// Lower bound on `|x| * 2^e`.
    pub fn from_bigint_down(x: &BigInt, e: i64) -> Mag {
        Mag::from_biguint(x.magnitude(), e, false)
    }

    /// Upper bound for a finite non-negative `f64`.
    pub fn from_f64_up(x: f64) -> Mag {
        assert!(x.is_finite() && x >= 0.0, "magnitude from {x}");
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        Mag::from_u64_up(m, e)
    }

    /// Position of the leading bit plus one: `2^(top-1) <= self < 2^top`.
    pub fn top(&self) -> Option<i64> {
        if self.m == 0 {
            None
        } else {
            Some(self.e + bitlen(self.m as u128) as i64)
        }
    }

    pub fn mantissa(&self) -> u64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    pub fn add_up(self, other: Mag) -> Mag {
        if self.m == 0 {
            return other;
        }
        if other.m == 0 {
            return self;
        }
        let (hi, lo) = if self.e >= other.e { (self, other) } else { (other, self) };
        let diff = hi.e - lo.e;
        if diff > 80 {
            // `lo` is below one unit of `hi`'s mantissa.
            return Mag::normalize(hi.m as u128 + 1, hi.e, true);
        }
        let sum = ((hi.m as u128) << diff) + lo.m as u128;
        Mag::normalize(sum, lo.e, true)
    }

    /// `max(self - other, 0)`, rounded down.
    pub fn sub_down(self, other: Mag) -> Mag {
        if other.m == 0 {
            return self;
        }
        if self.cmp_value(&other) != Ordering::Greater {
            return Mag::ZERO;
        }
        let diff = self.e - other.e;
        if diff > 80 {
            return Mag::normalize(self.m as u128 - 1, self.e, false);
        }
        if diff >= 0 {
            let a = (self.m as u128) << diff;
            Mag::normalize(a - other.m as u128, other.e, false)
        } else {
            // self > other with self.e < other.e: the shift is tiny here.
            let b = (other.m as u128) << (-diff);
            Mag::normalize(self.m as u128 - b, self.e, false)
        }
    }

    pub fn mul_up(self, other: Mag) -> Mag {
        Mag::normalize(self.m as u128 * other.m as u128, self.e + other.e, true)
    }

    pub fn mul_down(self, other: Mag) -> Mag {
        Mag::normalize(self.m as u128 * other.m as u128, self.e + other.e, false)
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.m == 0 {
            self
        } else {
            Mag { m: self.m, e: self.e + k }
        }
    }

    /// `self / other` rounded up. Panics when `other` is zero.
    pub fn div_up(self, other: Mag) -> Mag {
        assert!(other.m != 0, "division by a zero magnitude");
        if self.m == 0 {
            return Mag::ZERO;
        }
        let q = ((self.m as u128) << 64) / other.m as u128 + 1;
        Mag::normalize(q, self.e - other.e - 64, true)
    }

    pub fn div_down(self, other: Mag) -> Mag {
        assert!(other.m != 0, "division by a zero magnitude");
        if self.m == 0 {
            return Mag::ZERO;
        }
        let q = ((self.m as u128) << 64) / other.m as u128;
        Mag::normalize(q, self.e - other.e - 64, false)
    }

    /// Upper bound on the square root.
    pub fn sqrt_up(self) -> Mag {
        if self.m == 0 {
            return self;
        }
        let (mut m, mut e) = (self.m as u128, self.e);
        if e.rem_euclid(2) != 0 {
            m <<= 1;
            e -= 1;
        }
        m <<= 64;
        e -= 64;
        let mut r = (m as f64).sqrt() as u128;
        while r * r > m {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= m {
            r += 1;
        }
        if r * r != m {
            r += 1;
        }
        Mag::normalize(r, e / 2, true)
    }

    pub fn max(self, other: Mag) -> Mag {
        if self.cmp_value(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn cmp_value(&self, other: &Mag) -> Ordering {
        match (self.top(), other.top()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(ta), Some(tb)) => {
                if ta != tb {
                    return ta.cmp(&tb);
                }
                // Same leading position: align on the smaller exponent.
                let e = self.e.min(other.e);
                let a = (self.m as u128) << (self.e - e);
                let b = (other.m as u128) << (other.e - e);
                a.cmp(&b)
            }
        }
    }

    pub fn le(&self, other: &Mag) -> bool {
        self.cmp_value(other) != Ordering::Greater
    }

    pub fn lt(&self, other: &Mag) -> bool {
        self.cmp_value(other) == Ordering::Less
    }

    /// Approximate value; saturates to 0 or infinity outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        ldexp(self.m as f64, self.e)
    }

    /// Exact value as a `(BigInt, exponent)` pair.
    pub fn to_dyadic(&self) -> (BigInt, i64) {
        (BigInt::from(self.m), self.e)
    }
}
