//! Constants and elementary functions on balls.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{eff, Ball, Dyadic, Mag};

const GUARD: u32 = 32;

/// Fixed-point `2^p * atan(1/k)` (or `atanh` when `hyperbolic`), together
/// with a bound on the error in units of `2^-p`.
fn arctan_inv_fixed(k: u64, p: u32, hyperbolic: bool) -> (BigInt, u64) {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power = (BigInt::one() << p as usize) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * j + 1);
        if !hyperbolic && j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power = power / &k2;
        j += 1;
    }
    // One unit per truncated term plus one for the tail.
    (sum, j + 1)
}

fn cache() -> &'static Mutex<HashMap<&'static str, Ball>> {
    static CACHE: OnceLock<Mutex<HashMap<&'static str, Ball>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_constant(name: &'static str, prec: u32, compute: fn(u32) -> Ball) -> Ball {
    let prec = eff(prec);
    {
        let guard = cache().lock().expect("constant cache poisoned");
        if let Some(b) = guard.get(name) {
            if b.prec >= prec {
                return b.with_prec(prec);
            }
        }
    }
    let fresh = compute(prec.max(256));
    let mut guard = cache().lock().expect("constant cache poisoned");
    guard.insert(name, fresh.clone());
    fresh.with_prec(prec)
}

fn compute_pi(prec: u32) -> Ball {
    let p = prec + GUARD;
    let (a, ea) = arctan_inv_fixed(5, p, false);
    let (b, eb) = arctan_inv_fixed(239, p, false);
    let mant = a * 16 - b * 4;
    let err = Mag::from_u64_up(16 * ea + 4 * eb, -(p as i64));
    Ball::rounded(mant, -(p as i64), err, prec)
}

fn compute_ln2(prec: u32) -> Ball {
    let p = prec + GUARD;
    let (a, ea) = arctan_inv_fixed(3, p, true);
    Ball::rounded(a * 2, -(p as i64), Mag::from_u64_up(2 * ea, -(p as i64)), prec)
}

impl Ball {
    pub fn pi(prec: u32) -> Ball {
        cached_constant("pi", prec, compute_pi)
    }

    pub fn ln2(prec: u32) -> Ball {
        cached_constant("ln2", prec, compute_ln2)
    }

    /// Natural logarithm of a ball lying strictly above zero.
    pub fn ln(&self) -> Option<Ball> {
        if !self.is_positive() {
            return None;
        }
        let prec = eff(self.prec);
        let wp = prec + 16;
        let x = self.clone().with_prec_floor(wp);
        // Scale by a power of two so that the midpoint lies in [1/sqrt2, sqrt2).
        let top = self.exp + self.mant.bits() as i64;
        let lead = self.mid_f64() / super::ldexp(1.0, top);
        let k = if lead.is_finite() && lead > 0.0 && lead < std::f64::consts::FRAC_1_SQRT_2 {
            top - 1
        } else {
            top
        };
        let y = x.mul_2exp(-k);
        let one = Ball::one();
        let t = y.sub(&one).checked_div(&y.add(&one))?;
        let t2 = t.sqr();
        let tmax = t.abs_upper();
        let tmax2 = tmax.mul_up(tmax);
        let one_mag = Mag::pow2(0);
        if !tmax2.lt(&one_mag) {
            return None;
        }
        let target = Mag::pow2(-(wp as i64) - 4);
        let mut sum = Ball::zero().with_prec_floor(wp);
        let mut power = t.clone();
        let mut power_mag = tmax;
        let mut j: i64 = 0;
        loop {
            sum = sum.add(&power.div_i64(2 * j + 1));
            power = power.mul(&t2);
            power_mag = power_mag.mul_up(tmax2);
            j += 1;
            if power_mag.lt(&target) || j > 100_000 {
                break;
            }
        }
        // Tail: sum_{i>=j} |t|^(2i+1)/(2i+1) <= |t|^(2j+1) / (1 - t^2).
        let tail = power_mag.div_up(one_mag.sub_down(tmax2));
        let ln_y = Ball::with_radius(sum.mid(), sum.rad.add_up(tail), wp).mul_2exp(1);
        let ln_x = ln_y.add(&Ball::ln2(wp).mul_i64(k));
        Some(ln_x.with_prec(prec))
    }

    /// `(sin x, cos x)` for `|x|` roughly below one, by halving, a short
    /// series and double-angle steps.
    fn sin_cos_kernel(&self, wp: u32) -> (Ball, Ball) {
        let r: i64 = ((wp as f64).sqrt() / 2.0).ceil() as i64;
        let y = self.clone().with_prec_floor(wp + 2 * r as u32 + 8).mul_2exp(-r);
        let ymax = y.abs_upper();
        let target = Mag::pow2(-(wp as i64) - 2 * r - 16);
        // s = y - y^3/3! + ..., v = 1 - cos y = y^2/2! - y^4/4! + ...
        let mut s = y.clone();
        let mut v = Ball::zero();
        let mut term = y.clone();
        let mut term_mag = ymax;
        let mut n: i64 = 1;
        loop {
            // term = y^n / n!, advance to y^(n+1)/(n+1)!
            term = term.mul(&y).div_i64(n + 1);
            term_mag = term_mag.mul_up(ymax).div_up(Mag::from_u64_down((n + 1) as u64, 0));
            let sign_even = ((n + 1) / 2) % 2 == 1;
            if (n + 1) % 2 == 0 {
                v = if sign_even { v.add(&term) } else { v.sub(&term) };
            } else {
                s = if sign_even { s.sub(&term) } else { s.add(&term) };
            }
            n += 1;
            if term_mag.lt(&target) && n > 3 {
                break;
            }
        }
        // Alternating series with decreasing terms: the tail is below the
        // next term, which itself is below the last bound.
        let tail = term_mag.mul_up(ymax);
        let mut s = s.widen(tail);
        let mut v = v.widen(tail);
        let two = Ball::from_i64(2);
        for _ in 0..r {
            let c = Ball::one().sub(&v);
            s = s.mul(&c).mul_2exp(1);
            v = v.mul(&two.sub(&v)).mul_2exp(1);
        }
        (s, Ball::one().sub(&v))
    }

    fn widen(&self, extra: Mag) -> Ball {
        Ball::raw(self.mant.clone(), self.exp, self.rad.add_up(extra), self.prec)
    }

    /// `(sin x, cos x)`.
    pub fn sin_cos(&self) -> (Ball, Ball) {
        let prec = eff(self.prec);
        if self.rad.top().is_some_and(|t| t > 2) {
            let u = Ball::with_radius(Dyadic::new(BigInt::zero(), 0), Mag::pow2(0), prec);
            return (u.clone(), u);
        }
        let top = (self.exp + self.mant.bits() as i64).max(0) as u32;
        let wp = prec + top + 16;
        let half_pi = Ball::pi(wp).mul_2exp(-1);
        let qr = self.clone().with_prec_floor(wp).div(&half_pi);
        let k = qr.midpoint().unique_integer_nearest();
        let y = self.clone().with_prec_floor(wp).sub(&half_pi.mul(&Ball::from_bigint(k.clone())));
        let (s, c) = y.sin_cos_kernel(wp);
        let (s, c) = match k.mod_floor(&BigInt::from(4)).to_u8().unwrap_or(0) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        };
        (s.clamp_unit().with_prec(prec), c.clamp_unit().with_prec(prec))
    }

    pub fn sin(&self) -> Ball {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Ball {
        self.sin_cos().1
    }

    fn clamp_unit(self) -> Ball {
        let lo = self.lower();
        let hi = self.upper();
        let one = Dyadic::new(BigInt::one(), 0);
        let neg_one = Dyadic::new(-BigInt::one(), 0);
        if lo >= neg_one && hi <= one {
            return self;
        }
        let lo = lo.max(neg_one.clone()).min(one.clone());
        let hi = hi.min(one).max(neg_one);
        Ball::from_endpoints(&lo, &hi, self.prec)
    }

    /// Nearest integer to the midpoint (ties upward).
    fn unique_integer_nearest(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            let half = BigInt::one() << (-self.exp - 1) as usize;
            (&self.mant + half) >> (-self.exp) as usize
        }
    }

    /// `cos(pi * p / q)` for integers `p`, `q > 0`. Multiples of `pi/3` and
    /// `pi/2` are returned exactly.
    pub fn cos_pi_rational(p: &BigInt, q: &BigInt, prec: u32) -> Ball {
        assert!(q.is_positive(), "cos_pi_rational needs a positive denominator");
        let r = BigRational::new(p.clone(), q.clone());
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::one();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        // Reduce to [0, 2), then [0, 1], then [0, 1/2].
        let mut r = &r - (&r / &two).floor() * &two;
        if r > one {
            r = &two - &r;
        }
        let mut negate = false;
        if r > half {
            r = &one - &r;
            negate = true;
        }
        let exact = if r.is_zero() {
            Some(Ball::one())
        } else if r == half {
            Some(Ball::zero())
        } else if r == BigRational::new(BigInt::one(), BigInt::from(3)) {
            Some(Ball::one().mul_2exp(-1))
        } else {
            None
        };
        let value = match exact {
            Some(v) => v,
            None => {
                let wp = eff(prec) + 16;
                let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
                let pi = Ball::pi(wp);
                if r <= quarter {
                    pi.mul(&Ball::from_rational(&r, wp)).sin_cos_kernel(wp).1
                } else {
                    pi.mul(&Ball::from_rational(&(&half - &r), wp)).sin_cos_kernel(wp).0
                }
                .with_prec(eff(prec))
            }
        };
        if negate {
            value.neg()
        } else {
            value
        }
    }

    /// `sin(pi * p / q)`.
    pub fn sin_pi_rational(p: &BigInt, q: &BigInt, prec: u32) -> Ball {
        // sin(pi r) = cos(pi (1/2 - r)) = cos(pi (q - 2p) / (2q))
        Ball::cos_pi_rational(&(q - p * 2), &(q * 2), prec)
    }

    /// Exact value of `cos(pi * p / q)` when it is rational.
    pub fn cos_pi_rational_exact(p: &BigInt, q: &BigInt) -> Option<BigRational> {
        let b = Ball::cos_pi_rational(p, q, 64);
        if b.is_exact() && b.prec == 0 {
            Some(b.mid().to_rational())
        } else {
            None
        }
    }
}
