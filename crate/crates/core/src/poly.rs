//! Dense univariate polynomials over the rationals and Chebyshev evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ball::{Ball, CBall};

/// Polynomial with rational coefficients, lowest degree first. The
/// coefficient vector never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn x() -> QPoly {
        QPoly::from_ints(&[0, 1])
    }

    /// `x - r`.
    pub fn linear_root(r: &BigRational) -> QPoly {
        QPoly::new(vec![-r.clone(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&(BigRational::one() / self.lead()))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let lead = d.lead();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree decomposition `self = c * prod f_i^i` (Yun). Returns the
    /// non-constant factors with their multiplicities.
    pub fn squarefree_factors(&self) -> Vec<(QPoly, usize)> {
        let mut out = vec![];
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.divrem(&a).0;
        let mut c = df.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.divrem(&g).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.divrem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Multiplicity of `r` as a root, and the cofactor with that root removed.
    pub fn strip_root(&self, r: &BigRational) -> (usize, QPoly) {
        let lin = QPoly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        (k, p)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_ball(&self, x: &Ball) -> Ball {
        let prec = x.prec();
        let mut acc = Ball::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Ball::from_rational(c, prec));
        }
        acc
    }

    pub fn eval_cball(&self, x: &CBall) -> CBall {
        let prec = x.prec();
        let mut acc = CBall::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&CBall::real(Ball::from_rational(c, prec)));
        }
        acc
    }

    /// Coefficient enclosures at the given precision.
    pub fn to_balls(&self, prec: u32) -> Vec<Ball> {
        self.coeffs.iter().map(|c| Ball::from_rational(c, prec)).collect()
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient.
    /// Distinct rational roots, found by testing `±p/q` with `p | a_0` and
    /// `q | a_N`. Gives up (returns only the root 0, if any) when either
    /// coefficient exceeds `2^40`.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut out = vec![];
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let (k, rest) = self.strip_root(&BigRational::zero());
        if k > 0 {
            out.push(BigRational::zero());
        }
        if rest.degree().unwrap_or(0) == 0 {
            return out;
        }
        let ints = rest.primitive_integer();
        let (Some(a0), Some(an)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap())) else {
            return out;
        };
        for p in &a0 {
            for q in &an {
                for sign in [1i64, -1] {
                    let r = BigRational::new(BigInt::from(sign * p), BigInt::from(*q));
                    if p.gcd(q) == 1 && !out.contains(&r) && rest.eval(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
        ints.iter().map(|c| c / &g * sign).collect()
    }

    /// The Chebyshev polynomial `T_n` in the monomial basis.
    pub fn chebyshev(n: u64) -> QPoly {
        chebyshev_t(n, &QPoly::x())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "w")?,
                _ => write!(f, "w^{i}")?,
            }
        }
        Ok(())
    }
}

/// The operations the Chebyshev recurrence needs.
pub trait ChebyshevArg: Clone {
    /// Multiplicative identity compatible with `self` (same precision).
    fn unit(&self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn twice(&self) -> Self;
}

impl ChebyshevArg for BigRational {
    fn unit(&self) -> Self {
        BigRational::one()
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn twice(&self) -> Self {
        self * rat(2)
    }
}

impl ChebyshevArg for Ball {
    fn unit(&self) -> Self {
        Ball::one()
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn twice(&self) -> Self {
        self.mul_2exp(1)
    }
}

impl ChebyshevArg for CBall {
    fn unit(&self) -> Self {
        CBall::one()
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn twice(&self) -> Self {
        self.mul_2exp(1)
    }
}

impl ChebyshevArg for QPoly {
    fn unit(&self) -> Self {
        QPoly::constant(BigRational::one())
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn twice(&self) -> Self {
        self.scale(&rat(2))
    }
}

/// `T_n(w)` via `T_{k+1} = 2 w T_k - T_{k-1}`.
pub fn chebyshev_t<R: ChebyshevArg>(n: u64, w: &R) -> R {
    let mut prev = w.unit();
    if n == 0 {
        return prev;
    }
    let mut cur = w.clone();
    for _ in 1..n {
        let next = w.times(&cur).twice().minus(&prev);
        prev = cur;
        cur = next;
    }
    cur
}


fn small_divisors(v: &BigInt) -> Option<Vec<i64>> {
    let v = i64::try_from(v.abs()).ok().filter(|&v| v > 0 && v < 1 << 40)?;
    let mut d = vec![];
    let mut i = 1;
    while i * i <= v {
        if v % i == 0 {
            d.push(i);
            if i * i != v {
                d.push(v / i);
            }
        }
        i += 1;
    }
    Some(d)
}
