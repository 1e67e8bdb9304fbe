//! Palindromic Laurent polynomials attached to a circulant family, their
//! Chebyshev transforms, and certified root bundles.
//!
//! For a family with jumps `s_i` and `α_m n` the Laplacian symbol splits as
//! `L(z) = P(z) + p(z^n)` with
//!
//! ```text
//! P(z) = 2k − Σ (z^{s_i} + z^{−s_i}),   p(z) = 2ℓ − Σ (z^{α_m} + z^{−α_m}),
//! ```
//!
//! and for `u = 0..β−1` the shifted polynomial is
//! `P_u(z) = P(z) + 4 Σ sin²(π u α_m / β)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::{Ball, CBall, Mag};
use crate::error::{Error, Result};
use crate::exec::Options;
use crate::graph::CirculantSpec;
use crate::poly::{chebyshev_t as cheb, QPoly};
use crate::roots::{isolate_rational, isolate_with, Isolation};

pub use crate::poly::{chebyshev_t, ChebyshevArg};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `4 Σ_m sin²(π u α_m / β) = Σ_m (2 − 2cos(2π u α_m / β))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SineSquareSum {
    pub u: u64,
    pub alphas: Vec<u64>,
    pub beta: u64,
}

impl SineSquareSum {
    fn cosine_angles(&self) -> impl Iterator<Item = (BigInt, BigInt)> + '_ {
        self.alphas
            .iter()
            .map(|&a| (BigInt::from(2 * ((self.u * a) % self.beta)), BigInt::from(self.beta)))
    }

    /// Exact value when every cosine is rational.
    pub fn exact(&self) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (p, q) in self.cosine_angles() {
            acc += rat(2) - Ball::cos_pi_rational_exact(&p, &q)? * rat(2);
        }
        Some(acc)
    }

    pub fn ball(&self, prec: u32) -> Ball {
        if let Some(v) = self.exact() {
            return Ball::from_rational(&v, prec);
        }
        self.cosine_angles().fold(Ball::zero(), |acc, (p, q)| {
            acc.add(&Ball::from_i64(2))
                .sub(&Ball::cos_pi_rational(&p, &q, prec).mul_2exp(1))
        })
    }

    pub fn approx(&self) -> f64 {
        self.alphas
            .iter()
            .map(|&a| {
                let s = (std::f64::consts::PI * (self.u * a) as f64 / self.beta as f64).sin();
                4.0 * s * s
            })
            .sum()
    }
}

/// `a_0 + Σ_{j=1}^{s} a_j (z^j + z^{−j})`, optionally plus a sine-square
/// constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromicLaurentPoly {
    coeffs: Vec<BigRational>,
    shift: Option<SineSquareSum>,
}

impl PalindromicLaurentPoly {
    /// `a_0 + Σ a_j (z^j + z^{−j})` from `[a_0, …, a_s]`.
    pub fn new(mut coeffs: Vec<BigRational>) -> PalindromicLaurentPoly {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        PalindromicLaurentPoly { coeffs, shift: None }
    }

    pub fn from_ints(c: &[i64]) -> PalindromicLaurentPoly {
        PalindromicLaurentPoly::new(c.iter().map(|&v| rat(v)).collect())
    }

    /// `2·len − Σ (z^e + z^{−e})` over the given exponents, accumulating
    /// repeated exponents.
    pub fn from_jumps(exponents: &[u64]) -> PalindromicLaurentPoly {
        let s = exponents.iter().copied().max().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); s + 1];
        c[0] = rat(2 * exponents.len() as i64);
        for &e in exponents {
            c[e as usize] -= rat(1);
        }
        PalindromicLaurentPoly::new(c)
    }

    pub fn with_shift(mut self, shift: SineSquareSum) -> PalindromicLaurentPoly {
        if let Some(v) = shift.exact() {
            self.coeffs[0] += v;
        } else {
            self.shift = Some(shift);
        }
        self
    }

    pub fn half_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.half_degree() == 0
    }

    /// Exact coefficients `a_0..a_s` when no irrational constant is present.
    pub fn exact_coeffs(&self) -> Option<&[BigRational]> {
        if self.shift.is_none() {
            Some(&self.coeffs)
        } else {
            None
        }
    }

    pub fn rational_part(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn shift(&self) -> Option<&SineSquareSum> {
        self.shift.as_ref()
    }

    pub fn a0_ball(&self, prec: u32) -> Ball {
        let a0 = Ball::from_rational(&self.coeffs[0], prec);
        match &self.shift {
            Some(s) => a0.add(&s.ball(prec)),
            None => a0,
        }
    }

    pub fn a0_approx(&self) -> f64 {
        self.coeffs[0].to_f64_lossy() + self.shift.as_ref().map_or(0.0, |s| s.approx())
    }

    /// `z^s P(z)` as an ordinary polynomial (exact case).
    pub fn ordinary(&self) -> Option<QPoly> {
        let c = self.exact_coeffs()?;
        let s = self.half_degree();
        Some(QPoly::new((0..=2 * s).map(|i| c[i.abs_diff(s)].clone()).collect()))
    }

    /// Coefficient enclosures of `z^s P(z)`, lowest degree first.
    pub fn ordinary_balls(&self, prec: u32) -> Vec<Ball> {
        let s = self.half_degree();
        (0..=2 * s)
            .map(|i| {
                if i == s {
                    self.a0_ball(prec)
                } else {
                    Ball::from_rational(&self.coeffs[i.abs_diff(s)], prec)
                }
            })
            .collect()
    }

    /// Evaluation at a nonzero complex point.
    pub fn eval(&self, z: &CBall) -> Option<CBall> {
        let inv = z.inv()?;
        let prec = z.prec();
        let mut acc = CBall::real(self.a0_ball(prec));
        let (mut zp, mut zm) = (CBall::one(), CBall::one());
        for a in &self.coeffs[1..] {
            zp = zp.mul(z);
            zm = zm.mul(&inv);
            acc = acc.add(&zp.add(&zm).mul_real(&Ball::from_rational(a, prec)));
        }
        Some(acc)
    }

    /// `P(e^{iθ})` in double precision, written as
    /// `P(1) − 4 Σ a_j sin²(jθ/2)` to keep accuracy near `θ = 0`.
    pub fn eval_on_circle(&self, theta: f64) -> f64 {
        let mut at_one = self.a0_approx();
        let mut dip = 0.0;
        for (j, a) in self.coeffs.iter().enumerate().skip(1) {
            let a = a.to_f64_lossy();
            at_one += 2.0 * a;
            let s = (j as f64 * theta / 2.0).sin();
            dip += a * s * s;
        }
        at_one - 4.0 * dip
    }
}

trait LossyF64 {
    fn to_f64_lossy(&self) -> f64;
}

impl LossyF64 for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        Ball::from_rational(self, 64).mid_f64()
    }
}

/// The polynomials attached to a spec.
#[derive(Clone, Debug)]
pub struct Family {
    /// Full Laplacian symbol.
    pub l: PalindromicLaurentPoly,
    /// Fixed-jump part.
    pub big_p: PalindromicLaurentPoly,
    /// Scaling-jump part, in the variable `z^n`.
    pub small_p: PalindromicLaurentPoly,
    /// `P_u` for `u = 0..β−1`.
    pub p_u: Vec<PalindromicLaurentPoly>,
}

pub fn build_family(spec: &CirculantSpec) -> Family {
    let big_p = PalindromicLaurentPoly::from_jumps(&spec.s_jumps);
    let small_p = PalindromicLaurentPoly::from_jumps(&spec.alpha_jumps);
    let l = PalindromicLaurentPoly::from_jumps(&spec.offsets());
    let p_u = (0..spec.beta)
        .map(|u| {
            if u == 0 {
                big_p.clone()
            } else {
                big_p.clone().with_shift(SineSquareSum {
                    u,
                    alphas: spec.alpha_jumps.clone(),
                    beta: spec.beta,
                })
            }
        })
        .collect();
    Family { l, big_p, small_p, p_u }
}

/// `Q(w) = a_0 + Σ 2a_j T_j(w)` in the monomial basis (rational part) plus
/// the optional sine-square constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevTransform {
    pub rational: QPoly,
    pub shift: Option<SineSquareSum>,
}

impl ChebyshevTransform {
    pub fn degree(&self) -> usize {
        self.rational.degree().unwrap_or(0)
    }

    pub fn exact(&self) -> Option<&QPoly> {
        if self.shift.is_none() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn coeff_balls(&self, prec: u32) -> Vec<Ball> {
        let mut c = self.rational.to_balls(prec);
        if let Some(s) = &self.shift {
            c[0] = c[0].add(&s.ball(prec));
        }
        c
    }

    pub fn eval(&self, w: &CBall) -> CBall {
        let mut v = self.rational.eval_cball(w);
        if let Some(s) = &self.shift {
            v = v.add(&CBall::real(s.ball(w.prec())));
        }
        v
    }
}

pub fn transform(p: &PalindromicLaurentPoly) -> Result<ChebyshevTransform> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut q = QPoly::constant(p.coeffs[0].clone());
    for (j, a) in p.coeffs.iter().enumerate().skip(1) {
        q = q.add(&QPoly::chebyshev(j as u64).scale(&(a * rat(2))));
    }
    Ok(ChebyshevTransform { rational: q, shift: p.shift.clone() })
}

/// A root `z` of `z^s P(z)` together with the enclosure of its partner `1/z`.
#[derive(Clone, Debug)]
pub struct RootPair {
    pub z: CBall,
    pub z_inv: CBall,
}

impl RootPair {
    /// `(z + 1/z) / 2`.
    pub fn w(&self) -> CBall {
        self.z.add(&self.z_inv).mul_2exp(-1)
    }
}

#[derive(Clone, Debug)]
pub struct RootBundle {
    /// Pairs with `|z| ≥ 1`, ordered by `|z|` descending, then argument.
    pub z_pairs: Vec<RootPair>,
    /// Roots of `Q`, isolated directly, in the order of `z_pairs`.
    pub w_roots: Vec<CBall>,
    /// Number of roots `w = 1`, counted exactly when `Q` is rational.
    pub unit_w_multiplicity: Option<usize>,
    pub precision: u32,
    /// Lower bound on `min ||z| − 1|` over all `2s` roots (zero when some
    /// root may lie on the unit circle).
    pub off_circle_margin: Ball,
}

impl RootBundle {
    /// All `2s` roots of `z^s P(z)`.
    pub fn all_z(&self) -> Vec<CBall> {
        self.z_pairs.iter().flat_map(|p| [p.z.clone(), p.z_inv.clone()]).collect()
    }
}

fn approx_key(z: &CBall) -> (f64, f64) {
    let c = z.to_c64();
    (c.norm(), c.arg())
}

fn pair_roots(roots: &[CBall]) -> Option<Vec<RootPair>> {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| {
        let (ma, aa) = approx_key(&roots[a]);
        let (mb, ab) = approx_key(&roots[b]);
        mb.total_cmp(&ma).then(aa.total_cmp(&ab))
    });
    let mut used = vec![false; roots.len()];
    let mut pairs = vec![];
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let inv = roots[i].inv()?;
        let target = inv.to_c64();
        let j = (0..roots.len())
            .filter(|&j| !used[j] && roots[j].overlaps(&inv))
            .min_by(|&a, &b| {
                let da = (roots[a].to_c64() - target).norm();
                let db = (roots[b].to_c64() - target).norm();
                da.total_cmp(&db)
            })?;
        used[j] = true;
        let (zi, zj) = (roots[i].to_c64(), roots[j].to_c64());
        let outer_first = match zi.norm().total_cmp(&zj.norm()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => zi.im >= zj.im,
        };
        let (a, b) = if outer_first { (i, j) } else { (j, i) };
        pairs.push(RootPair { z: roots[a].clone(), z_inv: roots[b].clone() });
    }
    pairs.sort_by(|a, b| {
        let (ma, aa) = approx_key(&a.z);
        let (mb, ab) = approx_key(&b.z);
        mb.total_cmp(&ma).then(aa.total_cmp(&ab))
    });
    Some(pairs)
}

fn isolate_z(p: &PalindromicLaurentPoly, target_bits: u32, opts: &Options) -> Result<Isolation> {
    match p.ordinary() {
        Some(q) => isolate_rational(&q, target_bits, opts),
        None => isolate_with(|prec| p.ordinary_balls(prec), target_bits, opts),
    }
}

fn isolate_w(t: &ChebyshevTransform, target_bits: u32, opts: &Options) -> Result<Isolation> {
    match t.exact() {
        Some(q) => isolate_rational(q, target_bits, opts),
        None => isolate_with(|prec| t.coeff_balls(prec), target_bits, opts),
    }
}

fn margin(roots: &[CBall]) -> Ball {
    let one = Ball::one();
    let mut best: Option<Ball> = None;
    for z in roots {
        let d = z.abs().sub(&one).abs();
        best = Some(match best {
            None => d,
            Some(b) => {
                if d.upper() < b.lower() {
                    d
                } else if b.upper() < d.lower() {
                    b
                } else {
                    Ball::from_endpoints(&d.lower().min(b.lower()), &d.upper().min(b.upper()), d.prec())
                }
            }
        });
    }
    best.unwrap_or_else(Ball::zero)
}

fn bundle_at(p: &PalindromicLaurentPoly, target_bits: u32, opts: &Options) -> Result<Option<RootBundle>> {
    let t = transform(p)?;
    let zs = isolate_z(p, target_bits, opts)?;
    let ws = isolate_w(&t, target_bits, opts)?;
    let Some(pairs) = pair_roots(&zs.roots) else { return Ok(None) };
    if pairs.len() != p.half_degree() || ws.roots.len() != p.half_degree() {
        return Ok(None);
    }
    let mut used = vec![false; ws.roots.len()];
    let mut w_roots = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let w = pair.w();
        let target = w.to_c64();
        let Some(j) = (0..ws.roots.len())
            .filter(|&j| !used[j] && ws.roots[j].overlaps(&w))
            .min_by(|&a, &b| {
                (ws.roots[a].to_c64() - target).norm().total_cmp(&(ws.roots[b].to_c64() - target).norm())
            })
        else {
            return Ok(None);
        };
        used[j] = true;
        w_roots.push(ws.roots[j].clone());
    }
    let unit_w_multiplicity = t.exact().map(|q| q.strip_root(&BigRational::one()).0);
    Ok(Some(RootBundle {
        off_circle_margin: margin(&zs.roots),
        z_pairs: pairs,
        w_roots,
        unit_w_multiplicity,
        precision: zs.bits.max(ws.bits),
    }))
}

/// Isolates the roots of `z^s P(z)` and of its Chebyshev transform to
/// radius `2^-target_bits`, pairs `z` with `1/z` and matches each pair with
/// its `w`-root.
pub fn isolate_roots(p: &PalindromicLaurentPoly, target_bits: u32, opts: &Options) -> Result<RootBundle> {
    let mut bits = target_bits;
    loop {
        if let Some(b) = bundle_at(p, bits, opts)? {
            return Ok(b);
        }
        if bits >= opts.max_bits {
            return Err(Error::PrecisionExhausted {
                bits,
                context: "pairing reciprocal roots".into(),
            });
        }
        bits = (bits * 2).min(opts.max_bits);
    }
}

/// Distance of the roots of `P_u` from the unit circle.
#[derive(Clone, Debug)]
pub struct Lemma1Report {
    pub u: u64,
    /// Enclosure of `min_j ||z_j| − 1|`.
    pub margin: Ball,
}

impl Lemma1Report {
    pub fn margin_lower(&self) -> f64 {
        self.margin.lower_f64()
    }
}

/// Certifies that no root of `P_u` lies on the unit circle (`0 < u < β`,
/// `gcd(α…, β) = 1`).
pub fn check_lemma1(bundle: &RootBundle, u: u64, spec: &CirculantSpec) -> Result<Lemma1Report> {
    if u == 0 || u >= spec.beta {
        return Err(Error::PreconditionFailed(format!("u = {u} is outside 1..{}", spec.beta)));
    }
    if spec.delta != 1 {
        return Err(Error::PreconditionFailed(format!(
            "gcd(alpha, beta) = {} must be reduced to 1 first",
            spec.delta
        )));
    }
    if !bundle.off_circle_margin.is_positive() {
        return Err(Error::LemmaViolation(format!(
            "a root of P_{u} for {} may lie on the unit circle",
            spec.family_label()
        )));
    }
    Ok(Lemma1Report { u, margin: bundle.off_circle_margin.clone() })
}

/// Upper bound on the radius of every enclosure in the bundle.
pub fn bundle_radius(b: &RootBundle) -> Mag {
    b.all_z().iter().chain(b.w_roots.iter()).map(|z| z.radius()).fold(Mag::ZERO, Mag::max)
}

/// Chebyshev value `T_n(w)` at a complex enclosure.
pub fn chebyshev_at(n: u64, w: &CBall) -> CBall {
    cheb(n, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_spec;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn spec(beta: i64, s: &[i64], a: &[i64], n: i64) -> CirculantSpec {
        validate_spec(beta, s, a, n).unwrap()
    }

    #[test]
    fn family_constants() {
        let f = build_family(&spec(2, &[1], &[1], 3));
        assert_eq!(f.p_u[0], PalindromicLaurentPoly::from_ints(&[2, -1]));
        assert_eq!(f.p_u[1], PalindromicLaurentPoly::from_ints(&[6, -1]));
        let f = build_family(&spec(3, &[1], &[1], 2));
        assert_eq!(f.p_u[1].exact_coeffs().unwrap()[0], rat(5));
        assert_eq!(f.p_u[0], f.big_p);
        let f = build_family(&spec(5, &[1], &[1], 2));
        assert!(f.p_u[1].exact_coeffs().is_none());
        let c = f.p_u[1].a0_ball(128);
        let expect = 2.0 + 4.0 * (std::f64::consts::PI / 5.0).sin().powi(2);
        assert!((c.mid_f64() - expect).abs() < 1e-14);
    }

    #[test]
    fn laplacian_symbol_accumulates() {
        let f = build_family(&spec(1, &[1, 2], &[], 4));
        assert_eq!(f.l, PalindromicLaurentPoly::from_ints(&[4, -1, -1]));
        let f = build_family(&spec(3, &[1], &[1], 1));
        assert_eq!(f.l, PalindromicLaurentPoly::from_ints(&[4, -2]));
    }

    #[test]
    fn transforms() {
        let t = transform(&PalindromicLaurentPoly::from_ints(&[2, -1])).unwrap();
        assert_eq!(t.rational, QPoly::from_ints(&[2, -2]));
        let t = transform(&PalindromicLaurentPoly::from_ints(&[4, -1, -1])).unwrap();
        assert_eq!(t.rational, QPoly::from_ints(&[6, -2, -4]));
        // u = 0 for s = {1, 2}: roots 1 and −3/2
        assert_eq!(t.rational.eval(&rat(1)), rat(0));
        assert_eq!(t.rational.eval(&q(-3, 2)), rat(0));
        assert_eq!(transform(&PalindromicLaurentPoly::from_ints(&[3])), Err(Error::ConstantPolynomial));
        // Q(cos θ) = P(e^{iθ}) at θ = π/3
        let p = PalindromicLaurentPoly::from_ints(&[4, -1, -1]);
        let t = transform(&p).unwrap();
        let z = CBall::cis_pi_rational(&BigInt::from(1), &BigInt::from(3), 128);
        let w = CBall::real(Ball::one().mul_2exp(-1));
        assert!(p.eval(&z).unwrap().overlaps(&t.eval(&w)));
    }

    #[test]
    fn quadratic_bundle() {
        let b = isolate_roots(&PalindromicLaurentPoly::from_ints(&[6, -1]), 100, &Options::default()).unwrap();
        assert_eq!(b.z_pairs.len(), 1);
        let z = b.z_pairs[0].z.re.mid_f64();
        assert!((z - (3.0 + 8f64.sqrt())).abs() < 1e-14);
        assert!(b.w_roots[0].re.contains_rational(&rat(3)));
        assert!((b.off_circle_margin.mid_f64() - (8f64.sqrt() - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn double_root_on_circle() {
        let b = isolate_roots(&PalindromicLaurentPoly::from_ints(&[2, -1]), 100, &Options::default()).unwrap();
        assert!(b.z_pairs[0].z.re.contains_rational(&rat(1)));
        assert_eq!(b.unit_w_multiplicity, Some(1));
        assert!(!b.off_circle_margin.is_positive());
    }

    #[test]
    fn irrational_w_roots() {
        // C_{3n}(1,2,n), u = 1: w = (−1 ± √37)/4
        let f = build_family(&spec(3, &[1, 2], &[1], 2));
        let b = isolate_roots(&f.p_u[1], 100, &Options::default()).unwrap();
        let mut ws: Vec<f64> = b.w_roots.iter().map(|w| w.re.mid_f64()).collect();
        ws.sort_by(f64::total_cmp);
        assert!((ws[0] - (-1.0 - 37f64.sqrt()) / 4.0).abs() < 1e-14);
        assert!((ws[1] - (-1.0 + 37f64.sqrt()) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn lemma1_margins() {
        let sp = spec(2, &[1], &[1], 3);
        let f = build_family(&sp);
        let b = isolate_roots(&f.p_u[1], 100, &Options::default()).unwrap();
        let r = check_lemma1(&b, 1, &sp).unwrap();
        assert!((r.margin.mid_f64() - 0.828_427_124_746_19).abs() < 1e-12);
        assert!(matches!(check_lemma1(&b, 0, &sp), Err(Error::PreconditionFailed(_))));
        let sp = spec(6, &[1], &[1, 3], 1);
        let f = build_family(&sp);
        let b = isolate_roots(&f.p_u[3], 100, &Options::default()).unwrap();
        assert!(check_lemma1(&b, 3, &sp).unwrap().margin_lower() > 0.0);
    }

    #[test]
    fn bundle_invariants_hold_with_irrational_constants() {
        let sp = spec(5, &[1, 2, 3], &[1, 2], 2);
        let f = build_family(&sp);
        for u in 1..5 {
            let p = &f.p_u[u];
            let b = isolate_roots(p, 120, &Options::default()).unwrap();
            let t = transform(p).unwrap();
            let k = sp.k() as i64;
            let mut prod = CBall::one();
            for pair in &b.z_pairs {
                let one = pair.z.mul(&pair.z_inv);
                assert!(one.re.contains_rational(&rat(1)) && one.im.contains_rational(&rat(0)));
                prod = prod.mul(&pair.z).mul(&pair.z_inv);
            }
            // Vieta: product of roots of z^s P(z) = a_0/a_2s = 1.
            assert!(prod.re.contains_rational(&rat(1)));
            for w in &b.w_roots {
                assert!(t.eval(w).contains_zero());
                // Σ T_{s_i}(w) = k + 2 Σ sin²(π u α / β)
                let lhs = sp.s_jumps.iter().fold(CBall::zero(), |acc, &s| acc.add(&chebyshev_at(s, w)));
                let rhs = Ball::from_i64(k).add(&p.shift().unwrap().ball(128).mul_2exp(-1));
                assert!(lhs.re.overlaps(&rhs) && lhs.im.contains_zero());
            }
        }
    }

    proptest! {
        #[test]
        fn transform_round_trip(c in proptest::collection::vec(-9i64..9, 2..6), theta in 0.0f64..6.3) {
            let p = PalindromicLaurentPoly::from_ints(&c);
            prop_assume!(!p.is_constant());
            let t = transform(&p).unwrap();
            let x = Ball::from_f64(theta).with_prec(128);
            let (s, co) = x.sin_cos();
            let z = CBall::new(co.clone(), s);
            let lhs = p.eval(&z).unwrap();
            let rhs = t.eval(&CBall::real(co));
            prop_assert!(lhs.overlaps(&rhs));
            prop_assert!(lhs.sub(&rhs).abs().upper_f64() < 2f64.powi(-64));
            prop_assert!((p.eval_on_circle(theta) - lhs.re.mid_f64()).abs() < 1e-10);
        }
    }
}
