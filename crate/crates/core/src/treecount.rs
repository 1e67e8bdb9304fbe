//! Spanning-tree counts by the eigenvalue product, the Chebyshev product
//! `τ = τ₁ · τ₂`, and the closed forms for `s = {1}` and `s = {1, 2}`.
//!
//! Every real-valued route ends in certified rounding: the working
//! precision doubles until the enclosure of `τ` is narrower than `1/2` and
//! contains an integer.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ball::{Ball, CBall};
use crate::chebpoly::{build_family, chebyshev_t, isolate_roots, RootBundle};
use crate::error::{Error, Result};
use crate::exec::Options;
use crate::graph::{laplacian_eigenvalues, CirculantSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    BruteForce,
    EigenProduct,
    Theorem1,
    Corollary1,
    Corollary2,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::BruteForce => "brute-force",
            Method::EigenProduct => "eigen-product",
            Method::Theorem1 => "chebyshev-product",
            Method::Corollary1 => "corollary-s1",
            Method::Corollary2 => "corollary-s12",
        }
    }
}

/// An exact spanning-tree count and how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauResult {
    pub value: BigUint,
    pub method: Method,
    /// Working precision of the final enclosure; 0 for exact arithmetic.
    pub precision_used: u32,
    /// The final enclosure had width below 1/2 around `value`.
    pub certified: bool,
}

/// Runs `f` at increasing precision until its enclosure pins an integer.
fn certify<F>(opts: &Options, method: Method, what: &str, f: F) -> Result<TauResult>
where
    F: Fn(u32) -> Result<Ball>,
{
    let mut last = None;
    for prec in opts.precision_ladder() {
        let ball = match f(prec) {
            Ok(b) => b,
            Err(Error::PrecisionExhausted { .. }) => continue,
            Err(e) => return Err(e),
        };
        if let Some(k) = ball.unique_integer() {
            let value = k.to_biguint().ok_or_else(|| {
                Error::PreconditionFailed(format!("{what} enclosed a negative integer {k}"))
            })?;
            return Ok(TauResult { value, method, precision_used: prec, certified: true });
        }
        last = Some((prec, ball));
    }
    match last {
        Some((_, ball)) if ball.width_below_pow2(-1) => {
            Err(Error::NoIntegerEnclosed { enclosure: format!("{what}: {ball}") })
        }
        Some((bits, _)) => Err(Error::PrecisionExhausted { bits, context: what.to_string() }),
        None => Err(Error::PrecisionExhausted { bits: opts.max_bits, context: what.to_string() }),
    }
}

/// `τ = (1/βn) Π_{j≥1} λ_j`.
pub fn tau_eigenproduct(spec: &CirculantSpec, opts: &Options) -> Result<TauResult> {
    certify(opts, Method::EigenProduct, "eigenvalue product", |prec| {
        let ev = laplacian_eigenvalues(spec, prec + 16, opts.exec);
        let mut prod = Ball::one().with_prec(prec + 16);
        for e in &ev.values[1..] {
            if e.is_zero() {
                return Err(Error::Disconnected { gcd: spec.d.gcd(&(spec.n * spec.delta)) });
            }
            prod = prod.mul(&e.value);
        }
        Ok(prod.div_i64(spec.m as i64).with_prec(prec))
    })
}

/// Enclosure of `(n/q) Π_{w_j(0) ≠ 1} |2T_n(w_j(0)) − 2|`.
pub fn tau1_ball(spec: &CirculantSpec, bundle: &RootBundle, prec: u32) -> Result<Ball> {
    let n = spec.n;
    let expected_unit = bundle.unit_w_multiplicity.unwrap_or(0);
    let mut skipped = 0;
    let mut prod = Ball::one().with_prec(prec);
    let two = CBall::real(Ball::from_i64(2));
    for w in &bundle.w_roots {
        if is_exact_one(w) {
            skipped += 1;
            continue;
        }
        let t = chebyshev_t(n, &w.with_prec(prec));
        prod = prod.mul(&t.mul_2exp(1).sub(&two).abs());
    }
    if skipped != expected_unit {
        return Err(Error::PreconditionFailed(format!(
            "expected {expected_unit} roots at w = 1, isolated {skipped}"
        )));
    }
    Ok(prod.mul_i64(n as i64).div_i64(spec.q() as i64))
}

fn is_exact_one(w: &CBall) -> bool {
    w.im.is_exact_zero() && w.re.is_exact() && w.re.mid().to_rational().is_one()
}

/// Enclosure of `Π_j |2T_n(w_j(u)) − 2cos(2πu/β)|` for one `u`.
pub fn tau2_factor(spec: &CirculantSpec, u: u64, bundle: &RootBundle, prec: u32) -> Ball {
    let cos = Ball::cos_pi_rational(&BigInt::from(2 * u), &BigInt::from(spec.beta), prec);
    let c = CBall::real(cos.mul_2exp(1));
    bundle.w_roots.iter().fold(Ball::one().with_prec(prec), |acc, w| {
        let t = chebyshev_t(spec.n, &w.with_prec(prec));
        acc.mul(&t.mul_2exp(1).sub(&c).abs())
    })
}

fn bundles(spec: &CirculantSpec, prec: u32, opts: &Options) -> Result<Vec<RootBundle>> {
    let family = build_family(spec);
    let results = opts.exec.map(&family.p_u, |p| isolate_roots(p, prec, opts));
    results.into_iter().collect()
}

/// The fixed-jump factor `τ₁`, which counts spanning trees of `C_n(s…)`.
pub fn tau1_fixed(spec: &CirculantSpec, opts: &Options) -> Result<TauResult> {
    let g = spec.d.gcd(&spec.n);
    if g > 1 {
        return Err(Error::Disconnected { gcd: g });
    }
    let p0 = build_family(spec).big_p;
    certify(opts, Method::Theorem1, "fixed-jump product", |prec| {
        let b = isolate_roots(&p0, prec, opts)?;
        tau1_ball(spec, &b, prec)
    })
}

/// Certified enclosure of `τ₂` together with the precision that was used.
#[derive(Clone, Debug)]
pub struct Tau2 {
    pub value: Ball,
    pub precision: u32,
}

fn tau2_from(spec: &CirculantSpec, bundles: &[RootBundle], prec: u32, opts: &Options) -> Ball {
    let us: Vec<u64> = (1..spec.beta).collect();
    let factors = opts.exec.map(&us, |&u| tau2_factor(spec, u, &bundles[u as usize], prec));
    factors
        .iter()
        .fold(Ball::one().with_prec(prec), |acc, f| acc.mul(f))
        .div_i64(spec.beta as i64)
}

/// `τ₂ = (1/β) Π_{u=1}^{β−1} Π_j |2T_n(w_j(u)) − 2cos(2πu/β)|` at the first
/// precision of `opts`; exactly 1 when `β = 1`.
pub fn tau2_nonfixed(spec: &CirculantSpec, opts: &Options) -> Result<Tau2> {
    if spec.beta == 1 {
        return Ok(Tau2 { value: Ball::one(), precision: 0 });
    }
    let prec = opts.start_bits;
    let b = bundles(spec, prec, opts)?;
    Ok(Tau2 { value: tau2_from(spec, &b, prec, opts), precision: prec })
}

/// `τ = τ₁ · τ₂` from the Chebyshev products.
pub fn tau_theorem1(spec: &CirculantSpec, opts: &Options) -> Result<TauResult> {
    let g = spec.d.gcd(&spec.n);
    if g > 1 {
        return Err(Error::Disconnected { gcd: g });
    }
    certify(opts, Method::Theorem1, "Chebyshev product", |prec| {
        let wp = prec + 16;
        let b = bundles(spec, wp, opts)?;
        let t1 = tau1_ball(spec, &b[0], wp)?;
        let t2 = tau2_from(spec, &b, wp, opts);
        Ok(t1.mul(&t2).with_prec(prec))
    })
}

/// Both sides of `Π_t H(e^{i(2πt+ω)/n}) = (−e^{iω})^m Π_s (2T_n(w_s) − 2cos ω)`
/// with `H(z) = Π_s (z − z_s)(z − 1/z_s)`.
pub fn lemma2_product(z_roots: &[CBall], omega: &Ball, n: u64) -> Result<(CBall, CBall)> {
    if n == 0 {
        return Err(Error::PreconditionFailed("n must be positive".into()));
    }
    let prec = omega.prec().max(z_roots.iter().map(|z| z.prec()).max().unwrap_or(0));
    let inverses = z_roots
        .iter()
        .map(|z| z.inv())
        .collect::<Option<Vec<CBall>>>()
        .ok_or_else(|| Error::PreconditionFailed("a root may be zero".into()))?;
    let pi = Ball::pi(prec);
    let mut lhs = CBall::one();
    for t in 0..n {
        let angle = pi.mul_i64(2 * t as i64).add(omega).div_i64(n as i64);
        let (s, c) = angle.sin_cos();
        let x = CBall::new(c, s);
        for (z, zi) in z_roots.iter().zip(&inverses) {
            lhs = lhs.mul(&x.sub(z)).mul(&x.sub(zi));
        }
    }
    let (s, c) = omega.sin_cos();
    let e = CBall::new(c.neg(), s.neg());
    let two_cos = CBall::real(c.mul_2exp(1));
    let mut rhs = e.pow(z_roots.len() as u64);
    for (z, zi) in z_roots.iter().zip(&inverses) {
        let w = z.add(zi).mul_2exp(-1);
        rhs = rhs.mul(&chebyshev_t(n, &w).mul_2exp(1).sub(&two_cos));
    }
    Ok((lhs, rhs))
}

/// `τ = (n 2^{β−1}/β) Π_u (T_n(1 + 2Σ sin²(πuα/β)) − cos(2πu/β))` for `s = {1}`.
pub fn tau_corollary1(spec: &CirculantSpec, opts: &Options) -> Result<TauResult> {
    if spec.s_jumps != [1] {
        return Err(Error::PreconditionFailed("the s = {1} formula needs s = {1}".into()));
    }
    let family = build_family(spec);
    certify(opts, Method::Corollary1, "s = {1} product", |prec| {
        let wp = prec + 16;
        let mut prod = Ball::from_i64(spec.n as i64).with_prec(wp);
        for u in 1..spec.beta {
            let shift = family.p_u[u as usize].a0_ball(wp).sub(&Ball::from_i64(2));
            let w = Ball::one().add(&shift.mul_2exp(-1));
            let cos = Ball::cos_pi_rational(&BigInt::from(2 * u), &BigInt::from(spec.beta), wp);
            prod = prod.mul(&chebyshev_t(spec.n, &w).sub(&cos)).mul_2exp(1);
        }
        Ok(prod.div_i64(spec.beta as i64).with_prec(prec))
    })
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// `τ = (nF_n²/β) Π_u Π_{j=1,2} |2T_n(w_j(u)) − 2cos(2πu/β)|` for `s = {1, 2}`,
/// with `w_{1,2}(u) = (−1 ± √(25 + 16 Σ sin²(πuα/β)))/4`.
pub fn tau_corollary2(spec: &CirculantSpec, opts: &Options) -> Result<TauResult> {
    if spec.s_jumps != [1, 2] {
        return Err(Error::PreconditionFailed("the s = {1, 2} formula needs s = {1, 2}".into()));
    }
    let family = build_family(spec);
    let f = fibonacci(spec.n);
    let base = BigInt::from(spec.n) * BigInt::from(&f * &f);
    certify(opts, Method::Corollary2, "s = {1, 2} product", |prec| {
        let wp = prec + 16;
        let mut prod = Ball::from_bigint(base.clone()).with_prec(wp);
        for u in 1..spec.beta {
            // 16 Σ sin² = 4 × (4 Σ sin²) = 4 × (a_0(P_u) − 4)
            let c = family.p_u[u as usize].a0_ball(wp).sub(&Ball::from_i64(4));
            let disc = Ball::from_i64(25).add(&c.mul_2exp(2)).with_prec(wp);
            let root = disc.sqrt().ok_or_else(|| Error::PrecisionExhausted {
                bits: wp,
                context: "discriminant sign".into(),
            })?;
            let two_cos = Ball::cos_pi_rational(&BigInt::from(2 * u), &BigInt::from(spec.beta), wp).mul_2exp(1);
            for w in [root.neg().sub(&Ball::one()), root.sub(&Ball::one())] {
                let w = w.mul_2exp(-2);
                prod = prod.mul(&chebyshev_t(spec.n, &w).mul_2exp(1).sub(&two_cos).abs());
            }
        }
        Ok(prod.div_i64(spec.beta as i64).with_prec(prec))
    })
}

/// `n (T_n(3) + 1)`, the closed form for `C_{2n}(1, n)`.
pub fn moebius_ladder_double_steps(n: u64) -> BigUint {
    let t = chebyshev_t(n, &BigRational::from_integer(BigInt::from(3)));
    let v = (t + BigRational::one()) * BigRational::from_integer(BigInt::from(n));
    v.to_integer().to_biguint().expect("positive by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{tau_bruteforce, validate_spec};
    use proptest::prelude::*;

    fn spec(beta: i64, s: &[i64], a: &[i64], n: i64) -> CirculantSpec {
        validate_spec(beta, s, a, n).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn eigenproduct_examples() {
        let o = Options::default();
        assert_eq!(tau_eigenproduct(&spec(1, &[1, 2], &[], 4), &o).unwrap().value, big(36));
        assert_eq!(tau_eigenproduct(&spec(2, &[1], &[1], 3), &o).unwrap().value, big(300));
        assert_eq!(tau_eigenproduct(&spec(1, &[1], &[], 5), &o).unwrap().value, big(5));
    }

    #[test]
    fn fixed_part_examples() {
        let o = Options::default();
        assert_eq!(tau1_fixed(&spec(1, &[1, 2], &[], 4), &o).unwrap().value, big(36));
        assert_eq!(tau1_fixed(&spec(1, &[1], &[], 7), &o).unwrap().value, big(7));
        assert_eq!(tau1_fixed(&spec(1, &[1, 2], &[], 5), &o).unwrap().value, big(125));
    }

    #[test]
    fn nonfixed_factor_examples() {
        let o = Options::default();
        assert!(tau2_nonfixed(&spec(1, &[1], &[], 5), &o).unwrap().value.is_exact());
        let t2 = tau2_nonfixed(&spec(2, &[1], &[1], 2), &o).unwrap().value;
        assert_eq!(t2.unique_integer(), Some(BigInt::from(18)));
        let t2 = tau2_nonfixed(&spec(3, &[1], &[1], 1), &o).unwrap().value;
        assert_eq!(t2.unique_integer(), Some(BigInt::from(12)));
    }

    #[test]
    fn chebyshev_product_examples() {
        let o = Options::default();
        assert_eq!(tau_theorem1(&spec(2, &[1], &[1], 2), &o).unwrap().value, big(36));
        assert_eq!(tau_theorem1(&spec(3, &[1], &[1], 2), &o).unwrap().value, big(384));
        assert_eq!(tau_theorem1(&spec(3, &[1], &[1], 1), &o).unwrap().value, big(12));
        let r = tau_theorem1(&spec(5, &[1, 2, 3], &[1, 2], 3), &o).unwrap();
        assert!(r.certified);
        assert_eq!(r.value, tau_bruteforce(&spec(5, &[1, 2, 3], &[1, 2], 3), &o).unwrap().value);
    }

    #[test]
    fn closed_forms() {
        let o = Options::default();
        assert_eq!(tau_corollary1(&spec(2, &[1], &[1], 5), &o).unwrap().value, big(16820));
        assert_eq!(tau_corollary1(&spec(3, &[1], &[1], 2), &o).unwrap().value, big(384));
        assert_eq!(tau_corollary1(&spec(1, &[1], &[], 9), &o).unwrap().value, big(9));
        assert_eq!(moebius_ladder_double_steps(5), big(16820));
        let sp = spec(2, &[1, 2, 3], &[1], 3);
        assert!(matches!(tau_corollary2(&sp, &o), Err(Error::PreconditionFailed(_))));
        let sp = spec(2, &[1, 2], &[1], 3);
        assert_eq!(tau_corollary2(&sp, &o).unwrap().value, tau_bruteforce(&sp, &o).unwrap().value);
        for n in 4..14 {
            let sp = spec(1, &[1, 2], &[], n);
            let f = fibonacci(n as u64);
            assert_eq!(tau_corollary2(&sp, &o).unwrap().value, big(n as u64) * &f * &f);
        }
    }

    #[test]
    fn lemma2_small_example() {
        let z = [CBall::real(Ball::from_i64(2).with_prec(128))];
        let (l, r) = lemma2_product(&z, &Ball::zero().with_prec(128), 2).unwrap();
        let expect = BigRational::new(BigInt::from(-9), BigInt::from(4));
        assert!(l.re.contains_rational(&expect) && r.re.contains_rational(&expect));
        let z = [CBall::real(Ball::one().with_prec(128))];
        for n in 1..6 {
            let (l, r) = lemma2_product(&z, &Ball::zero().with_prec(128), n).unwrap();
            assert!(l.contains_zero() && r.contains_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn routes_agree_on_small_graphs(beta in 1i64..5, n in 2i64..6, s in prop::sample::select(vec![vec![1i64], vec![1, 2], vec![1, 3], vec![2, 3]]), a in 0usize..2) {
            let alpha: Vec<i64> = if a == 1 && beta >= 2 { vec![1] } else { vec![] };
            let Ok(sp) = validate_spec(beta, &s, &alpha, n) else { return Ok(()) };
            let o = Options::default();
            let brute = tau_bruteforce(&sp, &o).unwrap().value;
            prop_assert_eq!(&tau_eigenproduct(&sp, &o).unwrap().value, &brute);
            prop_assert_eq!(&tau_theorem1(&sp, &o).unwrap().value, &brute);
        }
    }
}
