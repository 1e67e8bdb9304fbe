//! Mahler measures of the `P_u` family and the growth constant of `τ(n)`.
//!
//! `M(P) = |a_d| Π max(1, |z_k|)` over the roots is the certified value; the
//! geometric mean of `|P|` on the unit circle is computed by quadrature as an
//! independent check.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::ball::Ball;
use crate::chebpoly::{build_family, isolate_roots, PalindromicLaurentPoly};
use crate::error::{Error, Result};
use crate::exec::Options;
use crate::graph::CirculantSpec;
use crate::treecount::tau_theorem1;

/// Default relative width for certified measures.
pub const MEASURE_TOLERANCE: f64 = 1e-12;
/// Required agreement between the root product and the quadrature.
pub const JENSEN_TOLERANCE: f64 = 1e-9;

const QUADRATURE_TOL: f64 = 1e-13;
const QUADRATURE_MAX_POINTS: usize = 1 << 22;

fn measure_at(p: &PalindromicLaurentPoly, bits: u32, opts: &Options) -> Result<Ball> {
    let lead = Ball::from_rational(p.rational_part().last().expect("non-empty"), bits).abs();
    if p.is_constant() {
        return Ok(p.a0_ball(bits).abs());
    }
    let bundle = isolate_roots(p, bits, opts)?;
    let out = bundle.all_z().iter().fold(lead, |acc, z| acc.mul(&z.abs().max_one()));
    Ok(out)
}

/// Certified `M(P)` with relative width below [`MEASURE_TOLERANCE`].
pub fn mahler_roots(p: &PalindromicLaurentPoly, opts: &Options) -> Result<Ball> {
    let mut bits = opts.start_bits.max(64);
    loop {
        let m = measure_at(p, bits, opts)?;
        if m.is_positive() && m.rad_f64() <= MEASURE_TOLERANCE * m.lower_f64() {
            return Ok(m);
        }
        if bits >= opts.max_bits {
            return Err(Error::PrecisionExhausted { bits, context: "Mahler measure".into() });
        }
        bits = (bits * 2).min(opts.max_bits);
    }
}

/// Quadrature estimate of `M(P)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub log_value: f64,
    pub points: usize,
    /// Change of the extrapolated logarithm at the last doubling.
    pub change: f64,
}

fn midpoint_mean(p: &PalindromicLaurentPoly, n: usize) -> f64 {
    let h = std::f64::consts::TAU / n as f64;
    let sum: f64 = (0..n).map(|k| p.eval_on_circle((k as f64 + 0.5) * h).abs().ln()).sum();
    sum / n as f64
}

/// `exp ∫₀¹ log|P(e^{2πit})| dt` on midpoint grids of `points·2^j` nodes.
///
/// Unit-circle roots at `e^{2πi j/points}` sit halfway between nodes, where
/// a double root contributes an error of exactly `c/N`; the extrapolation
/// `2E(2N) − E(N)` removes it.
pub fn mahler_integral(p: &PalindromicLaurentPoly, points: usize) -> Result<QuadratureEstimate> {
    if points < 64 {
        return Err(Error::InvalidParameter(format!("{points} quadrature points, need at least 64")));
    }
    if p.is_constant() {
        let v = p.a0_approx().abs();
        return Ok(QuadratureEstimate { value: v, log_value: v.ln(), points: 1, change: 0.0 });
    }
    let mut n = points;
    let mut coarse = midpoint_mean(p, n);
    let mut prev: Option<f64> = None;
    let mut best = f64::NAN;
    while 2 * n <= QUADRATURE_MAX_POINTS {
        let fine = midpoint_mean(p, 2 * n);
        let r = 2.0 * fine - coarse;
        best = r;
        if let Some(q) = prev {
            let change = (r - q).abs();
            if change < QUADRATURE_TOL * r.abs().max(1.0) {
                return Ok(QuadratureEstimate { value: r.exp(), log_value: r, points: 2 * n, change });
            }
        }
        prev = Some(r);
        coarse = fine;
        n *= 2;
    }
    Err(Error::NonConvergent { best: best.exp() })
}

/// One `P_u` in a [`MahlerReport`].
#[derive(Clone, Debug)]
pub struct MahlerTerm {
    pub u: u64,
    pub measure: Ball,
    pub log_measure: Ball,
    pub quadrature: QuadratureEstimate,
}

/// `n δ² d² / (β q)` as the coefficient of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prefactor {
    pub numerator: u64,
    pub denominator: u64,
}

impl Prefactor {
    pub fn of(spec: &CirculantSpec) -> Prefactor {
        let num = spec.delta * spec.delta * spec.d * spec.d;
        let den = spec.beta * spec.q();
        let g = num.gcd(&den);
        Prefactor { numerator: num / g, denominator: den / g }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numerator), BigInt::from(self.denominator))
    }
}

#[derive(Clone, Debug)]
pub struct MahlerReport {
    pub per_u: Vec<MahlerTerm>,
    /// `A = Π_u M(P_u)`.
    pub a: Ball,
    /// `(1/β) Σ_u m(P_u)`.
    pub thermo_limit: Ball,
    /// `max_u |M_roots − M_quadrature|`.
    pub quadrature_vs_roots_gap: f64,
    pub prefactor: Prefactor,
    /// The `δ = 1` spec used for the root computations when `δ > 1`.
    pub reduced: Option<CirculantSpec>,
}

fn terms(spec: &CirculantSpec, opts: &Options) -> Result<Vec<MahlerTerm>> {
    let family = build_family(spec);
    let us: Vec<u64> = (0..spec.beta).collect();
    let points = 64 * spec.d as usize;
    let results = opts.exec.map(&us, |&u| -> Result<MahlerTerm> {
        let p = &family.p_u[u as usize];
        let measure = mahler_roots(p, opts)?;
        let log_measure = measure
            .ln()
            .ok_or_else(|| Error::PrecisionExhausted { bits: measure.prec(), context: "log of measure".into() })?;
        let quadrature = mahler_integral(p, points)?;
        Ok(MahlerTerm { u, measure, log_measure, quadrature })
    });
    results.into_iter().collect()
}

/// `A`, the per-`u` measures and the prefactor of `τ(n) ~ (nδ²d²/βq) Aⁿ`.
pub fn asymptotic_constant(spec: &CirculantSpec, opts: &Options) -> Result<MahlerReport> {
    if spec.d.gcd(&spec.delta) != 1 {
        return Err(Error::PreconditionFailed(format!(
            "gcd(d, delta) = gcd({}, {}) must be 1",
            spec.d, spec.delta
        )));
    }
    let reduced = (spec.delta > 1).then(|| spec.delta_reduced());
    let mut per_u = terms(reduced.as_ref().unwrap_or(spec), opts)?;
    if let Some(r) = &reduced {
        // P_u depends on u only through u mod β/δ, so A = A'^δ.
        per_u = (0..spec.beta)
            .map(|u| MahlerTerm { u, ..per_u[(u % r.beta) as usize].clone() })
            .collect();
    }
    let a = per_u.iter().fold(Ball::one(), |acc, t| acc.mul(&t.measure));
    let thermo_limit = per_u
        .iter()
        .fold(Ball::zero(), |acc, t| acc.add(&t.log_measure))
        .div_i64(spec.beta as i64);
    let quadrature_vs_roots_gap = per_u
        .iter()
        .map(|t| (t.measure.mid_f64() - t.quadrature.value).abs() + t.measure.rad_f64())
        .fold(0.0, f64::max);
    Ok(MahlerReport { per_u, a, thermo_limit, quadrature_vs_roots_gap, prefactor: Prefactor::of(spec), reduced })
}

/// `(1/β) Σ_{u<β} m(P_u)`, summed in ascending `u`.
pub fn thermodynamic_limit(spec: &CirculantSpec, opts: &Options) -> Result<Ball> {
    let family = build_family(spec);
    let us: Vec<u64> = (0..spec.beta).collect();
    let logs = opts.exec.map(&us, |&u| -> Result<Ball> {
        let m = mahler_roots(&family.p_u[u as usize], opts)?;
        m.ln().ok_or_else(|| Error::PrecisionExhausted { bits: m.prec(), context: "log of measure".into() })
    });
    let mut sum = Ball::zero();
    for l in logs {
        sum = sum.add(&l?);
    }
    Ok(sum.div_i64(spec.beta as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u64,
    #[serde(serialize_with = "as_decimal")]
    pub tau: Option<BigUint>,
    pub asymptote: Option<f64>,
    /// `τ(n) βq / (n δ² d² Aⁿ)`.
    pub ratio: Option<f64>,
    pub skipped: Option<String>,
}

fn as_decimal<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Exact `τ(n)` against `(nδ²d²/βq) Aⁿ` for each `n`.
pub fn convergence_report(spec: &CirculantSpec, n_list: &[u64], opts: &Options) -> Result<Vec<ConvergenceRow>> {
    let report = asymptotic_constant(spec, opts)?;
    let pre = &report.prefactor;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let skip = |why: String| ConvergenceRow { n, tau: None, asymptote: None, ratio: None, skipped: Some(why) };
        if n.gcd(&spec.d) != 1 {
            rows.push(skip(format!("gcd(n, d) = {} is not 1", n.gcd(&spec.d))));
            continue;
        }
        let s = match spec.with_n(n) {
            Ok(s) => s,
            Err(e) => {
                rows.push(skip(e.to_string()));
                continue;
            }
        };
        let tau = tau_theorem1(&s, opts)?.value;
        let prec = opts.start_bits.max(report.a.prec());
        let scale = Ball::from_i64((n * pre.numerator) as i64).div_i64(pre.denominator as i64);
        let asym = scale.mul(&report.a.with_prec(prec).pow(n));
        let ratio = Ball::from_bigint(BigInt::from(tau.clone())).with_prec(prec).checked_div(&asym);
        rows.push(ConvergenceRow {
            n,
            tau: Some(tau),
            asymptote: Some(asym.mid_f64()),
            ratio: ratio.map(|r| r.mid_f64()),
            skipped: None,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_spec;
    use crate::treecount::moebius_ladder_double_steps;

    fn spec(beta: i64, s: &[i64], a: &[i64], n: i64) -> CirculantSpec {
        validate_spec(beta, s, a, n).unwrap()
    }

    fn close(b: &Ball, v: f64, tol: f64) -> bool {
        (b.mid_f64() - v).abs() <= tol
    }

    #[test]
    fn measures_by_roots() {
        let o = Options::default();
        let m = mahler_roots(&PalindromicLaurentPoly::from_ints(&[2, -1]), &o).unwrap();
        assert!(m.contains_rational(&BigRational::from_integer(1.into())));
        let m = mahler_roots(&PalindromicLaurentPoly::from_ints(&[6, -1]), &o).unwrap();
        assert!(close(&m, 3.0 + 8f64.sqrt(), 1e-14));
        let m = mahler_roots(&PalindromicLaurentPoly::from_ints(&[7]), &o).unwrap();
        assert!(close(&m, 7.0, 0.0));
    }

    #[test]
    fn measures_by_quadrature() {
        let q = mahler_integral(&PalindromicLaurentPoly::from_ints(&[6, -1]), 64).unwrap();
        assert!((q.value - (3.0 + 8f64.sqrt())).abs() < 1e-12);
        let q = mahler_integral(&PalindromicLaurentPoly::from_ints(&[2, -1]), 64).unwrap();
        assert!((q.value - 1.0).abs() < 1e-12);
        let q = mahler_integral(&PalindromicLaurentPoly::from_ints(&[-3]), 64).unwrap();
        assert_eq!(q.value, 3.0);
        assert!(mahler_integral(&PalindromicLaurentPoly::from_ints(&[6, -1]), 10).is_err());
    }

    #[test]
    fn growth_constants() {
        let o = Options::default();
        let r = asymptotic_constant(&spec(2, &[1], &[1], 3), &o).unwrap();
        assert!(close(&r.a, 3.0 + 8f64.sqrt(), 1e-12));
        assert_eq!(r.prefactor, Prefactor { numerator: 1, denominator: 2 });
        assert!(close(&r.thermo_limit, 0.881373587019543, 1e-12));
        let r = asymptotic_constant(&spec(2, &[1, 2, 3], &[1], 3), &o).unwrap();
        assert!(close(&r.a, 42.4038, 5e-4));
        assert_eq!(r.prefactor, Prefactor { numerator: 1, denominator: 28 });
        assert!(r.quadrature_vs_roots_gap < JENSEN_TOLERANCE);
        let t = thermodynamic_limit(&spec(1, &[1], &[], 5), &o).unwrap();
        assert!(t.contains_rational(&BigRational::from_integer(0.into())));
    }

    #[test]
    fn delta_reduction_keeps_the_constant() {
        let o = Options::default();
        let sp = spec(4, &[1], &[2], 3);
        assert_eq!(sp.delta, 2);
        let r = asymptotic_constant(&sp, &o).unwrap();
        let reduced = asymptotic_constant(&spec(2, &[1], &[1], 6), &o).unwrap();
        assert!(r.reduced.is_some());
        assert!(close(&r.a, reduced.a.mid_f64().powi(2), 1e-9));
        assert_eq!(r.prefactor, Prefactor { numerator: 1, denominator: 1 });
        let l = thermodynamic_limit(&sp, &o).unwrap();
        assert!(close(&l, r.thermo_limit.mid_f64(), 1e-12));
    }

    #[test]
    fn ratios_approach_one() {
        let o = Options::default();
        let rows = convergence_report(&spec(2, &[1], &[1], 3), &[5, 10, 20, 40], &o).unwrap();
        assert_eq!(rows[3].tau, Some(moebius_ladder_double_steps(40)));
        assert!((rows[3].ratio.unwrap() - 1.0).abs() < 1e-9);
        let rows = convergence_report(&spec(1, &[2, 3], &[], 7), &[7, 8], &o).unwrap();
        assert!(rows.iter().all(|r| r.skipped.is_none()));
        let rows = convergence_report(&spec(1, &[2, 4], &[], 9), &[9, 10], &o).unwrap();
        assert!(rows[1].skipped.is_some() && rows[0].ratio.is_some());
    }
}
