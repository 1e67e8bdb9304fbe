//! Grid sweeps of the invariants and a replay of seven worked examples.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::arith::{check_recurrence, compare_stated_constant, decompose_tau, divisible_by_order, Decomposition, RecurrenceReport, StatedConstant};
use crate::ball::{Ball, CBall};
use crate::chebpoly::{build_family, chebyshev_t, check_lemma1, isolate_roots};
use crate::error::{Error, Result};
use crate::exec::Options;
use crate::graph::{tau_bruteforce, validate_spec, CirculantSpec};
use crate::mahler::{asymptotic_constant, mahler_integral, mahler_roots, JENSEN_TOLERANCE};
use crate::poly::QPoly;
use crate::roots::isolate_rational;
use crate::treecount::{fibonacci, lemma2_product, tau_corollary1, tau_corollary2, tau_eigenproduct, tau_theorem1, Method};

/// Parameter sweep over `(β, s, α, n)` with every valid α-subset.
#[derive(Clone, Debug, Serialize)]
pub struct Grid {
    pub betas: Vec<u64>,
    pub s_sets: Vec<Vec<u64>>,
    pub n_min: u64,
    pub n_max: u64,
    pub max_order: u64,
}

impl Grid {
    /// `β ∈ {1,2,3,4,6}`, five small jump sets, `n ∈ 2..=8`, `βn ≤ 64`.
    pub fn desk() -> Grid {
        Grid {
            betas: vec![1, 2, 3, 4, 6],
            s_sets: vec![vec![1], vec![1, 2], vec![1, 2, 3], vec![2, 3], vec![1, 3]],
            n_min: 2,
            n_max: 8,
            max_order: 64,
        }
    }

    pub fn cells(&self) -> Vec<GridCell> {
        let mut out = vec![];
        for &beta in &self.betas {
            for s in &self.s_sets {
                for alpha in alpha_subsets(beta) {
                    for n in self.n_min..=self.n_max {
                        out.push(GridCell::new(beta, s, &alpha, n, self.max_order));
                    }
                }
            }
        }
        out
    }

    /// Distinct `(β, s, α)` families among the valid cells.
    pub fn families(&self) -> Vec<CirculantSpec> {
        let mut seen = BTreeSet::new();
        let mut out = vec![];
        for c in self.cells() {
            if let Some(sp) = c.spec {
                if seen.insert((sp.beta, sp.s_jumps.clone(), sp.alpha_jumps.clone())) {
                    out.push(sp);
                }
            }
        }
        out
    }
}

/// All subsets of `1..=⌊β/2⌋`, the empty one included, in lexicographic order.
pub fn alpha_subsets(beta: u64) -> Vec<Vec<u64>> {
    let top = beta / 2;
    let mut out: Vec<Vec<u64>> = (0u64..1 << top)
        .map(|mask| (1..=top).filter(|a| mask >> (a - 1) & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GridCell {
    pub beta: u64,
    pub s: Vec<u64>,
    pub alpha: Vec<u64>,
    pub n: u64,
    pub spec: Option<CirculantSpec>,
    pub skipped: Option<String>,
}

impl GridCell {
    pub fn new(beta: u64, s: &[u64], alpha: &[u64], n: u64, max_order: u64) -> GridCell {
        let ints = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
        let (spec, skipped) = match validate_spec(beta as i64, &ints(s), &ints(alpha), n as i64) {
            Ok(sp) if sp.m > max_order => (None, Some(format!("order {} exceeds {max_order}", sp.m))),
            Ok(sp) => (Some(sp), None),
            Err(e) => (None, Some(e.to_string())),
        };
        GridCell { beta, s: s.to_vec(), alpha: alpha.to_vec(), n, spec, skipped }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteSummary {
    fn new(name: &str) -> SuiteSummary {
        SuiteSummary { name: name.into(), ..Default::default() }
    }

    fn fail(&mut self, why: String) {
        self.failed += 1;
        self.failures.push(why);
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Spanning-tree counts of one spec by every applicable method.
#[derive(Clone, Debug)]
pub struct OracleOutcome {
    pub spec: CirculantSpec,
    pub values: Vec<(Method, std::result::Result<BigUint, Error>)>,
}

impl OracleOutcome {
    pub fn agree(&self) -> bool {
        let mut it = self.values.iter().map(|(_, v)| v);
        match it.next() {
            Some(Ok(first)) => it.all(|v| v.as_ref() == Ok(first)),
            _ => false,
        }
    }

    pub fn value(&self) -> Option<&BigUint> {
        self.values.first().and_then(|(_, v)| v.as_ref().ok())
    }
}

/// Counts by brute force, eigenvalue product, the Chebyshev product and,
/// when `s` allows, a closed form.
pub fn oracle_check(spec: &CirculantSpec, opts: &Options, with_brute: bool) -> OracleOutcome {
    let mut values = vec![];
    if with_brute {
        values.push((Method::BruteForce, tau_bruteforce(spec, opts).map(|t| t.value)));
    }
    values.push((Method::EigenProduct, tau_eigenproduct(spec, opts).map(|t| t.value)));
    values.push((Method::Theorem1, tau_theorem1(spec, opts).map(|t| t.value)));
    if spec.s_jumps == [1] {
        values.push((Method::Corollary1, tau_corollary1(spec, opts).map(|t| t.value)));
    }
    if spec.s_jumps == [1, 2] {
        values.push((Method::Corollary2, tau_corollary2(spec, opts).map(|t| t.value)));
    }
    OracleOutcome { spec: spec.clone(), values }
}

fn valid_specs(cells: &[GridCell]) -> Vec<CirculantSpec> {
    cells.iter().filter_map(|c| c.spec.clone()).collect()
}

pub fn oracle_suite(cells: &[GridCell], opts: &Options) -> (Vec<OracleOutcome>, SuiteSummary) {
    let specs = valid_specs(cells);
    let outcomes = opts.exec.map(&specs, |sp| oracle_check(sp, opts, true));
    let mut sum = SuiteSummary::new("oracle");
    sum.skipped = cells.len() - specs.len();
    for o in &outcomes {
        if o.agree() {
            sum.passed += 1;
        } else {
            let vals: Vec<String> = o.values.iter().map(|(m, v)| format!("{}={:?}", m.name(), v)).collect();
            sum.fail(format!("{}: {}", o.spec, vals.join(", ")));
        }
    }
    (outcomes, sum)
}

#[derive(Clone, Debug)]
pub struct Theorem2Outcome {
    pub spec: CirculantSpec,
    pub tau: BigUint,
    pub result: std::result::Result<Decomposition, Error>,
}

/// Decomposes the brute-force count of every valid cell.
pub fn theorem2_suite(cells: &[GridCell], opts: &Options) -> (Vec<Theorem2Outcome>, SuiteSummary) {
    let specs = valid_specs(cells);
    let outcomes: Vec<Result<Theorem2Outcome>> = opts.exec.map(&specs, |sp| {
        let t = tau_bruteforce(sp, opts)?;
        let result = decompose_tau(sp, &t);
        Ok(Theorem2Outcome { spec: sp.clone(), tau: t.value, result })
    });
    let mut sum = SuiteSummary::new("theorem2");
    sum.skipped = cells.len() - specs.len();
    let mut out = vec![];
    for o in outcomes {
        match o {
            Err(e) => sum.fail(e.to_string()),
            Ok(o) => {
                match &o.result {
                    Ok(d) if d.tau(o.spec.n) == o.tau && divisible_by_order(&o.spec, &o.tau) => sum.passed += 1,
                    Ok(_) => sum.fail(format!("{}: inconsistent decomposition", o.spec)),
                    Err(Error::UndefinedSquarefree) => sum.flagged += 1,
                    Err(e) => sum.fail(format!("{}: {e}", o.spec)),
                }
                out.push(o);
            }
        }
    }
    (out, sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Outcome {
    pub family: String,
    pub u: u64,
    pub margin_lower: f64,
    pub certified: bool,
}

/// Distance from the unit circle of the roots of every `P_u`, `0 < u < β`,
/// over the δ-reduced families of the grid.
pub fn lemma1_suite(families: &[CirculantSpec], opts: &Options) -> (Vec<Lemma1Outcome>, SuiteSummary, f64) {
    let mut seen = BTreeSet::new();
    let mut jobs = vec![];
    for f in families {
        let r = if f.delta > 1 { f.delta_reduced() } else { f.clone() };
        if seen.insert((r.beta, r.s_jumps.clone(), r.alpha_jumps.clone())) {
            for u in 1..r.beta {
                jobs.push((r.clone(), u));
            }
        }
    }
    let results = opts.exec.map(&jobs, |(sp, u)| {
        let p = &build_family(sp).p_u[*u as usize];
        let r = isolate_roots(p, opts.start_bits, opts).and_then(|b| check_lemma1(&b, *u, sp));
        match r {
            Ok(rep) => Lemma1Outcome { family: sp.family_label(), u: *u, margin_lower: rep.margin_lower(), certified: true },
            Err(_) => Lemma1Outcome { family: sp.family_label(), u: *u, margin_lower: 0.0, certified: false },
        }
    });
    let mut sum = SuiteSummary::new("lemma1");
    let mut min = f64::INFINITY;
    for r in &results {
        if r.certified {
            sum.passed += 1;
            min = min.min(r.margin_lower);
        } else {
            sum.fail(format!("{} u={}", r.family, r.u));
        }
    }
    (results, sum, min)
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma2Outcome {
    pub m: usize,
    pub n: u64,
    pub u: u64,
    pub beta: u64,
    /// Upper bound on `|LHS − RHS| / |RHS|`.
    pub relative_error: f64,
    pub ok: bool,
}

/// Bound required of [`Lemma2Outcome::relative_error`].
pub const LEMMA2_TOLERANCE: f64 = 5.421010862427522e-20; // 2^-64

/// Both sides of the product identity for `count` random root sets with
/// `m ≤ 3`, `n ≤ 12` and `ω = 2πu/β`.
pub fn lemma2_suite(count: usize, seed: u64, opts: &Options) -> (Vec<Lemma2Outcome>, SuiteSummary) {
    let mut rng = StdRng::seed_from_u64(seed);
    let prec = 256;
    let cases: Vec<(Vec<CBall>, u64, u64, u64)> = (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=3);
            let roots = (0..m)
                .map(|_| {
                    let r: f64 = 2f64.powf(rng.gen_range(-2.0..2.0));
                    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                    CBall::new(Ball::from_f64(r * t.cos()).with_prec(prec), Ball::from_f64(r * t.sin()).with_prec(prec))
                })
                .collect();
            let beta = rng.gen_range(1..=12);
            (roots, rng.gen_range(1..=12), rng.gen_range(0..beta), beta)
        })
        .collect();
    let results = opts.exec.map(&cases, |(roots, n, u, beta)| {
        let omega = Ball::pi(prec).mul_i64(2 * *u as i64).div_i64(*beta as i64);
        let (relative_error, ok) = match lemma2_product(roots, &omega, *n) {
            Ok((l, r)) => {
                let diff = l.sub(&r).abs().upper_f64();
                let den = r.abs().lower_f64();
                let e = if den > 0.0 { diff / den } else { f64::INFINITY };
                (e, l.overlaps(&r) && e < LEMMA2_TOLERANCE)
            }
            Err(_) => (f64::INFINITY, false),
        };
        Lemma2Outcome { m: roots.len(), n: *n, u: *u, beta: *beta, relative_error, ok }
    });
    let mut sum = SuiteSummary::new("lemma2");
    for r in &results {
        if r.ok {
            sum.passed += 1;
        } else {
            sum.fail(format!("m={} n={} u={}/{} err={:e}", r.m, r.n, r.u, r.beta, r.relative_error));
        }
    }
    (results, sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct JensenOutcome {
    pub family: String,
    pub u: u64,
    pub roots: f64,
    pub quadrature: f64,
    pub gap: f64,
}

/// Root-product against quadrature for every `P_u` of every family.
pub fn jensen_suite(families: &[CirculantSpec], opts: &Options) -> (Vec<JensenOutcome>, SuiteSummary) {
    let jobs: Vec<(CirculantSpec, u64)> = families.iter().flat_map(|f| (0..f.beta).map(move |u| (f.clone(), u))).collect();
    let results = opts.exec.map(&jobs, |(sp, u)| -> Result<JensenOutcome> {
        let p = &build_family(sp).p_u[*u as usize];
        let m = mahler_roots(p, opts)?;
        let q = mahler_integral(p, 64 * sp.d as usize)?;
        let gap = (m.mid_f64() - q.value).abs() + m.rad_f64();
        Ok(JensenOutcome { family: sp.family_label(), u: *u, roots: m.mid_f64(), quadrature: q.value, gap })
    });
    let mut sum = SuiteSummary::new("jensen");
    let mut out = vec![];
    for (r, (sp, u)) in results.into_iter().zip(&jobs) {
        match r {
            Ok(o) if o.gap < JENSEN_TOLERANCE => {
                sum.passed += 1;
                out.push(o);
            }
            Ok(o) => {
                sum.fail(format!("{} u={}: gap {:e}", o.family, o.u, o.gap));
                out.push(o);
            }
            Err(e) => sum.fail(format!("{} u={u}: {e}", sp.family_label())),
        }
    }
    (out, sum)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub cells: usize,
    pub valid_cells: usize,
    pub skipped: Vec<(String, String)>,
    pub suites: Vec<SuiteSummary>,
    pub min_lemma1_margin: f64,
    pub max_jensen_gap: f64,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteSummary::ok)
    }
}

/// Runs the oracle, decomposition, Lemma 1, Lemma 2 and Jensen suites.
pub fn run_all(grid: &Grid, opts: &Options) -> VerifyReport {
    let cells = grid.cells();
    let families = grid.families();
    let (_, oracle) = oracle_suite(&cells, opts);
    let (_, t2) = theorem2_suite(&cells, opts);
    let (_, l1, min_margin) = lemma1_suite(&families, opts);
    let (_, l2) = lemma2_suite(200, 0x5eed, opts);
    let (jensen, js) = jensen_suite(&families, opts);
    let skipped = cells
        .iter()
        .filter_map(|c| {
            c.skipped.as_ref().map(|why| {
                (format!("beta={} s={:?} alpha={:?} n={}", c.beta, c.s, c.alpha, c.n), why.clone())
            })
        })
        .collect();
    VerifyReport {
        cells: cells.len(),
        valid_cells: cells.iter().filter(|c| c.spec.is_some()).count(),
        skipped,
        suites: vec![oracle, t2, l1, l2, js],
        min_lemma1_margin: min_margin,
        max_jensen_gap: jensen.iter().map(|j| j.gap).fold(0.0, f64::max),
    }
}

/// One `n` of a replayed example.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleRow {
    pub n: u64,
    #[serde(serialize_with = "decimal")]
    pub tau: BigUint,
    pub closed_form_ok: bool,
    pub brute_force_ok: Option<bool>,
    pub coefficient: Option<u64>,
    pub stated_constant: Option<u64>,
    pub relation: Option<StatedConstant>,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    pub index: usize,
    pub label: String,
    pub rows: Vec<ExampleRow>,
    pub notes: Vec<String>,
    pub passed: bool,
}

struct Example {
    beta: u64,
    s: &'static [u64],
    alpha: &'static [u64],
    /// Stated constant for (even n, odd n).
    stated: Option<(u64, u64)>,
}

const EXAMPLES: [Example; 7] = [
    Example { beta: 2, s: &[1], alpha: &[1], stated: None },
    Example { beta: 2, s: &[1, 2], alpha: &[1], stated: Some((2, 1)) },
    Example { beta: 2, s: &[1, 2, 3], alpha: &[1], stated: Some((4, 6)) },
    Example { beta: 3, s: &[1], alpha: &[1], stated: Some((3, 3)) },
    Example { beta: 3, s: &[1, 2], alpha: &[1], stated: Some((3, 3)) },
    Example { beta: 6, s: &[1], alpha: &[1, 3], stated: Some((6, 18)) },
    Example { beta: 12, s: &[1], alpha: &[3, 4], stated: Some((3, 6)) },
];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn t_rat(n: u64, num: i64, den: i64) -> BigRational {
    chebyshev_t(n, &rat(num, den))
}

fn real_root(disc: i64, sign: i64, prec: u32) -> Ball {
    // (−1 ± √disc)/4
    let r = Ball::from_i64(disc).with_prec(prec).sqrt().expect("positive");
    let r = if sign < 0 { r.neg() } else { r };
    r.sub(&Ball::one()).mul_2exp(-2)
}

/// Closed form of example `index` at `n`, as an enclosure.
fn closed_form(index: usize, n: u64, plus_one_in_example2: bool, prec: u32, opts: &Options) -> Result<Ball> {
    let nn = rat(n as i64, 1);
    let two = rat(2, 1);
    let one = BigRational::one();
    let exact = |q: BigRational| Ok(Ball::from_rational(&q, prec));
    match index {
        1 => exact(nn * (t_rat(n, 3, 1) + one)),
        2 => {
            let f = fibonacci(n);
            let c = if plus_one_in_example2 { Ball::one() } else { Ball::one().neg() };
            let mut v = Ball::from_bigint(BigInt::from(2 * n) * BigInt::from(&f * &f)).with_prec(prec);
            for sign in [-1, 1] {
                v = v.mul(&chebyshev_t(n, &real_root(41, sign, prec)).add(&c).abs());
            }
            Ok(v)
        }
        3 => {
            let theta = CBall::new(
                Ball::from_i64(-3).with_prec(prec).mul_2exp(-2),
                Ball::from_i64(7).with_prec(prec).sqrt().expect("positive").mul_2exp(-2),
            );
            let t = chebyshev_t(n, &theta).sub(&CBall::one()).norm_sqr();
            let cubic = QPoly::from_ints(&[-3, -1, 1, 2]);
            let roots = isolate_rational(&cubic, prec, opts)?.roots;
            let prod = roots.iter().fold(CBall::one(), |acc, w| acc.mul(&chebyshev_t(n, w).add(&CBall::one())));
            let prod = prod.real_part_checked().ok_or_else(|| Error::PrecisionExhausted {
                bits: prec,
                context: "cubic product".into(),
            })?;
            Ok(t.mul(&prod).mul_i64(8 * n as i64).div_i64(7))
        }
        4 => {
            let a = two.clone() * t_rat(n, 5, 2) + one;
            exact(nn / rat(3, 1) * &a * &a)
        }
        5 => {
            let f = fibonacci(n);
            let mut v = Ball::from_bigint(BigInt::from(n) * BigInt::from(&f * &f)).with_prec(prec).div_i64(3);
            for sign in [-1, 1] {
                v = v.mul(&chebyshev_t(n, &real_root(37, sign, prec)).mul_2exp(1).add(&Ball::one()).sqr());
            }
            Ok(v)
        }
        6 => {
            let a = two.clone() * t_rat(n, 5, 2) + &one;
            let b = two * t_rat(n, 7, 2) - &one;
            exact(nn / rat(3, 1) * &a * &a * &b * &b * (t_rat(n, 5, 1) + one))
        }
        7 => {
            let t2 = t_rat(n, 2, 1);
            let a = rat(2, 1) * t_rat(n, 5, 2) + &one;
            let t72 = t_rat(n, 7, 2);
            let b = rat(4, 1) * &t72 * &t72 - rat(3, 1);
            let c = rat(2, 1) * t_rat(n, 9, 2) - &one;
            exact(rat(2 * n as i64, 3) * &t2 * &t2 * &a * &a * (t_rat(n, 3, 1) + one) * &b * &b * &c * &c)
        }
        _ => Err(Error::InvalidParameter(format!("no example {index}"))),
    }
}

fn encloses(b: &Ball, v: &BigUint) -> bool {
    b.contains_rational(&BigRational::from_integer(BigInt::from(v.clone()))) && b.width_below_pow2(0)
}

/// Replays the seven worked examples for `n` in `1..=n_max`.
pub fn replay_examples(n_max: u64, opts: &Options) -> Vec<ExampleReport> {
    let indices: Vec<usize> = (1..=EXAMPLES.len()).collect();
    opts.exec.map(&indices, |&i| replay_example(i, n_max, opts))
}

pub fn replay_example(index: usize, n_max: u64, opts: &Options) -> ExampleReport {
    let ex = &EXAMPLES[index - 1];
    let prec = 256;
    let mut rows = vec![];
    let mut notes = vec![];
    let mut passed = true;
    let mut label = String::new();
    let mut a_values = vec![];
    let mut printed_example2_ok = true;
    for n in 1..=n_max {
        let Ok(sp) = validate_spec(
            ex.beta as i64,
            &ex.s.iter().map(|&v| v as i64).collect::<Vec<_>>(),
            &ex.alpha.iter().map(|&v| v as i64).collect::<Vec<_>>(),
            n as i64,
        ) else {
            continue;
        };
        label = sp.family_label();
        let tau = match tau_theorem1(&sp, opts) {
            Ok(t) => t.value,
            Err(e) => {
                notes.push(format!("n={n}: {e}"));
                passed = false;
                continue;
            }
        };
        let closed_form_ok = closed_form(index, n, true, prec, opts).is_ok_and(|b| encloses(&b, &tau));
        if index == 2 {
            printed_example2_ok &= closed_form(index, n, false, prec, opts).is_ok_and(|b| encloses(&b, &tau));
        }
        let brute_force_ok = (sp.m <= 64).then(|| tau_bruteforce(&sp, opts).is_ok_and(|t| t.value == tau));
        let decomposition = decompose_tau(&sp, &crate::treecount::TauResult {
            value: tau.clone(),
            method: Method::Theorem1,
            precision_used: 0,
            certified: true,
        });
        let stated_constant = ex.stated.map(|(even, odd)| if n % 2 == 0 { even } else { odd });
        let (coefficient, relation) = match &decomposition {
            Ok(d) => {
                if index == 4 {
                    a_values.push(BigInt::from(d.a_n.clone()));
                }
                (Some(d.coefficient), stated_constant.map(|c| compare_stated_constant(d, c)))
            }
            Err(e) => {
                notes.push(format!("n={n}: {e}"));
                (None, None)
            }
        };
        passed &= closed_form_ok
            && brute_force_ok != Some(false)
            && coefficient.is_some()
            && relation != Some(StatedConstant::Mismatch);
        rows.push(ExampleRow { n, tau, closed_form_ok, brute_force_ok, coefficient, stated_constant, relation });
    }
    if index == 2 && !printed_example2_ok {
        notes.push("the printed factors |T_n(w) - 1| do not reproduce tau; |T_n(w) + 1| does".into());
    }
    if rows.iter().any(|r| matches!(r.relation, Some(StatedConstant::SquareAbsorbed(_)))) {
        notes.push("a stated constant differs from the case coefficient by a square factor".into());
    }
    if index == 3 {
        let sp = validate_spec(2, &[1, 2, 3], &[1], 3).expect("valid");
        match asymptotic_constant(&sp, opts) {
            Ok(r) => {
                let a = r.a.mid_f64();
                let ok = (a - 42.4038).abs() < 5e-4 && r.prefactor.numerator == 1 && r.prefactor.denominator == 28;
                notes.push(format!("A = {a:.6}, prefactor n*{}/{}", r.prefactor.numerator, r.prefactor.denominator));
                passed &= ok;
            }
            Err(e) => {
                notes.push(e.to_string());
                passed = false;
            }
        }
    }
    if index == 4 {
        let rep = recurrence_check(&a_values);
        notes.push(format!("recurrence 6,-6,1 from 2,8,37: {}", if rep.holds { "holds" } else { "fails" }));
        passed &= rep.holds;
    }
    ExampleReport { index, label, rows, notes, passed }
}

/// `a(n) = 6a(n−1) − 6a(n−2) + a(n−3)` with `a(1..3) = 2, 8, 37`.
pub fn recurrence_check(values: &[BigInt]) -> RecurrenceReport {
    let seeds = [2, 8, 37].map(BigInt::from);
    check_recurrence(values, &[6, -6, 1], &seeds)
}
