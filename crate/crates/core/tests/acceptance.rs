use std::process::ExitCode;
use std::time::{Duration, Instant};

use circtree::arith::{decompose_tau, CaseTag};
use circtree::graph::tau_bruteforce;
use circtree::mahler::{asymptotic_constant, convergence_report};
use circtree::treecount::{fibonacci, moebius_ladder_double_steps, tau1_fixed, tau_theorem1};
use circtree::verify::{jensen_suite, lemma1_suite, lemma2_suite, oracle_suite, recurrence_check, theorem2_suite, Grid};
use circtree::{validate_spec, CirculantSpec, Options};
use num_bigint::{BigInt, BigUint};

type Outcome = Result<String, String>;

fn spec(beta: i64, s: &[i64], a: &[i64], n: i64) -> Result<CirculantSpec, String> {
    validate_spec(beta, s, a, n).map_err(|e| e.to_string())
}

fn oracle_grid(opts: &Options) -> Outcome {
    let start = Instant::now();
    let cells = Grid::desk().cells();
    let valid = cells.iter().filter(|c| c.spec.is_some()).count();
    let (_, sum) = oracle_suite(&cells, opts);
    let elapsed = start.elapsed();
    if valid < 150 {
        return Err(format!("only {valid} valid grid specs"));
    }
    if !sum.ok() {
        return Err(format!("{} disagreements, first: {}", sum.failed, sum.failures[0]));
    }
    if elapsed > Duration::from_secs(300) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("{} specs agree on brute = eigen = chebyshev, {} cells skipped, {elapsed:.1?}", sum.passed, sum.skipped))
}

fn moebius_double_steps(opts: &Options) -> Outcome {
    for n in 2..=20 {
        let sp = spec(2, &[1], &[1], n)?;
        let expected = moebius_ladder_double_steps(n as u64);
        let t = tau_theorem1(&sp, opts).map_err(|e| e.to_string())?.value;
        if t != expected {
            return Err(format!("n={n}: {t} != {expected}"));
        }
        if n <= 12 {
            let b = tau_bruteforce(&sp, opts).map_err(|e| e.to_string())?.value;
            if b != expected {
                return Err(format!("n={n}: brute force {b} != {expected}"));
            }
        }
    }
    Ok("n(T_n(3)+1) for n = 2..20, brute force to n = 12".into())
}

fn c3n_recurrence(opts: &Options) -> Outcome {
    let mut a = vec![];
    for n in 1..=12 {
        let sp = spec(3, &[1], &[1], n)?;
        let t = tau_theorem1(&sp, opts).map_err(|e| e.to_string())?;
        let d = decompose_tau(&sp, &t).map_err(|e| e.to_string())?;
        if d.coefficient != 3 {
            return Err(format!("n={n}: coefficient {}", d.coefficient));
        }
        a.push(BigInt::from(d.a_n));
    }
    let rep = recurrence_check(&a);
    if !rep.holds {
        return Err(format!("{rep:?}"));
    }
    Ok(format!("tau = 3n a(n)^2, a(1..12) = {} ... {}", a[0], a[11]))
}

fn c2n_123_constants(opts: &Options) -> Outcome {
    let r = asymptotic_constant(&spec(2, &[1, 2, 3], &[1], 3)?, opts).map_err(|e| e.to_string())?;
    let a = r.a.mid_f64();
    if (a - 42.4038).abs() >= 5e-4 {
        return Err(format!("A = {a}"));
    }
    let mut checked = vec![];
    for n in 1..=9 {
        let Ok(sp) = spec(2, &[1, 2, 3], &[1], n) else { continue };
        let t = tau_theorem1(&sp, opts).map_err(|e| e.to_string())?;
        let d = decompose_tau(&sp, &t).map_err(|e| e.to_string())?;
        let want = if n % 2 == 1 { 6 } else { 4 };
        if d.coefficient != want {
            return Err(format!("n={n}: coefficient {} != {want}", d.coefficient));
        }
        checked.push(n);
    }
    Ok(format!("A = {a:.6}, constants 6/4 for n in {checked:?} (n < 3 is out of range)"))
}

fn fixed_part_fibonacci(opts: &Options) -> Outcome {
    for n in 5..=30u64 {
        let sp = spec(1, &[1, 2], &[], n as i64)?;
        let t = tau1_fixed(&sp, opts).map_err(|e| e.to_string())?.value;
        let f = fibonacci(n);
        let want = BigUint::from(n) * &f * &f;
        if t != want {
            return Err(format!("n={n}: {t} != {want}"));
        }
    }
    Ok("tau_1(C_n(1,2)) = n F_n^2 for n = 5..30".into())
}

fn jensen(opts: &Options) -> Outcome {
    let (rows, sum) = jensen_suite(&Grid::desk().families(), opts);
    if !sum.ok() {
        return Err(format!("{} failures, first: {}", sum.failed, sum.failures[0]));
    }
    let max = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
    Ok(format!("{} polynomials, max gap {max:.3e}", sum.passed))
}

fn lemma1(opts: &Options) -> Outcome {
    let (_, sum, min) = lemma1_suite(&Grid::desk().families(), opts);
    if !sum.ok() {
        return Err(format!("{} uncertified, first: {}", sum.failed, sum.failures[0]));
    }
    Ok(format!("{} (family, u) pairs, minimum margin {min:.6}", sum.passed))
}

fn convergence(opts: &Options) -> Outcome {
    let rows = convergence_report(&spec(2, &[1], &[1], 40)?, &[40], opts).map_err(|e| e.to_string())?;
    if rows[0].tau.as_ref() != Some(&moebius_ladder_double_steps(40)) {
        return Err("n=40 count differs from n(T_n(3)+1)".into());
    }
    let r1 = rows[0].ratio.ok_or("no ratio at n=40")?;
    if (r1 - 1.0).abs() > 1e-9 {
        return Err(format!("C_2n(1,n) ratio at 40 is {r1}"));
    }
    let rows = convergence_report(&spec(2, &[1, 2, 3], &[1], 30)?, &[30], opts).map_err(|e| e.to_string())?;
    let r2 = rows[0].ratio.ok_or("no ratio at n=30")?;
    if (r2 - 1.0).abs() > 0.01 {
        return Err(format!("C_2n(1,2,3,n) ratio at 30 is {r2}"));
    }
    Ok(format!("ratio {r1:.12} at n=40, {r2:.6} at n=30"))
}

fn theorem2(opts: &Options) -> Outcome {
    let (rows, sum) = theorem2_suite(&Grid::desk().cells(), opts);
    if !sum.ok() {
        return Err(format!("{} failures, first: {}", sum.failed, sum.failures[0]));
    }
    let count = |tag| rows.iter().filter(|r| matches!(&r.result, Ok(d) if d.case_tag == tag)).count();
    Ok(format!(
        "{} perfect squares ({} odd/odd, {} even n, {} odd n/even beta), {} flagged",
        sum.passed,
        count(CaseTag::OddOdd),
        count(CaseTag::EvenN),
        count(CaseTag::OddNEvenBeta),
        sum.flagged
    ))
}

fn lemma2(opts: &Options) -> Outcome {
    let (rows, sum) = lemma2_suite(200, 0x5eed, opts);
    if !sum.ok() {
        return Err(format!("{} failures, first: {}", sum.failed, sum.failures[0]));
    }
    let max = rows.iter().map(|r| r.relative_error).fold(0.0, f64::max);
    Ok(format!("{} instances, max relative error {max:.3e}", sum.passed))
}

fn main() -> ExitCode {
    let opts = Options::default();
    let criteria: [(&str, fn(&Options) -> Outcome); 10] = [
        ("oracle equivalence on the desk grid", oracle_grid),
        ("C_2n(1,n) closed form", moebius_double_steps),
        ("C_3n(1,n) decomposition and recurrence", c3n_recurrence),
        ("C_2n(1,2,3,n) growth constant and case constants", c2n_123_constants),
        ("fixed part of C_n(1,2) is n F_n^2", fixed_part_fibonacci),
        ("Mahler measure by roots vs quadrature", jensen),
        ("roots of P_u stay off the unit circle", lemma1),
        ("asymptotic ratios", convergence),
        ("tau = c n a(n)^2 over the grid", theorem2),
        ("Chebyshev product identity on random roots", lemma2),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match f(&opts) {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
