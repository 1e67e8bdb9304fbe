//! Certified isolation of all complex roots of a univariate polynomial.
//!
//! Approximations come from Aberth iteration, first in `f64` and then at
//! the working precision. They are certified with Weierstrass inclusion
//! disks: with `W_i = p(z_i) / (a_N prod_{j != i} (z_i - z_j))`, the disks
//! `|z - z_i| <= N |W_i|` cover every root and a connected union of `m`
//! disks holds exactly `m` roots. Coefficients may be balls; the disks then
//! hold the roots of every polynomial inside the coefficient balls.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::ball::{Ball, CBall, Mag};
use crate::error::{Error, Result};
use crate::exec::Options;
use crate::poly::QPoly;

/// Root enclosures, one per root counted with multiplicity.
#[derive(Clone, Debug)]
pub struct Isolation {
    pub roots: Vec<CBall>,
    pub bits: u32,
}

fn horner_c64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Aberth iteration in double precision.
pub fn aberth_f64(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let c: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let lead = coeffs[n].abs();
    // Fujiwara-type radius estimate.
    let radius = (0..n)
        .map(|i| (coeffs[i].abs() / lead).powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_c64(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

fn eval_with_derivative(coeffs: &[CBall], z: &CBall) -> (CBall, CBall) {
    let mut p = CBall::zero();
    let mut dp = CBall::zero();
    for a in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(a);
    }
    (p, dp)
}

/// Aberth refinement at working precision on exact midpoints.
fn refine(coeffs: &[CBall], start: &[CBall], prec: u32) -> Vec<CBall> {
    let n = start.len();
    let mut z: Vec<CBall> = start.iter().map(|x| x.with_prec(prec).midpoint()).collect();
    let tol = Mag::pow2(-(prec as i64) + 6);
    let max_iter = 8 * (32 - prec.leading_zeros()) as usize + 40;
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &z[i]);
            let Some(ratio) = p.checked_div(&dp) else { continue };
            let mut sum = CBall::zero();
            for j in 0..n {
                if j != i {
                    if let Some(inv) = z[i].sub(&z[j]).inv() {
                        sum = sum.add(&inv);
                    }
                }
            }
            let denom = CBall::one().with_prec(prec).sub(&ratio.mul(&sum));
            let Some(step) = ratio.checked_div(&denom) else { continue };
            let step = step.midpoint();
            let scale = z[i].abs().abs_upper().max(Mag::pow2(0));
            if !step.abs().abs_upper().le(&tol.mul_up(scale)) {
                converged = false;
            }
            z[i] = z[i].sub(&step).midpoint();
        }
        if converged {
            break;
        }
    }
    z
}

/// Inclusion radii for approximations `z`; `None` when two approximations
/// coincide or the leading coefficient may vanish.
fn inclusion_radii(coeffs: &[CBall], z: &[CBall]) -> Option<Vec<Mag>> {
    let n = z.len();
    let lead = coeffs[n].abs().abs_lower();
    if lead.is_zero() {
        return None;
    }
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let (p, _) = eval_with_derivative(coeffs, &z[i]);
        let num = p.abs().abs_upper();
        let mut den = lead;
        for j in 0..n {
            if j != i {
                let d = z[i].sub(&z[j]).abs().abs_lower();
                if d.is_zero() {
                    return None;
                }
                den = den.mul_down(d);
            }
        }
        radii.push(num.div_up(den).mul_up(Mag::from_u64_up(n as u64, 0)));
    }
    Some(radii)
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut j = i;
    while parent[j] != r {
        let next = parent[j];
        parent[j] = r;
        j = next;
    }
    r
}

/// Groups overlapping disks and replaces each group by a common disk.
/// With real coefficients, a lone disk meeting the real axis holds a real
/// root (its conjugate would otherwise be a second root in the same disk).
fn cluster(z: &[CBall], radii: &[Mag]) -> Vec<CBall> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = z[i].sub(&z[j]).abs().abs_lower();
            if d.le(&radii[i].add_up(radii[j])) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut out: Vec<CBall> = Vec::with_capacity(n);
    for i in 0..n {
        let root = find(&mut parent, i);
        let members: Vec<usize> = (0..n).filter(|&j| find(&mut parent, j) == root).collect();
        if members.len() == 1 {
            let d = CBall::disk(&z[i], radii[i]);
            if d.im.contains_zero() {
                out.push(CBall::real(d.re));
            } else {
                out.push(d);
            }
            continue;
        }
        let c = &z[members[0]];
        let r = members
            .iter()
            .map(|&j| z[j].sub(c).abs().abs_upper().add_up(radii[j]))
            .fold(Mag::ZERO, Mag::max);
        out.push(CBall::disk(c, r));
    }
    out
}

/// Isolates the roots of `sum c_i z^i`, where `coeffs_at(p)` returns the
/// coefficients enclosed at `p` bits. Every enclosure ends up with radius
/// at most `2^-target_bits`.
pub fn isolate_with<F>(coeffs_at: F, target_bits: u32, opts: &Options) -> Result<Isolation>
where
    F: Fn(u32) -> Vec<Ball>,
{
    let probe = coeffs_at(64);
    let degree = probe.len().checked_sub(1).ok_or(Error::ConstantPolynomial)?;
    if degree == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mids: Vec<f64> = probe.iter().map(|b| b.mid_f64()).collect();
    let start: Vec<CBall> = aberth_f64(&mids).into_iter().map(|z| CBall::from_c64(z, 64)).collect();
    let target = Mag::pow2(-(target_bits as i64));
    let mut approx = start;
    let mut last_bits = opts.start_bits;
    for prec in opts.precision_ladder() {
        if prec < target_bits + 16 && prec < opts.max_bits {
            continue;
        }
        last_bits = prec;
        let coeffs: Vec<CBall> = coeffs_at(prec).into_iter().map(CBall::real).collect();
        approx = refine(&coeffs, &approx, prec);
        let Some(radii) = inclusion_radii(&coeffs, &approx) else { continue };
        let roots = cluster(&approx, &radii);
        if roots.iter().all(|r| r.radius().le(&target)) {
            return Ok(Isolation { roots, bits: prec });
        }
    }
    Err(Error::PrecisionExhausted {
        bits: last_bits,
        context: format!("root isolation of a degree-{degree} polynomial"),
    })
}

/// Isolates the roots of an exact rational polynomial. Repeated roots are
/// split off exactly first, so every isolated factor is squarefree.
pub fn isolate_rational(p: &QPoly, target_bits: u32, opts: &Options) -> Result<Isolation> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut roots = vec![];
    let mut bits = 0;
    for (factor, mult) in p.squarefree_factors() {
        let mut found = vec![];
        let mut rest = factor;
        for r in rest.rational_roots() {
            rest = rest.strip_root(&r).1;
            found.push(rational_root(&r, target_bits));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let iso = isolate_with(|prec| rest.to_balls(prec), target_bits, opts)?;
            bits = bits.max(iso.bits);
            found.extend(iso.roots);
        }
        for r in found {
            for _ in 0..mult {
                roots.push(r.clone());
            }
        }
    }
    Ok(Isolation { roots, bits: bits.max(opts.start_bits) })
}

fn rational_root(r: &BigRational, target_bits: u32) -> CBall {
    CBall::real(Ball::from_rational(r, target_bits + 16))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quadratic_with_reciprocal_roots() {
        // z^2 - 6z + 1: roots 3 +- 2 sqrt 2
        let p = QPoly::from_ints(&[1, -6, 1]);
        let iso = isolate_rational(&p, 100, &Options::default()).unwrap();
        assert_eq!(iso.roots.len(), 2);
        let mut mids: Vec<f64> = iso.roots.iter().map(|r| r.re.mid_f64()).collect();
        mids.sort_by(f64::total_cmp);
        assert!((mids[0] - (3.0 - 8f64.sqrt())).abs() < 1e-15);
        assert!((mids[1] - (3.0 + 8f64.sqrt())).abs() < 1e-14);
        for r in &iso.roots {
            assert!(r.radius().le(&Mag::pow2(-100)));
            assert!(p.eval_cball(r).contains_zero());
        }
    }

    #[test]
    fn repeated_roots_keep_multiplicity() {
        // (z - 1)^2 (z^2 + z + 1)
        let p = QPoly::from_ints(&[-1, 1]).mul(&QPoly::from_ints(&[-1, 1])).mul(&QPoly::from_ints(&[1, 1, 1]));
        let iso = isolate_rational(&p, 80, &Options::default()).unwrap();
        assert_eq!(iso.roots.len(), 4);
        let ones = iso.roots.iter().filter(|r| r.re.contains_rational(&BigRational::one())).count();
        assert_eq!(ones, 2);
    }

    #[test]
    fn ball_coefficients_give_ball_roots() {
        // z^2 - c with c = 2 known only as an interval.
        let iso = isolate_with(
            |prec| vec![Ball::from_rational(&q(-2, 1), prec).neg().neg(), Ball::zero(), Ball::one()],
            60,
            &Options::default(),
        )
        .unwrap();
        for r in &iso.roots {
            let sq = r.sqr();
            assert!(sq.re.contains_rational(&q(-2, 1)) || sq.re.overlaps(&Ball::from_i64(2)));
        }
    }

    #[test]
    fn cubic_from_three_jumps() {
        // 2w^3 + w^2 - w - 3 has one real root near 1.126 and a complex pair.
        let p = QPoly::from_ints(&[-3, -1, 1, 2]);
        let iso = isolate_rational(&p, 120, &Options::default()).unwrap();
        let real: Vec<&CBall> = iso.roots.iter().filter(|r| r.im.contains_zero()).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re.mid_f64() - 1.126_323_55).abs() < 1e-8);
    }
}
