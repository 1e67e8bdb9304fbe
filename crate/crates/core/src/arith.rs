//! Arithmetic shape of the spanning-tree count: `τ(n) = c · n · a(n)²` with
//! `c` fixed by the parities of `n` and `β`.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::CirculantSpec;
use crate::treecount::TauResult;

/// Odd-jump counts and their square-free parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityProfile {
    pub p_odd_s: u64,
    pub q_odd_alpha: u64,
    /// Square-free part of `p_odd_s`; `None` when `p_odd_s = 0`.
    pub r: Option<u64>,
    /// Square-free part of `p_odd_s + q_odd_alpha`; `None` when that is 0.
    pub s_sf: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `n` and `β` odd: `c = β`.
    OddOdd,
    /// `n` even: `c = β r`.
    EvenN,
    /// `n` odd, `β` even: `c = β s`.
    OddNEvenBeta,
}

impl CaseTag {
    pub fn of(n: u64, beta: u64) -> CaseTag {
        match (n % 2, beta % 2) {
            (1, 1) => CaseTag::OddOdd,
            (0, _) => CaseTag::EvenN,
            _ => CaseTag::OddNEvenBeta,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            CaseTag::OddOdd => "n and beta odd: c = beta",
            CaseTag::EvenN => "n even: c = beta * sqfree(p)",
            CaseTag::OddNEvenBeta => "n odd, beta even: c = beta * sqfree(p + q)",
        }
    }
}

/// `τ = c · n · a_n²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub case_tag: CaseTag,
    pub coefficient: u64,
    pub a_n: BigUint,
    /// Square-free part of `τ/n`, the smallest coefficient admitting a
    /// decomposition of this shape.
    pub minimal_coefficient: u64,
}

/// Relation between a published constant `c'` and the case coefficient `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StatedConstant {
    Exact,
    /// `c = c' · k²`: `τ = c' n (k a_n)²` is the same decomposition with the
    /// square moved into the sequence.
    SquareAbsorbed(u64),
    /// `c' = c · k²` and `k | a_n`.
    SquareExtracted(u64),
    /// `τ / (c' n)` is not a perfect square.
    Mismatch,
}

/// The unique square-free `q` with `m = q r²`.
pub fn squarefree_part(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut rest = m;
    let mut out = 1;
    let mut f = 2;
    while f * f <= rest {
        let mut e = 0;
        while rest % f == 0 {
            rest /= f;
            e += 1;
        }
        if e % 2 == 1 {
            out *= f;
        }
        f += 1;
    }
    Ok(out * rest)
}

pub fn parity_profile(spec: &CirculantSpec) -> ParityProfile {
    let p = spec.s_jumps.iter().filter(|s| *s % 2 == 1).count() as u64;
    let q = spec.alpha_jumps.iter().filter(|a| *a % 2 == 1).count() as u64;
    ParityProfile {
        p_odd_s: p,
        q_odd_alpha: q,
        r: squarefree_part(p).ok(),
        s_sf: squarefree_part(p + q).ok(),
    }
}

impl ParityProfile {
    /// Case coefficient for the given parities.
    pub fn coefficient(&self, n: u64, beta: u64) -> Result<(CaseTag, u64)> {
        let tag = CaseTag::of(n, beta);
        let c = match tag {
            CaseTag::OddOdd => beta,
            CaseTag::EvenN => beta * self.r.ok_or(Error::UndefinedSquarefree)?,
            CaseTag::OddNEvenBeta => beta * self.s_sf.ok_or(Error::UndefinedSquarefree)?,
        };
        Ok((tag, c))
    }
}

/// `Some(a)` with `a² = v`.
pub fn exact_sqrt(v: &BigUint) -> Option<BigUint> {
    let a = v.sqrt();
    (&a * &a == *v).then_some(a)
}

/// `Some(q)` with `q · c · n = τ`.
fn quotient(tau: &BigUint, c: u64, n: u64) -> Option<BigUint> {
    let (q, r) = tau.div_rem(&(BigUint::from(c) * BigUint::from(n)));
    r.is_zero().then_some(q)
}

pub fn decompose_tau(spec: &CirculantSpec, tau: &TauResult) -> Result<Decomposition> {
    let (case_tag, coefficient) = parity_profile(spec).coefficient(spec.n, spec.beta)?;
    let not_square = || Error::NotPerfectSquare {
        value: format!("tau = {} for {} is not {coefficient} n a^2", tau.value, spec),
    };
    let q = quotient(&tau.value, coefficient, spec.n).ok_or_else(not_square)?;
    let a_n = exact_sqrt(&q).ok_or_else(not_square)?;
    let minimal_coefficient = squarefree_part(coefficient)?;
    Ok(Decomposition { case_tag, coefficient, a_n, minimal_coefficient })
}

/// Compares a published constant with a decomposition of `τ`.
pub fn compare_stated_constant(d: &Decomposition, stated: u64) -> StatedConstant {
    if stated == 0 {
        return StatedConstant::Mismatch;
    }
    let c = d.coefficient;
    if stated == c {
        return StatedConstant::Exact;
    }
    let square_root_of = |num: u64, den: u64| -> Option<u64> {
        (num % den == 0).then(|| num / den).and_then(|k2| {
            let k = k2.sqrt();
            (k * k == k2).then_some(k)
        })
    };
    if let Some(k) = square_root_of(c, stated) {
        return StatedConstant::SquareAbsorbed(k);
    }
    if let Some(k) = square_root_of(stated, c) {
        if d.a_n.is_multiple_of(&BigUint::from(k)) {
            return StatedConstant::SquareExtracted(k);
        }
    }
    StatedConstant::Mismatch
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub seeds_match: bool,
    /// Index (0-based) of the first term that breaks the recurrence.
    pub first_violation: Option<usize>,
    pub holds: bool,
}

/// Checks `a(i) = Σ_j coeffs[j] · a(i − 1 − j)` for every term after the
/// seeds, and that the sequence starts with `seeds`.
pub fn check_recurrence(values: &[BigInt], coeffs: &[i64], seeds: &[BigInt]) -> RecurrenceReport {
    let seeds_match = values.len() >= seeds.len() && values[..seeds.len()] == *seeds;
    let order = coeffs.len();
    let first_violation = (order..values.len()).find(|&i| {
        let predicted: BigInt = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| BigInt::from(*c) * &values[i - 1 - j])
            .sum();
        predicted != values[i]
    });
    RecurrenceReport { seeds_match, first_violation, holds: seeds_match && first_violation.is_none() }
}

/// `true` when `βn` divides `τ`.
pub fn divisible_by_order(spec: &CirculantSpec, tau: &BigUint) -> bool {
    tau.is_multiple_of(&BigUint::from(spec.m))
}

impl Decomposition {
    pub fn tau(&self, n: u64) -> BigUint {
        BigUint::from(self.coefficient) * BigUint::from(n) * &self.a_n * &self.a_n
    }

    pub fn is_trivial(&self) -> bool {
        self.a_n.is_one()
    }
}
