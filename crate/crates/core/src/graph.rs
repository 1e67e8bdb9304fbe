//! Circulant graphs `C_{βn}(s_1, …, s_k, α_1 n, …, α_ℓ n)`: parameter
//! validation, Laplacian matrices, exact determinant counting and the
//! closed-form Laplacian spectrum.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::exec::{Exec, Options};
use crate::treecount::{Method, TauResult};

/// A validated member of a circulant family with jumps scaling in `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CirculantSpec {
    pub beta: u64,
    pub s_jumps: Vec<u64>,
    pub alpha_jumps: Vec<u64>,
    pub n: u64,
    /// `gcd(s_1, …, s_k)`.
    pub d: u64,
    /// `gcd(α_1, …, α_ℓ, β)`, equal to `β` when there are no α-jumps.
    pub delta: u64,
    /// Number of vertices `βn`.
    pub m: u64,
}

fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, |a, b| a.gcd(&b))
}

fn to_positive(v: i64) -> Result<u64> {
    if v <= 0 {
        Err(Error::NonPositive(v))
    } else {
        Ok(v as u64)
    }
}

fn positive_increasing(list: &[i64]) -> Result<Vec<u64>> {
    let out = list.iter().map(|&v| to_positive(v)).collect::<Result<Vec<u64>>>()?;
    if out.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotStrictlyIncreasing(out));
    }
    Ok(out)
}

impl CirculantSpec {
    /// Builds a spec with derived fields but without the connectivity and
    /// range checks of [`validate_spec`].
    pub fn unchecked(beta: u64, s_jumps: &[u64], alpha_jumps: &[u64], n: u64) -> CirculantSpec {
        let d = gcd_all(s_jumps.iter().copied());
        let delta = gcd_all(alpha_jumps.iter().copied().chain([beta]));
        CirculantSpec {
            beta,
            s_jumps: s_jumps.to_vec(),
            alpha_jumps: alpha_jumps.to_vec(),
            n,
            d,
            delta,
            m: beta * n,
        }
    }

    pub fn k(&self) -> usize {
        self.s_jumps.len()
    }

    pub fn l(&self) -> usize {
        self.alpha_jumps.len()
    }

    /// `s_1^2 + … + s_k^2`.
    pub fn q(&self) -> u64 {
        self.s_jumps.iter().map(|s| s * s).sum()
    }

    /// Vertex degree `2(k + ℓ)`.
    pub fn degree(&self) -> u64 {
        2 * (self.k() + self.l()) as u64
    }

    /// Jump lengths of the graph: the `s_i` followed by the `α_m n`.
    pub fn offsets(&self) -> Vec<u64> {
        self.s_jumps
            .iter()
            .copied()
            .chain(self.alpha_jumps.iter().map(|a| a * self.n))
            .collect()
    }

    /// Same family at another `n`.
    pub fn with_n(&self, n: u64) -> Result<CirculantSpec> {
        validate_spec(
            self.beta as i64,
            &self.s_jumps.iter().map(|&v| v as i64).collect::<Vec<_>>(),
            &self.alpha_jumps.iter().map(|&v| v as i64).collect::<Vec<_>>(),
            n as i64,
        )
    }

    /// The fixed-jump graph `C_n(s_1, …, s_k)`.
    pub fn fixed_part(&self) -> CirculantSpec {
        CirculantSpec::unchecked(1, &self.s_jumps, &[], self.n)
    }

    /// The isomorphic spec `C_{(β/δ)(δn)}(s…, (α/δ)(δn)…)` with `δ = 1`.
    pub fn delta_reduced(&self) -> CirculantSpec {
        let g = self.delta;
        let alphas: Vec<u64> = self.alpha_jumps.iter().map(|a| a / g).collect();
        CirculantSpec::unchecked(self.beta / g, &self.s_jumps, &alphas, self.n * g)
    }

    /// `C_{βn}(1, 2, n)`-style label.
    pub fn family_label(&self) -> String {
        let jumps: Vec<String> = self
            .s_jumps
            .iter()
            .map(|s| s.to_string())
            .chain(self.alpha_jumps.iter().map(|&a| if a == 1 { "n".into() } else { format!("{a}n") }))
            .collect();
        let order = if self.beta == 1 { "n".to_string() } else { format!("{}n", self.beta) };
        format!("C_{{{order}}}({})", jumps.join(","))
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at n={}", self.family_label(), self.n)
    }
}

/// Validates family parameters and derives `d`, `δ` and `m = βn`.
pub fn validate_spec(beta: i64, s_jumps: &[i64], alpha_jumps: &[i64], n: i64) -> Result<CirculantSpec> {
    if s_jumps.is_empty() {
        return Err(Error::EmptyJumps);
    }
    let beta = to_positive(beta)?;
    let n = to_positive(n)?;
    let s = positive_increasing(s_jumps)?;
    let alpha = positive_increasing(alpha_jumps)?;
    let spec = CirculantSpec::unchecked(beta, &s, &alpha, n);
    let g = spec.d.gcd(&(n * spec.delta));
    if g > 1 {
        return Err(Error::Disconnected { gcd: g });
    }
    let m = spec.m;
    if let Some(&top) = s.last() {
        if top > m / 2 {
            return Err(Error::JumpOutOfRange { jump: top, order: m });
        }
    }
    if let Some(&top) = alpha.last() {
        if top > beta / 2 {
            return Err(Error::JumpOutOfRange { jump: top * n, order: m });
        }
    }
    Ok(spec)
}

/// Dense square matrix of big integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(order: usize) -> IntegerMatrix {
        IntegerMatrix { order, entries: vec![BigInt::zero(); order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.order + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.order + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.order..(r + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.order).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Drops row and column `i`.
    pub fn minor(&self, i: usize) -> IntegerMatrix {
        let n = self.order;
        let mut out = IntegerMatrix::zeros(n - 1);
        for (ro, r) in (0..n).filter(|&r| r != i).enumerate() {
            for (co, c) in (0..n).filter(|&c| c != i).enumerate() {
                out.set(ro, co, self.get(r, c).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free elimination. Rows below the pivot are
    /// updated independently, so `exec` may spread them over threads.
    pub fn determinant(&self, exec: Exec) -> BigInt {
        let n = self.order;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot = &top[k];
            let prev_ref = &prev;
            exec.for_each_mut(rest, |_, row| {
                for j in k + 1..n {
                    let v = &row[j] * &pivot[k] - &row[k] * &pivot[j];
                    row[j] = v / prev_ref;
                }
                row[k] = BigInt::zero();
            });
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

/// Laplacian of the circulant graph; coincident jumps give multiple edges.
pub fn build_laplacian(spec: &CirculantSpec) -> IntegerMatrix {
    let m = spec.m as usize;
    let mut first = vec![BigInt::zero(); m];
    first[0] = BigInt::from(spec.degree());
    for o in spec.offsets() {
        let o = (o % spec.m) as usize;
        first[o] -= 1;
        first[(m - o) % m] -= 1;
    }
    let mut out = IntegerMatrix::zeros(m);
    for r in 0..m {
        for c in 0..m {
            out.set(r, c, first[(c + m - r) % m].clone());
        }
    }
    out
}

/// Spanning trees as the determinant of the reduced Laplacian.
pub fn tau_bruteforce(spec: &CirculantSpec, opts: &Options) -> Result<TauResult> {
    if spec.m > opts.brute_force_cap {
        return Err(Error::TooLarge { order: spec.m, cap: opts.brute_force_cap });
    }
    let det = build_laplacian(spec).minor(0).determinant(opts.exec);
    let value: BigUint = det
        .to_biguint()
        .ok_or_else(|| Error::PreconditionFailed(format!("negative reduced determinant {det}")))?;
    Ok(TauResult { value, method: Method::BruteForce, precision_used: 0, certified: true })
}

/// `λ_j = 2(k+ℓ) − Σ 2cos(2π j s_i/βn) − Σ 2cos(2π j α_m/β)`, kept both as
/// its angles and as an enclosure.
#[derive(Clone, Debug)]
pub struct Eigenvalue {
    pub j: u64,
    pub degree: u64,
    /// Each `(p, q)` contributes `−2cos(2π p/q)`.
    pub angles: Vec<(u64, u64)>,
    pub value: Ball,
}

impl Eigenvalue {
    fn new(spec: &CirculantSpec, j: u64, prec: u32) -> Eigenvalue {
        let mut angles: Vec<(u64, u64)> = spec.s_jumps.iter().map(|&s| ((j * s) % spec.m, spec.m)).collect();
        angles.extend(spec.alpha_jumps.iter().map(|&a| ((j * a) % spec.beta, spec.beta)));
        let mut e = Eigenvalue { j, degree: spec.degree(), angles, value: Ball::zero() };
        e.value = e.evaluate(prec);
        e
    }

    /// All cosines equal one exactly.
    pub fn is_zero(&self) -> bool {
        self.angles.iter().all(|&(p, _)| p == 0)
    }

    /// Recomputes the enclosure at another precision.
    pub fn evaluate(&self, prec: u32) -> Ball {
        if self.is_zero() {
            return Ball::zero();
        }
        self.angles.iter().fold(Ball::from_i64(self.degree as i64).with_prec(prec), |acc, &(p, q)| {
            acc.sub(&Ball::cos_pi_rational(&BigInt::from(2 * p), &BigInt::from(q), prec).mul_2exp(1))
        })
    }
}

#[derive(Clone, Debug)]
pub struct EigenvalueList {
    pub values: Vec<Eigenvalue>,
    pub precision: u32,
}

impl EigenvalueList {
    pub fn zero_multiplicity(&self) -> usize {
        self.values.iter().filter(|e| e.is_zero()).count()
    }
}

/// Closed-form Laplacian spectrum at `precision` bits.
pub fn laplacian_eigenvalues(spec: &CirculantSpec, precision: u32, exec: Exec) -> EigenvalueList {
    let values = exec.map_range(0, spec.m, |j| Eigenvalue::new(spec, j, precision));
    EigenvalueList { values, precision }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn spec(beta: i64, s: &[i64], a: &[i64], n: i64) -> CirculantSpec {
        validate_spec(beta, s, a, n).unwrap()
    }

    fn first_row(sp: &CirculantSpec) -> Vec<i64> {
        build_laplacian(sp).row(0).iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn validation_examples() {
        let s = spec(2, &[1], &[1], 5);
        assert_eq!((s.d, s.delta, s.m), (1, 1, 10));
        assert_eq!(validate_spec(1, &[2, 4], &[], 6), Err(Error::Disconnected { gcd: 2 }));
        let s = spec(2, &[1, 2, 3], &[1], 4);
        assert_eq!((s.m, s.k(), s.l()), (8, 3, 1));
        assert_eq!(validate_spec(1, &[], &[], 6), Err(Error::EmptyJumps));
        assert_eq!(validate_spec(1, &[1, 5], &[], 6), Err(Error::JumpOutOfRange { jump: 5, order: 6 }));
        assert_eq!(validate_spec(3, &[1], &[2], 4), Err(Error::JumpOutOfRange { jump: 8, order: 12 }));
        assert!(matches!(validate_spec(1, &[2, 1], &[], 6), Err(Error::NotStrictlyIncreasing(_))));
        assert_eq!(validate_spec(1, &[1], &[], 0), Err(Error::NonPositive(0)));
    }

    #[test]
    fn laplacian_rows() {
        assert_eq!(first_row(&spec(1, &[1], &[], 3)), vec![2, -1, -1]);
        assert_eq!(first_row(&spec(1, &[1, 2], &[], 4)), vec![4, -1, -2, -1]);
        assert_eq!(first_row(&spec(3, &[1], &[1], 1)), vec![4, -2, -2]);
    }

    #[test]
    fn brute_force_counts() {
        let o = Options::default();
        let t = |b, s: &[i64], a: &[i64], n| tau_bruteforce(&spec(b, s, a, n), &o).unwrap().value;
        assert_eq!(t(1, &[1], &[], 5), BigUint::from(5u32));
        assert_eq!(t(1, &[1, 2], &[], 4), BigUint::from(36u32));
        assert_eq!(t(3, &[1], &[1], 1), BigUint::from(12u32));
        assert_eq!(t(2, &[1], &[1], 3), BigUint::from(300u32));
        let capped = Options { brute_force_cap: 8, ..o };
        assert_eq!(
            tau_bruteforce(&spec(1, &[1], &[], 9), &capped),
            Err(Error::TooLarge { order: 9, cap: 8 })
        );
    }

    #[test]
    fn sequential_and_parallel_determinants_agree() {
        let sp = spec(4, &[1, 3], &[1, 2], 5);
        let minor = build_laplacian(&sp).minor(0);
        assert_eq!(minor.determinant(Exec::Sequential), minor.determinant(Exec::Parallel));
    }

    #[test]
    fn eigenvalue_examples() {
        let ev = laplacian_eigenvalues(&spec(1, &[1, 2], &[], 4), 128, Exec::default());
        let expect = [0, 6, 4, 6];
        for (e, x) in ev.values.iter().zip(expect) {
            assert!(e.value.contains_rational(&BigRational::from_integer(x.into())));
        }
        let ev = laplacian_eigenvalues(&spec(2, &[1], &[1], 3), 128, Exec::default());
        let expect = [0, 5, 3, 8, 3, 5];
        for (e, x) in ev.values.iter().zip(expect) {
            assert!(e.value.contains_rational(&BigRational::from_integer(x.into())));
        }
        assert!(ev.values[0].value.is_exact_zero());
    }

    #[test]
    fn zero_eigenvalue_multiplicity_tracks_connectivity() {
        let cases: [(u64, &[u64], &[u64], u64); 4] =
            [(1, &[2, 4], &[], 6), (2, &[2], &[1], 2), (2, &[2], &[1], 3), (4, &[2], &[2], 3)];
        for (b, s, a, n) in cases {
            let sp = CirculantSpec::unchecked(b, s, a, n);
            let connected = sp.d.gcd(&(sp.n * sp.delta)) == 1;
            let ev = laplacian_eigenvalues(&sp, 64, Exec::Sequential);
            assert_eq!(ev.zero_multiplicity() == 1, connected, "{sp}");
            let as_i64 = |v: &[u64]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
            let verdict = validate_spec(b as i64, &as_i64(s), &as_i64(a), n as i64);
            assert_eq!(matches!(verdict, Err(Error::Disconnected { .. })), !connected, "{sp}");
        }
    }

    proptest! {
        #[test]
        fn laplacian_is_circulant_with_zero_row_sums(beta in 1i64..5, n in 2i64..7, s2 in 2i64..4, with_alpha in any::<bool>()) {
            let alpha: Vec<i64> = if with_alpha && beta >= 2 { vec![1] } else { vec![] };
            let Ok(sp) = validate_spec(beta, &[1, s2], &alpha, n) else { return Ok(()) };
            let l = build_laplacian(&sp);
            let m = sp.m as usize;
            prop_assert!(l.is_symmetric());
            for r in 0..m {
                let sum: BigInt = l.row(r).iter().sum();
                prop_assert!(sum.is_zero());
                for c in 0..m {
                    prop_assert_eq!(l.get(r, c), l.get(0, (c + m - r) % m));
                    if r != c {
                        prop_assert!(!l.get(r, c).is_positive());
                    }
                }
                prop_assert_eq!(l.get(r, r), &BigInt::from(sp.degree()));
            }
        }

        #[test]
        fn eigenvalues_are_symmetric(beta in 1i64..5, n in 2i64..7) {
            let alpha: Vec<i64> = if beta >= 2 { vec![1] } else { vec![] };
            let Ok(sp) = validate_spec(beta, &[1, 2], &alpha, n) else { return Ok(()) };
            let ev = laplacian_eigenvalues(&sp, 96, Exec::Sequential);
            let m = sp.m as usize;
            for j in 1..m {
                prop_assert!(ev.values[j].value.overlaps(&ev.values[m - j].value));
                prop_assert!(ev.values[j].value.is_positive());
            }
        }
    }
}
