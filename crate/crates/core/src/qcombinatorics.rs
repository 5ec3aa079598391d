//! q-integers, q-factorials, q-binomials and multidimensional q-factorial
//! ratios
//!
//! ```text
//! Q_{e,f}(q; n) = [e_1.n]_q! ... [e_u.n]_q! / ([f_1.n]_q! ... [f_v.n]_q!)
//! ```
//!
//! Ratios are computed two independent ways: by cancelling `(1 - q^i)`
//! factors and dividing exactly ([`q_ratio`]), and as a product of cyclotomic
//! powers `phi_b^{Delta(n/b)}` ([`q_ratio_cyclotomic`]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::GridRegion;
use crate::intpoly::{cyclotomic, IntPolynomial, PolyError};
use crate::numbers;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("the {0} tuple must contain at least one vector")]
    EmptyTuple(&'static str),
    #[error("vector {vector:?} in the {tuple} tuple has {len} components, expected {dim}")]
    WrongLength {
        tuple: &'static str,
        vector: Vec<u64>,
        len: usize,
        dim: usize,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatioError {
    #[error("Q(q; {n:?}) is not a polynomial: division left remainder {remainder}")]
    NotDivisible { n: Vec<u64>, remainder: IntPolynomial },
    #[error("Q(q; {n:?}) is not a polynomial: phi_{b} has exponent {exponent}")]
    NegativeExponent { n: Vec<u64>, b: u64, exponent: i64 },
    #[error("factorial ratio at {n:?} is not an integer")]
    NotIntegral { n: Vec<u64> },
    #[error("point {n:?} does not have {dim} coordinates")]
    DimensionMismatch { n: Vec<u64>, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatioSpec", into = "RawRatioSpec")]
pub struct RatioSpec {
    dim: usize,
    e: Vec<Vec<u64>>,
    f: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawRatioSpec {
    dim: usize,
    e: Vec<Vec<u64>>,
    f: Vec<Vec<u64>>,
}

impl TryFrom<RawRatioSpec> for RatioSpec {
    type Error = SpecError;
    fn try_from(raw: RawRatioSpec) -> Result<Self, SpecError> {
        RatioSpec::new(raw.dim, raw.e, raw.f)
    }
}

impl From<RatioSpec> for RawRatioSpec {
    fn from(s: RatioSpec) -> Self {
        RawRatioSpec {
            dim: s.dim,
            e: s.e,
            f: s.f,
        }
    }
}

impl RatioSpec {
    pub fn new(dim: usize, e: Vec<Vec<u64>>, f: Vec<Vec<u64>>) -> Result<Self, SpecError> {
        if dim == 0 {
            return Err(SpecError::ZeroDimension);
        }
        for (tuple, vs) in [("e", &e), ("f", &f)] {
            if vs.is_empty() {
                return Err(SpecError::EmptyTuple(tuple));
            }
            if let Some(v) = vs.iter().find(|v| v.len() != dim) {
                return Err(SpecError::WrongLength {
                    tuple,
                    vector: v.clone(),
                    len: v.len(),
                    dim,
                });
            }
        }
        Ok(Self { dim, e, f })
    }

    /// `e = ((2))`, `f = ((1),(1))`: central binomial coefficients.
    pub fn central_binomial() -> Self {
        Self::central_binomial_power(1)
    }

    /// `r` copies of `(2)` over `2r` copies of `(1)`: `binom(2n, n)^r`.
    pub fn central_binomial_power(r: usize) -> Self {
        Self::new(1, vec![vec![2]; r], vec![vec![1]; 2 * r]).expect("valid spec")
    }

    /// `[2n1+n2]! [n1+n2]! / ([n1]!^3 [n2]!^2)`; specializes to the first
    /// Apéry sequence.
    pub fn apery() -> Self {
        Self::new(
            2,
            vec![vec![2, 1], vec![1, 1]],
            vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        )
        .expect("valid spec")
    }

    /// `[2n1+n2]!^2 / ([n1]!^4 [n2]!^2)`; specializes to the second Apéry
    /// sequence.
    pub fn apery_second() -> Self {
        Self::new(
            2,
            vec![vec![2, 1], vec![2, 1]],
            vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]],
        )
        .expect("valid spec")
    }

    /// `[n1+n2]!^r / ([n1]!^r [n2]!^r)`, whose diagonal gives
    /// `sum_k binom(n, k)^r`.
    pub fn binomial_power(r: usize) -> Self {
        let mut f = vec![vec![1, 0]; r];
        f.extend(vec![vec![0, 1]; r]);
        Self::new(2, vec![vec![1, 1]; r], f).expect("valid spec")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn e(&self) -> &[Vec<u64>] {
        &self.e
    }

    pub fn f(&self) -> &[Vec<u64>] {
        &self.f
    }

    /// The vectors of `e` followed by those of `f`.
    pub fn vectors(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.e.iter().chain(self.f.iter())
    }

    /// `|e| - |f|`, componentwise.
    pub fn excess(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for v in &self.e {
            for (o, &c) in out.iter_mut().zip(v) {
                *o += c as i64;
            }
        }
        for v in &self.f {
            for (o, &c) in out.iter_mut().zip(v) {
                *o -= c as i64;
            }
        }
        out
    }

    /// `|e| = |f|`
    pub fn is_balanced(&self) -> bool {
        self.excess().iter().all(|&c| c == 0)
    }

    fn check_point(&self, n: &[u64]) -> Result<(), RatioError> {
        if n.len() != self.dim {
            return Err(RatioError::DimensionMismatch {
                n: n.to_vec(),
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Degree in `q` of `Q(q; n)` (negative when the ratio is not a
    /// polynomial).
    pub fn ratio_degree(&self, n: &[u64]) -> i128 {
        let tri = |m: u64| (m as i128) * (m as i128 - 1) / 2;
        self.e.iter().map(|t| tri(dot(t, n))).sum::<i128>() - self.f.iter().map(|t| tri(dot(t, n))).sum::<i128>()
    }
}

pub fn dot(t: &[u64], n: &[u64]) -> u64 {
    t.iter().zip(n).map(|(a, b)| a * b).sum()
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; zero for `n = 0`.
pub fn q_integer(n: u64) -> IntPolynomial {
    IntPolynomial::from_coeffs(vec![BigInt::from(1); n as usize])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`
pub fn q_factorial(n: u64) -> IntPolynomial {
    let mut acc = IntPolynomial::one();
    for i in 2..=n as usize {
        acc.mul_one_minus_q_pow_assign(i);
        acc.div_one_minus_q_pow_assign(1).expect("1 - q divides 1 - q^i");
    }
    acc
}

/// Gaussian binomial `[n choose k]_q`; zero when `k > n`.
///
/// Built from the product `prod_{i=1}^{k} (1 - q^{n-k+i}) / (1 - q^i)`,
/// whose partial products are themselves q-binomials, so every division is
/// exact and cheap.
pub fn q_binomial(n: u64, k: u64) -> IntPolynomial {
    if k > n {
        return IntPolynomial::zero();
    }
    let k = k.min(n - k);
    let mut acc = IntPolynomial::one();
    for i in 1..=k {
        acc.mul_one_minus_q_pow_assign((n - k + i) as usize);
        acc.div_one_minus_q_pow_assign(i as usize)
            .expect("partial products of q-binomials are polynomials");
    }
    acc
}

/// Multiset of `(1 - q^i)` factors with integer multiplicities.
#[derive(Debug, Default, Clone)]
struct FactorProduct(BTreeMap<u64, i64>);

impl FactorProduct {
    fn add_factorial(&mut self, m: u64, sign: i64) {
        self.add_factorial_range(0, m, sign);
    }

    /// Factors of `[hi]_q! / [lo]_q!`, raised to `sign`.
    fn add_factorial_range(&mut self, lo: u64, hi: u64, sign: i64) {
        for i in lo + 1..=hi {
            *self.0.entry(i).or_insert(0) += sign;
        }
        // each [i]_q carries a 1/(1 - q)
        *self.0.entry(1).or_insert(0) -= sign * (hi - lo) as i64;
    }

    /// `Q(q; n)` as a factor product.
    fn for_ratio(spec: &RatioSpec, n: &[u64]) -> Self {
        let mut fp = Self::default();
        for t in &spec.e {
            fp.add_factorial(dot(t, n), 1);
        }
        for t in &spec.f {
            fp.add_factorial(dot(t, n), -1);
        }
        fp
    }

    /// `Q(q; n + e_axis) / Q(q; n)` as a factor product.
    fn for_step(spec: &RatioSpec, n: &[u64], axis: usize) -> Self {
        let mut fp = Self::default();
        for (vs, sign) in [(&spec.e, 1), (&spec.f, -1)] {
            for t in vs {
                let lo = dot(t, n);
                fp.add_factorial_range(lo, lo + t[axis], sign);
            }
        }
        fp
    }

    /// Multiplies by every numerator factor, then divides by the denominator
    /// factors from the largest degree down.
    fn apply(&self, value: &mut IntPolynomial) -> Result<(), PolyError> {
        for (&i, &c) in &self.0 {
            for _ in 0..c.max(0) {
                value.mul_one_minus_q_pow_assign(i as usize);
            }
        }
        for (&i, &c) in self.0.iter().rev() {
            for _ in 0..(-c).max(0) {
                value.div_one_minus_q_pow_assign(i as usize)?;
            }
        }
        Ok(())
    }
}

fn not_divisible(n: &[u64], err: PolyError) -> RatioError {
    match err {
        PolyError::NotDivisible { remainder } => RatioError::NotDivisible {
            n: n.to_vec(),
            remainder,
        },
        other => unreachable!("(1 - q^i) divisions only fail by remainder: {other}"),
    }
}

/// `Q_{e,f}(q; n)` by exact division. Fails with `NotDivisible` exactly when
/// the ratio is not in `Z[q]`.
pub fn q_ratio(spec: &RatioSpec, n: &[u64]) -> Result<IntPolynomial, RatioError> {
    spec.check_point(n)?;
    let mut value = IntPolynomial::one();
    FactorProduct::for_ratio(spec, n)
        .apply(&mut value)
        .map_err(|e| not_divisible(n, e))?;
    Ok(value)
}

/// Moves `value = Q(q; n)` to `Q(q; n + e_axis)` in place.
fn step_ratio(spec: &RatioSpec, n: &[u64], axis: usize, value: &mut IntPolynomial) -> Result<(), RatioError> {
    FactorProduct::for_step(spec, n, axis).apply(value).map_err(|e| {
        let mut next = n.to_vec();
        next[axis] += 1;
        not_divisible(&next, e)
    })
}

/// Largest `b` with a possibly nonzero exponent in the cyclotomic product:
/// `max_t t.n`. Beyond it every floor `t.n / b` vanishes.
pub fn cyclotomic_bound(spec: &RatioSpec, n: &[u64]) -> u64 {
    spec.vectors().map(|t| dot(t, n)).max().unwrap_or(0)
}

/// `Delta_{e,f}(n / b)` computed with integer floors.
pub fn delta_at_fraction(spec: &RatioSpec, n: &[u64], b: u64) -> i64 {
    let e: i64 = spec.e.iter().map(|t| (dot(t, n) / b) as i64).sum();
    let f: i64 = spec.f.iter().map(|t| (dot(t, n) / b) as i64).sum();
    e - f
}

/// Exponents `(b, Delta(n/b))` for `b = 2 ..= cyclotomic_bound`.
pub fn cyclotomic_exponents(spec: &RatioSpec, n: &[u64]) -> Vec<(u64, i64)> {
    (2..=cyclotomic_bound(spec, n))
        .map(|b| (b, delta_at_fraction(spec, n, b)))
        .collect()
}

/// `Q_{e,f}(q; n)` as `prod_b phi_b(q)^{Delta(n/b)}`.
pub fn q_ratio_cyclotomic(spec: &RatioSpec, n: &[u64]) -> Result<IntPolynomial, RatioError> {
    spec.check_point(n)?;
    let exps = cyclotomic_exponents(spec, n);
    if let Some(&(b, exponent)) = exps.iter().find(|(_, x)| *x < 0) {
        return Err(RatioError::NegativeExponent {
            n: n.to_vec(),
            b,
            exponent,
        });
    }
    let mut acc = IntPolynomial::one();
    for (b, x) in exps {
        if x > 0 {
            let phi = cyclotomic(b);
            for _ in 0..x {
                acc = &acc * &phi;
            }
        }
    }
    Ok(acc)
}

/// `Q_{e,f}(1; n)`, the ordinary factorial ratio, with big-integer factorials.
pub fn ratio_at_one(spec: &RatioSpec, n: &[u64]) -> Result<BigInt, RatioError> {
    spec.check_point(n)?;
    let num: BigInt = spec.e.iter().map(|t| numbers::factorial(dot(t, n))).product();
    let den: BigInt = spec.f.iter().map(|t| numbers::factorial(dot(t, n))).product();
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(RatioError::NotIntegral { n: n.to_vec() });
    }
    Ok(quot)
}

/// Degree above which [`q_ratio_at_one`] skips the polynomial.
pub const DEFAULT_AT_ONE_DEGREE_THRESHOLD: i128 = 50_000;

/// `Q_{e,f}(1; n)`: evaluates the polynomial at `q = 1` when its degree is at
/// most `threshold`, and uses integer factorials otherwise.
pub fn q_ratio_at_one(spec: &RatioSpec, n: &[u64], threshold: i128) -> Result<BigInt, RatioError> {
    if spec.ratio_degree(n) <= threshold {
        q_ratio(spec, n).map(|p| p.eval_at_one())
    } else {
        ratio_at_one(spec, n)
    }
}

/// Calls `visit` with `Q(q; n)` for every `n` in `region`, in lexicographic
/// order, moving between neighbouring points with a handful of `(1 - q^i)`
/// multiplications and exact divisions instead of recomputing from scratch.
pub fn for_each_ratio<F>(spec: &RatioSpec, region: &GridRegion, mut visit: F) -> Result<(), RatioError>
where
    F: FnMut(&[u64], &IntPolynomial),
{
    assert_eq!(region.dim(), spec.dim(), "region and spec dimensions differ");
    let hi = region.upper(0, &[]);
    walk_axis0(spec, region, 0, hi, &mut visit)
}

/// Parallel version of [`for_each_ratio`]: the first coordinate is split into
/// contiguous chunks that are walked independently. Results come back in
/// lexicographic order regardless of scheduling.
pub fn par_map_ratios<R, F>(spec: &RatioSpec, region: &GridRegion, map: F) -> Result<Vec<(Vec<u64>, R)>, RatioError>
where
    R: Send,
    F: Fn(&[u64], &IntPolynomial) -> R + Sync,
{
    assert_eq!(region.dim(), spec.dim(), "region and spec dimensions differ");
    let hi = region.upper(0, &[]);
    let len = hi + 1;
    let chunks = ((rayon::current_num_threads() * 2) as u64).clamp(1, len);
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|c| (c * len / chunks, (c + 1) * len / chunks - 1))
        .collect();
    let parts: Vec<Result<Vec<_>, RatioError>> = bounds
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut out = Vec::new();
            walk_axis0(spec, region, lo, hi, &mut |n: &[u64], v: &IntPolynomial| {
                out.push((n.to_vec(), map(n, v)))
            })?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all)
}

fn walk_axis0<F>(spec: &RatioSpec, region: &GridRegion, lo: u64, hi: u64, visit: &mut F) -> Result<(), RatioError>
where
    F: FnMut(&[u64], &IntPolynomial),
{
    let d = spec.dim();
    let mut point = vec![0u64; d];
    point[0] = lo;
    let mut row_start = q_ratio(spec, &point)?;
    for v in lo..=hi {
        if v > lo {
            step_ratio(spec, &point, 0, &mut row_start)?;
            point[0] = v;
        }
        if d == 1 {
            visit(&point, &row_start);
        } else {
            walk_level(spec, region, &mut point, 1, row_start.clone(), visit)?;
        }
    }
    Ok(())
}

fn walk_level<F>(
    spec: &RatioSpec,
    region: &GridRegion,
    point: &mut Vec<u64>,
    level: usize,
    mut value: IntPolynomial,
    visit: &mut F,
) -> Result<(), RatioError>
where
    F: FnMut(&[u64], &IntPolynomial),
{
    let hi = region.upper(level, &point[..level]);
    for v in 0..=hi {
        if v > 0 {
            step_ratio(spec, point, level, &mut value)?;
            point[level] = v;
        }
        if level + 1 == point.len() {
            visit(point, &value);
        } else {
            walk_level(spec, region, point, level + 1, value.clone(), visit)?;
        }
    }
    point[level] = 0;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// q-binomial through full q-factorials and generic long division.
    fn q_binomial_by_factorials(n: u64, k: u64) -> IntPolynomial {
        let den = &q_factorial(k) * &q_factorial(n - k);
        q_factorial(n).divide_exact(&den).unwrap()
    }

    /// q-Pascal recurrence, independent of any division.
    fn q_pascal_row(n: u64) -> Vec<IntPolynomial> {
        let mut row = vec![IntPolynomial::one()];
        for m in 1..=n {
            let mut next = vec![IntPolynomial::one(); m as usize + 1];
            for k in 1..m as usize {
                next[k] = &row[k - 1] + &row[k].shift(k);
            }
            row = next;
        }
        row
    }

    #[test]
    fn q_integers() {
        assert!(q_integer(0).is_zero());
        assert!(q_integer(1).is_one());
        assert_eq!(q_integer(4), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn q_factorials() {
        assert!(q_factorial(0).is_one());
        assert_eq!(q_factorial(3), p(&[1, 2, 2, 1]));
        assert_eq!(q_factorial(5).eval_at_one(), BigInt::from(120));
    }

    #[test]
    fn q_binomials() {
        for n in 0..8 {
            assert!(q_binomial(n, 0).is_one());
        }
        assert_eq!(q_binomial(2, 1), p(&[1, 1]));
        assert_eq!(q_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(3, 5).is_zero());
    }

    #[test]
    fn q_binomial_routes_agree() {
        for n in 0..=14 {
            let row = q_pascal_row(n);
            for k in 0..=n {
                let fast = q_binomial(n, k);
                assert_eq!(fast, row[k as usize], "pascal ({n},{k})");
                assert_eq!(fast, q_binomial_by_factorials(n, k), "factorials ({n},{k})");
            }
        }
    }

    #[test]
    fn q_binomial_shape() {
        for n in 0..=60u64 {
            for k in 0..=n {
                let b = q_binomial(n, k);
                assert_eq!(b.eval_at_one(), numbers::binomial(n, k));
                if n <= 20 {
                    let deg = (k * (n - k)) as usize;
                    assert_eq!(b.len(), deg + 1);
                    assert!(b.coeffs().iter().all(|c| c > &BigInt::zero()));
                    let rev: Vec<_> = b.coeffs().iter().rev().cloned().collect();
                    assert_eq!(rev, b.coeffs());
                }
            }
        }
    }

    #[test]
    fn ratio_examples() {
        let central = RatioSpec::central_binomial();
        assert_eq!(q_ratio(&central, &[3]).unwrap(), q_binomial(6, 3));
        assert!(q_ratio(&central, &[0]).unwrap().is_one());
        assert!(q_ratio(&RatioSpec::apery(), &[0, 0]).unwrap().is_one());
        let expected = &p(&[1, 2, 2, 1]) * &p(&[1, 1]);
        assert_eq!(q_ratio(&RatioSpec::apery(), &[1, 1]).unwrap(), expected);
    }

    #[test]
    fn cyclotomic_route_examples() {
        let central = RatioSpec::central_binomial();
        assert_eq!(cyclotomic_exponents(&central, &[2]), vec![(2, 0), (3, 1), (4, 1)]);
        assert_eq!(q_ratio_cyclotomic(&central, &[2]).unwrap(), q_binomial(4, 2));
        assert!(q_ratio_cyclotomic(&central, &[0]).unwrap().is_one());
        let apery = RatioSpec::apery();
        assert_eq!(
            q_ratio_cyclotomic(&apery, &[1, 1]).unwrap(),
            q_ratio(&apery, &[1, 1]).unwrap()
        );
    }

    #[test]
    fn failure_modes_agree() {
        let inverse = RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap();
        for n in 1..6u64 {
            assert!(matches!(q_ratio(&inverse, &[n]), Err(RatioError::NotDivisible { .. })));
            assert!(matches!(
                q_ratio_cyclotomic(&inverse, &[n]),
                Err(RatioError::NegativeExponent { .. })
            ));
            assert!(matches!(
                ratio_at_one(&inverse, &[n]),
                Err(RatioError::NotIntegral { .. })
            ));
        }
        assert!(q_ratio(&inverse, &[0]).unwrap().is_one());
    }

    #[test]
    fn at_one_paths_agree() {
        let apery = RatioSpec::apery();
        for n in GridRegion::cube(2, 6).points() {
            let direct = ratio_at_one(&apery, &n).unwrap();
            assert_eq!(q_ratio_at_one(&apery, &n, i128::MAX).unwrap(), direct);
            assert_eq!(q_ratio_at_one(&apery, &n, -1).unwrap(), direct);
        }
    }

    #[test]
    fn walk_matches_direct_computation() {
        let apery = RatioSpec::apery();
        let region = GridRegion::Box(vec![5, 4]);
        let mut seen = Vec::new();
        for_each_ratio(&apery, &region, |n, v| {
            assert_eq!(v, &q_ratio(&apery, n).unwrap(), "at {n:?}");
            seen.push(n.to_vec());
        })
        .unwrap();
        assert_eq!(seen, region.points());

        let par = par_map_ratios(&apery, &GridRegion::Simplex { dim: 2, total: 7 }, |_, v| v.clone()).unwrap();
        for (n, v) in par {
            assert_eq!(v, q_ratio(&apery, &n).unwrap());
        }
    }

    #[test]
    fn walk_reports_non_integrality() {
        let inverse = RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap();
        let err = for_each_ratio(&inverse, &GridRegion::Box(vec![3]), |_, _| {}).unwrap_err();
        assert!(matches!(err, RatioError::NotDivisible { ref n, .. } if n == &vec![1]));
    }

    #[test]
    fn spec_validation() {
        assert_eq!(RatioSpec::new(0, vec![], vec![]), Err(SpecError::ZeroDimension));
        assert!(matches!(
            RatioSpec::new(1, vec![], vec![vec![1]]),
            Err(SpecError::EmptyTuple("e"))
        ));
        assert!(matches!(
            RatioSpec::new(2, vec![vec![1, 1]], vec![vec![1]]),
            Err(SpecError::WrongLength { .. })
        ));
        let json = r#"{"dim":2,"e":[[2,1],[1,1]],"f":[[1,0],[1,0],[1,0],[0,1],[0,1]]}"#;
        let spec: RatioSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, RatioSpec::apery());
        assert_eq!(serde_json::to_string(&spec).unwrap(), json);
        assert!(serde_json::from_str::<RatioSpec>(r#"{"dim":1,"e":[[1,2]],"f":[[1]]}"#).is_err());
    }

    #[test]
    fn excess_and_degree() {
        assert!(RatioSpec::apery().is_balanced());
        let inverse = RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap();
        assert!(inverse.is_balanced());
        let unbalanced = RatioSpec::new(1, vec![vec![3]], vec![vec![1]]).unwrap();
        assert_eq!(unbalanced.excess(), vec![2]);
        assert_eq!(RatioSpec::central_binomial().ratio_degree(&[3]), 9);
    }
}
