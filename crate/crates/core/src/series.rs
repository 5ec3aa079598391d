//! Truncated multivariate power series with coefficients in `Z[q]`.
//!
//! A series stores its coefficients sparsely together with the downward
//! closed region on which they are known. Absent exponents inside the region
//! are zero; nothing is known outside it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::congruence::{CongruenceError, CongruenceFailure, CongruenceReport, SweepRanges};
use crate::grid::GridRegion;
use crate::intpoly::{cyclotomic, IntPolynomial};
use crate::landau::check_landau;
use crate::numbers;
use crate::qcombinatorics::{dot, par_map_ratios, RatioSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("the series is known on {known:?}, which does not determine {requested}")]
    InsufficientTruncation { known: GridRegion, requested: String },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("expected a series in {expected} variables, got {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("the constant term must be 1, found {0}")]
    ConstantTerm(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coefficient at {0:?} depends on q")]
    NotInteger(Vec<u64>),
    #[error("specialization exponents m must not all vanish")]
    ZeroSpecialization,
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// One entry of the JSON dump format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub exponents: Vec<u64>,
    pub coeff: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    region: GridRegion,
    coeffs: BTreeMap<Vec<u64>, IntPolynomial>,
}

impl TruncatedSeries {
    /// The zero series known on `region`.
    pub fn zero(region: GridRegion) -> Self {
        Self {
            region,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series `1` known on `region`.
    pub fn one(region: GridRegion) -> Self {
        let mut s = Self::zero(region);
        let origin = vec![0; s.num_vars()];
        s.set(origin, IntPolynomial::one());
        s
    }

    /// One-variable series `sum_n coeffs[n] x^n`, known up to `coeffs.len() - 1`.
    pub fn univariate(coeffs: Vec<IntPolynomial>) -> Self {
        assert!(!coeffs.is_empty(), "a univariate series needs at least one coefficient");
        let mut s = Self::zero(GridRegion::Box(vec![coeffs.len() as u64 - 1]));
        for (n, c) in coeffs.into_iter().enumerate() {
            s.set(vec![n as u64], c);
        }
        s
    }

    pub fn univariate_integers(coeffs: &[BigInt]) -> Self {
        Self::univariate(coeffs.iter().cloned().map(IntPolynomial::constant).collect())
    }

    pub fn from_entries(region: GridRegion, entries: Vec<SeriesEntry>) -> Result<Self, SeriesError> {
        let mut s = Self::zero(region);
        for entry in entries {
            if !s.region.contains(&entry.exponents) {
                return Err(SeriesError::InsufficientTruncation {
                    known: s.region.clone(),
                    requested: format!("{:?}", entry.exponents),
                });
            }
            s.set(entry.exponents, entry.coeff);
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.region.dim()
    }

    pub fn region(&self) -> &GridRegion {
        &self.region
    }

    /// Coefficient at `n`, or `None` if `n` is outside the known region.
    pub fn coeff(&self, n: &[u64]) -> Option<IntPolynomial> {
        self.region
            .contains(n)
            .then(|| self.coeffs.get(n).cloned().unwrap_or_else(IntPolynomial::zero))
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &IntPolynomial)> {
        self.coeffs.iter()
    }

    pub fn set(&mut self, n: Vec<u64>, c: IntPolynomial) {
        assert!(self.region.contains(&n), "exponent {n:?} outside {:?}", self.region);
        if c.is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    /// Coefficients `0..=order` of a one-variable series.
    pub fn univariate_coeffs(&self, order: u64) -> Result<Vec<IntPolynomial>, SeriesError> {
        if self.num_vars() != 1 {
            return Err(SeriesError::WrongVariableCount {
                expected: 1,
                got: self.num_vars(),
            });
        }
        (0..=order)
            .map(|n| {
                self.coeff(&[n]).ok_or_else(|| SeriesError::InsufficientTruncation {
                    known: self.region.clone(),
                    requested: format!("x^{order}"),
                })
            })
            .collect()
    }

    /// Every coefficient evaluated at `q = 1`.
    pub fn at_one(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(n, c)| (n.clone(), IntPolynomial::constant(c.eval_at_one())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self {
            region: self.region.clone(),
            coeffs,
        }
    }

    /// Integer coefficients, if no coefficient depends on `q`.
    pub fn integer_coeffs(&self) -> Result<BTreeMap<Vec<u64>, BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .map(|(n, c)| {
                if c.len() > 1 {
                    return Err(SeriesError::NotInteger(n.clone()));
                }
                Ok((n.clone(), c.coeff(0)))
            })
            .collect()
    }

    pub fn to_entries(&self) -> Vec<SeriesEntry> {
        self.coeffs
            .iter()
            .map(|(n, c)| SeriesEntry {
                exponents: n.clone(),
                coeff: c.clone(),
            })
            .collect()
    }
}

/// `F_{e,f}(q; x) = sum_n Q_{e,f}(q; n) x^n` on `region`.
pub fn build_f(spec: &RatioSpec, region: &GridRegion) -> Result<TruncatedSeries, SeriesError> {
    if region.dim() != spec.dim() {
        return Err(SeriesError::WrongVariableCount {
            expected: spec.dim(),
            got: region.dim(),
        });
    }
    let report = check_landau(spec).map_err(CongruenceError::from)?;
    if !report.integrality {
        return Err(SeriesError::HypothesisViolated(format!(
            "Delta takes the value {} < 0",
            report.min_value_overall
        )));
    }
    let values = par_map_ratios(spec, region, |_, v| v.clone()).map_err(CongruenceError::from)?;
    let mut s = TruncatedSeries::zero(region.clone());
    for (n, v) in values {
        s.set(n, v);
    }
    Ok(s)
}

/// Whether `region` contains every `n` with `m.n <= order`, for positive `m`.
fn covers(region: &GridRegion, m: &[u64], order: u64) -> bool {
    match region {
        GridRegion::Box(caps) => m.iter().zip(caps).all(|(&mj, &cap)| order / mj <= cap),
        GridRegion::Simplex { total, .. } => order / m.iter().min().copied().unwrap_or(1) <= *total,
    }
}

/// `s(q; q^{t_1} x^{m_1}, ..., q^{t_d} x^{m_d})` up to `x^order`.
///
/// The source region must contain every `n` with `m.n <= order`, which
/// requires every `m_j` to be positive.
pub fn specialize(s: &TruncatedSeries, t: &[u64], m: &[u64], order: u64) -> Result<TruncatedSeries, SeriesError> {
    let d = s.num_vars();
    for v in [t, m] {
        if v.len() != d {
            return Err(SeriesError::WrongVariableCount {
                expected: d,
                got: v.len(),
            });
        }
    }
    if m.iter().all(|&c| c == 0) {
        return Err(SeriesError::ZeroSpecialization);
    }
    if m.contains(&0) || !covers(&s.region, m, order) {
        return Err(SeriesError::InsufficientTruncation {
            known: s.region.clone(),
            requested: format!("x^{order} under m = {m:?}"),
        });
    }
    let mut out = vec![IntPolynomial::zero(); order as usize + 1];
    for (n, c) in s.terms() {
        let index = dot(m, n);
        if index <= order {
            out[index as usize] += &c.shift(dot(t, n) as usize);
        }
    }
    Ok(TruncatedSeries::univariate(out))
}

/// Residues `B_0, ..., B_{b-1}` of the cofactor `B(q; x) = sum_m B_m x^m`,
/// together with the sweep that checks `fq = B(q; x) g(x^b) mod phi_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cofactor {
    pub b: u64,
    pub cofactor: Vec<IntPolynomial>,
    pub report: CongruenceReport,
}

/// Determines `B_m = [x^m] fq mod phi_b` for `m < b`, then checks
/// `[x^{m + n b}] fq = B_m g[n] mod phi_b` for every `m + n b <= order`.
pub fn extract_cofactor(fq: &TruncatedSeries, g: &[BigInt], b: u64, order: u64) -> Result<Cofactor, SeriesError> {
    assert!(b >= 1, "b must be positive");
    let f = fq.univariate_coeffs(order)?;
    match g.first() {
        Some(c) if c.is_one() => {}
        Some(c) => return Err(SeriesError::ConstantTerm(c.to_string())),
        None => return Err(SeriesError::ConstantTerm("nothing".into())),
    }
    if (g.len() as u64) <= order / b {
        return Err(SeriesError::InsufficientTruncation {
            known: GridRegion::Box(vec![g.len() as u64 - 1]),
            requested: format!("g up to x^{}", order / b),
        });
    }
    let phi = cyclotomic(b);
    let cofactor: Vec<IntPolynomial> = (0..b.min(order + 1)).map(|m| f[m as usize].rem_cyclotomic(b)).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (m, bm) in cofactor.iter().enumerate() {
        let m = m as u64;
        for n in 0..=(order - m) / b {
            checked += 1;
            let lhs = f[(m + n * b) as usize].rem_cyclotomic(b);
            let rhs = bm.scale(&g[n as usize]).rem_monic(&phi).expect("phi_b is monic");
            if lhs != rhs {
                failures.push(CongruenceFailure {
                    b,
                    a: vec![m],
                    n: vec![n],
                    lhs_residue: lhs,
                    rhs_residue: rhs,
                });
            }
        }
    }
    failures.sort_by(|x, y| (x.b, &x.a, &x.n).cmp(&(y.b, &y.a, &y.n)));
    Ok(Cofactor {
        b,
        cofactor,
        report: CongruenceReport {
            subject: "one-variable series against g(x^b)".into(),
            statement: "[x^(m + n b)] f(q; x) = B_m(q) g_n mod phi_b(q)".into(),
            spec: None,
            ranges: SweepRanges {
                moduli: vec![b],
                n_box: None,
                index_max: Some(order),
            },
            checked,
            failures,
        },
    })
}

/// [`extract_cofactor`] for every `b` in `1..=b_max`: finite evidence that
/// `fq` is a q-deformation of `g`.
pub fn verify_deformation(
    fq: &TruncatedSeries,
    g: &[BigInt],
    b_max: u64,
    order: u64,
) -> Result<Vec<Cofactor>, SeriesError> {
    (1..=b_max).map(|b| extract_cofactor(fq, g, b, order)).collect()
}

/// Outcome of the finite check `g(x) = A(x) g(x^{p^k}) mod p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LucasVerdict {
    pub p: u64,
    pub k: u32,
    pub holds: bool,
    /// The region on which the congruence was verified.
    pub verified_on: GridRegion,
    /// Nonzero coefficients of `A` mod `p`, with `deg_{x_i} A <= p^k - 1`.
    pub a: Vec<(Vec<u64>, u64)>,
    /// First exponent (lexicographically) where the congruence fails.
    pub witness: Option<Vec<u64>>,
    pub failures: usize,
}

/// Checks `g(x) = A(x) g(x^P) mod p` with `P = p^k` on the region of `g`.
/// Since `g(0) = 1`, `A` is forced: its coefficient at `a` (with every
/// `a_i < P`) is `[x^a] g mod p`, and the congruence reads
/// `[x^{a + n P}] g = [x^a] g [x^n] g mod p`.
pub fn verify_definition_ld(g: &TruncatedSeries, p: u64, k: u32) -> Result<LucasVerdict, SeriesError> {
    if !numbers::is_prime(p) {
        return Err(SeriesError::NotPrime(p));
    }
    let coeffs = g.integer_coeffs()?;
    let d = g.num_vars();
    let c = |n: &[u64]| coeffs.get(n).cloned().unwrap_or_else(BigInt::zero);
    let constant = c(&vec![0; d]);
    if !constant.is_one() {
        return Err(SeriesError::ConstantTerm(constant.to_string()));
    }
    let big_p = p.pow(k);
    let modulus = BigInt::from(p);
    let mut a = Vec::new();
    let mut failures = 0;
    let mut witness = None;
    for big in g.region().points() {
        let low: Vec<u64> = big.iter().map(|x| x % big_p).collect();
        let high: Vec<u64> = big.iter().map(|x| x / big_p).collect();
        let lhs = c(&big).mod_floor(&modulus);
        if high.iter().all(|&x| x == 0) {
            if !lhs.is_zero() {
                a.push((low, lhs.try_into().expect("residue below p")));
            }
            continue;
        }
        let rhs = (c(&low) * c(&high)).mod_floor(&modulus);
        if lhs != rhs {
            failures += 1;
            witness.get_or_insert(big);
        }
    }
    Ok(LucasVerdict {
        p,
        k,
        holds: failures == 0,
        verified_on: g.region().clone(),
        a,
        witness,
        failures,
    })
}

/// `sum_n binom(2n, n)^r x^n` up to `x^order`.
pub fn central_binomial_series(r: u32, order: u64) -> TruncatedSeries {
    TruncatedSeries::univariate_integers(&central_binomial_powers(r, order))
}

pub fn central_binomial_powers(r: u32, order: u64) -> Vec<BigInt> {
    (0..=order).map(|n| numbers::binomial(2 * n, n).pow(r)).collect()
}

/// `sum_n n! x^n` up to `x^order`.
pub fn factorial_series(order: u64) -> TruncatedSeries {
    TruncatedSeries::univariate_integers(&(0..=order).map(numbers::factorial).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{apery_at_one, apery_polynomials, AperyFamily};
    use crate::qcombinatorics::{q_binomial, q_ratio};

    #[test]
    fn build_examples() {
        let f = build_f(&RatioSpec::central_binomial(), &GridRegion::Box(vec![5])).unwrap();
        assert_eq!(f.coeff(&[2]).unwrap(), q_binomial(4, 2));
        assert!(f.coeff(&[0]).unwrap().is_one());
        assert_eq!(f.coeff(&[6]), None);
        let apery = RatioSpec::apery();
        let f = build_f(&apery, &GridRegion::cube(2, 3)).unwrap();
        assert_eq!(f.coeff(&[1, 1]).unwrap(), q_ratio(&apery, &[1, 1]).unwrap());
        let inverse = RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap();
        assert!(matches!(
            build_f(&inverse, &GridRegion::Box(vec![3])),
            Err(SeriesError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn apery_specialization() {
        let f = build_f(&RatioSpec::apery(), &GridRegion::Simplex { dim: 2, total: 12 }).unwrap();
        for t in 0..3 {
            let s = specialize(&f, &[t, 0], &[1, 1], 12).unwrap();
            let expected = apery_polynomials(AperyFamily::A, t, 12);
            assert_eq!(s.univariate_coeffs(12).unwrap(), expected);
        }
        let at_one = specialize(&f.at_one(), &[0, 0], &[1, 1], 12).unwrap();
        let ints: Vec<BigInt> = at_one
            .univariate_coeffs(12)
            .unwrap()
            .iter()
            .map(|c| c.coeff(0))
            .collect();
        assert_eq!(ints, apery_at_one(AperyFamily::A, 12));
    }

    #[test]
    fn binomial_power_sums() {
        for r in 1..=3 {
            let f = build_f(&RatioSpec::binomial_power(r), &GridRegion::Simplex { dim: 2, total: 8 }).unwrap();
            let s = specialize(&f, &[0, 0], &[1, 1], 8).unwrap();
            for n in 0..=8u64 {
                let mut expected = IntPolynomial::zero();
                for k in 0..=n {
                    expected += &q_binomial(n, k).pow(r as u32);
                }
                assert_eq!(s.coeff(&[n]).unwrap(), expected);
            }
        }
    }

    #[test]
    fn specialization_truncation() {
        let one = TruncatedSeries::one(GridRegion::cube(2, 4));
        let s = specialize(&one, &[3, 1], &[1, 2], 4).unwrap();
        assert_eq!(s.univariate_coeffs(4).unwrap()[0], IntPolynomial::one());
        assert!(s.terms().count() == 1);
        assert!(matches!(
            specialize(&one, &[0, 0], &[1, 1], 5),
            Err(SeriesError::InsufficientTruncation { .. })
        ));
        assert!(matches!(
            specialize(&one, &[0, 0], &[1, 0], 2),
            Err(SeriesError::InsufficientTruncation { .. })
        ));
        assert_eq!(
            specialize(&one, &[0, 0], &[0, 0], 2),
            Err(SeriesError::ZeroSpecialization)
        );
        let simplex = TruncatedSeries::one(GridRegion::Simplex { dim: 2, total: 6 });
        assert!(specialize(&simplex, &[0, 0], &[2, 1], 6).is_ok());
        assert!(specialize(&simplex, &[0, 0], &[2, 1], 7).is_err());
    }

    #[test]
    fn truncation_is_monotone() {
        let spec = RatioSpec::apery();
        let small = build_f(&spec, &GridRegion::cube(2, 3)).unwrap();
        let large = build_f(&spec, &GridRegion::cube(2, 6)).unwrap();
        for (n, c) in small.terms() {
            assert_eq!(large.coeff(n).as_ref(), Some(c));
        }
    }

    #[test]
    fn central_binomial_cofactors() {
        for r in 1..=3u32 {
            let f = build_f(
                &RatioSpec::central_binomial_power(r as usize),
                &GridRegion::Box(vec![20]),
            )
            .unwrap();
            let g = central_binomial_powers(r, 20);
            let result = extract_cofactor(&f, &g, 2, 20).unwrap();
            assert!(result.report.passed());
            assert_eq!(result.cofactor.len(), 2);
        }
    }

    #[test]
    fn cofactor_at_b_one_is_the_value_at_one() {
        let f = build_f(&RatioSpec::central_binomial(), &GridRegion::Box(vec![6])).unwrap();
        let g = central_binomial_powers(1, 6);
        let result = extract_cofactor(&f, &g, 1, 6).unwrap();
        assert!(result.report.passed());
        assert_eq!(result.cofactor, vec![IntPolynomial::one()]);
    }

    #[test]
    fn apery_cofactor() {
        let f = build_f(&RatioSpec::apery(), &GridRegion::Simplex { dim: 2, total: 30 }).unwrap();
        let fq = specialize(&f, &[1, 0], &[1, 1], 30).unwrap();
        let g = apery_at_one(AperyFamily::A, 30);
        let result = extract_cofactor(&fq, &g, 3, 30).unwrap();
        assert!(result.report.passed());
        assert!(result.cofactor.len() <= 3);
    }

    #[test]
    fn cofactor_failures_are_data() {
        let fq = TruncatedSeries::univariate(vec![IntPolynomial::one(), IntPolynomial::one(), IntPolynomial::one()]);
        let g = vec![BigInt::one(), BigInt::from(2)];
        let result = extract_cofactor(&fq, &g, 2, 2).unwrap();
        assert_eq!(result.report.failures.len(), 1);
        assert_eq!(result.report.failures[0].n, vec![1]);
        assert!(matches!(
            extract_cofactor(&fq, &g, 1, 2),
            Err(SeriesError::InsufficientTruncation { .. })
        ));
        assert!(matches!(
            extract_cofactor(&fq, &g, 2, 3),
            Err(SeriesError::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn lucas_property() {
        let g = central_binomial_series(1, 30);
        let verdict = verify_definition_ld(&g, 3, 1).unwrap();
        assert!(verdict.holds);
        // A = 1 + 2x + 6x^2 mod 3 = 1 + 2x
        assert_eq!(verdict.a, vec![(vec![0], 1), (vec![1], 2)]);

        let constant = TruncatedSeries::one(GridRegion::Box(vec![10]));
        let verdict = verify_definition_ld(&constant, 2, 1).unwrap();
        assert!(verdict.holds);
        assert_eq!(verdict.a, vec![(vec![0], 1)]);

        let verdict = verify_definition_ld(&factorial_series(16), 2, 1).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness, Some(vec![2]));

        assert_eq!(verify_definition_ld(&g, 4, 1), Err(SeriesError::NotPrime(4)));
        assert!(
            verify_definition_ld(&central_binomial_series(2, 40), 5, 2)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn multivariate_lucas_property() {
        let f = build_f(&RatioSpec::apery(), &GridRegion::cube(2, 12)).unwrap().at_one();
        for p in [2, 3, 5] {
            assert!(verify_definition_ld(&f, p, 1).unwrap().holds, "p = {p}");
        }
    }

    #[test]
    fn dump_round_trip() {
        let f = build_f(&RatioSpec::apery(), &GridRegion::cube(2, 2)).unwrap();
        let json = serde_json::to_string(&f.to_entries()).unwrap();
        assert!(json.starts_with(r#"[{"exponents":[0,0],"coeff":["1"]}"#));
        let entries: Vec<SeriesEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(
            TruncatedSeries::from_entries(GridRegion::cube(2, 2), entries).unwrap(),
            f
        );
    }
}
