//! Finite verification of Lucas-type congruences modulo cyclotomic
//! polynomials.
//!
//! Sweeps never stop at the first failure: every mismatching triple is
//! reported with both residues, sorted by `(b, a, n)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::GridRegion;
use crate::intpoly::{cyclotomic, IntPolynomial};
use crate::landau::{check_landau, LandauError};
use crate::numbers;
use crate::qcombinatorics::{
    par_map_ratios, q_binomial, q_ratio_at_one, RatioError, RatioSpec, DEFAULT_AT_ONE_DEGREE_THRESHOLD,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("n_box has {got} coordinates, the spec has dimension {dim}")]
    DimensionMismatch { got: usize, dim: usize },
    #[error(transparent)]
    Landau(#[from] LandauError),
    #[error(transparent)]
    Ratio(#[from] RatioError),
}

/// `a` and `b` agree modulo `phi_m`.
pub fn congruent_mod_cyclotomic(a: &IntPolynomial, b: &IntPolynomial, m: u64) -> bool {
    (a - b).rem_cyclotomic(m).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFailure {
    pub b: u64,
    pub a: Vec<u64>,
    pub n: Vec<u64>,
    pub lhs_residue: IntPolynomial,
    pub rhs_residue: IntPolynomial,
}

/// What a sweep covered: the moduli `b` (or primes `p`), every residue
/// vector `a` in `{0..b-1}^d`, and quotients bounded either componentwise by
/// `n_box` or through the index `a + n b <= index_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRanges {
    pub moduli: Vec<u64>,
    pub n_box: Option<Vec<u64>>,
    pub index_max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub subject: String,
    pub statement: String,
    pub spec: Option<RatioSpec>,
    pub ranges: SweepRanges,
    pub checked: u64,
    pub failures: Vec<CongruenceFailure>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_hypotheses(spec: &RatioSpec, need_criterion_d: bool) -> Result<(), CongruenceError> {
    if !spec.is_balanced() {
        return Err(CongruenceError::HypothesisViolated(format!(
            "|e| - |f| = {:?} is not zero",
            spec.excess()
        )));
    }
    let report = check_landau(spec)?;
    if !report.integrality {
        return Err(CongruenceError::HypothesisViolated(format!(
            "Delta takes the value {} < 0",
            report.min_value_overall
        )));
    }
    if need_criterion_d && !report.criterion_d {
        return Err(CongruenceError::HypothesisViolated(format!(
            "Delta takes the value {} < 1 on D",
            report.min_value_on_d.unwrap_or_default()
        )));
    }
    Ok(())
}

fn check_box(spec: &RatioSpec, n_box: &[u64]) -> Result<(), CongruenceError> {
    if n_box.len() != spec.dim() {
        return Err(CongruenceError::DimensionMismatch {
            got: n_box.len(),
            dim: spec.dim(),
        });
    }
    Ok(())
}

fn quotient_fits(big: &[u64], b: u64, n_box: &[u64]) -> bool {
    big.iter().zip(n_box).all(|(&x, &cap)| x / b <= cap)
}

/// `Q(q; N) mod phi_b` for every `N` with `N div b <= n_box` and every `b` in
/// `moduli`, keyed by `(b, N)`.
fn residue_table(
    spec: &RatioSpec,
    moduli: &[u64],
    n_box: &[u64],
) -> Result<HashMap<(u64, Vec<u64>), IntPolynomial>, CongruenceError> {
    let b_top = moduli.iter().copied().max().unwrap_or(1);
    let caps: Vec<u64> = n_box.iter().map(|&c| b_top * (c + 1) - 1).collect();
    let rows = par_map_ratios(spec, &GridRegion::Box(caps), |big, value| {
        moduli
            .iter()
            .filter(|&&b| quotient_fits(big, b, n_box))
            .map(|&b| (b, value.rem_cyclotomic(b)))
            .collect::<Vec<_>>()
    })?;
    let mut table = HashMap::new();
    for (big, residues) in rows {
        for (b, r) in residues {
            table.insert((b, big.clone()), r);
        }
    }
    Ok(table)
}

fn values_at_one(spec: &RatioSpec, n_box: &[u64]) -> Result<HashMap<Vec<u64>, BigInt>, CongruenceError> {
    GridRegion::Box(n_box.to_vec())
        .points()
        .into_par_iter()
        .map(|n| {
            let v = q_ratio_at_one(spec, &n, DEFAULT_AT_ONE_DEGREE_THRESHOLD)?;
            Ok((n, v))
        })
        .collect()
}

fn combine(a: &[u64], n: &[u64], b: u64) -> Vec<u64> {
    a.iter().zip(n).map(|(x, y)| x + y * b).collect()
}

/// `Q(q; a + n b) = Q(q; a) Q(1; n) mod phi_b(q)` for `1 <= b <= b_max`,
/// `a` in `{0..b-1}^d` and `n <= n_box`.
pub fn verify_ratio_congruence(
    spec: &RatioSpec,
    b_max: u64,
    n_box: &[u64],
) -> Result<CongruenceReport, CongruenceError> {
    check_box(spec, n_box)?;
    require_hypotheses(spec, true)?;
    let moduli: Vec<u64> = (1..=b_max).collect();
    let table = residue_table(spec, &moduli, n_box)?;
    let at_one = values_at_one(spec, n_box)?;
    let quotients = GridRegion::Box(n_box.to_vec()).points();

    let mut checked = 0;
    let mut failures = Vec::new();
    for &b in &moduli {
        let phi = cyclotomic(b);
        for a in GridRegion::cube(spec.dim(), b - 1).points() {
            let base = &table[&(b, a.clone())];
            for n in &quotients {
                checked += 1;
                let lhs = &table[&(b, combine(&a, n, b))];
                let rhs = base.scale(&at_one[n]).rem_monic(&phi).expect("phi_b is monic");
                if *lhs != rhs {
                    failures.push(CongruenceFailure {
                        b,
                        a: a.clone(),
                        n: n.clone(),
                        lhs_residue: lhs.clone(),
                        rhs_residue: rhs,
                    });
                }
            }
        }
    }
    Ok(CongruenceReport {
        subject: "q-factorial ratio".into(),
        statement: "Q(q; a + n b) = Q(q; a) Q(1; n) mod phi_b(q)".into(),
        spec: Some(spec.clone()),
        ranges: SweepRanges {
            moduli,
            n_box: Some(n_box.to_vec()),
            index_max: None,
        },
        checked,
        failures,
    })
}

/// `Q(q; a + n b) = Q(q; n b) Q(q; a) mod phi_b(q)` over the same ranges as
/// [`verify_ratio_congruence`].
pub fn verify_inter1_identity(
    spec: &RatioSpec,
    b_max: u64,
    n_box: &[u64],
) -> Result<CongruenceReport, CongruenceError> {
    check_box(spec, n_box)?;
    require_hypotheses(spec, true)?;
    let moduli: Vec<u64> = (1..=b_max).collect();
    let table = residue_table(spec, &moduli, n_box)?;
    let quotients = GridRegion::Box(n_box.to_vec()).points();
    let zero = vec![0u64; spec.dim()];

    let mut checked = 0;
    let mut failures = Vec::new();
    for &b in &moduli {
        let phi = cyclotomic(b);
        for a in GridRegion::cube(spec.dim(), b - 1).points() {
            for n in &quotients {
                checked += 1;
                let lhs = &table[&(b, combine(&a, n, b))];
                let rhs = (&table[&(b, combine(&zero, n, b))] * &table[&(b, a.clone())])
                    .rem_monic(&phi)
                    .expect("phi_b is monic");
                if *lhs != rhs {
                    failures.push(CongruenceFailure {
                        b,
                        a: a.clone(),
                        n: n.clone(),
                        lhs_residue: lhs.clone(),
                        rhs_residue: rhs,
                    });
                }
            }
        }
    }
    Ok(CongruenceReport {
        subject: "q-factorial ratio".into(),
        statement: "Q(q; a + n b) = Q(q; n b) Q(q; a) mod phi_b(q)".into(),
        spec: Some(spec.clone()),
        ranges: SweepRanges {
            moduli,
            n_box: Some(n_box.to_vec()),
            index_max: None,
        },
        checked,
        failures,
    })
}

/// `Q(q; n b) = Q(1; n) mod phi_b(q)` for every `n <= n_box`.
pub fn verify_inter2_identity(spec: &RatioSpec, b: u64, n_box: &[u64]) -> Result<CongruenceReport, CongruenceError> {
    check_box(spec, n_box)?;
    require_hypotheses(spec, false)?;
    assert!(b >= 1, "b must be positive");
    let phi = cyclotomic(b);
    let quotients = GridRegion::Box(n_box.to_vec()).points();
    let zero = vec![0u64; spec.dim()];
    let results: Vec<Result<Option<CongruenceFailure>, CongruenceError>> = quotients
        .par_iter()
        .map(|n| {
            let big: Vec<u64> = n.iter().map(|x| x * b).collect();
            let lhs = crate::qcombinatorics::q_ratio(spec, &big)?.rem_cyclotomic(b);
            let value = q_ratio_at_one(spec, n, DEFAULT_AT_ONE_DEGREE_THRESHOLD)?;
            let rhs = IntPolynomial::constant(value).rem_monic(&phi).expect("phi_b is monic");
            Ok((lhs != rhs).then(|| CongruenceFailure {
                b,
                a: zero.clone(),
                n: n.clone(),
                lhs_residue: lhs,
                rhs_residue: rhs,
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(CongruenceReport {
        subject: "q-factorial ratio".into(),
        statement: "Q(q; n b) = Q(1; n) mod phi_b(q)".into(),
        spec: Some(spec.clone()),
        ranges: SweepRanges {
            moduli: vec![b],
            n_box: Some(n_box.to_vec()),
            index_max: None,
        },
        checked: quotients.len() as u64,
        failures,
    })
}

/// `Q(1; a + n p) = Q(1; a) Q(1; n) mod p` for primes `p <= p_max`,
/// `a` in `{0..p-1}^d` and `n <= n_box`. Residues are reported as constants
/// in `0..p`.
pub fn verify_plucas_at_one(spec: &RatioSpec, p_max: u64, n_box: &[u64]) -> Result<CongruenceReport, CongruenceError> {
    check_box(spec, n_box)?;
    require_hypotheses(spec, true)?;
    let primes = numbers::primes_up_to(p_max);
    let p_top = primes.last().copied().unwrap_or(1);
    let caps: Vec<u64> = n_box.iter().map(|&c| p_top * (c + 1) - 1).collect();
    let values: HashMap<Vec<u64>, BigInt> = GridRegion::Box(caps)
        .points()
        .into_par_iter()
        .filter(|big| primes.iter().any(|&p| quotient_fits(big, p, n_box)))
        .map(|big| {
            let v = q_ratio_at_one(spec, &big, DEFAULT_AT_ONE_DEGREE_THRESHOLD)?;
            Ok((big, v))
        })
        .collect::<Result<_, CongruenceError>>()?;
    let quotients = GridRegion::Box(n_box.to_vec()).points();

    let mut checked = 0;
    let mut failures = Vec::new();
    for &p in &primes {
        let modulus = BigInt::from(p);
        for a in GridRegion::cube(spec.dim(), p - 1).points() {
            for n in &quotients {
                checked += 1;
                let lhs = values[&combine(&a, n, p)].mod_floor(&modulus);
                let rhs = (&values[&a] * &values[n]).mod_floor(&modulus);
                if lhs != rhs {
                    failures.push(CongruenceFailure {
                        b: p,
                        a: a.clone(),
                        n: n.clone(),
                        lhs_residue: IntPolynomial::constant(lhs),
                        rhs_residue: IntPolynomial::constant(rhs),
                    });
                }
            }
        }
    }
    Ok(CongruenceReport {
        subject: "factorial ratio at q = 1".into(),
        statement: "Q(1; a + n p) = Q(1; a) Q(1; n) mod p".into(),
        spec: Some(spec.clone()),
        ranges: SweepRanges {
            moduli: primes,
            n_box: Some(n_box.to_vec()),
            index_max: None,
        },
        checked,
        failures,
    })
}

/// The two Apéry families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AperyFamily {
    /// `sum_k binom(n,k)^2 binom(n+k,k)`
    A,
    /// `sum_k binom(n,k)^2 binom(n+k,k)^2`
    B,
}

impl AperyFamily {
    pub fn name(self) -> &'static str {
        match self {
            AperyFamily::A => "a",
            AperyFamily::B => "b",
        }
    }

    fn last_power(self) -> u32 {
        match self {
            AperyFamily::A => 1,
            AperyFamily::B => 2,
        }
    }
}

/// `term[n][k] = qbinom(n,k)^2 qbinom(n+k,k)^r` for `k <= n <= n_max`.
fn apery_terms(family: AperyFamily, n_max: u64) -> Vec<Vec<IntPolynomial>> {
    let mut terms = Vec::with_capacity(n_max as usize + 1);
    let mut row = vec![IntPolynomial::one()];
    // upper[k] = qbinom(n+k, k), advanced as n grows
    let mut upper: Vec<IntPolynomial> = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            let mut next = vec![IntPolynomial::one(); n as usize + 1];
            for k in 1..n as usize {
                next[k] = &row[k - 1] + &row[k].shift(k);
            }
            row = next;
            for (k, u) in upper.iter_mut().enumerate() {
                // qbinom(n+k, k) = qbinom(n-1+k, k) (1 - q^{n+k}) / (1 - q^n)
                u.mul_one_minus_q_pow_assign(n as usize + k);
                u.div_one_minus_q_pow_assign(n as usize)
                    .expect("q-binomials are polynomials");
            }
        }
        upper.push(q_binomial(2 * n, n));
        let r = family.last_power();
        let terms_n: Vec<IntPolynomial> = (0..=n as usize)
            .into_par_iter()
            .map(|k| {
                let sq = &row[k] * &row[k];
                let mut t = &sq * &upper[k];
                if r == 2 {
                    t = &t * &upper[k];
                }
                t
            })
            .collect();
        terms.push(terms_n);
    }
    terms
}

/// `a_n(q) = sum_k q^{t k} qbinom(n,k)^2 qbinom(n+k,k)` (family `A`, with the
/// last factor squared for family `B`), for each `t` in `ts` and
/// `0 <= n <= n_max`. The result is indexed `[t position][n]`.
pub fn apery_polynomials_multi(family: AperyFamily, ts: &[u64], n_max: u64) -> Vec<Vec<IntPolynomial>> {
    let terms = apery_terms(family, n_max);
    ts.iter()
        .map(|&t| {
            terms
                .iter()
                .map(|row| {
                    let mut acc = IntPolynomial::zero();
                    for (k, term) in row.iter().enumerate() {
                        acc += &term.shift(t as usize * k);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn apery_polynomials(family: AperyFamily, t: u64, n_max: u64) -> Vec<IntPolynomial> {
    apery_polynomials_multi(family, &[t], n_max).pop().expect("one t")
}

/// The classical Apéry numbers, by integer summation.
pub fn apery_at_one(family: AperyFamily, n_max: u64) -> Vec<BigInt> {
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let c = numbers::binomial(n, k);
                    &c * &c * numbers::binomial(n + k, k).pow(family.last_power())
                })
                .sum()
        })
        .collect()
}

/// Checks `s_{m + n b}(q) = s_m(q) s_n(1) mod phi_b(q)` for `b <= b_max`,
/// `0 <= m < b` and `m + n b <= n_max`, where `seq[n] = s_n(q)`.
pub fn verify_sequence_congruence(seq: &[IntPolynomial], b_max: u64) -> (u64, Vec<CongruenceFailure>) {
    let at_one: Vec<BigInt> = seq.iter().map(IntPolynomial::eval_at_one).collect();
    let n_max = seq.len() as u64 - 1;
    let jobs: Vec<(u64, u64, u64)> = (1..=b_max)
        .flat_map(|b| (0..b.min(n_max + 1)).flat_map(move |m| (0..=(n_max - m) / b).map(move |n| (b, m, n))))
        .collect();
    let failures: Vec<CongruenceFailure> = jobs
        .par_iter()
        .filter_map(|&(b, m, n)| {
            let phi = cyclotomic(b);
            let lhs = seq[(m + n * b) as usize].rem_cyclotomic(b);
            let rhs = seq[m as usize]
                .scale(&at_one[n as usize])
                .rem_monic(&phi)
                .expect("phi_b is monic");
            (lhs != rhs).then(|| CongruenceFailure {
                b,
                a: vec![m],
                n: vec![n],
                lhs_residue: lhs,
                rhs_residue: rhs,
            })
        })
        .collect();
    (jobs.len() as u64, failures)
}

fn apery_report(family: AperyFamily, t: u64, b_max: u64, n_max: u64, seq: &[IntPolynomial]) -> CongruenceReport {
    let (checked, failures) = verify_sequence_congruence(seq, b_max);
    CongruenceReport {
        subject: format!("Apery family {} with t = {t}", family.name()),
        statement: "s_{m + n b}(q) = s_m(q) s_n(1) mod phi_b(q)".into(),
        spec: None,
        ranges: SweepRanges {
            moduli: (1..=b_max).collect(),
            n_box: None,
            index_max: Some(n_max),
        },
        checked,
        failures,
    }
}

pub fn verify_apery(family: AperyFamily, t: u64, b_max: u64, n_max: u64) -> CongruenceReport {
    let seq = apery_polynomials(family, t, n_max);
    apery_report(family, t, b_max, n_max, &seq)
}

/// [`verify_apery`] for several `t` at once, sharing the q-binomial products.
pub fn verify_apery_multi(family: AperyFamily, ts: &[u64], b_max: u64, n_max: u64) -> Vec<CongruenceReport> {
    let seqs = apery_polynomials_multi(family, ts, n_max);
    ts.iter()
        .zip(&seqs)
        .map(|(&t, seq)| apery_report(family, t, b_max, n_max, seq))
        .collect()
}
