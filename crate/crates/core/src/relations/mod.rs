//! Exact search for polynomial relations `P(x, f_1, ..., f_n) = 0` among
//! truncated one-variable series with rational coefficients.
//!
//! An empty answer means only that no relation with the given degree bounds
//! vanishes to the given order; it is never a proof of independence.

pub mod bareiss;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{SeriesError, TruncatedSeries};
use bareiss::{make_primitive, nullspace, rank_mod_p, RANK_PRIMES};

/// Extra equations required beyond the number of unknowns.
pub const SAFETY_MARGIN: u64 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("order {order} is too small for {unknowns} unknowns; need at least {needed}")]
    OrderTooSmall { order: u64, unknowns: usize, needed: u64 },
    #[error("series {index} has {len} coefficients, {needed} are required")]
    InsufficientTruncation { index: usize, len: usize, needed: usize },
    #[error("at least one series is required")]
    NoSeries,
    #[error("relation has {got} y-variables but {expected} series were given")]
    ArityMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A one-variable series with rational coefficients, `coeffs[n]` at `x^n`.
pub type RationalSeries = Vec<BigRational>;

/// Evaluates every coefficient of a one-variable series at the rational `q`.
pub fn evaluate_at(fq: &TruncatedSeries, q: &BigRational, order: u64) -> Result<RationalSeries, RelationError> {
    Ok(fq
        .univariate_coeffs(order)?
        .iter()
        .map(|c| {
            c.coeffs().iter().rev().fold(BigRational::zero(), |acc, a| {
                acc * q + BigRational::from_integer(a.clone())
            })
        })
        .collect())
}

pub fn from_integers(coeffs: &[BigInt]) -> RationalSeries {
    coeffs.iter().cloned().map(BigRational::from_integer).collect()
}

/// Exponent vectors `(i, alpha_1, ..., alpha_n)` of `x^i y^alpha`.
pub type Monomial = Vec<u64>;

/// Graded lexicographic order with `x < y_1 < ... < y_n`: total degree
/// first, then the exponent of `y_n`, then `y_{n-1}`, down to `x`.
pub fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// All `alpha` in `N^n` with `|alpha| <= dy`, in increasing grlex order.
fn y_monomials(n: usize, dy: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    fn rec(j: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if j == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[j] = v;
            rec(j + 1, left - v, cur, out);
        }
        cur[j] = 0;
    }
    rec(0, dy, &mut cur, &mut out);
    out.sort_by(|a, b| {
        let mut ma = vec![0];
        ma.extend(a);
        let mut mb = vec![0];
        mb.extend(b);
        grlex(&ma, &mb)
    });
    out
}

/// Number of unknown coefficients for `n` series and bounds `(dx, dy)`.
pub fn unknown_count(n: usize, dx: u64, dy: u64) -> usize {
    (dx as usize + 1) * y_monomials(n, dy).len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCandidate {
    /// `(exponents, coefficient)` pairs, exponents `(i, alpha_1, ..)` of
    /// `x^i y^alpha`, in decreasing grlex order; the first coefficient is
    /// positive and the coefficients are coprime.
    #[serde(with = "decimal_terms")]
    pub terms: Vec<(Monomial, BigInt)>,
    pub verified_order: u64,
    /// Whether the relation still vanishes at twice the order; `None` when
    /// the supplied series are too short to tell.
    pub stable_at_double_order: Option<bool>,
}

// Coefficients travel as decimal strings, like polynomial coefficients.
mod decimal_terms {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    use super::Monomial;

    pub fn serialize<S: Serializer>(terms: &[(Monomial, BigInt)], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<(&Monomial, String)> = terms.iter().map(|(m, c)| (m, c.to_string())).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Monomial, BigInt)>, D::Error> {
        let raw: Vec<(Monomial, String)> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|(m, c)| c.parse().map(|c| (m, c)).map_err(de::Error::custom))
            .collect()
    }
}

impl RelationCandidate {
    /// `true` when the doubled-order check ran and failed.
    pub fn is_truncation_artifact(&self) -> bool {
        self.stable_at_double_order == Some(false)
    }

    /// Text form such as `4*x*y1^2 - y1^2 + 1`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, (mono, c)) in self.terms.iter().enumerate() {
            let mut vars = Vec::new();
            for (j, &e) in mono.iter().enumerate() {
                let name = if j == 0 { "x".to_string() } else { format!("y{j}") };
                match e {
                    0 => {}
                    1 => vars.push(name),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let abs = c.abs();
            let body = match (vars.is_empty(), abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => vars.join("*"),
                (false, false) => format!("{abs}*{}", vars.join("*")),
            };
            match (k, c.is_negative()) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankCertificate {
    /// Full column rank modulo the given prime, hence over the rationals.
    ModularRank { prime: u64 },
    /// Fraction-free elimination over the integers.
    ExactElimination,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSearch {
    pub series_count: usize,
    pub dx: u64,
    pub dy: u64,
    pub order: u64,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub certificate: RankCertificate,
    pub candidates: Vec<RelationCandidate>,
}

fn lcm_of_denominators(s: &[BigRational]) -> BigInt {
    s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn mul_truncated(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn check_lengths(series: &[RationalSeries], needed: usize) -> Result<(), RelationError> {
    if series.is_empty() {
        return Err(RelationError::NoSeries);
    }
    for (index, s) in series.iter().enumerate() {
        if s.len() < needed {
            return Err(RelationError::InsufficientTruncation {
                index,
                len: s.len(),
                needed,
            });
        }
    }
    Ok(())
}

/// Basis of the relations `P(x, f_1, ..., f_n)` with `deg_x P <= dx` and
/// total `y`-degree at most `dy` whose coefficients of `x^0 ..= x^order`
/// all vanish. Requires `order >= unknowns + SAFETY_MARGIN`.
pub fn find_relations(
    series: &[RationalSeries],
    dx: u64,
    dy: u64,
    order: u64,
) -> Result<RelationSearch, RelationError> {
    check_lengths(series, order as usize + 1)?;
    let n = series.len();
    let ys = y_monomials(n, dy);
    let unknowns = (dx as usize + 1) * ys.len();
    let needed = unknowns as u64 + SAFETY_MARGIN;
    if order < needed {
        return Err(RelationError::OrderTooSmall {
            order,
            unknowns,
            needed,
        });
    }
    let len = order as usize + 1;

    // clear denominators: F_k = D_k f_k has integer coefficients
    let scales: Vec<BigInt> = series.iter().map(|s| lcm_of_denominators(&s[..len])).collect();
    let cleared: Vec<Vec<BigInt>> = series
        .iter()
        .zip(&scales)
        .map(|(s, d)| {
            s[..len]
                .iter()
                .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();

    // F^alpha for every y-monomial, built from a smaller power
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(ys.len());
    for alpha in &ys {
        let value = match alpha.iter().position(|&e| e > 0) {
            None => {
                let mut one = vec![BigInt::zero(); len];
                one[0] = BigInt::one();
                one
            }
            Some(k) => {
                let mut smaller = alpha.clone();
                smaller[k] -= 1;
                let idx = ys
                    .iter()
                    .position(|b| *b == smaller)
                    .expect("graded order lists smaller first");
                mul_truncated(&powers[idx], &cleared[k], len)
            }
        };
        powers.push(value);
    }

    // column (i, alpha) holds x^i F^alpha
    let mut monomials: Vec<Monomial> = Vec::with_capacity(unknowns);
    let mut rows = vec![Vec::with_capacity(unknowns); len];
    for i in 0..=dx as usize {
        for (alpha, pw) in ys.iter().zip(&powers) {
            let mut mono = vec![i as u64];
            mono.extend(alpha);
            monomials.push(mono);
            for (j, row) in rows.iter_mut().enumerate() {
                row.push(if j >= i { pw[j - i].clone() } else { BigInt::zero() });
            }
        }
    }

    let certified = RANK_PRIMES.iter().copied().find(|&p| rank_mod_p(&rows, p) == unknowns);
    let (rank, certificate, basis) = match certified {
        Some(prime) => (unknowns, RankCertificate::ModularRank { prime }, Vec::new()),
        None => {
            let (rank, basis) = nullspace(rows);
            (rank, RankCertificate::ExactElimination, basis)
        }
    };

    let double = 2 * order as usize + 1;
    let can_double = series.iter().all(|s| s.len() >= double);
    let mut candidates: Vec<RelationCandidate> = basis
        .into_iter()
        .map(|v| {
            let mut coeffs: Vec<BigInt> = v
                .into_iter()
                .zip(&monomials)
                .map(|(c, mono)| {
                    let scale: BigInt = mono[1..].iter().zip(&scales).map(|(&e, d)| d.pow(e as u32)).product();
                    c * scale
                })
                .collect();
            make_primitive(&mut coeffs);
            let mut terms: Vec<(Monomial, BigInt)> = monomials
                .iter()
                .cloned()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            terms.sort_by(|a, b| grlex(&b.0, &a.0));
            if terms[0].1.is_negative() {
                for t in &mut terms {
                    t.1 = -t.1.clone();
                }
            }
            RelationCandidate {
                terms,
                verified_order: order,
                stable_at_double_order: None,
            }
        })
        .collect();
    if can_double {
        for cand in &mut candidates {
            cand.stable_at_double_order = Some(verify_relation(cand, series, 2 * order)?);
        }
    }
    candidates.sort_by(|a, b| a.terms.cmp(&b.terms));

    Ok(RelationSearch {
        series_count: n,
        dx,
        dy,
        order,
        unknowns,
        equations: len,
        rank,
        certificate,
        candidates,
    })
}

/// [`find_relations`] for several `(dx, dy)` bounds in parallel, each at
/// the smallest admissible order no lower than `min_order`.
pub fn find_relations_many(
    series: &[RationalSeries],
    bounds: &[(u64, u64)],
    min_order: u64,
) -> Vec<Result<RelationSearch, RelationError>> {
    bounds
        .par_iter()
        .map(|&(dx, dy)| {
            let needed = unknown_count(series.len(), dx, dy) as u64 + SAFETY_MARGIN;
            find_relations(series, dx, dy, min_order.max(needed))
        })
        .collect()
}

/// Whether `cand` vanishes on `series` through `x^order`.
pub fn verify_relation(cand: &RelationCandidate, series: &[RationalSeries], order: u64) -> Result<bool, RelationError> {
    let len = order as usize + 1;
    check_lengths(series, len)?;
    for (mono, _) in &cand.terms {
        if mono.len() != series.len() + 1 {
            return Err(RelationError::ArityMismatch {
                expected: series.len(),
                got: mono.len() - 1,
            });
        }
    }
    let mut total = vec![BigRational::zero(); len];
    for (mono, c) in &cand.terms {
        let mut term = vec![BigRational::zero(); len];
        let shift = mono[0] as usize;
        if shift >= len {
            continue;
        }
        term[shift] = BigRational::from_integer(c.clone());
        for (k, &e) in mono[1..].iter().enumerate() {
            for _ in 0..e {
                term = mul_truncated_rational(&term, &series[k][..len], len);
            }
        }
        for (t, v) in total.iter_mut().zip(term) {
            *t += v;
        }
    }
    Ok(total.iter().all(Zero::is_zero))
}

fn mul_truncated_rational(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}
