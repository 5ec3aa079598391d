//! The Landau step function
//!
//! ```text
//! Delta_{e,f}(x) = sum_i floor(e_i . x) - sum_j floor(f_j . x)
//! ```
//!
//! and an exact decision procedure for its sign conditions. On `[0,1)^d` the
//! function is constant on the cells of the arrangement `{t.x = m}`; each
//! cell is identified by its floor signature `(m_t)` and certified nonempty
//! by an exact rational witness.
//!
//! A cell lies inside `D_{e,f} = {x : t.x >= 1 for some t}` exactly when some
//! `m_t >= 1`: on the cell `m_t <= t.x < m_t + 1`, so `m_t = 0` for every `t`
//! forces `t.x < 1` throughout, while `m_t >= 1` gives `t.x >= 1`
//! throughout.

pub mod fourier_motzkin;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::qcombinatorics::RatioSpec;
use fourier_motzkin::{solve, Inequality};

/// Default cap on the number of partial signatures explored.
pub const DEFAULT_SIGNATURE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LandauError {
    #[error("cell enumeration exceeded the budget of {budget} signatures")]
    DimensionTooLarge { budget: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("coordinate {0} is outside [0, 1)")]
    OutOfRange(String),
}

/// Formats as `p/q` with `q > 0`, including integers (`0/1`).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or an integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational, PointError> {
    let err = || PointError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| err())?)),
    }
}

/// A point of `[0,1)^d` with exact rational coordinates in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint(Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self, PointError> {
        if let Some(c) = coords.iter().find(|c| c.is_negative() || **c >= BigRational::one()) {
            return Err(PointError::OutOfRange(format_rational(c)));
        }
        Ok(Self(coords))
    }

    pub fn parse(coords: &[&str]) -> Result<Self, PointError> {
        Self::new(coords.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let refs: Vec<&str> = raw.iter().map(String::as_str).collect();
        Self::parse(&refs).map_err(serde::de::Error::custom)
    }
}

fn dot_rational(t: &[u64], x: &[BigRational]) -> BigRational {
    t.iter()
        .zip(x)
        .map(|(&c, v)| v * BigInt::from(c))
        .fold(BigRational::zero(), |acc, v| acc + v)
}

fn floor_i64(r: &BigRational) -> i64 {
    r.numer().div_floor(r.denom()).to_i64().expect("floor fits in i64")
}

/// `floor(t.x)` for every `t` in `e` followed by `f`.
pub fn floor_signature(spec: &RatioSpec, x: &[BigRational]) -> Vec<i64> {
    spec.vectors().map(|t| floor_i64(&dot_rational(t, x))).collect()
}

fn signature_value(spec: &RatioSpec, floors: &[i64]) -> i64 {
    let u = spec.e().len();
    floors[..u].iter().sum::<i64>() - floors[u..].iter().sum::<i64>()
}

/// `Delta_{e,f}(x)`, exactly, at any rational point.
pub fn delta_at(spec: &RatioSpec, x: &[BigRational]) -> i64 {
    signature_value(spec, &floor_signature(spec, x))
}

/// Whether `t.x >= 1` for some `t` in `e` or `f`.
pub fn in_domain_d(spec: &RatioSpec, x: &[BigRational]) -> bool {
    let one = BigRational::one();
    spec.vectors().any(|t| dot_rational(t, x) >= one)
}

/// One cell of the arrangement restricted to `[0,1)^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSignature {
    /// `m_t` for every `t` in `e` followed by `f`.
    pub floors: Vec<i64>,
    pub feasible: bool,
    pub witness: Option<RationalPoint>,
    /// Value of `Delta` on the cell.
    pub delta: i64,
    pub in_domain_d: bool,
}

impl CellSignature {
    fn new(spec: &RatioSpec, floors: Vec<i64>, witness: RationalPoint) -> Self {
        let delta = signature_value(spec, &floors);
        let in_domain_d = floors.iter().any(|&m| m >= 1);
        Self {
            floors,
            feasible: true,
            witness: Some(witness),
            delta,
            in_domain_d,
        }
    }
}

/// Every nonempty cell of `[0,1)^d`, sorted by signature.
pub fn enumerate_cells(spec: &RatioSpec) -> Result<Vec<CellSignature>, LandauError> {
    enumerate_cells_with_budget(spec, DEFAULT_SIGNATURE_BUDGET)
}

pub fn enumerate_cells_with_budget(spec: &RatioSpec, budget: u64) -> Result<Vec<CellSignature>, LandauError> {
    let d = spec.dim();
    let all: Vec<&Vec<u64>> = spec.vectors().collect();

    // distinct nonzero vectors, largest component sum first
    let mut distinct: Vec<&Vec<u64>> = Vec::new();
    for t in &all {
        if t.iter().any(|&c| c > 0) && !distinct.contains(t) {
            distinct.push(t);
        }
    }
    distinct.sort_by_key(|t| std::cmp::Reverse(t.iter().sum::<u64>()));

    let mut base = Vec::with_capacity(2 * d);
    for j in 0..d {
        let mut unit = vec![0u64; d];
        unit[j] = 1;
        base.push(Inequality::at_least(&unit, 0, false));
        base.push(Inequality::below(&unit, 1, true));
    }

    let mut search = Search {
        distinct: &distinct,
        dim: d,
        budget,
        explored: 0,
        found: Vec::new(),
    };
    let mut chosen = Vec::with_capacity(distinct.len());
    let start = solve(base.clone(), d).expect("the unit box is nonempty");
    search.descend(&mut base, &mut chosen, start)?;

    let mut cells: Vec<CellSignature> = search
        .found
        .into_iter()
        .map(|(ms, x)| {
            let floors = all
                .iter()
                .map(|t| distinct.iter().position(|s| s == t).map_or(0, |i| ms[i]))
                .collect();
            CellSignature::new(spec, floors, RationalPoint(x))
        })
        .collect();
    cells.sort_by(|a, b| a.floors.cmp(&b.floors));
    Ok(cells)
}

struct Search<'a> {
    distinct: &'a [&'a Vec<u64>],
    dim: usize,
    budget: u64,
    explored: u64,
    found: Vec<(Vec<i64>, Vec<BigRational>)>,
}

impl Search<'_> {
    fn descend(
        &mut self,
        rows: &mut Vec<Inequality>,
        chosen: &mut Vec<i64>,
        witness: Vec<BigRational>,
    ) -> Result<(), LandauError> {
        let depth = chosen.len();
        if depth == self.distinct.len() {
            self.found.push((chosen.clone(), witness));
            return Ok(());
        }
        let t = self.distinct[depth];
        let top = t.iter().sum::<u64>() as i64;
        for m in 0..top {
            self.explored += 1;
            if self.explored > self.budget {
                return Err(LandauError::DimensionTooLarge { budget: self.budget });
            }
            rows.push(Inequality::at_least(t, m, false));
            rows.push(Inequality::below(t, m + 1, true));
            if let Some(x) = solve(rows.clone(), self.dim) {
                chosen.push(m);
                self.descend(rows, chosen, x)?;
                chosen.pop();
            }
            rows.truncate(rows.len() - 2);
        }
        Ok(())
    }
}

/// Verdict on the two sign conditions for `Delta_{e,f}` over `[0,1)^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandauReport {
    pub spec: RatioSpec,
    /// `Q(q; n)` lies in `Z[q]` for every `n`: `Delta >= 0` on `[0,1)^d` and
    /// `|e| - |f|` has no negative component.
    pub integrality: bool,
    /// `Delta >= 1` on every cell inside `D_{e,f}` (vacuous when it is empty).
    pub criterion_d: bool,
    pub balanced: bool,
    /// `|e| - |f|`
    pub excess: Vec<i64>,
    /// Minimum of `Delta` over `[0,1)^d`.
    pub min_value_overall: i64,
    /// Minimum of `Delta` over `D_{e,f}`; `None` when `D_{e,f}` is empty.
    pub min_value_on_d: Option<i64>,
    pub cell_count: usize,
    /// Cells with `Delta < 0`, or inside `D_{e,f}` with `Delta < 1`.
    pub violating_cells: Vec<CellSignature>,
}

impl LandauReport {
    pub fn passes(&self) -> bool {
        self.integrality && self.criterion_d
    }
}

pub fn check_landau(spec: &RatioSpec) -> Result<LandauReport, LandauError> {
    check_landau_with_budget(spec, DEFAULT_SIGNATURE_BUDGET)
}

pub fn check_landau_with_budget(spec: &RatioSpec, budget: u64) -> Result<LandauReport, LandauError> {
    let cells = enumerate_cells_with_budget(spec, budget)?;
    let excess = spec.excess();
    let min_value_overall = cells.iter().map(|c| c.delta).min().expect("at least one cell");
    let min_value_on_d = cells.iter().filter(|c| c.in_domain_d).map(|c| c.delta).min();
    let integrality = min_value_overall >= 0 && excess.iter().all(|&x| x >= 0);
    let criterion_d = min_value_on_d.is_none_or(|m| m >= 1);
    let violating_cells = cells
        .iter()
        .filter(|c| c.delta < 0 || (c.in_domain_d && c.delta < 1))
        .cloned()
        .collect();
    Ok(LandauReport {
        spec: spec.clone(),
        integrality,
        criterion_d,
        balanced: spec.is_balanced(),
        excess,
        min_value_overall,
        min_value_on_d,
        cell_count: cells.len(),
        violating_cells,
    })
}

/// Verdict on the specialization hypothesis: `m.x >= 1` implies
/// `Delta(x) >= 1` for every `x` in `[0,1)^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub m: Vec<u64>,
    pub holds: bool,
    /// Minimum of `Delta` where `m.x >= 1`; `None` when that set is empty.
    pub min_value: Option<i64>,
    /// Cells with `m.x >= 1` and `Delta < 1`; floors list `e`, then `f`, then
    /// the floor of `m.x`.
    pub violating_cells: Vec<CellSignature>,
}

/// Decides the specialization hypothesis for `m` by refining the
/// arrangement with the hyperplanes `m.x = k`. Adding `m` to both `e` and
/// `f` leaves `Delta` unchanged.
pub fn check_specialization(spec: &RatioSpec, m: &[u64]) -> Result<SpecializationReport, LandauError> {
    assert_eq!(m.len(), spec.dim(), "m must have one entry per variable");
    let mut e = spec.e().to_vec();
    e.push(m.to_vec());
    let mut f = spec.f().to_vec();
    f.push(m.to_vec());
    let refined = RatioSpec::new(spec.dim(), e, f).expect("same dimension");
    let m_index = spec.e().len();
    let cells: Vec<CellSignature> = enumerate_cells(&refined)?
        .into_iter()
        .filter(|c| c.floors[m_index] >= 1)
        .map(|mut c| {
            let m_floor = c.floors.remove(m_index);
            c.floors.pop();
            c.floors.push(m_floor);
            c
        })
        .collect();
    let min_value = cells.iter().map(|c| c.delta).min();
    let violating_cells: Vec<CellSignature> = cells.into_iter().filter(|c| c.delta < 1).collect();
    Ok(SpecializationReport {
        m: m.to_vec(),
        holds: violating_cells.is_empty(),
        min_value,
        violating_cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn inverse_central() -> RatioSpec {
        RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap()
    }

    #[test]
    fn delta_examples() {
        let central = RatioSpec::central_binomial();
        assert_eq!(delta_at(&central, &[r(1, 2)]), 1);
        assert_eq!(delta_at(&RatioSpec::apery(), &[r(1, 2), r(1, 2)]), 2);
        assert_eq!(delta_at(&RatioSpec::apery(), &[r(3, 1), r(-2, 1)]), 0);
    }

    #[test]
    fn domain_examples() {
        assert!(in_domain_d(&RatioSpec::central_binomial(), &[r(1, 2)]));
        assert!(!in_domain_d(&RatioSpec::central_binomial(), &[r(0, 1)]));
        assert!(!in_domain_d(&RatioSpec::apery(), &[r(1, 3), r(1, 4)]));
    }

    #[test]
    fn central_binomial_cells() {
        let cells = enumerate_cells(&RatioSpec::central_binomial()).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].floors, vec![0, 0, 0]);
        assert_eq!(cells[0].witness, Some(RationalPoint(vec![r(0, 1)])));
        assert_eq!(cells[1].floors, vec![1, 0, 0]);
        assert_eq!(cells[1].witness, Some(RationalPoint(vec![r(1, 2)])));
    }

    #[test]
    fn zero_vectors_give_one_cell() {
        let spec = RatioSpec::new(2, vec![vec![0, 0]], vec![vec![0, 0], vec![0, 0]]).unwrap();
        let cells = enumerate_cells(&spec).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].floors, vec![0, 0, 0]);
    }

    #[test]
    fn reports() {
        let central = check_landau(&RatioSpec::central_binomial()).unwrap();
        assert!(central.integrality && central.criterion_d);
        assert_eq!(central.min_value_on_d, Some(1));

        assert!(check_landau(&RatioSpec::apery()).unwrap().criterion_d);

        let inverse = check_landau(&inverse_central()).unwrap();
        assert!(!inverse.integrality);
        let bad = &inverse.violating_cells[0];
        assert_eq!(bad.delta, -1);
        assert_eq!(bad.witness, Some(RationalPoint(vec![r(1, 2)])));
    }

    #[test]
    fn unbalanced_specs() {
        // [3n]! / [n]!: Delta >= 0 and excess 2
        let growing = RatioSpec::new(1, vec![vec![3]], vec![vec![1]]).unwrap();
        assert!(check_landau(&growing).unwrap().integrality);
        // [n]! / [2n]! is not a polynomial for n >= 1
        let shrinking = RatioSpec::new(1, vec![vec![1]], vec![vec![2]]).unwrap();
        let report = check_landau(&shrinking).unwrap();
        assert_eq!(report.excess, vec![-1]);
        assert!(!report.integrality);
    }

    #[test]
    fn witnesses_lie_in_their_cells() {
        for spec in [
            RatioSpec::apery(),
            RatioSpec::apery_second(),
            RatioSpec::binomial_power(3),
        ] {
            for cell in enumerate_cells(&spec).unwrap() {
                let x = cell.witness.as_ref().unwrap();
                assert_eq!(floor_signature(&spec, x.coords()), cell.floors);
            }
        }
    }

    #[test]
    fn specialization_hypothesis() {
        let apery = RatioSpec::apery();
        let diagonal = check_specialization(&apery, &[1, 1]).unwrap();
        assert!(diagonal.holds);
        assert_eq!(diagonal.min_value, Some(2));
        // 4 x1 >= 1 with x1 < 1/2, x2 = 0 gives Delta = 0
        let steep = check_specialization(&apery, &[4, 0]).unwrap();
        assert!(!steep.holds);
        let bad = &steep.violating_cells[0];
        let x = bad.witness.as_ref().unwrap();
        assert_eq!(delta_at(&apery, x.coords()), bad.delta);
        assert!(dot_rational(&[4, 0], x.coords()) >= BigRational::one());
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            enumerate_cells_with_budget(&RatioSpec::apery(), 2),
            Err(LandauError::DimensionTooLarge { budget: 2 })
        );
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("3/6").unwrap(), r(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), r(-2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(RationalPoint::parse(&["1/1"]).is_err());
        let p = RationalPoint::parse(&["0", "2/3"]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["0/1","2/3"]"#);
    }

    proptest! {
        #[test]
        fn periodicity(a in 0i64..40, b in 0i64..40, den in 1i64..13, s1 in -3i64..4, s2 in -3i64..4) {
            let spec = RatioSpec::apery();
            let x = [r(a, den), r(b, den)];
            let shifted = [&x[0] + r(s1, 1), &x[1] + r(s2, 1)];
            prop_assert_eq!(delta_at(&spec, &x), delta_at(&spec, &shifted));
        }

        #[test]
        fn cells_cover_random_points(a in 0i64..97, b in 0i64..97) {
            let spec = RatioSpec::apery();
            let x = [r(a, 97), r(b, 97)];
            let cells = enumerate_cells(&spec).unwrap();
            let sig = floor_signature(&spec, &x);
            let cell = cells.iter().find(|c| c.floors == sig).expect("signature is a cell");
            prop_assert_eq!(cell.delta, delta_at(&spec, &x));
            prop_assert_eq!(cell.in_domain_d, in_domain_d(&spec, &x));
        }
    }
}
