//! Exact Fourier–Motzkin elimination for systems of strict and non-strict
//! linear inequalities over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `sum_j coeffs[j] * x_j < rhs` when `strict`, `<= rhs` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
    pub strict: bool,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational, strict: bool) -> Self {
        Self { coeffs, rhs, strict }
    }

    /// `lo <= t.x` (or `<` when `strict`), for an integer vector `t`.
    pub fn at_least(t: &[u64], lo: i64, strict: bool) -> Self {
        Self::new(t.iter().map(|&c| -rat(c as i64)).collect(), -rat(lo), strict)
    }

    /// `t.x < hi` (or `<=` when not `strict`), for an integer vector `t`.
    pub fn below(t: &[u64], hi: i64, strict: bool) -> Self {
        Self::new(t.iter().map(|&c| rat(c as i64)).collect(), rat(hi), strict)
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn holds_trivially(&self) -> bool {
        if self.strict {
            self.rhs.is_positive()
        } else {
            !self.rhs.is_negative()
        }
    }

    /// Scales so the first nonzero coefficient has absolute value one;
    /// parallel constraints then share a coefficient vector.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
        self
    }

    /// Whether `self` implies `other` (same coefficients, tighter bound).
    fn dominates(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (self.rhs < other.rhs || (self.rhs == other.rhs && (self.strict || !other.strict)))
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        let lhs: BigRational = self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        if self.strict {
            lhs < self.rhs
        } else {
            lhs <= self.rhs
        }
    }
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Drops trivially true constant rows and rows implied by a parallel row.
/// Returns `None` when some constant row is false.
fn simplify(rows: Vec<Inequality>) -> Option<Vec<Inequality>> {
    let mut out: Vec<Inequality> = Vec::with_capacity(rows.len());
    for row in rows {
        if row.is_constant() {
            if !row.holds_trivially() {
                return None;
            }
            continue;
        }
        let row = row.normalized();
        if out.iter().any(|kept| kept.dominates(&row)) {
            continue;
        }
        out.retain(|kept| !row.dominates(kept));
        out.push(row);
    }
    Some(out)
}

/// Eliminates variable `k` (whose column is then all zero).
fn eliminate(rows: &[Inequality], k: usize) -> Vec<Inequality> {
    let mut out = Vec::new();
    let (mut upper, mut lower) = (Vec::new(), Vec::new());
    for row in rows {
        if row.coeffs[k].is_positive() {
            upper.push(row);
        } else if row.coeffs[k].is_negative() {
            lower.push(row);
        } else {
            out.push(row.clone());
        }
    }
    for u in &upper {
        for l in &lower {
            let su = u.coeffs[k].recip();
            let sl = -l.coeffs[k].recip();
            let coeffs = u
                .coeffs
                .iter()
                .zip(&l.coeffs)
                .map(|(a, b)| a * &su + b * &sl)
                .collect::<Vec<_>>();
            let rhs = &u.rhs * &su + &l.rhs * &sl;
            let mut row = Inequality::new(coeffs, rhs, u.strict || l.strict);
            row.coeffs[k] = BigRational::zero();
            out.push(row);
        }
    }
    out
}

/// A feasible point of `rows` over `dim` variables, or `None` if the system
/// has no solution. Every variable must be bounded above and below by the
/// system itself.
///
/// Each coordinate of the witness is the closed lower bound of its interval
/// when that bound is attained, and the interval midpoint otherwise.
pub fn solve(rows: Vec<Inequality>, dim: usize) -> Option<Vec<BigRational>> {
    // stages[k] involves only variables 0..k
    let mut stages = vec![simplify(rows)?];
    for k in (0..dim).rev() {
        let next = simplify(eliminate(stages.last().expect("nonempty"), k))?;
        stages.push(next);
    }
    stages.reverse();

    let mut x: Vec<BigRational> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut lo: Option<(BigRational, bool)> = None;
        let mut hi: Option<(BigRational, bool)> = None;
        for row in &stages[k + 1] {
            let a = &row.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let rest: BigRational = row.coeffs[..k].iter().zip(&x).map(|(c, v)| c * v).sum();
            let bound = (&row.rhs - rest) / a;
            if a.is_positive() {
                let tighter = match &hi {
                    None => true,
                    Some((h, s)) => bound < *h || (bound == *h && row.strict && !s),
                };
                if tighter {
                    hi = Some((bound, row.strict));
                }
            } else {
                let tighter = match &lo {
                    None => true,
                    Some((l, s)) => bound > *l || (bound == *l && row.strict && !s),
                };
                if tighter {
                    lo = Some((bound, row.strict));
                }
            }
        }
        let (lo, lo_strict) = lo.expect("variable bounded below");
        let (hi, _) = hi.expect("variable bounded above");
        let value = if lo_strict { (lo + hi) / rat(2) } else { lo };
        x.push(value);
    }
    Some(x)
}
