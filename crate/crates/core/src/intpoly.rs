//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros;
//! the zero polynomial is the empty vector. Everything here is exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::numbers;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The divisor does not divide the dividend in `Z[q]`. For divisors with
    /// unit leading coefficient `remainder` is the true remainder; otherwise it
    /// is the residual left when integer long division broke down.
    #[error("polynomial division is not exact (remainder {remainder})")]
    NotDivisible { remainder: IntPolynomial },
    #[error("modulus {0} is not monic of positive degree")]
    NotMonic(IntPolynomial),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `q = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest absolute coefficient, in bits.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Exact quotient `self / divisor` in `Z[q]`.
    pub fn divide_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
        let lc = divisor.leading_coeff().ok_or(PolyError::DivisionByZero)?.clone();
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = divisor.len() - 1;
        if self.len() <= dd {
            return Err(PolyError::NotDivisible {
                remainder: self.clone(),
            });
        }
        let lower = sparse_terms(&divisor.coeffs[..dd]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let top = std::mem::take(&mut rem[k]);
            if top.is_zero() {
                continue;
            }
            let c = if lc.is_one() {
                top
            } else {
                let (c, r) = top.div_rem(&lc);
                if !r.is_zero() {
                    rem[k] = top;
                    return Err(PolyError::NotDivisible {
                        remainder: Self::from_coeffs(rem),
                    });
                }
                c
            };
            for (j, dj) in &lower {
                sub_scaled(&mut rem[k - dd + j], &c, dj);
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        let rem = Self::from_coeffs(rem);
        if !rem.is_zero() {
            return Err(PolyError::NotDivisible { remainder: rem });
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Quotient and remainder of division by a monic polynomial of positive
    /// degree; both have integer coefficients.
    pub fn div_rem_monic(&self, modulus: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial), PolyError> {
        if !modulus.is_monic() || modulus.len() < 2 {
            return Err(PolyError::NotMonic(modulus.clone()));
        }
        let dm = modulus.len() - 1;
        if self.len() <= dm {
            return Ok((Self::zero(), self.clone()));
        }
        let lower = sparse_terms(&modulus.coeffs[..dm]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dm];
        for k in (dm..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in &lower {
                sub_scaled(&mut rem[k - dm + j], &c, mj);
            }
            quot[k - dm] = c;
        }
        rem.truncate(dm);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem_monic(&self, modulus: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
        self.div_rem_monic(modulus).map(|(_, r)| r)
    }

    /// Reduction modulo `q^b - 1`: exponents are folded modulo `b`.
    pub fn fold_mod_q_pow_minus_one(&self, b: usize) -> IntPolynomial {
        assert!(b >= 1, "fold modulus must be positive");
        if self.len() <= b {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); b];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[k % b] += c;
            }
        }
        Self::from_coeffs(out)
    }

    /// Canonical residue modulo the `b`-th cyclotomic polynomial.
    ///
    /// Folds modulo `q^b - 1` first (which `phi_b` divides), so the long
    /// division only ever sees a polynomial of degree below `b`.
    pub fn rem_cyclotomic(&self, b: u64) -> IntPolynomial {
        if b == 1 {
            return Self::constant(self.eval_at_one());
        }
        let folded = self.fold_mod_q_pow_minus_one(b as usize);
        folded
            .rem_monic(&cyclotomic(b))
            .expect("cyclotomic polynomials are monic")
    }

    /// In-place multiplication by `1 - q^i`.
    pub(crate) fn mul_one_minus_q_pow_assign(&mut self, i: usize) {
        assert!(i >= 1);
        if self.is_zero() {
            return;
        }
        let len = self.coeffs.len();
        self.coeffs.resize(len + i, BigInt::zero());
        for k in (i..len + i).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] -= &lo[k - i];
        }
        self.normalize();
    }

    /// In-place exact division by `1 - q^i`. On failure the polynomial is
    /// left unspecified and the remainder modulo `1 - q^i` is returned.
    pub(crate) fn div_one_minus_q_pow_assign(&mut self, i: usize) -> Result<(), PolyError> {
        assert!(i >= 1);
        if self.is_zero() {
            return Ok(());
        }
        let len = self.coeffs.len();
        if len <= i {
            return Err(PolyError::NotDivisible {
                remainder: self.clone(),
            });
        }
        for k in i..len {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] += &lo[k - i];
        }
        // The running sums past the quotient's degree are exactly the
        // residues modulo q^i - 1.
        if self.coeffs[len - i..].iter().any(|c| !c.is_zero()) {
            let mut rem = vec![BigInt::zero(); i];
            for k in len - i..len {
                rem[k % i] = self.coeffs[k].clone();
            }
            return Err(PolyError::NotDivisible {
                remainder: Self::from_coeffs(rem),
            });
        }
        self.coeffs.truncate(len - i);
        self.normalize();
        Ok(())
    }

    /// Renders with the given variable name, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => {
                    if show_mag {
                        out.push('*');
                    }
                    out.push_str(var);
                }
                _ => {
                    if show_mag {
                        out.push('*');
                    }
                    out.push_str(&format!("{var}^{k}"));
                }
            }
        }
        out
    }
}

/// Nonzero `(index, coefficient)` pairs of a coefficient slice.
fn sparse_terms(coeffs: &[BigInt]) -> Vec<(usize, &BigInt)> {
    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// `target -= c * m`, skipping the multiplication for unit `m`.
fn sub_scaled(target: &mut BigInt, c: &BigInt, m: &BigInt) {
    if m.is_one() {
        *target -= c;
    } else if (-m).is_one() {
        *target += c;
    } else {
        *target -= c * m;
    }
}

// ---------------------------------------------------------------------------
// Multiplication

/// Below this many nonzero terms on the sparser side, schoolbook wins.
const KRONECKER_THRESHOLD: usize = 24;

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let nnz_a = a.iter().filter(|c| !c.is_zero()).count();
    let nnz_b = b.iter().filter(|c| !c.is_zero()).count();
    if nnz_a.min(nnz_b) < KRONECKER_THRESHOLD {
        mul_schoolbook(a, b)
    } else {
        mul_kronecker(a, b)
    }
}

pub(crate) fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    let sb = sparse_terms(b);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for &(j, bj) in &sb {
            if bj.is_one() {
                out[i + j] += ai;
            } else {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Kronecker substitution: evaluate both operands at `2^slot`, multiply the
/// two big integers, and read the product back in base `2^slot`. `slot` is
/// wide enough that every product coefficient fits with a sign bit to spare,
/// so the result is bit-identical to schoolbook convolution.
pub(crate) fn mul_kronecker(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let bits_a = a.iter().map(|c| c.bits()).max().unwrap_or(0) as usize;
    let bits_b = b.iter().map(|c| c.bits()).max().unwrap_or(0) as usize;
    let terms = a.len().min(b.len());
    let term_bits = (usize::BITS - terms.leading_zeros()) as usize;
    let slot = bits_a + bits_b + term_bits + 2;
    let out_len = a.len() + b.len() - 1;

    let product = pack_signed(a, slot) * pack_signed(b, slot);
    // Adding 2^(slot-1) to every digit makes all digits nonnegative without
    // carries, since |c_k| < 2^(slot-1).
    let half = BigUint::one() << (slot - 1);
    let bias = pack_unsigned(std::iter::repeat_n(&half, out_len), slot, out_len);
    let biased = (product + BigInt::from(bias))
        .to_biguint()
        .expect("biased Kronecker product is nonnegative");
    let words = biased.to_u64_digits();
    let half = BigInt::from(half);
    (0..out_len)
        .map(|k| BigInt::from(read_bits(&words, k * slot, slot)) - &half)
        .collect()
}

fn pack_signed(coeffs: &[BigInt], slot: usize) -> BigInt {
    let pos: Vec<BigUint> = coeffs
        .iter()
        .map(|c| {
            if c.sign() == Sign::Plus {
                c.magnitude().clone()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let neg: Vec<BigUint> = coeffs
        .iter()
        .map(|c| {
            if c.sign() == Sign::Minus {
                c.magnitude().clone()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let n = coeffs.len();
    BigInt::from(pack_unsigned(pos.iter(), slot, n)) - BigInt::from(pack_unsigned(neg.iter(), slot, n))
}

fn pack_unsigned<'a>(values: impl Iterator<Item = &'a BigUint>, slot: usize, n: usize) -> BigUint {
    let total_bits = n * slot;
    let mut words = vec![0u64; total_bits / 64 + 2];
    for (k, v) in values.enumerate() {
        if v.is_zero() {
            continue;
        }
        let offset = k * slot;
        let (w, sh) = (offset / 64, offset % 64);
        for (i, d) in v.to_u64_digits().into_iter().enumerate() {
            words[w + i] |= d << sh;
            if sh > 0 {
                words[w + i + 1] |= d >> (64 - sh);
            }
        }
    }
    biguint_from_u64_words(&words)
}

fn read_bits(words: &[u64], offset: usize, len: usize) -> BigUint {
    let (w, sh) = (offset / 64, offset % 64);
    let get = |i: usize| words.get(i).copied().unwrap_or(0);
    let n_words = len.div_ceil(64);
    let mut out = Vec::with_capacity(n_words);
    for j in 0..n_words {
        let mut word = get(w + j) >> sh;
        if sh > 0 {
            word |= get(w + j + 1) << (64 - sh);
        }
        out.push(word);
    }
    let rem = len % 64;
    if rem != 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
    biguint_from_u64_words(&out)
}

fn biguint_from_u64_words(words: &[u64]) -> BigUint {
    let mut digits = Vec::with_capacity(words.len() * 2);
    for &w in words {
        digits.push(w as u32);
        digits.push((w >> 32) as u32);
    }
    BigUint::new(digits)
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

type CyclotomicCache = RwLock<HashMap<u64, Arc<IntPolynomial>>>;

fn cyclotomic_cache() -> &'static CyclotomicCache {
    static CACHE: OnceLock<CyclotomicCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `b`-th cyclotomic polynomial, obtained by dividing `q^b - 1` exactly
/// by `phi_d` for every proper divisor `d` of `b`. Results are memoized.
///
/// Panics if `b == 0`.
pub fn cyclotomic(b: u64) -> Arc<IntPolynomial> {
    assert!(b >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().read().expect("cache poisoned").get(&b) {
        return Arc::clone(p);
    }
    let mut p = IntPolynomial::monomial(1, b as usize) - IntPolynomial::one();
    for d in numbers::divisors(b) {
        if d == b {
            continue;
        }
        p = p
            .divide_exact(&cyclotomic(d))
            .expect("phi_d divides q^b - 1 for every d | b");
    }
    let mut cache = cyclotomic_cache().write().expect("cache poisoned");
    Arc::clone(cache.entry(b).or_insert_with(|| Arc::new(p)))
}

// ---------------------------------------------------------------------------
// Operators

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("q"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl From<BigInt> for IntPolynomial {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl SubAssign<&IntPolynomial> for IntPolynomial {
    fn sub_assign(&mut self, rhs: &IntPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(mut self, rhs: IntPolynomial) -> IntPolynomial {
        self += &rhs;
        self
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(mut self, rhs: IntPolynomial) -> IntPolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(mut self) -> IntPolynomial {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::from_coeffs(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

// Coefficients travel as decimal strings so that no JSON consumer ever
// rounds them.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        let p = IntPolynomial { coeffs };
        if p.coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(de::Error::custom("trailing zero coefficient"));
        }
        Ok(p)
    }
}
