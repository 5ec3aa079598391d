//! Exact integer linear algebra: fraction-free Gauss–Jordan elimination and
//! rank modulo word-sized primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Primes below `2^61` used for modular rank certificates.
pub const RANK_PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    1_152_921_504_606_846_883,
    576_460_752_303_423_433,
];

/// Rank of `rows` reduced modulo the prime `p`. Never exceeds the rank over
/// the rationals.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let modulus = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&modulus).to_u64().expect("residue below p"))
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in &mut m[rank][c..] {
            *x = mul(*x, inv);
        }
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = (*x + p - mul(factor, y)) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Result of fraction-free Gauss–Jordan elimination: every pivot row has the
/// common value `pivot` in its pivot column and zero in the other pivot
/// columns.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub rows: Vec<Vec<BigInt>>,
    pub pivot_cols: Vec<usize>,
    pub pivot: BigInt,
}

impl Reduced {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Fraction-free Gauss–Jordan elimination. Every intermediate entry is a
/// minor of the input, so each division by the previous pivot is exact.
/// Among candidate pivots the one with the fewest bits is chosen.
pub fn gauss_jordan(mut a: Vec<Vec<BigInt>>) -> Reduced {
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].bits())
        else {
            continue;
        };
        a.swap(r, piv);
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        let p = pivot_row[c].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let factor = row[c].clone();
            for k in 0..cols {
                if k == c {
                    continue;
                }
                let v = &p * &row[k] - &factor * &pivot_row[k];
                debug_assert!((&v % &prev).is_zero());
                row[k] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = p;
        pivot_cols.push(c);
        r += 1;
    }
    a.truncate(r);
    Reduced {
        rows: a,
        pivot_cols,
        pivot: prev,
    }
}

/// Integer basis of the right nullspace of `a`, one vector per non-pivot
/// column `f`: the vector has `pivot` at `f`, `-rows[i][f]` at pivot column
/// `i`, and zero elsewhere.
pub fn nullspace(a: Vec<Vec<BigInt>>) -> (usize, Vec<Vec<BigInt>>) {
    let cols = a.first().map_or(0, Vec::len);
    let red = gauss_jordan(a);
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !red.pivot_cols.contains(c)) {
        let mut v = vec![BigInt::zero(); cols];
        v[f] = red.pivot.clone();
        for (row, &pc) in red.rows.iter().zip(&red.pivot_cols) {
            v[pc] = -row[f].clone();
        }
        basis.push(v);
    }
    (red.rank(), basis)
}

/// Divides by the gcd of the entries; zero vectors are left as they are.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}
