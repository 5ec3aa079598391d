//! Cyclotomic polynomials, their values at 1 and reduction modulo them.

use qlucas::intpoly::{cyclotomic, IntPolynomial};
use qlucas::numbers::divisors;

pub fn run() {
    for b in [1, 2, 6, 12, 15] {
        let phi = cyclotomic(b);
        println!("phi_{b} = {phi}    phi_{b}(1) = {}", phi.eval_at_one());
    }

    // q^12 - 1 is the product of phi_d over the divisors of 12
    let product = divisors(12)
        .into_iter()
        .fold(IntPolynomial::one(), |acc, d| &acc * &*cyclotomic(d));
    assert_eq!(product, &IntPolynomial::monomial(1, 12) - &IntPolynomial::one());
    println!("prod_(d | 12) phi_d = {product}");

    // (1 + q)^5 mod phi_3: q^2 = -q - 1
    let p = IntPolynomial::from_i64s(&[1, 1]).pow(5);
    println!("(1 + q)^5 mod phi_3 = {}", p.rem_cyclotomic(3));
}

#[allow(dead_code)]
fn main() {
    run();
}
