//! Gaussian binomials and the q-Lucas property of the central ones.

use qlucas::congruence::congruent_mod_cyclotomic;
use qlucas::numbers::binomial;
use qlucas::qcombinatorics::{q_binomial, q_factorial};

pub fn run() {
    println!("[4 choose 2]_q = {}", q_binomial(4, 2));
    println!("[4]_q! = {}", q_factorial(4));

    // [2(m + n b) choose m + n b]_q = [2m choose m]_q binom(2n, n) mod phi_b
    let (b, m, n) = (5, 2, 3);
    let lhs = q_binomial(2 * (m + n * b), m + n * b);
    let rhs = q_binomial(2 * m, m).scale(&binomial(2 * n, n));
    assert!(congruent_mod_cyclotomic(&lhs, &rhs, b));
    println!(
        "[34 choose 17]_q has degree {} and matches [4 choose 2]_q * {} mod phi_5: {}",
        lhs.degree().finite().unwrap_or(0),
        binomial(2 * n, n),
        lhs.rem_cyclotomic(b)
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
