//! q-factorial ratios by exact division and by cyclotomic counting.

use qlucas::qcombinatorics::{cyclotomic_exponents, q_ratio, q_ratio_cyclotomic, ratio_at_one, RatioSpec};

pub fn run() {
    let apery = RatioSpec::apery();
    let n = [3, 2];
    let by_division = q_ratio(&apery, &n).expect("integral spec");
    let by_counting = q_ratio_cyclotomic(&apery, &n).expect("integral spec");
    assert_eq!(by_division, by_counting);
    println!(
        "Apery Q(q; (3, 2)) has degree {}",
        by_division.degree().finite().unwrap_or(0)
    );
    println!("value at q = 1: {}", ratio_at_one(&apery, &n).unwrap());
    println!("phi_b exponents: {:?}", cyclotomic_exponents(&apery, &n));

    // e = ((1), (1)), f = ((2)) is 1 / binom(2n, n): not a polynomial
    let inverse = RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap();
    match q_ratio_cyclotomic(&inverse, &[1]) {
        Ok(p) => println!("unexpected polynomial {p}"),
        Err(e) => println!("inverse central binomial: {e}"),
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
