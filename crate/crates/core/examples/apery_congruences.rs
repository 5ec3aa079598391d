//! q-analogs of the Apery numbers and their congruences modulo phi_b.

use qlucas::congruence::{apery_at_one, apery_polynomials, verify_apery, AperyFamily};

pub fn run() {
    println!("a_n(1): {:?}", apery_at_one(AperyFamily::A, 6));
    println!("b_n(1): {:?}", apery_at_one(AperyFamily::B, 6));
    let a = apery_polynomials(AperyFamily::A, 1, 3);
    println!("a_2(q) with t = 1: {}", a[2]);

    for family in [AperyFamily::A, AperyFamily::B] {
        for t in 0..=2 {
            let report = verify_apery(family, t, 8, 24);
            assert!(report.passed());
            println!("{}: {} checks, no failures", report.subject, report.checked);
        }
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
