//! Finite sweeps of the q-Lucas congruence for factorial ratios.

use qlucas::congruence::{verify_inter2_identity, verify_plucas_at_one, verify_ratio_congruence};
use qlucas::qcombinatorics::RatioSpec;

pub fn run() {
    let apery = RatioSpec::apery();
    let report = verify_ratio_congruence(&apery, 6, &[3, 3]).unwrap();
    println!(
        "{}: {} checks, {} failures",
        report.statement,
        report.checked,
        report.failures.len()
    );
    assert!(report.passed());

    let report = verify_inter2_identity(&apery, 4, &[3, 3]).unwrap();
    println!(
        "{}: {} checks, {} failures",
        report.statement,
        report.checked,
        report.failures.len()
    );

    let report = verify_plucas_at_one(&RatioSpec::central_binomial_power(2), 11, &[6]).unwrap();
    println!(
        "{}: {} checks, {} failures",
        report.statement,
        report.checked,
        report.failures.len()
    );

    // qbinom(4n, 2n) is integral but has Delta = 0 on part of D
    let spec = RatioSpec::new(1, vec![vec![4]], vec![vec![2], vec![2]]).unwrap();
    match verify_ratio_congruence(&spec, 4, &[2]) {
        Ok(r) => println!("unexpected report with {} failures", r.failures.len()),
        Err(e) => println!("qbinom(4n, 2n): {e}"),
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
