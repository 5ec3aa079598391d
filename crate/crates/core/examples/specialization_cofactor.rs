//! Specializing the generating series and extracting the cofactor B(q; x).

use num_bigint::BigInt;
use qlucas::congruence::{apery_at_one, AperyFamily};
use qlucas::grid::GridRegion;
use qlucas::qcombinatorics::RatioSpec;
use qlucas::series::{build_f, extract_cofactor, specialize};

pub fn run() {
    let order = 24;
    let f = build_f(&RatioSpec::apery(), &GridRegion::Simplex { dim: 2, total: order }).unwrap();
    println!(
        "F(q; x1, x2) known on {:?} with {} nonzero terms",
        f.region(),
        f.terms().count()
    );

    // F(q; q x, x) is the generating series of the q-Apery numbers with t = 1
    let fq = specialize(&f, &[1, 0], &[1, 1], order).unwrap();
    let g: Vec<BigInt> = apery_at_one(AperyFamily::A, order);
    for b in 2..=4 {
        let c = extract_cofactor(&fq, &g, b, order).unwrap();
        assert!(c.report.passed());
        let parts: Vec<String> = c.cofactor.iter().map(ToString::to_string).collect();
        println!("b = {b}: B = [{}], {} checks", parts.join(", "), c.report.checked);
    }
}

#[allow(dead_code)]
fn main() {
    run();
}
