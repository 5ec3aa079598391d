//! Exact decision of the Landau criteria by cell enumeration.

use qlucas::landau::{check_landau, check_specialization, enumerate_cells};
use qlucas::qcombinatorics::RatioSpec;

pub fn run() {
    let apery = RatioSpec::apery();
    for cell in enumerate_cells(&apery).unwrap() {
        let witness = cell.witness.map(|w| w.to_string()).unwrap_or_default();
        println!(
            "floors {:?}  Delta = {}  in D: {}  at {witness}",
            cell.floors, cell.delta, cell.in_domain_d
        );
    }
    let report = check_landau(&apery).unwrap();
    println!(
        "Apery: integrality {}, criterion on D {}",
        report.integrality, report.criterion_d
    );
    let diagonal = check_specialization(&apery, &[1, 1]).unwrap();
    println!("m = (1, 1): Delta >= 1 wherever x1 + x2 >= 1: {}", diagonal.holds);

    // 30n! n! / (15n)! (10n)! (6n)! is integral but Delta vanishes inside D
    let chebyshev = RatioSpec::new(1, vec![vec![30], vec![1]], vec![vec![15], vec![10], vec![6]]).unwrap();
    let report = check_landau(&chebyshev).unwrap();
    assert!(report.integrality && !report.criterion_d);
    println!(
        "Chebyshev: {} cells, {} violate the criterion on D",
        report.cell_count,
        report.violating_cells.len()
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
