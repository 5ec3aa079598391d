//! The p-Lucas functional congruence g(x) = A(x) g(x^p) mod p.

use qlucas::grid::GridRegion;
use qlucas::qcombinatorics::RatioSpec;
use qlucas::series::{build_f, central_binomial_series, factorial_series, verify_definition_ld};

pub fn run() {
    for r in 1..=3 {
        let g = central_binomial_series(r, 40);
        for p in [2, 3, 5] {
            let v = verify_definition_ld(&g, p, 1).unwrap();
            assert!(v.holds);
            println!("binom(2n, n)^{r}, p = {p}: A mod p has coefficients {:?}", v.a);
        }
    }

    let two_vars = build_f(&RatioSpec::apery(), &GridRegion::cube(2, 10)).unwrap().at_one();
    println!(
        "Apery F(1; x1, x2), p = 3: {}",
        verify_definition_ld(&two_vars, 3, 1).unwrap().holds
    );

    let v = verify_definition_ld(&factorial_series(40), 2, 1).unwrap();
    println!("n!, p = 2: holds {}, first failure at {:?}", v.holds, v.witness);
}

#[allow(dead_code)]
fn main() {
    run();
}
