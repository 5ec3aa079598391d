//! Searching for polynomial relations among truncated series.

use qlucas::relations::{find_relations, from_integers, verify_relation};
use qlucas::series::central_binomial_powers;

pub fn run() {
    let g1 = from_integers(&central_binomial_powers(1, 60));
    let search = find_relations(std::slice::from_ref(&g1), 1, 2, 30).unwrap();
    for c in &search.candidates {
        println!("g1 satisfies {} = 0", c.to_text());
        assert!(verify_relation(c, std::slice::from_ref(&g1), 60).unwrap());
    }

    let g2 = from_integers(&central_binomial_powers(2, 60));
    let g3 = from_integers(&central_binomial_powers(3, 60));
    let search = find_relations(&[g2, g3], 1, 2, 28).unwrap();
    println!(
        "g2, g3 with dx = 1, dy = 2: rank {} of {} unknowns, {} relations",
        search.rank,
        search.unknowns,
        search.candidates.len()
    );
}

#[allow(dead_code)]
fn main() {
    run();
}
