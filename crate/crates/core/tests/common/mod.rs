#![allow(dead_code)]

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlucas::landau::check_landau;
use qlucas::qcombinatorics::RatioSpec;

/// Random balanced spec in dimension `dim`: the `f` vectors are split into
/// groups and each `e` vector is the sum of one group, so `Delta >= 0`.
pub fn random_balanced_spec(rng: &mut ChaCha8Rng, dim: usize) -> RatioSpec {
    loop {
        let count = rng.gen_range(2..=4);
        let f: Vec<Vec<u64>> = (0..count)
            .map(|_| loop {
                let v: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..=2)).collect();
                if v.iter().any(|&c| c > 0) {
                    break v;
                }
            })
            .collect();
        let groups = rng.gen_range(1..count);
        let mut e = vec![vec![0; dim]; groups];
        for (j, v) in f.iter().enumerate() {
            let g = if j < groups { j } else { rng.gen_range(0..groups) };
            for (a, b) in e[g].iter_mut().zip(v) {
                *a += b;
            }
        }
        if let Ok(spec) = RatioSpec::new(dim, e, f) {
            return spec;
        }
    }
}

/// `count` distinct random specs with dimension in `dims` that pass both
/// Landau criteria, from a fixed seed.
pub fn landau_specs(seed: u64, count: usize, dims: RangeInclusive<usize>) -> Vec<RatioSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<RatioSpec> = Vec::new();
    while out.len() < count {
        let dim = rng.gen_range(dims.clone());
        let spec = random_balanced_spec(&mut rng, dim);
        if !out.contains(&spec) && check_landau(&spec).unwrap().passes() {
            out.push(spec);
        }
    }
    out
}

/// `count` distinct random balanced specs, integral but not necessarily
/// satisfying the criterion on D.
pub fn integral_specs(seed: u64, count: usize, dims: RangeInclusive<usize>) -> Vec<RatioSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<RatioSpec> = Vec::new();
    while out.len() < count {
        let dim = rng.gen_range(dims.clone());
        let spec = random_balanced_spec(&mut rng, dim);
        if !out.contains(&spec) {
            out.push(spec);
        }
    }
    out
}
