mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qlucas::congruence::{
    apery_polynomials, verify_apery_multi, verify_plucas_at_one, verify_ratio_congruence, AperyFamily,
};
use qlucas::grid::GridRegion;
use qlucas::intpoly::{cyclotomic, IntPolynomial};
use qlucas::landau::{check_landau, enumerate_cells, CellSignature};
use qlucas::numbers::binomial;
use qlucas::qcombinatorics::{q_binomial, q_ratio, q_ratio_cyclotomic, RatioSpec};
use qlucas::relations::{find_relations, from_integers, verify_relation};
use qlucas::series::{
    build_f, central_binomial_powers, central_binomial_series, factorial_series, specialize, verify_definition_ld,
};

type Check = Result<String, String>;

type Criterion = (&'static str, &'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn totient_oracle(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Some(p)` when `n = p^k` with `k >= 1`, by trial division.
fn prime_power_oracle(n: u64) -> Option<u64> {
    let p = (2..=n).find(|&d| n.is_multiple_of(d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn ac1() -> Check {
    let mut checked = 0;
    for b in 1..=200u64 {
        let product = (1..=b)
            .filter(|d| b % d == 0)
            .fold(IntPolynomial::one(), |acc, d| &acc * &*cyclotomic(d));
        let target = &IntPolynomial::monomial(1, b as usize) - &IntPolynomial::one();
        ensure(product == target, || format!("prod phi_d != q^{b} - 1"))?;
        let phi = cyclotomic(b);
        ensure(phi.len() as u64 - 1 == totient_oracle(b), || {
            format!("deg phi_{b} is not phi({b})")
        })?;
        let expected = match (b, prime_power_oracle(b)) {
            (1, _) => BigInt::zero(),
            (_, Some(p)) => BigInt::from(p),
            (_, None) => BigInt::one(),
        };
        ensure(phi.eval_at_one() == expected, || {
            format!("phi_{b}(1) = {}", phi.eval_at_one())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} moduli"))
}

fn compare_paths(spec: &RatioSpec, region: &GridRegion) -> Result<usize, String> {
    let points = region.points();
    points.par_iter().try_for_each(|n| {
        let a = q_ratio(spec, n).map_err(|e| format!("{spec:?} at {n:?}: {e}"))?;
        let b = q_ratio_cyclotomic(spec, n).map_err(|e| format!("{spec:?} at {n:?}: {e}"))?;
        ensure(a == b, || format!("{spec:?}: paths differ at {n:?}"))
    })?;
    Ok(points.len())
}

fn ac2() -> Check {
    let mut total = compare_paths(&RatioSpec::central_binomial(), &GridRegion::Box(vec![50]))?;
    total += compare_paths(&RatioSpec::apery(), &GridRegion::cube(2, 12))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut specs: Vec<RatioSpec> = Vec::new();
    while specs.len() < 20 {
        let dim = rng.gen_range(1..=2);
        let spec = common::random_balanced_spec(&mut rng, dim);
        if !specs.contains(&spec) && check_landau(&spec).unwrap().integrality {
            specs.push(spec);
        }
    }
    for spec in &specs {
        total += compare_paths(spec, &GridRegion::cube(spec.dim(), 8))?;
    }
    Ok(format!("{total} points over {} specs", specs.len() + 2))
}

fn ac3() -> Check {
    let (b_max, n_max) = (20u64, 8u64);
    let top = b_max - 1 + n_max * b_max;
    let central: Vec<IntPolynomial> = (0..=top).into_par_iter().map(|k| q_binomial(2 * k, k)).collect();
    let checked: usize = (1..=b_max)
        .into_par_iter()
        .map(|b| -> Result<usize, String> {
            let phi = cyclotomic(b);
            let mut count = 0;
            for r in 1..=3u32 {
                for m in 0..b {
                    let base = central[m as usize].rem_cyclotomic(b).pow(r);
                    for n in 0..=n_max {
                        let lhs = central[(m + n * b) as usize]
                            .rem_cyclotomic(b)
                            .pow(r)
                            .rem_monic(&phi)
                            .unwrap();
                        let rhs = base.scale(&binomial(2 * n, n).pow(r)).rem_monic(&phi).unwrap();
                        ensure(lhs == rhs, || format!("r = {r}, b = {b}, m = {m}, n = {n}"))?;
                        count += 1;
                    }
                }
            }
            Ok(count)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    Ok(format!("{checked} congruences"))
}

fn ac4() -> Check {
    let mut specs = vec![RatioSpec::apery()];
    specs.extend(common::landau_specs(4, 10, 2..=2));
    let mut checked = 0;
    for spec in &specs {
        let report = verify_ratio_congruence(spec, 10, &[5, 5]).map_err(|e| format!("{spec:?}: {e}"))?;
        ensure(report.passed(), || format!("{spec:?}: {:?}", report.failures.first()))?;
        checked += report.checked;
    }
    Ok(format!("{checked} congruences over {} specs", specs.len()))
}

/// `sum_k q^{t k} [n, k]^2 [n + k, k]^s` from product-formula q-binomials.
fn apery_oracle(family: AperyFamily, t: u64, n: u64) -> IntPolynomial {
    let s = match family {
        AperyFamily::A => 1,
        AperyFamily::B => 2,
    };
    (0..=n).fold(IntPolynomial::zero(), |acc, k| {
        let term = &q_binomial(n, k).pow(2) * &q_binomial(n + k, k).pow(s);
        &acc + &term.shift((t * k) as usize)
    })
}

fn ac5() -> Check {
    let mut checked = 0;
    let mut coefficients = 0;
    for family in [AperyFamily::A, AperyFamily::B] {
        for report in verify_apery_multi(family, &[0, 1, 2], 12, 48) {
            ensure(report.passed(), || {
                format!("{}: {:?}", report.subject, report.failures.first())
            })?;
            checked += report.checked;
        }
        let spec = match family {
            AperyFamily::A => RatioSpec::apery(),
            AperyFamily::B => RatioSpec::apery_second(),
        };
        let f = build_f(&spec, &GridRegion::Simplex { dim: 2, total: 30 }).map_err(|e| e.to_string())?;
        for t in 0..=2 {
            let s = specialize(&f, &[t, 0], &[1, 1], 30).map_err(|e| e.to_string())?;
            let seq = apery_polynomials(family, t, 30);
            for n in 0..=30u64 {
                let oracle = apery_oracle(family, t, n);
                ensure(seq[n as usize] == oracle, || {
                    format!("{} t = {t}: a_{n} differs from the sum", family.name())
                })?;
                ensure(s.coeff(&[n]).as_ref() == Some(&oracle), || {
                    format!("{} t = {t}: [x^{n}] of the specialization differs", family.name())
                })?;
                coefficients += 1;
            }
        }
    }
    Ok(format!("{checked} congruences, {coefficients} series coefficients"))
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Floors of `t.x` for every vector of the spec, `x = nums / den`.
fn floors_oracle(spec: &RatioSpec, nums: &[u64], den: u64) -> Vec<i64> {
    spec.vectors()
        .map(|t| (t.iter().zip(nums).map(|(a, b)| a * b).sum::<u64>() / den) as i64)
        .collect()
}

fn spot_check(spec: &RatioSpec, cells: &[CellSignature], rng: &mut ChaCha8Rng, points: usize) -> Result<(), String> {
    let ne = spec.e().len();
    for _ in 0..points {
        let den = rng.gen_range(1..=997u64);
        let nums: Vec<u64> = (0..spec.dim()).map(|_| rng.gen_range(0..den)).collect();
        let floors = floors_oracle(spec, &nums, den);
        let delta = floors[..ne].iter().sum::<i64>() - floors[ne..].iter().sum::<i64>();
        let in_d = floors.iter().any(|&f| f >= 1);
        let cell = cells
            .iter()
            .find(|c| c.floors == floors)
            .ok_or_else(|| format!("{spec:?}: no cell for {nums:?}/{den}"))?;
        ensure(cell.delta == delta && cell.in_domain_d == in_d, || {
            format!("{spec:?}: cell value disagrees at {nums:?}/{den}")
        })?;
    }
    Ok(())
}

fn ac6() -> Check {
    let apery = RatioSpec::apery();
    let central = RatioSpec::central_binomial();
    let inverse = RatioSpec::new(1, vec![vec![1], vec![1]], vec![vec![2]]).unwrap();
    for spec in [&apery, &central] {
        let r = check_landau(spec).map_err(|e| e.to_string())?;
        ensure(r.criterion_d && r.integrality, || format!("{spec:?} not certified"))?;
    }
    let r = check_landau(&inverse).map_err(|e| e.to_string())?;
    ensure(!r.integrality, || "e = ((1), (1)), f = ((2)) reported integral".into())?;
    let witness = r
        .violating_cells
        .iter()
        .find(|c| c.delta < 0)
        .and_then(|c| c.witness.clone())
        .ok_or("no witness cell")?;
    let x = &witness.coords()[0];
    let value = (x * rat(1, 1)).floor() * rat(2, 1) - (x * rat(2, 1)).floor();
    ensure(value < BigRational::zero(), || {
        format!("Delta({x}) = {value} is not negative")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut specs = vec![apery, central, inverse, RatioSpec::apery_second()];
    specs.extend(common::integral_specs(60, 6, 1..=2));
    let per_spec = 10_000usize.div_ceil(specs.len());
    for spec in &specs {
        let cells = enumerate_cells(spec).map_err(|e| e.to_string())?;
        spot_check(spec, &cells, &mut rng, per_spec)?;
    }
    Ok(format!(
        "witness x = {x}, {} random points over {} specs",
        per_spec * specs.len(),
        specs.len()
    ))
}

fn ac7() -> Check {
    let mut checked = 0;
    for r in 1..=2u32 {
        let spec = RatioSpec::central_binomial_power(r as usize);
        let report = verify_plucas_at_one(&spec, 11, &[6]).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("r = {r}: {:?}", report.failures.first()))?;
        ensure(report.ranges.moduli == [2, 3, 5, 7, 11], || {
            format!("moduli {:?}", report.ranges.moduli)
        })?;
        for p in [2u64, 3, 5, 7, 11] {
            let modulus = BigInt::from(p);
            for m in 0..p {
                for n in 0..=6 {
                    let lhs = binomial(2 * (m + n * p), m + n * p).pow(r);
                    let rhs = (binomial(2 * m, m) * binomial(2 * n, n)).pow(r);
                    ensure((lhs - rhs).mod_floor(&modulus).is_zero(), || {
                        format!("oracle fails at p = {p}")
                    })?;
                }
            }
        }
        checked += report.checked;
    }
    Ok(format!("{checked} congruences"))
}

fn ac8() -> Check {
    for r in 1..=3 {
        let g = central_binomial_series(r, 40);
        for p in [2, 3, 5] {
            let v = verify_definition_ld(&g, p, 1).map_err(|e| e.to_string())?;
            ensure(v.holds, || format!("g_{r} fails at p = {p}, {:?}", v.witness))?;
        }
    }
    let v = verify_definition_ld(&factorial_series(40), 2, 1).map_err(|e| e.to_string())?;
    let witness = v.witness.ok_or("factorial series passed")?;
    Ok(format!("g_1, g_2, g_3 pass; n! fails at x^{}", witness[0]))
}

fn ac9() -> Check {
    let g = |r| from_integers(&central_binomial_powers(r, 240));
    let g1 = vec![g(1)];
    let search = find_relations(&g1, 1, 2, 30).map_err(|e| e.to_string())?;
    let expected = vec![
        (vec![1, 2], BigInt::from(4)),
        (vec![0, 2], BigInt::from(-1)),
        (vec![0, 0], BigInt::from(1)),
    ];
    ensure(
        search.candidates.len() == 1 && search.candidates[0].terms == expected,
        || {
            format!(
                "g1 candidates {:?}",
                search.candidates.iter().map(|c| c.to_text()).collect::<Vec<_>>()
            )
        },
    )?;
    for c in &search.candidates {
        ensure(verify_relation(c, &g1, 60).map_err(|e| e.to_string())?, || {
            "g1 relation fails at order 60".into()
        })?;
    }
    let pair = vec![g(2), g(3)];
    let search = find_relations(&pair, 4, 4, 120).map_err(|e| e.to_string())?;
    for c in &search.candidates {
        ensure(verify_relation(c, &pair, 240).map_err(|e| e.to_string())?, || {
            format!("{} fails at order 240", c.to_text())
        })?;
    }
    ensure(search.candidates.is_empty(), || {
        format!("{} candidates for g2, g3", search.candidates.len())
    })?;
    Ok(format!(
        "(1 - 4x) y^2 - 1 recovered; g2, g3: rank {} of {} unknowns",
        search.rank, search.unknowns
    ))
}

const DETERMINISM_COMMANDS: &[&[&str]] = &[
    &["cyclotomic", "200"],
    &["qratio", "--preset", "apery", "--n", "12,12"],
    &["check-landau", "--preset", "apery"],
    &["check-landau", "--preset", "central-binomial"],
    &[
        "verify-congruence",
        "--preset",
        "central-binomial:3",
        "--b-max",
        "20",
        "--n-box",
        "8",
    ],
    &[
        "verify-congruence",
        "--preset",
        "apery",
        "--b-max",
        "10",
        "--n-box",
        "5,5",
    ],
    &[
        "verify-apery",
        "--family",
        "b",
        "--t",
        "0,1,2",
        "--b-max",
        "12",
        "--n-max",
        "48",
    ],
    &[
        "verify-plucas",
        "--preset",
        "central-binomial:2",
        "--p-max",
        "11",
        "--n-box",
        "6",
    ],
    &[
        "verify-ld",
        "--series",
        "central-binomial:3",
        "--p",
        "2,3,5",
        "--order",
        "40",
    ],
    &["specialize", "--preset", "apery", "--t", "1,0", "--order", "30"],
    &["find-relations", "--series", "central:1", "--order", "30"],
];

fn ac10() -> Check {
    for args in DETERMINISM_COMMANDS {
        let run = |threads: &str| {
            Command::new(env!("CARGO_BIN_EXE_qlucas"))
                .args(*args)
                .args(["--json", "--threads", threads])
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run("1")?, run("4")?);
        ensure(a.status.success(), || format!("{args:?} exited with {}", a.status))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
            format!("{args:?} output differs between runs")
        })?;
    }
    Ok(format!("{} commands, 1 and 4 threads", DETERMINISM_COMMANDS.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "cyclotomic kernel", Duration::from_secs(10), ac1),
        ("AC2", "dual-path ratio identity", Duration::from_secs(60), ac2),
        ("AC3", "central binomial q-Lucas", Duration::from_secs(300), ac3),
        ("AC4", "ratio congruence sweep", Duration::from_secs(300), ac4),
        ("AC5", "q-Apery congruences", Duration::from_secs(600), ac5),
        ("AC6", "Landau decision", Duration::from_secs(30), ac6),
        ("AC7", "q = 1 Lucas collapse", Duration::from_secs(60), ac7),
        ("AC8", "p-Lucas series check", Duration::from_secs(60), ac8),
        ("AC9", "relation probe", Duration::from_secs(600), ac9),
        ("AC10", "determinism", Duration::from_secs(600), ac10),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= limit => format!(
                "PASS {id} {name}: {detail} ({:.2} s, limit {} s)",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
            Ok(detail) => format!(
                "FAIL {id} {name}: {detail}, but took {:.2} s, limit {} s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
            Err(why) => format!("FAIL {id} {name}: {why} ({:.2} s)", elapsed.as_secs_f64()),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
