//! Text rendering for the command-line reports.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::congruence::{CongruenceFailure, CongruenceReport};
use crate::intpoly::IntPolynomial;
use crate::landau::{CellSignature, LandauReport, SpecializationReport};
use crate::qcombinatorics::RatioSpec;
use crate::relations::RelationSearch;
use crate::series::{Cofactor, LucasVerdict, SeriesEntry};

/// Polynomials with more nonzero terms than this are elided in text mode.
pub const MAX_TERMS: usize = 12;
const KEEP: usize = 5;

/// The polynomial in `q`, keeping the lowest and highest terms when it has
/// more than [`MAX_TERMS`] nonzero terms.
pub fn poly(p: &IntPolynomial) -> String {
    let nonzero: Vec<usize> = (0..p.len()).filter(|&k| p.coeff(k) != BigInt::from(0)).collect();
    if nonzero.len() <= MAX_TERMS {
        return p.to_string();
    }
    let pick = |ks: &[usize]| {
        let mut c = vec![BigInt::from(0); p.len()];
        for &k in ks {
            c[k] = p.coeff(k);
        }
        IntPolynomial::from_coeffs(c).to_string()
    };
    let head = pick(&nonzero[nonzero.len() - KEEP..]);
    let tail = pick(&nonzero[..KEEP]);
    let elided = nonzero.len() - 2 * KEEP;
    let tail = tail.strip_prefix('-').map_or(format!("+ {tail}"), |t| format!("- {t}"));
    format!("{head} + [... {elided} terms elided ...] {tail}")
}

/// Integers longer than 60 digits keep their first and last 25 digits.
pub fn int(v: &BigInt) -> String {
    let s = v.to_string();
    if s.len() <= 60 {
        return s;
    }
    format!("{}...[{} digits]...{}", &s[..25], s.len() - 50, &s[s.len() - 25..])
}

pub fn vector(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn spec(s: &RatioSpec) -> String {
    let side = |vs: &[Vec<u64>]| vs.iter().map(|v| vector(v)).collect::<Vec<_>>().join(" ");
    format!("d = {}, e = [{}], f = [{}]", s.dim(), side(s.e()), side(s.f()))
}

fn failure(f: &CongruenceFailure) -> String {
    format!(
        "  b = {}, a = {}, n = {}: {} != {}",
        f.b,
        vector(&f.a),
        vector(&f.n),
        poly(&f.lhs_residue),
        poly(&f.rhs_residue)
    )
}

/// Failures listed in text mode; JSON always carries all of them.
const MAX_FAILURES: usize = 20;

pub fn congruence(r: &CongruenceReport) -> String {
    let mut out = String::new();
    writeln!(out, "{}: {}", r.subject, r.statement).unwrap();
    if let Some(s) = &r.spec {
        writeln!(out, "spec: {}", spec(s)).unwrap();
    }
    let moduli = &r.ranges.moduli;
    match (moduli.first(), moduli.last()) {
        (Some(lo), Some(hi)) if moduli.len() > 1 => writeln!(out, "moduli: {} values in {lo}..={hi}", moduli.len()),
        _ => writeln!(out, "moduli: {moduli:?}"),
    }
    .unwrap();
    if let Some(b) = &r.ranges.n_box {
        writeln!(out, "n <= {}", vector(b)).unwrap();
    }
    if let Some(m) = r.ranges.index_max {
        writeln!(out, "index <= {m}").unwrap();
    }
    writeln!(out, "checked: {}", r.checked).unwrap();
    writeln!(out, "failures: {}", r.failures.len()).unwrap();
    for f in r.failures.iter().take(MAX_FAILURES) {
        writeln!(out, "{}", failure(f)).unwrap();
    }
    if r.failures.len() > MAX_FAILURES {
        writeln!(out, "  [... {} more]", r.failures.len() - MAX_FAILURES).unwrap();
    }
    out
}

fn cell(c: &CellSignature) -> String {
    let w = c.witness.as_ref().map_or("-".to_string(), |w| w.to_string());
    format!(
        "  floors {:?}, Delta = {}, in D: {}, witness {w}",
        c.floors, c.delta, c.in_domain_d
    )
}

pub fn landau(r: &LandauReport) -> String {
    let mut out = String::new();
    writeln!(out, "spec: {}", spec(&r.spec)).unwrap();
    writeln!(out, "cells: {}", r.cell_count).unwrap();
    writeln!(out, "balanced: {} (|e| - |f| = {:?})", r.balanced, r.excess).unwrap();
    writeln!(out, "integrality: {}", r.integrality).unwrap();
    writeln!(out, "criterion_D: {}", r.criterion_d).unwrap();
    writeln!(out, "min Delta on [0,1)^d: {}", r.min_value_overall).unwrap();
    match r.min_value_on_d {
        Some(m) => writeln!(out, "min Delta on D: {m}"),
        None => writeln!(out, "min Delta on D: (D is empty)"),
    }
    .unwrap();
    if !r.violating_cells.is_empty() {
        writeln!(out, "violating cells:").unwrap();
        for c in &r.violating_cells {
            writeln!(out, "{}", cell(c)).unwrap();
        }
    }
    out
}

pub fn specialization(r: &SpecializationReport) -> String {
    let mut out = String::new();
    let min = r
        .min_value
        .map_or("(no x with m.x >= 1)".to_string(), |m| m.to_string());
    writeln!(
        out,
        "m = {}: m.x >= 1 implies Delta >= 1: {} (min {min})",
        vector(&r.m),
        r.holds
    )
    .unwrap();
    for c in &r.violating_cells {
        writeln!(out, "{}", cell(c)).unwrap();
    }
    out
}

pub fn series(entries: &[SeriesEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        writeln!(out, "{}: {}", vector(&e.exponents), poly(&e.coeff)).unwrap();
    }
    out
}

pub fn cofactor(c: &Cofactor) -> String {
    let mut out = String::new();
    writeln!(out, "B(q; x) mod phi_{}:", c.b).unwrap();
    for (m, r) in c.cofactor.iter().enumerate() {
        writeln!(out, "  x^{m}: {}", poly(r)).unwrap();
    }
    out.push_str(&congruence(&c.report));
    out
}

pub fn lucas(v: &LucasVerdict) -> String {
    let mut out = String::new();
    let what = if v.holds { "holds" } else { "fails" };
    writeln!(
        out,
        "p = {}, k = {}: congruence {what} on {:?}",
        v.p, v.k, v.verified_on
    )
    .unwrap();
    let terms: Vec<String> = v.a.iter().map(|(a, c)| monomial(*c, a)).collect();
    writeln!(
        out,
        "  A mod p = {}",
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    )
    .unwrap();
    if let Some(w) = &v.witness {
        writeln!(out, "  first failure at {} ({} failures)", vector(w), v.failures).unwrap();
    }
    out
}

/// `c*x1^a1*x2^a2` with unit factors dropped; `x` alone in one variable.
fn monomial(c: u64, a: &[u64]) -> String {
    let mut factors: Vec<String> = Vec::new();
    for (i, &e) in a.iter().enumerate() {
        let x = if a.len() == 1 {
            "x".to_string()
        } else {
            format!("x{}", i + 1)
        };
        match e {
            0 => {}
            1 => factors.push(x),
            _ => factors.push(format!("{x}^{e}")),
        }
    }
    if factors.is_empty() {
        return c.to_string();
    }
    if c != 1 {
        factors.insert(0, c.to_string());
    }
    factors.join("*")
}

pub fn relations(r: &RelationSearch) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{} series, dx = {}, dy = {}, order = {}: {} unknowns, {} equations, rank {}",
        r.series_count, r.dx, r.dy, r.order, r.unknowns, r.equations, r.rank
    )
    .unwrap();
    if r.candidates.is_empty() {
        writeln!(
            out,
            "no relation up to (dx, dy, order) = ({}, {}, {})",
            r.dx, r.dy, r.order
        )
        .unwrap();
    }
    for c in &r.candidates {
        let note = match c.stable_at_double_order {
            Some(true) => "stable at double order",
            Some(false) => "truncation artifact",
            None => "not rechecked",
        };
        writeln!(out, "  {} = 0 ({note})", c.to_text()).unwrap();
    }
    out
}
