//! Seeded property suites. Each suite returns a [`SuiteReport`] whose JSON
//! form depends only on the configuration, so identical runs print
//! identical output.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::braided::{bracket, jacobi_residual, leibniz_residual, BraidedElement, MultiDegree, Word};
use crate::diagram::{CartanFamily, CartanPreset, DiagramError, GeneralizedDynkinDiagram};
use crate::engine::{power_derive_formula, skew_derive, EngineError, NicholsEngine};
use crate::roots::{certify_closed_form, closed_form_presets, RootError, RootSystemData};
use crate::scalars::{Cyclotomic, RootOfUnity};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

pub const SUITES: &[&str] = &[
    "braided-identities",
    "nonvanishing",
    "disconnected-brackets",
    "membership",
    "basis-theorem",
    "hilbert-total",
    "power-derive",
    "separated-products",
    "rank2",
    "oracle-vs-recursion",
    "engine",
    "closed-forms",
    "dim-b-leading",
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Orders `N` to sweep, where a suite takes them.
    pub orders: Option<Vec<u32>>,
    pub max_rank: usize,
    pub preset: Option<CartanPreset>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            orders: None,
            max_rank: 6,
            preset: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: usize,
    pub seed: u64,
    pub failures: Vec<String>,
    pub details: Value,
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self, suite: &str, seed: u64, details: Value) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            passed: self.failures.is_empty() && self.cases > 0,
            cases: self.cases,
            seed,
            failures: self.failures,
            details,
        }
    }
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    match name {
        "braided-identities" => braided_identities(config),
        "nonvanishing" => nonvanishing(config),
        "disconnected-brackets" => disconnected_brackets(config),
        "membership" => membership(config),
        "basis-theorem" => basis_theorem(config),
        "hilbert-total" => hilbert_total(config),
        "power-derive" => power_derive(config),
        "separated-products" => separated_products(config),
        "rank2" => rank2(config),
        "oracle-vs-recursion" => oracle_vs_recursion(config),
        "engine" => engine_suite(config),
        "closed-forms" => closed_forms(config),
        "dim-b-leading" => dim_b_leading(config),
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

fn preset(s: &str) -> CartanPreset {
    s.parse().expect("built-in preset name")
}

fn preset_engine(p: &str, order: u32) -> Result<(RootSystemData, NicholsEngine), SuiteError> {
    let data = RootSystemData::new(preset(p), order)?;
    let engine = data.engine();
    Ok((data, engine))
}

fn random_word(rng: &mut ChaCha8Rng, degree: &MultiDegree) -> Word {
    let mut letters: Vec<usize> = degree
        .0
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat(i).take(c as usize))
        .collect();
    letters.shuffle(rng);
    Word::from_letters(letters)
}

fn random_scalar(rng: &mut ChaCha8Rng, modulus: u32) -> Cyclotomic {
    let root = RootOfUnity::new(rng.gen_range(0..modulus as i64), modulus).expect("positive modulus");
    Cyclotomic::from_root(root) * Cyclotomic::from_integer(modulus, rng.gen_range(1..=3))
}

/// A combination of up to three random words of the given degree.
fn random_element(rng: &mut ChaCha8Rng, rank: usize, modulus: u32, degree: &MultiDegree) -> BraidedElement {
    let count = rng.gen_range(1..=3);
    let terms: Vec<(Word, Cyclotomic)> = (0..count)
        .map(|_| (random_word(rng, degree), random_scalar(rng, modulus)))
        .collect();
    BraidedElement::from_terms(rank, modulus, terms)
}

fn random_degree(rng: &mut ChaCha8Rng, rank: usize, total: u32) -> MultiDegree {
    let mut d = MultiDegree::zero(rank);
    for _ in 0..total {
        d.0[rng.gen_range(0..rank)] += 1;
    }
    d
}

fn random_diagram(rng: &mut ChaCha8Rng) -> GeneralizedDynkinDiagram {
    let modulus = *[3u32, 4, 5, 6, 7, 8, 12].choose(rng).expect("nonempty");
    let rank = rng.gen_range(2..=3);
    let exps = (0..rank)
        .map(|_| (0..rank).map(|_| rng.gen_range(0..modulus as i64)).collect())
        .collect();
    GeneralizedDynkinDiagram::from_exponents(modulus, exps).expect("square matrix")
}

fn braided_identities(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tally = Tally::new();
    let fixed: Vec<GeneralizedDynkinDiagram> = vec![
        preset("A3").at_order(5)?,
        preset("B2").at_order(4)?,
        preset("G2").at_order(5)?,
    ];
    for _ in 0..500 {
        let diagram = if rng.gen_bool(0.5) {
            fixed.choose(&mut rng).expect("nonempty").clone()
        } else {
            random_diagram(&mut rng)
        };
        let (n, m) = (diagram.rank(), diagram.modulus());
        let total = rng.gen_range(3..=6u32);
        let a = rng.gen_range(1..=total - 2);
        let b = rng.gen_range(1..=total - a - 1);
        let c = total - a - b;
        let [u, v, w] = [a, b, c].map(|t| {
            let d = random_degree(&mut rng, n, t);
            random_element(&mut rng, n, m, &d)
        });
        let j = jacobi_residual(&diagram, &u, &v, &w).expect("homogeneous");
        tally.check(j.is_zero(), || format!("Jacobi residual nonzero for ({u}, {v}, {w})"));
        let l = leibniz_residual(&diagram, &u, &v, &w).expect("homogeneous");
        tally.check(l.is_zero(), || format!("Leibniz residual nonzero for ({u}, {v}, {w})"));
    }
    Ok(tally.finish("braided-identities", config.seed, json!({ "triples": 500 })))
}

const NONVANISHING_PRESETS: &[(&str, u32)] = &[("A2", 3), ("A3", 3), ("B2", 5), ("A3", 4), ("D4", 3), ("G2", 4)];

fn nonvanishing(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tally = Tally::new();
    let engines = NONVANISHING_PRESETS
        .iter()
        .map(|(p, n)| preset_engine(p, *n))
        .collect::<Result<Vec<_>, _>>()?;
    while tally.cases < 200 {
        let (data, engine) = engines.choose(&mut rng).expect("nonempty");
        let diagram = data.diagram();
        let n = diagram.rank();
        let len = rng.gen_range(1..=6);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let admissible = (0..n).all(|k| (letters.iter().filter(|&&l| l == k).count() as u32) < diagram.p(k, k).order());
        if !admissible {
            continue;
        }
        let w = BraidedElement::from_word(n, diagram.modulus(), Word::from_letters(letters));
        let zero = engine.zero_test(&w)?;
        tally.check(!zero, || format!("{w} vanishes in {}@N={}", data.preset(), data.order()));
    }
    Ok(tally.finish("nonvanishing", config.seed, json!({ "words": 200 })))
}

/// A random full bracketing of the letters of `word`.
fn random_bracketing(
    rng: &mut ChaCha8Rng,
    diagram: &GeneralizedDynkinDiagram,
    letters: &[usize],
) -> (BraidedElement, String) {
    let (n, m) = (diagram.rank(), diagram.modulus());
    if letters.len() == 1 {
        return (BraidedElement::generator(n, m, letters[0]), format!("x{}", letters[0] + 1));
    }
    let split = rng.gen_range(1..letters.len());
    let (a, sa) = random_bracketing(rng, diagram, &letters[..split]);
    let (b, sb) = random_bracketing(rng, diagram, &letters[split..]);
    (bracket(diagram, &a, &b).expect("homogeneous"), format!("[{sa},{sb}]"))
}

fn disconnected_brackets(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tally = Tally::new();
    let setups = [("A3", 2), ("A3", 3), ("A4", 2), ("D4", 2), ("D4", 3)]
        .iter()
        .map(|(p, n)| {
            let (data, engine) = preset_engine(p, *n)?;
            let subsets = data.diagram().disconnected_subsets();
            Ok((data, engine, subsets))
        })
        .collect::<Result<Vec<_>, SuiteError>>()?;
    while tally.cases < 200 {
        let (data, engine, subsets) = setups.choose(&mut rng).expect("nonempty");
        let s = *subsets.choose(&mut rng).expect("has disconnected subsets");
        let members: Vec<usize> = s.iter().collect();
        let len = rng.gen_range(members.len()..=6);
        if len < members.len() {
            continue;
        }
        let mut letters = members.clone();
        while letters.len() < len {
            letters.push(*members.choose(&mut rng).expect("nonempty"));
        }
        letters.shuffle(&mut rng);
        let (b, shape) = random_bracketing(&mut rng, data.diagram(), &letters);
        let zero = engine.zero_test(&b)?;
        tally.check(zero, || format!("{shape} is nonzero in {}@N={}", data.preset(), data.order()));
    }
    Ok(tally.finish("disconnected-brackets", config.seed, json!({ "bracketings": 200 })))
}

/// All words of length `1..=max_len` over `n` letters.
fn all_words(n: usize, max_len: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..n).map(move |i| w.concat(&Word::letter(i))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

const SMALL_PRESETS: &[(&str, u32)] = &[
    ("A2", 2),
    ("A2", 3),
    ("A3", 2),
    ("A3", 3),
    ("B2", 3),
    ("B2", 4),
    ("C3", 3),
    ("D3", 2),
    ("G2", 2),
];

fn membership(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let mut per_preset = Vec::new();
    for (p, order) in SMALL_PRESETS {
        let (data, engine) = preset_engine(p, *order)?;
        let cutoff = engine.cutoff().min(6);
        engine.lie_closure(cutoff)?;
        let mut nonzero = 0;
        for w in all_words(data.rank(), cutoff) {
            let u = BraidedElement::from_word(data.rank(), data.diagram().modulus(), w.clone());
            if engine.zero_test(&u)? {
                continue;
            }
            nonzero += 1;
            let member = engine.lie_membership(&u)?;
            let connected = data.diagram().is_connected(w.degree(data.rank()).support())?;
            tally.check(member == connected, || {
                format!("{w} in {p}@N={order}: member={member}, connected={connected}")
            });
        }
        per_preset.push(json!({ "preset": format!("{p}@N={order}"), "nonzero_words": nonzero }));
    }
    Ok(tally.finish("membership", config.seed, json!({ "max_degree": 6, "presets": per_preset })))
}

fn basis_theorem(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let mut rows = Vec::new();
    let a1a1 = GeneralizedDynkinDiagram::new(2, vec![vec![1, 0], vec![0, 1]])?;
    let mut engines: Vec<(String, NicholsEngine)> = vec![("A1xA1@N=2".into(), NicholsEngine::new(a1a1, Some(2))?)];
    for (p, order) in [("A2", 2), ("A2", 3), ("A3", 2)] {
        engines.push((format!("{p}@N={order}"), preset_engine(p, order)?.1));
    }
    for (name, engine) in &engines {
        let lie = engine.lie_closure(engine.cutoff())?;
        let mut checked = 0;
        for d in engine.nonzero_degrees()? {
            if d.is_zero() {
                continue;
            }
            let b = engine.degree_basis(&d)?.rank();
            let l = lie.dim_at(&d);
            let connected = engine.diagram().is_connected(d.support())?;
            let expected = if connected { b } else { 0 };
            checked += 1;
            tally.check(l == expected, || format!("{name} degree {d}: dim L = {l}, dim B = {b}"));
        }
        rows.push(json!({ "diagram": name, "degrees": checked, "dim_L": lie.total_dim() }));
    }
    Ok(tally.finish("basis-theorem", config.seed, json!({ "diagrams": rows })))
}

/// At `N = 2` the `G_2` braiding coincides with the `A_2` one, so the height
/// rule over-counts there; that cell is reported separately, not asserted.
pub const HEIGHT_RULE_EXCEPTIONS: &[(&str, u32)] = &[("G2", 2)];

fn hilbert_total(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let mut rows = Vec::new();
    let mut exceptions = Vec::new();
    for (p, order) in [("A2", 2), ("A2", 3), ("B2", 3), ("C2", 3), ("G2", 2)] {
        let (data, engine) = preset_engine(p, order)?;
        let total = BigInt::from(engine.total_dimension()?);
        let product = data.dim_nichols();
        let row = json!({ "preset": format!("{p}@N={order}"), "sum": total.to_string(), "product": product.to_string() });
        if HEIGHT_RULE_EXCEPTIONS.contains(&(p, order)) {
            exceptions.push(row);
            continue;
        }
        tally.check(total == product, || format!("{p}@N={order}: Σ dim B_d = {total}, ∏ N_β = {product}"));
        rows.push(row);
    }
    Ok(tally.finish("hilbert-total", config.seed, json!({ "presets": rows, "height_rule_exceptions": exceptions })))
}

fn power_derive(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    for diagram in [preset("A3").at_order(5)?, preset("G2").at_order(7)?] {
        let (n, m) = (diagram.rank(), diagram.modulus());
        for w in all_words(n, 6) {
            for k in 0..n {
                let l = w.letters().filter(|&x| x == k).count() as u32;
                if l == 0 {
                    continue;
                }
                let mut iterated = BraidedElement::from_word(n, m, w.clone());
                for _ in 0..l {
                    iterated = skew_derive(&diagram, k, &iterated);
                }
                let formula = power_derive_formula(&diagram, k, l, &w).expect("occurrence count matches");
                tally.check(iterated == formula, || format!("∂_{}^{l}({w}) disagrees with the product formula", k + 1));
            }
        }
    }
    Ok(tally.finish("power-derive", config.seed, json!({ "max_length": 6 })))
}

fn separated_products(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tally = Tally::new();
    // A_2 on vertices 1,2 and an isolated vertex 3, all at q = ζ_3
    let split = GeneralizedDynkinDiagram::new(3, vec![vec![1, 2, 0], vec![0, 1, 0], vec![0, 0, 1]])?;
    let engine = NicholsEngine::new(split, Some(10))?;
    let left = [MultiDegree(vec![1, 0, 0]), MultiDegree(vec![1, 1, 0]), MultiDegree(vec![2, 1, 0]), MultiDegree(vec![2, 0, 0]), MultiDegree(vec![3, 0, 0])];
    let right = [MultiDegree(vec![0, 0, 1]), MultiDegree(vec![0, 0, 2]), MultiDegree(vec![0, 0, 3])];
    for _ in 0..200 {
        let du = left.choose(&mut rng).expect("nonempty").clone();
        let dv = right.choose(&mut rng).expect("nonempty").clone();
        let (mut u, mut v) = (random_element(&mut rng, 3, 3, &du), random_element(&mut rng, 3, 3, &dv));
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut u, &mut v);
        }
        let uv = u.multiply(&v);
        let (zu, zv, zuv) = (engine.zero_test(&u)?, engine.zero_test(&v)?, engine.zero_test(&uv)?);
        tally.check(zuv == (zu || zv), || format!("({u})·({v}): zero={zuv}, factors zero=({zu},{zv})"));
        if !zuv {
            let member = engine.lie_membership(&uv)?;
            tally.check(!member, || format!("({u})·({v}) lies in L(V)"));
        }
    }
    Ok(tally.finish("separated-products", config.seed, json!({ "pairs": 200 })))
}

fn rank2(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let orders = config.orders.clone().unwrap_or_else(|| (2..=6).collect());
    let mut rows = Vec::new();
    for p in ["A2", "B2", "C2", "G2"] {
        for &order in &orders {
            let Ok(data) = RootSystemData::new(preset(p), order) else {
                continue;
            };
            let nn = BigInt::from(order);
            let expected = match p {
                "A2" => nn.pow(3) - 1,
                "B2" | "C2" if order % 2 == 1 => nn.pow(4) - 1,
                "B2" | "C2" => nn.pow(4) / 4 - 1,
                _ if order % 3 == 0 => nn.pow(6) / 27 - 1,
                _ => nn.pow(6) - 1,
            };
            let oracle = data.moebius_oracle()?;
            let closed = data.closed_form()?;
            let ok = oracle == expected && closed == expected && data.dim_nichols() - 1 == oracle;
            tally.check(ok, || format!("{p}@N={order}: oracle {oracle}, closed form {closed}, table {expected}"));
            rows.push(json!({ "preset": p, "N": order, "dim_L": oracle.to_string() }));
        }
    }
    Ok(tally.finish("rank2", config.seed, json!({ "rows": rows })))
}

fn oracle_vs_recursion(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let max_rank = config.max_rank.min(8);
    let mut cells: Vec<(CartanPreset, u32)> = Vec::new();
    let push = |cells: &mut Vec<(CartanPreset, u32)>, family, rank, orders: std::ops::RangeInclusive<u32>| {
        if rank <= max_rank {
            for n in orders {
                cells.push((CartanPreset::new(family, rank).expect("valid rank"), n));
            }
        }
    };
    for r in 1..=8 {
        push(&mut cells, CartanFamily::A, r, 2..=5);
    }
    for r in 2..=6 {
        push(&mut cells, CartanFamily::B, r, 2..=6);
        push(&mut cells, CartanFamily::C, r, 2..=6);
    }
    push(&mut cells, CartanFamily::F, 4, 2..=8);
    push(&mut cells, CartanFamily::G, 2, 2..=8);
    for r in 4..=7 {
        push(&mut cells, CartanFamily::D, r, 2..=4);
    }
    let mut compared = 0;
    for (p, order) in cells {
        let Ok(data) = RootSystemData::new(p, order) else {
            continue;
        };
        compared += 1;
        let oracle = data.moebius_oracle()?;
        let counts = data.subset_counts()?;
        let f_sum: BigInt = counts.iter().skip(1).map(|c| c.f.clone()).sum();
        tally.check(f_sum == data.dim_nichols() - 1, || format!("{p}@N={order}: Σ f(S) ≠ dim B − 1"));
        tally.check(counts.iter().all(|c| c.f >= BigInt::from(0)), || format!("{p}@N={order}: negative f(S)"));
        tally.check(oracle < data.dim_nichols(), || format!("{p}@N={order}: dim L > dim B − 1"));
        if p.family() == CartanFamily::D {
            let r = data.dtype_recursion()?;
            tally.check(r == oracle, || format!("{p}@N={order}: D recursion {r} vs oracle {oracle}"));
        } else {
            let left = data.path_recursion()?;
            let right = data.path_recursion_mirrored()?;
            tally.check(left == oracle, || format!("{p}@N={order}: recursion {left} vs oracle {oracle}"));
            tally.check(left == right, || format!("{p}@N={order}: mirrored recursion {right} vs {left}"));
        }
    }
    Ok(tally.finish("oracle-vs-recursion", config.seed, json!({ "max_rank": max_rank, "cells": compared })))
}

fn engine_suite(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let cells: Vec<(CartanPreset, u32)> = match (&config.preset, &config.orders) {
        (Some(p), Some(orders)) => orders.iter().map(|&n| (*p, n)).collect(),
        (Some(p), None) => vec![(*p, 2)],
        (None, _) => vec![(preset("A2"), 2), (preset("A2"), 3), (preset("A3"), 2)],
    };
    let mut rows = Vec::new();
    for (p, order) in cells {
        let data = RootSystemData::new(p, order)?;
        let engine = data.engine();
        let lie = engine.lie_closure(engine.cutoff())?.total_dim();
        let oracle = data.moebius_oracle()?;
        tally.check(BigInt::from(lie) == oracle, || format!("{p}@N={order}: engine {lie} vs oracle {oracle}"));
        rows.push(json!({ "preset": format!("{p}@N={order}"), "engine": lie, "oracle": oracle.to_string() }));
    }
    Ok(tally.finish("engine", config.seed, json!({ "cells": rows })))
}

/// Certification of every closed form, as committed in the repository report.
pub fn closed_form_report() -> Result<Value, SuiteError> {
    let mut families = Vec::new();
    for p in closed_form_presets() {
        families.extend(certify_closed_form(p)?);
    }
    let all_equal = families.iter().all(|c| c.certified_equal);
    Ok(json!({
        "method": "closed form evaluated exactly and compared with the inclusion-exclusion oracle at degree_bound + 1 valid orders per congruence class plus every valid order in 2..=5",
        "all_certified_equal": all_equal,
        "classes": families,
    }))
}

fn closed_forms(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let report = closed_form_report()?;
    let classes = report["classes"].as_array().cloned().unwrap_or_default();
    for class in &classes {
        // discrepancies are findings, not failures; recursion disagreement is a failure
        tally.check(class["recursion_consistent"].as_bool() == Some(true), || {
            format!("{} {}: oracle and recursion disagree", class["preset"], class["class"])
        });
    }
    Ok(tally.finish("closed-forms", config.seed, report))
}

fn dim_b_leading(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let mut tally = Tally::new();
    let orders = config.orders.clone().unwrap_or_else(|| vec![3, 4, 5, 6]);
    let two = BigInt::from(2);
    for &order in &orders {
        let nn = BigInt::from(order);
        let even = order % 2 == 0;
        let f4 = RootSystemData::new(preset("F4"), order)?.dim_nichols();
        let expected = if even { nn.pow(24) / two.pow(12) } else { nn.pow(24) };
        tally.check(f4 == expected, || format!("F4@N={order}: dim B {f4}, expected {expected}"));
        for n in 2..=6u32 {
            for family in [CartanFamily::B, CartanFamily::C] {
                let p = CartanPreset::new(family, n as usize).expect("valid rank");
                let got = RootSystemData::new(p, order)?.dim_nichols();
                let expected = match (family, even) {
                    (_, false) => nn.pow(n * n),
                    (CartanFamily::B, true) => nn.pow(n * n) / two.pow(n * (n - 1)),
                    _ => nn.pow(n * n) / two.pow(n),
                };
                tally.check(got == expected, || format!("{p}@N={order}: dim B {got}, expected {expected}"));
            }
        }
    }
    Ok(tally.finish("dim-b-leading", config.seed, json!({ "orders": orders })))
}
