use std::fmt::Write as _;

use nichols_core::braided::{BraidedElement, Word};
use nichols_core::diagram::{CartanPreset, PresetAt};
use nichols_core::engine::{degree_support, NicholsEngine};
use nichols_core::roots::{verify as verify_preset, DimensionReport, RootError};
use nichols_core::suites::{closed_form_report, run_suite, SuiteConfig, SuiteReport, SUITES};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{parse_orders, Source};
use crate::{CliError, Format, InputArgs, Outcome, EXIT_DISCREPANCY, EXIT_FAILED};

fn source(input: &InputArgs) -> Result<Source, CliError> {
    let orders = input.orders.as_deref().map(parse_orders).transpose().map_err(CliError::Usage)?;
    Source::new(input.preset.as_deref(), input.diagram.as_deref(), orders)
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let err = |e: csv::Error| CliError::Output(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = header.iter().map(ToString::to_string).collect();
    for row in std::iter::once(&header).chain(rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

const DIM_HEADER: &[&str] = &["preset", "N", "dim_B", "oracle", "recursion", "closed_form", "engine", "agree"];

fn show<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

fn dim_row(r: &DimensionReport) -> Vec<String> {
    vec![
        r.preset.clone(),
        r.order.to_string(),
        r.dim_b.to_string(),
        r.methods.oracle.to_string(),
        show(&r.methods.recursion),
        show(&r.methods.closed_form),
        show(&r.methods.engine),
        r.agree.to_string(),
    ]
}

/// Engine-only dimensions of a diagram file, truncated at the cutoff.
#[derive(Debug, Serialize)]
struct TruncatedDimension {
    diagram: String,
    cutoff: u32,
    dim_b_to_cutoff: u64,
    dim_l_to_cutoff: usize,
}

pub fn dim(input: &InputArgs, with_engine: bool) -> Result<Outcome, CliError> {
    let src = source(input)?;
    let Source::Preset { preset, orders } = &src else {
        return dim_diagram(&src, input);
    };
    let results: Vec<Result<DimensionReport, RootError>> =
        orders.par_iter().map(|&n| verify_preset(*preset, n, with_engine)).collect();
    let mut reports = Vec::with_capacity(results.len());
    for (n, r) in orders.iter().zip(results) {
        reports.push(r.map_err(|e| CliError::Usage(format!("{preset}@N={n}: {e}")))?);
    }
    let text = match input.format {
        Format::Json => json(&reports)?,
        Format::Csv => csv(DIM_HEADER, reports.iter().map(dim_row))?,
        Format::Table => {
            let rows: Vec<_> = reports.iter().map(dim_row).collect();
            let mut out = table(DIM_HEADER, &rows);
            for r in &reports {
                for e in &r.errata {
                    let _ = writeln!(out, "{}@N={}: {} gives {}, oracle {}", r.preset, r.order, e.method, e.got, e.expected);
                }
            }
            out
        }
    };
    let code = if reports.iter().all(|r| r.agree) { 0 } else { EXIT_DISCREPANCY };
    Ok(Outcome { text, code })
}

fn dim_diagram(src: &Source, input: &InputArgs) -> Result<Outcome, CliError> {
    let (name, engine) = src.engine(input.cutoff)?;
    let result = TruncatedDimension {
        diagram: name,
        cutoff: engine.cutoff(),
        dim_b_to_cutoff: engine.total_dimension()?,
        dim_l_to_cutoff: engine.lie_closure(engine.cutoff())?.total_dim(),
    };
    let header = ["diagram", "cutoff", "dim_B_to_cutoff", "dim_L_to_cutoff"];
    let row = vec![
        result.diagram.clone(),
        result.cutoff.to_string(),
        result.dim_b_to_cutoff.to_string(),
        result.dim_l_to_cutoff.to_string(),
    ];
    let text = match input.format {
        Format::Json => json(&result)?,
        Format::Csv => csv(&header, [row])?,
        Format::Table => table(&header, &[row]),
    };
    Ok(Outcome { text, code: 0 })
}

fn parse_word(engine: &NicholsEngine, text: &str) -> Result<(Word, BraidedElement), CliError> {
    let d = engine.diagram();
    let word = Word::parse(text, d.rank())?;
    let u = BraidedElement::from_word(d.rank(), d.modulus(), word.clone());
    Ok((word, u))
}

fn show_word(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

#[derive(Debug, Serialize)]
struct ZeroTestResult {
    input: String,
    word: String,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    trace: Vec<String>,
}

pub fn zero_test(input: &InputArgs, text: &str, trace: bool) -> Result<Outcome, CliError> {
    let (name, engine) = source(input)?.engine(input.cutoff)?;
    let (word, u) = parse_word(&engine, text)?;
    let (zero, lines) = if trace {
        engine.zero_test_trace(&u)?
    } else {
        (engine.zero_test(&u)?, Vec::new())
    };
    let result = ZeroTestResult {
        input: name,
        word: show_word(&word),
        verdict: if zero { "zero" } else { "nonzero" },
        trace: lines,
    };
    let text = match input.format {
        Format::Json => json(&result)?,
        Format::Csv => csv(&["input", "word", "verdict"], [[result.input, result.word, result.verdict.to_string()]])?,
        Format::Table => {
            let mut out = format!("{}\n", result.verdict);
            for line in &result.trace {
                let _ = writeln!(out, "{line}");
            }
            out
        }
    };
    Ok(Outcome { text, code: 0 })
}

#[derive(Debug, Serialize)]
struct LieResult {
    input: String,
    word: String,
    verdict: &'static str,
    support: String,
    explanation: String,
}

pub fn lie(input: &InputArgs, text: &str) -> Result<Outcome, CliError> {
    let (name, engine) = source(input)?.engine(input.cutoff)?;
    let (word, u) = parse_word(&engine, text)?;
    let support = degree_support(&u);
    let mut code = 0;
    let (verdict, explanation) = if engine.zero_test(&u)? {
        ("zero", "the word vanishes in B(V)".to_string())
    } else {
        let member = engine.lie_membership(&u)?;
        let connected = support.is_empty() || engine.diagram().is_connected(support)?;
        let mut why = format!(
            "support {support} is {} in the diagram",
            if connected { "connected" } else { "disconnected" }
        );
        if member != connected {
            why.push_str("; the computed closure disagrees with the support criterion");
            code = EXIT_DISCREPANCY;
        }
        (if member { "member" } else { "non-member" }, why)
    };
    let result = LieResult {
        input: name,
        word: show_word(&word),
        verdict,
        support: support.to_string(),
        explanation,
    };
    let text = match input.format {
        Format::Json => json(&result)?,
        Format::Csv => csv(
            &["input", "word", "verdict", "support", "explanation"],
            [[result.input, result.word, result.verdict.to_string(), result.support, result.explanation]],
        )?,
        Format::Table => format!("{} ({})\n", result.verdict, result.explanation),
    };
    Ok(Outcome { text, code })
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    seed: u64,
    passed: bool,
    suites: Vec<SuiteReport>,
}

pub fn verify(
    suites: &[String],
    orders: Option<&str>,
    max_rank: Option<usize>,
    preset: Option<&str>,
    seed: u64,
) -> Result<Outcome, CliError> {
    let mut config = SuiteConfig {
        seed,
        orders: orders.map(parse_orders).transpose().map_err(CliError::Usage)?,
        ..SuiteConfig::default()
    };
    if let Some(r) = max_rank {
        config.max_rank = r;
    }
    if let Some(p) = preset {
        if p.contains('@') {
            let at: PresetAt = p.parse()?;
            if config.orders.is_some() {
                return Err(CliError::Usage(format!("{p} already fixes N; drop --N")));
            }
            config.preset = Some(at.preset);
            config.orders = Some(vec![at.order]);
        } else {
            config.preset = Some(p.parse::<CartanPreset>()?);
        }
    }
    let names: Vec<&str> = if suites.is_empty() {
        SUITES.to_vec()
    } else {
        suites.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(CliError::Usage(format!("unknown suite {bad:?}; known: {}", SUITES.join(", "))));
    }
    let reports = names
        .iter()
        .map(|n| run_suite(n, &config))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = VerifySummary {
        seed,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    };
    let code = if summary.passed { 0 } else { EXIT_FAILED };
    Ok(Outcome {
        text: json(&summary)?,
        code,
    })
}

pub fn certify() -> Result<Outcome, CliError> {
    let report = closed_form_report()?;
    let code = if report["all_certified_equal"].as_bool() == Some(true) { 0 } else { EXIT_DISCREPANCY };
    Ok(Outcome {
        text: json(&report)?,
        code,
    })
}
