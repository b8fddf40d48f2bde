//! Report records and their markdown, CSV and JSON renderings.
//!
//! Every report is a serializable record (the JSON form) plus a list of
//! [`TextTable`]s carrying the same data for markdown and CSV.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitangent::{BitangentError, BitangentReport};
use crate::cycle::{enumerate_levels, CycleConfig, CycleError, CycleType, Row};
use crate::divisor::{DDivisor, DSequence, DivisorError};
use crate::exec::Exec;
use crate::families::{exhaustive_max_e, greedy_fibonacci, GreedyRow, MaxE};
use crate::quartic::{QuarticError, QuarticReport};
use crate::resolution::{
    compute_e, compute_m, h0_formula, stable_base_curves, ChoiceBreakdown, InteriorMu, MuReason, MuValue,
    ResolutionChoice, ResolutionError,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Bitangent(#[from] BitangentError),
    #[error(transparent)]
    Quartic(#[from] QuarticError),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("CSV output failed: {0}")]
    Csv(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    ResourceBound,
    Invariant,
}

impl ReportError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            ReportError::Cycle(CycleError::BoundExceeded { .. }) => ErrorKind::ResourceBound,
            ReportError::Cycle(CycleError::Invariant(_))
            | ReportError::Cycle(CycleError::Divisor(DivisorError::Constraint(_)))
            | ReportError::Divisor(DivisorError::Constraint(_))
            | ReportError::Resolution(ResolutionError::Invariant(_))
            | ReportError::Bitangent(BitangentError::Unpaired(_))
            | ReportError::Csv(_) => ErrorKind::Invariant,
            _ => ErrorKind::Validation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format {other:?} (expected markdown, csv or json)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Markdown => "markdown",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

/// A titled table of strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextTable {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new<S: Into<String>>(title: S, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn markdown(&self) -> String {
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        let mut out = format!("### {}\n\n", self.title);
        out += &line(&self.columns);
        out += &format!("|{}\n", "---|".repeat(self.columns.len()));
        for row in &self.rows {
            out += &line(row);
        }
        out
    }

    pub fn csv(&self) -> Result<String, ReportError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| ReportError::Csv(e.to_string());
        w.write_record(&self.columns).map_err(err)?;
        for row in &self.rows {
            w.write_record(row).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ReportError::Csv(e.to_string()))
    }
}

/// A record with a JSON form and a tabular form.
pub trait Report: Serialize {
    fn tables(&self) -> Vec<TextTable>;

    fn render(&self, format: ReportFormat) -> Result<String, ReportError> {
        match format {
            ReportFormat::Markdown => Ok(self
                .tables()
                .iter()
                .map(TextTable::markdown)
                .collect::<Vec<_>>()
                .join("\n")),
            ReportFormat::Csv => Ok(self
                .tables()
                .iter()
                .map(TextTable::csv)
                .collect::<Result<Vec<_>, _>>()?
                .join("\n")),
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

fn minus(x: i64) -> String {
    if x < 0 {
        format!("\u{2212}{}", -x)
    } else {
        x.to_string()
    }
}

/// The half-cycle sequence `s₁ᵈ¹,…,sₖᵈᵏ`; multiplicities are omitted when
/// `plain` is set, and the line component is wrapped in `**…**` when `bold`.
pub fn render_half(row: &Row, plain: bool, bold: bool) -> String {
    let full = row.render_superscript();
    let parts: Vec<String> = if plain {
        row.self_int.iter().map(|s| minus(*s)).collect()
    } else {
        full.split(',').map(str::to_string).collect()
    };
    parts
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            if i == 0 && bold {
                let split = p
                    .char_indices()
                    .find(|(_, c)| !(c.is_ascii_digit() || *c == '\u{2212}'))
                    .map_or(p.len(), |(j, _)| j);
                format!("**{}**{}", &p[..split], &p[split..])
            } else {
                p
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// The full cycle sequence, both halves separated by `;`.
pub fn render_sequence(row: &Row, plain: bool, bold: bool) -> String {
    let half = render_half(row, plain, bold);
    format!("{half};{half}")
}

/// One configuration row of a divisor table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRow {
    #[serde(rename = "type")]
    pub cycle_type: CycleType,
    pub sequence: String,
    pub self_intersections: Vec<i64>,
    pub multiplicities: Vec<u64>,
    pub d: u64,
}

impl DivisorRow {
    pub fn row(&self) -> Row {
        Row::new(self.self_intersections.clone(), self.multiplicities.clone())
    }
}

/// Every configuration with `n` pairs, by type, with the sequences of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTable {
    pub n: usize,
    pub rows: Vec<DivisorRow>,
}

fn checked_row(cfg: &CycleConfig) -> Result<DivisorRow, ReportError> {
    cfg.validate()?;
    let dd = DDivisor::from_config(cfg)?;
    dd.check(cfg)?;
    let row = cfg.row()?;
    let plain = cfg.n() == 3;
    Ok(DivisorRow {
        cycle_type: cfg.cycle_type(),
        sequence: render_sequence(&row, plain, false),
        d: row.d_max(),
        self_intersections: row.self_int,
        multiplicities: row.d,
    })
}

/// Enumerates and checks every configuration with `n` pairs.
pub fn divisor_table(n: usize, bound: usize, exec: Exec) -> Result<DivisorTable, ReportError> {
    let mut rows = Vec::new();
    for ty in CycleType::ALL {
        let levels = enumerate_levels(n, ty, bound, exec)?;
        let configs = levels.last().expect("at least the base level");
        rows.extend(exec.try_map(configs, checked_row)?);
    }
    Ok(DivisorTable { n, rows })
}

impl Report for DivisorTable {
    fn tables(&self) -> Vec<TextTable> {
        let title = if self.n == 3 {
            "The divisor D (= C) for n = 3".to_string()
        } else {
            format!("The divisor D for n = {}", self.n)
        };
        let mut t = TextTable::new(title, &["type", "sequence for D", "d"]);
        for r in &self.rows {
            t.push(vec![
                r.cycle_type.to_string(),
                render_sequence(&r.row(), self.n == 3, true),
                r.d.to_string(),
            ]);
        }
        vec![t]
    }
}

/// Component count check for one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRow {
    #[serde(rename = "type")]
    pub cycle_type: CycleType,
    pub two_k: String,
    pub two_k_at_n: usize,
    pub configurations: usize,
    pub violations: usize,
}

/// `2k` by type, checked on every configuration with `3 ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentTable {
    pub n: usize,
    pub rows: Vec<ComponentRow>,
}

pub fn component_table(n: usize, bound: usize, exec: Exec) -> Result<ComponentTable, ReportError> {
    let mut rows = Vec::new();
    for ty in CycleType::ALL {
        let levels = enumerate_levels(n, ty, bound, exec)?;
        let mut configurations = 0;
        let mut violations = 0;
        for (j, level) in levels.iter().enumerate() {
            let level_n = 3 + j;
            configurations += level.len();
            violations += level
                .iter()
                .filter(|cfg| cfg.k() != ty.k_for(level_n) || cfg.type_of().ok() != Some(ty))
                .count();
        }
        let two_k = match ty {
            CycleType::A0 => "2(n\u{2212}2)",
            CycleType::A1 => "2(n\u{2212}1)",
            CycleType::A2 => "2n",
            CycleType::A3 => "2(n+1)",
        };
        rows.push(ComponentRow {
            cycle_type: ty,
            two_k: two_k.to_string(),
            two_k_at_n: 2 * ty.k_for(n),
            configurations,
            violations,
        });
    }
    Ok(ComponentTable { n, rows })
}

impl Report for ComponentTable {
    fn tables(&self) -> Vec<TextTable> {
        let at = format!("2k at n = {}", self.n);
        let checked = format!("configurations, n = 3..{}", self.n);
        let mut t = TextTable::new(
            "Number of components of the cycle",
            &["type", "2k", &at, &checked, "violations"],
        );
        for r in &self.rows {
            t.push(vec![
                r.cycle_type.to_string(),
                r.two_k.clone(),
                r.two_k_at_n.to_string(),
                r.configurations.to_string(),
                r.violations.to_string(),
            ]);
        }
        vec![t]
    }
}

/// The greedy sequence with its printed comparison values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyTable {
    pub n_max: usize,
    pub rows: Vec<GreedyRow>,
    /// Largest `e` over all configurations, when requested; limited to the enumeration bound.
    pub exhaustive: Vec<MaxE>,
}

pub fn greedy_table(
    n_max: usize,
    exhaustive_up_to: Option<usize>,
    bound: usize,
    exec: Exec,
) -> Result<GreedyTable, ReportError> {
    if n_max < 4 {
        return Err(ReportError::Validation(format!("n = {n_max} is below 4")));
    }
    let rows = greedy_fibonacci(n_max)?;
    let exhaustive = match exhaustive_up_to {
        Some(top) => (4..=top.min(n_max).min(bound))
            .map(|n| exhaustive_max_e(n, bound, exec))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    Ok(GreedyTable {
        n_max,
        rows,
        exhaustive,
    })
}

fn status(row: &GreedyRow) -> String {
    match (row.discrepancy, row.printed_e) {
        (true, Some(p)) if p != row.e => format!("computed {} differs from printed {}", row.e, p),
        (true, _) => "sequence differs from printed".to_string(),
        (false, Some(_)) => "matches".to_string(),
        (false, None) => "no printed value".to_string(),
    }
}

impl Report for GreedyTable {
    fn tables(&self) -> Vec<TextTable> {
        let mut t = TextTable::new(
            "Greedy blow-ups at the largest adjacent multiplicities",
            &["n", "(d1,…,dk)", "e", "printed e", "status"],
        );
        for r in &self.rows {
            t.push(vec![
                r.n.to_string(),
                r.d_sequence.to_string(),
                r.e.to_string(),
                r.printed_e.map_or_else(|| "-".to_string(), |e| e.to_string()),
                status(r),
            ]);
        }
        let mut out = vec![t];
        if !self.exhaustive.is_empty() {
            let mut x = TextTable::new("Largest e over all configurations", &["n", "e", "type", "(d1,…,dk)"]);
            for r in &self.exhaustive {
                x.push(vec![
                    r.n.to_string(),
                    r.e.to_string(),
                    r.cycle_type.to_string(),
                    r.d_sequence.to_string(),
                ]);
            }
            out.push(x);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Entry {
    pub l: u64,
    pub h0: u64,
}

/// Invariants of one multiplicity sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: Option<usize>,
    #[serde(rename = "type")]
    pub cycle_type: Option<CycleType>,
    pub d_sequence: DSequence,
    pub d: u64,
    pub choice: String,
    pub e: u64,
    pub e_by_choice: Vec<ChoiceBreakdown>,
    pub mu: Vec<MuValue>,
    pub interior: Vec<InteriorMu>,
    pub m: MuValue,
    pub m_exact: bool,
    pub base_curves: Vec<String>,
    /// `h⁰` for `l = 0 … m+2` using the value of `m` (a lower bound when `m` is not exact).
    pub h0: Vec<H0Entry>,
}

/// Analyzes a sequence. With a type, `n` follows from `k`.
pub fn analyze_sequence(
    d: &DSequence,
    cycle_type: Option<CycleType>,
    ridge_first: bool,
    ridge_last: bool,
) -> Result<AnalysisReport, ReportError> {
    let k = d.k();
    let n = match cycle_type {
        Some(ty) => {
            let n = (k + 2)
                .checked_sub(ty.nu())
                .filter(|&n| n >= 3)
                .ok_or_else(|| ReportError::Validation(format!("k = {k} is too small for type {ty}")))?;
            Some(n)
        }
        None => None,
    };
    let rc = ResolutionChoice::with_ridges(k, ridge_first, ridge_last);
    let e = compute_e(d, &rc);
    let inv = compute_m(d);
    let m_value = inv.m.value();
    let h0 = (0..=m_value + 2)
        .map(|l| {
            Ok(H0Entry {
                l,
                h0: h0_formula(m_value, l as i64)?,
            })
        })
        .collect::<Result<Vec<_>, ResolutionError>>()?;
    Ok(AnalysisReport {
        n,
        cycle_type,
        d: d.d_max(),
        choice: rc.label(),
        e,
        e_by_choice: inv.by_choice.clone(),
        mu: inv.mu.clone(),
        interior: inv.interior.clone(),
        m: inv.m,
        m_exact: inv.is_exact(),
        base_curves: stable_base_curves(d, &rc).iter().map(ToString::to_string).collect(),
        h0,
        d_sequence: d.clone(),
    })
}

/// Analyzes a configuration after checking it.
pub fn analyze_config(cfg: &CycleConfig, ridge_first: bool, ridge_last: bool) -> Result<AnalysisReport, ReportError> {
    cfg.validate()?;
    let dd = DDivisor::from_config(cfg)?;
    dd.check(cfg)?;
    let mut report = analyze_sequence(dd.sequence(), Some(cfg.cycle_type()), ridge_first, ridge_last)?;
    report.n = Some(cfg.n());
    Ok(report)
}

fn reason_text(r: MuReason) -> &'static str {
    match r {
        MuReason::NoBaseCurve => "no stable base curve",
        MuReason::LineComponentFree => "line component never forced",
        MuReason::SingleComponentSubtraction => "single-component subtraction",
        MuReason::Uncertified => "lower bound only",
    }
}

impl Report for AnalysisReport {
    fn tables(&self) -> Vec<TextTable> {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".to_string());
        let mu: Vec<String> = self.mu.iter().map(ToString::to_string).collect();
        let mut inv = TextTable::new("Invariants", &["quantity", "value"]);
        for (k, v) in [
            ("n", opt(self.n.map(|n| n.to_string()))),
            ("type", opt(self.cycle_type.map(|t| t.to_string()))),
            ("d-sequence", self.d_sequence.to_string()),
            ("d", self.d.to_string()),
            ("resolution", self.choice.clone()),
            ("e", self.e.to_string()),
            ("mu", format!("({})", mu.join(","))),
            ("m", self.m.to_string()),
            ("m exact", self.m_exact.to_string()),
        ] {
            inv.push(vec![k.to_string(), v]);
        }
        let mut choices = TextTable::new("e by ridge choice", &["choice", "e", "mu(1)", "mu(k)", "e+mu(1)+mu(k)"]);
        for c in &self.e_by_choice {
            choices.push(vec![
                c.choice.clone(),
                c.e.to_string(),
                c.mu_first.to_string(),
                c.mu_last.to_string(),
                c.total.to_string(),
            ]);
        }
        let mut curves = TextTable::new("Stable base curves", &["chain"]);
        for c in &self.base_curves {
            curves.push(vec![c.clone()]);
        }
        let mut interior = TextTable::new("Interior mu", &["fiber", "value", "certificate"]);
        for x in &self.interior {
            interior.push(vec![
                x.fiber.to_string(),
                x.value.to_string(),
                reason_text(x.reason).to_string(),
            ]);
        }
        let mut h0 = TextTable::new("h0(l)", &["l", "h0"]);
        for x in &self.h0 {
            h0.push(vec![x.l.to_string(), x.h0.to_string()]);
        }
        vec![inv, choices, curves, interior, h0]
    }
}

impl Report for BitangentReport {
    fn tables(&self) -> Vec<TextTable> {
        let mut summary = TextTable::new(
            format!("Bitangents for type {}", self.cycle_type),
            &["quantity", "value"],
        );
        summary.push(vec!["(-1)-classes".into(), self.catalog.entries.len().to_string()]);
        summary.push(vec!["pairs".into(), self.pairs.len().to_string()]);
        summary.push(vec!["real pairs, ridge excluded".into(), self.real.len().to_string()]);
        if let Some(note) = &self.catalog.note {
            summary.push(vec!["note".into(), note.clone()]);
        }
        let mut pairs = TextTable::new(
            "Pairs",
            &[
                "pair",
                "first",
                "first family",
                "second",
                "second family",
                "real",
                "ridge",
                "alpha",
            ],
        );
        for (i, p) in self.pairs.iter().enumerate() {
            pairs.push(vec![
                (i + 1).to_string(),
                p.first.class.to_string(),
                p.first.family.to_string(),
                p.second.class.to_string(),
                p.second.family.to_string(),
                p.real.to_string(),
                p.ridge.to_string(),
                p.alpha.map_or_else(|| "-".to_string(), |a| a.to_string()),
            ]);
        }
        vec![summary, pairs]
    }
}

impl Report for QuarticReport {
    fn tables(&self) -> Vec<TextTable> {
        let mut model = TextTable::new(
            format!(
                "Quartic model: type {}, m = {}, seed {}",
                self.cycle_type, self.m, self.seed
            ),
            &["part", "polynomial", "in ridge ideal"],
        );
        for (i, h) in self.model.factors().iter().enumerate() {
            let ridge = self.model.in_ridge_ideal(i + 1).unwrap_or(false);
            model.push(vec![format!("h{}", i + 1), h.to_string(), ridge.to_string()]);
        }
        model.push(vec!["Q".into(), self.model.quadric().to_string(), "-".into()]);
        let mut planes = TextTable::new(
            format!("Generic planes (expected {})", self.expected),
            &["t", "at q", "at q̄", "z0-order of h1h2h3h4"],
        );
        for p in &self.planes {
            planes.push(vec![
                p.t.clone(),
                p.at_q.to_string(),
                p.at_qbar.to_string(),
                p.z0_order.to_string(),
            ]);
        }
        let mut squares = TextTable::new("Square checks", &["kind", "label", "passed"]);
        for c in &self.tropes {
            squares.push(vec!["trope".into(), c.label.clone(), c.passed.to_string()]);
        }
        for c in &self.double_conics {
            squares.push(vec!["double conic".into(), c.label.clone(), c.passed.to_string()]);
        }
        let mut summary = TextTable::new("Summary", &["quantity", "value"]);
        summary.push(vec!["degenerate".into(), self.degenerate.to_string()]);
        summary.push(vec!["tropes".into(), self.tropes.len().to_string()]);
        summary.push(vec!["double-conic planes".into(), self.double_conics.len().to_string()]);
        summary.push(vec!["all squares pass".into(), self.squares_pass().to_string()]);
        vec![model, planes, squares, summary]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_rendering() {
        let row = Row::new(vec![-3, -1], vec![1, 2]);
        assert_eq!(render_sequence(&row, false, false), "−3¹,−1²;−3¹,−1²");
        assert_eq!(render_sequence(&row, false, true), "**−3**¹,−1²;**−3**¹,−1²");
        let base = Row::new(vec![-1, -2], vec![1, 1]);
        assert_eq!(render_sequence(&base, true, true), "**−1**,−2;**−1**,−2");
    }

    #[test]
    fn table_counts() {
        let t = divisor_table(4, 8, Exec::Sequential).unwrap();
        assert_eq!(t.rows.len(), 6);
        assert!(t.rows.iter().all(|r| r.d == 2));
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = TextTable::new("x", &["a", "b"]);
        t.push(vec!["1,2".into(), "3".into()]);
        assert_eq!(t.csv().unwrap(), "a,b\n\"1,2\",3\n");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn analysis_of_linear_family() {
        let d = DSequence::new(vec![1, 2, 3, 4, 5, 1, 1, 1]).unwrap();
        let r = analyze_sequence(&d, Some(CycleType::A3), true, true).unwrap();
        assert_eq!(r.n, Some(7));
        assert_eq!(r.m, MuValue::Exact(5));
        assert_eq!(r.h0.len(), 8);
        assert_eq!(r.h0[5].h0, 8);
    }
}
