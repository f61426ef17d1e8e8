//! Report records and their two wire formats.
//!
//! Every number is serialized as a decimal string so no consumer ever
//! truncates a large value; `holds` stays a real boolean.

use anyhow::{bail, Context, Result};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// Output format for report bodies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    /// One JSON object per line, keys in fixed order.
    #[value(name = "json-lines")]
    JsonLines,
    /// Header row, then one comma-separated row per record.
    #[value(name = "csv")]
    Csv,
}

impl ReportFormat {
    /// Parse the spelling used by the config file and the environment
    /// variable; same names as the command-line flag.
    pub fn parse_name(name: &str) -> Result<Self> {
        match name {
            "json-lines" => Ok(Self::JsonLines),
            "csv" => Ok(Self::Csv),
            other => bail!("unknown format {other:?}: expected json-lines or csv"),
        }
    }
}

/// One checked instance. Optional fields are omitted from json-lines output
/// and left as empty csv cells when a record has nothing to put there.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ReportRecord {
    pub theorem: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extra: BTreeMap<String, String>,
}

impl ReportRecord {
    pub fn new(theorem: &str) -> Self {
        Self {
            theorem: theorem.to_string(),
            params: BTreeMap::new(),
            lhs: None,
            rhs: None,
            modulus: None,
            holds: None,
            extra: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn extra_field(mut self, key: &str, value: impl ToString) -> Self {
        self.extra.insert(key.to_string(), value.to_string());
        self
    }

    /// Copy a congruence comparison into the lhs/rhs/modulus/holds slots.
    pub fn congruence(mut self, check: &binomlab::CongruenceCheck) -> Self {
        self.lhs = Some(check.lhs_residue.to_string());
        self.rhs = Some(check.rhs_residue.to_string());
        self.modulus = Some(check.modulus.to_string());
        self.holds = Some(check.holds);
        self
    }
}

/// Render records to a complete report body.
pub fn render(records: &[ReportRecord], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::JsonLines => {
            let mut body = String::new();
            for record in records {
                body.push_str(&serde_json::to_string(record)?);
                body.push('\n');
            }
            Ok(body)
        }
        ReportFormat::Csv => render_csv(records),
    }
}

fn render_csv(records: &[ReportRecord]) -> Result<String> {
    let Some(first) = records.first() else {
        return Ok(String::new());
    };
    // Params are fixed per theorem, so the first record names them all;
    // extra keys can differ between records (a falsifier hit carries the
    // counterexample, a clean exhaust does not), so take the sorted union.
    let param_keys: Vec<&str> = first.params.keys().map(String::as_str).collect();
    let mut extra_keys: Vec<&str> = Vec::new();
    for record in records {
        debug_assert_eq!(
            record.params.keys().collect::<Vec<_>>(),
            first.params.keys().collect::<Vec<_>>(),
            "param set must be fixed per report"
        );
        for key in record.extra.keys() {
            if !extra_keys.contains(&key.as_str()) {
                extra_keys.push(key);
            }
        }
    }
    extra_keys.sort_unstable();

    let mut body = String::new();
    body.push_str("theorem");
    let fixed = ["lhs", "rhs", "modulus", "holds"];
    for key in param_keys
        .iter()
        .copied()
        .chain(fixed)
        .chain(extra_keys.iter().copied())
    {
        body.push(',');
        body.push_str(key);
    }
    body.push('\n');

    for record in records {
        push_cell(&mut body, &record.theorem, true);
        for key in &param_keys {
            push_cell(&mut body, record.params.get(*key).map_or("", String::as_str), false);
        }
        push_cell(&mut body, record.lhs.as_deref().unwrap_or(""), false);
        push_cell(&mut body, record.rhs.as_deref().unwrap_or(""), false);
        push_cell(&mut body, record.modulus.as_deref().unwrap_or(""), false);
        let holds = match record.holds {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        push_cell(&mut body, holds, false);
        for key in &extra_keys {
            push_cell(&mut body, record.extra.get(*key).map_or("", String::as_str), false);
        }
        body.push('\n');
    }
    Ok(body)
}

fn push_cell(body: &mut String, cell: &str, first: bool) {
    // Cells are decimal numbers, theorem ids, and booleans; nothing that
    // would need csv quoting may appear.
    debug_assert!(
        !cell.contains(',') && !cell.contains('\n') && !cell.contains('"'),
        "csv cell needs quoting: {cell:?}"
    );
    if !first {
        body.push(',');
    }
    body.push_str(cell);
}

/// Write a report body to the chosen sink (standard output by default).
pub fn write_body(body: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("cannot write report to {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
