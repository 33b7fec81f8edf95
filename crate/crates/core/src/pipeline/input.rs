//! Corpus lines: `name<TAB>kind:payload`, with `kind` one of `pd`, `dt`,
//! `braid`. The name and the kind prefix are optional; without a kind the
//! payload is classified by its shape. Blank lines and `#` comments are
//! skipped.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::diagram::{parse_dt, PlanarDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Pd,
    Dt,
    Braid,
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceKind::Pd => "pd",
            SourceKind::Dt => "dt",
            SourceKind::Braid => "braid",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotInput {
    pub name: String,
    pub kind: SourceKind,
    pub payload: String,
}

impl KnotInput {
    /// Parses `kind:payload` or a bare payload.
    pub fn from_spec(name: &str, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (kind, payload) = match spec.split_once(':') {
            Some((k, rest)) if matches!(k.trim(), "pd" | "dt" | "braid") => {
                let kind = match k.trim() {
                    "pd" => SourceKind::Pd,
                    "dt" => SourceKind::Dt,
                    _ => SourceKind::Braid,
                };
                (kind, rest.trim())
            }
            _ => (detect_kind(spec)?, spec),
        };
        Ok(Self { name: name.to_string(), kind, payload: payload.to_string() })
    }

    pub fn diagram(&self) -> Result<PlanarDiagram> {
        match self.kind {
            SourceKind::Pd => PlanarDiagram::parse_pd(&self.payload),
            SourceKind::Dt => parse_dt(&self.payload),
            SourceKind::Braid => BraidWord::parse(&self.payload)?.closure(),
        }
    }

    pub fn braid(&self) -> Option<Result<BraidWord>> {
        (self.kind == SourceKind::Braid).then(|| BraidWord::parse(&self.payload))
    }
}

fn detect_kind(payload: &str) -> Result<SourceKind> {
    if payload.contains('|') {
        Ok(SourceKind::Braid)
    } else if payload.contains('(') || payload.contains('[') {
        Ok(SourceKind::Pd)
    } else if !payload.is_empty()
        && payload
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .all(|t| t.parse::<i64>().is_ok())
    {
        Ok(SourceKind::Dt)
    } else {
        Err(Error::Parse(format!("cannot tell the notation of {payload:?}")))
    }
}

/// Parses one corpus line; `Ok(None)` for blank lines and comments.
/// Unnamed entries are called `line<N>`.
pub fn parse_line(line: &str, line_no: usize) -> Result<Option<KnotInput>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let (name, spec) = match line.split_once('\t') {
        Some((n, s)) => (n.trim().to_string(), s),
        None => (format!("line{line_no}"), trimmed),
    };
    KnotInput::from_spec(&name, spec).map(Some)
}

/// Parses a whole corpus. Lines that fail to parse are returned as errors in
/// place so that the rest of the batch still runs.
pub fn parse_corpus(text: &str) -> Vec<(String, Result<KnotInput>)> {
    text.lines()
        .enumerate()
        .filter_map(|(k, line)| {
            let name =
                line.split_once('\t').map(|(n, _)| n.trim().to_string()).unwrap_or_else(|| format!("line{}", k + 1));
            parse_line(line, k + 1).transpose().map(|r| (name, r))
        })
        .collect()
}
