//! Per-knot reports, batch scans and their output formats.

mod cache;
mod input;

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::khovanov::{homological_width, homology_ranks_with, BigradedRanks, KhovanovConfig};
use crate::poly::LaurentPoly2;
use crate::polyinv::{alexander, homfly_with_budget, qp_obstruction, v_span, QpFlags, DEFAULT_SKEIN_BUDGET};
use crate::rasmussen::{extract_s, SResult};

pub use cache::{DiskCache, CACHE_FORMAT_VERSION};
pub use input::{parse_corpus, parse_line, KnotInput, SourceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    SmoothlySlicePossible,
    TopologicallySliceNotSmoothly,
    NoTopologicalConclusion,
}

impl Classification {
    /// Δ = 1 makes a knot topologically slice; a nonzero `s` rules out
    /// smooth sliceness.
    pub fn of(s: &SResult, delta_is_one: bool) -> Self {
        match s {
            SResult::Determined(v) if delta_is_one && *v != 0 => Classification::TopologicallySliceNotSmoothly,
            _ if s.candidates().contains(&0) => Classification::SmoothlySlicePossible,
            _ => Classification::NoTopologicalConclusion,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::SmoothlySlicePossible => "smoothly-slice-possible",
            Classification::TopologicallySliceNotSmoothly => "topologically-slice-not-smoothly",
            Classification::NoTopologicalConclusion => "no-topological-conclusion",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub s: SResult,
    pub hw: u32,
    pub delta_is_one: bool,
    pub e: i32,
    #[serde(rename = "E")]
    pub big_e: i32,
    pub classification: Classification,
    pub qp: QpFlags,
    pub khovanov: BigradedRanks,
    /// Monomial list `coef v^a z^b, ...`.
    pub homfly: String,
    /// Monomial list `coef t^a, ...`.
    pub alexander: String,
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub khovanov: KhovanovConfig,
    pub skein_budget: usize,
    pub cache: Option<DiskCache>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { khovanov: KhovanovConfig::default(), skein_budget: DEFAULT_SKEIN_BUDGET, cache: None }
    }
}

fn cached<T, F>(opts: &AnalysisOptions, key: String, compute: F) -> Result<T>
where
    T: Serialize + serde::de::DeserializeOwned,
    F: FnOnce() -> Result<T>,
{
    if let Some(c) = &opts.cache {
        if let Some(v) = c.get_json(&key) {
            return Ok(v);
        }
    }
    let v = compute()?;
    if let Some(c) = &opts.cache {
        if let Err(e) = c.put_json(&key, &v) {
            log::warn!("cache write failed: {e}");
        }
    }
    Ok(v)
}

pub fn khovanov_ranks(d: &PlanarDiagram, opts: &AnalysisOptions) -> Result<BigradedRanks> {
    if d.crossing_count() > opts.khovanov.max_crossings {
        return homology_ranks_with(d, &opts.khovanov);
    }
    cached(opts, format!("kh:{d}"), || homology_ranks_with(d, &opts.khovanov))
}

pub fn homfly_polynomial(d: &PlanarDiagram, opts: &AnalysisOptions) -> Result<LaurentPoly2> {
    let text: String = cached(opts, format!("homfly:{d}"), || {
        Ok(homfly_with_budget(d, opts.skein_budget)?.to_monomial_list(("v", "z")))
    })?;
    LaurentPoly2::from_monomial_list(&text, ("v", "z"))
}

pub fn analyze(d: &PlanarDiagram, name: &str, opts: &AnalysisOptions) -> Result<InvariantReport> {
    let kh = khovanov_ranks(d, opts)?;
    let s = extract_s(&kh)?;
    let hw = homological_width(&kh)?;
    let p = homfly_polynomial(d, opts)?;
    let span = v_span(&p)?;
    let delta = alexander(&p)?;
    let delta_is_one = delta == crate::poly::LaurentPoly1::one();
    Ok(InvariantReport {
        name: name.to_string(),
        classification: Classification::of(&s, delta_is_one),
        qp: qp_obstruction(&s, span),
        s,
        hw,
        delta_is_one,
        e: span.e,
        big_e: span.big_e,
        khovanov: kh,
        homfly: p.to_monomial_list(("v", "z")),
        alexander: delta.to_monomial_list("t"),
    })
}

pub fn analyze_input(input: &KnotInput, opts: &AnalysisOptions) -> Result<InvariantReport> {
    analyze(&input.diagram()?, &input.name, opts)
}

/// One scanned knot: its report or the error that stopped it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub name: String,
    pub result: std::result::Result<InvariantReport, String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub delta_one: usize,
    pub delta_one_s_nonzero: usize,
    pub ambiguous: usize,
    pub errors: usize,
}

impl ScanSummary {
    pub fn of(rows: &[ScanRow]) -> Self {
        let mut s = ScanSummary { total: rows.len(), ..Default::default() };
        for row in rows {
            match &row.result {
                Err(_) => s.errors += 1,
                Ok(r) => {
                    if r.s.is_ambiguous() {
                        s.ambiguous += 1;
                    }
                    if r.delta_is_one {
                        s.delta_one += 1;
                        if r.classification == Classification::TopologicallySliceNotSmoothly {
                            s.delta_one_s_nonzero += 1;
                        }
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total {}  delta=1 {}  delta=1 and s!=0 {}  ambiguous {}  errors {}",
            self.total, self.delta_one, self.delta_one_s_nonzero, self.ambiguous, self.errors
        )
    }
}

/// Analyzes every entry on a pool of `jobs` workers (`0` = one per core).
/// Rows come back in input order.
pub fn scan(
    entries: &[(String, Result<KnotInput>)],
    opts: &AnalysisOptions,
    jobs: usize,
) -> Result<(Vec<ScanRow>, ScanSummary)> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::ResourceLimit(format!("worker pool: {e}")))?;
    let rows: Vec<ScanRow> = pool.install(|| {
        entries
            .par_iter()
            .map(|(name, input)| {
                let result = match input {
                    Ok(k) => analyze_input(k, opts).map_err(|e| e.to_string()),
                    Err(e) => Err(e.to_string()),
                };
                ScanRow { name: name.clone(), result }
            })
            .collect()
    });
    let summary = ScanSummary::of(&rows);
    Ok((rows, summary))
}

pub fn scan_file(path: &Path, opts: &AnalysisOptions, jobs: usize) -> Result<(Vec<ScanRow>, ScanSummary)> {
    let text = std::fs::read_to_string(path)?;
    scan(&parse_corpus(&text), opts, jobs)
}

pub const CSV_HEADER: [&str; 9] = ["name", "s", "hw", "delta1", "e", "E", "classification", "qp", "mirror_qp"];

/// CSV with the columns of [`CSV_HEADER`]; failed rows carry the error in
/// the classification column and leave the others empty.
pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        let record: Vec<String> = match &row.result {
            Ok(r) => vec![
                r.name.clone(),
                r.s.to_string(),
                r.hw.to_string(),
                r.delta_is_one.to_string(),
                r.e.to_string(),
                r.big_e.to_string(),
                r.classification.to_string(),
                r.qp.can_be_qp.to_string(),
                r.qp.can_be_mirror_qp.to_string(),
            ],
            Err(e) => {
                let mut v = vec![String::new(); 9];
                v[0] = row.name.clone();
                v[6] = format!("error: {e}");
                v
            }
        };
        w.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Serialize)]
struct JsonRow<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<&'a InvariantReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonScan<'a> {
    rows: Vec<JsonRow<'a>>,
    summary: ScanSummary,
}

pub fn to_json(rows: &[ScanRow], summary: &ScanSummary) -> String {
    let rows = rows
        .iter()
        .map(|r| JsonRow {
            name: &r.name,
            report: r.result.as_ref().ok(),
            error: r.result.as_ref().err().map(String::as_str),
        })
        .collect();
    serde_json::to_string_pretty(&JsonScan { rows, summary: *summary }).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_trefoil() -> PlanarDiagram {
        PlanarDiagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap().mirror()
    }

    #[test]
    fn classification_rule() {
        use Classification::*;
        assert_eq!(Classification::of(&SResult::Determined(2), true), TopologicallySliceNotSmoothly);
        assert_eq!(Classification::of(&SResult::Determined(0), true), SmoothlySlicePossible);
        assert_eq!(Classification::of(&SResult::Determined(0), false), SmoothlySlicePossible);
        assert_eq!(Classification::of(&SResult::Determined(2), false), NoTopologicalConclusion);
        assert_eq!(Classification::of(&SResult::Ambiguous(vec![-2, 0]), true), SmoothlySlicePossible);
        assert_eq!(Classification::of(&SResult::Ambiguous(vec![2, 4]), true), NoTopologicalConclusion);
        assert_eq!(TopologicallySliceNotSmoothly.to_string(), "topologically-slice-not-smoothly");
    }

    #[test]
    fn trefoil_report() {
        let r = analyze(&right_trefoil(), "3_1", &AnalysisOptions::default()).unwrap();
        assert_eq!(r.s, SResult::Determined(2));
        assert_eq!((r.hw, r.delta_is_one, r.e, r.big_e), (2, false, 2, 4));
        assert_eq!(r.classification, Classification::NoTopologicalConclusion);
        assert_eq!(r.qp, QpFlags { can_be_qp: true, can_be_mirror_qp: false });
        assert_eq!(r.alexander, "1 t^-1, -1 t^0, 1 t^1");
    }

    #[test]
    fn unknot_report() {
        let r = analyze(&PlanarDiagram::unknot(), "0_1", &AnalysisOptions::default()).unwrap();
        assert_eq!(r.s, SResult::Determined(0));
        assert!(r.delta_is_one);
        assert_eq!(r.classification, Classification::SmoothlySlicePossible);
    }

    #[test]
    fn csv_layout() {
        let ok = analyze(&right_trefoil(), "3_1", &AnalysisOptions::default()).unwrap();
        let rows = vec![
            ScanRow { name: "3_1".into(), result: Ok(ok) },
            ScanRow { name: "bad".into(), result: Err("parse error, somewhere".into()) },
        ];
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "name,s,hw,delta1,e,E,classification,qp,mirror_qp");
        assert_eq!(lines[1], "3_1,2,2,false,2,4,no-topological-conclusion,true,false");
        assert_eq!(lines[2], "bad,,,,,,\"error: parse error, somewhere\",,");
        let json = to_json(&rows, &ScanSummary::of(&rows));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rows"][0]["report"]["s"], 2);
        assert_eq!(v["rows"][1]["error"], "parse error, somewhere");
        assert_eq!(v["summary"]["errors"], 1);
    }

    #[test]
    fn cache_is_transparent() {
        let dir = tempfile::tempdir().unwrap();
        let opts = AnalysisOptions { cache: Some(DiskCache::open(dir.path()).unwrap()), ..Default::default() };
        let cold = analyze(&right_trefoil(), "t", &opts).unwrap();
        assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 2);
        let warm = analyze(&right_trefoil(), "t", &opts).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cold, analyze(&right_trefoil(), "t", &AnalysisOptions::default()).unwrap());
    }
}
