mod common;

use common::{corpus, positive_trefoil, torus_2_7};
use slicescan::khovanov::{homological_width, homology_ranks};
use slicescan::pipeline::{parse_corpus, scan, to_csv, AnalysisOptions, Classification, DiskCache};
use slicescan::polyinv::{alexander, homfly, signature, v_span};
use slicescan::rasmussen::extract_s;
use slicescan::{PlanarDiagram, SResult};

/// Determinant, |signature| and |s| from the standard knot tables.
const TABLE: &[(&str, i64, i32, i32)] = &[
    ("3_1", 3, 2, 2),
    ("4_1", 5, 0, 0),
    ("5_1", 5, 4, 4),
    ("5_2", 7, 2, 2),
    ("6_1", 9, 0, 0),
    ("6_2", 11, 2, 2),
    ("6_3", 13, 0, 0),
    ("7_1", 7, 6, 6),
    ("7_2", 11, 2, 2),
    ("7_3", 13, 4, 4),
    ("7_4", 15, 2, 2),
    ("7_5", 17, 4, 4),
    ("7_6", 19, 2, 2),
    ("7_7", 21, 0, 0),
    ("8_1", 13, 0, 0),
    ("8_19", 3, 6, 6),
    ("8_20", 9, 0, 0),
    ("8_21", 15, 2, 2),
    ("9_1", 9, 8, 8),
    ("9_42", 7, 2, 0),
];

fn determinant(d: &PlanarDiagram) -> i64 {
    let delta = alexander(&homfly(d).unwrap()).unwrap();
    delta.terms().map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c }).sum::<i64>().abs()
}

#[test]
fn corpus_matches_knot_tables() {
    let knots = corpus();
    assert_eq!(knots.len(), TABLE.len());
    for ((name, d), &(want, det, sigma, s)) in knots.iter().zip(TABLE) {
        assert_eq!(name, want);
        assert_eq!(determinant(d), det, "{name} determinant");
        assert_eq!(signature(d).abs(), sigma, "{name} signature");
        let got = extract_s(&homology_ranks(d).unwrap()).unwrap();
        assert_eq!(got.determined().map(i32::abs), Some(s), "{name} s");
    }
}

#[test]
fn thick_knots_have_width_three() {
    for (name, d) in corpus() {
        let hw = homological_width(&homology_ranks(&d).unwrap()).unwrap();
        let want = if name == "8_19" || name == "9_42" { 3 } else { 2 };
        assert_eq!(hw, want, "{name}");
    }
}

#[test]
fn dt_trefoil_has_the_pd_trefoil_homfly() {
    let dt = slicescan::diagram::parse_dt("4 6 2").unwrap();
    assert_eq!(homfly(&dt).unwrap(), homfly(&positive_trefoil().mirror()).unwrap());
}

#[test]
fn positive_torus_knots() {
    let r = homology_ranks(&torus_2_7()).unwrap();
    assert_eq!(extract_s(&r).unwrap(), SResult::Determined(6));
    let span = v_span(&homfly(&torus_2_7()).unwrap()).unwrap();
    assert_eq!((span.e, span.big_e), (6, 8));
}

fn opts() -> AnalysisOptions {
    AnalysisOptions::default()
}

#[test]
fn scan_of_three_small_knots() {
    let text = "unknot\tbraid:1 |\ntrefoil\tpd:X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nfigure8\tdt:4 6 8 2\n";
    let (rows, summary) = scan(&parse_corpus(text), &opts(), 2).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!((summary.total, summary.delta_one, summary.delta_one_s_nonzero, summary.ambiguous), (3, 1, 0, 0));
    let unknot = rows[0].result.as_ref().unwrap();
    assert!(unknot.delta_is_one);
    assert_eq!(unknot.classification, Classification::SmoothlySlicePossible);
}

#[test]
fn empty_scan() {
    let (rows, summary) = scan(&parse_corpus(""), &opts(), 1).unwrap();
    assert!(rows.is_empty());
    assert_eq!(summary, Default::default());
}

#[test]
fn oversized_entry_fails_alone() {
    let big = format!("2 |{}", " s1".repeat(17));
    let text = format!("trefoil\tdt:4 6 2\nbig\tbraid:{big}\nfigure8\tdt:4 6 8 2\n");
    let (rows, summary) = scan(&parse_corpus(&text), &opts(), 0).unwrap();
    assert_eq!(summary.errors, 1);
    assert!(rows[0].result.is_ok() && rows[2].result.is_ok());
    let err = rows[1].result.as_ref().unwrap_err();
    assert!(err.contains("limit"), "{err}");
    assert!(to_csv(&rows).contains("big,,,,,,error: "));
}

#[test]
fn scans_are_deterministic_and_cacheable() {
    let entries = parse_corpus(common::KNOTS9);
    let (plain, _) = scan(&entries, &opts(), 0).unwrap();
    let (again, _) = scan(&entries, &opts(), 3).unwrap();
    assert_eq!(to_csv(&plain), to_csv(&again));

    let dir = tempfile::tempdir().unwrap();
    let cached = AnalysisOptions { cache: Some(DiskCache::open(dir.path()).unwrap()), ..opts() };
    let (cold, _) = scan(&entries, &cached, 0).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2 * entries.len());
    let (warm, _) = scan(&entries, &cached, 0).unwrap();
    assert_eq!(cold, plain);
    assert_eq!(warm, plain);
}
