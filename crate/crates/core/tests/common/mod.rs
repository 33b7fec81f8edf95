#![allow(dead_code)]

use slicescan::pipeline::parse_corpus;
use slicescan::PlanarDiagram;

pub const KNOTS9: &str = include_str!("../data/knots9.txt");

/// Named diagrams of the bundled corpus.
pub fn corpus() -> Vec<(String, PlanarDiagram)> {
    parse_corpus(KNOTS9)
        .into_iter()
        .map(|(name, k)| {
            let d = k.and_then(|k| k.diagram()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, d)
        })
        .collect()
}

pub fn positive_trefoil() -> PlanarDiagram {
    PlanarDiagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap().mirror()
}

pub fn torus_2_7() -> PlanarDiagram {
    slicescan::BraidWord::parse("2 | s1 s1 s1 s1 s1 s1 s1").unwrap().closure().unwrap()
}
