mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use slicescan::khovanov::homology_ranks;
use slicescan::polyinv::{homfly, morton_check, skein_relation_holds, v_span};
use slicescan::rasmussen::{crossing_change_check, extract_s, writhe_seifert_lower_bound};
use slicescan::{PlanarDiagram, SResult, Sign};

fn knots() -> &'static [(String, PlanarDiagram)] {
    static KNOTS: OnceLock<Vec<(String, PlanarDiagram)>> = OnceLock::new();
    KNOTS.get_or_init(common::corpus)
}

fn s_of(d: &PlanarDiagram) -> i32 {
    extract_s(&homology_ranks(d).unwrap()).unwrap().determined().unwrap()
}

/// A corpus diagram with up to two extra kinks at chosen arcs and signs.
fn kinked() -> impl Strategy<Value = (usize, PlanarDiagram)> {
    (0..knots().len(), prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..=2)).prop_map(
        |(k, kinks)| {
            let mut d = knots()[k].1.clone();
            for (arc, positive) in kinks {
                let arc = arc.index(d.arc_count() as usize) as u32 + 1;
                let sign = if positive { Sign::Positive } else { Sign::Negative };
                d = d.with_kink(arc, sign).unwrap();
            }
            (k, d)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kinks_preserve_invariants((k, d) in kinked()) {
        let base = &knots()[k].1;
        prop_assert_eq!(homfly(&d).unwrap(), homfly(base).unwrap());
        prop_assert_eq!(s_of(&d), s_of(base));
    }

    #[test]
    fn s_exceeds_writhe_bound((_, d) in kinked()) {
        prop_assert!(s_of(&d) >= writhe_seifert_lower_bound(&d));
        prop_assert!(-s_of(&d) >= writhe_seifert_lower_bound(&d.mirror()));
    }

    #[test]
    fn morton_bounds_hold((_, d) in kinked()) {
        let span = v_span(&homfly(&d).unwrap()).unwrap();
        prop_assert!(morton_check(&d, span));
    }

    #[test]
    fn mirror_negates_s_and_span((_, d) in kinked()) {
        let m = d.mirror();
        prop_assert_eq!(s_of(&m), -s_of(&d));
        let (a, b) = (v_span(&homfly(&d).unwrap()).unwrap(), v_span(&homfly(&m).unwrap()).unwrap());
        prop_assert_eq!((b.e, b.big_e), (-a.big_e, -a.e));
    }

    #[test]
    fn switches_move_s_by_at_most_two((_, d) in kinked(), c in any::<prop::sample::Index>()) {
        let idx = c.index(d.crossing_count());
        prop_assert!(crossing_change_check(&d, idx, &Default::default()).unwrap());
        prop_assert!(skein_relation_holds(&d, idx).unwrap());
    }

    #[test]
    fn s_is_even(k in 0..knots().len()) {
        let s = extract_s(&homology_ranks(&knots()[k].1).unwrap()).unwrap();
        prop_assert!(matches!(s, SResult::Determined(v) if v % 2 == 0));
    }
}
