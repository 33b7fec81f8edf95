//! Polynomial invariants and the signature.

mod homfly;
mod signature;

use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly1, LaurentPoly2};
use crate::rasmussen::SResult;

pub use homfly::{homfly, homfly_with_budget, skein_relation_holds, skein_triple, DEFAULT_SKEIN_BUDGET};
pub use signature::{signature, symmetric_signature};

/// Lowest and highest exponents of `v` in a HOMFLY polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VSpan {
    pub e: i32,
    #[serde(rename = "E")]
    pub big_e: i32,
}

pub fn v_span(p: &LaurentPoly2) -> Result<VSpan> {
    let (e, big_e) = p.first_span().ok_or(Error::ZeroPolynomial)?;
    Ok(VSpan { e, big_e })
}

/// `w - O + 1 <= e <= E <= w + O - 1` for the diagram `d`.
pub fn morton_check(d: &PlanarDiagram, span: VSpan) -> bool {
    let w = d.writhe();
    let o = d.seifert_circles() as i32;
    w - o + 1 <= span.e && span.e <= span.big_e && span.big_e <= w + o - 1
}

/// The Alexander polynomial from HOMFLY via `v = 1`, `z = t^{1/2} - t^{-1/2}`,
/// normalized so that `Δ(1) = 1`.
pub fn alexander(p: &LaurentPoly2) -> Result<LaurentPoly1> {
    // work in s = t^{1/2}
    let mut in_s = LaurentPoly1::zero();
    let z = LaurentPoly1::from_terms([(1, 1), (-1, -1)]);
    for ((_, b), c) in p.terms() {
        if b < 0 {
            return Err(Error::BadSpecialization);
        }
        in_s = in_s + z.pow(b as u32).scaled(c);
    }
    if in_s.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if in_s.terms().any(|(e, _)| e % 2 != 0) {
        return Err(Error::BadSpecialization);
    }
    let delta = in_s.map_exponents(|e| e / 2);
    match delta.eval_at_one() {
        1 => Ok(delta),
        -1 => Ok(delta.scaled(-1)),
        _ => Err(Error::BadSpecialization),
    }
}

/// Whether the knot or its mirror can be quasipositive, from
/// `0 <= s <= e` and `E <= s <= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QpFlags {
    pub can_be_qp: bool,
    pub can_be_mirror_qp: bool,
}

/// Ambiguous `s` values give a flag whenever any candidate allows it.
pub fn qp_obstruction(s: &SResult, span: VSpan) -> QpFlags {
    let c = s.candidates();
    QpFlags {
        can_be_qp: c.iter().any(|&s| 0 <= s && s <= span.e),
        can_be_mirror_qp: c.iter().any(|&s| span.big_e <= s && s <= 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_dt;

    fn right_trefoil() -> PlanarDiagram {
        PlanarDiagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap().mirror()
    }

    #[test]
    fn spans() {
        let t = right_trefoil();
        let span = v_span(&homfly(&t).unwrap()).unwrap();
        assert_eq!(span, VSpan { e: 2, big_e: 4 });
        assert!(morton_check(&t, span));
        let mspan = v_span(&homfly(&t.mirror()).unwrap()).unwrap();
        assert_eq!(mspan, VSpan { e: -4, big_e: -2 });
        assert_eq!(v_span(&LaurentPoly2::one()).unwrap(), VSpan { e: 0, big_e: 0 });
        assert!(morton_check(&PlanarDiagram::unknot(), VSpan { e: 0, big_e: 0 }));
        assert!(!morton_check(&t, VSpan { e: 0, big_e: 4 }));
        assert_eq!(v_span(&LaurentPoly2::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn alexander_values() {
        let one = LaurentPoly1::one();
        assert_eq!(alexander(&LaurentPoly2::one()).unwrap(), one);
        let trefoil = LaurentPoly1::from_terms([(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(alexander(&homfly(&right_trefoil()).unwrap()).unwrap(), trefoil);
        let fig8 = LaurentPoly1::from_terms([(1, -1), (0, 3), (-1, -1)]);
        assert_eq!(alexander(&homfly(&parse_dt("4 6 8 2").unwrap()).unwrap()).unwrap(), fig8);
        assert_eq!(alexander(&LaurentPoly2::zero()), Err(Error::ZeroPolynomial));
        // a two-component unlink has a z^{-1} term
        let unlink = LaurentPoly2::from_terms([((-1, -1), 1), ((1, -1), -1)]);
        assert_eq!(alexander(&unlink), Err(Error::BadSpecialization));
        // odd powers of z do not specialize to integral powers of t
        assert_eq!(alexander(&LaurentPoly2::monomial(1, (0, 1))), Err(Error::BadSpecialization));
    }

    #[test]
    fn alexander_is_symmetric() {
        for code in ["4 6 2", "4 6 8 2", "6 8 10 2 4", "4 8 10 2 6", "4 -8 6 -2 10"] {
            let d = alexander(&homfly(&parse_dt(code).unwrap()).unwrap()).unwrap();
            assert_eq!(d, d.inverted(), "{code}");
            assert_eq!(d.eval_at_one(), 1);
        }
    }

    #[test]
    fn qp_flags() {
        let f = qp_obstruction(&SResult::Determined(2), VSpan { e: 2, big_e: 12 });
        assert_eq!(f, QpFlags { can_be_qp: true, can_be_mirror_qp: false });
        let f = qp_obstruction(&SResult::Determined(2), VSpan { e: 0, big_e: 8 });
        assert!(!f.can_be_qp);
        let f = qp_obstruction(&SResult::Determined(-2), VSpan { e: -6, big_e: -2 });
        assert!(f.can_be_mirror_qp);
        let f = qp_obstruction(&SResult::Ambiguous(vec![-2, 0]), VSpan { e: -2, big_e: 0 });
        assert_eq!(f, QpFlags { can_be_qp: false, can_be_mirror_qp: true });
        let f = qp_obstruction(&SResult::Ambiguous(vec![0, 2]), VSpan { e: 2, big_e: 4 });
        assert!(f.can_be_qp);
    }
}
