use super::{Arc, PlanarDiagram, TupleMode};
use crate::error::{Error, Result};

/// Standard diagram of the pretzel knot `P(p_1, ..., p_m)`: `m` vertical
/// twist columns joined along the top and bottom, `|p_i|` crossings in
/// column `i`. Positive and negative parameters give opposite twists;
/// with this handedness `P(-3, 5, 7)` is the closure of the strongly
/// quasipositive braid `s1 s2 b(2,4) b(3,6) b(1,4) s5 b(2,5)` on 6 strands.
///
/// Errors if a parameter is zero or the result is a link.
pub fn pretzel(params: &[i32]) -> Result<PlanarDiagram> {
    if params.is_empty() || params.contains(&0) {
        return Err(Error::Parse("pretzel parameters must be nonzero".into()));
    }
    let m = params.len();
    let mut next: Arc = 0;
    let mut fresh = || {
        next += 1;
        next
    };
    // top[i] / bottom[i] join the right side of column i to the left side of column i+1
    let top: Vec<Arc> = (0..m).map(|_| fresh()).collect();
    let bottom: Vec<Arc> = (0..m).map(|_| fresh()).collect();
    let mut tuples = Vec::new();
    for (i, &p) in params.iter().enumerate() {
        let len = p.unsigned_abs() as usize;
        let mut left = vec![top[(i + m - 1) % m]];
        let mut right = vec![top[i]];
        for _ in 1..len {
            left.push(fresh());
            right.push(fresh());
        }
        left.push(bottom[(i + m - 1) % m]);
        right.push(bottom[i]);
        for t in 0..len {
            let (nw, ne, sw, se) = (left[t], right[t], left[t + 1], right[t + 1]);
            // counterclockwise: nw, sw, se, ne; strands nw-se and ne-sw
            tuples.push(if p > 0 { [sw, se, ne, nw] } else { [nw, sw, se, ne] });
        }
    }
    PlanarDiagram::from_tuples(tuples, TupleMode::Reorient, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretzel_trefoil() {
        // P(1,1,1) is a trefoil
        let d = pretzel(&[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.writhe().abs(), 3);
        assert!(d.is_alternating());
    }

    #[test]
    fn pretzel_357() {
        let d = pretzel(&[-3, 5, 7]).unwrap();
        assert_eq!(d.crossing_count(), 15);
        assert!(!d.is_alternating());
    }

    #[test]
    fn pretzel_link_rejected() {
        assert!(matches!(pretzel(&[2, 2]), Err(Error::MultipleComponents(_))));
        assert!(pretzel(&[1, 0, 1]).is_err());
    }
}
