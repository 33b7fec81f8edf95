//! Dowker–Thistlethwaite codes.
//!
//! Visits along the knot are numbered `1..=2n`; entry `i` of the code pairs
//! odd visit `2i+1` with the even visit `|a_i|`. A positive entry means the
//! even visit passes under. Edge `k` runs from visit `k` to visit `k+1`
//! (edge `2n` closes the loop), and edge labels become PD arc labels.
//!
//! Realization searches the cyclic orders at the crossings (one bit each:
//! which side the even pass enters from) for the one whose face count makes
//! the projection spherical. The bit of the first crossing is fixed, which
//! selects one of the two mirror-image projections; the fixed value makes
//! `4 6 2` produce the same diagram as the PD code `X(1,4,2,5) X(3,6,4,1)
//! X(5,2,6,3)`.

use super::{Arc, PlanarDiagram, TupleMode};
use crate::error::{Error, Result};

/// Largest code accepted; the search is exponential in the crossing count.
pub const MAX_DT_CROSSINGS: usize = 22;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Leg {
    OddIn,
    OddOut,
    EvenIn,
    EvenOut,
}

/// Parses a whitespace or comma separated DT code, e.g. `4 6 8 2`.
pub fn parse_dt(text: &str) -> Result<PlanarDiagram> {
    let code = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad DT entry {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    from_dt(&code)
}

pub fn from_dt(code: &[i64]) -> Result<PlanarDiagram> {
    let n = code.len();
    if n == 0 {
        return Err(Error::EmptyDiagram);
    }
    if let Some(&odd) = code.iter().find(|&&a| a % 2 != 0) {
        return Err(Error::OddDtEntry(odd));
    }
    if n > MAX_DT_CROSSINGS {
        return Err(Error::ResourceLimit(format!("DT realization limited to {MAX_DT_CROSSINGS} crossings")));
    }
    let m = 2 * n;
    let mut seen = vec![false; m + 1];
    for &a in code {
        let e = a.unsigned_abs() as usize;
        if e == 0 || e > m || seen[e] {
            return Err(Error::NonRealizable(format!("entries must be a permutation of 2..={m} up to sign")));
        }
        seen[e] = true;
    }

    let edge_in = |v: usize| -> Arc {
        if v == 1 {
            m as Arc
        } else {
            (v - 1) as Arc
        }
    };
    let edge_out = |v: usize| -> Arc { v as Arc };
    let pairs: Vec<(usize, usize)> =
        code.iter().enumerate().map(|(i, &a)| (2 * i + 1, a.unsigned_abs() as usize)).collect();

    let legs = |flip: bool| -> [Leg; 4] {
        if flip {
            [Leg::OddIn, Leg::EvenOut, Leg::OddOut, Leg::EvenIn]
        } else {
            [Leg::OddIn, Leg::EvenIn, Leg::OddOut, Leg::EvenOut]
        }
    };
    let label = |i: usize, leg: Leg| -> Arc {
        let (o, e) = pairs[i];
        match leg {
            Leg::OddIn => edge_in(o),
            Leg::OddOut => edge_out(o),
            Leg::EvenIn => edge_in(e),
            Leg::EvenOut => edge_out(e),
        }
    };

    let mut found = None;
    for bits in 0u64..(1u64 << (n - 1)) {
        let flips: Vec<bool> = (0..n).map(|i| i == 0 || bits >> (i - 1) & 1 == 1).collect();
        if count_faces(n, |i| legs(flips[i]), &label) == n + 2 {
            found = Some(flips);
            break;
        }
    }
    let flips = found.ok_or_else(|| Error::NonRealizable("no planar realization".into()))?;

    let tuples = (0..n)
        .map(|i| {
            let l = legs(flips[i]);
            let under_in = if code[i] > 0 { Leg::EvenIn } else { Leg::OddIn };
            let start = l.iter().position(|&x| x == under_in).unwrap();
            let mut t = [0; 4];
            for (k, slot) in t.iter_mut().enumerate() {
                *slot = label(i, l[(start + k) % 4]);
            }
            t
        })
        .collect();
    PlanarDiagram::from_tuples(tuples, TupleMode::Strict, false)
}

fn count_faces<L, F>(n: usize, legs: L, label: &F) -> usize
where
    L: Fn(usize) -> [Leg; 4],
    F: Fn(usize, Leg) -> Arc,
{
    let m = 2 * n;
    // the two (crossing, position) ends of every edge
    let mut ends = vec![[(usize::MAX, 0usize); 2]; m + 1];
    let mut fill = vec![0usize; m + 1];
    let all: Vec<[Leg; 4]> = (0..n).map(&legs).collect();
    for (i, l) in all.iter().enumerate() {
        for (p, &leg) in l.iter().enumerate() {
            let e = label(i, leg) as usize;
            ends[e][fill[e]] = (i, p);
            fill[e] += 1;
        }
    }
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for c0 in 0..n {
        for p0 in 0..4 {
            if seen[c0][p0] {
                continue;
            }
            faces += 1;
            let (mut c, mut p) = (c0, p0);
            while !seen[c][p] {
                seen[c][p] = true;
                let leg = (p + 1) % 4;
                let e = label(c, all[c][leg]) as usize;
                let (c2, p2) = if ends[e][0] == (c, leg) { ends[e][1] } else { ends[e][0] };
                c = c2;
                p = p2;
            }
        }
    }
    faces
}
