//! Knot signature from a Goeritz matrix with the Gordon–Litherland correction.
//!
//! Regions of the diagram are checkerboard coloured. Each crossing joins two
//! white corners; its incidence `eta` is `+1` when the white corners are
//! those between positions 1-2 and 3-0, and `-1` otherwise. The Goeritz
//! matrix has `G_ij = -sum eta` over crossings touching white regions `i != j`
//! and rows summing to zero; one region is dropped. A crossing whose oriented
//! smoothing joins its two shaded corners contributes its `eta` to the
//! correction `mu`, and the signature is `sign(G) - mu`.
//!
//! The sign is normalized so that positive knots have positive signature,
//! e.g. `2` for the right-handed trefoil.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::diagram::PlanarDiagram;

/// Corner `(c, p)` lies between positions `p` and `p + 1` of crossing `c`.
/// Returns the colour (0 or 1) of every face and the face of every corner.
fn checkerboard(d: &PlanarDiagram) -> (Vec<u8>, Vec<[usize; 4]>) {
    let faces = d.faces();
    let mut face_of = vec![[0usize; 4]; d.crossing_count()];
    for (f, face) in faces.iter().enumerate() {
        for &(c, p) in face {
            face_of[c][p] = f;
        }
    }
    let mut colour = vec![u8::MAX; faces.len()];
    colour[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for &(c, p) in &faces[f] {
            for q in [(p + 1) % 4, (p + 3) % 4] {
                let g = face_of[c][q];
                if colour[g] == u8::MAX {
                    colour[g] = 1 - colour[f];
                    queue.push_back(g);
                }
            }
        }
    }
    (colour, face_of)
}

/// Signature computed with the regions of colour `white` as the Goeritz
/// regions.
pub(crate) fn signature_with_colour(d: &PlanarDiagram, white: u8) -> i32 {
    if d.is_unknot_diagram() {
        return 0;
    }
    let (colour, face_of) = checkerboard(d);
    let whites: Vec<usize> = (0..colour.len()).filter(|&f| colour[f] == white).collect();
    let index = |f: usize| whites.iter().position(|&w| w == f).unwrap();
    let m = whites.len();
    let mut g = vec![vec![0i64; m]; m];
    let mut mu = 0i32;
    for (c, x) in d.crossings().iter().enumerate() {
        // corners 0 and 2 share a colour, as do 1 and 3
        let p = if colour[face_of[c][0]] == white { 0 } else { 1 };
        let eta: i64 = if p == 1 { 1 } else { -1 };
        let (a, b) = (index(face_of[c][p]), index(face_of[c][p + 2]));
        if a != b {
            g[a][b] -= eta;
            g[b][a] -= eta;
            g[a][a] += eta;
            g[b][b] += eta;
        }
        // the 1-smoothing joins corners 0 and 2, the 0-smoothing 1 and 3
        let joins_even = x.oriented_is_one();
        if joins_even != (p == 0) {
            mu += eta as i32;
        }
    }
    let reduced: Vec<Vec<i64>> = g.iter().skip(1).map(|row| row[1..].to_vec()).collect();
    symmetric_signature(&reduced) - mu
}

pub fn signature(d: &PlanarDiagram) -> i32 {
    signature_with_colour(d, 0)
}

/// Signature (positive minus negative eigenvalues) of a symmetric integer
/// matrix, by exact congruence diagonalization.
pub fn symmetric_signature(m: &[Vec<i64>]) -> i32 {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut sig = 0;
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let pivot = match live.iter().copied().find(|&i| !a[i][i].is_zero()) {
            Some(i) => Some(i),
            None => {
                // every diagonal entry is zero: add row/column j to i
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                pair.map(|(i, j)| {
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for k in 0..n {
                        let v = a[k][j].clone();
                        a[k][i] += v;
                    }
                    i
                })
            }
        };
        let Some(p) = pivot else { break };
        let d = a[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        live.retain(|&i| i != p);
        for &i in &live {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &k in &live {
                let v = &f * &a[p][k];
                a[i][k] -= v;
            }
        }
        for &i in &live {
            a[i][p] = BigRational::zero();
            a[p][i] = BigRational::zero();
        }
    }
    sig
}
