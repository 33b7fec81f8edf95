//! The Khovanov chain complex, split into blocks of fixed quantum degree.
//!
//! A generator is a vertex of the cube together with a labelling of its
//! circles by `1` or `x`; in a mask, bit `c` set means circle `c` carries
//! `x`. The unnormalized degree of a generator is `#1 - #x`, and its quantum
//! degree is `deg + r + n_+ - 2 n_-` where `r` is the number of 1-smoothings.
//! Within one vertex, generators with the same number of `x` labels are
//! ordered by their mask (colexicographic order), so their index is the
//! colex rank of the mask.

use std::collections::BTreeMap;

use super::cube::ResolutionCube;
use crate::diagram::PlanarDiagram;
use crate::linalg::SparseMatrix;

pub struct KhovanovComplex {
    cube: ResolutionCube,
    n_plus: i32,
    n_minus: i32,
    levels: Vec<Vec<u32>>,
    binom: [[u64; 34]; 34],
}

fn binomials() -> [[u64; 34]; 34] {
    let mut b = [[0u64; 34]; 34];
    for n in 0..34 {
        b[n][0] = 1;
        for k in 1..=n {
            b[n][k] = b[n - 1][k - 1] + if k < n { b[n - 1][k] } else { 0 };
        }
    }
    b
}

/// Masks of `c` bits with `k` set, in increasing order.
fn masks(c: usize, k: usize) -> impl Iterator<Item = u64> {
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let limit = 1u64 << c;
    let mut cur = Some(first);
    std::iter::from_fn(move || {
        let x = cur?;
        cur = if x == 0 {
            None
        } else {
            let u = x & x.wrapping_neg();
            let v = x + u;
            let next = v + (((v ^ x) / u) >> 2);
            (next < limit).then_some(next)
        };
        Some(x)
    })
}

enum EdgeKind {
    /// Circles `a` and `b` of the source merge into `into`.
    Merge { a: u8, b: u8, into: u8 },
    /// Circle `a` of the source splits into `left` and `right`.
    Split { a: u8, left: u8, right: u8 },
}

struct Edge {
    target: usize,
    sign: i64,
    kind: EdgeKind,
    /// New label of each source circle not touched by the edge.
    relabel: Vec<u8>,
}

impl KhovanovComplex {
    pub fn new(d: &PlanarDiagram) -> Self {
        let cube = ResolutionCube::new(d);
        let n = cube.crossing_count();
        let mut levels = vec![Vec::new(); n + 1];
        for v in 0..cube.vertex_count() as u32 {
            levels[v.count_ones() as usize].push(v);
        }
        Self { cube, n_plus: d.positive_count() as i32, n_minus: d.negative_count() as i32, levels, binom: binomials() }
    }

    pub fn cube(&self) -> &ResolutionCube {
        &self.cube
    }

    pub fn n_minus(&self) -> i32 {
        self.n_minus
    }

    pub fn max_level(&self) -> usize {
        self.cube.crossing_count()
    }

    /// Number of `x` labels a generator at vertex `v` (level `r`) needs to sit
    /// in quantum degree `j`.
    fn x_count(&self, v: usize, r: usize, j: i32) -> Option<usize> {
        let c = self.cube.circles(v) as i32;
        let twice = c + r as i32 + self.n_plus - 2 * self.n_minus - j;
        (twice % 2 == 0 && twice >= 0 && twice / 2 <= c).then_some((twice / 2) as usize)
    }

    /// Dimensions of the chain groups, keyed by `(r, j)`.
    pub fn dimensions(&self) -> BTreeMap<(usize, i32), usize> {
        let mut dims = BTreeMap::new();
        for (r, level) in self.levels.iter().enumerate() {
            for &v in level {
                let c = self.cube.circles(v as usize);
                for k in 0..=c {
                    let j = (c as i32 - 2 * k as i32) + r as i32 + self.n_plus - 2 * self.n_minus;
                    *dims.entry((r, j)).or_insert(0) += self.binom[c][k] as usize;
                }
            }
        }
        dims
    }

    fn offsets(&self, r: usize, j: i32) -> (Vec<u32>, usize) {
        let mut off = vec![u32::MAX; self.cube.vertex_count()];
        let mut total = 0usize;
        if let Some(level) = self.levels.get(r) {
            for &v in level {
                if let Some(k) = self.x_count(v as usize, r, j) {
                    off[v as usize] = total as u32;
                    total += self.binom[self.cube.circles(v as usize)][k] as usize;
                }
            }
        }
        (off, total)
    }

    fn colex_rank(&self, mask: u64) -> u64 {
        let mut rank = 0;
        let mut m = mask;
        let mut t = 1;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            rank += self.binom[p][t];
            t += 1;
            m &= m - 1;
        }
        rank
    }

    fn edges(&self, v: usize) -> Vec<Edge> {
        let n = self.cube.crossing_count();
        let src = self.cube.circle_labels(v);
        let c = self.cube.circles(v);
        let mut rep = vec![usize::MAX; c];
        for (arc, &l) in src.iter().enumerate() {
            if rep[l as usize] == usize::MAX {
                rep[l as usize] = arc;
            }
        }
        let mut out = Vec::new();
        for k in 0..n {
            if v >> k & 1 == 1 {
                continue;
            }
            let w = v | 1 << k;
            let dst = self.cube.circle_labels(w);
            let [(a0, a1), (a2, _)] = self.cube.smoothing(k, false);
            let (ca, cb) = (src[a0], src[a2]);
            let kind = if ca != cb {
                EdgeKind::Merge { a: ca, b: cb, into: dst[a0] }
            } else {
                EdgeKind::Split { a: ca, left: dst[a0], right: dst[a1] }
            };
            let relabel = rep.iter().map(|&arc| dst[arc]).collect();
            out.push(Edge { target: w, sign: ResolutionCube::edge_sign(v, k), kind, relabel });
        }
        out
    }

    /// The differential `C^{r,j} -> C^{r+1,j}`; row `g` is the image of
    /// generator `g`.
    pub fn differential(&self, r: usize, j: i32) -> SparseMatrix {
        let (_, rows) = self.offsets(r, j);
        let (target_off, cols) = self.offsets(r + 1, j);
        let mut m = SparseMatrix::new(cols);
        if rows == 0 {
            return m;
        }
        for &v in &self.levels[r] {
            let v = v as usize;
            let Some(k) = self.x_count(v, r, j) else { continue };
            let c = self.cube.circles(v);
            let edges = self.edges(v);
            for mask in masks(c, k) {
                let mut row = Vec::with_capacity(2 * edges.len());
                for e in &edges {
                    let base_of = |skip: &[u8]| -> u64 {
                        let mut out = 0u64;
                        for x in 0..c as u8 {
                            if !skip.contains(&x) && mask >> x & 1 == 1 {
                                out |= 1 << e.relabel[x as usize];
                            }
                        }
                        out
                    };
                    let off = target_off[e.target] as u64;
                    let mut emit = |m2: u64| row.push(((off + self.colex_rank(m2)) as u32, e.sign));
                    match e.kind {
                        EdgeKind::Merge { a, b, into } => {
                            let (xa, xb) = (mask >> a & 1, mask >> b & 1);
                            if xa & xb == 1 {
                                continue;
                            }
                            let mut m2 = base_of(&[a, b]);
                            if xa | xb == 1 {
                                m2 |= 1 << into;
                            }
                            emit(m2);
                        }
                        EdgeKind::Split { a, left, right } => {
                            let base = base_of(&[a]);
                            if mask >> a & 1 == 1 {
                                emit(base | 1 << left | 1 << right);
                            } else {
                                emit(base | 1 << left);
                                emit(base | 1 << right);
                            }
                        }
                    }
                }
                m.push_row(row);
            }
        }
        m
    }
}
