use crate::diagram::{Crossing, PlanarDiagram};

/// The cube of resolutions of a diagram.
///
/// Vertex `v` is a bitmask: bit `k` set means crossing `k` takes its
/// 1-smoothing. Circles at each vertex are numbered by first appearance when
/// scanning arcs in label order.
#[derive(Clone, Debug)]
pub struct ResolutionCube {
    n: usize,
    arcs: usize,
    circle_of: Vec<u8>,
    circles: Vec<u8>,
    smoothings: Vec<[[(usize, usize); 2]; 2]>,
}

impl ResolutionCube {
    pub fn new(d: &PlanarDiagram) -> Self {
        let n = d.crossing_count();
        if n == 0 {
            return Self { n, arcs: 1, circle_of: vec![0], circles: vec![1], smoothings: Vec::new() };
        }
        let arcs = d.arc_count() as usize;
        let smoothings: Vec<[[(usize, usize); 2]; 2]> = d
            .crossings()
            .iter()
            .map(|x: &Crossing| {
                [false, true].map(|one| x.smoothing(one).map(|(a, b)| ((a - 1) as usize, (b - 1) as usize)))
            })
            .collect();
        let verts = 1usize << n;
        let mut circle_of = vec![0u8; verts * arcs];
        let mut circles = vec![0u8; verts];
        let mut parent = vec![0usize; arcs];
        let mut label = vec![u8::MAX; arcs];
        for v in 0..verts {
            for (k, p) in parent.iter_mut().enumerate() {
                *p = k;
            }
            for (k, s) in smoothings.iter().enumerate() {
                for &(a, b) in &s[v >> k & 1] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
            label.fill(u8::MAX);
            let mut count = 0u8;
            let row = &mut circle_of[v * arcs..(v + 1) * arcs];
            for a in 0..arcs {
                let r = find(&mut parent, a);
                if label[r] == u8::MAX {
                    label[r] = count;
                    count += 1;
                }
                row[a] = label[r];
            }
            circles[v] = count;
        }
        Self { n, arcs, circle_of, circles, smoothings }
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.n
    }

    pub fn circles(&self, v: usize) -> usize {
        self.circles[v] as usize
    }

    /// Circle labels of every arc at vertex `v`, indexed by `label - 1`.
    pub fn circle_labels(&self, v: usize) -> &[u8] {
        &self.circle_of[v * self.arcs..(v + 1) * self.arcs]
    }

    /// Arc index pairs joined at crossing `k` by its 0- or 1-smoothing.
    pub(crate) fn smoothing(&self, k: usize, one: bool) -> [(usize, usize); 2] {
        self.smoothings[k][one as usize]
    }

    /// Sign of the edge leaving `v` along coordinate `k`:
    /// `(-1)^(number of 1s before k)`.
    pub fn edge_sign(v: usize, k: usize) -> i64 {
        if (v & ((1 << k) - 1)).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Total number of enhanced states, `sum over v of 2^circles(v)`.
    pub fn generator_count(&self) -> u128 {
        self.circles.iter().map(|&c| 1u128 << c).sum()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
