//! Oriented knot diagrams in planar-diagram (PD) form.
//!
//! A crossing is a 4-tuple of arc labels listed counterclockwise, starting at
//! the incoming under-strand. The under-strand therefore runs from position 0
//! to position 2; the over-strand occupies positions 1 and 3 and its direction
//! decides the sign of the crossing:
//!
//! ```text
//!   over 3 -> 1 : positive      over 1 -> 3 : negative
//! ```
//!
//! The 0-smoothing joins positions (0,1) and (2,3); the 1-smoothing joins
//! (0,3) and (1,2). For a positive crossing the 0-smoothing is the oriented
//! one, for a negative crossing the 1-smoothing is.

mod dt;
mod families;

use std::collections::HashMap;
use std::fmt;

use once_regex::pd_tuple_regex;

use crate::error::{Error, Result};

pub use dt::parse_dt;
pub use families::pretzel;

pub type Arc = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    arcs: [Arc; 4],
    sign: Sign,
}

impl Crossing {
    pub(crate) fn new(arcs: [Arc; 4], sign: Sign) -> Self {
        Self { arcs, sign }
    }

    pub fn arcs(&self) -> [Arc; 4] {
        self.arcs
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    /// Position where the over-strand enters.
    pub fn over_in(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    /// Position where the over-strand leaves.
    pub fn over_out(&self) -> usize {
        (self.over_in() + 2) % 4
    }

    pub fn is_incoming(&self, pos: usize) -> bool {
        pos == 0 || pos == self.over_in()
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            // over d -> b becomes the under-strand
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            // over b -> d becomes the under-strand
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }

    /// Position pairs joined by the 0- or 1-smoothing.
    pub fn smoothing_positions(one: bool) -> [(usize, usize); 2] {
        if one {
            [(0, 3), (1, 2)]
        } else {
            [(0, 1), (2, 3)]
        }
    }

    /// Arc pairs joined by the 0- or 1-smoothing.
    pub fn smoothing(&self, one: bool) -> [(Arc, Arc); 2] {
        Self::smoothing_positions(one).map(|(p, q)| (self.arcs[p], self.arcs[q]))
    }

    /// Whether the orientation-respecting smoothing is the 1-smoothing.
    pub fn oriented_is_one(&self) -> bool {
        self.sign == Sign::Negative
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X({a},{b},{c},{d})")
    }
}

/// One pass of the knot through a crossing, in traversal order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub over: bool,
    /// The arc along which the crossing is entered.
    pub incoming: Arc,
}

/// An oriented single-component knot diagram.
///
/// The 0-crossing unknot is a dedicated value built by
/// [`PlanarDiagram::unknot`]; parsing never yields it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
}

/// The two (crossing, position) endpoints of every arc, indexed by `label - 1`.
pub(crate) fn arc_endpoints(crossings: &[Crossing], arc_count: u32) -> Vec<[(usize, usize); 2]> {
    let mut ends = vec![[(usize::MAX, 0); 2]; arc_count as usize];
    let mut fill = vec![0usize; arc_count as usize];
    for (ci, x) in crossings.iter().enumerate() {
        for (p, &a) in x.arcs.iter().enumerate() {
            let k = (a - 1) as usize;
            ends[k][fill[k]] = (ci, p);
            fill[k] += 1;
        }
    }
    ends
}

fn other_end(ends: &[[(usize, usize); 2]], arc: Arc, here: (usize, usize)) -> (usize, usize) {
    let e = ends[(arc - 1) as usize];
    if e[0] == here {
        e[1]
    } else {
        e[0]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count_roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// How [`PlanarDiagram::from_tuples`] treats the direction of the under-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum TupleMode {
    /// Position 0 must be the incoming under-strand.
    Strict,
    /// Positions 0 and 2 are the under-strand in either direction; tuples
    /// are rotated so position 0 becomes incoming.
    Reorient,
}

impl PlanarDiagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), arc_count: 1 }
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    /// Parses a PD code such as `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`.
    ///
    /// Square brackets, a `PD[...]` wrapper and comma separators are also
    /// accepted. Labels must be `1..=2n`.
    pub fn parse_pd(text: &str) -> Result<Self> {
        let tuples = tokenize_pd(text)?;
        let n = tuples.len() as u32;
        for t in &tuples {
            for &a in t {
                if a == 0 || a > 2 * n {
                    return Err(Error::Parse(format!("arc label {a} outside 1..={}", 2 * n)));
                }
            }
        }
        Self::from_tuples(tuples, TupleMode::Strict, false)
    }

    /// Validates tuples and derives signs by tracing the knot.
    ///
    /// With `relabel`, arbitrary positive labels are accepted and renumbered
    /// `1..=2n` along the orientation, starting at the incoming under-arc of
    /// the first crossing.
    pub(crate) fn from_tuples(mut tuples: Vec<[Arc; 4]>, mode: TupleMode, relabel: bool) -> Result<Self> {
        if tuples.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let n = tuples.len();
        if relabel {
            let mut map: HashMap<Arc, Arc> = HashMap::new();
            for t in &tuples {
                for &a in t {
                    let next = map.len() as Arc + 1;
                    map.entry(a).or_insert(next);
                }
            }
            for t in &mut tuples {
                for a in t.iter_mut() {
                    *a = map[a];
                }
            }
        }
        let arc_count = 2 * n as u32;
        let mut counts = vec![0usize; arc_count as usize + 1];
        for t in &tuples {
            for &a in t {
                if a == 0 || a > arc_count {
                    // more distinct labels than 2n means some label is unpaired
                    return Err(Error::ArcMultiplicity { label: a, count: 1 });
                }
                counts[a as usize] += 1;
            }
        }
        if let Some((label, &count)) = counts.iter().enumerate().skip(1).find(|(_, &c)| c != 2) {
            return Err(Error::ArcMultiplicity { label: label as u32, count });
        }

        // provisional crossings: only positions matter for endpoint lookup
        let provisional: Vec<Crossing> = tuples.iter().map(|&t| Crossing::new(t, Sign::Positive)).collect();
        let ends = arc_endpoints(&provisional, arc_count);

        let mut uf = UnionFind::new(arc_count as usize);
        for t in &tuples {
            uf.union((t[0] - 1) as usize, (t[2] - 1) as usize);
            uf.union((t[1] - 1) as usize, (t[3] - 1) as usize);
        }
        let components = uf.count_roots();
        if components != 1 {
            return Err(Error::MultipleComponents(components));
        }

        // trace from the under-strand of crossing 0, entering at position 0
        let mut under_in: Vec<Option<usize>> = vec![None; n];
        let mut over_in: Vec<Option<usize>> = vec![None; n];
        let mut order: Vec<Arc> = Vec::with_capacity(2 * n);
        let start = (0usize, 0usize);
        let mut here = start;
        loop {
            let (c, p) = here;
            order.push(tuples[c][p]);
            let slot = if p % 2 == 0 { &mut under_in[c] } else { &mut over_in[c] };
            if slot.is_some() {
                return Err(Error::InconsistentOrientation(c));
            }
            *slot = Some(p);
            let exit = (c, (p + 2) % 4);
            let next = other_end(&ends, tuples[c][exit.1], exit);
            if next == start {
                break;
            }
            here = next;
        }
        if order.len() != 2 * n {
            return Err(Error::MultipleComponents(2));
        }

        let mut crossings = Vec::with_capacity(n);
        for (c, t) in tuples.iter().enumerate() {
            let (ui, oi) = (under_in[c].unwrap(), over_in[c].unwrap());
            let (arcs, oi) = match (ui, mode) {
                (0, _) => (*t, oi),
                (2, TupleMode::Reorient) => ([t[2], t[3], t[0], t[1]], (oi + 2) % 4),
                _ => return Err(Error::InconsistentOrientation(c)),
            };
            let sign = if oi == 3 { Sign::Positive } else { Sign::Negative };
            crossings.push(Crossing::new(arcs, sign));
        }

        let mut d = PlanarDiagram { crossings, arc_count };
        if relabel {
            // order[k] is the arc entering the k-th visit; renumber along it
            let mut map = vec![0 as Arc; arc_count as usize + 1];
            for (k, &a) in order.iter().enumerate() {
                map[a as usize] = k as Arc + 1;
            }
            for x in &mut d.crossings {
                for a in x.arcs.iter_mut() {
                    *a = map[*a as usize];
                }
            }
        }
        let faces = d.faces().len();
        if faces != n + 2 {
            return Err(Error::NonPlanar { faces, expected: n + 2 });
        }
        Ok(d)
    }

    pub(crate) fn endpoints(&self) -> Vec<[(usize, usize); 2]> {
        arc_endpoints(&self.crossings, self.arc_count)
    }

    /// Passes through crossings in the order met along the orientation,
    /// starting at the under-pass of crossing 0.
    pub fn traversal(&self) -> Vec<Visit> {
        if self.crossings.is_empty() {
            return Vec::new();
        }
        let ends = self.endpoints();
        let start = (0usize, 0usize);
        let mut here = start;
        let mut visits = Vec::with_capacity(2 * self.crossings.len());
        loop {
            let (c, p) = here;
            let x = &self.crossings[c];
            visits.push(Visit { crossing: c, over: p % 2 == 1, incoming: x.arcs[p] });
            let exit = (c, (p + 2) % 4);
            here = other_end(&ends, x.arcs[exit.1], exit);
            if here == start {
                break;
            }
        }
        visits
    }

    /// Faces of the planar embedding as cycles of corners. Corner `(c, p)` is
    /// the region swept counterclockwise from position `p` to `p + 1` at
    /// crossing `c`.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.crossings.len();
        if n == 0 {
            return vec![Vec::new(), Vec::new()];
        }
        let ends = self.endpoints();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c0 in 0..n {
            for p0 in 0..4 {
                if seen[c0][p0] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut c, mut p) = (c0, p0);
                while !seen[c][p] {
                    seen[c][p] = true;
                    face.push((c, p));
                    let leg = (p + 1) % 4;
                    let (c2, p2) = other_end(&ends, self.crossings[c].arcs[leg], (c, leg));
                    c = c2;
                    p = p2;
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|x| x.sign.value()).sum()
    }

    pub fn positive_count(&self) -> usize {
        self.crossings.iter().filter(|x| x.is_positive()).count()
    }

    pub fn negative_count(&self) -> usize {
        self.crossings.len() - self.positive_count()
    }

    pub fn is_positive_diagram(&self) -> bool {
        self.crossings.iter().all(Crossing::is_positive)
    }

    /// Whether over- and under-passes alternate along the knot.
    pub fn is_alternating(&self) -> bool {
        let visits = self.traversal();
        visits.iter().zip(visits.iter().cycle().skip(1)).all(|(a, b)| a.over != b.over)
    }

    /// Number of circles in the resolution given by `state` (bit `k` set
    /// means crossing `k` takes its 1-smoothing).
    pub fn resolution_circles(&self, state: u64) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        let mut uf = UnionFind::new(self.arc_count as usize);
        for (k, x) in self.crossings.iter().enumerate() {
            for (a, b) in x.smoothing(state >> k & 1 == 1) {
                uf.union((a - 1) as usize, (b - 1) as usize);
            }
        }
        uf.count_roots()
    }

    /// The state selecting the orientation-respecting smoothing everywhere.
    pub fn seifert_state(&self) -> u64 {
        self.crossings.iter().enumerate().filter(|(_, x)| x.oriented_is_one()).fold(0u64, |s, (k, _)| s | 1 << k)
    }

    /// Number of Seifert circles.
    pub fn seifert_circles(&self) -> usize {
        self.resolution_circles(self.seifert_state())
    }

    pub fn mirror(&self) -> PlanarDiagram {
        PlanarDiagram { crossings: self.crossings.iter().map(Crossing::switched).collect(), arc_count: self.arc_count }
    }

    pub fn switch_crossing(&self, index: usize) -> Result<PlanarDiagram> {
        if index >= self.crossings.len() {
            return Err(Error::CrossingIndex { index, count: self.crossings.len() });
        }
        let mut d = self.clone();
        d.crossings[index] = d.crossings[index].switched();
        Ok(d)
    }

    /// Adds a Reidemeister-I kink of the given sign on arc `arc`.
    pub fn with_kink(&self, arc: Arc, sign: Sign) -> Result<PlanarDiagram> {
        if self.crossings.is_empty() {
            // the 1-crossing kink diagrams of the unknot
            let t = match sign {
                Sign::Positive => [1, 1, 2, 2],
                Sign::Negative => [2, 1, 1, 2],
            };
            return Self::from_tuples(vec![t], TupleMode::Strict, true);
        }
        if arc == 0 || arc > self.arc_count {
            return Err(Error::Parse(format!("arc {arc} out of range")));
        }
        // split `arc` into arc -> a -> b, with the kink crossing on a and b
        let (a, b) = (self.arc_count + 1, self.arc_count + 2);
        let ends = self.endpoints();
        let mut tuples: Vec<[Arc; 4]> = self.crossings.iter().map(|x| x.arcs).collect();
        // the end where `arc` enters a crossing becomes `b`
        let [e0, e1] = ends[(arc - 1) as usize];
        let head = if self.crossings[e0.0].is_incoming(e0.1) { e0 } else { e1 };
        tuples[head.0][head.1] = b;
        // kink: the strand enters on `arc`, loops via `a`, leaves on `b`
        let kink = match sign {
            // positive: under arc->a, over a->b entering at position 3
            Sign::Positive => [arc, b, a, a],
            // negative: over arc->a entering at position 1, under a->b
            Sign::Negative => [a, arc, b, a],
        };
        tuples.push(kink);
        Self::from_tuples(tuples, TupleMode::Strict, true)
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            return write!(f, "unknot");
        }
        let parts: Vec<String> = self.crossings.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

mod once_regex {
    use regex::Regex;
    use std::sync::OnceLock;

    pub fn pd_tuple_regex() -> &'static Regex {
        static RE: OnceLock<Regex> = OnceLock::new();
        RE.get_or_init(|| {
            Regex::new(r"(?:[Xx]\s*)?[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]").unwrap()
        })
    }
}

fn tokenize_pd(text: &str) -> Result<Vec<[Arc; 4]>> {
    let re = pd_tuple_regex();
    let mut tuples = Vec::new();
    for cap in re.captures_iter(text) {
        let mut t = [0; 4];
        for (k, slot) in t.iter_mut().enumerate() {
            let s = &cap[k + 1];
            *slot = s.parse::<u32>().map_err(|_| Error::Parse(format!("bad arc label {s:?}")))?;
        }
        tuples.push(t);
    }
    let rest = re.replace_all(text, "");
    let rest = rest.trim();
    let rest = rest.strip_prefix("PD").unwrap_or(rest);
    if let Some(bad) = rest.chars().find(|ch| !(ch.is_whitespace() || ",;[]()".contains(*ch))) {
        return Err(Error::Parse(format!("malformed PD code near {bad:?}")));
    }
    if tuples.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    Ok(tuples)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TREFOIL_PD: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
    const FIGURE_EIGHT_PD: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";

    #[test]
    fn parses_trefoil() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        // this standard table code is the left-handed trefoil
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.seifert_circles(), 2);
        assert!(d.is_alternating());
        assert_eq!(d.to_string(), TREFOIL_PD);
    }

    #[test]
    fn accepts_bracket_forms() {
        let a = PlanarDiagram::parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        let b = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(PlanarDiagram::parse_pd(""), Err(Error::EmptyDiagram));
        assert!(matches!(PlanarDiagram::parse_pd("X(1,2,3)"), Err(Error::Parse(_))));
        assert!(matches!(
            PlanarDiagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,6)"),
            Err(Error::ArcMultiplicity { .. })
        ));
        // Hopf link
        assert!(matches!(PlanarDiagram::parse_pd("X(1,3,2,4) X(3,1,4,2)"), Err(Error::MultipleComponents(2))));
        assert!(matches!(PlanarDiagram::parse_pd("X(1,4,2,5) foo"), Err(Error::Parse(_))));
    }

    #[test]
    fn figure_eight_writhe_zero() {
        let d = PlanarDiagram::parse_pd(FIGURE_EIGHT_PD).unwrap();
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.positive_count(), 2);
        assert_eq!(d.seifert_circles(), 3);
        assert!(d.is_alternating());
    }

    #[test]
    fn mirror_and_switch() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap().mirror();
        assert_eq!(d.writhe(), 3);
        assert!(d.is_positive_diagram());
        assert_eq!(d.seifert_circles(), 2);
        assert_eq!(d.mirror().mirror(), d);
        for i in 0..3 {
            let s = d.switch_crossing(i).unwrap();
            assert_eq!(s.writhe(), 1);
            assert_eq!(s.switch_crossing(i).unwrap(), d);
        }
        assert_eq!(d.switch_crossing(3), Err(Error::CrossingIndex { index: 3, count: 3 }));
    }

    #[test]
    fn unknot_constructor() {
        let u = PlanarDiagram::unknot();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.writhe(), 0);
        assert_eq!(u.seifert_circles(), 1);
        assert_eq!(u.mirror(), u);
    }

    #[test]
    fn faces_satisfy_euler() {
        let d = PlanarDiagram::parse_pd(FIGURE_EIGHT_PD).unwrap();
        assert_eq!(d.faces().len(), 6);
        let corners: usize = d.faces().iter().map(Vec::len).sum();
        assert_eq!(corners, 16);
    }

    #[test]
    fn kinks_change_writhe_and_circles() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        for arc in 1..=6 {
            let p = d.with_kink(arc, Sign::Positive).unwrap();
            assert_eq!(p.crossing_count(), 4);
            assert_eq!(p.writhe(), -2);
            assert_eq!(p.seifert_circles(), 3);
            let m = d.with_kink(arc, Sign::Negative).unwrap();
            assert_eq!(m.writhe(), -4);
            assert_eq!(m.seifert_circles(), 3);
        }
        let k = PlanarDiagram::unknot().with_kink(1, Sign::Positive).unwrap();
        assert_eq!(k.writhe(), 1);
        assert_eq!(k.seifert_circles(), 2);
        let k = PlanarDiagram::unknot().with_kink(1, Sign::Negative).unwrap();
        assert_eq!(k.writhe(), -1);
        assert_eq!(k.seifert_circles(), 2);
    }
}
