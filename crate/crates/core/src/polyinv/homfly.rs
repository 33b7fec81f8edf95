//! HOMFLY polynomial by skein recursion on descending diagrams.
//!
//! Convention: `v^{-1} P(L+) - v P(L-) = z P(L0)` and `P(unknot) = 1`, so
//! `P(L+) = v^2 P(L-) + v z P(L0)` and `P(L-) = v^{-2} P(L+) - v^{-1} z P(L0)`.
//! A diagram is descending when, walking the components in a fixed order from
//! fixed basepoints, every crossing is first met on its over-strand; such a
//! diagram is an unlink, with `P = ((v^{-1} - v) / z)^{k-1}` for `k`
//! components. Exponent pairs are `(v, z)`.

use std::collections::HashMap;

use crate::diagram::{Arc, Crossing, PlanarDiagram, Sign};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly2;

/// Default ceiling on the number of distinct diagrams visited.
pub const DEFAULT_SKEIN_BUDGET: usize = 4_000_000;

/// An oriented link diagram with any number of crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct LinkDiagram {
    crossings: Vec<Crossing>,
    loops: usize,
}

impl LinkDiagram {
    pub(crate) fn from_knot(d: &PlanarDiagram) -> Self {
        Self { crossings: d.crossings().to_vec(), loops: usize::from(d.is_unknot_diagram()) }
    }

    fn switched(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.crossings[k] = out.crossings[k].switched();
        out
    }

    /// Removes crossing `k` by its orientation-respecting smoothing.
    pub(crate) fn smoothed(&self, k: usize) -> Self {
        let x = self.crossings[k];
        let mut out = Self { crossings: self.crossings.clone(), loops: self.loops };
        out.crossings.remove(k);
        let mut pairs = x.smoothing(x.oriented_is_one());
        out.join(&mut pairs);
        out
    }

    /// Joins arc pairs freed by removing a crossing, in order. A pair whose
    /// ends already coincide closes a crossingless circle.
    fn join(&mut self, pairs: &mut [(Arc, Arc)]) {
        for i in 0..pairs.len() {
            let (keep, gone) = pairs[i];
            if keep == gone {
                self.loops += 1;
                continue;
            }
            for x in &mut self.crossings {
                x.relabel(gone, keep);
            }
            for p in pairs.iter_mut().skip(i + 1) {
                if p.0 == gone {
                    p.0 = keep;
                }
                if p.1 == gone {
                    p.1 = keep;
                }
            }
        }
    }

    /// Removes Reidemeister-I kinks, which do not change `P`.
    fn without_kinks(mut self) -> Self {
        while let Some(k) = self.crossings.iter().position(|x| {
            let a = x.arcs();
            (0..4).any(|p| a[p] == a[(p + 1) % 4])
        }) {
            let x = self.crossings.remove(k);
            let a = x.arcs();
            let p = (0..4).find(|&p| a[p] == a[(p + 1) % 4]).unwrap();
            let (u, w) = (a[(p + 2) % 4], a[(p + 3) % 4]);
            let mut pairs = [(u, w)];
            self.join(&mut pairs);
        }
        self
    }

    /// Entry points `(crossing, position)` of every arc, by label.
    fn heads(&self) -> HashMap<Arc, (usize, usize)> {
        let mut heads = HashMap::with_capacity(2 * self.crossings.len());
        for (c, x) in self.crossings.iter().enumerate() {
            for p in [0, x.over_in()] {
                heads.insert(x.arcs()[p], (c, p));
            }
        }
        heads
    }

    /// Components as arc sequences; each starts at its smallest label and
    /// components are ordered by that label.
    fn components(&self) -> Vec<Vec<Arc>> {
        let heads = self.heads();
        let mut labels: Vec<Arc> = heads.keys().copied().collect();
        labels.sort_unstable();
        let mut done: HashMap<Arc, ()> = HashMap::with_capacity(labels.len());
        let mut comps = Vec::new();
        for &start in &labels {
            if done.contains_key(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut arc = start;
            loop {
                done.insert(arc, ());
                comp.push(arc);
                let (c, p) = heads[&arc];
                arc = self.crossings[c].arcs()[(p + 2) % 4];
                if arc == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Relabels arcs `1, 2, ...` along the components and sorts crossings by
    /// first visit, so equal diagrams reached by different paths coincide.
    fn canonical(&self) -> (Self, Vec<Vec<Arc>>) {
        let comps = self.components();
        let mut new_label = HashMap::with_capacity(2 * self.crossings.len());
        for (k, &a) in comps.iter().flatten().enumerate() {
            new_label.insert(a, k as Arc + 1);
        }
        let heads = self.heads();
        let mut order = Vec::with_capacity(self.crossings.len());
        let mut placed = vec![false; self.crossings.len()];
        for &a in comps.iter().flatten() {
            let (c, _) = heads[&a];
            if !placed[c] {
                placed[c] = true;
                order.push(c);
            }
        }
        let crossings = order
            .iter()
            .map(|&c| {
                let x = self.crossings[c];
                Crossing::new(x.arcs().map(|a| new_label[&a]), x.sign())
            })
            .collect();
        let relabeled: Vec<Vec<Arc>> = comps.iter().map(|comp| comp.iter().map(|a| new_label[a]).collect()).collect();
        (Self { crossings, loops: self.loops }, relabeled)
    }

    /// First crossing met on its under-strand, walking components in order.
    fn first_ascending(&self, comps: &[Vec<Arc>]) -> Option<usize> {
        let heads = self.heads();
        let mut seen = vec![false; self.crossings.len()];
        for &a in comps.iter().flatten() {
            let (c, p) = heads[&a];
            if !seen[c] {
                if p == 0 {
                    return Some(c);
                }
                seen[c] = true;
            }
        }
        None
    }
}

impl Crossing {
    fn relabel(&mut self, from: Arc, to: Arc) {
        let arcs = self.arcs().map(|a| if a == from { to } else { a });
        *self = Crossing::new(arcs, self.sign());
    }
}

fn unlink(components: usize) -> LaurentPoly2 {
    // (v^{-1} - v) z^{-1}
    let delta = LaurentPoly2::from_terms([((-1, -1), 1), ((1, -1), -1)]);
    delta.pow(components.saturating_sub(1) as u32)
}

pub(crate) struct SkeinEvaluator {
    memo: HashMap<LinkDiagram, LaurentPoly2>,
    budget: usize,
}

impl SkeinEvaluator {
    pub(crate) fn new(budget: usize) -> Self {
        Self { memo: HashMap::new(), budget }
    }

    pub(crate) fn eval(&mut self, d: &LinkDiagram) -> Result<LaurentPoly2> {
        let d = d.clone().without_kinks();
        if d.crossings.is_empty() {
            return Ok(unlink(d.loops));
        }
        let (d, comps) = d.canonical();
        if let Some(p) = self.memo.get(&d) {
            return Ok(p.clone());
        }
        if self.memo.len() >= self.budget {
            return Err(Error::ResourceLimit(format!("skein recursion exceeded {} diagrams", self.budget)));
        }
        let p = match d.first_ascending(&comps) {
            None => unlink(comps.len() + d.loops),
            Some(k) => {
                let other = self.eval(&d.switched(k))?;
                let smooth = self.eval(&d.smoothed(k))?;
                match d.crossings[k].sign() {
                    Sign::Positive => other.shifted((2, 0)) + smooth.shifted((1, 1)),
                    Sign::Negative => other.shifted((-2, 0)) - smooth.shifted((-1, 1)),
                }
            }
        };
        self.memo.insert(d, p.clone());
        Ok(p)
    }
}

pub fn homfly(d: &PlanarDiagram) -> Result<LaurentPoly2> {
    homfly_with_budget(d, DEFAULT_SKEIN_BUDGET)
}

pub fn homfly_with_budget(d: &PlanarDiagram, budget: usize) -> Result<LaurentPoly2> {
    SkeinEvaluator::new(budget).eval(&LinkDiagram::from_knot(d))
}

/// Polynomials of the skein triple at crossing `index`: the diagram with that
/// crossing positive, negative, and smoothed (a two-component link).
pub fn skein_triple(d: &PlanarDiagram, index: usize) -> Result<[LaurentPoly2; 3]> {
    if index >= d.crossing_count() {
        return Err(Error::CrossingIndex { index, count: d.crossing_count() });
    }
    let base = LinkDiagram::from_knot(d);
    let (plus, minus) = if d.crossings()[index].is_positive() {
        (base.clone(), base.switched(index))
    } else {
        (base.switched(index), base.clone())
    };
    let zero = base.smoothed(index);
    let mut ev = SkeinEvaluator::new(DEFAULT_SKEIN_BUDGET);
    let p_plus = ev.eval(&plus)?;
    // fresh memo tables so the three values are computed independently
    let p_minus = SkeinEvaluator::new(DEFAULT_SKEIN_BUDGET).eval(&minus)?;
    let p_zero = SkeinEvaluator::new(DEFAULT_SKEIN_BUDGET).eval(&zero)?;
    Ok([p_plus, p_minus, p_zero])
}

/// Whether `v^{-1} P+ - v P- = z P0` holds at crossing `index`.
pub fn skein_relation_holds(d: &PlanarDiagram, index: usize) -> Result<bool> {
    let [p, m, z] = skein_triple(d, index)?;
    Ok(p.shifted((-1, 0)) - m.shifted((1, 0)) == z.shifted((0, 1)))
}
