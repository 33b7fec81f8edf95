//! Rational Khovanov homology from the cube of resolutions.
//!
//! Gradings: with `n_±` the numbers of positive and negative crossings and
//! `r` the number of 1-smoothings, the homological degree is `i = r - n_-`
//! and the quantum degree of an enhanced state is `#1 - #x + r + n_+ - 2n_-`.
//! With these conventions the right-handed trefoil has
//! `Kh = q + q^3 + t^2 q^5 + t^3 q^9`.
//!
//! The differential preserves the quantum degree, so the ranks of each block
//! `C^{r,j} -> C^{r+1,j}` are computed independently (and in parallel).

mod complex;
mod cube;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::PlanarDiagram;
use crate::error::{Error, Result};
use crate::linalg::rank_rational_with_pivots;
use crate::poly::{LaurentPoly1, LaurentPoly2};

pub use complex::KhovanovComplex;
pub use cube::ResolutionCube;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KhovanovConfig {
    pub max_crossings: usize,
    /// Ceiling on the total number of enhanced states.
    pub max_generators: u128,
}

impl Default for KhovanovConfig {
    fn default() -> Self {
        Self { max_crossings: 16, max_generators: 1 << 27 }
    }
}

/// Ranks `h^{i,j}` of rational Khovanov homology; zero ranks are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigradedRanks {
    ranks: BTreeMap<(i32, i32), u64>,
}

impl BigradedRanks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = ((i32, i32), u64)>>(entries: I) -> Self {
        let mut r = Self::new();
        for (k, v) in entries {
            r.set(k.0, k.1, v);
        }
        r
    }

    pub fn set(&mut self, i: i32, j: i32, rank: u64) {
        if rank == 0 {
            self.ranks.remove(&(i, j));
        } else {
            self.ranks.insert((i, j), rank);
        }
    }

    pub fn get(&self, i: i32, j: i32) -> u64 {
        self.ranks.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in lexicographic `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), u64)> + '_ {
        self.ranks.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.values().sum()
    }

    /// `h^{-i,-j}`: the ranks of the mirror image.
    pub fn mirrored(&self) -> Self {
        Self::from_entries(self.iter().map(|((i, j), r)| ((-i, -j), r)))
    }

    /// `[[i, j, rank], ...]` sorted lexicographically.
    pub fn to_json(&self) -> String {
        let triples: Vec<(i32, i32, u64)> = self.iter().map(|((i, j), r)| (i, j, r)).collect();
        serde_json::to_string(&triples).expect("triples serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let triples: Vec<(i32, i32, u64)> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("ranks: {e}")))?;
        Ok(Self::from_entries(triples.into_iter().map(|(i, j, r)| ((i, j), r))))
    }
}

impl Serialize for BigradedRanks {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(i32, i32, u64)> = self.iter().map(|((i, j), r)| (i, j, r)).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedRanks {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(i32, i32, u64)>::deserialize(d)?;
        Ok(Self::from_entries(triples.into_iter().map(|(i, j, r)| ((i, j), r))))
    }
}

pub fn build_cube(d: &PlanarDiagram, config: &KhovanovConfig) -> Result<ResolutionCube> {
    check_crossings(d, config)?;
    Ok(ResolutionCube::new(d))
}

fn check_crossings(d: &PlanarDiagram, config: &KhovanovConfig) -> Result<()> {
    if d.crossing_count() > config.max_crossings {
        return Err(Error::ResourceLimit(format!(
            "{} crossings exceeds the limit of {}",
            d.crossing_count(),
            config.max_crossings
        )));
    }
    Ok(())
}

pub fn homology_ranks(d: &PlanarDiagram) -> Result<BigradedRanks> {
    homology_ranks_with(d, &KhovanovConfig::default())
}

pub fn homology_ranks_with(d: &PlanarDiagram, config: &KhovanovConfig) -> Result<BigradedRanks> {
    check_crossings(d, config)?;
    let complex = KhovanovComplex::new(d);
    let gens = complex.cube().generator_count();
    if gens > config.max_generators {
        return Err(Error::ResourceLimit(format!(
            "{gens} enhanced states exceeds the limit of {}",
            config.max_generators
        )));
    }
    let dims = complex.dimensions();
    let top = complex.max_level();
    let mut degrees: Vec<i32> = dims.keys().map(|&(_, j)| j).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let ranks: BTreeMap<(usize, i32), usize> =
        degrees.par_iter().flat_map_iter(|&j| block_ranks(&complex, &dims, top, j)).collect();
    let rank_of = |r: usize, j: i32| ranks.get(&(r, j)).copied().unwrap_or(0);
    let mut out = BigradedRanks::new();
    for (&(r, j), &dim) in &dims {
        let incoming = if r == 0 { 0 } else { rank_of(r - 1, j) };
        let h = dim - rank_of(r, j) - incoming;
        out.set(r as i32 - complex.n_minus(), j, h as u64);
    }
    Ok(out)
}

/// Ranks of `C^{r,j} -> C^{r+1,j}` for all `r` at one quantum degree.
///
/// Walking upward in `r`, the rows of the next differential indexed by the
/// pivot columns of the current one are combinations of the other rows
/// (because `d^2 = 0`), so they are dropped before its rank is computed.
fn block_ranks(
    complex: &KhovanovComplex,
    dims: &BTreeMap<(usize, i32), usize>,
    top: usize,
    j: i32,
) -> Vec<((usize, i32), usize)> {
    let mut out = Vec::new();
    let mut redundant: Vec<u32> = Vec::new();
    for r in 0..top {
        if !dims.contains_key(&(r, j)) || !dims.contains_key(&(r + 1, j)) {
            redundant.clear();
            continue;
        }
        let m = complex.differential(r, j).without_rows(&redundant);
        let (rank, pivots) = rank_rational_with_pivots(&m);
        out.push(((r, j), rank));
        redundant = pivots;
    }
    out
}

/// `sum t^i q^j h^{i,j}`.
pub fn poincare_polynomial(r: &BigradedRanks) -> LaurentPoly2 {
    LaurentPoly2::from_terms(r.iter().map(|(k, v)| (k, v as i64)))
}

/// Graded Euler characteristic `sum (-1)^i q^j h^{i,j}`, the unnormalized
/// Jones polynomial in `q`.
pub fn euler_characteristic(r: &BigradedRanks) -> LaurentPoly1 {
    LaurentPoly1::from_terms(r.iter().map(|((i, j), v)| (j, if i % 2 == 0 { v as i64 } else { -(v as i64) })))
}

/// Number of diagonals `2i - j = const` between the extreme occupied ones.
pub fn homological_width(r: &BigradedRanks) -> Result<u32> {
    let diag: Vec<i32> = r.iter().map(|((i, j), _)| 2 * i - j).collect();
    let lo = *diag.iter().min().ok_or(Error::EmptySupport)?;
    let hi = *diag.iter().max().unwrap();
    Ok(((hi - lo) / 2 + 1) as u32)
}
