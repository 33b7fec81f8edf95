//! Exact ranks of sparse integer matrices.
//!
//! The rational rank is computed modulo large primes with Markowitz-style
//! sparse elimination. The rank modulo `p` never exceeds the rational rank and
//! agrees with it for all but finitely many `p`; when two independently chosen
//! primes disagree the rank is recomputed by fraction-free elimination over
//! the integers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;

/// Primes just below 2^31.
pub const PRIMES: [u64; 8] =
    [2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497];

/// Row-major sparse matrix; rows hold `(column, value)` sorted by column.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    /// Appends a row; duplicate columns are summed and zeros dropped.
    pub fn push_row(&mut self, mut row: Vec<(u32, i64)>) {
        row.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(u32, i64)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            debug_assert!((c as usize) < self.ncols);
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(u32, i64)>] {
        &self.rows
    }

    /// The same matrix with the given rows removed.
    pub fn without_rows(&self, drop: &[u32]) -> SparseMatrix {
        let mut gone = vec![false; self.rows.len()];
        for &r in drop {
            gone[r as usize] = true;
        }
        let rows = self.rows.iter().zip(gone).filter(|(_, g)| !g).map(|(row, _)| row.clone()).collect();
        SparseMatrix { ncols: self.ncols, rows }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `self * other`, where rows are images: row `r` of the result is the
    /// image of basis vector `r` under `other ∘ self`.
    pub fn then(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows());
        let mut out = SparseMatrix::new(other.ncols);
        for row in &self.rows {
            let mut acc: Vec<(u32, i64)> = Vec::new();
            for &(mid, v) in row {
                for &(c, w) in &other.rows[mid as usize] {
                    acc.push((c, v * w));
                }
            }
            out.push_row(acc);
        }
        out
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u64
}

/// Pivot search and bookkeeping shared by the modular and integer eliminations.
struct Eliminator<T> {
    rows: Vec<Vec<(u32, T)>>,
    active: Vec<bool>,
    col_count: Vec<u32>,
    col_rows: Vec<Vec<u32>>,
    row_heap: BinaryHeap<Reverse<(u32, u32)>>,
    singletons: Vec<u32>,
}

impl<T: Clone> Eliminator<T> {
    fn new(ncols: usize, rows: Vec<Vec<(u32, T)>>) -> Self {
        let mut col_count = vec![0u32; ncols];
        let mut col_rows = vec![Vec::new(); ncols];
        let mut row_heap = BinaryHeap::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                col_count[c as usize] += 1;
                col_rows[c as usize].push(r as u32);
            }
            row_heap.push(Reverse((row.len() as u32, r as u32)));
        }
        let singletons = (0..ncols as u32).filter(|&c| col_count[c as usize] == 1).collect();
        let active = vec![true; rows.len()];
        Self { rows, active, col_count, col_rows, row_heap, singletons }
    }

    fn entry(&self, r: u32, c: u32) -> Option<&T> {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
    }

    /// Next pivot `(row, column)`: a column singleton if any (no fill-in),
    /// otherwise the sparsest active row and its sparsest column.
    fn next_pivot(&mut self) -> Option<(u32, u32)> {
        while let Some(c) = self.singletons.pop() {
            if self.col_count[c as usize] != 1 {
                continue;
            }
            let r = self.col_rows[c as usize]
                .iter()
                .copied()
                .find(|&r| self.active[r as usize] && self.entry(r, c).is_some());
            if let Some(r) = r {
                return Some((r, c));
            }
        }
        while let Some(Reverse((w, r))) = self.row_heap.pop() {
            if !self.active[r as usize] || self.rows[r as usize].len() as u32 != w {
                continue;
            }
            if w == 0 {
                self.active[r as usize] = false;
                continue;
            }
            let c = self.rows[r as usize].iter().map(|e| e.0).min_by_key(|&c| self.col_count[c as usize]).unwrap();
            return Some((r, c));
        }
        None
    }

    /// Rows other than `pivot_row` that currently have an entry in `c`.
    fn rows_with(&mut self, c: u32, pivot_row: u32) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.col_rows[c as usize]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&r| r != pivot_row && self.active[r as usize] && self.entry(r, c).is_some());
        list
    }

    /// Replaces row `r`, updating column counts and the heap.
    fn replace_row(&mut self, r: u32, new_row: Vec<(u32, T)>) {
        let old = std::mem::take(&mut self.rows[r as usize]);
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < new_row.len() {
            let oc = old.get(i).map(|e| e.0);
            let nc = new_row.get(j).map(|e| e.0);
            match (oc, nc) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    self.drop_col_entry(a);
                    i += 1;
                }
                (Some(a), None) => {
                    self.drop_col_entry(a);
                    i += 1;
                }
                (_, Some(b)) => {
                    self.col_count[b as usize] += 1;
                    self.col_rows[b as usize].push(r);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.row_heap.push(Reverse((new_row.len() as u32, r)));
        self.rows[r as usize] = new_row;
    }

    fn drop_col_entry(&mut self, c: u32) {
        let n = &mut self.col_count[c as usize];
        *n -= 1;
        if *n == 1 {
            self.singletons.push(c);
        }
    }

    fn retire(&mut self, r: u32) {
        self.active[r as usize] = false;
        let row = std::mem::take(&mut self.rows[r as usize]);
        for (c, _) in row {
            self.drop_col_entry(c);
        }
    }
}

/// Rank of `m` over `Z/p`.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    rank_mod_p_with_pivots(m, p).0
}

/// Rank over `Z/p` and the pivot columns used; the pivot columns index a
/// nonsingular square submatrix modulo `p`, hence also over the rationals.
pub fn rank_mod_p_with_pivots(m: &SparseMatrix, p: u64) -> (usize, Vec<u32>) {
    let rows: Vec<Vec<(u32, u64)>> = m
        .rows
        .iter()
        .map(|row| row.iter().map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64)).filter(|e| e.1 != 0).collect())
        .collect();
    let mut el = Eliminator::new(m.ncols, rows);
    let mut pivots = Vec::new();
    while let Some((r, c)) = el.next_pivot() {
        pivots.push(c);
        let pivot_row = el.rows[r as usize].clone();
        let pv = *el.entry(r, c).unwrap();
        let inv = inv_mod(pv, p);
        for r2 in el.rows_with(c, r) {
            let f = el.entry(r2, c).unwrap() * inv % p;
            let g = p - f; // subtract f * pivot_row
            let row2 = &el.rows[r2 as usize];
            let mut merged = Vec::with_capacity(row2.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < row2.len() || j < pivot_row.len() {
                match (row2.get(i), pivot_row.get(j)) {
                    (Some(&(a, x)), Some(&(b, y))) if a == b => {
                        let v = (x + g * y) % p;
                        if v != 0 {
                            merged.push((a, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some(&(a, x)), Some(&(b, _))) if a < b => {
                        merged.push((a, x));
                        i += 1;
                    }
                    (Some(&(a, x)), None) => {
                        merged.push((a, x));
                        i += 1;
                    }
                    (_, Some(&(b, y))) => {
                        merged.push((b, g * y % p));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            el.replace_row(r2, merged);
        }
        el.retire(r);
    }
    (pivots.len(), pivots)
}

/// Rank over the rationals by fraction-free elimination over the integers.
pub fn rank_exact(m: &SparseMatrix) -> usize {
    let rows: Vec<Vec<(u32, BigInt)>> =
        m.rows.iter().map(|row| row.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()).collect();
    let mut el = Eliminator::new(m.ncols, rows);
    let mut rank = 0;
    while let Some((r, c)) = el.next_pivot() {
        rank += 1;
        let pivot_row = el.rows[r as usize].clone();
        let pv = el.entry(r, c).unwrap().clone();
        for r2 in el.rows_with(c, r) {
            let x = el.entry(r2, c).unwrap().clone();
            let g = pv.gcd(&x);
            let (a, b) = (&pv / &g, &x / &g);
            // row2 <- a * row2 - b * pivot_row
            let row2 = &el.rows[r2 as usize];
            let mut merged: Vec<(u32, BigInt)> = Vec::with_capacity(row2.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < row2.len() || j < pivot_row.len() {
                match (row2.get(i), pivot_row.get(j)) {
                    (Some((ca, u)), Some((cb, w))) if ca == cb => {
                        let v = &a * u - &b * w;
                        if !v.is_zero() {
                            merged.push((*ca, v));
                        }
                        i += 1;
                        j += 1;
                    }
                    (Some((ca, u)), Some((cb, _))) if ca < cb => {
                        merged.push((*ca, &a * u));
                        i += 1;
                    }
                    (Some((ca, u)), None) => {
                        merged.push((*ca, &a * u));
                        i += 1;
                    }
                    (_, Some((cb, w))) => {
                        merged.push((*cb, -(&b * w)));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            let content = merged.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
            if !content.is_zero() && !content.abs().is_one() {
                for e in &mut merged {
                    e.1 = &e.1 / &content;
                }
            }
            el.replace_row(r2, merged);
        }
        el.retire(r);
    }
    rank
}

/// Rank over the rationals: two random primes, exact fallback on disagreement.
pub fn rank_rational(m: &SparseMatrix) -> usize {
    rank_rational_with_pivots(m).0
}

/// Like [`rank_rational`], also returning pivot columns of a nonsingular
/// maximal square submatrix when the modular ranks agree.
pub fn rank_rational_with_pivots(m: &SparseMatrix) -> (usize, Vec<u32>) {
    if m.nnz() == 0 {
        return (0, Vec::new());
    }
    let mut rng = rand::thread_rng();
    let chosen: Vec<u64> = PRIMES.choose_multiple(&mut rng, 2).copied().collect();
    let (r1, pivots) = rank_mod_p_with_pivots(m, chosen[0]);
    let r2 = rank_mod_p(m, chosen[1]);
    if r1 == r2 {
        (r1, pivots)
    } else {
        log::warn!("modular ranks disagree ({r1} vs {r2}); falling back to exact elimination");
        (rank_exact(m), Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_prime(p: u64) -> bool {
        p > 1 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
    }

    #[test]
    fn primes_are_prime() {
        assert!(PRIMES.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn small_ranks() {
        let mut m = SparseMatrix::new(3);
        m.push_row(vec![(0, 1), (1, 2)]);
        m.push_row(vec![(0, 2), (1, 4)]);
        m.push_row(vec![(2, 5)]);
        assert_eq!(rank_mod_p(&m, 7), 2);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_rational(&SparseMatrix::new(4)), 0);
    }

    #[test]
    fn modular_rank_can_drop() {
        // det = 7: full rank over Q, rank 1 modulo 7
        let mut m = SparseMatrix::new(2);
        m.push_row(vec![(0, 3), (1, 1)]);
        m.push_row(vec![(0, 1), (1, 5)]);
        assert_eq!(rank_mod_p(&m, 7), 1);
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn composition() {
        let mut a = SparseMatrix::new(2);
        a.push_row(vec![(0, 1), (1, 1)]);
        let mut b = SparseMatrix::new(1);
        b.push_row(vec![(0, 1)]);
        b.push_row(vec![(0, -1)]);
        assert_eq!(a.then(&b).nnz(), 0);
    }

    /// Dense rational elimination, independent of the sparse code.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut a: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
        let ncols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    for c in col..ncols {
                        let d = &f * &a[rank][c];
                        a[r][c] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..8)) {
            let mut m = SparseMatrix::new(6);
            for r in &rows {
                m.push_row(r.iter().enumerate().map(|(c, &v)| (c as u32, v)).collect());
            }
            let expected = dense_rank(&rows);
            prop_assert_eq!(rank_exact(&m), expected);
            prop_assert_eq!(rank_mod_p(&m, PRIMES[0]), expected);
        }
    }
}
