//! Sparse Laurent polynomials with integer coefficients.
//!
//! [`LaurentPoly1`] is used for the Alexander polynomial, [`LaurentPoly2`]
//! for the Khovanov Poincaré polynomial `Kh(t, q)` and the HOMFLY polynomial
//! `P(v, z)`. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub trait Exponent: Copy + Ord + fmt::Debug {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
}

impl Exponent for i32 {
    fn zero() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl Exponent for (i32, i32) {
    fn zero() -> Self {
        (0, 0)
    }
    fn plus(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<E: Exponent> {
    terms: BTreeMap<E, i64>,
}

pub type LaurentPoly1 = Laurent<i32>;
pub type LaurentPoly2 = Laurent<(i32, i32)>;

impl<E: Exponent> Laurent<E> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, E::zero())
    }

    pub fn monomial(coef: i64, exp: E) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (E, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: E) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (E, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: E, coef: i64) {
        if coef == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coef;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by the monomial with exponent `shift`.
    pub fn shifted(&self, shift: E) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e.plus(shift), c)).collect() }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, &c)| (e, c * k)).collect() }
    }

    pub fn map_exponents<F: Fn(E) -> E>(&self, f: F) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (f(e), c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl LaurentPoly1 {
    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn inverted(&self) -> Self {
        self.map_exponents(|e| -e)
    }

    /// Sorted monomial list, e.g. `"1 t^-1, -1 t^0, 1 t^1"`.
    pub fn to_monomial_list(&self, var: &str) -> String {
        self.terms().map(|(e, c)| format!("{c} {var}^{e}")).collect::<Vec<_>>().join(", ")
    }

    pub fn from_monomial_list(text: &str, var: &str) -> Result<Self> {
        let mut p = Self::zero();
        for mono in text.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            let (c, rest) = mono.split_once(' ').ok_or_else(|| Error::Parse(format!("bad monomial {mono:?}")))?;
            let e = parse_power(rest.trim(), var)?;
            let c = c.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in {mono:?}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn pretty(&self, var: &str) -> String {
        pretty_terms(self.terms.iter().rev().map(|(&e, &c)| (c, vec![(var, e)])))
    }
}

impl LaurentPoly2 {
    fn first_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|e| e.0).min()?;
        let hi = self.terms.keys().map(|e| e.0).max()?;
        Some((lo, hi))
    }

    fn second_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|e| e.1).min()?;
        let hi = self.terms.keys().map(|e| e.1).max()?;
        Some((lo, hi))
    }

    /// Lowest and highest exponent of the first variable.
    pub fn first_span(&self) -> Option<(i32, i32)> {
        self.first_range()
    }

    /// Lowest and highest exponent of the second variable.
    pub fn second_span(&self) -> Option<(i32, i32)> {
        self.second_range()
    }

    /// Sorted monomial list, e.g. `"2 v^2 z^0, 1 v^2 z^2, -1 v^4 z^0"`.
    pub fn to_monomial_list(&self, vars: (&str, &str)) -> String {
        self.terms().map(|((a, b), c)| format!("{c} {}^{a} {}^{b}", vars.0, vars.1)).collect::<Vec<_>>().join(", ")
    }

    pub fn from_monomial_list(text: &str, vars: (&str, &str)) -> Result<Self> {
        let mut p = Self::zero();
        for mono in text.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            let parts: Vec<&str> = mono.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("bad monomial {mono:?}")));
            }
            let c = parts[0].parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in {mono:?}")))?;
            let a = parse_power(parts[1], vars.0)?;
            let b = parse_power(parts[2], vars.1)?;
            p.add_term((a, b), c);
        }
        Ok(p)
    }

    pub fn pretty(&self, vars: (&str, &str)) -> String {
        pretty_terms(self.terms().map(|((a, b), c)| (c, vec![(vars.0, a), (vars.1, b)])))
    }
}

fn parse_power(text: &str, var: &str) -> Result<i32> {
    text.strip_prefix(var)
        .and_then(|r| r.strip_prefix('^'))
        .and_then(|r| r.parse::<i32>().ok())
        .ok_or_else(|| Error::Parse(format!("expected {var}^<int>, got {text:?}")))
}

fn pretty_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (i64, Vec<(&'a str, i32)>)>,
{
    let mut out = String::new();
    for (c, vars) in terms {
        let mono: String = vars
            .iter()
            .filter(|(_, e)| *e != 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let mag = c.unsigned_abs();
        let body = match (mag, mono.is_empty()) {
            (m, true) => m.to_string(),
            (1, false) => mono,
            (m, false) => format!("{m}{mono}"),
        };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<E: Exponent> fmt::Debug for Laurent<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<'a, E: Exponent> Add<&'a Laurent<E>> for &'a Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: &'a Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<'a, E: Exponent> Sub<&'a Laurent<E>> for &'a Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: &'a Laurent<E>) -> Laurent<E> {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl<'a, E: Exponent> Mul<&'a Laurent<E>> for &'a Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: &'a Laurent<E>) -> Laurent<E> {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1.plus(e2), c1 * c2);
            }
        }
        out
    }
}

impl<E: Exponent> Add for Laurent<E> {
    type Output = Laurent<E>;
    fn add(self, rhs: Laurent<E>) -> Laurent<E> {
        &self + &rhs
    }
}

impl<E: Exponent> Sub for Laurent<E> {
    type Output = Laurent<E>;
    fn sub(self, rhs: Laurent<E>) -> Laurent<E> {
        &self - &rhs
    }
}

impl<E: Exponent> Mul for Laurent<E> {
    type Output = Laurent<E>;
    fn mul(self, rhs: Laurent<E>) -> Laurent<E> {
        &self * &rhs
    }
}

impl<E: Exponent> Neg for Laurent<E> {
    type Output = Laurent<E>;
    fn neg(self) -> Laurent<E> {
        self.scaled(-1)
    }
}
