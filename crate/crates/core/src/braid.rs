//! Braid words with band generators, their closures, and the genus formulas
//! for quasipositive presentations.
//!
//! Notation: `k | letters`, where a letter is `s<i>` (the positive generator
//! σ_i), `S<i>` (its inverse), `b(i,j)` (the band σ_{i,j}) or `c(w;i)` (the
//! conjugate w σ_i w⁻¹ for a word `w`).

use std::fmt;

use crate::diagram::{Arc, PlanarDiagram, TupleMode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Generator { index: usize, positive: bool },
    Band { i: usize, j: usize },
    Conjugate { word: Vec<Letter>, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Generator { index, positive: true } => write!(f, "s{index}"),
            Letter::Generator { index, positive: false } => write!(f, "S{index}"),
            Letter::Band { i, j } => write!(f, "b({i},{j})"),
            Letter::Conjugate { word, index } => {
                let w: Vec<String> = word.iter().map(|l| l.to_string()).collect();
                write!(f, "c({};{index})", w.join(" "))
            }
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        if w.is_empty() {
            write!(f, "{} |", self.strands)
        } else {
            write!(f, "{} | {}", self.strands, w.join(" "))
        }
    }
}

fn gen(index: usize, positive: bool) -> Letter {
    Letter::Generator { index, positive }
}

fn inverse(word: &[Letter]) -> Vec<Letter> {
    word.iter()
        .rev()
        .map(|l| match l {
            Letter::Generator { index, positive } => gen(*index, !positive),
            _ => unreachable!("inverse is only taken of expanded words"),
        })
        .collect()
}

fn expand_letter(l: &Letter, out: &mut Vec<Letter>) {
    match l {
        Letter::Generator { .. } => out.push(l.clone()),
        Letter::Band { i, j } => {
            let prefix: Vec<Letter> = (*i..j - 1).map(|t| gen(t, true)).collect();
            out.extend(prefix.iter().cloned());
            out.push(gen(j - 1, true));
            out.extend(inverse(&prefix));
        }
        Letter::Conjugate { word, index } => {
            let mut w = Vec::new();
            for x in word {
                expand_letter(x, &mut w);
            }
            out.extend(w.iter().cloned());
            out.push(gen(*index, true));
            out.extend(inverse(&w));
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BraidIndex("a braid needs at least one strand".into()));
        }
        fn check(l: &Letter, k: usize) -> Result<()> {
            match l {
                Letter::Generator { index, .. } if *index >= 1 && *index < k => Ok(()),
                Letter::Band { i, j } if *i >= 1 && *j > *i && *j <= k => Ok(()),
                Letter::Conjugate { word, index } if *index >= 1 && *index < k => {
                    word.iter().try_for_each(|x| check(x, k))
                }
                _ => Err(Error::BraidIndex(format!("{l} on {k} strands"))),
            }
        }
        for l in &letters {
            check(l, strands)?;
        }
        Ok(Self { strands, letters })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (k, rest) = text.split_once('|').ok_or_else(|| Error::Parse("braid notation is `k | letters`".into()))?;
        let strands =
            k.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad strand count {:?}", k.trim())))?;
        let mut p = LetterParser { s: rest.as_bytes(), pos: 0 };
        let letters = p.letters(false)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("unexpected input at byte {}", p.pos)));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The equivalent word in standard generators only.
    pub fn expand_bands(&self) -> BraidWord {
        let mut out = Vec::new();
        for l in &self.letters {
            expand_letter(l, &mut out);
        }
        BraidWord { strands: self.strands, letters: out }
    }

    pub fn exponent_sum(&self) -> i32 {
        self.expand_bands()
            .letters
            .iter()
            .map(|l| match l {
                Letter::Generator { positive: true, .. } => 1,
                _ => -1,
            })
            .sum()
    }

    /// Permutation induced on strand positions (position -> position).
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        // perm[p] = where the strand starting at p currently is
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.expand_bands().letters {
            if let Letter::Generator { index, .. } = l {
                at.swap(index - 1, *index);
            }
        }
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        cycles
    }

    /// The closure diagram, strands running downward with σ_i a positive
    /// crossing between positions `i` and `i+1`.
    pub fn closure(&self) -> Result<PlanarDiagram> {
        let comps = self.closure_components();
        if comps != 1 {
            return Err(Error::ClosureNotKnot(comps));
        }
        let word = self.expand_bands();
        if word.letters.is_empty() {
            return Ok(PlanarDiagram::unknot());
        }
        let k = self.strands;
        let mut next: Arc = 0;
        let mut fresh = || {
            next += 1;
            next
        };
        let top: Vec<Arc> = (0..k).map(|_| fresh()).collect();
        let mut current = top.clone();
        let mut tuples = Vec::with_capacity(word.letters.len());
        for l in &word.letters {
            let Letter::Generator { index, positive } = *l else { unreachable!() };
            let (li, ri) = (index - 1, index);
            let (a, b) = (current[li], current[ri]);
            let (c, d) = (fresh(), fresh());
            // a: top-left, b: top-right, c: bottom-left, d: bottom-right
            tuples.push(if positive { [a, c, d, b] } else { [b, a, c, d] });
            current[li] = c;
            current[ri] = d;
        }
        // close up: the bottom arc at each position is the top arc there
        let mut rename: Vec<Arc> = (0..=next).collect();
        for p in 0..k {
            rename[current[p] as usize] = top[p];
        }
        for t in &mut tuples {
            for a in t.iter_mut() {
                *a = rename[*a as usize];
            }
        }
        PlanarDiagram::from_tuples(tuples, TupleMode::Strict, true)
    }

    /// Whether every letter is a band, a conjugate or a positive generator.
    pub fn is_quasipositive_form(&self) -> bool {
        self.letters.iter().all(|l| !matches!(l, Letter::Generator { positive: false, .. }))
    }

    /// Whether every letter is a band or a positive generator.
    pub fn is_strongly_quasipositive_form(&self) -> bool {
        self.letters.iter().all(|l| match l {
            Letter::Generator { positive, .. } => *positive,
            Letter::Band { .. } => true,
            Letter::Conjugate { .. } => false,
        })
    }

    /// Number of quasipositive factors `w σ_i w⁻¹`.
    pub fn quasipositive_factors(&self) -> Result<usize> {
        if let Some(l) = self.letters.iter().find(|l| matches!(l, Letter::Generator { positive: false, .. })) {
            return Err(Error::NotQuasipositive(format!("negative generator {l} outside a conjugate")));
        }
        Ok(self.letters.len())
    }

    /// `s` (and twice the slice genus) of the closure of this quasipositive word.
    pub fn s_quasipositive(&self) -> Result<i32> {
        Ok(s_quasipositive(self.quasipositive_factors()?, self.strands))
    }
}

/// `b - k + 1` for a quasipositive braid with `b` factors on `k` strands.
pub fn s_quasipositive(b_count: usize, strands: usize) -> i32 {
    b_count as i32 - strands as i32 + 1
}

/// Euler characteristic `k - b` of the surface built from the presentation.
pub fn bennequin_euler(b_count: usize, strands: usize) -> i32 {
    strands as i32 - b_count as i32
}

struct LetterParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl LetterParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b',') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        self.skip_ws_only();
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {:?} at byte {}", ch as char, self.pos)))
        }
    }

    fn skip_ws_only(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws_only();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number at byte {start}")))
    }

    fn letters(&mut self, nested: bool) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b';') if nested => break,
                Some(_) => out.push(self.letter()?),
            }
        }
        Ok(out)
    }

    fn letter(&mut self) -> Result<Letter> {
        let c = self.peek().unwrap();
        self.pos += 1;
        match c {
            b's' | b'S' => Ok(gen(self.number()?, c == b's')),
            b'b' => {
                self.expect(b'(')?;
                let i = self.number()?;
                self.expect(b',')?;
                let j = self.number()?;
                self.expect(b')')?;
                Ok(Letter::Band { i, j })
            }
            b'c' => {
                self.expect(b'(')?;
                let word = self.letters(true)?;
                self.expect(b';')?;
                let index = self.number()?;
                self.expect(b')')?;
                Ok(Letter::Conjugate { word, index })
            }
            other => Err(Error::Parse(format!("unexpected {:?} at byte {}", other as char, self.pos - 1))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const PRETZEL_357: &str = "6 | s1 s2 b(2,4) b(3,6) b(1,4) s5 b(2,5)";

    #[test]
    fn parse_examples() {
        let t = BraidWord::parse("2 | s1 s1 s1").unwrap();
        assert_eq!(t.strands(), 2);
        assert_eq!(t.letters().len(), 3);
        let f = BraidWord::parse(PRETZEL_357).unwrap();
        assert_eq!(f.letters().len(), 7);
        assert!(f.is_strongly_quasipositive_form());
        assert_eq!(f.to_string(), PRETZEL_357);
        assert!(matches!(BraidWord::parse("2 | s5"), Err(Error::BraidIndex(_))));
        assert!(matches!(BraidWord::parse("2 | x1"), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("s1"), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("4 | b(3,3)"), Err(Error::BraidIndex(_))));
        let c = BraidWord::parse("3 | c(s1 S2;1) c(b(1,3);2)").unwrap();
        assert_eq!(c.letters().len(), 2);
        assert!(c.is_quasipositive_form());
        assert!(!c.is_strongly_quasipositive_form());
    }

    #[test]
    fn band_expansion() {
        let b = BraidWord::new(4, vec![Letter::Band { i: 2, j: 4 }]).unwrap();
        assert_eq!(b.expand_bands().to_string(), "4 | s2 s3 S2");
        let b = BraidWord::new(2, vec![Letter::Band { i: 1, j: 2 }]).unwrap();
        assert_eq!(b.expand_bands().to_string(), "2 | s1");
        let f = BraidWord::parse(PRETZEL_357).unwrap().expand_bands();
        // 1 + 1 + 3 + 5 + 5 + 1 + 5 generators, exponent sum one per band
        assert_eq!(f.letters().len(), 21);
        assert_eq!(f.exponent_sum(), 7);
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(BraidWord::parse("2 | s1 s1 s1").unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::parse("4 | c(s1 S2 s3;2)").unwrap().exponent_sum(), 1);
        assert_eq!(BraidWord::parse(PRETZEL_357).unwrap().exponent_sum(), 7);
        assert_eq!(BraidWord::parse("3 | s1 S2").unwrap().exponent_sum(), 0);
    }

    #[test]
    fn closures() {
        let t = BraidWord::parse("2 | s1 s1 s1").unwrap().closure().unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe(), 3);
        assert_eq!(t.seifert_circles(), 2);
        assert_eq!(BraidWord::parse("2 | s1 s1").unwrap().closure(), Err(Error::ClosureNotKnot(2)));
        let f = BraidWord::parse(PRETZEL_357).unwrap().closure().unwrap();
        assert_eq!(f.crossing_count(), 21);
        assert_eq!(f.writhe(), 7);
        assert_eq!(f.seifert_circles(), 6);
        let u = BraidWord::parse("1 |").unwrap().closure().unwrap();
        assert!(u.is_unknot_diagram());
        let fig8 = BraidWord::parse("3 | s1 S2 s1 S2").unwrap().closure().unwrap();
        assert_eq!(fig8.writhe(), 0);
        assert_eq!(fig8.seifert_circles(), 3);
    }

    #[test]
    fn quasipositive_formulas() {
        let f = BraidWord::parse(PRETZEL_357).unwrap();
        assert_eq!(f.s_quasipositive().unwrap(), 2);
        assert_eq!(s_quasipositive(7, 6), 2);
        assert_eq!(s_quasipositive(3, 2), 2);
        // k-1 bands: s1 s2 ... on k strands closes to the unknot
        assert_eq!(BraidWord::parse("4 | s1 s2 s3").unwrap().s_quasipositive().unwrap(), 0);
        assert!(matches!(BraidWord::parse("3 | s1 S2").unwrap().s_quasipositive(), Err(Error::NotQuasipositive(_))));
        assert_eq!(bennequin_euler(7, 6), -1);
        assert_eq!(bennequin_euler(0, 1), 1);
        assert_eq!(bennequin_euler(3, 2), -1);
    }
}
