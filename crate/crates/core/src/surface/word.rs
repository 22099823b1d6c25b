use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word; `+i` is generator i (1-based), `-i` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: Vec<i32>) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for l in letters {
            assert!(l != 0, "zero is not a letter");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(i: i32) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Writes `self = w · core · w⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let l = &self.0;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == -l[l.len() - 1 - k] {
            k += 1;
        }
        (Word(l[..k].to_vec()), Word(l[k..l.len() - k].to_vec()))
    }

    /// Image under the substitution x_i ↦ images[i−1].
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Word::identity();
        for &l in &self.0 {
            let img = &images[(l.unsigned_abs() - 1) as usize];
            out = if l > 0 {
                out.mul(img)
            } else {
                out.mul(&img.inverse())
            };
        }
        out
    }

    /// Exponent sum of each of the first `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for &l in &self.0 {
            v[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        v
    }

    /// Parses tokens such as `a1 B2` for surface groups (a_i ↦ 2i−1, b_i ↦ 2i).
    pub fn parse_surface(text: &str) -> Result<Word> {
        parse_tokens(text, |c, i| match c {
            'a' => Some(2 * i - 1),
            'b' => Some(2 * i),
            _ => None,
        })
    }

    /// Parses tokens `x1 X2` for free groups.
    pub fn parse_free(text: &str) -> Result<Word> {
        parse_tokens(text, |c, i| (c == 'x').then_some(i))
    }

    /// Parses tokens `g1 G2` over the generators of a finite group.
    pub fn parse_group(text: &str) -> Result<Word> {
        parse_tokens(text, |c, i| (c == 'g').then_some(i))
    }

    pub fn display_surface(&self) -> String {
        self.render(|i| {
            let k = (i + 1) / 2;
            if i % 2 == 1 {
                ('a', k)
            } else {
                ('b', k)
            }
        })
    }

    pub fn display_free(&self) -> String {
        self.render(|i| ('x', i))
    }

    fn render(&self, name: impl Fn(i32) -> (char, i32)) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&l| {
                let (c, k) = name(l.abs());
                let c = if l < 0 { c.to_ascii_uppercase() } else { c };
                format!("{c}{k}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn parse_tokens(text: &str, index: impl Fn(char, i32) -> Option<i32>) -> Result<Word> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let mut chars = tok.chars();
        let head = chars.next().expect("nonempty token");
        let rest: String = chars.collect();
        let i: i32 = rest
            .parse()
            .ok()
            .filter(|&i: &i32| i >= 1)
            .ok_or_else(|| Error::Parse(format!("bad word token `{tok}`")))?;
        let base = index(head.to_ascii_lowercase(), i)
            .ok_or_else(|| Error::Parse(format!("unknown generator in `{tok}`")))?;
        letters.push(if head.is_uppercase() { -base } else { base });
    }
    Ok(Word::new(letters))
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        assert_eq!(Word::new(vec![1, 2, -2, -1, 3]).letters(), &[3]);
        assert_eq!(Word::new(vec![1, -1]), Word::identity());
    }

    #[test]
    fn cyclic_reduction_splits_conjugator() {
        let w = Word::new(vec![2, 1, 3, -2]);
        let (c, core) = w.cyclic_reduction();
        assert_eq!(c.letters(), &[2]);
        assert_eq!(core.letters(), &[1, 3]);
        assert_eq!(c.mul(&core).mul(&c.inverse()), w);
    }

    #[test]
    fn parse_and_render() {
        let w = Word::parse_surface("a1 B1 a2").unwrap();
        assert_eq!(w.letters(), &[1, -2, 3]);
        assert_eq!(w.display_surface(), "a1 B1 a2");
        assert_eq!(Word::parse_free("x2 X1").unwrap().letters(), &[2, -1]);
        assert!(Word::parse_surface("c1").is_err());
        assert!(Word::parse_group("g0").is_err());
        assert_eq!(Word::parse_group("1").unwrap(), Word::identity());
    }
}
