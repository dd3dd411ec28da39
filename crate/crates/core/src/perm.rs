//! Permutations of word positions.
//!
//! A [`Permutation`] of degree `n` is stored in *selector* form: slot `j` of
//! the rewritten word receives the letter that sat at position `image[j]`,
//! i.e. the rule `x_1 ... x_n -> x_{p(1)} ... x_{p(n)}` stores `p(j)` at slot
//! `j`. The *destination* form (old position to new position, the view used
//! when drawing rules as arrows) is the selector form of the inverse.
//!
//! Positions are 1-based in every textual format and public accessor that
//! says so; internally slots are 0-based.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    sel: Box<[u8]>,
}

impl Permutation {
    pub const MAX_DEGREE: usize = 255;

    pub fn identity(n: usize) -> Self {
        assert!(n <= Self::MAX_DEGREE, "degree {n} too large");
        Permutation {
            sel: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based selector images.
    pub fn from_selector0(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be at least 1".into()));
        }
        if n > Self::MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range 1..={n}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} appears twice",
                    x + 1
                )));
            }
        }
        Ok(Permutation {
            sel: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based selector images.
    pub fn from_selector(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("positions are 1-based".into()));
        }
        let zero: Vec<usize> = images.iter().map(|&x| x - 1).collect();
        Self::from_selector0(&zero)
    }

    /// Builds a permutation from 1-based destination images (`dest[i-1]` is
    /// where the letter at position `i` ends up).
    pub fn from_destination(dest: &[usize]) -> Result<Self> {
        Ok(Self::from_selector(dest)?.inverse())
    }

    /// Parses disjoint-cycle notation such as `(1 2 3)(4 5 6)`, read in
    /// destination form: `(1 2 3)` sends the letter at position 1 to
    /// position 2.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self> {
        let mut dest: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n + 1];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])));
            let (cycle, tail) = body.ok_or_else(|| {
                Error::InvalidPermutation(format!("malformed cycle notation: {text:?}"))
            })?;
            let points = cycle
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if p == 0 || p > n {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range 1..={n}"
                    )));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears in two cycles"
                    )));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                dest[p - 1] = points[(i + 1) % points.len()];
            }
            rest = tail.trim_start();
        }
        Self::from_destination(&dest)
    }

    /// Parses either comma-separated 1-based selector images or cycle
    /// notation. Cycle notation needs the degree, taken from `n` or else the
    /// largest point mentioned.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('(') {
            let degree = match n {
                Some(n) => n,
                None => t
                    .split(|c: char| !c.is_ascii_digit())
                    .filter_map(|s| s.parse::<usize>().ok())
                    .max()
                    .unwrap_or(1),
            };
            return Self::from_cycles(degree, t);
        }
        let images = t
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad image {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Self::from_selector(&images)?;
        if let Some(n) = n {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: p.degree(),
                    right: n,
                });
            }
        }
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.sel.len()
    }

    /// 0-based selector image of 0-based slot `j`.
    #[inline]
    pub fn source_of(&self, j: usize) -> usize {
        self.sel[j] as usize
    }

    pub fn selector(&self) -> Vec<usize> {
        self.sel.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn destination(&self) -> Vec<usize> {
        self.inverse().selector()
    }

    /// 0-based destination table.
    pub fn destination0(&self) -> Vec<usize> {
        let mut d = vec![0; self.degree()];
        for (j, &s) in self.sel.iter().enumerate() {
            d[s as usize] = j;
        }
        d
    }

    pub fn is_identity(&self) -> bool {
        self.sel.iter().enumerate().all(|(j, &s)| j == s as usize)
    }

    /// Applying `self` to a word, then `q`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.degree() != q.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(self.then(q))
    }

    /// Infallible [`compose`](Self::compose).
    ///
    /// Panics on a degree mismatch.
    #[inline]
    pub fn then(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.degree(), q.degree(), "degree mismatch");
        Permutation {
            sel: q.sel.iter().map(|&j| self.sel[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (j, &s) in self.sel.iter().enumerate() {
            inv[s as usize] = j as u8;
        }
        Permutation { sel: inv.into() }
    }

    pub fn pow(&self, mut t: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while t > 0 {
            if t & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            t >>= 1;
        }
        acc
    }

    /// Disjoint cycles in destination form, 1-based, each starting from its
    /// smallest point; fixed points included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let dest = self.destination0();
        let mut seen = vec![false; dest.len()];
        let mut out = Vec::new();
        for start in 0..dest.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = dest[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in ascending order; sums to the degree.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u128 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u128, |acc, l| acc.lcm(&(l as u128)))
    }

    /// Rewrites a word: slot `j` of the result is `word[source_of(j)]`.
    pub fn apply<T: Copy>(&self, word: &[T]) -> Vec<T> {
        debug_assert_eq!(word.len(), self.degree());
        self.sel.iter().map(|&s| word[s as usize]).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, &s) in self.sel.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", s as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}
