//! Word graphs `G_m`: injective length-`n` words over the letters
//! `0..m`, with an arc `x_1..x_n -> x_2..x_n y` for every letter `y` not in
//! the word and an arc `x_1..x_n -> x_{p(1)}..x_{p(n)}` for every rule `p`.
//!
//! Vertices are numbered by the lexicographic rank of their word. Small
//! graphs keep a flat adjacency table; larger ones generate neighbours on
//! demand.

use num_rational::Ratio;
use serde::Serialize;

use crate::config::{map_range, map_slice, Config, Strategy};
use crate::error::{cap_check, Error, Result};
use crate::rules::RuleSet;

/// Graphs up to this many vertices get a materialized adjacency table.
pub const MATERIALIZE_LIMIT: u64 = 100_000;

const UNSEEN: u32 = u32::MAX;

/// `m (m-1) .. (m-n+1)`, saturating.
pub fn vertex_count(n: usize, m: usize) -> u128 {
    if m < n {
        return 0;
    }
    ((m - n + 1)..=m).fold(1u128, |a, b| a.saturating_mul(b as u128))
}

/// 1-based position of `letter` in `word`, or 0 when absent.
pub fn position(letter: u8, word: &[u8]) -> usize {
    word.iter().position(|&x| x == letter).map_or(0, |i| i + 1)
}

pub struct WordGraph {
    rs: RuleSet,
    n: usize,
    m: usize,
    count: u32,
    degree: usize,
    strategy: Strategy,
    adj: Option<Vec<u32>>,
}

impl WordGraph {
    pub fn build(rs: &RuleSet, m: usize, cfg: &Config) -> Result<Self> {
        let n = rs.n();
        if m < n {
            return Err(Error::InvalidArgument(format!(
                "alphabet size {m} is smaller than word length {n}"
            )));
        }
        if m > 64 {
            return Err(Error::InvalidArgument(format!("alphabet size {m} above 64")));
        }
        let v = vertex_count(n, m);
        cap_check("word graph vertices", v, (cfg.vertex_cap as u128).min(u32::MAX as u128 - 1))?;
        let mut g = WordGraph {
            rs: rs.clone(),
            n,
            m,
            count: v as u32,
            degree: rs.len() + (m - n),
            strategy: cfg.strategy,
            adj: None,
        };
        if v <= MATERIALIZE_LIMIT as u128 {
            let d = g.degree;
            let rows = map_range(g.strategy, 0..g.count as usize, |u| g.neighbors(u as u32));
            let mut adj = Vec::with_capacity(g.count as usize * d);
            for r in rows {
                adj.extend(r);
            }
            g.adj = Some(adj);
        }
        Ok(g)
    }

    pub fn rule_set(&self) -> &RuleSet {
        &self.rs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.count as usize
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_materialized(&self) -> bool {
        self.adj.is_some()
    }

    /// Lexicographic rank of an injective word.
    pub fn rank(&self, word: &[u8]) -> Result<u32> {
        if word.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "word has length {}, expected {}",
                word.len(),
                self.n
            )));
        }
        let mut used = 0u64;
        let mut r = 0u64;
        for (i, &x) in word.iter().enumerate() {
            if x as usize >= self.m || used >> x & 1 == 1 {
                return Err(Error::InvalidArgument(format!("{word:?} is not an injective word over 0..{}", self.m)));
            }
            let c = (!used & ((1u64 << x) - 1)).count_ones() as u64;
            r = r * (self.m - i) as u64 + c;
            used |= 1 << x;
        }
        Ok(r as u32)
    }

    fn rank_unchecked(&self, word: &[u8]) -> u32 {
        let mut used = 0u64;
        let mut r = 0u64;
        for (i, &x) in word.iter().enumerate() {
            let c = (!used & ((1u64 << x) - 1)).count_ones() as u64;
            r = r * (self.m - i) as u64 + c;
            used |= 1 << x;
        }
        r as u32
    }

    pub fn word(&self, rank: u32) -> Vec<u8> {
        let mut digits = vec![0u32; self.n];
        let mut r = rank;
        for i in (0..self.n).rev() {
            let base = (self.m - i) as u32;
            digits[i] = r % base;
            r /= base;
        }
        let mut used = 0u64;
        digits
            .into_iter()
            .map(|c| {
                let mut seen = 0;
                let mut x = 0u8;
                loop {
                    if used >> x & 1 == 0 {
                        if seen == c {
                            break;
                        }
                        seen += 1;
                    }
                    x += 1;
                }
                used |= 1 << x;
                x
            })
            .collect()
    }

    /// Alphabet-changing neighbours (new letter ascending), then one per rule.
    pub fn neighbors(&self, u: u32) -> Vec<u32> {
        if let Some(adj) = &self.adj {
            let d = self.degree;
            return adj[u as usize * d..(u as usize + 1) * d].to_vec();
        }
        let w = self.word(u);
        let mut out = Vec::with_capacity(self.degree);
        let used = w.iter().fold(0u64, |a, &x| a | 1 << x);
        let mut shifted = w[1..].to_vec();
        shifted.push(0);
        for y in 0..self.m as u8 {
            if used >> y & 1 == 0 {
                shifted[self.n - 1] = y;
                out.push(self.rank_unchecked(&shifted));
            }
        }
        for r in self.rs.rules() {
            out.push(self.rank_unchecked(&r.perm.apply(&w)));
        }
        out
    }

    /// Whether the `i`-th arc out of any vertex changes the alphabet.
    pub fn is_alphabet_changing(&self, i: usize) -> bool {
        i < self.m - self.n
    }

    /// Distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![UNSEEN; self.count as usize];
        dist[src as usize] = 0;
        let mut frontier = vec![src];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let expanded: Vec<Vec<u32>> = if frontier.len() > 4096 {
                map_slice(self.strategy, &frontier, |&u| self.neighbors(u))
            } else {
                frontier.iter().map(|&u| self.neighbors(u)).collect()
            };
            let mut next = Vec::new();
            for v in expanded.into_iter().flatten() {
                if dist[v as usize] == UNSEEN {
                    dist[v as usize] = level;
                    next.push(v);
                }
            }
            frontier = next;
        }
        dist
    }

    pub fn distance(&self, u: &[u8], v: &[u8]) -> Result<Option<u32>> {
        let (a, b) = (self.rank(u)?, self.rank(v)?);
        let d = self.bfs(a)[b as usize];
        Ok((d != UNSEEN).then_some(d))
    }

    /// Eccentricity of `src`, or the first unreachable vertex.
    pub fn eccentricity(&self, src: u32) -> Result<u32> {
        let dist = self.bfs(src);
        if let Some(t) = dist.iter().position(|&d| d == UNSEEN) {
            return Err(Error::Disconnected {
                from: self.word(src),
                to: self.word(t as u32),
            });
        }
        Ok(dist.into_iter().max().unwrap_or(0))
    }

    /// Diameter from a single source. The letter permutations act
    /// transitively on vertices as automorphisms, so every eccentricity is
    /// the same.
    pub fn diameter(&self) -> Result<u32> {
        self.eccentricity(0)
    }

    /// Diameter as the maximum eccentricity over all sources.
    pub fn diameter_all_pairs(&self) -> Result<u32> {
        let eccs = map_range(self.strategy, 0..self.count as usize, |u| {
            self.eccentricity(u as u32)
        });
        let mut best = 0;
        for e in eccs {
            best = best.max(e?);
        }
        Ok(best)
    }

    /// For each alphabet-changing arc `u -> v`, the number of length-`n`
    /// paths from `v` back to `u`; reports arcs where it is not exactly 1.
    pub fn unique_return_paths_check(&self) -> Result<UniqueReturnReport> {
        if self.m == self.n {
            return Err(Error::InvalidArgument(
                "unique return paths need m > n".into(),
            ));
        }
        let free = self.m - self.n;
        let per_vertex = map_range(self.strategy, 0..self.count as usize, |u| {
            let nbrs = self.neighbors(u as u32);
            nbrs[..free]
                .iter()
                .filter_map(|&v| {
                    let c = self.count_paths(v, u as u32, self.n);
                    (c != 1).then(|| (self.word(u as u32), self.word(v), c))
                })
                .collect::<Vec<_>>()
        });
        let violations: Vec<_> = per_vertex.into_iter().flatten().collect();
        Ok(UniqueReturnReport {
            arcs_checked: self.count as u64 * free as u64,
            ok: violations.is_empty(),
            violations,
        })
    }

    /// Number of directed walks of length `len` from `a` to `b`.
    pub fn count_paths(&self, a: u32, b: u32, len: usize) -> u64 {
        let mut cur = std::collections::HashMap::from([(a, 1u64)]);
        for _ in 0..len {
            let mut next = std::collections::HashMap::new();
            for (&u, &c) in &cur {
                for v in self.neighbors(u) {
                    *next.entry(v).or_insert(0u64) += c;
                }
            }
            cur = next;
        }
        cur.get(&b).copied().unwrap_or(0)
    }

    pub fn report(&self) -> Result<GraphReport> {
        let diameter = self.diameter()?;
        let mb = moore_bound(self.degree as u64, diameter)?;
        Ok(GraphReport {
            n: self.n,
            m: self.m,
            vertices: self.count as u64,
            degree: self.degree,
            diameter,
            moore_bound: mb.to_string(),
            ratio: Ratio::new(self.count as u128, mb).to_string(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UniqueReturnReport {
    pub arcs_checked: u64,
    /// `(u, v, count)` for arcs whose return count differs from 1.
    pub violations: Vec<(Vec<u8>, Vec<u8>, u64)>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GraphReport {
    pub n: usize,
    pub m: usize,
    pub vertices: u64,
    pub degree: usize,
    pub diameter: u32,
    /// Decimal string; may exceed 64 bits.
    pub moore_bound: String,
    /// Reduced fraction `vertices / moore_bound`.
    pub ratio: String,
}

/// `d^k + d^(k-1) + .. + 1`.
pub fn moore_bound(d: u64, k: u32) -> Result<u128> {
    let overflow = || Error::ResourceCap {
        what: "Moore bound (u128 overflow)",
        needed: u128::MAX,
        cap: u128::MAX,
    };
    let mut term = 1u128;
    let mut sum = 1u128;
    for _ in 0..k {
        term = term.checked_mul(d as u128).ok_or_else(overflow)?;
        sum = sum.checked_add(term).ok_or_else(overflow)?;
    }
    Ok(sum)
}

/// `|V(G_m)| / M(degree, diameter)`.
pub fn moore_ratio(rs: &RuleSet, m: usize, cfg: &Config) -> Result<Ratio<u128>> {
    let g = WordGraph::build(rs, m, cfg)?;
    let d = g.diameter()?;
    Ok(Ratio::new(
        g.vertex_count() as u128,
        moore_bound(g.degree() as u64, d)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EventualDiameter {
    pub m: usize,
    pub diameter: u32,
    /// True when computed at `m = 4n`; otherwise an estimate from a smaller
    /// alphabet that is not a bound in either direction.
    pub exact: bool,
}

/// Diameter of `G_{4n}`, or of the largest `G_m` with `3n <= m < 4n` that
/// fits under the vertex cap.
pub fn eventual_diameter(rs: &RuleSet, cfg: &Config) -> Result<EventualDiameter> {
    let n = rs.n();
    let cap = cfg.vertex_cap as u128;
    let m = (3 * n..=4 * n)
        .rev()
        .find(|&m| vertex_count(n, m) <= cap)
        .ok_or(Error::ResourceCap {
            what: "word graph vertices for eventual diameter",
            needed: vertex_count(n, 3 * n),
            cap,
        })?;
    let g = WordGraph::build(rs, m, cfg)?;
    Ok(EventualDiameter {
        m,
        diameter: g.diameter()?,
        exact: m == 4 * n,
    })
}

/// Eventual diameter equals `n`. A disconnected `G_{4n}` is not admissible.
pub fn is_admissible(rs: &RuleSet, cfg: &Config) -> Result<bool> {
    match eventual_diameter(rs, cfg) {
        Ok(e) if e.exact => Ok(e.diameter as usize == rs.n()),
        Ok(e) => Err(Error::ResourceCap {
            what: "word graph vertices for exact eventual diameter",
            needed: vertex_count(rs.n(), 4 * rs.n()),
            cap: vertex_count(rs.n(), e.m),
        }),
        Err(Error::Disconnected { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}
