//! Automorphism groups of small digraphs by individualization and colour
//! refinement, plus the word-graph checks built on them.
//!
//! The group is returned as a stabilizer chain: a base `b_1..b_r`, strong
//! generators, and the orbit length of `b_i` under the pointwise stabilizer
//! of `b_1..b_{i-1}`. The order is the product of those orbit lengths.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::config::Config;
use crate::error::{cap_check, Error, Result};
use crate::graph::WordGraph;
use crate::paths::word_count_layers;
use crate::rules::RuleSet;

#[derive(Clone, Debug)]
pub struct Digraph {
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
}

fn is_bijection(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}

impl Digraph {
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v) in arcs {
            out[u as usize].push(v);
            inn[v as usize].push(u);
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
        }
        Digraph { out, inn }
    }

    pub fn from_word_graph(g: &WordGraph) -> Self {
        let n = g.vertex_count();
        Self::from_arcs(
            n,
            (0..n as u32).flat_map(|u| g.neighbors(u).into_iter().map(move |v| (u, v))),
        )
    }

    /// Directed `n`-cycle.
    pub fn cycle(n: usize) -> Self {
        Self::from_arcs(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32)))
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, u: u32) -> &[u32] {
        &self.out[u as usize]
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.out[u as usize].binary_search(&v).is_ok()
    }

    pub fn is_automorphism(&self, p: &[u32]) -> bool {
        p.len() == self.vertex_count()
            && is_bijection(p)
            && (0..self.vertex_count()).all(|u| {
                self.out[u]
                    .iter()
                    .all(|&v| self.has_arc(p[u], p[v as usize]))
            })
    }

    /// Refines to a stable colouring. Colours are renumbered by sorted
    /// signature, so isomorphic inputs get matching colour names.
    fn refine(&self, colours: &mut [u32]) {
        let n = self.vertex_count();
        let mut classes = colours.iter().collect::<HashSet<_>>().len();
        loop {
            let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut o: Vec<u32> = self.out[v].iter().map(|&w| colours[w as usize]).collect();
                    let mut i: Vec<u32> = self.inn[v].iter().map(|&w| colours[w as usize]).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (colours[v], o, i)
                })
                .collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_unstable_by(|&a, &b| keys[a].cmp(&keys[b]));
            let mut c = 0u32;
            for (k, &v) in order.iter().enumerate() {
                if k > 0 && keys[v] != keys[order[k - 1]] {
                    c += 1;
                }
                colours[v] = c;
            }
            let now = c as usize + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn individualize(&self, colours: &[u32], v: u32) -> Vec<u32> {
        let mut c = colours.to_vec();
        c[v as usize] = self.vertex_count() as u32;
        self.refine(&mut c);
        c
    }

    /// Some automorphism carrying colouring `a` onto colouring `b`.
    fn extend(&self, a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
        let ca = cells(a);
        let cb = cells(b);
        if ca.len() != cb.len() || ca.iter().zip(&cb).any(|(x, y)| x.len() != y.len()) {
            return None;
        }
        match ca.iter().position(|c| c.len() > 1) {
            None => {
                let mut p = vec![0u32; a.len()];
                for (x, y) in ca.iter().zip(&cb) {
                    p[x[0] as usize] = y[0];
                }
                self.is_automorphism(&p).then_some(p)
            }
            Some(c) => {
                let a2 = self.individualize(a, ca[c][0]);
                cb[c]
                    .iter()
                    .find_map(|&y| self.extend(&a2, &self.individualize(b, y)))
            }
        }
    }
}

fn cells(colours: &[u32]) -> Vec<Vec<u32>> {
    let k = colours.iter().max().map_or(0, |&m| m as usize + 1);
    let mut cells = vec![Vec::new(); k];
    for (v, &c) in colours.iter().enumerate() {
        cells[c as usize].push(v as u32);
    }
    cells
}

fn orbit(x: u32, gens: &[Vec<u32>]) -> HashSet<u32> {
    let mut seen = HashSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(y) = queue.pop_front() {
        for g in gens {
            let z = g[y as usize];
            if seen.insert(z) {
                queue.push_back(z);
            }
        }
    }
    seen
}

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub degree: usize,
    pub order: BigUint,
    pub generators: Vec<Vec<u32>>,
    /// Empty when the group was given by generators rather than searched.
    pub base: Vec<u32>,
    pub orbit_sizes: Vec<usize>,
}

impl AutGroup {
    /// All elements, by closure under the generators.
    pub fn elements(&self, cfg: &Config) -> Result<Vec<Vec<u32>>> {
        let cap = cfg.group_cap as u128;
        let order = u128::try_from(&self.order).unwrap_or(u128::MAX);
        cap_check("group elements", order, cap)?;
        let id: Vec<u32> = (0..self.degree as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h: Vec<u32> = out[i].iter().map(|&x| g[x as usize]).collect();
                if seen.insert(h.clone()) {
                    out.push(h);
                    cap_check("group elements", out.len() as u128, cap)?;
                }
            }
            i += 1;
        }
        Ok(out)
    }
}

pub fn automorphism_group(g: &Digraph, cfg: &Config) -> Result<AutGroup> {
    automorphism_group_coloured(g, &vec![0; g.vertex_count()], cfg)
}

/// Automorphisms that preserve the given vertex colouring.
pub fn automorphism_group_coloured(g: &Digraph, colours: &[u32], cfg: &Config) -> Result<AutGroup> {
    let n = g.vertex_count();
    cap_check("automorphism search vertices", n as u128, cfg.aut_cap as u128)?;
    if colours.len() != n {
        return Err(Error::InvalidArgument("colouring has wrong length".into()));
    }
    let mut start = colours.to_vec();
    g.refine(&mut start);
    let mut path = vec![start];
    let mut base = Vec::new();
    loop {
        let cur = path.last().unwrap();
        let Some(cell) = cells(cur).into_iter().find(|c| c.len() > 1) else {
            break;
        };
        base.push(cell[0]);
        let next = g.individualize(cur, cell[0]);
        path.push(next);
    }
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut orbit_sizes = vec![0; base.len()];
    for i in (0..base.len()).rev() {
        let c = &path[i];
        let b = base[i];
        let cell: Vec<u32> = (0..n as u32).filter(|&v| c[v as usize] == c[b as usize]).collect();
        let mut orb = orbit(b, &gens);
        let mut rejected: HashSet<u32> = HashSet::new();
        for &y in &cell {
            if orb.contains(&y) || rejected.contains(&y) {
                continue;
            }
            match g.extend(&path[i + 1], &g.individualize(c, y)) {
                Some(p) => {
                    gens.push(p);
                    orb = orbit(b, &gens);
                }
                None => rejected.extend(orbit(y, &gens)),
            }
        }
        orbit_sizes[i] = orb.len();
    }
    let order = orbit_sizes
        .iter()
        .fold(BigUint::one(), |acc, &s| acc * BigUint::from(s));
    Ok(AutGroup {
        degree: n,
        order,
        generators: gens,
        base,
        orbit_sizes,
    })
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, b| a * BigUint::from(b))
}

/// Vertex map induced by a letter permutation (`phi[x]` is the image of
/// letter `x`).
pub fn letter_map(g: &WordGraph, phi: &[u8]) -> Vec<u32> {
    (0..g.vertex_count() as u32)
        .map(|v| {
            let w: Vec<u8> = g.word(v).iter().map(|&x| phi[x as usize]).collect();
            g.rank(&w).expect("letter maps preserve injective words")
        })
        .collect()
}

/// The letter-permutation automorphisms, generated by a transposition and
/// an `m`-cycle on letters. Each generator is checked arc by arc.
pub fn letter_action_subgroup(g: &WordGraph) -> Result<AutGroup> {
    let m = g.m();
    let mut gens = Vec::new();
    if m >= 2 {
        let mut t: Vec<u8> = (0..m as u8).collect();
        t.swap(0, 1);
        let c: Vec<u8> = (0..m as u8).map(|x| (x + 1) % m as u8).collect();
        gens.push(letter_map(g, &t));
        gens.push(letter_map(g, &c));
    }
    for p in &gens {
        for u in 0..g.vertex_count() as u32 {
            let mut image: Vec<u32> = g.neighbors(u).iter().map(|&v| p[v as usize]).collect();
            let mut target = g.neighbors(p[u as usize]);
            image.sort_unstable();
            target.sort_unstable();
            if image != target {
                return Err(Error::InvalidArgument(
                    "letter map is not an automorphism".into(),
                ));
            }
        }
    }
    Ok(AutGroup {
        degree: g.vertex_count(),
        order: factorial(m),
        generators: gens,
        base: Vec::new(),
        orbit_sizes: Vec::new(),
    })
}

fn alphabet_masks(g: &WordGraph) -> Vec<u64> {
    (0..g.vertex_count() as u32)
        .map(|v| g.word(v).iter().fold(0u64, |a, &x| a | 1 << x))
        .collect()
}

/// Every automorphism sends vertices with equal alphabets to vertices with
/// equal alphabets. Checking the generators suffices.
pub fn is_alphabet_stable(g: &WordGraph, aut: &AutGroup) -> bool {
    let masks = alphabet_masks(g);
    aut.generators.iter().all(|p| {
        let mut img: HashMap<u64, u64> = HashMap::new();
        (0..masks.len()).all(|u| *img.entry(masks[u]).or_insert(masks[p[u] as usize]) == masks[p[u] as usize])
    })
}

/// `|Aut(Gamma_n)| = n!`, with `Gamma_n` the graph on the `n!` arrangements
/// of `n` letters. Returns the verdict and the order found.
pub fn is_subregular(rs: &RuleSet, cfg: &Config) -> Result<(bool, BigUint)> {
    let n = rs.n();
    cap_check("automorphism search vertices", factorial(n).try_into().unwrap_or(u128::MAX), cfg.aut_cap as u128)?;
    let g = WordGraph::build(rs, n, cfg)?;
    let aut = automorphism_group(&Digraph::from_word_graph(&g), cfg)?;
    Ok((aut.order == factorial(n), aut.order))
}

#[derive(Clone, Debug, Serialize)]
pub struct FullSymmetricReport {
    pub order: String,
    pub m_factorial: String,
    pub letter_action_ok: bool,
    pub is_full_symmetric: bool,
}

/// `|Aut(G)| = m!` and the letter action lies inside `Aut(G)`.
pub fn aut_is_full_symmetric(g: &WordGraph, cfg: &Config) -> Result<FullSymmetricReport> {
    let aut = automorphism_group(&Digraph::from_word_graph(g), cfg)?;
    let letter_ok = letter_action_subgroup(g).is_ok();
    let mf = factorial(g.m());
    Ok(FullSymmetricReport {
        order: aut.order.to_string(),
        m_factorial: mf.to_string(),
        letter_action_ok: letter_ok,
        is_full_symmetric: letter_ok && aut.order == mf,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AutReport {
    pub n: usize,
    pub m: usize,
    pub vertices: usize,
    pub order: String,
    pub is_full_symmetric: bool,
    /// `None` when `n!` exceeds the automorphism cap.
    pub subregular: Option<bool>,
    pub alphabet_stable: bool,
    pub evidence: Vec<String>,
}

pub fn aut_report(rs: &RuleSet, m: usize, cfg: &Config) -> Result<AutReport> {
    let g = WordGraph::build(rs, m, cfg)?;
    let aut = automorphism_group(&Digraph::from_word_graph(&g), cfg)?;
    let letter_ok = letter_action_subgroup(&g).is_ok();
    let mf = factorial(m);
    let subregular = match is_subregular(rs, cfg) {
        Ok((s, _)) => Some(s),
        Err(Error::ResourceCap { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut evidence = vec![
        format!("base length {}", aut.base.len()),
        format!(
            "orbit sizes {}",
            aut.orbit_sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("*")
        ),
        format!("{} strong generators", aut.generators.len()),
        format!("letter action of order {mf} verified: {letter_ok}"),
    ];
    if !(&aut.order % &mf).is_zero() {
        evidence.push("letter action order does not divide |Aut|".into());
    }
    Ok(AutReport {
        n: rs.n(),
        m,
        vertices: g.vertex_count(),
        is_full_symmetric: letter_ok && aut.order == mf,
        order: aut.order.to_string(),
        subregular,
        alphabet_stable: is_alphabet_stable(&g, &aut),
        evidence,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairEvidence {
    pub i: usize,
    pub j: usize,
    /// Shortest length at which the path counts differ.
    pub length: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEvidence {
    pub i: usize,
    /// Shortest length below `n` with a path to the identity.
    pub short_path_length: Option<usize>,
    pub paths_at_n: u64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TestReport {
    pub n: usize,
    pub max_len: usize,
    /// `counts[i][l]`: paths of length `l` from generator `i` to the identity.
    pub counts: Vec<Vec<u64>>,
    pub subregular_evidence: Vec<PairEvidence>,
    pub stability_evidence: Vec<GeneratorEvidence>,
    pub subregular_ok: bool,
    pub stability_ok: bool,
    pub pass: bool,
}

/// Path-count test on `Gamma_n`: paths of length `l` from the vertex of
/// generator `p` to the identity are the rule words composing to `p^-1`.
///
/// The first condition asks every pair of generators to differ in path
/// count at some length up to `max_len`; the second asks each generator to
/// reach the identity in fewer than `n` steps or in two ways at exactly `n`.
pub fn sufficient_condition_test(rs: &RuleSet, max_len: usize, cfg: &Config) -> Result<TestReport> {
    let n = rs.n();
    let layers = word_count_layers(rs, max_len.max(n), cfg)?;
    let counts: Vec<Vec<u64>> = rs
        .rules()
        .iter()
        .map(|r| {
            let t = r.perm.inverse();
            layers.iter().map(|l| l.get(&t).copied().unwrap_or(0)).collect()
        })
        .collect();
    let r = rs.len();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let length = (0..=max_len).find(|&l| counts[i][l] != counts[j][l]);
            pairs.push(PairEvidence { i, j, length });
        }
    }
    let gens: Vec<GeneratorEvidence> = (0..r)
        .map(|i| {
            let short = (0..n).find(|&l| counts[i][l] > 0);
            let at_n = counts[i][n];
            GeneratorEvidence {
                i,
                short_path_length: short,
                paths_at_n: at_n,
                ok: short.is_some() || at_n >= 2,
            }
        })
        .collect();
    let subregular_ok = pairs.iter().all(|p| p.length.is_some());
    let stability_ok = gens.iter().all(|g| g.ok);
    Ok(TestReport {
        n,
        max_len,
        counts: counts.into_iter().map(|c| c[..=max_len].to_vec()).collect(),
        subregular_evidence: pairs,
        stability_evidence: gens,
        subregular_ok,
        stability_ok,
        pass: subregular_ok && stability_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{dg_k1, gomez};

    fn cfg() -> Config {
        Config::default()
    }

    fn wg(n: usize, m: usize) -> WordGraph {
        WordGraph::build(&gomez(n).unwrap(), m, &cfg()).unwrap()
    }

    // Brute force over all vertex permutations; tiny graphs only.
    fn brute_order(g: &Digraph) -> usize {
        fn rec(g: &Digraph, p: &mut Vec<u32>, used: &mut Vec<bool>, count: &mut usize) {
            let k = p.len();
            let n = g.vertex_count();
            if k == n {
                if g.is_automorphism(p) {
                    *count += 1;
                }
                return;
            }
            for v in 0..n {
                if used[v] {
                    continue;
                }
                p.push(v as u32);
                let ok = (0..=k).all(|a| {
                    (0..=k).all(|b| g.has_arc(a as u32, b as u32) == g.has_arc(p[a], p[b]))
                });
                if ok {
                    used[v] = true;
                    rec(g, p, used, count);
                    used[v] = false;
                }
                p.pop();
            }
        }
        let mut c = 0;
        rec(g, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut c);
        c
    }

    #[test]
    fn cycles() {
        for n in 1..=9 {
            let a = automorphism_group(&Digraph::cycle(n), &cfg()).unwrap();
            assert_eq!(a.order, BigUint::from(n));
        }
    }

    #[test]
    fn small_graphs_match_brute_force() {
        let graphs = [
            Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (3, 0)]),
            Digraph::from_arcs(6, [(0, 1), (1, 0), (2, 3), (3, 2), (4, 5), (5, 4)]),
            Digraph::from_arcs(5, []),
            Digraph::from_word_graph(&wg(3, 3)),
            Digraph::from_arcs(6, (0..6u32).flat_map(|i| [(i, (i + 1) % 6), (i, (i + 3) % 6)])),
        ];
        for g in &graphs {
            let a = automorphism_group(g, &cfg()).unwrap();
            assert_eq!(a.order, BigUint::from(brute_order(g)));
            for p in &a.generators {
                assert!(g.is_automorphism(p));
            }
        }
    }

    #[test]
    fn word_graph_orders() {
        for (n, m) in [(3, 4), (4, 4)] {
            let g = Digraph::from_word_graph(&wg(n, m));
            let a = automorphism_group(&g, &cfg()).unwrap();
            assert_eq!(a.order, factorial(m), "({n},{m})");
            let els = a.elements(&cfg()).unwrap();
            assert_eq!(BigUint::from(els.len()), a.order);
        }
    }

    #[test]
    fn letter_action() {
        for (n, m) in [(3, 4), (3, 5), (3, 3)] {
            let g = wg(n, m);
            let h = letter_action_subgroup(&g).unwrap();
            assert_eq!(h.order, factorial(m));
            assert_eq!(BigUint::from(h.elements(&cfg()).unwrap().len()), h.order);
        }
        let g = wg(3, 4);
        let id: Vec<u8> = (0..4).collect();
        assert_eq!(letter_map(&g, &id), (0..24).collect::<Vec<u32>>());
    }

    #[test]
    fn stability_and_subregularity() {
        let g = wg(3, 4);
        let a = automorphism_group(&Digraph::from_word_graph(&g), &cfg()).unwrap();
        assert!(is_alphabet_stable(&g, &a));
        for n in 3..=4 {
            let (ok, order) = is_subregular(&gomez(n).unwrap(), &cfg()).unwrap();
            assert!(ok, "n={n} order {order}");
        }
    }

    #[test]
    fn fixing_a_vertex_and_its_out_neighbours_fixes_everything() {
        let g = Digraph::from_word_graph(&wg(3, 4));
        for v in 0..g.vertex_count() as u32 {
            let mut colours = vec![0u32; g.vertex_count()];
            colours[v as usize] = 1;
            for (k, &w) in g.out_neighbors(v).iter().enumerate() {
                colours[w as usize] = 2 + k as u32;
            }
            let a = automorphism_group_coloured(&g, &colours, &cfg()).unwrap();
            assert_eq!(a.order, BigUint::one());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let small = Config { aut_cap: 10, ..cfg() };
        assert!(automorphism_group(&Digraph::cycle(11), &small).is_err());
    }

    #[test]
    fn sufficient_condition_examples() {
        let r = sufficient_condition_test(&gomez(5).unwrap(), 6, &cfg()).unwrap();
        assert!(r.pass);
        assert_eq!(r.counts.iter().map(|c| c[5]).collect::<Vec<_>>(), vec![4, 2, 1]);
        assert_eq!(r.stability_evidence[2].short_path_length, Some(4));
        let r = sufficient_condition_test(&gomez(4).unwrap(), 5, &cfg()).unwrap();
        assert!(r.pass);
        assert_eq!(r.counts.iter().map(|c| c[4]).collect::<Vec<_>>(), vec![3, 5, 2]);
        let r = sufficient_condition_test(&dg_k1(8).unwrap(), 10, &cfg()).unwrap();
        let p = r.subregular_evidence.iter().find(|p| (p.i, p.j) == (2, 6)).unwrap();
        assert_eq!(p.length, None);
        assert_eq!(r.counts[2], r.counts[6]);
        assert!(!r.pass);
    }
}
