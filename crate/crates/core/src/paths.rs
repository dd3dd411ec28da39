//! Rule paths: sequences of rule indices composed left to right.
//!
//! A path is closed when its composition is the identity. Counting uses a
//! layered dynamic program over reached permutations; listing uses a
//! depth-first search pruned by exact-length reachability sets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::config::{map_range, Config};
use crate::error::{cap_check, Error, Result};
use crate::perm::Permutation;
use crate::rules::{block_split, ArrowKind, ArrowProfile, RuleSet};
use crate::seq;

pub type RulePath = Vec<usize>;

fn check_path(rs: &RuleSet, path: &[usize]) -> Result<()> {
    match path.iter().find(|&&i| i >= rs.len()) {
        Some(i) => Err(Error::InvalidArgument(format!(
            "rule index {i} out of range (rule set has {} rules)",
            rs.len()
        ))),
        None => Ok(()),
    }
}

/// Parses a comma or space separated list of rule indices.
pub fn parse_path(text: &str) -> Result<RulePath> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.trim_start_matches("pi_")
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad rule index {s:?}")))
        })
        .collect()
}

pub fn format_path(path: &[usize]) -> String {
    path.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Composition of the path's rules, first rule applied first. The empty
/// path composes to the identity.
pub fn compose_path(rs: &RuleSet, path: &[usize]) -> Result<Permutation> {
    check_path(rs, path)?;
    Ok(path
        .iter()
        .fold(Permutation::identity(rs.n()), |acc, &i| acc.then(rs.perm(i))))
}

pub fn is_closed(rs: &RuleSet, path: &[usize]) -> Result<bool> {
    Ok(compose_path(rs, path)?.is_identity())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trail {
    /// 1-based positions, one more than the path length.
    pub positions: Vec<usize>,
    pub closed: bool,
}

/// Follows position `start` (1-based) through the destination arrows.
pub fn trail(rs: &RuleSet, path: &[usize], start: usize) -> Result<Trail> {
    check_path(rs, path)?;
    if start == 0 || start > rs.n() {
        return Err(Error::InvalidArgument(format!(
            "start position {start} out of range 1..={}",
            rs.n()
        )));
    }
    let dests: Vec<Vec<usize>> = rs.rules().iter().map(|r| r.perm.destination0()).collect();
    let mut pos = start - 1;
    let mut positions = vec![start];
    for &i in path {
        pos = dests[i][pos];
        positions.push(pos + 1);
    }
    Ok(Trail {
        closed: pos + 1 == start,
        positions,
    })
}

/// Arrow kind taken at each step of a trail. Every rule must be a block
/// rotation.
pub fn trail_arrows(profiles: &[ArrowProfile], path: &[usize], t: &Trail) -> Vec<ArrowKind> {
    path.iter()
        .zip(&t.positions)
        .map(|(&i, &p)| profiles[i].kinds[p - 1])
        .collect()
}

/// Whether the trail sits in the left block of the rule applied at each
/// step.
pub fn trail_sides(profiles: &[ArrowProfile], path: &[usize], t: &Trail) -> Vec<bool> {
    path.iter()
        .zip(&t.positions)
        .map(|(&i, &p)| profiles[i].in_left_block(p))
        .collect()
}

pub fn arrow_profiles(rs: &RuleSet) -> Result<Vec<ArrowProfile>> {
    rs.rules().iter().map(ArrowProfile::of).collect()
}

/// `p_{i+1} .. p_L p_1 .. p_i`.
pub fn rotate_path(path: &[usize], i: usize) -> RulePath {
    let mut v = path.to_vec();
    if !v.is_empty() {
        v.rotate_left(i % path.len());
    }
    v
}

/// Path concatenated with itself until it composes to the identity.
pub fn closure(rs: &RuleSet, path: &[usize]) -> Result<RulePath> {
    let order = compose_path(rs, path)?.order();
    let reps = usize::try_from(order)
        .ok()
        .filter(|&r| r.saturating_mul(path.len()) <= 1 << 24)
        .ok_or(Error::ResourceCap {
            what: "closure length",
            needed: order.saturating_mul(path.len() as u128),
            cap: 1 << 24,
        })?;
    Ok(path.repeat(reps))
}

/// Left arrow of `p_i = pi_j` paired with the right arrow of
/// `p_{i+1} = pi_{j+1}`, indices cyclic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pair {
    /// 1-based index `i` in the path.
    pub index: usize,
    /// `j` such that `p_i = pi_j`.
    pub rule: usize,
    pub left_arrow: (usize, usize),
    pub right_arrow: (usize, usize),
}

pub fn pairs(rs: &RuleSet, path: &[usize]) -> Result<Vec<Pair>> {
    check_path(rs, path)?;
    if !rs.has_indexed_labels() {
        return Err(Error::InvalidRuleSet(
            "pairs need rules labelled pi_0, pi_1, .. in order".into(),
        ));
    }
    let profiles = arrow_profiles(rs)?;
    let l = path.len();
    let mut out = Vec::new();
    for i in 0..l {
        let (a, b) = (path[i], path[(i + 1) % l]);
        if b == a + 1 {
            if let Some(left) = profiles[a].left_arrow() {
                out.push(Pair {
                    index: i + 1,
                    rule: a,
                    left_arrow: left,
                    right_arrow: profiles[b].right_arrow(),
                });
            }
        }
    }
    Ok(out)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

/// Work bound of the layered count: at most `min(r^t, n!)` states per layer,
/// each expanded by every rule.
pub(crate) fn dp_work(rs: &RuleSet, layers: usize) -> u128 {
    let r = rs.len() as u128;
    let nf = factorial(rs.n());
    let mut states = 1u128;
    let mut work = 0u128;
    for _ in 0..layers {
        work = work.saturating_add(states.saturating_mul(r));
        states = states.saturating_mul(r).min(nf);
    }
    work
}

/// `layers[t][q]` is the number of length-`t` rule words composing to `q`,
/// for `t` in `0..=max_len`.
pub fn word_count_layers(
    rs: &RuleSet,
    max_len: usize,
    cfg: &Config,
) -> Result<Vec<HashMap<Permutation, u64>>> {
    cap_check("word count expansions", dp_work(rs, max_len), cfg.word_cap as u128)?;
    let mut layers = Vec::with_capacity(max_len + 1);
    let mut cur: HashMap<Permutation, u64> = HashMap::new();
    cur.insert(Permutation::identity(rs.n()), 1);
    for _ in 0..max_len {
        let mut next: HashMap<Permutation, u64> = HashMap::with_capacity(cur.len() * 2);
        for (q, &c) in &cur {
            for r in rs.rules() {
                let e = next.entry(q.then(&r.perm)).or_insert(0);
                *e = e.checked_add(c).ok_or(Error::ResourceCap {
                    what: "word count (u64 overflow)",
                    needed: u128::from(u64::MAX) + 1,
                    cap: u128::from(u64::MAX),
                })?;
            }
        }
        layers.push(cur);
        cur = next;
    }
    layers.push(cur);
    Ok(layers)
}

/// Number of length-`len` rule words composing to `target`.
pub fn count_words(rs: &RuleSet, len: usize, target: &Permutation, cfg: &Config) -> Result<u64> {
    if target.degree() != rs.n() {
        return Err(Error::DegreeMismatch {
            left: target.degree(),
            right: rs.n(),
        });
    }
    let layers = word_count_layers(rs, len, cfg)?;
    Ok(layers[len].get(target).copied().unwrap_or(0))
}

/// Entry `i`: closed paths of length `len` whose first rule is `i`.
pub fn closed_path_counts(rs: &RuleSet, len: usize, cfg: &Config) -> Result<Vec<u64>> {
    if len == 0 {
        return Err(Error::InvalidArgument("path length must be at least 1".into()));
    }
    let layers = word_count_layers(rs, len - 1, cfg)?;
    let last = &layers[len - 1];
    Ok(rs
        .rules()
        .iter()
        .map(|r| last.get(&r.perm.inverse()).copied().unwrap_or(0))
        .collect())
}

/// Every closed path of length `len`, in lexicographic order.
pub fn enumerate_closed_paths(rs: &RuleSet, len: usize, cfg: &Config) -> Result<Vec<RulePath>> {
    if len == 0 || rs.is_empty() {
        return Ok(if len == 0 { vec![vec![]] } else { vec![] });
    }
    // Tails of length up to `h` are checked against exact reachability sets.
    let mut h = len / 2;
    while h > 0 && dp_work(rs, h) > cfg.word_cap as u128 {
        h -= 1;
    }
    let reach: Vec<HashSet<Permutation>> = word_count_layers(rs, h, cfg)?
        .into_iter()
        .map(|m| m.into_keys().collect())
        .collect();
    let rules = rs.perms();
    let visited = AtomicU64::new(0);
    let shards = map_range(cfg.strategy, 0..rules.len(), |first| {
        let mut st = Dfs {
            rules: &rules,
            reach: &reach,
            len,
            path: vec![first],
            out: Vec::new(),
            local: 0,
            visited: &visited,
            cap: cfg.word_cap,
        };
        st.run(rules[first].clone()).map(|()| st.out)
    });
    let mut all = Vec::new();
    for s in shards {
        all.extend(s?);
    }
    Ok(all)
}

struct Dfs<'a> {
    rules: &'a [Permutation],
    reach: &'a [HashSet<Permutation>],
    len: usize,
    path: Vec<usize>,
    out: Vec<RulePath>,
    local: u64,
    visited: &'a AtomicU64,
    cap: u64,
}

impl Dfs<'_> {
    fn run(&mut self, acc: Permutation) -> Result<()> {
        self.local += 1;
        if self.local == 4096 {
            let total = self.visited.fetch_add(self.local, Ordering::Relaxed) + self.local;
            self.local = 0;
            cap_check("closed path search nodes", total as u128, self.cap as u128)?;
        }
        let rem = self.len - self.path.len();
        if rem < self.reach.len() && !self.reach[rem].contains(&acc.inverse()) {
            return Ok(());
        }
        if rem == 0 {
            self.out.push(self.path.clone());
            return Ok(());
        }
        for (i, r) in self.rules.iter().enumerate() {
            self.path.push(i);
            self.run(acc.then(r))?;
            self.path.pop();
        }
        Ok(())
    }
}

/// Set comparison between found closed paths and those predicted by a
/// sequence family.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub n: usize,
    pub length: usize,
    pub closed_paths: usize,
    pub predicted: usize,
    pub counts_by_first_rule: Vec<u64>,
    pub predicted_counts: Vec<u64>,
    /// Predicted but not closed, at most ten shown.
    pub missing: Vec<String>,
    /// Closed but not predicted, at most ten shown.
    pub unexpected: Vec<String>,
    pub ok: bool,
}

fn compare(
    rs: &RuleSet,
    length: usize,
    found: Vec<RulePath>,
    predicted: Vec<RulePath>,
) -> CorrespondenceReport {
    let r = rs.len();
    let by_first = |ps: &BTreeSet<RulePath>| {
        let mut c = vec![0u64; r];
        for p in ps {
            if let Some(&f) = p.first() {
                if f < r {
                    c[f] += 1;
                }
            }
        }
        c
    };
    let f: BTreeSet<RulePath> = found.into_iter().collect();
    let p: BTreeSet<RulePath> = predicted.into_iter().collect();
    let missing: Vec<String> = p.difference(&f).take(10).map(|x| format_path(x)).collect();
    let unexpected: Vec<String> = f.difference(&p).take(10).map(|x| format_path(x)).collect();
    CorrespondenceReport {
        n: rs.n(),
        length,
        closed_paths: f.len(),
        predicted: p.len(),
        counts_by_first_rule: by_first(&f),
        predicted_counts: by_first(&p),
        ok: missing.is_empty() && unexpected.is_empty(),
        missing,
        unexpected,
    }
}

/// Closed paths of length `2k + 2` over the Gómez rules on `2k + 1` letters
/// against doubled tau-sequences of length `k + 1`.
pub fn tau_correspondence_check(k: usize, cfg: &Config) -> Result<CorrespondenceReport> {
    if k < 1 {
        return Err(Error::InvalidArgument("need k >= 1".into()));
    }
    let rs = crate::rules::gomez(2 * k + 1)?;
    let len = 2 * k + 2;
    let found = enumerate_closed_paths(&rs, len, cfg)?;
    let predicted = seq::enumerate_tau(k + 1)
        .into_iter()
        .map(|a| {
            let half: Vec<usize> = a.iter().map(|&x| x as usize).collect();
            half.repeat(2)
        })
        .collect();
    Ok(compare(&rs, len, found, predicted))
}

/// Closed paths of length `2k + 1` over the Gómez rules on `2k` letters
/// against sigma-sequences of length `2k + 1`.
pub fn sigma_correspondence_check(k: usize, cfg: &Config) -> Result<CorrespondenceReport> {
    if k < 2 {
        return Err(Error::InvalidArgument("need k >= 2".into()));
    }
    let rs = crate::rules::gomez(2 * k)?;
    let len = 2 * k + 1;
    let found = enumerate_closed_paths(&rs, len, cfg)?;
    let predicted = seq::enumerate_sigma(len)?
        .into_iter()
        .map(|a| a.into_iter().map(|x| x as usize).collect())
        .collect();
    Ok(compare(&rs, len, found, predicted))
}

/// Closed paths of length `2k` over the Gómez rules on `2k` letters that use
/// a rule other than `pi_0` and `pi_k`. Empty when the check passes.
pub fn length_n_closed_check(k: usize, cfg: &Config) -> Result<Vec<RulePath>> {
    if k < 2 {
        return Err(Error::InvalidArgument("need k >= 2".into()));
    }
    let rs = crate::rules::gomez(2 * k)?;
    Ok(enumerate_closed_paths(&rs, 2 * k, cfg)?
        .into_iter()
        .filter(|p| p.iter().any(|&i| i != 0 && i != k))
        .collect())
}

/// Index of the rule obtained by turning each rule's arrow diagram half a
/// turn and reversing its arrows, i.e. `r * d^-1 * r` on destinations with
/// `r` the reversal `i -> n + 1 - i`.
pub fn dual_index_map(rs: &RuleSet) -> Result<Vec<usize>> {
    let n = rs.n();
    rs.rules()
        .iter()
        .map(|rule| {
            let d = rule.perm.destination0();
            // d'(n-1-d(a)) = n-1-a
            let mut dual = vec![0usize; n];
            for (a, &b) in d.iter().enumerate() {
                dual[n - 1 - b] = n - a;
            }
            let p = Permutation::from_destination(&dual)?;
            rs.index_of_perm(&p).ok_or_else(|| {
                Error::InvalidRuleSet(format!(
                    "rule set is not closed under the half-turn duality ({} has no dual)",
                    rule.label
                ))
            })
        })
        .collect()
}

/// Reverses the path and replaces each rule by its dual.
pub fn duality_involution(rs: &RuleSet, path: &[usize]) -> Result<RulePath> {
    check_path(rs, path)?;
    if rs.rules().iter().any(|r| block_split(&r.perm).is_none()) {
        return Err(Error::InvalidRuleSet(
            "duality needs a rule set of block rotations".into(),
        ));
    }
    let map = dual_index_map(rs)?;
    Ok(path.iter().rev().map(|&i| map[i]).collect())
}

/// Closed-path counts of length `k + 1` over the split-rotation family for
/// every `k` in `2..=kmax`.
pub fn dg_table(kmax: usize, order: crate::rules::DgOrder, cfg: &Config) -> Result<Vec<Vec<u64>>> {
    (2..=kmax)
        .map(|k| closed_path_counts(&crate::rules::dg_k1_ordered(k, order)?, k + 1, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{dg_k1, dg_k1_ordered, gomez, DgOrder};
    use proptest::prelude::*;

    fn cfg() -> Config {
        Config::default()
    }

    fn brute_count(rs: &RuleSet, len: usize, target: &Permutation) -> u64 {
        let r = rs.len();
        let mut n = 0;
        for mut code in 0..r.pow(len as u32) {
            let mut w = Vec::with_capacity(len);
            for _ in 0..len {
                w.push(code % r);
                code /= r;
            }
            if compose_path(rs, &w).unwrap() == *target {
                n += 1;
            }
        }
        n
    }

    #[test]
    fn composition_examples() {
        let rs = gomez(5).unwrap();
        assert_eq!(compose_path(&rs, &[2]).unwrap().cycle_lengths(), vec![5]);
        for n in 3..=9 {
            let rs = gomez(n).unwrap();
            let k = n / 2;
            assert!(is_closed(&rs, &vec![k; n]).unwrap());
            assert!(is_closed(&rs, &vec![0; n]).unwrap() || n % 2 == 1);
        }
        // pi_3 pi_0 pi_2 on eight letters: x_1 ends at position 3.
        let rs = gomez(8).unwrap();
        let p = compose_path(&rs, &[3, 0, 2]).unwrap();
        assert_eq!(p.destination()[0], 3);
    }

    #[test]
    fn trails_of_worked_figure() {
        let rs = gomez(8).unwrap();
        let path = [3, 4, 0, 2];
        assert!(trail(&rs, &path, 3).unwrap().closed);
        assert!(!trail(&rs, &path, 6).unwrap().closed);
        assert_eq!(trail(&rs, &path, 1).unwrap().positions.len(), 5);
    }

    #[test]
    fn word_counts_match_brute_force() {
        let c = cfg();
        for rs in [gomez(3).unwrap(), gomez(4).unwrap(), dg_k1(4).unwrap()] {
            let layers = word_count_layers(&rs, 5, &c).unwrap();
            for (len, layer) in layers.iter().enumerate() {
                for (q, &cnt) in layer {
                    assert_eq!(cnt, brute_count(&rs, len, q));
                }
                let total: u64 = layer.values().sum();
                assert_eq!(total, (rs.len() as u64).pow(len as u32));
            }
        }
        let rs = gomez(3).unwrap();
        let id = Permutation::identity(3);
        assert_eq!(count_words(&rs, 0, &id, &c).unwrap(), 1);
        assert_eq!(count_words(&rs, 2, &id, &c).unwrap(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let c = Config {
            word_cap: 100,
            ..cfg()
        };
        let rs = gomez(6).unwrap();
        assert!(matches!(
            count_words(&rs, 8, &Permutation::identity(6), &c),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn gomez_full_rotation_has_short_return() {
        for n in 3..=8 {
            let rs = gomez(n).unwrap();
            let k = n / 2;
            let t = rs.perm(k).inverse();
            assert!(count_words(&rs, n - 1, &t, &cfg()).unwrap() >= 1);
        }
    }

    #[test]
    fn closed_counts_small() {
        let c = cfg();
        assert_eq!(closed_path_counts(&gomez(5).unwrap(), 6, &c).unwrap(), vec![4, 2, 1]);
        assert_eq!(closed_path_counts(&gomez(4).unwrap(), 5, &c).unwrap(), vec![3, 5, 2]);
        assert_eq!(
            closed_path_counts(&gomez(7).unwrap(), 8, &c).unwrap(),
            vec![7, 4, 2, 1]
        );
    }

    #[test]
    fn enumeration_agrees_with_counts() {
        let c = cfg();
        for rs in [gomez(4).unwrap(), gomez(5).unwrap(), gomez(6).unwrap(), dg_k1(5).unwrap()] {
            for len in 1..=rs.n() + 1 {
                let paths = enumerate_closed_paths(&rs, len, &c).unwrap();
                let counts = closed_path_counts(&rs, len, &c).unwrap();
                assert_eq!(paths.len() as u64, counts.iter().sum::<u64>());
                assert!(paths.windows(2).all(|w| w[0] < w[1]));
                assert!(paths.iter().all(|p| is_closed(&rs, p).unwrap()));
            }
        }
    }

    #[test]
    fn dg_table_full_rotation_first() {
        let t = dg_table(6, DgOrder::FullRotationFirst, &cfg()).unwrap();
        assert_eq!(
            t,
            vec![
                vec![2, 2],
                vec![4, 5, 5],
                vec![8, 11, 15, 11],
                vec![16, 23, 37, 37, 23],
                vec![32, 47, 83, 100, 83, 47],
            ]
        );
    }

    #[test]
    fn dg_counts_are_rotations_of_each_other() {
        for k in 2..=7 {
            let a = closed_path_counts(&dg_k1_ordered(k, DgOrder::FullRotationFirst).unwrap(), k + 1, &cfg()).unwrap();
            let b = closed_path_counts(&dg_k1(k).unwrap(), k + 1, &cfg()).unwrap();
            let shift = k / 2;
            let rotated: Vec<u64> = (0..k).map(|i| a[(i + k - shift) % k]).collect();
            assert_eq!(b, rotated, "k={k}");
        }
    }

    #[test]
    fn worked_duality_example() {
        let rs = dg_k1(8).unwrap();
        let p = [2, 3, 7, 7, 0, 1, 2, 3, 2];
        let q = duality_involution(&rs, &p).unwrap();
        assert_eq!(q, vec![6, 5, 6, 7, 0, 1, 1, 5, 6]);
        assert!(is_closed(&rs, &p).unwrap());
        assert!(is_closed(&rs, &q).unwrap());
        assert_eq!(dual_index_map(&rs).unwrap(), (0..8).map(|i| (8 - i) % 8).collect::<Vec<_>>());
    }

    #[test]
    fn dual_map_full_rotation_first() {
        for k in 2..=9 {
            let rs = dg_k1_ordered(k, DgOrder::FullRotationFirst).unwrap();
            let want: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
            assert_eq!(dual_index_map(&rs).unwrap(), want);
        }
    }

    #[test]
    fn pairs_examples() {
        let rs = gomez(5).unwrap();
        assert_eq!(pairs(&rs, &[0, 1, 2]).unwrap().len(), 2);
        assert!(pairs(&rs, &[1, 1]).unwrap().is_empty());
        let p = &pairs(&rs, &[0, 1]).unwrap()[0];
        assert_eq!((p.index, p.rule), (1, 0));
        assert_eq!(p.left_arrow, (1, 2));
        assert_eq!(p.right_arrow, (2, 5));
    }

    #[test]
    fn closure_is_closed() {
        let rs = gomez(6).unwrap();
        for path in [vec![0], vec![1, 2], vec![3, 0, 2]] {
            let c = closure(&rs, &path).unwrap();
            assert!(is_closed(&rs, &c).unwrap());
            assert_eq!(c.len() % path.len(), 0);
        }
    }

    // Trail lemmas on closed paths of length n + 1.
    #[test]
    fn closed_trail_arrow_lemmas() {
        for n in 3..=7 {
            let rs = gomez(n).unwrap();
            let profiles = arrow_profiles(&rs).unwrap();
            for path in enumerate_closed_paths(&rs, n + 1, &cfg()).unwrap() {
                let mut two_right = 0;
                for start in 1..=n {
                    let t = trail(&rs, &path, start).unwrap();
                    assert!(t.closed);
                    let kinds = trail_arrows(&profiles, &path, &t);
                    let fwd = kinds.iter().filter(|&&k| k != ArrowKind::Backward).count();
                    let right = kinds.iter().filter(|&&k| k == ArrowKind::RightForward).count();
                    assert!(fwd >= 2, "n={n} {path:?} start {start}");
                    if fwd == right {
                        assert_eq!(right, 2, "n={n} {path:?} start {start}");
                    }
                    if right == 2 {
                        two_right += 1;
                    }
                }
                assert!(two_right <= 3, "n={n} {path:?}");
            }
        }
    }

    #[test]
    fn odd_case_position_lemmas() {
        for k in 1..=3 {
            let n = 2 * k + 1;
            let rs = gomez(n).unwrap();
            for p in enumerate_closed_paths(&rs, n + 1, &cfg()).unwrap() {
                if p[0] == 0 {
                    assert_eq!(p[k + 1], 0, "{p:?}");
                } else {
                    assert_eq!(p[n], p[0] - 1, "{p:?}");
                }
            }
        }
    }

    #[test]
    fn correspondences() {
        for k in 1..=3 {
            let r = tau_correspondence_check(k, &cfg()).unwrap();
            assert!(r.ok, "{r:?}");
        }
        for k in 2..=3 {
            let r = sigma_correspondence_check(k, &cfg()).unwrap();
            assert!(r.ok, "{r:?}");
        }
        assert!(length_n_closed_check(2, &cfg()).unwrap().is_empty());
    }

    fn arb_path() -> impl Strategy<Value = (usize, Vec<usize>)> {
        (3usize..9).prop_flat_map(|n| {
            let r = n / 2 + 1;
            (Just(n), prop::collection::vec(0..r, 1..10))
        })
    }

    proptest! {
        #[test]
        fn rotation_conjugates((n, p) in arb_path(), i in 0usize..10) {
            let rs = gomez(n).unwrap();
            let a = compose_path(&rs, &p).unwrap();
            let b = compose_path(&rs, &rotate_path(&p, i)).unwrap();
            prop_assert_eq!(a.cycle_lengths(), b.cycle_lengths());
            prop_assert_eq!(a.is_identity(), b.is_identity());
        }

        #[test]
        fn closed_iff_all_trails_closed((n, p) in arb_path()) {
            let rs = gomez(n).unwrap();
            let all = (1..=n).all(|s| trail(&rs, &p, s).unwrap().closed);
            prop_assert_eq!(all, is_closed(&rs, &p).unwrap());
        }

        #[test]
        fn duality_is_involution(k in 2usize..10, raw in prop::collection::vec(0usize..100, 0..12)) {
            let rs = dg_k1(k).unwrap();
            let p: Vec<usize> = raw.into_iter().map(|x| x % k).collect();
            let q = duality_involution(&rs, &p).unwrap();
            prop_assert_eq!(duality_involution(&rs, &q).unwrap(), p.clone());
            prop_assert_eq!(is_closed(&rs, &q).unwrap(), is_closed(&rs, &p).unwrap());
        }
    }
}
