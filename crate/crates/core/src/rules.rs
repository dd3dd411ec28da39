//! Rule sets: the alphabet-fixing permutations of a word graph.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub label: String,
    pub perm: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSet {
    n: usize,
    rules: Vec<Rule>,
}

/// Label order of the split-rotation family on words of length `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DgOrder {
    /// Left sizes `k/2, k/2 - 1, .., 1`, then the full rotation, then
    /// `k - 1, .., k/2 + 1` (floor division).
    #[default]
    Diagram,
    /// The full rotation first, then left sizes `k - 1, k - 2, .., 1`.
    FullRotationFirst,
}

pub fn rule_label(i: usize) -> String {
    format!("pi_{i}")
}

/// Rotates the blocks `1..=s` and `s+1..=n` left by one each. `s == 0` or
/// `s == n` gives the full rotation `2,3,..,n,1`.
pub fn block_rotation(n: usize, s: usize) -> Permutation {
    assert!(n >= 1 && s <= n);
    let sel: Vec<usize> = if s == 0 || s == n {
        (0..n).map(|j| (j + 1) % n).collect()
    } else {
        (0..n)
            .map(|j| {
                if j < s {
                    (j + 1) % s
                } else {
                    s + (j - s + 1) % (n - s)
                }
            })
            .collect()
    };
    Permutation::from_selector0(&sel).expect("block rotation is a bijection")
}

impl RuleSet {
    pub fn new(n: usize, rules: Vec<Rule>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRuleSet("word length must be at least 1".into()));
        }
        let mut labels = HashSet::new();
        let mut perms = HashSet::new();
        for (i, r) in rules.iter().enumerate() {
            if r.perm.degree() != n {
                return Err(Error::InvalidRuleSet(format!(
                    "rules[{i}] ({}) has degree {}, expected {n}",
                    r.label,
                    r.perm.degree()
                )));
            }
            if !labels.insert(r.label.as_str()) {
                return Err(Error::InvalidRuleSet(format!(
                    "rules[{i}]: duplicate label {:?}",
                    r.label
                )));
            }
            if !perms.insert(&r.perm) {
                return Err(Error::InvalidRuleSet(format!(
                    "rules[{i}] ({}) repeats an earlier permutation",
                    r.label
                )));
            }
        }
        Ok(RuleSet { n, rules })
    }

    /// Labels rules `pi_0, pi_1, ..` in the given order.
    pub fn from_perms(n: usize, perms: Vec<Permutation>) -> Result<Self> {
        let rules = perms
            .into_iter()
            .enumerate()
            .map(|(i, perm)| Rule {
                label: rule_label(i),
                perm,
            })
            .collect();
        Self::new(n, rules)
    }

    pub fn empty(n: usize) -> Self {
        RuleSet { n, rules: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.rules[i].perm
    }

    pub fn perms(&self) -> Vec<Permutation> {
        self.rules.iter().map(|r| r.perm.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.rules.iter().position(|r| r.label == label)
    }

    pub fn index_of_perm(&self, p: &Permutation) -> Option<usize> {
        self.rules.iter().position(|r| &r.perm == p)
    }

    /// True when rule `i` is labelled `pi_i` for every `i`.
    pub fn has_indexed_labels(&self) -> bool {
        self.rules
            .iter()
            .enumerate()
            .all(|(i, r)| r.label == rule_label(i))
    }

    /// First slot (1-based) where some rule selects from more than one
    /// position to the right.
    pub fn shift_violation(&self) -> Option<(String, usize)> {
        for r in &self.rules {
            for j in 0..self.n {
                if r.perm.source_of(j) > j + 1 {
                    return Some((r.label.clone(), j + 1));
                }
            }
        }
        None
    }

    pub fn is_shift_restricted(&self) -> bool {
        self.shift_violation().is_none()
    }

    /// Cycle length to total multiplicity across all rules.
    pub fn cycle_coverage(&self) -> BTreeMap<usize, usize> {
        let mut cov = BTreeMap::new();
        for r in &self.rules {
            for l in r.perm.cycle_lengths() {
                *cov.entry(l).or_insert(0) += 1;
            }
        }
        cov
    }

    pub fn covers_all_cycle_lengths(&self) -> bool {
        let cov = self.cycle_coverage();
        (1..=self.n).all(|l| cov.contains_key(&l))
    }

    pub fn arrow_profile(&self, label: &str) -> Result<ArrowProfile> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::InvalidArgument(format!("no rule labelled {label:?}")))?;
        ArrowProfile::of(&self.rules[i])
    }

    pub fn to_file(&self) -> RuleSetFile {
        RuleSetFile {
            n: self.n,
            rules: self
                .rules
                .iter()
                .map(|r| RuleEntry {
                    label: r.label.clone(),
                    selector: r.perm.selector(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RuleSetFile = serde_json::from_str(text)?;
        file.into_rule_set()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_json(&text)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        for r in &self.rules {
            writeln!(f, "{}: {}", r.label, r.perm)?;
        }
        Ok(())
    }
}

/// On-disk form of a rule set.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RuleSetFile {
    pub n: usize,
    pub rules: Vec<RuleEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RuleEntry {
    pub label: String,
    pub selector: Vec<usize>,
}

impl RuleSetFile {
    pub fn into_rule_set(self) -> Result<RuleSet> {
        let mut rules = Vec::with_capacity(self.rules.len());
        for (i, e) in self.rules.into_iter().enumerate() {
            if e.selector.len() != self.n {
                return Err(Error::InvalidRuleSet(format!(
                    "rules[{i}].selector: length {} but n = {}",
                    e.selector.len(),
                    self.n
                )));
            }
            let perm = Permutation::from_selector(&e.selector)
                .map_err(|err| Error::InvalidRuleSet(format!("rules[{i}].selector: {err}")))?;
            rules.push(Rule {
                label: e.label,
                perm,
            });
        }
        RuleSet::new(self.n, rules)
    }
}

/// The Gómez rules on words of length `n >= 3`: `pi_i` rotates the blocks of
/// sizes `k - i` and `n - k + i` for `i < k = n / 2`, and `pi_k` is the full
/// rotation.
pub fn gomez(n: usize) -> Result<RuleSet> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "Gomez rules need n >= 3, got {n}"
        )));
    }
    let k = n / 2;
    let perms = (0..=k).map(|i| block_rotation(n, k - i)).collect();
    RuleSet::from_perms(n, perms)
}

/// Every two-block split rotation of length `k` plus the full rotation.
pub fn dg_k1(k: usize) -> Result<RuleSet> {
    dg_k1_ordered(k, DgOrder::Diagram)
}

pub fn dg_k1_ordered(k: usize, order: DgOrder) -> Result<RuleSet> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need k >= 2, got {k}")));
    }
    let c = match order {
        DgOrder::Diagram => k / 2,
        DgOrder::FullRotationFirst => 0,
    };
    let perms = (0..k)
        .map(|i| block_rotation(k, (c + k - i) % k))
        .collect();
    RuleSet::from_perms(k, perms)
}

/// Fewest degree-`n` permutations that can together contain a cycle of every
/// length `1..=n`.
pub fn min_rule_count(n: usize) -> usize {
    n / 2 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArrowKind {
    Backward,
    LeftForward,
    RightForward,
}

/// Destination arrows of a block-rotation rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowProfile {
    pub label: String,
    /// Arrow kind leaving each position, 1-based position `i` at index `i-1`.
    pub kinds: Vec<ArrowKind>,
    /// Size of the left block; `None` for the full rotation.
    pub left_block_size: Option<usize>,
    /// Source position (1-based) of the right arrow; its target is `n`.
    pub right_arrow_position: usize,
}

impl ArrowProfile {
    pub fn of(rule: &Rule) -> Result<Self> {
        let n = rule.perm.degree();
        let split = block_split(&rule.perm).ok_or_else(|| Error::NotTwoBlock {
            label: rule.label.clone(),
        })?;
        let mut kinds = vec![ArrowKind::Backward; n];
        let (left, right_src) = match split {
            None => {
                kinds[0] = ArrowKind::RightForward;
                (None, 1)
            }
            Some(s) => {
                kinds[0] = ArrowKind::LeftForward;
                kinds[s] = ArrowKind::RightForward;
                (Some(s), s + 1)
            }
        };
        Ok(ArrowProfile {
            label: rule.label.clone(),
            kinds,
            left_block_size: left,
            right_arrow_position: right_src,
        })
    }

    pub fn left_arrow(&self) -> Option<(usize, usize)> {
        self.left_block_size.map(|s| (1, s))
    }

    pub fn right_arrow(&self) -> (usize, usize) {
        (self.right_arrow_position, self.kinds.len())
    }

    /// Whether position `i` (1-based) lies in the left block.
    pub fn in_left_block(&self, i: usize) -> bool {
        self.left_block_size.is_some_and(|s| i <= s)
    }
}

/// `Some(None)` for the full rotation, `Some(Some(s))` for the split with
/// left size `s`, `None` if the permutation is neither.
pub fn block_split(p: &Permutation) -> Option<Option<usize>> {
    let n = p.degree();
    if *p == block_rotation(n, 0) {
        return Some(None);
    }
    (1..n).find(|&s| *p == block_rotation(n, s)).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sel(rs: &RuleSet) -> Vec<String> {
        rs.rules().iter().map(|r| r.perm.to_string()).collect()
    }

    #[test]
    fn gomez_six_and_seven() {
        assert_eq!(
            sel(&gomez(6).unwrap()),
            ["2,3,1,5,6,4", "2,1,4,5,6,3", "1,3,4,5,6,2", "2,3,4,5,6,1"]
        );
        assert_eq!(gomez(7).unwrap().perm(0).to_string(), "2,3,1,5,6,7,4");
        assert_eq!(sel(&gomez(3).unwrap()), ["1,3,2", "2,3,1"]);
        assert!(gomez(2).is_err());
    }

    #[test]
    fn gomez_pi0_cycle_type() {
        assert_eq!(gomez(6).unwrap().perm(0).cycle_lengths(), vec![3, 3]);
    }

    #[test]
    fn dg_diagram_labels_at_eight() {
        let rs = dg_k1(8).unwrap();
        let splits: Vec<Option<usize>> = rs
            .rules()
            .iter()
            .map(|r| block_split(&r.perm).unwrap())
            .collect();
        assert_eq!(
            splits,
            [Some(4), Some(3), Some(2), Some(1), None, Some(7), Some(6), Some(5)]
        );
        assert_eq!(rs.perm(6).destination(), vec![6, 1, 2, 3, 4, 5, 8, 7]);
    }

    #[test]
    fn dg_small() {
        let rs = dg_k1(2).unwrap();
        assert!(rs.perm(0).is_identity());
        assert_eq!(rs.perm(1).to_string(), "2,1");
        let rs = dg_k1(3).unwrap();
        let splits: Vec<_> = rs.rules().iter().map(|r| block_split(&r.perm).unwrap()).collect();
        assert_eq!(splits, [Some(1), None, Some(2)]);
        let rs = dg_k1_ordered(4, DgOrder::FullRotationFirst).unwrap();
        let splits: Vec<_> = rs.rules().iter().map(|r| block_split(&r.perm).unwrap()).collect();
        assert_eq!(splits, [None, Some(3), Some(2), Some(1)]);
        assert!(dg_k1(1).is_err());
    }

    #[test]
    fn dg_split_multiset() {
        for k in 2..=9 {
            for order in [DgOrder::Diagram, DgOrder::FullRotationFirst] {
                let rs = dg_k1_ordered(k, order).unwrap();
                let mut splits: Vec<_> =
                    rs.rules().iter().map(|r| block_split(&r.perm).unwrap()).collect();
                splits.sort();
                let mut want = vec![None];
                want.extend((1..k).map(Some));
                assert_eq!(splits, want);
            }
        }
    }

    #[test]
    fn shift_restriction() {
        for n in 3..=12 {
            assert!(gomez(n).unwrap().is_shift_restricted());
        }
        let bad = RuleSet::from_perms(3, vec!["3,1,2".parse().unwrap()]).unwrap();
        assert_eq!(bad.shift_violation(), Some(("pi_0".into(), 1)));
        let id = RuleSet::from_perms(3, vec![Permutation::identity(3)]).unwrap();
        assert!(id.is_shift_restricted());
    }

    #[test]
    fn cycle_coverage_and_optimality() {
        for n in 3..=12 {
            let rs = gomez(n).unwrap();
            let cov = rs.cycle_coverage();
            assert!(rs.covers_all_cycle_lengths());
            assert_eq!(rs.len(), min_rule_count(n));
            for (&l, &mult) in &cov {
                let want = if n % 2 == 0 && l == n / 2 { 2 } else { 1 };
                assert_eq!(mult, want, "n={n} length {l}");
            }
        }
        let id = RuleSet::from_perms(3, vec![Permutation::identity(3)]).unwrap();
        assert_eq!(id.cycle_coverage().keys().copied().collect::<Vec<_>>(), [1]);
    }

    // Fewest parts in any collection of integer partitions of n whose parts
    // jointly include every length 1..=n.
    fn min_cover_brute(n: usize) -> usize {
        fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<u32>) {
            if n == 0 {
                out.push(cur.iter().fold(0u32, |m, &l| m | 1 << (l - 1)));
                return;
            }
            for p in (1..=max.min(n)).rev() {
                cur.push(p);
                partitions(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut masks = Vec::new();
        partitions(n, n, &mut Vec::new(), &mut masks);
        masks.sort_unstable();
        masks.dedup();
        let full = (1u32 << n) - 1;
        let mut reach = vec![0u32];
        for count in 1.. {
            let mut next: Vec<u32> = reach
                .iter()
                .flat_map(|&a| masks.iter().map(move |&b| a | b))
                .collect();
            next.sort_unstable();
            next.dedup();
            if next.contains(&full) {
                return count;
            }
            reach = next;
        }
        unreachable!()
    }

    #[test]
    fn min_rule_count_matches_brute_force() {
        for n in 3..=9 {
            assert_eq!(min_rule_count(n), min_cover_brute(n), "n={n}");
        }
    }

    #[test]
    fn arrow_profiles() {
        // Left size 2 on n = 8, the third Gomez rule.
        let rs = gomez(8).unwrap();
        let a = rs.arrow_profile("pi_2").unwrap();
        assert_eq!(a.left_arrow(), Some((1, 2)));
        assert_eq!(a.right_arrow(), (3, 8));
        assert_eq!(
            a.kinds.iter().filter(|&&k| k == ArrowKind::Backward).count(),
            6
        );
        let full = rs.arrow_profile("pi_4").unwrap();
        assert_eq!(full.left_arrow(), None);
        assert_eq!(full.right_arrow(), (1, 8));
        let rs = gomez(7).unwrap();
        let a = rs.arrow_profile("pi_2").unwrap();
        assert_eq!(a.left_arrow(), Some((1, 1)));
        assert_eq!(a.right_arrow(), (2, 7));
        let odd = RuleSet::from_perms(3, vec!["3,1,2".parse().unwrap()]).unwrap();
        assert!(matches!(odd.arrow_profile("pi_0"), Err(Error::NotTwoBlock { .. })));
    }

    #[test]
    fn arrows_agree_with_destinations() {
        for n in 3..=10 {
            let rs = gomez(n).unwrap();
            for r in rs.rules() {
                let a = ArrowProfile::of(r).unwrap();
                let d = r.perm.destination();
                let rights = a.kinds.iter().filter(|&&k| k == ArrowKind::RightForward).count();
                assert_eq!(rights, 1);
                for (i, k) in a.kinds.iter().enumerate() {
                    match k {
                        ArrowKind::Backward => assert_eq!(d[i], i),
                        ArrowKind::LeftForward => assert_eq!(d[i], a.left_block_size.unwrap()),
                        ArrowKind::RightForward => assert_eq!(d[i], n),
                    }
                }
            }
        }
    }

    #[test]
    fn validation() {
        let id = Permutation::identity(3);
        let dup = RuleSet::from_perms(3, vec![id.clone(), id.clone()]);
        assert!(dup.is_err());
        let deg = RuleSet::from_perms(3, vec![Permutation::identity(4)]);
        assert!(deg.is_err());
        let lab = RuleSet::new(
            3,
            vec![
                Rule { label: "a".into(), perm: id.clone() },
                Rule { label: "a".into(), perm: "2,3,1".parse().unwrap() },
            ],
        );
        assert!(lab.is_err());
        let err = RuleSet::from_json(r#"{"n":3,"rules":[{"label":"a","selector":[1,1,2]}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("rules[0].selector"), "{err}");
        assert!(RuleSet::from_json(r#"{"n":3,"rules":[{"label":"a"}]}"#).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(n in 3usize..13, dg in any::<bool>()) {
            let rs = if dg { dg_k1(n).unwrap() } else { gomez(n).unwrap() };
            let back = RuleSet::from_json(&rs.to_json()).unwrap();
            prop_assert_eq!(back, rs);
        }
    }
}
