//! Block-shift factorizations and exact-length reachability.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::paths::{word_count_layers, RulePath};
use crate::perm::Permutation;
use crate::rules::RuleSet;

/// A permutation in destination form sending the letter at position `i` to
/// `i - m` for `m < i <= n`, and positions `1..=m` onto `n-m+1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockShift {
    pub n: usize,
    pub m: usize,
    /// Destination of positions `1..=m`, 1-based.
    pub top_images: Vec<usize>,
}

impl BlockShift {
    pub fn new(n: usize, m: usize, top_images: Vec<usize>) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidArgument(format!(
                "shift {m} must satisfy 1 <= shift < n = {n}"
            )));
        }
        let freed: BTreeSet<usize> = (n - m + 1..=n).collect();
        let given: BTreeSet<usize> = top_images.iter().copied().collect();
        if top_images.len() != m || given != freed {
            return Err(Error::InvalidArgument(format!(
                "top images {top_images:?} are not a bijection onto {}..={n}",
                n - m + 1
            )));
        }
        Ok(Self { n, m, top_images })
    }

    /// Every valid shift by `m`, ordered by top images.
    pub fn all(n: usize, m: usize) -> Result<Vec<Self>> {
        if m == 0 || m >= n {
            return Err(Error::InvalidArgument(format!(
                "shift {m} must satisfy 1 <= shift < n = {n}"
            )));
        }
        Ok((n - m + 1..=n)
            .permutations(m)
            .map(|top_images| Self { n, m, top_images })
            .collect())
    }

    pub fn destination(&self) -> Vec<usize> {
        let mut d = self.top_images.clone();
        d.extend(1..=self.n - self.m);
        d
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_destination(&self.destination()).expect("valid block shift")
    }
}

/// `sets[t]` holds every permutation composed by exactly `t` rules.
fn reach_layers(rs: &RuleSet, len: usize, cfg: &Config) -> Result<Vec<HashSet<Permutation>>> {
    Ok(word_count_layers(rs, len, cfg)?
        .into_iter()
        .map(|m| m.into_keys().collect())
        .collect())
}

/// Lexicographically least rule word of length `len` composing to `target`.
fn least_word(
    rs: &RuleSet,
    sets: &[HashSet<Permutation>],
    len: usize,
    target: &Permutation,
) -> Option<RulePath> {
    if !sets[len].contains(target) {
        return None;
    }
    let mut acc = Permutation::identity(rs.n());
    let mut word = Vec::with_capacity(len);
    for t in 0..len {
        let left = len - t - 1;
        let (i, next) = rs
            .perms()
            .iter()
            .enumerate()
            .map(|(i, p)| (i, acc.then(p)))
            .find(|(_, q)| sets[left].contains(&q.inverse().then(target)))?;
        word.push(i);
        acc = next;
    }
    Some(word)
}

/// A rule word of length `tau.m` composing to `tau`, if one exists.
pub fn shift_factorization_exists(
    rs: &RuleSet,
    tau: &BlockShift,
    cfg: &Config,
) -> Result<Option<RulePath>> {
    if tau.n != rs.n() {
        return Err(Error::DegreeMismatch {
            left: tau.n,
            right: rs.n(),
        });
    }
    let sets = reach_layers(rs, tau.m, cfg)?;
    Ok(least_word(rs, &sets, tau.m, &tau.to_permutation()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftOutcome {
    pub top_images: Vec<usize>,
    pub witness: Option<RulePath>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftReport {
    pub n: usize,
    pub m: usize,
    pub outcomes: Vec<ShiftOutcome>,
    pub ok: bool,
}

/// Tries every valid shift by `m`.
pub fn shift_factorization_check(rs: &RuleSet, m: usize, cfg: &Config) -> Result<ShiftReport> {
    let shifts = BlockShift::all(rs.n(), m)?;
    let sets = reach_layers(rs, m, cfg)?;
    let outcomes: Vec<ShiftOutcome> = shifts
        .into_iter()
        .map(|s| ShiftOutcome {
            witness: least_word(rs, &sets, m, &s.to_permutation()),
            top_images: s.top_images,
        })
        .collect();
    let ok = outcomes.iter().all(|o| o.witness.is_some());
    Ok(ShiftReport {
        n: rs.n(),
        m,
        outcomes,
        ok,
    })
}

/// Every permutation composed by exactly `len` rules, sorted.
pub fn reachable_in(rs: &RuleSet, len: usize, cfg: &Config) -> Result<BTreeSet<Permutation>> {
    let mut layers = word_count_layers(rs, len, cfg)?;
    Ok(layers.swap_remove(len).into_keys().collect())
}

/// Whether exactly `len` rules reach all of `S_n`. One candidate reading of
/// `n`-reachability; within-`len` reachability is the union over shorter
/// lengths.
pub fn covers_all_at(rs: &RuleSet, len: usize, cfg: &Config) -> Result<bool> {
    let total: usize = (1..=rs.n()).product();
    Ok(reachable_in(rs, len, cfg)?.len() == total)
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitOutcome {
    /// First position of the second block, 1-based.
    pub k: usize,
    pub required: usize,
    /// Block-preserving permutations not reached, as destination lists.
    pub missing: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoBlockReport {
    pub n: usize,
    pub splits: Vec<SplitOutcome>,
    pub ok: bool,
}

/// For each split `2 <= k < n`, checks that every permutation keeping
/// `{1..k-1}` and `{k..n}` in place as blocks is a product of exactly `n`
/// rules.
pub fn two_block_factorization_check(rs: &RuleSet, cfg: &Config) -> Result<TwoBlockReport> {
    let n = rs.n();
    let reach = reachable_in(rs, n, cfg)?;
    let splits: Vec<SplitOutcome> = (2..n)
        .map(|k| {
            let mut required = 0;
            let mut missing = Vec::new();
            for low in (1..k).permutations(k - 1) {
                for high in (k..=n).permutations(n - k + 1) {
                    let dest: Vec<usize> = low.iter().chain(&high).copied().collect();
                    required += 1;
                    let p = Permutation::from_destination(&dest).expect("valid");
                    if !reach.contains(&p) {
                        missing.push(dest);
                    }
                }
            }
            SplitOutcome {
                k,
                required,
                missing,
            }
        })
        .collect();
    let ok = splits.iter().all(|s| s.missing.is_empty());
    Ok(TwoBlockReport { n, splits, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::compose_path;
    use crate::rules::gomez;
    use proptest::prelude::*;

    fn cfg() -> Config {
        Config::default()
    }

    fn identity_only(n: usize) -> RuleSet {
        RuleSet::from_perms(n, vec![Permutation::identity(n)]).unwrap()
    }

    /// Every rule word of length `len`, by counting in base `r`.
    fn brute_reach(rs: &RuleSet, len: usize) -> BTreeSet<Permutation> {
        (0..len)
            .map(|_| 0..rs.len())
            .multi_cartesian_product()
            .map(|w| compose_path(rs, &w).unwrap())
            .chain((len == 0).then(|| Permutation::identity(rs.n())))
            .collect()
    }

    #[test]
    fn block_shift_shape() {
        let s = BlockShift::new(5, 2, vec![5, 4]).unwrap();
        assert_eq!(s.destination(), vec![5, 4, 1, 2, 3]);
        assert_eq!(BlockShift::all(5, 2).unwrap().len(), 2);
        assert_eq!(BlockShift::all(6, 3).unwrap().len(), 6);
        assert!(BlockShift::new(5, 2, vec![3, 4]).is_err());
        assert!(BlockShift::new(5, 5, vec![1, 2, 3, 4, 5]).is_err());
        let p = s.to_permutation();
        let w = [10, 11, 12, 13, 14];
        assert_eq!(p.apply(&w), vec![12, 13, 14, 11, 10]);
    }

    #[test]
    fn gomez_shifts_factor() {
        for n in 3..=5 {
            let rs = gomez(n).unwrap();
            for m in 1..n {
                let rep = shift_factorization_check(&rs, m, &cfg()).unwrap();
                assert!(rep.ok, "n={n} m={m}");
                for o in &rep.outcomes {
                    let w = o.witness.as_ref().unwrap();
                    let tau = BlockShift::new(n, m, o.top_images.clone()).unwrap();
                    assert_eq!(compose_path(&rs, w).unwrap(), tau.to_permutation());
                }
            }
        }
    }

    #[test]
    fn witness_is_least_word() {
        let rs = gomez(4).unwrap();
        for tau in BlockShift::all(4, 3).unwrap() {
            let w = shift_factorization_exists(&rs, &tau, &cfg()).unwrap().unwrap();
            let best = (0..3)
                .map(|_| 0..rs.len())
                .multi_cartesian_product()
                .find(|c| compose_path(&rs, c).unwrap() == tau.to_permutation())
                .unwrap();
            assert_eq!(w, best);
        }
    }

    #[test]
    fn identity_rule_set_factors_nothing() {
        for n in 3..=5 {
            let rs = identity_only(n);
            for m in 1..n {
                for tau in BlockShift::all(n, m).unwrap() {
                    assert!(shift_factorization_exists(&rs, &tau, &cfg()).unwrap().is_none());
                }
            }
            assert!(!two_block_factorization_check(&rs, &cfg()).unwrap().ok);
        }
    }

    #[test]
    fn reach_matches_brute_force() {
        for n in 3..=5 {
            let rs = gomez(n).unwrap();
            for len in 0..=n {
                assert_eq!(reachable_in(&rs, len, &cfg()).unwrap(), brute_reach(&rs, len));
            }
        }
        let r3 = reachable_in(&gomez(3).unwrap(), 3, &cfg()).unwrap();
        assert!(r3.contains(&Permutation::identity(3)));
        assert!(reachable_in(&gomez(4).unwrap(), 4, &cfg()).unwrap().len() <= 24);
        assert_eq!(
            reachable_in(&gomez(4).unwrap(), 0, &cfg()).unwrap().into_iter().collect::<Vec<_>>(),
            vec![Permutation::identity(4)]
        );
    }

    #[test]
    fn two_block_holds_for_small_gomez() {
        for n in 3..=5 {
            let rep = two_block_factorization_check(&gomez(n).unwrap(), &cfg()).unwrap();
            assert!(rep.ok, "n={n}: {rep:?}");
            for s in &rep.splits {
                let k = s.k;
                assert_eq!(s.required, (1..k).product::<usize>() * (1..=n - k + 1).product::<usize>());
            }
        }
    }

    #[test]
    fn covers_all_is_reach_size() {
        let rs = gomez(3).unwrap();
        for len in 0..6 {
            let full = reachable_in(&rs, len, &cfg()).unwrap().len() == 6;
            assert_eq!(covers_all_at(&rs, len, &cfg()).unwrap(), full);
        }
    }

    proptest! {
        #[test]
        fn reach_composes(n in 3usize..=5, a in 0usize..4, b in 0usize..4) {
            let rs = gomez(n).unwrap();
            let ra = reachable_in(&rs, a, &cfg()).unwrap();
            let rb = reachable_in(&rs, b, &cfg()).unwrap();
            let prod: BTreeSet<Permutation> = ra
                .iter()
                .flat_map(|x| rb.iter().map(move |y| x.then(y)))
                .collect();
            prop_assert_eq!(prod, reachable_in(&rs, a + b, &cfg()).unwrap());
        }
    }
}
