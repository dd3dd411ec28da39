//! Tau- and sigma-sequences: cyclic integer sequences that encode closed
//! rule paths of length `n + 1`.
//!
//! All index arithmetic is cyclic. A tau-sequence has at most three zeros
//! and every nonzero entry is one more than its cyclic predecessor, so it is
//! a rotation of at most three ascending runs `0, 1, 2, ..`. A
//! sigma-sequence has odd length `2k + 1`, at most three zeros, and
//!
//! * `a[i] == 0` implies `a[i + k + 1] == 1`,
//! * `a[i] == 1` implies `a[i - 1] == 0` or `a[i + k] == 0`,
//! * `a[i] > 1` implies `a[i - 1] == a[i] - 1`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Parses `"0 1 2"`, `"0,1,2"` or the compact digit form `"012"`.
pub fn parse_sequence(text: &str) -> Result<Vec<u32>> {
    let t = text.trim();
    let bad = |s: &str| Error::NotASequence(format!("bad sequence entry {s:?}"));
    if t.contains(|c: char| c == ',' || c.is_whitespace()) {
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u32>().map_err(|_| bad(s)))
            .collect()
    } else {
        t.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| bad(&c.to_string())))
            .collect()
    }
}

pub fn format_sequence(seq: &[u32]) -> String {
    if seq.iter().all(|&a| a < 10) {
        seq.iter().map(|a| a.to_string()).collect()
    } else {
        seq.iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[inline]
fn at(seq: &[u32], i: usize, offset: isize) -> u32 {
    let l = seq.len() as isize;
    seq[(i as isize + offset).rem_euclid(l) as usize]
}

fn zeros(seq: &[u32]) -> usize {
    seq.iter().filter(|&&a| a == 0).count()
}

pub fn is_tau(seq: &[u32]) -> bool {
    !seq.is_empty()
        && zeros(seq) <= 3
        && (0..seq.len()).all(|i| seq[i] == 0 || at(seq, i, -1) + 1 == seq[i])
}

fn check_sigma_length(l: usize) -> Result<usize> {
    if l < 5 || l.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "sigma-sequences have odd length >= 5, got {l}"
        )));
    }
    Ok((l - 1) / 2)
}

pub fn is_sigma(seq: &[u32]) -> Result<bool> {
    let k = check_sigma_length(seq.len())? as isize;
    if zeros(seq) > 3 {
        return Ok(false);
    }
    Ok((0..seq.len()).all(|i| match seq[i] {
        0 => at(seq, i, k + 1) == 1,
        1 => at(seq, i, -1) == 0 || at(seq, i, k) == 0,
        a => at(seq, i, -1) + 1 == a,
    }))
}

/// All tau-sequences of length `l`, in lexicographic order.
pub fn enumerate_tau(l: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if l == 0 {
        return out;
    }
    let mut cur = Vec::with_capacity(l);
    for first in 0..l as u32 {
        cur.clear();
        cur.push(first);
        tau_dfs(l, &mut cur, (first == 0) as usize, &mut out);
    }
    out
}

fn tau_dfs(l: usize, cur: &mut Vec<u32>, zs: usize, out: &mut Vec<Vec<u32>>) {
    if cur.len() == l {
        let first = cur[0];
        if first == 0 || *cur.last().unwrap() + 1 == first {
            out.push(cur.clone());
        }
        return;
    }
    if zs < 3 {
        cur.push(0);
        tau_dfs(l, cur, zs + 1, out);
        cur.pop();
    }
    let next = *cur.last().unwrap() + 1;
    if (next as usize) < l {
        cur.push(next);
        tau_dfs(l, cur, zs, out);
        cur.pop();
    }
}

/// Number of tau-sequences of length `l` with first entry `alpha`.
pub fn tau_count(l: usize, alpha: u32) -> u64 {
    enumerate_tau(l).iter().filter(|s| s[0] == alpha).count() as u64
}

/// Number of tau-sequences of length `l` with first entry `alpha` and last
/// entry `beta`.
pub fn tau_count2(l: usize, alpha: u32, beta: u32) -> u64 {
    enumerate_tau(l)
        .iter()
        .filter(|s| s[0] == alpha && s[l - 1] == beta)
        .count() as u64
}

/// Closed form for [`tau_count`] with `i = l - alpha`, `1 <= i <= l`.
pub fn tau_count_formula(l: usize, alpha: u32) -> Option<u64> {
    let i = l.checked_sub(alpha as usize).filter(|&i| i >= 1)? as u64;
    Some((i * i - i + 2) / 2)
}

/// Closed form for [`tau_count2`] with `alpha = 0`: `beta = l - i` gives
/// `i - 1` for `1 < i <= l`; `beta = 0` gives `l - 1`.
pub fn tau_count2_formula(l: usize, beta: u32) -> Option<u64> {
    if l < 2 {
        return None;
    }
    if beta == 0 {
        return Some(l as u64 - 1);
    }
    let i = l.checked_sub(beta as usize).filter(|&i| i > 1)?;
    Some(i as u64 - 1)
}

/// All sigma-sequences of length `l`, in lexicographic order.
pub fn enumerate_sigma(l: usize) -> Result<Vec<Vec<u32>>> {
    let k = check_sigma_length(l)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(l);
    for first in 0..l as u32 {
        cur.clear();
        cur.push(first);
        sigma_dfs(l, k, &mut cur, (first == 0) as usize, &mut out);
    }
    Ok(out)
}

fn sigma_dfs(l: usize, k: usize, cur: &mut Vec<u32>, zs: usize, out: &mut Vec<Vec<u32>>) {
    let i = cur.len();
    if i == l {
        if is_sigma(cur).unwrap_or(false) {
            out.push(cur.clone());
        }
        return;
    }
    // a zero at i - k - 1 forces a one here
    let forced_one = i > k && cur[i - k - 1] == 0;
    let prev = cur[i - 1];
    let mut candidates = [None; 3];
    if !forced_one {
        if zs < 3 {
            candidates[0] = Some(0);
        }
        if prev >= 1 && prev + 1 < l as u32 {
            candidates[2] = Some(prev + 1);
        }
    }
    candidates[1] = Some(1);
    for v in candidates.into_iter().flatten() {
        cur.push(v);
        sigma_dfs(l, k, cur, zs + (v == 0) as usize, out);
        cur.pop();
    }
}

/// Number of sigma-sequences of length `l` with first entry `alpha`.
pub fn sigma_count(alpha: u32, l: usize) -> Result<u64> {
    Ok(enumerate_sigma(l)?
        .iter()
        .filter(|s| s[0] == alpha)
        .count() as u64)
}

/// `sigma_count(alpha, l)` for every `alpha` in `0..=k`.
pub fn sigma_counts(l: usize) -> Result<Vec<u64>> {
    let k = check_sigma_length(l)?;
    let all = enumerate_sigma(l)?;
    Ok((0..=k as u32)
        .map(|a| all.iter().filter(|s| s[0] == a).count() as u64)
        .collect())
}

pub fn rotate(seq: &[u32], by: usize) -> Vec<u32> {
    let mut v = seq.to_vec();
    if !v.is_empty() {
        v.rotate_left(by % seq.len());
    }
    v
}

pub fn least_rotation(seq: &[u32]) -> Vec<u32> {
    (0..seq.len().max(1))
        .map(|r| rotate(seq, r))
        .min()
        .unwrap_or_default()
}

/// Lexicographically least rotation of each sequence, deduplicated and
/// sorted.
pub fn rotation_representatives(seqs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut reps: Vec<Vec<u32>> = seqs.iter().map(|s| least_rotation(s)).collect();
    reps.sort();
    reps.dedup();
    reps
}

/// One of the three 0/1 patterns: `kind` leading zeros at consecutive
/// indices, a one right after them, and a one `k + 1` after each zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroOneGroup {
    pub kind: usize,
    /// 0-based indices of the zeros.
    pub zeros: Vec<usize>,
    /// 0-based indices of the ones, the adjacent one first.
    pub ones: Vec<usize>,
}

/// Partitions the zeros and ones of a sigma-sequence into 01-groups, one
/// per maximal cyclic run of zeros.
pub fn zero_one_groups(seq: &[u32]) -> Result<Vec<ZeroOneGroup>> {
    if !is_sigma(seq)? {
        return Err(Error::NotASequence(format!(
            "{} is not a sigma-sequence",
            format_sequence(seq)
        )));
    }
    let l = seq.len();
    let k = (l - 1) / 2;
    let mut groups = Vec::new();
    let mut owner = vec![usize::MAX; l];
    for start in 0..l {
        if seq[start] != 0 || seq[(start + l - 1) % l] == 0 {
            continue;
        }
        let run = (0..l).take_while(|&j| seq[(start + j) % l] == 0).count();
        let zeros: Vec<usize> = (0..run).map(|j| (start + j) % l).collect();
        let mut ones = vec![(start + run) % l];
        ones.extend((0..run).map(|j| (start + j + k + 1) % l));
        for &i in zeros.iter().chain(&ones) {
            let expected = if zeros.contains(&i) { 0 } else { 1 };
            if seq[i] != expected || owner[i] != usize::MAX {
                return Err(Error::NotASequence(format!(
                    "01-group construction failed at index {i} of {}",
                    format_sequence(seq)
                )));
            }
            owner[i] = groups.len();
        }
        groups.push(ZeroOneGroup {
            kind: run,
            zeros,
            ones,
        });
    }
    if let Some(i) = (0..l).find(|&i| seq[i] <= 1 && owner[i] == usize::MAX) {
        return Err(Error::NotASequence(format!(
            "index {i} of {} is in no 01-group",
            format_sequence(seq)
        )));
    }
    Ok(groups)
}
