//! The acceptance suite: one pass/fail verdict per numbered criterion, shared
//! by the `acceptance` test target and the CLI's `reproduce` command.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::aut::{automorphism_group, factorial, is_alphabet_stable, is_subregular, sufficient_condition_test, Digraph};
use crate::cayley::{is_cayley, Verdict};
use crate::config::{map_range, Config};
use crate::error::Result;
use crate::factor::{shift_factorization_check, two_block_factorization_check};
use crate::graph::{eventual_diameter, moore_ratio, WordGraph};
use crate::paths::{
    closed_path_counts, dg_table, duality_involution, format_path, is_closed,
    length_n_closed_check, parse_path, sigma_correspondence_check, tau_correspondence_check,
};
use crate::rules::{dg_k1, dg_k1_ordered, gomez, min_rule_count, DgOrder, RuleSet};
use crate::seq::{self, enumerate_tau, parse_sequence};

/// Rotation representatives of the length-9 sigma-sequences, as printed.
pub const SIGMA_REPS_9: [&str; 8] = [
    "012341234", "010121212", "012011231", "001231123",
    "001011121", "001121101", "011011011", "000121112",
];

/// Rotation representatives of the length-11 sigma-sequences, as printed.
pub const SIGMA_REPS_11: [&str; 12] = [
    "01234512345", "01012312123", "01201212312", "01230112341",
    "00123411234", "00101211212", "00120111231", "00112311012",
    "00121211201", "01010112121", "01101210112", "00012311123",
];

/// Closed-path counts of length `k + 1` over the split-rotation family.
pub const DG_TABLE: [&[u64]; 5] = [
    &[2, 2],
    &[4, 5, 5],
    &[8, 11, 15, 11],
    &[16, 23, 37, 37, 23],
    &[32, 47, 83, 100, 83, 47],
];

pub const DUALITY_PATH: &str = "2,3,7,7,0,1,2,3,2";
pub const DUALITY_IMAGE: &str = "6,5,6,7,0,1,1,5,6";

type Check = fn(&Config, bool) -> Result<(bool, String)>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    /// Has a part skipped under `--quick`.
    pub slow: bool,
    check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2}s): {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, slow, check| Criterion { id, name, slow, check };
    vec![
        c(1, "tau closed forms", false, tau_closed_forms as Check),
        c(2, "sigma counts and representatives", false, sigma_counts_and_reps),
        c(3, "odd correspondence", false, odd_correspondence),
        c(4, "even correspondence", false, even_correspondence),
        c(5, "split-rotation count table", false, count_table),
        c(6, "half-turn duality", false, duality),
        c(7, "diameters", false, diameters),
        c(8, "automorphism groups", false, automorphisms),
        c(9, "sufficient-condition test", false, sufficient_condition),
        c(10, "Cayley verdicts", true, cayley_verdicts),
        c(11, "Moore-ratio trend", false, moore_trend),
        c(12, "unique return paths", false, unique_return),
        c(13, "shift factorizations", false, shift_factorizations),
        c(14, "optimality arithmetic", false, optimality),
    ]
}

/// Runs every criterion, concurrently under the parallel strategy, and
/// returns results in criterion order.
pub fn run_all(cfg: &Config, quick: bool) -> Vec<CriterionResult> {
    let list = criteria();
    map_range(cfg.strategy, 0..list.len(), |i| run_one(&list[i], cfg, quick))
}

pub fn run_one(c: &Criterion, cfg: &Config, quick: bool) -> CriterionResult {
    let start = Instant::now();
    let (pass, detail) = match (c.check)(cfg, quick) {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id: c.id,
        name: c.name.to_string(),
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn verdict(failures: Vec<String>, ok: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok)
    } else {
        (false, failures.join("; "))
    }
}

fn tau_closed_forms(_: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=12usize {
        let all = enumerate_tau(n);
        let count2 = |a: u32, b: u32| all.iter().filter(|s| s[0] == a && s[n - 1] == b).count() as u64;
        let count = |a: u32| all.iter().filter(|s| s[0] == a).count() as u64;
        let mut expect = |what: String, got: u64, want: u64| {
            checked += 1;
            if got != want {
                failures.push(format!("{what} = {got}, want {want}"));
            }
        };
        expect(format!("tau({n},0,0)"), count2(0, 0), n as u64 - 1);
        for i in 2..=n {
            expect(format!("tau({n},0,{})", n - i), count2(0, (n - i) as u32), i as u64 - 1);
        }
        for i in 1..=n as u64 {
            expect(format!("tau({n},{})", n as u64 - i), count((n as u64 - i) as u32), (i * i - i + 2) / 2);
        }
    }
    Ok(verdict(failures, format!("{checked} values for n = 2..12")))
}

fn sigma_counts_and_reps(_: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for k in 2..=5usize {
        let c = seq::sigma_counts(2 * k + 1)?;
        if c[k] != 2 {
            failures.push(format!("sigma({k},{}) = {}", 2 * k + 1, c[k]));
        }
        if c[0] < 3 {
            failures.push(format!("sigma(0,{}) = {}", 2 * k + 1, c[0]));
        }
        if !c[1..].windows(2).all(|w| w[0] > w[1]) {
            failures.push(format!("not strictly decreasing: {c:?}"));
        }
        rows.push(format!("{c:?}"));
    }
    for table in [&SIGMA_REPS_9[..], &SIGMA_REPS_11[..]] {
        let l = table[0].len();
        let listed: Vec<Vec<u32>> = table.iter().map(|t| parse_sequence(t)).collect::<Result<_>>()?;
        for (t, s) in table.iter().zip(&listed) {
            if !seq::is_sigma(s)? {
                failures.push(format!("{t} is not a sigma-sequence"));
            }
        }
        let mut classes: Vec<Vec<u32>> = listed.iter().map(|s| seq::least_rotation(s)).collect();
        classes.sort();
        let got = seq::rotation_representatives(&seq::enumerate_sigma(l)?);
        if classes != got {
            failures.push(format!(
                "length {l}: {} listed classes vs {} enumerated",
                classes.len(),
                got.len()
            ));
        }
    }
    Ok(verdict(
        failures,
        format!("counts {}; 8 and 12 representatives match", rows.join(" ")),
    ))
}

fn tau_prefix(k: usize) -> Vec<u64> {
    (0..=k as u32).map(|a| seq::tau_count(k + 1, a)).collect()
}

fn odd_correspondence(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut shown = Vec::new();
    for k in 1..=3 {
        let rep = tau_correspondence_check(k, cfg)?;
        let want = tau_prefix(k);
        if !rep.ok {
            failures.push(format!("k={k}: missing {:?} unexpected {:?}", rep.missing, rep.unexpected));
        }
        if rep.counts_by_first_rule != want {
            failures.push(format!("k={k}: counts {:?}, want {want:?}", rep.counts_by_first_rule));
        }
        shown.push(format!("k={k} {:?}", rep.counts_by_first_rule));
    }
    Ok(verdict(failures, shown.join(", ")))
}

fn even_correspondence(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut shown = Vec::new();
    for k in 2..=4 {
        let rep = sigma_correspondence_check(k, cfg)?;
        let want = seq::sigma_counts(2 * k + 1)?;
        if !rep.ok {
            failures.push(format!("k={k}: missing {:?} unexpected {:?}", rep.missing, rep.unexpected));
        }
        if rep.counts_by_first_rule != want {
            failures.push(format!("k={k}: counts {:?}, want {want:?}", rep.counts_by_first_rule));
        }
        shown.push(format!("k={k} {:?}", rep.counts_by_first_rule));
    }
    for k in 2..=3 {
        let bad = length_n_closed_check(k, cfg)?;
        if let Some(p) = bad.first() {
            failures.push(format!("k={k}: length-{} closed path {} uses another rule", 2 * k, format_path(p)));
        }
    }
    Ok(verdict(failures, format!("{}; length-2k paths use pi_0, pi_k only", shown.join(", "))))
}

fn count_table(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let got = dg_table(6, DgOrder::FullRotationFirst, cfg)?;
    let failures = got
        .iter()
        .zip(DG_TABLE)
        .enumerate()
        .filter(|(_, (g, w))| g.as_slice() != *w)
        .map(|(i, (g, w))| format!("k={}: {g:?}, want {w:?}", i + 2))
        .collect();
    Ok(verdict(failures, "k = 2..6 exact".into()))
}

fn duality(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let rs = dg_k1(8)?;
    let path = parse_path(DUALITY_PATH)?;
    let want = parse_path(DUALITY_IMAGE)?;
    let image = duality_involution(&rs, &path)?;
    if image != want {
        failures.push(format!("image {}, want {DUALITY_IMAGE}", format_path(&image)));
    }
    for p in [&path, &want] {
        if !is_closed(&rs, p)? {
            failures.push(format!("{} is not closed", format_path(p)));
        }
    }
    if duality_involution(&rs, &image)? != path {
        failures.push("not an involution on the example".into());
    }
    for k in 2..=8 {
        let c = closed_path_counts(&dg_k1_ordered(k, DgOrder::FullRotationFirst)?, k + 1, cfg)?;
        if (0..k).any(|i| c[i] != c[(k - i) % k]) {
            failures.push(format!("k={k}: counts {c:?} not symmetric"));
        }
    }
    Ok(verdict(failures, "example maps as printed; counts symmetric for k = 2..8".into()))
}

fn diameters(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for (n, m) in [(3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)] {
        let d = WordGraph::build(&gomez(n)?, m, cfg)?.diameter()?;
        if d as usize != n {
            failures.push(format!("({n},{m}): diameter {d}"));
        }
    }
    for n in [3, 4] {
        let e = eventual_diameter(&gomez(n)?, cfg)?;
        if !e.exact || e.diameter as usize != n {
            failures.push(format!("n={n}: eventual diameter {} at m={} (exact {})", e.diameter, e.m, e.exact));
        }
    }
    Ok(verdict(failures, "all eight equal n; (3,12) and (4,16) exact".into()))
}

fn automorphisms(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for (n, m) in [(3, 4), (3, 5), (4, 5)] {
        let g = WordGraph::build(&gomez(n)?, m, cfg)?;
        let aut = automorphism_group(&Digraph::from_word_graph(&g), cfg)?;
        if aut.order != factorial(m) {
            failures.push(format!("({n},{m}): |Aut| = {}", aut.order));
        }
        if (n, m) != (3, 5) && !is_alphabet_stable(&g, &aut) {
            failures.push(format!("({n},{m}): not alphabet stable"));
        }
    }
    for n in 3..=5 {
        let (ok, order) = is_subregular(&gomez(n)?, cfg)?;
        if !ok {
            failures.push(format!("n={n}: |Aut(Gamma)| = {order}"));
        }
    }
    Ok(verdict(failures, "|Aut| = m! for (3,4),(3,5),(4,5); Gamma_n subregular n = 3..5".into()))
}

fn sufficient_condition(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 3..=8 {
        let rep = sufficient_condition_test(&gomez(n)?, n + 1, cfg)?;
        if !rep.pass {
            failures.push(format!("n={n}: subregular {} stability {}", rep.subregular_ok, rep.stability_ok));
        }
    }
    let rs = dg_k1(8)?;
    let rep = sufficient_condition_test(&rs, 10, cfg)?;
    let (i, j) = (rs.index_of("pi_2"), rs.index_of("pi_6"));
    match rep.subregular_evidence.iter().find(|e| Some(e.i) == i && Some(e.j) == j) {
        Some(e) if e.length.is_none() => {}
        Some(e) => failures.push(format!("pi_2, pi_6 separated at length {:?}", e.length)),
        None => failures.push("pair pi_2, pi_6 not found".into()),
    }
    Ok(verdict(failures, "n = 3..8 pass; pi_2, pi_6 inseparable up to length 10".into()))
}

fn is_regular_on(g: &WordGraph, elements: &[Vec<u32>]) -> bool {
    let d = Digraph::from_word_graph(g);
    let mut images: Vec<u32> = elements.iter().map(|e| e[0]).collect();
    images.sort_unstable();
    images.dedup();
    elements.len() == g.vertex_count()
        && images.len() == elements.len()
        && elements.iter().all(|e| d.is_automorphism(e))
}

fn cayley_verdicts(cfg: &Config, quick: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for (n, m) in [(3, 4), (3, 5)] {
        let rep = is_cayley(&gomez(n)?, m, cfg)?;
        let g = WordGraph::build(&gomez(n)?, m, cfg)?;
        match (&rep.verdict, &rep.regular_subgroup) {
            (Verdict::Yes, Some(h)) if is_regular_on(&g, &h.elements) => {}
            _ => failures.push(format!("({n},{m}): {:?} without a verified regular subgroup", rep.verdict)),
        }
    }
    let mut detail = "(3,4), (3,5) yes with regular subgroups".to_string();
    if quick {
        detail.push_str("; (3,7) skipped");
    } else {
        let rep = is_cayley(&gomez(3)?, 7, cfg)?;
        if rep.verdict != Verdict::No {
            failures.push(format!("(3,7): {:?}", rep.verdict));
        }
        if rep.aut_order.as_deref() != Some("5040") {
            failures.push(format!("(3,7): |Aut| = {:?}", rep.aut_order));
        }
        detail.push_str("; (3,7) no, |Aut| = 5040");
    }
    Ok(verdict(failures, detail))
}

fn moore_trend(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let rs = gomez(3)?;
    let ratios = [5, 8, 11, 14]
        .iter()
        .map(|&m| moore_ratio(&rs, m, cfg))
        .collect::<Result<Vec<_>>>()?;
    if !ratios.windows(2).all(|w| w[0] < w[1]) {
        failures.push(format!("ratios not increasing: {ratios:?}"));
    }
    let bad = moore_ratio(&RuleSet::empty(3), 8, cfg)?;
    if bad >= ratios[1] {
        failures.push(format!("empty rule set ratio {bad} not below {}", ratios[1]));
    }
    let shown: Vec<String> = ratios.iter().map(|r| r.to_string()).collect();
    Ok(verdict(failures, format!("{}; empty set at m=8: {bad}", shown.join(" < "))))
}

fn unique_return(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut arcs = 0;
    for (n, m) in [(3, 4), (3, 5), (4, 5)] {
        let rep = WordGraph::build(&gomez(n)?, m, cfg)?.unique_return_paths_check()?;
        arcs += rep.arcs_checked;
        if !rep.ok {
            failures.push(format!("({n},{m}): {} violations", rep.violations.len()));
        }
    }
    Ok(verdict(failures, format!("{arcs} arcs checked")))
}

fn shift_factorizations(cfg: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut shifts = 0;
    for n in [3, 4] {
        let rs = gomez(n)?;
        for m in 1..n {
            let rep = shift_factorization_check(&rs, m, cfg)?;
            shifts += rep.outcomes.len();
            for o in rep.outcomes.iter().filter(|o| o.witness.is_none()) {
                failures.push(format!("n={n} m={m} top {:?} has no factorization", o.top_images));
            }
        }
        if !two_block_factorization_check(&rs, cfg)?.ok {
            failures.push(format!("n={n}: two-block check failed"));
        }
    }
    Ok(verdict(failures, format!("{shifts} shifts factor; two-block check holds")))
}

fn optimality(_: &Config, _: bool) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for n in 3..=12 {
        let rs = gomez(n)?;
        if rs.len() != min_rule_count(n) {
            failures.push(format!("n={n}: {} rules, minimum {}", rs.len(), min_rule_count(n)));
        }
        let want: BTreeMap<usize, usize> = (1..=n)
            .map(|l| (l, if n % 2 == 0 && l == n / 2 { 2 } else { 1 }))
            .collect();
        if rs.cycle_coverage() != want {
            failures.push(format!("n={n}: coverage {:?}", rs.cycle_coverage()));
        }
    }
    Ok(verdict(failures, "n = 3..12".into()))
}
