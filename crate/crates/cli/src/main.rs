mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use wordgraph::acceptance;
use wordgraph::aut::{aut_report, sufficient_condition_test};
use wordgraph::cayley::is_cayley;
use wordgraph::factor::{reachable_in, shift_factorization_check, two_block_factorization_check};
use wordgraph::graph::{eventual_diameter, moore_bound, WordGraph};
use wordgraph::paths::{
    closed_path_counts, dg_table, duality_involution, format_path, is_closed,
    length_n_closed_check, parse_path, sigma_correspondence_check, tau_correspondence_check,
};
use wordgraph::report::CountReport;
use wordgraph::rules::rule_label;
use wordgraph::seq::{self, format_sequence};
use wordgraph::{dg_k1_ordered, gomez, min_rule_count, Config, DgOrder, RuleSet, Strategy};

#[derive(Parser)]
#[command(name = "wordgraph", version, about = "Word graphs over permutation rule sets")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum rule words or DP expansions per counting call.
    #[arg(long, global = true)]
    word_cap: Option<u64>,
    /// Maximum vertices per automorphism search.
    #[arg(long, global = true)]
    aut_cap: Option<usize>,
    /// Maximum vertices per word graph.
    #[arg(long, global = true)]
    vertex_cap: Option<u64>,
    /// Skip slow work.
    #[arg(long, global = true)]
    quick: bool,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gomez,
    Dg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Diagram,
    FullRotationFirst,
}

impl From<Order> for DgOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Diagram => DgOrder::Diagram,
            Order::FullRotationFirst => DgOrder::FullRotationFirst,
        }
    }
}

#[derive(Args)]
struct RulesArg {
    /// Rule-set JSON file.
    #[arg(long)]
    rules: PathBuf,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    rules: RulesArg,
    /// Alphabet size.
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generate or inspect rule sets.
    #[command(subcommand)]
    Rules(RulesCmd),
    /// Word-graph diameters and Moore bounds.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Count or list tau-sequences.
    Tau {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        first: Option<u32>,
        /// Requires --first.
        #[arg(long, requires = "first")]
        last: Option<u32>,
        /// List rotation representatives.
        #[arg(long)]
        reps: bool,
        /// List the sequences.
        #[arg(long)]
        list: bool,
    },
    /// Count or list sigma-sequences.
    Sigma {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        first: Option<u32>,
        #[arg(long)]
        reps: bool,
        #[arg(long)]
        list: bool,
    },
    /// Closed paths of a given length, by first rule.
    ClosedCounts {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long)]
        length: usize,
    },
    /// Closed-path counts of length k + 1 over the split-rotation family.
    Table7 {
        #[arg(long)]
        kmax: usize,
    },
    /// Verification checks; exit 1 on a discrepancy.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Automorphism group of a word graph.
    Aut {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Path-count sufficient-condition test on the alphabet-fixing subgraph.
    Test {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long)]
        max_len: usize,
    },
    /// Whether a word graph is a Cayley graph.
    Cayley {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Permutations composed by exactly L rules.
    Reach {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        list: bool,
    },
    /// Block-shift factorizations.
    Factor {
        #[command(flatten)]
        rules: RulesArg,
        /// Try every block shift by this amount.
        #[arg(long, required_unless_present = "two_block")]
        shift: Option<usize>,
        /// Check block-preserving permutations at length n instead.
        #[arg(long, conflicts_with = "shift")]
        two_block: bool,
    },
    /// Half-turn duality of a path over the split-rotation family.
    Duality {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        path: String,
        #[arg(long, value_enum, default_value_t = Order::Diagram)]
        order: Order,
    },
    /// Run the acceptance suite; exit 1 if any criterion fails.
    Reproduce,
}

#[derive(Subcommand)]
enum RulesCmd {
    /// Print a rule-set file for a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Word length.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Order::Diagram)]
        order: Order,
        /// Write to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a rule-set file and summarize its properties.
    Check {
        #[command(flatten)]
        rules: RulesArg,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Diameter and Moore ratio of one word graph.
    Diameter {
        #[command(flatten)]
        graph: GraphArgs,
        /// BFS from every vertex instead of one.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Moore bound for a degree and diameter.
    Moore {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        diameter: u32,
    },
    /// Diameter at a large alphabet, deciding admissibility.
    Eventual {
        #[command(flatten)]
        rules: RulesArg,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Odd-case closed paths against doubled tau-sequences.
    TauCorr {
        #[arg(long)]
        k: usize,
    },
    /// Even-case closed paths against sigma-sequences.
    SigmaCorr {
        #[arg(long)]
        k: usize,
    },
    /// Length-n closed paths in the even case use only pi_0 and pi_k.
    LengthN {
        #[arg(long)]
        k: usize,
    },
    /// Every arc has exactly one path of length n back.
    UniqueReturn {
        #[command(flatten)]
        graph: GraphArgs,
    },
}

/// A rendered result and whether a verification passed.
struct Output {
    value: Value,
    table: Option<CountReport>,
    text: Option<String>,
    ok: bool,
}

impl Output {
    fn of<T: Serialize>(v: &T) -> anyhow::Result<Self> {
        Ok(Self {
            value: serde_json::to_value(v)?,
            table: None,
            text: None,
            ok: true,
        })
    }

    fn checked(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    fn table(t: CountReport) -> anyhow::Result<Self> {
        Ok(Self {
            value: serde_json::to_value(&t)?,
            table: Some(t),
            text: None,
            ok: true,
        })
    }

    fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match (format, &self.table) {
            (Format::Json, _) => format!("{}\n", serde_json::to_string_pretty(&self.value)?),
            (Format::Csv, Some(t)) => t.to_csv()?,
            (Format::Csv, None) => render::csv(&self.value),
            (Format::Text, Some(t)) => t.to_text(),
            (Format::Text, None) => self.text.clone().unwrap_or_else(|| render::text(&self.value)),
        })
    }
}

fn load(arg: &RulesArg) -> anyhow::Result<RuleSet> {
    RuleSet::load(&arg.rules).with_context(|| format!("{}", arg.rules.display()))
}

fn config(cli: &Cli) -> Config {
    let mut cfg = Config::default();
    if let Some(c) = cli.word_cap {
        cfg.word_cap = c;
    }
    if let Some(c) = cli.aut_cap {
        cfg.aut_cap = c;
    }
    if let Some(c) = cli.vertex_cap {
        cfg.vertex_cap = c;
    }
    if cli.sequential {
        cfg.strategy = Strategy::Sequential;
    }
    cfg
}

fn sequences(seqs: &[Vec<u32>]) -> Vec<String> {
    seqs.iter().map(|s| format_sequence(s)).collect()
}

#[derive(Serialize)]
struct SequenceCount {
    kind: &'static str,
    length: usize,
    first: Option<u32>,
    last: Option<u32>,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequences: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<String>>,
}

fn sequence_output(
    kind: &'static str,
    length: usize,
    first: Option<u32>,
    last: Option<u32>,
    all: Vec<Vec<u32>>,
    reps: bool,
    list: bool,
) -> anyhow::Result<Output> {
    let hits: Vec<Vec<u32>> = all
        .into_iter()
        .filter(|s| first.is_none_or(|a| s[0] == a) && last.is_none_or(|b| s[length - 1] == b))
        .collect();
    let report = SequenceCount {
        kind,
        length,
        first,
        last,
        count: hits.len(),
        sequences: list.then(|| sequences(&hits)),
        representatives: reps.then(|| sequences(&seq::rotation_representatives(&hits))),
    };
    let mut out = Output::of(&report)?;
    if !list && !reps {
        out.text = Some(format!("{}\n", report.count));
    }
    Ok(out)
}

fn rule_columns(n: usize) -> Vec<String> {
    (0..n).map(rule_label).collect()
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let cfg = config(cli);
    match &cli.command {
        Command::Rules(RulesCmd::Gen { family, n, order, out }) => {
            let rs = match family {
                Family::Gomez => gomez(*n)?,
                Family::Dg => dg_k1_ordered(*n, (*order).into())?,
            };
            if let Some(path) = out {
                std::fs::write(path, rs.to_json() + "\n")
                    .with_context(|| format!("{}", path.display()))?;
            }
            let mut o = Output::of(&rs.to_file())?;
            o.text = Some(rs.to_string());
            Ok(o)
        }
        Command::Rules(RulesCmd::Check { rules }) => {
            let rs = load(rules)?;
            let coverage: Vec<[usize; 2]> = rs.cycle_coverage().into_iter().map(|(l, c)| [l, c]).collect();
            Output::of(&json!({
                "n": rs.n(),
                "rules": rs.len(),
                "labels": rs.rules().iter().map(|r| r.label.clone()).collect::<Vec<_>>(),
                "shift_restricted": rs.is_shift_restricted(),
                "shift_violation": rs.shift_violation().map(|(l, s)| format!("{l} at position {s}")),
                "cycle_coverage": coverage,
                "covers_all_cycle_lengths": rs.covers_all_cycle_lengths(),
                "min_rule_count": min_rule_count(rs.n()),
            }))
        }
        Command::Graph(GraphCmd::Diameter { graph, all_pairs }) => {
            let g = WordGraph::build(&load(&graph.rules)?, graph.m, &cfg)?;
            let mut report = g.report()?;
            if *all_pairs {
                report.diameter = g.diameter_all_pairs()?;
            }
            Output::of(&report)
        }
        Command::Graph(GraphCmd::Moore { degree, diameter }) => Output::of(&json!({
            "degree": degree,
            "diameter": diameter,
            "moore_bound": moore_bound(*degree, *diameter)?.to_string(),
        })),
        Command::Graph(GraphCmd::Eventual { rules }) => {
            let rs = load(rules)?;
            let e = eventual_diameter(&rs, &cfg)?;
            Output::of(&json!({
                "n": rs.n(),
                "m": e.m,
                "diameter": e.diameter,
                "exact": e.exact,
                "admissible": if e.exact { Some(e.diameter as usize == rs.n()) } else { None },
            }))
        }
        Command::Tau { length, first, last, reps, list } => {
            sequence_output("tau", *length, *first, *last, seq::enumerate_tau(*length), *reps, *list)
        }
        Command::Sigma { length, first, reps, list } => {
            sequence_output("sigma", *length, *first, None, seq::enumerate_sigma(*length)?, *reps, *list)
        }
        Command::ClosedCounts { rules, length } => {
            let rs = load(rules)?;
            let counts = closed_path_counts(&rs, *length, &cfg)?;
            let labels = rs.rules().iter().map(|r| r.label.clone()).collect();
            let mut t = CountReport::new(
                format!("closed paths of length {length} by first rule"),
                "length",
                labels,
            );
            t.push_row(length.to_string(), counts);
            Output::table(t)
        }
        Command::Table7 { kmax } => {
            if *kmax < 2 {
                return Err(anyhow!("--kmax must be at least 2"));
            }
            let rows = dg_table(*kmax, DgOrder::FullRotationFirst, &cfg)?;
            let mut t = CountReport::new(
                "closed paths of length k + 1 over the split-rotation family",
                "k",
                rule_columns(*kmax),
            )
            .with_note("pi_0 is the full rotation, pi_i has left block size k - i");
            for (i, row) in rows.into_iter().enumerate() {
                t.push_row((i + 2).to_string(), row);
            }
            Output::table(t)
        }
        Command::Check(CheckCmd::TauCorr { k }) => {
            let r = tau_correspondence_check(*k, &cfg)?;
            Ok(Output::of(&r)?.checked(r.ok))
        }
        Command::Check(CheckCmd::SigmaCorr { k }) => {
            let r = sigma_correspondence_check(*k, &cfg)?;
            Ok(Output::of(&r)?.checked(r.ok))
        }
        Command::Check(CheckCmd::LengthN { k }) => {
            let bad = length_n_closed_check(*k, &cfg)?;
            let shown: Vec<String> = bad.iter().take(10).map(|p| format_path(p)).collect();
            Ok(Output::of(&json!({
                "k": k,
                "violations": bad.len(),
                "examples": shown,
                "ok": bad.is_empty(),
            }))?
            .checked(bad.is_empty()))
        }
        Command::Check(CheckCmd::UniqueReturn { graph }) => {
            let g = WordGraph::build(&load(&graph.rules)?, graph.m, &cfg)?;
            let r = g.unique_return_paths_check()?;
            Ok(Output::of(&r)?.checked(r.ok))
        }
        Command::Aut { graph } => Output::of(&aut_report(&load(&graph.rules)?, graph.m, &cfg)?),
        Command::Test { rules, max_len } => {
            Output::of(&sufficient_condition_test(&load(rules)?, *max_len, &cfg)?)
        }
        Command::Cayley { graph } => Output::of(&is_cayley(&load(&graph.rules)?, graph.m, &cfg)?),
        Command::Reach { rules, length, list } => {
            let rs = load(rules)?;
            let set = reachable_in(&rs, *length, &cfg)?;
            let total: u64 = (1..=rs.n() as u64).product();
            Output::of(&json!({
                "n": rs.n(),
                "length": length,
                "count": set.len(),
                "total": total,
                "covers_all": set.len() as u64 == total,
                "permutations": list.then(|| set.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            }))
        }
        Command::Factor { rules, shift, two_block } => {
            let rs = load(rules)?;
            if *two_block {
                let r = two_block_factorization_check(&rs, &cfg)?;
                Ok(Output::of(&r)?.checked(r.ok))
            } else {
                let m = shift.ok_or_else(|| anyhow!("--shift is required"))?;
                let r = shift_factorization_check(&rs, m, &cfg)?;
                Ok(Output::of(&r)?.checked(r.ok))
            }
        }
        Command::Duality { k, path, order } => {
            let rs = dg_k1_ordered(*k, (*order).into())?;
            let p = parse_path(path)?;
            let image = duality_involution(&rs, &p)?;
            Output::of(&json!({
                "k": k,
                "path": format_path(&p),
                "image": format_path(&image),
                "path_closed": is_closed(&rs, &p)?,
                "image_closed": is_closed(&rs, &image)?,
            }))
        }
        Command::Reproduce => {
            let results = acceptance::run_all(&cfg, cli.quick);
            let ok = results.iter().all(|r| r.pass);
            let mut text: String = results.iter().map(|r| r.line() + "\n").collect();
            let failed = results.iter().filter(|r| !r.pass).count();
            text.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
            let mut out = Output::of(&json!({ "quick": cli.quick, "criteria": results, "ok": ok }))?;
            out.text = Some(text);
            Ok(out.checked(ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| Ok((out.render(cli.format)?, out.ok)));
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
