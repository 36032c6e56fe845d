//! Command-line front end: tally ballot files, replay the bundled
//! demonstration elections, run the Monte Carlo study, probe strategic
//! attacks, and search for criterion violations.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 tie under
//! `--require-winner`, 3 reproduction mismatch.

use std::fmt::Display;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use votelab::ballots::{display_name, pairwise_tally, CandidateId, PairwiseTally, Profile};
use votelab::criteria::{search_violations, BallotSpace, Criterion, SearchSpace};
use votelab::experiments::{run_full_study_with_jobs, StudyConfig, StudyResult};
use votelab::io::ProfileDocument;
use votelab::rules::{LossMetric, Outcome, Rule, Trace};
use votelab::scenarios;
use votelab::strategy::{
    apply_strategic_voters, discretize_profile, global_rating_extremes, min_flippers, AttackSpec,
};

#[derive(Parser)]
#[command(name = "votelab", version, about = "Voting rules laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tally a ballot file under one voting rule.
    Tally(TallyArgs),
    /// Re-run a bundled election and verify its published numbers.
    Reproduce(ReproduceArgs),
    /// Run the majority-vs-median Monte Carlo study.
    Simulate(SimulateArgs),
    /// Find how many strategic voters flip an election.
    Attack(AttackArgs),
    /// Search for electoral-criterion violations.
    Criteria(CriteriaArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Majority,
    Approval,
    Range,
    Mj,
    Mjd,
    Minimax,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Margin,
    WinningVotes,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

fn to_rule(rule: RuleArg, metric: MetricArg) -> Rule {
    match rule {
        RuleArg::Majority => Rule::Majority,
        RuleArg::Approval => Rule::Approval,
        RuleArg::Range => Rule::Range,
        RuleArg::Mj => Rule::MajorityJudgment,
        RuleArg::Mjd => Rule::Mjd,
        RuleArg::Minimax => Rule::Minimax(match metric {
            MetricArg::Margin => LossMetric::Margin,
            MetricArg::WinningVotes => LossMetric::WinningVotes,
        }),
    }
}

#[derive(Args)]
struct TallyArgs {
    /// Ballot file (.csv, or .json in the profile document format).
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "minimax")]
    rule: RuleArg,
    #[arg(long, value_enum, default_value = "margin")]
    metric: MetricArg,
    /// Treat whole-number ratings as grades 1..=N.
    #[arg(long)]
    grades: Option<usize>,
    /// Exit with status 2 when the rule reports a tie.
    #[arg(long)]
    require_winner: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct ReproduceArgs {
    /// example1 | example2 | approval | example3 | study
    target: String,
    /// Trials per cell for the study target.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct SimulateArgs {
    /// Voter counts, one study section each.
    #[arg(long, value_delimiter = ',', default_values_t = vec![15, 55, 95])]
    voters: Vec<usize>,
    /// Positions of candidate B, one subsection each.
    #[arg(long = "b-pos", value_delimiter = ',',
          default_values_t = vec![0.1, 0.2, 0.3, 0.4, 0.5])]
    b_pos: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads; 0 means one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Suppress the timestamp header so reruns are byte-identical.
    #[arg(long)]
    deterministic: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output path; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    /// Ballot file; the bundled 99-voter spatial election when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "mjd")]
    rule: RuleArg,
    #[arg(long, value_enum, default_value = "margin")]
    metric: MetricArg,
    /// Candidate the strategists favor (name from the file header).
    #[arg(long, default_value = "B")]
    favored: String,
    /// Candidate the strategists bury.
    #[arg(long, default_value = "A")]
    opponent: String,
    /// Apply exactly k strategists instead of scanning for the minimum.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Args)]
struct CriteriaArgs {
    #[arg(long, value_enum, default_value = "minimax")]
    rule: RuleArg,
    #[arg(long, value_enum, default_value = "margin")]
    metric: MetricArg,
    /// no-show | twin | truncation | multiple-districts | scc
    #[arg(long)]
    criterion: String,
    #[arg(long, value_delimiter = ',', default_values_t = vec![3])]
    candidates: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![3, 5, 7])]
    voters: Vec<usize>,
    /// strict | truncated | graded
    #[arg(long, default_value = "strict")]
    ballots: String,
    #[arg(long, default_value_t = 6)]
    grades: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's help/version "errors" are normal exits
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Tally(args) => cmd_tally(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Attack(args) => cmd_attack(args),
        Command::Criteria(args) => cmd_criteria(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn fail<E: Display>(err: E) -> String {
    err.to_string()
}

// ---------------------------------------------------------------------------
// tally
// ---------------------------------------------------------------------------

fn load_document(path: &PathBuf, grades: Option<usize>) -> Result<ProfileDocument, String> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let scale = grades.map(votelab::ballots::RatingScale::graded_numeric);
    let is_json =
        path.extension().is_some_and(|e| e == "json") || text.trim_start().starts_with('{');
    let mut doc = if is_json {
        ProfileDocument::from_json(&text).map_err(fail)?
    } else {
        ProfileDocument::read_csv(text.as_bytes(), scale.clone()).map_err(fail)?
    };
    if is_json && scale.is_some() {
        doc.scale = scale;
    }
    Ok(doc)
}

fn print_matrix(names: &[String], tally: &PairwiseTally) {
    println!("pairwise matrix (row beats column):");
    let width = names.iter().map(|n| n.len()).max().unwrap_or(1).max(5);
    print!("{:>width$}", "");
    for name in names {
        print!(" {name:>width$}");
    }
    println!();
    for (i, name) in names.iter().enumerate() {
        print!("{name:>width$}");
        for j in 0..names.len() {
            if i == j {
                print!(" {:>width$}", "-");
            } else {
                print!(" {:>width$}", tally.count(CandidateId(i), CandidateId(j)));
            }
        }
        println!();
    }
}

fn print_scores(names: &[String], outcome: &Outcome) {
    match &outcome.trace {
        Trace::Majority { votes } => {
            for (name, v) in names.iter().zip(votes) {
                println!("  {name}: {v} votes");
            }
        }
        Trace::Approval { approvals } => {
            for (name, a) in names.iter().zip(approvals) {
                println!("  {name}: {a} approvals");
            }
        }
        Trace::Range { totals, means } => {
            for i in 0..names.len() {
                println!(
                    "  {}: mean {:.4} (total {:.4})",
                    names[i], means[i], totals[i]
                );
            }
        }
        Trace::Median { medians, tie_break } => {
            for (name, m) in names.iter().zip(medians) {
                println!("  {name}: median {m:.4}");
            }
            if let Some(tb) = tie_break {
                match tb.decisive_row {
                    Some(row) => {
                        let values: Vec<String> = tb
                            .contenders
                            .iter()
                            .zip(&tb.decisive_values)
                            .map(|(c, v)| format!("{}={v}", names[c.0]))
                            .collect();
                        println!(
                            "  tie-break: median row {}, decisive row {} ({})",
                            tb.median_row,
                            row,
                            values.join(", ")
                        );
                    }
                    None => println!("  tie-break: all rows tied"),
                }
            }
        }
        Trace::Minimax {
            condorcet,
            largest_losses,
            metric,
        } => {
            for (name, ll) in names.iter().zip(largest_losses) {
                println!("  {name}: largest loss {ll} ({metric:?})");
            }
            match condorcet {
                Some(w) => println!("  condorcet winner: {}", names[w.0]),
                None => println!("  no condorcet winner"),
            }
        }
    }
}

fn verdict_line(names: &[String], outcome: &Outcome) -> String {
    match outcome.winner {
        Some(w) => format!("winner: {}", names[w.0]),
        None => format!(
            "tie: {}",
            outcome
                .tied
                .iter()
                .map(|c| names[c.0].clone())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

fn outcome_json(names: &[String], rule: Rule, outcome: &Outcome) -> serde_json::Value {
    serde_json::json!({
        "rule": rule.name(),
        "winner": outcome.winner.map(|w| names[w.0].clone()),
        "tied": outcome.tied.iter().map(|c| names[c.0].clone()).collect::<Vec<_>>(),
        "trace": outcome.trace,
    })
}

fn cmd_tally(args: TallyArgs) -> Result<ExitCode, String> {
    let doc = load_document(&args.input, args.grades)?;
    let profile = doc.to_profile().map_err(fail)?;
    let rule = to_rule(args.rule, args.metric);
    let outcome = rule.decide(&profile).map_err(fail)?;
    let names = &doc.candidates;

    match args.format {
        FormatArg::Json => {
            let mut value = outcome_json(names, rule, &outcome);
            value["pairwise"] =
                serde_json::to_value(pairwise_tally(&profile).matrix()).map_err(fail)?;
            println!("{}", serde_json::to_string_pretty(&value).map_err(fail)?);
        }
        _ => {
            println!("rule: {}", rule.name());
            println!("{}", verdict_line(names, &outcome));
            print_scores(names, &outcome);
            print_matrix(names, &pairwise_tally(&profile));
        }
    }
    if args.require_winner && outcome.is_tie() {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct Checks {
    failures: usize,
}

impl Checks {
    fn new() -> Self {
        Checks { failures: 0 }
    }

    fn exact<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, expected: T, actual: T) {
        if expected == actual {
            println!("PASS {label}: {actual:?}");
        } else {
            println!("FAIL {label}: expected {expected:?}, got {actual:?}");
            self.failures += 1;
        }
    }

    fn close(&mut self, label: &str, expected: f64, actual: f64) {
        if (expected - actual).abs() <= 5e-4 {
            println!("PASS {label}: {actual:.4} ~ {expected}");
        } else {
            println!("FAIL {label}: expected {expected} +/- 5e-4, got {actual}");
            self.failures += 1;
        }
    }

    fn holds(&mut self, label: &str, ok: bool) {
        if ok {
            println!("PASS {label}");
        } else {
            println!("FAIL {label}");
            self.failures += 1;
        }
    }

    fn finish(self) -> ExitCode {
        if self.failures == 0 {
            ExitCode::SUCCESS
        } else {
            println!("{} assertion(s) failed", self.failures);
            ExitCode::from(3)
        }
    }
}

fn winner_name(outcome: &Outcome) -> String {
    match outcome.winner {
        Some(w) => display_name(w.0),
        None => "tie".into(),
    }
}

fn reproduce_example1(checks: &mut Checks) {
    let profile = scenarios::mj_upset();
    let mj = Rule::MajorityJudgment.decide(&profile).unwrap();
    match &mj.trace {
        Trace::Median { medians, .. } => {
            checks.exact("median grade of A", 3.0, medians[0]);
            checks.exact("median grade of B", 4.0, medians[1]);
        }
        _ => checks.holds("median trace present", false),
    }
    checks.exact("majority-judgment winner", "B".into(), winner_name(&mj));
    let mr = Rule::Majority.decide(&profile).unwrap();
    checks.exact("majority winner", "A".into(), winner_name(&mr));
    checks.exact(
        "two-way race",
        Trace::Majority { votes: vec![98, 1] },
        mr.trace,
    );
}

fn reproduce_example2(checks: &mut Checks) {
    let profile = scenarios::range_upset();
    let rv = Rule::Range.decide(&profile).unwrap();
    match &rv.trace {
        Trace::Range { totals, .. } => {
            checks.exact("score total gap (B - A)", 1.0, totals[1] - totals[0]);
        }
        _ => checks.holds("range trace present", false),
    }
    checks.exact("range winner", "B".into(), winner_name(&rv));
    let mr = Rule::Majority.decide(&profile).unwrap();
    checks.exact("majority winner", "A".into(), winner_name(&mr));
    checks.exact(
        "two-way race",
        Trace::Majority { votes: vec![98, 1] },
        mr.trace,
    );
}

fn reproduce_approval(checks: &mut Checks) {
    let outcome = Rule::Approval
        .decide(&scenarios::approval_upset_ballots())
        .unwrap();
    checks.exact(
        "approval counts",
        Trace::Approval {
            approvals: vec![5, 4],
        },
        outcome.trace.clone(),
    );
    checks.exact("approval winner", "A".into(), winner_name(&outcome));
    let tally = pairwise_tally(&scenarios::approval_upset_ratings());
    checks.exact(
        "voters preferring B pairwise",
        8,
        tally.count(CandidateId(1), CandidateId(0)),
    );
}

fn reproduce_example3(checks: &mut Checks) {
    let sincere = scenarios::spatial_profile();
    let tally = pairwise_tally(&sincere);
    checks.exact(
        "voters preferring A",
        59,
        tally.count(CandidateId(0), CandidateId(1)),
    );
    checks.exact(
        "voters preferring B",
        40,
        tally.count(CandidateId(1), CandidateId(0)),
    );

    let rv = Rule::Range.decide(&sincere).unwrap();
    if let Trace::Range { means, .. } = &rv.trace {
        checks.close("sincere mean of A", 2.224, means[0]);
        checks.close("sincere mean of B", 2.125, means[1]);
    }
    let mjd = Rule::Mjd.decide(&sincere).unwrap();
    if let Trace::Median { medians, .. } = &mjd.trace {
        checks.close("sincere median of A", 2.326, medians[0]);
        checks.close("sincere median of B", 2.247, medians[1]);
    }
    checks.exact("sincere range winner", "A".into(), winner_name(&rv));
    checks.exact("sincere median winner", "A".into(), winner_name(&mjd));

    let (lo, hi) = global_rating_extremes(&sincere).unwrap();
    checks.close("lowest sincere rating", 0.174, lo);
    checks.close("highest sincere rating", 3.000, hi);

    let favored = CandidateId(1);
    let opponent = CandidateId(0);
    let six = apply_strategic_voters(&sincere, &AttackSpec::new(favored, opponent, 6)).unwrap();
    let rv6 = Rule::Range.decide(&six).unwrap();
    if let Trace::Range { means, .. } = &rv6.trace {
        checks.close("post-attack mean of A", 2.166, means[0]);
        checks.close("post-attack mean of B", 2.208, means[1]);
    }
    let mjd6 = Rule::Mjd.decide(&six).unwrap();
    if let Trace::Median { medians, .. } = &mjd6.trace {
        checks.close("post-attack median of A", 2.326, medians[0]);
        checks.close("post-attack median of B", 2.349, medians[1]);
    }
    checks.exact(
        "range winner after 6 strategists",
        "B".into(),
        winner_name(&rv6),
    );
    checks.exact(
        "median winner after 6 strategists",
        "B".into(),
        winner_name(&mjd6),
    );

    let five = apply_strategic_voters(&sincere, &AttackSpec::new(favored, opponent, 5)).unwrap();
    checks.exact(
        "range winner after 5 strategists",
        "B".into(),
        winner_name(&Rule::Range.decide(&five).unwrap()),
    );
    checks.exact(
        "median winner after 5 strategists",
        "A".into(),
        winner_name(&Rule::Mjd.decide(&five).unwrap()),
    );
    checks.exact(
        "minimum strategists to flip the median rule",
        Some(6),
        min_flippers(&sincere, Rule::Mjd, favored, opponent).unwrap(),
    );

    let graded = discretize_profile(&sincere, 0.5, 6).unwrap();
    let mj = Rule::MajorityJudgment.decide(&graded).unwrap();
    if let Trace::Median {
        tie_break: Some(tb),
        ..
    } = &mj.trace
    {
        checks.exact("sincere decisive row", Some(39), tb.decisive_row);
        checks.exact(
            "sincere decisive grades",
            vec![6.0, 5.0],
            tb.decisive_values.clone(),
        );
    } else {
        checks.holds("sincere tie-break engaged", false);
    }
    let graded6 = discretize_profile(&six, 0.5, 6).unwrap();
    let mj6 = Rule::MajorityJudgment.decide(&graded6).unwrap();
    if let Trace::Median {
        tie_break: Some(tb),
        ..
    } = &mj6.trace
    {
        checks.exact("post-attack decisive row", Some(41), tb.decisive_row);
        checks.exact(
            "post-attack decisive grades",
            vec![5.0, 6.0],
            tb.decisive_values.clone(),
        );
    } else {
        checks.holds("post-attack tie-break engaged", false);
    }
}

fn reproduce_study(checks: &mut Checks, trials: usize, seed: u64, jobs: usize) {
    let config = StudyConfig {
        trials_per_cell: trials,
        master_seed: seed,
        ..StudyConfig::default()
    };
    let result = run_full_study_with_jobs(&config, jobs);
    result.write_csv(io::stdout().lock()).expect("stdout write");

    checks.exact("cell count", 15, result.cells.len());
    checks.holds(
        "majority rule ahead in every cell",
        result.cells.iter().all(|c| c.mr_only > c.mjd_only),
    );
    if trials == 10_000 {
        let wide = result
            .cells
            .iter()
            .find(|c| c.n_voters == 95 && c.b_pos == 0.5)
            .unwrap();
        checks.holds(
            "cell (95, 0.5) disagreement ratio at least 10",
            wide.ratio() >= 10.0,
        );
        checks.holds(
            "cell (95, 0.5) counts in band",
            (1300..=1800).contains(&wide.mr_only) && (50..=150).contains(&wide.mjd_only),
        );
        let narrow = result
            .cells
            .iter()
            .find(|c| c.n_voters == 15 && c.b_pos == 0.1)
            .unwrap();
        let excess = (narrow.mr_only as f64 - narrow.mjd_only as f64) / narrow.mjd_only as f64;
        checks.holds(
            "cell (15, 0.1) counts and excess in band",
            (1500..=2400).contains(&narrow.mr_only)
                && (1500..=2400).contains(&narrow.mjd_only)
                && (0.10..=0.40).contains(&excess),
        );
    } else {
        println!("note: statistical bands checked only at 10000 trials per cell");
    }
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<ExitCode, String> {
    let mut checks = Checks::new();
    match args.target.as_str() {
        "example1" => reproduce_example1(&mut checks),
        "example2" => reproduce_example2(&mut checks),
        "approval" => reproduce_approval(&mut checks),
        "example3" => reproduce_example3(&mut checks),
        "study" => reproduce_study(&mut checks, args.trials, args.seed, args.jobs),
        other => {
            return Err(format!(
            "unknown target {other:?}; expected example1, example2, approval, example3, or study"
        ))
        }
    }
    Ok(checks.finish())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, String> {
    if args.voters.is_empty() || args.b_pos.is_empty() || args.trials == 0 {
        return Err("need at least one voter count, one B position, and one trial".into());
    }
    let config = StudyConfig {
        voter_counts: args.voters.clone(),
        b_positions: args.b_pos.clone(),
        trials_per_cell: args.trials,
        master_seed: args.seed,
    };
    let result = run_full_study_with_jobs(&config, args.jobs);

    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(File::create(path).map_err(fail)?),
        None => Box::new(io::stdout().lock()),
    };
    match args.format {
        FormatArg::Json => {
            serde_json::to_writer_pretty(&mut out, &result).map_err(fail)?;
            writeln!(out).map_err(fail)?;
        }
        _ => {
            writeln!(out, "# seed={} trials={}", args.seed, args.trials).map_err(fail)?;
            if !args.deterministic {
                let stamp = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                writeln!(out, "# generated_at_unix={stamp}").map_err(fail)?;
            }
            write_csv_to(&result, &mut out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_csv_to(result: &StudyResult, out: &mut dyn Write) -> Result<(), String> {
    let mut buffer = Vec::new();
    result.write_csv(&mut buffer).map_err(fail)?;
    out.write_all(&buffer).map_err(fail)
}

// ---------------------------------------------------------------------------
// attack
// ---------------------------------------------------------------------------

fn candidate_by_name(names: &[String], wanted: &str) -> Result<CandidateId, String> {
    names
        .iter()
        .position(|n| n == wanted)
        .map(CandidateId)
        .ok_or_else(|| format!("unknown candidate {wanted:?}; file has {names:?}"))
}

fn cmd_attack(args: AttackArgs) -> Result<ExitCode, String> {
    let (profile, names): (Profile, Vec<String>) = match &args.input {
        Some(path) => {
            let doc = load_document(path, None)?;
            (doc.to_profile().map_err(fail)?, doc.candidates)
        }
        None => {
            let p = scenarios::spatial_profile();
            let names = (0..p.candidate_count()).map(display_name).collect();
            (p, names)
        }
    };
    let favored = candidate_by_name(&names, &args.favored)?;
    let opponent = candidate_by_name(&names, &args.opponent)?;
    let rule = to_rule(args.rule, args.metric);

    match args.k {
        Some(k) => {
            let attacked = apply_strategic_voters(&profile, &AttackSpec::new(favored, opponent, k))
                .map_err(fail)?;
            let before = rule.decide(&profile).map_err(fail)?;
            let after = rule.decide(&attacked).map_err(fail)?;
            match args.format {
                FormatArg::Json => {
                    let value = serde_json::json!({
                        "rule": rule.name(),
                        "k": k,
                        "before": outcome_json(&names, rule, &before),
                        "after": outcome_json(&names, rule, &after),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).map_err(fail)?);
                }
                _ => {
                    println!("sincere {}", verdict_line(&names, &before));
                    println!("after {k} strategist(s): {}", verdict_line(&names, &after));
                }
            }
        }
        None => {
            let minimum = min_flippers(&profile, rule, favored, opponent).map_err(fail)?;
            match args.format {
                FormatArg::Json => {
                    let value = serde_json::json!({
                        "rule": rule.name(),
                        "favored": names[favored.0],
                        "opponent": names[opponent.0],
                        "min_flippers": minimum,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).map_err(fail)?);
                }
                _ => match minimum {
                    Some(k) => println!("{k}"),
                    None => println!("no number of strategists flips the outcome"),
                },
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

fn parse_criterion(name: &str) -> Result<Criterion, String> {
    Ok(match name {
        "no-show" | "no_show" | "noshow" => Criterion::NoShow,
        "twin" => Criterion::Twin,
        "truncation" => Criterion::Truncation,
        "multiple-districts" | "districts" => Criterion::MultipleDistricts,
        "scc" | "iia" => Criterion::Scc,
        other => return Err(format!("unknown criterion {other:?}")),
    })
}

fn cmd_criteria(args: CriteriaArgs) -> Result<ExitCode, String> {
    let criterion = parse_criterion(&args.criterion)?;
    let ballots = match args.ballots.as_str() {
        "strict" => BallotSpace::StrictRanked,
        "truncated" => BallotSpace::TruncatedRanked,
        "graded" => BallotSpace::Graded {
            grades: args.grades,
        },
        other => return Err(format!("unknown ballot space {other:?}")),
    };
    let space = SearchSpace {
        candidate_counts: args.candidates.clone(),
        voter_counts: args.voters.clone(),
        ballots,
    };
    let rule = to_rule(args.rule, args.metric);
    let found = search_violations(rule, criterion, &space, args.seed, args.budget).map_err(fail)?;
    match found {
        Some(report) => {
            if !report.replay().map_err(fail)? {
                return Err("found witness failed to replay".into());
            }
            println!("{}", serde_json::to_string_pretty(&report).map_err(fail)?);
            Ok(ExitCode::SUCCESS)
        }
        None => {
            match args.format {
                FormatArg::Json => println!("null"),
                _ => println!(
                    "no {} violation found for {} (seed {}, budget {})",
                    criterion.name(),
                    rule.name(),
                    args.seed,
                    args.budget
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
