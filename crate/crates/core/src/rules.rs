//! Single-winner voting rules, each a pure function from a profile (or
//! pairwise tally) to an [`Outcome`].
//!
//! Ties are never broken arbitrarily: an outcome either names a sole winner
//! or reports the full tied set, and every rule attaches a trace explaining
//! the decision (per-candidate scores, the minimax largest-loss vector, the
//! decisive tie-break row, ...).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ballots::{argmax_set, pairwise_tally, Ballots, CandidateId, PairwiseTally, Profile};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RuleError {
    #[error("majority rule requires exactly two candidates")]
    NotTwoCandidates,
    #[error("not an approval profile")]
    NotApproval,
    #[error("rule requires rated ballots")]
    NotRated,
    #[error("rule requires a graded or integer scale")]
    NotGraded,
    #[error("rule requires ranked ballots")]
    NotRanked,
}

/// How a pairwise defeat is measured for minimax.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossMetric {
    /// Loser's deficit: `n[j][c] - n[c][j]` over races `c` loses.
    #[default]
    Margin,
    /// Winner's support: `n[j][c]` over races `c` loses.
    WinningVotes,
}

/// Row-by-row record of the sorted-matrix tie-break.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TieBreakTrace {
    /// Candidates whose medians tied, in index order.
    pub contenders: Vec<CandidateId>,
    /// 1-based median row of the descending-sorted matrix.
    pub median_row: usize,
    /// First untied row reached by the scan, if any.
    pub decisive_row: Option<usize>,
    /// Ratings at the decisive row, parallel to `contenders`.
    pub decisive_values: Vec<f64>,
}

/// Rule-specific explanation attached to every outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trace {
    Majority {
        votes: Vec<u64>,
    },
    Approval {
        approvals: Vec<u64>,
    },
    Range {
        totals: Vec<f64>,
        means: Vec<f64>,
    },
    Median {
        medians: Vec<f64>,
        tie_break: Option<TieBreakTrace>,
    },
    Minimax {
        condorcet: Option<CandidateId>,
        largest_losses: Vec<u64>,
        metric: LossMetric,
    },
}

/// Election result: either a sole winner or a non-empty tied set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub winner: Option<CandidateId>,
    pub tied: Vec<CandidateId>,
    pub trace: Trace,
}

impl Outcome {
    fn from_set(set: BTreeSet<CandidateId>, trace: Trace) -> Self {
        debug_assert!(!set.is_empty());
        if set.len() == 1 {
            Outcome {
                winner: set.into_iter().next(),
                tied: Vec::new(),
                trace,
            }
        } else {
            Outcome {
                winner: None,
                tied: set.into_iter().collect(),
                trace,
            }
        }
    }

    /// The winner, or every tied candidate.
    pub fn winning_set(&self) -> Vec<CandidateId> {
        match self.winner {
            Some(w) => vec![w],
            None => self.tied.clone(),
        }
    }

    pub fn is_tie(&self) -> bool {
        self.winner.is_none()
    }
}

/// Two-candidate majority rule: the candidate preferred by strictly more
/// voters wins.
pub fn majority_rule(profile: &Profile) -> Result<Outcome, RuleError> {
    if profile.candidate_count() != 2 {
        return Err(RuleError::NotTwoCandidates);
    }
    let tally = pairwise_tally(profile);
    let a = tally.count(CandidateId(0), CandidateId(1));
    let b = tally.count(CandidateId(1), CandidateId(0));
    let trace = Trace::Majority { votes: vec![a, b] };
    let set = match a.cmp(&b) {
        std::cmp::Ordering::Greater => BTreeSet::from([CandidateId(0)]),
        std::cmp::Ordering::Less => BTreeSet::from([CandidateId(1)]),
        std::cmp::Ordering::Equal => BTreeSet::from([CandidateId(0), CandidateId(1)]),
    };
    Ok(Outcome::from_set(set, trace))
}

/// Approval voting over 0/1 ballots: most approvals wins.
pub fn approval_winner(profile: &Profile) -> Result<Outcome, RuleError> {
    let ballots = profile.rated_ballots().ok_or(RuleError::NotApproval)?;
    let c = profile.candidate_count();
    let mut approvals = vec![0u64; c];
    for (ballot, &w) in ballots.iter().zip(profile.weights()) {
        for (i, &r) in ballot.ratings.iter().enumerate() {
            if r == 1.0 {
                approvals[i] += w;
            } else if r != 0.0 {
                return Err(RuleError::NotApproval);
            }
        }
    }
    let scores: Vec<f64> = approvals.iter().map(|&a| a as f64).collect();
    let set = argmax_set(&scores);
    Ok(Outcome::from_set(set, Trace::Approval { approvals }))
}

/// Range (score) voting: highest mean rating wins.
pub fn range_winner(profile: &Profile) -> Result<Outcome, RuleError> {
    let ballots = profile.rated_ballots().ok_or(RuleError::NotRated)?;
    let c = profile.candidate_count();
    let mut totals = vec![0.0f64; c];
    for (ballot, &w) in ballots.iter().zip(profile.weights()) {
        for (i, &r) in ballot.ratings.iter().enumerate() {
            totals[i] += w as f64 * r;
        }
    }
    let voters = profile.voter_count() as f64;
    let means: Vec<f64> = totals.iter().map(|t| t / voters).collect();
    let set = argmax_set(&means);
    Ok(Outcome::from_set(set, Trace::Range { totals, means }))
}

/// Majority judgment over a graded (or integer) scale: highest median grade
/// wins, with the sorted-matrix tie-break among tied medians.
pub fn mj_winner(profile: &Profile) -> Result<Outcome, RuleError> {
    match profile.scale() {
        Some(scale) if scale.is_discrete() => {}
        _ => return Err(RuleError::NotGraded),
    }
    median_winner(profile)
}

/// Highest-median rule on raw numeric ratings. Exact median ties fall back
/// to the same sorted-matrix tie-break as majority judgment.
pub fn mjd_winner(profile: &Profile) -> Result<Outcome, RuleError> {
    median_winner(profile)
}

/// Descending-sorted rating column for one candidate, weights expanded.
fn sorted_column(profile: &Profile, candidate: CandidateId) -> Vec<f64> {
    let ballots = match profile.ballots() {
        Ballots::Rated(b) => b,
        Ballots::Ranked(_) => unreachable!("median rules require rated ballots"),
    };
    let mut column = Vec::with_capacity(profile.voter_count() as usize);
    for (ballot, &w) in ballots.iter().zip(profile.weights()) {
        for _ in 0..w {
            column.push(ballot.ratings[candidate.0]);
        }
    }
    column.sort_by(|a, b| b.partial_cmp(a).unwrap());
    column
}

/// Lower median of a descending-sorted column: 1-based position
/// `floor(V/2) + 1` counting from the top.
fn lower_median(sorted_desc: &[f64]) -> f64 {
    sorted_desc[sorted_desc.len() / 2]
}

fn median_winner(profile: &Profile) -> Result<Outcome, RuleError> {
    if profile.rated_ballots().is_none() {
        return Err(RuleError::NotRated);
    }
    let columns: Vec<Vec<f64>> = profile
        .candidates()
        .map(|c| sorted_column(profile, c))
        .collect();
    let medians: Vec<f64> = columns.iter().map(|col| lower_median(col)).collect();
    let mut set = argmax_set(&medians);
    if set.len() == 1 {
        return Ok(Outcome::from_set(
            set,
            Trace::Median {
                medians,
                tie_break: None,
            },
        ));
    }

    // Sorted-matrix tie-break: one descending column per tied candidate,
    // scan rows outward from the median row, the below-median row first at
    // equal distance; the first untied row keeps only its highest raters.
    let contenders: Vec<CandidateId> = set.iter().copied().collect();
    let voters = profile.voter_count() as usize;
    let median_row = voters.div_ceil(2);
    let mut decisive_row = None;
    let mut decisive_values = Vec::new();
    for row in row_scan_order(median_row, voters) {
        let values: Vec<f64> = contenders.iter().map(|c| columns[c.0][row - 1]).collect();
        let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if values.iter().any(|&v| v < best) {
            let survivors: BTreeSet<CandidateId> = contenders
                .iter()
                .zip(&values)
                .filter(|(c, &v)| v == best && set.contains(c))
                .map(|(&c, _)| c)
                .collect();
            if survivors.len() < set.len() && !survivors.is_empty() {
                if decisive_row.is_none() {
                    decisive_row = Some(row);
                    decisive_values = values.clone();
                }
                set = survivors;
                if set.len() == 1 {
                    break;
                }
            }
        }
    }
    let trace = Trace::Median {
        medians,
        tie_break: Some(TieBreakTrace {
            contenders,
            median_row,
            decisive_row,
            decisive_values,
        }),
    };
    Ok(Outcome::from_set(set, trace))
}

/// Rows 1..=v visited outward from `median_row`, below-median side first at
/// each distance.
fn row_scan_order(median_row: usize, voters: usize) -> impl Iterator<Item = usize> {
    (0..voters).flat_map(move |d| {
        let below = Some(median_row + d).filter(|&r| r <= voters);
        let above = median_row.checked_sub(d).filter(|&r| d > 0 && r >= 1);
        below.into_iter().chain(above)
    })
}

/// A candidate's worst two-way defeat; 0 if they lose no race.
pub fn largest_loss(tally: &PairwiseTally, candidate: CandidateId, metric: LossMetric) -> u64 {
    let c = tally.candidate_count();
    (0..c)
        .map(CandidateId)
        .filter(|&j| j != candidate && tally.beats(j, candidate))
        .map(|j| match metric {
            LossMetric::Margin => tally.count(j, candidate) - tally.count(candidate, j),
            LossMetric::WinningVotes => tally.count(j, candidate),
        })
        .max()
        .unwrap_or(0)
}

/// Minimax: a Condorcet winner wins outright; otherwise the candidate whose
/// largest loss is smallest. Equal smallest losses are reported as a tie.
pub fn minimax_winner(tally: &PairwiseTally, metric: LossMetric) -> Outcome {
    let condorcet = tally.condorcet_winner();
    let losses: Vec<u64> = (0..tally.candidate_count())
        .map(|i| largest_loss(tally, CandidateId(i), metric))
        .collect();
    let trace = Trace::Minimax {
        condorcet,
        largest_losses: losses.clone(),
        metric,
    };
    if let Some(w) = condorcet {
        return Outcome::from_set(BTreeSet::from([w]), trace);
    }
    let scores: Vec<f64> = losses.iter().map(|&l| -(l as f64)).collect();
    Outcome::from_set(argmax_set(&scores), trace)
}

/// Selector for the rule a command or checker should apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Majority,
    Approval,
    Range,
    MajorityJudgment,
    /// Highest median of raw numeric ratings (no discretization).
    Mjd,
    Minimax(LossMetric),
}

impl Rule {
    pub fn decide(&self, profile: &Profile) -> Result<Outcome, RuleError> {
        match self {
            Rule::Majority => majority_rule(profile),
            Rule::Approval => approval_winner(profile),
            Rule::Range => range_winner(profile),
            Rule::MajorityJudgment => mj_winner(profile),
            Rule::Mjd => mjd_winner(profile),
            Rule::Minimax(metric) => Ok(minimax_winner(&pairwise_tally(profile), *metric)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rule::Majority => "majority",
            Rule::Approval => "approval",
            Rule::Range => "range",
            Rule::MajorityJudgment => "mj",
            Rule::Mjd => "mjd",
            Rule::Minimax(LossMetric::Margin) => "minimax",
            Rule::Minimax(LossMetric::WinningVotes) => "minimax-wv",
        }
    }
}
