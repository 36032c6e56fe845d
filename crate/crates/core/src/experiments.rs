//! Seeded Monte Carlo comparison of majority rule against the
//! highest-median rule on two-candidate spatial elections.
//!
//! Each trial samples voters from a standard normal population, places
//! candidate A at the population center and B off-center, and asks which
//! rule elects the centrist A. The study sweeps voter counts x B positions
//! with a fixed number of independent trials per cell.
//!
//! Reproducibility: every trial gets its own ChaCha8 generator, seeded with
//! the cell seed and using the trial index as the stream id, so results are
//! bit-identical for a fixed master seed no matter how many threads run.
//! Cell seeds are derived from the master seed with SplitMix64.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ballots::{CandidateId, Profile};
use crate::rules::{majority_rule, mjd_winner};
use crate::spatial::{
    nearest_candidate_ballot, rated_profile_for_voters, sample_voters, DEFAULT_RATING_OFFSET,
};

/// Sweep configuration. The defaults reproduce the 3-section x 5-subsection
/// study shape with 10,000 trials per cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub voter_counts: Vec<usize>,
    pub b_positions: Vec<f64>,
    pub trials_per_cell: usize,
    pub master_seed: u64,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            voter_counts: vec![15, 55, 95],
            b_positions: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            trials_per_cell: 10_000,
            master_seed: 42,
        }
    }
}

/// Winners of one trial under each rule; `None` marks a tie.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialWinners {
    pub majority: Option<CandidateId>,
    pub median: Option<CandidateId>,
}

/// Disagreement counts for one (voter count, B position) cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub n_voters: usize,
    pub b_pos: f64,
    pub trials: usize,
    /// Majority rule picked A while the median rule picked B.
    pub mr_only: u64,
    /// The median rule picked A while majority rule picked B.
    pub mjd_only: u64,
    pub both_a: u64,
    pub neither_a: u64,
    /// Trials where either rule tied; excluded from the four counts above.
    pub tie_trials: u64,
}

impl CellResult {
    pub fn ratio(&self) -> f64 {
        self.mr_only as f64 / self.mjd_only as f64
    }
}

/// Full sweep output; serializes with its config for replay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub config: StudyConfig,
    pub cells: Vec<CellResult>,
}

impl StudyResult {
    /// CSV table, one row per cell:
    /// `n_voters,b_pos,trials,mr_only,mjd_only,both_a,neither_a,ties,ratio`.
    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        out.write_record([
            "n_voters",
            "b_pos",
            "trials",
            "mr_only",
            "mjd_only",
            "both_a",
            "neither_a",
            "ties",
            "ratio",
        ])?;
        for cell in &self.cells {
            out.write_record([
                cell.n_voters.to_string(),
                format!("{}", cell.b_pos),
                cell.trials.to_string(),
                cell.mr_only.to_string(),
                cell.mjd_only.to_string(),
                cell.both_a.to_string(),
                cell.neither_a.to_string(),
                cell.tie_trials.to_string(),
                format!("{:.4}", cell.ratio()),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// One election: sample voters, run majority rule on nearest-candidate votes
/// and the median rule on sincere ratings.
pub fn run_trial<R: Rng + ?Sized>(n_voters: usize, b_pos: f64, rng: &mut R) -> TrialWinners {
    let candidates = [0.0, b_pos];
    let voters = sample_voters(n_voters, rng);
    let rated = rated_profile_for_voters(&candidates, DEFAULT_RATING_OFFSET, &voters)
        .expect("sampled profiles are well-formed");
    let median = mjd_winner(&rated).expect("rated profile").winner;
    let votes = voters
        .positions
        .iter()
        .map(|&v| nearest_candidate_ballot(v, &candidates))
        .collect();
    let ranked = Profile::ranked(2, votes).expect("one ballot per voter");
    let majority = majority_rule(&ranked).expect("two candidates").winner;
    TrialWinners { majority, median }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one trial: cell seed as the ChaCha8 key, trial index as
/// the stream id.
fn trial_rng(cell_seed: u64, trial_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cell_seed);
    rng.set_stream(trial_index as u64);
    rng
}

/// Run `trials` independent trials and tabulate the disagreements. Trials
/// run in parallel; the per-trial generators and commutative counters make
/// the result independent of scheduling.
pub fn run_cell(n_voters: usize, b_pos: f64, trials: usize, cell_seed: u64) -> CellResult {
    let a = CandidateId(0);
    let zero = CellResult {
        n_voters,
        b_pos,
        trials,
        mr_only: 0,
        mjd_only: 0,
        both_a: 0,
        neither_a: 0,
        tie_trials: 0,
    };
    (0..trials)
        .into_par_iter()
        .map(|trial_index| {
            let mut rng = trial_rng(cell_seed, trial_index);
            let winners = run_trial(n_voters, b_pos, &mut rng);
            let mut cell = zero;
            match (winners.majority, winners.median) {
                (Some(mr), Some(mjd)) => {
                    if mr == a && mjd != a {
                        cell.mr_only = 1;
                    } else if mr != a && mjd == a {
                        cell.mjd_only = 1;
                    } else if mr == a {
                        cell.both_a = 1;
                    } else {
                        cell.neither_a = 1;
                    }
                }
                _ => cell.tie_trials = 1,
            }
            cell
        })
        .reduce(
            || zero,
            |x, y| CellResult {
                mr_only: x.mr_only + y.mr_only,
                mjd_only: x.mjd_only + y.mjd_only,
                both_a: x.both_a + y.both_a,
                neither_a: x.neither_a + y.neither_a,
                tie_trials: x.tie_trials + y.tie_trials,
                ..zero
            },
        )
}

/// Run every (voter count, B position) cell of the sweep.
pub fn run_full_study(config: &StudyConfig) -> StudyResult {
    let mut cells = Vec::with_capacity(config.voter_counts.len() * config.b_positions.len());
    let mut cell_index: u64 = 0;
    for &n_voters in &config.voter_counts {
        for &b_pos in &config.b_positions {
            let cell_seed = splitmix64(config.master_seed.wrapping_add(cell_index));
            cells.push(run_cell(n_voters, b_pos, config.trials_per_cell, cell_seed));
            cell_index += 1;
        }
    }
    StudyResult {
        config: config.clone(),
        cells,
    }
}

/// [`run_full_study`] on a private thread pool of `jobs` threads
/// (`jobs = 1` forces a sequential run; the result is identical either way).
pub fn run_full_study_with_jobs(config: &StudyConfig, jobs: usize) -> StudyResult {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(|| run_full_study(config))
}
