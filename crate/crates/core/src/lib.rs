//! Single-winner voting laboratory: ballots and pairwise tallies, the
//! majority / approval / range / majority-judgment / minimax rules,
//! electoral-criterion checkers with replayable counterexamples, strategic
//! voting analysis, and a seeded spatial-model Monte Carlo study.

pub mod ballots;
pub mod criteria;
pub mod experiments;
pub mod io;
pub mod rules;
pub mod scenarios;
pub mod spatial;
pub mod strategy;

pub use ballots::{
    merge_profiles, pairwise_tally, Ballots, CandidateId, PairwiseTally, Profile, ProfileError,
    RankedBallot, RatedBallot, RatingScale,
};
pub use rules::{
    approval_winner, largest_loss, majority_rule, minimax_winner, mj_winner, mjd_winner,
    range_winner, LossMetric, Outcome, Rule, RuleError, Trace,
};
