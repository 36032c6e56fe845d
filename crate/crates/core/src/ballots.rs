//! Ballot, profile, and pairwise-tally data model shared by every rule.
//!
//! Everything here is an immutable value after construction: profiles and
//! tallies can be shared freely across threads. Candidate identity is
//! positional (a dense index `0..candidate_count`); display names live at
//! the CLI layer only.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a candidate within one election, dense in `0..candidate_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateId(pub usize);

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", display_name(self.0))
    }
}

/// Spreadsheet-style display name for a candidate index: A, B, ..., Z, AA, AB, ...
pub fn display_name(index: usize) -> String {
    let mut n = index + 1;
    let mut out = Vec::new();
    while n > 0 {
        n -= 1;
        out.push(b'A' + (n % 26) as u8);
        n /= 26;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProfileError {
    #[error("empty profile")]
    EmptyProfile,
    #[error("profile needs at least one candidate")]
    NoCandidates,
    #[error("incompatible profiles")]
    IncompatibleProfiles,
    #[error("invalid scale: {0}")]
    InvalidScale(String),
    #[error("ballot {index}: expected {expected} ratings, found {found}")]
    BallotLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("ballot {index}: rating {rating} outside the scale")]
    RatingOutOfScale { index: usize, rating: f64 },
    #[error("ballot {index}: duplicate candidate {candidate}")]
    DuplicateCandidate { index: usize, candidate: usize },
    #[error("ballot {index}: candidate index {candidate} out of range")]
    CandidateOutOfRange { index: usize, candidate: usize },
    #[error("ballot {index}: weight must be positive")]
    ZeroWeight { index: usize },
    #[error("weights length {found} does not match ballot count {expected}")]
    WeightsLength { expected: usize, found: usize },
    #[error("invalid tally: {0}")]
    InvalidTally(String),
}

/// The scale ballot ratings are expressed on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RatingScale {
    /// Any real rating in `[min, max]`.
    Continuous { min: f64, max: f64 },
    /// Integer ratings in `[min, max]`, e.g. the 0..99 score ballot.
    Integer { min: i64, max: i64 },
    /// Ordered verbal grades; ballot values are the integer codes `1..=G`
    /// with `grades[0]` the lowest grade.
    Graded { grades: Vec<String> },
}

impl RatingScale {
    /// Numeric scale covering exactly the grade codes `1..=count`.
    pub fn graded_numeric(count: usize) -> Self {
        RatingScale::Graded {
            grades: (1..=count).map(|g| g.to_string()).collect(),
        }
    }

    pub fn min(&self) -> f64 {
        match self {
            RatingScale::Continuous { min, .. } => *min,
            RatingScale::Integer { min, .. } => *min as f64,
            RatingScale::Graded { .. } => 1.0,
        }
    }

    pub fn max(&self) -> f64 {
        match self {
            RatingScale::Continuous { max, .. } => *max,
            RatingScale::Integer { max, .. } => *max as f64,
            RatingScale::Graded { grades } => grades.len() as f64,
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, RatingScale::Graded { .. })
    }

    /// Whether ballot values are restricted to whole numbers.
    pub fn is_discrete(&self) -> bool {
        !matches!(self, RatingScale::Continuous { .. })
    }

    fn validate(&self) -> Result<(), ProfileError> {
        match self {
            RatingScale::Continuous { min, max } => {
                if !(min.is_finite() && max.is_finite() && min < max) {
                    return Err(ProfileError::InvalidScale(format!(
                        "need finite min < max, got [{min}, {max}]"
                    )));
                }
            }
            RatingScale::Integer { min, max } => {
                if min >= max {
                    return Err(ProfileError::InvalidScale(format!(
                        "need min < max, got [{min}, {max}]"
                    )));
                }
            }
            RatingScale::Graded { grades } => {
                if grades.len() < 2 {
                    return Err(ProfileError::InvalidScale(
                        "graded scale needs at least 2 grades".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn admits(&self, rating: f64) -> bool {
        if !rating.is_finite() || rating < self.min() || rating > self.max() {
            return false;
        }
        !self.is_discrete() || rating.fract() == 0.0
    }
}

/// One voter's ratings, one per candidate, in scale units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatedBallot {
    pub ratings: Vec<f64>,
}

impl RatedBallot {
    pub fn new(ratings: Vec<f64>) -> Self {
        RatedBallot { ratings }
    }
}

impl From<Vec<f64>> for RatedBallot {
    fn from(ratings: Vec<f64>) -> Self {
        RatedBallot { ratings }
    }
}

/// One voter's preference order, possibly truncated. Unlisted candidates
/// rank below every listed one, tied with each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedBallot {
    pub ranking: Vec<CandidateId>,
}

impl RankedBallot {
    pub fn new(ranking: Vec<CandidateId>) -> Self {
        RankedBallot { ranking }
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        RankedBallot {
            ranking: indices.iter().map(|&i| CandidateId(i)).collect(),
        }
    }

    fn position(&self, c: CandidateId) -> Option<usize> {
        self.ranking.iter().position(|&x| x == c)
    }

    /// Strict preference of `a` over `b` under the truncation convention.
    pub fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(pa), Some(pb)) => pa < pb,
            (Some(_), None) => true,
            _ => false,
        }
    }
}

/// Homogeneous ballot list: every ballot in a profile has the same kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ballots {
    Rated(Vec<RatedBallot>),
    Ranked(Vec<RankedBallot>),
}

impl Ballots {
    pub fn len(&self) -> usize {
        match self {
            Ballots::Rated(b) => b.len(),
            Ballots::Ranked(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A full election: candidate count, scale (rated profiles only), ballots,
/// and positive integer weights (how many voters cast each ballot).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    candidate_count: usize,
    scale: Option<RatingScale>,
    ballots: Ballots,
    weights: Vec<u64>,
}

impl Profile {
    /// Rated profile with unit weights.
    pub fn rated(scale: RatingScale, ballots: Vec<RatedBallot>) -> Result<Self, ProfileError> {
        let weights = vec![1; ballots.len()];
        Self::rated_weighted(scale, ballots, weights)
    }

    pub fn rated_weighted(
        scale: RatingScale,
        ballots: Vec<RatedBallot>,
        weights: Vec<u64>,
    ) -> Result<Self, ProfileError> {
        scale.validate()?;
        if ballots.is_empty() {
            return Err(ProfileError::EmptyProfile);
        }
        let candidate_count = ballots[0].ratings.len();
        if candidate_count == 0 {
            return Err(ProfileError::NoCandidates);
        }
        for (index, ballot) in ballots.iter().enumerate() {
            if ballot.ratings.len() != candidate_count {
                return Err(ProfileError::BallotLength {
                    index,
                    expected: candidate_count,
                    found: ballot.ratings.len(),
                });
            }
            for &rating in &ballot.ratings {
                if !scale.admits(rating) {
                    return Err(ProfileError::RatingOutOfScale { index, rating });
                }
            }
        }
        let profile = Profile {
            candidate_count,
            scale: Some(scale),
            ballots: Ballots::Rated(ballots),
            weights,
        };
        profile.validate_weights()?;
        Ok(profile)
    }

    /// Ranked profile with unit weights.
    pub fn ranked(
        candidate_count: usize,
        ballots: Vec<RankedBallot>,
    ) -> Result<Self, ProfileError> {
        let weights = vec![1; ballots.len()];
        Self::ranked_weighted(candidate_count, ballots, weights)
    }

    pub fn ranked_weighted(
        candidate_count: usize,
        ballots: Vec<RankedBallot>,
        weights: Vec<u64>,
    ) -> Result<Self, ProfileError> {
        if candidate_count == 0 {
            return Err(ProfileError::NoCandidates);
        }
        if ballots.is_empty() {
            return Err(ProfileError::EmptyProfile);
        }
        for (index, ballot) in ballots.iter().enumerate() {
            let mut seen = vec![false; candidate_count];
            for &CandidateId(c) in &ballot.ranking {
                if c >= candidate_count {
                    return Err(ProfileError::CandidateOutOfRange {
                        index,
                        candidate: c,
                    });
                }
                if seen[c] {
                    return Err(ProfileError::DuplicateCandidate {
                        index,
                        candidate: c,
                    });
                }
                seen[c] = true;
            }
        }
        let profile = Profile {
            candidate_count,
            scale: None,
            ballots: Ballots::Ranked(ballots),
            weights,
        };
        profile.validate_weights()?;
        Ok(profile)
    }

    fn validate_weights(&self) -> Result<(), ProfileError> {
        if self.weights.len() != self.ballots.len() {
            return Err(ProfileError::WeightsLength {
                expected: self.ballots.len(),
                found: self.weights.len(),
            });
        }
        for (index, &w) in self.weights.iter().enumerate() {
            if w == 0 {
                return Err(ProfileError::ZeroWeight { index });
            }
        }
        Ok(())
    }

    pub fn candidate_count(&self) -> usize {
        self.candidate_count
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.candidate_count).map(CandidateId)
    }

    pub fn scale(&self) -> Option<&RatingScale> {
        self.scale.as_ref()
    }

    pub fn ballots(&self) -> &Ballots {
        &self.ballots
    }

    pub fn ballot_count(&self) -> usize {
        self.ballots.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, ballot_index: usize) -> u64 {
        self.weights[ballot_index]
    }

    /// Total number of voters (sum of weights).
    pub fn voter_count(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn is_rated(&self) -> bool {
        matches!(self.ballots, Ballots::Rated(_))
    }

    pub fn rated_ballots(&self) -> Option<&[RatedBallot]> {
        match &self.ballots {
            Ballots::Rated(b) => Some(b),
            Ballots::Ranked(_) => None,
        }
    }

    pub fn ranked_ballots(&self) -> Option<&[RankedBallot]> {
        match &self.ballots {
            Ballots::Ranked(b) => Some(b),
            Ballots::Rated(_) => None,
        }
    }

    /// Does voter `ballot_index` strictly prefer `a` to `b`?
    pub fn prefers(&self, ballot_index: usize, a: CandidateId, b: CandidateId) -> bool {
        match &self.ballots {
            Ballots::Rated(ballots) => {
                ballots[ballot_index].ratings[a.0] > ballots[ballot_index].ratings[b.0]
            }
            Ballots::Ranked(ballots) => ballots[ballot_index].prefers(a, b),
        }
    }

    /// Replace one ballot, keeping its weight. Revalidates the result.
    pub fn with_rated_ballot(
        &self,
        ballot_index: usize,
        ballot: RatedBallot,
    ) -> Result<Self, ProfileError> {
        let mut ballots = match &self.ballots {
            Ballots::Rated(b) => b.clone(),
            Ballots::Ranked(_) => return Err(ProfileError::IncompatibleProfiles),
        };
        ballots[ballot_index] = ballot;
        Self::rated_weighted(self.scale.clone().unwrap(), ballots, self.weights.clone())
    }

    pub fn with_ranked_ballot(
        &self,
        ballot_index: usize,
        ballot: RankedBallot,
    ) -> Result<Self, ProfileError> {
        let mut ballots = match &self.ballots {
            Ballots::Ranked(b) => b.clone(),
            Ballots::Rated(_) => return Err(ProfileError::IncompatibleProfiles),
        };
        ballots[ballot_index] = ballot;
        Self::ranked_weighted(self.candidate_count, ballots, self.weights.clone())
    }

    /// Remove a single voter. For a ballot with weight > 1 the weight is
    /// decremented; a weight-1 ballot is dropped entirely.
    pub fn remove_one_voter(&self, ballot_index: usize) -> Result<Self, ProfileError> {
        let mut weights = self.weights.clone();
        let mut profile = self.clone();
        if weights[ballot_index] > 1 {
            weights[ballot_index] -= 1;
            profile.weights = weights;
            return Ok(profile);
        }
        weights.remove(ballot_index);
        match &mut profile.ballots {
            Ballots::Rated(b) => {
                b.remove(ballot_index);
            }
            Ballots::Ranked(b) => {
                b.remove(ballot_index);
            }
        }
        if weights.is_empty() {
            return Err(ProfileError::EmptyProfile);
        }
        profile.weights = weights;
        Ok(profile)
    }

    /// Delete a candidate and recount: rated ballots drop the rating column,
    /// ranked ballots splice the candidate out. Higher indices shift down.
    pub fn remove_candidate(&self, removed: CandidateId) -> Result<Self, ProfileError> {
        if removed.0 >= self.candidate_count || self.candidate_count < 2 {
            return Err(ProfileError::IncompatibleProfiles);
        }
        match &self.ballots {
            Ballots::Rated(ballots) => {
                let new_ballots = ballots
                    .iter()
                    .map(|b| {
                        let mut ratings = b.ratings.clone();
                        ratings.remove(removed.0);
                        RatedBallot::new(ratings)
                    })
                    .collect();
                Self::rated_weighted(
                    self.scale.clone().unwrap(),
                    new_ballots,
                    self.weights.clone(),
                )
            }
            Ballots::Ranked(ballots) => {
                let new_ballots = ballots
                    .iter()
                    .map(|b| {
                        let ranking = b
                            .ranking
                            .iter()
                            .filter(|&&c| c != removed)
                            .map(|&CandidateId(c)| {
                                CandidateId(if c > removed.0 { c - 1 } else { c })
                            })
                            .collect();
                        RankedBallot { ranking }
                    })
                    .collect();
                Self::ranked_weighted(self.candidate_count - 1, new_ballots, self.weights.clone())
            }
        }
    }
}

/// Matrix of two-way-race counts: `n[i][j]` is the weighted number of voters
/// strictly preferring `i` to `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTally {
    n: Vec<Vec<u64>>,
    total_voters: u64,
}

impl PairwiseTally {
    /// Build a tally directly from raw two-way counts, e.g. from game or
    /// match results where each contest touches only one pair.
    #[allow(clippy::needless_range_loop)]
    pub fn from_counts(n: Vec<Vec<u64>>, total_voters: u64) -> Result<Self, ProfileError> {
        let c = n.len();
        if c < 1 {
            return Err(ProfileError::InvalidTally("no candidates".into()));
        }
        for (i, row) in n.iter().enumerate() {
            if row.len() != c {
                return Err(ProfileError::InvalidTally("matrix not square".into()));
            }
            if row[i] != 0 {
                return Err(ProfileError::InvalidTally(format!(
                    "diagonal entry n[{i}][{i}] must be 0"
                )));
            }
        }
        for i in 0..c {
            for j in 0..c {
                if i != j && n[i][j] + n[j][i] > total_voters {
                    return Err(ProfileError::InvalidTally(format!(
                        "n[{i}][{j}] + n[{j}][{i}] exceeds the voter count"
                    )));
                }
            }
        }
        Ok(PairwiseTally { n, total_voters })
    }

    pub fn candidate_count(&self) -> usize {
        self.n.len()
    }

    pub fn total_voters(&self) -> u64 {
        self.total_voters
    }

    /// Voters strictly preferring `i` to `j`.
    pub fn count(&self, i: CandidateId, j: CandidateId) -> u64 {
        self.n[i.0][j.0]
    }

    pub fn matrix(&self) -> &Vec<Vec<u64>> {
        &self.n
    }

    /// Does `i` win the two-way race against `j` by strict majority?
    pub fn beats(&self, i: CandidateId, j: CandidateId) -> bool {
        self.n[i.0][j.0] > self.n[j.0][i.0]
    }

    /// The candidate who wins all their two-way races, if one exists.
    /// Strict majorities are required; a pairwise tie disqualifies.
    pub fn condorcet_winner(&self) -> Option<CandidateId> {
        let c = self.candidate_count();
        (0..c)
            .map(CandidateId)
            .find(|&i| (0..c).map(CandidateId).all(|j| j == i || self.beats(i, j)))
    }

    /// Entrywise sum; requires equal candidate counts.
    pub fn merged_with(&self, other: &PairwiseTally) -> Result<PairwiseTally, ProfileError> {
        if self.candidate_count() != other.candidate_count() {
            return Err(ProfileError::IncompatibleProfiles);
        }
        let c = self.candidate_count();
        let n = (0..c)
            .map(|i| (0..c).map(|j| self.n[i][j] + other.n[i][j]).collect())
            .collect();
        PairwiseTally::from_counts(n, self.total_voters + other.total_voters)
    }
}

/// Count every two-way race in the profile.
///
/// A rated voter counts toward `n[i][j]` iff they rate `i` strictly above
/// `j`; equal ratings contribute to neither direction. A ranked voter counts
/// iff `i` precedes `j`; a listed candidate beats every unlisted one, and a
/// pair of unlisted candidates contributes nothing.
#[allow(clippy::needless_range_loop)]
pub fn pairwise_tally(profile: &Profile) -> PairwiseTally {
    let c = profile.candidate_count();
    let mut n = vec![vec![0u64; c]; c];
    match profile.ballots() {
        Ballots::Rated(ballots) => {
            for (ballot, &w) in ballots.iter().zip(profile.weights()) {
                for i in 0..c {
                    for j in (i + 1)..c {
                        if ballot.ratings[i] > ballot.ratings[j] {
                            n[i][j] += w;
                        } else if ballot.ratings[j] > ballot.ratings[i] {
                            n[j][i] += w;
                        }
                    }
                }
            }
        }
        Ballots::Ranked(ballots) => {
            for (ballot, &w) in ballots.iter().zip(profile.weights()) {
                for i in 0..c {
                    for j in (i + 1)..c {
                        let (a, b) = (CandidateId(i), CandidateId(j));
                        if ballot.prefers(a, b) {
                            n[i][j] += w;
                        } else if ballot.prefers(b, a) {
                            n[j][i] += w;
                        }
                    }
                }
            }
        }
    }
    PairwiseTally {
        n,
        total_voters: profile.voter_count(),
    }
}

/// Concatenate two compatible profiles (same candidates, kind, and scale).
pub fn merge_profiles(p1: &Profile, p2: &Profile) -> Result<Profile, ProfileError> {
    if p1.candidate_count != p2.candidate_count || p1.scale != p2.scale {
        return Err(ProfileError::IncompatibleProfiles);
    }
    let mut weights = p1.weights.clone();
    weights.extend_from_slice(&p2.weights);
    let ballots = match (&p1.ballots, &p2.ballots) {
        (Ballots::Rated(a), Ballots::Rated(b)) => {
            let mut all = a.clone();
            all.extend_from_slice(b);
            Ballots::Rated(all)
        }
        (Ballots::Ranked(a), Ballots::Ranked(b)) => {
            let mut all = a.clone();
            all.extend_from_slice(b);
            Ballots::Ranked(all)
        }
        _ => return Err(ProfileError::IncompatibleProfiles),
    };
    Ok(Profile {
        candidate_count: p1.candidate_count,
        scale: p1.scale.clone(),
        ballots,
        weights,
    })
}

/// The set of candidates attaining the maximum of `score`, by index.
pub(crate) fn argmax_set(scores: &[f64]) -> BTreeSet<CandidateId> {
    let best = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == best)
        .map(|(i, _)| CandidateId(i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_profile() -> Profile {
        // A>B>C, B>C>A, C>A>B
        Profile::ranked(
            3,
            vec![
                RankedBallot::from_indices(&[0, 1, 2]),
                RankedBallot::from_indices(&[1, 2, 0]),
                RankedBallot::from_indices(&[2, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_ballot_ranking() {
        let p = Profile::ranked(3, vec![RankedBallot::from_indices(&[0, 1, 2])]).unwrap();
        let t = pairwise_tally(&p);
        assert_eq!(t.count(CandidateId(0), CandidateId(1)), 1);
        assert_eq!(t.count(CandidateId(0), CandidateId(2)), 1);
        assert_eq!(t.count(CandidateId(1), CandidateId(2)), 1);
        assert_eq!(t.count(CandidateId(1), CandidateId(0)), 0);
        assert_eq!(t.count(CandidateId(2), CandidateId(0)), 0);
        assert_eq!(t.count(CandidateId(2), CandidateId(1)), 0);
    }

    #[test]
    fn truncated_ballot_prefers_listed_over_unlisted() {
        let p = Profile::ranked(
            3,
            vec![RankedBallot::from_indices(&[1])], // B listed, A and C not
        )
        .unwrap();
        let t = pairwise_tally(&p);
        assert_eq!(t.count(CandidateId(1), CandidateId(0)), 1);
        assert_eq!(t.count(CandidateId(1), CandidateId(2)), 1);
        // the unlisted pair contributes nothing
        assert_eq!(t.count(CandidateId(0), CandidateId(2)), 0);
        assert_eq!(t.count(CandidateId(2), CandidateId(0)), 0);
    }

    #[test]
    fn rated_ties_count_neither_way() {
        let scale = RatingScale::Integer { min: 0, max: 5 };
        let p = Profile::rated(scale, vec![vec![3.0, 3.0, 1.0].into()]).unwrap();
        let t = pairwise_tally(&p);
        assert_eq!(t.count(CandidateId(0), CandidateId(1)), 0);
        assert_eq!(t.count(CandidateId(1), CandidateId(0)), 0);
        assert_eq!(t.count(CandidateId(0), CandidateId(2)), 1);
    }

    #[test]
    fn condorcet_winner_unanimous() {
        let p = Profile::ranked(
            3,
            vec![
                RankedBallot::from_indices(&[0, 1, 2]),
                RankedBallot::from_indices(&[0, 2, 1]),
            ],
        )
        .unwrap();
        assert_eq!(pairwise_tally(&p).condorcet_winner(), Some(CandidateId(0)));
    }

    #[test]
    fn condorcet_cycle_has_no_winner() {
        assert_eq!(pairwise_tally(&cycle_profile()).condorcet_winner(), None);
    }

    #[test]
    fn merge_counts_and_tallies_add() {
        let p = cycle_profile();
        let merged = merge_profiles(&p, &p).unwrap();
        assert_eq!(merged.ballot_count(), 6);
        assert_eq!(merged.voter_count(), 6);
        let t1 = pairwise_tally(&p);
        let tm = pairwise_tally(&merged);
        assert_eq!(tm, t1.merged_with(&t1).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    tm.count(CandidateId(i), CandidateId(j)),
                    2 * t1.count(CandidateId(i), CandidateId(j))
                );
            }
        }
    }

    #[test]
    fn merge_rejects_mismatched_candidates() {
        let p1 = cycle_profile();
        let p2 = Profile::ranked(2, vec![RankedBallot::from_indices(&[0, 1])]).unwrap();
        assert_eq!(
            merge_profiles(&p1, &p2),
            Err(ProfileError::IncompatibleProfiles)
        );
    }

    #[test]
    fn empty_profile_rejected() {
        assert_eq!(Profile::ranked(2, vec![]), Err(ProfileError::EmptyProfile));
        assert_eq!(
            Profile::rated(RatingScale::Integer { min: 0, max: 1 }, vec![]),
            Err(ProfileError::EmptyProfile)
        );
    }

    #[test]
    fn graded_scale_rejects_fractional_codes() {
        let scale = RatingScale::graded_numeric(6);
        assert!(Profile::rated(scale.clone(), vec![vec![2.5, 1.0].into()]).is_err());
        assert!(Profile::rated(scale, vec![vec![2.0, 7.0].into()]).is_err());
    }

    #[test]
    fn remove_candidate_reindexes_rankings() {
        let p = cycle_profile();
        let q = p.remove_candidate(CandidateId(1)).unwrap();
        assert_eq!(q.candidate_count(), 2);
        let t = pairwise_tally(&q);
        // A>C from ballot 1, C>A from ballots 2 and 3 (old C is now index 1)
        assert_eq!(t.count(CandidateId(0), CandidateId(1)), 1);
        assert_eq!(t.count(CandidateId(1), CandidateId(0)), 2);
    }

    #[test]
    fn remove_one_voter_decrements_weight() {
        let scale = RatingScale::Integer { min: 0, max: 9 };
        let p = Profile::rated_weighted(
            scale,
            vec![vec![1.0, 0.0].into(), vec![0.0, 1.0].into()],
            vec![3, 1],
        )
        .unwrap();
        let q = p.remove_one_voter(0).unwrap();
        assert_eq!(q.ballot_count(), 2);
        assert_eq!(q.voter_count(), 3);
        let r = p.remove_one_voter(1).unwrap();
        assert_eq!(r.ballot_count(), 1);
        assert_eq!(r.voter_count(), 3);
    }

    #[test]
    fn display_names_roll_over() {
        assert_eq!(display_name(0), "A");
        assert_eq!(display_name(25), "Z");
        assert_eq!(display_name(26), "AA");
        assert_eq!(display_name(27), "AB");
    }

    #[test]
    fn from_counts_checks_invariants() {
        assert!(PairwiseTally::from_counts(vec![vec![0, 9], vec![0, 0]], 9).is_ok());
        assert!(PairwiseTally::from_counts(vec![vec![1, 0], vec![0, 0]], 9).is_err());
        assert!(PairwiseTally::from_counts(vec![vec![0, 9], vec![1, 0]], 9).is_err());
    }
}
