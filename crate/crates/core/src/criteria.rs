//! Checkers and searchers for five electoral criteria: no-show, twin,
//! truncation, multiple districts, and subset choice (IIA).
//!
//! Every `violated` verdict comes with a witness holding the profile(s), the
//! manipulation, and the before/after outcomes, serialized in the ballot
//! document format so the counterexample can be replayed independently.
//!
//! "Benefit" means strict preference by the manipulator's own sincere
//! ballot; outcomes involving ties count only when the preferred candidate
//! moves from loser to sole winner.

use itertools::Itertools;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ballots::{
    merge_profiles, CandidateId, Profile, ProfileError, RankedBallot, RatedBallot, RatingScale,
};
use crate::io::ProfileDocument;
use crate::rules::{Outcome, Rule, RuleError};

#[derive(Debug, thiserror::Error)]
pub enum CriteriaError {
    #[error("criterion requires at least {0} candidates")]
    TooFewCandidates(usize),
    #[error("truncation requires ranked ballots")]
    RankedRequired,
    #[error("invalid search space: {0}")]
    InvalidSpace(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Io(#[from] crate::io::IoError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    NoShow,
    Twin,
    Truncation,
    MultipleDistricts,
    Scc,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::NoShow => "no-show",
            Criterion::Twin => "twin",
            Criterion::Truncation => "truncation",
            Criterion::MultipleDistricts => "multiple-districts",
            Criterion::Scc => "scc",
        }
    }
}

/// The manipulation demonstrating a violation, with everything needed to
/// replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
#[allow(clippy::large_enum_variant)]
pub enum Witness {
    /// One voter abstains and gets a better winner.
    Abstention {
        profile: ProfileDocument,
        ballot_index: usize,
        before: Outcome,
        after: Outcome,
    },
    /// One of two identical ballots abstains; `twin_index` is the other
    /// copy, or none when the ballot itself carries weight > 1.
    TwinAbstention {
        profile: ProfileDocument,
        ballot_index: usize,
        twin_index: Option<usize>,
        before: Outcome,
        after: Outcome,
    },
    /// One voter lists only their first `prefix_len` choices.
    Truncation {
        profile: ProfileDocument,
        ballot_index: usize,
        prefix_len: usize,
        before: Outcome,
        after: Outcome,
    },
    /// A candidate wins both districts but not the merged electorate.
    DistrictSplit {
        district1: ProfileDocument,
        district2: ProfileDocument,
        winner: CandidateId,
        district1_outcome: Outcome,
        district2_outcome: Outcome,
        merged_outcome: Outcome,
    },
    /// A losing candidate drops out and the recount crowns someone new.
    /// `after` is indexed over the remaining candidates.
    CandidateRemoval {
        profile: ProfileDocument,
        removed: CandidateId,
        before: Outcome,
        after: Outcome,
    },
}

/// Verdict of one criterion check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub rule: Rule,
    pub violated: bool,
    pub witness: Option<Witness>,
}

impl CriterionReport {
    fn clean(criterion: Criterion, rule: Rule) -> Self {
        CriterionReport {
            criterion,
            rule,
            violated: false,
            witness: None,
        }
    }

    fn found(criterion: Criterion, rule: Rule, witness: Witness) -> Self {
        CriterionReport {
            criterion,
            rule,
            violated: true,
            witness: Some(witness),
        }
    }

    /// Re-run the stored manipulation from scratch and confirm both the
    /// recorded outcomes and the violation itself.
    pub fn replay(&self) -> Result<bool, CriteriaError> {
        let Some(witness) = &self.witness else {
            return Ok(!self.violated);
        };
        let ok = match witness {
            Witness::Abstention {
                profile,
                ballot_index,
                before,
                after,
            } => {
                let p = profile.to_profile()?;
                let b = self.rule.decide(&p)?;
                let a = self.rule.decide(&p.remove_one_voter(*ballot_index)?)?;
                b == *before && a == *after && benefits(&p, *ballot_index, &b, &a)
            }
            Witness::TwinAbstention {
                profile,
                ballot_index,
                twin_index,
                before,
                after,
            } => {
                let p = profile.to_profile()?;
                let has_twin = match twin_index {
                    Some(j) => ballots_equal(&p, *ballot_index, *j),
                    None => p.weight(*ballot_index) > 1,
                };
                let b = self.rule.decide(&p)?;
                let a = self.rule.decide(&p.remove_one_voter(*ballot_index)?)?;
                has_twin && b == *before && a == *after && benefits(&p, *ballot_index, &b, &a)
            }
            Witness::Truncation {
                profile,
                ballot_index,
                prefix_len,
                before,
                after,
            } => {
                let p = profile.to_profile()?;
                let truncated = truncate_one_voter(&p, *ballot_index, *prefix_len)?;
                let b = self.rule.decide(&p)?;
                let a = self.rule.decide(&truncated)?;
                b == *before && a == *after && benefits(&p, *ballot_index, &b, &a)
            }
            Witness::DistrictSplit {
                district1,
                district2,
                winner,
                district1_outcome,
                district2_outcome,
                merged_outcome,
            } => {
                let p1 = district1.to_profile()?;
                let p2 = district2.to_profile()?;
                let o1 = self.rule.decide(&p1)?;
                let o2 = self.rule.decide(&p2)?;
                let om = self.rule.decide(&merge_profiles(&p1, &p2)?)?;
                o1 == *district1_outcome
                    && o2 == *district2_outcome
                    && om == *merged_outcome
                    && o1.winner == Some(*winner)
                    && o2.winner == Some(*winner)
                    && om.winner != Some(*winner)
            }
            Witness::CandidateRemoval {
                profile,
                removed,
                before,
                after,
            } => {
                let p = profile.to_profile()?;
                let b = self.rule.decide(&p)?;
                let a = self.rule.decide(&p.remove_candidate(*removed)?)?;
                b == *before && a == *after && scc_changes_winner(&b, &a, *removed)
            }
        };
        Ok(ok && self.violated)
    }
}

/// Does abstaining/manipulating move the result somewhere voter
/// `ballot_index` strictly prefers? Requires a sole winner afterwards who
/// was not already winning and whom the voter ranks above every previous
/// (co-)winner.
fn benefits(profile: &Profile, ballot_index: usize, before: &Outcome, after: &Outcome) -> bool {
    let Some(new_winner) = after.winner else {
        return false;
    };
    let previous = before.winning_set();
    if previous.contains(&new_winner) {
        return false;
    }
    previous
        .iter()
        .all(|&w| profile.prefers(ballot_index, new_winner, w))
}

fn ballots_equal(profile: &Profile, i: usize, j: usize) -> bool {
    match (profile.rated_ballots(), profile.ranked_ballots()) {
        (Some(rated), _) => rated[i] == rated[j],
        (_, Some(ranked)) => ranked[i] == ranked[j],
        _ => unreachable!(),
    }
}

/// Can a single sincere voter do better by staying home?
pub fn check_no_show(profile: &Profile, rule: Rule) -> Result<CriterionReport, CriteriaError> {
    let before = rule.decide(profile)?;
    if profile.voter_count() < 2 {
        return Ok(CriterionReport::clean(Criterion::NoShow, rule));
    }
    for ballot_index in 0..profile.ballot_count() {
        let after = rule.decide(&profile.remove_one_voter(ballot_index)?)?;
        if benefits(profile, ballot_index, &before, &after) {
            return Ok(CriterionReport::found(
                Criterion::NoShow,
                rule,
                Witness::Abstention {
                    profile: ProfileDocument::from_profile(profile, None),
                    ballot_index,
                    before,
                    after,
                },
            ));
        }
    }
    Ok(CriterionReport::clean(Criterion::NoShow, rule))
}

/// Can one of two identical voters do better by staying home?
pub fn check_twin(profile: &Profile, rule: Rule) -> Result<CriterionReport, CriteriaError> {
    let before = rule.decide(profile)?;
    if profile.voter_count() < 2 {
        return Ok(CriterionReport::clean(Criterion::Twin, rule));
    }
    for ballot_index in 0..profile.ballot_count() {
        let twin_index = if profile.weight(ballot_index) > 1 {
            Some(None)
        } else {
            (0..profile.ballot_count())
                .find(|&j| j != ballot_index && ballots_equal(profile, ballot_index, j))
                .map(Some)
        };
        let Some(twin_index) = twin_index else {
            continue;
        };
        let after = rule.decide(&profile.remove_one_voter(ballot_index)?)?;
        if benefits(profile, ballot_index, &before, &after) {
            return Ok(CriterionReport::found(
                Criterion::Twin,
                rule,
                Witness::TwinAbstention {
                    profile: ProfileDocument::from_profile(profile, None),
                    ballot_index,
                    twin_index,
                    before,
                    after,
                },
            ));
        }
    }
    Ok(CriterionReport::clean(Criterion::Twin, rule))
}

/// Replace ballot `ballot_index` (one voter of it) with a prefix of itself.
fn truncate_one_voter(
    profile: &Profile,
    ballot_index: usize,
    prefix_len: usize,
) -> Result<Profile, ProfileError> {
    let ballots = profile
        .ranked_ballots()
        .expect("truncation operates on ranked profiles");
    let truncated = RankedBallot {
        ranking: ballots[ballot_index].ranking[..prefix_len].to_vec(),
    };
    if profile.weight(ballot_index) == 1 {
        profile.with_ranked_ballot(ballot_index, truncated)
    } else {
        let mut new_ballots = ballots.to_vec();
        let mut weights = profile.weights().to_vec();
        weights[ballot_index] -= 1;
        new_ballots.push(truncated);
        weights.push(1);
        Profile::ranked_weighted(profile.candidate_count(), new_ballots, weights)
    }
}

/// Can a voter do better by listing only their first few choices? Benefit is
/// judged by the original full ballot.
pub fn check_truncation(profile: &Profile, rule: Rule) -> Result<CriterionReport, CriteriaError> {
    let ballots = profile
        .ranked_ballots()
        .ok_or(CriteriaError::RankedRequired)?;
    let before = rule.decide(profile)?;
    for (ballot_index, ballot) in ballots.iter().enumerate() {
        for prefix_len in 1..ballot.ranking.len() {
            let after = rule.decide(&truncate_one_voter(profile, ballot_index, prefix_len)?)?;
            if benefits(profile, ballot_index, &before, &after) {
                return Ok(CriterionReport::found(
                    Criterion::Truncation,
                    rule,
                    Witness::Truncation {
                        profile: ProfileDocument::from_profile(profile, None),
                        ballot_index,
                        prefix_len,
                        before,
                        after,
                    },
                ));
            }
        }
    }
    Ok(CriterionReport::clean(Criterion::Truncation, rule))
}

/// Does any candidate win both districts yet lose the merged electorate?
pub fn check_multiple_districts(
    district1: &Profile,
    district2: &Profile,
    rule: Rule,
) -> Result<CriterionReport, CriteriaError> {
    let merged = merge_profiles(district1, district2)?;
    let o1 = rule.decide(district1)?;
    let o2 = rule.decide(district2)?;
    let (Some(w1), Some(w2)) = (o1.winner, o2.winner) else {
        return Ok(CriterionReport::clean(Criterion::MultipleDistricts, rule));
    };
    if w1 != w2 {
        return Ok(CriterionReport::clean(Criterion::MultipleDistricts, rule));
    }
    let om = rule.decide(&merged)?;
    if om.winner == Some(w1) {
        return Ok(CriterionReport::clean(Criterion::MultipleDistricts, rule));
    }
    Ok(CriterionReport::found(
        Criterion::MultipleDistricts,
        rule,
        Witness::DistrictSplit {
            district1: ProfileDocument::from_profile(district1, None),
            district2: ProfileDocument::from_profile(district2, None),
            winner: w1,
            district1_outcome: o1,
            district2_outcome: o2,
            merged_outcome: om,
        },
    ))
}

/// After deleting `removed`, does the recount (in the smaller candidate
/// indexing) crown someone other than the old winner?
fn scc_changes_winner(before: &Outcome, after: &Outcome, removed: CandidateId) -> bool {
    let Some(old) = before.winner else {
        return false;
    };
    let Some(new_sub) = after.winner else {
        return false;
    };
    let new_original = if new_sub.0 >= removed.0 {
        CandidateId(new_sub.0 + 1)
    } else {
        new_sub
    };
    new_original != old
}

/// Does dropping some losing candidate and recounting change the winner?
pub fn check_scc(profile: &Profile, rule: Rule) -> Result<CriterionReport, CriteriaError> {
    if profile.candidate_count() < 3 {
        return Err(CriteriaError::TooFewCandidates(3));
    }
    let before = rule.decide(profile)?;
    let winners = before.winning_set();
    for removed in profile.candidates() {
        if winners.contains(&removed) {
            continue;
        }
        let after = rule.decide(&profile.remove_candidate(removed)?)?;
        if scc_changes_winner(&before, &after, removed) {
            return Ok(CriterionReport::found(
                Criterion::Scc,
                rule,
                Witness::CandidateRemoval {
                    profile: ProfileDocument::from_profile(profile, None),
                    removed,
                    before,
                    after,
                },
            ));
        }
    }
    Ok(CriterionReport::clean(Criterion::Scc, rule))
}

// ---------------------------------------------------------------------------
// Violation search
// ---------------------------------------------------------------------------

/// What kind of ballots the search draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallotSpace {
    StrictRanked,
    TruncatedRanked,
    Graded { grades: usize },
}

/// Profile shapes to sweep: candidate counts x voter counts x ballot kind.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub candidate_counts: Vec<usize>,
    pub voter_counts: Vec<usize>,
    pub ballots: BallotSpace,
}

/// Spaces with at most this many profiles (profile pairs for the districts
/// criterion) are enumerated exhaustively; larger ones are sampled.
pub const EXHAUSTIVE_LIMIT: u128 = 10_000_000;

/// All strict rankings of `c` candidates.
pub fn strict_ranked_ballots(c: usize) -> Vec<RankedBallot> {
    (0..c)
        .permutations(c)
        .map(|p| RankedBallot::from_indices(&p))
        .collect()
}

/// All rankings of any length `0..=c`, truncation included.
pub fn truncated_ranked_ballots(c: usize) -> Vec<RankedBallot> {
    (0..=c)
        .flat_map(|k| (0..c).permutations(k))
        .map(|p| RankedBallot::from_indices(&p))
        .collect()
}

/// All rating vectors over the grade codes `1..=grades`.
pub fn graded_ballots(c: usize, grades: usize) -> Vec<RatedBallot> {
    (0..c)
        .map(|_| 1..=grades)
        .multi_cartesian_product()
        .map(|v| RatedBallot::new(v.into_iter().map(|g| g as f64).collect()))
        .collect()
}

fn ballot_universe_len(c: usize, ballots: BallotSpace) -> u128 {
    match ballots {
        BallotSpace::StrictRanked => (1..=c as u128).product(),
        BallotSpace::TruncatedRanked => {
            // sum over k of c!/(c-k)!
            (0..=c)
                .map(|k| ((c - k + 1)..=c).map(|x| x as u128).product::<u128>())
                .sum()
        }
        BallotSpace::Graded { grades } => (grades as u128).pow(c as u32),
    }
}

/// Multisets of `voters` ballots drawn from `types` ballot kinds. Every rule
/// here is anonymous, so enumerating multisets covers all profiles.
/// Saturates on overflow, which only happens far beyond the exhaustive
/// limit anyway.
fn multiset_count(types: u128, voters: u32) -> u128 {
    // C(types + voters - 1, voters)
    let n = (types - 1).saturating_add(voters as u128);
    let mut result: u128 = 1;
    for i in 0..voters as u128 {
        result = match result.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    result
}

/// Every strict-ranking profile of the given shape, up to ballot order.
pub fn strict_ranked_profiles(candidates: usize, voters: usize) -> impl Iterator<Item = Profile> {
    let universe = strict_ranked_ballots(candidates);
    profiles_over_ranked(candidates, universe, voters)
}

/// Every truncation-allowing ranked profile of the given shape, up to
/// ballot order.
pub fn truncated_ranked_profiles(
    candidates: usize,
    voters: usize,
) -> impl Iterator<Item = Profile> {
    let universe = truncated_ranked_ballots(candidates);
    profiles_over_ranked(candidates, universe, voters)
}

/// Every graded profile of the given shape, up to ballot order.
pub fn graded_profiles(
    candidates: usize,
    voters: usize,
    grades: usize,
) -> impl Iterator<Item = Profile> {
    let universe = graded_ballots(candidates, grades);
    let scale = RatingScale::graded_numeric(grades);
    (0..universe.len())
        .combinations_with_replacement(voters)
        .map(move |indices| {
            let ballots = indices.iter().map(|&i| universe[i].clone()).collect();
            Profile::rated(scale.clone(), ballots).unwrap()
        })
}

fn profiles_over_ranked(
    candidates: usize,
    universe: Vec<RankedBallot>,
    voters: usize,
) -> impl Iterator<Item = Profile> {
    (0..universe.len())
        .combinations_with_replacement(voters)
        .map(move |indices| {
            let ballots = indices.iter().map(|&i| universe[i].clone()).collect();
            Profile::ranked(candidates, ballots).unwrap()
        })
}

fn random_profile<R: Rng>(
    rng: &mut R,
    candidates: usize,
    voters: usize,
    ballots: BallotSpace,
) -> Profile {
    match ballots {
        BallotSpace::StrictRanked | BallotSpace::TruncatedRanked => {
            let rows = (0..voters)
                .map(|_| {
                    let mut order: Vec<usize> = (0..candidates).collect();
                    order.shuffle(rng);
                    if ballots == BallotSpace::TruncatedRanked {
                        order.truncate(rng.random_range(0..=candidates));
                    }
                    RankedBallot::from_indices(&order)
                })
                .collect();
            Profile::ranked(candidates, rows).unwrap()
        }
        BallotSpace::Graded { grades } => {
            let rows = (0..voters)
                .map(|_| {
                    RatedBallot::new(
                        (0..candidates)
                            .map(|_| rng.random_range(1..=grades) as f64)
                            .collect(),
                    )
                })
                .collect();
            Profile::rated(RatingScale::graded_numeric(grades), rows).unwrap()
        }
    }
}

/// A profile without two identical ballots is vacuous for the twin
/// criterion, so the twin search casts each drawn ballot once or twice,
/// mixing twin pairs with singletons.
fn random_profile_with_twins<R: Rng>(
    rng: &mut R,
    candidates: usize,
    voters: usize,
    ballots: BallotSpace,
) -> Profile {
    let base = random_profile(rng, candidates, voters, ballots);
    let mut weights: Vec<u64> = (0..base.ballot_count())
        .map(|_| rng.random_range(1..=2))
        .collect();
    if weights.iter().all(|&w| w == 1) {
        weights[0] = 2;
    }
    match base.rated_ballots() {
        Some(rated) => {
            Profile::rated_weighted(base.scale().unwrap().clone(), rated.to_vec(), weights)
                .expect("reweighting keeps the profile valid")
        }
        None => {
            Profile::ranked_weighted(candidates, base.ranked_ballots().unwrap().to_vec(), weights)
                .expect("reweighting keeps the profile valid")
        }
    }
}

/// Profile realizing the given pairwise margins and nothing else: each
/// `(winner, loser, margin)` adds `margin / 2` copies of a ballot pair whose
/// other preferences cancel. Margins must be even.
fn margin_profile(candidates: usize, margins: &[(usize, usize, u64)]) -> Profile {
    let mut ballots = Vec::new();
    let mut weights = Vec::new();
    for &(i, j, m) in margins {
        assert!(m >= 2 && m % 2 == 0, "margins must be positive and even");
        let others: Vec<usize> = (0..candidates).filter(|&x| x != i && x != j).collect();
        let mut first = vec![i, j];
        first.extend(&others);
        let mut second: Vec<usize> = others.iter().rev().copied().collect();
        second.extend([i, j]);
        ballots.push(RankedBallot::from_indices(&first));
        weights.push(m / 2);
        ballots.push(RankedBallot::from_indices(&second));
        weights.push(m / 2);
    }
    Profile::ranked_weighted(candidates, ballots, weights).unwrap()
}

/// Two four-candidate districts with opposite cycles among three candidates:
/// the fourth wins each district on the smallest largest-loss, but merging
/// cancels the cycles and hands the election to a cycle member.
fn opposite_cycle_districts<R: Rng>(rng: &mut R) -> (Profile, Profile) {
    let mut labels: Vec<usize> = (0..4).collect();
    labels.shuffle(rng);
    let (w, p, q, r) = (labels[0], labels[1], labels[2], labels[3]);
    let a = 2;
    let s = 2 * rng.random_range(2..=4);
    let d1 = margin_profile(
        4,
        &[
            (p, w, a),
            (w, q, a),
            (w, r, a),
            (p, q, s),
            (q, r, s),
            (r, p, s),
        ],
    );
    let d2 = margin_profile(
        4,
        &[
            (p, w, a),
            (w, q, a),
            (w, r, a),
            (q, p, s),
            (r, q, s),
            (p, r, s),
        ],
    );
    (d1, d2)
}

fn run_check(
    profile: &Profile,
    rule: Rule,
    criterion: Criterion,
) -> Result<CriterionReport, CriteriaError> {
    match criterion {
        Criterion::NoShow => check_no_show(profile, rule),
        Criterion::Twin => check_twin(profile, rule),
        Criterion::Truncation => check_truncation(profile, rule),
        Criterion::Scc => check_scc(profile, rule),
        Criterion::MultipleDistricts => {
            unreachable!("districts search generates profile pairs")
        }
    }
}

fn space_size(space: &SearchSpace, criterion: Criterion) -> u128 {
    let mut total: u128 = 0;
    for &c in &space.candidate_counts {
        let types = ballot_universe_len(c, space.ballots);
        let per_c: u128 = space
            .voter_counts
            .iter()
            .map(|&v| multiset_count(types, v as u32))
            .sum();
        total = total.saturating_add(if criterion == Criterion::MultipleDistricts {
            per_c.saturating_mul(per_c)
        } else {
            per_c
        });
    }
    total
}

/// Streams the whole space without materializing it; only the districts
/// search collects (its pair spaces are tiny once squared against the
/// limit).
fn exhaustive_profiles(space: &SearchSpace) -> impl Iterator<Item = Profile> {
    let cells: Vec<(usize, usize)> = space
        .candidate_counts
        .iter()
        .flat_map(|&c| space.voter_counts.iter().map(move |&v| (c, v)))
        .collect();
    let ballots = space.ballots;
    cells
        .into_iter()
        .flat_map(move |(c, v)| -> Box<dyn Iterator<Item = Profile>> {
            match ballots {
                BallotSpace::StrictRanked => Box::new(strict_ranked_profiles(c, v)),
                BallotSpace::TruncatedRanked => Box::new(truncated_ranked_profiles(c, v)),
                BallotSpace::Graded { grades } => Box::new(graded_profiles(c, v, grades)),
            }
        })
}

/// Look for a violation of `criterion` under `rule` across the space.
///
/// Spaces of at most [`EXHAUSTIVE_LIMIT`] profiles are enumerated
/// exhaustively in a deterministic order; larger spaces draw seeded random
/// profiles, up to `budget` trials. The districts criterion searches profile
/// pairs, alternating uniformly random pairs with randomized
/// opposite-cycle constructions when four candidates are in the space.
pub fn search_violations(
    rule: Rule,
    criterion: Criterion,
    space: &SearchSpace,
    seed: u64,
    budget: usize,
) -> Result<Option<CriterionReport>, CriteriaError> {
    if space.candidate_counts.is_empty() || space.voter_counts.is_empty() || budget == 0 {
        return Err(CriteriaError::InvalidSpace(
            "need candidate counts, voter counts, and a positive budget".into(),
        ));
    }
    if space.candidate_counts.iter().any(|&c| c < 2) {
        return Err(CriteriaError::InvalidSpace(
            "criterion checks need at least two candidates".into(),
        ));
    }
    if space.voter_counts.iter().any(|&v| v < 1) {
        return Err(CriteriaError::InvalidSpace(
            "every cell needs at least one voter".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exhaustive = space_size(space, criterion) <= EXHAUSTIVE_LIMIT;

    if criterion == Criterion::MultipleDistricts {
        if exhaustive {
            for &c in &space.candidate_counts {
                let one_count = SearchSpace {
                    candidate_counts: vec![c],
                    ..space.clone()
                };
                let profiles: Vec<Profile> = exhaustive_profiles(&one_count).collect();
                for p1 in &profiles {
                    for p2 in &profiles {
                        let report = check_multiple_districts(p1, p2, rule)?;
                        if report.violated {
                            return Ok(Some(report));
                        }
                    }
                }
            }
            return Ok(None);
        }
        let can_structure = space.candidate_counts.contains(&4)
            && matches!(
                space.ballots,
                BallotSpace::StrictRanked | BallotSpace::TruncatedRanked
            );
        for trial in 0..budget {
            let (p1, p2) = if can_structure && trial % 2 == 1 {
                opposite_cycle_districts(&mut rng)
            } else {
                let c = *space.candidate_counts[..].choose(&mut rng).unwrap();
                let v1 = *space.voter_counts[..].choose(&mut rng).unwrap();
                let v2 = *space.voter_counts[..].choose(&mut rng).unwrap();
                (
                    random_profile(&mut rng, c, v1, space.ballots),
                    random_profile(&mut rng, c, v2, space.ballots),
                )
            };
            let report = check_multiple_districts(&p1, &p2, rule)?;
            if report.violated {
                return Ok(Some(report));
            }
        }
        return Ok(None);
    }

    if exhaustive {
        for profile in exhaustive_profiles(space) {
            let report = run_check(&profile, rule, criterion)?;
            if report.violated {
                return Ok(Some(report));
            }
        }
        return Ok(None);
    }
    for _ in 0..budget {
        let c = *space.candidate_counts[..].choose(&mut rng).unwrap();
        let v = *space.voter_counts[..].choose(&mut rng).unwrap();
        let profile = if criterion == Criterion::Twin {
            random_profile_with_twins(&mut rng, c, v, space.ballots)
        } else {
            random_profile(&mut rng, c, v, space.ballots)
        };
        let report = run_check(&profile, rule, criterion)?;
        if report.violated {
            return Ok(Some(report));
        }
    }
    Ok(None)
}
