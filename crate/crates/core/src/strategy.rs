//! Strategic (insincere) ballot transformations and grade discretization.
//!
//! The attack studied here is maximal polarization: supporters of one
//! candidate replace their sincere ratings with the most extreme ratings
//! sincerely given by anyone, raising their favorite and burying the
//! opponent. Every transformation is pure; the input profile is treated as
//! the sincere baseline.

use crate::ballots::{CandidateId, Profile, ProfileError, RatedBallot, RatingScale};
use crate::rules::{Outcome, Rule, RuleError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StrategyError {
    #[error("rated profile required")]
    NotRated,
    #[error("favored and opponent must differ")]
    SameCandidate,
    #[error("candidate index out of range")]
    CandidateOutOfRange,
    #[error("only {available} voters prefer the favored candidate, cannot recruit {requested}")]
    NotEnoughSympathizers { available: usize, requested: usize },
    #[error("rating {rating} outside [0, {max}]")]
    RatingOutOfRange { rating: f64, max: f64 },
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// A polarization attack: `k` supporters of `favored` vote insincerely
/// against `opponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AttackSpec {
    pub favored: CandidateId,
    pub opponent: CandidateId,
    pub k: usize,
}

impl AttackSpec {
    pub fn new(favored: CandidateId, opponent: CandidateId, k: usize) -> Self {
        AttackSpec {
            favored,
            opponent,
            k,
        }
    }
}

/// Lowest and highest rating sincerely given to any candidate by any voter.
pub fn global_rating_extremes(profile: &Profile) -> Result<(f64, f64), StrategyError> {
    let ballots = profile.rated_ballots().ok_or(StrategyError::NotRated)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for ballot in ballots {
        for &r in &ballot.ratings {
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok((lo, hi))
}

/// Indices of ballots preferring `favored` over `opponent`, ordered by
/// ascending sincere rating of `opponent` (ties by ballot index). These are
/// the voters recruited first: the ones who like the opponent least.
fn sympathizers(profile: &Profile, favored: CandidateId, opponent: CandidateId) -> Vec<usize> {
    let ballots = profile.rated_ballots().expect("validated rated");
    let mut indices: Vec<usize> = (0..ballots.len())
        .filter(|&i| ballots[i].ratings[favored.0] > ballots[i].ratings[opponent.0])
        .collect();
    indices.sort_by(|&a, &b| {
        ballots[a].ratings[opponent.0]
            .partial_cmp(&ballots[b].ratings[opponent.0])
            .unwrap()
            .then(a.cmp(&b))
    });
    indices
}

fn validate_attack(profile: &Profile, spec: &AttackSpec) -> Result<(), StrategyError> {
    if profile.rated_ballots().is_none() {
        return Err(StrategyError::NotRated);
    }
    if spec.favored == spec.opponent {
        return Err(StrategyError::SameCandidate);
    }
    if spec.favored.0 >= profile.candidate_count() || spec.opponent.0 >= profile.candidate_count() {
        return Err(StrategyError::CandidateOutOfRange);
    }
    Ok(())
}

/// Replace the ballots of the `k` recruited sympathizers: `favored` gets the
/// highest rating sincerely given by anyone, `opponent` the lowest. All other
/// ballots are unchanged. Weighted ballots convert wholesale (every voter
/// behind a recruited ballot strategizes), so unit weights are assumed for
/// per-voter counts.
pub fn apply_strategic_voters(
    profile: &Profile,
    spec: &AttackSpec,
) -> Result<Profile, StrategyError> {
    validate_attack(profile, spec)?;
    let order = sympathizers(profile, spec.favored, spec.opponent);
    if spec.k > order.len() {
        return Err(StrategyError::NotEnoughSympathizers {
            available: order.len(),
            requested: spec.k,
        });
    }
    if spec.k == 0 {
        return Ok(profile.clone());
    }
    let (lo, hi) = global_rating_extremes(profile)?;
    let mut result = profile.clone();
    for &i in &order[..spec.k] {
        let mut ratings = profile.rated_ballots().unwrap()[i].ratings.clone();
        ratings[spec.favored.0] = hi;
        ratings[spec.opponent.0] = lo;
        result = result.with_rated_ballot(i, RatedBallot::new(ratings))?;
    }
    Ok(result)
}

/// Smallest `k` for which the attack flips `rule`'s winner to `favored`;
/// `None` if even recruiting every sympathizer fails. Scans `k = 1, 2, ...`
/// linearly; flip monotonicity is not assumed.
pub fn min_flippers(
    profile: &Profile,
    rule: Rule,
    favored: CandidateId,
    opponent: CandidateId,
) -> Result<Option<usize>, StrategyError> {
    let spec0 = AttackSpec::new(favored, opponent, 0);
    validate_attack(profile, &spec0)?;
    if rule.decide(profile)?.winner == Some(favored) {
        return Ok(Some(0));
    }
    let limit = sympathizers(profile, favored, opponent).len();
    for k in 1..=limit {
        let attacked = apply_strategic_voters(profile, &AttackSpec::new(favored, opponent, k))?;
        if rule.decide(&attacked)?.winner == Some(favored) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Outcome of `rule` after an attack with exactly `k` strategists.
pub fn attacked_outcome(
    profile: &Profile,
    rule: Rule,
    spec: &AttackSpec,
) -> Result<Outcome, StrategyError> {
    let attacked = apply_strategic_voters(profile, spec)?;
    Ok(rule.decide(&attacked)?)
}

/// Map numeric ratings in `[0, grade_count * bin_width]` onto the grades
/// `1..=grade_count`: grade `min(G, floor(r / w) + 1)`. Boundary values fall
/// upward (exactly `0.5` becomes grade 2 at the default width), and the top
/// boundary lands in the top grade.
pub fn discretize_profile(
    profile: &Profile,
    bin_width: f64,
    grade_count: usize,
) -> Result<Profile, StrategyError> {
    let ballots = profile.rated_ballots().ok_or(StrategyError::NotRated)?;
    let max = grade_count as f64 * bin_width;
    let mut graded = Vec::with_capacity(ballots.len());
    for ballot in ballots {
        let mut grades = Vec::with_capacity(ballot.ratings.len());
        for &r in &ballot.ratings {
            if !(0.0..=max).contains(&r) {
                return Err(StrategyError::RatingOutOfRange { rating: r, max });
            }
            let g = ((r / bin_width).floor() as usize + 1).min(grade_count);
            grades.push(g as f64);
        }
        graded.push(RatedBallot::new(grades));
    }
    Ok(Profile::rated_weighted(
        RatingScale::graded_numeric(grade_count),
        graded,
        profile.weights().to_vec(),
    )?)
}
