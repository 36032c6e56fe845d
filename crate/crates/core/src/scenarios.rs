//! Bundled demonstration elections.
//!
//! Small constructions in which the rules disagree sharply: a graded
//! election where an overwhelming pairwise favorite loses the median vote, a
//! score election swung by a single extreme ballot, an approval upset, a
//! three-team league whose champion depends on who is eligible, and the
//! 99-voter spatial election used by the strategic-voting analysis. These
//! back the CLI `reproduce` command and the golden tests.

use crate::ballots::{PairwiseTally, Profile, RankedBallot, RatingScale};
use crate::spatial::{Placement, SpatialConfig, DEFAULT_RATING_OFFSET};

/// Two candidates, 99 voters, grades 1..=6. A's median grade is 3 and B's
/// is 4, so B wins majority judgment even though 98 of the 99 voters grade
/// A above B.
pub fn mj_upset() -> Profile {
    Profile::rated_weighted(
        RatingScale::graded_numeric(6),
        vec![
            vec![2.0, 1.0].into(),
            vec![6.0, 5.0].into(),
            vec![3.0, 4.0].into(),
        ],
        vec![49, 49, 1],
    )
    .unwrap()
}

/// Two candidates, 99 voters, scores 0..=99. Every voter but one scores A
/// one point above B; the holdout scores A at 0 and B at 99, so B's total
/// beats A's by exactly 1 point.
pub fn range_upset() -> Profile {
    Profile::rated_weighted(
        RatingScale::Integer { min: 0, max: 99 },
        vec![vec![50.0, 49.0].into(), vec![0.0, 99.0].into()],
        vec![98, 1],
    )
    .unwrap()
}

/// Nine voters scoring X and Y on a 0..=10 scale. Four rate both highly
/// with Y on top, four rate both poorly with X on the bottom, and the median
/// voter puts X just above average and Y just below.
pub fn approval_upset_ratings() -> Profile {
    Profile::rated_weighted(
        RatingScale::Integer { min: 0, max: 10 },
        vec![
            vec![7.0, 9.0].into(),
            vec![1.0, 3.0].into(),
            vec![6.0, 4.0].into(),
        ],
        vec![4, 4, 1],
    )
    .unwrap()
}

/// The ratings above thresholded at "above average" (rating > 5): X collects
/// 5 approvals to Y's 4 even though 8 of the 9 voters prefer Y.
pub fn approval_upset_ballots() -> Profile {
    let ratings = approval_upset_ratings();
    let ballots = ratings
        .rated_ballots()
        .unwrap()
        .iter()
        .map(|b| {
            b.ratings
                .iter()
                .map(|&r| if r > 5.0 { 1.0 } else { 0.0 })
                .collect::<Vec<f64>>()
                .into()
        })
        .collect();
    Profile::rated_weighted(
        RatingScale::Integer { min: 0, max: 1 },
        ballots,
        ratings.weights().to_vec(),
    )
    .unwrap()
}

/// Three teams, nine games per pairing: A beat B 9-0, B beat C 9-0, and C
/// beat A 5-4. Candidates are indexed A=0, B=1, C=2. Each game speaks to
/// one pair only, so the tally is built from the raw game counts.
pub fn league_tally() -> PairwiseTally {
    PairwiseTally::from_counts(vec![vec![0, 9, 4], vec![0, 0, 9], vec![5, 0, 0]], 27).unwrap()
}

/// The league as a 27-ballot profile, one ranked ballot per game listing
/// the winner over the loser. Under the truncation convention a game ballot
/// also ranks both players above the absent team, so this profile's tally
/// (A-B 18-9, B-C 18-9, C-A 14-13) differs from the raw game counts while
/// keeping the same cycle and the same largest-loss structure.
pub fn league_profile() -> Profile {
    Profile::ranked_weighted(
        3,
        vec![
            RankedBallot::from_indices(&[0, 1]), // A beats B
            RankedBallot::from_indices(&[1, 2]), // B beats C
            RankedBallot::from_indices(&[2, 0]), // C beats A
            RankedBallot::from_indices(&[0, 2]), // A beats C
        ],
        vec![9, 9, 5, 4],
    )
    .unwrap()
}

/// The 99-voter spatial election: candidate A at the voter median 0,
/// candidate B at +0.5, one voter at each percentile point of the standard
/// normal, ratings `3 - distance`.
pub fn spatial_config() -> SpatialConfig {
    SpatialConfig::new(
        vec![0.0, 0.5],
        Placement::PercentileGrid { voters: 99 },
        DEFAULT_RATING_OFFSET,
    )
    .unwrap()
}

/// The sincere rated profile generated by [`spatial_config`].
pub fn spatial_profile() -> Profile {
    crate::spatial::generate_rated_profile(&spatial_config()).unwrap()
}
