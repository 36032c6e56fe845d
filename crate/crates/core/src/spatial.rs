//! One-dimensional spatial ("left-right") voter model.
//!
//! Voters and candidates sit on a single opinion axis. Sincere ratings are
//! `offset - distance`; majority-rule votes go to the nearer candidate.
//! Voter placement is either a deterministic percentile grid of the standard
//! normal distribution or seeded standard-normal sampling.
//!
//! Reproducibility contract: sampling uses the caller's generator; the rest
//! of the crate derives ChaCha8 generators per task (see `experiments`), so
//! runs are bit-identical for a fixed seed regardless of thread count.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::ballots::{Profile, ProfileError, RankedBallot, RatedBallot, RatingScale};

pub const DEFAULT_RATING_OFFSET: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpatialError {
    #[error("probability must lie strictly between 0 and 1, got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("invalid spatial config: {0}")]
    InvalidConfig(String),
}

/// How to place voters on the axis.
#[derive(Clone, Debug, PartialEq)]
pub enum Placement {
    /// Voter `i` (1-based) at the `i/(n+1)` quantile of the standard normal;
    /// for `n = 99` these are exactly the 1st..99th percentile points.
    PercentileGrid { voters: usize },
    /// Independent standard-normal draws from a ChaCha8 generator seeded
    /// with `seed`.
    NormalSample { voters: usize, seed: u64 },
}

impl Placement {
    pub fn voter_count(&self) -> usize {
        match *self {
            Placement::PercentileGrid { voters } => voters,
            Placement::NormalSample { voters, .. } => voters,
        }
    }
}

/// Candidate positions plus voter placement for one synthetic election.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialConfig {
    pub candidate_positions: Vec<f64>,
    pub placement: Placement,
    pub rating_offset: f64,
}

impl SpatialConfig {
    pub fn new(
        candidate_positions: Vec<f64>,
        placement: Placement,
        rating_offset: f64,
    ) -> Result<Self, SpatialError> {
        if candidate_positions.is_empty() {
            return Err(SpatialError::InvalidConfig("no candidates".into()));
        }
        if candidate_positions.iter().any(|p| !p.is_finite()) {
            return Err(SpatialError::InvalidConfig(
                "candidate positions must be finite".into(),
            ));
        }
        if placement.voter_count() == 0 {
            return Err(SpatialError::InvalidConfig(
                "need at least one voter".into(),
            ));
        }
        if !rating_offset.is_finite() {
            return Err(SpatialError::InvalidConfig("offset must be finite".into()));
        }
        Ok(SpatialConfig {
            candidate_positions,
            placement,
            rating_offset,
        })
    }
}

/// Voter positions on the axis; strictly increasing for percentile grids.
#[derive(Clone, Debug, PartialEq)]
pub struct VoterSet {
    pub positions: Vec<f64>,
}

impl VoterSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Quantile function of the standard normal distribution.
///
/// Wichura's algorithm AS241 (PPND16): three rational approximations split
/// at |p - 0.5| <= 0.425 and at the far tails. Absolute error is far below
/// the 1e-9 contract over `[1e-6, 1 - 1e-6]`.
pub fn inverse_normal_cdf(p: f64) -> Result<f64, SpatialError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(SpatialError::ProbabilityOutOfRange(p));
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return Ok(q * poly(&CENTRAL_NUM, r) / poly(&CENTRAL_DEN, r));
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let r = (-r.ln()).sqrt();
    let z = if r <= 5.0 {
        let r = r - 1.6;
        poly(&TAIL_NUM, r) / poly(&TAIL_DEN, r)
    } else {
        let r = r - 5.0;
        poly(&FAR_TAIL_NUM, r) / poly(&FAR_TAIL_DEN, r)
    };
    Ok(if q < 0.0 { -z } else { z })
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

#[allow(clippy::excessive_precision)]
const CENTRAL_NUM: [f64; 8] = [
    3.387_132_872_796_366_608,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
#[allow(clippy::excessive_precision)]
const CENTRAL_DEN: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561e3,
];
#[allow(clippy::excessive_precision)]
const TAIL_NUM: [f64; 8] = [
    1.423_437_110_749_683_577_3,
    4.630_337_846_156_545_295_9,
    5.769_497_221_460_691_405_5,
    3.647_848_324_763_204_605,
    1.270_458_252_452_368_382_6,
    2.417_807_251_774_506_117_7e-1,
    2.272_384_498_926_918_458_3e-2,
    7.745_450_142_783_414_076_4e-4,
];
#[allow(clippy::excessive_precision)]
const TAIL_DEN: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_9,
    1.676_384_830_183_803_849_4,
    6.897_673_349_851_000_045_5e-1,
    1.481_039_764_274_800_745_9e-1,
    1.519_866_656_361_645_719_7e-2,
    5.475_938_084_995_344_946e-4,
    1.050_750_071_644_416_843_2e-9,
];
#[allow(clippy::excessive_precision)]
const FAR_TAIL_NUM: [f64; 8] = [
    6.657_904_643_501_103_777_2,
    5.463_784_911_164_114_369_9,
    1.784_826_539_917_291_335_8,
    2.965_605_718_285_048_912_3e-1,
    2.653_218_952_657_612_309_3e-2,
    1.242_660_947_388_078_438_6e-3,
    2.711_555_568_743_487_578_2e-5,
    2.010_334_399_292_288_132_6e-7,
];
#[allow(clippy::excessive_precision)]
const FAR_TAIL_DEN: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_9e-1,
    1.369_298_809_227_358_053_1e-1,
    1.487_536_129_085_061_485_2e-2,
    7.868_691_311_456_132_591e-4,
    1.846_318_317_510_054_681_8e-5,
    1.421_511_758_316_445_888_7e-7,
    2.044_263_103_389_939_785_6e-15,
];

/// One voter at each `i/(n+1)` quantile of the standard normal, `i = 1..=n`.
pub fn percentile_grid(n: usize) -> VoterSet {
    let positions = (1..=n)
        .map(|i| inverse_normal_cdf(i as f64 / (n + 1) as f64).unwrap())
        .collect();
    VoterSet { positions }
}

/// `n` independent standard-normal draws from the given generator.
pub fn sample_voters<R: Rng + ?Sized>(n: usize, rng: &mut R) -> VoterSet {
    let positions = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    VoterSet { positions }
}

/// Sincere rating: `offset` minus the distance between voter and candidate.
pub fn sincere_rating(voter_pos: f64, candidate_pos: f64, offset: f64) -> f64 {
    offset - (voter_pos - candidate_pos).abs()
}

fn place_voters(config: &SpatialConfig) -> VoterSet {
    match config.placement {
        Placement::PercentileGrid { voters } => percentile_grid(voters),
        Placement::NormalSample { voters, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            sample_voters(voters, &mut rng)
        }
    }
}

/// Sincere rated profile for the configured voters and candidates. The
/// scale bounds are the attained rating range (widened symmetrically when
/// every rating is identical, which needs a non-degenerate scale).
pub fn generate_rated_profile(config: &SpatialConfig) -> Result<Profile, ProfileError> {
    let voters = place_voters(config);
    rated_profile_for_voters(&config.candidate_positions, config.rating_offset, &voters)
}

/// Same as [`generate_rated_profile`] but with voter positions supplied by
/// the caller (the Monte Carlo runner samples them itself).
pub fn rated_profile_for_voters(
    candidate_positions: &[f64],
    rating_offset: f64,
    voters: &VoterSet,
) -> Result<Profile, ProfileError> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let ballots: Vec<RatedBallot> = voters
        .positions
        .iter()
        .map(|&v| {
            let ratings: Vec<f64> = candidate_positions
                .iter()
                .map(|&c| {
                    let r = sincere_rating(v, c, rating_offset);
                    lo = lo.min(r);
                    hi = hi.max(r);
                    r
                })
                .collect();
            RatedBallot::new(ratings)
        })
        .collect();
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    Profile::rated(RatingScale::Continuous { min: lo, max: hi }, ballots)
}

/// Majority-rule vote of one voter: candidates ranked by ascending distance.
/// The ranking stops before the first distance tie, so an equidistant pair
/// is left unlisted (an abstention on that pair).
pub fn nearest_candidate_ballot(voter_pos: f64, candidate_positions: &[f64]) -> RankedBallot {
    let mut by_distance: Vec<(f64, usize)> = candidate_positions
        .iter()
        .enumerate()
        .map(|(i, &c)| ((voter_pos - c).abs(), i))
        .collect();
    by_distance.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut ranking = Vec::with_capacity(by_distance.len());
    for (k, &(d, i)) in by_distance.iter().enumerate() {
        if k + 1 < by_distance.len() && by_distance[k + 1].0 == d {
            break;
        }
        if k > 0 && by_distance[k - 1].0 == d {
            break;
        }
        ranking.push(i);
    }
    RankedBallot::from_indices(&ranking)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference quantiles computed independently with scipy.stats.norm.ppf
    // (double precision).
    const PPF_TABLE: [(f64, f64); 20] = [
        (1e-06, -4.753424308822899),
        (0.0001, -3.7190164854556804),
        (0.001, -3.090232306167813),
        (0.01, -2.3263478740408408),
        (0.025, -1.9599639845400545),
        (0.05, -1.6448536269514729),
        (0.1, -1.2815515655446004),
        (0.25, -0.6744897501960817),
        (0.4, -0.2533471031357997),
        (0.5, 0.0),
        (0.6, 0.2533471031357997),
        (0.69, 0.4958503473474532),
        (0.75, 0.6744897501960817),
        (0.9, 1.2815515655446004),
        (0.95, 1.6448536269514722),
        (0.975, 1.959963984540054),
        (0.99, 2.3263478740408408),
        (0.999, 3.090232306167813),
        (0.9999, 3.719016485455709),
        (0.999999, 4.753424308817087),
    ];

    #[test]
    fn inverse_cdf_matches_reference_within_contract() {
        for &(p, z) in &PPF_TABLE {
            let got = inverse_normal_cdf(p).unwrap();
            assert!((got - z).abs() <= 1e-9, "ppf({p}) = {got}, expected {z}");
        }
    }

    #[test]
    fn inverse_cdf_edge_cases() {
        assert_eq!(inverse_normal_cdf(0.5).unwrap(), 0.0);
        assert!(inverse_normal_cdf(0.0).is_err());
        assert!(inverse_normal_cdf(1.0).is_err());
        assert!(inverse_normal_cdf(-0.1).is_err());
        assert!(inverse_normal_cdf(f64::NAN).is_err());
    }

    #[test]
    fn inverse_cdf_antisymmetric() {
        for p in [0.001, 0.06, 0.23, 0.4999] {
            let a = inverse_normal_cdf(p).unwrap();
            let b = inverse_normal_cdf(1.0 - p).unwrap();
            assert!((a + b).abs() < 1e-12, "p={p}: {a} vs {b}");
        }
    }

    #[test]
    fn grid_of_one_sits_at_the_median() {
        assert_eq!(percentile_grid(1).positions, vec![0.0]);
    }

    #[test]
    fn grid_99_endpoints_and_center() {
        let grid = percentile_grid(99);
        assert_eq!(grid.len(), 99);
        assert!((grid.positions[0] + 2.3263478740408408).abs() < 1e-9);
        assert_eq!(grid.positions[49], 0.0);
        assert!((grid.positions[98] - 2.3263478740408408).abs() < 1e-9);
        // 69 of the 99 voters fall below +0.5
        assert_eq!(grid.positions.iter().filter(|&&v| v < 0.5).count(), 69);
    }

    #[test]
    fn grid_is_symmetric_and_increasing() {
        for n in [1, 2, 5, 50, 99] {
            let grid = percentile_grid(n);
            for i in 0..n {
                let mirrored = -grid.positions[n - 1 - i];
                assert!((grid.positions[i] - mirrored).abs() < 1e-12);
                if i > 0 {
                    assert!(grid.positions[i] > grid.positions[i - 1]);
                }
            }
        }
    }

    #[test]
    fn sincere_rating_examples() {
        assert_eq!(sincere_rating(0.0, 0.0, 3.0), 3.0);
        let r = sincere_rating(-2.3263478740408408, 0.5, 3.0);
        assert!((r - 0.17365212595915924).abs() < 1e-9);
        assert_eq!(sincere_rating(1.0, 2.0, 3.0), sincere_rating(3.0, 2.0, 3.0));
    }

    #[test]
    fn sampling_is_seed_deterministic_with_sane_moments() {
        use rand::SeedableRng;
        let mut rng1 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = sample_voters(10_000, &mut rng1);
        let b = sample_voters(10_000, &mut rng2);
        assert_eq!(a, b);
        let mean = a.positions.iter().sum::<f64>() / a.len() as f64;
        let var = a
            .positions
            .iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / a.len() as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
    }

    #[test]
    fn nearest_candidate_votes() {
        // A at 0, B at 0.5
        let positions = [0.0, 0.5];
        assert_eq!(
            nearest_candidate_ballot(0.26, &positions).ranking,
            vec![
                crate::ballots::CandidateId(1),
                crate::ballots::CandidateId(0)
            ]
        );
        assert_eq!(
            nearest_candidate_ballot(0.0, &positions).ranking[0],
            crate::ballots::CandidateId(0)
        );
        // exact midpoint abstains on the pair
        assert!(nearest_candidate_ballot(0.25, &positions)
            .ranking
            .is_empty());
    }

    #[test]
    fn generated_profile_has_attained_scale_and_preference_split() {
        let config = SpatialConfig::new(
            vec![0.0, 0.5],
            Placement::PercentileGrid { voters: 99 },
            DEFAULT_RATING_OFFSET,
        )
        .unwrap();
        let profile = generate_rated_profile(&config).unwrap();
        assert_eq!(profile.ballot_count(), 99);
        let scale = profile.scale().unwrap();
        assert!((scale.min() - 0.17365212595915924).abs() < 1e-9);
        assert!((scale.max() - 3.0).abs() < 1e-12);
        let prefer_a = profile
            .rated_ballots()
            .unwrap()
            .iter()
            .filter(|b| b.ratings[0] > b.ratings[1])
            .count();
        assert_eq!(prefer_a, 59);
    }

    #[test]
    fn single_candidate_profile_is_degenerate_but_valid() {
        let config = SpatialConfig::new(
            vec![0.0],
            Placement::PercentileGrid { voters: 5 },
            DEFAULT_RATING_OFFSET,
        )
        .unwrap();
        let profile = generate_rated_profile(&config).unwrap();
        assert_eq!(profile.candidate_count(), 1);
        assert_eq!(profile.ballot_count(), 5);
    }
}
