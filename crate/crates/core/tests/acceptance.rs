//! Acceptance gate: every golden number and statistical band the library
//! promises, one test (and one printed pass/fail line) per criterion.
//!
//! Fractional expectations are asserted at +/-5e-4 against the published
//! 3-decimal values; counts, rows, and winners are exact; the Monte Carlo
//! bands allow ~4 sigma of binomial noise around the reference counts.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use votelab::ballots::{
    merge_profiles, pairwise_tally, CandidateId, Profile, RankedBallot, RatedBallot, RatingScale,
};
use votelab::criteria::{
    check_no_show, check_scc, check_truncation, check_twin, search_violations, BallotSpace,
    Criterion, SearchSpace, Witness,
};
use votelab::experiments::{run_full_study_with_jobs, StudyConfig};
use votelab::rules::{majority_rule, minimax_winner, mj_winner, LossMetric, Rule, Trace};
use votelab::scenarios;
use votelab::strategy::{
    apply_strategic_voters, discretize_profile, global_rating_extremes, min_flippers, AttackSpec,
};

const TOL: f64 = 5e-4;
const A: CandidateId = CandidateId(0);
const B: CandidateId = CandidateId(1);

fn report<F: FnOnce() + UnwindSafe>(number: u8, title: &str, body: F) {
    match catch_unwind(body) {
        Ok(()) => println!("acceptance criterion {number}: PASS - {title}"),
        Err(cause) => {
            println!("acceptance criterion {number}: FAIL - {title}");
            resume_unwind(cause);
        }
    }
}

fn assert_close(actual: f64, expected: f64, label: &str) {
    assert!(
        (actual - expected).abs() <= TOL,
        "{label}: {actual} vs {expected} (tol {TOL})"
    );
}

fn medians_of(outcome: &votelab::rules::Outcome) -> Vec<f64> {
    match &outcome.trace {
        Trace::Median { medians, .. } => medians.clone(),
        other => panic!("expected a median trace, got {other:?}"),
    }
}

#[test]
fn criterion_1_median_upset_and_majority() {
    report(1, "graded upset: medians 3/4, majority 98-1", || {
        let profile = scenarios::mj_upset();
        // best of three shields the timing check from scheduler noise
        let elapsed = (0..3)
            .map(|_| {
                let start = Instant::now();
                let mj = mj_winner(&profile).unwrap();
                let mr = majority_rule(&profile).unwrap();
                let elapsed = start.elapsed();
                assert_eq!(medians_of(&mj), vec![3.0, 4.0]);
                assert_eq!(mj.winner, Some(B));
                assert_eq!(mr.winner, Some(A));
                assert_eq!(mr.trace, Trace::Majority { votes: vec![98, 1] });
                elapsed
            })
            .min()
            .unwrap();
        assert!(elapsed.as_micros() < 1000, "took {elapsed:?}, budget 1 ms");
    });
}

#[test]
fn criterion_2_approval_upset() {
    report(
        2,
        "approval upset: 5-4 approvals against an 8-1 preference",
        || {
            let outcome = Rule::Approval
                .decide(&scenarios::approval_upset_ballots())
                .unwrap();
            assert_eq!(outcome.winner, Some(A)); // X
            assert_eq!(
                outcome.trace,
                Trace::Approval {
                    approvals: vec![5, 4]
                }
            );
            let tally = pairwise_tally(&scenarios::approval_upset_ratings());
            assert_eq!(tally.count(B, A), 8);
            assert_eq!(tally.count(A, B), 1);
        },
    );
}

#[test]
fn criterion_3_score_upset() {
    report(3, "score upset: totals differ by 1, majority 98-1", || {
        let profile = scenarios::range_upset();
        let rv = Rule::Range.decide(&profile).unwrap();
        assert_eq!(rv.winner, Some(B));
        match &rv.trace {
            Trace::Range { totals, .. } => assert_eq!(totals[1] - totals[0], 1.0),
            other => panic!("wrong trace {other:?}"),
        }
        let mr = majority_rule(&profile).unwrap();
        assert_eq!(mr.winner, Some(A));
        assert_eq!(mr.trace, Trace::Majority { votes: vec![98, 1] });
    });
}

#[test]
fn criterion_4_spatial_sincere_construction() {
    report(
        4,
        "99-voter grid: 69/59/40 splits, means and medians",
        || {
            let config = scenarios::spatial_config();
            let grid = votelab::spatial::percentile_grid(99);
            assert_eq!(grid.positions.iter().filter(|&&v| v < 0.5).count(), 69);

            let profile = scenarios::spatial_profile();
            let tally = pairwise_tally(&profile);
            assert_eq!(tally.count(A, B), 59);
            assert_eq!(tally.count(B, A), 40);
            let margin_pct: f64 = 100.0 * (59.0 - 40.0) / 99.0;
            assert!((margin_pct - 19.2).abs() <= 0.05, "margin {margin_pct}%");

            let rv = Rule::Range.decide(&profile).unwrap();
            assert_eq!(rv.winner, Some(A));
            match &rv.trace {
                Trace::Range { means, .. } => {
                    assert_close(means[0], 2.224, "mean rating of A");
                    assert_close(means[1], 2.125, "mean rating of B");
                }
                other => panic!("wrong trace {other:?}"),
            }
            let mjd = Rule::Mjd.decide(&profile).unwrap();
            assert_eq!(mjd.winner, Some(A));
            let medians = medians_of(&mjd);
            assert_close(medians[0], 2.326, "median rating of A");
            assert_close(medians[1], 2.247, "median rating of B");
            assert_eq!(config.candidate_positions, vec![0.0, 0.5]);
        },
    );
}

#[test]
fn criterion_5_attack_thresholds() {
    report(
        5,
        "six strategists flip both scoring rules, five only the mean",
        || {
            let sincere = scenarios::spatial_profile();

            let six = apply_strategic_voters(&sincere, &AttackSpec::new(B, A, 6)).unwrap();
            let rv6 = Rule::Range.decide(&six).unwrap();
            assert_eq!(rv6.winner, Some(B));
            match &rv6.trace {
                Trace::Range { means, .. } => {
                    assert_close(means[0], 2.166, "post-attack mean of A");
                    assert_close(means[1], 2.208, "post-attack mean of B");
                }
                other => panic!("wrong trace {other:?}"),
            }
            let mjd6 = Rule::Mjd.decide(&six).unwrap();
            assert_eq!(mjd6.winner, Some(B));
            let medians6 = medians_of(&mjd6);
            assert_close(medians6[0], 2.326, "post-attack median of A");
            assert_close(medians6[1], 2.349, "post-attack median of B");

            let five = apply_strategic_voters(&sincere, &AttackSpec::new(B, A, 5)).unwrap();
            assert_eq!(Rule::Range.decide(&five).unwrap().winner, Some(B));
            assert_eq!(Rule::Mjd.decide(&five).unwrap().winner, Some(A));

            assert_eq!(min_flippers(&sincere, Rule::Range, B, A).unwrap(), Some(5));
            assert_eq!(min_flippers(&sincere, Rule::Mjd, B, A).unwrap(), Some(6));
            assert_eq!(min_flippers(&sincere, Rule::Majority, B, A).unwrap(), None);
        },
    );
}

#[test]
fn criterion_6_discretized_tie_break_rows() {
    report(
        6,
        "6-grade tie-break: row 39 sincere, row 41 after the attack",
        || {
            let sincere = scenarios::spatial_profile();
            let (lo, hi) = global_rating_extremes(&sincere).unwrap();

            let graded = discretize_profile(&sincere, 0.5, 6).unwrap();
            let grades: Vec<f64> = graded
                .rated_ballots()
                .unwrap()
                .iter()
                .flat_map(|b| b.ratings.iter().copied())
                .collect();
            assert_eq!(grades.iter().cloned().fold(f64::INFINITY, f64::min), 1.0);
            assert_eq!(
                grades.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                6.0
            );
            assert_eq!(((lo / 0.5).floor() as usize + 1).min(6), 1);
            assert_eq!(((hi / 0.5).floor() as usize + 1).min(6), 6);

            let mj = mj_winner(&graded).unwrap();
            assert_eq!(mj.winner, Some(A));
            match &mj.trace {
                Trace::Median {
                    tie_break: Some(tb),
                    ..
                } => {
                    assert_eq!(tb.median_row, 50);
                    assert_eq!(tb.decisive_row, Some(39));
                    assert_eq!(tb.decisive_values, vec![6.0, 5.0]);
                }
                other => panic!("expected a tie break, got {other:?}"),
            }

            let attacked = apply_strategic_voters(&sincere, &AttackSpec::new(B, A, 6)).unwrap();
            let attacked_graded = discretize_profile(&attacked, 0.5, 6).unwrap();
            let mj_attacked = mj_winner(&attacked_graded).unwrap();
            assert_eq!(mj_attacked.winner, Some(B));
            match &mj_attacked.trace {
                Trace::Median {
                    tie_break: Some(tb),
                    ..
                } => {
                    assert_eq!(tb.decisive_row, Some(41));
                    assert_eq!(tb.decisive_values, vec![5.0, 6.0]);
                }
                other => panic!("expected a tie break, got {other:?}"),
            }
        },
    );
}

#[test]
fn criterion_7_monte_carlo_study() {
    report(
        7,
        "3x5x10000 study: majority beats the median rule everywhere",
        || {
            let config = StudyConfig::default();
            assert_eq!(config.trials_per_cell, 10_000);
            let start = Instant::now();
            let result = run_full_study_with_jobs(&config, 1);
            let elapsed = start.elapsed();
            assert!(
                elapsed.as_secs() < 60,
                "single-threaded study took {elapsed:?}, budget 60 s"
            );
            assert_eq!(result.cells.len(), 15);

            for cell in &result.cells {
                assert!(
                    cell.mr_only > cell.mjd_only,
                    "cell ({}, {}): {} vs {}",
                    cell.n_voters,
                    cell.b_pos,
                    cell.mr_only,
                    cell.mjd_only
                );
                let total =
                    cell.mr_only + cell.mjd_only + cell.both_a + cell.neither_a + cell.tie_trials;
                assert_eq!(total as usize, cell.trials);
            }

            let wide = result
                .cells
                .iter()
                .find(|c| c.n_voters == 95 && c.b_pos == 0.5)
                .unwrap();
            assert!(wide.ratio() >= 10.0, "ratio {}", wide.ratio());
            assert!(
                (1300..=1800).contains(&wide.mr_only),
                "mr_only {}",
                wide.mr_only
            );
            assert!(
                (50..=150).contains(&wide.mjd_only),
                "mjd_only {}",
                wide.mjd_only
            );

            let narrow = result
                .cells
                .iter()
                .find(|c| c.n_voters == 15 && c.b_pos == 0.1)
                .unwrap();
            assert!(
                (1500..=2400).contains(&narrow.mr_only),
                "mr_only {}",
                narrow.mr_only
            );
            assert!(
                (1500..=2400).contains(&narrow.mjd_only),
                "mjd_only {}",
                narrow.mjd_only
            );
            let excess = (narrow.mr_only as f64 - narrow.mjd_only as f64) / narrow.mjd_only as f64;
            assert!(
                (0.10..=0.40).contains(&excess),
                "relative excess {:.3}",
                excess
            );
        },
    );
}

#[test]
fn criterion_8_league_subset_choice_violation() {
    report(
        8,
        "league: champion A, but C after the runner-up withdraws",
        || {
            let outcome = minimax_winner(&scenarios::league_tally(), LossMetric::Margin);
            assert_eq!(outcome.winner, Some(A));
            match &outcome.trace {
                Trace::Minimax { largest_losses, .. } => {
                    assert_eq!(largest_losses, &vec![1, 9, 9]);
                }
                other => panic!("wrong trace {other:?}"),
            }

            let report = check_scc(
                &scenarios::league_profile(),
                Rule::Minimax(LossMetric::Margin),
            )
            .unwrap();
            assert!(report.violated);
            match report.witness.as_ref().unwrap() {
                Witness::CandidateRemoval {
                    removed,
                    before,
                    after,
                    ..
                } => {
                    assert_eq!(*removed, B);
                    assert_eq!(before.winner, Some(A));
                    // with B gone, C sits at index 1; the recount crowns C
                    assert_eq!(after.winner, Some(CandidateId(1)));
                }
                other => panic!("unexpected witness {other:?}"),
            }
            assert!(report.replay().unwrap());
        },
    );
}

// --- criterion 9: the property battery -------------------------------------

fn random_tieless_two_candidate(rng: &mut ChaCha8Rng) -> Profile {
    let voters = rng.random_range(1..=15);
    let ballots = (0..voters)
        .map(|_| {
            if rng.random_bool(0.5) {
                RatedBallot::new(vec![1.0, 0.0])
            } else {
                RatedBallot::new(vec![0.0, 1.0])
            }
        })
        .collect();
    Profile::rated(RatingScale::Integer { min: 0, max: 1 }, ballots).unwrap()
}

fn random_graded(rng: &mut ChaCha8Rng, candidates: usize, grades: usize) -> Profile {
    let voters = rng.random_range(1..=9);
    let ballots = (0..voters)
        .map(|_| {
            RatedBallot::new(
                (0..candidates)
                    .map(|_| rng.random_range(1..=grades) as f64)
                    .collect(),
            )
        })
        .collect();
    Profile::rated(RatingScale::graded_numeric(grades), ballots).unwrap()
}

fn random_ranked(rng: &mut ChaCha8Rng, candidates: usize, voters: usize) -> Profile {
    use rand::seq::SliceRandom;
    let ballots = (0..voters)
        .map(|_| {
            let mut order: Vec<usize> = (0..candidates).collect();
            order.shuffle(rng);
            order.truncate(rng.random_range(0..=candidates));
            RankedBallot::from_indices(&order)
        })
        .collect();
    Profile::ranked(candidates, ballots).unwrap()
}

#[test]
fn criterion_9_property_battery() {
    report(
        9,
        "rule laws: consistency, invariances, additivity, soundness",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);

            // Condorcet consistency of minimax, exhaustive <=4 candidates x <=5 voters.
            for c in 2..=4 {
                for v in 2..=5 {
                    for profile in votelab::criteria::strict_ranked_profiles(c, v) {
                        let tally = pairwise_tally(&profile);
                        if let Some(w) = tally.condorcet_winner() {
                            for metric in [LossMetric::Margin, LossMetric::WinningVotes] {
                                assert_eq!(minimax_winner(&tally, metric).winner, Some(w));
                            }
                        }
                    }
                }
            }

            // Two-candidate reduction: minimax agrees with majority rule.
            for _ in 0..1000 {
                let profile = random_tieless_two_candidate(&mut rng);
                let mr = majority_rule(&profile).unwrap().winning_set();
                let tally = pairwise_tally(&profile);
                for metric in [LossMetric::Margin, LossMetric::WinningVotes] {
                    assert_eq!(minimax_winner(&tally, metric).winning_set(), mr);
                }
            }

            // Grade relabeling leaves the median rule's outcome alone.
            for _ in 0..1000 {
                let profile = random_graded(&mut rng, 3, 5);
                let mut map: Vec<i64> = (1..=5).map(|g| g + rng.random_range(0..=3)).collect();
                for i in 1..map.len() {
                    map[i] = map[i].max(map[i - 1] + 1);
                }
                let relabeled = Profile::rated(
                    RatingScale::Integer {
                        min: 0,
                        max: map[4],
                    },
                    profile
                        .rated_ballots()
                        .unwrap()
                        .iter()
                        .map(|b| {
                            RatedBallot::new(
                                b.ratings
                                    .iter()
                                    .map(|&g| map[g as usize - 1] as f64)
                                    .collect(),
                            )
                        })
                        .collect(),
                )
                .unwrap();
                assert_eq!(
                    mj_winner(&profile).unwrap().winning_set(),
                    mj_winner(&relabeled).unwrap().winning_set()
                );
            }

            // Mean-rule argmax invariance under shift and positive rescale.
            for _ in 0..1000 {
                let profile = random_graded(&mut rng, 4, 5);
                let shift = rng.random_range(-3..=3);
                let scale = rng.random_range(1..=4);
                let mapped = Profile::rated(
                    RatingScale::Integer {
                        min: shift,
                        max: scale * 5 + shift,
                    },
                    profile
                        .rated_ballots()
                        .unwrap()
                        .iter()
                        .map(|b| {
                            RatedBallot::new(
                                b.ratings
                                    .iter()
                                    .map(|&r| (scale * r as i64 + shift) as f64)
                                    .collect(),
                            )
                        })
                        .collect(),
                )
                .unwrap();
                assert_eq!(
                    Rule::Range.decide(&profile).unwrap().winning_set(),
                    Rule::Range.decide(&mapped).unwrap().winning_set()
                );
            }

            // Pairwise tallies add entrywise across merged profiles.
            for _ in 0..1000 {
                let c = rng.random_range(2..=4);
                let v1 = rng.random_range(1..=6);
                let v2 = rng.random_range(1..=6);
                let p1 = random_ranked(&mut rng, c, v1);
                let p2 = random_ranked(&mut rng, c, v2);
                let merged = merge_profiles(&p1, &p2).unwrap();
                assert_eq!(
                    pairwise_tally(&merged),
                    pairwise_tally(&p1)
                        .merged_with(&pairwise_tally(&p2))
                        .unwrap()
                );
            }

            // The polarization attack never moves the attacked two-way race.
            for _ in 0..1000 {
                let profile = random_tieless_two_candidate(&mut rng);
                let sympathizers = profile
                    .rated_ballots()
                    .unwrap()
                    .iter()
                    .filter(|b| b.ratings[1] > b.ratings[0])
                    .count();
                let k = rng.random_range(0..=sympathizers);
                let attacked = apply_strategic_voters(&profile, &AttackSpec::new(B, A, k)).unwrap();
                assert_eq!(
                    majority_rule(&profile).unwrap().winning_set(),
                    majority_rule(&attacked).unwrap().winning_set()
                );
            }

            // Found witnesses replay exactly.
            let wv = Rule::Minimax(LossMetric::WinningVotes);
            let space = SearchSpace {
                candidate_counts: vec![4],
                voter_counts: vec![6, 8, 10, 12],
                ballots: BallotSpace::TruncatedRanked,
            };
            let mut replayed = 0;
            for (criterion, seed) in [
                (Criterion::NoShow, 0u64),
                (Criterion::Twin, 0),
                (Criterion::Truncation, 0),
            ] {
                if let Some(found) = search_violations(wv, criterion, &space, seed, 10_000).unwrap()
                {
                    assert!(found.replay().unwrap());
                    replayed += 1;
                }
            }
            assert!(replayed >= 2, "only {replayed} witnesses replayed");

            // Minimax abstention-style witnesses need a Condorcet paradox:
            // the exhaustive strict space is clean, found witnesses are cyclic.
            for v in 2..=5 {
                for profile in votelab::criteria::strict_ranked_profiles(3, v) {
                    let paradox = pairwise_tally(&profile).condorcet_winner().is_none();
                    for metric in [LossMetric::Margin, LossMetric::WinningVotes] {
                        let rule = Rule::Minimax(metric);
                        assert!(!check_no_show(&profile, rule).unwrap().violated || paradox);
                        assert!(!check_twin(&profile, rule).unwrap().violated || paradox);
                        assert!(!check_truncation(&profile, rule).unwrap().violated || paradox);
                    }
                }
            }
            let found = search_violations(wv, Criterion::NoShow, &space, 0, 10_000)
                .unwrap()
                .expect("the no-show search finds a witness at this seed");
            match found.witness.as_ref().unwrap() {
                Witness::Abstention { profile, .. } => {
                    let p = profile.to_profile().unwrap();
                    assert_eq!(pairwise_tally(&p).condorcet_winner(), None);
                }
                other => panic!("unexpected witness {other:?}"),
            }
        },
    );
}
