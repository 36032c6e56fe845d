//! Ballot file formats.
//!
//! CSV: a header row of candidate names, then one row per ballot. Rated
//! files hold one number per candidate; ranked files hold candidate names in
//! preference order, with trailing blanks for truncated ballots. JSON
//! mirrors the same structure with an explicit `scale` object and optional
//! per-ballot `weights`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::ballots::{
    display_name, CandidateId, Profile, ProfileError, RankedBallot, RatedBallot, RatingScale,
};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("document error: {0}")]
    Document(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Ballot lists as they appear on disk; ranked ballots use candidate names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentBallots {
    Rated(Vec<Vec<f64>>),
    Ranked(Vec<Vec<String>>),
}

/// Serializable form of a profile plus its candidate display names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub candidates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scale: Option<RatingScale>,
    pub ballots: DocumentBallots,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights: Option<Vec<u64>>,
}

impl ProfileDocument {
    /// Capture a profile, generating A, B, C, ... names when none are given.
    pub fn from_profile(profile: &Profile, names: Option<Vec<String>>) -> Self {
        let candidates =
            names.unwrap_or_else(|| (0..profile.candidate_count()).map(display_name).collect());
        let ballots = match profile.rated_ballots() {
            Some(rated) => {
                DocumentBallots::Rated(rated.iter().map(|b| b.ratings.clone()).collect())
            }
            None => DocumentBallots::Ranked(
                profile
                    .ranked_ballots()
                    .unwrap()
                    .iter()
                    .map(|b| {
                        b.ranking
                            .iter()
                            .map(|&CandidateId(c)| candidates[c].clone())
                            .collect()
                    })
                    .collect(),
            ),
        };
        let weights = if profile.weights().iter().all(|&w| w == 1) {
            None
        } else {
            Some(profile.weights().to_vec())
        };
        ProfileDocument {
            candidates,
            scale: profile.scale().cloned(),
            ballots,
            weights,
        }
    }

    pub fn to_profile(&self) -> Result<Profile, IoError> {
        let c = self.candidates.len();
        if c == 0 {
            return Err(IoError::Document("no candidates".into()));
        }
        for (i, a) in self.candidates.iter().enumerate() {
            if a.is_empty() {
                return Err(IoError::Document(format!(
                    "candidate {i} has an empty name"
                )));
            }
            if self.candidates[..i].contains(a) {
                return Err(IoError::Document(format!("duplicate candidate name {a:?}")));
            }
        }
        match &self.ballots {
            DocumentBallots::Rated(rows) => {
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != c {
                        return Err(IoError::Document(format!(
                            "ballot {i}: expected {c} ratings, found {}",
                            row.len()
                        )));
                    }
                }
                let scale = match &self.scale {
                    Some(s) => s.clone(),
                    None => infer_scale(rows),
                };
                let ballots = rows.iter().cloned().map(RatedBallot::new).collect();
                Ok(match &self.weights {
                    Some(w) => Profile::rated_weighted(scale, ballots, w.clone())?,
                    None => Profile::rated(scale, ballots)?,
                })
            }
            DocumentBallots::Ranked(rows) => {
                let mut ballots = Vec::with_capacity(rows.len());
                for (i, row) in rows.iter().enumerate() {
                    let mut ranking = Vec::with_capacity(row.len());
                    for name in row {
                        let idx =
                            self.candidates
                                .iter()
                                .position(|n| n == name)
                                .ok_or_else(|| {
                                    IoError::Document(format!(
                                        "ballot {i}: unknown candidate {name:?}"
                                    ))
                                })?;
                        ranking.push(CandidateId(idx));
                    }
                    ballots.push(RankedBallot { ranking });
                }
                Ok(match &self.weights {
                    Some(w) => Profile::ranked_weighted(c, ballots, w.clone())?,
                    None => Profile::ranked(c, ballots)?,
                })
            }
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Parse a ballot CSV. The kind is detected from the first data row:
    /// a full row of numbers is a rated ballot, anything else is ranked.
    /// `scale` overrides the inferred scale for rated files.
    pub fn read_csv<R: Read>(reader: R, scale: Option<RatingScale>) -> Result<Self, IoError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let candidates: Vec<String> = csv_reader
            .headers()?
            .iter()
            .map(|h| h.to_string())
            .collect();
        let c = candidates.len();

        let mut rated_rows: Vec<Vec<f64>> = Vec::new();
        let mut ranked_rows: Vec<Vec<String>> = Vec::new();
        let mut kind: Option<bool> = None; // Some(true) = rated
        for (i, record) in csv_reader.records().enumerate() {
            let line = i + 2;
            let record = record?;
            let cells: Vec<&str> = record.iter().collect();
            if cells.iter().all(|s| s.is_empty()) {
                continue;
            }
            let looks_rated = cells.len() == c && cells.iter().all(|s| s.parse::<f64>().is_ok());
            let is_rated = *kind.get_or_insert(looks_rated);
            if is_rated {
                if !looks_rated {
                    return Err(IoError::Malformed {
                        line,
                        message: format!("expected {c} numeric ratings"),
                    });
                }
                rated_rows.push(cells.iter().map(|s| s.parse().unwrap()).collect());
            } else {
                if cells.len() > c {
                    return Err(IoError::Malformed {
                        line,
                        message: format!("more entries than the {c} candidates"),
                    });
                }
                let mut names = Vec::new();
                let mut seen_blank = false;
                for cell in &cells {
                    if cell.is_empty() {
                        seen_blank = true;
                        continue;
                    }
                    if seen_blank {
                        return Err(IoError::Malformed {
                            line,
                            message: "blank entry before a ranked candidate".into(),
                        });
                    }
                    if !candidates.iter().any(|n| n == cell) {
                        return Err(IoError::Malformed {
                            line,
                            message: format!("unknown candidate {cell:?}"),
                        });
                    }
                    if names.iter().any(|n: &String| n == cell) {
                        return Err(IoError::Malformed {
                            line,
                            message: format!("candidate {cell:?} listed twice"),
                        });
                    }
                    names.push(cell.to_string());
                }
                ranked_rows.push(names);
            }
        }

        let ballots = match kind {
            Some(true) => DocumentBallots::Rated(rated_rows),
            Some(false) => DocumentBallots::Ranked(ranked_rows),
            None => {
                return Err(IoError::Malformed {
                    line: 2,
                    message: "no ballots in file".into(),
                })
            }
        };
        let scale = match (&ballots, scale) {
            (DocumentBallots::Rated(rows), None) => Some(infer_scale(rows)),
            (_, s) => s,
        };
        Ok(ProfileDocument {
            candidates,
            scale,
            ballots,
            weights: None,
        })
    }

    /// Write the ballots back out as CSV; ranked rows are padded with
    /// trailing blanks to stay rectangular.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), IoError> {
        let mut csv_writer = csv::Writer::from_writer(writer);
        csv_writer.write_record(&self.candidates)?;
        match &self.ballots {
            DocumentBallots::Rated(rows) => {
                for row in rows {
                    csv_writer.write_record(row.iter().map(|r| format_rating(*r)))?;
                }
            }
            DocumentBallots::Ranked(rows) => {
                let c = self.candidates.len();
                for row in rows {
                    let mut record: Vec<&str> = row.iter().map(String::as_str).collect();
                    record.resize(c, "");
                    csv_writer.write_record(&record)?;
                }
            }
        }
        csv_writer.flush()?;
        Ok(())
    }
}

fn format_rating(r: f64) -> String {
    if r.fract() == 0.0 && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else {
        format!("{r}")
    }
}

/// Integer scale over the attained range when every rating is whole,
/// otherwise a continuous scale; a constant file widens to a unit interval.
fn infer_scale(rows: &[Vec<f64>]) -> RatingScale {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut integral = true;
    for row in rows {
        for &r in row {
            lo = lo.min(r);
            hi = hi.max(r);
            integral &= r.fract() == 0.0;
        }
    }
    if lo >= hi {
        lo -= 0.5;
        hi += 0.5;
        if integral {
            return RatingScale::Integer {
                min: (lo - 0.5) as i64,
                max: (hi + 0.5) as i64,
            };
        }
    }
    if integral {
        RatingScale::Integer {
            min: lo as i64,
            max: hi as i64,
        }
    } else {
        RatingScale::Continuous { min: lo, max: hi }
    }
}
