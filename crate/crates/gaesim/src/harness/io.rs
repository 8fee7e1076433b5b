//! Trajectory input files and report serialization.
//!
//! The input format is a JSON array of
//! `{"rewards": [...], "values": [...], "bootstrap": number}` objects.
//! Malformed JSON is rejected with the line and column of the problem;
//! semantically invalid trajectories are rejected with their index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gae::{AdvantageResult, Trajectory};

/// Wire form of one trajectory. `bootstrap` defaults to 0 (terminal end).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub rewards: Vec<f64>,
    pub values: Vec<f64>,
    #[serde(default)]
    pub bootstrap: f64,
}

impl From<&Trajectory> for TrajectoryRecord {
    fn from(traj: &Trajectory) -> Self {
        Self {
            rewards: traj.rewards().to_vec(),
            values: traj.values().to_vec(),
            bootstrap: traj.bootstrap_value(),
        }
    }
}

/// Parses and validates a trajectory input document.
pub fn parse_trajectories(text: &str) -> Result<Vec<Trajectory>> {
    let records: Vec<TrajectoryRecord> = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            Trajectory::new(r.rewards, r.values, r.bootstrap).map_err(|e| Error::Invalid {
                context: "trajectory file",
                detail: format!("trajectory {i}: {e}"),
            })
        })
        .collect()
}

/// Per-trajectory advantages and rewards-to-go, as emitted by the `gae`
/// subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaeOutput {
    pub gamma: f64,
    pub lambda: f64,
    pub trajectories: Vec<GaeTrajectoryOutput>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaeTrajectoryOutput {
    pub index: usize,
    pub advantages: Vec<f64>,
    pub rewards_to_go: Vec<f64>,
}

impl GaeOutput {
    pub fn new(gamma: f64, lambda: f64, results: Vec<AdvantageResult>) -> Self {
        Self {
            gamma,
            lambda,
            trajectories: results
                .into_iter()
                .enumerate()
                .map(|(index, r)| GaeTrajectoryOutput {
                    index,
                    advantages: r.advantages,
                    rewards_to_go: r.rtgs,
                })
                .collect(),
        }
    }

    /// Long-form CSV: one row per (trajectory, timestep).
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        write_csv_record(
            &mut writer,
            &["trajectory", "timestep", "advantage", "reward_to_go"],
        )?;
        for traj in &self.trajectories {
            for (t, (adv, rtg)) in traj.advantages.iter().zip(&traj.rewards_to_go).enumerate() {
                write_csv_record(
                    &mut writer,
                    &[
                        traj.index.to_string(),
                        t.to_string(),
                        adv.to_string(),
                        rtg.to_string(),
                    ],
                )?;
            }
        }
        finish_csv(writer)
    }
}

pub(crate) fn write_csv_record<W: std::io::Write, S: AsRef<[u8]>>(
    writer: &mut csv::Writer<W>,
    record: &[S],
) -> Result<()> {
    writer.write_record(record).map_err(|e| Error::Invalid {
        context: "csv output",
        detail: e.to_string(),
    })
}

pub(crate) fn finish_csv(writer: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = writer.into_inner().map_err(|e| Error::Invalid {
        context: "csv output",
        detail: e.to_string(),
    })?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid {
        context: "csv output",
        detail: e.to_string(),
    })
}

/// Rows-of-strings CSV assembly for the report types.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    write_csv_record(&mut writer, header)?;
    for row in rows {
        write_csv_record(&mut writer, row)?;
    }
    finish_csv(writer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_valid_document() {
        let text = r#"[
            {"rewards": [1.0, 2.0], "values": [0.5, 0.25], "bootstrap": 0.1},
            {"rewards": [3.0], "values": [1.5]}
        ]"#;
        let trajs = parse_trajectories(text).unwrap();
        assert_eq!(trajs.len(), 2);
        assert_eq!(trajs[0].bootstrap_value(), 0.1);
        assert_eq!(trajs[1].bootstrap_value(), 0.0);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_trajectories("[{\"rewards\": [1.0,]}]").unwrap_err();
        let Error::Parse { line, column, .. } = err else {
            panic!("expected parse error, got {err}");
        };
        assert_eq!(line, 1);
        assert!(column > 0);
    }

    #[test]
    fn semantic_errors_name_the_trajectory() {
        let text = r#"[
            {"rewards": [1.0], "values": [0.5]},
            {"rewards": [1.0, 2.0], "values": [0.5]}
        ]"#;
        let err = parse_trajectories(text).unwrap_err();
        assert!(err.to_string().contains("trajectory 1"), "{err}");
    }

    #[test]
    fn record_round_trips_through_a_trajectory() {
        let traj = Trajectory::new(vec![1.0, 2.0], vec![3.0, 4.0], 5.0).unwrap();
        let record = TrajectoryRecord::from(&traj);
        let json = serde_json::to_string(&vec![record]).unwrap();
        let back = parse_trajectories(&json).unwrap();
        assert_eq!(back[0], traj);
    }

    #[test]
    fn gae_csv_has_one_row_per_timestep() {
        let output = GaeOutput::new(
            0.99,
            0.95,
            vec![AdvantageResult {
                advantages: vec![1.0, 2.0],
                rtgs: vec![3.0, 4.0],
            }],
        );
        let csv = output.to_csv().unwrap();
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "trajectory,timestep,advantage,reward_to_go");
        assert_eq!(lines[1], "0,0,1,3");
    }
}
