//! End-to-end driver: encode a batch, push it through the stack, pop rows in
//! reverse, run every trajectory's PE, and write results back through the
//! second port.

use crate::error::{Error, Result};
use crate::gae::{GaeParams, Trajectory};
use crate::hw::{simulate_pe, CycleReport, PipelineConfig};
use crate::mem::{LayoutConfig, StackMemory};
use crate::quant::{QuantScheme, StreamCodec};
use crate::stats::{block_stats, dynamic_standardize, RunningStats};

/// How streams are coded on their way through the banks.
#[derive(Debug, Clone, PartialEq)]
pub enum PipelineCoding {
    /// Words carry full-precision bit patterns; width accounting still follows
    /// the layout.
    FullPrecision,
    /// Rewards are dynamically standardized and quantized (and stay
    /// standardized on decode); values are block-coded over the whole batch.
    /// Results are block-coded with the `writeback` scheme on the way back.
    Quantized {
        input: QuantScheme,
        writeback: QuantScheme,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackPipelineConfig {
    pub layout: LayoutConfig,
    pub pipeline: PipelineConfig,
    pub params: GaeParams,
    pub coding: PipelineCoding,
}

/// Outcome of a full pass, with everything needed to audit it: decoded
/// results, the exact streams the PEs consumed, the write-back codecs, the
/// timing summary, and the memory (banks plus access trace).
#[derive(Debug)]
pub struct StackPipelineRun {
    /// Advantages decoded from the result bank, `[trajectory][timestep]`.
    pub advantages: Vec<Vec<f64>>,
    /// Rewards-to-go decoded from the result bank.
    pub rtgs: Vec<Vec<f64>>,
    /// Reward streams as the PEs saw them (after any dequantization).
    pub pe_rewards: Vec<Vec<f64>>,
    /// Value streams as the PEs saw them.
    pub pe_values: Vec<Vec<f64>>,
    pub advantage_codec: StreamCodec,
    pub rtg_codec: StreamCodec,
    pub cycle_report: CycleReport,
    pub memory: StackMemory,
}

/// Runs `trajs` (one per configured trajectory slot, all of the layout's
/// length) through push, pop, PE compute, and write-back.
pub fn run_stack_pipeline(
    trajs: &[Trajectory],
    cfg: &StackPipelineConfig,
) -> Result<StackPipelineRun> {
    let layout = &cfg.layout;
    if trajs.len() != layout.num_traj {
        return Err(Error::LengthMismatch {
            context: "stack pipeline trajectories",
            left: trajs.len(),
            right: layout.num_traj,
        });
    }
    for (i, traj) in trajs.iter().enumerate() {
        if traj.len() != layout.timesteps {
            return Err(Error::Invalid {
                context: "stack pipeline",
                detail: format!(
                    "trajectory {i} has {} timesteps, layout expects {}",
                    traj.len(),
                    layout.timesteps
                ),
            });
        }
    }

    let (reward_codec, value_codec, reward_words, value_words) = encode_batch(trajs, cfg)?;

    // Collection phase: one timestep row per cycle.
    let mut memory = StackMemory::new(*layout);
    let steps = layout.timesteps;
    let mut row_r = vec![0u64; layout.num_traj];
    let mut row_v = vec![0u64; layout.num_traj];
    for t in 0..steps {
        for i in 0..layout.num_traj {
            row_r[i] = reward_words[i][t];
            row_v[i] = value_words[i][t];
        }
        memory.push_timestep(t, &row_r, &row_v)?;
    }

    // Advantage phase: pop rows at the PE issue rate; writes trail by the
    // pipeline fill.
    memory.set_timing(
        cfg.pipeline.initiation_interval(),
        cfg.pipeline.fill_cycles(),
    )?;
    let mut popped_r = vec![Vec::new(); steps];
    let mut popped_v = vec![Vec::new(); steps];
    for _ in 0..steps {
        let (t, r, v) = memory.pop_timestep()?;
        popped_r[t] = r;
        popped_v[t] = v;
    }

    // All rows of the array process in lockstep, one PE per trajectory.
    let mut advantages = Vec::with_capacity(layout.num_traj);
    let mut rtgs = Vec::with_capacity(layout.num_traj);
    let mut pe_rewards = Vec::with_capacity(layout.num_traj);
    let mut pe_values = Vec::with_capacity(layout.num_traj);
    let mut cycle_report = None;
    for (i, traj) in trajs.iter().enumerate() {
        let words_r: Vec<u64> = (0..steps).map(|t| popped_r[t][i]).collect();
        let words_v: Vec<u64> = (0..steps).map(|t| popped_v[t][i]).collect();
        let (result, report) = simulate_pe(
            &words_r,
            &words_v,
            &reward_codec,
            &value_codec,
            traj.bootstrap_value(),
            &cfg.params,
            &cfg.pipeline,
        )?;
        pe_rewards.push(
            words_r
                .iter()
                .map(|&w| reward_codec.decode(w))
                .collect::<Result<_>>()?,
        );
        pe_values.push(
            words_v
                .iter()
                .map(|&w| value_codec.decode(w))
                .collect::<Result<_>>()?,
        );
        advantages.push(result.advantages);
        rtgs.push(result.rtgs);
        cycle_report.get_or_insert(report);
    }
    let cycle_report = cycle_report.expect("at least one trajectory");

    // Result write-back, coded over the whole batch.
    let (advantage_codec, rtg_codec) = writeback_codecs(&advantages, &rtgs, cfg)?;
    for t in (0..steps).rev() {
        for i in 0..layout.num_traj {
            row_r[i] = advantage_codec.encode(advantages[i][t])?;
            row_v[i] = rtg_codec.encode(rtgs[i][t])?;
        }
        memory.write_results(t, &row_r, &row_v)?;
    }

    // Decode the banks back out; this is what a consumer of the results sees.
    let mut decoded_adv = vec![vec![0.0; steps]; layout.num_traj];
    let mut decoded_rtg = vec![vec![0.0; steps]; layout.num_traj];
    for t in 0..steps {
        for i in 0..layout.num_traj {
            decoded_adv[i][t] = advantage_codec.decode(memory.advantage_bank()[t][i])?;
            decoded_rtg[i][t] = rtg_codec.decode(memory.rtg_bank()[t][i])?;
        }
    }

    Ok(StackPipelineRun {
        advantages: decoded_adv,
        rtgs: decoded_rtg,
        pe_rewards,
        pe_values,
        advantage_codec,
        rtg_codec,
        cycle_report,
        memory,
    })
}

type EncodedBatch = (StreamCodec, StreamCodec, Vec<Vec<u64>>, Vec<Vec<u64>>);

fn encode_batch(trajs: &[Trajectory], cfg: &StackPipelineConfig) -> Result<EncodedBatch> {
    match &cfg.coding {
        PipelineCoding::FullPrecision => {
            let reward_words = trajs
                .iter()
                .map(|t| t.rewards().iter().map(|r| r.to_bits()).collect())
                .collect();
            let value_words = trajs
                .iter()
                .map(|t| t.values().iter().map(|v| v.to_bits()).collect())
                .collect();
            Ok((
                StreamCodec::Float,
                StreamCodec::Float,
                reward_words,
                value_words,
            ))
        }
        PipelineCoding::Quantized { input, .. } => {
            // Rewards: one running-statistics stream over the whole batch,
            // trajectory-major.
            let reward_codec = StreamCodec::Quantized(*input);
            let mut stats = RunningStats::new();
            let mut reward_words = Vec::with_capacity(trajs.len());
            for traj in trajs {
                let (next, standardized) = dynamic_standardize(stats, traj.rewards())?;
                stats = next;
                reward_words.push(
                    standardized
                        .iter()
                        .map(|&z| reward_codec.encode(z))
                        .collect::<Result<Vec<u64>>>()?,
                );
            }

            // Values: one block over the whole batch.
            let all_values: Vec<f64> = trajs
                .iter()
                .flat_map(|t| t.values().iter().copied())
                .collect();
            let value_codec = StreamCodec::QuantizedBlock(*input, block_stats(&all_values)?);
            let value_words = trajs
                .iter()
                .map(|traj| {
                    traj.values()
                        .iter()
                        .map(|&v| value_codec.encode(v))
                        .collect::<Result<Vec<u64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((reward_codec, value_codec, reward_words, value_words))
        }
    }
}

fn writeback_codecs(
    advantages: &[Vec<f64>],
    rtgs: &[Vec<f64>],
    cfg: &StackPipelineConfig,
) -> Result<(StreamCodec, StreamCodec)> {
    match &cfg.coding {
        PipelineCoding::FullPrecision => Ok((StreamCodec::Float, StreamCodec::Float)),
        PipelineCoding::Quantized { writeback, .. } => {
            let flat_adv: Vec<f64> = advantages.iter().flatten().copied().collect();
            let flat_rtg: Vec<f64> = rtgs.iter().flatten().copied().collect();
            Ok((
                StreamCodec::QuantizedBlock(*writeback, block_stats(&flat_adv)?),
                StreamCodec::QuantizedBlock(*writeback, block_stats(&flat_rtg)?),
            ))
        }
    }
}
