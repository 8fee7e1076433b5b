//! FILO stack memory over dual-port banks, with a per-cycle access trace.
//!
//! Rows (one timestep across all trajectories) are pushed during collection
//! and popped in reverse during the advantage pass. Reads go out on port A;
//! result writes land on port B, stamped `write_delay` cycles after the pop
//! that produced them — the separation that keeps simultaneous read and
//! in-place write of the same bank conflict-free.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mem::LayoutConfig;

/// Logical banks. In-place layouts reuse `Rewards`/`Values` for results;
/// otherwise results go to their own banks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bank {
    Rewards,
    Values,
    Advantages,
    RewardsToGo,
}

/// The two ports of a dual-port block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Port {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AccessKind {
    Read,
    Write,
}

/// One port-level access: 4 bytes (or the row remainder) moving through one
/// port of one block in one cycle. Rows are striped across blocks 4 bytes at
/// a time, so a full-row access emits one record per touched block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessRecord {
    pub cycle: u64,
    pub bank: Bank,
    pub block: u32,
    pub port: Port,
    pub addr: u32,
    pub kind: AccessKind,
    pub bytes: u32,
}

/// More than one access landed on the same (block, port) in one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortViolation {
    pub cycle: u64,
    pub bank: Bank,
    pub block: u32,
    pub port: Port,
    pub accesses: u32,
}

/// Scans a trace for double-booked ports. An empty result means the schedule
/// is realizable on dual-port blocks.
pub fn port_conflict_check(trace: &[AccessRecord]) -> Vec<PortViolation> {
    let mut counts: BTreeMap<(u64, Bank, u32, Port), u32> = BTreeMap::new();
    for record in trace {
        *counts
            .entry((record.cycle, record.bank, record.block, record.port))
            .or_insert(0) += 1;
    }
    counts
        .into_iter()
        .filter(|&(_, accesses)| accesses > 1)
        .map(|((cycle, bank, block, port), accesses)| PortViolation {
            cycle,
            bank,
            block,
            port,
            accesses,
        })
        .collect()
}

/// Total bytes moved per cycle, for steady-state bandwidth accounting.
pub fn bytes_by_cycle(trace: &[AccessRecord]) -> BTreeMap<u64, u64> {
    let mut totals = BTreeMap::new();
    for record in trace {
        *totals.entry(record.cycle).or_insert(0) += u64::from(record.bytes);
    }
    totals
}

/// Reward and value banks organized `[timestep][trajectory]`, with a stack
/// pointer enforcing FILO order and a trace of every port-level access.
#[derive(Debug, Clone)]
pub struct StackMemory {
    layout: LayoutConfig,
    rewards: Vec<Vec<u64>>,
    values: Vec<Vec<u64>>,
    result_adv: Vec<Vec<u64>>,
    result_rtg: Vec<Vec<u64>>,
    depth: usize,
    pop_cycle: Vec<Option<u64>>,
    clock: u64,
    issue_interval: u64,
    write_delay: u64,
    trace: Vec<AccessRecord>,
}

impl StackMemory {
    pub fn new(layout: LayoutConfig) -> Self {
        let empty_row = vec![0u64; layout.num_traj];
        let result_rows = if layout.in_place { 0 } else { layout.timesteps };
        Self {
            layout,
            rewards: vec![empty_row.clone(); layout.timesteps],
            values: vec![empty_row.clone(); layout.timesteps],
            result_adv: vec![empty_row.clone(); result_rows],
            result_rtg: vec![empty_row; result_rows],
            depth: 0,
            pop_cycle: vec![None; layout.timesteps],
            clock: 0,
            issue_interval: 1,
            write_delay: 1,
            trace: Vec::new(),
        }
    }

    /// Sets the pop cadence and the read-to-writeback lag (normally the PE's
    /// initiation interval and fill depth).
    pub fn set_timing(&mut self, issue_interval: u64, write_delay: u64) -> Result<()> {
        if issue_interval == 0 {
            return Err(Error::Invalid {
                context: "stack timing",
                detail: "issue interval must be at least 1 cycle".to_string(),
            });
        }
        self.issue_interval = issue_interval;
        self.write_delay = write_delay;
        Ok(())
    }

    pub fn layout(&self) -> &LayoutConfig {
        &self.layout
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn trace(&self) -> &[AccessRecord] {
        &self.trace
    }

    pub fn reward_bank(&self) -> &[Vec<u64>] {
        &self.rewards
    }

    pub fn value_bank(&self) -> &[Vec<u64>] {
        &self.values
    }

    /// Bank holding advantage results after write-back.
    pub fn advantage_bank(&self) -> &[Vec<u64>] {
        if self.layout.in_place {
            &self.rewards
        } else {
            &self.result_adv
        }
    }

    /// Bank holding rewards-to-go results after write-back.
    pub fn rtg_bank(&self) -> &[Vec<u64>] {
        if self.layout.in_place {
            &self.values
        } else {
            &self.result_rtg
        }
    }

    /// Occupied bytes at full depth, per the layout accounting.
    pub fn peak_bytes(&self) -> u64 {
        self.layout.storage_bytes()
    }

    /// Appends one timestep row to both banks. `t` must equal the current
    /// depth and stay within capacity.
    pub fn push_timestep(
        &mut self,
        t: usize,
        reward_codes: &[u64],
        value_codes: &[u64],
    ) -> Result<()> {
        if self.depth >= self.layout.timesteps {
            return Err(Error::StackOverflow {
                capacity: self.layout.timesteps,
            });
        }
        if t != self.depth {
            return Err(Error::OutOfOrderPush {
                expected: self.depth,
                got: t,
            });
        }
        self.check_row("stack push", reward_codes, value_codes)?;
        self.rewards[t].copy_from_slice(reward_codes);
        self.values[t].copy_from_slice(value_codes);
        let cycle = self.clock;
        self.trace_row(
            cycle,
            Bank::Rewards,
            Port::A,
            AccessKind::Write,
            t,
            self.layout.element_bits,
        );
        self.trace_row(
            cycle,
            Bank::Values,
            Port::A,
            AccessKind::Write,
            t,
            self.layout.element_bits,
        );
        self.depth += 1;
        self.clock += 1;
        Ok(())
    }

    /// Removes and returns the top timestep row from both banks.
    pub fn pop_timestep(&mut self) -> Result<(usize, Vec<u64>, Vec<u64>)> {
        if self.depth == 0 {
            return Err(Error::StackUnderflow);
        }
        let t = self.depth - 1;
        let cycle = self.clock;
        self.trace_row(
            cycle,
            Bank::Rewards,
            Port::A,
            AccessKind::Read,
            t,
            self.layout.element_bits,
        );
        self.trace_row(
            cycle,
            Bank::Values,
            Port::A,
            AccessKind::Read,
            t,
            self.layout.element_bits,
        );
        self.pop_cycle[t] = Some(cycle);
        self.depth = t;
        self.clock += self.issue_interval;
        Ok((t, self.rewards[t].clone(), self.values[t].clone()))
    }

    /// Stores result rows for a previously popped timestep. In-place layouts
    /// overwrite the input banks; otherwise the dedicated result banks are
    /// used. The trace stamps the write `write_delay` cycles after the pop,
    /// on port B.
    pub fn write_results(&mut self, t: usize, adv_codes: &[u64], rtg_codes: &[u64]) -> Result<()> {
        if t >= self.layout.timesteps {
            return Err(Error::Invalid {
                context: "stack write",
                detail: format!("timestep {t} outside capacity {}", self.layout.timesteps),
            });
        }
        let Some(pop_cycle) = self.pop_cycle[t] else {
            return Err(Error::WriteBeforePop { timestep: t });
        };
        self.check_row("stack write", adv_codes, rtg_codes)?;
        let cycle = pop_cycle + self.write_delay;
        let (adv_bank, rtg_bank) = if self.layout.in_place {
            (Bank::Rewards, Bank::Values)
        } else {
            (Bank::Advantages, Bank::RewardsToGo)
        };
        if self.layout.in_place {
            self.rewards[t].copy_from_slice(adv_codes);
            self.values[t].copy_from_slice(rtg_codes);
        } else {
            self.result_adv[t].copy_from_slice(adv_codes);
            self.result_rtg[t].copy_from_slice(rtg_codes);
        }
        self.trace_row(
            cycle,
            adv_bank,
            Port::B,
            AccessKind::Write,
            t,
            self.layout.writeback_bits,
        );
        self.trace_row(
            cycle,
            rtg_bank,
            Port::B,
            AccessKind::Write,
            t,
            self.layout.writeback_bits,
        );
        Ok(())
    }

    fn check_row(&self, context: &'static str, a: &[u64], b: &[u64]) -> Result<()> {
        for row in [a, b] {
            if row.len() != self.layout.num_traj {
                return Err(Error::LengthMismatch {
                    context,
                    left: row.len(),
                    right: self.layout.num_traj,
                });
            }
        }
        Ok(())
    }

    fn trace_row(
        &mut self,
        cycle: u64,
        bank: Bank,
        port: Port,
        kind: AccessKind,
        t: usize,
        bits: u32,
    ) {
        let row_bytes = self.layout.num_traj as u64 * u64::from(bits / 8);
        let blocks = row_bytes.div_ceil(4);
        for block in 0..blocks {
            let bytes = (row_bytes - block * 4).min(4) as u32;
            self.trace.push(AccessRecord {
                cycle,
                bank,
                block: block as u32,
                port,
                addr: t as u32,
                kind,
                bytes,
            });
        }
    }
}
