use std::collections::BTreeMap;

use super::message::PlayerId;
use crate::mpc::OpCounts;

/// Phase label for delivering a protocol's result to everyone. Cost
/// comparisons cover the protocol proper and leave this phase out.
pub const OUTPUT_PHASE: &str = "output";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LedgerKey {
    pub protocol: String,
    pub iteration: usize,
    pub phase: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseCost {
    pub rounds: u64,
    pub messages: u64,
    pub bits: u64,
    pub ops: BTreeMap<PlayerId, OpCounts>,
}

impl PhaseCost {
    fn absorb(&mut self, other: &PhaseCost) {
        self.rounds += other.rounds;
        self.messages += other.messages;
        self.bits += other.bits;
        for (p, ops) in &other.ops {
            *self.ops.entry(*p).or_default() += *ops;
        }
    }

    /// Operation counts summed over players.
    pub fn total_ops(&self) -> OpCounts {
        let mut sum = OpCounts::default();
        for ops in self.ops.values() {
            sum += *ops;
        }
        sum
    }
}

/// Parameters a protocol run registers so the report can evaluate the
/// matching closed-form predictions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IterationMeta {
    pub players: usize,
    /// Vector length (candidate count `n_k`).
    pub n: u64,
    pub digest_bits: Option<usize>,
    pub cipher_bits: Option<u64>,
    pub modulus: Option<u64>,
    pub threshold: Option<usize>,
    /// The summation hands `P_M`'s share to `P1`, revealing the sum.
    pub reveal: bool,
}

/// Rounds, bits and operation counts keyed by (protocol, iteration, phase).
/// Counters only ever grow during a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    entries: BTreeMap<LedgerKey, PhaseCost>,
    meta: BTreeMap<(String, usize), IterationMeta>,
}

impl CostLedger {
    pub(crate) fn entry(&mut self, key: LedgerKey) -> &mut PhaseCost {
        self.entries.entry(key).or_default()
    }

    pub(crate) fn set_meta(&mut self, protocol: &str, iteration: usize, meta: IterationMeta) {
        self.meta.insert((protocol.to_string(), iteration), meta);
    }

    pub fn meta(&self, protocol: &str, iteration: usize) -> Option<&IterationMeta> {
        self.meta.get(&(protocol.to_string(), iteration))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&LedgerKey, &PhaseCost)> {
        self.entries.iter()
    }

    pub fn phase(&self, protocol: &str, iteration: usize, phase: &str) -> Option<&PhaseCost> {
        self.entries.get(&LedgerKey {
            protocol: protocol.to_string(),
            iteration,
            phase: phase.to_string(),
        })
    }

    /// Protocols with at least one registered iteration, sorted.
    pub fn protocols(&self) -> Vec<String> {
        let mut out: Vec<String> = self.meta.keys().map(|(p, _)| p.clone()).collect();
        out.dedup();
        out
    }

    /// Registered iterations of `protocol`, ascending.
    pub fn iterations(&self, protocol: &str) -> Vec<usize> {
        self.meta
            .keys()
            .filter(|(p, _)| p == protocol)
            .map(|(_, k)| *k)
            .collect()
    }

    /// One iteration of `protocol` summed over phases, optionally skipping
    /// the output-delivery phase.
    pub fn iteration_total(
        &self,
        protocol: &str,
        iteration: usize,
        include_output: bool,
    ) -> PhaseCost {
        let mut total = PhaseCost::default();
        for (key, cost) in &self.entries {
            if key.protocol == protocol
                && key.iteration == iteration
                && (include_output || key.phase != OUTPUT_PHASE)
            {
                total.absorb(cost);
            }
        }
        total
    }

    /// All iterations of `protocol` summed.
    pub fn protocol_total(&self, protocol: &str, include_output: bool) -> PhaseCost {
        let mut total = PhaseCost::default();
        for (key, cost) in &self.entries {
            if key.protocol == protocol && (include_output || key.phase != OUTPUT_PHASE) {
                total.absorb(cost);
            }
        }
        total
    }

    /// Sum of `n` over the registered iterations of `protocol`.
    pub fn total_n(&self, protocol: &str) -> u64 {
        self.meta
            .iter()
            .filter(|((p, _), _)| p == protocol)
            .map(|(_, m)| m.n)
            .sum()
    }
}
