use std::ops::AddAssign;

use serde::Serialize;

/// Operation kinds tallied by the cost ledger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    CommEncrypt,
    CommDecrypt,
    Hash,
    KeyedHash,
    ModAdd,
    RandBits,
}

/// Accounting hook. Primitives report the work they do through it; the
/// harness decides where the counts go.
pub trait OpHook {
    fn record(&mut self, op: Op, count: u64);
}

/// Discards all counts.
pub struct NoOps;

impl OpHook for NoOps {
    fn record(&mut self, _op: Op, _count: u64) {}
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounts {
    pub enc: u64,
    pub dec: u64,
    pub hash: u64,
    pub keyed_hash: u64,
    pub mod_adds: u64,
    pub rand_bits: u64,
}

impl OpCounts {
    pub fn get(&self, op: Op) -> u64 {
        match op {
            Op::CommEncrypt => self.enc,
            Op::CommDecrypt => self.dec,
            Op::Hash => self.hash,
            Op::KeyedHash => self.keyed_hash,
            Op::ModAdd => self.mod_adds,
            Op::RandBits => self.rand_bits,
        }
    }
}

impl OpHook for OpCounts {
    fn record(&mut self, op: Op, count: u64) {
        let slot = match op {
            Op::CommEncrypt => &mut self.enc,
            Op::CommDecrypt => &mut self.dec,
            Op::Hash => &mut self.hash,
            Op::KeyedHash => &mut self.keyed_hash,
            Op::ModAdd => &mut self.mod_adds,
            Op::RandBits => &mut self.rand_bits,
        };
        *slot += count;
    }
}

impl AddAssign for OpCounts {
    fn add_assign(&mut self, rhs: OpCounts) {
        self.enc += rhs.enc;
        self.dec += rhs.dec;
        self.hash += rhs.hash;
        self.keyed_hash += rhs.keyed_hash;
        self.mod_adds += rhs.mod_adds;
        self.rand_bits += rhs.rand_bits;
    }
}
