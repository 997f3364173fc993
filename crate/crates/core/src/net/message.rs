use std::fmt;

use num_bigint::BigUint;

use crate::itemset::Itemset;
use crate::mpc::{Digest, ShareVector};

/// A player index, 1-based like `P1..PM`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerId(usize);

impl PlayerId {
    /// Panics on 0; player numbering starts at 1.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "players are numbered from 1");
        PlayerId(m)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn index(self) -> usize {
        self.0 - 1
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// Message contents. Each variant has a fixed canonical bit encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    /// Residues of `Z_q`, `ceil(log2 q)` bits each.
    Residues(ShareVector),
    /// Keyed-hash digests of `width` bits each.
    Digests { width: usize, items: Vec<Digest> },
    /// One digest set per index.
    DigestSets {
        width: usize,
        sets: Vec<Vec<Digest>>,
    },
    /// Commutative-cipher ciphertexts of `width` bits each.
    Ciphertexts { width: u64, items: Vec<BigUint> },
    /// One bit per entry.
    Bits(Vec<bool>),
    /// Itemsets as `L`-bit packed vectors.
    Itemsets { width: usize, items: Vec<Itemset> },
}

impl Payload {
    pub fn bit_len(&self) -> u64 {
        match self {
            Payload::Residues(v) => v.bit_len(),
            Payload::Digests { width, items } => (*width * items.len()) as u64,
            Payload::DigestSets { width, sets } => {
                (*width * sets.iter().map(Vec::len).sum::<usize>()) as u64
            }
            Payload::Ciphertexts { width, items } => width * items.len() as u64,
            Payload::Bits(b) => b.len() as u64,
            Payload::Itemsets { width, items } => (*width * items.len()) as u64,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Residues(_) => "residues",
            Payload::Digests { .. } => "digests",
            Payload::DigestSets { .. } => "digest-sets",
            Payload::Ciphertexts { .. } => "ciphertexts",
            Payload::Bits(_) => "bits",
            Payload::Itemsets { .. } => "itemsets",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub round: u64,
    pub sender: PlayerId,
    pub receiver: PlayerId,
    pub phase: String,
    pub payload: Payload,
}

impl Message {
    pub fn bit_len(&self) -> u64 {
        self.payload.bit_len()
    }

    /// Encoded length in whole bytes.
    pub fn byte_len(&self) -> u64 {
        self.bit_len().div_ceil(8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Receipt {
    pub round: u64,
    pub sender: PlayerId,
    pub receiver: PlayerId,
    pub bits: u64,
}
