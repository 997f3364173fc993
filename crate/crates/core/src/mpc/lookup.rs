use std::collections::HashMap;

use num_bigint::BigUint;
use sha2::{Digest as _, Sha256};

use super::cipher::CommutativeCipherParams;
use super::ops::{Op, OpHook};
use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::seed;

pub const DEFAULT_TABLE_ATTEMPTS: usize = 16;

/// Seeded hash from itemsets into the ciphertext domain `[1, p-1]`.
///
/// SHA-256 in counter mode over `seed ‖ counter ‖ packed itemset`, expanded
/// 64 bits past the modulus width and reduced.
#[derive(Clone, Debug)]
pub struct ItemsetHash {
    seed: u64,
    domain: BigUint,
    out_bytes: usize,
}

impl ItemsetHash {
    pub fn new(seed: u64, params: &CommutativeCipherParams) -> Self {
        ItemsetHash {
            seed,
            domain: params.domain_size().clone(),
            out_bytes: (params.bits() as usize).div_ceil(8) + 8,
        }
    }

    pub fn eval(&self, x: &Itemset) -> BigUint {
        let packed = x.to_bytes();
        let mut stream = Vec::with_capacity(self.out_bytes + 32);
        let mut counter = 0u32;
        while stream.len() < self.out_bytes {
            let mut h = Sha256::new();
            h.update(self.seed.to_be_bytes());
            h.update(counter.to_be_bytes());
            h.update((x.width() as u64).to_be_bytes());
            h.update(&packed);
            stream.extend_from_slice(&h.finalize());
            counter += 1;
        }
        stream.truncate(self.out_bytes);
        BigUint::from_bytes_be(&stream) % &self.domain + 1u32
    }
}

/// Inverse of an [`ItemsetHash`] restricted to a candidate domain.
#[derive(Clone, Debug)]
pub struct HashLookupTable {
    hash: ItemsetHash,
    entries: HashMap<BigUint, Itemset>,
    attempts: usize,
}

impl HashLookupTable {
    pub fn hash(&self) -> &ItemsetHash {
        &self.hash
    }

    pub fn lookup(&self, digest: &BigUint) -> Option<&Itemset> {
        self.entries.get(digest)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// How many hash functions were tried before one was injective.
    pub fn attempts(&self) -> usize {
        self.attempts
    }
}

/// Pick a seeded hash that is injective on `domain` and tabulate it. A
/// collision re-seeds; after `max_attempts` failures the build gives up.
pub fn build_lookup_table(
    domain: &[Itemset],
    params: &CommutativeCipherParams,
    seed: u64,
    max_attempts: usize,
    hook: &mut dyn OpHook,
) -> Result<HashLookupTable> {
    if domain.is_empty() {
        return Err(Error::Contract("lookup table over an empty domain".into()));
    }
    'attempt: for attempt in 0..max_attempts {
        let hash = ItemsetHash::new(seed::derive(seed, "lookup-hash", &[attempt as u64]), params);
        let mut entries = HashMap::with_capacity(domain.len());
        for x in domain {
            hook.record(Op::Hash, 1);
            let h = hash.eval(x);
            match entries.get(&h) {
                Some(prev) if prev != x => continue 'attempt,
                _ => {
                    entries.insert(h, x.clone());
                }
            }
        }
        return Ok(HashLookupTable {
            hash,
            entries,
            attempts: attempt + 1,
        });
    }
    Err(Error::RetryExhausted {
        what: "collision-free hash selection",
        attempts: max_attempts,
    })
}
