//! Privacy-preserving mining of association rules over a transaction
//! database that is partitioned horizontally among `M > 2` semi-honest
//! players.
//!
//! The crate is organized bottom-up:
//!
//! * [`itemset`]: transactions, itemsets, supports, Apriori candidate
//!   generation and a plaintext miner used as ground truth.
//! * [`mpc`]: additive secret sharing, a Pohlig-Hellman commutative cipher,
//!   keyed-hash signatures, the hashed lookup table and fake ciphertexts.
//! * [`net`]: a deterministic round-based message fabric that records a
//!   transcript and a cost ledger, plus closed-form cost predictors.
//! * [`protocols`]: the threshold / set-inclusion protocols, the secure
//!   union built on them, and the commutative-encryption union baseline.
//! * [`support`]: secure verification of global frequency and of rule
//!   confidence.
//! * [`fdm`]: the distributed Apriori driver that ties everything together.

pub mod error;
pub mod fdm;
pub mod itemset;
pub mod mpc;
pub mod net;
pub mod protocols;
pub mod seed;
pub mod support;

pub use error::{Error, Result};

pub use itemset::{
    apriori_gen, parse_transactions, partition_db, plaintext_apriori, Itemset, PartitionPolicy,
    PartitionedDb, Ratio, TransactionDb,
};

pub use fdm::{run_secure_fdm, MiningConfig, MiningResult, UnionProtocol};
pub use net::{CostLedger, SimNet};
