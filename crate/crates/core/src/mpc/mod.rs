//! Cryptographic and secret-sharing building blocks.

mod cipher;
mod fake;
mod lookup;
mod ops;
mod prime;
mod share;
mod signature;

pub use cipher::{comm_decrypt, comm_encrypt, random_below, CipherKey, CommutativeCipherParams};
pub use fake::gen_fake_items;
pub use lookup::{build_lookup_table, HashLookupTable, ItemsetHash, DEFAULT_TABLE_ATTEMPTS};
pub use ops::{NoOps, Op, OpCounts, OpHook};
pub use prime::{generate_safe_prime, is_probable_prime, is_safe_prime};
pub use share::{reconstruct, residue_bits, share_vector, ShareVector};
pub use signature::{encode_residue, keyed_signature, Digest, SignatureParams};
