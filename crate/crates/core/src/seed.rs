//! Seed derivation. Every random draw in a simulation flows from one run
//! seed, split by a label and a list of indices so that independent
//! activities (players, iterations, protocol steps) get independent streams.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Derive a 64-bit sub-seed from `base`, a domain label and indices.
pub fn derive(base: u64, label: &str, indices: &[u64]) -> u64 {
    let bytes = material(base, label, indices);
    u64::from_be_bytes(bytes[..8].try_into().expect("32-byte digest"))
}

/// A ChaCha20 stream keyed by `(base, label, indices)`.
pub fn rng(base: u64, label: &str, indices: &[u64]) -> ChaCha20Rng {
    ChaCha20Rng::from_seed(material(base, label, indices))
}

fn material(base: u64, label: &str, indices: &[u64]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(base.to_be_bytes());
    hasher.update((label.len() as u64).to_be_bytes());
    hasher.update(label.as_bytes());
    for i in indices {
        hasher.update(i.to_be_bytes());
    }
    hasher.finalize().into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_separated() {
        let a: u64 = rng(7, "x", &[1]).random();
        let b: u64 = rng(7, "x", &[1]).random();
        let c: u64 = rng(7, "x", &[2]).random();
        let d: u64 = rng(7, "y", &[1]).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        assert_ne!(derive(1, "x", &[]), derive(2, "x", &[]));
    }
}
