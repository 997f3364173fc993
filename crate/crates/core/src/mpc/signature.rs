use std::fmt;

use hmac::{Hmac, KeyInit, Mac};
use rand::Rng;
use sha2::Sha256;

use super::share::residue_bits;
use crate::error::{Error, Result};

type HmacSha256 = Hmac<Sha256>;

const MAX_OUT_BITS: usize = 256;

/// A keyed-hash output truncated to a fixed number of bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest {
    bytes: Box<[u8]>,
    bits: usize,
}

impl Digest {
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bytes.iter() {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Shared secret material for `h_K(r, i, value)`: an HMAC-SHA256 key `K`,
/// a random string `r` and the digest width `|h|`.
#[derive(Clone)]
pub struct SignatureParams {
    key: Vec<u8>,
    salt: Vec<u8>,
    out_bits: usize,
}

impl fmt::Debug for SignatureParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SignatureParams")
            .field("out_bits", &self.out_bits)
            .finish_non_exhaustive()
    }
}

impl SignatureParams {
    pub fn new(key: Vec<u8>, salt: Vec<u8>, out_bits: usize) -> Result<Self> {
        if salt.len() * 8 < 128 {
            return Err(Error::Range(format!(
                "random string has {} bits; at least 128 required",
                salt.len() * 8
            )));
        }
        if !(128..=MAX_OUT_BITS).contains(&out_bits) {
            return Err(Error::Range(format!(
                "digest width {out_bits} must be between 128 and {MAX_OUT_BITS} bits"
            )));
        }
        Ok(SignatureParams {
            key,
            salt,
            out_bits,
        })
    }

    /// Digest widths below the production minimum, for exercising collisions.
    #[cfg(test)]
    pub(crate) fn narrow(key: Vec<u8>, salt: Vec<u8>, out_bits: usize) -> Self {
        assert!((1..=MAX_OUT_BITS).contains(&out_bits));
        SignatureParams {
            key,
            salt,
            out_bits,
        }
    }

    /// Fresh 256-bit key and 256-bit random string.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, out_bits: usize) -> Result<Self> {
        let mut key = vec![0u8; 32];
        let mut salt = vec![0u8; 32];
        rng.fill_bytes(&mut key);
        rng.fill_bytes(&mut salt);
        Self::new(key, salt, out_bits)
    }

    pub fn out_bits(&self) -> usize {
        self.out_bits
    }
}

/// Canonical fixed-width encoding of a residue of `Z_q`: big-endian in
/// `ceil(ceil(log2 q) / 8)` bytes.
pub fn encode_residue(value: u64, q: u64) -> Vec<u8> {
    let nbytes = (residue_bits(q) as usize).div_ceil(8).max(1);
    value.to_be_bytes()[8 - nbytes..].to_vec()
}

/// `h_K(r, i, value)` over `r ‖ i (8-byte big-endian) ‖ value`.
pub fn keyed_signature(sig: &SignatureParams, index: u64, value: &[u8]) -> Digest {
    let mut mac = HmacSha256::new_from_slice(&sig.key).expect("HMAC accepts any key length");
    mac.update(&sig.salt);
    mac.update(&index.to_be_bytes());
    mac.update(value);
    let full = mac.finalize().into_bytes();
    let nbytes = sig.out_bits.div_ceil(8);
    let mut bytes: Box<[u8]> = full[..nbytes].into();
    let excess = nbytes * 8 - sig.out_bits;
    if excess > 0 {
        bytes[nbytes - 1] &= 0xffu8 << excess;
    }
    Digest {
        bytes,
        bits: sig.out_bits,
    }
}
