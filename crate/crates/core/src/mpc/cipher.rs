use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use super::ops::{Op, OpHook};
use super::prime::{generate_safe_prime, is_safe_prime};
use crate::error::{Error, Result};

/// The 1024-bit MODP prime of RFC 2409 (Oakley group 2); a safe prime.
const OAKLEY_GROUP_2: &str = "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1\
29024E088A67CC74020BBEA63B139B22514A08798E3404DD\
EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245\
E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED\
EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE65381\
FFFFFFFFFFFFFFFF";

/// Uniform integer with at most `bits` bits.
pub(crate) fn random_bits<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> BigUint {
    let nbytes = bits.div_ceil(8) as usize;
    let mut bytes = vec![0u8; nbytes];
    rng.fill_bytes(&mut bytes);
    let excess = nbytes as u64 * 8 - bits;
    if excess > 0 {
        bytes[0] &= 0xff >> excess;
    }
    BigUint::from_bytes_be(&bytes)
}

/// Uniform integer in `[0, bound)` by rejection sampling.
pub fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(*bound > BigUint::ZERO, "empty sampling range");
    let bits = bound.bits();
    loop {
        let candidate = random_bits(bits, rng);
        if candidate < *bound {
            return candidate;
        }
    }
}

/// Pohlig-Hellman exponentiation cipher over a safe prime `p`: the
/// ciphertext domain is `[1, p-1]` and `E_K(x) = x^K mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativeCipherParams {
    p: BigUint,
    order: BigUint,
}

impl CommutativeCipherParams {
    pub fn new(p: BigUint) -> Result<Self> {
        if !is_safe_prime(&p) {
            return Err(Error::Range(format!("{p} is not a safe prime")));
        }
        let order = &p - 1u32;
        Ok(CommutativeCipherParams { p, order })
    }

    /// Fresh safe prime of `bits` bits.
    pub fn generate<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<Self> {
        Self::new(generate_safe_prime(bits, rng)?)
    }

    /// The RFC 2409 1024-bit group.
    pub fn oakley_1024() -> Self {
        let p = BigUint::parse_bytes(OAKLEY_GROUP_2.as_bytes(), 16).expect("valid hex constant");
        let order = &p - 1u32;
        CommutativeCipherParams { p, order }
    }

    /// Parameters for a `bits`-bit modulus: the standard 1024-bit group when
    /// asked for 1024 bits, otherwise a freshly generated safe prime.
    pub fn for_bits<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<Self> {
        if bits == 1024 {
            Ok(Self::oakley_1024())
        } else {
            Self::generate(bits, rng)
        }
    }

    pub fn modulus(&self) -> &BigUint {
        &self.p
    }

    /// Ciphertext width `t` in bits.
    pub fn bits(&self) -> u64 {
        self.p.bits()
    }

    /// Size of the ciphertext domain, `p - 1`.
    pub fn domain_size(&self) -> &BigUint {
        &self.order
    }

    fn check_domain(&self, x: &BigUint) -> Result<()> {
        if *x == BigUint::ZERO || *x >= self.p {
            return Err(Error::Range(format!("{x} is outside [1, p-1]")));
        }
        Ok(())
    }
}

/// An encryption exponent and its inverse modulo `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherKey {
    enc: BigUint,
    dec: BigUint,
}

impl CipherKey {
    pub fn new(params: &CommutativeCipherParams, k: BigUint) -> Result<Self> {
        let k = k % &params.order;
        if !k.gcd(&params.order).is_one() {
            return Err(Error::Key(format!("{k} is not invertible mod p-1")));
        }
        let dec = k
            .modinv(&params.order)
            .ok_or_else(|| Error::Key(format!("{k} is not invertible mod p-1")))?;
        Ok(CipherKey { enc: k, dec })
    }

    /// Uniform key among the units of `Z_{p-1}`.
    pub fn random<R: Rng + ?Sized>(
        params: &CommutativeCipherParams,
        rng: &mut R,
        hook: &mut dyn OpHook,
    ) -> Self {
        loop {
            hook.record(Op::RandBits, params.order.bits());
            let k = random_below(&params.order, rng);
            if let Ok(key) = CipherKey::new(params, k) {
                return key;
            }
        }
    }

    pub fn exponent(&self) -> &BigUint {
        &self.enc
    }

    pub fn inverse_exponent(&self) -> &BigUint {
        &self.dec
    }
}

pub fn comm_encrypt(
    params: &CommutativeCipherParams,
    key: &CipherKey,
    x: &BigUint,
) -> Result<BigUint> {
    params.check_domain(x)?;
    Ok(x.modpow(&key.enc, &params.p))
}

pub fn comm_decrypt(
    params: &CommutativeCipherParams,
    key: &CipherKey,
    y: &BigUint,
) -> Result<BigUint> {
    params.check_domain(y)?;
    Ok(y.modpow(&key.dec, &params.p))
}
