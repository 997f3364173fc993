use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::cipher::random_bits;
use crate::error::{Error, Result};

const SMALL_PRIMES: [u32; 54] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

const MR_ROUNDS: usize = 40;

/// Miller-Rabin with the first small primes as witnesses (deterministic for
/// `n < 3.3·10^24`) followed by pseudo-random witnesses derived from `n`.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let shift = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> shift;
    let witness_passes = |a: &BigUint| {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            return true;
        }
        for _ in 1..shift {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                return true;
            }
        }
        false
    };
    if !SMALL_PRIMES[..13]
        .iter()
        .all(|&a| witness_passes(&BigUint::from(a)))
    {
        return false;
    }
    if n.bits() <= 81 {
        return true;
    }
    let mut rng = crate::seed::rng(0, "miller-rabin", &[n.bits()]);
    let span = n - 3u32;
    (0..MR_ROUNDS).all(|_| {
        let a = super::cipher::random_below(&span, &mut rng) + 2u32;
        witness_passes(&a)
    })
}

/// `p` prime and `(p - 1) / 2` prime.
pub fn is_safe_prime(p: &BigUint) -> bool {
    if *p < BigUint::from(5u32) || p.is_even() {
        return false;
    }
    is_probable_prime(&(p >> 1)) && is_probable_prime(p)
}

/// Draw a safe prime of exactly `bits` bits.
pub fn generate_safe_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<BigUint> {
    if bits < 8 {
        return Err(Error::Range(format!(
            "safe prime generation needs at least 8 bits, got {bits}"
        )));
    }
    let top = BigUint::one() << (bits - 2);
    loop {
        // q has bits-1 bits with the top bit set; p = 2q + 1 has `bits` bits.
        let mut q = random_bits(bits - 1, rng) | &top;
        q |= BigUint::one();
        if !sieve_passes(&q) {
            continue;
        }
        if is_probable_prime(&q) {
            let p: BigUint = (&q << 1) + 1u32;
            if is_probable_prime(&p) {
                return Ok(p);
            }
        }
    }
}

/// Reject `q` when `q` or `2q + 1` has a small odd factor.
fn sieve_passes(q: &BigUint) -> bool {
    if q.bits() <= 8 {
        return true;
    }
    SMALL_PRIMES[1..].iter().all(|&r| {
        let rem = (q % r).to_u32().expect("remainder fits u32");
        rem != 0 && !(2 * rem + 1).is_multiple_of(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    #[test]
    fn classifies_small_numbers() {
        let primes: Vec<u32> = (0..200)
            .filter(|&n| is_probable_prime(&BigUint::from(n)))
            .collect();
        let naive: Vec<u32> = (0..200u32)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(primes, naive);
        assert!(is_safe_prime(&BigUint::from(23u32)));
        assert!(is_safe_prime(&BigUint::from(107u32)));
        assert!(!is_safe_prime(&BigUint::from(13u32)));
        // Carmichael number.
        assert!(!is_probable_prime(&BigUint::from(561u32)));
    }

    #[test]
    fn generated_primes_are_safe_and_sized() {
        let mut rng = seed::rng(5, "primes", &[]);
        for bits in [16u64, 64, 128] {
            let p = generate_safe_prime(bits, &mut rng).unwrap();
            assert_eq!(p.bits(), bits);
            assert!(is_safe_prime(&p));
        }
    }
}
