use rand::Rng;

use super::ops::{Op, OpHook};
use crate::error::{Error, Result};

/// Bits needed to write any residue of `Z_q`, i.e. `ceil(log2 q)`.
pub fn residue_bits(q: u64) -> u32 {
    if q <= 1 {
        0
    } else {
        64 - (q - 1).leading_zeros()
    }
}

/// A vector over `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShareVector {
    modulus: u64,
    values: Vec<u64>,
}

impl ShareVector {
    pub fn new(modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Range(format!(
                "modulus {modulus} must be at least 2"
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::Range(format!(
                "entry {v} is not a residue mod {modulus}"
            )));
        }
        Ok(ShareVector { modulus, values })
    }

    pub fn zeros(modulus: u64, len: usize) -> Result<Self> {
        Self::new(modulus, vec![0; len])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Canonical encoding size: `len · ceil(log2 q)` bits.
    pub fn bit_len(&self) -> u64 {
        self.values.len() as u64 * residue_bits(self.modulus) as u64
    }

    /// Componentwise `self += other (mod q)`.
    pub fn add_assign(&mut self, other: &ShareVector, hook: &mut dyn OpHook) -> Result<()> {
        self.check_compatible(other)?;
        let q = self.modulus as u128;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a = ((*a as u128 + *b as u128) % q) as u64;
        }
        hook.record(Op::ModAdd, self.values.len() as u64);
        Ok(())
    }

    fn check_compatible(&self, other: &ShareVector) -> Result<()> {
        if self.modulus != other.modulus || self.values.len() != other.values.len() {
            return Err(Error::Dimension(format!(
                "share vectors disagree: Z_{}^{} vs Z_{}^{}",
                self.modulus,
                self.values.len(),
                other.modulus,
                other.values.len()
            )));
        }
        Ok(())
    }
}

/// Split `v` into `parties` additive shares over `Z_q`: the first
/// `parties - 1` shares are uniform, the last is the complement.
pub fn share_vector<R: Rng + ?Sized>(
    v: &[u64],
    parties: usize,
    q: u64,
    rng: &mut R,
    hook: &mut dyn OpHook,
) -> Result<Vec<ShareVector>> {
    if parties == 0 {
        return Err(Error::Contract("cannot share among zero parties".into()));
    }
    let target = ShareVector::new(q, v.to_vec())?;
    let n = v.len();
    let mut shares = Vec::with_capacity(parties);
    for _ in 1..parties {
        let values: Vec<u64> = (0..n).map(|_| rng.random_range(0..q)).collect();
        shares.push(ShareVector { modulus: q, values });
    }
    hook.record(
        Op::RandBits,
        (parties as u64 - 1) * n as u64 * residue_bits(q) as u64,
    );
    let wide = q as u128;
    let last: Vec<u64> = (0..n)
        .map(|i| {
            let used: u128 = shares.iter().map(|s| s.values[i] as u128).sum::<u128>() % wide;
            ((target.values[i] as u128 + wide - used) % wide) as u64
        })
        .collect();
    hook.record(Op::ModAdd, (parties as u64 - 1) * n as u64);
    shares.push(ShareVector {
        modulus: q,
        values: last,
    });
    Ok(shares)
}

/// Componentwise sum of the shares modulo `q`.
pub fn reconstruct(shares: &[ShareVector], q: u64) -> Result<ShareVector> {
    let first = shares
        .first()
        .ok_or_else(|| Error::Contract("nothing to reconstruct".into()))?;
    let mut acc = ShareVector::zeros(q, first.len())?;
    for s in shares {
        acc.add_assign(s, &mut super::NoOps)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpc::{NoOps, OpCounts};
    use crate::seed;
    use proptest::prelude::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn residue_widths() {
        assert_eq!(residue_bits(2), 1);
        assert_eq!(residue_bits(4), 2);
        assert_eq!(residue_bits(5), 3);
        assert_eq!(residue_bits(17), 5);
        assert_eq!(residue_bits(1 << 20), 20);
    }

    #[test]
    fn reconstruct_small_cases() {
        let a = ShareVector::new(4, vec![1, 2]).unwrap();
        let b = ShareVector::new(4, vec![3, 3]).unwrap();
        assert_eq!(reconstruct(&[a.clone(), b], 4).unwrap().values(), &[0, 1]);
        assert_eq!(reconstruct(std::slice::from_ref(&a), 4).unwrap(), a);
    }

    #[test]
    fn reconstruct_rejects_mismatches() {
        let a = ShareVector::new(4, vec![1, 2]).unwrap();
        let b = ShareVector::new(5, vec![3, 3]).unwrap();
        let c = ShareVector::new(4, vec![3]).unwrap();
        assert!(matches!(
            reconstruct(&[a.clone(), b], 4),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(reconstruct(&[a, c], 4), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_vector_shares_sum_to_zero() {
        let mut rng = seed::rng(3, "t", &[]);
        let shares = share_vector(&[0, 0, 0], 3, 4, &mut rng, &mut NoOps).unwrap();
        assert_eq!(shares.len(), 3);
        assert_eq!(reconstruct(&shares, 4).unwrap().values(), &[0, 0, 0]);
    }

    #[test]
    fn seeded_shares_are_deterministic() {
        let run = || {
            let mut rng = seed::rng(42, "t", &[]);
            share_vector(&[2, 1, 3], 3, 17, &mut rng, &mut NoOps).unwrap()
        };
        let shares = run();
        assert_eq!(shares, run());
        let sum: Vec<u64> = (0..3)
            .map(|i| shares.iter().map(|s| s.values()[i]).sum::<u64>() % 17)
            .collect();
        assert_eq!(sum, vec![2, 1, 3]);
    }

    #[test]
    fn out_of_range_entry_is_rejected() {
        let mut rng = seed::rng(0, "t", &[]);
        assert!(matches!(
            share_vector(&[4], 3, 4, &mut rng, &mut NoOps),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn sharing_reports_its_work() {
        let mut rng = seed::rng(0, "t", &[]);
        let mut ops = OpCounts::default();
        share_vector(&[1, 0, 1, 1], 4, 5, &mut rng, &mut ops).unwrap();
        assert_eq!(ops.rand_bits, 3 * 4 * 3);
        assert_eq!(ops.mod_adds, 3 * 4);
    }

    /// Joint distribution of shares 0 and 1 out of 3 for a fixed secret,
    /// over many seeds, against uniform on Z_4 × Z_4.
    #[test]
    fn proper_subsets_of_shares_look_uniform() {
        let q = 4u64;
        let samples = 10_000;
        let mut counts = vec![0u64; (q * q) as usize];
        for run in 0..samples {
            let mut rng = seed::rng(run, "uniformity", &[]);
            let shares = share_vector(&[3], 3, q, &mut rng, &mut NoOps).unwrap();
            // Shares 1 and 2 include the complement share.
            let cell = shares[1].values()[0] * q + shares[2].values()[0];
            counts[cell as usize] += 1;
        }
        let expected = samples as f64 / (q * q) as f64;
        let stat: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let critical = ChiSquared::new((q * q - 1) as f64)
            .unwrap()
            .inverse_cdf(0.99);
        assert!(stat < critical, "chi-square {stat} >= {critical}");
    }

    proptest! {
        #[test]
        fn reconstruct_inverts_sharing(
            q in 2u64..1000,
            parties in 1usize..8,
            raw in prop::collection::vec(any::<u64>(), 0..20),
            s in any::<u64>(),
        ) {
            let v: Vec<u64> = raw.into_iter().map(|x| x % q).collect();
            let mut rng = seed::rng(s, "prop", &[]);
            let shares = share_vector(&v, parties, q, &mut rng, &mut NoOps).unwrap();
            prop_assert!(shares.iter().all(|s| s.values().iter().all(|&x| x < q)));
            let back = reconstruct(&shares, q).unwrap();
            prop_assert_eq!(back.values(), &v[..]);
        }
    }
}
