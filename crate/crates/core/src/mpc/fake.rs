use num_bigint::BigUint;
use rand::Rng;

use super::cipher::{random_below, CommutativeCipherParams};
use super::ops::{Op, OpHook};

/// `count` uniform elements of the ciphertext domain `[1, p-1]`.
pub fn gen_fake_items<R: Rng + ?Sized>(
    count: usize,
    params: &CommutativeCipherParams,
    rng: &mut R,
    hook: &mut dyn OpHook,
) -> Vec<BigUint> {
    hook.record(Op::RandBits, count as u64 * params.bits());
    (0..count)
        .map(|_| random_below(params.domain_size(), rng) + 1u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpc::NoOps;
    use crate::seed;
    use std::collections::HashSet;

    #[test]
    fn zero_count_is_empty() {
        let params = CommutativeCipherParams::new(BigUint::from(23u32)).unwrap();
        let mut rng = seed::rng(0, "fake", &[]);
        assert!(gen_fake_items(0, &params, &mut rng, &mut NoOps).is_empty());
    }

    #[test]
    fn fakes_stay_in_domain() {
        let params = CommutativeCipherParams::new(BigUint::from(23u32)).unwrap();
        let mut rng = seed::rng(1, "fake", &[]);
        let fakes = gen_fake_items(500, &params, &mut rng, &mut NoOps);
        assert!(fakes
            .iter()
            .all(|f| *f >= BigUint::from(1u32) && *f <= BigUint::from(22u32)));
        // All 22 values show up in 500 draws.
        assert_eq!(fakes.iter().collect::<HashSet<_>>().len(), 22);
    }

    #[test]
    fn padding_fills_up_to_the_candidate_count() {
        let params = CommutativeCipherParams::new(BigUint::from(23u32)).unwrap();
        let mut rng = seed::rng(2, "fake", &[]);
        let (n_k, real) = (10usize, 3usize);
        assert_eq!(
            gen_fake_items(n_k - real, &params, &mut rng, &mut NoOps).len() + real,
            n_k
        );
    }

    /// Birthday bound: 4 players × 1000 fakes in a 2^64 domain collide with
    /// probability about (4000^2 / 2) / 2^64 ≈ 4·10^-13.
    #[test]
    fn no_collisions_at_desk_scale() {
        let mut rng = seed::rng(3, "fake", &[]);
        let params = CommutativeCipherParams::generate(64, &mut rng).unwrap();
        let mut all = HashSet::new();
        for player in 0..4u64 {
            let mut prng = seed::rng(3, "fake-player", &[player]);
            for f in gen_fake_items(1000, &params, &mut prng, &mut NoOps) {
                assert!(all.insert(f));
            }
        }
        let expected = (4000f64 * 4000.0 / 2.0) / 2f64.powi(63);
        assert!(expected < 1e-9);
    }
}
