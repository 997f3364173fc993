use std::collections::HashSet;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::mpc::{encode_residue, keyed_signature, Digest, Op, OpHook, SignatureParams};
use crate::net::{Payload, SimNet, OUTPUT_PHASE};
use crate::seed;

use super::require_players;

/// Settings for the keyed-hash signature of the set-inclusion step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetIncConfig {
    /// Digest width in bits.
    pub digest_bits: usize,
    /// How many `(K, r)` draws to try before giving up on disjointness.
    pub key_attempts: usize,
}

impl Default for SetIncConfig {
    fn default() -> Self {
        SetIncConfig {
            digest_bits: 160,
            key_attempts: 16,
        }
    }
}

/// `P1` holds `s(i) ∈ Ω`, `P_M` holds `Θ(i) ⊂ Ω`; `Ω = Z_omega`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetIncInstance {
    omega: u64,
    elements: Vec<u64>,
    subsets: Vec<Vec<u64>>,
}

impl SetIncInstance {
    pub fn new(omega: u64, elements: Vec<u64>, subsets: Vec<Vec<u64>>) -> Result<Self> {
        if omega < 2 {
            return Err(Error::Contract(format!("domain of size {omega}")));
        }
        if elements.len() != subsets.len() {
            return Err(Error::Dimension(format!(
                "{} elements but {} subsets",
                elements.len(),
                subsets.len()
            )));
        }
        if let Some(v) = elements
            .iter()
            .chain(subsets.iter().flatten())
            .find(|&&v| v >= omega)
        {
            return Err(Error::Range(format!("{v} outside Z_{omega}")));
        }
        Ok(SetIncInstance {
            omega,
            elements,
            subsets,
        })
    }

    pub fn omega(&self) -> u64 {
        self.omega
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn subsets(&self) -> &[Vec<u64>] {
        &self.subsets
    }
}

fn sign(sig: &SignatureParams, index: usize, value: u64, omega: u64) -> Digest {
    keyed_signature(sig, index as u64, &encode_residue(value, omega))
}

/// `P_M`'s check that, for every index, no element outside `Θ(i)` signs to
/// a digest of an element inside it. Costs `|Ω|` keyed hashes per index.
pub fn signature_domains_disjoint(
    sig: &SignatureParams,
    instance: &SetIncInstance,
    hook: &mut dyn OpHook,
) -> bool {
    let omega = instance.omega;
    for (i, theta) in instance.subsets.iter().enumerate() {
        hook.record(Op::KeyedHash, omega);
        let inside: HashSet<Digest> = theta.iter().map(|&v| sign(sig, i, v, omega)).collect();
        let clash = (0..omega)
            .filter(|v| !theta.contains(v))
            .any(|v| inside.contains(&sign(sig, i, v, omega)));
        if clash {
            return false;
        }
    }
    true
}

pub(crate) fn agree_with(
    instance: &SetIncInstance,
    attempts: usize,
    mut draw: impl FnMut(usize) -> Result<SignatureParams>,
    hook: &mut dyn OpHook,
) -> Result<SignatureParams> {
    for attempt in 0..attempts {
        let sig = draw(attempt)?;
        if signature_domains_disjoint(&sig, instance, hook) {
            return Ok(sig);
        }
    }
    Err(Error::RetryExhausted {
        what: "keyed-hash disjointness",
        attempts,
    })
}

/// Random bits consumed by a Fisher–Yates shuffle of `len` elements.
pub(crate) fn shuffle_bits(len: usize) -> u64 {
    (1..len)
        .map(|i| u64::from((i as u64 + 1).next_power_of_two().trailing_zeros()))
        .sum()
}

/// Decide `b(i) = [s(i) ∉ Θ(i)]` for every index with `P2` as the
/// mediator. `P1` and `P_M` share a fresh `(K, r)`; `P1` sends `P2` the
/// signatures `s'(i)`, `P_M` sends the signature sets `Θ'(i)` in random
/// order, and `P2` compares. `P2` then broadcasts `b`.
pub fn setinc(
    net: &mut SimNet,
    instance: &SetIncInstance,
    config: &SetIncConfig,
    seed: u64,
) -> Result<Vec<bool>> {
    let m = net.players();
    require_players(m)?;
    let ids = net.ids();
    let (p1, p2, pm) = (ids[0], ids[1], ids[m - 1]);
    let omega = instance.omega;
    let width = config.digest_bits;

    net.set_phase("setinc");
    let sig = agree_with(
        instance,
        config.key_attempts,
        |attempt| {
            SignatureParams::random(&mut seed::rng(seed, "setinc-key", &[attempt as u64]), width)
        },
        &mut net.hook(pm),
    )?;

    net.hook(p1).record(Op::KeyedHash, instance.len() as u64);
    let signed: Vec<Digest> = instance
        .elements
        .iter()
        .enumerate()
        .map(|(i, &v)| sign(&sig, i, v, omega))
        .collect();

    let mut sets = Vec::with_capacity(instance.len());
    for (i, theta) in instance.subsets.iter().enumerate() {
        let mut set: Vec<Digest> = theta.iter().map(|&v| sign(&sig, i, v, omega)).collect();
        set.shuffle(&mut seed::rng(seed, "setinc-perm", &[i as u64]));
        let mut hook = net.hook(pm);
        hook.record(Op::KeyedHash, theta.len() as u64);
        hook.record(Op::RandBits, shuffle_bits(set.len()));
        sets.push(set);
    }

    net.send(
        p1,
        p2,
        Payload::Digests {
            width,
            items: signed,
        },
    )?;
    net.send(pm, p2, Payload::DigestSets { width, sets })?;
    net.barrier();

    let from_p1 = net.recv_from(p2, p1)?;
    let from_pm = net.recv_from(p2, pm)?;
    let (signed, sets) = match (from_p1.payload, from_pm.payload) {
        (Payload::Digests { items, .. }, Payload::DigestSets { sets, .. }) => (items, sets),
        (a, b) => {
            return Err(Error::Integrity(format!(
                "unexpected {} / {} at {p2}",
                a.kind(),
                b.kind()
            )))
        }
    };
    if signed.len() != sets.len() {
        return Err(Error::Dimension(
            "signature vectors differ in length".into(),
        ));
    }
    let b: Vec<bool> = signed
        .iter()
        .zip(&sets)
        .map(|(s, set)| !set.contains(s))
        .collect();
    net.observe(p2, "b", || Payload::Bits(b.clone()));

    net.set_phase(OUTPUT_PHASE);
    net.broadcast(p2, Payload::Bits(b.clone()))?;
    net.barrier();
    for &p in ids.iter().filter(|&&p| p != p2) {
        net.recv_from(p, p2)?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpc::{NoOps, OpCounts};

    fn narrow_draw(seed_base: u64) -> impl FnMut(usize) -> Result<SignatureParams> {
        move |attempt| {
            let key = seed::derive(seed_base, "k", &[attempt as u64])
                .to_be_bytes()
                .to_vec();
            Ok(SignatureParams::narrow(key, vec![0; 16], 1))
        }
    }

    #[test]
    fn shuffle_bit_count() {
        assert_eq!(shuffle_bits(0), 0);
        assert_eq!(shuffle_bits(1), 0);
        assert_eq!(shuffle_bits(2), 1);
        // ceil(log2 2) + ceil(log2 3) + ceil(log2 4)
        assert_eq!(shuffle_bits(4), 1 + 2 + 2);
    }

    #[test]
    fn redraws_until_disjoint() {
        let inst = SetIncInstance::new(4, vec![0, 1], vec![vec![1], vec![2]]).unwrap();
        let mut used = 0;
        let mut draw = narrow_draw(7);
        let sig = agree_with(
            &inst,
            64,
            |a| {
                used = a + 1;
                draw(a)
            },
            &mut NoOps,
        )
        .unwrap();
        assert!(signature_domains_disjoint(&sig, &inst, &mut NoOps));
        // With one-bit digests and three outsiders per index, a first draw
        // passes with probability 1/64.
        assert!(used >= 1);
    }

    #[test]
    fn exhausts_after_budget() {
        let subsets = vec![vec![0, 1, 2, 3]; 4];
        let inst = SetIncInstance::new(9, vec![0; 4], subsets).unwrap();
        let mut counts = OpCounts::default();
        let err = agree_with(&inst, 3, narrow_draw(1), &mut counts).unwrap_err();
        assert!(matches!(err, Error::RetryExhausted { attempts: 3, .. }));
        assert!(counts.keyed_hash >= 3 * 9);
    }

    #[test]
    fn mediated_membership() {
        let inst = SetIncInstance::new(
            5,
            vec![0, 3, 4, 2],
            vec![vec![0, 1], vec![1, 2], vec![4], vec![0, 1, 2, 3, 4]],
        )
        .unwrap();
        let mut net = SimNet::with_views(3).unwrap();
        let b = setinc(&mut net, &inst, &SetIncConfig::default(), 11).unwrap();
        assert_eq!(b, vec![false, true, false, false]);
        for p in net.ids() {
            assert_eq!(net.pending_for(p), 0);
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(SetIncInstance::new(3, vec![3], vec![vec![0]]).is_err());
        assert!(SetIncInstance::new(3, vec![0], vec![vec![5]]).is_err());
        assert!(SetIncInstance::new(3, vec![0, 1], vec![vec![0]]).is_err());
    }
}
