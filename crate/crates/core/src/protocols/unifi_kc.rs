use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::mpc::{
    build_lookup_table, comm_decrypt, comm_encrypt, gen_fake_items, CipherKey,
    CommutativeCipherParams, Op, OpHook, DEFAULT_TABLE_ATTEMPTS,
};
use crate::net::{IterationMeta, Message, Payload, PlayerId, SimNet, OUTPUT_PHASE};
use crate::seed;

use super::labels;
use super::require_players;

fn ciphertexts(msg: Message) -> Result<Vec<BigUint>> {
    match msg.payload {
        Payload::Ciphertexts { items, .. } => Ok(items),
        other => Err(Error::Integrity(format!(
            "expected ciphertexts from {}, got {}",
            msg.sender,
            other.kind()
        ))),
    }
}

fn sort_dedup(mut v: Vec<BigUint>) -> Vec<BigUint> {
    v.sort();
    v.dedup();
    v
}

fn apply(
    params: &CommutativeCipherParams,
    key: &CipherKey,
    items: &[BigUint],
    decrypt: bool,
    hook: &mut dyn OpHook,
) -> Result<Vec<BigUint>> {
    let op = if decrypt {
        Op::CommDecrypt
    } else {
        Op::CommEncrypt
    };
    hook.record(op, items.len() as u64);
    items
        .iter()
        .map(|x| {
            if decrypt {
                comm_decrypt(params, key, x)
            } else {
                comm_encrypt(params, key, x)
            }
        })
        .collect()
}

/// Union of private subsets of the candidate list by commutative
/// encryption.
///
/// * setup: per-player keys and a public hash `h` that is injective on the
///   candidates, tabulated as `h(x) -> x`.
/// * encrypt: each player hashes and encrypts its itemsets, pads to `n_k`
///   with random fakes, then the lists travel the ring `P_m -> P_{m+1}`
///   for `M-1` rounds, each holder permuting and encrypting with its key.
/// * merge: odd players send to `P1`, even ones to `P2`; `P2` forwards its
///   deduplicated, permuted union to `P1`, which forms `EC`.
/// * decrypt: `EC` travels the ring from `P1` to `P_M`, each player
///   stripping its layer; `P_M` keeps the values found in the table and
///   broadcasts the union.
///
/// The simulator also checks that every true hash survives and that no
/// fake decrypts onto a table entry.
pub fn run_unifi_kc(
    net: &mut SimNet,
    local_sets: &[BTreeSet<Itemset>],
    candidates: &[Itemset],
    params: &CommutativeCipherParams,
    seed: u64,
) -> Result<BTreeSet<Itemset>> {
    let m = local_sets.len();
    require_players(m)?;
    if net.players() != m {
        return Err(Error::Dimension(format!(
            "{m} local sets on a {}-player network",
            net.players()
        )));
    }
    let ap: Vec<Itemset> = candidates
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for (idx, set) in local_sets.iter().enumerate() {
        if let Some(x) = set.iter().find(|x| ap.binary_search(x).is_err()) {
            return Err(Error::Contract(format!(
                "P{} holds {x:?}, which is not a candidate",
                idx + 1
            )));
        }
    }
    let n = ap.len();
    let width = params.bits();
    net.begin(
        labels::UNIFI_KC,
        IterationMeta {
            players: m,
            n: n as u64,
            cipher_bits: Some(width),
            ..IterationMeta::default()
        },
    );
    if n == 0 {
        return Ok(BTreeSet::new());
    }
    let ids = net.ids();
    let (p1, p2, pm) = (ids[0], ids[1], ids[m - 1]);
    let next = |p: PlayerId| ids[p.get() % m];
    let prev = |p: PlayerId| ids[(p.get() + m - 2) % m];
    let mut rngs: Vec<_> = (0..m)
        .map(|idx| seed::rng(seed, "kc-player", &[idx as u64]))
        .collect();

    net.set_phase("setup");
    let mut keys = Vec::with_capacity(m);
    for (idx, &p) in ids.iter().enumerate() {
        keys.push(CipherKey::random(params, &mut rngs[idx], &mut net.hook(p)));
    }
    let table = build_lookup_table(
        &ap,
        params,
        seed::derive(seed, "kc-hash", &[]),
        DEFAULT_TABLE_ATTEMPTS,
        &mut net.hook(pm),
    )?;

    net.set_phase("encrypt");
    let mut truth = HashSet::new();
    let mut lists = Vec::with_capacity(m);
    for (idx, &p) in ids.iter().enumerate() {
        let hashed: Vec<BigUint> = local_sets[idx]
            .iter()
            .map(|x| table.hash().eval(x))
            .collect();
        net.hook(p).record(Op::Hash, hashed.len() as u64);
        truth.extend(hashed.iter().cloned());
        let mut list = apply(params, &keys[idx], &hashed, false, &mut net.hook(p))?;
        list.extend(gen_fake_items(
            n - hashed.len(),
            params,
            &mut rngs[idx],
            &mut net.hook(p),
        ));
        lists.push(list);
    }
    for _ in 1..m {
        for (idx, &p) in ids.iter().enumerate() {
            let mut list = std::mem::take(&mut lists[idx]);
            list.shuffle(&mut rngs[idx]);
            net.send(p, next(p), Payload::Ciphertexts { width, items: list })?;
        }
        net.barrier();
        for (idx, &p) in ids.iter().enumerate() {
            let received = ciphertexts(net.recv_from(p, prev(p))?)?;
            lists[idx] = apply(params, &keys[idx], &received, false, &mut net.hook(p))?;
        }
    }

    net.set_phase("merge");
    for (idx, &p) in ids.iter().enumerate().skip(2) {
        let to = if p.get() % 2 == 1 { p1 } else { p2 };
        let items = std::mem::take(&mut lists[idx]);
        net.send(p, to, Payload::Ciphertexts { width, items })?;
    }
    net.barrier();
    let mut u1 = std::mem::take(&mut lists[0]);
    let mut u2 = std::mem::take(&mut lists[1]);
    for &p in ids.iter().skip(2) {
        if p.get() % 2 == 1 {
            u1.extend(ciphertexts(net.recv_from(p1, p)?)?);
        } else {
            u2.extend(ciphertexts(net.recv_from(p2, p)?)?);
        }
    }
    let mut u2 = sort_dedup(u2);
    u2.shuffle(&mut rngs[1]);
    net.send(p2, p1, Payload::Ciphertexts { width, items: u2 })?;
    net.barrier();
    u1.extend(ciphertexts(net.recv_from(p1, p2)?)?);
    let mut current = sort_dedup(u1);

    net.set_phase("decrypt");
    for (idx, &p) in ids.iter().enumerate().take(m - 1) {
        let mut list = apply(params, &keys[idx], &current, true, &mut net.hook(p))?;
        list.shuffle(&mut rngs[idx]);
        net.send(p, next(p), Payload::Ciphertexts { width, items: list })?;
        net.barrier();
        current = ciphertexts(net.recv_from(next(p), p)?)?;
    }
    let plain = apply(params, &keys[m - 1], &current, true, &mut net.hook(pm))?;
    let recovered: HashSet<&BigUint> = plain.iter().collect();
    if let Some(missing) = truth.iter().find(|h| !recovered.contains(h)) {
        return Err(Error::Integrity(format!("hash {missing} lost in transit")));
    }
    let mut union = BTreeSet::new();
    for h in &plain {
        if let Some(x) = table.lookup(h) {
            if !truth.contains(h) {
                return Err(Error::Integrity(format!("fake value decrypted onto {x:?}")));
            }
            union.insert(x.clone());
        }
    }

    net.set_phase(OUTPUT_PHASE);
    let items: Vec<Itemset> = union.iter().cloned().collect();
    let item_width = ap[0].width();
    net.broadcast(
        pm,
        Payload::Itemsets {
            width: item_width,
            items,
        },
    )?;
    net.barrier();
    for &p in ids.iter().filter(|&&p| p != pm) {
        net.recv_from(p, pm)?;
    }
    Ok(union)
}
