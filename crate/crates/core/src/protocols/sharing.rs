use crate::error::{Error, Result};
use crate::mpc::{share_vector, ShareVector};
use crate::net::{Payload, SimNet};
use crate::seed;

use super::{require_players, residues};

/// Additive shares of `Σ_m v_m (mod q)` held by two players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoShares {
    /// `s = Σ_{ℓ < M} s_ℓ`, held by `P1`.
    pub first: ShareVector,
    /// `s_M`, held by `P_M`.
    pub last: ShareVector,
}

/// Secure summation that stops one step short of revealing the sum.
///
/// 1. Every `P_m` splits its vector into `M` additive shares over `Z_q`.
/// 2. All-to-all: `P_m` sends share `ℓ` to `P_ℓ` (phase `share`).
/// 3. `P_ℓ` adds what it holds into `s_ℓ`.
/// 4. `P_2..P_{M-1}` send `s_ℓ` to `P1` (phase `collect`); `P1` adds them.
///
/// `P_M` keeps `s_M`, so `P1` ends with a uniformly random share of the sum.
/// With `reveal`, `P_M` sends `s_M` along in step 4 and `first` becomes the
/// sum itself (and `last` is then the share `P_M` gave away).
pub fn sum_to_two(
    net: &mut SimNet,
    inputs: &[Vec<u64>],
    q: u64,
    seed: u64,
    reveal: bool,
) -> Result<TwoShares> {
    let m = net.players();
    require_players(m)?;
    if inputs.len() != m {
        return Err(Error::Dimension(format!(
            "{} input vectors for {m} players",
            inputs.len()
        )));
    }
    let n = inputs[0].len();
    if inputs.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension("input vectors differ in length".into()));
    }
    let ids = net.ids();
    let p1 = ids[0];
    let pm = ids[m - 1];

    net.set_phase("share");
    let mut outgoing = Vec::with_capacity(m);
    for (idx, input) in inputs.iter().enumerate() {
        let mut rng = seed::rng(seed, "sum-share", &[idx as u64]);
        outgoing.push(share_vector(
            input,
            m,
            q,
            &mut rng,
            &mut net.hook(ids[idx]),
        )?);
    }
    for (from_idx, shares) in outgoing.iter().enumerate() {
        for (to_idx, share) in shares.iter().enumerate() {
            if from_idx != to_idx {
                net.send(ids[from_idx], ids[to_idx], Payload::Residues(share.clone()))?;
            }
        }
    }
    net.barrier();

    let mut sums = Vec::with_capacity(m);
    for (idx, &me) in ids.iter().enumerate() {
        let mut acc = outgoing[idx][idx].clone();
        for &other in ids.iter().filter(|&&p| p != me) {
            let share = residues(net.recv_from(me, other)?)?;
            acc.add_assign(&share, &mut net.hook(me))?;
        }
        net.observe(me, "share-sum", || Payload::Residues(acc.clone()));
        sums.push(acc);
    }

    net.set_phase("collect");
    let senders = if reveal { &ids[1..] } else { &ids[1..m - 1] };
    for &p in senders {
        net.send(p, p1, Payload::Residues(sums[p.get() - 1].clone()))?;
    }
    net.barrier();
    let mut first = sums[0].clone();
    for &p in senders {
        let share = residues(net.recv_from(p1, p)?)?;
        first.add_assign(&share, &mut net.hook(p1))?;
    }
    let label = if reveal { "sum" } else { "collected-share" };
    net.observe(p1, label, || Payload::Residues(first.clone()));
    Ok(TwoShares {
        first,
        last: sums[pm.get() - 1].clone(),
    })
}
