use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::itemset::Itemset;
use crate::net::{IterationMeta, SimNet};

use super::labels;
use super::require_players;
use super::setinc::SetIncConfig;
use super::threshold::{threshold_c_inner, ThresholdInstance};

/// Sorted, deduplicated candidate list and each player's indicator vector.
fn indicator_vectors(
    local_sets: &[BTreeSet<Itemset>],
    candidates: &[Itemset],
) -> Result<(Vec<Itemset>, Vec<Vec<u8>>)> {
    let ap: Vec<Itemset> = candidates
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut vectors = Vec::with_capacity(local_sets.len());
    for (m, set) in local_sets.iter().enumerate() {
        if let Some(x) = set.iter().find(|x| ap.binary_search(x).is_err()) {
            return Err(Error::Contract(format!(
                "P{} holds {x:?}, which is not a candidate",
                m + 1
            )));
        }
        vectors.push(ap.iter().map(|x| u8::from(set.contains(x))).collect());
    }
    Ok((ap, vectors))
}

fn unify(
    net: &mut SimNet,
    local_sets: &[BTreeSet<Itemset>],
    candidates: &[Itemset],
    all: bool,
    config: &SetIncConfig,
    seed: u64,
) -> Result<BTreeSet<Itemset>> {
    require_players(local_sets.len())?;
    let (ap, vectors) = indicator_vectors(local_sets, candidates)?;
    let threshold = if all { local_sets.len() } else { 1 };
    net.begin(
        labels::UNIFI,
        IterationMeta {
            players: local_sets.len(),
            n: ap.len() as u64,
            digest_bits: Some(config.digest_bits),
            modulus: Some(local_sets.len() as u64 + 1),
            threshold: Some(threshold),
            ..IterationMeta::default()
        },
    );
    if ap.is_empty() {
        return Ok(BTreeSet::new());
    }
    let instance = ThresholdInstance::new(threshold, vectors)?;
    let bits = threshold_c_inner(net, &instance, config, seed)?;
    Ok(ap
        .into_iter()
        .zip(bits)
        .filter_map(|(x, b)| b.then_some(x))
        .collect())
}

/// Union of the players' private subsets of the agreed candidate list.
pub fn run_unifi(
    net: &mut SimNet,
    local_sets: &[BTreeSet<Itemset>],
    candidates: &[Itemset],
    config: &SetIncConfig,
    seed: u64,
) -> Result<BTreeSet<Itemset>> {
    unify(net, local_sets, candidates, false, config, seed)
}

/// Intersection of the players' private subsets (threshold `t = M`).
pub fn run_unifi_intersection(
    net: &mut SimNet,
    local_sets: &[BTreeSet<Itemset>],
    candidates: &[Itemset],
    config: &SetIncConfig,
    seed: u64,
) -> Result<BTreeSet<Itemset>> {
    unify(net, local_sets, candidates, true, config, seed)
}
