#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use secure_fdm::fdm::MiningResult;
use secure_fdm::{partition_db, Itemset, PartitionPolicy, PartitionedDb, Ratio, TransactionDb};

pub struct Instance {
    pub db: TransactionDb,
    pub parts: PartitionedDb,
    pub support: Ratio,
    pub confidence: Ratio,
}

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Random database with `L <= 10` items and `M <= N <= 64` rows, split
/// among `players` at random.
pub fn random_instance(seed: u64, players: usize) -> Instance {
    let mut r = rng(seed);
    let items = r.random_range(3..=10);
    let rows = r.random_range(players.max(4)..=64);
    let density = r.random_range(0.25..0.7);
    let table: Vec<Vec<usize>> = (0..rows)
        .map(|_| (0..items).filter(|_| r.random_bool(density)).collect())
        .collect();
    let refs: Vec<&[usize]> = table.iter().map(Vec::as_slice).collect();
    let db = TransactionDb::from_rows(items, &refs).unwrap();
    let parts = partition_db(&db, players, PartitionPolicy::Random { seed }).unwrap();
    let support = [(1, 4), (1, 2), (3, 4)][r.random_range(0..3)];
    let confidence = [(1, 2), (2, 3)][r.random_range(0..2)];
    Instance {
        db,
        parts,
        support: Ratio::new(support.0, support.1).unwrap(),
        confidence: Ratio::new(confidence.0, confidence.1).unwrap(),
    }
}

/// Brute-force support of every nonempty itemset, by bitmask.
pub fn all_supports(db: &TransactionDb) -> BTreeMap<u32, u64> {
    let l = db.items();
    let masks: Vec<u32> = db
        .rows()
        .iter()
        .map(|row| row.items().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    (1u32..(1 << l))
        .map(|x| (x, masks.iter().filter(|&&m| m & x == x).count() as u64))
        .collect()
}

pub fn to_itemset(width: usize, mask: u32) -> Itemset {
    Itemset::from_items(width, (0..width).filter(|i| mask & (1 << i) != 0)).unwrap()
}

/// Ground truth: frequent itemsets with supports, and accepted rules
/// `(X, Y, supp(X∪Y), supp(X))` with `|Y| <= max_consequent`.
pub struct Truth {
    pub frequent: BTreeMap<Itemset, u64>,
    pub rules: BTreeSet<(Itemset, Itemset, u64, u64)>,
}

pub fn oracle(db: &TransactionDb, s: Ratio, c: Ratio, max_consequent: usize) -> Truth {
    let width = db.items();
    let n = db.len() as u64;
    let supports = all_supports(db);
    let frequent_masks: Vec<u32> = supports
        .iter()
        .filter(|(_, &sup)| sup * s.den() >= s.num() * n)
        .map(|(&x, _)| x)
        .collect();
    let mut rules = BTreeSet::new();
    for &z in &frequent_masks {
        let mut y = (z - 1) & z;
        while y != 0 {
            let x = z & !y;
            if x != 0 && (y.count_ones() as usize) <= max_consequent {
                let (sz, sx) = (supports[&z], supports[&x]);
                if sz * c.den() >= c.num() * sx {
                    rules.insert((to_itemset(width, x), to_itemset(width, y), sz, sx));
                }
            }
            y = (y - 1) & z;
        }
    }
    Truth {
        frequent: frequent_masks
            .iter()
            .map(|&x| (to_itemset(width, x), supports[&x]))
            .collect(),
        rules,
    }
}

pub fn rule_pairs(result: &MiningResult) -> BTreeSet<(Itemset, Itemset)> {
    result
        .rules
        .iter()
        .map(|r| (r.rule.antecedent().clone(), r.rule.consequent().clone()))
        .collect()
}

/// Compare a mining result with the oracle. Supports and confidences are
/// compared only where the result carries them.
pub fn matches_truth(result: &MiningResult, truth: &Truth) -> Result<(), String> {
    let got: BTreeSet<&Itemset> = result.frequent.keys().collect();
    let want: BTreeSet<&Itemset> = truth.frequent.keys().collect();
    if got != want {
        return Err(format!("frequent sets differ: got {got:?}, want {want:?}"));
    }
    for (x, s) in &result.frequent {
        if let Some(s) = s {
            if *s != truth.frequent[x] {
                return Err(format!(
                    "support of {x:?}: got {s}, want {}",
                    truth.frequent[x]
                ));
            }
        }
    }
    let want_pairs: BTreeSet<(Itemset, Itemset)> = truth
        .rules
        .iter()
        .map(|(x, y, _, _)| (x.clone(), y.clone()))
        .collect();
    if rule_pairs(result) != want_pairs {
        return Err(format!(
            "rules differ: got {:?}, want {want_pairs:?}",
            rule_pairs(result)
        ));
    }
    for r in &result.rules {
        let (x, y) = (r.rule.antecedent(), r.rule.consequent());
        let (_, _, sz, sx) = truth
            .rules
            .iter()
            .find(|(a, b, _, _)| a == x && b == y)
            .unwrap();
        if r.support.is_some_and(|s| s != *sz) || r.confidence.is_some_and(|c| c != (*sz, *sx)) {
            return Err(format!("rule {x:?} => {y:?} carries wrong counts"));
        }
    }
    Ok(())
}

/// `T_t`: entry `i` is set iff at least `t` inputs have a 1 there.
pub fn threshold_oracle(inputs: &[Vec<u8>], t: usize) -> Vec<bool> {
    (0..inputs[0].len())
        .map(|i| inputs.iter().filter(|v| v[i] == 1).count() >= t)
        .collect()
}

/// Random local subsets of a random candidate list.
pub fn random_local_sets(
    seed: u64,
    players: usize,
    width: usize,
    n: usize,
) -> (Vec<Itemset>, Vec<BTreeSet<Itemset>>) {
    let mut r = rng(seed);
    let mut ap = BTreeSet::new();
    while ap.len() < n {
        let size = r.random_range(1..=3.min(width));
        let items: BTreeSet<usize> = (0..size).map(|_| r.random_range(0..width)).collect();
        ap.insert(Itemset::from_items(width, items).unwrap());
    }
    let ap: Vec<Itemset> = ap.into_iter().collect();
    let p = r.random_range(0.1..0.9);
    let locals = (0..players)
        .map(|_| ap.iter().filter(|_| r.random_bool(p)).cloned().collect())
        .collect();
    (ap, locals)
}

/// Pearson chi-square statistic against the uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}
