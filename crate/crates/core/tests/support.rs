mod common;

use std::collections::BTreeSet;

use common::{all_supports, chi_square_uniform, random_instance, to_itemset};
use rand::seq::IndexedRandom;
use secure_fdm::net::{Payload, PlayerId};
use secure_fdm::support::{
    secure_confidence_check, secure_frequency_check, secure_sum_withheld, CandidateRule,
    IdealComparator, LocalCounts, SumMode,
};
use secure_fdm::{Itemset, SimNet};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn secure_checks_match_plaintext_tests() {
    for seed in 0..200u64 {
        let players = 3 + (seed % 3) as usize;
        let inst = random_instance(20_000 + seed, players);
        let width = inst.db.items();
        let n = inst.db.len() as u64;
        let supports = all_supports(&inst.db);
        let mut r = common::rng(seed);
        let masks: Vec<u32> = supports.keys().copied().collect();
        let cands: Vec<Itemset> = masks
            .choose_multiple(&mut r, 12)
            .map(|&m| to_itemset(width, m))
            .collect();
        let mut rules = Vec::new();
        let mut rule_masks = Vec::new();
        for &z in masks.iter().filter(|m| m.count_ones() >= 2).take(10) {
            let y = z & z.wrapping_neg();
            let x = z & !y;
            rules.push(CandidateRule::new(to_itemset(width, x), to_itemset(width, y)).unwrap());
            rule_masks.push((x, z));
        }
        let everything: BTreeSet<Itemset> = masks.iter().map(|&m| to_itemset(width, m)).collect();
        let locals: Vec<LocalCounts> = inst
            .parts
            .parts()
            .iter()
            .map(|p| LocalCounts::count(p, &everything).unwrap())
            .collect();
        let (s, c) = (inst.support, inst.confidence);
        let want_f: Vec<bool> = cands
            .iter()
            .map(|x| {
                let m = x.items().fold(0u32, |acc, i| acc | (1 << i));
                supports[&m] * s.den() >= s.num() * n
            })
            .collect();
        let want_c: Vec<bool> = rule_masks
            .iter()
            .map(|(x, z)| supports[z] * c.den() >= c.num() * supports[x])
            .collect();
        for mode in [SumMode::Withheld, SumMode::Revealed] {
            let mut net = SimNet::new(players).unwrap();
            let f = secure_frequency_check(
                &mut net,
                &cands,
                &locals,
                s,
                mode,
                &mut IdealComparator::new(),
                seed,
            )
            .unwrap();
            assert_eq!(f.accepted, want_f, "seed {seed}");
            let cf = secure_confidence_check(
                &mut net,
                &rules,
                &locals,
                c,
                mode,
                &mut IdealComparator::new(),
                seed,
            )
            .unwrap();
            assert_eq!(cf.accepted, want_c, "seed {seed}");
            if let Some(deltas) = f.revealed {
                let q = 2 * s.den() * n + 1;
                for d in deltas {
                    assert!(d.unsigned_abs() <= u128::from(s.den() * n));
                    assert!(2 * d.unsigned_abs() < u128::from(q));
                }
            }
        }
    }
}

#[test]
fn middle_player_shares_are_uniform() {
    let q = 17u64;
    let runs = 10_000u64;
    let mut counts = vec![0u64; q as usize];
    for seed in 0..runs {
        let mut net = SimNet::with_views(4).unwrap();
        secure_sum_withheld(&mut net, &[vec![2], vec![1], vec![-1], vec![5]], q, seed).unwrap();
        let view = net.view(PlayerId::new(2)).unwrap();
        let first = view
            .entries()
            .iter()
            .find_map(|e| match &e.payload {
                Payload::Residues(v) => Some(v.values()[0]),
                _ => None,
            })
            .unwrap();
        counts[first as usize] += 1;
    }
    let stat = chi_square_uniform(&counts);
    let critical = ChiSquared::new((q - 1) as f64).unwrap().inverse_cdf(0.99);
    assert!(stat < critical, "{stat} >= {critical}");
}
