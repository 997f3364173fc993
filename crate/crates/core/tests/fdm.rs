mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use common::{matches_truth, oracle, random_instance};
use secure_fdm::fdm::local_prune;
use secure_fdm::mpc::CommutativeCipherParams;
use secure_fdm::{
    plaintext_apriori, run_secure_fdm, Error, Itemset, MiningConfig, PartitionedDb, Ratio,
    TransactionDb, UnionProtocol,
};

fn cipher() -> &'static CommutativeCipherParams {
    static PARAMS: OnceLock<CommutativeCipherParams> = OnceLock::new();
    PARAMS.get_or_init(|| {
        CommutativeCipherParams::generate(128, &mut secure_fdm::seed::rng(3, "fdm-tests", &[]))
            .unwrap()
    })
}

fn config(s: Ratio, c: Ratio, protocol: UnionProtocol, seed: u64) -> MiningConfig {
    let mut cfg = MiningConfig::new(s, c);
    cfg.protocol = protocol;
    cfg.seed = seed;
    cfg.cipher = Some(cipher().clone());
    cfg
}

fn db4_contiguous() -> PartitionedDb {
    let db = TransactionDb::from_rows(3, &[&[0, 1], &[0, 2], &[0, 1, 2], &[1]]).unwrap();
    let rows = db.rows();
    PartitionedDb::new(vec![
        TransactionDb::new(3, rows[0..2].to_vec()).unwrap(),
        TransactionDb::new(3, rows[2..3].to_vec()).unwrap(),
        TransactionDb::new(3, rows[3..4].to_vec()).unwrap(),
    ])
    .unwrap()
}

fn x(items: &[usize]) -> Itemset {
    Itemset::from_items(3, items.iter().copied()).unwrap()
}

#[test]
fn db4_results_match_across_protocols() {
    let parts = db4_contiguous();
    let s = Ratio::new(1, 2).unwrap();
    let c = Ratio::new(3, 5).unwrap();
    let frequent: BTreeSet<Itemset> = [x(&[0]), x(&[1]), x(&[2]), x(&[0, 1]), x(&[0, 2])].into();
    let rules: BTreeSet<(Itemset, Itemset)> = [
        (x(&[0]), x(&[1])),
        (x(&[1]), x(&[0])),
        (x(&[0]), x(&[2])),
        (x(&[2]), x(&[0])),
    ]
    .into();
    let mut outputs = Vec::new();
    for protocol in [
        UnionProtocol::Plaintext,
        UnionProtocol::Unifi,
        UnionProtocol::UnifiKc,
    ] {
        let mut cfg = config(s, c, protocol, 7);
        cfg.reveal_supports = true;
        let r = run_secure_fdm(&parts, &cfg).unwrap();
        assert_eq!(r.frequent_sets(), frequent);
        assert_eq!(common::rule_pairs(&r), rules);
        outputs.push((r.frequent.clone(), r.rules.clone()));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn full_support_threshold_is_empty() {
    let parts = db4_contiguous();
    for protocol in [
        UnionProtocol::Plaintext,
        UnionProtocol::Unifi,
        UnionProtocol::UnifiKc,
    ] {
        let cfg = config(
            Ratio::new(1, 1).unwrap(),
            Ratio::new(3, 5).unwrap(),
            protocol,
            1,
        );
        let r = run_secure_fdm(&parts, &cfg).unwrap();
        assert!(r.frequent.is_empty());
        assert!(r.rules.is_empty());
    }
}

#[test]
fn local_prune_per_player() {
    let parts = db4_contiguous();
    let s = Ratio::new(1, 2).unwrap();
    let singles: BTreeSet<Itemset> = [x(&[0]), x(&[1]), x(&[2])].into();
    assert_eq!(
        local_prune(&parts.parts()[0], &singles, s).unwrap(),
        singles
    );
    assert_eq!(
        local_prune(&parts.parts()[2], &singles, s).unwrap(),
        [x(&[1])].into()
    );
    assert!(local_prune(&parts.parts()[1], &BTreeSet::new(), s)
        .unwrap()
        .is_empty());
}

#[test]
fn two_players_rejected_for_secure_protocols() {
    let db = TransactionDb::from_rows(2, &[&[0], &[1], &[0, 1]]).unwrap();
    let parts =
        secure_fdm::itemset::split_rows(&db, 2, secure_fdm::PartitionPolicy::RoundRobin).unwrap();
    let s = Ratio::new(1, 2).unwrap();
    for protocol in [UnionProtocol::Unifi, UnionProtocol::UnifiKc] {
        let err = run_secure_fdm(&parts, &config(s, s, protocol, 0)).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }
    assert!(run_secure_fdm(&parts, &config(s, s, UnionProtocol::Plaintext, 0)).is_ok());
}

#[test]
fn random_instances_match_oracle_for_every_protocol() {
    for seed in 0..100u64 {
        let players = 3 + (seed % 3) as usize;
        let inst = random_instance(1000 + seed, players);
        let truth = oracle(&inst.db, inst.support, inst.confidence, 1);
        for protocol in [
            UnionProtocol::Plaintext,
            UnionProtocol::Unifi,
            UnionProtocol::UnifiKc,
        ] {
            let mut cfg = config(inst.support, inst.confidence, protocol, seed);
            cfg.reveal_supports = seed % 2 == 0;
            let r = run_secure_fdm(&inst.parts, &cfg).unwrap();
            if let Err(e) = matches_truth(&r, &truth) {
                panic!("seed {seed}, {protocol}: {e}");
            }
        }
    }
}

#[test]
fn larger_consequents_match_oracle() {
    for seed in 0..20u64 {
        let inst = random_instance(5000 + seed, 3);
        let truth = oracle(&inst.db, inst.support, inst.confidence, 3);
        let mut cfg = config(inst.support, inst.confidence, UnionProtocol::Unifi, seed);
        cfg.max_consequent = 3;
        cfg.reveal_supports = true;
        let r = run_secure_fdm(&inst.parts, &cfg).unwrap();
        matches_truth(&r, &truth).unwrap();
    }
}

#[test]
fn union_never_misses_a_globally_frequent_itemset() {
    for seed in 0..40u64 {
        let inst = random_instance(7000 + seed, 3 + (seed % 3) as usize);
        let truth = plaintext_apriori(&inst.db, inst.support).unwrap();
        let cfg = config(inst.support, inst.confidence, UnionProtocol::Unifi, seed);
        let r = run_secure_fdm(&inst.parts, &cfg).unwrap();
        for it in &r.iterations {
            for x in truth.keys().filter(|x| x.len() == it.k) {
                assert!(
                    it.union.contains(x),
                    "seed {seed}: {x:?} missing at k={}",
                    it.k
                );
                assert!(it.local.iter().any(|c| c.contains(x)));
            }
            for c in &it.local {
                assert!(c.iter().all(|x| it.candidates.contains(x)));
            }
        }
        assert!(r.iterations.len() <= inst.db.items());
        let ks: Vec<usize> = r.iterations.iter().map(|it| it.k).collect();
        assert_eq!(ks, (1..=ks.len()).collect::<Vec<_>>());
    }
}

#[test]
fn identical_configuration_is_deterministic() {
    let inst = random_instance(42, 4);
    for protocol in [UnionProtocol::Unifi, UnionProtocol::UnifiKc] {
        let cfg = config(inst.support, inst.confidence, protocol, 9);
        let a = run_secure_fdm(&inst.parts, &cfg).unwrap();
        let b = run_secure_fdm(&inst.parts, &cfg).unwrap();
        assert_eq!(a.ledger, b.ledger);
        assert_eq!(a.transcript, b.transcript);
        assert_eq!(a.rules, b.rules);
    }
}
