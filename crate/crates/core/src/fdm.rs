//! Distributed Apriori over a horizontally partitioned database.
//!
//! Per iteration `k`:
//!
//! 1. every player forms `B^{k,m} = Ap(F^{k-1,m})` from the globally
//!    frequent `(k-1)`-itemsets that are also frequent at its site;
//! 2. prunes it to the locally frequent `C^{k,m}`;
//! 3. the players unify the `C^{k,m}` into `C^k` over the public candidate
//!    list `Ap(F^{k-1})`;
//! 4. each player counts `C^k` locally and the group keeps the globally
//!    frequent ones, `F^k`.
//!
//! For `k = 1` the candidate list is the `L` single items. The loop stops
//! when the candidate list is empty. Rules are then derived from
//! `F = ∪ F^k` with a secure confidence check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::itemset::{apriori_gen, Itemset, PartitionedDb, Ratio, TransactionDb};
use crate::mpc::CommutativeCipherParams;
use crate::net::{CostLedger, SimNet, TranscriptRecord};
use crate::protocols::{run_unifi, run_unifi_kc, SetIncConfig};
use crate::seed;
use crate::support::{
    enumerate_candidate_rules, secure_confidence_check, secure_frequency_check, AssociationRule,
    CheckOutcome, IdealComparator, LocalCounts, SumMode,
};

/// How stage 4 unifies the players' candidate sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum UnionProtocol {
    #[default]
    Unifi,
    UnifiKc,
    /// No protection: plain union and plain threshold tests.
    Plaintext,
}

impl UnionProtocol {
    pub fn is_secure(self) -> bool {
        self != UnionProtocol::Plaintext
    }
}

impl fmt::Display for UnionProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnionProtocol::Unifi => "unifi",
            UnionProtocol::UnifiKc => "unifi-kc",
            UnionProtocol::Plaintext => "plaintext",
        })
    }
}

impl FromStr for UnionProtocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unifi" => Ok(UnionProtocol::Unifi),
            "unifi-kc" => Ok(UnionProtocol::UnifiKc),
            "plaintext" => Ok(UnionProtocol::Plaintext),
            _ => Err(Error::Unsupported(format!("unknown protocol {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MiningConfig {
    pub support: Ratio,
    pub confidence: Ratio,
    pub protocol: UnionProtocol,
    /// Reveal the summed `Δ` values (and hence supports) to `P1`.
    pub reveal_supports: bool,
    pub max_consequent: usize,
    pub seed: u64,
    pub digest_bits: usize,
    /// Size of the commutative cipher modulus when `cipher` is unset.
    pub modulus_bits: u64,
    /// Pre-generated cipher group, reused instead of generating one.
    pub cipher: Option<CommutativeCipherParams>,
}

impl MiningConfig {
    pub fn new(support: Ratio, confidence: Ratio) -> Self {
        MiningConfig {
            support,
            confidence,
            protocol: UnionProtocol::Unifi,
            reveal_supports: false,
            max_consequent: 1,
            seed: 0,
            digest_bits: 160,
            modulus_bits: 256,
            cipher: None,
        }
    }
}

/// What one iteration produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationSummary {
    pub k: usize,
    /// The public candidate list `Ap(F^{k-1})`.
    pub candidates: Vec<Itemset>,
    /// `C^{k,m}` per player.
    pub local: Vec<BTreeSet<Itemset>>,
    /// `C^k`, the unified candidate set.
    pub union: BTreeSet<Itemset>,
    /// `F^k`.
    pub frequent: BTreeSet<Itemset>,
}

#[derive(Clone, Debug)]
pub struct MiningResult {
    /// Globally frequent itemsets; supports are `Some` only when revealed.
    pub frequent: BTreeMap<Itemset, Option<u64>>,
    pub rules: Vec<AssociationRule>,
    pub iterations: Vec<IterationSummary>,
    pub ledger: CostLedger,
    pub transcript: Vec<TranscriptRecord>,
}

impl MiningResult {
    pub fn frequent_sets(&self) -> BTreeSet<Itemset> {
        self.frequent.keys().cloned().collect()
    }

    /// One line per itemset: space-separated item ids, a tab, and the
    /// support or `-`. Sorted by size, then item ids.
    pub fn write_frequent<W: Write>(&self, mut out: W) -> Result<()> {
        let mut lines: Vec<(Vec<usize>, Option<u64>)> = self
            .frequent
            .iter()
            .map(|(x, s)| (x.items().collect(), *s))
            .collect();
        lines.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        for (items, support) in lines {
            let ids: Vec<String> = items.iter().map(usize::to_string).collect();
            let support = support.map_or("-".to_string(), |s| s.to_string());
            writeln!(out, "{}\t{}", ids.join(" "), support)?;
        }
        Ok(())
    }
}

/// `{X ∈ B : supp_m(X)·s.den >= s.num·N_m}`, computed from the player's own
/// rows.
pub fn local_prune(
    db: &TransactionDb,
    candidates: &BTreeSet<Itemset>,
    s: Ratio,
) -> Result<BTreeSet<Itemset>> {
    let rows = db.len() as u64;
    let mut kept = BTreeSet::new();
    for x in candidates {
        if s.is_met(db.support(x)?, rows) {
            kept.insert(x.clone());
        }
    }
    Ok(kept)
}

struct Driver<'a> {
    parts: &'a PartitionedDb,
    config: &'a MiningConfig,
    net: SimNet,
    cipher: Option<CommutativeCipherParams>,
    locals: Vec<LocalCounts>,
    mode: SumMode,
    /// Global supports, when known to the output.
    supports: BTreeMap<Itemset, u64>,
}

impl Driver<'_> {
    fn unify(
        &mut self,
        k: usize,
        local: &[BTreeSet<Itemset>],
        ap: &[Itemset],
    ) -> Result<BTreeSet<Itemset>> {
        let seed = seed::derive(self.config.seed, "union", &[k as u64]);
        match self.config.protocol {
            UnionProtocol::Plaintext => Ok(local.iter().flatten().cloned().collect()),
            UnionProtocol::Unifi => {
                let cfg = SetIncConfig {
                    digest_bits: self.config.digest_bits,
                    ..SetIncConfig::default()
                };
                run_unifi(&mut self.net, local, ap, &cfg, seed)
            }
            UnionProtocol::UnifiKc => {
                let params = self.cipher.as_ref().expect("cipher set up for unifi-kc");
                run_unifi_kc(&mut self.net, local, ap, params, seed)
            }
        }
    }

    fn global_support(&self, x: &Itemset) -> u64 {
        self.locals.iter().map(|l| l.support(x).unwrap_or(0)).sum()
    }

    fn frequency(&mut self, k: usize, union: &BTreeSet<Itemset>) -> Result<BTreeSet<Itemset>> {
        let cands: Vec<Itemset> = union.iter().cloned().collect();
        for (local, db) in self.locals.iter_mut().zip(self.parts.parts()) {
            for x in &cands {
                local.insert(x.clone(), db.support(x)?);
            }
        }
        let s = self.config.support;
        let total = self.parts.total_rows() as u64;
        let accepted = if self.config.protocol.is_secure() {
            let seed = seed::derive(self.config.seed, "frequency", &[k as u64]);
            let CheckOutcome { accepted, revealed } = secure_frequency_check(
                &mut self.net,
                &cands,
                &self.locals,
                s,
                self.mode,
                &mut IdealComparator::new(),
                seed,
            )?;
            if let Some(deltas) = revealed {
                for (x, d) in cands.iter().zip(deltas) {
                    let scaled = d + i128::from(s.num()) * i128::from(total);
                    self.supports
                        .insert(x.clone(), (scaled / i128::from(s.den())) as u64);
                }
            }
            accepted
        } else {
            let mut flags = Vec::with_capacity(cands.len());
            for x in &cands {
                let supp = self.global_support(x);
                self.supports.insert(x.clone(), supp);
                flags.push(s.is_met(supp, total));
            }
            flags
        };
        Ok(cands
            .into_iter()
            .zip(accepted)
            .filter_map(|(x, a)| a.then_some(x))
            .collect())
    }

    fn rules(&mut self, frequent: &BTreeSet<Itemset>) -> Result<Vec<AssociationRule>> {
        let candidates = enumerate_candidate_rules(frequent, self.config.max_consequent);
        let c = self.config.confidence;
        let accepted = if self.config.protocol.is_secure() {
            self.net.set_iteration(0);
            let seed = seed::derive(self.config.seed, "confidence", &[]);
            secure_confidence_check(
                &mut self.net,
                &candidates,
                &self.locals,
                c,
                self.mode,
                &mut IdealComparator::new(),
                seed,
            )?
            .accepted
        } else {
            candidates
                .iter()
                .map(|r| {
                    c.is_met(
                        self.global_support(&r.union()),
                        self.global_support(r.antecedent()),
                    )
                })
                .collect()
        };
        Ok(candidates
            .into_iter()
            .zip(accepted)
            .filter_map(|(rule, a)| a.then_some(rule))
            .map(|rule| {
                let joint = self.supports.get(&rule.union()).copied();
                let ante = self.supports.get(rule.antecedent()).copied();
                AssociationRule {
                    rule,
                    support: joint,
                    confidence: joint.zip(ante),
                }
            })
            .collect())
    }
}

/// Mine every globally frequent itemset and every accepted rule of `parts`.
///
/// Secure protocols need `M > 2` players. Local work never leaves a
/// player; everything shared goes through the simulated network, whose
/// ledger and transcript are returned with the result.
pub fn run_secure_fdm(parts: &PartitionedDb, config: &MiningConfig) -> Result<MiningResult> {
    let m = parts.players();
    if config.protocol.is_secure() && m <= 2 {
        return Err(Error::Unsupported(format!(
            "protocol {} needs more than two players, got {m}",
            config.protocol
        )));
    }
    if parts.total_rows() == 0 {
        return Err(Error::Contract("empty database".into()));
    }
    let cipher = match (config.protocol, &config.cipher) {
        (UnionProtocol::UnifiKc, Some(p)) => Some(p.clone()),
        (UnionProtocol::UnifiKc, None) => Some(CommutativeCipherParams::for_bits(
            config.modulus_bits,
            &mut seed::rng(config.seed, "cipher-group", &[]),
        )?),
        _ => None,
    };
    let width = parts.items();
    let mut driver = Driver {
        parts,
        config,
        net: SimNet::new(m)?,
        cipher,
        locals: parts
            .parts()
            .iter()
            .map(|p| LocalCounts::new(p.len() as u64))
            .collect(),
        mode: if config.reveal_supports {
            SumMode::Revealed
        } else {
            SumMode::Withheld
        },
        supports: BTreeMap::new(),
    };

    let mut iterations = Vec::new();
    let mut all_frequent = BTreeSet::new();
    let mut prev: BTreeSet<Itemset> = BTreeSet::new();
    for k in 1..=width {
        let (ap, bases): (Vec<Itemset>, Vec<BTreeSet<Itemset>>) = if k == 1 {
            let singles = (0..width)
                .map(|i| Itemset::singleton(width, i))
                .collect::<Result<Vec<_>>>()?;
            let b = singles.iter().cloned().collect();
            (singles, vec![b; m])
        } else {
            let ap = apriori_gen(&prev)?;
            let mut bases = Vec::with_capacity(m);
            for (local, db) in driver.locals.iter().zip(parts.parts()) {
                let rows = db.len() as u64;
                let mine: Vec<&Itemset> = prev
                    .iter()
                    .filter(|x| {
                        local
                            .support(x)
                            .is_some_and(|s| config.support.is_met(s, rows))
                    })
                    .collect();
                bases.push(apriori_gen(mine)?.into_iter().collect());
            }
            (ap, bases)
        };
        if ap.is_empty() {
            break;
        }
        driver.net.set_iteration(k);
        let local = bases
            .iter()
            .zip(parts.parts())
            .map(|(b, db)| local_prune(db, b, config.support))
            .collect::<Result<Vec<_>>>()?;
        let union = driver.unify(k, &local, &ap)?;
        let frequent = driver.frequency(k, &union)?;
        all_frequent.extend(frequent.iter().cloned());
        iterations.push(IterationSummary {
            k,
            candidates: ap,
            local,
            union,
            frequent: frequent.clone(),
        });
        if frequent.is_empty() {
            break;
        }
        prev = frequent;
    }

    let rules = driver.rules(&all_frequent)?;
    let frequent = all_frequent
        .into_iter()
        .map(|x| {
            let s = driver.supports.get(&x).copied();
            (x, s)
        })
        .collect();
    let transcript = driver.net.transcript().to_vec();
    Ok(MiningResult {
        frequent,
        rules,
        iterations,
        ledger: driver.net.into_ledger(),
        transcript,
    })
}
