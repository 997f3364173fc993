use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::itemset::{Itemset, Ratio, TransactionDb};
use crate::net::{IterationMeta, Payload, SimNet, OUTPUT_PHASE};
use crate::protocols::{labels, sum_to_two};

use super::compare::Comparator;
use super::rules::CandidateRule;
use super::sum::centered;

/// One player's row count `N_m` and local supports `supp_m(x)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalCounts {
    rows: u64,
    supports: HashMap<Itemset, u64>,
}

impl LocalCounts {
    pub fn new(rows: u64) -> Self {
        LocalCounts {
            rows,
            supports: HashMap::new(),
        }
    }

    /// Count every itemset in `itemsets` against `db`.
    pub fn count<'a>(
        db: &TransactionDb,
        itemsets: impl IntoIterator<Item = &'a Itemset>,
    ) -> Result<Self> {
        let mut counts = Self::new(db.len() as u64);
        for x in itemsets {
            counts.supports.insert(x.clone(), db.support(x)?);
        }
        Ok(counts)
    }

    pub fn insert(&mut self, x: Itemset, support: u64) {
        self.supports.insert(x, support);
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn support(&self, x: &Itemset) -> Option<u64> {
        self.supports.get(x).copied()
    }

    fn require(&self, x: &Itemset, player: usize) -> Result<u64> {
        self.support(x)
            .ok_or_else(|| Error::Contract(format!("P{player} has no local support for {x:?}")))
    }
}

/// How the `Δ` vector is summed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SumMode {
    /// `P_M` withholds its share; only the comparison bit is revealed.
    #[default]
    Withheld,
    /// Plain secure summation; `P1` learns every `Σ Δ`.
    Revealed,
}

/// Accept/reject bit per input, aligned with the input order, plus the
/// summed values when they were revealed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub accepted: Vec<bool>,
    pub revealed: Option<Vec<i128>>,
}

fn scaled_modulus(den: u64, total: u64) -> Result<u64> {
    2u64.checked_mul(den)
        .and_then(|v| v.checked_mul(total))
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Range(format!("modulus 2·{den}·{total}+1 overflows 64 bits")))
}

fn run_check(
    net: &mut SimNet,
    protocol: &str,
    deltas: Vec<Vec<i128>>,
    q: u64,
    mode: SumMode,
    comparator: &mut dyn Comparator,
    seed: u64,
) -> Result<CheckOutcome> {
    let m = net.players();
    let n = deltas.first().map_or(0, Vec::len);
    net.begin(
        protocol,
        IterationMeta {
            players: m,
            n: n as u64,
            modulus: Some(q),
            reveal: mode == SumMode::Revealed,
            ..IterationMeta::default()
        },
    );
    if n == 0 {
        return Ok(CheckOutcome {
            accepted: Vec::new(),
            revealed: (mode == SumMode::Revealed).then(Vec::new),
        });
    }
    let qi = i128::from(q);
    let reduced: Vec<Vec<u64>> = deltas
        .iter()
        .map(|v| v.iter().map(|&x| x.rem_euclid(qi) as u64).collect())
        .collect();
    let ids = net.ids();
    let (p1, pm) = (ids[0], ids[m - 1]);
    let (accepted, revealed) = match mode {
        SumMode::Withheld => {
            let shares = sum_to_two(net, &reduced, q, seed, false)?;
            let bits: Vec<bool> = shares
                .first
                .values()
                .iter()
                .zip(shares.last.values())
                .map(|(&a, &b)| comparator.lower_half(a, b, q))
                .collect();
            net.observe(p1, "comparison", || Payload::Bits(bits.clone()));
            net.observe(pm, "comparison", || Payload::Bits(bits.clone()));
            (bits, None)
        }
        SumMode::Revealed => {
            let out = sum_to_two(net, &reduced, q, seed, true)?;
            let sums: Vec<i128> = out.first.values().iter().map(|&v| centered(v, q)).collect();
            (sums.iter().map(|&s| s >= 0).collect(), Some(sums))
        }
    };
    net.set_phase(OUTPUT_PHASE);
    net.broadcast(p1, Payload::Bits(accepted.clone()))?;
    net.barrier();
    for &p in ids.iter().skip(1) {
        net.recv_from(p, p1)?;
    }
    Ok(CheckOutcome { accepted, revealed })
}

fn check_players(net: &SimNet, locals: &[LocalCounts]) -> Result<()> {
    if locals.len() != net.players() {
        return Err(Error::Dimension(format!(
            "{} local count tables on a {}-player network",
            locals.len(),
            net.players()
        )));
    }
    Ok(())
}

/// Which candidates satisfy `supp(x)·s.den >= s.num·N`, from
/// `Δ_m(x) = s.den·supp_m(x) - s.num·N_m` summed over `Z_q` with
/// `q = 2·s.den·N + 1`.
pub fn secure_frequency_check(
    net: &mut SimNet,
    candidates: &[Itemset],
    locals: &[LocalCounts],
    s: Ratio,
    mode: SumMode,
    comparator: &mut dyn Comparator,
    seed: u64,
) -> Result<CheckOutcome> {
    check_players(net, locals)?;
    let total: u64 = locals.iter().map(LocalCounts::rows).sum();
    let q = scaled_modulus(s.den(), total)?;
    let (num, den) = (i128::from(s.num()), i128::from(s.den()));
    let mut deltas = Vec::with_capacity(locals.len());
    for (idx, local) in locals.iter().enumerate() {
        let rows = i128::from(local.rows);
        let v = candidates
            .iter()
            .map(|x| Ok(den * i128::from(local.require(x, idx + 1)?) - num * rows))
            .collect::<Result<Vec<_>>>()?;
        deltas.push(v);
    }
    run_check(
        net,
        labels::SECURE_FREQUENCY,
        deltas,
        q,
        mode,
        comparator,
        seed,
    )
}

/// Which rules satisfy `supp(X∪Y)·c.den >= c.num·supp(X)`, from
/// `C_m = c.den·supp_m(X∪Y) - c.num·supp_m(X)` summed over `Z_q` with
/// `q = 2·c.den·N + 1`.
pub fn secure_confidence_check(
    net: &mut SimNet,
    rules: &[CandidateRule],
    locals: &[LocalCounts],
    c: Ratio,
    mode: SumMode,
    comparator: &mut dyn Comparator,
    seed: u64,
) -> Result<CheckOutcome> {
    check_players(net, locals)?;
    let total: u64 = locals.iter().map(LocalCounts::rows).sum();
    let q = scaled_modulus(c.den(), total)?;
    let (num, den) = (i128::from(c.num()), i128::from(c.den()));
    let mut deltas = Vec::with_capacity(locals.len());
    for (idx, local) in locals.iter().enumerate() {
        let v = rules
            .iter()
            .map(|r| {
                let joint = local.require(&r.union(), idx + 1)?;
                let ante = local.require(r.antecedent(), idx + 1)?;
                Ok(den * i128::from(joint) - num * i128::from(ante))
            })
            .collect::<Result<Vec<_>>>()?;
        deltas.push(v);
    }
    run_check(
        net,
        labels::SECURE_CONFIDENCE,
        deltas,
        q,
        mode,
        comparator,
        seed,
    )
}
