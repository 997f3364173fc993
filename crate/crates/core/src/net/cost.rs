use std::io::Write;

use serde::Serialize;

use super::ledger::CostLedger;
use crate::error::Result;
use crate::mpc::residue_bits;
use crate::protocols::labels;

/// Communication rounds of one UniFI run: all-to-all sharing, collection
/// at `P1`, and the set-inclusion exchange.
pub const UNIFI_ROUNDS: u64 = 3;

/// Predicted UniFI traffic for one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnifiBits {
    /// `((M² - 2)·log2 M + 2|h|)·n_k`, with shares costed at `log2 M` bits.
    pub published: f64,
    /// Same count with the `ceil(log2(M + 1))`-bit share encoding actually
    /// used for `Z_{M+1}`.
    pub exact: u64,
}

pub fn predicted_unifi_bits(players: usize, n_k: u64, digest_bits: usize) -> UnifiBits {
    let m = players as f64;
    let published = ((m * m - 2.0) * m.log2() + 2.0 * digest_bits as f64) * n_k as f64;
    UnifiBits {
        published,
        exact: predicted_threshold_c_bits(players, n_k, 1, digest_bits),
    }
}

/// Exact Threshold-C traffic for threshold `t`: every `Θ'(i)` carries `t`
/// digests.
pub fn predicted_threshold_c_bits(players: usize, n: u64, t: usize, digest_bits: usize) -> u64 {
    let m = players as u64;
    let w = residue_bits(m + 1) as u64;
    ((m * m - 2) * w + (1 + t as u64) * digest_bits as u64) * n
}

/// Predicted UniFI-KC costs for one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnifiKcCosts {
    pub rounds: u64,
    /// Encryption ring, exactly `(M - 1)·M·t·n_k`.
    pub phase1_bits: u64,
    /// Merge phase, at most `1.5·M·t·n_k`.
    pub phase2_bound: f64,
    /// Whole iteration, roughly `2·M²·t·n_k`.
    pub upper_estimate: f64,
}

pub fn predicted_unifi_kc_costs(players: usize, n_k: u64, cipher_bits: u64) -> UnifiKcCosts {
    let m = players as u64;
    UnifiKcCosts {
        rounds: 2 * m,
        phase1_bits: (m - 1) * m * cipher_bits * n_k,
        phase2_bound: 1.5 * (m * cipher_bits * n_k) as f64,
        upper_estimate: 2.0 * (m * m * cipher_bits * n_k) as f64,
    }
}

/// Communication improvement of UniFI over UniFI-KC,
/// `(log2 M / 2t + |h| / (M² t))^-1`.
pub fn improvement_factor(players: usize, cipher_bits: u64, digest_bits: usize) -> f64 {
    let m = players as f64;
    let t = cipher_bits as f64;
    1.0 / (m.log2() / (2.0 * t) + digest_bits as f64 / (m * m * t))
}

/// Random bits each player draws while sharing an `n`-vector over
/// `Z_{M+1}`: `(exact, published)` with `ceil(log2(M + 1))` and `log2 M` bits
/// per residue respectively.
pub fn predicted_threshold_rand_bits(players: usize, n: u64) -> (u64, f64) {
    let m = players as u64;
    let exact = (m - 1) * n * residue_bits(m + 1) as u64;
    let published = ((m - 1) * n) as f64 * (players as f64).log2();
    (exact, published)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecureSumPrediction {
    pub rounds: u64,
    pub bits: u64,
}

/// Secure summation of `n` values mod `q` ending with two shares (or, when
/// `reveal`, with `P_M` also handing its share to `P1`).
pub fn predicted_secure_sum(players: usize, n: u64, q: u64, reveal: bool) -> SecureSumPrediction {
    let m = players as u64;
    let to_p1 = if reveal { m - 1 } else { m - 2 };
    SecureSumPrediction {
        rounds: 2,
        bits: (m * (m - 1) + to_p1) * residue_bits(q) as u64 * n,
    }
}

/// One line of the cost report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CostRow {
    pub protocol: String,
    pub k: usize,
    pub n_k: u64,
    pub rounds_measured: u64,
    pub rounds_predicted: Option<u64>,
    pub bits_measured: u64,
    #[serde(rename = "bits_predicted_paper")]
    pub bits_predicted_published: Option<f64>,
    pub bits_predicted_exact: Option<u64>,
    pub enc_ops: u64,
    pub dec_ops: u64,
    pub hash_ops: u64,
    pub keyed_hash_ops: u64,
    pub mod_adds: u64,
    pub rand_bits: u64,
}

impl CostRow {
    pub fn bits_ratio_published(&self) -> Option<f64> {
        self.bits_predicted_published
            .map(|p| self.bits_measured as f64 / p)
    }

    pub fn bits_ratio_exact(&self) -> Option<f64> {
        self.bits_predicted_exact
            .map(|p| self.bits_measured as f64 / p as f64)
    }

    pub fn rounds_ratio(&self) -> Option<f64> {
        self.rounds_predicted
            .map(|p| self.rounds_measured as f64 / p as f64)
    }
}

/// Measured vs predicted cost for every registered (protocol, iteration).
/// Output delivery is excluded from the measured columns.
pub fn cost_report(ledger: &CostLedger) -> Vec<CostRow> {
    let mut rows = Vec::new();
    for protocol in ledger.protocols() {
        for k in ledger.iterations(&protocol) {
            let meta = ledger.meta(&protocol, k).cloned().unwrap_or_default();
            let measured = ledger.iteration_total(&protocol, k, false);
            let ops = measured.total_ops();
            let m = meta.players;
            let (rounds_predicted, published, exact) = match protocol.as_str() {
                labels::UNIFI | labels::THRESHOLD_C if m > 2 => {
                    let t = meta.threshold.unwrap_or(1);
                    let h = meta.digest_bits.unwrap_or(0);
                    let published = (t == 1).then(|| predicted_unifi_bits(m, meta.n, h).published);
                    (
                        Some(UNIFI_ROUNDS),
                        published,
                        Some(predicted_threshold_c_bits(m, meta.n, t, h)),
                    )
                }
                labels::UNIFI_KC if m > 2 => {
                    let kc = predicted_unifi_kc_costs(m, meta.n, meta.cipher_bits.unwrap_or(0));
                    (Some(kc.rounds), Some(kc.upper_estimate), None)
                }
                labels::SECURE_FREQUENCY | labels::SECURE_CONFIDENCE | labels::SECURE_SUM
                    if m > 2 =>
                {
                    let reveal = meta.reveal || protocol == labels::SECURE_SUM;
                    let p = predicted_secure_sum(m, meta.n, meta.modulus.unwrap_or(2), reveal);
                    (Some(p.rounds), None, Some(p.bits))
                }
                _ => (None, None, None),
            };
            // Empty batches send nothing.
            let rounds_predicted = rounds_predicted.map(|r| if meta.n == 0 { 0 } else { r });
            rows.push(CostRow {
                protocol: protocol.clone(),
                k,
                n_k: meta.n,
                rounds_measured: measured.rounds,
                rounds_predicted,
                bits_measured: measured.bits,
                bits_predicted_published: published,
                bits_predicted_exact: exact,
                enc_ops: ops.enc,
                dec_ops: ops.dec,
                hash_ops: ops.hash,
                keyed_hash_ops: ops.keyed_hash,
                mod_adds: ops.mod_adds,
                rand_bits: ops.rand_bits,
            });
        }
    }
    rows
}

pub fn write_cost_csv<W: Write>(rows: &[CostRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
