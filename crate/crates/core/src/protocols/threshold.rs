use crate::error::{Error, Result};
use crate::mpc::{Op, OpHook, ShareVector};
use crate::net::{IterationMeta, Payload, SimNet};

use super::labels;
use super::require_players;
use super::setinc::{setinc, SetIncConfig, SetIncInstance};
use super::sharing::{sum_to_two, TwoShares};

/// Shares left after the first stage of Threshold-C: `P1`'s `s` and
/// `P_M`'s `s_M`, with `s + s_M ≡ Σ_m b_m (mod M+1)`.
pub type SharePhaseOutput = TwoShares;

/// `M` private bit vectors of a common length and a threshold `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdInstance {
    threshold: usize,
    inputs: Vec<Vec<u8>>,
}

impl ThresholdInstance {
    /// Entries must be 0 or 1 and `1 <= t <= M`.
    pub fn new(threshold: usize, inputs: Vec<Vec<u8>>) -> Result<Self> {
        require_players(inputs.len())?;
        let n = inputs[0].len();
        if inputs.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension("input vectors differ in length".into()));
        }
        if let Some(bad) = inputs.iter().flatten().find(|&&b| b > 1) {
            return Err(Error::Contract(format!("non-binary input entry {bad}")));
        }
        if threshold == 0 || threshold > inputs.len() {
            return Err(Error::Contract(format!(
                "threshold {threshold} outside 1..={}",
                inputs.len()
            )));
        }
        Ok(ThresholdInstance { threshold, inputs })
    }

    pub fn from_bits(threshold: usize, inputs: &[Vec<bool>]) -> Result<Self> {
        let inputs = inputs
            .iter()
            .map(|v| v.iter().map(|&b| u8::from(b)).collect())
            .collect();
        Self::new(threshold, inputs)
    }

    pub fn players(&self) -> usize {
        self.inputs.len()
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.inputs[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn inputs(&self) -> &[Vec<u8>] {
        &self.inputs
    }

    pub fn modulus(&self) -> u64 {
        self.players() as u64 + 1
    }
}

fn check_players(net: &SimNet, instance: &ThresholdInstance) -> Result<()> {
    if net.players() != instance.players() {
        return Err(Error::Dimension(format!(
            "{} inputs on a {}-player network",
            instance.players(),
            net.players()
        )));
    }
    Ok(())
}

/// Additive sharing of the column sums over `Z_{M+1}`, ending with `s` at
/// `P1` and `s_M` at `P_M`.
pub fn threshold_share_phase(
    net: &mut SimNet,
    instance: &ThresholdInstance,
    seed: u64,
) -> Result<SharePhaseOutput> {
    check_players(net, instance)?;
    let inputs: Vec<Vec<u64>> = instance
        .inputs
        .iter()
        .map(|v| v.iter().map(|&b| u64::from(b)).collect())
        .collect();
    let out = sum_to_two(net, &inputs, instance.modulus(), seed, false)?;
    let ids = net.ids();
    net.observe(ids[0], "s", || Payload::Residues(out.first.clone()));
    net.observe(ids[ids.len() - 1], "s_M", || {
        Payload::Residues(out.last.clone())
    });
    Ok(out)
}

/// `Θ(i) = {(j - s_M(i)) mod (M+1) : 0 <= j < t}`, so that
/// `s(i) ∈ Θ(i)` exactly when the column sum is below `t`.
pub fn theta_sets(
    pm_share: &ShareVector,
    threshold: usize,
    hook: &mut dyn OpHook,
) -> Vec<Vec<u64>> {
    let q = pm_share.modulus();
    hook.record(Op::ModAdd, (threshold * pm_share.len()) as u64);
    pm_share
        .values()
        .iter()
        .map(|&s| (0..threshold as u64).map(|j| (j + q - s) % q).collect())
        .collect()
}

pub(crate) fn threshold_c_inner(
    net: &mut SimNet,
    instance: &ThresholdInstance,
    config: &SetIncConfig,
    seed: u64,
) -> Result<Vec<bool>> {
    check_players(net, instance)?;
    if instance.is_empty() {
        return Ok(Vec::new());
    }
    let shares = threshold_share_phase(net, instance, seed)?;
    net.set_phase("setinc");
    let pm = net.ids()[net.players() - 1];
    let theta = theta_sets(&shares.last, instance.threshold, &mut net.hook(pm));
    let inclusion = SetIncInstance::new(instance.modulus(), shares.first.values().to_vec(), theta)?;
    setinc(net, &inclusion, config, seed)
}

/// Compute `T_t(b_1, ..., b_M)` bitwise: entry `i` is 1 iff at least `t`
/// players hold a 1 there. Every player learns the output vector.
pub fn run_threshold_c(
    net: &mut SimNet,
    instance: &ThresholdInstance,
    config: &SetIncConfig,
    seed: u64,
) -> Result<Vec<bool>> {
    net.begin(
        labels::THRESHOLD_C,
        IterationMeta {
            players: instance.players(),
            n: instance.len() as u64,
            digest_bits: Some(config.digest_bits),
            modulus: Some(instance.modulus()),
            threshold: Some(instance.threshold),
            ..IterationMeta::default()
        },
    );
    threshold_c_inner(net, instance, config, seed)
}
