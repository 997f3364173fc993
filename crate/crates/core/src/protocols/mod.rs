//! Multi-party protocols for unifying the players' candidate sets.
//!
//! * [`run_threshold_c`]: the `t`-threshold function of private bit vectors,
//!   via additive sharing over `Z_{M+1}` and a set-inclusion test mediated
//!   by `P2` ([`setinc`]).
//! * [`run_unifi`]: set union (`t = 1`) of private subsets of an agreed,
//!   ordered candidate list; [`run_unifi_intersection`] uses `t = M`.
//! * [`run_unifi_kc`]: the commutative-encryption union baseline with fake
//!   padding, ring encryption, merging and ring decryption.
//!
//! All protocols assume `M > 2` semi-honest players.

mod setinc;
mod sharing;
mod threshold;
mod unifi;
mod unifi_kc;

pub use setinc::{setinc, signature_domains_disjoint, SetIncConfig, SetIncInstance};
pub use sharing::{sum_to_two, TwoShares};
pub use threshold::{
    run_threshold_c, theta_sets, threshold_share_phase, SharePhaseOutput, ThresholdInstance,
};
pub use unifi::{run_unifi, run_unifi_intersection};
pub use unifi_kc::run_unifi_kc;

pub use crate::net::{PlayerView, ViewEntry, ViewSource};

/// Protocol names used to key the cost ledger.
pub mod labels {
    pub const THRESHOLD_C: &str = "threshold-c";
    pub const UNIFI: &str = "unifi";
    pub const UNIFI_KC: &str = "unifi-kc";
    pub const SECURE_FREQUENCY: &str = "secure-frequency";
    pub const SECURE_CONFIDENCE: &str = "secure-confidence";
    pub const SECURE_SUM: &str = "secure-sum";
}

use crate::error::{Error, Result};
use crate::mpc::ShareVector;
use crate::net::{Message, Payload};

pub(crate) fn require_players(players: usize) -> Result<()> {
    if players <= 2 {
        return Err(Error::Unsupported(format!(
            "{players} players; the protocols need more than two"
        )));
    }
    Ok(())
}

pub(crate) fn residues(msg: Message) -> Result<ShareVector> {
    match msg.payload {
        Payload::Residues(v) => Ok(v),
        other => Err(Error::Integrity(format!(
            "expected residues from {}, got {}",
            msg.sender,
            other.kind()
        ))),
    }
}
