//! Deterministic message-passing fabric with per-phase cost accounting.
//!
//! Players are identified `P1..PM`. Messages sent between two calls to
//! [`SimNet::barrier`] are logically concurrent and make up one round; the
//! barrier delivers them in send order. Every message is charged at its
//! canonical encoding size (payload bits only, no framing).

mod cost;
mod ledger;
mod message;
mod sim;
mod view;

pub use cost::{
    cost_report, improvement_factor, predicted_secure_sum, predicted_threshold_c_bits,
    predicted_threshold_rand_bits, predicted_unifi_bits, predicted_unifi_kc_costs, write_cost_csv,
    CostRow, SecureSumPrediction, UnifiBits, UnifiKcCosts, UNIFI_ROUNDS,
};
pub use ledger::{CostLedger, IterationMeta, LedgerKey, PhaseCost, OUTPUT_PHASE};
pub use message::{Message, Payload, PlayerId, Receipt};
pub use sim::{PlayerHook, SimNet, TranscriptRecord};
pub use view::{PlayerView, ViewEntry, ViewSource};
