use std::collections::VecDeque;
use std::io::Write;

use serde::Serialize;

use super::ledger::{CostLedger, IterationMeta, LedgerKey};
use super::message::{Message, Payload, PlayerId, Receipt};
use super::view::{PlayerView, ViewEntry, ViewSource};
use crate::error::{Error, Result};
use crate::mpc::{Op, OpHook};

/// One transcript line per point-to-point message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranscriptRecord {
    pub protocol: String,
    pub iteration: usize,
    pub round: u64,
    pub phase: String,
    pub sender: usize,
    pub receiver: usize,
    pub bytes: u64,
    pub bits: u64,
    pub kind: &'static str,
}

/// The simulated network shared by `M` players.
///
/// Single-threaded and deterministic: the schedule is the order in which the
/// protocol code calls `send`, `barrier` and `recv`.
#[derive(Debug)]
pub struct SimNet {
    players: usize,
    round: u64,
    pending: Vec<Message>,
    inboxes: Vec<VecDeque<Message>>,
    transcript: Vec<TranscriptRecord>,
    ledger: CostLedger,
    protocol: String,
    iteration: usize,
    phase: String,
    views: Option<Vec<PlayerView>>,
}

impl SimNet {
    pub fn new(players: usize) -> Result<Self> {
        if players == 0 {
            return Err(Error::Unsupported(
                "a network needs at least one player".into(),
            ));
        }
        Ok(SimNet {
            players,
            round: 0,
            pending: Vec::new(),
            inboxes: vec![VecDeque::new(); players],
            transcript: Vec::new(),
            ledger: CostLedger::default(),
            protocol: String::new(),
            iteration: 0,
            phase: String::new(),
            views: None,
        })
    }

    /// A network that also records every player's view.
    pub fn with_views(players: usize) -> Result<Self> {
        let mut net = Self::new(players)?;
        net.views = Some(
            (1..=players)
                .map(|m| PlayerView::new(PlayerId::new(m)))
                .collect(),
        );
        Ok(net)
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn player(&self, m: usize) -> Result<PlayerId> {
        if m == 0 || m > self.players {
            return Err(Error::Routing(format!(
                "no player P{m} among {}",
                self.players
            )));
        }
        Ok(PlayerId::new(m))
    }

    /// All players in order.
    pub fn ids(&self) -> Vec<PlayerId> {
        (1..=self.players).map(PlayerId::new).collect()
    }

    /// Index of the round currently being assembled.
    pub fn round(&self) -> u64 {
        self.round
    }

    /// Iteration index used to key ledger entries (the FDM `k`).
    pub fn set_iteration(&mut self, k: usize) {
        self.iteration = k;
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn protocol(&self) -> &str {
        &self.protocol
    }

    /// Start accounting under `protocol` for the current iteration.
    pub fn begin(&mut self, protocol: &str, meta: IterationMeta) {
        self.protocol = protocol.to_string();
        self.phase.clear();
        self.ledger.set_meta(protocol, self.iteration, meta);
    }

    pub fn set_phase(&mut self, phase: &str) {
        self.phase = phase.to_string();
    }

    fn key(&self, phase: &str) -> LedgerKey {
        LedgerKey {
            protocol: self.protocol.clone(),
            iteration: self.iteration,
            phase: phase.to_string(),
        }
    }

    fn check(&self, p: PlayerId) -> Result<()> {
        if p.get() > self.players {
            return Err(Error::Routing(format!("unknown player {p}")));
        }
        Ok(())
    }

    /// Queue a point-to-point message for delivery at the next barrier.
    pub fn send(&mut self, from: PlayerId, to: PlayerId, payload: Payload) -> Result<Receipt> {
        self.check(from)?;
        self.check(to)?;
        if from == to {
            return Err(Error::Routing(format!("{from} cannot message itself")));
        }
        let msg = Message {
            round: self.round,
            sender: from,
            receiver: to,
            phase: self.phase.clone(),
            payload,
        };
        let bits = msg.bit_len();
        let key = self.key(&self.phase);
        let cost = self.ledger.entry(key);
        cost.messages += 1;
        cost.bits += bits;
        self.transcript.push(TranscriptRecord {
            protocol: self.protocol.clone(),
            iteration: self.iteration,
            round: self.round,
            phase: self.phase.clone(),
            sender: from.get(),
            receiver: to.get(),
            bytes: msg.byte_len(),
            bits,
            kind: msg.payload.kind(),
        });
        self.pending.push(msg);
        Ok(Receipt {
            round: self.round,
            sender: from,
            receiver: to,
            bits,
        })
    }

    /// `M - 1` point-to-point copies, one to every other player.
    pub fn broadcast(&mut self, from: PlayerId, payload: Payload) -> Result<Vec<Receipt>> {
        self.check(from)?;
        let targets: Vec<PlayerId> = self.ids().into_iter().filter(|&p| p != from).collect();
        targets
            .into_iter()
            .map(|to| self.send(from, to, payload.clone()))
            .collect()
    }

    /// Close the current round and deliver its messages. A barrier with
    /// nothing in flight does not count as a round.
    pub fn barrier(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let phase = self.pending[0].phase.clone();
        let key = self.key(&phase);
        self.ledger.entry(key).rounds += 1;
        for msg in self.pending.drain(..) {
            self.inboxes[msg.receiver.index()].push_back(msg);
        }
        self.round += 1;
    }

    /// Take the oldest delivered message from `from` addressed to `to`.
    pub fn recv_from(&mut self, to: PlayerId, from: PlayerId) -> Result<Message> {
        self.check(to)?;
        self.check(from)?;
        let inbox = &mut self.inboxes[to.index()];
        let pos = inbox
            .iter()
            .position(|m| m.sender == from)
            .ok_or_else(|| Error::Routing(format!("{to} has no delivered message from {from}")))?;
        let msg = inbox.remove(pos).expect("position is in range");
        if let Some(views) = &mut self.views {
            views[to.index()].push(ViewEntry {
                protocol: self.protocol.clone(),
                iteration: self.iteration,
                phase: msg.phase.clone(),
                source: ViewSource::Received {
                    from,
                    round: msg.round,
                },
                payload: msg.payload.clone(),
            });
        }
        Ok(msg)
    }

    /// Number of delivered, unread messages for `to`.
    pub fn pending_for(&self, to: PlayerId) -> usize {
        self.inboxes.get(to.index()).map_or(0, VecDeque::len)
    }

    /// Record a locally derived value in `player`'s view (no-op unless views
    /// are enabled).
    pub fn observe(&mut self, player: PlayerId, label: &str, payload: impl FnOnce() -> Payload) {
        if let Some(views) = &mut self.views {
            views[player.index()].push(ViewEntry {
                protocol: self.protocol.clone(),
                iteration: self.iteration,
                phase: self.phase.clone(),
                source: ViewSource::Derived {
                    label: label.to_string(),
                },
                payload: payload(),
            });
        }
    }

    pub fn view(&self, player: PlayerId) -> Option<&PlayerView> {
        self.views.as_ref().and_then(|v| v.get(player.index()))
    }

    /// Operation accounting for `player` under the current protocol/phase.
    pub fn hook(&mut self, player: PlayerId) -> PlayerHook<'_> {
        let key = self.key(&self.phase);
        PlayerHook {
            ledger: &mut self.ledger,
            key,
            player,
        }
    }

    pub fn ledger(&self) -> &CostLedger {
        &self.ledger
    }

    pub fn into_ledger(self) -> CostLedger {
        self.ledger
    }

    pub fn transcript(&self) -> &[TranscriptRecord] {
        &self.transcript
    }

    pub fn write_transcript_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for rec in &self.transcript {
            w.serialize(rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Routes operation counts into the ledger for one player.
pub struct PlayerHook<'a> {
    ledger: &'a mut CostLedger,
    key: LedgerKey,
    player: PlayerId,
}

impl OpHook for PlayerHook<'_> {
    fn record(&mut self, op: Op, count: u64) {
        let cost = self.ledger.entry(self.key.clone());
        cost.ops.entry(self.player).or_default().record(op, count);
    }
}
