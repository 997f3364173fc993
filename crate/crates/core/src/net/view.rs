use super::message::{Payload, PlayerId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViewSource {
    Received { from: PlayerId, round: u64 },
    Derived { label: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViewEntry {
    pub protocol: String,
    pub iteration: usize,
    pub phase: String,
    pub source: ViewSource,
    pub payload: Payload,
}

/// Everything one player received or computed, in order. Test
/// instrumentation for privacy properties; append-only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerView {
    player: PlayerId,
    entries: Vec<ViewEntry>,
}

impl PlayerView {
    pub(crate) fn new(player: PlayerId) -> Self {
        PlayerView {
            player,
            entries: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, entry: ViewEntry) {
        self.entries.push(entry);
    }

    pub fn player(&self) -> PlayerId {
        self.player
    }

    pub fn entries(&self) -> &[ViewEntry] {
        &self.entries
    }

    /// Entries recorded during `protocol`/`phase`.
    pub fn in_phase<'a>(
        &'a self,
        protocol: &'a str,
        phase: &'a str,
    ) -> impl Iterator<Item = &'a ViewEntry> + 'a {
        self.entries
            .iter()
            .filter(move |e| e.protocol == protocol && e.phase == phase)
    }

    /// The most recent derived value with this label.
    pub fn derived(&self, label: &str) -> Option<&Payload> {
        self.entries.iter().rev().find_map(|e| match &e.source {
            ViewSource::Derived { label: l } if l == label => Some(&e.payload),
            _ => None,
        })
    }
}
