use rand::seq::SliceRandom;

use super::Itemset;
use crate::error::{Error, Result};
use crate::seed;

/// Upper bound on the item universe unless the caller raises it.
pub const DEFAULT_MAX_ITEMS: usize = 4096;

/// A binary `N × L` transaction matrix; each row is one transaction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransactionDb {
    items: usize,
    rows: Vec<Itemset>,
}

impl TransactionDb {
    pub fn new(items: usize, rows: Vec<Itemset>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.width() != items) {
            return Err(Error::Dimension(format!(
                "row of width {} in a database over {items} items",
                bad.width()
            )));
        }
        Ok(TransactionDb { items, rows })
    }

    /// Build from rows given as item-id lists.
    pub fn from_rows(items: usize, rows: &[&[usize]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| Itemset::from_items(items, r.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransactionDb { items, rows })
    }

    /// Number of items `L`.
    pub fn items(&self) -> usize {
        self.items
    }

    /// Number of transactions `N`.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Itemset] {
        &self.rows
    }

    /// Number of rows containing `x`.
    pub fn support(&self, x: &Itemset) -> Result<u64> {
        if x.width() != self.items {
            return Err(Error::Dimension(format!(
                "itemset of width {} against a database over {} items",
                x.width(),
                self.items
            )));
        }
        Ok(self.rows.iter().filter(|r| x.subset_unchecked(r)).count() as u64)
    }
}

/// Parse a FIMI-style listing: one transaction per line, whitespace separated
/// decimal item ids, blank lines ignored. When `items` is `None` the universe
/// size is inferred as one past the largest id.
pub fn parse_transactions(text: &str, items: Option<usize>) -> Result<TransactionDb> {
    parse_transactions_with_cap(text, items, DEFAULT_MAX_ITEMS)
}

pub fn parse_transactions_with_cap(
    text: &str,
    items: Option<usize>,
    max_items: usize,
) -> Result<TransactionDb> {
    let mut lines = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut ids = Vec::new();
        for tok in line.split_whitespace() {
            let id: usize = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid item id {tok:?}"),
            })?;
            if let Some(l) = items {
                if id >= l {
                    return Err(Error::ItemOutOfRange {
                        line: line_no,
                        id,
                        items: l,
                    });
                }
            }
            max_id = Some(max_id.map_or(id, |m| m.max(id)));
            ids.push(id);
        }
        lines.push((line_no, ids));
    }
    let width = items.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    if width > max_items {
        return Err(Error::Unsupported(format!(
            "{width} items exceeds the configured cap of {max_items}"
        )));
    }
    let rows = lines
        .into_iter()
        .map(|(line, ids)| {
            Itemset::from_items(width, ids).map_err(|_| Error::Parse {
                line,
                message: "item id out of range".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransactionDb { items: width, rows })
}

/// The database split by rows among `M` players.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedDb {
    parts: Vec<TransactionDb>,
}

impl PartitionedDb {
    pub fn new(parts: Vec<TransactionDb>) -> Result<Self> {
        if let Some(first) = parts.first() {
            if parts.iter().any(|p| p.items() != first.items()) {
                return Err(Error::Dimension("parts disagree on the item count".into()));
            }
        }
        Ok(PartitionedDb { parts })
    }

    pub fn parts(&self) -> &[TransactionDb] {
        &self.parts
    }

    /// Number of players `M`.
    pub fn players(&self) -> usize {
        self.parts.len()
    }

    pub fn items(&self) -> usize {
        self.parts.first().map_or(0, |p| p.items())
    }

    /// Total number of transactions `N = Σ N_m`.
    pub fn total_rows(&self) -> usize {
        self.parts.iter().map(|p| p.len()).sum()
    }

    /// The logical database (rows concatenated in player order).
    pub fn union(&self) -> TransactionDb {
        TransactionDb {
            items: self.items(),
            rows: self
                .parts
                .iter()
                .flat_map(|p| p.rows.iter().cloned())
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionPolicy {
    /// Row `i` goes to player `i mod M`.
    RoundRobin,
    /// Rows are shuffled with the seed and then dealt round-robin.
    Random { seed: u64 },
}

/// Split `db` into `players` non-empty horizontal parts.
pub fn partition_db(
    db: &TransactionDb,
    players: usize,
    policy: PartitionPolicy,
) -> Result<PartitionedDb> {
    if players <= 2 {
        return Err(Error::Unsupported(format!(
            "{players} players; at least 3 are required"
        )));
    }
    split_rows(db, players, policy)
}

/// [`partition_db`] without the player-count floor, for plaintext runs
/// with one or two sites.
pub fn split_rows(
    db: &TransactionDb,
    players: usize,
    policy: PartitionPolicy,
) -> Result<PartitionedDb> {
    if players == 0 || db.len() < players {
        return Err(Error::InfeasiblePartition {
            rows: db.len(),
            parts: players,
        });
    }
    let mut order: Vec<usize> = (0..db.len()).collect();
    if let PartitionPolicy::Random { seed } = policy {
        order.shuffle(&mut seed::rng(seed, "partition", &[]));
    }
    let mut parts = vec![Vec::new(); players];
    for (i, row) in order.into_iter().enumerate() {
        parts[i % players].push(db.rows[row].clone());
    }
    let parts = parts
        .into_iter()
        .map(|rows| TransactionDb {
            items: db.items,
            rows,
        })
        .collect();
    Ok(PartitionedDb { parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DB4: &str = "0 1\n0 2\n0 1 2\n1\n";

    fn set(items: &[usize]) -> Itemset {
        Itemset::from_items(3, items.iter().copied()).unwrap()
    }

    #[test]
    fn parses_the_four_row_example() {
        let db = parse_transactions(DB4, Some(3)).unwrap();
        assert_eq!(db.len(), 4);
        assert_eq!(
            db.rows(),
            &[set(&[0, 1]), set(&[0, 2]), set(&[0, 1, 2]), set(&[1])]
        );
    }

    #[test]
    fn empty_input_has_no_rows() {
        let db = parse_transactions("", Some(3)).unwrap();
        assert_eq!(db.len(), 0);
        assert_eq!(parse_transactions("\n\n  \n", None).unwrap().items(), 0);
    }

    #[test]
    fn duplicate_ids_collapse() {
        let db = parse_transactions("0 0 1\n", Some(3)).unwrap();
        assert_eq!(db.rows()[0].len(), 2);
    }

    #[test]
    fn infers_width_and_skips_blank_lines() {
        let db = parse_transactions("3\n\n0 5\n", None).unwrap();
        assert_eq!(db.items(), 6);
        assert_eq!(db.len(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_transactions("0 1\n\n2 x\n", Some(3)) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_transactions("0 1\n0 3\n", Some(3)) {
            Err(Error::ItemOutOfRange { line, id, items }) => {
                assert_eq!((line, id, items), (2, 3, 3))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_transactions("-1\n", None).is_err());
        assert!(matches!(
            parse_transactions_with_cap("10\n", None, 8),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn local_support_counts_rows() {
        let db = parse_transactions(DB4, Some(3)).unwrap();
        assert_eq!(db.support(&set(&[0])).unwrap(), 3);
        assert_eq!(db.support(&set(&[0, 1])).unwrap(), 2);
        assert_eq!(db.support(&Itemset::empty(3)).unwrap(), 4);
        assert!(matches!(
            db.support(&Itemset::empty(4)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn round_robin_partition_sizes() {
        let db = parse_transactions(DB4, Some(3)).unwrap();
        let sizes = |m| {
            partition_db(&db, m, PartitionPolicy::RoundRobin)
                .unwrap()
                .parts()
                .iter()
                .map(|p| p.len())
                .collect::<Vec<_>>()
        };
        assert_eq!(sizes(3), vec![2, 1, 1]);
        assert_eq!(sizes(4), vec![1, 1, 1, 1]);
        assert!(matches!(
            partition_db(&db, 5, PartitionPolicy::RoundRobin),
            Err(Error::InfeasiblePartition { rows: 4, parts: 5 })
        ));
        assert!(matches!(
            partition_db(&db, 2, PartitionPolicy::RoundRobin),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn random_partition_preserves_rows() {
        let db = parse_transactions(DB4, Some(3)).unwrap();
        let parts = partition_db(&db, 3, PartitionPolicy::Random { seed: 11 }).unwrap();
        assert!(parts.parts().iter().all(|p| !p.is_empty()));
        let mut a = parts.union().rows().to_vec();
        let mut b = db.rows().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(
            parts,
            partition_db(&db, 3, PartitionPolicy::Random { seed: 11 }).unwrap()
        );
    }
}
