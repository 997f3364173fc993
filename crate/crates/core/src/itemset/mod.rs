//! Transaction data model, supports and levelwise Apriori mining.

mod apriori;
mod db;
mod ratio;

pub use apriori::{apriori_gen, plaintext_apriori};
pub use db::{
    parse_transactions, parse_transactions_with_cap, partition_db, split_rows, PartitionPolicy,
    PartitionedDb, TransactionDb, DEFAULT_MAX_ITEMS,
};
pub use ratio::Ratio;

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A subset of the item universe `{a_1, ..., a_L}` stored as a fixed-width
/// bit vector.
///
/// Item `j` (0-based, i.e. `a_{j+1}`) lives in word `j / 64` at bit
/// `63 - j % 64`, so comparing the word vectors compares the bit strings
/// `b_1 b_2 ... b_L` lexicographically. That is the canonical order used to
/// lay out candidate sets as vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itemset {
    words: Vec<u64>,
    width: usize,
    size: usize,
}

impl Itemset {
    pub fn empty(width: usize) -> Self {
        Itemset {
            words: vec![0; width.div_ceil(WORD)],
            width,
            size: 0,
        }
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(width: usize, items: I) -> Result<Self> {
        let mut set = Itemset::empty(width);
        for item in items {
            if item >= width {
                return Err(Error::Range(format!(
                    "item {item} does not fit an itemset over {width} items"
                )));
            }
            set.insert(item);
        }
        Ok(set)
    }

    pub fn singleton(width: usize, item: usize) -> Result<Self> {
        Self::from_items(width, [item])
    }

    fn insert(&mut self, item: usize) {
        let mask = 1u64 << (WORD - 1 - item % WORD);
        let word = &mut self.words[item / WORD];
        if *word & mask == 0 {
            *word |= mask;
            self.size += 1;
        }
    }

    /// Number of items in the set.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Width `L` of the underlying bit vector.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, item: usize) -> bool {
        item < self.width && self.words[item / WORD] & (1u64 << (WORD - 1 - item % WORD)) != 0
    }

    /// Item ids in increasing order.
    pub fn items(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let lead = rest.leading_zeros() as usize;
                rest &= !(1u64 << (WORD - 1 - lead));
                Some(w * WORD + lead)
            })
        })
    }

    fn check_width(&self, other: &Itemset) -> Result<()> {
        if self.width != other.width {
            return Err(Error::Dimension(format!(
                "itemset widths differ ({} vs {})",
                self.width, other.width
            )));
        }
        Ok(())
    }

    /// `self ⊆ other`. Both sets must have the same width.
    pub fn is_subset_of(&self, other: &Itemset) -> Result<bool> {
        self.check_width(other)?;
        Ok(self.subset_unchecked(other))
    }

    pub(crate) fn subset_unchecked(&self, other: &Itemset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Itemset) -> Result<Itemset> {
        self.check_width(other)?;
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(Self::from_words(words, self.width))
    }

    pub fn difference(&self, other: &Itemset) -> Result<Itemset> {
        self.check_width(other)?;
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        Ok(Self::from_words(words, self.width))
    }

    pub fn is_disjoint(&self, other: &Itemset) -> Result<bool> {
        self.check_width(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0))
    }

    /// The set with `item` removed.
    pub fn without(&self, item: usize) -> Itemset {
        let mut out = self.clone();
        if out.contains(item) {
            out.words[item / WORD] &= !(1u64 << (WORD - 1 - item % WORD));
            out.size -= 1;
        }
        out
    }

    fn from_words(words: Vec<u64>, width: usize) -> Itemset {
        let size = words.iter().map(|w| w.count_ones() as usize).sum();
        Itemset { words, width, size }
    }

    /// Packed big-endian bit vector: item `a_1` is the most significant bit
    /// of the first byte. Length is `ceil(L / 8)` bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.words.iter().flat_map(|w| w.to_be_bytes()).collect();
        out.truncate(self.width.div_ceil(8));
        out
    }
}

impl fmt::Debug for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, item) in self.items().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{item}")?;
        }
        f.write_str("}")
    }
}

/// Space-separated item ids, the same syntax as a transaction line.
impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
