use std::collections::{BTreeMap, BTreeSet};

use super::{Itemset, Ratio, TransactionDb};
use crate::error::{Error, Result};

/// Apriori candidate generation: join pairs of `(k-1)`-itemsets whose union
/// has `k` items, then drop candidates with a `(k-1)`-subset outside `prev`.
/// The result is sorted in itemset order.
pub fn apriori_gen<'a, I>(prev: I) -> Result<Vec<Itemset>>
where
    I: IntoIterator<Item = &'a Itemset>,
{
    let prev: BTreeSet<&Itemset> = prev.into_iter().collect();
    let Some(first) = prev.first() else {
        return Ok(Vec::new());
    };
    let k_minus_1 = first.len();
    let width = first.width();
    if k_minus_1 == 0 {
        return Err(Error::Contract(
            "apriori_gen needs non-empty itemsets".into(),
        ));
    }
    if prev
        .iter()
        .any(|x| x.len() != k_minus_1 || x.width() != width)
    {
        return Err(Error::Contract(
            "apriori_gen input mixes itemset sizes or widths".into(),
        ));
    }
    let members: Vec<&Itemset> = prev.iter().copied().collect();
    let mut out = BTreeSet::new();
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            let joined = x.union(y)?;
            if joined.len() != k_minus_1 + 1 || out.contains(&joined) {
                continue;
            }
            if joined
                .items()
                .all(|item| prev.contains(&joined.without(item)))
            {
                out.insert(joined);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Levelwise Apriori over a single database: every itemset `X` with
/// `supp(X) >= s·N`, mapped to its support.
pub fn plaintext_apriori(db: &TransactionDb, s: Ratio) -> Result<BTreeMap<Itemset, u64>> {
    if db.is_empty() {
        return Err(Error::Contract(
            "plaintext_apriori needs at least one row".into(),
        ));
    }
    let n = db.len() as u64;
    let mut result = BTreeMap::new();
    let mut candidates = (0..db.items())
        .map(|j| Itemset::singleton(db.items(), j))
        .collect::<Result<Vec<_>>>()?;
    while !candidates.is_empty() {
        let mut level = Vec::new();
        for x in candidates {
            let supp = db.support(&x)?;
            if s.is_met(supp, n) {
                level.push(x.clone());
                result.insert(x, supp);
            }
        }
        candidates = apriori_gen(&level)?;
    }
    Ok(result)
}
