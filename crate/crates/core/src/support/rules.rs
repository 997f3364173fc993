use std::collections::BTreeSet;
use std::io::Write;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::itemset::Itemset;

/// `X ⇒ Y` with `X`, `Y` nonempty and disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidateRule {
    antecedent: Itemset,
    consequent: Itemset,
}

impl CandidateRule {
    pub fn new(antecedent: Itemset, consequent: Itemset) -> Result<Self> {
        if antecedent.is_empty() || consequent.is_empty() {
            return Err(Error::Contract("rule sides must be nonempty".into()));
        }
        if !antecedent.is_disjoint(&consequent)? {
            return Err(Error::Contract(format!(
                "rule sides {antecedent:?} and {consequent:?} overlap"
            )));
        }
        Ok(CandidateRule {
            antecedent,
            consequent,
        })
    }

    pub fn antecedent(&self) -> &Itemset {
        &self.antecedent
    }

    pub fn consequent(&self) -> &Itemset {
        &self.consequent
    }

    /// `X ∪ Y`.
    pub fn union(&self) -> Itemset {
        self.antecedent
            .union(&self.consequent)
            .expect("sides share a width")
    }

    fn sort_key(&self) -> (Vec<usize>, Vec<usize>) {
        (
            self.antecedent.items().collect(),
            self.consequent.items().collect(),
        )
    }
}

fn subsets_up_to(items: &[usize], max: usize, out: &mut Vec<Vec<usize>>) {
    fn go(
        items: &[usize],
        start: usize,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, i + 1, max, cur, out);
            cur.pop();
        }
    }
    go(items, 0, max, &mut Vec::new(), out);
}

/// Every `X ⇒ Y` with `X ∪ Y` in `frequent`, both sides nonempty and
/// `|Y| <= max_consequent`. Sorted by antecedent items, then consequent.
pub fn enumerate_candidate_rules(
    frequent: &BTreeSet<Itemset>,
    max_consequent: usize,
) -> Vec<CandidateRule> {
    let mut rules = Vec::new();
    for z in frequent.iter().filter(|z| z.len() >= 2) {
        let items: Vec<usize> = z.items().collect();
        let mut ys = Vec::new();
        subsets_up_to(&items, max_consequent.min(items.len() - 1), &mut ys);
        for y in ys {
            let consequent = Itemset::from_items(z.width(), y.iter().copied()).expect("items of z");
            let antecedent = z.difference(&consequent).expect("same width");
            rules.push(CandidateRule {
                antecedent,
                consequent,
            });
        }
    }
    rules.sort_by_key(CandidateRule::sort_key);
    rules
}

/// An accepted rule. Support and confidence are present only when the
/// run revealed them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationRule {
    pub rule: CandidateRule,
    /// `supp(X ∪ Y)`.
    pub support: Option<u64>,
    /// `supp(X ∪ Y) / supp(X)` as `(numerator, denominator)`.
    pub confidence: Option<(u64, u64)>,
}

impl AssociationRule {
    pub fn confidence_value(&self) -> Option<f64> {
        self.confidence.map(|(a, b)| a as f64 / b as f64)
    }
}

#[derive(Serialize)]
struct RuleRecord {
    antecedent: String,
    consequent: String,
    support: String,
    confidence: String,
    confidence_decimal: String,
}

fn ids(x: &Itemset) -> String {
    x.items()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV with columns antecedent, consequent, support, confidence,
/// confidence_decimal. Item ids are space separated; unrevealed values
/// are written as `-`.
pub fn write_rules_csv<W: Write>(rules: &[AssociationRule], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rules {
        w.serialize(RuleRecord {
            antecedent: ids(r.rule.antecedent()),
            consequent: ids(r.rule.consequent()),
            support: r.support.map_or("-".into(), |s| s.to_string()),
            confidence: r.confidence.map_or("-".into(), |(a, b)| {
                let g = a.gcd(&b).max(1);
                format!("{}/{}", a / g, b / g)
            }),
            confidence_decimal: r
                .confidence_value()
                .map_or("-".into(), |v| format!("{v:.6}")),
        })?;
    }
    w.flush()?;
    Ok(())
}
