//! Conjugacy class labels matched by fingerprint.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::ClassLabel;
use crate::error::{Error, Result};
use crate::permcore::{element_centralizer, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub element_order: u64,
    pub cycle_lengths: Vec<usize>,
    pub centralizer_order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassLabeling {
    records: Vec<(String, Fingerprint)>,
}

impl Fingerprint {
    pub fn of(g: &PermGroup, x: &Permutation) -> Fingerprint {
        Fingerprint {
            element_order: x.order() as u64,
            cycle_lengths: x.cycle_lengths(),
            centralizer_order: element_centralizer(g, x).order_u64(),
        }
    }
}

impl ClassLabeling {
    pub fn new(labels: &[ClassLabel]) -> Result<ClassLabeling> {
        let mut records: Vec<(String, Fingerprint)> = Vec::new();
        for l in labels {
            let mut lengths: Vec<usize> = Vec::new();
            for &(len, mult) in &l.cycle_type.0 {
                lengths.extend(std::iter::repeat(len).take(mult));
            }
            lengths.sort_unstable();
            let f = Fingerprint {
                element_order: l.element_order,
                cycle_lengths: lengths,
                centralizer_order: l.centralizer_order,
            };
            if let Some((other, _)) = records.iter().find(|(_, g)| *g == f) {
                return Err(Error::AmbiguousClasses(format!("{} and {}", other, l.label)));
            }
            records.push((l.label.clone(), f));
        }
        Ok(ClassLabeling { records })
    }

    pub fn label(&self, g: &PermGroup, x: &Permutation) -> Result<&str> {
        let mut f = Fingerprint::of(g, x);
        f.cycle_lengths.sort_unstable();
        self.records
            .iter()
            .find(|(_, r)| *r == f)
            .map(|(l, _)| l.as_str())
            .ok_or_else(|| Error::Unlabeled(format!("order {} centralizer {}", f.element_order, f.centralizer_order)))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Class type of an elementary abelian subgroup: `2a^3` when pure, else
/// `2a_1b_6` listing how many nonidentity elements fall in each class.
pub fn abelian_type(g: &PermGroup, elements: &[Permutation], labeling: &ClassLabeling) -> Result<String> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for x in elements.iter().filter(|x| !x.is_identity()) {
        *counts.entry(labeling.label(g, x)?.to_string()).or_default() += 1;
    }
    if counts.is_empty() {
        return Ok("1".into());
    }
    let total: usize = counts.values().sum::<usize>() + 1;
    if counts.len() == 1 {
        let (l, _) = counts.iter().next().unwrap();
        let p = l.chars().take_while(|c| c.is_ascii_digit()).collect::<String>();
        let p: usize = p.parse().unwrap_or(2);
        let mut rank = 0;
        let mut n = total;
        while n > 1 {
            n /= p;
            rank += 1;
        }
        return Ok(format!("{}^{}", l, rank));
    }
    let mut out = String::new();
    let mut prefix: Option<String> = None;
    for (l, n) in &counts {
        let digits: String = l.chars().take_while(|c| c.is_ascii_digit()).collect();
        let letters = &l[digits.len()..];
        if prefix.as_deref() != Some(digits.as_str()) {
            out.push_str(&digits);
            prefix = Some(digits.clone());
        }
        out.push_str(&format!("{}_{}", letters, n));
    }
    Ok(out)
}
