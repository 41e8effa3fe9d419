//! Group-theoretic validation of catalog entries and the bundled catalog.

use std::path::Path;

use num_bigint::BigUint;

use super::format::{parse_cycles, parse_str, CatalogEntry};
use crate::error::{Error, Result};
use crate::fusion::ClassLabeling;
use crate::permcore::{PermGroup, Permutation};

/// Text of each bundled file, by file stem.
pub const BUNDLED: &[(&str, &str)] = &[
    ("m11", include_str!("../../data/m11.grp")),
    ("m12", include_str!("../../data/m12.grp")),
    ("m22", include_str!("../../data/m22.grp")),
    ("m24", include_str!("../../data/m24.grp")),
    ("j1", include_str!("../../data/j1.grp")),
    ("j2", include_str!("../../data/j2.grp")),
    ("hs", include_str!("../../data/hs.grp")),
    ("gl3_2", include_str!("../../data/gl3_2.grp")),
    ("s4", include_str!("../../data/s4.grp")),
    ("s5", include_str!("../../data/s5.grp")),
    ("s6", include_str!("../../data/s6.grp")),
    ("s7", include_str!("../../data/s7.grp")),
    ("s8", include_str!("../../data/s8.grp")),
    ("a5", include_str!("../../data/a5.grp")),
    ("a6", include_str!("../../data/a6.grp")),
    ("a7", include_str!("../../data/a7.grp")),
    ("a8", include_str!("../../data/a8.grp")),
    ("a9", include_str!("../../data/a9.grp")),
    ("example_2_4_15_4", include_str!("../../data/example_2_4_15_4.grp")),
];

/// A validated entry.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub entry: CatalogEntry,
    pub group: PermGroup,
    pub labeling: ClassLabeling,
    /// `G` and `Ĝ` at a common degree, when outer automorphism data is given.
    pub out: Option<OutGroups>,
}

#[derive(Clone, Debug)]
pub struct OutGroups {
    pub out_order: u64,
    /// `G` itself, or its image at the overgroup's degree.
    pub base: PermGroup,
    /// `None` when `Out(G)` is declared trivial.
    pub overgroup: Option<PermGroup>,
}

fn gens(degree: usize, strs: &[String]) -> Result<Vec<Permutation>> {
    strs.iter()
        .map(|s| parse_cycles(degree, s).map_err(|m| Error::Parse { line: 0, msg: m }))
        .collect()
}

impl LoadedGroup {
    /// Builds the group and checks order, class fingerprints and overgroup index.
    pub fn from_entry(entry: &CatalogEntry) -> Result<LoadedGroup> {
        let group = PermGroup::from_generators(entry.degree, gens(entry.degree, &entry.generators)?)?;
        if let Some(h) = &entry.order_hint {
            let expected: BigUint = h.parse().map_err(|_| Error::Parse { line: 0, msg: "bad order".into() })?;
            if &expected != group.order() {
                return Err(Error::OrderMismatch {
                    expected: expected.to_string(),
                    got: group.order().to_string(),
                });
            }
        }
        let labeling = ClassLabeling::new(&entry.class_labels)?;
        for l in &entry.class_labels {
            if l.cycle_type.degree() != entry.degree {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("class {} has cycle type of degree {}", l.label, l.cycle_type.degree()),
                });
            }
        }
        let out = match &entry.out_data {
            None => None,
            Some(od) => {
                let base = if od.embedding.is_empty() {
                    group.clone()
                } else {
                    let b = PermGroup::from_generators(od.degree, gens(od.degree, &od.embedding)?)?;
                    if b.order() != group.order() {
                        return Err(Error::OutData("embedded copy has the wrong order".into()));
                    }
                    b
                };
                let overgroup = if od.overgroup_generators.is_empty() {
                    if od.out_order != 1 {
                        None
                    } else {
                        Some(base.clone())
                    }
                } else {
                    let hat = PermGroup::from_generators(od.degree, gens(od.degree, &od.overgroup_generators)?)?;
                    if !base.is_subgroup_of(&hat) {
                        return Err(Error::OutData("overgroup does not contain the group".into()));
                    }
                    if hat.generators().iter().any(|x| !base.is_normalized_by(x)) {
                        return Err(Error::OutData("group is not normal in the overgroup".into()));
                    }
                    if hat.order() != &(base.order() * BigUint::from(od.out_order)) {
                        return Err(Error::OutData(format!(
                            "overgroup index is not {}",
                            od.out_order
                        )));
                    }
                    Some(hat)
                };
                Some(OutGroups {
                    out_order: od.out_order,
                    base,
                    overgroup,
                })
            }
        };
        Ok(LoadedGroup {
            entry: entry.clone(),
            group,
            labeling,
            out,
        })
    }
}

/// Parses and validates every entry of a catalog file.
pub fn parse_catalog(path: &Path) -> Result<Vec<LoadedGroup>> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text)?.iter().map(LoadedGroup::from_entry).collect()
}

/// A bundled entry by name, matched case-insensitively against the entry
/// name or the file stem.
pub fn bundled(name: &str) -> Result<LoadedGroup> {
    let key = name.to_ascii_lowercase();
    for (stem, text) in BUNDLED {
        for e in parse_str(text)? {
            if e.name.to_ascii_lowercase() == key || *stem == key {
                return LoadedGroup::from_entry(&e);
            }
        }
    }
    Err(Error::Unknown {
        kind: "group",
        name: name.into(),
    })
}

/// Names of all bundled entries.
pub fn bundled_names() -> Vec<String> {
    BUNDLED
        .iter()
        .flat_map(|(_, t)| parse_str(t).unwrap_or_default().into_iter().map(|e| e.name))
        .collect()
}
