//! Conjugacy classes of subgroups by cyclic extension, one order layer at a time.

use std::collections::HashSet;

use super::table::{Bits, PGroupTable};
use crate::error::{Error, Result};
use crate::permcore::PermGroup;

/// Default bound on `|S|` for full enumeration.
pub const DEFAULT_LATTICE_BOUND: u64 = 1 << 9;

/// Most subgroups of one order held during enumeration.
pub const LAYER_MEMBER_LIMIT: usize = 1 << 19;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    All,
    ElementaryAbelian,
}

#[derive(Clone, Copy, Debug)]
pub struct LatticeOptions {
    pub max_order: u64,
    pub mode: EnumMode,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            max_order: DEFAULT_LATTICE_BOUND,
            mode: EnumMode::All,
        }
    }
}

/// One `S`-conjugacy class of subgroups of `S`.
#[derive(Clone, Debug)]
pub struct PSubgroupClass {
    pub representative: PermGroup,
    pub order: u64,
    pub class_size: u64,
    pub normalizer_in_s: PermGroup,
    pub is_elementary_abelian: bool,
    pub rank: Option<u32>,
    pub bits: Bits,
    pub normalizer_bits: Bits,
}

impl PSubgroupClass {
    /// Every member with an element `s` such that `member = rep^s`.
    pub fn members(&self, t: &PGroupTable) -> Vec<(Bits, usize)> {
        class_orbit(t, &self.bits)
    }
}

/// Orbit of a subgroup under `S`-conjugation, each with a conjugator.
pub fn class_orbit(t: &PGroupTable, h: &Bits) -> Vec<(Bits, usize)> {
    let mut out = vec![(h.clone(), 0usize)];
    let mut seen: HashSet<Bits> = HashSet::from([h.clone()]);
    let mut k = 0;
    while k < out.len() {
        for &g in t.generators() {
            let (cur, c) = (&out[k].0, out[k].1);
            let img = t.conj_bits(cur, g as usize);
            if seen.insert(img.clone()) {
                let c2 = t.mul(c, g as usize);
                out.push((img, c2));
            }
        }
        k += 1;
    }
    out
}

fn make_class(t: &PGroupTable, h: Bits, size: u64) -> PSubgroupClass {
    let gens = t.generating_set(&h);
    let nb = t.normalizer(&h, &gens);
    let ea = t.is_elementary_abelian(&h);
    let rank = ea.then(|| t.log_order(&h));
    debug_assert_eq!(size as usize * nb.count(), t.size());
    PSubgroupClass {
        representative: t.to_group(&h),
        order: h.count() as u64,
        class_size: size,
        normalizer_in_s: t.to_group(&nb),
        is_elementary_abelian: ea,
        rank,
        bits: h,
        normalizer_bits: nb,
    }
}

/// All classes, ordered by subgroup order then by canonical member.
pub fn subgroup_classes(t: &PGroupTable, opts: &LatticeOptions) -> Result<Vec<PSubgroupClass>> {
    Ok(class_reps(t, opts)?
        .into_iter()
        .map(|(h, size)| make_class(t, h, size))
        .collect())
}

/// Canonical representatives with class sizes, without building permutation groups.
pub fn class_reps(t: &PGroupTable, opts: &LatticeOptions) -> Result<Vec<(Bits, u64)>> {
    let n = t.size() as u64;
    if opts.mode == EnumMode::All && n > opts.max_order {
        return Err(Error::Bound(format!(
            "subgroup enumeration of order {} above bound {}",
            n, opts.max_order
        )));
    }
    let p = t.p();
    let mut layer: Vec<(Bits, u64)> = vec![(t.trivial(), 1)];
    let mut all = layer.clone();
    loop {
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut next: Vec<(Bits, u64)> = Vec::new();
        for (k, _) in &layer {
            let kgens = t.generating_set(k);
            let candidates = match opts.mode {
                EnumMode::All => t.normalizer(k, &kgens),
                EnumMode::ElementaryAbelian => t.centralizer(&kgens),
            };
            let mut done = k.clone();
            for x in candidates.iter() {
                if done.get(x) {
                    continue;
                }
                let xp = t.pow(x, p);
                if !k.get(xp) {
                    continue;
                }
                if opts.mode == EnumMode::ElementaryAbelian && xp != 0 {
                    continue;
                }
                let h = t.extend(k, &[x]);
                for y in h.iter() {
                    done.set(y);
                }
                if seen.contains(&h) {
                    continue;
                }
                let orbit = class_orbit(t, &h);
                let canon = orbit.iter().map(|(b, _)| b).min().unwrap().clone();
                for (b, _) in &orbit {
                    seen.insert(b.clone());
                }
                if seen.len() > LAYER_MEMBER_LIMIT {
                    return Err(Error::Bound(format!(
                        "more than {} subgroups of order {}",
                        LAYER_MEMBER_LIMIT,
                        h.count()
                    )));
                }
                next.push((canon, orbit.len() as u64));
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::Permutation;

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(
            n,
            gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect(),
        )
        .unwrap()
    }

    fn sd16() -> PermGroup {
        // x of order 8, y inverting-times-x^4: y x y = x^3
        grp(8, &[&[&[1, 2, 3, 4, 5, 6, 7, 8]], &[&[2, 4], &[3, 7], &[6, 8]]])
    }

    fn total(classes: &[PSubgroupClass]) -> u64 {
        classes.iter().map(|c| c.class_size).sum()
    }

    #[test]
    fn e4_has_five() {
        let e4 = grp(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        let t = PGroupTable::new(&e4).unwrap();
        let c = subgroup_classes(&t, &LatticeOptions::default()).unwrap();
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn d8_against_brute_force() {
        let d8 = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let t = PGroupTable::new(&d8).unwrap();
        let c = subgroup_classes(&t, &LatticeOptions::default()).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(total(&c) as usize, crate::oracle::subgroups(&t).len());
    }

    #[test]
    fn sd16_against_brute_force() {
        let s = sd16();
        assert_eq!(s.order_u64(), 16);
        let t = PGroupTable::new(&s).unwrap();
        let c = subgroup_classes(&t, &LatticeOptions::default()).unwrap();
        let brute = crate::oracle::subgroups(&t);
        assert_eq!(total(&c) as usize, brute.len());
        // classes = orbits of S on the brute-force set
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut orbits = 0;
        for h in &brute {
            if seen.insert(h.clone()) {
                orbits += 1;
                for (b, _) in class_orbit(&t, h) {
                    seen.insert(b);
                }
            }
        }
        assert_eq!(c.len(), orbits);
    }

    #[test]
    fn elementary_mode_matches_filter() {
        let s = sd16();
        let t = PGroupTable::new(&s).unwrap();
        let all = subgroup_classes(&t, &LatticeOptions::default()).unwrap();
        let ea = subgroup_classes(
            &t,
            &LatticeOptions {
                mode: EnumMode::ElementaryAbelian,
                ..Default::default()
            },
        )
        .unwrap();
        let filtered: Vec<&Bits> = all.iter().filter(|c| c.is_elementary_abelian).map(|c| &c.bits).collect();
        let got: Vec<&Bits> = ea.iter().map(|c| &c.bits).collect();
        assert_eq!(filtered, got);
    }

    #[test]
    fn bound_enforced() {
        let s = sd16();
        let t = PGroupTable::new(&s).unwrap();
        let opts = LatticeOptions {
            max_order: 8,
            mode: EnumMode::All,
        };
        assert!(subgroup_classes(&t, &opts).is_err());
    }
}
