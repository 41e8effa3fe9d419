//! Automorphisms of a tabulated p-group.
//!
//! An automorphism is determined by the images of a fixed minimal generating
//! tuple `x_1..x_d`. The search runs level by level like a stabilizer chain:
//! at level `l` it looks for automorphisms fixing `x_1..x_{l-1}` and moving
//! `x_l` to each candidate outside the orbit already known.

use std::collections::HashMap;

use super::table::{Bits, PGroupTable};
use crate::error::{Error, Result};
use crate::permcore::{PermGroup, Permutation};

pub const AUT_GENERATOR_LIMIT: usize = 4;
pub const AUT_ORDER_LIMIT: u64 = 512;

#[derive(Clone, Debug)]
pub struct PGroupAutGroup {
    /// The fixed generating tuple of `S` (element indices).
    pub tuple: Vec<usize>,
    /// Images of `tuple` under each generator.
    pub generators: Vec<Vec<usize>>,
    pub order: u64,
    /// Action on the element indices of the table.
    pub perm_group: PermGroup,
}

impl PGroupAutGroup {
    /// The automorphism with the given tuple images, as a map on element indices.
    pub fn extend(&self, t: &PGroupTable, images: &[usize]) -> Option<Permutation> {
        partial_map(t, &self.tuple, images, None).and_then(|m| {
            let imgs: Vec<u32> = m.into_iter().map(|x| x as u32).collect();
            (imgs.iter().all(|&x| x != NONE)).then(|| Permutation::from_images(imgs).ok())?
        })
    }
}

const NONE: u32 = u32::MAX;

/// Element invariants preserved by every automorphism.
fn invariants(t: &PGroupTable) -> Vec<u64> {
    let chars: Vec<Bits> = vec![
        t.center(),
        t.second_center(),
        t.omega1(),
        t.frattini(),
        t.derived(),
    ];
    let mut centsize = vec![0u64; t.size()];
    for (x, c) in centsize.iter_mut().enumerate() {
        *c = (0..t.size()).filter(|&g| t.mul(x, g) == t.mul(g, x)).count() as u64;
    }
    (0..t.size())
        .map(|x| {
            let mut v = t.order(x) as u64;
            v = v * 4099 + centsize[x];
            for c in &chars {
                v = v * 2 + c.get(x) as u64;
            }
            // power lands in a characteristic subgroup or not
            let xp = t.pow(x, t.p());
            for c in &chars {
                v = v * 2 + c.get(xp) as u64;
            }
            v
        })
        .collect()
}

/// Extends `tuple[i] -> images[i]` to the subgroup generated by the first
/// `images.len()` entries. Fails on inconsistency, non-injectivity or an
/// invariant mismatch.
fn partial_map(
    t: &PGroupTable,
    tuple: &[usize],
    images: &[usize],
    inv: Option<&[u64]>,
) -> Option<Vec<u32>> {
    let n = t.size();
    let mut phi = vec![NONE; n];
    let mut used = vec![false; n];
    phi[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut k = 0;
    let j = images.len();
    while k < queue.len() {
        let e = queue[k];
        k += 1;
        for i in 0..j {
            let e2 = t.mul(e, tuple[i]);
            let im = t.mul(phi[e] as usize, images[i]);
            if phi[e2] == NONE {
                if used[im] {
                    return None;
                }
                if let Some(inv) = inv {
                    if inv[e2] != inv[im] {
                        return None;
                    }
                }
                phi[e2] = im as u32;
                used[im] = true;
                queue.push(e2);
            } else if phi[e2] as usize != im {
                return None;
            }
        }
    }
    Some(phi)
}

/// Minimal generating tuple, each step picking the element with the rarest invariant.
fn generating_tuple(t: &PGroupTable, inv: &[u64]) -> Vec<usize> {
    let mut freq: HashMap<u64, usize> = HashMap::new();
    for &v in inv {
        *freq.entry(v).or_default() += 1;
    }
    let phi = t.frattini();
    let mut tuple = Vec::new();
    let mut span = phi.clone();
    while span.count() < t.size() {
        let x = (0..t.size())
            .filter(|&x| !span.get(x))
            .min_by_key(|&x| (freq[&inv[x]], x))
            .unwrap();
        tuple.push(x);
        span = t.extend(&phi, &tuple);
    }
    tuple
}

struct AutSearch<'a> {
    t: &'a PGroupTable,
    inv: Vec<u64>,
    tuple: Vec<usize>,
    cands: Vec<Vec<usize>>,
}

impl AutSearch<'_> {
    fn dfs(&self, images: &mut Vec<usize>) -> Option<Vec<u32>> {
        let l = images.len();
        if l == self.tuple.len() {
            let m = partial_map(self.t, &self.tuple, images, Some(&self.inv))?;
            return m.iter().all(|&x| x != NONE).then_some(m);
        }
        for &y in &self.cands[l] {
            images.push(y);
            if partial_map(self.t, &self.tuple, images, Some(&self.inv)).is_some() {
                if let Some(m) = self.dfs(images) {
                    images.pop();
                    return Some(m);
                }
            }
            images.pop();
        }
        None
    }
}

fn orbit_of(gens: &[Permutation], x: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y as u32) as usize;
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

pub fn aut_group(t: &PGroupTable) -> Result<PGroupAutGroup> {
    aut_group_with(t, AUT_ORDER_LIMIT, AUT_GENERATOR_LIMIT)
}

pub fn aut_group_with(t: &PGroupTable, max_order: u64, max_gens: usize) -> Result<PGroupAutGroup> {
    let n = t.size();
    if n as u64 > max_order {
        return Err(Error::Bound(format!("Aut(S) search for |S| = {} above {}", n, max_order)));
    }
    let inv = invariants(t);
    let tuple = generating_tuple(t, &inv);
    if tuple.len() > max_gens {
        return Err(Error::Bound(format!(
            "Aut(S) search needs {} generators, limit {}",
            tuple.len(),
            max_gens
        )));
    }
    let cands: Vec<Vec<usize>> = tuple
        .iter()
        .map(|&x| (0..n).filter(|&y| inv[y] == inv[x]).collect())
        .collect();
    let search = AutSearch {
        t,
        inv,
        tuple: tuple.clone(),
        cands,
    };
    let d = tuple.len();
    let mut found: Vec<(usize, Permutation)> = Vec::new();
    let mut order: u64 = 1;
    for l in (0..d).rev() {
        let stab_gens = |found: &[(usize, Permutation)]| -> Vec<Permutation> {
            found.iter().filter(|(lv, _)| *lv >= l).map(|(_, g)| g.clone()).collect()
        };
        let mut orbit = orbit_of(&stab_gens(&found), tuple[l], n);
        let mut failed = vec![false; n];
        for &y in &search.cands[l] {
            if orbit[y] || failed[y] {
                continue;
            }
            let mut images: Vec<usize> = tuple[..l].to_vec();
            images.push(y);
            let hit = if partial_map(t, &tuple, &images, Some(&search.inv)).is_some() {
                search.dfs(&mut images)
            } else {
                None
            };
            match hit {
                Some(m) => {
                    let g = Permutation::from_images(m).expect("bijective automorphism");
                    found.push((l, g));
                    orbit = orbit_of(&stab_gens(&found), tuple[l], n);
                }
                None => {
                    for (z, f) in orbit_of(&stab_gens(&found), y, n).into_iter().enumerate() {
                        if f {
                            failed[z] = true;
                        }
                    }
                }
            }
        }
        order *= orbit.iter().filter(|&&b| b).count() as u64;
    }
    let gens: Vec<Permutation> = found.into_iter().map(|(_, g)| g).collect();
    let generators = gens
        .iter()
        .map(|g| tuple.iter().map(|&x| g.apply(x as u32) as usize).collect())
        .collect();
    let perm_group = PermGroup::from_generators(n, gens)?;
    debug_assert_eq!(perm_group.order_u64(), order);
    Ok(PGroupAutGroup {
        tuple,
        generators,
        order,
        perm_group,
    })
}

/// Conjugation `x ↦ s⁻¹ x s` as a permutation of element indices.
pub fn inner(t: &PGroupTable, s: usize) -> Permutation {
    Permutation::from_images((0..t.size()).map(|x| t.conj(x, s) as u32).collect()).unwrap()
}

/// Applies an element-index permutation to a subset.
pub fn image_bits(t: &PGroupTable, g: &Permutation, h: &Bits) -> Bits {
    let mut b = Bits::new(t.size());
    for x in h.iter() {
        b.set(g.apply(x as u32) as usize);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(
            n,
            gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect(),
        )
        .unwrap()
    }

    /// Counts bijective homomorphisms by trying every image tuple.
    fn brute_aut_order(t: &PGroupTable) -> u64 {
        let inv = invariants(t);
        let tuple = generating_tuple(t, &inv);
        let n = t.size();
        let mut count = 0;
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(imgs) = stack.pop() {
            if imgs.len() == tuple.len() {
                if let Some(m) = partial_map(t, &tuple, &imgs, None) {
                    if m.iter().all(|&x| x != NONE) {
                        count += 1;
                    }
                }
                continue;
            }
            for y in 0..n {
                let mut v = imgs.clone();
                v.push(y);
                stack.push(v);
            }
        }
        count
    }

    #[test]
    fn e8_gives_gl32() {
        let e8 = grp(6, &[&[&[1, 2]], &[&[3, 4]], &[&[5, 6]]]);
        let t = PGroupTable::new(&e8).unwrap();
        let a = aut_group(&t).unwrap();
        assert_eq!(a.order, 168);
        assert_eq!(a.perm_group.order_u64(), 168);
    }

    #[test]
    fn sd16_order_16() {
        let s = grp(8, &[&[&[1, 2, 3, 4, 5, 6, 7, 8]], &[&[2, 4], &[3, 7], &[6, 8]]]);
        let t = PGroupTable::new(&s).unwrap();
        let a = aut_group(&t).unwrap();
        assert_eq!(a.order, 16);
        assert_eq!(brute_aut_order(&t), 16);
    }

    #[test]
    fn heisenberg_432() {
        let s = grp(9, &[&[&[4, 5, 6], &[7, 9, 8]], &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]]]);
        let t = PGroupTable::new(&s).unwrap();
        let a = aut_group(&t).unwrap();
        assert_eq!(a.order, 432);
        assert_eq!(brute_aut_order(&t), 432);
    }

    #[test]
    fn inner_automorphisms_inside() {
        let s = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let t = PGroupTable::new(&s).unwrap();
        let a = aut_group(&t).unwrap();
        assert_eq!(a.order, 8);
        for x in 0..t.size() {
            assert!(a.perm_group.contains(&inner(&t, x)));
        }
    }

    #[test]
    fn characteristic_subgroups_invariant() {
        let s = grp(8, &[&[&[1, 2, 3, 4, 5, 6, 7, 8]], &[&[2, 4], &[3, 7], &[6, 8]]]);
        let t = PGroupTable::new(&s).unwrap();
        let a = aut_group(&t).unwrap();
        for h in [t.omega1(), t.second_center(), t.thompson().unwrap()] {
            for g in a.perm_group.generators() {
                assert_eq!(image_bits(&t, g, &h), h);
            }
        }
    }
}
