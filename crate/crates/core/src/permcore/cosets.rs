use std::collections::HashMap;

use num_bigint::BigUint;

use super::chain::StabChain;
use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

pub const DEFAULT_INDEX_BOUND: u64 = 100_000;

/// Largest index at which a quotient is built as a permutation group; the
/// stabilizer chain of the image is quadratic in its degree.
pub const QUOTIENT_INDEX_BOUND: u64 = 1 << 12;

/// Canonical element of the right coset `H g`: the element whose images of
/// `H`'s base points are lexicographically least.
pub fn canonical_coset_element(h: &StabChain<Permutation>, g: &Permutation) -> Permutation {
    let mut c = g.clone();
    for lvl in h.levels() {
        let mut best = None;
        for &o in lvl.orbit() {
            let img = c.apply(o);
            if best.map_or(true, |(b, _)| img < b) {
                best = Some((img, o));
            }
        }
        let (_, o) = best.expect("nonempty orbit");
        c = lvl.rep(o).expect("orbit point").mul(&c);
    }
    c
}

/// `G` acting on the right cosets of `H`.
pub struct CosetAction {
    pub image: PermGroup,
    pub gen_images: Vec<Permutation>,
    reps: Vec<Permutation>,
    lookup: HashMap<Vec<u32>, usize>,
    sub: StabChain<Permutation>,
    key_points: Vec<u32>,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    fn key(&self, g: &Permutation) -> Vec<u32> {
        let c = canonical_coset_element(&self.sub, g);
        self.key_points.iter().map(|&b| c.apply(b)).collect()
    }

    /// Coset number containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.lookup[&self.key(g)]
    }

    /// Image of an arbitrary element of `G`.
    pub fn map(&self, g: &Permutation) -> Permutation {
        let imgs: Vec<u32> = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.mul(g)) as u32)
            .collect();
        Permutation::from_images_unchecked(imgs)
    }
}

fn check_index(g: &PermGroup, h: &PermGroup, bound: u64) -> Result<u64> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained);
    }
    let index = g.order() / h.order();
    if index > BigUint::from(bound) {
        return Err(Error::IndexBound {
            index: index.to_string(),
            bound,
        });
    }
    Ok(index.try_into().unwrap())
}

pub fn coset_action(g: &PermGroup, h: &PermGroup, bound: u64) -> Result<CosetAction> {
    let index = check_index(g, h, bound)? as usize;
    let degree = g.degree();
    let key_points = g.base();
    let mut act = CosetAction {
        image: PermGroup::trivial(index),
        gen_images: Vec::new(),
        reps: vec![Permutation::identity(degree)],
        lookup: HashMap::new(),
        sub: h.chain().clone(),
        key_points,
    };
    let k0 = act.key(&act.reps[0]);
    act.lookup.insert(k0, 0);
    let gens = g.generators();
    let mut tables: Vec<Vec<u32>> = vec![Vec::with_capacity(index); gens.len()];
    let mut k = 0;
    while k < act.reps.len() {
        for (s, gen) in gens.iter().enumerate() {
            let r = act.reps[k].mul(gen);
            let key = act.key(&r);
            let next = act.reps.len();
            let j = *act.lookup.entry(key).or_insert(next);
            if j == next {
                act.reps.push(r);
            }
            tables[s].push(j as u32);
        }
        k += 1;
    }
    debug_assert_eq!(act.reps.len(), index);
    act.gen_images = tables
        .into_iter()
        .map(Permutation::from_images_unchecked)
        .collect();
    act.image = PermGroup::from_generators(index, act.gen_images.clone())?;
    Ok(act)
}

/// Representatives of the right cosets `H g`.
pub fn right_transversal(g: &PermGroup, h: &PermGroup, bound: u64) -> Result<Vec<Permutation>> {
    Ok(coset_action(g, h, bound)?.reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn s4_on_s3_cosets() {
        let s4 = PermGroup::symmetric(4);
        let s3 = PermGroup::from_generators(4, vec![p(4, &[&[1, 2]]), p(4, &[&[1, 2, 3]])]).unwrap();
        let a = coset_action(&s4, &s3, 100).unwrap();
        assert_eq!(a.index(), 4);
        assert_eq!(a.image.order_u64(), 24);
    }

    #[test]
    fn d8_mod_center() {
        let d8 = PermGroup::from_generators(4, vec![p(4, &[&[1, 2, 3, 4]]), p(4, &[&[1, 3]])]).unwrap();
        let z = PermGroup::from_generators(4, vec![p(4, &[&[1, 3], &[2, 4]])]).unwrap();
        let a = coset_action(&d8, &z, 100).unwrap();
        assert_eq!(a.image.order_u64(), 4);
        assert!(a.image.generators().iter().all(|g| g.order() <= 2));
    }

    #[test]
    fn map_is_homomorphism() {
        let s4 = PermGroup::symmetric(4);
        let v4 = PermGroup::from_generators(4, vec![p(4, &[&[1, 2], &[3, 4]]), p(4, &[&[1, 3], &[2, 4]])]).unwrap();
        let a = coset_action(&s4, &v4, 100).unwrap();
        let x = p(4, &[&[1, 2, 3]]);
        let y = p(4, &[&[2, 4]]);
        assert_eq!(a.map(&x.mul(&y)), a.map(&x).mul(&a.map(&y)));
    }

    #[test]
    fn index_bound_enforced() {
        let s5 = PermGroup::symmetric(5);
        let t = PermGroup::trivial(5);
        assert!(coset_action(&s5, &t, 100).is_err());
    }
}
