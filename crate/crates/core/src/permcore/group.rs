use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use super::chain::StabChain;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A permutation group with a verified base and strong generating set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Arc<StabChain<Permutation>>,
    order: BigUint,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, order {})", self.degree, self.order)
    }
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &gens, &[]);
        Ok(Self::from_chain(degree, gens, chain))
    }

    pub(crate) fn from_chain(
        degree: usize,
        gens: Vec<Permutation>,
        chain: StabChain<Permutation>,
    ) -> Self {
        let order = chain.order();
        PermGroup {
            degree,
            gens,
            chain: Arc::new(chain),
            order,
        }
    }

    /// Group generated by `gens`, using `hint` for base-point preference.
    pub(crate) fn with_hint(degree: usize, gens: Vec<Permutation>, hint: &[u32]) -> Self {
        let chain = StabChain::build(degree, &gens, hint);
        Self::from_chain(degree, gens, chain)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_chain(
            degree,
            Vec::new(),
            StabChain::empty(degree, Permutation::identity(degree)),
        )
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let cyc: Vec<usize> = (1..=n).collect();
            gens.push(Permutation::from_cycles(n, &[&cyc]).unwrap());
            gens.push(Permutation::from_cycles(n, &[&[1, 2]]).unwrap());
        }
        Self::from_generators(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        for k in 3..=n {
            gens.push(Permutation::from_cycles(n, &[&[1, 2, k]]).unwrap());
        }
        Self::from_generators(n, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`; every group this crate analyzes fits.
    pub fn order_u64(&self) -> u64 {
        self.order.to_u64().expect("group order exceeds u64")
    }

    pub fn chain(&self) -> &StabChain<Permutation> {
        &self.chain
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.chain.strong_generators()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_member(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        Ok(self.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Every element; panics above `limit`.
    pub fn elements(&self, limit: u64) -> Vec<Permutation> {
        assert!(
            self.order <= BigUint::from(limit),
            "element enumeration beyond limit"
        );
        self.chain.elements()
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn extend(&self, extra: &[Permutation]) -> PermGroup {
        let mut gens = self.gens.clone();
        for g in extra {
            if !self.contains(g) {
                gens.push(g.clone());
            }
        }
        if gens.len() == self.gens.len() {
            return self.clone();
        }
        PermGroup::with_hint(self.degree, gens, &self.base())
    }

    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::with_hint(self.degree, gens, &self.base())
    }

    /// Same group, chain rebuilt on a base beginning with `base`.
    pub fn rebased(&self, base: &[u32]) -> StabChain<Permutation> {
        self.chain.with_base(base)
    }

    /// Stabilizer of a point (0-based).
    pub fn stabilizer(&self, x: u32) -> PermGroup {
        let chain = self.rebased(&[x]);
        let gens: Vec<Permutation> = chain
            .levels()
            .iter()
            .filter(|l| l.point != x)
            .flat_map(|l| l.gens.iter().cloned())
            .filter(|g| g.apply(x) == x)
            .collect();
        self.subgroup(gens)
    }

    /// Orbit of a point (0-based), in discovery order.
    pub fn orbit(&self, x: u32) -> Vec<u32> {
        orbit_of(&self.gens, self.degree, x)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(&self.gens, self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.mul(b) != b.mul(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `g` normalizes this group.
    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        self.gens.iter().all(|x| self.contains(&x.conjugate_by(g)))
    }

    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        let gens = self.gens.iter().map(|x| x.conjugate_by(g)).collect();
        let hint: Vec<u32> = self.base().iter().map(|&b| g.apply(b)).collect();
        let c = PermGroup::with_hint(self.degree, gens, &hint);
        debug_assert_eq!(c.order, self.order);
        c
    }

    /// Largest power of `p` dividing the order.
    pub fn p_part(&self, p: u64) -> u64 {
        p_part(self.order_u64(), p)
    }
}

pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    if n == 0 {
        return 1;
    }
    while n % p == 0 {
        n /= p;
        r *= p;
    }
    r
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn orbit_of(gens: &[Permutation], degree: usize, x: u32) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[x as usize] = true;
    let mut out = vec![x];
    let mut k = 0;
    while k < out.len() {
        let y = out[k];
        for g in gens {
            let z = g.apply(y);
            if !seen[z as usize] {
                seen[z as usize] = true;
                out.push(z);
            }
        }
        k += 1;
    }
    out
}

pub(crate) fn orbits_of(gens: &[Permutation], degree: usize) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for x in 0..degree as u32 {
        if seen[x as usize] {
            continue;
        }
        let o = orbit_of(gens, degree, x);
        for &y in &o {
            seen[y as usize] = true;
        }
        out.push(o);
    }
    out
}

/// A subgroup together with the group it lives in.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: Arc<PermGroup>,
    pub group: PermGroup,
}

impl Subgroup {
    pub fn new(ambient: Arc<PermGroup>, group: PermGroup) -> Result<Self> {
        if !group.is_subgroup_of(&ambient) {
            return Err(Error::NotContained);
        }
        Ok(Subgroup { ambient, group })
    }

    pub fn order(&self) -> &BigUint {
        self.group.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    #[test]
    fn s3_order_six() {
        let g = PermGroup::from_generators(3, vec![p(3, &[&[1, 2]]), p(3, &[&[1, 2, 3]])]).unwrap();
        assert_eq!(g.order_u64(), 6);
        assert!(g.contains(&p(3, &[&[1, 3]])));
    }

    #[test]
    fn empty_generators_trivial() {
        let g = PermGroup::from_generators(4, vec![]).unwrap();
        assert_eq!(g.order_u64(), 1);
        assert!(g.contains(&Permutation::identity(4)));
    }

    #[test]
    fn a4_rejects_transposition() {
        let a4 = PermGroup::alternating(4);
        assert_eq!(a4.order_u64(), 12);
        assert!(!a4.contains(&p(4, &[&[1, 2]])));
    }

    #[test]
    fn degree_mismatch_errors() {
        let g = PermGroup::symmetric(3);
        assert!(g.is_member(&Permutation::identity(4)).is_err());
        assert!(PermGroup::from_generators(3, vec![Permutation::identity(4)]).is_err());
    }

    #[test]
    fn rebase_keeps_order() {
        let g = PermGroup::symmetric(6);
        let c = g.rebased(&[5, 4, 3]);
        assert_eq!(c.order(), BigUint::from(720u32));
        assert_eq!(&c.base()[..3], &[5, 4, 3]);
    }

    #[test]
    fn elements_distinct() {
        let g = PermGroup::symmetric(4);
        let mut e = g.elements(100);
        e.sort();
        e.dedup();
        assert_eq!(e.len(), 24);
    }
}
