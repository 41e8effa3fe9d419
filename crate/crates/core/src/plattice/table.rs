use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::permcore::{is_prime, PermGroup, Permutation};

/// Largest p-group turned into a multiplication table.
pub const TABLE_LIMIT: u64 = 1 << 11;

/// Subset of a tabulated group, one bit per element index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
}

/// A p-group with its elements numbered and a full multiplication table.
/// Element 0 is the identity.
pub struct PGroupTable {
    p: u64,
    group: PermGroup,
    elems: Vec<Permutation>,
    base: Vec<u32>,
    index: HashMap<Vec<u32>, u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    ord: Vec<u32>,
    gens: Vec<u16>,
}

impl std::fmt::Debug for PGroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PGroupTable(p = {}, order {})", self.p, self.elems.len())
    }
}

impl PGroupTable {
    pub fn new(s: &PermGroup) -> Result<Self> {
        Self::with_limit(s, TABLE_LIMIT)
    }

    pub fn with_limit(s: &PermGroup, limit: u64) -> Result<Self> {
        let n = s.order_u64();
        if n > limit {
            return Err(Error::Bound(format!("p-group of order {} above table limit {}", n, limit)));
        }
        let p = if n == 1 {
            2
        } else {
            let mut q = 2;
            while n % q != 0 {
                q += 1;
            }
            q
        };
        if !is_prime(p) || crate::permcore::p_part(n, p) != n {
            return Err(Error::NotPGroup);
        }
        let mut elems = s.elements(limit);
        elems.sort();
        let base = s.base();
        let key = |g: &Permutation| -> Vec<u32> { base.iter().map(|&b| g.apply(b)).collect() };
        let index: HashMap<Vec<u32>, u16> =
            elems.iter().enumerate().map(|(i, g)| (key(g), i as u16)).collect();
        let n = elems.len();
        let keys: Vec<Vec<u32>> = elems.iter().map(&key).collect();
        let mut mul = vec![0u16; n * n];
        let mut buf = vec![0u32; base.len()];
        for a in 0..n {
            for b in 0..n {
                for (j, &x) in keys[a].iter().enumerate() {
                    buf[j] = elems[b].apply(x);
                }
                mul[a * n + b] = index[&buf];
            }
        }
        let inv: Vec<u16> = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u16)
            .collect();
        let ord: Vec<u32> = (0..n)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = mul[x * n + a] as usize;
                    k += 1;
                }
                k
            })
            .collect();
        let gens = s
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| index[&key(g)])
            .collect();
        Ok(PGroupTable {
            p,
            group: s.clone(),
            elems,
            base,
            index,
            mul,
            inv,
            ord,
            gens,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        let k: Vec<u32> = self.base.iter().map(|&b| g.apply(b)).collect();
        let i = *self.index.get(&k)? as usize;
        (self.elems[i] == *g).then_some(i)
    }

    pub fn generators(&self) -> &[u16] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elems.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn order(&self, a: usize) -> u32 {
        self.ord[a]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn full(&self) -> Bits {
        let mut b = Bits::new(self.size());
        for i in 0..self.size() {
            b.set(i);
        }
        b
    }

    pub fn trivial(&self) -> Bits {
        let mut b = Bits::new(self.size());
        b.set(0);
        b
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Bits {
        let mut b = Bits::new(self.size());
        b.set(0);
        let mut list = vec![0usize];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !b.get(y) {
                    b.set(y);
                    list.push(y);
                }
            }
            k += 1;
        }
        b
    }

    /// Subgroup generated by `h` and `extra`.
    pub fn extend(&self, h: &Bits, extra: &[usize]) -> Bits {
        let mut gens: Vec<usize> = self.generating_set(h);
        gens.extend_from_slice(extra);
        self.closure(&gens)
    }

    /// A generating set of the subgroup `h`, of size at most log_p |h|.
    pub fn generating_set(&self, h: &Bits) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        let target = h.count();
        let mut cands: Vec<usize> = h.iter().collect();
        cands.sort_by_key(|&x| std::cmp::Reverse(self.order(x)));
        for x in cands {
            if cur.count() == target {
                break;
            }
            if !cur.get(x) {
                gens.push(x);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    pub fn to_group(&self, h: &Bits) -> PermGroup {
        let gens = self
            .generating_set(h)
            .into_iter()
            .map(|i| self.elems[i].clone())
            .collect();
        self.group.subgroup(gens)
    }

    /// Element indices of a subgroup of `S` given as a permutation group.
    pub fn bits_of(&self, h: &PermGroup) -> Result<Bits> {
        let mut gens = Vec::new();
        for g in h.generators() {
            gens.push(self.index_of(g).ok_or(Error::NotContained)?);
        }
        Ok(self.closure(&gens))
    }

    pub fn conj_bits(&self, h: &Bits, g: usize) -> Bits {
        let mut b = Bits::new(self.size());
        for x in h.iter() {
            b.set(self.conj(x, g));
        }
        b
    }

    /// `N_S(H)` where `gens` generate `H`.
    pub fn normalizer(&self, h: &Bits, gens: &[usize]) -> Bits {
        let mut b = Bits::new(self.size());
        for g in 0..self.size() {
            if gens.iter().all(|&x| h.get(self.conj(x, g))) {
                b.set(g);
            }
        }
        b
    }

    /// Elements of `within` commuting with every element of `xs`.
    pub fn centralizer_in(&self, within: &Bits, xs: &[usize]) -> Bits {
        let mut b = Bits::new(self.size());
        for g in within.iter() {
            if xs.iter().all(|&x| self.mul(x, g) == self.mul(g, x)) {
                b.set(g);
            }
        }
        b
    }

    pub fn centralizer(&self, xs: &[usize]) -> Bits {
        self.centralizer_in(&self.full(), xs)
    }

    /// `Z(H)`.
    pub fn center_of(&self, h: &Bits) -> Bits {
        let gens = self.generating_set(h);
        self.centralizer_in(h, &gens)
    }

    pub fn is_abelian(&self, h: &Bits) -> bool {
        let gens = self.generating_set(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_elementary_abelian(&self, h: &Bits) -> bool {
        self.is_abelian(h) && h.iter().all(|x| self.order(x) as u64 <= self.p)
    }

    /// Smallest subgroup containing `h` and normalized by `by`.
    pub fn normal_closure_in(&self, h: &Bits, by: &[usize]) -> Bits {
        let mut gens: Vec<usize> = self.generating_set(h);
        let mut cur = self.closure(&gens);
        loop {
            let mut grew = false;
            for x in self.generating_set(&cur) {
                for &g in by {
                    let y = self.conj(x, g);
                    if !cur.get(y) {
                        gens.push(y);
                        cur = self.closure(&gens);
                        grew = true;
                    }
                }
            }
            if !grew {
                return cur;
            }
        }
    }

    /// `log_p |h|`.
    pub fn log_order(&self, h: &Bits) -> u32 {
        let mut n = h.count() as u64;
        let mut k = 0;
        while n > 1 {
            n /= self.p;
            k += 1;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn d8() -> PermGroup {
        PermGroup::from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn table_matches_permutations() {
        let t = PGroupTable::new(&d8()).unwrap();
        assert_eq!(t.size(), 8);
        assert!(t.element(0).is_identity());
        for a in 0..8 {
            for b in 0..8 {
                let prod = t.element(a).mul(t.element(b));
                assert_eq!(t.index_of(&prod), Some(t.mul(a, b)));
            }
        }
        let z = t.center_of(&t.full());
        assert_eq!(z.count(), 2);
    }

    #[test]
    fn rejects_non_p_group() {
        assert!(PGroupTable::new(&PermGroup::symmetric(3)).is_err());
    }
}
