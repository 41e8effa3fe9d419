//! Characteristic subgroups and small recognizers.

use serde::{Deserialize, Serialize};

use super::classes::{class_reps, EnumMode, LatticeOptions};
use super::table::{Bits, PGroupTable};
use crate::error::Result;

impl PGroupTable {
    pub fn center(&self) -> Bits {
        self.center_of(&self.full())
    }

    /// Preimage of `Z(S/Z(S))`.
    pub fn second_center(&self) -> Bits {
        let z = self.center();
        let gens: Vec<usize> = self.generators().iter().map(|&g| g as usize).collect();
        let mut b = Bits::new(self.size());
        for x in 0..self.size() {
            if gens.iter().all(|&g| z.get(self.commutator(x, g))) {
                b.set(x);
            }
        }
        b
    }

    /// Subgroup generated by the elements of order `p` inside `h`.
    pub fn omega1_of(&self, h: &Bits) -> Bits {
        let xs: Vec<usize> = h.iter().filter(|&x| self.order(x) as u64 == self.p()).collect();
        self.closure(&xs)
    }

    pub fn omega1(&self) -> Bits {
        self.omega1_of(&self.full())
    }

    pub fn derived(&self) -> Bits {
        let gens: Vec<usize> = self.generators().iter().map(|&g| g as usize).collect();
        let mut comms = Vec::new();
        for &a in &gens {
            for &b in &gens {
                comms.push(self.commutator(a, b));
            }
        }
        let h = self.closure(&comms);
        self.normal_closure_in(&h, &gens)
    }

    /// `Φ(S) = S^p [S,S]`.
    pub fn frattini(&self) -> Bits {
        let d = self.derived();
        let pw: Vec<usize> = (0..self.size()).map(|x| self.pow(x, self.p())).collect();
        self.extend(&d, &pw)
    }

    /// Subgroup generated by the elementary abelian subgroups of largest rank.
    pub fn thompson(&self) -> Result<Bits> {
        let reps = class_reps(
            self,
            &LatticeOptions {
                max_order: u64::MAX,
                mode: EnumMode::ElementaryAbelian,
            },
        )?;
        let top = reps.iter().map(|(b, _)| b.count()).max().unwrap_or(1);
        let gens: Vec<usize> = self.generators().iter().map(|&g| g as usize).collect();
        let mut j = self.trivial();
        for (b, _) in reps.iter().filter(|(b, _)| b.count() == top) {
            let joint = self.extend(&j, &self.generating_set(b));
            j = joint;
        }
        Ok(self.normal_closure_in(&j, &gens))
    }

    /// Invariants `[p^a1, p^a2, ...]` of an abelian subgroup, descending.
    pub fn abelian_invariants(&self, h: &Bits) -> Vec<u64> {
        let p = self.p();
        // counts of elements with x^(p^k) = 1
        let mut counts = Vec::new();
        let mut k = 0u32;
        loop {
            let e = p.pow(k);
            let c = h.iter().filter(|&x| self.pow(x, e) == 0).count() as u64;
            counts.push(c);
            if c == h.count() as u64 {
                break;
            }
            k += 1;
        }
        // number of cyclic factors of order ≥ p^k is log_p(counts[k]/counts[k-1])
        let logp = |mut n: u64| {
            let mut r = 0;
            while n > 1 {
                n /= p;
                r += 1;
            }
            r
        };
        let mut at_least: Vec<u32> = Vec::new();
        for k in 1..counts.len() {
            at_least.push(logp(counts[k] / counts[k - 1]));
        }
        let mut inv = Vec::new();
        for k in (0..at_least.len()).rev() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..at_least[k] - next {
                inv.push(p.pow(k as u32 + 1));
            }
        }
        inv
    }

    pub fn exponent(&self, h: &Bits) -> u64 {
        h.iter().map(|x| self.order(x) as u64).max().unwrap_or(1)
    }

    pub fn extraspecial(&self) -> Extraspecial {
        let full = self.full();
        if self.is_abelian(&full) {
            return Extraspecial::No;
        }
        let z = self.center();
        if z.count() as u64 != self.p() || self.derived() != z || self.frattini() != z {
            return Extraspecial::No;
        }
        let n = (self.log_order(&full) - 1) / 2;
        let exponent = self.exponent(&full);
        let sign = if self.p() == 2 {
            let sq = (0..self.size()).filter(|&x| self.order(x) <= 2).count() as u64;
            let plus = (1u64 << (2 * n)) + (1u64 << n);
            Some(if sq == plus { '+' } else { '-' })
        } else if exponent == self.p() {
            Some('+')
        } else {
            Some('-')
        };
        Extraspecial::Yes {
            p: self.p(),
            n,
            exponent,
            sign,
        }
    }

    /// Short structural description used in reports.
    pub fn describe(&self, h: &Bits) -> String {
        let n = h.count();
        if n == 1 {
            return "1".into();
        }
        if self.is_abelian(h) {
            let inv = self.abelian_invariants(h);
            if inv.iter().all(|&x| x == self.p()) {
                return format!("E{}", n);
            }
            return inv
                .iter()
                .map(|x| format!("C{}", x))
                .collect::<Vec<_>>()
                .join("x");
        }
        format!("nonabelian of order {}, exponent {}", n, self.exponent(h))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Extraspecial {
    No,
    /// Order `p^(1+2n)`; `sign` is `+`/`-` for the two isomorphism types.
    Yes {
        p: u64,
        n: u32,
        exponent: u64,
        sign: Option<char>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{PermGroup, Permutation};

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(
            n,
            gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect(),
        )
        .unwrap()
    }

    fn sd16() -> PGroupTable {
        PGroupTable::new(&grp(8, &[&[&[1, 2, 3, 4, 5, 6, 7, 8]], &[&[2, 4], &[3, 7], &[6, 8]]])).unwrap()
    }

    fn q8() -> PGroupTable {
        PGroupTable::new(&grp(
            8,
            &[&[&[1, 2, 3, 4], &[5, 6, 7, 8]], &[&[1, 5, 3, 7], &[2, 8, 4, 6]]],
        ))
        .unwrap()
    }

    #[test]
    fn sd16_sections() {
        let t = sd16();
        let o = t.omega1();
        assert_eq!(o.count(), 8);
        assert!(!t.is_abelian(&o));
        // dihedral: five involutions among eight elements
        assert_eq!(o.iter().filter(|&x| t.order(x) == 2).count(), 5);
        let d = t.derived();
        assert_eq!(t.abelian_invariants(&d), vec![4]);
        assert_eq!(t.extraspecial(), Extraspecial::No);
    }

    #[test]
    fn derived_by_all_commutators() {
        let t = sd16();
        let mut comms = Vec::new();
        for a in 0..t.size() {
            for b in 0..t.size() {
                comms.push(t.commutator(a, b));
            }
        }
        assert_eq!(t.closure(&comms), t.derived());
    }

    #[test]
    fn q8_omega_is_center() {
        let t = q8();
        assert_eq!(t.omega1(), t.center());
        assert_eq!(t.center().count(), 2);
        assert!(matches!(t.extraspecial(), Extraspecial::Yes { sign: Some('-'), .. }));
    }

    #[test]
    fn d8_extraspecial_plus() {
        let t = PGroupTable::new(&grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]])).unwrap();
        assert_eq!(
            t.extraspecial(),
            Extraspecial::Yes {
                p: 2,
                n: 1,
                exponent: 4,
                sign: Some('+')
            }
        );
        assert_eq!(t.second_center(), t.full());
        assert_eq!(t.thompson().unwrap(), t.full());
    }

    #[test]
    fn c4xc2() {
        let t = PGroupTable::new(&grp(6, &[&[&[1, 2, 3, 4]], &[&[5, 6]]])).unwrap();
        assert_eq!(t.abelian_invariants(&t.full()), vec![4, 2]);
        assert_eq!(t.describe(&t.full()), "C4xC2");
        let j = t.thompson().unwrap();
        assert_eq!(j, t.omega1());
        assert_eq!(j.count(), 4);
        assert_eq!(t.extraspecial(), Extraspecial::No);
    }

    #[test]
    fn heisenberg_mod_3() {
        // 3^{1+2} of exponent 3 on 9 points: translations and a shear of F3^2
        let t = PGroupTable::new(&grp(
            9,
            &[&[&[4, 5, 6], &[7, 9, 8]], &[&[1, 4, 7], &[2, 5, 8], &[3, 6, 9]]],
        ))
        .unwrap();
        assert_eq!(t.size(), 27);
        assert!(matches!(
            t.extraspecial(),
            Extraspecial::Yes { p: 3, n: 1, exponent: 3, .. }
        ));
    }
}
