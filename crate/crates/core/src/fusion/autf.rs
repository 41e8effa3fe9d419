//! Fusion-preserving automorphisms of S.

use serde::{Deserialize, Serialize};

use super::system::FusionSystem;
use crate::error::Result;
use crate::permcore::{right_transversal, PermGroup, Permutation, DEFAULT_INDEX_BOUND};
use crate::plattice::aut_group;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionAutGroup {
    /// Generators as images of `tuple` (element indices of S).
    pub tuple: Vec<usize>,
    pub generators: Vec<Vec<usize>>,
    pub aut_f_order: u64,
    pub aut_g_s_order: u64,
    pub out_f_order: u64,
    pub aut_s_order: u64,
    #[serde(skip)]
    pub group: Option<PermGroup>,
    #[serde(skip)]
    pub aut_g_s: Option<PermGroup>,
}

impl FusionAutGroup {
    pub fn contains(&self, alpha: &Permutation) -> bool {
        self.group.as_ref().is_some_and(|g| g.contains(alpha))
    }
}

impl FusionSystem {
    /// `Aut_G(S)` acting on the element indices of S.
    pub fn aut_g_s(&self) -> Result<PermGroup> {
        let full = self.table().full();
        let n = self.normalizer_g(&full);
        let gens = n.generators().iter().map(|g| self.element_action(g)).collect();
        PermGroup::from_generators(self.table().size(), gens)
    }

    /// `x ↦ x^g` on element indices, for `g` normalizing S.
    pub fn element_action(&self, g: &Permutation) -> Permutation {
        let t = self.table();
        let imgs = (0..t.size())
            .map(|x| t.index_of(&t.element(x).conjugate_by(g)).expect("normalizes S") as u32)
            .collect();
        Permutation::from_images(imgs).expect("bijection on S")
    }

    /// Whether `alpha` (on element indices) conjugates every generating
    /// morphism of F to a morphism of F.
    pub fn is_fusion_preserving(&self, alpha: &Permutation) -> Result<bool> {
        self.preserves(alpha, &self.generating_maps()?)
    }

    fn preserves(&self, alpha: &Permutation, maps: &[(Vec<usize>, Vec<usize>)]) -> Result<bool> {
        let a = |v: &[usize]| -> Vec<usize> { v.iter().map(|&x| alpha.apply(x as u32) as usize).collect() };
        Ok(maps.iter().all(|(xs, ys)| self.is_morphism(&a(xs), &a(ys))))
    }

    pub fn aut_f(&self) -> Result<FusionAutGroup> {
        let t = self.table();
        let aut_s = aut_group(t)?;
        let aut_g = self.aut_g_s()?;
        let mut maps = self.generating_maps()?;
        // transporter maps between distinct classes fail most often; test them first
        maps.sort_by_key(|(xs, ys)| xs == ys);
        let mut gens: Vec<Permutation> = aut_g.generators().to_vec();
        let mut group = aut_g.clone();
        for r in right_transversal(&aut_s.perm_group, &aut_g, DEFAULT_INDEX_BOUND)? {
            if group.contains(&r) {
                continue;
            }
            if self.preserves(&r, &maps)? {
                gens.push(r.clone());
                group = group.extend(&[r]);
            }
        }
        let generators = gens
            .iter()
            .map(|g| aut_s.tuple.iter().map(|&x| g.apply(x as u32) as usize).collect())
            .collect();
        let aut_f_order = group.order_u64();
        Ok(FusionAutGroup {
            tuple: aut_s.tuple.clone(),
            generators,
            aut_f_order,
            aut_g_s_order: aut_g.order_u64(),
            out_f_order: aut_f_order / aut_g.order_u64(),
            aut_s_order: aut_s.order,
            group: Some(group),
            aut_g_s: Some(aut_g),
        })
    }
}
