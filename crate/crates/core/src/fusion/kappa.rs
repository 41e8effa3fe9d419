//! The restriction map from outer automorphisms of G to Out(F).

use serde::{Deserialize, Serialize};

use super::autf::FusionAutGroup;
use super::system::FusionSystem;
use crate::error::{Error, Result};
use crate::permcore::{
    centralizer, normalizer, right_transversal, subgroup_transporter, PermGroup,
    Permutation, DEFAULT_INDEX_BOUND,
};

/// Out(G) as supplied by the caller.
#[derive(Clone, Debug)]
pub enum OutSource {
    /// `G ⊴ Ĝ` with `Ĝ/G ≅ Out(G)`, both at the same degree.
    Overgroup(PermGroup),
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaVerdict {
    Isomorphism,
    InjectiveNotSurjective,
    KernelNontrivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaBar {
    pub out_g_order: u64,
    pub out_f_order: u64,
    pub image_order: u64,
    pub kernel_order: u64,
    pub verdict: KappaVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaInjCriteria {
    /// No outer involution centralizes a Sylow p-subgroup. `None` when the
    /// criterion does not apply.
    pub no_outer_involution_centralizes_s: Option<bool>,
    /// Some `Q ⊴ S` with `|Out_Ĝ(Q)| > |Out_G(Q)|`.
    pub larger_outer_automizer: Option<bool>,
}

impl FusionSystem {
    /// Restrictions to S of coset representatives of G in Ĝ, each adjusted by
    /// an element of G to normalize S. The `shift` picks a different witness
    /// in `N_G(S)` for the adjustment.
    pub fn outer_restrictions(&self, hat: &PermGroup, shift: usize) -> Result<Vec<Permutation>> {
        let g = self.g();
        if hat.degree() != g.degree() || !g.is_subgroup_of(hat) {
            return Err(Error::OutData("overgroup does not contain G at the same degree".into()));
        }
        if hat.generators().iter().any(|h| !g.is_normalized_by(h)) {
            return Err(Error::OutData("G is not normal in the overgroup".into()));
        }
        let s = self.s();
        let ns = normalizer(g, s);
        let ns_gens = ns.generators();
        let mut out = Vec::new();
        for a in right_transversal(hat, g, DEFAULT_INDEX_BOUND)? {
            let sa = s.conjugate(&a);
            let x = subgroup_transporter(g, &sa, s).ok_or_else(|| Error::OutData("Sylow subgroups not conjugate".into()))?;
            let mut beta = a.mul(&x);
            if !ns_gens.is_empty() {
                beta = beta.mul(&ns_gens[shift % ns_gens.len()].pow(shift as i64));
            }
            out.push(self.element_action(&beta));
        }
        Ok(out)
    }

    pub fn kappa_bar(&self, out: &OutSource, autf: &FusionAutGroup) -> Result<KappaBar> {
        self.kappa_bar_with_shift(out, autf, 0)
    }

    pub fn kappa_bar_with_shift(&self, out: &OutSource, autf: &FusionAutGroup, shift: usize) -> Result<KappaBar> {
        let aut_g = autf.aut_g_s.clone().map_or_else(|| self.aut_g_s(), Ok)?;
        let (out_g_order, restrictions) = match out {
            OutSource::Trivial => (1, Vec::new()),
            OutSource::Overgroup(hat) => {
                let idx = (hat.order() / self.g().order()).to_u64_digits();
                let idx = idx.first().copied().unwrap_or(0);
                (idx, self.outer_restrictions(hat, shift)?)
            }
        };
        for r in &restrictions {
            if !autf.contains(r) {
                return Err(Error::OutData("restriction is not fusion preserving".into()));
            }
        }
        let image = aut_g.extend(&restrictions);
        let image_order = image.order_u64() / aut_g.order_u64();
        let kernel_order = out_g_order / image_order;
        let verdict = if kernel_order > 1 {
            KappaVerdict::KernelNontrivial
        } else if image_order == autf.out_f_order {
            KappaVerdict::Isomorphism
        } else {
            KappaVerdict::InjectiveNotSurjective
        };
        Ok(KappaBar {
            out_g_order,
            out_f_order: autf.out_f_order,
            image_order,
            kernel_order,
            verdict,
        })
    }

    pub fn kappa_inj_criteria(&self, out: &OutSource) -> Result<KappaInjCriteria> {
        let hat = match out {
            OutSource::Trivial => {
                return Ok(KappaInjCriteria {
                    no_outer_involution_centralizes_s: None,
                    larger_outer_automizer: None,
                })
            }
            OutSource::Overgroup(h) => h,
        };
        let g = self.g();
        let index = (hat.order() / g.order()).to_u64_digits().first().copied().unwrap_or(0);
        let b = if index == 2 && self.p() % 2 == 1 {
            // an outer involution centralizing some Sylow is G-conjugate to one centralizing S
            let c = centralizer(hat, self.s());
            let hit = c
                .elements(DEFAULT_INDEX_BOUND)
                .iter()
                .any(|x| x.order() == 2 && !g.contains(x));
            Some(!hit)
        } else {
            None
        };
        let c = if index == 2 {
            let mut fired = false;
            for cl in self.classes()?.iter().filter(|c| c.class_size == 1) {
                let q = &cl.representative;
                if out_order(hat, q)? > out_order(g, q)? {
                    fired = true;
                    break;
                }
            }
            Some(fired)
        } else {
            None
        };
        Ok(KappaInjCriteria {
            no_outer_involution_centralizes_s: b,
            larger_outer_automizer: c,
        })
    }
}

/// `|N_H(Q) / Q·C_H(Q)|`.
pub fn out_order(h: &PermGroup, q: &PermGroup) -> Result<u64> {
    let n = normalizer(h, q);
    let c = centralizer(h, q);
    let mut gens = q.generators().to_vec();
    gens.extend(c.generators().iter().cloned());
    let qc = n.subgroup(gens);
    Ok(n.order_u64() / qc.order_u64())
}
