//! Centric linking data and bounds on outer automorphism groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, KappaBar, KappaVerdict, ZHatMember};
use crate::modrep::{module_from_action, FpModule, Matrix, Section};
use crate::permcore::{
    center, centralizer, coset_action, normalizer, p_core, p_prime_core, PermGroup, Permutation,
    QUOTIENT_INDEX_BOUND,
};
use crate::plattice::{Bits, Extraspecial, PGroupTable};

/// Largest centralizer whose p'-part is found by enumeration.
pub const CENTRALIZER_LIMIT: u64 = 1 << 20;

/// Largest rank of `GL_n(p)` built as a permutation group.
pub const GL_RANK_LIMIT: usize = 4;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkingLocalData {
    pub p_order: u64,
    pub center_order: u64,
    pub centralizer_order: u64,
    pub c_prime_order: u64,
    pub normalizer_order: u64,
    pub aut_l_order: u64,
    #[serde(skip)]
    pub c_prime: Option<PermGroup>,
}

/// `C_G(P) = Z(P) × C′` and `Aut_L(P) = N_G(P)/C′` for p-centric `P`.
pub fn linking_local(f: &FusionSystem, p: &Bits) -> Result<LinkingLocalData> {
    if !f.is_p_centric(p) {
        return Err(Error::NotCentric);
    }
    let c = f.centralizer_g(p);
    let n = f.normalizer_g(p);
    let cp = p_prime_core(&c, f.p(), CENTRALIZER_LIMIT)?;
    let z = f.table().center_of(p).count() as u64;
    if z * cp.order_u64() != c.order_u64() {
        return Err(Error::Module("centralizer does not split as Z(P) × C′".into()));
    }
    Ok(LinkingLocalData {
        p_order: p.count() as u64,
        center_order: z,
        centralizer_order: c.order_u64(),
        c_prime_order: cp.order_u64(),
        normalizer_order: n.order_u64(),
        aut_l_order: n.order_u64() / cp.order_u64(),
        c_prime: Some(cp),
    })
}

/// `|Mor_L(P, Q)| = |T_G(P, Q)| / |C′_G(P)|`, with `|T_G(P, Q)| = |Hom_F(P, Q)|·|C_G(P)|`.
pub fn mor_l_count(f: &FusionSystem, p: &Bits, q: &Bits) -> Result<u64> {
    let local = linking_local(f, p)?;
    Ok(f.hom_count(p, q)? * local.centralizer_order / local.c_prime_order)
}

/// `C_H(O_p(H)) ≤ O_p(H)`.
pub fn strictly_p_constrained(h: &PermGroup, p: u64) -> Result<bool> {
    let q = p_core(h, p)?;
    if q.is_trivial() {
        return Ok(h.is_trivial());
    }
    Ok(centralizer(h, &q).is_subgroup_of(&q))
}

fn vector_index(v: &[u8], p: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

fn index_vector(mut k: usize, n: usize, p: u32) -> Vec<u8> {
    (0..n)
        .map(|_| {
            let c = (k % p as usize) as u8;
            k /= p as usize;
            c
        })
        .collect()
}

/// A matrix acting on the `p^n − 1` nonzero row vectors.
pub fn matrix_permutation(m: &Matrix, p: u32) -> Permutation {
    let n = m.rows();
    let count = (p as usize).pow(n as u32) - 1;
    let imgs = (1..=count)
        .map(|k| {
            let v = index_vector(k, n, p);
            (vector_index(&crate::modrep::matrix::vec_mat(&v, m, p), p) - 1) as u32
        })
        .collect();
    Permutation::from_images(imgs).expect("invertible matrix")
}

/// `GL_n(p)` on nonzero vectors, generated by a scalar and the elementary transvections.
pub fn general_linear(n: usize, p: u32) -> Result<PermGroup> {
    if n == 0 || n > GL_RANK_LIMIT {
        return Err(Error::Bound(format!("GL rank {} above {}", n, GL_RANK_LIMIT)));
    }
    let mut gens = Vec::new();
    let root = (1..p).find(|&r| (1..p - 1).all(|k| pow_mod(r, k, p) != 1)).unwrap_or(1);
    let mut d = Matrix::identity(n);
    d.set(0, 0, root as u8);
    gens.push(d);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut t = Matrix::identity(n);
                t.set(i, j, 1);
                gens.push(t);
            }
        }
    }
    let degree = (p as usize).pow(n as u32) - 1;
    PermGroup::from_generators(degree, gens.iter().map(|m| matrix_permutation(m, p)).collect())
}

fn pow_mod(a: u32, k: u32, p: u32) -> u32 {
    (0..k).fold(1, |acc, _| acc * a % p)
}

/// `|N_{GL_n(p)}(H*) / H*|` for `H*` generated by `actors`.
pub fn normalizer_in_out(n: usize, p: u32, actors: &[Matrix]) -> Result<u64> {
    let gl = general_linear(n, p)?;
    let degree = gl.degree();
    let h = PermGroup::from_generators(degree, actors.iter().map(|m| matrix_permutation(m, p)).collect())?;
    let nrm = normalizer(&gl, &h);
    Ok(nrm.order_u64() / h.order_u64())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutBoundReport {
    pub h1_dim: usize,
    pub normalizer_quotient_order: u64,
    pub out_h_upper_bound: u64,
    pub notes: Vec<String>,
}

/// Bound on `|Out(H)|` from `1 → H¹(H/Q; Z(Q)) → Out(H) → N_{Out(Q)}(H*)/H*`,
/// for `Q` characteristic in `H` with `C_H(Q) ≤ Q`.
pub fn out_bound_exact_sequence(h: &PermGroup, q: &PermGroup) -> Result<OutBoundReport> {
    if !q.is_subgroup_of(h) || h.generators().iter().any(|x| !q.is_normalized_by(x)) {
        return Err(Error::NotContained);
    }
    if !centralizer(h, q).is_subgroup_of(q) {
        return Err(Error::Unsupported("C_H(Q) is not contained in Q".into()));
    }
    let t = PGroupTable::new(q)?;
    let p = t.p() as u32;
    let full = t.full();
    let mut notes = Vec::new();
    let (zq, hstar): (PermGroup, FpModule) = if t.is_elementary_abelian(&full) {
        (q.clone(), module_from_action(h, q, Section::Whole)?)
    } else if let Extraspecial::Yes { n: 1, .. } = t.extraspecial() {
        notes.push("Out(Q) taken through its image in GL_2(p) on Q/Z(Q)".into());
        (center(q), module_from_action(h, q, Section::ModCenter)?)
    } else {
        return Err(Error::Unsupported("Q must be elementary abelian or extraspecial of order p^3".into()));
    };
    // Z(Q) as a module for H/Q
    let action = coset_action(h, q, QUOTIENT_INDEX_BOUND)?;
    let quotient = PermGroup::from_generators(action.index(), action.gen_images.clone())?;
    let zmod = module_from_action(h, &zq, Section::Whole)?.with_group(quotient)?;
    let h1_dim = zmod.h1()?;
    let nq = normalizer_in_out(hstar.dim(), p, hstar.actors())?;
    Ok(OutBoundReport {
        h1_dim,
        normalizer_quotient_order: nq,
        out_h_upper_bound: (p as u64).pow(h1_dim as u32) * nq,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KerMuVerdict {
    TrivialByEmpty,
    TrivialBySingleton,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerMuReport {
    pub verdict: KerMuVerdict,
    pub z_hat_size: usize,
    pub center_order: u64,
    pub notes: Vec<String>,
}

/// Triviality of `Ker(μ_G)` from the size of `Ẑ(F)`: empty, or a single
/// member with `Aut_F(Ω₁(Z(S))) = 1`.
pub fn ker_mu_verdict(f: &FusionSystem, z_hat: &[ZHatMember]) -> Result<KerMuReport> {
    let t = f.table();
    let z = t.center();
    let mut notes = Vec::new();
    let verdict = if f.p() != 2 {
        notes.push("criterion stated for p = 2".into());
        KerMuVerdict::Inconclusive
    } else if z_hat.is_empty() {
        KerMuVerdict::TrivialByEmpty
    } else if z_hat.len() == 1 {
        let om = t.omega1_of(&z);
        let autf_trivial = f.hom_f(&om, &om)?.len() == 1;
        if z.count() == 2 || autf_trivial {
            KerMuVerdict::TrivialBySingleton
        } else {
            notes.push("one member but Aut_F(Ω₁(Z(S))) ≠ 1".into());
            KerMuVerdict::Inconclusive
        }
    } else {
        notes.push(format!("{} members", z_hat.len()));
        KerMuVerdict::Inconclusive
    };
    Ok(KerMuReport {
        verdict,
        z_hat_size: z_hat.len(),
        center_order: z.count() as u64,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TamenessVerdict {
    /// `κ_G` is an isomorphism, when decided.
    pub kappa_isomorphism: Option<bool>,
    pub tamely_realized_by_g: Option<bool>,
    pub summary: String,
}

/// Combines `κ̄` with the `Ker(μ)` criterion; for odd `p`, `μ_G` is an
/// isomorphism and `κ_G` behaves as `κ̄`.
pub fn tameness_verdict(p: u64, kappa: Option<&KappaBar>, ker_mu: Option<&KerMuReport>) -> TamenessVerdict {
    let Some(k) = kappa else {
        return TamenessVerdict {
            kappa_isomorphism: None,
            tamely_realized_by_g: None,
            summary: "κ̄ not computed".into(),
        };
    };
    let mu_iso = p % 2 == 1
        || ker_mu.is_some_and(|r| r.verdict != KerMuVerdict::Inconclusive);
    match k.verdict {
        KappaVerdict::Isomorphism if mu_iso => TamenessVerdict {
            kappa_isomorphism: Some(true),
            tamely_realized_by_g: Some(true),
            summary: "κ_G isomorphism; F tamely realized by G".into(),
        },
        KappaVerdict::Isomorphism => TamenessVerdict {
            kappa_isomorphism: None,
            tamely_realized_by_g: None,
            summary: "κ̄ isomorphism; Ker(μ) undecided".into(),
        },
        KappaVerdict::InjectiveNotSurjective => TamenessVerdict {
            kappa_isomorphism: Some(false),
            tamely_realized_by_g: Some(false),
            summary: "κ̄ injective-not-surjective; tame realization must come from another group".into(),
        },
        KappaVerdict::KernelNontrivial => TamenessVerdict {
            kappa_isomorphism: Some(false),
            tamely_realized_by_g: None,
            summary: "κ̄ has nontrivial kernel".into(),
        },
    }
}

#[cfg(test)]
mod tests;
