//! Strongly p-embedded subgroups.

use crate::permcore::{normalizer, sylow, PermGroup, Permutation};

/// Whether `H` has a strongly `p`-embedded subgroup: the graph on `Syl_p(H)`
/// joining Sylow subgroups with nontrivial intersection is disconnected.
///
/// With `T` a Sylow subgroup, the component of `T` is its orbit under
/// `M = ⟨N_H(T), {r : T ∩ T^r ≠ 1}⟩`, so the graph is connected iff `M = H`.
pub fn has_strongly_p_embedded(h: &PermGroup, p: u64) -> bool {
    strongly_p_embedded_subgroup(h, p).is_some()
}

/// The stabilizer of the component of a Sylow subgroup, when it is proper.
pub fn strongly_p_embedded_subgroup(h: &PermGroup, p: u64) -> Option<PermGroup> {
    if h.order_u64() % p != 0 {
        return None;
    }
    let t = sylow(h, p).ok()?;
    let n = normalizer(h, &t);
    if n.order() == h.order() {
        return None;
    }
    let telems: Vec<Permutation> = t
        .elements(u64::MAX)
        .into_iter()
        .filter(|x| !x.is_identity())
        .collect();
    let reps = crate::permcore::right_transversal(h, &n, u64::MAX).ok()?;
    let mut m = n.clone();
    for r in reps {
        if m.contains(&r) {
            continue;
        }
        let tr = t.conjugate(&r);
        if telems.iter().any(|x| tr.contains(x)) {
            m = m.extend(&[r]);
            if m.order() == h.order() {
                return None;
            }
        }
    }
    (m.order() != h.order()).then_some(m)
}
