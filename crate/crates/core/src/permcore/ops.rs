use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::backtrack::{search_element, search_subgroup, Problem, ENUMERATION_LIMIT};
use super::group::{is_prime, p_part, PermGroup};
use super::perm::Permutation;
use crate::error::{Error, Result};

fn nontrivial(gens: &[Permutation]) -> Vec<Permutation> {
    gens.iter().filter(|g| !g.is_identity()).cloned().collect()
}

/// `C_G(H)`.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let hg = nontrivial(h.generators());
    if hg.is_empty() {
        return g.clone();
    }
    let pairs: Vec<(Permutation, Permutation)> = hg.iter().map(|x| (x.clone(), x.clone())).collect();
    let prob = Problem::exact(&pairs, g.degree());
    let known: Vec<Permutation> = hg
        .iter()
        .filter(|x| g.contains(x) && hg.iter().all(|y| x.mul(y) == y.mul(x)))
        .cloned()
        .collect();
    search_subgroup(g, &prob, &known)
}

pub fn element_centralizer(g: &PermGroup, x: &Permutation) -> PermGroup {
    if x.is_identity() {
        return g.clone();
    }
    let prob = Problem::exact(&[(x.clone(), x.clone())], g.degree());
    let known: Vec<Permutation> = if g.contains(x) { vec![x.clone()] } else { vec![] };
    search_subgroup(g, &prob, &known)
}

/// `N_G(H)`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let hg = nontrivial(h.generators());
    if hg.is_empty() {
        return g.clone();
    }
    let prob = Problem::into_group(&hg, h);
    let known: Vec<Permutation> = hg.iter().filter(|x| g.contains(x)).cloned().collect();
    search_subgroup(g, &prob, &known)
}

/// Some `x ∈ G` with `A^x = B` (that is, `x∘a∘x⁻¹ ∈ B` as maps).
pub fn subgroup_transporter(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    let ag = nontrivial(a.generators());
    if ag.is_empty() {
        return Some(Permutation::identity(g.degree()));
    }
    if !invariants_match(a, b) {
        return None;
    }
    let prob = Problem::into_group(&ag, b);
    search_element(g, &prob)
}

/// Cheap necessary conditions for `Sym(n)`-conjugacy.
fn invariants_match(a: &PermGroup, b: &PermGroup) -> bool {
    let mut oa: Vec<usize> = a.orbits().iter().map(|o| o.len()).collect();
    let mut ob: Vec<usize> = b.orbits().iter().map(|o| o.len()).collect();
    oa.sort_unstable();
    ob.sort_unstable();
    if oa != ob {
        return false;
    }
    if a.order_u64() <= ENUMERATION_LIMIT {
        let mut ta: Vec<_> = a.elements(ENUMERATION_LIMIT).iter().map(|x| x.cycle_type()).collect();
        let mut tb: Vec<_> = b.elements(ENUMERATION_LIMIT).iter().map(|x| x.cycle_type()).collect();
        ta.sort();
        tb.sort();
        if ta != tb {
            return false;
        }
    }
    true
}

pub fn element_transporter(g: &PermGroup, x: &Permutation, y: &Permutation) -> Option<Permutation> {
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    if x.is_identity() {
        return Some(Permutation::identity(g.degree()));
    }
    let prob = Problem::exact(&[(x.clone(), y.clone())], g.degree());
    search_element(g, &prob)
}

/// Some `g ∈ G` with `x_i^g = y_i` for every pair.
pub fn simultaneous_transporter(g: &PermGroup, pairs: &[(Permutation, Permutation)]) -> Option<Permutation> {
    let mut kept = Vec::new();
    for (x, y) in pairs {
        if x.cycle_type() != y.cycle_type() {
            return None;
        }
        if !x.is_identity() {
            kept.push((x.clone(), y.clone()));
        }
    }
    if kept.is_empty() {
        return Some(Permutation::identity(g.degree()));
    }
    search_element(g, &Problem::exact(&kept, g.degree()))
}

/// Either a single element or a subgroup, for `are_conjugate`.
pub enum ConjArg<'a> {
    Element(&'a Permutation),
    Subgroup(&'a PermGroup),
}

/// A witness `x` with `x∘A∘x⁻¹ = B` (maps composed right to left), i.e.
/// `a.conjugate_by(x) = b` in this crate's left-to-right product.
pub fn are_conjugate(g: &PermGroup, a: ConjArg<'_>, b: ConjArg<'_>) -> Option<Permutation> {
    match (a, b) {
        (ConjArg::Element(x), ConjArg::Element(y)) => element_transporter(g, x, y),
        (ConjArg::Subgroup(x), ConjArg::Subgroup(y)) => subgroup_transporter(g, x, y),
        _ => None,
    }
}

/// Normal closure of `gens` in `G`.
pub fn normal_closure(g: &PermGroup, gens: &[Permutation]) -> PermGroup {
    let mut n = g.subgroup(nontrivial(gens));
    loop {
        let mut extra = Vec::new();
        for x in n.generators() {
            for s in g.generators() {
                let y = x.conjugate_by(s);
                if !n.contains(&y) && !extra.contains(&y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return n;
        }
        n = n.extend(&extra);
    }
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    normal_closure(g, &comms)
}

pub fn center(g: &PermGroup) -> PermGroup {
    centralizer(g, g)
}

/// p-part of a group element: `x^m` where `m` is the p'-part of `|x|`.
pub fn p_part_element(x: &Permutation, p: u64) -> Permutation {
    let o = x.order() as u64;
    let pp = p_part(o, p);
    x.pow((o / pp) as i64)
}

pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    g.p_part(p) == g.order_u64()
}

/// A Sylow p-subgroup, grown through normalizers of p-subgroups.
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let target = g.p_part(p);
    let degree = g.degree();
    if target == 1 {
        return Ok(PermGroup::trivial(degree));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ 0x5171_0000);
    // start from a p-element of G
    let mut start = None;
    for _ in 0..100_000 {
        let x = p_part_element(&g.random_element(&mut rng), p);
        if !x.is_identity() {
            start = Some(x);
            break;
        }
    }
    let mut sp = g.subgroup(vec![start.expect("p divides |G|")]);
    while sp.order_u64() < target {
        let n = normalizer(g, &sp);
        let mut grown = false;
        for _ in 0..200_000 {
            let z = p_part_element(&n.random_element(&mut rng), p);
            if !sp.contains(&z) {
                sp = sp.extend(&[z]);
                grown = true;
                break;
            }
        }
        assert!(grown, "Sylow growth stalled");
    }
    Ok(sp)
}

/// `O_p(G)`: core of a Sylow p-subgroup, by intersecting with conjugates
/// under the generators until stable.
pub fn p_core(g: &PermGroup, p: u64) -> Result<PermGroup> {
    let s = sylow(g, p)?;
    if s.order_u64() > ENUMERATION_LIMIT {
        return Err(Error::Bound("Sylow subgroup too large for core".into()));
    }
    let mut elems = s.elements(ENUMERATION_LIMIT);
    let mut cur = s;
    let mut conj: Vec<Permutation> = g.generators().to_vec();
    conj.extend(g.generators().iter().map(|x| x.inverse()));
    loop {
        let before = elems.len();
        for t in &conj {
            elems.retain(|c| cur.contains(&c.conjugate_by(t)));
        }
        cur = g.subgroup(elems.clone());
        elems.retain(|c| cur.contains(c));
        if elems.len() == before {
            return Ok(cur);
        }
    }
}

/// `O_{p'}(G)` for small groups, by accumulating normal p'-closures.
pub fn p_prime_core(g: &PermGroup, p: u64, limit: u64) -> Result<PermGroup> {
    if g.order_u64() > limit {
        return Err(Error::Bound("group too large for O_p'".into()));
    }
    let mut o = PermGroup::trivial(g.degree());
    let mut rejected: Vec<Permutation> = Vec::new();
    for x in g.elements(limit) {
        if x.is_identity() || (x.order() as u64) % p == 0 || o.contains(&x) {
            continue;
        }
        if rejected.iter().any(|r| r == &x) {
            continue;
        }
        let mut gens = o.generators().to_vec();
        gens.push(x.clone());
        let m = normal_closure(g, &gens);
        if m.order_u64() % p != 0 {
            o = m;
        } else {
            rejected.push(x);
        }
    }
    Ok(o)
}

/// Intersection of two subgroups, the first small enough to enumerate.
pub fn intersection(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let elems: Vec<Permutation> = small
        .elements(ENUMERATION_LIMIT * 16)
        .into_iter()
        .filter(|x| !x.is_identity() && big.contains(x))
        .collect();
    let mut h = PermGroup::trivial(a.degree());
    for x in elems {
        if !h.contains(&x) {
            h = h.extend(&[x]);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, c: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, c).unwrap()
    }

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(n, gens.iter().map(|c| p(n, c)).collect()).unwrap()
    }

    fn brute_centralizer(g: &PermGroup, h: &PermGroup) -> u64 {
        g.elements(100_000)
            .iter()
            .filter(|x| h.generators().iter().all(|y| x.mul(y) == y.mul(x)))
            .count() as u64
    }

    fn brute_normalizer(g: &PermGroup, h: &PermGroup) -> u64 {
        g.elements(100_000).iter().filter(|x| h.is_normalized_by(x)).count() as u64
    }

    #[test]
    fn centralizer_examples() {
        let s3 = PermGroup::symmetric(3);
        let c3 = grp(3, &[&[&[1, 2, 3]]]);
        assert_eq!(centralizer(&s3, &c3).order_u64(), 3);
        let s4 = PermGroup::symmetric(4);
        let h = grp(4, &[&[&[1, 2], &[3, 4]]]);
        let c = centralizer(&s4, &h);
        assert_eq!(c.order_u64(), 8);
        assert_eq!(brute_centralizer(&s4, &h), 8);
    }

    #[test]
    fn normalizer_examples() {
        let s4 = PermGroup::symmetric(4);
        let v4 = grp(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        assert_eq!(normalizer(&s4, &v4).order_u64(), 24);
        let s3 = PermGroup::symmetric(3);
        let t = grp(3, &[&[&[1, 2]]]);
        assert_eq!(normalizer(&s3, &t).order_u64(), 2);
    }

    #[test]
    fn normalizers_match_brute_force_in_s6() {
        let s6 = PermGroup::symmetric(6);
        let cases = [
            grp(6, &[&[&[1, 2, 3]]]),
            grp(6, &[&[&[1, 2], &[3, 4]]]),
            grp(6, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]),
            grp(6, &[&[&[1, 2, 3]], &[&[4, 5, 6]]]),
            grp(6, &[&[&[1, 2], &[3, 4], &[5, 6]], &[&[1, 3, 5], &[2, 4, 6]]]),
        ];
        for h in &cases {
            assert_eq!(normalizer(&s6, h).order_u64(), brute_normalizer(&s6, h));
            assert_eq!(centralizer(&s6, h).order_u64(), brute_centralizer(&s6, h));
        }
    }

    #[test]
    fn conjugacy_examples() {
        let s4 = PermGroup::symmetric(4);
        let a = p(4, &[&[1, 2]]);
        let b = p(4, &[&[3, 4]]);
        let x = are_conjugate(&s4, ConjArg::Element(&a), ConjArg::Element(&b)).unwrap();
        assert_eq!(a.conjugate_by(&x), b);
        let ha = grp(4, &[&[&[1, 2]]]);
        let hb = grp(4, &[&[&[1, 2], &[3, 4]]]);
        assert!(are_conjugate(&s4, ConjArg::Subgroup(&ha), ConjArg::Subgroup(&hb)).is_none());
        let a4 = PermGroup::alternating(4);
        let c1 = p(4, &[&[1, 2, 3]]);
        let c2 = p(4, &[&[1, 3, 2]]);
        assert!(element_transporter(&a4, &c1, &c2).is_none());
        assert!(element_transporter(&s4, &c1, &c2).is_some());
    }

    #[test]
    fn sylow_and_cores() {
        let s4 = PermGroup::symmetric(4);
        let s = sylow(&s4, 2).unwrap();
        assert_eq!(s.order_u64(), 8);
        assert_eq!(p_core(&s4, 2).unwrap().order_u64(), 4);
        assert_eq!(sylow(&s4, 5).unwrap().order_u64(), 1);
        assert!(sylow(&s4, 4).is_err());
        let q8 = grp(8, &[&[&[1, 2, 3, 4], &[5, 6, 7, 8]], &[&[1, 5, 3, 7], &[2, 8, 4, 6]]]);
        assert_eq!(q8.order_u64(), 8);
        assert_eq!(center(&q8).order_u64(), 2);
        assert_eq!(derived_subgroup(&s4).order_u64(), 12);
    }

    #[test]
    fn p_prime_core_of_c6() {
        let c6 = grp(5, &[&[&[1, 2], &[3, 4, 5]]]);
        assert_eq!(p_prime_core(&c6, 2, 1000).unwrap().order_u64(), 3);
        let s4 = PermGroup::symmetric(4);
        assert_eq!(p_prime_core(&s4, 3, 1000).unwrap().order_u64(), 4);
    }
}
