use std::collections::{HashSet, VecDeque};

use fusionforge::fusion::FusionSystem;
use fusionforge::modrep::{FpModule, Matrix};
use fusionforge::oracle;
use fusionforge::permcore::{
    centralizer, coset_action, normalizer, subgroup_transporter, sylow, PermGroup, Permutation,
    DEFAULT_INDEX_BOUND,
};
use fusionforge::plattice::{subgroup_classes, EnumMode, LatticeOptions, PGroupTable};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group(max_n: usize) -> impl Strategy<Value = PermGroup> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(perm(n), 1..=2).prop_map(move |g| PermGroup::from_generators(n, g).unwrap())
    })
}

/// Every element, by closing the generators under right multiplication.
fn closure(g: &PermGroup) -> HashSet<Permutation> {
    let id = Permutation::identity(g.degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn primes_dividing(n: u64) -> Vec<u64> {
    [2, 3, 5].into_iter().filter(|p| n % p == 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_with_inverses(
        (a, b, c) in (3usize..9).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
    ) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.cycle_lengths().iter().sum::<usize>(), a.degree());
    }

    #[test]
    fn order_matches_closure(g in group(6)) {
        let elems = closure(&g);
        prop_assert_eq!(g.order_u64(), elems.len() as u64);
        for x in &elems {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn orbit_stabilizer(g in group(7), x in 0u32..3) {
        let orbit = g.orbit(x).len() as u64;
        let st = g.stabilizer(x);
        prop_assert_eq!(orbit * st.order_u64(), g.order_u64());
        prop_assert!(st.generators().iter().all(|s| s.apply(x) == x));
        prop_assert!(st.is_subgroup_of(&g));
    }

    #[test]
    fn coset_action_index(g in group(6), x in 0u32..3) {
        let h = g.stabilizer(x);
        let a = coset_action(&g, &h, DEFAULT_INDEX_BOUND).unwrap();
        prop_assert_eq!(a.index() as u64 * h.order_u64(), g.order_u64());
        prop_assert_eq!(a.reps().len(), a.index());
    }

    #[test]
    fn centralizer_and_normalizer_by_scan(g in group(6), k in 0usize..1000) {
        let elems: Vec<Permutation> = closure(&g).into_iter().collect();
        let x = &elems[k % elems.len()];
        let h = PermGroup::from_generators(g.degree(), vec![x.clone()]).unwrap();
        let c = centralizer(&g, &h);
        let n = normalizer(&g, &h);
        let hc = closure(&h);
        let brute_c = elems.iter().filter(|y| y.mul(x) == x.mul(y)).count();
        let brute_n = elems.iter().filter(|y| hc.contains(&x.conjugate_by(y))).count();
        prop_assert_eq!(c.order_u64(), brute_c as u64);
        prop_assert_eq!(n.order_u64(), brute_n as u64);
    }

    #[test]
    fn transporter_carries_subgroup(g in group(6), k in 0usize..1000, j in 0usize..1000) {
        let elems: Vec<Permutation> = closure(&g).into_iter().collect();
        let a = PermGroup::from_generators(g.degree(), vec![elems[k % elems.len()].clone()]).unwrap();
        let y = &elems[j % elems.len()];
        let b = a.conjugate(y);
        let x = subgroup_transporter(&g, &a, &b).expect("conjugate in G");
        prop_assert!(g.contains(&x));
        prop_assert!(a.conjugate(&x).same_group(&b));
    }

    #[test]
    fn sylow_subgroup_order(g in group(7)) {
        for p in primes_dividing(g.order_u64()) {
            let s = sylow(&g, p).unwrap();
            prop_assert_eq!(s.order_u64(), g.p_part(p));
            prop_assert!(s.is_subgroup_of(&g));
        }
    }

    #[test]
    fn subgroup_classes_partition_the_lattice(g in group(8)) {
        let s = sylow(&g, 2).unwrap();
        prop_assume!(s.order_u64() <= 64);
        let t = PGroupTable::new(&s).unwrap();
        let classes = subgroup_classes(&t, &LatticeOptions::default()).unwrap();
        let total: u64 = classes.iter().map(|c| c.class_size).sum();
        prop_assert_eq!(total as usize, oracle::subgroups(&t).len());
        let ea = subgroup_classes(&t, &LatticeOptions { mode: EnumMode::ElementaryAbelian, ..Default::default() }).unwrap();
        prop_assert_eq!(ea.len(), classes.iter().filter(|c| c.is_elementary_abelian).count());
        let z = t.center();
        let z2 = t.second_center();
        prop_assert!(z.is_subset(&z2));
        prop_assert_eq!(t.abelian_invariants(&z).iter().product::<u64>(), z.count() as u64);
    }

    #[test]
    fn hom_counts_match_scan(g in group(6)) {
        for p in primes_dividing(g.order_u64()) {
            let f = FusionSystem::new(&g, p).unwrap();
            let full = f.table().full();
            for c in f.classes().unwrap().iter() {
                prop_assert_eq!(
                    f.hom_count(&c.bits, &full).unwrap() as usize,
                    oracle::hom_count(&g, &c.representative, f.s())
                );
            }
            let a = f.aut_f().unwrap();
            prop_assert_eq!(a.aut_f_order % a.aut_g_s_order, 0);
            prop_assert_eq!(a.aut_s_order % a.aut_f_order, 0);
        }
    }

    #[test]
    fn absolute_irreducibility_matches_enumeration(
        (p, dim, entries) in (prop::sample::select(vec![2u32, 3]), 1usize..=3)
            .prop_flat_map(|(p, d)| (Just(p), Just(d), prop::collection::vec(0..p as i64, 2 * d * d)))
    ) {
        let actors: Vec<Matrix> = entries
            .chunks(dim * dim)
            .map(|c| Matrix::from_rows(&c.chunks(dim).map(|r| r.to_vec()).collect::<Vec<_>>(), p))
            .collect();
        prop_assume!(actors.iter().all(|a| a.inverse(p).is_some()));
        let m = FpModule::new(p, dim, actors.clone(), None).unwrap();
        prop_assert_eq!(m.is_absolutely_irreducible().unwrap(), oracle::is_absolutely_irreducible(&actors, dim, p));
    }
}
