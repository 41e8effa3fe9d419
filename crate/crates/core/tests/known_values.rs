use fusionforge::catalog::bundled;
use fusionforge::fusion::{abelian_type, FusionSystem, KappaVerdict, OutSource};
use fusionforge::linking::{
    ker_mu_verdict, out_bound_exact_sequence, strictly_p_constrained, tameness_verdict,
    KerMuVerdict,
};
use fusionforge::permcore::{
    coset_action, derived_subgroup, normalizer, subgroup_transporter, PermGroup, Permutation,
    DEFAULT_INDEX_BOUND,
};
use fusionforge::plattice::PGroupTable;
use fusionforge::Error;

fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
    PermGroup::from_generators(n, gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect()).unwrap()
}

#[test]
fn m11_membership_of_words() {
    let g = bundled("M11").unwrap().group;
    let gens = g.generators();
    let w = gens[0].mul(&gens[1]).mul(&gens[0]).mul(&gens[1].pow(3));
    assert!(g.contains(&w));
    assert!(!g.contains(&Permutation::from_cycles(11, &[&[1, 2]]).unwrap()));
}

#[test]
fn d8_modulo_center_is_e4() {
    let d8 = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
    let z = grp(4, &[&[&[1, 3], &[2, 4]]]);
    let a = coset_action(&d8, &z, DEFAULT_INDEX_BOUND).unwrap();
    assert_eq!(a.image.order_u64(), 4);
    assert!(a.image.is_abelian());
    assert!(a.gen_images.iter().all(|x| x.order() <= 2));
}

#[test]
fn sd16_derived_subgroup_is_c4() {
    let s = bundled("M11").unwrap();
    let f = FusionSystem::new(&s.group, 2).unwrap();
    let d = derived_subgroup(f.s());
    assert_eq!(d.order_u64(), 4);
    assert!(d.generators().iter().any(|x| x.order() == 4));
}

#[test]
fn m24_rank_six_subgroups_are_not_fused() {
    let g = bundled("M24").unwrap().group;
    let f = FusionSystem::new(&g, 2).unwrap();
    let t = f.table();
    let e64: Vec<PermGroup> = f
        .elementary_classes()
        .unwrap()
        .iter()
        .filter(|c| c.order == 64)
        .map(|c| c.representative.clone())
        .collect();
    assert_eq!(e64.len(), 2);
    assert!(subgroup_transporter(&g, &e64[0], &e64[1]).is_none());
    let mut n: Vec<u64> = e64.iter().map(|e| normalizer(&g, e).order_u64()).collect();
    n.sort();
    // trio and sextet stabilizers
    assert_eq!(n, vec![64 * 168 * 6, 64 * 3 * 720]);
    // each is normal in S, and together they generate J(S)
    let j = t.thompson().unwrap();
    let both = t.closure(&[t.generating_set(&t.bits_of(&e64[0]).unwrap()), t.generating_set(&t.bits_of(&e64[1]).unwrap())].concat());
    assert_eq!(j, both);
}

#[test]
fn j1_is_tamely_realized() {
    let g = bundled("J1").unwrap().group;
    let f = FusionSystem::new(&g, 2).unwrap();
    let n = normalizer(&g, f.s());
    assert!(strictly_p_constrained(&n, 2).unwrap());
    let autf = f.aut_f().unwrap();
    let k = f.kappa_bar(&OutSource::Trivial, &autf).unwrap();
    assert_eq!(k.verdict, KappaVerdict::Isomorphism);
    let km = ker_mu_verdict(&f, &f.z_hat().unwrap()).unwrap();
    assert_eq!(km.verdict, KerMuVerdict::TrivialByEmpty);
    assert_eq!(tameness_verdict(2, Some(&k), Some(&km)).tamely_realized_by_g, Some(true));
    assert!(f.is_p_centric(&f.table().full()));
    assert_eq!(f.centralizer_g(&f.table().full()).order_u64(), 8);
}

#[test]
fn j2_local_bound_and_constraint() {
    let g = bundled("J2").unwrap().group;
    let f = FusionSystem::new(&g, 3).unwrap();
    let h = normalizer(&g, f.s());
    let r = out_bound_exact_sequence(&h, f.s()).unwrap();
    assert_eq!(r.normalizer_quotient_order, 2);
    assert_eq!(r.out_h_upper_bound, 2 * 3u64.pow(r.h1_dim as u32));
    assert!(f.is_constrained().unwrap());
    assert!(f.normal_in_f(&f.table().full()).unwrap());
}

#[test]
fn m12_outer_involutions_do_not_centralize_s() {
    let lg = bundled("M12").unwrap();
    let o = lg.out.unwrap();
    let f = FusionSystem::new(&o.base, 3).unwrap();
    let c = f.kappa_inj_criteria(&OutSource::Overgroup(o.overgroup.unwrap())).unwrap();
    assert_eq!(c.no_outer_involution_centralizes_s, Some(true));
    let none = f.kappa_inj_criteria(&OutSource::Trivial).unwrap();
    assert_eq!(none.no_outer_involution_centralizes_s, None);
    assert_eq!(none.larger_outer_automizer, None);
}

#[test]
fn trivial_out_gives_trivial_image() {
    let g = bundled("S5").unwrap().group;
    let f = FusionSystem::new(&g, 2).unwrap();
    let autf = f.aut_f().unwrap();
    let k = f.kappa_bar(&OutSource::Overgroup(g.clone()), &autf).unwrap();
    assert_eq!((k.image_order, k.kernel_order), (1, 1));
}

/// A5 wr C2 at p = 2: one member, but Z(S) is the diagonal E4 and the
/// diagonal A4 acts on it.
#[test]
fn wreath_toy_is_inconclusive() {
    let g = grp(
        10,
        &[
            &[&[1, 2, 3, 4, 5]],
            &[&[1, 2, 3]],
            &[&[1, 6], &[2, 7], &[3, 8], &[4, 9], &[5, 10]],
        ],
    );
    assert_eq!(g.order_u64(), 7200);
    let f = FusionSystem::new(&g, 2).unwrap();
    let t = f.table();
    assert_eq!(t.center().count(), 4);
    let z = f.z_hat().unwrap();
    assert_eq!(z.len(), 1);
    let om = t.omega1_of(&t.center());
    assert_eq!(f.hom_f(&om, &om).unwrap().len(), 3);
    assert_eq!(ker_mu_verdict(&f, &z).unwrap().verdict, KerMuVerdict::Inconclusive);
}

/// S4 at p = 2: Ẑ is the normal four-group alone and |Z(S)| = 2.
#[test]
fn s4_is_trivial_by_singleton() {
    let g = bundled("S4").unwrap().group;
    let f = FusionSystem::new(&g, 2).unwrap();
    let z = f.z_hat().unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(z[0].aut_g_order, 6);
    assert_eq!(ker_mu_verdict(&f, &z).unwrap().verdict, KerMuVerdict::TrivialBySingleton);
}

#[test]
fn labels_of_small_elementary_subgroups() {
    let lg = bundled("M11").unwrap();
    let f = FusionSystem::new(&lg.group, 2).unwrap();
    let t = f.table();
    let z: Vec<Permutation> = t.center().iter().map(|i| t.element(i).clone()).collect();
    assert_eq!(abelian_type(&lg.group, &z, &lg.labeling).unwrap(), "2a^1");

    let hs = bundled("HS").unwrap();
    let f = FusionSystem::new(&hs.group, 2).unwrap();
    let t = f.table();
    let z2 = t.second_center();
    let om: Vec<Permutation> = t.omega1_of(&z2).iter().map(|i| t.element(i).clone()).collect();
    let ty = abelian_type(&hs.group, &om, &hs.labeling).unwrap();
    assert!(ty.starts_with('2'), "{}", ty);

    // an element of order 4 carries no label
    let x = t.element(z2.iter().find(|&i| t.order(i) == 4).unwrap()).clone();
    assert!(matches!(abelian_type(&hs.group, &[x], &hs.labeling), Err(Error::Unlabeled(_))));
}

#[test]
fn second_center_of_d8_and_e8() {
    let d8 = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
    let t = PGroupTable::new(&d8).unwrap();
    assert_eq!(t.second_center(), t.full());
    let e8 = grp(6, &[&[&[1, 2]], &[&[3, 4]], &[&[5, 6]]]);
    let t = PGroupTable::new(&e8).unwrap();
    assert_eq!(t.second_center(), t.full());
}
