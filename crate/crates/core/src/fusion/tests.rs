use super::*;
use crate::catalog::parse_str;
use crate::permcore::{normalizer, PermGroup, Permutation};

fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
    PermGroup::from_generators(n, gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect()).unwrap()
}

fn from_data(text: &str) -> PermGroup {
    let e = &parse_str(text).unwrap()[0];
    let gens = e
        .generators
        .iter()
        .map(|s| crate::catalog::parse_cycles(e.degree, s).unwrap())
        .collect();
    PermGroup::from_generators(e.degree, gens).unwrap()
}

fn m11() -> PermGroup {
    from_data(include_str!("../../data/m11.grp"))
}

#[test]
fn strongly_embedded_small_cases() {
    let s3 = PermGroup::symmetric(3);
    let s4 = PermGroup::symmetric(4);
    let a5 = PermGroup::alternating(5);
    assert!(has_strongly_p_embedded(&s3, 2));
    assert!(!has_strongly_p_embedded(&s4, 2));
    assert!(has_strongly_p_embedded(&a5, 2));
    assert!(has_strongly_p_embedded(&a5, 5));
    assert!(!has_strongly_p_embedded(&PermGroup::symmetric(5), 2));
    for (h, p) in [(&s3, 2), (&s4, 2), (&a5, 2), (&a5, 3), (&s4, 3)] {
        assert_eq!(has_strongly_p_embedded(h, p), crate::oracle::strongly_p_embedded(h, p));
    }
}

#[test]
fn s4_hom_counts_match_scan() {
    let g = PermGroup::symmetric(4);
    let f = FusionSystem::new(&g, 2).unwrap();
    let full = f.table().full();
    let s = f.s().clone();
    for c in f.classes().unwrap().iter() {
        let n = f.hom_f(&c.bits, &full).unwrap().len();
        assert_eq!(n as u64, f.hom_count(&c.bits, &full).unwrap());
        assert_eq!(n, crate::oracle::hom_count(&g, &c.representative, &s));
    }
    // P = <(1 2)(3 4)> is G-conjugate into S three ways
    let x = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
    let p = g.subgroup(vec![x]);
    if s.contains(&p.generators()[0]) {
        let b = f.bits(&p).unwrap();
        assert_eq!(f.hom_f(&b, &full).unwrap().len(), 3);
    }
}

#[test]
fn s4_local_properties() {
    let g = PermGroup::symmetric(4);
    let f = FusionSystem::new(&g, 2).unwrap();
    let full = f.table().full();
    assert!(f.is_p_centric(&full));
    assert!(f.is_fully_normalized(&full));
    let t = grp(4, &[&[&[1, 2]]]);
    if t.is_subgroup_of(f.s()) {
        let b = f.bits(&t).unwrap();
        assert!(!f.is_p_centric(&b));
    }
    let v4 = grp(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    let vb = f.bits(&v4).unwrap();
    assert_eq!(f.out_g(&vb).unwrap().order_u64(), 6);
    assert!(f.normal_in_f(&vb).unwrap());
    assert!(!f.normal_in_f(&full).unwrap());
    assert_eq!(f.op_f().unwrap(), vb);
    assert!(f.is_constrained().unwrap());
    assert!(!f.controls_fusion(&f.s().clone()).unwrap());
    assert!(f.controls_fusion(&g).unwrap());
    let ess = f.essential_classes().unwrap();
    assert_eq!(ess.len(), 1);
    assert_eq!(ess[0].order, 4);
}

#[test]
fn p_group_is_its_own_fusion_system() {
    let d8 = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
    let f = FusionSystem::new(&d8, 2).unwrap();
    assert!(f.essential_classes().unwrap().is_empty());
    assert!(f.z_hat().unwrap().is_empty());
    let a = f.aut_f().unwrap();
    // Out(D8) has order 2
    assert_eq!(a.out_f_order, 2);
    assert_eq!(a.aut_f_order, a.aut_s_order);
    assert!(f.normal_in_f(&f.table().full()).unwrap());
}

#[test]
fn s4_aut_f() {
    let f = FusionSystem::new(&PermGroup::symmetric(4), 2).unwrap();
    let a = f.aut_f().unwrap();
    assert_eq!(a.aut_g_s_order, 4);
    assert_eq!(a.out_f_order, 1);
    let k = f.kappa_bar(&OutSource::Trivial, &a).unwrap();
    assert_eq!(k.verdict, KappaVerdict::Isomorphism);
}

#[test]
fn a6_in_s6_outer_automizer() {
    let a6 = PermGroup::alternating(6);
    let s6 = PermGroup::symmetric(6);
    let f = FusionSystem::new(&a6, 2).unwrap();
    let crit = f.kappa_inj_criteria(&OutSource::Overgroup(s6.clone())).unwrap();
    // S6 adds only a transposition centralizing S: no normal subgroup gains automizer
    assert_eq!(crit.larger_outer_automizer, Some(false));
    assert_eq!(crit.no_outer_involution_centralizes_s, None);
    assert_eq!(out_order(&s6, f.s()).unwrap(), out_order(&a6, f.s()).unwrap());

    // inside M10 the Sylow 2-subgroup of A6 gains an outer automorphism
    let m10 = m11().stabilizer(10);
    assert_eq!(m10.order_u64(), 720);
    let a6 = crate::permcore::derived_subgroup(&m10);
    assert_eq!(a6.order_u64(), 360);
    let f = FusionSystem::new(&a6, 2).unwrap();
    let crit = f.kappa_inj_criteria(&OutSource::Overgroup(m10.clone())).unwrap();
    assert_eq!(crit.larger_outer_automizer, Some(true));
    assert!(out_order(&m10, f.s()).unwrap() > out_order(&a6, f.s()).unwrap());
}

#[test]
fn m11_fusion() {
    let g = m11();
    let f = FusionSystem::new(&g, 2).unwrap();
    assert_eq!(f.s().order_u64(), 16);
    let ess = f.essential_classes().unwrap();
    assert_eq!(ess.len(), 2);
    let mut kinds: Vec<String> = ess.iter().map(|e| e.description.clone()).collect();
    kinds.sort();
    assert_eq!(kinds, vec!["E4".to_string(), "nonabelian of order 8, exponent 4".to_string()]);
    let a = f.aut_f().unwrap();
    assert_eq!(a.out_f_order, 2);
    let k = f.kappa_bar(&OutSource::Trivial, &a).unwrap();
    assert_eq!(k.verdict, KappaVerdict::InjectiveNotSurjective);
    // one class of involutions: every involution of S is a target of Z(S)
    let z = f.table().center();
    let invols = (0..f.table().size()).filter(|&x| f.table().order(x) == 2).count();
    assert_eq!(f.hom_f(&z, &f.table().full()).unwrap().len(), invols);
    for w in f.z_hat().unwrap() {
        let b = w.bits.unwrap();
        let r = f.out_to_aut(&b).unwrap();
        assert_eq!(r.image_order, r.aut_g_w_order);
        assert_eq!(r.kernel_order % 2, 1);
    }
    let n = normalizer(&g, f.s());
    assert!(!f.controls_fusion(&n).unwrap());
}
