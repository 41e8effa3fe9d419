use super::*;
use crate::catalog::bundled;
use crate::modrep::Matrix;
use crate::permcore::{center, normalizer, PermGroup, Permutation};

fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
    PermGroup::from_generators(n, gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect()).unwrap()
}

#[test]
fn linking_local_small() {
    let s4 = PermGroup::symmetric(4);
    let f = FusionSystem::new(&s4, 2).unwrap();
    let full = f.table().full();
    let d = linking_local(&f, &full).unwrap();
    assert_eq!(d.c_prime_order, 1);
    assert_eq!(d.aut_l_order * d.c_prime_order, d.normalizer_order);
    assert_eq!(d.center_order * d.c_prime_order, d.centralizer_order);

    let c6 = grp(5, &[&[&[1, 2], &[3, 4, 5]]]);
    let f = FusionSystem::new(&c6, 2).unwrap();
    let d = linking_local(&f, &f.table().full()).unwrap();
    assert_eq!(d.c_prime_order, 3);
    assert!(!strictly_p_constrained(&c6, 2).unwrap());
    assert!(strictly_p_constrained(&s4, 2).unwrap());
}

#[test]
fn mor_l_matches_transporter_count() {
    let s4 = PermGroup::symmetric(4);
    let f = FusionSystem::new(&s4, 2).unwrap();
    let full = f.table().full();
    let elems = s4.elements(100);
    for c in f.classes().unwrap().iter().filter(|c| f.is_p_centric(&c.bits)) {
        let p = &c.representative;
        let transporter = elems
            .iter()
            .filter(|x| p.generators().iter().all(|a| f.s().contains(&a.conjugate_by(x))))
            .count() as u64;
        let local = linking_local(&f, &c.bits).unwrap();
        assert_eq!(mor_l_count(&f, &c.bits, &full).unwrap(), transporter / local.c_prime_order);
    }
}

#[test]
fn m11_linking_at_s() {
    let g = bundled("M11").unwrap().group;
    let f = FusionSystem::new(&g, 2).unwrap();
    let d = linking_local(&f, &f.table().full()).unwrap();
    assert_eq!(d.c_prime_order, 1);
    assert_eq!(d.centralizer_order, 2);
}

#[test]
fn general_linear_orders() {
    assert_eq!(general_linear(2, 2).unwrap().order_u64(), 6);
    assert_eq!(general_linear(2, 3).unwrap().order_u64(), 48);
    assert_eq!(general_linear(3, 2).unwrap().order_u64(), 168);
}

#[test]
fn normalizer_quotients() {
    let full = vec![Matrix::from_rows(&[vec![1, 1], vec![0, 1]], 2), Matrix::from_rows(&[vec![0, 1], vec![1, 0]], 2)];
    assert_eq!(normalizer_in_out(2, 2, &full).unwrap(), 1);
    // C8 = <[[0,1],[1,1]]> over F3 is a Singer cycle; its normalizer is SD16
    let singer = vec![Matrix::from_rows(&[vec![0, 1], vec![1, 1]], 3)];
    assert_eq!(normalizer_in_out(2, 3, &singer).unwrap(), 2);
    // diagonal 2^2 has the monomial D8 as normalizer
    let diag = vec![Matrix::from_rows(&[vec![2, 0], vec![0, 1]], 3), Matrix::from_rows(&[vec![1, 0], vec![0, 2]], 3)];
    assert_eq!(normalizer_in_out(2, 3, &diag).unwrap(), 2);
}

#[test]
fn s4_out_bound() {
    let s4 = PermGroup::symmetric(4);
    let v4 = grp(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    let r = out_bound_exact_sequence(&s4, &v4).unwrap();
    assert_eq!((r.h1_dim, r.normalizer_quotient_order, r.out_h_upper_bound), (0, 1, 1));
    let out = crate::oracle::automorphism_count(&s4) / (24 / center(&s4).order_u64());
    assert_eq!(r.out_h_upper_bound % out, 0);
}

#[test]
fn m12_local_out_bound() {
    let g = bundled("M12").unwrap().group;
    let f = FusionSystem::new(&g, 3).unwrap();
    let h = normalizer(&g, f.s());
    assert_eq!(h.order_u64(), 108);
    let r = out_bound_exact_sequence(&h, f.s()).unwrap();
    assert_eq!((r.h1_dim, r.normalizer_quotient_order, r.out_h_upper_bound), (0, 2, 2));
    let inn = h.order_u64() / center(&h).order_u64();
    let out = crate::oracle::automorphism_count(&h) / inn;
    assert_eq!(r.out_h_upper_bound % out, 0);
}

#[test]
fn verdicts() {
    let g = bundled("M11").unwrap().group;
    let f = FusionSystem::new(&g, 2).unwrap();
    let z = f.z_hat().unwrap();
    assert_eq!(z.len(), 1);
    let km = ker_mu_verdict(&f, &z).unwrap();
    assert_eq!(km.verdict, KerMuVerdict::TrivialBySingleton);
    let a = f.aut_f().unwrap();
    let k = f.kappa_bar(&crate::fusion::OutSource::Trivial, &a).unwrap();
    let t = tameness_verdict(2, Some(&k), Some(&km));
    assert_eq!(t.tamely_realized_by_g, Some(false));

    let d8 = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
    let f = FusionSystem::new(&d8, 2).unwrap();
    let km = ker_mu_verdict(&f, &f.z_hat().unwrap()).unwrap();
    assert_eq!(km.verdict, KerMuVerdict::TrivialByEmpty);
}
