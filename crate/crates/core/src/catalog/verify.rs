//! Verification suites: the published small cases, an opt-in large case, and
//! randomized property checks against brute-force oracles.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::load::bundled;
use crate::error::{Error, Result};
use crate::fusion::{has_strongly_p_embedded, FusionSystem, KappaVerdict, OutSource};
use crate::linking::{
    ker_mu_verdict, out_bound_exact_sequence, strictly_p_constrained, tameness_verdict,
    KerMuVerdict,
};
use crate::modrep::{FpModule, Matrix};
use crate::oracle;
use crate::permcore::{
    normalizer, p_core, p_prime_core, PermGroup, Permutation, DEFAULT_INDEX_BOUND,
};
use crate::plattice::Extraspecial;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: expected {}; computed {} ({:.2}s, limit {}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.expected,
            self.computed,
            self.seconds,
            self.limit_seconds
        )
    }
}

pub const SUITES: &[&str] = &["paper-small", "stretch", "properties"];

/// Runs one check; an error counts as a failure with its message as output.
fn run(
    id: &str,
    name: &str,
    expected: &str,
    limit: Duration,
    body: impl FnOnce() -> Result<(String, bool)>,
) -> CheckResult {
    let t0 = Instant::now();
    let (computed, ok) = body().unwrap_or_else(|e| (format!("error: {}", e), false));
    let el = t0.elapsed();
    CheckResult {
        id: id.into(),
        name: name.into(),
        expected: expected.into(),
        computed,
        pass: ok && el <= limit,
        seconds: el.as_secs_f64(),
        limit_seconds: limit.as_secs_f64(),
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn run_suite(name: &str, seed: u64) -> Result<Vec<CheckResult>> {
    match name {
        "paper-small" => Ok(paper_small()),
        "stretch" => Ok(vec![m24()]),
        "properties" => Ok(properties(seed)),
        _ => Err(Error::Unknown {
            kind: "suite",
            name: name.into(),
        }),
    }
}

pub fn paper_small() -> Vec<CheckResult> {
    vec![m11(), j1(), m12(), j2(), hs(), example_2_4_15_4(), m22()]
}

pub fn m11() -> CheckResult {
    run(
        "1",
        "M11, p = 2",
        "S = SD16, 2 essential classes, |Out(F)| = 2, not tamely realized by G",
        secs(10),
        || {
            let lg = bundled("M11")?;
            let f = FusionSystem::new(&lg.group, 2)?;
            let t = f.table();
            let full = t.full();
            let max_cyclic = (0..t.size()).map(|x| t.order(x)).max().unwrap_or(1);
            let involutions = (0..t.size()).filter(|&x| t.order(x) == 2).count();
            // D16 has 9 involutions, Q16 one, SD16 five
            let sd16 = t.size() == 16 && !t.is_abelian(&full) && max_cyclic == 8 && involutions == 5;
            let ess = f.essential_classes()?.len();
            let autf = f.aut_f()?;
            let kappa = f.kappa_bar(&OutSource::Trivial, &autf)?;
            let km = ker_mu_verdict(&f, &f.z_hat()?)?;
            let tame = tameness_verdict(2, Some(&kappa), Some(&km));
            let out_g_trivial = lg.out.as_ref().is_some_and(|o| o.out_order == 1);
            Ok((
                format!(
                    "|S| = {}, max element order {}, {} involutions, {} essential, |Out(F)| = {}, κ̄ {:?}, tame by G {:?}",
                    t.size(),
                    max_cyclic,
                    involutions,
                    ess,
                    autf.out_f_order,
                    kappa.verdict,
                    tame.tamely_realized_by_g
                ),
                sd16 && ess == 2
                    && autf.out_f_order == 2
                    && out_g_trivial
                    && kappa.verdict == KappaVerdict::InjectiveNotSurjective
                    && tame.tamely_realized_by_g == Some(false),
            ))
        },
    )
}

pub fn j1() -> CheckResult {
    run(
        "2",
        "J1, p = 2",
        "S = E8, N_G(S) of order 168 controls fusion, |Out(F)| = 1, N_G(S) strictly 2-constrained",
        secs(60),
        || {
            let lg = bundled("J1")?;
            let f = FusionSystem::new(&lg.group, 2)?;
            let t = f.table();
            let e8 = t.size() == 8 && t.is_elementary_abelian(&t.full());
            let n = normalizer(&lg.group, f.s());
            let ctrl = f.controls_fusion(&n)?;
            let out_f = f.aut_f()?.out_f_order;
            let strict = strictly_p_constrained(&n, 2)?;
            Ok((
                format!(
                    "S elementary abelian of order 8: {}, |N_G(S)| = {}, controls {}, |Out(F)| = {}, strictly constrained {}",
                    e8,
                    n.order_u64(),
                    ctrl,
                    out_f,
                    strict
                ),
                e8 && n.order_u64() == 168 && ctrl && out_f == 1 && strict,
            ))
        },
    )
}

pub fn m12() -> CheckResult {
    run(
        "3",
        "M12, p = 3",
        "S = 3^(1+2) exponent 3, |Out_G(S)| = 4, h1 = 0 and bound 2, κ̄ isomorphism onto Out(F) of order 2",
        secs(30),
        || {
            let lg = bundled("M12")?;
            let f = FusionSystem::new(&lg.group, 3)?;
            let es = f.table().extraspecial();
            let es_ok = matches!(es, Extraspecial::Yes { p: 3, n: 1, exponent: 3, .. });
            let out_gs = f.out_g(&f.table().full())?.order_u64();
            let h = normalizer(&lg.group, f.s());
            let bound = out_bound_exact_sequence(&h, f.s())?;
            let o = lg.out.as_ref().ok_or_else(|| Error::OutData("missing".into()))?;
            let hat = o.overgroup.clone().ok_or_else(|| Error::OutData("missing overgroup".into()))?;
            let fe = FusionSystem::new(&o.base, 3)?;
            let autf = fe.aut_f()?;
            let k = fe.kappa_bar(&OutSource::Overgroup(hat), &autf)?;
            Ok((
                format!(
                    "{:?}, |Out_G(S)| = {}, h1 = {}, N/H* = {}, bound {}, |Out(F)| = {}, κ̄ {:?}",
                    es,
                    out_gs,
                    bound.h1_dim,
                    bound.normalizer_quotient_order,
                    bound.out_h_upper_bound,
                    autf.out_f_order,
                    k.verdict
                ),
                es_ok
                    && out_gs == 4
                    && bound.h1_dim == 0
                    && bound.out_h_upper_bound == 2
                    && autf.out_f_order == 2
                    && k.verdict == KappaVerdict::Isomorphism,
            ))
        },
    )
}

pub fn j2() -> CheckResult {
    run(
        "4",
        "J2, p = 3",
        "Out_G(S) cyclic of order 8, N_G(S) controls fusion, |Out(F)| = 2 with J2:2",
        secs(60),
        || {
            let lg = bundled("J2")?;
            let f = FusionSystem::new(&lg.group, 3)?;
            let out = f.out_g(&f.table().full())?;
            let cyclic8 = out.order_u64() == 8 && out.elements(8).iter().any(|x| x.order() == 8);
            let n = normalizer(&lg.group, f.s());
            let ctrl = f.controls_fusion(&n)?;
            let autf = f.aut_f()?;
            let hat = lg
                .out
                .as_ref()
                .and_then(|o| o.overgroup.clone())
                .ok_or_else(|| Error::OutData("missing overgroup".into()))?;
            let k = f.kappa_bar(&OutSource::Overgroup(hat), &autf)?;
            Ok((
                format!(
                    "|Out_G(S)| = {}, cyclic {}, controls {}, |Out(F)| = {}, κ̄ {:?}",
                    out.order_u64(),
                    cyclic8,
                    ctrl,
                    autf.out_f_order,
                    k.verdict
                ),
                cyclic8 && ctrl && autf.out_f_order == 2 && k.verdict == KappaVerdict::Isomorphism,
            ))
        },
    )
}

pub fn hs() -> CheckResult {
    run("5", "HS, p = 2", "Z2(S) = C4 x C2", secs(30), || {
        let lg = bundled("HS")?;
        let f = FusionSystem::new(&lg.group, 2)?;
        let t = f.table();
        let z2 = t.second_center();
        let inv = t.abelian_invariants(&z2);
        let ok = t.is_abelian(&z2) && z2.count() == 8 && t.exponent(&z2) == 4 && inv == vec![4, 2];
        Ok((
            format!("|Z2(S)| = {}, exponent {}, invariants {:?}", z2.count(), t.exponent(&z2), inv),
            ok,
        ))
    })
}

pub fn example_2_4_15_4() -> CheckResult {
    run(
        "6",
        "2^4:15:4, p = 2",
        "Ẑ = {Z2(S), E16 = O2(G)}, |Aut_G(Z2(S))| = 6, Ker(μ) inconclusive",
        secs(10),
        || {
            let lg = bundled("example_2_4_15_4")?;
            let f = FusionSystem::new(&lg.group, 2)?;
            let t = f.table();
            let z = f.z_hat()?;
            let e = t.bits_of(&p_core(&lg.group, 2)?)?;
            let z2 = t.second_center();
            let has_z2 = z.iter().any(|w| w.bits.as_ref() == Some(&z2) && w.aut_g_order == 6);
            let has_e = z.iter().any(|w| w.bits.as_ref() == Some(&e) && w.order == 16);
            let km = ker_mu_verdict(&f, &z)?;
            Ok((
                format!(
                    "{} classes (orders {:?}), Z2(S) present with |Aut_G| = 6: {}, O2(G) present: {}, Ker(μ) {:?}",
                    z.len(),
                    z.iter().map(|w| w.order).collect::<Vec<_>>(),
                    has_z2,
                    has_e,
                    km.verdict
                ),
                z.len() == 2 && has_z2 && has_e && km.verdict == KerMuVerdict::Inconclusive,
            ))
        },
    )
}

pub fn m22() -> CheckResult {
    run("7", "M22, p = 2", "every essential class has index 2 or 4", secs(300), || {
        let lg = bundled("M22")?;
        let f = FusionSystem::new(&lg.group, 2)?;
        let ess = f.essential_classes()?;
        let idx: Vec<u64> = ess.iter().map(|e| e.index_in_s).collect();
        Ok((
            format!("{} classes with indices {:?}", ess.len(), idx),
            !ess.is_empty() && idx.iter().all(|&i| i == 2 || i == 4),
        ))
    })
}

pub fn m24() -> CheckResult {
    run(
        "8",
        "M24, p = 2 (stretch)",
        "Ẑ = {W1, W4}, both rank 2 with [S:C_S(W)] = 2, J(S) = C_S(W1) ∩ C_S(W4)",
        secs(1800),
        || {
            let lg = bundled("M24")?;
            let f = FusionSystem::new(&lg.group, 2)?;
            let t = f.table();
            let z = f.z_hat()?;
            let s = t.size() as u64;
            let shape_ok = z.len() == 2 && z.iter().all(|w| w.rank == 2 && w.centralizer_in_s_order * 2 == s);
            let mut meet = t.full();
            for w in &z {
                let b = w.bits.as_ref().expect("bits");
                meet = meet.and(&t.centralizer(&t.generating_set(b)));
            }
            let j = t.thompson()?;
            Ok((
                format!(
                    "{} classes, ranks {:?}, |C_S(W)| {:?}, |J(S)| = {}, |∩ C_S(W)| = {}",
                    z.len(),
                    z.iter().map(|w| w.rank).collect::<Vec<_>>(),
                    z.iter().map(|w| w.centralizer_in_s_order).collect::<Vec<_>>(),
                    j.count(),
                    meet.count()
                ),
                shape_ok && j == meet,
            ))
        },
    )
}

/// Groups of order at most 5000 from the bundled catalog, with their primes.
fn small_corpus() -> Result<Vec<(String, PermGroup)>> {
    let mut out = Vec::new();
    for name in ["S4", "S5", "A5", "A6", "S6", "A7", "GL3(2)"] {
        let lg = bundled(name)?;
        out.push((name.to_string(), lg.group));
    }
    Ok(out)
}

fn primes_of(g: &PermGroup) -> Vec<u64> {
    let n = g.order_u64();
    (2..=n.min(97)).filter(|&p| crate::permcore::is_prime(p) && n % p == 0).collect()
}

pub fn properties(seed: u64) -> Vec<CheckResult> {
    vec![
        prop_hom_oracle(seed),
        prop_strongly_embedded(),
        prop_index_two(),
        prop_out_to_aut(),
        prop_h1_vanishing(seed),
        prop_absolute_irreducibility(seed),
    ]
}

/// (i) `hom_f` counts against a scan of `G`, and closure under composition.
pub fn prop_hom_oracle(seed: u64) -> CheckResult {
    run(
        "9.i",
        "hom_f oracle equivalence and category closure",
        "every count equals the brute-force count; sampled composites are morphisms",
        secs(600),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for (name, g) in small_corpus()? {
                for p in primes_of(&g) {
                    let f = FusionSystem::new(&g, p)?;
                    let t = f.table();
                    let full = t.full();
                    let classes = f.classes()?;
                    for c in classes.iter() {
                        let maps = f.hom_f(&c.bits, &full)?;
                        let brute = oracle::hom_count(&g, &c.representative, f.s());
                        checked += 1;
                        if maps.len() != brute {
                            bad.push(format!("{} p={} order {}: {} vs {}", name, p, c.order, maps.len(), brute));
                        }
                        // identity map
                        let own = f.hom_f(&c.bits, &c.bits)?;
                        let gens = t.generating_set(&c.bits);
                        if !own.iter().any(|m| gens.iter().all(|&x| f.apply(m, x) == x)) {
                            bad.push(format!("{} p={}: identity missing", name, p));
                        }
                        // φ: P → S then ψ on the image, both sampled
                        if let Some(phi) = maps.choose(&mut rng) {
                            let next = f.hom_f(&phi.image, &full)?;
                            if let Some(psi) = next.choose(&mut rng) {
                                let w = phi.witness.mul(&psi.witness);
                                let xs = gens.clone();
                                let ys: Vec<usize> = xs
                                    .iter()
                                    .map(|&x| t.index_of(&t.element(x).conjugate_by(&w)).expect("in S"))
                                    .collect();
                                let composed_ok = maps
                                    .iter()
                                    .any(|m| xs.iter().zip(&ys).all(|(&x, &y)| f.apply(m, x) == y));
                                if !composed_ok {
                                    bad.push(format!("{} p={}: composite missing", name, p));
                                }
                            }
                        }
                    }
                }
            }
            Ok((
                format!("{} classes checked, {} failures {:?}", checked, bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
                bad.is_empty() && checked > 0,
            ))
        },
    )
}

/// (ii) Graph test against the definitional oracle on every automizer
/// quotient met while classifying the corpus, plus small symmetric and
/// alternating groups.
pub fn prop_strongly_embedded() -> CheckResult {
    run(
        "9.ii",
        "strongly p-embedded graph test matches the definition",
        "agreement on every quotient of order at most 2000",
        secs(600),
        || {
            let mut quotients: Vec<(String, PermGroup, u64)> = Vec::new();
            for n in 3..=6 {
                for g in [PermGroup::symmetric(n), PermGroup::alternating(n)] {
                    for p in primes_of(&g) {
                        quotients.push((format!("{}{} p={}", if g.order_u64() * 2 == (1..=n as u64).product::<u64>() { "A" } else { "S" }, n, p), g.clone(), p));
                    }
                }
            }
            for (name, g) in small_corpus()?.into_iter().chain(["M11", "M12", "J2"].iter().map(|n| (n.to_string(), bundled(n).unwrap().group))) {
                for p in primes_of(&g) {
                    let f = FusionSystem::new(&g, p)?;
                    for c in f.classes()?.iter() {
                        if c.order == 1 {
                            continue;
                        }
                        let out = f.out_g(&c.bits)?;
                        if out.order_u64() <= 2000 {
                            quotients.push((format!("Out_G(P) in {} p={}", name, p), out, p));
                        }
                        if c.is_elementary_abelian {
                            let a = f.aut_g(&c.bits)?;
                            if a.order_u64() <= 2000 {
                                quotients.push((format!("Aut_G(W) in {} p={}", name, p), a, p));
                            }
                        }
                    }
                }
            }
            let mut bad = Vec::new();
            let mut positives = 0;
            for (name, h, p) in &quotients {
                let a = has_strongly_p_embedded(h, *p);
                let b = oracle::strongly_p_embedded(h, *p);
                positives += a as usize;
                if a != b {
                    bad.push(name.clone());
                }
            }
            Ok((
                format!("{} quotients ({} positive), {} disagreements {:?}", quotients.len(), positives, bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
                bad.is_empty(),
            ))
        },
    )
}

/// (iii) Elementary abelian `W` with `[S:C_S(W)] = 2` lies in `Z2(S)` with
/// rank at most twice that of `Z(S)`.
pub fn prop_index_two() -> CheckResult {
    run(
        "9.iii",
        "[S:C_S(W)] = 2 forces W ≤ Z2(S), rk W ≤ 2 rk Z(S)",
        "no counterexample over corpus Sylow 2-subgroups of order at most 2^9",
        secs(600),
        || {
            let mut checked = 0;
            let mut bad = Vec::new();
            for name in super::load::bundled_names() {
                let g = bundled(&name)?.group;
                let sp = g.p_part(2);
                if sp == 1 || sp > 512 {
                    continue;
                }
                let f = FusionSystem::new(&g, 2)?;
                let t = f.table();
                let z2 = t.second_center();
                let zrank = t.log_order(&t.omega1_of(&t.center()));
                for c in f.elementary_classes()?.iter() {
                    let cs = t.centralizer(&t.generating_set(&c.bits));
                    if cs.count() * 2 != t.size() {
                        continue;
                    }
                    checked += 1;
                    let rank = t.log_order(&c.bits);
                    if !c.bits.is_subset(&z2) || rank > 2 * zrank {
                        bad.push(format!("{} rank {}", name, rank));
                    }
                }
            }
            Ok((format!("{} subgroups checked, {} violations {:?}", checked, bad.len(), bad), bad.is_empty() && checked > 0))
        },
    )
}

/// (iv) Restriction `Out_G(C_S(W)) → Aut_G(W)` is onto with odd kernel for
/// every candidate `W` met in the Ẑ computation.
pub fn prop_out_to_aut() -> CheckResult {
    run(
        "9.iv",
        "Out_G(P) → Aut_G(W) surjective with kernel of odd order",
        "holds for every (W, C_S(W)) with C_S(W) Sylow in C_G(W)",
        secs(600),
        || {
            let mut checked = 0;
            let mut bad = Vec::new();
            for name in super::load::bundled_names() {
                let g = bundled(&name)?.group;
                let sp = g.p_part(2);
                if sp == 1 || sp > 512 {
                    continue;
                }
                let f = FusionSystem::new(&g, 2)?;
                let t = f.table();
                for w in f.z_hat_candidates()? {
                    let p = t.centralizer(&t.generating_set(&w));
                    let cw = f.centralizer_g(&w);
                    if p.count() as u64 != cw.p_part(2) {
                        continue;
                    }
                    checked += 1;
                    let r = f.out_to_aut(&w)?;
                    if r.image_order != r.aut_g_w_order || r.kernel_order % 2 == 0 {
                        bad.push(format!("{}: {:?}", name, r));
                    }
                }
            }
            Ok((format!("{} pairs checked, {} violations {:?}", checked, bad.len(), bad.iter().take(2).collect::<Vec<_>>()), bad.is_empty() && checked > 0))
        },
    )
}

fn random_group(rng: &mut ChaCha8Rng) -> PermGroup {
    if rng.gen_bool(0.5) {
        return random_holomorph_subgroup(rng);
    }
    loop {
        let n = rng.gen_range(3..=6);
        let gens: Vec<Permutation> = (0..2)
            .map(|_| {
                let mut v: Vec<u32> = (0..n as u32).collect();
                v.shuffle(rng);
                Permutation::from_images(v).unwrap()
            })
            .collect();
        let g = PermGroup::from_generators(n, gens).unwrap();
        if g.order_u64() > 1 {
            return g;
        }
    }
}

/// `⟨x ↦ x + 1, x ↦ ax⟩` on `Z/n`, so that `O_p′(G)` is often transitive.
fn random_holomorph_subgroup(rng: &mut ChaCha8Rng) -> PermGroup {
    let n = rng.gen_range(3..=7u32);
    let units: Vec<u32> = (1..n).filter(|&a| (1..=n).all(|d| !(a % d == 0 && n % d == 0) || d == 1)).collect();
    let a = *units.choose(rng).unwrap();
    let shift = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap();
    let scale = Permutation::from_images((0..n).map(|x| x * a % n).collect()).unwrap();
    PermGroup::from_generators(n as usize, vec![shift, scale]).unwrap()
}

fn permutation_matrix(x: &Permutation) -> Matrix {
    let n = x.degree();
    let mut m = Matrix::zero(n, n);
    for i in 0..n {
        m.set(i, x.apply(i as u32) as usize, 1);
    }
    m
}

/// The permutation module, or its augmentation submodule (coordinate sum 0).
fn random_module(rng: &mut ChaCha8Rng, g: &PermGroup, p: u32) -> Result<FpModule> {
    let perm: Vec<Matrix> = g.generators().iter().map(permutation_matrix).collect();
    let n = g.degree();
    if rng.gen_bool(0.5) {
        return FpModule::new(p, n, perm, Some(g.clone()));
    }
    let basis: Vec<Vec<u8>> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v[i + 1] = (p - 1) as u8;
            v
        })
        .collect();
    let actors = crate::modrep::induced_action(&perm, &basis, p);
    FpModule::new(p, n - 1, actors, Some(g.clone()))
}

/// (v) `C_V(O_p′(G)) = 0` implies `H¹(G; V) = 0`.
pub fn prop_h1_vanishing(seed: u64) -> CheckResult {
    run(
        "9.v",
        "h1 = 0 when O_p'(G) has no fixed points",
        "implication holds on every sampled module",
        secs(600),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51);
            let mut applicable = 0;
            let mut bad = Vec::new();
            for _ in 0..200 {
                let g = random_group(&mut rng);
                let primes: Vec<u64> = primes_of(&g).into_iter().filter(|&p| p <= 7).collect();
                let Some(&p) = primes.choose(&mut rng) else { continue };
                let m = random_module(&mut rng, &g, p as u32)?;
                let o = p_prime_core(&g, p, DEFAULT_INDEX_BOUND)?;
                let fixed = m.fixed_space_of_subgroup(&o)?;
                if !fixed.is_empty() {
                    continue;
                }
                applicable += 1;
                let h1 = m.h1()?;
                if h1 != 0 {
                    bad.push(format!("|G| = {} p = {} dim {}: h1 = {}", g.order_u64(), p, m.dim(), h1));
                }
            }
            Ok((format!("{} applicable modules, {} violations {:?}", applicable, bad.len(), bad), bad.is_empty() && applicable > 0))
        },
    )
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, p: u32) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
        let m = Matrix::from_rows(&rows, p);
        if m.inverse(p).is_some() {
            return m;
        }
    }
}

/// (vi) Absolute irreducibility against exhaustive submodule and
/// endomorphism enumeration, dimension at most 4 over F2 and F3.
pub fn prop_absolute_irreducibility(seed: u64) -> CheckResult {
    run(
        "9.vi",
        "absolute irreducibility matches exhaustive enumeration",
        "agreement on every sampled module of dimension ≤ 4 over F2, F3",
        secs(600),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa1);
            let mut counts = [0usize; 2];
            let mut bad = Vec::new();
            for k in 0..150 {
                let p = if k % 2 == 0 { 2 } else { 3 };
                let dim = rng.gen_range(1..=4);
                let gens = rng.gen_range(1..=2);
                let mut actors: Vec<Matrix> = (0..gens).map(|_| random_invertible(&mut rng, dim, p)).collect();
                if dim > 1 && rng.gen_bool(0.3) {
                    // block triangular: the first coordinate line is invariant under v ↦ vA
                    for a in actors.iter_mut() {
                        for j in 1..dim {
                            a.set(0, j, 0);
                        }
                        if a.inverse(p).is_none() {
                            a.set(0, 0, 1);
                            for i in 1..dim {
                                a.set(i, i, 1);
                            }
                        }
                    }
                    if actors.iter().any(|a| a.inverse(p).is_none()) {
                        continue;
                    }
                }
                let m = FpModule::new(p, dim, actors.clone(), None)?;
                let fast = m.is_absolutely_irreducible()?;
                let slow = oracle::is_absolutely_irreducible(&actors, dim, p);
                counts[fast as usize] += 1;
                if fast != slow {
                    bad.push(format!("p = {} dim {}", p, dim));
                }
            }
            Ok((
                format!("{} absolutely irreducible, {} not, {} disagreements {:?}", counts[1], counts[0], bad.len(), bad),
                bad.is_empty() && counts[0] > 0 && counts[1] > 0,
            ))
        },
    )
}
