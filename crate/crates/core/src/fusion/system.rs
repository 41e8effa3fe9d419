use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::embedded::has_strongly_p_embedded;
use crate::error::{Error, Result};
use crate::permcore::{
    centralizer, coset_action, is_prime, normalizer, p_part, right_transversal,
    subgroup_transporter, sylow, PermGroup, Permutation, DEFAULT_INDEX_BOUND,
    QUOTIENT_INDEX_BOUND,
};
use crate::plattice::{
    class_orbit, subgroup_classes, Bits, EnumMode, LatticeOptions, PGroupTable, PSubgroupClass,
};

/// `c_x` restricted to `source`, landing in `target`.
#[derive(Clone, Debug)]
pub struct FusionMorphism {
    pub source: Bits,
    pub target: Bits,
    pub image: Bits,
    pub witness: Permutation,
}

/// Which S-classes of subgroups are G-conjugate, with transporters from the
/// first class of each G-class.
#[derive(Clone, Debug)]
struct GClasses {
    leader: Vec<usize>,
    /// `rep(leader)^x = rep(i)`.
    from_leader: Vec<Permutation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EssentialInfo {
    pub order: u64,
    pub index_in_s: u64,
    pub class_size: u64,
    pub out_g_order: u64,
    pub description: String,
    #[serde(skip)]
    pub bits: Option<Bits>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZHatMember {
    pub order: u64,
    pub rank: u32,
    pub class_size: u64,
    pub centralizer_in_s_order: u64,
    pub aut_g_order: u64,
    #[serde(skip)]
    pub bits: Option<Bits>,
}

/// Restriction `Out_G(P) → Aut_G(W)` for `W = Ω₁(Z(P))`, `P = C_S(W)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutToAut {
    pub out_g_p_order: u64,
    pub aut_g_w_order: u64,
    pub image_order: u64,
    pub kernel_order: u64,
}

/// The fusion system of `G` on a Sylow `p`-subgroup `S`.
pub struct FusionSystem {
    g: PermGroup,
    p: u64,
    s: PermGroup,
    table: PGroupTable,
    lattice: LatticeOptions,
    normalizers: Mutex<HashMap<Bits, PermGroup>>,
    centralizers: Mutex<HashMap<Bits, PermGroup>>,
    classes: OnceLock<std::result::Result<Arc<Vec<PSubgroupClass>>, Error>>,
    ea_classes: OnceLock<std::result::Result<Arc<Vec<PSubgroupClass>>, Error>>,
    gclasses: OnceLock<Arc<GClasses>>,
    element_classes: OnceLock<Vec<usize>>,
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FusionSystem(p = {}, |G| = {}, |S| = {})", self.p, self.g.order(), self.s.order())
    }
}

impl FusionSystem {
    pub fn new(g: &PermGroup, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if g.order_u64() % p != 0 {
            return Err(Error::PrimeDoesNotDivide { p });
        }
        let s = sylow(g, p)?;
        Self::with_sylow(g, p, &s)
    }

    /// Uses the given Sylow subgroup.
    pub fn with_sylow(g: &PermGroup, p: u64, s: &PermGroup) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !s.is_subgroup_of(g) {
            return Err(Error::NotContained);
        }
        if s.order_u64() != g.p_part(p) || s.p_part(p) != s.order_u64() {
            return Err(Error::Module("not a Sylow subgroup".into()));
        }
        let table = PGroupTable::new(s)?;
        Ok(FusionSystem {
            g: g.clone(),
            p,
            s: s.clone(),
            table,
            lattice: LatticeOptions::default(),
            normalizers: Mutex::new(HashMap::new()),
            centralizers: Mutex::new(HashMap::new()),
            classes: OnceLock::new(),
            ea_classes: OnceLock::new(),
            gclasses: OnceLock::new(),
            element_classes: OnceLock::new(),
        })
    }

    /// Bound on `|S|` for full subgroup enumeration.
    pub fn set_lattice_bound(&mut self, max_order: u64) {
        self.lattice.max_order = max_order;
    }

    pub fn g(&self) -> &PermGroup {
        &self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> &PermGroup {
        &self.s
    }

    pub fn table(&self) -> &PGroupTable {
        &self.table
    }

    pub fn subgroup(&self, b: &Bits) -> PermGroup {
        self.table.to_group(b)
    }

    pub fn bits(&self, h: &PermGroup) -> Result<Bits> {
        self.table.bits_of(h)
    }

    pub fn normalizer_g(&self, b: &Bits) -> PermGroup {
        if let Some(n) = self.normalizers.lock().unwrap().get(b) {
            return n.clone();
        }
        let n = normalizer(&self.g, &self.subgroup(b));
        self.normalizers.lock().unwrap().insert(b.clone(), n.clone());
        n
    }

    pub fn centralizer_g(&self, b: &Bits) -> PermGroup {
        if let Some(c) = self.centralizers.lock().unwrap().get(b) {
            return c.clone();
        }
        let c = centralizer(&self.g, &self.subgroup(b));
        self.centralizers.lock().unwrap().insert(b.clone(), c.clone());
        c
    }

    /// For each element of S, the index of the first element of S that is
    /// G-conjugate to it.
    pub fn element_classes(&self) -> &[usize] {
        self.element_classes.get_or_init(|| {
            let t = &self.table;
            let mut leaders: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            let mut out = vec![0; t.size()];
            for (x, slot) in out.iter_mut().enumerate() {
                let e = t.element(x);
                let bucket = leaders.entry(e.cycle_lengths()).or_default();
                let hit = bucket
                    .iter()
                    .copied()
                    .find(|&l| crate::permcore::element_transporter(&self.g, t.element(l), e).is_some());
                *slot = match hit {
                    Some(l) => l,
                    None => {
                        bucket.push(x);
                        x
                    }
                };
            }
            out
        })
    }

    /// All S-classes of subgroups.
    pub fn classes(&self) -> Result<Arc<Vec<PSubgroupClass>>> {
        self.classes
            .get_or_init(|| subgroup_classes(&self.table, &self.lattice).map(Arc::new))
            .clone()
    }

    /// S-classes of elementary abelian subgroups.
    pub fn elementary_classes(&self) -> Result<Arc<Vec<PSubgroupClass>>> {
        self.ea_classes
            .get_or_init(|| {
                let opts = LatticeOptions {
                    max_order: u64::MAX,
                    mode: EnumMode::ElementaryAbelian,
                };
                subgroup_classes(&self.table, &opts).map(Arc::new)
            })
            .clone()
    }

    /// The S-class of `b`: index into `classes()` and `c` with `b^c = rep`.
    pub fn class_of(&self, b: &Bits) -> Result<(usize, usize)> {
        let classes = self.classes()?;
        let orbit = class_orbit(&self.table, b);
        let (canon, c) = orbit.iter().min_by(|x, y| x.0.cmp(&y.0)).unwrap().clone();
        let idx = classes
            .iter()
            .position(|k| k.bits == canon)
            .expect("every subgroup lies in an enumerated class");
        Ok((idx, c))
    }

    fn element_types(&self, b: &Bits) -> Vec<(u32, Vec<usize>)> {
        let mut v: Vec<(u32, Vec<usize>)> = b
            .iter()
            .map(|x| (self.table.order(x), self.table.element(x).cycle_lengths()))
            .collect();
        v.sort();
        v
    }

    fn gclasses(&self) -> Result<Arc<GClasses>> {
        if let Some(g) = self.gclasses.get() {
            return Ok(g.clone());
        }
        let classes = self.classes()?;
        let n = classes.len();
        let mut leader: Vec<usize> = (0..n).collect();
        let mut from_leader = vec![Permutation::identity(self.g.degree()); n];
        let mut buckets: HashMap<(u64, Vec<(u32, Vec<usize>)>), Vec<usize>> = HashMap::new();
        for (i, c) in classes.iter().enumerate() {
            let key = (c.order, self.element_types(&c.bits));
            let leaders = buckets.entry(key).or_default();
            let mut joined = false;
            for &l in leaders.iter() {
                if let Some(x) = subgroup_transporter(&self.g, &classes[l].representative, &classes[i].representative) {
                    leader[i] = l;
                    from_leader[i] = x;
                    joined = true;
                    break;
                }
            }
            if !joined {
                leaders.push(i);
            }
        }
        let gc = Arc::new(GClasses { leader, from_leader });
        let _ = self.gclasses.set(gc.clone());
        Ok(gc)
    }

    /// Indices of the S-classes forming the G-class of class `i`.
    pub fn g_class_members(&self, i: usize) -> Result<Vec<usize>> {
        let gc = self.gclasses()?;
        let l = gc.leader[i];
        Ok((0..gc.leader.len()).filter(|&j| gc.leader[j] == l).collect())
    }

    /// Number of G-classes of subgroups of S.
    pub fn g_class_count(&self) -> Result<usize> {
        let gc = self.gclasses()?;
        Ok((0..gc.leader.len()).filter(|&i| gc.leader[i] == i).count())
    }

    /// `x ∈ G` with `rep(i)^x = rep(j)`, for classes in the same G-class.
    fn class_transporter(&self, i: usize, j: usize) -> Option<Permutation> {
        let gc = self.gclasses().ok()?;
        if gc.leader[i] != gc.leader[j] {
            return None;
        }
        Some(gc.from_leader[i].inverse().mul(&gc.from_leader[j]))
    }

    /// Representatives of `Aut_G(P)` as elements of `N_G(P)`.
    pub fn automizer_reps(&self, b: &Bits) -> Result<Vec<Permutation>> {
        let n = self.normalizer_g(b);
        let c = self.centralizer_g(b);
        right_transversal(&n, &c, DEFAULT_INDEX_BOUND)
    }

    pub fn aut_g_order(&self, b: &Bits) -> u64 {
        let n = self.normalizer_g(b);
        let c = self.centralizer_g(b);
        (n.order() / c.order()).to_u64().unwrap()
    }

    /// `Hom_F(P, Q)`: one morphism per distinct map, sorted by the images of a
    /// fixed generating set of `P`.
    pub fn hom_f(&self, p_bits: &Bits, q_bits: &Bits) -> Result<Vec<FusionMorphism>> {
        let t = &self.table;
        let classes = self.classes()?;
        let (idx, c) = self.class_of(p_bits)?;
        let autos = self.automizer_reps(p_bits)?;
        let cperm = t.element(c).clone();
        let mut out = Vec::new();
        for j in self.g_class_members(idx)? {
            let y = self.class_transporter(idx, j).expect("same G-class");
            for (m, s) in classes[j].members(t) {
                if !m.is_subset(q_bits) {
                    continue;
                }
                let x = cperm.mul(&y).mul(t.element(s));
                for a in &autos {
                    out.push(FusionMorphism {
                        source: p_bits.clone(),
                        target: q_bits.clone(),
                        image: m.clone(),
                        witness: a.mul(&x),
                    });
                }
            }
        }
        let gens = t.generating_set(p_bits);
        let key = |f: &FusionMorphism| -> Vec<usize> {
            gens.iter().map(|&g| self.apply(f, g)).collect()
        };
        let mut keyed: Vec<(Vec<usize>, FusionMorphism)> = out.into_iter().map(|f| (key(&f), f)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        Ok(keyed.into_iter().map(|(_, f)| f).collect())
    }

    /// `|Hom_F(P, Q)|` without materializing the maps.
    pub fn hom_count(&self, p_bits: &Bits, q_bits: &Bits) -> Result<u64> {
        let classes = self.classes()?;
        let (idx, _) = self.class_of(p_bits)?;
        let mut targets = 0u64;
        for j in self.g_class_members(idx)? {
            targets += classes[j].members(&self.table).iter().filter(|(m, _)| m.is_subset(q_bits)).count() as u64;
        }
        Ok(targets * self.aut_g_order(p_bits))
    }

    /// Image of element index `x` under a morphism.
    pub fn apply(&self, f: &FusionMorphism, x: usize) -> usize {
        self.table
            .index_of(&self.table.element(x).conjugate_by(&f.witness))
            .expect("morphism lands in S")
    }

    pub fn is_p_centric(&self, b: &Bits) -> bool {
        let z = self.table.center_of(b).count() as u64;
        z == p_part(self.centralizer_g(b).order_u64(), self.p)
    }

    pub fn is_fully_normalized(&self, b: &Bits) -> bool {
        let gens = self.table.generating_set(b);
        let ns = self.table.normalizer(b, &gens).count() as u64;
        ns == p_part(self.normalizer_g(b).order_u64(), self.p)
    }

    pub fn is_fully_centralized(&self, b: &Bits) -> bool {
        let gens = self.table.generating_set(b);
        let cs = self.table.centralizer(&gens).count() as u64;
        cs == p_part(self.centralizer_g(b).order_u64(), self.p)
    }

    /// `Out_G(P) = N_G(P)/P·C_G(P)` as a permutation group on cosets.
    pub fn out_g(&self, b: &Bits) -> Result<PermGroup> {
        let n = self.normalizer_g(b);
        let c = self.centralizer_g(b);
        let mut gens = self.subgroup(b).generators().to_vec();
        gens.extend(c.generators().iter().cloned());
        let pc = n.subgroup(gens);
        Ok(coset_action(&n, &pc, QUOTIENT_INDEX_BOUND)?.image)
    }

    /// `Aut_G(W)` acting on the elements of `W`, listed in index order.
    pub fn aut_g(&self, b: &Bits) -> Result<PermGroup> {
        let pts: Vec<usize> = b.iter().collect();
        let pos: HashMap<usize, usize> = pts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let n = self.normalizer_g(b);
        let mut gens = Vec::new();
        for g in n.generators() {
            let imgs: Vec<u32> = pts
                .iter()
                .map(|&x| {
                    let y = self.table.index_of(&self.table.element(x).conjugate_by(g)).expect("normalizes");
                    pos[&y] as u32
                })
                .collect();
            gens.push(Permutation::from_images(imgs)?);
        }
        PermGroup::from_generators(pts.len(), gens)
    }

    /// Fully normalized, p-centric subgroups whose `Out_G` has a strongly
    /// p-embedded subgroup, one per S-class.
    pub fn essential_classes(&self) -> Result<Vec<EssentialInfo>> {
        let classes = self.classes()?;
        let t = &self.table;
        let mut out = Vec::new();
        for c in classes.iter() {
            let b = &c.bits;
            if c.order == t.size() as u64 {
                continue;
            }
            // centric in G forces C_S(P) ≤ P
            let gens = t.generating_set(b);
            if !t.centralizer(&gens).is_subset(b) {
                continue;
            }
            if !self.is_fully_normalized(b) || !self.is_p_centric(b) {
                continue;
            }
            let out_g = self.out_g(b)?;
            if has_strongly_p_embedded(&out_g, self.p) {
                out.push(EssentialInfo {
                    order: c.order,
                    index_in_s: t.size() as u64 / c.order,
                    class_size: c.class_size,
                    out_g_order: out_g.order_u64(),
                    description: t.describe(b),
                    bits: Some(b.clone()),
                });
            }
        }
        Ok(out)
    }

    /// Whether `W = Ω₁(Z(C_S(W)))`.
    pub fn is_omega_center_of_centralizer(&self, w: &Bits) -> bool {
        let t = &self.table;
        let cs = t.centralizer(&t.generating_set(w));
        t.omega1_of(&t.center_of(&cs)) == *w
    }

    /// Elementary abelian `W` up to S-conjugacy: fully normalized,
    /// `W = Ω₁(Z(C_S(W)))` and `Aut_G(W)` with a strongly p-embedded subgroup.
    pub fn z_hat(&self) -> Result<Vec<ZHatMember>> {
        let classes = self.elementary_classes()?;
        let t = &self.table;
        let mut out = Vec::new();
        for c in classes.iter() {
            let w = &c.bits;
            if c.order == 1 || !self.is_omega_center_of_centralizer(w) {
                continue;
            }
            if !self.is_fully_normalized(w) {
                continue;
            }
            let aut = self.aut_g(w)?;
            if has_strongly_p_embedded(&aut, self.p) {
                let cs = t.centralizer(&t.generating_set(w));
                out.push(ZHatMember {
                    order: c.order,
                    rank: t.log_order(w),
                    class_size: c.class_size,
                    centralizer_in_s_order: cs.count() as u64,
                    aut_g_order: aut.order_u64(),
                    bits: Some(w.clone()),
                });
            }
        }
        Ok(out)
    }

    /// Elementary abelian classes meeting the hypotheses of the restriction
    /// map check: `W = Ω₁(Z(C_S(W)))` and `W` fully normalized.
    pub fn z_hat_candidates(&self) -> Result<Vec<Bits>> {
        let classes = self.elementary_classes()?;
        Ok(classes
            .iter()
            .filter(|c| c.order > 1)
            .map(|c| c.bits.clone())
            .filter(|w| self.is_omega_center_of_centralizer(w) && self.is_fully_normalized(w))
            .collect())
    }

    /// Orders in the restriction `Out_G(P) → Aut_G(W)` with `P = C_S(W)`.
    pub fn out_to_aut(&self, w: &Bits) -> Result<OutToAut> {
        let t = &self.table;
        let pb = t.centralizer(&t.generating_set(w));
        let np = self.normalizer_g(&pb);
        let cp = self.centralizer_g(&pb);
        let cw = self.centralizer_g(w);
        // N_{C_G(W)}(P): the elements of N_G(P) acting trivially on W
        let ncw = crate::permcore::intersection(&np, &cw);
        let zp = t.center_of(&pb).count() as u64;
        let pc_order = pb.count() as u64 * cp.order_u64() / zp;
        let out_p = np.order_u64() / pc_order;
        let image = np.order_u64() / ncw.order_u64();
        Ok(OutToAut {
            out_g_p_order: out_p,
            aut_g_w_order: self.aut_g_order(w),
            image_order: image,
            kernel_order: ncw.order_u64() / pc_order,
        })
    }

    /// Generators of the fusion system: for each S-class representative `R`,
    /// `Aut_G(R)` by the generators of `N_G(R)` and one transporter to every
    /// other S-class in its G-class. Each entry lists generator images.
    pub fn generating_maps(&self) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        let classes = self.classes()?;
        let t = &self.table;
        let mut maps = Vec::new();
        for (i, c) in classes.iter().enumerate() {
            if c.order == 1 {
                continue;
            }
            let gens = t.generating_set(&c.bits);
            let img = |x: &Permutation| -> Vec<usize> {
                gens.iter()
                    .map(|&g| t.index_of(&t.element(g).conjugate_by(x)).expect("lands in S"))
                    .collect()
            };
            for n in self.normalizer_g(&c.bits).generators() {
                maps.push((gens.clone(), img(n)));
            }
            for j in self.g_class_members(i)? {
                if j != i {
                    let x = self.class_transporter(i, j).unwrap();
                    maps.push((gens.clone(), img(&x)));
                }
            }
        }
        Ok(maps)
    }

    /// Whether the partial map `xs[i] ↦ ys[i]` on element indices is
    /// induced by conjugation in `G`.
    pub fn is_morphism(&self, xs: &[usize], ys: &[usize]) -> bool {
        let pairs: Vec<(Permutation, Permutation)> = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| (self.table.element(x).clone(), self.table.element(y).clone()))
            .collect();
        crate::permcore::simultaneous_transporter(&self.g, &pairs).is_some()
    }

    /// `F_S(G) = F_S(H)` for `S ≤ H ≤ G`, by comparing morphism counts into `S`.
    pub fn controls_fusion(&self, h: &PermGroup) -> Result<bool> {
        if !h.is_subgroup_of(&self.g) || !self.s.is_subgroup_of(h) {
            return Err(Error::NotContained);
        }
        let mut fh = FusionSystem::with_sylow(h, self.p, &self.s)?;
        fh.lattice = self.lattice;
        let full = self.table.full();
        for c in self.classes()?.iter() {
            if self.hom_count(&c.bits, &full)? != fh.hom_count(&c.bits, &full)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Q ⊴ F`: `Q ⊴ S`, strongly closed, and every generating morphism
    /// `c_x: P → P'` extends to some `c_g: PQ → P'Q` with `Q^g = Q`.
    pub fn normal_in_f(&self, q: &Bits) -> Result<bool> {
        let t = &self.table;
        let sgens: Vec<usize> = t.generators().iter().map(|&x| x as usize).collect();
        if t.normal_closure_in(q, &sgens) != *q {
            return Ok(false);
        }
        // strongly closed: no element of Q is G-conjugate into S \ Q
        let ec = self.element_classes();
        let inside: std::collections::HashSet<usize> = q.iter().map(|x| ec[x]).collect();
        if (0..t.size()).any(|y| !q.get(y) && inside.contains(&ec[y])) {
            return Ok(false);
        }
        let qgroup = self.subgroup(q);
        let classes = self.classes()?;
        for (i, c) in classes.iter().enumerate() {
            if c.order == 1 {
                continue;
            }
            let mut witnesses: Vec<Permutation> = self.normalizer_g(&c.bits).generators().to_vec();
            for j in self.g_class_members(i)? {
                if j != i {
                    witnesses.push(self.class_transporter(i, j).unwrap());
                }
            }
            let cg = self.centralizer_g(&c.bits);
            for x in witnesses {
                // need z ∈ C_G(P) with Q^(z x) = Q, i.e. Q^z = Q^(x⁻¹)
                let target = qgroup.conjugate(&x.inverse());
                if subgroup_transporter(&cg, &qgroup, &target).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The largest normal p-subgroup of `F`: the product of all normal
    /// subgroups of `S` that are normal in `F`.
    pub fn op_f(&self) -> Result<Bits> {
        let classes = self.classes()?;
        let mut acc = self.table.trivial();
        for c in classes.iter().rev() {
            if c.class_size != 1 || c.bits.is_subset(&acc) {
                continue;
            }
            if self.normal_in_f(&c.bits)? {
                acc = self.table.extend(&acc, &self.table.generating_set(&c.bits));
            }
        }
        Ok(acc)
    }

    pub fn is_constrained(&self) -> Result<bool> {
        let q = self.op_f()?;
        let t = &self.table;
        Ok(t.centralizer(&t.generating_set(&q)).is_subset(&q))
    }
}
