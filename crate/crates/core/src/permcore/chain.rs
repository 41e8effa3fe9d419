use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::perm::Permutation;

const NONE: u32 = u32::MAX;

/// Anything that carries a permutation and multiplies along with it.
pub trait ChainElement: Clone {
    fn perm(&self) -> &Permutation;
    fn compose(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl ChainElement for Permutation {
    #[inline]
    fn perm(&self) -> &Permutation {
        self
    }
    #[inline]
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }
    #[inline]
    fn inv(&self) -> Self {
        self.inverse()
    }
}

#[derive(Clone)]
pub struct Level<E> {
    pub point: u32,
    pub gens: Vec<E>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    reps: Vec<E>,
    inv_reps: Vec<E>,
}

impl<E: ChainElement> Level<E> {
    fn new(point: u32, degree: usize, id: &E) -> Self {
        let mut pos = vec![NONE; degree];
        pos[point as usize] = 0;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            pos,
            reps: vec![id.clone()],
            inv_reps: vec![id.clone()],
        }
    }

    fn rebuild(&mut self, id: &E) {
        for &x in &self.orbit {
            self.pos[x as usize] = NONE;
        }
        self.orbit.clear();
        self.reps.clear();
        self.inv_reps.clear();
        self.pos[self.point as usize] = 0;
        self.orbit.push(self.point);
        self.reps.push(id.clone());
        let mut k = 0;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for s in &self.gens {
                let y = s.perm().apply(x);
                if self.pos[y as usize] == NONE {
                    self.pos[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    let r = self.reps[k].compose(s);
                    self.reps.push(r);
                }
            }
            k += 1;
        }
        self.inv_reps = self.reps.iter().map(|r| r.inv()).collect();
    }

    #[inline]
    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.pos[x as usize] != NONE
    }

    /// Transversal element mapping the base point to `x`.
    #[inline]
    pub fn rep(&self, x: u32) -> Option<&E> {
        match self.pos[x as usize] {
            NONE => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    #[inline]
    pub fn inv_rep(&self, x: u32) -> Option<&E> {
        match self.pos[x as usize] {
            NONE => None,
            i => Some(&self.inv_reps[i as usize]),
        }
    }

    #[inline]
    pub fn orbit_index(&self, x: u32) -> Option<usize> {
        match self.pos[x as usize] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    pub fn rep_at(&self, i: usize) -> &E {
        &self.reps[i]
    }
}

/// Stabilizer chain for a base; level `i` holds the stabilizer of the first `i` base points.
#[derive(Clone)]
pub struct StabChain<E> {
    degree: usize,
    identity: E,
    levels: Vec<Level<E>>,
}

impl<E: ChainElement> StabChain<E> {
    pub fn empty(degree: usize, identity: E) -> Self {
        StabChain {
            degree,
            identity,
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level<E>] {
        &self.levels
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    /// Sift from `from`; returns the residue and the level where it stopped
    /// (`levels.len()` if it passed every level).
    pub fn sift(&self, g: &E, from: usize) -> (E, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let lvl = &self.levels[i];
            let img = h.perm().apply(lvl.point);
            match lvl.inv_rep(img) {
                None => return (h, i),
                Some(u) => h = h.compose(u),
            }
        }
        (h, self.levels.len())
    }

    /// Adds a residue that fixes the base points before `from` to levels `from..=to`.
    fn add_residue(&mut self, res: E, from: usize, to: usize, hint: &[u32]) {
        let mut to = to;
        if to == self.levels.len() {
            let base = self.base();
            let p = res.perm();
            let pt = hint
                .iter()
                .copied()
                .find(|&x| p.apply(x) != x && !base.contains(&x))
                .or_else(|| p.smallest_moved_point())
                .expect("residue must be nontrivial");
            self.levels.push(Level::new(pt, self.degree, &self.identity));
            to = self.levels.len() - 1;
        }
        for l in from..=to {
            self.levels[l].gens.push(res.clone());
            let id = self.identity.clone();
            self.levels[l].rebuild(&id);
        }
    }

    /// Inserts `g` if it does not sift; returns whether the chain changed.
    pub fn insert(&mut self, g: &E, hint: &[u32]) -> bool {
        let (res, lvl) = self.sift(g, 0);
        if res.perm().is_identity() {
            return false;
        }
        self.add_residue(res, 0, lvl, hint);
        true
    }

    /// Deterministic completion: every Schreier generator is sifted; residues
    /// that reduce to the identity permutation are passed to `on_relator`.
    pub fn complete(&mut self, hint: &[u32], on_relator: &mut dyn FnMut(&E)) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restart = None;
            'scan: for k in 0..self.levels[li].orbit.len() {
                let gamma = self.levels[li].orbit[k];
                for s_idx in 0..self.levels[li].gens.len() {
                    let lvl = &self.levels[li];
                    let s = &lvl.gens[s_idx];
                    let img = s.perm().apply(gamma);
                    let h = lvl.reps[k]
                        .compose(s)
                        .compose(lvl.inv_rep(img).expect("orbit closed"));
                    if h.perm().is_identity() {
                        on_relator(&h);
                        continue;
                    }
                    let (res, stop) = self.sift(&h, li + 1);
                    if res.perm().is_identity() {
                        on_relator(&res);
                        continue;
                    }
                    self.add_residue(res, li + 1, stop, hint);
                    restart = Some(stop.min(self.levels.len() - 1));
                    break 'scan;
                }
            }
            match restart {
                Some(l) => i = l as isize,
                None => i -= 1,
            }
        }
    }

    /// Drops trailing levels whose stabilizer is trivial.
    pub fn trim(&mut self) {
        while let Some(l) = self.levels.last() {
            if l.gens.is_empty() {
                self.levels.pop();
            } else {
                break;
            }
        }
    }

    /// Deterministic chain for payload elements, plus the Schreier relators of the
    /// final chain: together with the definitions of the strong generators as
    /// words in `gens` they present the group on `gens`. Fails with the relator
    /// count when it exceeds `budget`.
    pub fn build_with_relators(
        degree: usize,
        gens: &[E],
        identity: E,
        hint: &[u32],
        budget: usize,
    ) -> std::result::Result<(Self, Vec<E>), usize> {
        let mut chain = StabChain::empty(degree, identity);
        // generators with trivial permutation part are relators themselves
        let mut rels: Vec<E> = gens.iter().filter(|g| g.perm().is_identity()).cloned().collect();
        let gens: Vec<E> = gens.iter().filter(|g| !g.perm().is_identity()).cloned().collect();
        if gens.is_empty() {
            return Ok((chain, rels));
        }
        for g in &gens {
            chain.insert(g, hint);
        }
        let mut level0 = gens.clone();
        level0.append(&mut chain.levels[0].gens);
        chain.levels[0].gens = level0;
        let id = chain.identity.clone();
        chain.levels[0].rebuild(&id);
        chain.complete(hint, &mut |_| {});
        for i in 0..chain.levels.len() {
            let lvl = &chain.levels[i];
            // every strong generator fixing the earlier base points acts here
            let sgens: Vec<&E> = chain.levels[i..].iter().flat_map(|l| l.gens.iter()).collect();
            for k in 0..lvl.orbit.len() {
                for &s in &sgens {
                    let img = s.perm().apply(lvl.orbit[k]);
                    let h = lvl.reps[k].compose(s).compose(lvl.inv_rep(img).expect("orbit closed"));
                    let (res, _) = chain.sift(&h, i + 1);
                    debug_assert!(res.perm().is_identity());
                    rels.push(res);
                    if rels.len() > budget {
                        return Err(rels.len());
                    }
                }
            }
        }
        Ok((chain, rels))
    }

    pub fn strong_generators(&self) -> Vec<E> {
        let mut out: Vec<E> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.iter().any(|h| h.perm() == g.perm()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}

impl StabChain<Permutation> {
    /// Deterministic Schreier–Sims, with a seeded random warm-up.
    pub fn build(degree: usize, gens: &[Permutation], hint: &[u32]) -> Self {
        let id = Permutation::identity(degree);
        let mut chain = StabChain::empty(degree, id);
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.insert(g, hint);
        }
        // Level 0 must carry the original generators for the relator harvest to be
        // a presentation on them; sifting only adds residues.
        for g in &gens {
            if !chain.levels[0].gens.iter().any(|h| h == g) {
                chain.levels[0].gens.push(g.clone());
            }
        }
        let id = chain.identity.clone();
        chain.levels[0].rebuild(&id);
        chain.random_warmup(&gens, hint, 0x5eed);
        chain.complete(hint, &mut |_| {});
        chain
    }

    fn random_warmup(&mut self, gens: &[Permutation], hint: &[u32], seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pr = ProductReplacement::new(gens, &mut rng);
        let mut quiet = 0;
        let mut rounds = 0;
        while quiet < 12 && rounds < 400 {
            let g = pr.next(&mut rng);
            if self.insert(&g, hint) {
                quiet = 0;
            } else {
                quiet += 1;
            }
            rounds += 1;
        }
    }

    /// New chain for the same group with `base` as a prefix (redundant points kept).
    /// `order` certifies completeness so no verification pass is needed.
    pub fn with_base(&self, base: &[u32]) -> Self {
        let id = self.identity.clone();
        let mut chain = StabChain::empty(self.degree, id.clone());
        let target = self.order();
        if self.levels.is_empty() {
            return chain;
        }
        for &b in base {
            chain.levels.push(Level::new(b, self.degree, &id));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xba5e);
        for g in self.strong_generators() {
            chain.insert_with_base(&g, base);
        }
        let mut tries = 0usize;
        while chain.order_of_nonempty() != target {
            let g = self.random_element(&mut rng);
            chain.insert_with_base(&g, base);
            tries += 1;
            if tries > 5000 {
                chain.complete(base, &mut |_| {});
                break;
            }
        }
        chain.trim();
        chain
    }

    fn order_of_nonempty(&self) -> BigUint {
        self.order()
    }

    fn insert_with_base(&mut self, g: &Permutation, base: &[u32]) {
        let (res, lvl) = self.sift(g, 0);
        if res.is_identity() {
            return;
        }
        self.add_residue(res, 0, lvl, base);
    }

    /// Uniform random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity.clone();
        for l in self.levels.iter().rev() {
            let k = rng.gen_range(0..l.orbit.len());
            g = g.mul(&l.reps[k]);
        }
        g
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = self.sift(g, 0);
        res.is_identity()
    }

    /// All elements, in a fixed order. Callers bound the size.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![self.identity.clone()];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for g in &out {
                for r in &l.reps {
                    next.push(g.mul(r));
                }
            }
            out = next;
        }
        out
    }
}

/// Product-replacement random element generator.
pub struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    pub fn new<R: Rng>(gens: &[Permutation], rng: &mut R) -> Self {
        let degree = gens.first().map(|g| g.degree()).unwrap_or(0);
        let mut state: Vec<Permutation> = gens.to_vec();
        if state.is_empty() {
            state.push(Permutation::identity(degree));
        }
        let base_len = state.len();
        while state.len() < 10.max(base_len) {
            let k = state.len() % base_len;
            state.push(state[k].clone());
        }
        let mut pr = ProductReplacement {
            state,
            acc: Permutation::identity(degree),
        };
        for _ in 0..50 {
            pr.next(rng);
        }
        pr
    }

    pub fn next<R: Rng>(&mut self, rng: &mut R) -> Permutation {
        let n = self.state.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(0..n);
            }
        }
        let t = if rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        if rng.gen_bool(0.5) {
            self.state[i] = self.state[i].mul(&t);
        } else {
            self.state[i] = t.mul(&self.state[i]);
        }
        self.acc = self.acc.mul(&self.state[i]);
        self.acc.clone()
    }
}
