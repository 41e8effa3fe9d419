//! Base-image backtrack over a stabilizer chain.
//!
//! Every search here has the same shape: find `g ∈ G` such that each
//! generator `x_i` of a subgroup `A` conjugates (`x_i^g = g⁻¹ x_i g`) into a
//! target set. The base is chosen along the orbits of `A`, so once two base
//! points are related by some `x_i` the images pin down where `x_i^g` sends a
//! point and the candidate lists shrink.

use std::collections::HashSet;

use super::chain::StabChain;
use super::group::{orbits_of, PermGroup};
use super::perm::Permutation;

/// Above this size targets are checked by sifting instead of candidate lists.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

pub(crate) struct Problem {
    pub gens: Vec<Permutation>,
    pub cands: Option<Vec<Vec<Permutation>>>,
    pub target: Option<PermGroup>,
    a_orbit: Vec<u32>,
    a_size: Vec<u32>,
    b_orbit: Vec<u32>,
    b_size: Vec<u32>,
}

fn orbit_labels(gens: &[Permutation], degree: usize) -> (Vec<u32>, Vec<u32>) {
    let mut label = vec![0u32; degree];
    let mut size = vec![0u32; degree];
    for (k, o) in orbits_of(gens, degree).into_iter().enumerate() {
        for &x in &o {
            label[x as usize] = k as u32;
            size[x as usize] = o.len() as u32;
        }
    }
    (label, size)
}

impl Problem {
    /// `x^g = y` for each pair.
    pub fn exact(pairs: &[(Permutation, Permutation)], degree: usize) -> Problem {
        let gens: Vec<Permutation> = pairs.iter().map(|(x, _)| x.clone()).collect();
        let ys: Vec<Permutation> = pairs.iter().map(|(_, y)| y.clone()).collect();
        let (a_orbit, a_size) = orbit_labels(&gens, degree);
        let (b_orbit, b_size) = orbit_labels(&ys, degree);
        Problem {
            gens,
            cands: Some(ys.into_iter().map(|y| vec![y]).collect()),
            target: None,
            a_orbit,
            a_size,
            b_orbit,
            b_size,
        }
    }

    /// `x_i^g ∈ B` for the generators `x_i` of `A`.
    pub fn into_group(a_gens: &[Permutation], b: &PermGroup) -> Problem {
        let degree = b.degree();
        let gens: Vec<Permutation> = a_gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let (a_orbit, a_size) = orbit_labels(&gens, degree);
        let (b_orbit, b_size) = orbit_labels(b.generators(), degree);
        let cands = if b.order_u64() <= ENUMERATION_LIMIT {
            let elems = b.elements(ENUMERATION_LIMIT);
            Some(
                gens.iter()
                    .map(|x| {
                        let ct = x.cycle_type();
                        elems
                            .iter()
                            .filter(|y| y.cycle_type() == ct)
                            .cloned()
                            .collect()
                    })
                    .collect(),
            )
        } else {
            None
        };
        Problem {
            gens,
            cands,
            target: Some(b.clone()),
            a_orbit,
            a_size,
            b_orbit,
            b_size,
        }
    }

    /// Base ordering following the orbits of the generators, largest orbits first.
    pub fn adapted_base(&self, degree: usize) -> Vec<u32> {
        let mut orbs = orbits_of(&self.gens, degree);
        orbs.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        orbs.into_iter().flatten().collect()
    }

    fn satisfied(&self, g: &Permutation, alive: &[Vec<u32>]) -> bool {
        for (i, x) in self.gens.iter().enumerate() {
            let y = x.conjugate_by(g);
            match &self.cands {
                Some(c) => {
                    if !alive[i].iter().any(|&k| c[i][k as usize] == y) {
                        return false;
                    }
                }
                None => {
                    if !self.target.as_ref().map_or(false, |t| t.contains(&y)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub(crate) struct Search<'a> {
    chain: &'a StabChain<Permutation>,
    prob: &'a Problem,
    base: Vec<u32>,
    /// For depth d: (generator, source depth, target depth) with max depth = d.
    pairs_at: Vec<Vec<(usize, usize, usize)>>,
    pub nodes: u64,
}

impl<'a> Search<'a> {
    pub fn new(chain: &'a StabChain<Permutation>, prob: &'a Problem) -> Self {
        let base = chain.base();
        let k = base.len();
        let mut depth_of = vec![usize::MAX; chain.degree()];
        for (j, &b) in base.iter().enumerate() {
            depth_of[b as usize] = j;
        }
        let mut pairs_at = vec![Vec::new(); k];
        for (i, x) in prob.gens.iter().enumerate() {
            for (j, &b) in base.iter().enumerate() {
                let jd = depth_of[x.apply(b) as usize];
                if jd != usize::MAX {
                    pairs_at[j.max(jd)].push((i, j, jd));
                }
            }
        }
        Search {
            chain,
            prob,
            base,
            pairs_at,
            nodes: 0,
        }
    }

    fn initial_alive(&self) -> Vec<Vec<u32>> {
        match &self.prob.cands {
            Some(c) => c.iter().map(|l| (0..l.len() as u32).collect()).collect(),
            None => vec![Vec::new(); self.prob.gens.len()],
        }
    }

    /// Orbit-structure consistency of the image of base point `d`.
    fn orbit_ok(&self, d: usize, u: &Permutation) -> bool {
        let p = self.prob;
        let b = self.base[d] as usize;
        let g = u.apply(self.base[d]) as usize;
        if p.a_size[b] != p.b_size[g] {
            return false;
        }
        for j in 0..d {
            let bj = self.base[j] as usize;
            let gj = u.apply(self.base[j]) as usize;
            let same_a = p.a_orbit[bj] == p.a_orbit[b];
            let same_b = p.b_orbit[gj] == p.b_orbit[g];
            if same_a != same_b {
                return false;
            }
        }
        true
    }

    fn filter(&self, d: usize, u: &Permutation, alive: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
        let cands = match &self.prob.cands {
            Some(c) => c,
            None => return Some(alive.to_vec()),
        };
        if self.pairs_at[d].is_empty() {
            return Some(alive.to_vec());
        }
        let mut out = alive.to_vec();
        for &(i, js, jd) in &self.pairs_at[d] {
            let a = u.apply(self.base[js]);
            let b = u.apply(self.base[jd]);
            out[i].retain(|&k| cands[i][k as usize].apply(a) == b);
            if out[i].is_empty() {
                return None;
            }
        }
        Some(out)
    }

    fn dfs(&mut self, d: usize, u: &Permutation, alive: &[Vec<u32>]) -> Option<Permutation> {
        self.nodes += 1;
        let levels = self.chain.levels();
        if d == levels.len() {
            return if self.prob.satisfied(u, alive) {
                Some(u.clone())
            } else {
                None
            };
        }
        let lvl = &levels[d];
        let mut opts: Vec<(u32, u32)> = lvl.orbit().iter().map(|&x| (u.apply(x), x)).collect();
        opts.sort_unstable();
        for (_, x) in opts {
            let u2 = lvl.rep(x).expect("orbit point").mul(u);
            if !self.orbit_ok(d, &u2) {
                continue;
            }
            if let Some(alive2) = self.filter(d, &u2, alive) {
                if let Some(g) = self.dfs(d + 1, &u2, &alive2) {
                    return Some(g);
                }
            }
        }
        None
    }

    /// Any element satisfying the problem.
    pub fn find_one(&mut self) -> Option<Permutation> {
        let id = Permutation::identity(self.chain.degree());
        let alive = self.initial_alive();
        if self.chain.levels().is_empty() {
            return if self.prob.satisfied(&id, &alive) {
                Some(id)
            } else {
                None
            };
        }
        self.dfs(0, &id, &alive)
    }

    /// The solution set is a subgroup containing `known`; returns generators.
    pub fn subgroup(&mut self, known: &[Permutation]) -> Vec<Permutation> {
        let degree = self.chain.degree();
        let levels = self.chain.levels();
        let k = levels.len();
        let mut found: Vec<(usize, Permutation)> = Vec::new();
        for l in (0..k).rev() {
            let fixes_prefix = |g: &Permutation| (0..l).all(|j| g.apply(self.base[j]) == self.base[j]);
            let mut kgens: Vec<Permutation> = known.iter().filter(|g| fixes_prefix(g)).cloned().collect();
            kgens.extend(found.iter().filter(|(lv, _)| *lv >= l).map(|(_, g)| g.clone()));
            let lvl = &levels[l];
            let mut handled = vec![false; degree];
            mark_orbit(&kgens, lvl.point, &mut handled);
            let mut pts: Vec<u32> = lvl.orbit().to_vec();
            pts.sort_unstable();
            for x in pts {
                if handled[x as usize] {
                    continue;
                }
                let u = lvl.rep(x).expect("orbit point").clone();
                let mut hit = None;
                if (0..=l).all(|j| self.orbit_ok(j, &u)) {
                    let mut alive = Some(self.initial_alive());
                    for j in 0..=l {
                        alive = alive.and_then(|a| self.filter(j, &u, &a));
                    }
                    if let Some(a) = alive {
                        hit = self.dfs(l + 1, &u, &a);
                    }
                }
                match hit {
                    Some(g) => {
                        kgens.push(g.clone());
                        found.push((l, g));
                        mark_orbit(&kgens, lvl.point, &mut handled);
                    }
                    None => mark_orbit(&kgens, x, &mut handled),
                }
            }
        }
        let mut out: Vec<Permutation> = known.to_vec();
        out.extend(found.into_iter().map(|(_, g)| g));
        out
    }
}

fn mark_orbit(gens: &[Permutation], x: u32, marks: &mut [bool]) {
    if marks[x as usize] && gens.is_empty() {
        return;
    }
    let mut stack = vec![x];
    let mut seen: HashSet<u32> = HashSet::new();
    seen.insert(x);
    marks[x as usize] = true;
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if seen.insert(z) {
                marks[z as usize] = true;
                stack.push(z);
            }
        }
    }
}

/// Rebuilds `G`'s chain along the problem's orbits and runs a subgroup search.
pub(crate) fn search_subgroup(g: &PermGroup, prob: &Problem, known: &[Permutation]) -> PermGroup {
    let degree = g.degree();
    if g.is_trivial() {
        return PermGroup::trivial(degree);
    }
    let base = prob.adapted_base(degree);
    let chain = g.rebased(&base);
    let mut s = Search::new(&chain, prob);
    let gens = s.subgroup(known);
    let gens: Vec<Permutation> = gens.into_iter().filter(|x| !x.is_identity()).collect();
    PermGroup::with_hint(degree, gens, &base)
}

pub(crate) fn search_element(g: &PermGroup, prob: &Problem) -> Option<Permutation> {
    let degree = g.degree();
    let base = prob.adapted_base(degree);
    let chain = g.rebased(&base);
    let mut s = Search::new(&chain, prob);
    s.find_one()
}
