use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{solve_left, vec_mat, Echelon, Matrix};
use crate::error::{Error, Result};
use crate::permcore::chain::{ChainElement, StabChain};
use crate::permcore::{is_prime, PermGroup, Permutation};
use crate::plattice::PGroupTable;

pub const DEFAULT_RELATOR_BUDGET: usize = 10_000;
pub const IRREDUCIBILITY_DIM_LIMIT: usize = 64;
/// Below this many vectors every seed is tried.
const EXHAUSTIVE_SPIN: u64 = 1 << 12;

/// Permutation tracked together with its matrix and, for each generator,
/// the matrix coefficient of a general 1-cocycle.
#[derive(Clone)]
struct Tracked {
    perm: Permutation,
    a: Matrix,
    a_inv: Matrix,
    c: Vec<Matrix>,
    p: u32,
}

impl ChainElement for Tracked {
    fn perm(&self) -> &Permutation {
        &self.perm
    }

    fn compose(&self, other: &Self) -> Self {
        let p = self.p;
        Tracked {
            perm: self.perm.mul(&other.perm),
            a: self.a.mul(&other.a, p),
            a_inv: other.a_inv.mul(&self.a_inv, p),
            // f(gh) = f(g) h + f(h)
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(x, y)| x.mul(&other.a, p).add(y, p))
                .collect(),
            p,
        }
    }

    fn inv(&self) -> Self {
        let p = self.p;
        Tracked {
            perm: self.perm.inverse(),
            a: self.a_inv.clone(),
            a_inv: self.a.clone(),
            c: self.c.iter().map(|x| x.mul(&self.a_inv, p).neg(p)).collect(),
            p,
        }
    }
}

/// A finite-dimensional `F_p`-module given by one matrix per generator.
/// The action is on row vectors: `v ↦ v·A`.
#[derive(Clone)]
pub struct FpModule {
    p: u32,
    dim: usize,
    actors: Vec<Matrix>,
    group: Option<PermGroup>,
    chain: OnceLock<Arc<StabChain<Tracked>>>,
}

impl std::fmt::Debug for FpModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FpModule(p = {}, dim {}, {} actors)", self.p, self.dim, self.actors.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Basis of a proper nonzero invariant subspace.
    Reducible(Vec<Vec<u8>>),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Which section of a normal p-subgroup becomes the module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    /// `Q` itself, which must be elementary abelian.
    Whole,
    /// `Q/Z(Q)`, which must be elementary abelian.
    ModCenter,
}

impl FpModule {
    /// Checks every actor and, when a group is attached, that the actors
    /// satisfy the Schreier relators of its stabilizer chain.
    pub fn new(p: u32, dim: usize, actors: Vec<Matrix>, group: Option<PermGroup>) -> Result<Self> {
        if !is_prime(p as u64) || p > 251 {
            return Err(Error::NotPrime(p as u64));
        }
        for a in &actors {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::Module(format!(
                    "actor of shape {}x{} in a module of dimension {}",
                    a.rows(),
                    a.cols(),
                    dim
                )));
            }
            if a.inverse(p).is_none() {
                return Err(Error::Module("singular actor".into()));
            }
        }
        if let Some(g) = &group {
            if g.generators().len() != actors.len() {
                return Err(Error::Module(format!(
                    "{} actors for {} group generators",
                    actors.len(),
                    g.generators().len()
                )));
            }
        }
        let m = FpModule {
            p,
            dim,
            actors,
            group,
            chain: OnceLock::new(),
        };
        if m.group.is_some() {
            m.check_relations(DEFAULT_RELATOR_BUDGET * 10)?;
        }
        Ok(m)
    }

    pub fn trivial(p: u32, dim: usize, group: Option<PermGroup>, generators: usize) -> Result<Self> {
        let n = group.as_ref().map_or(generators, |g| g.generators().len());
        Self::new(p, dim, vec![Matrix::identity(dim); n], group)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actors(&self) -> &[Matrix] {
        &self.actors
    }

    pub fn group(&self) -> Option<&PermGroup> {
        self.group.as_ref()
    }

    /// Same actors, attached to a different group on the same generator list.
    pub fn with_group(&self, group: PermGroup) -> Result<Self> {
        Self::new(self.p, self.dim, self.actors.clone(), Some(group))
    }

    fn tracked_gens(&self, cocycles: bool) -> Vec<Tracked> {
        let g = self.group.as_ref().expect("group attached");
        let r = self.actors.len();
        let n = self.dim;
        g.generators()
            .iter()
            .zip(&self.actors)
            .enumerate()
            .map(|(j, (perm, a))| Tracked {
                perm: perm.clone(),
                a: a.clone(),
                a_inv: a.inverse(self.p).expect("invertible"),
                c: if cocycles {
                    (0..r)
                        .map(|i| if i == j { Matrix::identity(n) } else { Matrix::zero(n, n) })
                        .collect()
                } else {
                    Vec::new()
                },
                p: self.p,
            })
            .collect()
    }

    fn tracked_identity(&self, cocycles: bool) -> Tracked {
        let g = self.group.as_ref().expect("group attached");
        let n = self.dim;
        Tracked {
            perm: Permutation::identity(g.degree()),
            a: Matrix::identity(n),
            a_inv: Matrix::identity(n),
            c: if cocycles {
                vec![Matrix::zero(n, n); self.actors.len()]
            } else {
                Vec::new()
            },
            p: self.p,
        }
    }

    fn relators(&self, cocycles: bool, budget: usize) -> Result<Vec<Tracked>> {
        let g = self.group.as_ref().ok_or_else(|| Error::Module("no group attached".into()))?;
        let (_, rels) = StabChain::build_with_relators(
            g.degree(),
            &self.tracked_gens(cocycles),
            self.tracked_identity(cocycles),
            &g.base(),
            budget,
        )
        .map_err(|k| Error::Bound(format!("more than {} relators (reached {})", budget, k)))?;
        Ok(rels)
    }

    fn check_relations(&self, budget: usize) -> Result<()> {
        for r in self.relators(false, budget)? {
            if !r.a.is_identity() {
                return Err(Error::Module("actors do not satisfy the group relations".into()));
            }
        }
        Ok(())
    }

    fn matrix_chain(&self) -> Result<&StabChain<Tracked>> {
        let g = self.group.as_ref().ok_or_else(|| Error::Module("no group attached".into()))?;
        Ok(self.chain.get_or_init(|| {
            let mut c = StabChain::empty(g.degree(), self.tracked_identity(false));
            let hint = g.base();
            for t in self.tracked_gens(false) {
                c.insert(&t, &hint);
            }
            c.complete(&hint, &mut |_| {});
            Arc::new(c)
        }))
    }

    /// Matrix of an arbitrary element of the attached group.
    pub fn matrix_of(&self, g: &Permutation) -> Result<Matrix> {
        let chain = self.matrix_chain()?;
        let start = Tracked {
            perm: g.clone(),
            ..self.tracked_identity(false)
        };
        let (res, _) = chain.sift(&start, 0);
        if !res.perm.is_identity() {
            return Err(Error::NotContained);
        }
        // g · u_1 ⋯ u_k = 1, so the matrix of g is the inverse of the product
        Ok(res.a_inv)
    }

    /// Restriction to a subgroup of the attached group.
    pub fn restrict(&self, h: &PermGroup) -> Result<FpModule> {
        let actors = h.generators().iter().map(|g| self.matrix_of(g)).collect::<Result<Vec<_>>>()?;
        FpModule::new(self.p, self.dim, actors, Some(h.clone()))
    }

    /// Restriction to the listed actors, without a group.
    pub fn restrict_to(&self, actors: Vec<Matrix>) -> Result<FpModule> {
        FpModule::new(self.p, self.dim, actors, None)
    }

    /// `C_V(H)` for the subgroup generated by the given actors.
    pub fn fixed_space_of(&self, actors: &[Matrix]) -> Vec<Vec<u8>> {
        fixed_space(self.dim, self.p, actors)
    }

    pub fn fixed_space(&self) -> Vec<Vec<u8>> {
        fixed_space(self.dim, self.p, &self.actors)
    }

    /// `C_V(H)` for a subgroup of the attached group.
    pub fn fixed_space_of_subgroup(&self, h: &PermGroup) -> Result<Vec<Vec<u8>>> {
        let actors = h.generators().iter().map(|g| self.matrix_of(g)).collect::<Result<Vec<_>>>()?;
        Ok(fixed_space(self.dim, self.p, &actors))
    }

    /// Smallest invariant subspace containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<u8>]) -> Vec<Vec<u8>> {
        spin(&self.actors, seeds, self.dim, self.p)
    }

    pub fn is_irreducible(&self) -> Result<Irreducibility> {
        if self.dim > IRREDUCIBILITY_DIM_LIMIT {
            return Err(Error::Bound(format!(
                "irreducibility test in dimension {} above {}",
                self.dim, IRREDUCIBILITY_DIM_LIMIT
            )));
        }
        Ok(irreducibility(&self.actors, self.dim, self.p))
    }

    pub fn end_algebra_dim(&self) -> usize {
        hom_dim(&self.actors, &self.actors, self.dim, self.dim, self.p)
    }

    pub fn is_absolutely_irreducible(&self) -> Result<bool> {
        Ok(self.is_irreducible()?.is_irreducible() && self.end_algebra_dim() == 1)
    }

    pub fn hom_space_dim(&self, other: &FpModule) -> Result<usize> {
        if self.p != other.p || self.actors.len() != other.actors.len() {
            return Err(Error::Module("modules over different generator lists".into()));
        }
        if let (Some(a), Some(b)) = (&self.group, &other.group) {
            if a.generators() != b.generators() {
                return Err(Error::Module("modules over different generator lists".into()));
            }
        }
        Ok(hom_dim(&self.actors, &other.actors, self.dim, other.dim, self.p))
    }

    pub fn h1(&self) -> Result<usize> {
        self.h1_with_budget(DEFAULT_RELATOR_BUDGET)
    }

    /// `dim Z¹ − dim B¹`. A cocycle is fixed by its values `u_i` on the generators;
    /// it exists iff `f(w) = Σ u_i C_i(w)` vanishes on every relator `w`.
    pub fn h1_with_budget(&self, budget: usize) -> Result<usize> {
        let rels = self.relators(true, budget)?;
        let n = self.dim;
        let unknowns = self.actors.len() * n;
        let mut eqs = Echelon::new(unknowns, self.p);
        'outer: for w in &rels {
            if !w.a.is_identity() {
                return Err(Error::Module("actors do not satisfy the group relations".into()));
            }
            for j in 0..n {
                let col: Vec<u8> = w
                    .c
                    .iter()
                    .flat_map(|ci| (0..n).map(move |k| ci.get(k, j)))
                    .collect();
                eqs.insert(&col);
                if eqs.len() == unknowns {
                    break 'outer;
                }
            }
        }
        let z1 = unknowns - eqs.len();
        let b1 = n - self.fixed_space().len();
        Ok(z1 - b1)
    }

    /// Splits the restriction to `h_actors` into irreducible summands and
    /// checks whether they are absolutely irreducible and pairwise non-isomorphic.
    pub fn submodule_decomposition_check(&self, h_actors: &[Matrix]) -> Result<DecompositionVerdict> {
        if self.dim > IRREDUCIBILITY_DIM_LIMIT {
            return Err(Error::Bound(format!(
                "decomposition in dimension {} above {}",
                self.dim, IRREDUCIBILITY_DIM_LIMIT
            )));
        }
        let p = self.p;
        let Some(parts) = decompose(h_actors, self.dim, p) else {
            return Ok(DecompositionVerdict {
                completely_reducible: false,
                summands: Vec::new(),
                summand_dims: Vec::new(),
                absolutely_irreducible: Vec::new(),
                pairwise_nonisomorphic: false,
                applies: false,
            });
        };
        let acts: Vec<Vec<Matrix>> = parts.iter().map(|b| induced_action(h_actors, b, p)).collect();
        let absolutely_irreducible: Vec<bool> = parts
            .iter()
            .zip(&acts)
            .map(|(b, a)| hom_dim(a, a, b.len(), b.len(), p) == 1)
            .collect();
        let mut pairwise = true;
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if hom_dim(&acts[i], &acts[j], parts[i].len(), parts[j].len(), p) != 0 {
                    pairwise = false;
                }
            }
        }
        Ok(DecompositionVerdict {
            completely_reducible: true,
            summand_dims: parts.iter().map(|b| b.len()).collect(),
            applies: pairwise && absolutely_irreducible.iter().all(|&x| x),
            summands: parts,
            absolutely_irreducible,
            pairwise_nonisomorphic: pairwise,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionVerdict {
    pub completely_reducible: bool,
    /// Bases of the summands.
    pub summands: Vec<Vec<Vec<u8>>>,
    pub summand_dims: Vec<usize>,
    pub absolutely_irreducible: Vec<bool>,
    pub pairwise_nonisomorphic: bool,
    /// All summands absolutely irreducible and pairwise non-isomorphic.
    pub applies: bool,
}

pub fn fixed_space(dim: usize, p: u32, actors: &[Matrix]) -> Vec<Vec<u8>> {
    // v(A - I) = 0 for every actor: left kernel of the concatenation
    let mut big = Matrix::zero(dim, dim * actors.len());
    for (t, a) in actors.iter().enumerate() {
        let d = a.sub(&Matrix::identity(dim), p);
        for i in 0..dim {
            for j in 0..dim {
                big.set(i, t * dim + j, d.get(i, j));
            }
        }
    }
    if actors.is_empty() {
        return Matrix::identity(dim).row_vecs();
    }
    big.left_kernel(p)
}

pub fn spin(actors: &[Matrix], seeds: &[Vec<u8>], dim: usize, p: u32) -> Vec<Vec<u8>> {
    let mut ech = Echelon::new(dim, p);
    let mut queue: Vec<Vec<u8>> = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push(s.clone());
        }
    }
    let mut k = 0;
    while k < queue.len() && ech.len() < dim {
        for a in actors {
            let w = vec_mat(&queue[k], a, p);
            if ech.insert(&w) {
                queue.push(w);
            }
        }
        k += 1;
    }
    let mut m = Matrix::from_row_vecs(ech.basis(), dim);
    let r = m.rref(p).len();
    m.row_vecs().into_iter().take(r).collect()
}

/// Nonzero vectors of the span of `basis` up to scalars, in lexicographic
/// order of their coefficient vectors.
fn projective_points(basis: &[Vec<u8>], dim: usize, p: u32) -> impl Iterator<Item = Vec<u8>> + '_ {
    let d = basis.len();
    let total = (p as u64).pow(d as u32);
    (1..total).filter_map(move |mut code| {
        let mut coef = vec![0u32; d];
        for i in (0..d).rev() {
            coef[i] = (code % p as u64) as u32;
            code /= p as u64;
        }
        let lead = coef.iter().find(|&&c| c != 0)?;
        if *lead != 1 {
            return None;
        }
        let mut v = vec![0u32; dim];
        for (c, b) in coef.iter().zip(basis) {
            for (x, &y) in v.iter_mut().zip(b) {
                *x = (*x + c * y as u32) % p;
            }
        }
        Some(v.into_iter().map(|x| x as u8).collect())
    })
}

fn random_algebra_element(actors: &[Matrix], dim: usize, p: u32, rng: &mut ChaCha8Rng) -> Matrix {
    let mut acc = Matrix::zero(dim, dim);
    let mut word = Matrix::identity(dim);
    for _ in 0..6 {
        if !actors.is_empty() {
            let a = &actors[rng.gen_range(0..actors.len())];
            word = word.mul(a, p);
        }
        let c = rng.gen_range(0..p);
        acc = acc.add(&word.scale(c, p), p);
    }
    acc
}

/// Norton-style test: for a singular algebra element `A`, the module is
/// irreducible iff every nonzero vector of `ker A` spins to `V` and every
/// nonzero vector of `ker Aᵀ` spins to `V*`. With `A = 0` this is the
/// exhaustive test.
fn irreducibility(actors: &[Matrix], dim: usize, p: u32) -> Irreducibility {
    if dim == 0 {
        return Irreducibility::Reducible(Vec::new());
    }
    let exhaustive = (p as u64).checked_pow(dim as u32).map_or(false, |n| n <= EXHAUSTIVE_SPIN);
    let a = if exhaustive {
        Matrix::zero(dim, dim)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut best: Option<(usize, Matrix)> = None;
        for _ in 0..256 {
            let m = random_algebra_element(actors, dim, p, &mut rng);
            let k = dim - m.rank(p);
            if k > 0 && best.as_ref().map_or(true, |(b, _)| k < *b) {
                best = Some((k, m));
                if k == 1 {
                    break;
                }
            }
        }
        best.map(|(_, m)| m).unwrap_or_else(|| Matrix::zero(dim, dim))
    };
    let ker = a.left_kernel(p);
    for v in projective_points(&ker, dim, p) {
        let w = spin(actors, &[v], dim, p);
        if w.len() < dim {
            return Irreducibility::Reducible(w);
        }
    }
    let trans: Vec<Matrix> = actors.iter().map(|m| m.transpose()).collect();
    let kert = a.transpose().left_kernel(p);
    for u in projective_points(&kert, dim, p) {
        let w = spin(&trans, &[u], dim, p);
        if w.len() < dim {
            // annihilator of a proper dual submodule
            let wt = Matrix::from_row_vecs(&w, dim).transpose();
            return Irreducibility::Reducible(wt.left_kernel(p));
        }
    }
    Irreducibility::Irreducible
}

/// `dim {X : A_i X = X B_i for all i}` with `X` of shape `m × n`.
pub fn hom_dim(a: &[Matrix], b: &[Matrix], m: usize, n: usize, p: u32) -> usize {
    let unknowns = m * n;
    let mut eqs = Echelon::new(unknowns, p);
    for (am, bn) in a.iter().zip(b) {
        for r in 0..m {
            for c in 0..n {
                // coefficient row of (A X - X B)_{rc}
                let mut row = vec![0u8; unknowns];
                for k in 0..m {
                    let v = am.get(r, k) as u32;
                    let idx = k * n + c;
                    row[idx] = ((row[idx] as u32 + v) % p) as u8;
                }
                for k in 0..n {
                    let v = bn.get(k, c) as u32;
                    let idx = r * n + k;
                    row[idx] = ((row[idx] as u32 + (p - v) % p) % p) as u8;
                }
                eqs.insert(&row);
                if eqs.len() == unknowns {
                    return 0;
                }
            }
        }
    }
    unknowns - eqs.len()
}

/// Matrices of the action on an invariant subspace, in the coordinates of `basis`.
pub fn induced_action(actors: &[Matrix], basis: &[Vec<u8>], p: u32) -> Vec<Matrix> {
    let dim = basis.first().map_or(0, |b| b.len());
    let bm = Matrix::from_row_vecs(basis, dim);
    actors
        .iter()
        .map(|a| {
            let rows: Vec<Vec<u8>> = basis
                .iter()
                .map(|v| solve_left(&bm, &vec_mat(v, a, p), p).expect("invariant subspace"))
                .collect();
            Matrix::from_row_vecs(&rows, basis.len())
        })
        .collect()
}

/// Invariant complement of the invariant subspace `w`, if one exists.
fn complement(actors: &[Matrix], w: &[Vec<u8>], dim: usize, p: u32) -> Option<Vec<Vec<u8>>> {
    // projection V -> W as v ↦ v Y B_W; need A_i Y = Y R_i and B_W Y = I
    let k = w.len();
    let r = induced_action(actors, w, p);
    let unknowns = dim * k;
    let mut cols: Vec<Vec<u8>> = Vec::new();
    let mut rhs: Vec<u8> = Vec::new();
    for (a, ri) in actors.iter().zip(&r) {
        for row in 0..dim {
            for c in 0..k {
                let mut col = vec![0u8; unknowns];
                for t in 0..dim {
                    let idx = t * k + c;
                    col[idx] = ((col[idx] as u32 + a.get(row, t) as u32) % p) as u8;
                }
                for t in 0..k {
                    let idx = row * k + t;
                    col[idx] = ((col[idx] as u32 + (p - ri.get(t, c) as u32) % p) % p) as u8;
                }
                cols.push(col);
                rhs.push(0);
            }
        }
    }
    for (a, wa) in w.iter().enumerate() {
        for c in 0..k {
            let mut col = vec![0u8; unknowns];
            for t in 0..dim {
                col[t * k + c] = wa[t];
            }
            cols.push(col);
            rhs.push((a == c) as u8);
        }
    }
    let sys = Matrix::from_row_vecs(&cols, unknowns).transpose();
    let y = solve_left(&sys, &rhs, p)?;
    let ym = Matrix::from_row_vecs(&y.chunks(k).map(|c| c.to_vec()).collect::<Vec<_>>(), k);
    Some(ym.left_kernel(p))
}

/// Irreducible summands (bases in the ambient coordinates), or `None` when the
/// module is not completely reducible.
fn decompose(actors: &[Matrix], dim: usize, p: u32) -> Option<Vec<Vec<Vec<u8>>>> {
    if dim == 0 {
        return Some(Vec::new());
    }
    let w = match irreducibility(actors, dim, p) {
        Irreducibility::Irreducible => return Some(vec![Matrix::identity(dim).row_vecs()]),
        Irreducibility::Reducible(w) => w,
    };
    let u = complement(actors, &w, dim, p)?;
    let mut out = Vec::new();
    for part in [w, u] {
        let acts = induced_action(actors, &part, p);
        let pm = Matrix::from_row_vecs(&part, dim);
        for sub in decompose(&acts, part.len(), p)? {
            let sm = Matrix::from_row_vecs(&sub, part.len());
            out.push(sm.mul(&pm, p).row_vecs());
        }
    }
    Some(out)
}

/// `Q` (or `Q/Z(Q)`) as an `F_p G`-module under conjugation, `G ≤ N(Q)`.
pub fn module_from_action(g: &PermGroup, q: &PermGroup, section: Section) -> Result<FpModule> {
    let r = match section {
        Section::Whole => PermGroup::trivial(q.degree()),
        Section::ModCenter => crate::permcore::center(q),
    };
    module_from_quotient(g, q, &r)
}

/// `Q/R` as an `F_p G`-module, for `R ≤ Q` both normalized by `G` and `Q/R`
/// elementary abelian.
pub fn module_from_quotient(g: &PermGroup, q: &PermGroup, r: &PermGroup) -> Result<FpModule> {
    if q.is_trivial() {
        return Err(Error::Module("trivial section".into()));
    }
    let t = PGroupTable::new(q)?;
    let p = t.p();
    let rb = t.bits_of(r)?;
    let qgens: Vec<usize> = t.generators().iter().map(|&x| x as usize).collect();
    for &x in &qgens {
        if !rb.get(t.pow(x, p)) || qgens.iter().any(|&y| !rb.get(t.commutator(x, y))) {
            return Err(Error::Unsupported("section is not elementary abelian".into()));
        }
    }
    for s in g.generators() {
        if !q.is_normalized_by(s) || !r.is_normalized_by(s) {
            return Err(Error::NotContained);
        }
    }
    // basis of Q/R and a coordinate for every element of Q
    let mut basis: Vec<usize> = Vec::new();
    let mut span = rb.clone();
    while span.count() < t.size() {
        let x = (0..t.size()).find(|&x| !span.get(x)).unwrap();
        basis.push(x);
        span = t.extend(&rb, &basis);
    }
    let k = basis.len();
    let mut coord: Vec<Option<Vec<u8>>> = vec![None; t.size()];
    let total = p.pow(k as u32);
    for code in 0..total {
        let mut c = vec![0u8; k];
        let mut rest = code;
        for i in (0..k).rev() {
            c[i] = (rest % p) as u8;
            rest /= p;
        }
        let mut x = 0;
        for (i, &ci) in c.iter().enumerate() {
            x = t.mul(x, t.pow(basis[i], ci as u64));
        }
        for y in rb.iter() {
            coord[t.mul(x, y)] = Some(c.clone());
        }
    }
    let mut actors = Vec::new();
    for s in g.generators() {
        let rows: Vec<Vec<u8>> = basis
            .iter()
            .map(|&b| {
                let img = t.element(b).conjugate_by(s);
                let i = t.index_of(&img).expect("normalized");
                coord[i].clone().expect("coordinate")
            })
            .collect();
        actors.push(Matrix::from_row_vecs(&rows, k));
    }
    FpModule::new(p as u32, k, actors, Some(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
        PermGroup::from_generators(
            n,
            gens.iter().map(|c| Permutation::from_cycles(n, c).unwrap()).collect(),
        )
        .unwrap()
    }

    fn m(rows: &[&[i64]], p: u32) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), p)
    }

    /// S3 = <(1 2 3), (1 2)> on F_2^2 as the sum-zero part of the permutation module.
    fn s3_natural() -> FpModule {
        let g = grp(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        FpModule::new(2, 2, vec![m(&[&[0, 1], &[1, 1]], 2), m(&[&[0, 1], &[1, 0]], 2)], Some(g)).unwrap()
    }

    /// Counts 1-cocycles by trying every assignment on the generators.
    fn brute_h1(md: &FpModule) -> usize {
        let g = md.group().unwrap();
        let elems = g.elements(100_000);
        let p = md.p();
        let n = md.dim();
        let r = md.actors().len();
        let total = (p as u64).pow((n * r) as u32);
        let mut z = 0u64;
        for code in 0..total {
            let mut vals = Vec::new();
            let mut c = code;
            for _ in 0..r {
                let mut v = vec![0u8; n];
                for x in v.iter_mut() {
                    *x = (c % p as u64) as u8;
                    c /= p as u64;
                }
                vals.push(v);
            }
            // f(x s) = f(x) s + f(s), by breadth-first search over the elements
            let mut f: std::collections::HashMap<Permutation, Vec<u8>> = Default::default();
            f.insert(Permutation::identity(g.degree()), vec![0; n]);
            let mut queue = vec![Permutation::identity(g.degree())];
            let mut ok = true;
            let mut k = 0;
            while ok && k < queue.len() {
                let x = queue[k].clone();
                k += 1;
                for (j, s) in g.generators().iter().enumerate() {
                    let y = x.mul(s);
                    let fy: Vec<u8> = vec_mat(&f[&x], &md.actors()[j], p)
                        .iter()
                        .zip(&vals[j])
                        .map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8)
                        .collect();
                    match f.get(&y) {
                        Some(old) if *old != fy => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            f.insert(y.clone(), fy);
                            queue.push(y);
                        }
                    }
                }
            }
            if ok {
                assert_eq!(f.len(), elems.len());
                z += 1;
            }
        }
        let fixed = md.fixed_space().len();
        let zdim = (z as f64).log(p as f64).round() as usize;
        zdim - (n - fixed)
    }

    #[test]
    fn s3_fixed_spaces() {
        let md = s3_natural();
        assert_eq!(md.fixed_space().len(), 0);
        assert_eq!(md.fixed_space_of(&md.actors()[1..]).len(), 1);
        let t = FpModule::trivial(5, 1, None, 3).unwrap();
        assert_eq!(t.fixed_space().len(), 1);
    }

    #[test]
    fn matrix_of_products() {
        let md = s3_natural();
        let g = md.group().unwrap().clone();
        let a = &g.generators()[0];
        let b = &g.generators()[1];
        let ab = a.mul(b);
        assert_eq!(md.matrix_of(&ab).unwrap(), md.actors()[0].mul(&md.actors()[1], 2));
        assert!(md.matrix_of(&Permutation::identity(3)).unwrap().is_identity());
    }

    #[test]
    fn relations_enforced() {
        let g = grp(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        // (1 2) sent to an element of order 3 breaks the relations
        let bad = FpModule::new(2, 2, vec![m(&[&[0, 1], &[1, 1]], 2), m(&[&[0, 1], &[1, 1]], 2)], Some(g));
        assert!(bad.is_err());
    }

    #[test]
    fn h1_small_cases() {
        let c2 = grp(2, &[&[&[1, 2]]]);
        let t = FpModule::trivial(2, 1, Some(c2), 0).unwrap();
        assert_eq!(t.h1().unwrap(), 1);
        assert_eq!(brute_h1(&t), 1);
        let s3 = s3_natural();
        assert_eq!(s3.h1().unwrap(), 0);
        assert_eq!(brute_h1(&s3), 0);
        // F_2 trivial for S3: Hom(S3, C2) = C2
        let g = s3.group().unwrap().clone();
        let triv = FpModule::trivial(2, 1, Some(g), 0).unwrap();
        assert_eq!(triv.h1().unwrap(), 1);
        assert_eq!(brute_h1(&triv), 1);
    }

    #[test]
    fn h1_of_permutation_module_matches_brute_force() {
        // S3 on F_3^3 by permutation matrices
        let g = grp(3, &[&[&[1, 2, 3]], &[&[1, 2]]]);
        let actors = g
            .generators()
            .iter()
            .map(|s| {
                let mut a = Matrix::zero(3, 3);
                for i in 0..3 {
                    a.set(i, s.apply(i as u32) as usize, 1);
                }
                a
            })
            .collect();
        let md = FpModule::new(3, 3, actors, Some(g)).unwrap();
        assert_eq!(md.h1().unwrap(), brute_h1(&md));
    }

    fn gl32_natural() -> FpModule {
        // GL_3(2) on the 7 nonzero vectors of F_2^3, numbered by their binary value
        let a = m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]], 2);
        let b = m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], 2);
        let perm_of = |mat: &Matrix| {
            let imgs: Vec<u32> = (1..8u8)
                .map(|v| {
                    let vec: Vec<u8> = (0..3).map(|i| (v >> (2 - i)) & 1).collect();
                    let w = vec_mat(&vec, mat, 2);
                    (w[0] * 4 + w[1] * 2 + w[2] - 1) as u32
                })
                .collect();
            Permutation::from_images(imgs).unwrap()
        };
        let g = PermGroup::from_generators(7, vec![perm_of(&a), perm_of(&b)]).unwrap();
        assert_eq!(g.order_u64(), 168);
        FpModule::new(2, 3, vec![a, b], Some(g)).unwrap()
    }

    #[test]
    fn gl32_natural_module() {
        let md = gl32_natural();
        // 2^3:GL_3(2) has two classes of complements
        assert_eq!(md.h1().unwrap(), 1);
        assert_eq!(brute_h1(&md), 1);
        assert!(md.is_absolutely_irreducible().unwrap());
        assert_eq!(md.end_algebra_dim(), 1);
    }

    #[test]
    fn gl22_natural_and_f4() {
        let md = s3_natural();
        assert!(md.is_irreducible().unwrap().is_irreducible());
        assert_eq!(md.end_algebra_dim(), 1);
        let triv = FpModule::trivial(2, 1, md.group().cloned(), 0).unwrap();
        assert_eq!(md.hom_space_dim(&triv).unwrap(), 0);
        assert_eq!(triv.hom_space_dim(&triv).unwrap(), 1);
        assert_eq!(md.hom_space_dim(&md).unwrap(), md.end_algebra_dim());
        // F_4 as a C_3-module: multiplication by a primitive element
        let c3 = md.restrict_to(vec![md.actors()[0].clone()]).unwrap();
        assert!(c3.is_irreducible().unwrap().is_irreducible());
        assert_eq!(c3.end_algebra_dim(), 2);
        assert!(!c3.is_absolutely_irreducible().unwrap());
        let v = md.submodule_decomposition_check(&[md.actors()[0].clone()]).unwrap();
        assert!(!v.applies);
        assert_eq!(v.summand_dims, vec![2]);
    }

    #[test]
    fn reducible_witnesses() {
        let t = FpModule::trivial(2, 2, None, 1).unwrap();
        match t.is_irreducible().unwrap() {
            Irreducibility::Reducible(w) => assert_eq!(w.len(), 1),
            _ => panic!("trivial F_2^2 is reducible"),
        }
        let s4 = PermGroup::symmetric(4);
        let actors = s4
            .generators()
            .iter()
            .map(|s| {
                let mut a = Matrix::zero(4, 4);
                for i in 0..4 {
                    a.set(i, s.apply(i as u32) as usize, 1);
                }
                a
            })
            .collect();
        let perm = FpModule::new(2, 4, actors, Some(s4)).unwrap();
        let Irreducibility::Reducible(w) = perm.is_irreducible().unwrap() else {
            panic!("permutation module is reducible");
        };
        let spun = perm.spin(&w);
        assert_eq!(spun.len(), w.len());
    }

    #[test]
    fn sign_characters_split() {
        let a = m(&[&[1, 0], &[0, 2]], 3);
        let md = FpModule::new(3, 2, vec![a.clone()], None).unwrap();
        let v = md.submodule_decomposition_check(&[a]).unwrap();
        assert!(v.applies);
        assert_eq!(v.summand_dims, vec![1, 1]);
        let t = FpModule::trivial(3, 1, None, 1).unwrap();
        assert!(t.submodule_decomposition_check(t.actors()).unwrap().applies);
    }

    #[test]
    fn not_completely_reducible() {
        // unipotent C_2 on F_2^2
        let a = m(&[&[1, 1], &[0, 1]], 2);
        let md = FpModule::new(2, 2, vec![a.clone()], None).unwrap();
        let v = md.submodule_decomposition_check(&[a]).unwrap();
        assert!(!v.completely_reducible);
        assert!(!v.applies);
    }

    #[test]
    fn s4_on_v4() {
        let s4 = PermGroup::symmetric(4);
        let v4 = grp(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
        let md = module_from_action(&s4, &v4, Section::Whole).unwrap();
        assert_eq!(md.dim(), 2);
        assert!(md.is_absolutely_irreducible().unwrap());
        // image is GL_2(2): the actors generate a group of order 6
        let img = crate::permcore::PermGroup::from_generators(
            3,
            md.actors()
                .iter()
                .map(|a| {
                    let pts = [[0u8, 1], [1, 0], [1, 1]];
                    let imgs = pts
                        .iter()
                        .map(|v| pts.iter().position(|w| *w == vec_mat(v, a, 2)[..]).unwrap() as u32)
                        .collect();
                    Permutation::from_images(imgs).unwrap()
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(img.order_u64(), 6);
        let a4 = PermGroup::alternating(4);
        let ma = module_from_action(&a4, &v4, Section::Whole).unwrap();
        assert!(ma.is_irreducible().unwrap().is_irreducible());
        assert_eq!(ma.end_algebra_dim(), 2);
    }

    #[test]
    fn extraspecial_quotient() {
        let d8 = grp(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let md = module_from_action(&d8, &d8, Section::ModCenter).unwrap();
        assert_eq!(md.dim(), 2);
        assert!(md.actors().iter().all(|a| a.is_identity()));
        assert!(module_from_action(&d8, &d8, Section::Whole).is_err());
    }

    #[test]
    fn large_field_irreducibility_by_random_element() {
        // Z/7 ⊕ Z/7 action of C_6 acting by a matrix with irreducible char poly x^2 - 3 over F_7
        let a = m(&[&[0, 1], &[3, 0]], 7);
        let md = FpModule::new(7, 2, vec![a], None).unwrap();
        assert!(md.is_irreducible().unwrap().is_irreducible());
        let five = (0..5).map(|_| m(&[&[1, 0], &[0, 1]], 7)).collect::<Vec<_>>();
        let big = FpModule::new(7, 2, five, None).unwrap();
        assert!(!big.is_irreducible().unwrap().is_irreducible());
    }
}
