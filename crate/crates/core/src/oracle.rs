//! Brute-force reference computations, used by the property suite and tests.
//! Each one enumerates rather than reusing the production algorithm.

use std::collections::{BTreeSet, HashSet};

use crate::modrep::Matrix;
use crate::permcore::{intersection, normalizer, right_transversal, sylow, PermGroup, Permutation};
use crate::plattice::{Bits, PGroupTable};

/// Distinct maps `P → Q` induced by conjugation, found by scanning every
/// element of `G`.
pub fn hom_count(g: &PermGroup, p: &PermGroup, q: &PermGroup) -> usize {
    let gens = p.generators();
    let mut maps: HashSet<Vec<Permutation>> = HashSet::new();
    for x in g.elements(u64::MAX) {
        let imgs: Vec<Permutation> = gens.iter().map(|a| a.conjugate_by(&x)).collect();
        if imgs.iter().all(|y| q.contains(y)) {
            maps.insert(imgs);
        }
    }
    maps.len()
}

/// Every subgroup of a tabulated group, grown one element at a time.
pub fn subgroups(t: &PGroupTable) -> HashSet<Bits> {
    let mut all: HashSet<Bits> = HashSet::from([t.trivial()]);
    let mut frontier: Vec<Bits> = vec![t.trivial()];
    while let Some(h) = frontier.pop() {
        for x in 0..t.size() {
            if h.get(x) {
                continue;
            }
            let k = t.extend(&h, &[x]);
            if all.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    all
}

/// Whether `H` has a strongly p-embedded subgroup, by the definition: the
/// candidate is `M = ⟨N_H(U) : 1 ≠ U ≤ T⟩`, which lies in every strongly
/// p-embedded subgroup; it must be proper with `p ∤ |M ∩ M^g|` for `g ∉ M`.
pub fn strongly_p_embedded(h: &PermGroup, p: u64) -> bool {
    if h.order_u64() % p != 0 {
        return false;
    }
    let t = sylow(h, p).expect("sylow");
    let table = PGroupTable::new(&t).expect("small sylow");
    let mut m = normalizer(h, &t);
    for u in subgroups(&table) {
        if u.count() > 1 {
            m = m.extend(normalizer(h, &table.to_group(&u)).generators());
        }
    }
    if m.order() == h.order() {
        return false;
    }
    for g in right_transversal(h, &m, u64::MAX).expect("transversal") {
        if m.contains(&g) {
            continue;
        }
        if intersection(&m, &m.conjugate(&g)).order_u64() % p == 0 {
            return false;
        }
    }
    true
}

fn add(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8).collect()
}

fn act(v: &[u8], m: &Matrix, p: u32) -> Vec<u8> {
    (0..m.cols())
        .map(|j| ((0..v.len()).map(|i| v[i] as u32 * m.get(i, j) as u32).sum::<u32>() % p) as u8)
        .collect()
}

/// Every vector of the submodule generated by `v`, by closing under sums
/// and the actors.
pub fn submodule_of(actors: &[Matrix], v: &[u8], p: u32) -> BTreeSet<Vec<u8>> {
    let mut set: BTreeSet<Vec<u8>> = BTreeSet::from([vec![0; v.len()]]);
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if set.contains(&w) {
            continue;
        }
        set.insert(w.clone());
        let cur: Vec<Vec<u8>> = set.iter().cloned().collect();
        for u in cur {
            queue.push(add(&u, &w, p));
        }
        for a in actors {
            queue.push(act(&w, a, p));
        }
    }
    set
}

fn all_vectors(dim: usize, p: u32) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| (0..p as u8).map(move |c| [v.clone(), vec![c]].concat()))
            .collect();
    }
    out
}

/// Irreducible iff every nonzero vector generates the whole space.
pub fn is_irreducible(actors: &[Matrix], dim: usize, p: u32) -> bool {
    let total = (p as usize).pow(dim as u32);
    all_vectors(dim, p)
        .into_iter()
        .filter(|v| v.iter().any(|&c| c != 0))
        .all(|v| submodule_of(actors, &v, p).len() == total)
}

/// `|End(V)|` for irreducible `V`: an endomorphism is fixed by the image of
/// one generating vector, so try every image and check consistency.
pub fn endomorphism_count(actors: &[Matrix], dim: usize, p: u32) -> usize {
    let mut v = vec![0u8; dim];
    v[0] = 1;
    // words: pairs (vector, path of actor indices), breadth first
    let mut reached: Vec<(Vec<u8>, Vec<usize>)> = vec![(v.clone(), vec![])];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([v.clone()]);
    let mut k = 0;
    while k < reached.len() {
        let (w, path) = reached[k].clone();
        k += 1;
        for (i, a) in actors.iter().enumerate() {
            let u = act(&w, a, p);
            if seen.insert(u.clone()) {
                let mut np = path.clone();
                np.push(i);
                reached.push((u, np));
            }
        }
    }
    let index: std::collections::HashMap<Vec<u8>, usize> =
        reached.iter().enumerate().map(|(i, (w, _))| (w.clone(), i)).collect();
    let mut count = 0;
    'img: for img in all_vectors(dim, p) {
        // the map sends each reached vector w = v·word to img·word
        let images: Vec<Vec<u8>> = reached
            .iter()
            .map(|(_, path)| path.iter().fold(img.clone(), |x, &i| act(&x, &actors[i], p)))
            .collect();
        // linear: solve for the matrix on a basis from reached vectors, check all
        let mut basis: Vec<usize> = Vec::new();
        let mut span: BTreeSet<Vec<u8>> = BTreeSet::from([vec![0; dim]]);
        for (i, (w, _)) in reached.iter().enumerate() {
            if !span.contains(w) {
                basis.push(i);
                let cur: Vec<Vec<u8>> = span.iter().cloned().collect();
                for c in 1..p as u8 {
                    let cw: Vec<u8> = w.iter().map(|&x| ((x as u32 * c as u32) % p) as u8).collect();
                    for u in &cur {
                        span.insert(add(u, &cw, p));
                    }
                }
            }
        }
        if basis.len() < dim {
            return 0;
        }
        // evaluate φ on each reached vector via its coordinates in the basis
        for (i, (w, _)) in reached.iter().enumerate() {
            let coords = coordinates(w, &basis.iter().map(|&b| reached[b].0.clone()).collect::<Vec<_>>(), p);
            let mut val = vec![0u8; dim];
            for (c, &b) in coords.iter().zip(&basis) {
                let t: Vec<u8> = images[b].iter().map(|&x| ((x as u32 * *c as u32) % p) as u8).collect();
                val = add(&val, &t, p);
            }
            if val != images[i] {
                continue 'img;
            }
            for a in actors {
                if images[index[&act(w, a, p)]] != act(&images[i], a, p) {
                    continue 'img;
                }
            }
        }
        count += 1;
    }
    count
}

/// Coordinates by exhaustive search over coefficient tuples.
fn coordinates(w: &[u8], basis: &[Vec<u8>], p: u32) -> Vec<u8> {
    for coeffs in all_vectors(basis.len(), p) {
        let mut s = vec![0u8; w.len()];
        for (c, b) in coeffs.iter().zip(basis) {
            let t: Vec<u8> = b.iter().map(|&x| ((x as u32 * *c as u32) % p) as u8).collect();
            s = add(&s, &t, p);
        }
        if s == w {
            return coeffs;
        }
    }
    unreachable!("basis spans the space")
}

/// Absolutely irreducible iff irreducible with `End(V) = F_p`.
pub fn is_absolutely_irreducible(actors: &[Matrix], dim: usize, p: u32) -> bool {
    is_irreducible(actors, dim, p) && endomorphism_count(actors, dim, p) == p as usize
}

/// A generating pair when one exists among the elements, else a greedy set.
fn short_generating_set(h: &PermGroup, elems: &[Permutation]) -> Vec<Permutation> {
    let order = h.order();
    let mut by_order: Vec<&Permutation> = elems.iter().collect();
    by_order.sort_by_key(|x| std::cmp::Reverse(x.order()));
    for (i, x) in by_order.iter().enumerate().take(64) {
        for y in &by_order[i + 1..] {
            let k = PermGroup::from_generators(h.degree(), vec![(*x).clone(), (*y).clone()]).unwrap();
            if k.order() == order {
                return vec![(*x).clone(), (*y).clone()];
            }
        }
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut cur = PermGroup::trivial(h.degree());
    for x in by_order {
        if !cur.contains(x) {
            gens.push(x.clone());
            cur = cur.extend(&[x.clone()]);
        }
    }
    gens
}

/// `|Aut(H)|` by trying every tuple of generator images: a tuple defines an
/// automorphism iff the graph `⟨(g_i, y_i)⟩ ≤ H × H` has order `|H|` and the
/// images generate `H`.
pub fn automorphism_count(h: &PermGroup) -> u64 {
    let n = h.degree();
    let elems = h.elements(u64::MAX);
    let order = h.order_u64();
    let gens = &short_generating_set(h, &elems);
    let pair = |a: &Permutation, b: &Permutation| -> Permutation {
        let mut imgs: Vec<u32> = a.images().to_vec();
        imgs.extend(b.images().iter().map(|&x| x + n as u32));
        Permutation::from_images(imgs).unwrap()
    };
    let cands: Vec<Vec<&Permutation>> = gens
        .iter()
        .map(|g| elems.iter().filter(|y| y.order() == g.order()).collect())
        .collect();
    let mut count = 0;
    let mut idx = vec![0usize; gens.len()];
    'outer: loop {
        let ys: Vec<&Permutation> = idx.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
        let graph = PermGroup::from_generators(2 * n, gens.iter().zip(&ys).map(|(g, y)| pair(g, y)).collect()).unwrap();
        if graph.order_u64() == order
            && PermGroup::from_generators(n, ys.iter().map(|y| (*y).clone()).collect()).unwrap().order_u64() == order
        {
            count += 1;
        }
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    count
}
