//! Regenerates the bundled catalog files in `data/`.
//!
//! Run with `cargo run --release --example gen_catalog -- <outdir>`.
//! Every group is rebuilt from a small seed construction and its order is
//! checked before the file is written.

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use fusionforge::catalog::{render, CatalogEntry, ClassLabel, OutData};
use fusionforge::permcore::{
    are_conjugate, coset_action, derived_subgroup, element_centralizer, ConjArg, PermGroup,
    Permutation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cyc(n: usize, c: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, c).unwrap()
}

fn group(n: usize, gens: Vec<Permutation>, order: u64) -> PermGroup {
    let g = PermGroup::from_generators(n, gens).unwrap();
    assert_eq!(g.order_u64(), order, "order check");
    g
}

/// Two random elements generating `g`, to keep files short.
fn small_gens(g: &PermGroup, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    for _ in 0..200 {
        let a = g.random_element(rng);
        let b = g.random_element(rng);
        let h = PermGroup::from_generators(g.degree(), vec![a.clone(), b.clone()]).unwrap();
        if h.order() == g.order() {
            return vec![a, b];
        }
    }
    panic!("no 2-generation found")
}

/// Classes of elements of the given orders, labelled by decreasing centralizer order.
fn class_labels(g: &PermGroup, orders: &[u64], rng: &mut ChaCha8Rng) -> Vec<ClassLabel> {
    let n = g.order_u64();
    let mut found: Vec<(u64, Permutation, u64)> = Vec::new();
    for _ in 0..1500 {
        let x = g.random_element(rng);
        let o = x.order() as u64;
        for &k in orders {
            if o % k != 0 {
                continue;
            }
            let y = x.pow((o / k) as i64);
            let ct = y.cycle_type();
            let known = found.iter().any(|(kk, r, _)| {
                *kk == k
                    && r.cycle_type() == ct
                    && are_conjugate(g, ConjArg::Element(r), ConjArg::Element(&y)).is_some()
            });
            if !known {
                let c = element_centralizer(g, &y).order_u64();
                found.push((k, y, c));
            }
        }
    }
    let mut out = Vec::new();
    for &k in orders {
        let mut cl: Vec<&(u64, Permutation, u64)> = found.iter().filter(|c| c.0 == k).collect();
        let total: u64 = cl.iter().map(|c| n / c.2).sum();
        cl.sort_by(|a, b| b.2.cmp(&a.2).then(a.1.cycle_type().cmp(&b.1.cycle_type())));
        for (i, c) in cl.iter().enumerate() {
            let fp = (c.1.cycle_type(), c.2);
            let clash = cl
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && (d.1.cycle_type(), d.2) == fp);
            if clash {
                eprintln!("  skipping ambiguous class of order {} (centralizer {})", k, c.2);
                continue;
            }
            out.push(ClassLabel {
                label: format!("{}{}", k, (b'a' + i as u8) as char),
                element_order: k,
                cycle_type: c.1.cycle_type(),
                centralizer_order: c.2,
                power: None,
            });
        }
        eprintln!("  order {}: {} classes, {} elements", k, cl.len(), total);
    }
    out
}

fn expect_centralizers(labels: &[ClassLabel], want: &[(&str, u64)]) {
    for (l, c) in want {
        let got = labels.iter().find(|x| x.label == *l).map(|x| x.centralizer_order);
        assert_eq!(got, Some(*c), "class {}", l);
    }
}

fn entry(name: &str, g: &PermGroup, gens: &[Permutation], labels: Vec<ClassLabel>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        degree: g.degree(),
        generators: gens.iter().map(|x| x.to_string()).collect(),
        order_hint: Some(g.order().to_string()),
        class_labels: labels,
        out_data: None,
        notes: Vec::new(),
    }
}

fn out_same_degree(order: u64, gens: &[Permutation]) -> Option<OutData> {
    Some(OutData {
        out_order: order,
        degree: gens.first().map_or(0, |g| g.degree()),
        overgroup_generators: gens.iter().map(|x| x.to_string()).collect(),
        embedding: Vec::new(),
    })
}

// ---------------------------------------------------------------- Golay

fn m24() -> PermGroup {
    let c23: Vec<usize> = (1..=23).collect();
    group(
        24,
        vec![
            cyc(24, &[&c23]),
            cyc(
                24,
                &[&[3, 17, 10, 7, 9], &[4, 13, 14, 19, 5], &[8, 18, 11, 12, 23], &[15, 20, 22, 21, 16]],
            ),
            cyc(
                24,
                &[
                    &[1, 24], &[2, 23], &[3, 12], &[4, 16], &[5, 18], &[6, 10], &[7, 20], &[8, 14],
                    &[9, 21], &[11, 17], &[13, 22], &[15, 19],
                ],
            ),
        ],
        244823040,
    )
}

fn reduce(basis: &mut Vec<u32>, v: u32) -> bool {
    let mut v = v;
    for &b in basis.iter() {
        let top = 31 - b.leading_zeros();
        if v >> top & 1 == 1 {
            v ^= b;
        }
    }
    if v == 0 {
        return false;
    }
    basis.push(v);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    // keep echelon form
    let mut out: Vec<u32> = Vec::new();
    for mut b in basis.drain(..) {
        for &c in &out {
            let top = 31 - c.leading_zeros();
            if b >> top & 1 == 1 {
                b ^= c;
            }
        }
        if b != 0 {
            out.push(b);
            out.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    *basis = out;
    true
}

fn in_span(basis: &[u32], v: u32) -> bool {
    let mut b = basis.to_vec();
    !reduce(&mut b, v)
}

fn act_word(g: &Permutation, v: u32) -> u32 {
    let mut w = 0;
    for i in 0..24 {
        if v >> i & 1 == 1 {
            w |= 1 << g.apply(i);
        }
    }
    w
}

fn span_all(basis: &[u32]) -> Vec<u32> {
    let mut words = vec![0u32];
    for &b in basis {
        let more: Vec<u32> = words.iter().map(|w| w ^ b).collect();
        words.extend(more);
    }
    words
}

/// Extended quadratic-residue code of length 24, relabelled until M24 preserves it.
fn golay(m: &PermGroup) -> Vec<u32> {
    let q: HashSet<usize> = (1..23).map(|x| x * x % 23).collect();
    for use_q in [true, false] {
        for off in 0..23 {
            let mut basis = Vec::new();
            for s in 0..23 {
                let mut v = 0u32;
                let mut par = 0;
                for r in 0..23usize {
                    let member = if use_q { q.contains(&r) } else { r != 0 && !q.contains(&r) };
                    if member {
                        let pt = (r + s + off) % 23;
                        v |= 1 << pt;
                        par ^= 1;
                    }
                }
                if par == 1 {
                    v |= 1 << 23;
                }
                reduce(&mut basis, v);
            }
            reduce(&mut basis, (1u32 << 24) - 1);
            if basis.len() != 12 {
                continue;
            }
            let ok = m
                .generators()
                .iter()
                .all(|g| basis.iter().all(|&b| in_span(&basis, act_word(g, b))));
            if ok {
                let words = span_all(&basis);
                assert!(words.iter().all(|w| [0, 8, 12, 16, 24].contains(&w.count_ones())));
                return basis;
            }
        }
    }
    panic!("no invariant labelling found");
}

fn restrict(g: &Permutation, pts: &[u32]) -> Permutation {
    let idx: HashMap<u32, u32> = pts.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    Permutation::from_images(pts.iter().map(|&p| idx[&g.apply(p)]).collect()).unwrap()
}

/// Checks that `a_i ↦ b_i` extends to an isomorphism by building the diagonal group.
fn check_iso(a: &[Permutation], b: &[Permutation], order: u64) {
    let da = a[0].degree();
    let db = b[0].degree();
    let diag: Vec<Permutation> = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let mut im: Vec<u32> = x.images().to_vec();
            im.extend(y.images().iter().map(|&v| v + da as u32));
            Permutation::from_images(im).unwrap()
        })
        .collect();
    group(da + db, diag, order);
}

// ---------------------------------------------------------------- graphs

struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl Graph {
    fn new(n: usize) -> Self {
        assert!(n <= 128);
        Graph { n, adj: vec![0; n] }
    }

    fn add(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    fn has(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    fn srg(&self) -> Option<(usize, usize, usize)> {
        let k = self.adj[0].count_ones() as usize;
        let (mut lam, mut mu) = (None, None);
        for a in 0..self.n {
            if self.adj[a].count_ones() as usize != k || self.has(a, a) {
                return None;
            }
            for b in a + 1..self.n {
                let c = (self.adj[a] & self.adj[b]).count_ones() as usize;
                let slot = if self.has(a, b) { &mut lam } else { &mut mu };
                match slot {
                    None => *slot = Some(c),
                    Some(x) if *x == c => {}
                    _ => return None,
                }
            }
        }
        Some((k, lam?, mu?))
    }

    fn refine(&self, colors: &[u32]) -> Vec<u32> {
        let mut cur = colors.to_vec();
        let mut ncol = cur.iter().copied().max().unwrap_or(0) as usize + 1;
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..self.n)
                .map(|v| {
                    let mut cnt = vec![0u32; ncol];
                    for w in 0..self.n {
                        if self.has(v, w) {
                            cnt[cur[w] as usize] += 1;
                        }
                    }
                    (cur[v], cnt)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).unwrap() as u32)
                .collect();
            if distinct.len() == ncol {
                return next;
            }
            ncol = distinct.len();
            cur = next;
        }
    }

    fn individualize(&self, colors: &[u32], v: usize) -> Vec<u32> {
        let mut c = colors.to_vec();
        c[v] = self.n as u32 + 1;
        self.refine(&c)
    }

    fn target_cell(colors: &[u32]) -> Option<u32> {
        let mut count: HashMap<u32, usize> = HashMap::new();
        for &c in colors {
            *count.entry(c).or_default() += 1;
        }
        count
            .into_iter()
            .filter(|&(_, k)| k > 1)
            .min_by_key(|&(c, k)| (k, c))
            .map(|(c, _)| c)
    }

    fn extend(&self, cs: &[u32], ct: &[u32]) -> Option<Vec<u32>> {
        let mut hs = cs.to_vec();
        let mut ht = ct.to_vec();
        hs.sort_unstable();
        ht.sort_unstable();
        if hs != ht {
            return None;
        }
        match Self::target_cell(cs) {
            None => {
                let mut map = vec![0u32; self.n];
                for v in 0..self.n {
                    map[v] = (0..self.n).find(|&w| ct[w] == cs[v]).unwrap() as u32;
                }
                let ok = (0..self.n).all(|a| {
                    (0..self.n).all(|b| self.has(a, b) == self.has(map[a] as usize, map[b] as usize))
                });
                ok.then_some(map)
            }
            Some(c) => {
                let v = (0..self.n).find(|&v| cs[v] == c).unwrap();
                let cs2 = self.individualize(cs, v);
                for w in (0..self.n).filter(|&w| ct[w] == c) {
                    let ct2 = self.individualize(ct, w);
                    if let Some(m) = self.extend(&cs2, &ct2) {
                        return Some(m);
                    }
                }
                None
            }
        }
    }

    /// Generators of the automorphism group, by search along one refinement path.
    fn automorphisms(&self) -> Vec<Permutation> {
        let mut path = Vec::new();
        let mut cols = vec![self.refine(&vec![0; self.n])];
        while let Some(c) = Self::target_cell(cols.last().unwrap()) {
            let last = cols.last().unwrap();
            let v = (0..self.n).find(|&v| last[v] == c).unwrap();
            path.push(v);
            cols.push(self.individualize(last, v));
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for l in (0..path.len()).rev() {
            let before = &cols[l];
            let cell = before[path[l]];
            let stab: Vec<Permutation> = gens
                .iter()
                .filter(|g| path[..l].iter().all(|&b| g.apply(b as u32) == b as u32))
                .cloned()
                .collect();
            let mut orbit: HashSet<u32> = orbit_set(&stab, path[l] as u32);
            for w in 0..self.n {
                if before[w] != cell || orbit.contains(&(w as u32)) {
                    continue;
                }
                let ct = self.individualize(before, w);
                let g = self.extend(&cols[l + 1], &ct);
                let mut s2 = stab.clone();
                if let Some(m) = g {
                    let p = Permutation::from_images(m).unwrap();
                    gens.push(p.clone());
                    s2.push(p);
                    let stab2: Vec<Permutation> = gens
                        .iter()
                        .filter(|g| path[..l].iter().all(|&b| g.apply(b as u32) == b as u32))
                        .cloned()
                        .collect();
                    orbit = orbit_set(&stab2, path[l] as u32);
                } else {
                    orbit.extend(orbit_set(&stab, w as u32));
                }
            }
        }
        gens
    }
}

fn orbit_set(gens: &[Permutation], x: u32) -> HashSet<u32> {
    let mut seen = HashSet::from([x]);
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in gens {
            let z = g.apply(y);
            if seen.insert(z) {
                stack.push(z);
            }
        }
    }
    seen
}

// ---------------------------------------------------------------- HS

fn higman_sims(m: &PermGroup, code: &[u32]) -> Graph {
    let words = span_all(code);
    let both = (1u32 << 22) | (1u32 << 23);
    let mut hexads: Vec<u32> = words
        .iter()
        .filter(|w| w.count_ones() == 8 && *w & both == both)
        .map(|w| w & !both)
        .collect();
    hexads.sort_unstable();
    assert_eq!(hexads.len(), 77);
    let _ = m;
    let mut gr = Graph::new(100);
    for p in 0..22 {
        gr.add(0, 1 + p);
    }
    for (i, &h) in hexads.iter().enumerate() {
        for p in 0..22 {
            if h >> p & 1 == 1 {
                gr.add(1 + p, 23 + i);
            }
        }
        for (j, &h2) in hexads.iter().enumerate().skip(i + 1) {
            if h & h2 == 0 {
                gr.add(23 + i, 23 + j);
            }
        }
    }
    gr
}

// ---------------------------------------------------------------- J2 via U3(3)

/// F9 = F3[i], encoded a + 3b.
fn f9_mul(x: u8, y: u8) -> u8 {
    let (a, b) = ((x % 3) as i32, (x / 3) as i32);
    let (c, d) = ((y % 3) as i32, (y / 3) as i32);
    let re = (a * c - b * d).rem_euclid(3);
    let im = (a * d + b * c).rem_euclid(3);
    (re + 3 * im) as u8
}

fn f9_add(x: u8, y: u8) -> u8 {
    ((x % 3 + y % 3) % 3) + 3 * ((x / 3 + y / 3) % 3)
}

fn f9_conj(x: u8) -> u8 {
    (x % 3) + 3 * ((3 - x / 3) % 3)
}

fn f9_inv(x: u8) -> u8 {
    (1..9).find(|&y| f9_mul(x, y) == 1).unwrap()
}

type M3 = [[u8; 3]; 3];

fn vec_mat(v: [u8; 3], m: &M3) -> [u8; 3] {
    let mut out = [0u8; 3];
    for (j, o) in out.iter_mut().enumerate() {
        let mut s = 0;
        for k in 0..3 {
            s = f9_add(s, f9_mul(v[k], m[k][j]));
        }
        *o = s;
    }
    out
}

fn normalize9(v: [u8; 3]) -> [u8; 3] {
    let lead = *v.iter().find(|&&x| x != 0).unwrap();
    let inv = f9_inv(lead);
    [f9_mul(v[0], inv), f9_mul(v[1], inv), f9_mul(v[2], inv)]
}

fn herm(u: [u8; 3], v: [u8; 3]) -> u8 {
    let mut s = 0;
    for k in 0..3 {
        s = f9_add(s, f9_mul(u[k], f9_conj(v[k])));
    }
    s
}

fn is_unitary(m: &M3) -> bool {
    (0..3).all(|a| (0..3).all(|b| herm(m[a], m[b]) == if a == b { 1 } else { 0 }))
}

fn u33_on_points() -> (PermGroup, Vec<[u8; 3]>) {
    let mut pts: Vec<[u8; 3]> = Vec::new();
    for a in 0..9 {
        for b in 0..9 {
            for c in 0..9 {
                let v = [a, b, c];
                if v != [0, 0, 0] && normalize9(v) == v && herm(v, v) != 0 {
                    pts.push(v);
                }
            }
        }
    }
    assert_eq!(pts.len(), 63);
    let index: HashMap<[u8; 3], u32> = pts.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut mats: Vec<M3> = vec![
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[3, 0, 0], [0, 1, 0], [0, 0, 1]],
    ];
    'outer: for a in 1..9 {
        for b in 1..9 {
            for c in 1..9 {
                for d in 1..9 {
                    let m = [[a, b, 0], [c, d, 0], [0, 0, 1]];
                    if is_unitary(&m) {
                        mats.push(m);
                        break 'outer;
                    }
                }
            }
        }
    }
    assert!(mats.iter().all(is_unitary));
    let gens: Vec<Permutation> = mats
        .iter()
        .map(|m| {
            Permutation::from_images(pts.iter().map(|&v| index[&normalize9(vec_mat(v, m))]).collect())
                .unwrap()
        })
        .collect();
    // PGU(3,3) also contains U3(3) with index 1
    (group(63, gens, 6048), pts)
}

fn subsets_with_sum(sizes: &[usize], target: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << sizes.len()) {
        let s: usize = (0..sizes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| sizes[i]).sum();
        if s == target {
            out.push((0..sizes.len()).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Element of `gens`-group carrying `from` to each point, by BFS.
fn transversal(gens: &[Permutation], from: u32, degree: usize) -> Vec<Option<Permutation>> {
    let mut t: Vec<Option<Permutation>> = vec![None; degree];
    t[from as usize] = Some(Permutation::identity(degree));
    let mut queue = vec![from];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for g in gens {
            let y = g.apply(x);
            if t[y as usize].is_none() {
                t[y as usize] = Some(t[x as usize].as_ref().unwrap().mul(g));
                queue.push(y);
            }
        }
    }
    t
}

fn hall_janko(rng: &mut ChaCha8Rng) -> Graph {
    let (u, _pts) = u33_on_points();
    // a subgroup L2(7) of index 36
    let mut h = None;
    for _ in 0..20000 {
        let x = u.random_element(rng);
        let y = u.random_element(rng);
        let (ox, oy) = (x.order() as i64, y.order() as i64);
        if ox % 2 != 0 || oy % 3 != 0 {
            continue;
        }
        let a = x.pow(ox / 2);
        let b = y.pow(oy / 3);
        let s = PermGroup::from_generators(63, vec![a, b]).unwrap();
        if s.order_u64() == 168 {
            h = Some(s);
            break;
        }
    }
    let h = h.expect("L2(7) not found");
    let act = coset_action(&u, &h, 1000).unwrap();
    assert_eq!(act.index(), 36);
    // combined action on 36 + 63 points
    let comb: Vec<Permutation> = u
        .generators()
        .iter()
        .zip(&act.gen_images)
        .map(|(g, c)| {
            let mut im: Vec<u32> = c.images().to_vec();
            im.extend(g.images().iter().map(|&v| v + 36));
            Permutation::from_images(im).unwrap()
        })
        .collect();
    let uc = group(99, comb.clone(), 6048);
    let orbits_of_stab = |x: u32, range: std::ops::Range<u32>| -> Vec<Vec<u32>> {
        let stab = uc.rebased(&[x]);
        let sg: Vec<Permutation> = stab.levels().get(1).map_or(Vec::new(), |l| l.gens.clone());
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for y in range {
            if y == x || seen.contains(&y) {
                continue;
            }
            let o = orbit_set(&sg, y);
            seen.extend(o.iter().copied());
            let mut o: Vec<u32> = o.into_iter().collect();
            o.sort_unstable();
            out.push(o);
        }
        out
    };
    let s36 = orbits_of_stab(0, 0..36);
    let s36_63 = orbits_of_stab(0, 36..99);
    let s63 = orbits_of_stab(36, 36..99);
    let t36 = transversal(&comb, 0, 99);
    let t63 = transversal(&comb, 36, 99);
    let sz = |v: &Vec<Vec<u32>>| v.iter().map(|o| o.len()).collect::<Vec<_>>();
    for a in subsets_with_sum(&sz(&s36), 14) {
        for b in subsets_with_sum(&sz(&s36_63), 21) {
            for c in subsets_with_sum(&sz(&s63), 24) {
                let mut gr = Graph::new(100);
                for v in 0..36u32 {
                    gr.add(99, v as usize);
                    let t = t36[v as usize].as_ref().unwrap();
                    for &i in &a {
                        for &w in &s36[i] {
                            gr.add(v as usize, t.apply(w) as usize);
                        }
                    }
                    for &i in &b {
                        for &w in &s36_63[i] {
                            gr.add(v as usize, t.apply(w) as usize);
                        }
                    }
                }
                for v in 36..99u32 {
                    let t = t63[v as usize].as_ref().unwrap();
                    for &i in &c {
                        for &w in &s63[i] {
                            gr.add(v as usize, t.apply(w) as usize);
                        }
                    }
                }
                if gr.srg() == Some((36, 14, 12)) {
                    return gr;
                }
            }
        }
    }
    panic!("no Hall-Janko graph among the orbital unions")
}

// ---------------------------------------------------------------- J1

const P11: i64 = 11;

type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % P11;
            }
        }
    }
    c
}

fn mat_id(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

fn vec_mat11(v: &[i64], m: &Mat) -> Vec<i64> {
    let n = v.len();
    (0..n)
        .map(|j| (0..n).map(|k| v[k] * m[k][j]).sum::<i64>().rem_euclid(P11))
        .collect()
}

fn inv11(x: i64) -> i64 {
    (1..P11).find(|y| (x * y).rem_euclid(P11) == 1).unwrap()
}

fn normalize11(v: &[i64]) -> Vec<i64> {
    let lead = *v.iter().find(|&&x| x != 0).unwrap();
    let i = inv11(lead);
    v.iter().map(|x| (x * i).rem_euclid(P11)).collect()
}

/// Left null vector of `m - I`.
fn fixed_vector(m: &Mat) -> Option<Vec<i64>> {
    let n = m.len();
    // rows of (m - I)^T so that v (m - I) = 0 becomes A v^T = 0
    let mut a: Mat = (0..n)
        .map(|j| (0..n).map(|k| (m[k][j] - (k == j) as i64).rem_euclid(P11)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let iv = inv11(a[r][c]);
        for x in a[r].iter_mut() {
            *x = (*x * iv).rem_euclid(P11);
        }
        for i in 0..n {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] - f * a[r][j]).rem_euclid(P11);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![0; n];
    v[free] = 1;
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = (-a[row][free]).rem_euclid(P11);
    }
    Some(v)
}

fn j1(rng: &mut ChaCha8Rng) -> (PermGroup, Vec<Permutation>) {
    let mut y = vec![vec![0i64; 7]; 7];
    for i in 0..7 {
        y[i][(i + 1) % 7] = 1;
    }
    let zr: [[i64; 7]; 7] = [
        [-3, 2, -1, -1, -3, -1, -3],
        [-2, 1, 1, 3, 1, 3, 3],
        [-1, -1, -3, -1, -3, -3, 2],
        [-1, -3, -1, -3, -3, 2, -1],
        [-3, -1, -3, -3, 2, -1, -1],
        [1, 3, 3, -2, 1, 1, 3],
        [3, 3, -2, 1, 1, 3, 1],
    ];
    let z: Mat = zr.iter().map(|r| r.iter().map(|x| x.rem_euclid(P11)).collect()).collect();
    let gens = [y, z];
    // an element of order 19 fixes a unique projective point
    let mut m = mat_id(7);
    let start = loop {
        m = mat_mul(&m, &gens[rng.gen_range(0..2)]);
        let mut k = m.clone();
        let mut o = 1;
        while k != mat_id(7) && o < 40 {
            k = mat_mul(&k, &m);
            o += 1;
        }
        if o == 19 {
            break normalize11(&fixed_vector(&m).unwrap());
        }
    };
    let mut pts = vec![start.clone()];
    let mut index: HashMap<Vec<i64>, u32> = HashMap::from([(start, 0)]);
    let mut k = 0;
    while k < pts.len() {
        for g in &gens {
            let w = normalize11(&vec_mat11(&pts[k], g));
            if !index.contains_key(&w) {
                index.insert(w.clone(), pts.len() as u32);
                pts.push(w);
            }
        }
        k += 1;
    }
    assert_eq!(pts.len(), 1540);
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|g| {
            Permutation::from_images(pts.iter().map(|v| index[&normalize11(&vec_mat11(v, g))]).collect())
                .unwrap()
        })
        .collect();
    let big = group(1540, perms, 175560);
    let mut h = None;
    for _ in 0..100000 {
        let a = big.random_element(rng);
        let b = big.random_element(rng);
        let (oa, ob) = (a.order() as i64, b.order() as i64);
        if oa % 2 != 0 || ob % 3 != 0 {
            continue;
        }
        let a = a.pow(oa / 2);
        let b = b.pow(ob / 3);
        let orbs_ok = orbit_set(&[a.clone(), b.clone()], 0).len() <= 660;
        if !orbs_ok {
            continue;
        }
        let s = PermGroup::from_generators(1540, vec![a, b]).unwrap();
        if s.order_u64() == 660 {
            h = Some(s);
            break;
        }
    }
    let h = h.expect("L2(11) not found");
    let act = coset_action(&big, &h, 1000).unwrap();
    assert_eq!(act.index(), 266);
    let g = group(266, act.gen_images.clone(), 175560);
    (g, act.gen_images.clone())
}

// ---------------------------------------------------------------- AGammaL(1,16)

fn gf16_mul(a: u32, b: u32) -> u32 {
    let mut r = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 0x10 != 0 {
            a ^= 0x13;
        }
    }
    r
}

fn agaml16() -> PermGroup {
    let f = |h: &dyn Fn(u32) -> u32| Permutation::from_images((0..16).map(h).collect()).unwrap();
    let t = f(&|x| x ^ 1);
    let w = f(&|x| gf16_mul(x, 2));
    let fr = f(&|x| gf16_mul(x, x));
    group(16, vec![t, w, fr], 960)
}

// ---------------------------------------------------------------- main

fn main() {
    let outdir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&outdir).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let write = |file: &str, e: CatalogEntry| {
        let text = render(&[e]);
        std::fs::write(outdir.join(file), text).unwrap();
        eprintln!("wrote {}", file);
    };

    for n in 4..=8usize {
        eprintln!("S{}", n);
        let g = PermGroup::symmetric(n);
        let labels = class_labels(&g, &[2, 3], &mut rng);
        let mut e = entry(&format!("S{}", n), &g, g.generators(), labels);
        if n != 6 {
            e.out_data = out_same_degree(1, &[]).map(|mut o| {
                o.degree = n;
                o
            });
        }
        write(&format!("s{}.grp", n), e);
    }
    for n in 5..=9usize {
        eprintln!("A{}", n);
        let g = PermGroup::alternating(n);
        let gens = small_gens(&g, &mut rng);
        let labels = class_labels(&g, &[2, 3], &mut rng);
        let mut e = entry(&format!("A{}", n), &g, &gens, labels);
        if n != 6 {
            let s = PermGroup::symmetric(n);
            let mut og = gens.clone();
            og.push(cyc(n, &[&[1, 2]]));
            assert_eq!(PermGroup::from_generators(n, og.clone()).unwrap().order(), s.order());
            e.out_data = out_same_degree(2, &og);
        }
        write(&format!("a{}.grp", n), e);
    }

    eprintln!("GL3(2)");
    let gl = group(7, vec![cyc(7, &[&[1, 2, 3, 4, 5, 6, 7]]), cyc(7, &[&[2, 3], &[4, 7]])], 168);
    let labels = class_labels(&gl, &[2, 3], &mut rng);
    let mut e = entry("GL3(2)", &gl, gl.generators(), labels);
    e.notes.push("acting on the seven points of the Fano plane".into());
    write("gl3_2.grp", e);

    eprintln!("M11");
    let c11: Vec<usize> = (1..=11).collect();
    let m11 = group(11, vec![cyc(11, &[&c11]), cyc(11, &[&[3, 7, 11, 8], &[4, 10, 5, 6]])], 7920);
    let labels = class_labels(&m11, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 48), ("3a", 18)]);
    let mut e = entry("M11", &m11, m11.generators(), labels);
    e.out_data = Some(OutData {
        out_order: 1,
        degree: 11,
        overgroup_generators: Vec::new(),
        embedding: Vec::new(),
    });
    write("m11.grp", e);

    eprintln!("M24");
    let m = m24();
    let labels = class_labels(&m, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 21504), ("2b", 7680)]);
    let mut e = entry("M24", &m, m.generators(), labels);
    e.out_data = Some(OutData {
        out_order: 1,
        degree: 24,
        overgroup_generators: Vec::new(),
        embedding: Vec::new(),
    });
    e.notes.push("large; analyses at p = 2 are opt-in".into());
    write("m24.grp", e);

    eprintln!("Golay code");
    let code = golay(&m);
    let dodecad = *span_all(&code).iter().find(|w| w.count_ones() == 12).unwrap();
    let comp = !dodecad & ((1 << 24) - 1);

    eprintln!("M12 and M12:2");
    let mut keep = Vec::new();
    let mut swap = None;
    let mut m12 = PermGroup::trivial(24);
    while m12.order_u64() != 95040 || swap.is_none() {
        let g = m.random_element(&mut rng);
        let img = act_word(&g, dodecad);
        if img == dodecad {
            keep.push(g.clone());
            m12 = m12.extend(&[g]);
        } else if img == comp && swap.is_none() {
            swap = Some(g);
        }
    }
    let m12_24 = small_gens(&m12, &mut rng);
    let dpts: Vec<u32> = (0..24).filter(|i| dodecad >> i & 1 == 1).collect();
    let m12_12: Vec<Permutation> = m12_24.iter().map(|g| restrict(g, &dpts)).collect();
    let g12 = group(12, m12_12.clone(), 95040);
    check_iso(&m12_12, &m12_24, 95040);
    let mut og = m12_24.clone();
    og.push(swap.unwrap());
    group(24, og.clone(), 190080);
    let labels = class_labels(&g12, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 240), ("2b", 192), ("3a", 54), ("3b", 36)]);
    let mut e = entry("M12", &g12, &m12_12, labels);
    e.out_data = Some(OutData {
        out_order: 2,
        degree: 24,
        overgroup_generators: og.iter().map(|x| x.to_string()).collect(),
        embedding: m12_24.iter().map(|x| x.to_string()).collect(),
    });
    e.notes.push("overgroup M12:2 on the 24 points of a dodecad pair".into());
    write("m12.grp", e);

    eprintln!("M22 and M22:2");
    let chain = m.rebased(&[23, 22]);
    let pstab: Vec<Permutation> = chain.levels()[2].gens.clone();
    let pts22: Vec<u32> = (0..22).collect();
    let m22 = group(22, pstab.iter().map(|g| restrict(g, &pts22)).collect(), 443520);
    let m22g = small_gens(&m22, &mut rng);
    let sw = loop {
        let g = m.random_element(&mut rng);
        if g.apply(22) == 23 && g.apply(23) == 22 {
            break restrict(&g, &pts22);
        }
    };
    let mut og = m22g.clone();
    og.push(sw);
    group(22, og.clone(), 887040);
    let labels = class_labels(&m22, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 384)]);
    let mut e = entry("M22", &m22, &m22g, labels);
    e.out_data = out_same_degree(2, &og);
    e.notes.push("overgroup M22:2 as the stabilizer of a pair of points in M24".into());
    write("m22.grp", e);

    eprintln!("HS and HS:2");
    let hsg = higman_sims(&m, &code);
    assert_eq!(hsg.srg(), Some((22, 0, 6)));
    let auts = hsg.automorphisms();
    let hs2 = group(100, auts, 88704000);
    let hs = derived_subgroup(&hs2);
    assert_eq!(hs.order_u64(), 44352000);
    let hsgens = small_gens(&hs, &mut rng);
    let outer = hs2.generators().iter().find(|g| !hs.contains(g)).unwrap().clone();
    let mut og = hsgens.clone();
    og.push(outer);
    group(100, og.clone(), 88704000);
    let labels = class_labels(&hs, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 7680), ("2b", 2880)]);
    let mut e = entry("HS", &hs, &hsgens, labels);
    e.out_data = out_same_degree(2, &og);
    e.notes.push("acting on the Higman-Sims graph".into());
    write("hs.grp", e);

    eprintln!("J2 and J2:2");
    let hj = hall_janko(&mut rng);
    let auts = hj.automorphisms();
    let j22 = group(100, auts, 1209600);
    let j2 = derived_subgroup(&j22);
    assert_eq!(j2.order_u64(), 604800);
    let j2gens = small_gens(&j2, &mut rng);
    let outer = j22.generators().iter().find(|g| !j2.contains(g)).unwrap().clone();
    let mut og = j2gens.clone();
    og.push(outer);
    group(100, og.clone(), 1209600);
    let labels = class_labels(&j2, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 1920), ("2b", 240), ("3a", 1080), ("3b", 36)]);
    let mut e = entry("J2", &j2, &j2gens, labels);
    e.out_data = out_same_degree(2, &og);
    e.notes.push("acting on the Hall-Janko graph".into());
    write("j2.grp", e);

    eprintln!("J1");
    let (j1g, j1gens) = j1(&mut rng);
    let labels = class_labels(&j1g, &[2, 3], &mut rng);
    expect_centralizers(&labels, &[("2a", 120), ("3a", 30)]);
    let mut e = entry("J1", &j1g, &j1gens, labels);
    e.out_data = Some(OutData {
        out_order: 1,
        degree: 266,
        overgroup_generators: Vec::new(),
        embedding: Vec::new(),
    });
    e.notes.push("acting on the cosets of L2(11)".into());
    write("j1.grp", e);

    eprintln!("2^4:15:4");
    let ag = agaml16();
    let labels = class_labels(&ag, &[2, 3], &mut rng);
    let mut e = entry("2^4:15:4", &ag, ag.generators(), labels);
    e.notes.push("AGammaL(1,16) acting on the field of order 16".into());
    write("example_2_4_15_4.grp", e);
}
