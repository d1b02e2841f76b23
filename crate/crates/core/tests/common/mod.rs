#![allow(dead_code)]

use std::collections::BTreeSet;

use pathhom::coeff::CoefficientSystem;
use pathhom::complex::ChainComplex;
use pathhom::digraph::{validate_inclusion, Digraph, DigraphInclusion};
use pathhom::int::Int;
use pathhom::matrix::{normalize_sparse, SparseMatrix};
use pathhom::poset::Poset;
use pathhom::ring::{Integers, Ring};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SIZE: usize = 200;
pub const CORPUS_MAX_EDGES: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_digraph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize, based: Option<bool>) -> Digraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let arcs: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    let based = based.unwrap_or_else(|| rng.gen_bool(0.5));
    let base = based.then(|| rng.gen_range(0..n));
    Digraph::new(n, &arcs, base).unwrap()
}

/// The fixed randomized corpus: loops, parallel and antiparallel edges occur.
pub fn corpus() -> Vec<Digraph> {
    let mut r = rng(0x5eed_0001);
    (0..CORPUS_SIZE).map(|_| random_digraph(&mut r, 6, CORPUS_MAX_EDGES, None)).collect()
}

/// Vertex sequences of every simple path of `g` that uses only `allowed` edges,
/// as (vertices, edge set).
fn simple_paths_within(g: &Digraph, allowed: &BTreeSet<usize>) -> Vec<(Vec<usize>, BTreeSet<usize>)> {
    fn extend(g: &Digraph, allowed: &BTreeSet<usize>, verts: &mut Vec<usize>, edges: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, BTreeSet<usize>)>) {
        out.push((verts.clone(), edges.iter().copied().collect()));
        let last = *verts.last().unwrap();
        for &id in allowed {
            let e = g.edge(id);
            if e.tail == last && !verts.contains(&e.head) {
                verts.push(e.head);
                edges.push(id);
                extend(g, allowed, verts, edges, out);
                verts.pop();
                edges.pop();
            }
        }
    }
    let mut out = Vec::new();
    for &id in allowed {
        let e = g.edge(id);
        if e.tail != e.head {
            extend(g, allowed, &mut vec![e.tail, e.head], &mut vec![id], &mut out);
        }
    }
    out
}

/// Decides whether `edges` splits into vertex-disjoint simple paths by
/// searching over all simple paths inside the set.
pub fn brute_force_multipath(g: &Digraph, edges: &[usize]) -> bool {
    let set: BTreeSet<usize> = edges.iter().copied().collect();
    let paths = simple_paths_within(g, &set);
    fn search(paths: &[(Vec<usize>, BTreeSet<usize>)], remaining: &BTreeSet<usize>, used: &BTreeSet<usize>) -> bool {
        let Some(&first) = remaining.iter().next() else { return true };
        paths.iter().any(|(verts, es)| {
            es.contains(&first)
                && es.is_subset(remaining)
                && verts.iter().all(|v| !used.contains(v))
                && search(paths, &remaining.difference(es).copied().collect(), &used.union(&verts.iter().copied().collect()).copied().collect())
        })
    }
    search(&paths, &set, &BTreeSet::new())
}

/// A random poset on `n` elements whose index order is a linear extension.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let mut less = vec![vec![false; n]; n];
    for y in 0..n {
        for x in 0..y {
            if rng.gen_bool(0.5) {
                less[x][y] = true;
            }
        }
    }
    for z in 0..n {
        for x in 0..n {
            for y in 0..n {
                if less[x][z] && less[z][y] {
                    less[x][y] = true;
                }
            }
        }
    }
    Poset::from_relation(n, |x, y| less[x][y]).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> SparseMatrix<Int> {
    let z = Integers;
    let trip: Vec<(usize, usize, Int)> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, Int::from(rng.gen_range(-1i64..=1))))
        .collect();
    SparseMatrix::from_triplets(&z, rows, cols, trip)
}

/// A random integer coefficient system of rank at most 2, resampled until
/// every pair of routes through the poset gives the same composite.
pub fn random_coefficient_system(rng: &mut ChaCha8Rng, poset: &Poset) -> CoefficientSystem<Integers> {
    loop {
        let ranks: Vec<usize> = (0..poset.len()).map(|_| rng.gen_range(0..=2)).collect();
        let maps = (0..poset.len())
            .map(|x| poset.upper_covers(x).iter().map(|&y| random_matrix(rng, ranks[y], ranks[x])).collect())
            .collect();
        let cs = CoefficientSystem::new(Integers, poset.clone(), ranks, maps).unwrap();
        if (0..poset.len()).all(|x| cs.interval_composites(x, None, true).is_ok()) {
            return cs;
        }
    }
}

/// The weak-chain complex: generators are `x₀ ≤ ⋯ ≤ x_k` with repeats
/// allowed, tensored with a basis vector of `F(x₀)`. Built through `kmax`.
pub fn weak_chain_complex<R: Ring>(cs: &CoefficientSystem<R>, kmax: usize) -> ChainComplex<R> {
    let ring = cs.ring();
    let poset = cs.poset();
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..poset.len()).map(|x| vec![x]).collect()];
    for k in 1..=kmax {
        let mut next = Vec::new();
        for c in &chains[k - 1] {
            let last = *c.last().unwrap();
            for z in std::iter::once(last).chain(poset.strictly_above(last).iter().copied()) {
                let mut d = c.clone();
                d.push(z);
                next.push(d);
            }
        }
        chains.push(next);
    }
    let offsets: Vec<Vec<usize>> = chains
        .iter()
        .map(|cs_k| {
            let mut acc = 0;
            let mut v = Vec::with_capacity(cs_k.len());
            for c in cs_k {
                v.push(acc);
                acc += cs.module_rank(c[0]);
            }
            v
        })
        .collect();
    let dims: Vec<usize> = chains.iter().map(|c| c.iter().map(|x| cs.module_rank(x[0])).sum()).collect();
    let index = |k: usize, c: &[usize]| chains[k].iter().position(|d| d == c).unwrap();
    let mut boundaries = Vec::new();
    for k in 1..=kmax {
        let mut cols = Vec::new();
        for c in &chains[k] {
            for g in 0..cs.module_rank(c[0]) {
                let mut terms = Vec::new();
                for i in 0..=k {
                    let mut face = c.clone();
                    face.remove(i);
                    let t = index(k - 1, &face);
                    let sign = if i % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
                    if i == 0 {
                        let f = cs.composite_map(c[0], c[1]).unwrap();
                        for (r, v) in f.column(g) {
                            terms.push((offsets[k - 1][t] + r, ring.mul(&sign, v)));
                        }
                    } else {
                        terms.push((offsets[k - 1][t] + g, sign));
                    }
                }
                cols.push(normalize_sparse(ring, terms));
            }
        }
        boundaries.push(SparseMatrix::from_columns(ring, dims[k - 1], cols));
    }
    ChainComplex::new(ring.clone(), dims, boundaries).unwrap()
}

/// A random subgraph of `g` with shuffled labels, and its inclusion into `g`.
/// The base, when present, is always kept.
pub fn random_subgraph(rng: &mut ChaCha8Rng, g: &Digraph) -> DigraphInclusion {
    let edges: Vec<usize> = (0..g.edge_count()).filter(|_| rng.gen_bool(0.6)).collect();
    let mut verts: BTreeSet<usize> = edges.iter().flat_map(|&e| [g.edge(e).tail, g.edge(e).head]).collect();
    verts.extend(g.base());
    for v in 0..g.vertex_count() {
        if rng.gen_bool(0.3) {
            verts.insert(v);
        }
    }
    if verts.is_empty() {
        verts.insert(0);
    }
    let mut vertex_map: Vec<usize> = verts.into_iter().collect();
    vertex_map.shuffle(rng);
    let mut edge_map = edges;
    edge_map.shuffle(rng);
    let local = |v: usize| vertex_map.iter().position(|&w| w == v).unwrap();
    let arcs: Vec<(usize, usize)> = edge_map.iter().map(|&e| (local(g.edge(e).tail), local(g.edge(e).head))).collect();
    let sub = Digraph::new(vertex_map.len(), &arcs, g.base().map(local)).unwrap();
    validate_inclusion(&sub, g, &vertex_map, &edge_map).unwrap()
}
