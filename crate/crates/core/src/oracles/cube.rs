//! The cube complex of a consistently directed polygon: proper edge subsets
//! with the same tensor modules as the algebra coefficients, subsets with
//! `r` edges placed in degree `n − r`, and sign `(−1)^{#{f ∈ S : f < e}}`
//! on the partial derivative that adds edge `e`.

use std::collections::HashMap;

use crate::algebra::{Algebra, Bimodule};
use crate::complex::{ChainComplex, HomologyResult};
use crate::error::{Error, Result};
use crate::matrix::{normalize_sparse, SparseMatrix, SparseVec};
use crate::ring::Ring;

/// Largest polygon accepted by the cube oracle.
pub const MAX_CUBE_POLYGON: usize = 12;

/// Component of each vertex of the `n`-gon under the edge subset `s`,
/// numbered by least vertex. Edge `i` joins `i` and `i + 1 mod n`.
fn arcs(n: usize, s: u32) -> Vec<usize> {
    let mut raw = vec![0usize; n];
    let mut next = 0;
    for v in 1..n {
        if s & (1 << (v - 1)) == 0 {
            next += 1;
        }
        raw[v] = next;
    }
    if s & (1 << (n - 1)) != 0 {
        let last = raw[n - 1];
        for r in raw.iter_mut() {
            if *r == last {
                *r = 0;
            }
        }
    }
    let mut relabel = HashMap::new();
    raw.iter()
        .map(|r| {
            let fresh = relabel.len();
            *relabel.entry(*r).or_insert(fresh)
        })
        .collect()
}

struct Site {
    comp: Vec<usize>,
    shape: Vec<usize>,
}

impl Site {
    fn new(n: usize, s: u32, d: usize, m: usize) -> Site {
        let comp = arcs(n, s);
        let count = comp.iter().max().map_or(0, |c| c + 1);
        let shape = (0..count).map(|c| if c == comp[0] { m } else { d }).collect();
        Site { comp, shape }
    }

    fn rank(&self) -> usize {
        self.shape.iter().product()
    }

    fn digits(&self, mut g: usize) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        for (slot, &w) in out.iter_mut().zip(&self.shape).rev() {
            *slot = g % w;
            g /= w;
        }
        out
    }

    fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.shape).fold(0, |acc, (&x, &w)| acc * w + x)
    }
}

/// The cube complex in degrees `0..=n`.
pub fn polygon_cube_complex<R: Ring>(n: usize, a: &Algebra<R>, m: &Bimodule<R>) -> Result<ChainComplex<R>> {
    if !(2..=MAX_CUBE_POLYGON).contains(&n) {
        return Err(if n < 2 {
            Error::Domain(format!("polygon size {n} is below 2"))
        } else {
            Error::Resource(format!("cube oracle is limited to {MAX_CUBE_POLYGON}-gons"))
        });
    }
    let ring = a.ring();
    let full: u32 = (1 << n) - 1;
    let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 0..full {
        by_degree[n - s.count_ones() as usize].push(s);
    }
    let sites: HashMap<u32, Site> = (0..full).map(|s| (s, Site::new(n, s, a.dim(), m.dim()))).collect();
    let mut offset: HashMap<u32, usize> = HashMap::new();
    let mut dims = Vec::with_capacity(n + 1);
    for subsets in &by_degree {
        let mut acc = 0;
        for s in subsets {
            offset.insert(*s, acc);
            acc += sites[s].rank();
        }
        dims.push(acc);
    }

    let mut boundaries = Vec::with_capacity(n);
    for i in 1..=n {
        let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(dims[i]);
        for &s in &by_degree[i] {
            let src = &sites[&s];
            for g in 0..src.rank() {
                let x = src.digits(g);
                let mut terms = Vec::new();
                for e in (0..n).filter(|e| s & (1 << e) == 0) {
                    let t = s | (1 << e);
                    if t == full {
                        continue;
                    }
                    let dst = &sites[&t];
                    let sign = if (s & ((1 << e) - 1)).count_ones() % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
                    let (tail, head) = (e, (e + 1) % n);
                    let (ct, ch) = (src.comp[tail], src.comp[head]);
                    let base = src.comp[0];
                    let product = if ct == base {
                        m.right_basis(x[ct], x[ch])
                    } else if ch == base {
                        m.left_basis(x[ct], x[ch])
                    } else {
                        a.mul_basis(x[ct], x[ch])
                    };
                    // Carry untouched factors to their place in the target.
                    let mut y = vec![0; dst.shape.len()];
                    for v in 0..n {
                        let c = src.comp[v];
                        if c != ct && c != ch {
                            y[dst.comp[v]] = x[c];
                        }
                    }
                    let merged = dst.comp[tail];
                    for (k, c) in product {
                        y[merged] = *k;
                        terms.push((offset[&t] + dst.index(&y), ring.mul(&sign, c)));
                    }
                }
                cols.push(normalize_sparse(ring, terms));
            }
        }
        boundaries.push(SparseMatrix::from_columns(ring, dims[i - 1], cols));
    }
    ChainComplex::new(ring.clone(), dims, boundaries)
}

/// `Ĥ_i` of the `n`-gon for `0 ≤ i ≤ n`.
pub fn polygon_hat_homology<R: Ring>(n: usize, a: &Algebra<R>, m: &Bimodule<R>) -> Result<HomologyResult> {
    polygon_cube_complex(n, a, m)?.homology()
}
