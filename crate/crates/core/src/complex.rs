//! Chain complexes, homology, and the normalized chain complex of a poset
//! with coefficients.
//!
//! Degree-`k` generators of a poset complex are strict chains
//! `x₀ < ⋯ < x_k` tensored with a basis vector of `F(x₀)`. The boundary is
//! `F(x₀ ≤ x₁)` on face 0 and signed deletion `(−1)^i` on faces `i ≥ 1`.
//!
//! Every block of the boundary between two chains is an integer multiple of
//! `F(x₀σ ≤ x₀τ)`, so the complex is determined by an integer matrix over
//! chains. Homology is computed after cancelling `±1` blocks between chains
//! with the same minimum: such a block is `±id`, and Gaussian elimination
//! keeps every updated block in the same form.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::coeff::CoefficientSystem;
use crate::elim::{rank_profile, torsion_as_ints};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::matrix::{normalize_sparse, SparseMatrix, SparseVec};
use crate::poset::PathPoset;
use crate::ring::{Integers, Ring, RingKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub betti: usize,
    pub torsion: Vec<Int>,
}

impl DegreeHomology {
    pub fn zero() -> Self {
        DegreeHomology { betti: 0, torsion: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub ring: RingKind,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    /// Homology in degree `k`; zero above the computed range.
    pub fn degree(&self, k: usize) -> DegreeHomology {
        self.degrees.get(k).cloned().unwrap_or_else(DegreeHomology::zero)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| !d.torsion.is_empty())
    }
}

/// A bounded complex `C_0 ← C_1 ← ⋯ ← C_D` of free modules.
#[derive(Clone, Debug)]
pub struct ChainComplex<R: Ring> {
    ring: R,
    dims: Vec<usize>,
    /// `boundaries[k - 1]` is `d_k : C_k → C_{k−1}`.
    boundaries: Vec<SparseMatrix<R::Elem>>,
}

impl<R: Ring> ChainComplex<R> {
    pub fn new(ring: R, dims: Vec<usize>, boundaries: Vec<SparseMatrix<R::Elem>>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::domain("a complex needs one boundary per positive degree"));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.nrows() != dims[k] || d.ncols() != dims[k + 1] {
                return Err(Error::domain(format!("boundary d_{} has the wrong shape", k + 1)));
            }
        }
        Ok(ChainComplex { ring, dims, boundaries })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `d_k`, with zero maps outside `1..=D`.
    pub fn boundary(&self, k: usize) -> SparseMatrix<R::Elem> {
        if k >= 1 && k <= self.top_degree() {
            self.boundaries[k - 1].clone()
        } else {
            SparseMatrix::zeros(if k == 0 { 0 } else { self.dim(k - 1) }, self.dim(k))
        }
    }

    pub fn boundary_ref(&self, k: usize) -> Option<&SparseMatrix<R::Elem>> {
        (k >= 1).then(|| self.boundaries.get(k - 1)).flatten()
    }

    /// Integrity error unless every `d_k ∘ d_{k+1}` vanishes.
    pub fn check_d_squared(&self) -> Result<()> {
        for k in 1..self.top_degree() {
            let dd = self.boundaries[k - 1].mul(&self.ring, &self.boundaries[k]);
            if !dd.is_zero() {
                return Err(Error::Integrity(format!("d_{k} ∘ d_{} ≠ 0 ({} nonzero entries)", k + 1, dd.nnz())));
            }
        }
        Ok(())
    }

    /// Homology in degrees `0..=D`.
    pub fn homology(&self) -> Result<HomologyResult> {
        self.homology_through(self.top_degree())
    }

    /// Homology in degrees `0..=kmax`; degrees above `D` are zero.
    pub fn homology_through(&self, kmax: usize) -> Result<HomologyResult> {
        self.check_d_squared()?;
        let top = self.top_degree();
        let needed: Vec<usize> = (1..=top.min(kmax + 1)).collect();
        let profiles = std::thread::scope(|s| {
            let handles: Vec<_> = needed
                .iter()
                .map(|&k| s.spawn(move || rank_profile(&self.ring, &self.boundaries[k - 1])))
                .collect();
            handles.into_iter().map(|h| h.join().expect("rank worker panicked")).collect::<Result<Vec<_>>>()
        })?;
        let rank = |k: usize| if k >= 1 && k <= needed.len() { profiles[k - 1].rank } else { 0 };
        let degrees = (0..=kmax)
            .map(|k| {
                if k > top {
                    return DegreeHomology::zero();
                }
                let torsion = if k < needed.len() { torsion_as_ints(&self.ring, &profiles[k].torsion) } else { Vec::new() };
                DegreeHomology { betti: self.dims[k] - rank(k) - rank(k + 1), torsion }
            })
            .collect();
        Ok(HomologyResult { ring: self.ring.kind(), degrees })
    }
}

impl ChainComplex<Integers> {
    /// Betti numbers of the same integer matrices read over another ring.
    pub fn betti_over<S: Ring>(&self, ring: &S) -> Result<Vec<usize>> {
        let boundaries = self.boundaries.iter().map(|d| d.map(|v| ring.from_int(v), ring)).collect();
        let c = ChainComplex::new(ring.clone(), self.dims.clone(), boundaries)?;
        Ok(c.homology()?.betti())
    }
}

/// Caps on complex construction.
#[derive(Clone, Copy, Debug)]
pub struct ComplexLimits {
    pub max_chains: usize,
    /// Largest allowed top degree.
    pub max_degree: Option<usize>,
}

impl Default for ComplexLimits {
    fn default() -> Self {
        ComplexLimits { max_chains: 4_000_000, max_degree: None }
    }
}

/// The normalized chain complex of a poset with coefficients.
#[derive(Debug)]
pub struct PosetComplex<'a, R: Ring> {
    cs: &'a CoefficientSystem<R>,
    /// Strict chains with `k + 1` elements, flattened and sorted lexicographically.
    chains: Vec<Vec<usize>>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

/// The complex of `p` with coefficients in `cs`.
pub fn build_complex<'a, R: Ring>(p: &PathPoset, cs: &'a CoefficientSystem<R>) -> Result<PosetComplex<'a, R>> {
    let q = cs.poset();
    if q.len() != p.len() || !(0..q.len()).all(|x| q.upper_covers(x) == p.upper_covers(x)) {
        return Err(Error::domain("coefficient system was not built on this path poset"));
    }
    PosetComplex::new(cs, ComplexLimits::default())
}

impl<'a, R: Ring> PosetComplex<'a, R> {
    pub fn new(cs: &'a CoefficientSystem<R>, limits: ComplexLimits) -> Result<Self> {
        let poset = cs.poset();
        let mut chains: Vec<Vec<usize>> = vec![(0..poset.len()).collect()];
        let mut total = poset.len();
        loop {
            let k = chains.len();
            let prev = &chains[k - 1];
            let mut next = Vec::new();
            for c in prev.chunks_exact(k) {
                for &z in poset.strictly_above(c[k - 1]) {
                    next.extend_from_slice(c);
                    next.push(z);
                }
                if next.len() / (k + 1) + total > limits.max_chains {
                    return Err(Error::Resource(format!("more than {} strict chains", limits.max_chains)));
                }
            }
            if next.is_empty() {
                break;
            }
            if limits.max_degree.is_some_and(|m| k > m) {
                return Err(Error::Resource(format!("strict chains exceed the degree cap {}", k - 1)));
            }
            total += next.len() / (k + 1);
            chains.push(next);
        }
        let mut offsets = Vec::with_capacity(chains.len());
        let mut dims = Vec::with_capacity(chains.len());
        for (k, flat) in chains.iter().enumerate() {
            let mut off = Vec::with_capacity(flat.len() / (k + 1) + 1);
            let mut acc = 0usize;
            for c in flat.chunks_exact(k + 1) {
                off.push(acc);
                acc = acc
                    .checked_add(cs.module_rank(c[0]))
                    .ok_or_else(|| Error::Resource("complex dimension overflows".into()))?;
            }
            off.push(acc);
            dims.push(acc);
            offsets.push(off);
        }
        Ok(PosetComplex { cs, chains, offsets, dims })
    }

    pub fn coefficients(&self) -> &CoefficientSystem<R> {
        self.cs
    }

    /// Length of the longest strict chain.
    pub fn top_degree(&self) -> usize {
        self.chains.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn chain_count(&self, k: usize) -> usize {
        self.chains.get(k).map_or(0, |c| c.len() / (k + 1))
    }

    pub fn chain(&self, k: usize, i: usize) -> &[usize] {
        &self.chains[k][i * (k + 1)..(i + 1) * (k + 1)]
    }

    pub fn chain_index(&self, k: usize, chain: &[usize]) -> Option<usize> {
        let n = self.chain_count(k);
        let i = partition(n, |i| self.chain(k, i) < chain);
        (i < n && self.chain(k, i) == chain).then_some(i)
    }

    /// First generator of chain `i` in degree `k`.
    pub fn offset(&self, k: usize, i: usize) -> usize {
        self.offsets[k][i]
    }

    /// The chain and coefficient-basis index of generator `g` in degree `k`.
    pub fn label(&self, k: usize, g: usize) -> (&[usize], usize) {
        let i = partition(self.chain_count(k), |i| self.offsets[k][i + 1] <= g);
        (self.chain(k, i), g - self.offsets[k][i])
    }

    /// Faces of chain `i` in degree `k ≥ 1` as `(face chain index, sign, keeps minimum)`.
    fn faces(&self, k: usize, i: usize) -> Vec<(usize, i64, bool)> {
        let c = self.chain(k, i);
        let mut buf = Vec::with_capacity(k);
        (0..=k)
            .map(|del| {
                buf.clear();
                buf.extend(c.iter().enumerate().filter(|(j, _)| *j != del).map(|(_, &x)| x));
                let t = self.chain_index(k - 1, &buf).expect("faces of strict chains are strict chains");
                let sign = if del % 2 == 0 { 1 } else { -1 };
                (t, sign, del != 0)
            })
            .collect()
    }

    /// The integer matrix over chains: entry `(τ, σ)` is the multiple of
    /// `F(x₀σ ≤ x₀τ)` in the block of `d_k`.
    pub fn skeleton(&self, k: usize) -> SparseMatrix<Int> {
        if k == 0 || k > self.top_degree() {
            return SparseMatrix::zeros(if k == 0 { 0 } else { self.chain_count(k - 1) }, self.chain_count(k));
        }
        let cols = (0..self.chain_count(k))
            .map(|i| self.faces(k, i).into_iter().map(|(t, s, _)| (t, Int::from(s))).collect())
            .collect();
        SparseMatrix::from_columns(&Integers, self.chain_count(k - 1), cols)
    }

    /// Integrity error unless consecutive chain matrices compose to zero.
    pub fn check_skeleton(&self) -> Result<()> {
        for k in 1..self.top_degree() {
            if !self.skeleton(k).mul(&Integers, &self.skeleton(k + 1)).is_zero() {
                return Err(Error::Integrity(format!("chain boundary fails d² = 0 in degree {k}")));
            }
        }
        Ok(())
    }

    /// The full boundary `d_k` over the coefficient ring.
    pub fn boundary(&self, k: usize) -> Result<SparseMatrix<R::Elem>> {
        let ring = self.cs.ring();
        if k == 0 || k > self.top_degree() {
            return Ok(SparseMatrix::zeros(if k == 0 { 0 } else { self.dims[k - 1] }, self.dim(k)));
        }
        let mut composites = Composites::new(self.cs);
        let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(self.dims[k]);
        for i in 0..self.chain_count(k) {
            let c = self.chain(k, i);
            let faces = self.faces(k, i);
            let rank = self.cs.module_rank(c[0]);
            let mut block_cols: Vec<SparseVec<R::Elem>> = vec![Vec::new(); rank];
            for (t, sign, keeps_min) in faces {
                let off = self.offsets[k - 1][t];
                let s = ring.from_i64(sign);
                if keeps_min {
                    for (j, col) in block_cols.iter_mut().enumerate() {
                        col.push((off + j, s.clone()));
                    }
                } else {
                    let m = composites.get(c[0], c[1])?;
                    for (j, col) in block_cols.iter_mut().enumerate() {
                        col.extend(m.column(j).iter().map(|(r, v)| (off + r, ring.mul(&s, v))));
                    }
                }
            }
            cols.extend(block_cols.into_iter().map(|col| normalize_sparse(ring, col)));
        }
        Ok(SparseMatrix::from_columns(ring, self.dims[k - 1], cols))
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// The whole complex over the coefficient ring, without reduction.
    pub fn materialize(&self) -> Result<ChainComplex<R>> {
        let boundaries = (1..=self.top_degree()).map(|k| self.boundary(k)).collect::<Result<Vec<_>>>()?;
        ChainComplex::new(self.cs.ring().clone(), self.dims.clone(), boundaries)
    }

    /// A smaller chain-homotopy-equivalent complex obtained by cancelling
    /// invertible blocks between chains with the same minimum.
    pub fn reduce(&self) -> Result<ReducedComplex<R>> {
        self.check_skeleton()?;
        let top = self.top_degree();
        let mut sk = Skeleton::new(self, top);
        sk.cancel(self);
        let ring = self.cs.ring();
        let mut composites = Composites::new(self.cs);
        let alive: Vec<Vec<usize>> = (0..=top).map(|k| (0..self.chain_count(k)).filter(|&i| sk.alive[k][i]).collect()).collect();
        let mut offsets: Vec<HashMap<usize, usize>> = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for (k, list) in alive.iter().enumerate() {
            let mut off = HashMap::with_capacity(list.len());
            let mut acc = 0;
            for &i in list {
                off.insert(i, acc);
                acc += self.cs.module_rank(self.chain(k, i)[0]);
            }
            offsets.push(off);
            dims.push(acc);
        }
        let mut boundaries = Vec::with_capacity(top);
        for k in 1..=top {
            let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(dims[k]);
            for &i in &alive[k] {
                let x0 = self.chain(k, i)[0];
                let mut block_cols: Vec<SparseVec<R::Elem>> = vec![Vec::new(); self.cs.module_rank(x0)];
                for (&t, c) in &sk.cols[k][i] {
                    let off = offsets[k - 1][&t];
                    let y0 = self.chain(k - 1, t)[0];
                    let s = ring.from_int(c);
                    let m = composites.get(x0, y0)?;
                    for (j, col) in block_cols.iter_mut().enumerate() {
                        col.extend(m.column(j).iter().map(|(r, v)| (off + r, ring.mul(&s, v))));
                    }
                }
                cols.extend(block_cols.into_iter().map(|col| normalize_sparse(ring, col)));
            }
            boundaries.push(SparseMatrix::from_columns(ring, dims[k - 1], cols));
        }
        let complex = ChainComplex::new(ring.clone(), dims, boundaries)?;
        Ok(ReducedComplex { complex, surviving: alive })
    }

    /// Homology in degrees `0..=D`, computed on the reduced complex.
    pub fn homology(&self) -> Result<HomologyResult> {
        self.reduce()?.complex.homology()
    }
}

/// A reduced complex and the chains that survived cancellation.
#[derive(Clone, Debug)]
pub struct ReducedComplex<R: Ring> {
    pub complex: ChainComplex<R>,
    pub surviving: Vec<Vec<usize>>,
}

fn partition(n: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Cached composites `F(x ≤ y)`, filled one lower element at a time.
struct Composites<'a, R: Ring> {
    cs: &'a CoefficientSystem<R>,
    from: HashMap<usize, HashMap<usize, SparseMatrix<R::Elem>>>,
}

impl<'a, R: Ring> Composites<'a, R> {
    fn new(cs: &'a CoefficientSystem<R>) -> Self {
        Composites { cs, from: HashMap::new() }
    }

    fn get(&mut self, x: usize, y: usize) -> Result<&SparseMatrix<R::Elem>> {
        if !self.from.contains_key(&x) {
            let all = self.cs.interval_composites(x, None, false)?;
            self.from.insert(x, all);
        }
        self.from[&x].get(&y).ok_or_else(|| Error::domain(format!("elements {x} and {y} are not comparable")))
    }
}

/// Integer chain matrices with row and column access, for block cancellation.
struct Skeleton {
    /// `cols[k][σ]`: face chain `τ` ↦ coefficient.
    cols: Vec<Vec<BTreeMap<usize, Int>>>,
    /// `rows[k][τ]`: chains `σ` with a nonzero entry in row `τ`.
    rows: Vec<Vec<BTreeSet<usize>>>,
    alive: Vec<Vec<bool>>,
}

impl Skeleton {
    fn new<R: Ring>(c: &PosetComplex<'_, R>, top: usize) -> Self {
        let mut cols = vec![Vec::new()];
        let mut rows = vec![Vec::new()];
        for k in 1..=top {
            let mut ck = Vec::with_capacity(c.chain_count(k));
            let mut rk = vec![BTreeSet::new(); c.chain_count(k - 1)];
            for i in 0..c.chain_count(k) {
                let mut col = BTreeMap::new();
                for (t, s, _) in c.faces(k, i) {
                    col.insert(t, Int::from(s));
                    rk[t].insert(i);
                }
                ck.push(col);
            }
            cols.push(ck);
            rows.push(rk);
        }
        let alive = (0..=top).map(|k| vec![true; c.chain_count(k)]).collect();
        Skeleton { cols, rows, alive }
    }

    fn cancel<R: Ring>(&mut self, c: &PosetComplex<'_, R>) {
        let top = self.cols.len() - 1;
        loop {
            let mut progress = false;
            for k in (1..=top).rev() {
                for s in 0..c.chain_count(k) {
                    if !self.alive[k][s] {
                        continue;
                    }
                    let x0 = c.chain(k, s)[0];
                    let pick = self.cols[k][s]
                        .iter()
                        .filter(|(&t, v)| v.is_unit() && c.chain(k - 1, t)[0] == x0)
                        .min_by_key(|(&t, _)| (self.rows[k][t].len(), t))
                        .map(|(&t, v)| (t, v.clone()));
                    if let Some((t, u)) = pick {
                        self.pivot(k, s, t, &u);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
    }

    /// Cancels the unit block `(t, s)` of degree `k`.
    fn pivot(&mut self, k: usize, s: usize, t: usize, u: &Int) {
        let col_s: Vec<(usize, Int)> = self.cols[k][s].iter().filter(|(&r, _)| r != t).map(|(&r, v)| (r, v.clone())).collect();
        let row_t: Vec<usize> = self.rows[k][t].iter().copied().filter(|&p| p != s).collect();
        for p in row_t {
            let b = self.cols[k][p][&t].clone();
            let factor = u * &b;
            for (r, a) in &col_s {
                let entry = self.cols[k][p].entry(*r).or_insert(Int::ZERO);
                *entry = &*entry - &(a * &factor);
                if entry.is_zero() {
                    self.cols[k][p].remove(r);
                    self.rows[k][*r].remove(&p);
                } else {
                    self.rows[k][*r].insert(p);
                }
            }
        }
        for r in std::mem::take(&mut self.cols[k][s]).into_keys() {
            self.rows[k][r].remove(&s);
        }
        for p in std::mem::take(&mut self.rows[k][t]) {
            self.cols[k][p].remove(&t);
        }
        if k < self.cols.len() - 1 {
            for w in std::mem::take(&mut self.rows[k + 1][s]) {
                self.cols[k + 1][w].remove(&s);
            }
        }
        if k > 1 {
            for n in std::mem::take(&mut self.cols[k - 1][t]).into_keys() {
                self.rows[k - 1][n].remove(&t);
            }
        }
        self.alive[k][s] = false;
        self.alive[k - 1][t] = false;
    }
}
