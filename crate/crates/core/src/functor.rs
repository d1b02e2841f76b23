//! Maps induced on chains and homology by digraph inclusions and by algebra
//! homomorphisms.

use crate::algebra::{Algebra, AlgebraHom, Bimodule};
use crate::coeff::{build_coefficient_system, decode, strides, CoefficientSystem};
use crate::complex::{build_complex, ChainComplex, PosetComplex};
use crate::digraph::{Digraph, DigraphInclusion};
use crate::error::{Error, Result};
use crate::matrix::{normalize_sparse, Matrix, SparseMatrix, SparseVec};
use crate::poset::{enumerate_path_poset, Multipath, PathPoset, PosetConfig};
use crate::ring::Ring;
use crate::snf::{invariant_factors, smith_normal_form};

/// Largest complex degree dimension for which homology bases are extracted.
pub const MAX_BASIS_DIM: usize = 4_000;

/// Degreewise matrices `C_k → C′_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<R: Ring> {
    ring: R,
    matrices: Vec<SparseMatrix<R::Elem>>,
}

impl<R: Ring> ChainMap<R> {
    pub fn new(ring: R, matrices: Vec<SparseMatrix<R::Elem>>) -> Self {
        ChainMap { ring, matrices }
    }

    pub fn identity(c: &ChainComplex<R>) -> Self {
        let ring = c.ring().clone();
        let matrices = c.dims().iter().map(|&n| SparseMatrix::identity(&ring, n)).collect();
        ChainMap { ring, matrices }
    }

    /// Number of degrees carried, starting at 0.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, k: usize) -> &SparseMatrix<R::Elem> {
        &self.matrices[k]
    }

    pub fn matrices(&self) -> &[SparseMatrix<R::Elem>] {
        &self.matrices
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap<R>) -> Result<ChainMap<R>> {
        let n = inner.len().min(self.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if self.matrices[k].ncols() != inner.matrices[k].nrows() {
                return Err(Error::domain(format!("chain maps do not compose in degree {k}")));
            }
            out.push(self.matrices[k].mul(&self.ring, &inner.matrices[k]));
        }
        Ok(ChainMap { ring: self.ring.clone(), matrices: out })
    }

    /// Integrity error unless `d′_k ∘ f_k = f_{k−1} ∘ d_k` in every degree.
    pub fn verify(&self, source: &ChainComplex<R>, target: &ChainComplex<R>) -> Result<()> {
        if self.len() != source.top_degree() + 1 {
            return Err(Error::domain("chain map does not cover the source degrees"));
        }
        for k in 0..self.len() {
            let m = &self.matrices[k];
            if m.ncols() != source.dim(k) || m.nrows() != target.dim(k) {
                return Err(Error::domain(format!("chain map has the wrong shape in degree {k}")));
            }
        }
        for k in 1..self.len() {
            let lhs = target.boundary(k).mul(&self.ring, &self.matrices[k]);
            let rhs = self.matrices[k - 1].mul(&self.ring, &source.boundary(k));
            if lhs != rhs {
                return Err(Error::Integrity(format!("not a chain map in degree {k}")));
            }
        }
        Ok(())
    }
}

/// Path posets and coefficient systems on both sides of an inclusion.
#[derive(Debug)]
pub struct InclusionContext<R: Ring> {
    inclusion: DigraphInclusion,
    algebra: Algebra<R>,
    pub source_poset: PathPoset,
    pub target_poset: PathPoset,
    pub source_cs: CoefficientSystem<R>,
    pub target_cs: CoefficientSystem<R>,
    element_map: Vec<usize>,
}

impl<R: Ring> InclusionContext<R> {
    pub fn new(inc: &DigraphInclusion, a: &Algebra<R>, m: &Bimodule<R>, config: PosetConfig) -> Result<Self> {
        let source_poset = enumerate_path_poset(inc.source(), config)?;
        let target_poset = enumerate_path_poset(inc.target(), config)?;
        let source_cs = build_coefficient_system(&source_poset, a, m)?;
        let target_cs = build_coefficient_system(&target_poset, a, m)?;
        let element_map = source_poset
            .elements()
            .iter()
            .map(|x| {
                let image = Multipath::new(x.edges().iter().map(|&e| inc.edge_map()[e]).collect());
                target_poset.index_of(&image).expect("images of multipaths are multipaths")
            })
            .collect();
        Ok(InclusionContext { inclusion: inc.clone(), algebra: a.clone(), source_poset, target_poset, source_cs, target_cs, element_map })
    }

    /// `f̃`, the pushforward of poset elements.
    pub fn push(&self, x: usize) -> usize {
        self.element_map[x]
    }

    /// `τ_x : F′(x) → F(f̃x)`: identity on image components and the unit of
    /// `A` on every target component outside the image.
    pub fn tau(&self, x: usize) -> Result<SparseMatrix<R::Elem>> {
        if x >= self.source_poset.len() {
            return Err(Error::domain(format!("element {x} is not in the source poset")));
        }
        let ring = self.algebra.ring();
        let y = self.element_map[x];
        let lx = self.source_cs.labeling(x).expect("algebra coefficients");
        let ly = self.target_cs.labeling(y).expect("algebra coefficients");
        let sx = self.source_cs.basis_shape(x).expect("algebra coefficients");
        let sy = self.target_cs.basis_shape(y).expect("algebra coefficients");
        let vm = self.inclusion.vertex_map();
        let image_of: Vec<usize> = lx.components.iter().map(|vs| ly.component_of[vm[vs[0]]]).collect();
        let mut hit = vec![false; ly.len()];
        for &c in &image_of {
            hit[c] = true;
        }
        let missing: Vec<usize> = (0..ly.len()).filter(|&c| !hit[c]).collect();
        if missing.iter().any(|&c| sy[c] != self.algebra.dim()) {
            return Err(Error::domain("a bimodule factor lies outside the image of the inclusion"));
        }
        let unit: Vec<(usize, R::Elem)> =
            self.algebra.unit().iter().enumerate().filter(|(_, v)| !ring.is_zero(v)).map(|(i, v)| (i, v.clone())).collect();
        let stride = strides(sy);
        let rank_x: usize = sx.iter().product();
        let mut digits = vec![0; sx.len()];
        let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(rank_x);
        for g in 0..rank_x {
            decode(g, sx, &mut digits);
            let base: usize = digits.iter().zip(&image_of).map(|(&d, &c)| d * stride[c]).sum();
            let mut terms: Vec<(usize, R::Elem)> = vec![(base, ring.one())];
            for &c in &missing {
                let step = stride[c];
                terms = terms
                    .iter()
                    .flat_map(|(idx, coef)| unit.iter().map(move |(u, v)| (idx + u * step, ring.mul(coef, v))))
                    .collect();
            }
            cols.push(normalize_sparse(ring, terms));
        }
        Ok(SparseMatrix::from_columns(ring, sy.iter().product(), cols))
    }

    /// Every cover `x ≺ y` of the source where `F(f̃x ≤ f̃y) ∘ τ_x ≠ τ_y ∘ F′(x ≺ y)`.
    pub fn naturality_failures(&self) -> Result<Vec<(usize, usize)>> {
        let ring = self.algebra.ring();
        let mut bad = Vec::new();
        for (x, y, f_src) in self.source_cs.covers() {
            let f_tgt = self.target_cs.cover_matrix(self.push(x), self.push(y)).expect("covers push to covers");
            if f_tgt.mul(ring, &self.tau(x)?) != self.tau(y)?.mul(ring, f_src) {
                bad.push((x, y));
            }
        }
        Ok(bad)
    }

    pub fn source_complex(&self) -> Result<PosetComplex<'_, R>> {
        build_complex(&self.source_poset, &self.source_cs)
    }

    pub fn target_complex(&self) -> Result<PosetComplex<'_, R>> {
        build_complex(&self.target_poset, &self.target_cs)
    }

    /// `f_•`: `(σ, λ) ↦ (f̃σ, τ_{x₀}(λ))` in every source degree.
    pub fn chain_map(&self) -> Result<ChainMap<R>> {
        let ring = self.algebra.ring();
        let src = self.source_complex()?;
        let tgt = self.target_complex()?;
        let mut taus = std::collections::HashMap::new();
        let mut matrices = Vec::with_capacity(src.top_degree() + 1);
        for k in 0..=src.top_degree() {
            let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(src.dims()[k]);
            let mut image = Vec::with_capacity(k + 1);
            for i in 0..src.chain_count(k) {
                let chain = src.chain(k, i);
                image.clear();
                image.extend(chain.iter().map(|&x| self.push(x)));
                let j = tgt.chain_index(k, &image).expect("strict chains push to strict chains");
                let off = tgt.offset(k, j);
                if !taus.contains_key(&chain[0]) {
                    taus.insert(chain[0], self.tau(chain[0])?);
                }
                let tau = &taus[&chain[0]];
                cols.extend(tau.columns().iter().map(|c| c.iter().map(|(r, v)| (off + r, v.clone())).collect::<SparseVec<_>>()));
            }
            matrices.push(SparseMatrix::from_columns(ring, tgt.dim(k), cols));
        }
        Ok(ChainMap::new(ring.clone(), matrices))
    }
}

/// `τ_x` for the inclusion with coefficients `F_{A,M}`.
pub fn unit_insertion_tau<R: Ring>(inc: &DigraphInclusion, a: &Algebra<R>, m: &Bimodule<R>, x: usize) -> Result<SparseMatrix<R::Elem>> {
    InclusionContext::new(inc, a, m, PosetConfig::default())?.tau(x)
}

/// The chain map induced by an inclusion.
pub fn induced_map<R: Ring>(inc: &DigraphInclusion, a: &Algebra<R>, m: &Bimodule<R>) -> Result<ChainMap<R>> {
    InclusionContext::new(inc, a, m, PosetConfig::default())?.chain_map()
}

/// `⊗f` on coefficients and the identity on chains, between the complexes
/// of `g` with regular coefficients in `A` and in `B`.
pub fn algebra_induced_map<R: Ring>(g: &Digraph, a: &Algebra<R>, b: &Algebra<R>, f: &AlgebraHom<R>) -> Result<ChainMap<R>> {
    let ring = a.ring();
    if f.matrix().nrows() != b.dim() || f.matrix().ncols() != a.dim() {
        return Err(Error::domain("homomorphism does not match the algebras"));
    }
    let p = enumerate_path_poset(g, PosetConfig::default())?;
    let csa = build_coefficient_system(&p, a, &Bimodule::regular(a))?;
    let csb = build_coefficient_system(&p, b, &Bimodule::regular(b))?;
    let ca = build_complex(&p, &csa)?;
    let cb = build_complex(&p, &csb)?;
    let columns: Vec<SparseVec<R::Elem>> = (0..a.dim())
        .map(|j| (0..b.dim()).map(|i| (i, f.matrix().get(i, j).clone())).filter(|(_, v)| !ring.is_zero(v)).collect())
        .collect();
    let mut sigma = std::collections::HashMap::new();
    let mut matrices = Vec::with_capacity(ca.top_degree() + 1);
    for k in 0..=ca.top_degree() {
        let mut cols = Vec::with_capacity(ca.dims()[k]);
        for i in 0..ca.chain_count(k) {
            let x0 = ca.chain(k, i)[0];
            let off = cb.offset(k, i);
            let block = sigma.entry(x0).or_insert_with(|| tensor_power(ring, &columns, b.dim(), csa.basis_shape(x0).expect("algebra coefficients").len()));
            cols.extend(block.columns().iter().map(|c| c.iter().map(|(r, v)| (off + r, v.clone())).collect::<SparseVec<_>>()));
        }
        matrices.push(SparseMatrix::from_columns(ring, cb.dim(k), cols));
    }
    Ok(ChainMap::new(ring.clone(), matrices))
}

/// `f^{⊗n}` for `f` given by sparse columns with `rows` rows.
fn tensor_power<R: Ring>(ring: &R, f: &[SparseVec<R::Elem>], rows: usize, n: usize) -> SparseMatrix<R::Elem> {
    let mut m = SparseMatrix::identity(ring, 1);
    for _ in 0..n {
        let cols = m
            .columns()
            .iter()
            .flat_map(|left| {
                f.iter().map(move |right| {
                    let mut terms = Vec::with_capacity(left.len() * right.len());
                    for (i, u) in left {
                        for (j, v) in right {
                            terms.push((i * rows + j, ring.mul(u, v)));
                        }
                    }
                    terms
                })
            })
            .collect();
        m = SparseMatrix::from_columns(ring, m.nrows() * rows, cols);
    }
    m
}

/// Cycle representatives adapted to `ker d_k ⊇ im d_{k+1}`.
#[derive(Clone, Debug)]
pub struct HomologyBasis<R: Ring> {
    ring: R,
    degree: usize,
    kernel_offset: usize,
    v_inv: Matrix<R::Elem>,
    u2: Matrix<R::Elem>,
    image_rank: usize,
    invariants: Vec<R::Elem>,
    /// Representatives of a basis of the free part.
    pub free: Vec<Vec<R::Elem>>,
    /// Representatives and orders of the torsion generators.
    pub torsion: Vec<(Vec<R::Elem>, R::Elem)>,
}

pub fn homology_basis<R: Ring>(c: &ChainComplex<R>, k: usize) -> Result<HomologyBasis<R>> {
    let ring = c.ring();
    let n = c.dim(k);
    if n > MAX_BASIS_DIM {
        return Err(Error::Resource(format!("degree {k} has {n} generators, above the basis limit {MAX_BASIS_DIM}")));
    }
    let dk = c.boundary(k).to_dense(ring);
    let f1 = smith_normal_form(ring, &dk);
    let r = f1.rank();
    let coords = f1.v_inv.mul(ring, &c.boundary(k + 1).to_dense(ring));
    let b = coords.rows_range(r..n);
    let f2 = smith_normal_form(ring, &b);
    let s = f2.rank();
    let kernel = f1.v.columns(r..n);
    let adapted = kernel.mul(ring, &f2.u_inv);
    let free = (s..n - r).map(|j| adapted.column_vec(j)).collect();
    let torsion = (0..s)
        .filter(|&i| !ring.is_unit(&f2.diagonal[i]))
        .map(|i| (adapted.column_vec(i), f2.diagonal[i].clone()))
        .collect();
    Ok(HomologyBasis {
        ring: ring.clone(),
        degree: k,
        kernel_offset: r,
        v_inv: f1.v_inv,
        u2: f2.u,
        image_rank: s,
        invariants: f2.diagonal,
        free,
        torsion,
    })
}

impl<R: Ring> HomologyBasis<R> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn betti(&self) -> usize {
        self.free.len()
    }

    /// Free coordinates and torsion residues of the class of a cycle.
    pub fn coordinates(&self, z: &[R::Elem]) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
        let ring = &self.ring;
        let w = self.v_inv.mul_vec(ring, z);
        if w[..self.kernel_offset].iter().any(|v| !ring.is_zero(v)) {
            return Err(Error::Integrity(format!("vector is not a cycle in degree {}", self.degree)));
        }
        let c = self.u2.mul_vec(ring, &w[self.kernel_offset..]);
        let free = c[self.image_rank..].to_vec();
        let torsion = (0..self.image_rank)
            .filter(|&i| !ring.is_unit(&self.invariants[i]))
            .map(|i| ring.div_rem(&c[i], &self.invariants[i]).1)
            .collect();
        Ok((free, torsion))
    }
}

/// A map on homology in one degree, in adapted bases.
#[derive(Clone, Debug)]
pub struct HomologyMap<R: Ring> {
    pub degree: usize,
    pub source_betti: usize,
    pub target_betti: usize,
    /// `target_betti × source_betti` matrix of the free part.
    pub free: Matrix<R::Elem>,
    /// Images of source torsion generators in target torsion coordinates.
    pub torsion: Matrix<R::Elem>,
    pub rank: usize,
}

pub fn homology_map<R: Ring>(f: &ChainMap<R>, source: &ChainComplex<R>, target: &ChainComplex<R>, k: usize) -> Result<HomologyMap<R>> {
    let ring = source.ring();
    let hs = homology_basis(source, k)?;
    let ht = homology_basis(target, k)?;
    let m = f.matrix(k).to_dense(ring);
    let mut free = Matrix::zeros(ring, ht.betti(), hs.betti());
    for (j, z) in hs.free.iter().enumerate() {
        let (fc, _) = ht.coordinates(&m.mul_vec(ring, z))?;
        for (i, v) in fc.into_iter().enumerate() {
            free.set(i, j, v);
        }
    }
    let mut torsion = Matrix::zeros(ring, ht.torsion.len(), hs.torsion.len());
    for (j, (z, _)) in hs.torsion.iter().enumerate() {
        let (_, tc) = ht.coordinates(&m.mul_vec(ring, z))?;
        for (i, v) in tc.into_iter().enumerate() {
            torsion.set(i, j, v);
        }
    }
    let rank = invariant_factors(ring, free.clone()).len();
    Ok(HomologyMap { degree: k, source_betti: hs.betti(), target_betti: ht.betti(), free, torsion, rank })
}

/// `γ_* : H_i(P_n; A) → H_i(Γ; A)` for `0 ≤ i ≤ n − 2`.
pub fn cycle_map<R: Ring>(cycle: &DigraphInclusion, a: &Algebra<R>) -> Result<Vec<HomologyMap<R>>> {
    let src = cycle.source();
    if !src.is_consistent_polygon() {
        return Err(Error::domain("cycle source is not a consistently directed polygon"));
    }
    let ctx = InclusionContext::new(cycle, a, &Bimodule::regular(a), PosetConfig::default())?;
    let f = ctx.chain_map()?;
    let cs = ctx.source_complex()?.materialize()?;
    let ct = ctx.target_complex()?.materialize()?;
    f.verify(&cs, &ct)?;
    let n = src.edge_count();
    (0..=n.saturating_sub(2)).map(|i| homology_map(&f, &cs, &ct, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{augmentation_hom, builtin_algebra};
    use crate::digraph::{make_line, make_polygon, validate_inclusion};
    use crate::ring::Rationals;

    #[test]
    fn tau_examples() {
        let q = Rationals;
        let edge = make_line(1).unwrap();
        let tri = make_polygon(3, true).unwrap();
        let inc = validate_inclusion(&edge, &tri, &[0, 1], &[0]).unwrap();
        let ground = builtin_algebra(&q, "ground").unwrap();
        let t = unit_insertion_tau(&inc, &ground, &Bimodule::regular(&ground), 0).unwrap();
        assert_eq!(t, SparseMatrix::identity(&q, 1));
        let dual = builtin_algebra(&q, "dual").unwrap();
        let t = unit_insertion_tau(&inc, &dual, &Bimodule::regular(&dual), 0).unwrap();
        assert_eq!((t.nrows(), t.ncols()), (8, 4));
        // Vertex 2 is the last factor; the unit is basis vector 0.
        for j in 0..4 {
            assert_eq!(t.column(j), &[(2 * j, q.one())]);
        }
    }

    #[test]
    fn identity_and_edge_into_triangle() {
        let q = Rationals;
        let ground = builtin_algebra(&q, "ground").unwrap();
        let m = Bimodule::regular(&ground);
        let tri = make_polygon(3, true).unwrap();
        let id = DigraphInclusion::identity(&tri);
        let ctx = InclusionContext::new(&id, &ground, &m, PosetConfig::default()).unwrap();
        let c = ctx.source_complex().unwrap().materialize().unwrap();
        assert_eq!(ctx.chain_map().unwrap(), ChainMap::identity(&c));

        let edge = make_line(1).unwrap();
        let inc = validate_inclusion(&edge, &tri, &[0, 1], &[0]).unwrap();
        let ctx = InclusionContext::new(&inc, &ground, &m, PosetConfig::default()).unwrap();
        assert!(ctx.naturality_failures().unwrap().is_empty());
        let f = ctx.chain_map().unwrap();
        let cs = ctx.source_complex().unwrap().materialize().unwrap();
        let ct = ctx.target_complex().unwrap().materialize().unwrap();
        f.verify(&cs, &ct).unwrap();
        assert_eq!(homology_map(&f, &cs, &ct, 0).unwrap().rank, 1);
    }

    #[test]
    fn augmentation_on_degree_zero() {
        let q = Rationals;
        let dual = builtin_algebra(&q, "dual").unwrap();
        let ground = builtin_algebra(&q, "ground").unwrap();
        let eps = augmentation_hom(&dual, &ground).unwrap();
        let tri = make_polygon(3, true).unwrap();
        let f = algebra_induced_map(&tri, &dual, &ground, &eps).unwrap();
        let p = enumerate_path_poset(&tri, PosetConfig::default()).unwrap();
        let csa = build_coefficient_system(&p, &dual, &Bimodule::regular(&dual)).unwrap();
        let csb = build_coefficient_system(&p, &ground, &Bimodule::regular(&ground)).unwrap();
        let ca = build_complex(&p, &csa).unwrap().materialize().unwrap();
        let cb = build_complex(&p, &csb).unwrap().materialize().unwrap();
        f.verify(&ca, &cb).unwrap();
        let h = homology_map(&f, &ca, &cb, 0).unwrap();
        assert_eq!((h.source_betti, h.target_betti, h.rank), (2, 1, 1));
    }

    #[test]
    fn cycle_map_identity() {
        let q = Rationals;
        let ground = builtin_algebra(&q, "ground").unwrap();
        let tri = make_polygon(3, true).unwrap();
        let maps = cycle_map(&DigraphInclusion::identity(&tri), &ground).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0].free, Matrix::identity(&q, 1));
        assert_eq!(maps[1].source_betti, 0);
        let line = make_line(2).unwrap();
        assert!(cycle_map(&DigraphInclusion::identity(&line), &ground).is_err());
    }
}
