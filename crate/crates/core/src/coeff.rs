//! Coefficient systems on finite posets, and the system `F_{A,M}` on a path
//! poset built from an algebra and a bimodule.
//!
//! `F_{A,M}(x)` is the tensor product over the components of `Γ_x` of one
//! copy of `M` (the component holding the base vertex) and copies of `A`.
//! Factors are ordered by least vertex of their component and basis tensors
//! are enumerated in mixed radix with the last factor fastest. When a cover
//! `x ≺ y` adds the edge `e`, the two fusing factors are multiplied in the
//! order (tail factor)·(head factor): algebra multiplication, the right
//! action when the tail side holds the base, the left action when the head
//! side does.

use std::collections::HashMap;

use crate::algebra::{Algebra, Bimodule};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::poset::{components_unchecked, ComponentLabeling, PathPoset, Poset};
use crate::ring::Ring;

/// A functor from a finite poset to free modules, stored by its cover maps.
#[derive(Clone, Debug)]
pub struct CoefficientSystem<R: Ring> {
    ring: R,
    poset: Poset,
    ranks: Vec<usize>,
    /// `cover_maps[x][k]` is the map `F(x) → F(y)` for `y = upper_covers(x)[k]`.
    cover_maps: Vec<Vec<SparseMatrix<R::Elem>>>,
    shapes: Option<Vec<Vec<usize>>>,
    labelings: Option<Vec<ComponentLabeling>>,
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

pub(crate) fn decode(mut idx: usize, shape: &[usize], out: &mut [usize]) {
    for i in (0..shape.len()).rev() {
        out[i] = idx % shape[i];
        idx /= shape[i];
    }
}

impl<R: Ring> CoefficientSystem<R> {
    /// A general system; each cover map must be `ranks[y] × ranks[x]`.
    pub fn new(ring: R, poset: Poset, ranks: Vec<usize>, cover_maps: Vec<Vec<SparseMatrix<R::Elem>>>) -> Result<Self> {
        if ranks.len() != poset.len() || cover_maps.len() != poset.len() {
            return Err(Error::domain("coefficient system does not match its poset"));
        }
        for x in 0..poset.len() {
            if cover_maps[x].len() != poset.upper_covers(x).len() {
                return Err(Error::domain(format!("element {x} has the wrong number of cover maps")));
            }
            for (m, &y) in cover_maps[x].iter().zip(poset.upper_covers(x)) {
                if m.nrows() != ranks[y] || m.ncols() != ranks[x] {
                    return Err(Error::domain(format!("cover map {x} < {y} has the wrong shape")));
                }
            }
        }
        Ok(CoefficientSystem { ring, poset, ranks, cover_maps, shapes: None, labelings: None })
    }

    /// The constant system with value `R` and identity maps.
    pub fn constant(ring: R, poset: &Poset) -> Self {
        let maps = (0..poset.len())
            .map(|x| poset.upper_covers(x).iter().map(|_| SparseMatrix::identity(&ring, 1)).collect())
            .collect();
        CoefficientSystem::new(ring, poset.clone(), vec![1; poset.len()], maps).expect("constant system is well formed")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn module_rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Tensor-factor dimensions of `F(x)` in canonical component order (F_{A,M} only).
    pub fn basis_shape(&self, x: usize) -> Option<&[usize]> {
        self.shapes.as_ref().map(|s| s[x].as_slice())
    }

    pub fn labeling(&self, x: usize) -> Option<&ComponentLabeling> {
        self.labelings.as_ref().map(|l| &l[x])
    }

    pub fn cover_matrix(&self, x: usize, y: usize) -> Option<&SparseMatrix<R::Elem>> {
        let k = self.poset.upper_covers(x).binary_search(&y).ok()?;
        Some(&self.cover_maps[x][k])
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize, &SparseMatrix<R::Elem>)> {
        (0..self.poset.len()).flat_map(move |x| {
            self.poset.upper_covers(x).iter().zip(&self.cover_maps[x]).map(move |(&y, m)| (x, y, m))
        })
    }

    /// `F(x ≤ y)`, the product of cover maps along a saturated chain. In debug
    /// builds every other saturated chain is checked to give the same product.
    pub fn composite_map(&self, x: usize, y: usize) -> Result<SparseMatrix<R::Elem>> {
        if x == y {
            return Ok(SparseMatrix::identity(&self.ring, self.ranks[x]));
        }
        if !self.poset.leq(x, y) {
            return Err(Error::domain(format!("elements {x} and {y} are not comparable")));
        }
        let mut cur = x;
        let mut acc = SparseMatrix::identity(&self.ring, self.ranks[x]);
        while cur != y {
            let next = *self
                .poset
                .upper_covers(cur)
                .iter()
                .find(|&&z| self.poset.leq(z, y))
                .expect("a saturated chain reaches y");
            acc = self.cover_matrix(cur, next).expect("cover").mul(&self.ring, &acc);
            cur = next;
        }
        #[cfg(debug_assertions)]
        {
            let routes = self.interval_composites(x, Some(y), true);
            if let Err(e) = &routes {
                panic!("route dependence in [{x}, {y}]: {e}");
            }
            debug_assert_eq!(routes.unwrap().get(&y), Some(&acc));
        }
        Ok(acc)
    }

    /// Composites `F(x ≤ z)` for every `z ≥ x` (up to `limit` when given),
    /// built in index order. With `check`, every lower cover of `z` inside the
    /// interval must produce the same composite, which by induction means all
    /// saturated chains agree.
    pub fn interval_composites(&self, x: usize, limit: Option<usize>, check: bool) -> Result<HashMap<usize, SparseMatrix<R::Elem>>> {
        let mut out = HashMap::new();
        out.insert(x, SparseMatrix::identity(&self.ring, self.ranks[x]));
        for &z in self.poset.strictly_above(x) {
            if let Some(y) = limit {
                if !self.poset.leq(z, y) {
                    continue;
                }
            }
            let mut found: Option<SparseMatrix<R::Elem>> = None;
            for &w in self.poset.lower_covers(z) {
                let Some(base) = out.get(&w) else { continue };
                let m = self.cover_matrix(w, z).expect("cover").mul(&self.ring, base);
                match &found {
                    None => {
                        found = Some(m);
                        if !check {
                            break;
                        }
                    }
                    Some(prev) if *prev != m => {
                        return Err(Error::Integrity(format!("composites {x} ≤ {z} differ between routes")));
                    }
                    Some(_) => {}
                }
            }
            out.insert(z, found.expect("z lies above x"));
        }
        Ok(out)
    }

    /// Every diamond `x ≺ y ≺ z`, `x ≺ y′ ≺ z` whose two composites differ.
    pub fn square_violations(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut bad = Vec::new();
        for x in 0..self.poset.len() {
            let ups = self.poset.upper_covers(x);
            for (i, &y) in ups.iter().enumerate() {
                for &y2 in &ups[i + 1..] {
                    for &z in self.poset.upper_covers(y) {
                        if !self.poset.is_cover(y2, z) {
                            continue;
                        }
                        let a = self.cover_matrix(y, z).unwrap().mul(&self.ring, self.cover_matrix(x, y).unwrap());
                        let b = self.cover_matrix(y2, z).unwrap().mul(&self.ring, self.cover_matrix(x, y2).unwrap());
                        if a != b {
                            bad.push((x, y, y2, z));
                        }
                    }
                }
            }
        }
        bad
    }
}

/// Which vertex carries the bimodule factor. Unbased graphs are allowed only
/// with the regular bimodule, in which case vertex 0 is used.
pub fn effective_base<R: Ring>(g: &Digraph, a: &Algebra<R>, m: &Bimodule<R>) -> Result<usize> {
    match g.base() {
        Some(b) => Ok(b),
        None if m.is_regular_of(a) => Ok(0),
        None => Err(Error::validation("base vertex required: the digraph is unbased and the bimodule is not the regular one")),
    }
}

/// Builds `F_{A,M}` on the path poset of `g`.
pub fn build_coefficient_system<R: Ring>(p: &PathPoset, a: &Algebra<R>, m: &Bimodule<R>) -> Result<CoefficientSystem<R>> {
    let g = p.graph();
    let base = effective_base(g, a, m)?;
    let ring = a.ring().clone();

    let labelings: Vec<ComponentLabeling> = p
        .elements()
        .iter()
        .map(|x| {
            let mut l = components_unchecked(g, x.edges());
            l.base_component = Some(l.component_of[base]);
            l
        })
        .collect();
    let shapes: Vec<Vec<usize>> = labelings
        .iter()
        .map(|l| (0..l.len()).map(|c| if Some(c) == l.base_component { m.dim() } else { a.dim() }).collect())
        .collect();
    let ranks: Vec<usize> = shapes.iter().map(|s| s.iter().product()).collect();

    let mut cover_maps = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let maps = p
            .upper_covers(x)
            .iter()
            .map(|&y| {
                let edge = g.edge(p.added_edge(x, y).expect("cover adds one edge"));
                fusion_matrix(&ring, a, m, &labelings[x], &shapes[x], &labelings[y], &shapes[y], edge.tail, edge.head)
            })
            .collect();
        cover_maps.push(maps);
    }

    let mut cs = CoefficientSystem::new(ring, p.poset().clone(), ranks, cover_maps)?;
    cs.shapes = Some(shapes);
    cs.labelings = Some(labelings);
    Ok(cs)
}

/// The cover map for an edge `tail → head` joining two components of `lx`.
#[allow(clippy::too_many_arguments)]
fn fusion_matrix<R: Ring>(
    ring: &R,
    a: &Algebra<R>,
    m: &Bimodule<R>,
    lx: &ComponentLabeling,
    sx: &[usize],
    ly: &ComponentLabeling,
    sy: &[usize],
    tail: usize,
    head: usize,
) -> SparseMatrix<R::Elem> {
    let (ct, ch) = (lx.component_of[tail], lx.component_of[head]);
    debug_assert_ne!(ct, ch, "a cover edge joins two components");
    let merged = ly.component_of[tail];
    let stride_y = strides(sy);
    // Position in `y` of every untouched component of `x`.
    let target_of: Vec<usize> = lx.components.iter().map(|vs| ly.component_of[vs[0]]).collect();
    let rank_x: usize = sx.iter().product();
    let rank_y: usize = sy.iter().product();

    let product = |t: usize, h: usize| -> &[(usize, R::Elem)] {
        if Some(ct) == lx.base_component {
            m.right_basis(t, h)
        } else if Some(ch) == lx.base_component {
            m.left_basis(t, h)
        } else {
            a.mul_basis(t, h)
        }
    };

    let mut digits = vec![0; sx.len()];
    let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(rank_x);
    for s in 0..rank_x {
        decode(s, sx, &mut digits);
        let offset: usize = (0..sx.len())
            .filter(|&c| c != ct && c != ch)
            .map(|c| digits[c] * stride_y[target_of[c]])
            .sum();
        let col = product(digits[ct], digits[ch])
            .iter()
            .map(|(k, v)| (offset + k * stride_y[merged], v.clone()))
            .collect();
        cols.push(col);
    }
    SparseMatrix::from_columns(ring, rank_y, cols)
}
