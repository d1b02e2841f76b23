//! End-to-end computations shared by the command line and the test suites.

use serde::Serialize;

use crate::algebra::{Algebra, Bimodule};
use crate::coeff::build_coefficient_system;
use crate::complex::{ComplexLimits, DegreeHomology, HomologyResult, PosetComplex};
use crate::digraph::{make_polygon, Digraph, DigraphInclusion};
use crate::error::Result;
use crate::functor::{homology_map, HomologyMap, InclusionContext};
use crate::oracles::{hochschild_homology, polygon_hat_homology};
use crate::poset::{enumerate_path_poset, PosetConfig};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub poset: PosetConfig,
    pub complex: ComplexLimits,
    pub max_bar_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { poset: PosetConfig::default(), complex: ComplexLimits::default(), max_bar_dim: crate::oracles::DEFAULT_MAX_BAR_DIM }
    }
}

#[derive(Clone, Debug)]
pub struct PathHomology {
    pub homology: HomologyResult,
    /// Dimensions of the normalized complex before reduction.
    pub dims: Vec<usize>,
}

/// `H_*(Γ; F_{A,M})`.
pub fn path_homology<R: Ring>(g: &Digraph, a: &Algebra<R>, m: &Bimodule<R>, caps: &Caps) -> Result<PathHomology> {
    let p = enumerate_path_poset(g, caps.poset)?;
    let cs = build_coefficient_system(&p, a, m)?;
    let c = PosetComplex::new(&cs, caps.complex)?;
    Ok(PathHomology { homology: c.homology()?, dims: c.dims().to_vec() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonRow {
    pub degree: usize,
    pub path_poset: DegreeHomology,
    pub hochschild: DegreeHomology,
    /// `Ĥ_{degree + 1}`.
    pub chromatic_hat: DegreeHomology,
    pub agree: bool,
    /// Whether this degree counts toward the verdict.
    pub required: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolygonComparison {
    pub n: usize,
    pub rows: Vec<ComparisonRow>,
    pub pass: bool,
}

/// Compares the three computations on the based `n`-gon. Degrees
/// `0..=n-2` decide the verdict; degree `n-1` is reported alongside.
pub fn compare_polygon<R: Ring>(n: usize, a: &Algebra<R>, m: &Bimodule<R>, caps: &Caps) -> Result<PolygonComparison> {
    let g = make_polygon(n, true)?;
    let path = path_homology(&g, a, m, caps)?.homology;
    let top = n - 1;
    let hh = hochschild_homology(a, m, top, caps.max_bar_dim)?;
    let hat = polygon_hat_homology(n, a, m)?;
    let rows: Vec<ComparisonRow> = (0..=top)
        .map(|i| {
            let (p, h, c) = (path.degree(i), hh.degree(i), hat.degree(i + 1));
            ComparisonRow { degree: i, agree: p == h && p == c, required: i + 2 <= n, path_poset: p, hochschild: h, chromatic_hat: c }
        })
        .collect();
    let pass = rows.iter().filter(|r| r.required).all(|r| r.agree);
    Ok(PolygonComparison { n, rows, pass })
}

/// Maps induced by an inclusion in every degree where both sides are defined.
pub fn induced_maps<R: Ring>(inc: &DigraphInclusion, a: &Algebra<R>, m: &Bimodule<R>, config: PosetConfig) -> Result<Vec<HomologyMap<R>>> {
    let ctx = InclusionContext::new(inc, a, m, config)?;
    let f = ctx.chain_map()?;
    let src = ctx.source_complex()?.materialize()?;
    let tgt = ctx.target_complex()?.materialize()?;
    f.verify(&src, &tgt)?;
    (0..=src.top_degree()).map(|k| homology_map(&f, &src, &tgt, k)).collect()
}
