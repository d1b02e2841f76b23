//! Sparse elimination on unit pivots, finished by a dense Smith normal form
//! on whatever is left.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::matrix::{sparse_axpy, Matrix, SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::snf::invariant_factors;

/// Largest remainder (rows × columns) handed to the dense phase.
pub const DENSE_LIMIT: usize = 40_000_000;

/// Rank of a matrix and its invariant factors that are not units.
#[derive(Clone, Debug, PartialEq)]
pub struct RankProfile<E> {
    pub rank: usize,
    pub torsion: Vec<E>,
}

/// Eliminates on unit pivots chosen by small size, then short rows, then
/// short columns. Returns the pivot count and the rows that remain, which
/// contain no unit entries.
pub fn eliminate_units<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>) -> (usize, Vec<SparseVec<R::Elem>>) {
    let ncols = m.ncols();
    let mut rows: Vec<SparseVec<R::Elem>> = m.transpose().into_columns();
    let mut col_count = vec![0usize; ncols];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_count[*j] += 1;
            col_rows[*j].push(i);
        }
    }
    let mut version = vec![0u32; rows.len()];
    let mut alive = vec![true; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize, u32)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i, 0))).collect();
    let mut pivots = 0;

    while let Some(Reverse((_, i, ver))) = heap.pop() {
        if !alive[i] || ver != version[i] || rows[i].is_empty() {
            continue;
        }
        let choice = rows[i]
            .iter()
            .enumerate()
            .filter(|(_, (_, v))| ring.is_unit(v))
            .min_by(|(_, (ja, va)), (_, (jb, vb))| {
                ring.size(va).cmp(&ring.size(vb)).then(col_count[*ja].cmp(&col_count[*jb])).then(ja.cmp(jb))
            })
            .map(|(k, _)| k);
        let Some(k) = choice else { continue };
        let (j, p) = rows[i][k].clone();
        let p_inv = ring.inv(&p).expect("unit pivot");
        alive[i] = false;
        pivots += 1;
        let pivot_row = std::mem::take(&mut rows[i]);
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        let mut targets = std::mem::take(&mut col_rows[j]);
        targets.sort_unstable();
        targets.dedup();
        for s in targets {
            if !alive[s] {
                continue;
            }
            let Ok(pos) = rows[s].binary_search_by_key(&j, |e| e.0) else { continue };
            let factor = ring.neg(&ring.mul(&rows[s][pos].1, &p_inv));
            let old = std::mem::take(&mut rows[s]);
            let new = sparse_axpy(ring, &old, &factor, &pivot_row);
            // Keep column counts exact and register new occupants.
            let (mut a, mut b) = (0, 0);
            while a < old.len() || b < new.len() {
                match (old.get(a), new.get(b)) {
                    (Some(x), Some(y)) if x.0 == y.0 => {
                        a += 1;
                        b += 1;
                    }
                    (Some(x), y) if y.is_none_or(|y| x.0 < y.0) => {
                        col_count[x.0] -= 1;
                        a += 1;
                    }
                    (_, Some(y)) => {
                        col_count[y.0] += 1;
                        col_rows[y.0].push(s);
                        b += 1;
                    }
                    _ => unreachable!(),
                }
            }
            rows[s] = new;
            version[s] += 1;
            if !rows[s].is_empty() {
                heap.push(Reverse((rows[s].len(), s, version[s])));
            }
        }
    }
    let rest = rows.into_iter().zip(alive).filter(|(r, a)| *a && !r.is_empty()).map(|(r, _)| r).collect();
    (pivots, rest)
}

/// Rank and non-unit invariant factors of a sparse matrix.
pub fn rank_profile<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>) -> Result<RankProfile<R::Elem>> {
    let (pivots, rest) = eliminate_units(ring, m);
    if rest.is_empty() {
        return Ok(RankProfile { rank: pivots, torsion: Vec::new() });
    }
    let mut used: Vec<usize> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    if rest.len().saturating_mul(used.len()) > DENSE_LIMIT {
        return Err(Error::Resource(format!(
            "dense elimination block of {} x {} exceeds the limit",
            rest.len(),
            used.len()
        )));
    }
    let mut dense = Matrix::zeros(ring, rest.len(), used.len());
    for (i, row) in rest.into_iter().enumerate() {
        for (j, v) in row {
            let c = used.binary_search(&j).expect("column recorded");
            dense.set(i, c, v);
        }
    }
    let factors = invariant_factors(ring, dense);
    let torsion = factors.iter().filter(|v| !ring.is_unit(v)).cloned().collect();
    Ok(RankProfile { rank: pivots + factors.len(), torsion })
}

pub fn rank<R: Ring>(ring: &R, m: &SparseMatrix<R::Elem>) -> Result<usize> {
    Ok(rank_profile(ring, m)?.rank)
}

/// Torsion coefficients as integers, ascending; empty over fields.
pub fn torsion_as_ints<R: Ring>(ring: &R, torsion: &[R::Elem]) -> Vec<Int> {
    let mut out: Vec<Int> = torsion.iter().filter_map(|v| ring.as_int(v)).map(|v| v.abs()).collect();
    out.sort();
    out
}
