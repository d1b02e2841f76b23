//! The Hochschild complex `C_n = M ⊗ A^{⊗n}` with the bar-type boundary.

use crate::algebra::{Algebra, Bimodule};
use crate::complex::{ChainComplex, HomologyResult};
use crate::elim::rank;
use crate::error::{Error, Result};
use crate::matrix::{normalize_sparse, SparseMatrix, SparseVec};
use crate::ring::Ring;

/// Default cap on `dim C_n`.
pub const DEFAULT_MAX_BAR_DIM: usize = 2_000_000;

fn bar_dim(m: usize, d: usize, n: usize, cap: usize) -> Result<usize> {
    (0..n)
        .try_fold(m, |acc, _| acc.checked_mul(d))
        .filter(|&v| v <= cap)
        .ok_or_else(|| Error::Resource(format!("Hochschild degree {n} exceeds {cap} basis elements")))
}

/// The complex in degrees `0..=n_max`. Basis of `C_n`: `m ⊗ a₁ ⊗ ⋯ ⊗ a_n`
/// in mixed radix with `m` most significant.
pub fn hochschild_complex<R: Ring>(a: &Algebra<R>, m: &Bimodule<R>, n_max: usize, cap: usize) -> Result<ChainComplex<R>> {
    let ring = a.ring();
    let d = a.dim();
    let dims = (0..=n_max).map(|n| bar_dim(m.dim(), d, n, cap)).collect::<Result<Vec<_>>>()?;
    let mut boundaries = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let lower = d.pow(n as u32 - 1);
        let mut cols: Vec<SparseVec<R::Elem>> = Vec::with_capacity(dims[n]);
        let mut word = vec![0usize; n];
        for g in 0..dims[n] {
            let mi = g / d.pow(n as u32);
            let mut rest = g % d.pow(n as u32);
            for slot in word.iter_mut().rev() {
                *slot = rest % d;
                rest /= d;
            }
            let encode = |letters: &[usize]| letters.iter().fold(0usize, |acc, &x| acc * d + x);
            let mut terms = Vec::new();
            // (m·a₁) ⊗ a₂ ⊗ ⋯ ⊗ a_n
            let tail = encode(&word[1..]);
            for (b, c) in m.right_basis(mi, word[0]) {
                terms.push((b * lower + tail, c.clone()));
            }
            // (−1)^i m ⊗ ⋯ ⊗ a_i a_{i+1} ⊗ ⋯
            for i in 1..n {
                let sign = if i % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
                for (k, c) in a.mul_basis(word[i - 1], word[i]) {
                    let mut merged = Vec::with_capacity(n - 1);
                    merged.extend_from_slice(&word[..i - 1]);
                    merged.push(*k);
                    merged.extend_from_slice(&word[i + 1..]);
                    terms.push((mi * lower + encode(&merged), ring.mul(&sign, c)));
                }
            }
            // (−1)^n (a_n·m) ⊗ a₁ ⊗ ⋯ ⊗ a_{n−1}
            let sign = if n % 2 == 0 { ring.one() } else { ring.neg(&ring.one()) };
            let head = encode(&word[..n - 1]);
            for (b, c) in m.left_basis(word[n - 1], mi) {
                terms.push((b * lower + head, ring.mul(&sign, c)));
            }
            cols.push(normalize_sparse(ring, terms));
        }
        boundaries.push(SparseMatrix::from_columns(ring, dims[n - 1], cols));
    }
    ChainComplex::new(ring.clone(), dims, boundaries)
}

/// `HH_i(A; M)` for `0 ≤ i ≤ i_max`, built one degree higher.
pub fn hochschild_homology<R: Ring>(a: &Algebra<R>, m: &Bimodule<R>, i_max: usize, cap: usize) -> Result<HomologyResult> {
    let c = hochschild_complex(a, m, i_max + 1, cap)?;
    c.homology_through(i_max)
}

/// `dim M − rank span{a·m − m·a}` from the actions alone.
pub fn hh_zero<R: Ring>(a: &Algebra<R>, m: &Bimodule<R>) -> Result<usize> {
    let ring = a.ring();
    let mut cols = Vec::with_capacity(a.dim() * m.dim());
    for i in 0..a.dim() {
        for j in 0..m.dim() {
            let mut terms: Vec<(usize, R::Elem)> = m.left_basis(i, j).to_vec();
            terms.extend(m.right_basis(j, i).iter().map(|(b, c)| (*b, ring.neg(c))));
            cols.push(normalize_sparse(ring, terms));
        }
    }
    let commutators = SparseMatrix::from_columns(ring, m.dim(), cols);
    Ok(m.dim() - rank(ring, &commutators)?)
}
