//! Smith normal form of dense matrices over a Euclidean [`Ring`].

use crate::matrix::Matrix;
use crate::ring::Ring;

/// `u · a · v = d` with `d` diagonal and each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub v: Matrix<E>,
    pub v_inv: Matrix<E>,
    pub d: Matrix<E>,
    /// Nonzero diagonal entries, in canonical associate form.
    pub diagonal: Vec<E>,
}

impl<E> SmithForm<E> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Transforms<E> {
    u: Matrix<E>,
    u_inv: Matrix<E>,
    v: Matrix<E>,
    v_inv: Matrix<E>,
}

struct Work<'a, R: Ring> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    t: Option<Transforms<R::Elem>>,
}

impl<R: Ring> Work<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.ring;
        self.a.add_row_multiple(r, dst, src, c);
        if let Some(t) = &mut self.t {
            t.u.add_row_multiple(r, dst, src, c);
            t.u_inv.add_col_multiple(r, src, dst, &r.neg(c));
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &R::Elem) {
        let r = self.ring;
        self.a.add_col_multiple(r, dst, src, c);
        if let Some(t) = &mut self.t {
            t.v.add_col_multiple(r, dst, src, c);
            t.v_inv.add_row_multiple(r, src, dst, &r.neg(c));
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem) {
        let r = self.ring;
        let inv = r.inv(unit).expect("scaling by a unit");
        self.a.scale_row(r, i, unit);
        if let Some(t) = &mut self.t {
            t.u.scale_row(r, i, unit);
            t.u_inv.scale_col(r, i, &inv);
        }
    }

    /// Position of the smallest nonzero entry in the trailing block from `t`.
    fn smallest_from(&self, t: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let mut best: Option<(usize, usize, crate::int::Int)> = None;
        for i in t..self.a.nrows() {
            for j in t..self.a.ncols() {
                let v = self.a.get(i, j);
                if r.is_zero(v) {
                    continue;
                }
                let s = r.size(v);
                if best.as_ref().is_none_or(|b| s < b.2) {
                    let unit = r.is_unit(v);
                    best = Some((i, j, s));
                    if unit {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) -> Vec<R::Elem> {
        let r = self.ring;
        let (m, n) = (self.a.nrows(), self.a.ncols());
        let mut diagonal = Vec::new();
        for t in 0..m.min(n) {
            let Some((i, j)) = self.smallest_from(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                // Clear column t; a nonzero remainder becomes the new, smaller pivot.
                let mut smaller = None;
                for i in t + 1..m {
                    if r.is_zero(self.a.get(i, t)) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(self.a.get(i, t), self.a.get(t, t));
                    self.add_row(i, t, &r.neg(&q));
                    if !r.is_zero(&rem) {
                        smaller = Some(i);
                    }
                }
                if let Some(i) = smaller {
                    self.swap_rows(t, i);
                    continue;
                }
                for j in t + 1..n {
                    if r.is_zero(self.a.get(t, j)) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(self.a.get(t, j), self.a.get(t, t));
                    self.add_col(j, t, &r.neg(&q));
                    if !r.is_zero(&rem) {
                        smaller = Some(j);
                    }
                }
                if let Some(j) = smaller {
                    self.swap_cols(t, j);
                    continue;
                }
                // Row and column are clear; the pivot must divide the rest.
                let p = self.a.get(t, t).clone();
                let offender = (t + 1..m).find(|&i| {
                    (t + 1..n).any(|j| {
                        let v = self.a.get(i, j);
                        !r.is_zero(v) && !r.is_zero(&r.div_rem(v, &p).1)
                    })
                });
                match offender {
                    Some(i) => self.add_row(t, i, &r.one()),
                    None => break,
                }
            }
            let unit = r.canonical_unit(self.a.get(t, t));
            if !r.is_one(&unit) {
                self.scale_row(t, &unit);
            }
            diagonal.push(self.a.get(t, t).clone());
        }
        diagonal
    }
}

/// Smith normal form with unimodular transforms and their inverses.
pub fn smith_normal_form<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> SmithForm<R::Elem> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut w = Work {
        ring,
        a: a.clone(),
        t: Some(Transforms {
            u: Matrix::identity(ring, m),
            u_inv: Matrix::identity(ring, m),
            v: Matrix::identity(ring, n),
            v_inv: Matrix::identity(ring, n),
        }),
    };
    let diagonal = w.run();
    let t = w.t.take().expect("transforms tracked");
    let form = SmithForm { u: t.u, u_inv: t.u_inv, v: t.v, v_inv: t.v_inv, d: w.a, diagonal };
    #[cfg(debug_assertions)]
    check_postconditions(ring, a, &form);
    form
}

/// Nonzero invariant factors only, without tracking transforms.
pub fn invariant_factors<R: Ring>(ring: &R, a: Matrix<R::Elem>) -> Vec<R::Elem> {
    let mut w = Work { ring, a, t: None };
    let diagonal = w.run();
    debug_assert!(divisibility_chain(ring, &diagonal));
    diagonal
}

pub fn divisibility_chain<R: Ring>(ring: &R, diagonal: &[R::Elem]) -> bool {
    diagonal.windows(2).all(|w| ring.is_zero(&ring.div_rem(&w[1], &w[0]).1))
}

/// Panics unless `form` is a Smith normal form of `a`.
pub fn check_postconditions<R: Ring>(ring: &R, a: &Matrix<R::Elem>, form: &SmithForm<R::Elem>) {
    let (m, n) = (a.nrows(), a.ncols());
    assert_eq!(form.u.mul(ring, a).mul(ring, &form.v), form.d, "U·A·V differs from D");
    assert_eq!(form.u.mul(ring, &form.u_inv), Matrix::identity(ring, m), "U is not invertible");
    assert_eq!(form.v.mul(ring, &form.v_inv), Matrix::identity(ring, n), "V is not invertible");
    for i in 0..m {
        for j in 0..n {
            let v = form.d.get(i, j);
            if i != j || i >= form.diagonal.len() {
                assert!(ring.is_zero(v), "D has a stray entry at ({i}, {j})");
            } else {
                assert_eq!(v, &form.diagonal[i]);
                assert!(ring.is_one(&ring.canonical_unit(v)), "diagonal entry not canonical");
            }
        }
    }
    assert!(divisibility_chain(ring, &form.diagonal), "diagonal is not a divisibility chain");
}
