//! Finite-rank algebras and bimodules given by structure constants, the
//! built-in library, the JSON definition format, and algebra homomorphisms.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::matrix::{normalize_sparse, Matrix, SparseVec};
use crate::ring::{Ring, RingKind};

/// A unital algebra with basis `e_0..e_{d-1}`: `e_i e_j = Σ_k mult[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct Algebra<R: Ring> {
    ring: R,
    name: String,
    dim: usize,
    mult: Vec<Vec<SparseVec<R::Elem>>>,
    unit: Vec<R::Elem>,
    augmentation: Option<Vec<R::Elem>>,
}

fn check_index(i: usize, dim: usize, what: &str) -> Result<()> {
    if i >= dim {
        return Err(Error::domain(format!("{what} index {i} out of range for dimension {dim}")));
    }
    Ok(())
}

impl<R: Ring> Algebra<R> {
    /// `triples` lists nonzero structure constants `(i, j, k, c)`; repeats add up.
    pub fn new(ring: R, name: impl Into<String>, dim: usize, unit: Vec<R::Elem>, triples: Vec<(usize, usize, usize, R::Elem)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("algebra dimension must be positive"));
        }
        if unit.len() != dim {
            return Err(Error::domain(format!("unit has {} coordinates, expected {dim}", unit.len())));
        }
        let mut raw = vec![vec![Vec::new(); dim]; dim];
        for (i, j, k, c) in triples {
            for (idx, what) in [(i, "mult"), (j, "mult"), (k, "mult")] {
                check_index(idx, dim, what)?;
            }
            raw[i][j].push((k, c));
        }
        let mult = raw
            .into_iter()
            .map(|row| row.into_iter().map(|terms| normalize_sparse(&ring, terms)).collect())
            .collect();
        Ok(Algebra { ring, name: name.into(), dim, mult, unit, augmentation: None })
    }

    pub fn with_augmentation(mut self, eps: Vec<R::Elem>) -> Result<Self> {
        if eps.len() != self.dim {
            return Err(Error::domain("augmentation has the wrong length"));
        }
        self.augmentation = Some(eps);
        Ok(self)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[R::Elem] {
        &self.unit
    }

    pub fn augmentation(&self) -> Option<&[R::Elem]> {
        self.augmentation.as_deref()
    }

    /// `e_i e_j` as a sparse coordinate vector.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, R::Elem)] {
        &self.mult[i][j]
    }

    /// Product of two dense elements.
    pub fn mul(&self, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| !r.is_zero(v)) {
            for (j, bj) in b.iter().enumerate().filter(|(_, v)| !r.is_zero(v)) {
                let ab = r.mul(ai, bj);
                for (k, c) in &self.mult[i][j] {
                    r.add_mul_assign(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); self.dim];
        v[i] = self.ring.one();
        v
    }

    /// Nonzero structure constants `(i, j, k, c)`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &R::Elem)> {
        self.mult
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().flat_map(move |(j, t)| t.iter().map(move |(k, c)| (i, j, k.to_owned(), c))))
    }

    /// The opposite algebra: `e_i ∘ e_j = e_j e_i`.
    pub fn opposite(&self) -> Algebra<R> {
        let triples = self.structure_constants().map(|(i, j, k, c)| (j, i, k, c.clone())).collect();
        Algebra::new(self.ring.clone(), format!("{}^op", self.name), self.dim, self.unit.clone(), triples).expect("same shape")
    }
}

/// Every violated instance of associativity and the unit laws.
pub fn validate_algebra<R: Ring>(a: &Algebra<R>) -> Vec<String> {
    let r = &a.ring;
    let d = a.dim;
    let mut violations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            for k in 0..d {
                let left = a.mul(&ij, &a.basis_vector(k));
                let jk = a.mul(&a.basis_vector(j), &a.basis_vector(k));
                let right = a.mul(&a.basis_vector(i), &jk);
                for l in 0..d {
                    if left[l] != right[l] {
                        violations.push(format!(
                            "associativity fails at (i,j,k,l)=({i},{j},{k},{l}): {} != {}",
                            r.format(&left[l]),
                            r.format(&right[l])
                        ));
                    }
                }
            }
        }
    }
    for j in 0..d {
        let e = a.basis_vector(j);
        if a.mul(&a.unit, &e) != e {
            violations.push(format!("left unit law fails for e_{j}"));
        }
        if a.mul(&e, &a.unit) != e {
            violations.push(format!("right unit law fails for e_{j}"));
        }
    }
    violations
}

/// An `A–A` bimodule with basis `m_0..m_{m-1}`:
/// `e_i · m_a = Σ_b left[i][a][b] m_b` and `m_a · e_i = Σ_b right[a][i][b] m_b`.
#[derive(Clone, Debug)]
pub struct Bimodule<R: Ring> {
    name: String,
    dim: usize,
    left: Vec<Vec<SparseVec<R::Elem>>>,
    right: Vec<Vec<SparseVec<R::Elem>>>,
}

impl<R: Ring> Bimodule<R> {
    pub fn new(
        algebra: &Algebra<R>,
        name: impl Into<String>,
        dim: usize,
        left: Vec<(usize, usize, usize, R::Elem)>,
        right: Vec<(usize, usize, usize, R::Elem)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("bimodule dimension must be positive"));
        }
        let ring = algebra.ring();
        let d = algebra.dim();
        let mut l = vec![vec![Vec::new(); dim]; d];
        for (i, a, b, c) in left {
            check_index(i, d, "left action algebra")?;
            check_index(a, dim, "left action module")?;
            check_index(b, dim, "left action module")?;
            l[i][a].push((b, c));
        }
        let mut rt = vec![vec![Vec::new(); d]; dim];
        for (a, i, b, c) in right {
            check_index(i, d, "right action algebra")?;
            check_index(a, dim, "right action module")?;
            check_index(b, dim, "right action module")?;
            rt[a][i].push((b, c));
        }
        let norm = |m: Vec<Vec<SparseVec<R::Elem>>>| -> Vec<Vec<SparseVec<R::Elem>>> {
            m.into_iter().map(|row| row.into_iter().map(|t| normalize_sparse(ring, t)).collect()).collect()
        };
        Ok(Bimodule { name: name.into(), dim, left: norm(l), right: norm(rt) })
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &Algebra<R>) -> Bimodule<R> {
        let left = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        let right = a.structure_constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        Bimodule::new(a, "regular", a.dim(), left, right).expect("regular bimodule is well formed")
    }

    /// The ground ring with `A` acting through its augmentation on both sides.
    pub fn augmentation(a: &Algebra<R>) -> Result<Bimodule<R>> {
        let eps = a
            .augmentation()
            .ok_or_else(|| Error::validation(format!("algebra `{}` has no augmentation", a.name())))?;
        let left = eps.iter().enumerate().map(|(i, c)| (i, 0, 0, c.clone())).collect();
        let right = eps.iter().enumerate().map(|(i, c)| (0, i, 0, c.clone())).collect();
        Bimodule::new(a, "augmentation", 1, left, right)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_basis(&self, i: usize, a: usize) -> &[(usize, R::Elem)] {
        &self.left[i][a]
    }

    pub fn right_basis(&self, a: usize, i: usize) -> &[(usize, R::Elem)] {
        &self.right[a][i]
    }

    /// `x · m` for dense `x ∈ A`, `m ∈ M`.
    pub fn act_left(&self, ring: &R, x: &[R::Elem], m: &[R::Elem]) -> Vec<R::Elem> {
        let mut out = vec![ring.zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !ring.is_zero(v)) {
            for (a, ma) in m.iter().enumerate().filter(|(_, v)| !ring.is_zero(v)) {
                let s = ring.mul(xi, ma);
                for (b, c) in &self.left[i][a] {
                    ring.add_mul_assign(&mut out[*b], &s, c);
                }
            }
        }
        out
    }

    /// `m · x` for dense `m ∈ M`, `x ∈ A`.
    pub fn act_right(&self, ring: &R, m: &[R::Elem], x: &[R::Elem]) -> Vec<R::Elem> {
        let mut out = vec![ring.zero(); self.dim];
        for (a, ma) in m.iter().enumerate().filter(|(_, v)| !ring.is_zero(v)) {
            for (i, xi) in x.iter().enumerate().filter(|(_, v)| !ring.is_zero(v)) {
                let s = ring.mul(ma, xi);
                for (b, c) in &self.right[a][i] {
                    ring.add_mul_assign(&mut out[*b], &s, c);
                }
            }
        }
        out
    }

    /// Structural equality with the regular bimodule of `a`.
    pub fn is_regular_of(&self, a: &Algebra<R>) -> bool {
        self.dim == a.dim()
            && (0..a.dim()).all(|i| (0..a.dim()).all(|j| self.left[i][j] == a.mult[i][j] && self.right[i][j] == a.mult[i][j]))
    }
}

fn module_vector<R: Ring>(ring: &R, dim: usize, a: usize) -> Vec<R::Elem> {
    let mut v = vec![ring.zero(); dim];
    v[a] = ring.one();
    v
}

/// Every violated instance of the bimodule axioms.
pub fn validate_bimodule<R: Ring>(a: &Algebra<R>, m: &Bimodule<R>) -> Vec<String> {
    let r = a.ring();
    let (d, md) = (a.dim(), m.dim());
    let mut violations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            for x in 0..md {
                let mv = module_vector(r, md, x);
                let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
                if m.act_left(r, &ij, &mv) != m.act_left(r, &ei, &m.act_left(r, &ej, &mv)) {
                    violations.push(format!("left action not associative at (e_{i} e_{j}) m_{x}"));
                }
                if m.act_right(r, &mv, &ij) != m.act_right(r, &m.act_right(r, &mv, &ei), &ej) {
                    violations.push(format!("right action not associative at m_{x} (e_{i} e_{j})"));
                }
                if m.act_right(r, &m.act_left(r, &ei, &mv), &ej) != m.act_left(r, &ei, &m.act_right(r, &mv, &ej)) {
                    violations.push(format!("actions not compatible at e_{i} m_{x} e_{j}"));
                }
            }
        }
    }
    for x in 0..md {
        let mv = module_vector(r, md, x);
        if m.act_left(r, a.unit(), &mv) != mv {
            violations.push(format!("unit does not act as identity on the left of m_{x}"));
        }
        if m.act_right(r, &mv, a.unit()) != mv {
            violations.push(format!("unit does not act as identity on the right of m_{x}"));
        }
    }
    violations
}

/// The built-in algebras: `ground`, `dual` (`R[x]/x²`), `trunc3` (`R[x]/x³`)
/// and `ut2` (upper-triangular 2×2 matrices on `E11, E12, E22`).
pub fn builtin_algebra<R: Ring>(ring: &R, name: &str) -> Result<Algebra<R>> {
    let one = ring.one();
    let zero = ring.zero();
    let t = |i, j, k| (i, j, k, one.clone());
    match name {
        "ground" => Algebra::new(ring.clone(), name, 1, vec![one.clone()], vec![t(0, 0, 0)])?.with_augmentation(vec![one.clone()]),
        "dual" | "trunc3" => {
            let d = if name == "dual" { 2 } else { 3 };
            let mut triples = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    if i + j < d {
                        triples.push(t(i, j, i + j));
                    }
                }
            }
            let mut unit = vec![zero.clone(); d];
            unit[0] = one.clone();
            Algebra::new(ring.clone(), name, d, unit.clone(), triples)?.with_augmentation(unit)
        }
        "ut2" => {
            // E11·E11 = E11, E11·E12 = E12, E12·E22 = E12, E22·E22 = E22
            let triples = vec![t(0, 0, 0), t(0, 1, 1), t(1, 2, 1), t(2, 2, 2)];
            Algebra::new(ring.clone(), name, 3, vec![one.clone(), zero.clone(), one.clone()], triples)?
                .with_augmentation(vec![one.clone(), zero.clone(), zero])
        }
        other => Err(Error::validation(format!("unknown built-in algebra `{other}`"))),
    }
}

/// The built-in bimodules: `regular` and `augmentation` (alias `aug`).
pub fn builtin_bimodule<R: Ring>(algebra: &Algebra<R>, name: &str) -> Result<Bimodule<R>> {
    match name {
        "regular" => Ok(Bimodule::regular(algebra)),
        "augmentation" | "aug" => Bimodule::augmentation(algebra),
        other => Err(Error::validation(format!("unknown built-in bimodule `{other}`"))),
    }
}

/// Reads a scalar written as a JSON integer or a `"p/q"` string.
pub fn parse_scalar<R: Ring>(ring: &R, v: &Value) -> Result<R::Elem> {
    let (num, den) = match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| Error::validation(format!("scalar {n} is not an integer")))?;
            (Int::from(i), Int::ONE)
        }
        Value::String(s) => {
            let (p, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let parse = |t: &str| t.trim().parse::<Int>().map_err(|_| Error::validation(format!("bad scalar `{s}`")));
            (parse(p)?, parse(q)?)
        }
        other => return Err(Error::validation(format!("bad scalar {other}"))),
    };
    ring.from_ratio(&num, &den)
        .ok_or_else(|| Error::validation(format!("scalar {num}/{den} is not an element of {}", ring.kind())))
}

/// The `"ring"` field of an algebra or bimodule definition file.
pub fn definition_ring(json: &Value) -> Result<RingKind> {
    json.get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::validation("definition file has no \"ring\" field"))?
        .parse()
}

fn definition_dim(json: &Value) -> Result<usize> {
    json.get("dim")
        .and_then(Value::as_u64)
        .map(|d| d as usize)
        .ok_or_else(|| Error::validation("definition file has no integer \"dim\" field"))
}

fn definition_tuples<R: Ring>(ring: &R, json: &Value, key: &str) -> Result<Vec<(usize, usize, usize, R::Elem)>> {
    let Some(list) = json.get(key) else { return Ok(Vec::new()) };
    let list = list.as_array().ok_or_else(|| Error::validation(format!("\"{key}\" must be an array")))?;
    list.iter()
        .map(|entry| {
            let parts = entry
                .as_array()
                .filter(|p| p.len() == 4)
                .ok_or_else(|| Error::validation(format!("\"{key}\" entries must be [i, j, k, value]")))?;
            let idx = |v: &Value| v.as_u64().map(|x| x as usize).ok_or_else(|| Error::validation(format!("bad index {v} in \"{key}\"")));
            Ok((idx(&parts[0])?, idx(&parts[1])?, idx(&parts[2])?, parse_scalar(ring, &parts[3])?))
        })
        .collect()
}

fn check_definition_ring<R: Ring>(ring: &R, json: &Value) -> Result<()> {
    let kind = definition_ring(json)?;
    if kind != ring.kind() {
        return Err(Error::validation(format!("definition file is over {kind} but the run is over {}", ring.kind())));
    }
    Ok(())
}

/// `{ "ring", "dim", "unit", "mult": [[i,j,k,value], ...] }`; omitted triples are zero.
pub fn algebra_from_json<R: Ring>(ring: &R, name: &str, json: &Value) -> Result<Algebra<R>> {
    check_definition_ring(ring, json)?;
    let dim = definition_dim(json)?;
    let unit = json
        .get("unit")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::validation("algebra definition has no \"unit\" array"))?
        .iter()
        .map(|v| parse_scalar(ring, v))
        .collect::<Result<Vec<_>>>()?;
    let mut alg = Algebra::new(ring.clone(), name, dim, unit, definition_tuples(ring, json, "mult")?)?;
    if let Some(eps) = json.get("augmentation").and_then(Value::as_array) {
        let eps = eps.iter().map(|v| parse_scalar(ring, v)).collect::<Result<Vec<_>>>()?;
        alg = alg.with_augmentation(eps)?;
    }
    Ok(alg)
}

/// `{ "ring", "dim", "left": [[i,a,b,value], ...], "right": [[a,i,b,value], ...] }`.
pub fn bimodule_from_json<R: Ring>(algebra: &Algebra<R>, name: &str, json: &Value) -> Result<Bimodule<R>> {
    let ring = algebra.ring();
    check_definition_ring(ring, json)?;
    let dim = definition_dim(json)?;
    Bimodule::new(algebra, name, dim, definition_tuples(ring, json, "left")?, definition_tuples(ring, json, "right")?)
}

/// A validated unital algebra homomorphism, as a `dim B × dim A` matrix.
#[derive(Clone, Debug)]
pub struct AlgebraHom<R: Ring> {
    matrix: Matrix<R::Elem>,
}

impl<R: Ring> AlgebraHom<R> {
    pub fn matrix(&self) -> &Matrix<R::Elem> {
        &self.matrix
    }

    pub fn apply(&self, ring: &R, v: &[R::Elem]) -> Vec<R::Elem> {
        self.matrix.mul_vec(ring, v)
    }

    pub fn compose(&self, ring: &R, inner: &AlgebraHom<R>) -> AlgebraHom<R> {
        AlgebraHom { matrix: self.matrix.mul(ring, &inner.matrix) }
    }
}

pub fn validate_homomorphism<R: Ring>(a: &Algebra<R>, b: &Algebra<R>, matrix: Matrix<R::Elem>) -> Result<AlgebraHom<R>> {
    let ring = a.ring();
    if matrix.nrows() != b.dim() || matrix.ncols() != a.dim() {
        return Err(Error::domain(format!(
            "homomorphism matrix is {}x{}, expected {}x{}",
            matrix.nrows(),
            matrix.ncols(),
            b.dim(),
            a.dim()
        )));
    }
    let mut violations = Vec::new();
    if matrix.mul_vec(ring, a.unit()) != b.unit() {
        violations.push("f(1) != 1".to_string());
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = matrix.mul_vec(ring, &a.mul(&a.basis_vector(i), &a.basis_vector(j)));
            let rhs = b.mul(&matrix.column_vec(i), &matrix.column_vec(j));
            if lhs != rhs {
                violations.push(format!("f(e_{i} e_{j}) != f(e_{i}) f(e_{j})"));
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::Violations(violations));
    }
    Ok(AlgebraHom { matrix })
}

/// The augmentation of `a` as a homomorphism onto the ground algebra.
pub fn augmentation_hom<R: Ring>(a: &Algebra<R>, ground: &Algebra<R>) -> Result<AlgebraHom<R>> {
    let eps = a.augmentation().ok_or_else(|| Error::validation("algebra has no augmentation"))?;
    validate_homomorphism(a, ground, Matrix::from_rows(a.ring(), vec![eps.to_vec()]))
}
