//! Finite-dimensional commutative algebras given by structure constants:
//! products, adjoints, eigendecompositions, axis and fusion verification,
//! minimal fusion laws, ideals, quotients, automorphisms and Miyamoto maps.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{FieldError, ParamAssignment, Scalar};
use crate::fusion::{Character, FusionLaw, GradingGroup};
use crate::linalg::{Certificate, Matrix, Subspace, Vect};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch")]
    DimMismatch,
    #[error("duplicate eigenvalue {0}")]
    DuplicateEigenvalue(String),
    #[error("eigendecomposition is not complete")]
    IncompleteDecomposition,
    #[error("axis is not primitive")]
    NotPrimitive,
    #[error("generators do not span an ideal")]
    NotAnIdeal,
    #[error("matrix entries are not fully specialized")]
    NotSpecialized,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("algebra parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Commutative algebra by structure constants; products stored once per
/// unordered basis pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    basis: Vec<String>,
    /// table[idx(i, j)] for i <= j.
    table: Vec<Vect>,
    params: Vec<String>,
}

fn pair_index(i: usize, j: usize) -> (usize, usize) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl Algebra {
    pub fn new(basis: Vec<String>) -> Algebra {
        let n = basis.len();
        let table = vec![Vect::zero(n); n * (n + 1) / 2];
        Algebra { basis, table, params: vec![] }
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = pair_index(i, j);
        // row-major upper triangle
        i * self.dim() - i * (i + 1) / 2 + j
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vect) {
        assert_eq!(v.dim(), self.dim(), "structure constant dimension mismatch");
        let k = self.idx(i, j);
        self.table[k] = v;
        self.recompute_params();
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vect {
        &self.table[self.idx(i, j)]
    }

    fn recompute_params(&mut self) {
        let mut names: Vec<String> = Vec::new();
        for v in &self.table {
            for c in &v.coords {
                for p in c.params() {
                    if !names.contains(&p) {
                        names.push(p);
                    }
                }
            }
        }
        names.sort();
        self.params = names;
    }

    pub fn product(&self, u: &Vect, v: &Vect) -> Vect {
        assert_eq!(u.dim(), self.dim(), "vector dimension mismatch");
        assert_eq!(v.dim(), self.dim(), "vector dimension mismatch");
        if self.dim() == 0 {
            return Vect::new(vec![]);
        }
        let mut acc = Vect::new(vec![u.coords[0].zero_like(); self.dim()]);
        for i in 0..self.dim() {
            if u.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if v.coords[j].is_zero() {
                    continue;
                }
                let c = u.coords[i].mul(&v.coords[j]);
                let sc = self.basis_product(i, j);
                for k in 0..self.dim() {
                    acc.coords[k] = acc.coords[k].add(&c.mul(&sc.coords[k]));
                }
            }
        }
        acc
    }

    /// Adjoint action of a: column j is a * e_j.
    pub fn adjoint(&self, a: &Vect) -> Matrix {
        let cols: Vec<Vect> = (0..self.dim())
            .map(|j| {
                let mut e = Vect::zero(self.dim());
                e.coords[j] = a.coords[0].one_like();
                self.product(a, &e)
            })
            .collect();
        Matrix::from_cols(&cols)
    }

    /// Applies prod_{l in lambdas} (ad_a - l) to v.
    pub fn f_poly_adjoint(&self, a: &Vect, lambdas: &[Scalar], v: &Vect) -> Vect {
        let mut w = v.clone();
        for l in lambdas {
            w = self.product(a, &w).sub(&w.scale(l));
        }
        w
    }

    pub fn lift_omega(&self) -> Algebra {
        let mut alg = self.clone();
        alg.table = alg.table.iter().map(Vect::lift_omega).collect();
        alg
    }

    /// True when the structure constants live in the omega extension.
    pub fn is_omega_mode(&self) -> bool {
        self.table
            .iter()
            .any(|v| v.coords.iter().any(Scalar::is_omega_mode))
    }

    pub fn specialize(&self, at: &ParamAssignment) -> Result<Algebra, AlgebraError> {
        let mut alg = self.clone();
        for v in &mut alg.table {
            for c in &mut v.coords {
                *c = c.specialize(at)?;
            }
        }
        alg.recompute_params();
        Ok(alg)
    }

    pub fn eigendecompose(
        &self,
        a: &Vect,
        eigenvalues: &[Scalar],
    ) -> Result<EigenDecomposition, AlgebraError> {
        for (i, x) in eigenvalues.iter().enumerate() {
            for y in &eigenvalues[i + 1..] {
                if x == y {
                    return Err(AlgebraError::DuplicateEigenvalue(x.to_string()));
                }
            }
        }
        let ad = self.adjoint(a);
        let mut spaces = Vec::new();
        let mut cert = Certificate::new();
        for l in eigenvalues {
            let m = ad.sub(&Matrix::identity(self.dim()).scale(&l.one_like().mul(l)));
            let k = m.kernel();
            cert.extend(k.certificate.clone());
            spaces.push(k);
        }
        for (i, x) in eigenvalues.iter().enumerate() {
            for y in &eigenvalues[i + 1..] {
                let d = x.sub(y);
                if !d.numerator().is_constant() {
                    cert.insert(monic(d.numerator()));
                }
            }
        }
        let total: usize = spaces.iter().map(Subspace::dim).sum();
        Ok(EigenDecomposition {
            axis: a.clone(),
            eigenvalues: eigenvalues.to_vec(),
            spaces,
            certificate: cert,
            complete: total == self.dim(),
        })
    }

    /// Full axis verification: idempotency, completeness, primitivity and
    /// the fusion containments of the law, all exact.
    pub fn check_axis(
        &self,
        a: &Vect,
        law: &FusionLaw,
        want_primitive: bool,
    ) -> Result<AxisReport, AlgebraError> {
        let idempotent = self.product(a, a) == *a;
        let decomp = self.eigendecompose(a, law.labels())?;
        let mut certificate = decomp.certificate.clone();
        let one_idx = law.label_index(&a.coords[0].one_like());
        let primitive = match one_idx {
            Some(k) => {
                decomp.spaces[k].dim() == 1 && decomp.spaces[k].contains_vector(a)
            }
            None => false,
        };
        let mut violations = Vec::new();
        if decomp.complete {
            let (basis_mat, blocks) = decomp.eigenbasis();
            let (inv, c2) = basis_mat
                .inverse()
                .expect("complete decomposition has an invertible eigenbasis");
            certificate.extend(c2);
            for li in 0..law.len() {
                for lj in li..law.len() {
                    let allowed = law.entry(li, lj);
                    for u in &decomp.spaces[li].basis {
                        for v in &decomp.spaces[lj].basis {
                            let w = self.product(u, v);
                            let coords = inv.mul_vec(&w);
                            for (k, range) in blocks.iter().enumerate() {
                                if allowed.contains(&k) {
                                    continue;
                                }
                                if coords.coords[range.clone()]
                                    .iter()
                                    .any(|c| !c.is_zero())
                                {
                                    violations.push(FusionViolation {
                                        lambda: li,
                                        mu: lj,
                                        component: k,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(AxisReport {
            idempotent,
            complete: decomp.complete,
            primitive: !want_primitive || primitive,
            primitive_checked: primitive,
            violations,
            certificate,
        })
    }

    /// Projection coefficient: the V_1-component of v equals (result) * a.
    pub fn phi(
        &self,
        a: &Vect,
        decomp: &EigenDecomposition,
        v: &Vect,
    ) -> Result<Scalar, AlgebraError> {
        if !decomp.complete {
            return Err(AlgebraError::IncompleteDecomposition);
        }
        let one = a.coords[0].one_like();
        let k = decomp
            .eigenvalues
            .iter()
            .position(|l| *l == one)
            .ok_or(AlgebraError::NotPrimitive)?;
        if decomp.spaces[k].dim() != 1 || !decomp.spaces[k].contains_vector(a) {
            return Err(AlgebraError::NotPrimitive);
        }
        let u = &decomp.spaces[k].basis[0];
        // a = s*u with s nonzero
        let i = u
            .coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("basis vector is nonzero");
        let s = a.coords[i].div(&u.coords[i])?;
        let (basis_mat, blocks) = decomp.eigenbasis();
        let (inv, _) = basis_mat.inverse().expect("eigenbasis invertible");
        let coords = inv.mul_vec(v);
        let t = coords.coords[blocks[k].start].clone();
        Ok(t.div(&s)?)
    }

    /// Smallest fusion table the axis actually satisfies: entry (l, m) is
    /// the set of eigenvalues whose components occur in some product of
    /// eigenbasis vectors.
    pub fn minimal_fusion_law(
        &self,
        a: &Vect,
        eigenvalues: &[Scalar],
    ) -> Result<FusionLaw, AlgebraError> {
        let decomp = self.eigendecompose(a, eigenvalues)?;
        if !decomp.complete {
            return Err(AlgebraError::IncompleteDecomposition);
        }
        let (basis_mat, blocks) = decomp.eigenbasis();
        let (inv, _) = basis_mat.inverse().expect("eigenbasis invertible");
        let mut law = FusionLaw::new(eigenvalues.to_vec())
            .map_err(|e| AlgebraError::DuplicateEigenvalue(e.to_string()))?;
        for li in 0..eigenvalues.len() {
            for lj in li..eigenvalues.len() {
                let mut prods = Vec::new();
                for u in &decomp.spaces[li].basis {
                    for v in &decomp.spaces[lj].basis {
                        let coords = inv.mul_vec(&self.product(u, v));
                        for (k, range) in blocks.iter().enumerate() {
                            if coords.coords[range.clone()].iter().any(|c| !c.is_zero())
                                && !prods.contains(&k)
                            {
                                prods.push(k);
                            }
                        }
                    }
                }
                law.set(li, lj, &prods);
            }
        }
        Ok(law)
    }

    /// Smallest subspace containing gens closed under multiplication by
    /// every basis vector.
    pub fn ideal_closure(&self, gens: &[Vect]) -> Subspace {
        let mut cur = Subspace::from_vectors(self.dim(), gens, Certificate::new());
        loop {
            let mut vecs = cur.basis.clone();
            for v in &cur.basis {
                for j in 0..self.dim() {
                    let e = Vect::unit(self.dim(), j);
                    vecs.push(self.product(v, &e));
                }
            }
            let next = Subspace::from_vectors(self.dim(), &vecs, cur.certificate.clone());
            if next.dim() == cur.dim() {
                return next;
            }
            cur = next;
        }
    }

    /// Smallest product-closed subspace containing gens.
    pub fn subalgebra_closure(&self, gens: &[Vect]) -> Subspace {
        let mut cur = Subspace::from_vectors(self.dim(), gens, Certificate::new());
        loop {
            let mut vecs = cur.basis.clone();
            for (i, u) in cur.basis.iter().enumerate() {
                for v in &cur.basis[i..] {
                    vecs.push(self.product(u, v));
                }
            }
            let next = Subspace::from_vectors(self.dim(), &vecs, cur.certificate.clone());
            if next.dim() == cur.dim() {
                return next;
            }
            cur = next;
        }
    }

    /// Quotient by a verified ideal. The complement basis keeps the
    /// standard basis vectors away from the ideal's pivot coordinates; the
    /// returned matrix is the projection in coordinates, verified to be an
    /// algebra homomorphism on all basis pairs.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(Algebra, Matrix), AlgebraError> {
        assert_eq!(ideal.ambient, self.dim(), "ambient dimension mismatch");
        let closed = self.ideal_closure(&ideal.basis);
        if closed.dim() != ideal.dim() {
            return Err(AlgebraError::NotAnIdeal);
        }
        // pivot columns of the echelon basis
        let mut pivots = Vec::new();
        for row in &ideal.basis {
            let p = row
                .coords
                .iter()
                .position(|c| !c.is_zero())
                .expect("echelon rows nonzero");
            pivots.push(p);
        }
        let kept: Vec<usize> = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        let qdim = kept.len();
        // projection: reduce modulo ideal rows, then read kept coordinates
        let reduce = |v: &Vect| -> Vect {
            let mut w = v.clone();
            for (row, &p) in ideal.basis.iter().zip(&pivots) {
                let c = w.coords[p].clone();
                if !c.is_zero() {
                    w = w.sub(&row.scale(&c));
                }
            }
            Vect::new(kept.iter().map(|&i| w.coords[i].clone()).collect())
        };
        let mut proj = Matrix::zero(qdim, self.dim());
        for j in 0..self.dim() {
            let col = reduce(&Vect::unit(self.dim(), j));
            for i in 0..qdim {
                *proj.at_mut(i, j) = col.coords[i].clone();
            }
        }
        let mut q = Algebra::new(kept.iter().map(|&i| self.basis[i].clone()).collect());
        for (qi, &i) in kept.iter().enumerate() {
            for (qj, &j) in kept.iter().enumerate() {
                if qi <= qj {
                    let prod = reduce(self.basis_product(i, j));
                    q.set_product(qi, qj, prod);
                }
            }
        }
        if qdim == 0 {
            // quotient by the whole algebra: the zero algebra
            return Ok((q, proj));
        }
        // homomorphism check on all basis pairs of the original algebra
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let lhs = proj.mul_vec(self.basis_product(i, j));
                let rhs = q.product(
                    &proj.mul_vec(&Vect::unit(self.dim(), i)),
                    &proj.mul_vec(&Vect::unit(self.dim(), j)),
                );
                if lhs != rhs {
                    return Err(AlgebraError::NotAnIdeal);
                }
            }
        }
        Ok((q, proj))
    }

    /// Verify a (semi)automorphism candidate: for every basis pair,
    /// M(sigma(e_i e_j)) = M(e_i) M(e_j), where sigma renames parameters in
    /// structure-constant scalars when a substitution is present.
    pub fn check_map(&self, map: &AlgebraMap) -> (bool, Vec<(usize, usize)>) {
        let omega = self.is_omega_mode();
        let unit = |i: usize| {
            let u = Vect::unit(self.dim(), i);
            if omega {
                u.lift_omega()
            } else {
                u
            }
        };
        let mut violations = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let mut prod = self.basis_product(i, j).clone();
                if let Some(subst) = &map.param_subst {
                    prod = Vect::new(
                        prod.coords.iter().map(|c| c.rename_params(subst)).collect(),
                    );
                }
                let lhs = map.matrix.mul_vec(&prod);
                let rhs = self.product(
                    &map.matrix.mul_vec(&unit(i)),
                    &map.matrix.mul_vec(&unit(j)),
                );
                if lhs != rhs {
                    violations.push((i, j));
                }
            }
        }
        (violations.is_empty(), violations)
    }

    /// The Miyamoto map of an axis: acts on the eigenspace of eigenvalue
    /// index k as multiplication by chi(degree of label k).
    pub fn miyamoto(
        &self,
        decomp: &EigenDecomposition,
        grading: &GradingGroup,
        chi: &Character,
    ) -> Result<AlgebraMap, AlgebraError> {
        if !decomp.complete {
            return Err(AlgebraError::IncompleteDecomposition);
        }
        let omega_mode = chi.values.iter().any(Scalar::is_omega_mode);
        let (basis_mat, blocks) = decomp.eigenbasis();
        let basis_mat = if omega_mode { basis_mat.lift_omega() } else { basis_mat };
        let n = self.dim();
        let mut diag = Matrix::zero(n, n);
        if omega_mode {
            diag = diag.lift_omega();
        }
        for (k, range) in blocks.iter().enumerate() {
            let mut val = chi.apply(&grading.label_map[k]);
            if omega_mode {
                val = val.lift_omega();
            }
            for i in range.clone() {
                *diag.at_mut(i, i) = val.clone();
            }
        }
        let (inv, _) = basis_mat.inverse().expect("eigenbasis invertible");
        let m = basis_mat.mul(&diag).mul(&inv);
        Ok(AlgebraMap { matrix: m, param_subst: None })
    }

    pub fn to_json(&self) -> Value {
        let mut products = serde_json::Map::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let v = self.basis_product(i, j);
                if v.is_zero() {
                    continue;
                }
                let mut comps = serde_json::Map::new();
                for (k, c) in v.coords.iter().enumerate() {
                    if !c.is_zero() {
                        comps.insert(self.basis[k].clone(), json!(c.to_string()));
                    }
                }
                products.insert(format!("{},{}", self.basis[i], self.basis[j]), Value::Object(comps));
            }
        }
        json!({
            "dim": self.dim(),
            "basis": self.basis,
            "products": products,
            "params": self.params,
        })
    }

    pub fn from_json(v: &Value) -> Result<Algebra, AlgebraError> {
        let basis: Vec<String> = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::Parse("missing \"basis\" array".into()))?
            .iter()
            .map(|b| {
                b.as_str()
                    .map(String::from)
                    .ok_or_else(|| AlgebraError::Parse("basis name must be a string".into()))
            })
            .collect::<Result<_, _>>()?;
        if let Some(d) = v.get("dim").and_then(Value::as_u64) {
            if d as usize != basis.len() {
                return Err(AlgebraError::Parse("dim does not match basis length".into()));
            }
        }
        let mut alg = Algebra::new(basis.clone());
        let n = basis.len();
        if let Some(products) = v.get("products").and_then(Value::as_object) {
            for (key, val) in products {
                let (a, b) = key
                    .split_once(',')
                    .ok_or_else(|| AlgebraError::Parse(format!("bad product key {key}")))?;
                let find = |name: &str| {
                    basis
                        .iter()
                        .position(|x| x == name.trim())
                        .ok_or_else(|| AlgebraError::Parse(format!("unknown basis name {name}")))
                };
                let i = find(a)?;
                let j = find(b)?;
                let comps = val
                    .as_object()
                    .ok_or_else(|| AlgebraError::Parse(format!("entry {key} not an object")))?;
                let mut vec = Vect::zero(n);
                for (name, cv) in comps {
                    let k = find(name)?;
                    let cs = cv
                        .as_str()
                        .ok_or_else(|| AlgebraError::Parse("coefficient must be a string".into()))?;
                    vec.coords[k] = Scalar::parse(cs)?;
                }
                alg.set_product(i, j, vec);
            }
        }
        Ok(alg)
    }
}

fn monic(p: &crate::field::MultiPoly) -> crate::field::MultiPoly {
    let lc = p.leading_coeff();
    p.scale(&(crate::field::rat_int(1) / lc))
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub axis: Vect,
    pub eigenvalues: Vec<Scalar>,
    pub spaces: Vec<Subspace>,
    pub certificate: Certificate,
    pub complete: bool,
}

impl EigenDecomposition {
    /// Matrix whose columns are the eigenbasis vectors grouped by
    /// eigenvalue, plus each eigenvalue's column range.
    pub fn eigenbasis(&self) -> (Matrix, Vec<std::ops::Range<usize>>) {
        let mut cols = Vec::new();
        let mut blocks = Vec::new();
        for s in &self.spaces {
            let start = cols.len();
            cols.extend(s.basis.iter().cloned());
            blocks.push(start..cols.len());
        }
        (Matrix::from_cols(&cols), blocks)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionViolation {
    pub lambda: usize,
    pub mu: usize,
    pub component: usize,
}

#[derive(Clone, Debug)]
pub struct AxisReport {
    pub idempotent: bool,
    pub complete: bool,
    /// True when primitivity holds or was not requested.
    pub primitive: bool,
    /// The raw primitivity result regardless of the request.
    pub primitive_checked: bool,
    pub violations: Vec<FusionViolation>,
    pub certificate: Certificate,
}

impl AxisReport {
    pub fn passed(&self) -> bool {
        self.idempotent && self.complete && self.primitive && self.violations.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraMap {
    pub matrix: Matrix,
    /// Parameter renaming applied to structure constants by a
    /// semiautomorphism; `None` for plain linear maps.
    pub param_subst: Option<BTreeMap<String, String>>,
}

impl AlgebraMap {
    pub fn linear(matrix: Matrix) -> AlgebraMap {
        AlgebraMap { matrix, param_subst: None }
    }
}

/// Isomorphism determined by marked generators: each generator of A maps to
/// the matching (optionally swapped) generator of B, extended over a basis
/// of generation words. Returns the matrix iff it is a well-defined algebra
/// isomorphism.
pub fn marked_iso(
    a: &Algebra,
    gens_a: &[Vect],
    b: &Algebra,
    gens_b: &[Vect],
    allow_swap: bool,
) -> Option<Matrix> {
    if a.dim() != b.dim() || gens_a.len() != gens_b.len() {
        return None;
    }
    let orders: Vec<Vec<usize>> = if allow_swap && gens_b.len() == 2 {
        vec![vec![0, 1], vec![1, 0]]
    } else {
        vec![(0..gens_b.len()).collect()]
    };
    'outer: for order in orders {
        // grow paired word vectors until the A-side spans
        let mut pairs: Vec<(Vect, Vect)> = gens_a
            .iter()
            .zip(order.iter().map(|&k| &gens_b[k]))
            .map(|(u, v)| (u.clone(), v.clone()))
            .collect();
        let mut selected: Vec<(Vect, Vect)> = Vec::new();
        let mut span = Subspace::zero(a.dim());
        let mut frontier = pairs.clone();
        let mut guard = 0;
        while span.dim() < a.dim() {
            guard += 1;
            if guard > a.dim() + 2 {
                continue 'outer;
            }
            let mut new_pairs = Vec::new();
            for (u, v) in &frontier {
                if !span.contains_vector(u) {
                    span = span.sum(&Subspace::from_vectors(
                        a.dim(),
                        &[u.clone()],
                        Certificate::new(),
                    ));
                    selected.push((u.clone(), v.clone()));
                }
            }
            if span.dim() == a.dim() {
                break;
            }
            for (i, (u1, v1)) in pairs.iter().enumerate() {
                for (u2, v2) in &pairs[i..] {
                    new_pairs.push((a.product(u1, u2), b.product(v1, v2)));
                }
            }
            frontier = new_pairs.clone();
            pairs.extend(new_pairs);
            if pairs.len() > 4 * a.dim() * a.dim() + 8 {
                continue 'outer;
            }
        }
        if span.dim() < a.dim() {
            continue;
        }
        let u_mat = Matrix::from_cols(&selected.iter().map(|(u, _)| u.clone()).collect::<Vec<_>>());
        let w_mat = Matrix::from_cols(&selected.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
        let Some((u_inv, _)) = u_mat.inverse() else { continue };
        let m = w_mat.mul(&u_inv);
        if m.inverse().is_none() {
            continue;
        }
        // homomorphism check: m(e_i e_j) in B equals m(e_i) m(e_j)
        let mut ok = true;
        for i in 0..a.dim() {
            for j in i..a.dim() {
                let lhs = m.mul_vec(a.basis_product(i, j));
                let rhs = b.product(
                    &m.mul_vec(&Vect::unit(a.dim(), i)),
                    &m.mul_vec(&Vect::unit(a.dim(), j)),
                );
                if lhs != rhs {
                    ok = false;
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            return Some(m);
        }
    }
    None
}

/// Order of the matrix group generated by fully specialized maps, by
/// breadth-first closure; `None` when the bound is exceeded.
pub fn miyamoto_group_order(
    maps: &[Matrix],
    bound: usize,
) -> Result<Option<usize>, AlgebraError> {
    for m in maps {
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m.at(i, j).params().is_empty() {
                    return Err(AlgebraError::NotSpecialized);
                }
            }
        }
    }
    let n = maps.first().map_or(0, |m| m.rows);
    let key = |m: &Matrix| {
        let mut s = String::new();
        for i in 0..m.rows {
            for j in 0..m.cols {
                let _ = write!(s, "{};", m.at(i, j));
            }
        }
        s
    };
    let id = Matrix::identity(n);
    let id = if maps.iter().any(|m| m.at(0, 0).is_omega_mode()) {
        id.lift_omega()
    } else {
        id
    };
    let mut seen = BTreeMap::new();
    seen.insert(key(&id), id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in maps {
                let p = f.mul(g);
                let k = key(&p);
                if !seen.contains_key(&k) {
                    seen.insert(k, p.clone());
                    next.push(p);
                    if seen.len() > bound {
                        return Ok(None);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(Some(seen.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    /// 2B(a): axes e0, e1 with e0*e1 = a(e0 + e1).
    fn two_b(alpha: &str) -> Algebra {
        let mut alg = Algebra::new(vec!["a0".into(), "a1".into()]);
        alg.set_product(0, 0, Vect::new(vec![s("1"), s("0")]));
        alg.set_product(1, 1, Vect::new(vec![s("0"), s("1")]));
        let a = s(alpha);
        alg.set_product(0, 1, Vect::new(vec![a.clone(), a]));
        alg
    }

    fn two_eval_law(alpha: &str) -> FusionLaw {
        let mut law = FusionLaw::new(vec![s("1"), s(alpha)]).unwrap();
        law.set(0, 0, &[0]);
        law.set(0, 1, &[1]);
        law.set(1, 1, &[0, 1]);
        law
    }

    #[test]
    fn product_bilinear_2b() {
        let alg = two_b("a");
        let a0 = Vect::unit(2, 0);
        let a1 = Vect::unit(2, 1);
        assert_eq!(alg.product(&a0, &a1), Vect::new(vec![s("a"), s("a")]));
        assert_eq!(alg.product(&a0, &a0), a0);
        let sum = a0.add(&a1);
        assert_eq!(
            alg.product(&sum, &sum),
            Vect::new(vec![s("1+2*a"), s("1+2*a")])
        );
    }

    #[test]
    fn adjoint_2b() {
        let alg = two_b("a");
        let ad = alg.adjoint(&Vect::unit(2, 0));
        assert_eq!(
            ad,
            Matrix::new(2, 2, vec![s("1"), s("a"), s("0"), s("a")])
        );
    }

    #[test]
    fn eigendecompose_2b() {
        let alg = two_b("a");
        let d = alg
            .eigendecompose(&Vect::unit(2, 0), &[s("1"), s("a")])
            .unwrap();
        assert!(d.complete);
        assert_eq!(d.spaces[0].dim(), 1);
        assert_eq!(d.spaces[1].dim(), 1);
        // eigenvector a1 + (a/(a-1)) a0
        let v = Vect::new(vec![s("a/(a-1)"), s("1")]);
        assert!(d.spaces[1].contains_vector(&v));
    }

    #[test]
    fn check_axis_2b() {
        let alg = two_b("a");
        let law = two_eval_law("a");
        for i in 0..2 {
            let r = alg.check_axis(&Vect::unit(2, i), &law, true).unwrap();
            assert!(r.passed(), "axis {i}: {:?}", r);
        }
    }

    #[test]
    fn minimal_law_2b_special_points() {
        // a = -1: v*v has zero a-component, so a*a = {1}
        let alg = two_b("-1");
        let law = alg
            .minimal_fusion_law(&Vect::unit(2, 0), &[s("1"), s("-1")])
            .unwrap();
        assert_eq!(law.entry(1, 1).iter().copied().collect::<Vec<_>>(), vec![0]);
        // a = 1/2: v*v = 0, so a*a is empty
        let alg = two_b("1/2");
        let law = alg
            .minimal_fusion_law(&Vect::unit(2, 0), &[s("1"), s("1/2")])
            .unwrap();
        assert!(law.entry(1, 1).is_empty());
        // a = 1/3: both components present
        let alg = two_b("1/3");
        let law = alg
            .minimal_fusion_law(&Vect::unit(2, 0), &[s("1"), s("1/3")])
            .unwrap();
        assert_eq!(law.entry(1, 1).len(), 2);
    }

    #[test]
    fn phi_basics_2b() {
        let alg = two_b("a");
        let a0 = Vect::unit(2, 0);
        let d = alg.eigendecompose(&a0, &[s("1"), s("a")]).unwrap();
        assert_eq!(alg.phi(&a0, &d, &a0).unwrap(), s("1"));
        // eigenvector for a has phi = 0
        let v = Vect::new(vec![s("a/(a-1)"), s("1")]);
        assert_eq!(alg.phi(&a0, &d, &v).unwrap(), s("0"));
        // phi_{a0}(a1) = a/(1-a) in 2B(a)
        assert_eq!(alg.phi(&a0, &d, &Vect::unit(2, 1)).unwrap(), s("a/(1-a)"));
    }

    #[test]
    fn f_poly_annihilates() {
        let alg = two_b("a");
        let a0 = Vect::unit(2, 0);
        let out = alg.f_poly_adjoint(&a0, &[s("1"), s("a")], &Vect::unit(2, 1));
        assert!(out.is_zero());
        // empty product is the identity
        assert_eq!(alg.f_poly_adjoint(&a0, &[], &a0), a0);
        assert!(alg.f_poly_adjoint(&a0, &[s("1")], &a0).is_zero());
    }

    #[test]
    fn ideal_and_subalgebra_closure_2b() {
        let alg = two_b("a");
        let full = alg.ideal_closure(&[Vect::unit(2, 0)]);
        assert_eq!(full.dim(), 2);
        let sub = alg.subalgebra_closure(&[Vect::unit(2, 0)]);
        assert_eq!(sub.dim(), 1);
        assert_eq!(alg.ideal_closure(&[]).dim(), 0);
        assert_eq!(
            alg.subalgebra_closure(&[Vect::unit(2, 0), Vect::unit(2, 1)]).dim(),
            2
        );
    }

    #[test]
    fn quotient_by_zero_ideal() {
        let alg = two_b("a");
        let (q, proj) = alg.quotient(&Subspace::zero(2)).unwrap();
        assert_eq!(q, alg);
        assert_eq!(proj, Matrix::identity(2));
    }

    #[test]
    fn not_an_ideal_rejected() {
        let alg = two_b("a");
        let span_a0 = Subspace::from_vectors(2, &[Vect::unit(2, 0)], Certificate::new());
        assert!(matches!(alg.quotient(&span_a0), Err(AlgebraError::NotAnIdeal)));
    }

    #[test]
    fn marked_iso_swap_2b() {
        let alg = two_b("a");
        let gens = [Vect::unit(2, 0), Vect::unit(2, 1)];
        let m = marked_iso(&alg, &gens, &alg, &[gens[1].clone(), gens[0].clone()], false)
            .expect("swap symmetry");
        assert_eq!(m.mul_vec(&gens[0]), gens[1]);
        let (ok, _) = alg.check_map(&AlgebraMap::linear(m));
        assert!(ok);
    }

    #[test]
    fn check_map_rejects_bad_swap() {
        // a0 a1 = (1-a) a0 + a a1 is not swap-symmetric unless a = 1/2
        let mut alg = Algebra::new(vec!["a0".into(), "a1".into()]);
        alg.set_product(0, 0, Vect::new(vec![s("1"), s("0")]));
        alg.set_product(1, 1, Vect::new(vec![s("0"), s("1")]));
        alg.set_product(0, 1, Vect::new(vec![s("1-a"), s("a")]));
        let swap = Matrix::new(2, 2, vec![s("0"), s("1"), s("1"), s("0")]);
        let (ok, viol) = alg.check_map(&AlgebraMap::linear(swap));
        assert!(!ok);
        assert_eq!(viol, vec![(0, 1)]);
    }

    #[test]
    fn miyamoto_2b_minus_one() {
        let alg = two_b("-1");
        let a0 = Vect::unit(2, 0);
        let law = alg.minimal_fusion_law(&a0, &[s("1"), s("-1")]).unwrap();
        let g = law.grading_group();
        assert_eq!(g.structure(), "C2");
        let d = alg.eigendecompose(&a0, &[s("1"), s("-1")]).unwrap();
        let chars = g.characters(false).unwrap();
        let sign = chars.iter().find(|c| !c.is_trivial()).unwrap();
        let tau = alg.miyamoto(&d, &g, sign).unwrap();
        let (ok, _) = alg.check_map(&tau);
        assert!(ok);
        // tau fixes a0 and maps a1 to -a1 - a0
        assert_eq!(tau.matrix.mul_vec(&a0), a0);
        assert_eq!(
            tau.matrix.mul_vec(&Vect::unit(2, 1)),
            Vect::new(vec![s("-1"), s("-1")])
        );
        assert_eq!(tau.matrix.mul(&tau.matrix), Matrix::identity(2));
        // trivial character gives the identity
        let triv = chars.iter().find(|c| c.is_trivial()).unwrap();
        let id = alg.miyamoto(&d, &g, triv).unwrap();
        assert_eq!(id.matrix, Matrix::identity(2));
    }

    #[test]
    fn group_order_dihedral() {
        let alg = two_b("-1");
        let law = alg
            .minimal_fusion_law(&Vect::unit(2, 0), &[s("1"), s("-1")])
            .unwrap();
        let g = law.grading_group();
        let sign = g
            .characters(false)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_trivial())
            .unwrap();
        let mut taus = Vec::new();
        for i in 0..2 {
            let a = Vect::unit(2, i);
            let d = alg.eigendecompose(&a, &[s("1"), s("-1")]).unwrap();
            taus.push(alg.miyamoto(&d, &g, &sign).unwrap().matrix);
        }
        assert_eq!(miyamoto_group_order(&[Matrix::identity(2)], 10).unwrap(), Some(1));
        let order = miyamoto_group_order(&taus, 100).unwrap().unwrap();
        // both involutions, so the group is dihedral of some finite order
        assert!(order >= 2 && order % 2 == 0);
        let sym = miyamoto_group_order(
            &[Matrix::new(2, 2, vec![s("a"), s("0"), s("0"), s("1")])],
            10,
        );
        assert!(matches!(sym, Err(AlgebraError::NotSpecialized)));
    }

    #[test]
    fn json_roundtrip() {
        let alg = two_b("a");
        let j = alg.to_json();
        let back = Algebra::from_json(&j).unwrap();
        assert_eq!(alg, back);
        assert_eq!(back.params(), &["a".to_string()]);
    }
}
