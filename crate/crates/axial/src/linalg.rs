//! Exact linear algebra over the scalar field: vectors, matrices, row
//! reduction with genericity certificates, kernels and subspace lattice
//! operations.
//!
//! A certificate is the set of non-constant pivot numerators divided by
//! during reduction; every symbolic result remains valid at any parameter
//! assignment where no certificate polynomial vanishes.

use std::collections::BTreeSet;
use std::fmt;

use crate::field::{MultiPoly, Scalar};

pub type Certificate = BTreeSet<MultiPoly>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vect {
    pub coords: Vec<Scalar>,
}

impl Vect {
    pub fn new(coords: Vec<Scalar>) -> Vect {
        Vect { coords }
    }

    pub fn zero(dim: usize) -> Vect {
        Vect { coords: vec![Scalar::zero(); dim] }
    }

    /// Standard basis vector e_i.
    pub fn unit(dim: usize, i: usize) -> Vect {
        let mut v = Vect::zero(dim);
        v.coords[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vect) -> Vect {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vect::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vect) -> Vect {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vect::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Vect {
        Vect::new(self.coords.iter().map(|a| a.mul(c)).collect())
    }

    pub fn neg(&self) -> Vect {
        Vect::new(self.coords.iter().map(Scalar::neg).collect())
    }

    pub fn lift_omega(&self) -> Vect {
        Vect::new(self.coords.iter().map(Scalar::lift_omega).collect())
    }
}

impl fmt::Display for Vect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix::new(rows, cols, vec![Scalar::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vect]) -> Matrix {
        let cols = rows.first().map_or(0, Vect::dim);
        let entries = rows.iter().flat_map(|r| r.coords.iter().cloned()).collect();
        Matrix::new(rows.len(), cols, entries)
    }

    pub fn from_cols(cols: &[Vect]) -> Matrix {
        Matrix::from_rows(cols).transpose()
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vect {
        Vect::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> Vect {
        Vect::new((0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let z = self
            .entries
            .first()
            .or(other.entries.first())
            .map_or_else(Scalar::zero, Scalar::zero_like);
        let mut out = Matrix::new(self.rows, other.cols, vec![z; self.rows * other.cols]);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = out.at(i, j).clone();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vect) -> Vect {
        assert_eq!(self.cols, v.dim(), "matrix/vector dimension mismatch");
        Vect::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = v.coords[0].zero_like();
                    for k in 0..self.cols {
                        acc = acc.add(&self.at(i, k).mul(&v.coords[k]));
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn lift_omega(&self) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(Scalar::lift_omega).collect(),
        )
    }

    fn mode_zero(&self) -> Scalar {
        self.entries.first().map_or_else(Scalar::zero, Scalar::zero_like)
    }

    fn mode_one(&self) -> Scalar {
        self.entries.first().map_or_else(Scalar::one, Scalar::one_like)
    }

    /// Reduced row echelon form with pivot positions and certificate.
    pub fn rref(&self) -> (Matrix, Vec<usize>, Certificate, usize) {
        let mut m = self.clone();
        let mut cert = Certificate::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // pivot: lowest numerator degree among nonzero entries, tie by row
            let mut best: Option<(u32, usize)> = None;
            for i in r..m.rows {
                let e = m.at(i, c);
                if e.is_zero() {
                    continue;
                }
                let d = e.numerator().total_degree();
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, i));
                }
            }
            let Some((_, pi)) = best else { continue };
            if pi != r {
                for j in 0..m.cols {
                    let a = m.at(r, j).clone();
                    let b = m.at(pi, j).clone();
                    *m.at_mut(r, j) = b;
                    *m.at_mut(pi, j) = a;
                }
            }
            let p = m.at(r, c).clone();
            if !p.numerator().is_constant() {
                cert.insert(normalize_cert(p.numerator()));
            }
            let pinv = p.inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&pinv);
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                    *m.at_mut(i, j) = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, cert, r)
    }

    pub fn rank(&self) -> usize {
        self.rref().3
    }

    /// Right kernel as a subspace of the column-index space.
    pub fn kernel(&self) -> Subspace {
        let (e, pivots, cert, rank) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let zero = self.mode_zero();
        let one = self.mode_one();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = Vect::new(vec![zero.clone(); self.cols]);
            v.coords[f] = one.clone();
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                v.coords[p] = e.at(r, f).neg();
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, &basis, cert)
    }

    /// Inverse via row reduction of [M | I]; `None` when singular.
    pub fn inverse(&self) -> Option<(Matrix, Certificate)> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let zero = self.mode_zero();
        let one = self.mode_one();
        let mut aug = Matrix::new(n, 2 * n, vec![zero; n * 2 * n]);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = one.clone();
        }
        let (e, pivots, cert, rank) = aug.rref();
        if rank < n || pivots[..n.min(pivots.len())] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut inv = Matrix::new(n, n, vec![self.mode_zero(); n * n]);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = e.at(i, n + j).clone();
            }
        }
        Some((inv, cert))
    }
}

fn normalize_cert(p: &MultiPoly) -> MultiPoly {
    let lc = p.leading_coeff();
    p.scale(&(crate::field::Rat::from(num::BigInt::from(1)) / lc))
}

/// Row space in reduced echelon form; equality of subspaces is equality of
/// canonical bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vect>,
    pub certificate: Certificate,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: vec![], certificate: Certificate::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        let basis = (0..ambient).map(|i| Vect::unit(ambient, i)).collect();
        Subspace { ambient, basis, certificate: Certificate::new() }
    }

    pub fn from_vectors(ambient: usize, vecs: &[Vect], mut cert: Certificate) -> Subspace {
        for v in vecs {
            assert_eq!(v.dim(), ambient, "ambient dimension mismatch");
        }
        let nonzero: Vec<Vect> = vecs.iter().filter(|v| !v.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Subspace { ambient, basis: vec![], certificate: cert };
        }
        let (e, _, c2, rank) = Matrix::from_rows(&nonzero).rref();
        cert.extend(c2);
        let basis = (0..rank).map(|i| e.row(i)).collect();
        Subspace { ambient, basis, certificate: cert }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.clone());
        let mut cert = self.certificate.clone();
        cert.extend(other.certificate.clone());
        Subspace::from_vectors(self.ambient, &vecs, cert)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        if self.dim() == 0 || other.dim() == 0 {
            let mut cert = self.certificate.clone();
            cert.extend(other.certificate.clone());
            return Subspace { ambient: self.ambient, basis: vec![], certificate: cert };
        }
        // v = x^T A = y^T B; solve [A^T | -B^T] (x, y)^T = 0
        let a_t = Matrix::from_rows(&self.basis).transpose();
        let b_t = Matrix::from_rows(&other.basis).transpose();
        let ka = self.dim();
        let kb = other.dim();
        let mut sys = Matrix::zero(self.ambient, ka + kb);
        for i in 0..self.ambient {
            for j in 0..ka {
                *sys.at_mut(i, j) = a_t.at(i, j).clone();
            }
            for j in 0..kb {
                *sys.at_mut(i, ka + j) = b_t.at(i, j).neg();
            }
        }
        let ker = sys.kernel();
        let mut cert = self.certificate.clone();
        cert.extend(other.certificate.clone());
        cert.extend(ker.certificate.clone());
        let vecs: Vec<Vect> = ker
            .basis
            .iter()
            .map(|k| {
                let mut v = Vect::zero(self.ambient);
                for (j, row) in self.basis.iter().enumerate() {
                    v = v.add(&row.scale(&k.coords[j]));
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.ambient, &vecs, cert)
    }

    pub fn contains_vector(&self, v: &Vect) -> bool {
        assert_eq!(v.dim(), self.ambient, "ambient dimension mismatch");
        if v.is_zero() {
            return true;
        }
        let mut vecs = self.basis.clone();
        vecs.push(v.clone());
        let (_, _, _, rank) = Matrix::from_rows(&vecs).rref();
        rank == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let (e, _, cert, rank) = Matrix::identity(3).rref();
        assert_eq!(e, Matrix::identity(3));
        assert!(cert.is_empty());
        assert_eq!(rank, 3);
        let (_, _, _, rank) = Matrix::zero(2, 2).rref();
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_parametric_certificate() {
        // [[1-a, a],[0,0]]: rank 1, certificate {a - 1} (monic form)
        let m = Matrix::new(2, 2, vec![s("1-a"), s("a"), s("0"), s("0")]);
        let (_, _, cert, rank) = m.rref();
        assert_eq!(rank, 1);
        let expected = s("a-1").numerator().clone();
        assert_eq!(cert, Certificate::from([expected]));
    }

    #[test]
    fn kernel_annihilates() {
        let m = Matrix::new(
            2,
            3,
            vec![s("1"), s("a"), s("0"), s("0"), s("1"), s("b")],
        );
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        for v in &k.basis {
            assert!(m.mul_vec(v).is_zero());
        }
        assert_eq!(Matrix::identity(2).kernel().dim(), 0);
        assert_eq!(Matrix::zero(3, 3).kernel().dim(), 3);
    }

    #[test]
    fn subspace_lattice() {
        let a0 = Vect::unit(3, 0);
        let a1 = Vect::unit(3, 1);
        let sa = Subspace::from_vectors(3, &[a0.clone()], Certificate::new());
        let sb = Subspace::from_vectors(3, &[a1.clone()], Certificate::new());
        assert_eq!(sa.sum(&sb).dim(), 2);
        let diff = Subspace::from_vectors(3, &[a0.sub(&a1)], Certificate::new());
        let both = sa.sum(&sb);
        let i = both.intersect(&diff);
        assert_eq!(i.dim(), 1);
        assert!(i.equals(&diff));
        assert!(diff.contains_vector(&a0.sub(&a1).scale(&s("2"))));
        // modular identity on dimensions
        assert_eq!(
            both.sum(&diff).dim() + both.intersect(&diff).dim(),
            both.dim() + diff.dim()
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::new(2, 2, vec![s("1"), s("a"), s("0"), s("a")]);
        let (inv, _) = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let sing = Matrix::new(2, 2, vec![s("1"), s("1"), s("1"), s("1")]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn rank_transpose() {
        let m = Matrix::new(
            2,
            3,
            vec![s("a"), s("b"), s("a+b"), s("1"), s("1"), s("2")],
        );
        assert_eq!(m.rank(), m.transpose().rank());
    }
}
