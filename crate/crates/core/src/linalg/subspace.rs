use super::field::{Field, Scalar};
use super::matrix::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Vector};
use crate::error::{Error, Result};

/// A subspace of `k^n`, stored as its reduced row echelon basis.
///
/// Two spanning sets of the same subspace produce identical values, so `==`
/// decides subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        let mut s = Subspace::zero(field, ambient);
        s.extend(vectors.iter().cloned());
        Ok(s)
    }

    /// Column space of a matrix.
    pub fn image(m: &Matrix) -> Self {
        let mut s = Subspace::zero(m.field(), m.rows());
        s.extend(m.columns());
        s
    }

    pub fn kernel(m: &Matrix) -> Self {
        let mut s = Subspace::zero(m.field(), m.cols());
        s.extend(m.kernel_basis());
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as matrix columns (`ambient x dim`).
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Normal form of `v` modulo the subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -&out[p];
                axpy(&mut out, &c, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds vectors, keeping the basis in reduced echelon form.
    pub fn extend<I: IntoIterator<Item = Vector>>(&mut self, vectors: I) -> bool {
        let mut grew = false;
        for v in vectors {
            assert_eq!(v.len(), self.ambient, "vector has wrong ambient dimension");
            let r = self.reduce(&v);
            let Some(p) = r.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            let inv = r[p].inverse().expect("nonzero");
            let r: Vector = r.iter().map(|x| x * &inv).collect();
            for b in self.basis.iter_mut() {
                if !b[p].is_zero() {
                    let c = -&b[p];
                    axpy(b, &c, &r);
                }
            }
            let pos = self.pivots.partition_point(|&q| q < p);
            self.pivots.insert(pos, p);
            self.basis.insert(pos, r);
            grew = true;
        }
        grew
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut s = self.clone();
        s.extend(other.basis.iter().cloned());
        Ok(s)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // x = sum a_i u_i lies in other iff sum a_i reduce(u_i) = 0
        let reduced: Vec<Vector> = self.basis.iter().map(|u| other.reduce(u)).collect();
        let m = Matrix::from_columns(self.field, self.ambient, &reduced);
        let mut s = Subspace::zero(self.field, self.ambient);
        for a in m.kernel_basis() {
            let mut x = zero_vector(self.field, self.ambient);
            for (c, u) in a.iter().zip(&self.basis) {
                axpy(&mut x, c, u);
            }
            s.extend([x]);
        }
        Ok(s)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Ambient coordinates not hit by a pivot; the corresponding unit vectors
    /// form a basis of a complement, i.e. of the quotient `k^n / self`.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Coordinates of `v + self` in the quotient basis given by
    /// [`Subspace::complement_indices`].
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|i| r[i].clone()).collect()
    }

    /// Basis of the quotient `other / self` as representatives in `other`,
    /// requires `self ⊆ other`.
    pub fn quotient_basis_in(&self, other: &Subspace) -> Result<Vec<Vector>> {
        self.check_same(other)?;
        let mut acc = self.clone();
        let mut reps = Vec::new();
        for b in &other.basis {
            if acc.extend([b.clone()]) {
                reps.push(b.clone());
            }
        }
        Ok(reps)
    }
}
