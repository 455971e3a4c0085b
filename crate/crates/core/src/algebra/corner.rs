//! Corner algebras `eAe` and quotients `A/I`, each with maps back to the parent.

use std::sync::Arc;

use super::{to_sparse, Algebra, SparseVector};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, Scalar, Subspace, Vector};

#[derive(Debug, Clone)]
pub struct CornerAlgebra {
    parent: Arc<Algebra>,
    idempotent: Vector,
    algebra: Arc<Algebra>,
    basis: Vec<Vector>,
    coord_rows: Vec<usize>,
    coord_inverse: Matrix,
}

impl CornerAlgebra {
    pub fn new(parent: &Arc<Algebra>, e: &[Scalar]) -> Result<Self> {
        if e.len() != parent.dim() {
            return Err(Error::DimensionMismatch { expected: parent.dim(), found: e.len() });
        }
        if !parent.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let f = parent.field();
        let n = parent.dim();
        let space = parent.peirce_space(e, e);
        // prefer parent basis elements fixed by e on both sides
        let fixed: Vec<usize> =
            (0..n).filter(|&i| parent.mul3(e, &parent.basis_vector(i), e) == parent.basis_vector(i)).collect();
        let (basis, labels): (Vec<Vector>, Vec<String>) = if fixed.len() == space.dim() {
            fixed.iter().map(|&i| (parent.basis_vector(i), parent.label(i).to_string())).unzip()
        } else {
            space.basis().iter().enumerate().map(|(k, b)| (b.clone(), format!("c{k}"))).unzip()
        };
        let m = basis.len();
        let bm = Matrix::from_columns(f, n, &basis);
        let (_, rows) = bm.transpose().rref();
        let coord_inverse = bm.select_rows(&rows).inverse().ok_or_else(|| Error::Invariant("corner basis".into()))?;
        let mut corner = CornerAlgebra {
            parent: parent.clone(),
            idempotent: e.to_vec(),
            algebra: Arc::new(Algebra::new_unchecked(f, vec![], vec![], vec![], vec![], vec![])),
            basis,
            coord_rows: rows,
            coord_inverse,
        };
        let mut table: Vec<SparseVector> = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                table.push(to_sparse(&corner.project(&parent.mul(&corner.basis[i], &corner.basis[j]))));
            }
        }
        let unit = corner.project(e);
        let mut vertices = Vec::new();
        let mut vlabels = Vec::new();
        for (v, l) in parent.vertex_idempotents().iter().zip(parent.vertex_labels()) {
            let ev = parent.mul3(e, v, e);
            if !is_zero_vector(&ev) {
                vertices.push(ev);
                vlabels.push(l.clone());
            }
        }
        let ok = vertices.iter().enumerate().all(|(i, x)| {
            vertices.iter().enumerate().all(|(j, y)| {
                let xy = parent.mul(x, y);
                if i == j { xy == *x } else { is_zero_vector(&xy) }
            })
        }) && {
            let mut s = zero_vector(f, n);
            for v in &vertices {
                axpy(&mut s, &f.one(), v);
            }
            s == e
        };
        let (vertices, vlabels) = if ok {
            (vertices.iter().map(|v| corner.project(v)).collect(), vlabels)
        } else {
            (vec![unit.clone()], vec!["e".to_string()])
        };
        corner.algebra = Arc::new(Algebra::new_unchecked(f, labels, table, unit, vertices, vlabels));
        Ok(corner)
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn idempotent(&self) -> &Vector {
        &self.idempotent
    }

    /// Parent-coordinates of the corner basis.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn embed(&self, x: &[Scalar]) -> Vector {
        let mut out = self.parent.zero();
        for (c, b) in x.iter().zip(&self.basis) {
            if !c.is_zero() {
                axpy(&mut out, c, b);
            }
        }
        out
    }

    /// Coordinates of an element of `eAe`; the input is assumed to lie there.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let sel: Vector = self.coord_rows.iter().map(|&r| v[r].clone()).collect();
        self.coord_inverse.mul_vec(&sel)
    }

    /// Projection of an arbitrary parent element through `x -> exe`.
    pub fn compress(&self, v: &[Scalar]) -> Vector {
        self.project(&self.parent.mul3(&self.idempotent, v, &self.idempotent))
    }
}

/// `A/I` on the basis of parent basis elements outside the pivots of `I`; the
/// ideal property is the caller's responsibility.
pub(crate) fn quotient_algebra(parent: &Algebra, ideal: &Subspace) -> Algebra {
    let complement = ideal.complement_indices();
    let m = complement.len();
    let mut table = Vec::with_capacity(m * m);
    for &i in &complement {
        for &j in &complement {
            let prod = parent.mul(&parent.basis_vector(i), &parent.basis_vector(j));
            table.push(to_sparse(&ideal.quotient_coordinates(&prod)));
        }
    }
    let labels = complement.iter().map(|&i| parent.label(i).to_string()).collect();
    let unit = ideal.quotient_coordinates(parent.unit());
    let mut vertices = Vec::new();
    let mut vlabels = Vec::new();
    for (v, l) in parent.vertex_idempotents().iter().zip(parent.vertex_labels()) {
        let q = ideal.quotient_coordinates(v);
        if !is_zero_vector(&q) {
            vertices.push(q);
            vlabels.push(l.clone());
        }
    }
    Algebra::new_unchecked(parent.field(), labels, table, unit, vertices, vlabels)
}

#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    parent: Arc<Algebra>,
    ideal: Subspace,
    complement: Vec<usize>,
    algebra: Arc<Algebra>,
}

impl QuotientAlgebra {
    pub fn new(parent: &Arc<Algebra>, ideal: &Subspace) -> Result<Self> {
        if ideal.ambient() != parent.dim() {
            return Err(Error::DimensionMismatch { expected: parent.dim(), found: ideal.ambient() });
        }
        if !parent.is_two_sided_ideal(ideal) {
            return Err(Error::Invariant("quotient by a subspace that is not a two-sided ideal".into()));
        }
        let complement = ideal.complement_indices();
        let algebra = Arc::new(quotient_algebra(parent, ideal));
        Ok(QuotientAlgebra { parent: parent.clone(), ideal: ideal.clone(), complement, algebra })
    }

    pub fn parent(&self) -> &Arc<Algebra> {
        &self.parent
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        self.ideal.quotient_coordinates(v)
    }

    /// A preimage: the complement coordinates placed back in the parent.
    pub fn section(&self, q: &[Scalar]) -> Vector {
        let f = self.parent.field();
        let mut out = zero_vector(f, self.parent.dim());
        for (c, &i) in q.iter().zip(&self.complement) {
            if !c.is_zero() {
                axpy(&mut out, c, &unit_vector(f, self.parent.dim(), i));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cyclic_group_algebra, truncated_polynomial};
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn quotient_of_truncated_polynomial() {
        let f = Field::RATIONALS;
        let a = Arc::new(truncated_polynomial(f, 4));
        let x2 = a.element(&[(1, "x2")]).unwrap();
        let ideal = a.two_sided_ideal(&[x2]);
        assert_eq!(ideal.dim(), 2);
        let q = a.quotient(&ideal).unwrap();
        assert_eq!(q.algebra().dim(), 2);
        let x = a.element(&[(1, "x1")]).unwrap();
        let qx = q.project(&x);
        assert!(is_zero_vector(&q.algebra().mul(&qx, &qx)));
        assert_eq!(q.project(&q.section(&qx)), qx);
    }

    #[test]
    fn corner_by_unit_is_everything() {
        let f = Field::prime(3).unwrap();
        let a = Arc::new(cyclic_group_algebra(f, 3));
        let c = a.corner(a.unit()).unwrap();
        assert!(c.algebra().same_tables(&a));
    }

    #[test]
    fn corner_rejects_non_idempotent() {
        let a = Arc::new(truncated_polynomial(Field::RATIONALS, 2));
        let x = a.element(&[(1, "x1")]).unwrap();
        assert!(matches!(a.corner(&x), Err(Error::NotIdempotent)));
    }
}
