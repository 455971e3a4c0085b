//! The category attached to an ordered family of idempotents: objects are the
//! idempotents, morphisms `x_i -> x_j` a basis of `e_j A e_i`.

use std::sync::Arc;

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, Matrix, Vector};

#[derive(Debug, Clone)]
pub struct AssociatedCategory {
    algebra: Arc<Algebra>,
    objects: Vec<String>,
    idempotents: Vec<Vector>,
    /// `homs[i][j]` is a basis of `e_j A e_i` in algebra coordinates.
    homs: Vec<Vec<Vec<Vector>>>,
    hom_labels: Vec<Vec<Vec<String>>>,
}

impl AssociatedCategory {
    pub fn new(a: &Arc<Algebra>, idempotents: &[Vector], labels: &[String]) -> Result<Self> {
        let n = idempotents.len();
        if labels.len() != n {
            return Err(Error::NotAStratification("one label per idempotent".into()));
        }
        for (i, e) in idempotents.iter().enumerate() {
            for (j, f) in idempotents.iter().enumerate() {
                let ef = a.mul(e, f);
                let ok = if i == j { ef == *e } else { is_zero_vector(&ef) };
                if !ok {
                    return Err(Error::NotAStratification("idempotents are not orthogonal".into()));
                }
                if i < j && a.peirce_witness(e, f).is_some() {
                    return Err(Error::NotAStratification(format!(
                        "{} A {} is nonzero",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut homs = vec![vec![Vec::new(); n]; n];
        let mut hom_labels = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (&idempotents[i], &idempotents[j]);
                let space = a.peirce_space(ej, ei);
                let fixed: Vec<usize> = (0..a.dim())
                    .filter(|&b| {
                        let v = a.basis_vector(b);
                        a.mul3(ej, &v, ei) == v
                    })
                    .collect();
                if fixed.len() == space.dim() {
                    homs[i][j] = fixed.iter().map(|&b| a.basis_vector(b)).collect();
                    hom_labels[i][j] = fixed.iter().map(|&b| a.label(b).to_string()).collect();
                } else {
                    homs[i][j] = space.basis().to_vec();
                    hom_labels[i][j] = space.basis().iter().map(|v| a.format_element(v)).collect();
                }
            }
        }
        Ok(AssociatedCategory {
            algebra: a.clone(),
            objects: labels.to_vec(),
            idempotents: idempotents.to_vec(),
            homs,
            hom_labels,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    /// Basis of morphisms `x_i -> x_j`, i.e. of `e_j A e_i`.
    pub fn hom_basis(&self, i: usize, j: usize) -> &[Vector] {
        &self.homs[i][j]
    }

    pub fn hom_labels(&self, i: usize, j: usize) -> &[String] {
        &self.hom_labels[i][j]
    }

    /// `g∘f` for `f` the `p`-th morphism `x_i -> x_j` and `g` the `q`-th
    /// morphism `x_j -> x_k`, in the basis of morphisms `x_i -> x_k`.
    pub fn compose(&self, i: usize, j: usize, k: usize, p: usize, q: usize) -> Vector {
        let a = &self.algebra;
        let prod = a.mul(&self.homs[j][k][q], &self.homs[i][j][p]);
        let target = &self.homs[i][k];
        if target.is_empty() {
            return Vec::new();
        }
        Matrix::from_columns(a.field(), a.dim(), target).solve(&prod).expect("product lies in the hom space")
    }
}
