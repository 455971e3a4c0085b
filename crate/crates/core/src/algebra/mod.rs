//! Finite-dimensional associative algebras given by structure constants.

mod assoc;
mod corner;
mod decompose;
pub(crate) mod ei;
pub(crate) mod path;
mod radical;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use assoc::AssociatedCategory;
pub use corner::{CornerAlgebra, QuotientAlgebra};
pub use decompose::{Decomposition, GabrielQuiver, PrimitiveIdempotent};
pub use ei::{EiCategory, Morphism, StabilizerEntry};
pub use path::{PathAlgebra, PathAlgebraPresentation, Relation};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, unit_vector, zero_vector, Field, Matrix, Scalar, Subspace, Vector};

/// Sparse product of two basis elements.
pub type SparseVector = Vec<(usize, Scalar)>;

/// A finite-dimensional unital associative algebra with a labeled basis and a
/// distinguished complete family of orthogonal idempotents ("vertices").
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    table: Vec<SparseVector>,
    unit: Vector,
    vertex_idempotents: Vec<Vector>,
    vertex_labels: Vec<String>,
    radical: OnceLock<Result<Subspace>>,
    decomposition: OnceLock<Result<Decomposition>>,
    generators: OnceLock<Vec<Vector>>,
    left_regular: OnceLock<Vec<Matrix>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .field("vertices", &self.vertex_labels)
            .finish()
    }
}

pub(crate) fn to_sparse(v: &[Scalar]) -> SparseVector {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl Algebra {
    /// Builds and validates an algebra: associativity on all basis triples,
    /// two-sided unit, and a complete orthogonal family of vertex idempotents.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        products: Vec<SparseVector>,
        unit: Vector,
        vertex_idempotents: Vec<Vector>,
        vertex_labels: Vec<String>,
    ) -> Result<Self> {
        let n = labels.len();
        if products.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: products.len() });
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: unit.len() });
        }
        if vertex_labels.len() != vertex_idempotents.len() {
            return Err(Error::Invariant("one label per vertex idempotent".into()));
        }
        let a = Self::new_unchecked(field, labels, products, unit, vertex_idempotents, vertex_labels);
        a.validate()?;
        Ok(a)
    }

    pub(crate) fn new_unchecked(
        field: Field,
        labels: Vec<String>,
        table: Vec<SparseVector>,
        unit: Vector,
        vertex_idempotents: Vec<Vector>,
        vertex_labels: Vec<String>,
    ) -> Self {
        Algebra {
            field,
            labels,
            table,
            unit,
            vertex_idempotents,
            vertex_labels,
            radical: OnceLock::new(),
            decomposition: OnceLock::new(),
            generators: OnceLock::new(),
            left_regular: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j);
                for k in 0..n {
                    let left = self.mul_sparse_basis(ij, k, true);
                    let right = self.mul_basis_sparse(i, self.product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::Invariant(format!("unit does not fix {}", self.labels[i])));
            }
        }
        let mut sum = zero_vector(self.field, n);
        for (i, e) in self.vertex_idempotents.iter().enumerate() {
            for (j, f) in self.vertex_idempotents.iter().enumerate() {
                let ef = self.mul(e, f);
                let expected = if i == j { e.clone() } else { zero_vector(self.field, n) };
                if ef != expected {
                    return Err(Error::Invariant(format!(
                        "vertex idempotents {} and {} are not orthogonal idempotents",
                        self.vertex_labels[i], self.vertex_labels[j]
                    )));
                }
            }
            axpy(&mut sum, &self.field.one(), e);
        }
        if sum != self.unit {
            return Err(Error::Invariant("vertex idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    fn mul_sparse_basis(&self, x: &[(usize, Scalar)], k: usize, _left: bool) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (i, c) in x {
            for (l, d) in self.product(*i, k) {
                out[*l] = &out[*l] + &(c * d);
            }
        }
        out
    }

    fn mul_basis_sparse(&self, i: usize, y: &[(usize, Scalar)]) -> Vector {
        let mut out = zero_vector(self.field, self.dim());
        for (j, c) in y {
            for (l, d) in self.product(i, *j) {
                out[*l] = &out[*l] + &(c * d);
            }
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim())
    }

    pub fn vertex_idempotents(&self) -> &[Vector] {
        &self.vertex_idempotents
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    /// Product of basis elements `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(self.field, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn mul3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        self.mul(&self.mul(x, y), z)
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    pub fn is_zero_element(&self, x: &[Scalar]) -> bool {
        is_zero_vector(x)
    }

    /// Matrix of `y -> x*y` in the basis.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `y -> y*x` in the basis.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Left multiplication matrices of the basis elements.
    pub fn left_regular(&self) -> &[Matrix] {
        self.left_regular.get_or_init(|| {
            (0..self.dim()).map(|i| self.left_mult_matrix(&self.basis_vector(i))).collect()
        })
    }

    /// Evaluates a linear combination of basis matrices.
    pub fn combine(&self, mats: &[Matrix], x: &[Scalar]) -> Matrix {
        let (r, c) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut out = Matrix::zeros(self.field, r, c);
        for (m, a) in mats.iter().zip(x) {
            if !a.is_zero() {
                out.add_scaled(a, m);
            }
        }
        out
    }

    pub fn subspace(&self, vectors: &[Vector]) -> Subspace {
        Subspace::span(self.field, self.dim(), vectors).expect("vectors live in the algebra")
    }

    /// `span{x*y}` for `x` in `left`, `y` in `right`.
    pub fn product_space(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut s = Subspace::zero(self.field, self.dim());
        for x in left.basis() {
            for y in right.basis() {
                s.extend([self.mul(x, y)]);
            }
        }
        s
    }

    /// `e * A * f` as a subspace.
    pub fn peirce_space(&self, e: &[Scalar], f: &[Scalar]) -> Subspace {
        let mut s = Subspace::zero(self.field, self.dim());
        for i in 0..self.dim() {
            s.extend([self.mul3(e, &self.basis_vector(i), f)]);
        }
        s
    }

    /// First basis element `b` with `e*b*f != 0`.
    pub fn peirce_witness(&self, e: &[Scalar], f: &[Scalar]) -> Option<usize> {
        (0..self.dim()).find(|&i| !is_zero_vector(&self.mul3(e, &self.basis_vector(i), f)))
    }

    /// Two-sided ideal generated by the given elements.
    pub fn two_sided_ideal(&self, generators: &[Vector]) -> Subspace {
        let mut s = Subspace::zero(self.field, self.dim());
        for g in generators {
            for i in 0..self.dim() {
                let bi = self.basis_vector(i);
                let left = self.mul(&bi, g);
                for j in 0..self.dim() {
                    s.extend([self.mul(&left, &self.basis_vector(j))]);
                }
            }
        }
        s
    }

    /// Left ideal `A*x`.
    pub fn left_ideal(&self, x: &[Scalar]) -> Subspace {
        let v: Vec<Vector> = (0..self.dim()).map(|i| self.mul(&self.basis_vector(i), x)).collect();
        self.subspace(&v)
    }

    /// Right ideal `x*A`.
    pub fn right_ideal(&self, x: &[Scalar]) -> Subspace {
        let v: Vec<Vector> = (0..self.dim()).map(|i| self.mul(x, &self.basis_vector(i))).collect();
        self.subspace(&v)
    }

    pub fn is_two_sided_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|x| {
            (0..self.dim()).all(|i| {
                let b = self.basis_vector(i);
                s.contains(&self.mul(&b, x)) && s.contains(&self.mul(x, &b))
            })
        })
    }

    /// Least `m` with `s^m = 0` (0 for the zero subspace), or `None`.
    pub fn nilpotency_index(&self, s: &Subspace) -> Option<usize> {
        if s.is_zero() {
            return Some(0);
        }
        let mut power = s.clone();
        for k in 1..=self.dim() + 1 {
            if power.is_zero() {
                return Some(k);
            }
            power = self.product_space(&power, s);
        }
        None
    }

    /// Same basis, reversed multiplication.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(self.product(j, i).to_vec());
            }
        }
        Algebra::new_unchecked(
            self.field,
            self.labels.clone(),
            table,
            self.unit.clone(),
            self.vertex_idempotents.clone(),
            self.vertex_labels.clone(),
        )
    }

    /// Identical structure constants, unit and vertices.
    pub fn same_tables(&self, other: &Algebra) -> bool {
        self.field == other.field
            && self.table == other.table
            && self.unit == other.unit
            && self.vertex_idempotents == other.vertex_idempotents
    }

    /// A generating set of the algebra (as an algebra), chosen greedily from
    /// the basis in order.
    pub fn generators(&self) -> &[Vector] {
        self.generators.get_or_init(|| {
            let mut gens: Vec<Vector> = Vec::new();
            let mut sub = Subspace::span(self.field, self.dim(), std::slice::from_ref(&self.unit)).expect("dims");
            for i in 0..self.dim() {
                let b = self.basis_vector(i);
                if sub.contains(&b) {
                    continue;
                }
                gens.push(b);
                sub = self.generated_subalgebra(&gens);
                if sub.dim() == self.dim() {
                    break;
                }
            }
            gens
        })
    }

    fn generated_subalgebra(&self, gens: &[Vector]) -> Subspace {
        let mut s = Subspace::span(self.field, self.dim(), std::slice::from_ref(&self.unit)).expect("dims");
        s.extend(gens.iter().cloned());
        loop {
            let basis = s.basis().to_vec();
            let mut grew = false;
            for x in &basis {
                for g in gens {
                    grew |= s.extend([self.mul(g, x)]);
                }
            }
            if !grew {
                return s;
            }
        }
    }

    /// Jacobson radical, certified as a nilpotent two-sided ideal.
    pub fn radical(&self) -> Result<&Subspace> {
        self.radical.get_or_init(|| radical::compute(self)).as_ref().map_err(Clone::clone)
    }

    /// Primitive idempotent decomposition refining the vertex idempotents.
    pub fn decomposition(&self) -> Result<&Decomposition> {
        self.decomposition
            .get_or_init(|| decompose::compute(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn primitive_idempotents(&self) -> Result<Vec<(Vector, usize)>> {
        Ok(self
            .decomposition()?
            .primitives
            .iter()
            .map(|p| (p.element.clone(), p.class))
            .collect())
    }

    pub fn gabriel_quiver(&self) -> Result<GabrielQuiver> {
        decompose::gabriel_quiver(self)
    }

    /// Sum of the vertex idempotents with the given indices.
    pub fn vertex_sum(&self, vertices: &[usize]) -> Vector {
        let mut e = self.zero();
        for &v in vertices {
            axpy(&mut e, &self.field.one(), &self.vertex_idempotents[v]);
        }
        e
    }

    pub fn complement_idempotent(&self, e: &[Scalar]) -> Vector {
        crate::linalg::sub_vectors(&self.unit, e)
    }

    /// Vector from label-indexed coefficients.
    pub fn element(&self, terms: &[(i64, &str)]) -> Result<Vector> {
        let mut v = self.zero();
        for (c, label) in terms {
            let i = self.basis_index(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            v[i] = &v[i] + &self.field.from_i64(*c);
        }
        Ok(v)
    }

    pub fn format_element(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("{}*{}", c, self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn corner(self: &Arc<Self>, e: &[Scalar]) -> Result<CornerAlgebra> {
        CornerAlgebra::new(self, e)
    }

    pub fn quotient(self: &Arc<Self>, ideal: &Subspace) -> Result<QuotientAlgebra> {
        QuotientAlgebra::new(self, ideal)
    }

    pub fn associated_category(self: &Arc<Self>, idempotents: &[Vector], labels: &[String]) -> Result<AssociatedCategory> {
        AssociatedCategory::new(self, idempotents, labels)
    }
}
