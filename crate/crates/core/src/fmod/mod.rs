//! Finite-dimensional left modules and their homological algebra.
//!
//! Right modules are left modules over the opposite algebra.

mod cover;
mod hom;
mod homology;
mod resolution;
mod selfinj;

use std::fmt;
use std::sync::Arc;

pub use cover::{projective_cover, projective_modules, simples, top_and_radical, ProjectiveCover, ProjectiveSummand, TopAndRadical};
pub use hom::{hom_space, is_isomorphic, split_summand, IsoResult, SplitCertificate};
pub use homology::{ext_n, tor_n, HomologyResult};
pub use resolution::{
    gl_dim, minimal_resolution, proj_dim, resolve_to_depth, verify_resolution, Certificate, DimResult, Resolution,
    ResolutionStatus, ResolutionTerm,
};
pub use selfinj::{is_self_injective, socle};

use crate::algebra::{Algebra, CornerAlgebra, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

#[derive(Clone)]
pub struct FModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl fmt::Debug for FModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FModule").field("dim", &self.dim).field("algebra_dim", &self.algebra.dim()).finish()
    }
}

impl FModule {
    /// Validates the module axioms on all basis pairs and the unit.
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("action of {} is not {dim}x{dim}", algebra.label(i))));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let module = FModule { algebra, dim, action };
        module.validate()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Self {
        FModule { algebra, dim, action }
    }

    fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(f, self.dim, self.dim);
                for (k, c) in a.product(i, j) {
                    rhs.add_scaled(c, &self.action[*k]);
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action of {}*{} is not the product of the actions",
                        a.label(i),
                        a.label(j)
                    )));
                }
            }
        }
        if self.act(a.unit()) != Matrix::identity(f, self.dim) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        Ok(())
    }

    /// Builds a module from a function giving the action of each basis element.
    pub(crate) fn from_fn(algebra: &Arc<Algebra>, dim: usize, mut f: impl FnMut(usize) -> Matrix) -> Self {
        let action = (0..algebra.dim()).map(&mut f).collect();
        FModule::new_unchecked(algebra.clone(), dim, action)
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        let f = algebra.field();
        FModule::from_fn(algebra, 0, |_| Matrix::zeros(f, 0, 0))
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(algebra: &Arc<Algebra>) -> Self {
        let mats = algebra.left_regular().to_vec();
        FModule::new_unchecked(algebra.clone(), algebra.dim(), mats)
    }

    /// The left ideal `Ae`, on a basis of algebra basis elements when possible.
    pub fn projective_at(algebra: &Arc<Algebra>, e: &[Scalar]) -> Result<Self> {
        Ok(cover::ProjectiveSummand::new(algebra, e)?.module)
    }

    /// A left ideal (a subspace of `A` closed under left multiplication).
    pub fn left_ideal(algebra: &Arc<Algebra>, ideal: &Subspace) -> Result<Self> {
        FModule::regular(algebra).submodule(ideal)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// `ρ(x)` for an algebra element `x`.
    pub fn act(&self, x: &[Scalar]) -> Matrix {
        let f = self.algebra.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (m, c) in self.action.iter().zip(x) {
            if !c.is_zero() {
                out.add_scaled(c, m);
            }
        }
        out
    }

    /// `e·M` as a subspace.
    pub fn idempotent_image(&self, e: &[Scalar]) -> Subspace {
        Subspace::image(&self.act(e))
    }

    pub fn dimension_vector(&self, idempotents: &[Vector]) -> Vec<usize> {
        idempotents.iter().map(|e| self.act(e).rank()).collect()
    }

    /// Dimensions of `e_v M` for the algebra's vertex idempotents.
    pub fn vertex_dimensions(&self) -> Vec<usize> {
        self.dimension_vector(self.algebra.vertex_idempotents())
    }

    /// Submodule spanned by `S`; errors if `S` is not stable.
    pub fn submodule(&self, s: &Subspace) -> Result<Self> {
        if s.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.ambient() });
        }
        let f = self.algebra.field();
        let mut action = Vec::with_capacity(self.action.len());
        for m in &self.action {
            let mut cols = Vec::with_capacity(s.dim());
            for b in s.basis() {
                let img = m.mul_vec(b);
                cols.push(s.coordinates(&img).ok_or_else(|| Error::InvalidModule("subspace is not a submodule".into()))?);
            }
            action.push(Matrix::from_columns(f, s.dim(), &cols));
        }
        Ok(FModule::new_unchecked(self.algebra.clone(), s.dim(), action))
    }

    /// `M/S` on the basis of coordinates complementary to the pivots of `S`.
    pub fn quotient(&self, s: &Subspace) -> Result<Self> {
        if s.ambient() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.ambient() });
        }
        for b in s.basis() {
            for m in &self.action {
                if !s.contains(&m.mul_vec(b)) {
                    return Err(Error::InvalidModule("subspace is not a submodule".into()));
                }
            }
        }
        let f = self.algebra.field();
        let comp = s.complement_indices();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = comp.iter().map(|&c| s.quotient_coordinates(&m.column(c))).collect();
                Matrix::from_columns(f, comp.len(), &cols)
            })
            .collect();
        Ok(FModule::new_unchecked(self.algebra.clone(), comp.len(), action))
    }

    /// Matrix of the projection `M -> M/S` matching [`FModule::quotient`].
    pub fn quotient_map(&self, s: &Subspace) -> Matrix {
        let f = self.algebra.field();
        let cols: Vec<Vector> = (0..self.dim).map(|i| s.quotient_coordinates(&crate::linalg::unit_vector(f, self.dim, i))).collect();
        Matrix::from_columns(f, self.dim - s.dim(), &cols)
    }

    pub fn direct_sum(&self, other: &FModule) -> Result<Self> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) && !self.algebra.same_tables(&other.algebra) {
            return Err(Error::InvalidModule("direct sum over different algebras".into()));
        }
        let action = self.action.iter().zip(&other.action).map(|(x, y)| x.direct_sum(y)).collect();
        Ok(FModule::new_unchecked(self.algebra.clone(), self.dim + other.dim, action))
    }

    /// `rad(A)·M`.
    /// The submodule `Σ A v` generated by the given vectors.
    pub fn generated_submodule(&self, vectors: &[Vector]) -> Subspace {
        let f = self.algebra.field();
        let mut s = Subspace::zero(f, self.dim);
        for v in vectors {
            s.extend(self.action.iter().map(|m| m.mul_vec(v)));
        }
        s
    }

    pub fn radical_subspace(&self) -> Result<Subspace> {
        let rad = self.algebra.radical()?;
        let mut s = Subspace::zero(self.algebra.field(), self.dim);
        for r in rad.basis() {
            s.extend(self.act(r).columns());
        }
        Ok(s)
    }

    /// Dimensions of `rad^i M / rad^{i+1} M` until the radical vanishes.
    pub fn radical_layers(&self) -> Result<Vec<usize>> {
        let rad = self.algebra.radical()?;
        let mats: Vec<Matrix> = rad.basis().iter().map(|r| self.act(r)).collect();
        let mut current = Subspace::full(self.algebra.field(), self.dim);
        let mut layers = Vec::new();
        while !current.is_zero() {
            let mut next = Subspace::zero(self.algebra.field(), self.dim);
            for m in &mats {
                for b in current.basis() {
                    next.extend([m.mul_vec(b)]);
                }
            }
            layers.push(current.dim() - next.dim());
            if next.dim() == current.dim() {
                return Err(Error::Invariant("radical does not act nilpotently".into()));
            }
            current = next;
        }
        Ok(layers)
    }

    /// Same action matrices viewed over a different but identical algebra handle.
    pub fn with_algebra(&self, algebra: &Arc<Algebra>) -> Result<Self> {
        if !self.algebra.same_tables(algebra) {
            return Err(Error::InvalidModule("algebras differ".into()));
        }
        Ok(FModule::new_unchecked(algebra.clone(), self.dim, self.action.clone()))
    }

    pub fn identical(&self, other: &FModule) -> bool {
        self.dim == other.dim && self.action == other.action
    }
}

/// A module homomorphism `source -> target` given by a `target.dim x source.dim` matrix.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: FModule,
    pub target: FModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: FModule, target: FModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(Error::DimensionMismatch { expected: target.dim * source.dim, found: matrix.rows() * matrix.cols() });
        }
        let ok = source.action.iter().zip(&target.action).all(|(s, t)| matrix.mul(s) == t.mul(&matrix));
        if !ok {
            return Err(Error::NotAHomomorphism);
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel(&self.matrix)
    }

    pub fn image(&self) -> Subspace {
        Subspace::image(&self.matrix)
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim == self.target.dim && self.is_injective()
    }
}

/// `e·M` as a module over the corner `eAe`.
pub fn restrict_module(m: &FModule, corner: &CornerAlgebra) -> Result<FModule> {
    if !Arc::ptr_eq(corner.parent(), m.algebra()) && !corner.parent().same_tables(m.algebra()) {
        return Err(Error::InvalidModule("corner of a different algebra".into()));
    }
    let f = m.algebra.field();
    let space = m.idempotent_image(corner.idempotent());
    let b = corner.algebra();
    let action = (0..b.dim())
        .map(|i| {
            let rho = m.act(&corner.embed(&b.basis_vector(i)));
            let cols: Vec<Vector> =
                space.basis().iter().map(|v| space.coordinates(&rho.mul_vec(v)).expect("eAe preserves eM")).collect();
            Matrix::from_columns(f, space.dim(), &cols)
        })
        .collect();
    Ok(FModule::new_unchecked(b.clone(), space.dim(), action))
}

/// Convenience: restricts along `e` after building the corner.
pub fn restrict_to(m: &FModule, e: &[Scalar]) -> Result<(CornerAlgebra, FModule)> {
    let corner = m.algebra().corner(e)?;
    let r = restrict_module(m, &corner)?;
    Ok((corner, r))
}

/// An `A/J`-module viewed as an `A`-module.
pub fn inflate(m: &FModule, quotient: &QuotientAlgebra) -> Result<FModule> {
    if !m.algebra().same_tables(quotient.algebra()) {
        return Err(Error::InvalidModule("module is not over this quotient".into()));
    }
    let parent = quotient.parent();
    let action = (0..parent.dim()).map(|i| m.act(&quotient.project(&parent.basis_vector(i)))).collect();
    Ok(FModule::new_unchecked(parent.clone(), m.dim(), action))
}

/// Whether `J` annihilates `M`, i.e. `M` is inflated from `A/J`.
pub fn annihilated_by(m: &FModule, ideal: &Subspace) -> bool {
    ideal.basis().iter().all(|x| m.act(x).is_zero())
}

/// Restriction of an `A`-module annihilated by `J` to `A/J`.
pub fn deflate(m: &FModule, quotient: &QuotientAlgebra) -> Result<FModule> {
    if !annihilated_by(m, quotient.ideal()) {
        return Err(Error::InvalidModule("the ideal does not annihilate the module".into()));
    }
    let q = quotient.algebra();
    let action = (0..q.dim()).map(|i| m.act(&quotient.section(&q.basis_vector(i)))).collect();
    Ok(FModule::new_unchecked(q.clone(), m.dim(), action))
}
