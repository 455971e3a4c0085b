//! Indecomposable projectives, tops, simples and projective covers.

use std::sync::Arc;

use super::FModule;
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// The left ideal `Ae` with its basis recorded as algebra elements.
#[derive(Clone, Debug)]
pub struct ProjectiveSummand {
    pub idempotent: Vector,
    /// Basis of `Ae` in algebra coordinates.
    pub basis: Vec<Vector>,
    pub module: FModule,
    /// Coordinates of `e` in `basis`.
    pub generator: Vector,
    space: Subspace,
    peirce: Option<Vec<usize>>,
}

impl ProjectiveSummand {
    pub fn new(a: &Arc<Algebra>, e: &[Scalar]) -> Result<Self> {
        if e.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: e.len() });
        }
        if !a.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let f = a.field();
        let space = a.left_ideal(e);
        let fixed: Vec<usize> = (0..a.dim()).filter(|&i| a.mul(&a.basis_vector(i), e) == a.basis_vector(i)).collect();
        let (basis, peirce) = if fixed.len() == space.dim() {
            (fixed.iter().map(|&i| a.basis_vector(i)).collect(), Some(fixed))
        } else {
            (space.basis().to_vec(), None)
        };
        let mut s = ProjectiveSummand {
            idempotent: e.to_vec(),
            basis,
            module: FModule::zero(a),
            generator: Vec::new(),
            space,
            peirce,
        };
        let d = s.basis.len();
        let action = (0..a.dim())
            .map(|i| {
                let bi = a.basis_vector(i);
                let cols: Vec<Vector> = s.basis.iter().map(|v| s.coordinates(&a.mul(&bi, v))).collect();
                Matrix::from_columns(f, d, &cols)
            })
            .collect();
        s.module = FModule::new_unchecked(a.clone(), d, action);
        s.generator = s.coordinates(e);
        Ok(s)
    }

    /// Coordinates of an element of `Ae`.
    pub fn coordinates(&self, x: &[Scalar]) -> Vector {
        match &self.peirce {
            Some(idx) => idx.iter().map(|&i| x[i].clone()).collect(),
            None => self.space.coordinates(x).expect("element of Ae"),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The indecomposable projective `A e_c` for every simple class `c`.
pub fn projective_modules(a: &Arc<Algebra>) -> Result<Vec<ProjectiveSummand>> {
    let d = a.decomposition()?;
    (0..d.class_count()).map(|c| ProjectiveSummand::new(a, d.representative(c))).collect()
}

#[derive(Clone, Debug)]
pub struct TopAndRadical {
    pub radical: Subspace,
    pub radical_module: FModule,
    pub top: FModule,
    /// `M -> top`.
    pub projection: Matrix,
}

pub fn top_and_radical(m: &FModule) -> Result<TopAndRadical> {
    let radical = m.radical_subspace()?;
    let radical_module = m.submodule(&radical)?;
    let top = m.quotient(&radical)?;
    // semisimplicity of the top: rad A acts as zero
    for r in m.algebra().radical()?.basis() {
        if !top.act(r).is_zero() {
            return Err(Error::Invariant("radical acts nontrivially on the top".into()));
        }
    }
    let projection = m.quotient_map(&radical);
    Ok(TopAndRadical { radical, radical_module, top, projection })
}

/// One simple module per class, realized as `top(A e_c)`.
pub fn simples(a: &Arc<Algebra>) -> Result<Vec<FModule>> {
    projective_modules(a)?.iter().map(|p| Ok(top_and_radical(&p.module)?.top)).collect()
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Simple class of each indecomposable summand, in order.
    pub classes: Vec<usize>,
    /// Start of each summand in the basis of `module`.
    pub offsets: Vec<usize>,
    pub module: FModule,
    /// `P -> M`.
    pub map: Matrix,
    /// Image of each summand's generator in `M`.
    pub generator_images: Vec<Vector>,
    pub kernel: Subspace,
}

/// Shared data for repeated covers over one algebra.
#[derive(Clone, Debug)]
pub(crate) struct CoverContext {
    pub algebra: Arc<Algebra>,
    pub projectives: Vec<ProjectiveSummand>,
}

impl CoverContext {
    pub fn new(a: &Arc<Algebra>) -> Result<Self> {
        Ok(CoverContext { algebra: a.clone(), projectives: projective_modules(a)? })
    }

    /// Direct sum of indecomposable projectives in the given class order.
    pub fn free_module(&self, classes: &[usize]) -> (FModule, Vec<usize>) {
        let mut offsets = Vec::with_capacity(classes.len());
        let mut m = FModule::zero(&self.algebra);
        for &c in classes {
            offsets.push(m.dim());
            m = m.direct_sum(&self.projectives[c].module).expect("same algebra");
        }
        (m, offsets)
    }

    pub fn cover(&self, m: &FModule) -> Result<ProjectiveCover> {
        let f = self.algebra.field();
        let radical = m.radical_subspace()?;
        let mut classes = Vec::new();
        let mut generator_images = Vec::new();
        let mut top_hit = Subspace::zero(f, m.dim() - radical.dim());
        for (c, p) in self.projectives.iter().enumerate() {
            let e = m.act(&p.idempotent);
            for col in e.columns() {
                if top_hit.extend([radical.quotient_coordinates(&col)]) {
                    classes.push(c);
                    generator_images.push(col);
                }
            }
        }
        let (module, offsets) = self.free_module(&classes);
        let mut cols: Vec<Vector> = Vec::with_capacity(module.dim());
        for (k, &c) in classes.iter().enumerate() {
            for v in &self.projectives[c].basis {
                cols.push(m.act(v).mul_vec(&generator_images[k]));
            }
        }
        let map = Matrix::from_columns(f, m.dim(), &cols);
        if map.rank() != m.dim() {
            return Err(Error::Invariant("projective cover map is not surjective".into()));
        }
        let kernel = Subspace::kernel(&map);
        Ok(ProjectiveCover { classes, offsets, module, map, generator_images, kernel })
    }
}

pub fn projective_cover(m: &FModule) -> Result<ProjectiveCover> {
    CoverContext::new(m.algebra())?.cover(m)
}

impl ProjectiveCover {
    /// Kernel inside `rad P`, the minimality condition.
    pub fn is_minimal(&self) -> Result<bool> {
        let rad = self.module.radical_subspace()?;
        Ok(self.kernel.is_subspace_of(&rad))
    }

    pub fn kernel_module(&self) -> Result<FModule> {
        self.module.submodule(&self.kernel)
    }
}
