//! Stratifying ideals and standard stratification layers.

use std::sync::Arc;

use super::theorems::{projectivity_evidence, ProjectivityEvidence};
use super::DirectedStratification;
use crate::algebra::{Algebra, EiCategory, StabilizerEntry};
use crate::error::{Error, Result};
use crate::fmod::{deflate, tor_n, FModule, HomologyResult};
use crate::linalg::{is_zero_vector, Matrix, Scalar, Subspace, Vector};

/// `space` as a module over `b`, where `op(i)` is the ambient operator of
/// the `i`-th basis element of `b`.
fn module_on(b: &Arc<Algebra>, space: &Subspace, op: impl Fn(usize) -> Matrix) -> FModule {
    let f = b.field();
    let action = (0..b.dim())
        .map(|i| {
            let m = op(i);
            let cols: Vec<Vector> =
                space.basis().iter().map(|v| space.coordinates(&m.mul_vec(v)).expect("stable subspace")).collect();
            Matrix::from_columns(f, space.dim(), &cols)
        })
        .collect();
    FModule::new_unchecked(b.clone(), space.dim(), action)
}

#[derive(Clone, Debug)]
pub struct StratifyingIdealReport {
    pub e: String,
    pub f: String,
    /// `dim J` for `J = AfA`.
    pub ideal_dim: usize,
    /// `dim Af ⊗_{fAf} fA`.
    pub tensor_dim: HomologyResult,
    /// Dimension of the image of the multiplication map.
    pub image_dim: usize,
    /// `dim Tor_n^{fAf}(Af, fA)` for `n = 1..=depth`.
    pub tor: Vec<HomologyResult>,
}

impl StratifyingIdealReport {
    pub fn multiplication_iso(&self) -> bool {
        self.tensor_dim == HomologyResult::Dimension(self.ideal_dim) && self.image_dim == self.ideal_dim
    }

    pub fn tor_vanishes(&self) -> bool {
        self.tor.iter().all(|t| *t == HomologyResult::Dimension(0))
    }

    pub fn passed(&self) -> bool {
        self.multiplication_iso() && self.tor_vanishes()
    }
}

/// Conditions on `J = AfA` with `f = 1 - e`.
pub fn stratifying_ideal_check(a: &Arc<Algebra>, e: &[Scalar], tor_depth: usize) -> Result<StratifyingIdealReport> {
    if e.len() != a.dim() || !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let f = a.complement_idempotent(e);
    let j = a.two_sided_ideal(std::slice::from_ref(&f));
    let (es, fs) = (a.format_element(e), a.format_element(&f));
    if is_zero_vector(&f) {
        let zero = HomologyResult::Dimension(0);
        return Ok(StratifyingIdealReport {
            e: es,
            f: fs,
            ideal_dim: 0,
            tensor_dim: zero,
            image_dim: 0,
            tor: vec![zero; tor_depth],
        });
    }
    let corner = a.corner(&f)?;
    let c = corner.algebra().clone();
    let cop = Arc::new(c.opposite());
    let af = a.left_ideal(&f);
    let fa = a.right_ideal(&f);
    let y = module_on(&c, &fa, |i| a.left_mult_matrix(&corner.embed(&c.basis_vector(i))));
    let x = module_on(&cop, &af, |i| a.right_mult_matrix(&corner.embed(&c.basis_vector(i))));
    let products: Vec<Vector> = af.basis().iter().flat_map(|u| fa.basis().iter().map(move |v| a.mul(u, v))).collect();
    let image_dim = a.subspace(&products).dim();
    let tensor_dim = tor_n(&x, &y, 0, tor_depth + 1)?;
    let tor = (1..=tor_depth).map(|n| tor_n(&x, &y, n, tor_depth + 1)).collect::<Result<Vec<_>>>()?;
    Ok(StratifyingIdealReport { e: es, f: fs, ideal_dim: j.dim(), tensor_dim, image_dim, tor })
}

#[derive(Clone, Debug)]
pub struct LayerReport {
    pub index: usize,
    /// Objects whose idempotents generate `J_i`.
    pub generators: Vec<String>,
    pub ideal_dim: usize,
    pub layer: ProjectivityEvidence,
}

#[derive(Clone, Debug)]
pub struct StandardReport {
    pub layers: Vec<LayerReport>,
    /// Stabilizer orders for EI-category inputs.
    pub stabilizers: Option<Vec<StabilizerEntry>>,
}

impl StandardReport {
    pub fn standard(&self) -> bool {
        self.layers.iter().all(|l| l.layer.projective())
    }

    pub fn stabilizer_criterion(&self) -> Option<bool> {
        self.stabilizers.as_ref().map(|s| s.iter().all(|e| e.invertible))
    }
}

/// `J_i = A(e_{n-i+1} + ... + e_n)A`; each `J_i/J_{i-1}` must be projective
/// over `A/J_{i-1}`.
pub fn standardly_stratified_check(s: &DirectedStratification, ei: Option<&EiCategory>) -> Result<StandardReport> {
    let a = s.algebra();
    let f = a.field();
    let n = s.len();
    let regular = FModule::regular(a);
    let mut prev = Subspace::zero(f, a.dim());
    let mut layers = Vec::with_capacity(n);
    for i in 1..=n {
        let objs = (n - i..n).collect();
        let ji = a.two_sided_ideal(&[s.idempotent_sum(&objs)]);
        let quotient = a.quotient(&prev)?;
        let sub = regular.submodule(&ji)?;
        let inner: Vec<Vector> = prev.basis().iter().map(|v| ji.coordinates(v).expect("chain of ideals")).collect();
        let layer = sub.quotient(&Subspace::span(f, ji.dim(), &inner)?)?;
        let layer = deflate(&layer, &quotient)?;
        layers.push(LayerReport {
            index: i,
            generators: objs.iter().map(|&x| s.labels()[x].clone()).collect(),
            ideal_dim: ji.dim(),
            layer: projectivity_evidence(&layer, format!("J_{i}/J_{}", i - 1))?,
        });
        prev = ji;
    }
    let stabilizers = ei.map(|c| c.stabilizers(f));
    Ok(StandardReport { layers, stabilizers })
}
