//! Dimension bounds from the strata, the recollement criterion and the
//! contravariant-finiteness obstruction.
//!
//! fin.dim here is the little finitistic dimension. It is never computed
//! directly; a stratum's value comes from the caller, from self-injectivity
//! (value 0) or from a finite global dimension.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::DirectedStratification;
use crate::algebra::{Algebra, PathAlgebra};
use crate::error::{Error, Result};
use crate::fmod::{
    ext_n, gl_dim, is_self_injective, minimal_resolution, simples, split_summand, top_and_radical, Certificate, DimResult,
    FModule, HomologyResult, ResolutionStatus,
};
use crate::linalg::{is_zero_vector, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimSource {
    Oracle,
    SelfInjective,
    GlobalDimension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumDim {
    Known { value: usize, source: DimSource },
    Infinite,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct StratumEntry {
    pub object: usize,
    pub label: String,
    pub corner_dim: usize,
    pub value: StratumDim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombinedBound {
    Known(usize),
    UnknownDueTo(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct StratumDimReport {
    pub strata: Vec<StratumEntry>,
    /// `Σ d_x + n - 1`.
    pub combined: CombinedBound,
    /// gl.dim of the whole algebra; only filled by `gldim_bound`.
    pub algebra_gldim: Option<DimResult>,
}

impl StratumDimReport {
    fn new(strata: Vec<StratumEntry>, algebra_gldim: Option<DimResult>) -> Self {
        let mut sum = strata.len().saturating_sub(1);
        let mut missing = Vec::new();
        for s in &strata {
            match s.value {
                StratumDim::Known { value, .. } => sum += value,
                _ => missing.push(s.label.clone()),
            }
        }
        let combined = if missing.is_empty() { CombinedBound::Known(sum) } else { CombinedBound::UnknownDueTo(missing) };
        StratumDimReport { strata, combined, algebra_gldim }
    }

    /// Checks the global-dimension statement against the computed gl.dim of
    /// the algebra: all strata finite iff the algebra is, and then within the
    /// bound. `None` when something was cut off.
    pub fn gldim_consistent(&self) -> Option<bool> {
        let all_finite = self.strata.iter().all(|s| matches!(s.value, StratumDim::Known { .. }));
        let some_infinite = self.strata.iter().any(|s| s.value == StratumDim::Infinite);
        match (self.algebra_gldim?, &self.combined) {
            (DimResult::Finite(d), CombinedBound::Known(b)) => Some(d <= *b),
            (DimResult::Finite(_), _) if some_infinite => Some(false),
            (DimResult::Infinite, _) if all_finite => Some(false),
            (DimResult::Infinite, _) if some_infinite => Some(true),
            _ => None,
        }
    }
}

/// fin.dim bound with values from `oracle` (keyed by object label), then
/// self-injectivity, then finite global dimension.
pub fn findim_bound(
    s: &DirectedStratification,
    oracle: &BTreeMap<String, usize>,
    cutoff: usize,
) -> Result<StratumDimReport> {
    let mut strata = Vec::new();
    for (x, e) in s.idempotents().iter().enumerate() {
        let label = s.labels()[x].clone();
        let corner = s.algebra().corner(e)?;
        let c = corner.algebra();
        let value = if let Some(&value) = oracle.get(&label) {
            StratumDim::Known { value, source: DimSource::Oracle }
        } else if is_self_injective(c)? {
            StratumDim::Known { value: 0, source: DimSource::SelfInjective }
        } else if let DimResult::Finite(value) = gl_dim(c, cutoff, 0)? {
            StratumDim::Known { value, source: DimSource::GlobalDimension }
        } else {
            StratumDim::Unknown
        };
        strata.push(StratumEntry { object: x, label, corner_dim: c.dim(), value });
    }
    Ok(StratumDimReport::new(strata, None))
}

pub fn gldim_bound(s: &DirectedStratification, cutoff: usize) -> Result<StratumDimReport> {
    let mut strata = Vec::new();
    for (x, e) in s.idempotents().iter().enumerate() {
        let corner = s.algebra().corner(e)?;
        let c = corner.algebra();
        let value = match gl_dim(c, cutoff, 0)? {
            DimResult::Finite(value) => StratumDim::Known { value, source: DimSource::GlobalDimension },
            DimResult::Infinite => StratumDim::Infinite,
            DimResult::Unknown => StratumDim::Unknown,
        };
        strata.push(StratumEntry { object: x, label: s.labels()[x].clone(), corner_dim: c.dim(), value });
    }
    let whole = gl_dim(s.algebra(), cutoff, 0)?;
    Ok(StratumDimReport::new(strata, Some(whole)))
}

/// One side of the recollement criterion: `B = A/J` as a left module over `A`
/// (`left`) or over `A^op` (a right `A`-module).
#[derive(Clone, Debug)]
pub struct SideReport {
    pub side: &'static str,
    pub b_dim: usize,
    pub proj_dim: DimResult,
    pub certificate: Option<Certificate>,
    /// `dim Ext^n(B, B)` for `n = 1..=cutoff`; `B` is free of rank one over itself.
    pub ext: Vec<HomologyResult>,
    /// Simples of the algebra that split off `B`.
    pub simple_summands: Vec<String>,
}

impl SideReport {
    pub fn ext_vanishes(&self) -> Option<bool> {
        if self.ext.iter().any(|e| matches!(e, HomologyResult::Dimension(d) if *d > 0)) {
            Some(false)
        } else if self.ext.iter().all(|e| *e == HomologyResult::Dimension(0)) {
            Some(true)
        } else {
            None
        }
    }

    pub fn proj_dim_finite(&self) -> Option<bool> {
        match self.proj_dim {
            DimResult::Finite(_) => Some(true),
            DimResult::Infinite => Some(false),
            DimResult::Unknown => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RecollementReport {
    pub ideal_dim: usize,
    pub left: SideReport,
    pub right: SideReport,
}

impl RecollementReport {
    /// Some side is certified to violate one of the two conditions.
    pub fn obstructed(&self) -> bool {
        [&self.left, &self.right].iter().any(|s| s.proj_dim_finite() == Some(false) || s.ext_vanishes() == Some(false))
    }
}

fn side_report(side: &'static str, a: &Arc<Algebra>, j: &crate::linalg::Subspace, cutoff: usize) -> Result<SideReport> {
    let b = FModule::regular(a).quotient(j)?;
    let r = minimal_resolution(&b, cutoff.max(1), 0)?;
    let (proj_dim, certificate) = match r.status {
        ResolutionStatus::Finite(d) => (DimResult::Finite(d), None),
        ResolutionStatus::CertifiedInfinite(c) => (DimResult::Infinite, Some(c)),
        ResolutionStatus::Cutoff(_) => (DimResult::Unknown, None),
    };
    let ext = (1..=cutoff).map(|n| ext_n(&b, &b, n, cutoff + 1)).collect::<Result<Vec<_>>>()?;
    let d = a.decomposition()?;
    let mut simple_summands = Vec::new();
    for (c, s) in simples(a)?.iter().enumerate() {
        if split_summand(s, &b, 0).is_some() {
            simple_summands.push(d.class_labels[c].clone());
        }
    }
    Ok(SideReport { side, b_dim: b.dim(), proj_dim, certificate, ext, simple_summands })
}

/// Both conditions of the recollement criterion for `J = A(1-e)A`, on both sides.
pub fn recollement_condition_check(a: &Arc<Algebra>, e: &[Scalar], cutoff: usize) -> Result<RecollementReport> {
    if e.len() != a.dim() || !a.is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    let f = a.complement_idempotent(e);
    let j = a.two_sided_ideal(&[f]);
    let op = Arc::new(a.opposite());
    Ok(RecollementReport {
        ideal_dim: j.dim(),
        left: side_report("left", a, &j, cutoff)?,
        right: side_report("right", &op, &j, cutoff)?,
    })
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub p: String,
    pub q: String,
    pub rad_p_zero: bool,
    pub q_rad_zero: bool,
    /// proj.dim of `A q`.
    pub aq_proj_dim: DimResult,
    /// proj.dim of the simple top of `A e_t`, `t` the target of `p`.
    pub top_proj_dim: DimResult,
    pub top_certificate: Option<Certificate>,
}

impl ObstructionReport {
    pub fn present(&self) -> bool {
        self.rad_p_zero
            && self.q_rad_zero
            && self.aq_proj_dim.is_finite()
            && self.top_proj_dim == DimResult::Infinite
    }
}

/// The four conditions under which modules of finite projective dimension
/// do not form a contravariantly finite subcategory.
pub fn contravariant_finiteness_obstruction(pa: &PathAlgebra, p: &str, q: &str, cutoff: usize) -> Result<ObstructionReport> {
    let quiver = pa.quiver();
    let arrow = quiver.arrow_index(p).ok_or_else(|| Error::UnknownLabel(p.to_string()))?;
    let qp = quiver.parse_path(q)?;
    let pp = quiver.arrow_path(arrow);
    if !pp.is_parallel(&qp) {
        return Err(Error::NotParallel(format!("{p} and {q}")));
    }
    if qp == pp || qp.is_trivial() {
        return Err(Error::InvalidArgument(format!("q = {q} must differ from p and have positive length")));
    }
    let a = pa.algebra();
    let pe = pa.path_element(p)?;
    let qe = pa.path_element(q)?;
    if is_zero_vector(&qe) {
        return Err(Error::InvalidArgument(format!("{q} lies in the relation ideal")));
    }
    let rad = a.radical()?;
    let rad_p_zero = rad.basis().iter().all(|r| is_zero_vector(&a.mul(r, &pe)));
    let q_rad_zero = rad.basis().iter().all(|r| is_zero_vector(&a.mul(&qe, r)));
    let aq = FModule::left_ideal(a, &a.left_ideal(&qe))?;
    let aq_proj_dim = crate::fmod::proj_dim(&aq, cutoff, 0)?;
    let et = &a.vertex_idempotents()[pp.target];
    let top = top_and_radical(&FModule::projective_at(a, et)?)?.top;
    let r = minimal_resolution(&top, cutoff, 0)?;
    let (top_proj_dim, top_certificate) = match r.status {
        ResolutionStatus::Finite(d) => (DimResult::Finite(d), None),
        ResolutionStatus::CertifiedInfinite(c) => (DimResult::Infinite, Some(c)),
        ResolutionStatus::Cutoff(_) => (DimResult::Unknown, None),
    };
    Ok(ObstructionReport {
        p: p.to_string(),
        q: q.to_string(),
        rad_p_zero,
        q_rad_zero,
        aq_proj_dim,
        top_proj_dim,
        top_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{char2, char2_strat};
    use super::*;
    use crate::algebra::tests::split_pair;
    use crate::algebra::PathAlgebraPresentation;
    use crate::linalg::Field;
    use crate::quiver::Quiver;

    #[test]
    fn char2_findim_bound_is_one() {
        let r = findim_bound(&char2_strat(), &BTreeMap::new(), 6).unwrap();
        assert_eq!(r.combined, CombinedBound::Known(1));
        assert!(r.strata.iter().all(|s| s.value == StratumDim::Known { value: 0, source: DimSource::SelfInjective }));
    }

    #[test]
    fn char2_recollement_fails_on_the_left() {
        let a = char2();
        let r = recollement_condition_check(&a, &a.vertex_idempotents()[0], 6).unwrap();
        assert_eq!(r.ideal_dim, 3);
        assert_eq!(r.left.proj_dim, DimResult::Infinite);
        assert!(r.left.certificate.as_ref().is_some_and(|c| c.indices() == (1, 2)));
        assert!(r.obstructed());
        let t = recollement_condition_check(&a, a.unit(), 3).unwrap();
        assert!(!t.obstructed());
        assert_eq!(t.left.proj_dim, DimResult::Finite(0));
    }

    #[test]
    fn semisimple_gldim_bound() {
        let a = Arc::new(split_pair(Field::RATIONALS));
        let s = super::super::verify_stratification(&a, a.vertex_idempotents(), &[]).unwrap();
        let r = gldim_bound(&s, 4).unwrap();
        assert_eq!(r.combined, CombinedBound::Known(1));
        assert_eq!(r.algebra_gldim, Some(DimResult::Finite(0)));
        assert_eq!(r.gldim_consistent(), Some(true));
    }

    #[test]
    fn hereditary_has_no_obstruction() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let pa = PathAlgebraPresentation::new(Field::RATIONALS, q, vec![]).build().unwrap();
        let r = contravariant_finiteness_obstruction(&pa, "b", "a", 5).unwrap();
        assert!(!r.present());
        assert!(matches!(contravariant_finiteness_obstruction(&pa, "b", "b", 5), Err(Error::InvalidArgument(_))));
    }
}
