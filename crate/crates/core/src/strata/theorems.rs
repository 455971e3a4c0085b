//! Executable forms of the structure results: simples live on one object,
//! restriction to an ideal keeps projectives projective, covers are supported
//! on `𝒜_M`, and resolutions restrict to minimal resolutions at minimal objects.

use std::collections::BTreeSet;

use super::{is_ideal, support_profile, DirectedStratification, SupportProfile};
use crate::error::{Error, Result};
use crate::fmod::{
    hom_space, projective_cover, projective_modules, resolve_to_depth, restrict_module, simples, FModule, ResolutionStatus,
};
use crate::linalg::{Matrix, Scalar, Subspace, Vector};

/// Dimension table showing that a module is projective: its projective cover
/// has zero kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityEvidence {
    pub label: String,
    pub dim: usize,
    pub cover_dim: usize,
    pub kernel_dim: usize,
}

impl ProjectivityEvidence {
    pub fn projective(&self) -> bool {
        self.kernel_dim == 0 && self.cover_dim == self.dim
    }
}

pub fn projectivity_evidence(m: &FModule, label: impl Into<String>) -> Result<ProjectivityEvidence> {
    let label = label.into();
    if m.is_zero() {
        return Ok(ProjectivityEvidence { label, dim: 0, cover_dim: 0, kernel_dim: 0 });
    }
    let c = projective_cover(m)?;
    Ok(ProjectivityEvidence { label, dim: m.dim(), cover_dim: c.module.dim(), kernel_dim: c.kernel.dim() })
}

/// `e·f·e` restricted to `eM -> eN`, in the bases `restrict_module` uses.
fn restrict_map(map: &Matrix, m: &FModule, n: &FModule, e: &[Scalar]) -> Matrix {
    let (sm, sn) = (m.idempotent_image(e), n.idempotent_image(e));
    let cols: Vec<Vector> =
        sm.basis().iter().map(|v| sn.coordinates(&map.mul_vec(v)).expect("maps preserve eM")).collect();
    Matrix::from_columns(m.algebra().field(), sn.dim(), &cols)
}

#[derive(Clone, Debug)]
pub struct SimpleSupport {
    pub class_label: String,
    pub dims: Vec<usize>,
    pub object: Option<usize>,
    pub corner_simple: bool,
}

impl SimpleSupport {
    pub fn passed(&self) -> bool {
        self.object.is_some() && self.corner_simple
    }
}

/// Every simple is nonzero at exactly one object and simple over its corner.
pub fn check_simples_support(s: &DirectedStratification) -> Result<Vec<SimpleSupport>> {
    let a = s.algebra();
    let d = a.decomposition()?;
    let mut out = Vec::new();
    for (c, simple) in simples(a)?.into_iter().enumerate() {
        let dims: Vec<usize> = s.idempotents().iter().map(|e| simple.idempotent_image(e).dim()).collect();
        let support: Vec<usize> = (0..dims.len()).filter(|&x| dims[x] > 0).collect();
        let object = (support.len() == 1).then(|| support[0]);
        let corner_simple = match object {
            Some(x) => {
                let corner = a.corner(&s.idempotents()[x])?;
                let r = restrict_module(&simple, &corner)?;
                r.radical_subspace()?.is_zero() && hom_space(&r, &r).len() == 1
            }
            None => false,
        };
        out.push(SimpleSupport { class_label: d.class_labels[c].clone(), dims, object, corner_simple });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub objects: BTreeSet<usize>,
    pub entries: Vec<ProjectivityEvidence>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(ProjectivityEvidence::projective)
    }
}

/// Restricts each indecomposable projective to `e_B A e_B` for an ideal `B`.
pub fn check_restriction_preserves_projectives(
    s: &DirectedStratification,
    objs: &BTreeSet<usize>,
) -> Result<RestrictionReport> {
    if !is_ideal(s, objs) {
        let names: Vec<&str> = objs.iter().map(|&x| s.labels()[x].as_str()).collect();
        return Err(Error::NotAnIdeal(names.join(", ")));
    }
    let a = s.algebra();
    let mut entries = Vec::new();
    if !objs.is_empty() {
        let corner = a.corner(&s.idempotent_sum(objs))?;
        let d = a.decomposition()?;
        for (c, p) in projective_modules(a)?.iter().enumerate() {
            let r = restrict_module(&p.module, &corner)?;
            entries.push(projectivity_evidence(&r, format!("P({})", d.class_labels[c]))?);
        }
    }
    Ok(RestrictionReport { objects: objs.clone(), entries })
}

#[derive(Clone, Debug)]
pub struct MinimalCoverEvidence {
    pub object: usize,
    pub restricted_cover: ProjectivityEvidence,
    pub surjective: bool,
    pub kernel_in_radical: bool,
}

impl MinimalCoverEvidence {
    pub fn passed(&self) -> bool {
        self.restricted_cover.projective() && self.surjective && self.kernel_in_radical
    }
}

#[derive(Clone, Debug)]
pub struct CoverTheoremReport {
    pub profile: SupportProfile,
    pub cover_dims: Vec<usize>,
    /// Objects outside `𝒜_M` where the cover is nonzero.
    pub outside_support: Vec<usize>,
    pub minimal: Vec<MinimalCoverEvidence>,
}

impl CoverTheoremReport {
    pub fn passed(&self) -> bool {
        self.outside_support.is_empty() && self.minimal.iter().all(MinimalCoverEvidence::passed)
    }
}

pub fn check_cover_theorem(m: &FModule, s: &DirectedStratification) -> Result<CoverTheoremReport> {
    let a = s.algebra();
    let profile = support_profile(m, s);
    let cover = projective_cover(m)?;
    let cover_dims: Vec<usize> = s.idempotents().iter().map(|e| cover.module.idempotent_image(e).dim()).collect();
    let outside_support = (0..s.len()).filter(|x| cover_dims[*x] > 0 && !profile.closure.contains(x)).collect();
    let mut minimal = Vec::new();
    for &x in &profile.minimal {
        let e = &s.idempotents()[x];
        let corner = a.corner(e)?;
        let p = restrict_module(&cover.module, &corner)?;
        let target = restrict_module(m, &corner)?;
        let map = restrict_map(&cover.map, &cover.module, m, e);
        let kernel = Subspace::kernel(&map);
        minimal.push(MinimalCoverEvidence {
            object: x,
            restricted_cover: projectivity_evidence(&p, s.labels()[x].clone())?,
            surjective: map.rank() == target.dim(),
            kernel_in_radical: kernel.is_subspace_of(&p.radical_subspace()?),
        });
    }
    Ok(CoverTheoremReport { profile, cover_dims, outside_support, minimal })
}

#[derive(Clone, Debug)]
pub struct StageEvidence {
    pub index: usize,
    pub term: ProjectivityEvidence,
    /// Image of the next differential equals the kernel of this one.
    pub exact: bool,
    /// Image of the next differential lies in the radical.
    pub minimal: bool,
}

#[derive(Clone, Debug)]
pub struct RestrictedResolutionReport {
    pub object: usize,
    pub augmentation_surjective: bool,
    pub stages: Vec<StageEvidence>,
    /// Whether the computed resolution over `A` ended (finite) or was cut off.
    pub finite: bool,
}

impl RestrictedResolutionReport {
    pub fn passed(&self) -> bool {
        self.augmentation_surjective && self.stages.iter().all(|s| s.exact && s.minimal && s.term.projective())
    }
}

/// Restricts the minimal resolution of `m` at an `M`-minimal object `x`.
pub fn check_restricted_resolution(
    m: &FModule,
    s: &DirectedStratification,
    x: usize,
    cutoff: usize,
) -> Result<RestrictedResolutionReport> {
    let profile = support_profile(m, s);
    if !profile.minimal.contains(&x) {
        return Err(Error::NotMinimalObject(s.labels().get(x).cloned().unwrap_or_else(|| x.to_string())));
    }
    let a = s.algebra();
    let e = &s.idempotents()[x];
    let corner = a.corner(e)?;
    let r = resolve_to_depth(m, cutoff)?;
    let finite = matches!(r.status, ResolutionStatus::Finite(_));
    let maps: Vec<Matrix> = r
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let target = if i == 0 { &r.module } else { &r.terms[i - 1].module };
            restrict_map(&t.differential, &t.module, target, e)
        })
        .collect();
    let target_dim = restrict_module(m, &corner)?.dim();
    let augmentation_surjective = maps.first().map_or(target_dim == 0, |d| d.rank() == target_dim);
    let mut stages = Vec::new();
    for (i, t) in r.terms.iter().enumerate() {
        let q = restrict_module(&t.module, &corner)?;
        let kernel = Subspace::kernel(&maps[i]);
        let (exact, minimal) = match maps.get(i + 1) {
            Some(next) => {
                let image = Subspace::image(next);
                (image == kernel, image.is_subspace_of(&q.radical_subspace()?))
            }
            // past the computed range only a finite resolution is checkable
            None => (!finite || kernel.is_zero(), true),
        };
        stages.push(StageEvidence { index: i, term: projectivity_evidence(&q, format!("P^{i}"))?, exact, minimal });
    }
    Ok(RestrictedResolutionReport { object: x, augmentation_surjective, stages, finite })
}
