//! Minimal projective resolutions by iterated projective covers.
//!
//! Infinite projective dimension is only claimed with a certificate: either
//! `Ω^i ≅ Ω^j`, or `Ω^i` a direct summand of `Ω^j` for some `0 < i < j`. In
//! the second case `Ω^i` recurs as a summand of `Ω^{i + k(j-i)}` for every `k`
//! (minimal resolutions are additive), so no syzygy ever vanishes.

use std::sync::Arc;

use super::cover::CoverContext;
use super::hom::{is_isomorphic, split_summand, IsoResult, SplitCertificate};
use super::{FModule, ModuleMap};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct ResolutionTerm {
    /// Simple class of each indecomposable summand of `P^i`.
    pub classes: Vec<usize>,
    pub offsets: Vec<usize>,
    pub module: FModule,
    /// `P^i -> P^{i-1}`, or the augmentation `P^0 -> M` for `i = 0`.
    pub differential: Matrix,
    /// `Ω^{i+1}` as a subspace of `P^i`.
    pub kernel: Subspace,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Isomorphism { i: usize, j: usize, map: Matrix },
    SplitSummand { i: usize, j: usize, certificate: SplitCertificate },
}

impl Certificate {
    pub fn indices(&self) -> (usize, usize) {
        match self {
            Certificate::Isomorphism { i, j, .. } | Certificate::SplitSummand { i, j, .. } => (*i, *j),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Isomorphism { .. } => "isomorphism",
            Certificate::SplitSummand { .. } => "split-summand",
        }
    }

    /// Re-checks the certificate against the syzygies.
    pub fn verify(&self, syzygies: &[FModule]) -> bool {
        let (i, j) = self.indices();
        let (Some(x), Some(y)) = (syzygies.get(i), syzygies.get(j)) else {
            return false;
        };
        if x.is_zero() || i == 0 || i >= j {
            return false;
        }
        match self {
            Certificate::Isomorphism { map, .. } => ModuleMap::new(x.clone(), y.clone(), map.clone())
                .map(|m| m.is_isomorphism())
                .unwrap_or(false),
            Certificate::SplitSummand { certificate, .. } => certificate.verify(x, y),
        }
    }
}

#[derive(Clone, Debug)]
pub enum ResolutionStatus {
    /// Projective dimension `d`: `P^d` is the last nonzero term.
    Finite(usize),
    CertifiedInfinite(Certificate),
    /// Stopped after this many stages without a decision.
    Cutoff(usize),
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: FModule,
    pub terms: Vec<ResolutionTerm>,
    /// `Ω^0 = M, Ω^1, ...`; one more than the number of terms.
    pub syzygies: Vec<FModule>,
    pub status: ResolutionStatus,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// Multiplicity of each simple class in each term.
    pub fn term_multiplicities(&self, classes: usize) -> Vec<Vec<usize>> {
        self.terms
            .iter()
            .map(|t| {
                let mut m = vec![0; classes];
                for &c in &t.classes {
                    m[c] += 1;
                }
                m
            })
            .collect()
    }

    /// `P^i`, zero past the end of a finite resolution; `None` if not computed.
    pub fn term_classes(&self, i: usize) -> Option<&[usize]> {
        match self.terms.get(i) {
            Some(t) => Some(&t.classes),
            None if matches!(self.status, ResolutionStatus::Finite(_)) => Some(&[]),
            None => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimResult {
    Finite(usize),
    Infinite,
    Unknown,
}

impl DimResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, DimResult::Finite(_))
    }
}

pub(crate) struct Resolver {
    ctx: CoverContext,
    seed: u64,
}

impl Resolver {
    pub fn new(a: &Arc<Algebra>, seed: u64) -> Result<Self> {
        Ok(Resolver { ctx: CoverContext::new(a)?, seed })
    }

    /// Terms `P^0..P^max_index` at most; `certify` enables the certificate
    /// search (for `j <= max_index`).
    pub fn resolve(&self, m: &FModule, max_index: usize, certify: bool) -> Result<Resolution> {
        if !Arc::ptr_eq(m.algebra(), &self.ctx.algebra) && !m.algebra().same_tables(&self.ctx.algebra) {
            return Err(Error::InvalidModule("module over a different algebra".into()));
        }
        let mut terms: Vec<ResolutionTerm> = Vec::new();
        let mut syzygies = vec![m.clone()];
        if m.is_zero() {
            return Ok(Resolution { module: m.clone(), terms, syzygies, status: ResolutionStatus::Finite(0) });
        }
        for i in 0..=max_index {
            let omega = syzygies.last().expect("nonempty");
            let cover = self.ctx.cover(omega)?;
            let differential = match terms.last() {
                None => cover.map.clone(),
                Some(prev) => prev.kernel.basis_matrix().mul(&cover.map),
            };
            let next = cover.kernel_module()?;
            terms.push(ResolutionTerm {
                classes: cover.classes,
                offsets: cover.offsets,
                module: cover.module,
                differential,
                kernel: cover.kernel,
            });
            syzygies.push(next);
            let j = i + 1;
            if syzygies[j].is_zero() {
                return Ok(Resolution { module: m.clone(), terms, syzygies, status: ResolutionStatus::Finite(i) });
            }
            if certify && j <= max_index {
                if let Some(cert) = self.find_certificate(&syzygies, j) {
                    return Ok(Resolution {
                        module: m.clone(),
                        terms,
                        syzygies,
                        status: ResolutionStatus::CertifiedInfinite(cert),
                    });
                }
            }
        }
        let n = terms.len();
        Ok(Resolution { module: m.clone(), terms, syzygies, status: ResolutionStatus::Cutoff(n) })
    }

    fn find_certificate(&self, syzygies: &[FModule], j: usize) -> Option<Certificate> {
        let y = &syzygies[j];
        for i in 1..j {
            if let IsoResult::Yes(map) = is_isomorphic(&syzygies[i], y, self.seed) {
                return Some(Certificate::Isomorphism { i, j, map });
            }
        }
        for i in 1..j {
            if let Some(certificate) = split_summand(&syzygies[i], y, self.seed) {
                return Some(Certificate::SplitSummand { i, j, certificate });
            }
        }
        None
    }
}

/// Minimal resolution with the certificate search, up to `Ω^cutoff`.
pub fn minimal_resolution(m: &FModule, cutoff: usize, seed: u64) -> Result<Resolution> {
    if cutoff == 0 {
        return Err(Error::Invariant("cutoff must be at least 1".into()));
    }
    Resolver::new(m.algebra(), seed)?.resolve(m, cutoff, true)
}

/// Terms `P^0..P^depth` without certificate search.
pub fn resolve_to_depth(m: &FModule, depth: usize) -> Result<Resolution> {
    Resolver::new(m.algebra(), 0)?.resolve(m, depth, false)
}

pub fn proj_dim(m: &FModule, cutoff: usize, seed: u64) -> Result<DimResult> {
    Ok(status_dim(&minimal_resolution(m, cutoff, seed)?.status))
}

pub(crate) fn status_dim(s: &ResolutionStatus) -> DimResult {
    match s {
        ResolutionStatus::Finite(d) => DimResult::Finite(*d),
        ResolutionStatus::CertifiedInfinite(_) => DimResult::Infinite,
        ResolutionStatus::Cutoff(_) => DimResult::Unknown,
    }
}

/// Maximum projective dimension of the simples.
pub fn gl_dim(a: &Arc<Algebra>, cutoff: usize, seed: u64) -> Result<DimResult> {
    let resolver = Resolver::new(a, seed)?;
    let mut best = 0;
    let mut unknown = false;
    for s in super::simples(a)? {
        match status_dim(&resolver.resolve(&s, cutoff, true)?.status) {
            DimResult::Finite(d) => best = best.max(d),
            DimResult::Infinite => return Ok(DimResult::Infinite),
            DimResult::Unknown => unknown = true,
        }
    }
    Ok(if unknown { DimResult::Unknown } else { DimResult::Finite(best) })
}

/// Exactness, surjectivity of the augmentation, minimality and the
/// certificate, all rechecked from the stored matrices.
pub fn verify_resolution(r: &Resolution) -> Result<()> {
    let fail = |msg: String| Err(Error::Invariant(msg));
    let Some(first) = r.terms.first() else {
        return if r.module.is_zero() { Ok(()) } else { fail("empty resolution of a nonzero module".into()) };
    };
    if first.differential.rank() != r.module.dim() {
        return fail("augmentation is not surjective".into());
    }
    for (i, t) in r.terms.iter().enumerate() {
        let target = if i == 0 { &r.module } else { &r.terms[i - 1].module };
        if ModuleMap::new(t.module.clone(), target.clone(), t.differential.clone()).is_err() {
            return fail(format!("differential {i} is not a homomorphism"));
        }
        let kernel = Subspace::kernel(&t.differential);
        if kernel != t.kernel {
            return fail(format!("stored kernel at stage {i} is wrong"));
        }
        match r.terms.get(i + 1) {
            Some(next) => {
                if Subspace::image(&next.differential) != kernel {
                    return fail(format!("not exact at P^{i}"));
                }
                if !kernel.is_subspace_of(&t.module.radical_subspace()?) {
                    return fail(format!("image of d_{} is not in the radical", i + 1));
                }
            }
            None => {
                if matches!(r.status, ResolutionStatus::Finite(_)) && !kernel.is_zero() {
                    return fail("last differential of a finite resolution is not injective".into());
                }
            }
        }
    }
    if let ResolutionStatus::CertifiedInfinite(c) = &r.status {
        if !c.verify(&r.syzygies) {
            return fail("periodicity certificate does not verify".into());
        }
    }
    Ok(())
}
