//! Directed stratifications, supports of modules and the structure checks
//! built on them.
//!
//! Ordering: `e_i A e_j = 0` for `i < j`, so with `e_j A e_i` the paths
//! `i -> j`, every nonzero morphism goes from an earlier object to a later one.

mod bounds;
mod ideal;
mod theorems;

use std::collections::BTreeSet;
use std::sync::Arc;

pub use bounds::{
    contravariant_finiteness_obstruction, findim_bound, gldim_bound, recollement_condition_check, CombinedBound, DimSource,
    ObstructionReport, RecollementReport, SideReport, StratumDim, StratumDimReport, StratumEntry,
};
pub use ideal::{standardly_stratified_check, stratifying_ideal_check, LayerReport, StandardReport, StratifyingIdealReport};
pub use theorems::{
    check_cover_theorem, check_restricted_resolution, check_restriction_preserves_projectives, check_simples_support,
    projectivity_evidence, CoverTheoremReport, MinimalCoverEvidence, ProjectivityEvidence, RestrictedResolutionReport,
    RestrictionReport, SimpleSupport, StageEvidence,
};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::fmod::FModule;
use crate::linalg::{is_zero_vector, Vector};

/// Why a family of idempotents is not a directed stratification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratificationFailure {
    WrongLength { index: usize },
    NotIdempotent { index: usize },
    NotOrthogonal { i: usize, j: usize },
    Incomplete,
    /// `e_i A e_j ≠ 0` with `i < j`; the witness is `e_i b e_j` for a basis element `b`.
    NotDirected { i: usize, j: usize, witness: String },
}

impl std::fmt::Display for StratificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::WrongLength { index } => write!(f, "idempotent {index} has the wrong length"),
            Self::NotIdempotent { index } => write!(f, "e_{index} is not idempotent"),
            Self::NotOrthogonal { i, j } => write!(f, "e_{i} e_{j} != 0"),
            Self::Incomplete => write!(f, "idempotents do not sum to 1"),
            Self::NotDirected { i, j, witness } => write!(f, "e_{i} A e_{j} != 0, witness {witness}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirectedStratification {
    algebra: Arc<Algebra>,
    idempotents: Vec<Vector>,
    labels: Vec<String>,
    /// `hom[i][j]`: `Hom(x_i, x_j) = e_j A e_i` is nonzero.
    hom: Vec<Vec<bool>>,
    /// Transitive closure of `hom`: the morphism sets of the associated
    /// category compose even where products of corner spaces vanish.
    reach: Vec<Vec<bool>>,
}

/// Checks orthogonality, completeness and directedness.
pub fn verify_stratification(
    a: &Arc<Algebra>,
    es: &[Vector],
    labels: &[String],
) -> std::result::Result<DirectedStratification, StratificationFailure> {
    let n = es.len();
    for (index, e) in es.iter().enumerate() {
        if e.len() != a.dim() {
            return Err(StratificationFailure::WrongLength { index });
        }
        if is_zero_vector(e) || !a.is_idempotent(e) {
            return Err(StratificationFailure::NotIdempotent { index });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !is_zero_vector(&a.mul(&es[i], &es[j])) {
                return Err(StratificationFailure::NotOrthogonal { i, j });
            }
        }
    }
    let mut sum = a.zero();
    for e in es {
        crate::linalg::axpy(&mut sum, &a.field().one(), e);
    }
    if &sum != a.unit() {
        return Err(StratificationFailure::Incomplete);
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(b) = a.peirce_witness(&es[i], &es[j]) {
                let w = a.mul3(&es[i], &a.basis_vector(b), &es[j]);
                return Err(StratificationFailure::NotDirected { i, j, witness: a.format_element(&w) });
            }
        }
    }
    let hom: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| a.peirce_witness(&es[j], &es[i]).is_some()).collect()).collect();
    let mut reach = hom.clone();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                reach[i][j] |= reach[i][k] && reach[k][j];
            }
        }
    }
    let labels = if labels.len() == n { labels.to_vec() } else { (1..=n).map(|i| format!("x{i}")).collect() };
    Ok(DirectedStratification { algebra: a.clone(), idempotents: es.to_vec(), labels, hom, reach })
}

impl DirectedStratification {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `Hom(x_i, x_j) ≠ 0`.
    pub fn has_hom(&self, i: usize, j: usize) -> bool {
        self.hom[i][j]
    }

    /// A chain of nonzero corner spaces leads from `x_i` to `x_j`.
    pub fn reaches(&self, i: usize, j: usize) -> bool {
        self.reach[i][j]
    }

    /// The three defining conditions, rechecked from scratch.
    pub fn recheck(&self) -> bool {
        verify_stratification(&self.algebra, &self.idempotents, &self.labels).is_ok()
    }

    pub fn idempotent_sum(&self, objs: &BTreeSet<usize>) -> Vector {
        let mut sum = self.algebra.zero();
        for &x in objs {
            crate::linalg::axpy(&mut sum, &self.algebra.field().one(), &self.idempotents[x]);
        }
        sum
    }
}

/// Sum of all primitive idempotents in the given simple classes.
fn class_sum(a: &Algebra, classes: &BTreeSet<usize>) -> Result<Vector> {
    let d = a.decomposition()?;
    let mut sum = a.zero();
    for p in &d.primitives {
        if classes.contains(&p.class) {
            crate::linalg::axpy(&mut sum, &a.field().one(), &p.element);
        }
    }
    Ok(sum)
}

fn part_label(a: &Algebra, classes: &BTreeSet<usize>) -> Result<String> {
    let d = a.decomposition()?;
    Ok(classes.iter().map(|&c| d.class_labels[c].as_str()).collect::<Vec<_>>().join("+"))
}

/// The trivial stratification, every directed bipartition of the Gabriel
/// quiver and its finest stratification, each verified.
pub fn find_stratifications(a: &Arc<Algebra>) -> Result<Vec<DirectedStratification>> {
    let gq = a.gabriel_quiver()?;
    let mut candidates: Vec<Vec<BTreeSet<usize>>> = vec![vec![(0..gq.quiver.num_vertices()).collect()]];
    for b in gq.quiver.directed_bipartitions() {
        candidates.push(vec![b.upper, b.lower]);
    }
    let finest: Vec<BTreeSet<usize>> =
        gq.quiver.finest_stratification_order().into_iter().map(|c| c.into_iter().collect()).collect();
    if finest.len() > 2 {
        candidates.push(finest);
    }
    let mut out = Vec::new();
    for parts in candidates {
        let es = parts.iter().map(|p| class_sum(a, p)).collect::<Result<Vec<_>>>()?;
        let labels = parts.iter().map(|p| part_label(a, p)).collect::<Result<Vec<_>>>()?;
        let s = verify_stratification(a, &es, &labels)
            .map_err(|e| crate::Error::Invariant(format!("quiver-derived candidate failed: {e}")))?;
        out.push(s);
    }
    Ok(out)
}

/// Strongly connected components of the Gabriel quiver, by class label.
/// The algebra is minimal (no nontrivial directed stratification) exactly
/// when there is a single component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimality {
    pub components: Vec<Vec<String>>,
}

impl Minimality {
    pub fn minimal(&self) -> bool {
        self.components.len() <= 1
    }
}

pub fn minimality(a: &Algebra) -> Result<Minimality> {
    let gq = a.gabriel_quiver()?;
    let labels = &a.decomposition()?.class_labels;
    let components =
        gq.quiver.condensation().classes.iter().map(|c| c.iter().map(|&v| labels[v].clone()).collect()).collect();
    Ok(Minimality { components })
}

#[derive(Clone, Debug)]
pub struct SupportProfile {
    pub dims: Vec<usize>,
    pub minimal: BTreeSet<usize>,
    /// Objects reachable from a minimal object, and the minimal objects
    /// themselves.
    pub closure: BTreeSet<usize>,
}

pub fn support_profile(m: &FModule, s: &DirectedStratification) -> SupportProfile {
    let dims: Vec<usize> = s.idempotents.iter().map(|e| m.idempotent_image(e).dim()).collect();
    let n = s.len();
    let minimal: BTreeSet<usize> =
        (0..n).filter(|&x| dims[x] > 0 && (0..n).all(|y| y == x || !s.reach[y][x] || dims[y] == 0)).collect();
    let closure = (0..n).filter(|&x| minimal.iter().any(|&z| z == x || s.reach[z][x])).collect();
    SupportProfile { dims, minimal, closure }
}

/// Closed under incoming nonzero morphisms.
pub fn is_ideal(s: &DirectedStratification, objs: &BTreeSet<usize>) -> bool {
    objs.iter().all(|&x| (0..s.len()).all(|y| !s.hom[y][x] || objs.contains(&y)))
}

/// All ideals of the associated category, smallest first.
pub fn ideals(s: &DirectedStratification) -> Vec<BTreeSet<usize>> {
    let n = s.len();
    let mut out: Vec<BTreeSet<usize>> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|o| is_ideal(s, o))
        .collect();
    out.sort_by_key(|o| (o.len(), o.iter().copied().collect::<Vec<_>>()));
    out
}
