//! Primitive idempotents refining the vertex idempotents, their isomorphism
//! classes, and the Gabriel quiver.
//!
//! Splitting happens in the semisimple quotient `S = A/rad A`, one vertex corner
//! at a time; idempotents are then lifted to `A` by the Newton iteration
//! `e -> 3e^2 - 2e^3`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Algebra, CornerAlgebra};
use crate::quiver::Quiver;
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, scale_vector, sub_vectors, Field, Poly, Scalar, Subspace, Vector};

const RANDOM_CANDIDATES: usize = 64;
const LIFT_ROUNDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveIdempotent {
    pub element: Vector,
    /// Index of the vertex idempotent this refines.
    pub vertex: usize,
    /// Isomorphism class of `A e`.
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub primitives: Vec<PrimitiveIdempotent>,
    /// One primitive index per class, in class order.
    pub class_representatives: Vec<usize>,
    pub class_labels: Vec<String>,
}

impl Decomposition {
    pub fn class_count(&self) -> usize {
        self.class_representatives.len()
    }

    /// Dimension of the simple module of each class.
    pub fn simple_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.class_count()];
        for p in &self.primitives {
            d[p.class] += 1;
        }
        d
    }

    pub fn representative(&self, class: usize) -> &Vector {
        &self.primitives[self.class_representatives[class]].element
    }

    /// True when every vertex idempotent is already primitive and no two are
    /// isomorphic.
    pub fn is_basic_on_vertices(&self, vertices: usize) -> bool {
        self.primitives.len() == vertices && self.class_count() == vertices
    }
}

pub(super) fn compute(a: &Algebra) -> Result<Decomposition> {
    let rad = a.radical()?.clone();
    // a private Arc copy so the quotient can hold its parent
    let parent = Arc::new(Algebra::new_unchecked(
        a.field(),
        a.labels().to_vec(),
        a.table.clone(),
        a.unit().clone(),
        a.vertex_idempotents().to_vec(),
        a.vertex_labels().to_vec(),
    ));
    let quotient = parent.quotient(&rad)?;
    let s = quotient.algebra().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d3e);

    let mut primitives = Vec::new();
    let mut bar_primitives = Vec::new();
    for (v, u) in a.vertex_idempotents().iter().enumerate() {
        let ubar = quotient.project(u);
        let parts = split_idempotent(&s, &ubar, &mut rng)?;
        let mut rest = u.clone();
        let last = parts.len() - 1;
        for (k, ebar) in parts.iter().enumerate() {
            let e = if k == last {
                rest.clone()
            } else {
                let x = a.mul3(&rest, &quotient.section(ebar), &rest);
                lift_idempotent(a, x)?
            };
            rest = sub_vectors(&rest, &e);
            primitives.push(PrimitiveIdempotent { element: e, vertex: v, class: usize::MAX });
            bar_primitives.push(ebar.clone());
        }
    }

    // e ~ f iff eSf != 0 in the semisimple quotient
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..primitives.len() {
        let class = reps.iter().position(|&r| s.peirce_witness(&bar_primitives[r], &bar_primitives[i]).is_some());
        primitives[i].class = match class {
            Some(c) => c,
            None => {
                reps.push(i);
                reps.len() - 1
            }
        };
    }

    let dims: Vec<usize> = (0..reps.len()).map(|c| primitives.iter().filter(|p| p.class == c).count()).collect();
    let total: usize = dims.iter().map(|d| d * d).sum();
    if total != s.dim() {
        return Err(Error::NotSplit(format!(
            "semisimple quotient has dimension {} but the split blocks account for {}",
            s.dim(),
            total
        )));
    }
    for p in &primitives {
        if !a.is_idempotent(&p.element) {
            return Err(Error::Invariant("lifted idempotent is not idempotent".into()));
        }
    }

    let class_labels = class_labels(a, &primitives, &reps);
    Ok(Decomposition { primitives, class_representatives: reps, class_labels })
}

fn class_labels(a: &Algebra, primitives: &[PrimitiveIdempotent], reps: &[usize]) -> Vec<String> {
    reps.iter()
        .map(|&r| {
            let v = primitives[r].vertex;
            let classes_here: Vec<usize> = {
                let mut c: Vec<usize> = primitives.iter().filter(|p| p.vertex == v).map(|p| p.class).collect();
                c.sort_unstable();
                c.dedup();
                c
            };
            let label = &a.vertex_labels()[v];
            if classes_here.len() == 1 {
                label.clone()
            } else {
                let k = classes_here.iter().position(|&c| c == primitives[r].class).expect("present");
                format!("{label}.{k}")
            }
        })
        .collect()
}

fn lift_idempotent(a: &Algebra, mut x: Vector) -> Result<Vector> {
    let f = a.field();
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    for _ in 0..LIFT_ROUNDS {
        let x2 = a.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = a.mul(&x2, &x);
        x = sub_vectors(&scale_vector(&three, &x2), &scale_vector(&two, &x3));
    }
    Err(Error::Invariant("idempotent lifting did not converge".into()))
}

/// Decomposes an idempotent of a semisimple algebra into primitive orthogonal
/// idempotents.
fn split_idempotent(s: &Arc<Algebra>, e: &[Scalar], rng: &mut ChaCha8Rng) -> Result<Vec<Vector>> {
    let corner = CornerAlgebra::new(s, e)?;
    let b = corner.algebra();
    if b.dim() <= 1 {
        return Ok(vec![e.to_vec()]);
    }
    match find_idempotent(b, rng)? {
        None => Err(Error::NotSplit(format!(
            "no nontrivial idempotent found in a corner of dimension {}",
            b.dim()
        ))),
        Some(fb) => {
            let f = corner.embed(&fb);
            let g = sub_vectors(e, &f);
            let mut out = split_idempotent(s, &f, rng)?;
            out.extend(split_idempotent(s, &g, rng)?);
            Ok(out)
        }
    }
}

/// A nontrivial idempotent of a semisimple algebra, or `None` when the search
/// finds none (e.g. a division algebra, or a non-split simple factor).
pub(crate) fn find_idempotent(b: &Algebra, rng: &mut ChaCha8Rng) -> Result<Option<Vector>> {
    let n = b.dim();
    let field = b.field();
    let mut candidates: Vec<Vector> = (0..n).map(|i| b.basis_vector(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut x = b.basis_vector(i);
            x[j] = field.one();
            candidates.push(x);
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        candidates.push((0..n).map(|_| field.random(rng)).collect());
    }
    for x in candidates {
        if let Some(e) = idempotent_from_element(b, &x, 0)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn idempotent_from_element(b: &Algebra, x: &[Scalar], depth: usize) -> Result<Option<Vector>> {
    let mu = minimal_polynomial(b, x);
    if mu.degree() <= 1 || depth > 4 {
        return Ok(None);
    }
    // mu splits off a coprime factor at the first root, or is a pure power
    if let Some(lambda) = mu.roots().into_iter().next() {
        let lin = Poly::linear(b.field(), &lambda);
        let (mut power, mut rest) = (Poly::constant(b.field(), b.field().one()), mu.clone());
        loop {
            let (q, r) = rest.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            power = power.mul(&lin);
            rest = q;
        }
        if rest.degree() > 0 {
            return Ok(Some(bezout_idempotent(b, x, &power, &rest)));
        }
        // mu = (t - lambda)^m, m >= 2: x - lambda is nilpotent and nonzero
        let mut nil = x.to_vec();
        axpy(&mut nil, &-&lambda, b.unit());
        for i in 0..b.dim() {
            let z = b.mul(&nil, &b.basis_vector(i));
            if !is_nilpotent(b, &z) {
                return idempotent_from_element(b, &z, depth + 1);
            }
        }
        return Err(Error::Invariant("nonzero nilpotent ideal in a semisimple quotient".into()));
    }
    Ok(None)
}

/// `mu = a * c` with coprime factors; `(c * t)(x)` from `s a + t c = 1` is an
/// idempotent projecting onto the part annihilated by `a`.
fn bezout_idempotent(b: &Algebra, x: &[Scalar], a: &Poly, c: &Poly) -> Vector {
    let (_, _, t) = a.ext_gcd(c);
    eval_poly(b, &c.mul(&t), x)
}

fn is_nilpotent(b: &Algebra, z: &[Scalar]) -> bool {
    let mut p = z.to_vec();
    for _ in 0..b.dim() {
        if is_zero_vector(&p) {
            return true;
        }
        p = b.mul(&p, z);
    }
    is_zero_vector(&p)
}

pub(crate) fn eval_poly(b: &Algebra, p: &Poly, x: &[Scalar]) -> Vector {
    let mut acc = b.zero();
    for c in p.coeffs().iter().rev() {
        acc = b.mul(&acc, x);
        axpy(&mut acc, c, b.unit());
    }
    acc
}

pub(crate) fn minimal_polynomial(b: &Algebra, x: &[Scalar]) -> Poly {
    let field: Field = b.field();
    let mut powers: Vec<Vector> = vec![b.unit().clone()];
    let mut span = Subspace::span(field, b.dim(), &powers).expect("dims");
    loop {
        let next = b.mul(powers.last().expect("nonempty"), x);
        if span.contains(&next) {
            let m = crate::linalg::Matrix::from_columns(field, b.dim(), &powers);
            let c = m.solve(&next).expect("in span");
            let mut coeffs: Vec<Scalar> = c.iter().map(|v| -v).collect();
            coeffs.push(field.one());
            return Poly::new(field, coeffs);
        }
        span.extend([next.clone()]);
        powers.push(next);
    }
}

/// Gabriel quiver together with the primitive idempotent attached to each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GabrielQuiver {
    pub quiver: Quiver,
    pub idempotents: Vec<Vector>,
}

impl GabrielQuiver {
    /// Number of arrows from `i` to `j`.
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.quiver.arrows().iter().filter(|a| a.source == i && a.target == j).count()
    }
}

pub(super) fn gabriel_quiver(a: &Algebra) -> Result<GabrielQuiver> {
    let d = a.decomposition()?;
    let rad = a.radical()?;
    let rad2 = a.product_space(rad, rad);
    let reps: Vec<Vector> = (0..d.class_count()).map(|c| d.representative(c).clone()).collect();
    let mut quiver = Quiver::new();
    for l in &d.class_labels {
        quiver.add_vertex(l.clone())?;
    }
    for (i, ei) in reps.iter().enumerate() {
        for (j, ej) in reps.iter().enumerate() {
            let sandwich = |s: &Subspace| {
                let v: Vec<Vector> = s.basis().iter().map(|r| a.mul3(ej, r, ei)).collect();
                a.subspace(&v).dim()
            };
            let m = sandwich(rad) - sandwich(&rad2);
            for k in 0..m {
                let (si, tj) = (&d.class_labels[i], &d.class_labels[j]);
                quiver.add_arrow(format!("a{si}_{tj}_{k}"), si, tj)?;
            }
        }
    }
    Ok(GabrielQuiver { quiver, idempotents: reps })
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cyclic_group_algebra, split_pair, truncated_polynomial};
    use super::*;

    /// Full 2x2 matrix algebra with matrix units e11, e12, e21, e22 and a single vertex.
    fn matrix_algebra(field: Field) -> Algebra {
        let labels = vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()];
        let idx = |i: usize, j: usize| 2 * i + j;
        let mut table = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                let (i, j) = (a / 2, a % 2);
                let (k, l) = (b / 2, b % 2);
                table.push(if j == k { vec![(idx(i, l), field.one())] } else { vec![] });
            }
        }
        let unit = vec![field.one(), field.zero(), field.zero(), field.one()];
        Algebra::new(field, labels, table, unit.clone(), vec![unit], vec!["v".into()]).unwrap()
    }

    #[test]
    fn matrix_algebra_has_two_isomorphic_primitives() {
        for f in [Field::RATIONALS, Field::prime(2).unwrap()] {
            let a = matrix_algebra(f);
            let d = a.decomposition().unwrap();
            assert_eq!(d.primitives.len(), 2);
            assert_eq!(d.class_count(), 1);
            assert_eq!(d.simple_dims(), vec![2]);
        }
    }

    #[test]
    fn group_algebras_split_or_not() {
        let f3 = Field::prime(3).unwrap();
        // F3[Z/2] = F3 x F3
        let d = cyclic_group_algebra(f3, 2).decomposition().unwrap().clone();
        assert_eq!(d.class_count(), 2);
        assert_eq!(d.class_labels, vec!["v.0", "v.1"]);
        // Q[Z/3] = Q x Q(zeta_3) is not split
        let r = cyclic_group_algebra(Field::RATIONALS, 3).decomposition().map(|_| ());
        assert!(matches!(r, Err(Error::NotSplit(_))));
        // F2[Z/2] is local
        assert_eq!(cyclic_group_algebra(Field::prime(2).unwrap(), 2).decomposition().unwrap().class_count(), 1);
    }

    #[test]
    fn local_and_semisimple_gabriel_quivers() {
        let q = truncated_polynomial(Field::RATIONALS, 3).gabriel_quiver().unwrap();
        assert_eq!(q.multiplicity(0, 0), 1);
        assert_eq!(q.quiver.arrows().len(), 1);
        let q = split_pair(Field::RATIONALS).gabriel_quiver().unwrap();
        assert!(q.quiver.arrows().is_empty());
        assert_eq!(q.quiver.vertices(), ["0", "1"]);
    }

    #[test]
    fn minimal_polynomial_of_nilpotent() {
        let a = truncated_polynomial(Field::RATIONALS, 3);
        let x = a.element(&[(1, "x1")]).unwrap();
        assert_eq!(minimal_polynomial(&a, &x).degree(), 3);
    }
}
