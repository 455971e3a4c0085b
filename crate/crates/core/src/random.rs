//! Seeded random instances: quivers, admissible presentations and modules.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, PathAlgebra, PathAlgebraPresentation, Relation};
use crate::error::Result;
use crate::fmod::{projective_modules, FModule};
use crate::linalg::{Field, Scalar, Subspace, Vector};
use crate::quiver::{Path, Quiver};

fn vertex_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Any quiver on `n` vertices with `arrows` arrows, loops and cycles allowed.
pub fn random_quiver<R: Rng + ?Sized>(rng: &mut R, n: usize, arrows: usize) -> Quiver {
    let mut q = Quiver::new();
    for v in vertex_names(n) {
        q.add_vertex(v).expect("fresh label");
    }
    for k in 0..arrows {
        let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
        q.add_arrow(format!("a{k}"), &(s + 1).to_string(), &(t + 1).to_string()).expect("known vertices");
    }
    q
}

/// Arrows only go from a smaller to a larger vertex.
pub fn random_acyclic_quiver<R: Rng + ?Sized>(rng: &mut R, n: usize, arrows: usize) -> Quiver {
    let mut q = Quiver::new();
    for v in vertex_names(n) {
        q.add_vertex(v).expect("fresh label");
    }
    if n < 2 {
        return q;
    }
    for k in 0..arrows {
        let s = rng.gen_range(0..n - 1);
        let t = rng.gen_range(s + 1..n);
        q.add_arrow(format!("a{k}"), &(s + 1).to_string(), &(t + 1).to_string()).expect("known vertices");
    }
    q
}

fn paths_of_length(q: &Quiver, len: usize) -> Vec<Path> {
    q.enumerate_paths(len).into_iter().filter(|p| p.len() == len).collect()
}

/// Acyclic quiver with a random set of monomial relations of length `>= 2`.
pub fn random_acyclic_presentation<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vertices: usize,
    max_arrows: usize,
) -> PathAlgebraPresentation {
    let n = rng.gen_range(2..=max_vertices);
    let arrows = rng.gen_range(1..=max_arrows);
    let q = random_acyclic_quiver(rng, n, arrows);
    let mut rels = Vec::new();
    for len in 2..n {
        for p in paths_of_length(&q, len) {
            if rng.gen_bool(0.3) {
                rels.push(Relation::new(vec![(field.one(), p)]));
            }
        }
    }
    PathAlgebraPresentation::new(field, q, rels)
}

/// Quiver with at least two strongly connected classes, loops and short
/// cycles inside classes, truncated at a random length, plus extra monomial
/// and commutativity relations. `None` if the algebra exceeds `max_dim`.
pub fn random_stratified_algebra<R: Rng + ?Sized>(rng: &mut R, field: Field, max_dim: usize) -> Result<Option<PathAlgebra>> {
    let n = rng.gen_range(2..=4);
    let mut q = Quiver::new();
    for v in vertex_names(n) {
        q.add_vertex(v)?;
    }
    let mut k = 0;
    let mut arrow = |q: &mut Quiver, s: usize, t: usize| {
        let r = q.add_arrow(format!("a{k}"), &(s + 1).to_string(), &(t + 1).to_string());
        k += 1;
        r
    };
    // a forward spine keeps the condensation nontrivial
    for s in 0..n - 1 {
        if rng.gen_bool(0.7) {
            arrow(&mut q, s, s + 1)?;
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        let s = rng.gen_range(0..n - 1);
        let t = rng.gen_range(s + 1..n);
        arrow(&mut q, s, t)?;
    }
    for v in 0..n {
        if rng.gen_bool(0.3) {
            arrow(&mut q, v, v)?;
        }
    }
    // one backward arrow merges two neighbours into a class, leaving others
    if n >= 3 && rng.gen_bool(0.25) {
        let s = rng.gen_range(1..n - 1);
        arrow(&mut q, s, s - 1)?;
    }
    let truncate = rng.gen_range(2..=4);
    let mut rels: Vec<Relation> = paths_of_length(&q, truncate).into_iter().map(|p| Relation::new(vec![(field.one(), p)])).collect();
    let two = paths_of_length(&q, 2);
    if truncate > 2 {
        for p in &two {
            if rng.gen_bool(0.2) {
                rels.push(Relation::new(vec![(field.one(), p.clone())]));
            }
        }
        let mut shuffled = two.clone();
        shuffled.shuffle(rng);
        'outer: for (i, p) in shuffled.iter().enumerate() {
            for r in &shuffled[i + 1..] {
                if p.is_parallel(r) && rng.gen_bool(0.5) {
                    rels.push(Relation::new(vec![(field.one(), p.clone()), (-field.one(), r.clone())]));
                    break 'outer;
                }
            }
        }
    }
    let pa = PathAlgebraPresentation::new(field, q, rels).build()?;
    Ok((pa.algebra().dim() <= max_dim).then_some(pa))
}

fn random_vector<R: Rng + ?Sized>(rng: &mut R, f: Field, n: usize) -> Vector {
    (0..n).map(|_| f.random(rng)).collect::<Vec<Scalar>>()
}

/// `P / U` for a sum `P` of one or two indecomposable projectives and `U`
/// generated by up to two random vectors.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, a: &Arc<Algebra>) -> Result<FModule> {
    let f = a.field();
    let proj = projective_modules(a)?;
    let mut p = FModule::zero(a);
    for _ in 0..rng.gen_range(1..=2) {
        p = p.direct_sum(&proj[rng.gen_range(0..proj.len())].module)?;
    }
    let gens: Vec<Vector> = (0..rng.gen_range(0..=2)).map(|_| random_vector(rng, f, p.dim())).collect();
    let u = p.generated_submodule(&gens);
    if u.dim() == p.dim() {
        return Ok(p);
    }
    p.quotient(&u)
}

/// Span of `k` random vectors.
pub fn random_subspace<R: Rng + ?Sized>(rng: &mut R, f: Field, ambient: usize, k: usize) -> Subspace {
    let vs: Vec<Vector> = (0..k).map(|_| random_vector(rng, f, ambient)).collect();
    Subspace::span(f, ambient, &vs).expect("matching ambient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stratified_instances_build() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut built = 0;
        for _ in 0..20 {
            if let Some(pa) = random_stratified_algebra(&mut rng, Field::prime(3).unwrap(), 30).unwrap() {
                assert!(pa.quiver().condensation().classes.len() >= 2);
                let m = random_module(&mut rng, pa.algebra()).unwrap();
                assert!(FModule::new(m.algebra().clone(), m.dim(), m.action().to_vec()).is_ok());
                built += 1;
            }
        }
        assert!(built > 10);
    }

    #[test]
    fn acyclic_instances_are_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let p = random_acyclic_presentation(&mut rng, Field::RATIONALS, 6, 8);
            assert!(p.build().unwrap().quiver().is_acyclic());
        }
    }
}
