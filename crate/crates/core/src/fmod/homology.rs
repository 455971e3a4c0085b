//! Ext and Tor from minimal resolutions.
//!
//! A differential `d: P^{i} -> P^{i-1}` sends the generator of summand `l` to
//! `Σ_k x_lk · gen_k` with `x_lk ∈ A e_{c_k}`. Then `Hom(A e_c, N) = e_c N`
//! and `e_c A ⊗ Y = e_c Y`, and both complexes have blocks `ρ(x_lk)`.

use super::cover::{projective_modules, ProjectiveSummand};
use super::resolution::{resolve_to_depth, Resolution, ResolutionStatus};
use super::FModule;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyResult {
    Dimension(usize),
    /// The resolution was cut off before the needed term.
    Unknown,
}

impl HomologyResult {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            HomologyResult::Dimension(d) => Some(*d),
            HomologyResult::Unknown => None,
        }
    }
}

/// Resolves far enough for degree `n`, or reports that the cutoff is too low.
fn resolve_for(m: &FModule, n: usize, cutoff: usize) -> Result<Option<Resolution>> {
    let r = resolve_to_depth(m, (n + 1).min(cutoff))?;
    let enough = matches!(r.status, ResolutionStatus::Finite(_)) || r.terms.len() >= n + 2;
    Ok(enough.then_some(r))
}

/// `x_lk` for the differential out of `P^i`, `i >= 1`; empty past the end.
fn coefficients(r: &Resolution, i: usize, proj: &[ProjectiveSummand]) -> Vec<Vec<Vector>> {
    let (Some(src), Some(tgt)) = (r.terms.get(i), i.checked_sub(1).and_then(|j| r.terms.get(j))) else {
        return Vec::new();
    };
    let a = r.module.algebra();
    src.classes
        .iter()
        .enumerate()
        .map(|(l, &cl)| {
            let p = &proj[cl];
            let mut g = vec![a.field().zero(); src.module.dim()];
            for (t, x) in p.generator.iter().enumerate() {
                g[src.offsets[l] + t] = x.clone();
            }
            let image = src.differential.mul_vec(&g);
            tgt.classes
                .iter()
                .enumerate()
                .map(|(k, &ck)| {
                    let q = &proj[ck];
                    let mut x = a.zero();
                    for (t, b) in q.basis.iter().enumerate() {
                        let c = &image[tgt.offsets[k] + t];
                        if !c.is_zero() {
                            crate::linalg::axpy(&mut x, c, b);
                        }
                    }
                    x
                })
                .collect()
        })
        .collect()
}

fn classes_of(r: &Resolution, i: usize) -> &[usize] {
    r.terms.get(i).map(|t| t.classes.as_slice()).unwrap_or(&[])
}

/// Block-diagonal basis of `⊕ e_c N` inside `N^k`.
fn summand_basis(n: &FModule, classes: &[usize], proj: &[ProjectiveSummand]) -> Matrix {
    let f = n.algebra().field();
    let d = n.dim();
    let mut cols = Vec::new();
    for (k, &c) in classes.iter().enumerate() {
        for v in n.idempotent_image(&proj[c].idempotent).basis() {
            let mut col = vec![f.zero(); d * classes.len()];
            col[k * d..(k + 1) * d].clone_from_slice(v);
            cols.push(col);
        }
    }
    Matrix::from_columns(f, d * classes.len(), &cols)
}

/// Matrix with block `(row_of(l,k), col_of(l,k))` equal to `ρ_N(x_lk)`.
fn block_matrix(n: &FModule, x: &[Vec<Vector>], rows: usize, cols: usize, transpose: bool) -> Matrix {
    let d = n.dim();
    let mut big = Matrix::zeros(n.algebra().field(), rows * d, cols * d);
    for (l, row) in x.iter().enumerate() {
        for (k, xlk) in row.iter().enumerate() {
            let (bi, bj) = if transpose { (k, l) } else { (l, k) };
            let b = n.act(xlk);
            for r in 0..d {
                for c in 0..d {
                    big[(bi * d + r, bj * d + c)] = b[(r, c)].clone();
                }
            }
        }
    }
    big
}

fn restricted_rank(map: &Matrix, domain: &Matrix) -> usize {
    if map.rows() == 0 || domain.cols() == 0 {
        0
    } else {
        map.mul(domain).rank()
    }
}

/// `dim Ext^n_A(M, N)`.
pub fn ext_n(m: &FModule, n: &FModule, degree: usize, cutoff: usize) -> Result<HomologyResult> {
    if !m.algebra().same_tables(n.algebra()) {
        return Err(Error::InvalidModule("modules over different algebras".into()));
    }
    let Some(r) = resolve_for(m, degree, cutoff.max(1))? else {
        return Ok(HomologyResult::Unknown);
    };
    let proj = projective_modules(m.algebra())?;
    // δ^i : Hom(P^i, N) -> Hom(P^{i+1}, N)
    let delta_rank = |i: usize| {
        let (ci, cj) = (classes_of(&r, i), classes_of(&r, i + 1));
        if ci.is_empty() || cj.is_empty() {
            return 0;
        }
        let x = coefficients(&r, i + 1, &proj);
        let map = block_matrix(n, &x, cj.len(), ci.len(), false);
        restricted_rank(&map, &summand_basis(n, ci, &proj))
    };
    let cn = summand_basis(n, classes_of(&r, degree), &proj).cols();
    let before = if degree == 0 { 0 } else { delta_rank(degree - 1) };
    Ok(HomologyResult::Dimension(cn - delta_rank(degree) - before))
}

/// `dim Tor_n^B(X, Y)` for a right `B`-module `X`, given as a left module
/// over `B^op`, and a left `B`-module `Y`.
pub fn tor_n(x: &FModule, y: &FModule, degree: usize, cutoff: usize) -> Result<HomologyResult> {
    if !x.algebra().same_tables(&y.algebra().opposite()) {
        return Err(Error::InvalidModule("first argument must be over the opposite algebra".into()));
    }
    let Some(r) = resolve_for(x, degree, cutoff.max(1))? else {
        return Ok(HomologyResult::Unknown);
    };
    let proj = projective_modules(x.algebra())?;
    // ∂_i : P^i ⊗ Y -> P^{i-1} ⊗ Y
    let boundary_rank = |i: usize| {
        if i == 0 {
            return 0;
        }
        let (ci, cj) = (classes_of(&r, i), classes_of(&r, i - 1));
        if ci.is_empty() || cj.is_empty() {
            return 0;
        }
        let xs = coefficients(&r, i, &proj);
        let map = block_matrix(y, &xs, cj.len(), ci.len(), true);
        restricted_rank(&map, &summand_basis(y, ci, &proj))
    };
    let cn = summand_basis(y, classes_of(&r, degree), &proj).cols();
    Ok(HomologyResult::Dimension(cn - boundary_rank(degree) - boundary_rank(degree + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::truncated_polynomial;
    use crate::algebra::PathAlgebraPresentation;
    use crate::fmod::{hom_space, simples};
    use crate::linalg::Field;
    use crate::quiver::Quiver;
    use std::sync::Arc;

    fn a2() -> Arc<crate::algebra::Algebra> {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        PathAlgebraPresentation::new(Field::RATIONALS, q, vec![]).build().unwrap().algebra().clone()
    }

    #[test]
    fn ext_between_simples_of_an_arrow() {
        let a = a2();
        let s = simples(&a).unwrap();
        assert_eq!(ext_n(&s[0], &s[1], 1, 5).unwrap(), HomologyResult::Dimension(1));
        assert_eq!(ext_n(&s[1], &s[0], 1, 5).unwrap(), HomologyResult::Dimension(0));
        assert_eq!(ext_n(&s[0], &s[1], 2, 5).unwrap(), HomologyResult::Dimension(0));
    }

    #[test]
    fn ext_zero_is_hom() {
        let a = Arc::new(truncated_polynomial(Field::prime(3).unwrap(), 3));
        let m = FModule::regular(&a);
        let s = simples(&a).unwrap().remove(0);
        for (p, q) in [(&m, &s), (&s, &m), (&s, &s), (&m, &m)] {
            assert_eq!(ext_n(p, q, 0, 3).unwrap().dimension(), Some(hom_space(p, q).len()));
        }
        assert_eq!(ext_n(&m, &s, 1, 3).unwrap(), HomologyResult::Dimension(0));
    }

    #[test]
    fn periodic_ext_and_tor_over_dual_numbers() {
        let a = Arc::new(truncated_polynomial(Field::prime(2).unwrap(), 2));
        let s = simples(&a).unwrap().remove(0);
        for n in 0..4 {
            assert_eq!(ext_n(&s, &s, n, 6).unwrap(), HomologyResult::Dimension(1));
        }
        assert_eq!(ext_n(&s, &s, 7, 3).unwrap(), HomologyResult::Unknown);
        let op = Arc::new(a.opposite());
        let so = s.with_algebra(&op).unwrap();
        assert_eq!(tor_n(&so, &s, 3, 6).unwrap(), HomologyResult::Dimension(1));
        let free = FModule::regular(&op);
        assert_eq!(tor_n(&free, &s, 0, 6).unwrap(), HomologyResult::Dimension(1));
        assert_eq!(tor_n(&free, &s, 2, 6).unwrap(), HomologyResult::Dimension(0));
    }

    #[test]
    fn tor_zero_of_regular_is_algebra() {
        let a = a2();
        let op = Arc::new(a.opposite());
        let r = tor_n(&FModule::regular(&op), &FModule::regular(&a), 0, 3).unwrap();
        assert_eq!(r, HomologyResult::Dimension(a.dim()));
    }
}
