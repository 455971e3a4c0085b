//! Socles and the Nakayama permutation test for self-injectivity.

use std::sync::Arc;

use super::cover::projective_modules;
use super::FModule;
use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::{Matrix, Subspace};

/// Elements killed by the radical of the algebra.
pub fn socle(m: &FModule) -> Result<Subspace> {
    let a = m.algebra();
    let f = a.field();
    let rad = a.radical()?;
    if rad.is_zero() || m.dim() == 0 {
        return Ok(Subspace::full(f, m.dim()));
    }
    let mut stacked = Matrix::zeros(f, 0, m.dim());
    for r in rad.basis() {
        stacked = stacked.vstack(&m.act(r));
    }
    Ok(Subspace::kernel(&stacked))
}

/// Every `A e_c` has simple socle and `c ↦ class of the socle` is injective.
pub fn is_self_injective(a: &Arc<Algebra>) -> Result<bool> {
    let proj = projective_modules(a)?;
    let mut seen = vec![false; proj.len()];
    for p in &proj {
        let soc = socle(&p.module)?;
        // split quotient: e_d S_d is one-dimensional, so this counts summands
        let mut class = None;
        let mut count = 0;
        for (d, q) in proj.iter().enumerate() {
            let e = p.module.act(&q.idempotent);
            let k = soc.intersection(&Subspace::image(&e))?.dim();
            if k > 0 {
                class = Some(d);
                count += k;
            }
        }
        match class {
            Some(d) if count == 1 && !seen[d] => seen[d] = true,
            _ => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{cyclic_group_algebra, split_pair, truncated_polynomial};
    use crate::algebra::PathAlgebraPresentation;
    use crate::linalg::Field;
    use crate::quiver::Quiver;

    #[test]
    fn examples() {
        let f2 = Field::prime(2).unwrap();
        assert!(is_self_injective(&Arc::new(split_pair(Field::RATIONALS))).unwrap());
        assert!(is_self_injective(&Arc::new(cyclic_group_algebra(f2, 2))).unwrap());
        assert!(is_self_injective(&Arc::new(truncated_polynomial(Field::RATIONALS, 5))).unwrap());
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let pa = PathAlgebraPresentation::new(Field::RATIONALS, q, vec![]).build().unwrap();
        assert!(!is_self_injective(pa.algebra()).unwrap());
    }

    #[test]
    fn socle_of_regular_truncated() {
        let a = Arc::new(truncated_polynomial(Field::RATIONALS, 4));
        assert_eq!(socle(&FModule::regular(&a)).unwrap().dim(), 1);
    }
}
