//! Named example algebras shipped with the library and the CLI.

use crate::algebra::{EiCategory, PathAlgebraPresentation, Relation};
use crate::error::Result;
use crate::linalg::Field;
use crate::quiver::Quiver;

pub const NAMES: [&str; 4] = ["ei-char2", "ei-remark", "five-vertex", "acyclic-a3"];

/// Objects `y, x`; `g² = 1_y`, `h² = 1_x`, `hα = α = αg`.
pub fn ei_char2() -> EiCategory {
    EiCategory::new(
        &["y", "x"],
        &[("g", "y", "y"), ("h", "x", "x"), ("alpha", "y", "x")],
        &[("1_y", "y"), ("1_x", "x")],
        &[("g", "g", "1_y"), ("h", "h", "1_x"), ("h", "alpha", "alpha"), ("alpha", "g", "alpha")],
    )
    .expect("valid category")
}

/// Trivial `Aut(y)`, `Aut(x) = Z/2` fixing the single arrow `α: y -> x`.
pub fn ei_remark() -> EiCategory {
    EiCategory::new(
        &["y", "x"],
        &[("h", "x", "x"), ("alpha", "y", "x")],
        &[("1_y", "y"), ("1_x", "x")],
        &[("h", "h", "1_x"), ("h", "alpha", "alpha")],
    )
    .expect("valid category")
}

pub fn five_vertex_quiver() -> Quiver {
    Quiver::from_labels(
        &["1", "2", "3", "4", "5"],
        &[
            ("alpha", "1", "2"),
            ("beta", "1", "2"),
            ("gamma", "2", "2"),
            ("delta1", "2", "3"),
            ("eps1", "2", "4"),
            ("delta2", "3", "5"),
            ("eps2", "4", "5"),
            ("rho", "5", "5"),
        ],
    )
    .expect("valid quiver")
}

/// The non-monomial five-vertex example: one commutativity relation and
/// nine monomial ones.
pub fn five_vertex(field: Field) -> Result<PathAlgebraPresentation> {
    let q = five_vertex_quiver();
    let mut rels = Vec::new();
    for m in ["gamma*gamma", "gamma*beta", "eps1*beta", "delta1*beta", "delta1*gamma", "eps1*gamma", "rho*delta2", "rho*eps2", "rho*rho*rho*rho*rho"] {
        rels.push(Relation::monomial(&q, field, m)?);
    }
    rels.push(Relation::from_written(&q, field, &[(1, "eps2*eps1"), (-1, "delta2*delta1")])?);
    Ok(PathAlgebraPresentation::new(field, q, rels))
}

/// `1 -> 2 -> 3` with the composite zero, the smallest acyclic case where
/// gl.dim reaches `n - 1`.
pub fn acyclic_a3(field: Field) -> Result<PathAlgebraPresentation> {
    let q = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")])?;
    let rels = vec![Relation::monomial(&q, field, "b*a")?];
    Ok(PathAlgebraPresentation::new(field, q, rels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_dimensions() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(ei_char2().algebra(f2).unwrap().dim(), 5);
        assert_eq!(ei_remark().algebra(f2).unwrap().dim(), 4);
        assert_eq!(five_vertex(Field::RATIONALS).unwrap().build().unwrap().algebra().dim(), 21);
        assert_eq!(acyclic_a3(Field::RATIONALS).unwrap().build().unwrap().algebra().dim(), 5);
    }
}
