//! Path algebras `kQ/I`. The ideal is computed in the truncations
//! `kQ/rad^{N+1}` for growing `N`; once every path of length `N` lies in the
//! truncated ideal we know `rad^N ⊆ I` and the surviving normal forms are a
//! basis of `kQ/I`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{to_sparse, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, zero_vector, Field, Scalar, Subspace, Vector};
use crate::quiver::{Path, Quiver};

/// A linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Self {
        Relation { terms }
    }

    /// From written paths like `eps2*eps1` with integer coefficients.
    pub fn from_written(quiver: &Quiver, field: Field, terms: &[(i64, &str)]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(c, p)| Ok((field.from_i64(*c), quiver.parse_path(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Relation { terms })
    }

    pub fn monomial(quiver: &Quiver, field: Field, path: &str) -> Result<Self> {
        Self::from_written(quiver, field, &[(1, path)])
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn format(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let label = quiver.path_label(p);
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&label);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct PathAlgebraPresentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    /// Largest truncation degree tried; `None` uses the default.
    pub cap: Option<usize>,
}

impl PathAlgebraPresentation {
    pub fn new(field: Field, quiver: Quiver, relations: Vec<Relation>) -> Self {
        PathAlgebraPresentation { field, quiver, relations, cap: None }
    }

    pub fn default_cap(&self) -> usize {
        let l = self.relations.iter().map(Relation::max_len).max().unwrap_or(0);
        2 * l * self.quiver.num_vertices() + 8
    }

    pub fn validate(&self) -> Result<()> {
        for r in &self.relations {
            let Some((_, first)) = r.terms.first() else {
                return Err(Error::InvalidRelation("empty relation".into()));
            };
            for (c, p) in &r.terms {
                if c.field() != self.field {
                    return Err(Error::FieldMismatch);
                }
                if !p.is_parallel(first) {
                    return Err(Error::InvalidRelation(format!(
                        "{} is not parallel to {}",
                        self.quiver.path_label(p),
                        self.quiver.path_label(first)
                    )));
                }
                if p.len() < 2 {
                    return Err(Error::InvalidRelation(format!(
                        "{} has length {} but relations need length at least 2",
                        self.quiver.path_label(p),
                        p.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<PathAlgebra> {
        PathAlgebra::new(self)
    }
}

#[derive(Debug, Clone)]
pub struct PathAlgebra {
    presentation: PathAlgebraPresentation,
    algebra: Arc<Algebra>,
    basis_paths: Vec<Path>,
    nilpotency_degree: usize,
    columns: HashMap<Path, usize>,
    ideal: Subspace,
    basis_columns: Vec<usize>,
}

/// Truncated path space `kQ/rad^{N+1}` with columns ordered longest first.
struct Truncation {
    n: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl Truncation {
    fn new(q: &Quiver, n: usize) -> Self {
        let mut paths = q.enumerate_paths(n);
        let keys: HashMap<Path, String> = paths.iter().map(|p| (p.clone(), q.path_label(p))).collect();
        // longest and lexicographically largest first, so those become pivots
        paths.sort_by(|a, b| (b.len(), &keys[b]).cmp(&(a.len(), &keys[a])));
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Truncation { n, paths, index }
    }

    fn vector(&self, field: Field, terms: &[(Scalar, Path)]) -> Vector {
        let mut v = zero_vector(field, self.paths.len());
        for (c, p) in terms {
            if p.len() <= self.n {
                let i = self.index[p];
                v[i] = &v[i] + c;
            }
        }
        v
    }

    /// `arrow * v` (left) or `v * arrow` (right), dropping overlong terms.
    fn times_arrow(&self, field: Field, v: &[Scalar], arrow: &Path, left: bool) -> Vector {
        let mut out = zero_vector(field, self.paths.len());
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.paths[i];
            let prod = if left { arrow.compose(p) } else { p.compose(arrow) };
            if let Some(prod) = prod {
                if prod.len() <= self.n {
                    let j = self.index[&prod];
                    out[j] = &out[j] + c;
                }
            }
        }
        out
    }
}

impl PathAlgebra {
    pub fn new(p: &PathAlgebraPresentation) -> Result<Self> {
        p.validate()?;
        let q = &p.quiver;
        let f = p.field;
        let cap = p.cap.unwrap_or_else(|| p.default_cap());
        let arrows: Vec<Path> = (0..q.arrows().len()).map(|a| q.arrow_path(a)).collect();
        for n in 1..=cap {
            let t = Truncation::new(q, n);
            let ideal = truncated_ideal(&t, f, &p.relations, &arrows);
            let top_paths = t.paths.iter().take_while(|x| x.len() == n).count();
            let stable = (0..top_paths).all(|i| ideal.contains(&unit_vector(f, t.paths.len(), i)));
            if stable {
                return Self::assemble(p, t, ideal, n);
            }
        }
        Err(Error::NonAdmissible { cap })
    }

    fn assemble(p: &PathAlgebraPresentation, t: Truncation, ideal: Subspace, n: usize) -> Result<Self> {
        let q = &p.quiver;
        let f = p.field;
        let natural: HashMap<Path, usize> =
            q.enumerate_paths(n).into_iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut basis_columns = ideal.complement_indices();
        basis_columns.sort_by_key(|&c| natural[&t.paths[c]]);
        let basis_paths: Vec<Path> = basis_columns.iter().map(|&c| t.paths[c].clone()).collect();
        let labels: Vec<String> = basis_paths.iter().map(|x| q.path_label(x)).collect();
        let dim = basis_paths.len();

        let normal_form = |path: Option<Path>| -> Vector {
            match path {
                Some(x) if x.len() < n => {
                    let r = ideal.reduce(&unit_vector(f, t.paths.len(), t.index[&x]));
                    basis_columns.iter().map(|&c| r[c].clone()).collect()
                }
                _ => zero_vector(f, dim),
            }
        };
        let mut table = Vec::with_capacity(dim * dim);
        for x in &basis_paths {
            for y in &basis_paths {
                table.push(to_sparse(&normal_form(x.compose(y))));
            }
        }
        let vertex_idempotents: Vec<Vector> =
            (0..q.num_vertices()).map(|v| normal_form(Some(Path::trivial(v)))).collect();
        let mut unit = zero_vector(f, dim);
        for e in &vertex_idempotents {
            crate::linalg::axpy(&mut unit, &f.one(), e);
        }
        let algebra = Algebra::new(f, labels, table, unit, vertex_idempotents, q.vertices().to_vec())?;
        Ok(PathAlgebra {
            presentation: p.clone(),
            algebra: Arc::new(algebra),
            basis_paths,
            nilpotency_degree: n,
            columns: t.index,
            ideal,
            basis_columns,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn presentation(&self) -> &PathAlgebraPresentation {
        &self.presentation
    }

    pub fn basis_paths(&self) -> &[Path] {
        &self.basis_paths
    }

    /// Least `L` with every path of length `L` in the ideal.
    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    /// Normal form of a path in the algebra basis.
    pub fn reduce_path(&self, path: &Path) -> Vector {
        let f = self.presentation.field;
        if path.len() >= self.nilpotency_degree {
            return zero_vector(f, self.algebra.dim());
        }
        let r = self.ideal.reduce(&unit_vector(f, self.columns.len(), self.columns[path]));
        self.basis_columns.iter().map(|&c| r[c].clone()).collect()
    }

    /// Element for a written path such as `delta2*delta1` or `e_5`.
    pub fn path_element(&self, text: &str) -> Result<Vector> {
        Ok(self.reduce_path(&self.quiver().parse_path(text)?))
    }

    pub fn combination(&self, terms: &[(Scalar, Path)]) -> Vector {
        let mut v = zero_vector(self.presentation.field, self.algebra.dim());
        for (c, p) in terms {
            crate::linalg::axpy(&mut v, c, &self.reduce_path(p));
        }
        v
    }
}

fn truncated_ideal(t: &Truncation, f: Field, relations: &[Relation], arrows: &[Path]) -> Subspace {
    let mut ideal = Subspace::zero(f, t.paths.len());
    let mut frontier: Vec<Vector> = Vec::new();
    for r in relations {
        let v = t.vector(f, &r.terms);
        if ideal.extend([v.clone()]) {
            frontier.push(v);
        }
    }
    while let Some(v) = frontier.pop() {
        for a in arrows {
            for left in [true, false] {
                let w = t.times_arrow(f, &v, a, left);
                if ideal.extend([w.clone()]) {
                    frontier.push(w);
                }
            }
        }
    }
    ideal
}
