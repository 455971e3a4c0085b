//! Finite EI-categories and their category algebras.

use std::collections::HashMap;

use super::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, zero_vector, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug)]
pub struct EiCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `(g, f) -> g∘f` on composable pairs.
    composition: HashMap<(usize, usize), usize>,
}

/// Order of the stabilizer of a morphism under post-composition with
/// automorphisms of its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerEntry {
    pub morphism: String,
    pub order: usize,
    pub invertible: bool,
}

impl EiCategory {
    /// `identities` pairs an identity morphism label with its object;
    /// `compositions` lists `(g, f, g∘f)`. Products with identities are implied.
    pub fn new(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        compositions: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let mut objs: Vec<String> = Vec::new();
        for o in objects {
            if objs.iter().any(|x| x == o) {
                return Err(Error::InvalidCategory(format!("duplicate object {o}")));
            }
            objs.push(o.to_string());
        }
        let obj = |l: &str| objs.iter().position(|x| x == l).ok_or_else(|| Error::UnknownLabel(l.to_string()));
        let mut mors: Vec<Morphism> = Vec::new();
        let mut identity_of: Vec<Option<usize>> = vec![None; objs.len()];
        for (label, at) in identities {
            let x = obj(at)?;
            if identity_of[x].is_some() {
                return Err(Error::InvalidCategory(format!("object {at} has two identities")));
            }
            identity_of[x] = Some(mors.len());
            mors.push(Morphism { label: label.to_string(), source: x, target: x });
        }
        for (label, s, t) in morphisms {
            mors.push(Morphism { label: label.to_string(), source: obj(s)?, target: obj(t)? });
        }
        for (i, m) in mors.iter().enumerate() {
            if mors[..i].iter().any(|x| x.label == m.label) {
                return Err(Error::InvalidCategory(format!("duplicate morphism {}", m.label)));
            }
        }
        let identities = identity_of
            .iter()
            .enumerate()
            .map(|(x, id)| id.ok_or_else(|| Error::InvalidCategory(format!("object {} has no identity", objs[x]))))
            .collect::<Result<Vec<_>>>()?;
        let mor = |l: &str| mors.iter().position(|m| m.label == l).ok_or_else(|| Error::UnknownLabel(l.to_string()));
        let mut composition = HashMap::new();
        for (g, f, h) in compositions {
            let (gi, fi, hi) = (mor(g)?, mor(f)?, mor(h)?);
            if mors[fi].target != mors[gi].source {
                return Err(Error::InvalidCategory(format!("{g}∘{f} is not composable")));
            }
            if mors[hi].source != mors[fi].source || mors[hi].target != mors[gi].target {
                return Err(Error::InvalidCategory(format!("{g}∘{f} = {h} has the wrong source or target")));
            }
            if composition.insert((gi, fi), hi).is_some_and(|old| old != hi) {
                return Err(Error::InvalidCategory(format!("{g}∘{f} defined twice")));
            }
        }
        for (i, m) in mors.iter().enumerate() {
            for (key, expected) in [((identities[m.target], i), i), ((i, identities[m.source]), i)] {
                match composition.insert(key, expected) {
                    Some(h) if h != expected => {
                        return Err(Error::InvalidCategory(format!(
                            "composition with an identity does not fix {}",
                            m.label
                        )))
                    }
                    _ => {}
                }
            }
        }
        let c = EiCategory { objects: objs, morphisms: mors, identities, composition };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let n = self.morphisms.len();
        for g in 0..n {
            for f in 0..n {
                if self.morphisms[f].target == self.morphisms[g].source && self.compose(g, f).is_none() {
                    return Err(Error::InvalidCategory(format!(
                        "composition {}∘{} is missing",
                        self.morphisms[g].label, self.morphisms[f].label
                    )));
                }
            }
        }
        for h in 0..n {
            for g in 0..n {
                let Some(hg) = self.compose(h, g) else { continue };
                for f in 0..n {
                    let Some(gf) = self.compose(g, f) else { continue };
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Err(Error::NotAssociative(
                            self.morphisms[h].label.clone(),
                            self.morphisms[g].label.clone(),
                            self.morphisms[f].label.clone(),
                        ));
                    }
                }
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if m.source == m.target && self.inverse(f).is_none() {
                return Err(Error::NotEI(m.label.clone()));
            }
        }
        for x in 0..self.objects.len() {
            for y in 0..self.objects.len() {
                if x == y {
                    continue;
                }
                for f in self.hom(x, y) {
                    for g in self.hom(y, x) {
                        if self.compose(g, f) == Some(self.identities[x]) && self.compose(f, g) == Some(self.identities[y]) {
                            return Err(Error::NotSkeletal(self.objects[x].clone(), self.objects[y].clone()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn morphism_index(&self, label: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.label == label)
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == x && self.morphisms[f].target == y)
            .collect()
    }

    fn inverse(&self, f: usize) -> Option<usize> {
        let x = self.morphisms[f].source;
        let id = self.identities[x];
        self.hom(x, x)
            .into_iter()
            .find(|&g| self.compose(g, f) == Some(id) && self.compose(f, g) == Some(id))
    }

    /// Objects ordered so that morphisms only go from earlier to later objects
    /// (ties keep declaration order).
    pub fn object_order(&self) -> Vec<usize> {
        let n = self.objects.len();
        let mut indeg = vec![0usize; n];
        for m in &self.morphisms {
            if m.source != m.target {
                indeg[m.target] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while order.len() < n {
            let x = (0..n).find(|&x| !done[x] && indeg[x] == 0).expect("skeletal EI categories are acyclic");
            done[x] = true;
            order.push(x);
            for m in &self.morphisms {
                if m.source == x && m.target != x {
                    indeg[m.target] -= 1;
                }
            }
        }
        order
    }

    /// Category algebra: basis = morphisms, `g·f = g∘f` when composable, else 0.
    pub fn algebra(&self, field: Field) -> Result<Algebra> {
        let n = self.morphisms.len();
        let mut table = Vec::with_capacity(n * n);
        for g in 0..n {
            for f in 0..n {
                table.push(match self.compose(g, f) {
                    Some(h) => vec![(h, field.one())],
                    None => vec![],
                });
            }
        }
        let order = self.object_order();
        let vertices: Vec<_> = order.iter().map(|&x| unit_vector(field, n, self.identities[x])).collect();
        let mut unit = zero_vector(field, n);
        for &id in &self.identities {
            unit[id] = field.one();
        }
        let labels = self.morphisms.iter().map(|m| m.label.clone()).collect();
        let vlabels = order.iter().map(|&x| self.objects[x].clone()).collect();
        Algebra::new(field, labels, table, unit, vertices, vlabels)
    }

    /// Stabilizer orders `|{θ ∈ Aut(y) : θα = α}|` for every non-endomorphism
    /// `α: x -> y`; the category algebra is standardly stratified exactly when
    /// all of them are invertible in the field.
    pub fn stabilizers(&self, field: Field) -> Vec<StabilizerEntry> {
        let p = field.characteristic() as usize;
        self.morphisms
            .iter()
            .enumerate()
            .filter(|(_, m)| m.source != m.target)
            .map(|(a, m)| {
                let order = self.hom(m.target, m.target).into_iter().filter(|&t| self.compose(t, a) == Some(a)).count();
                StabilizerEntry { morphism: m.label.clone(), order, invertible: p == 0 || order % p != 0 }
            })
            .collect()
    }

    pub fn stabilizer_criterion(&self, field: Field) -> bool {
        self.stabilizers(field).iter().all(|s| s.invertible)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn char2_category() -> EiCategory {
        crate::fixtures::ei_char2()
    }

    pub(crate) fn remark_category() -> EiCategory {
        crate::fixtures::ei_remark()
    }

    #[test]
    fn trivial_group_gives_the_field() {
        let c = EiCategory::new(&["o"], &[], &[("1", "o")], &[]).unwrap();
        assert_eq!(c.algebra(Field::RATIONALS).unwrap().dim(), 1);
    }

    #[test]
    fn fixture_dimensions() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(char2_category().algebra(f2).unwrap().dim(), 5);
        assert_eq!(remark_category().algebra(f2).unwrap().dim(), 4);
        assert_eq!(char2_category().algebra(f2).unwrap().vertex_labels(), ["y", "x"]);
    }

    #[test]
    fn non_invertible_endomorphism() {
        let r = EiCategory::new(&["o"], &[("z", "o", "o")], &[("1", "o")], &[("z", "z", "z")]);
        assert!(matches!(r, Err(Error::NotEI(l)) if l == "z"));
    }

    #[test]
    fn isomorphic_objects_are_rejected() {
        let r = EiCategory::new(
            &["a", "b"],
            &[("f", "a", "b"), ("g", "b", "a")],
            &[("1a", "a"), ("1b", "b")],
            &[("g", "f", "1a"), ("f", "g", "1b")],
        );
        assert!(matches!(r, Err(Error::NotSkeletal(..))));
    }

    #[test]
    fn missing_composition() {
        let r = EiCategory::new(&["o"], &[("g", "o", "o")], &[("1", "o")], &[]);
        assert!(matches!(r, Err(Error::InvalidCategory(_))));
    }

    #[test]
    fn stabilizer_orders() {
        let c = remark_category();
        let s = c.stabilizers(Field::prime(2).unwrap());
        assert_eq!(s, vec![StabilizerEntry { morphism: "alpha".into(), order: 2, invertible: false }]);
        assert!(c.stabilizer_criterion(Field::prime(3).unwrap()));
    }

    #[test]
    fn ei_radical_matches_structure() {
        // radical = non-endomorphisms + radicals of the automorphism group algebras
        let f2 = Field::prime(2).unwrap();
        let a = char2_category().algebra(f2).unwrap();
        let rad = a.radical().unwrap();
        assert_eq!(rad.dim(), 3);
        assert!(rad.contains(&a.element(&[(1, "alpha")]).unwrap()));
        assert!(rad.contains(&a.element(&[(1, "1_y"), (1, "g")]).unwrap()));
        assert!(rad.contains(&a.element(&[(1, "1_x"), (1, "h")]).unwrap()));
    }
}
