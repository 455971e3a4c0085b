//! Finite quivers, their paths, and the reachability structure used to find
//! directed stratifications.
//!
//! Paths compose right to left: the path written `b*a` traverses `a` first.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path; `arrows` are stored in traversal order (first arrow first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `self * other`: first `other`, then `self`. `None` if not composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if other.target != self.source {
            return None;
        }
        let mut arrows = other.arrows.clone();
        arrows.extend(&self.arrows);
        Some(Path { source: other.source, target: self.target, arrows })
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }
}

/// A split of the vertex set with no path from `lower` into `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexBipartition {
    pub lower: BTreeSet<usize>,
    pub upper: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    /// Strongly connected components, sources of the condensed graph first.
    pub classes: Vec<Vec<usize>>,
    /// Acyclic quiver on the classes, parallel arrows collapsed.
    pub dag: Quiver,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.vertex_index(&label).is_some() || self.arrow_index(&label).is_some() {
            return Err(Error::InvalidQuiver(format!("duplicate label {label}")));
        }
        self.vertices.push(label);
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, label: impl Into<String>, source: &str, target: &str) -> Result<usize> {
        let label = label.into();
        if self.vertex_index(&label).is_some() || self.arrow_index(&label).is_some() {
            return Err(Error::InvalidQuiver(format!("duplicate label {label}")));
        }
        let s = self.vertex_index(source).ok_or_else(|| Error::UnknownLabel(source.to_string()))?;
        let t = self.vertex_index(target).ok_or_else(|| Error::UnknownLabel(target.to_string()))?;
        self.arrows.push(Arrow { label, source: s, target: t });
        Ok(self.arrows.len() - 1)
    }

    /// Builds a quiver from labels; convenient for fixtures.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(*v)?;
        }
        for (a, s, t) in arrows {
            q.add_arrow(*a, s, t)?;
        }
        Ok(q)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arrow = &self.arrows[a];
        Path { source: arrow.source, target: arrow.target, arrows: vec![a] }
    }

    /// Parses `b*a`-style notation (right to left); `e_v` is the trivial path.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            if let Some(i) = self.vertex_index(v) {
                return Ok(Path::trivial(i));
            }
        }
        let mut path: Option<Path> = None;
        for label in text.split('*').map(str::trim).rev() {
            let a = self.arrow_index(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            let step = self.arrow_path(a);
            path = Some(match path {
                None => step,
                Some(p) => step
                    .compose(&p)
                    .ok_or_else(|| Error::InvalidRelation(format!("{text} is not a path")))?,
            });
        }
        path.ok_or_else(|| Error::InvalidRelation("empty path".into()))
    }

    /// Written form, e.g. `eps2*eps1`; trivial paths print as `e_<vertex>`.
    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("e_{}", self.vertices[p.source]);
        }
        p.arrows.iter().rev().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
    }

    fn written_labels<'a>(&'a self, p: &Path) -> Vec<&'a str> {
        p.arrows.iter().rev().map(|&a| self.arrows[a].label.as_str()).collect()
    }

    /// All paths of length at most `max_len`: trivial paths in vertex order,
    /// then by length and lexicographically on the written arrow labels.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (a, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a);
                        next.push(Path { source: p.source, target: arrow.target, arrows });
                    }
                }
            }
            next.sort_by(|x, y| self.written_labels(x).cmp(&self.written_labels(y)));
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.num_vertices()];
        for a in &self.arrows {
            succ[a.source].push(a.target);
        }
        succ
    }

    /// `reach[i][j]`: there is a path (possibly trivial) from `i` to `j`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let succ = self.successors();
        let n = self.num_vertices();
        let mut reach = vec![vec![false; n]; n];
        for (s, row) in reach.iter_mut().enumerate() {
            let mut queue = VecDeque::from([s]);
            row[s] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &succ[v] {
                    if !row[w] {
                        row[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        reach
    }

    pub fn condensation(&self) -> Condensation {
        let n = self.num_vertices();
        let reach = self.reachability();
        let mut class_of = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if class_of[v] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&w| reach[v][w] && reach[w][v]).collect();
            for &w in &members {
                class_of[w] = raw.len();
            }
            raw.push(members);
        }
        // Kahn's algorithm, ties broken by the smallest member label.
        let c = raw.len();
        let mut edges = BTreeSet::new();
        for a in &self.arrows {
            let (s, t) = (class_of[a.source], class_of[a.target]);
            if s != t {
                edges.insert((s, t));
            }
        }
        let mut indegree = vec![0usize; c];
        for &(_, t) in &edges {
            indegree[t] += 1;
        }
        let key = |i: usize| raw[i].iter().map(|&v| self.vertices[v].clone()).min().unwrap_or_default();
        let mut ready: Vec<usize> = (0..c).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(c);
        while !ready.is_empty() {
            ready.sort_by_key(|&i| std::cmp::Reverse(key(i)));
            let i = ready.pop().expect("nonempty");
            order.push(i);
            for &(s, t) in &edges {
                if s == i {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        let position: HashMap<usize, usize> = order.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let classes: Vec<Vec<usize>> = order.iter().map(|&i| raw[i].clone()).collect();
        let mut dag = Quiver::new();
        for cls in &classes {
            let name = cls.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join(",");
            dag.vertices.push(format!("{{{name}}}"));
        }
        let mut sorted_edges: Vec<(usize, usize)> =
            edges.iter().map(|&(s, t)| (position[&s], position[&t])).collect();
        sorted_edges.sort();
        for (s, t) in sorted_edges {
            dag.arrows.push(Arrow { label: format!("c{s}_{t}"), source: s, target: t });
        }
        Condensation { classes, dag }
    }

    /// All nontrivial splits `(lower, upper)` of the vertex set with no path
    /// from a lower vertex to an upper vertex, sorted by the upper part.
    pub fn directed_bipartitions(&self) -> Vec<VertexBipartition> {
        let cond = self.condensation();
        let c = cond.classes.len();
        let mut preds = vec![Vec::new(); c];
        for a in cond.dag.arrows() {
            preds[a.target].push(a.source);
        }
        // upper sets are closed under predecessors; classes are topologically
        // ordered, so a class may join only after all its predecessors have
        let mut out = Vec::new();
        let mut chosen = vec![false; c];
        fn recurse(
            i: usize,
            chosen: &mut Vec<bool>,
            preds: &[Vec<usize>],
            classes: &[Vec<usize>],
            out: &mut Vec<VertexBipartition>,
        ) {
            if i == chosen.len() {
                let count = chosen.iter().filter(|&&b| b).count();
                if count == 0 || count == chosen.len() {
                    return;
                }
                let mut upper = BTreeSet::new();
                let mut lower = BTreeSet::new();
                for (k, cls) in classes.iter().enumerate() {
                    let part = if chosen[k] { &mut upper } else { &mut lower };
                    part.extend(cls.iter().copied());
                }
                out.push(VertexBipartition { lower, upper });
                return;
            }
            recurse(i + 1, chosen, preds, classes, out);
            if preds[i].iter().all(|&p| chosen[p]) {
                chosen[i] = true;
                recurse(i + 1, chosen, preds, classes, out);
                chosen[i] = false;
            }
        }
        recurse(0, &mut chosen, &preds, &cond.classes, &mut out);
        out.sort_by(|a, b| {
            let ka: Vec<usize> = a.upper.iter().copied().collect();
            let kb: Vec<usize> = b.upper.iter().copied().collect();
            (ka.len(), ka).cmp(&(kb.len(), kb))
        });
        out
    }

    /// Strongly connected classes ordered so that no path leads from a later
    /// class back to an earlier one.
    pub fn finest_stratification_order(&self) -> Vec<Vec<usize>> {
        self.condensation().classes
    }

    pub fn is_acyclic(&self) -> bool {
        let cond = self.condensation();
        cond.classes.len() == self.num_vertices() && self.arrows.iter().all(|a| a.source != a.target)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for a in &self.arrows {
            writeln!(f, "{} : {} -> {}", a.label, self.vertices[a.source], self.vertices[a.target])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn five_vertex() -> Quiver {
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
        .unwrap()
    }

    fn dfs_count(q: &Quiver, v: usize, remaining: usize) -> usize {
        let mut total = 1;
        if remaining == 0 {
            return total;
        }
        for a in q.arrows() {
            if a.source == v {
                total += dfs_count(q, a.target, remaining - 1);
            }
        }
        total
    }

    #[test]
    fn single_vertex_paths() {
        let q = Quiver::from_labels(&["v"], &[]).unwrap();
        assert_eq!(q.enumerate_paths(3), vec![Path::trivial(0)]);
    }

    #[test]
    fn a2_paths() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let labels: Vec<String> = q.enumerate_paths(2).iter().map(|p| q.path_label(p)).collect();
        assert_eq!(labels, vec!["e_1", "e_2", "a"]);
    }

    #[test]
    fn five_vertex_path_count_matches_dfs() {
        let q = five_vertex();
        let oracle: usize = (0..5).map(|v| dfs_count(&q, v, 3)).sum();
        assert_eq!(q.enumerate_paths(3).len(), oracle);
    }

    #[test]
    fn path_notation_round_trip() {
        let q = five_vertex();
        let p = q.parse_path("eps2*eps1").unwrap();
        assert_eq!((p.source, p.target), (1, 4));
        assert_eq!(q.path_label(&p), "eps2*eps1");
        assert!(q.parse_path("eps1*eps2").is_err());
    }

    #[test]
    fn condensation_cases() {
        let loop_q = Quiver::from_labels(&["v"], &[("x", "v", "v")]).unwrap();
        let c = loop_q.condensation();
        assert_eq!(c.classes, vec![vec![0]]);
        assert!(c.dag.arrows().is_empty());

        let kron = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let c = kron.condensation();
        assert_eq!(c.classes, vec![vec![0], vec![1]]);
        assert_eq!(c.dag.arrows().len(), 1);

        let c = five_vertex().condensation();
        assert_eq!(c.classes, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        let edges: Vec<(usize, usize)> = c.dag.arrows().iter().map(|a| (a.source, a.target)).collect();
        assert_eq!(edges, vec![(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]);
    }

    #[test]
    fn bipartition_cases() {
        let loop_q = Quiver::from_labels(&["v"], &[("x", "v", "v")]).unwrap();
        assert!(loop_q.directed_bipartitions().is_empty());

        let a2 = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let b = a2.directed_bipartitions();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].lower, BTreeSet::from([1]));
        assert_eq!(b[0].upper, BTreeSet::from([0]));

        let b = five_vertex().directed_bipartitions();
        assert!(b.iter().any(|p| p.lower == BTreeSet::from([4]) && p.upper == BTreeSet::from([0, 1, 2, 3])));
    }

    #[test]
    fn finest_orders() {
        let chain = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        assert_eq!(chain.finest_stratification_order(), vec![vec![0], vec![1], vec![2]]);
        let order = five_vertex().finest_stratification_order();
        assert_eq!(order.len(), 5);
        assert_eq!(order[0], vec![0]);
        assert_eq!(order[4], vec![4]);
    }

    #[test]
    fn cycle_is_one_class() {
        let q = Quiver::from_labels(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "a"), ("z", "b", "c")])
            .unwrap();
        let c = q.condensation();
        assert_eq!(c.classes, vec![vec![0, 1], vec![2]]);
        assert!(!q.is_acyclic());
    }
}
