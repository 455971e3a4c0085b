//! The line-oriented input format.
//!
//! ```text
//! field F2
//! quiver
//!   vertex 1
//!   arrow a : 1 -> 2
//! relations
//!   eps2*eps1 - delta2*delta1
//! module M
//!   dim 1 = 2
//!   act a = [[1, 0]]
//! analyze resolve M
//! ```
//!
//! Blocks run until the next block keyword; indentation is cosmetic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use stratakit_core::algebra::{Algebra, EiCategory, PathAlgebra, PathAlgebraPresentation, Relation};
use stratakit_core::fmod::FModule;
use stratakit_core::linalg::{Field, Matrix, Scalar};
use stratakit_core::quiver::{Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

fn diag(line: usize, column: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic { line, column, message: message.into() }
}

#[derive(Clone, Debug)]
pub struct Term {
    pub coefficient: BigRational,
    /// Labels as written, so the last one is traversed first.
    pub factors: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct RelationLine {
    pub line: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub line: usize,
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug)]
pub enum Structure {
    Quiver { vertices: Vec<String>, arrows: Vec<Edge>, relations: Vec<RelationLine> },
    Category { objects: Vec<String>, morphisms: Vec<Edge>, identities: Vec<(String, String)>, compositions: Vec<[String; 3]> },
}

#[derive(Clone, Debug)]
pub struct Action {
    pub line: usize,
    pub label: String,
    pub rows: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug)]
pub struct ModuleDecl {
    pub line: usize,
    pub name: String,
    pub dims: BTreeMap<String, usize>,
    pub actions: Vec<Action>,
}

#[derive(Clone, Debug)]
pub struct Document {
    pub field: Field,
    pub structure: Structure,
    pub modules: Vec<ModuleDecl>,
    /// `analyze` lines, each a command with its arguments.
    pub analyses: Vec<Vec<String>>,
}

/// Objects, morphisms, identities and compositions as collected so far.
type CategoryParts = (Vec<String>, Vec<Edge>, Vec<(String, String)>, Vec<[String; 3]>);

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Top,
    Quiver,
    Relations,
    Category,
    Module,
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn is_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| !c.is_whitespace() && !"+-*:=[],#/".contains(c))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    let r = match body.split_once('/') {
        Some((n, d)) if digits(n) && digits(d) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            BigRational::new(n.parse().ok()?, d)
        }
        None if digits(body) => BigRational::from_integer(body.parse().ok()?),
        _ => return None,
    };
    Some(if neg { -r } else { r })
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `2*b*a - 1/2*c` into terms; `col` is the column of the first character.
fn parse_relation(text: &str, line: usize, col: usize) -> Result<Vec<Term>, Diagnostic> {
    let mut pieces: Vec<(usize, bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut start = col;
    for (i, c) in text.chars().enumerate() {
        if (c == '+' || c == '-') && !current.trim().is_empty() && !current.trim_end().ends_with('*') {
            pieces.push((start, negative, std::mem::take(&mut current)));
            negative = c == '-';
            start = col + i + 1;
        } else if (c == '+' || c == '-') && current.trim().is_empty() {
            negative ^= c == '-';
            start = col + i + 1;
        } else {
            current.push(c);
        }
    }
    pieces.push((start, negative, current));
    let mut terms = Vec::new();
    for (c, neg, body) in pieces {
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(diag(line, c, "empty term"));
        }
        let mut coefficient = BigRational::one();
        let mut factors = Vec::new();
        for f in body.split('*') {
            if let Some(r) = parse_rational(f) {
                if !factors.is_empty() {
                    return Err(diag(line, c, format!("coefficient {f} must precede the path")));
                }
                coefficient *= r;
            } else if is_label(f) {
                factors.push(f.to_string());
            } else {
                return Err(diag(line, c, format!("bad factor '{f}'")));
            }
        }
        if factors.is_empty() {
            return Err(diag(line, c, "term has no path"));
        }
        if neg {
            coefficient = -coefficient;
        }
        terms.push(Term { coefficient, factors });
    }
    Ok(terms)
}

/// `[[1, 0], [1/2, 1]]`; `[]` has no rows.
fn parse_matrix(text: &str, line: usize, col: usize) -> Result<Vec<Vec<BigRational>>, Diagnostic> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| diag(line, col, "matrix must be written [[..], ..]"))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    for row in inner.split("],") {
        let row = row.strip_prefix('[').map(|r| r.strip_suffix(']').unwrap_or(r));
        let Some(row) = row else {
            return Err(diag(line, col, "each matrix row must be bracketed"));
        };
        if row.is_empty() {
            rows.push(Vec::new());
            continue;
        }
        let entries = row
            .split(',')
            .map(|e| parse_rational(e).ok_or_else(|| diag(line, col, format!("bad matrix entry '{e}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(entries);
    }
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(diag(line, col, "matrix rows have different lengths"));
    }
    Ok(rows)
}

pub fn parse_field(s: &str) -> Option<Field> {
    match s {
        "Q" => Some(Field::RATIONALS),
        _ => s.strip_prefix('F').and_then(|p| p.parse::<u64>().ok()).and_then(|p| Field::prime(p).ok()),
    }
}

struct Parser {
    diagnostics: Vec<Diagnostic>,
    field: Option<Field>,
    field_seen: bool,
    quiver: Option<(Vec<String>, Vec<Edge>)>,
    relations: Vec<RelationLine>,
    relations_line: Option<usize>,
    category: Option<CategoryParts>,
    modules: Vec<ModuleDecl>,
    analyses: Vec<Vec<String>>,
}

impl Parser {
    fn error(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.diagnostics.push(diag(line, column, message));
    }

    fn line(&mut self, block: Block, n: usize, raw: &str) -> Block {
        let text = raw.split('#').next().unwrap_or("");
        let toks = tokens(text);
        let Some(&(col, head)) = toks.first() else { return block };
        let arity = |k: usize| toks.len() == k;
        match head {
            "field" => {
                self.field_seen = true;
                match toks.get(1).and_then(|t| parse_field(t.1)) {
                    Some(f) if arity(2) => self.field = Some(f),
                    _ => self.error(n, col, "expected 'field Q' or 'field F<p>' with p prime"),
                }
                return Block::Top;
            }
            "quiver" | "eicategory" => {
                if self.quiver.is_some() || self.category.is_some() {
                    self.error(n, col, "only one quiver or eicategory block is allowed");
                }
                if head == "quiver" {
                    self.quiver = Some((Vec::new(), Vec::new()));
                    return Block::Quiver;
                }
                self.category = Some(Default::default());
                return Block::Category;
            }
            "relations" => {
                self.relations_line = Some(n);
                return Block::Relations;
            }
            "module" => {
                match toks.get(1) {
                    Some(&(_, name)) if arity(2) && is_label(name) => {
                        if self.modules.iter().any(|m| m.name == name) {
                            self.error(n, col, format!("module {name} defined twice"));
                        }
                        self.modules.push(ModuleDecl { line: n, name: name.into(), dims: BTreeMap::new(), actions: Vec::new() });
                    }
                    _ => self.error(n, col, "expected 'module <name>'"),
                }
                return Block::Module;
            }
            "analyze" => {
                if toks.len() < 2 {
                    self.error(n, col, "expected 'analyze <command> [args]'");
                } else {
                    self.analyses.push(toks[1..].iter().map(|t| t.1.to_string()).collect());
                }
                return Block::Top;
            }
            _ => {}
        }
        let words: Vec<&str> = toks.iter().map(|t| t.1).collect();
        match block {
            Block::Top => self.error(n, col, format!("unexpected '{head}' outside a block")),
            Block::Quiver => {
                let (vertices, arrows) = self.quiver.as_mut().expect("in quiver block");
                match words.as_slice() {
                    ["vertex", v] if is_label(v) => vertices.push(v.to_string()),
                    ["arrow", a, ":", s, "->", t] if [a, s, t].iter().all(|x| is_label(x)) => {
                        arrows.push(Edge { line: n, label: a.to_string(), source: s.to_string(), target: t.to_string() })
                    }
                    _ => self.error(n, col, "expected 'vertex <label>' or 'arrow <label> : <v> -> <w>'"),
                }
            }
            Block::Relations => {
                let start = text.find(|c: char| !c.is_whitespace()).unwrap_or(0);
                match parse_relation(text[start..].trim_end(), n, col) {
                    Ok(terms) => self.relations.push(RelationLine { line: n, terms }),
                    Err(d) => self.diagnostics.push(d),
                }
            }
            Block::Category => {
                let (objects, morphisms, identities, compositions) = self.category.as_mut().expect("in category block");
                match words.as_slice() {
                    ["object", x] if is_label(x) => objects.push(x.to_string()),
                    ["mor", f, ":", x, "->", y] if [f, x, y].iter().all(|w| is_label(w)) => {
                        morphisms.push(Edge { line: n, label: f.to_string(), source: x.to_string(), target: y.to_string() })
                    }
                    ["identity", f, "at", x] if is_label(f) && is_label(x) => identities.push((f.to_string(), x.to_string())),
                    ["compose", g, f, "=", h] if [g, f, h].iter().all(|w| is_label(w)) => {
                        compositions.push([g.to_string(), f.to_string(), h.to_string()])
                    }
                    _ => self.error(
                        n,
                        col,
                        "expected 'object <x>', 'mor <f> : <x> -> <y>', 'identity <f> at <x>' or 'compose <g> <f> = <h>'",
                    ),
                }
            }
            Block::Module => {
                let Some(m) = self.modules.last_mut() else { return block };
                match words.as_slice() {
                    ["dim", v, "=", d] if is_label(v) => match d.parse::<usize>() {
                        Ok(d) => {
                            if m.dims.insert(v.to_string(), d).is_some() {
                                self.error(n, col, format!("dimension at {v} given twice"));
                            }
                        }
                        Err(_) => self.error(n, toks[3].0, format!("bad dimension '{d}'")),
                    },
                    ["act", a, "=", ..] if is_label(a) && toks.len() >= 4 => {
                        let c = toks[3].0;
                        let start = text.find('=').expect("has '=' token") + 1;
                        match parse_matrix(&text[start..], n, c) {
                            Ok(rows) => m.actions.push(Action { line: n, label: a.to_string(), rows }),
                            Err(d) => self.diagnostics.push(d),
                        }
                    }
                    _ => self.error(n, col, "expected 'dim <vertex> = <n>' or 'act <label> = <matrix>'"),
                }
            }
        }
        block
    }
}

/// Parses and checks every reference; the algebra itself is built by
/// [`Document::build`].
pub fn parse(text: &str) -> Result<Document, Vec<Diagnostic>> {
    let mut p = Parser {
        diagnostics: Vec::new(),
        field: None,
        field_seen: false,
        quiver: None,
        relations: Vec::new(),
        relations_line: None,
        category: None,
        modules: Vec::new(),
        analyses: Vec::new(),
    };
    let mut block = Block::Top;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        block = p.line(block, i + 1, raw);
        last = i + 1;
    }
    if !p.field_seen {
        p.diagnostics.push(diag(1, 1, "missing 'field' declaration"));
    }
    let field = p.field.unwrap_or(Field::RATIONALS);
    let structure = match (p.quiver.take(), p.category.take()) {
        (Some((vertices, arrows)), None) => {
            Some(Structure::Quiver { vertices, arrows, relations: std::mem::take(&mut p.relations) })
        }
        (None, Some((objects, morphisms, identities, compositions))) => {
            if let Some(l) = p.relations_line {
                p.error(l, 1, "relations only apply to a quiver");
            }
            let s = Structure::Category { objects, morphisms, identities, compositions };
            check_category_lines(&s, &mut p.diagnostics, text);
            Some(s)
        }
        (None, None) => {
            p.diagnostics.push(diag(last.max(1), 1, "expected a quiver or eicategory block"));
            None
        }
        _ => None,
    };
    let mut diagnostics = p.diagnostics;
    if let Some(s) = &structure {
        check_references(s, &p.modules, &mut diagnostics);
    }
    match structure {
        Some(structure) if diagnostics.is_empty() => {
            Ok(Document { field, structure, modules: p.modules, analyses: p.analyses })
        }
        _ => {
            diagnostics.sort_by_key(|d| (d.line, d.column));
            diagnostics.dedup();
            Err(diagnostics)
        }
    }
}

/// Composability of `compose` lines, reported at their own line.
fn check_category_lines(s: &Structure, out: &mut Vec<Diagnostic>, text: &str) {
    let Structure::Category { morphisms, identities, .. } = s else { return };
    let mut ends: HashMap<&str, (&str, &str)> = HashMap::new();
    for (f, x) in identities {
        ends.insert(f, (x, x));
    }
    for m in morphisms {
        ends.insert(&m.label, (&m.source, &m.target));
    }
    for (i, raw) in text.lines().enumerate() {
        let toks = tokens(raw.split('#').next().unwrap_or(""));
        let words: Vec<&str> = toks.iter().map(|t| t.1).collect();
        let ["compose", g, f, "=", h] = words.as_slice() else { continue };
        let col = |k: usize| toks[k].0;
        let mut lookup = |label: &str, k: usize| match ends.get(label) {
            Some(&e) => Some(e),
            None => {
                out.push(diag(i + 1, col(k), format!("unknown morphism {label}")));
                None
            }
        };
        let (Some(ge), Some(fe), Some(he)) = (lookup(g, 1), lookup(f, 2), lookup(h, 4)) else { continue };
        if fe.1 != ge.0 {
            out.push(diag(i + 1, col(1), format!("{g}∘{f} is not composable: {f} ends at {} but {g} starts at {}", fe.1, ge.0)));
        } else if he != (fe.0, ge.1) {
            out.push(diag(i + 1, col(4), format!("{h} is not a morphism {} -> {}", fe.0, ge.1)));
        }
    }
}

fn check_references(s: &Structure, modules: &[ModuleDecl], out: &mut Vec<Diagnostic>) {
    let (points, edges): (&[String], Vec<&Edge>) = match s {
        Structure::Quiver { vertices, arrows, .. } => (vertices, arrows.iter().collect()),
        Structure::Category { objects, morphisms, .. } => (objects, morphisms.iter().collect()),
    };
    for (i, v) in points.iter().enumerate() {
        if points[..i].contains(v) {
            out.push(diag(1, 1, format!("{v} declared twice")));
        }
    }
    let known = |v: &str| points.iter().any(|p| p == v);
    for e in &edges {
        for end in [&e.source, &e.target] {
            if !known(end) {
                out.push(diag(e.line, 1, format!("unknown vertex or object {end}")));
            }
        }
    }
    let mut ends: HashMap<&str, (&str, &str)> = edges.iter().map(|e| (e.label.as_str(), (e.source.as_str(), e.target.as_str()))).collect();
    match s {
        Structure::Quiver { relations, arrows, .. } => {
            for (i, a) in arrows.iter().enumerate() {
                if arrows[..i].iter().any(|b| b.label == a.label) || known(&a.label) {
                    out.push(diag(a.line, 1, format!("label {} is already used", a.label)));
                }
            }
            for r in relations {
                let mut first: Option<(String, String)> = None;
                for t in &r.terms {
                    let mut path: Option<(String, String)> = None;
                    for label in t.factors.iter().rev() {
                        let e = match ends.get(label.as_str()) {
                            Some(&(s, t)) => (s.to_string(), t.to_string()),
                            None => match label.strip_prefix("e_").filter(|v| known(v)) {
                                Some(v) => (v.to_string(), v.to_string()),
                                None => {
                                    out.push(diag(r.line, 1, format!("unknown arrow {label}")));
                                    path = None;
                                    break;
                                }
                            },
                        };
                        path = match path {
                            None => Some(e),
                            Some((s, t)) if t == e.0 => Some((s, e.1)),
                            Some((_, t)) => {
                                out.push(diag(r.line, 1, format!("{label} does not start at {t}, where the path so far ends")));
                                None
                            }
                        };
                        if path.is_none() {
                            break;
                        }
                    }
                    let Some(p) = path else { break };
                    let arrows_only = t.factors.iter().filter(|f| ends.contains_key(f.as_str())).count();
                    if arrows_only < 2 {
                        out.push(diag(r.line, 1, format!("{} has length {arrows_only}; relations need length at least 2", t.factors.join("*"))));
                    }
                    match &first {
                        None => first = Some(p),
                        Some(f) if *f != p => out.push(diag(r.line, 1, "terms are not parallel paths")),
                        _ => {}
                    }
                }
            }
        }
        Structure::Category { identities, .. } => {
            for (f, x) in identities {
                if !known(x) {
                    out.push(diag(1, 1, format!("identity {f} at unknown object {x}")));
                }
                ends.insert(f, (x, x));
            }
        }
    }
    for m in modules {
        for v in m.dims.keys() {
            if !known(v) {
                out.push(diag(m.line, 1, format!("module {}: unknown vertex {v}", m.name)));
            }
        }
        let dim = |v: &str| m.dims.get(v).copied().unwrap_or(0);
        for a in &m.actions {
            let Some(&(s, t)) = ends.get(a.label.as_str()) else {
                out.push(diag(a.line, 1, format!("unknown arrow or morphism {}", a.label)));
                continue;
            };
            let cols = a.rows.first().map_or(0, Vec::len);
            let rows_ok = a.rows.len() == dim(t);
            let cols_ok = cols == dim(s) || (a.rows.is_empty() && dim(t) == 0);
            if !rows_ok || !cols_ok {
                out.push(diag(
                    a.line,
                    1,
                    format!("act {} must be {}x{} ({} -> {}), got {}x{}", a.label, dim(t), dim(s), s, t, a.rows.len(), cols),
                ));
            }
        }
    }
}

fn print_matrix(rows: &[Vec<BigRational>]) -> String {
    let rows: Vec<String> =
        rows.iter().map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

pub fn print_terms(terms: &[Term]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let neg = t.coefficient.is_negative();
        if k > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let mag = t.coefficient.abs();
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push('*');
        }
        out.push_str(&t.factors.join("*"));
    }
    out
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        match &self.structure {
            Structure::Quiver { vertices, arrows, relations } => {
                writeln!(f, "quiver")?;
                for v in vertices {
                    writeln!(f, "  vertex {v}")?;
                }
                for a in arrows {
                    writeln!(f, "  arrow {} : {} -> {}", a.label, a.source, a.target)?;
                }
                if !relations.is_empty() {
                    writeln!(f, "relations")?;
                    for r in relations {
                        writeln!(f, "  {}", print_terms(&r.terms))?;
                    }
                }
            }
            Structure::Category { objects, morphisms, identities, compositions } => {
                writeln!(f, "eicategory")?;
                for x in objects {
                    writeln!(f, "  object {x}")?;
                }
                for (i, x) in identities {
                    writeln!(f, "  identity {i} at {x}")?;
                }
                for m in morphisms {
                    writeln!(f, "  mor {} : {} -> {}", m.label, m.source, m.target)?;
                }
                for [g, h, k] in compositions {
                    writeln!(f, "  compose {g} {h} = {k}")?;
                }
            }
        }
        for m in &self.modules {
            writeln!(f, "module {}", m.name)?;
            for (v, d) in &m.dims {
                writeln!(f, "  dim {v} = {d}")?;
            }
            for a in &m.actions {
                writeln!(f, "  act {} = {}", a.label, print_matrix(&a.rows))?;
            }
        }
        for a in &self.analyses {
            writeln!(f, "analyze {}", a.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Presentation {
    Path(PathAlgebra),
    Category(EiCategory),
}

/// A document with its algebra and modules constructed.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: Arc<Algebra>,
    pub presentation: Presentation,
    pub modules: Vec<(String, FModule)>,
}

fn scalar(f: Field, r: &BigRational, line: usize) -> Result<Scalar, Diagnostic> {
    f.from_ratio(r.numer(), r.denom())
        .ok_or_else(|| diag(line, 1, format!("{} is undefined in {f}", format_rational(r))))
}

impl Document {
    /// Constructs everything over `field`, or the declared field.
    pub fn build(&self, field: Option<Field>) -> Result<Built, Vec<Diagnostic>> {
        let f = field.unwrap_or(self.field);
        let core = |line: usize| move |e: stratakit_core::Error| vec![diag(line, 1, e.to_string())];
        let (algebra, presentation) = match &self.structure {
            Structure::Quiver { vertices, arrows, relations } => {
                let mut q = Quiver::new();
                for v in vertices {
                    q.add_vertex(v.clone()).map_err(core(1))?;
                }
                for a in arrows {
                    q.add_arrow(a.label.clone(), &a.source, &a.target).map_err(core(a.line))?;
                }
                let mut rels = Vec::new();
                for r in relations {
                    let mut terms = Vec::new();
                    for t in &r.terms {
                        let p: Path = q.parse_path(&t.factors.join("*")).map_err(core(r.line))?;
                        terms.push((scalar(f, &t.coefficient, r.line).map_err(|d| vec![d])?, p));
                    }
                    rels.push(Relation::new(terms));
                }
                let pa = PathAlgebraPresentation::new(f, q, rels).build().map_err(core(relations.first().map_or(1, |r| r.line)))?;
                (pa.algebra().clone(), Presentation::Path(pa))
            }
            Structure::Category { objects, morphisms, identities, compositions } => {
                let objs: Vec<&str> = objects.iter().map(String::as_str).collect();
                let mors: Vec<(&str, &str, &str)> =
                    morphisms.iter().map(|m| (m.label.as_str(), m.source.as_str(), m.target.as_str())).collect();
                let ids: Vec<(&str, &str)> = identities.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let comps: Vec<(&str, &str, &str)> =
                    compositions.iter().map(|[g, h, k]| (g.as_str(), h.as_str(), k.as_str())).collect();
                let c = EiCategory::new(&objs, &mors, &ids, &comps).map_err(core(1))?;
                let a = Arc::new(c.algebra(f).map_err(core(1))?);
                (a, Presentation::Category(c))
            }
        };
        let mut modules = Vec::new();
        for m in &self.modules {
            modules.push((m.name.clone(), self.build_module(m, &algebra, &presentation)?));
        }
        Ok(Built { algebra, presentation, modules })
    }

    fn build_module(&self, m: &ModuleDecl, a: &Arc<Algebra>, p: &Presentation) -> Result<FModule, Vec<Diagnostic>> {
        let f = a.field();
        let vlabels = a.vertex_labels();
        let mut offsets = HashMap::new();
        let mut total = 0;
        for v in vlabels {
            offsets.insert(v.as_str(), total);
            total += m.dims.get(v).copied().unwrap_or(0);
        }
        let dim = |v: &str| m.dims.get(v).copied().unwrap_or(0);
        let mut given: HashMap<&str, Matrix> = HashMap::new();
        for act in &m.actions {
            let cols = act.rows.first().map_or(0, Vec::len);
            let mut rows = Vec::new();
            for r in &act.rows {
                rows.push(r.iter().map(|x| scalar(f, x, act.line)).collect::<Result<Vec<_>, _>>().map_err(|d| vec![d])?);
            }
            if given.insert(&act.label, Matrix::from_rows(f, cols, rows)).is_some() {
                return Err(vec![diag(act.line, 1, format!("act {} given twice", act.label))]);
            }
        }
        // block matrix of a map `s -> t` inside the whole module
        let place = |block: &Matrix, s: &str, t: &str| {
            let mut out = Matrix::zeros(f, total, total);
            for r in 0..dim(t) {
                for c in 0..dim(s) {
                    out[(offsets[t] + r, offsets[s] + c)] = block[(r, c)].clone();
                }
            }
            out
        };
        let vertex_label = |i: usize| -> String {
            match p {
                Presentation::Path(pa) => pa.quiver().vertices()[i].clone(),
                Presentation::Category(c) => c.objects()[i].clone(),
            }
        };
        let mut action = Vec::with_capacity(a.dim());
        match p {
            Presentation::Path(pa) => {
                let q = pa.quiver();
                for path in pa.basis_paths() {
                    let s = vertex_label(path.source);
                    let mut mat = Matrix::identity(f, dim(&s));
                    for &arrow in &path.arrows {
                        let label = &q.arrows()[arrow].label;
                        let Some(g) = given.get(label.as_str()) else {
                            return Err(vec![diag(m.line, 1, format!("module {}: no action given for arrow {label}", m.name))]);
                        };
                        mat = g.mul(&mat);
                    }
                    action.push(place(&mat, &s, &vertex_label(path.target)));
                }
            }
            Presentation::Category(c) => {
                for (i, mor) in c.morphisms().iter().enumerate() {
                    let (s, t) = (vertex_label(mor.source), vertex_label(mor.target));
                    let block = if c.identity(mor.source) == i {
                        Matrix::identity(f, dim(&s))
                    } else {
                        match given.get(mor.label.as_str()) {
                            Some(g) => g.clone(),
                            None => {
                                return Err(vec![diag(m.line, 1, format!("module {}: no action given for {}", m.name, mor.label))])
                            }
                        }
                    };
                    action.push(place(&block, &s, &t));
                }
            }
        }
        FModule::new(a.clone(), total, action)
            .map_err(|e| vec![diag(m.line, 1, format!("module {} does not satisfy the relations: {e}", m.name))])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "field Q\nquiver\n  vertex 1\n  vertex 2\n  arrow a : 1 -> 2\n";

    #[test]
    fn one_vertex_is_the_field() {
        let d = parse("field F3\nquiver\n  vertex v\n").unwrap();
        let b = d.build(None).unwrap();
        assert_eq!(b.algebra.dim(), 1);
    }

    #[test]
    fn relation_terms() {
        let t = parse_relation("eps2*eps1 - 1/2*delta2*delta1", 3, 3).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[1].coefficient, BigRational::new((-1).into(), 2.into()));
        assert_eq!(t[1].factors, ["delta2", "delta1"]);
        assert_eq!(print_terms(&t), "eps2*eps1 - 1/2*delta2*delta1");
        assert!(parse_relation("a*2", 1, 1).is_err());
        assert_eq!(print_terms(&parse_relation("-a*b + -3*c*d", 1, 1).unwrap()), "-a*b - 3*c*d");
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_matrix("[[1, 0], [1/2, -3]]", 1, 1).unwrap().len(), 2);
        assert!(parse_matrix("[]", 1, 1).unwrap().is_empty());
        assert!(parse_matrix("[[1,2],[3]]", 1, 1).is_err());
        assert!(parse_matrix("[1,2]", 1, 1).is_err());
    }

    #[test]
    fn module_actions_are_checked() {
        let ok = format!("{A2}module M\n  dim 1 = 1\n  dim 2 = 1\n  act a = [[1]]\n");
        let b = parse(&ok).unwrap().build(None).unwrap();
        assert_eq!(b.modules[0].1.dim(), 2);
        let bad = format!("{A2}module M\n  dim 1 = 2\n  dim 2 = 1\n  act a = [[1]]\n");
        let e = parse(&bad).unwrap_err();
        assert_eq!(e[0].line, 9);
    }

    #[test]
    fn non_composable_compose() {
        let text = "field F2\neicategory\n  object x\n  object y\n  identity 1_x at x\n  identity 1_y at y\n  mor a : x -> y\n  compose a a = a\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].line, e[0].column), (8, 11));
        assert!(e[0].message.contains("not composable"));
    }

    #[test]
    fn relations_are_validated() {
        let short = format!("{A2}relations\n  a\n");
        assert!(parse(&short).unwrap_err()[0].message.contains("length"));
        let unknown = format!("{A2}relations\n  b*a\n");
        assert!(parse(&unknown).unwrap_err()[0].message.contains("unknown arrow b"));
        let e = parse("field Q\nquiver\n  vertex 1\n  arrow a : 1 -> 1\n  arrow b : 1 -> 1\nrelations\n  a*a - b\n").unwrap_err();
        assert!(e.iter().any(|d| d.line == 7));
    }

    #[test]
    fn diagnostics_have_positions() {
        let e = parse("field F4\nquiver\n  vertex 1\n  bogus\n").unwrap_err();
        assert_eq!((e[0].line, e[0].column), (1, 1));
        assert_eq!((e[1].line, e[1].column), (4, 3));
    }
}
