use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use stratakit_core::algebra::Algebra;
use stratakit_core::fmod::{
    gl_dim, minimal_resolution, projective_modules, simples, Certificate, FModule, Resolution, ResolutionStatus,
};
use stratakit_core::linalg::Field;
use stratakit_core::strata::{
    check_cover_theorem, check_restricted_resolution, check_restriction_preserves_projectives, check_simples_support,
    contravariant_finiteness_obstruction, find_stratifications, findim_bound, minimality, recollement_condition_check,
    standardly_stratified_check, stratifying_ideal_check, CombinedBound, DirectedStratification, SideReport, StratumDim,
    StratumDimReport,
};
use stratakit_core::Error;

use crate::dsl::{self, Built, Diagnostic, Document, Presentation};
use crate::report::{self, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug, Clone)]
#[command(name = "stratakit", version, about = "Directed stratifications of finite-dimensional algebras")]
pub struct Args {
    /// info | stratify | resolve | gldim | findim-bound | verify | run | example
    pub command: String,
    /// Input file (a fixture name for `example`), then the command's arguments.
    pub args: Vec<String>,
    /// Override the declared field: Q or F<p>.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 20)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 4)]
    pub tor_depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Known fin.dim of a stratum, as `label=d`; repeatable.
    #[arg(long, value_name = "OBJ=D")]
    pub oracle: Vec<String>,
    /// Index into the `stratify` list; defaults to the finest stratification.
    #[arg(long)]
    pub stratification: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(Vec<Diagnostic>),
    Core(Error),
}

impl CliError {
    /// 1 for bad input, 2 when the library reports a broken invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Invariant(_)) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(ds) => {
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Out<T> = Result<T, CliError>;

fn usage<T>(m: impl Into<String>) -> Out<T> {
    Err(CliError::Usage(m.into()))
}

pub const FIXTURES: [(&str, &str); 4] = [
    ("ei-char2", include_str!("../fixtures/ei-char2.sk")),
    ("ei-remark", include_str!("../fixtures/ei-remark.sk")),
    ("five-vertex", include_str!("../fixtures/five-vertex.sk")),
    ("acyclic-a3", include_str!("../fixtures/acyclic-a3.sk")),
];

pub fn fixture_source(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|f| f.0 == name).map(|f| f.1)
}

#[derive(Clone, Debug)]
pub struct Options {
    pub field: Option<Field>,
    pub cutoff: usize,
    pub tor_depth: usize,
    pub seed: u64,
    pub oracle: BTreeMap<String, usize>,
    pub stratification: Option<usize>,
}

impl Options {
    fn from_args(a: &Args) -> Out<Self> {
        let field = match &a.field {
            Some(s) => Some(dsl::parse_field(s).ok_or_else(|| CliError::Usage(format!("unknown field {s}; use Q or F<p>")))?),
            None => None,
        };
        let mut oracle = BTreeMap::new();
        for o in &a.oracle {
            let Some((k, v)) = o.split_once('=') else { return usage(format!("--oracle expects obj=d, got {o}")) };
            let v: usize = v.parse().map_err(|_| CliError::Usage(format!("--oracle value {v} is not a number")))?;
            oracle.insert(k.to_string(), v);
        }
        if a.cutoff == 0 {
            return usage("--cutoff must be positive");
        }
        Ok(Options { field, cutoff: a.cutoff, tor_depth: a.tor_depth, seed: a.seed, oracle, stratification: a.stratification })
    }

    fn to_value(&self) -> Value {
        json!({
            "cutoff": self.cutoff,
            "tor_depth": self.tor_depth,
            "oracle": self.oracle,
            "stratification": self.stratification,
        })
    }
}

pub struct Session {
    pub document: Document,
    pub built: Built,
    pub options: Options,
}

impl Session {
    pub fn new(document: Document, options: Options) -> Out<Self> {
        let built = document.build(options.field).map_err(CliError::Input)?;
        Ok(Session { document, built, options })
    }

    fn a(&self) -> &Arc<Algebra> {
        &self.built.algebra
    }

    fn vertex_dims(&self, m: &FModule) -> Vec<usize> {
        self.a().vertex_idempotents().iter().map(|e| m.idempotent_image(e).dim()).collect()
    }

    fn vertices(&self, list: &str) -> Out<Vec<usize>> {
        list.split(',')
            .map(|v| self.a().vertex_index(v).ok_or_else(|| CliError::Usage(format!("unknown vertex {v}"))))
            .collect()
    }

    /// A module name, `regular`, `simple:<label>`, `projective:<label>` or
    /// `quotient:<v,..>` for `A/AeA`.
    pub fn module(&self, target: &str) -> Out<FModule> {
        let a = self.a();
        if let Some((_, m)) = self.built.modules.iter().find(|(n, _)| n == target) {
            return Ok(m.clone());
        }
        if target == "regular" {
            return Ok(FModule::regular(a));
        }
        if let Some(vs) = target.strip_prefix("quotient:") {
            let e = a.vertex_sum(&self.vertices(vs)?);
            return Ok(FModule::regular(a).quotient(&a.two_sided_ideal(&[e]))?);
        }
        let class = |label: &str| -> Out<usize> {
            let d = a.decomposition()?;
            if let Some(c) = d.class_labels.iter().position(|l| l == label) {
                return Ok(c);
            }
            let v = a.vertex_index(label).ok_or_else(|| CliError::Usage(format!("unknown vertex or class {label}")))?;
            let cs: BTreeSet<usize> = d.primitives.iter().filter(|p| p.vertex == v).map(|p| p.class).collect();
            match cs.len() {
                1 => Ok(*cs.iter().next().expect("one class")),
                _ => usage(format!("vertex {label} splits into several classes; name one of {:?}", d.class_labels)),
            }
        };
        if let Some(l) = target.strip_prefix("simple:") {
            return Ok(simples(a)?.swap_remove(class(l)?));
        }
        if let Some(l) = target.strip_prefix("projective:") {
            return Ok(projective_modules(a)?.swap_remove(class(l)?).module);
        }
        usage(format!("unknown module {target}; use a module name, regular, simple:<v>, projective:<v> or quotient:<v,..>"))
    }

    fn stratification(&self) -> Out<DirectedStratification> {
        let mut all = find_stratifications(self.a())?;
        let k = match self.options.stratification {
            Some(k) if k < all.len() => k,
            Some(k) => return usage(format!("stratification {k} does not exist; there are {}", all.len())),
            None => (0..all.len()).max_by_key(|&i| (all[i].len(), std::cmp::Reverse(i))).expect("trivial one exists"),
        };
        Ok(all.swap_remove(k))
    }

    fn object_set(&self, s: &DirectedStratification, list: &str) -> Out<BTreeSet<usize>> {
        if list.is_empty() {
            return Ok(BTreeSet::new());
        }
        list.split(',')
            .map(|l| s.object_index(l).ok_or_else(|| CliError::Usage(format!("unknown object {l}; objects are {:?}", s.labels()))))
            .collect()
    }
}

fn labels_of(s: &DirectedStratification, objs: impl IntoIterator<Item = usize>) -> Vec<String> {
    objs.into_iter().map(|x| s.labels()[x].clone()).collect()
}

fn strat_value(index: usize, s: &DirectedStratification) -> Value {
    let mut homs = Vec::new();
    for i in 0..s.len() {
        for j in 0..s.len() {
            if i != j && s.has_hom(i, j) {
                homs.push(format!("{} -> {}", s.labels()[i], s.labels()[j]));
            }
        }
    }
    json!({ "index": index, "length": s.len(), "objects": s.labels(), "nonzero_homs": homs })
}

fn info(ses: &Session) -> Out<Value> {
    let a = ses.a();
    let rad = a.radical()?;
    let d = a.decomposition()?;
    let gq = a.gabriel_quiver()?;
    let arrows: Vec<String> =
        gq.quiver.arrows().iter().map(|x| format!("{} -> {}", d.class_labels[x.source], d.class_labels[x.target])).collect();
    let m = minimality(a)?;
    Ok(json!({
        "field": a.field().to_string(),
        "dim": a.dim(),
        "vertices": a.vertex_labels(),
        "radical_dim": rad.dim(),
        "loewy_length": a.nilpotency_index(rad),
        "simples": d.class_labels.iter().zip(d.simple_dims()).map(|(l, n)| json!({ "class": l, "dim": n })).collect::<Vec<_>>(),
        "gabriel_quiver": { "vertices": d.class_labels, "arrows": arrows },
        "minimal": m.minimal(),
    }))
}

fn stratify(ses: &Session) -> Out<Value> {
    let a = ses.a();
    let all = find_stratifications(a)?;
    let m = minimality(a)?;
    let verdict = if m.minimal() {
        "minimal: the Gabriel quiver is strongly connected, so only the trivial stratification exists"
    } else {
        "not minimal: the Gabriel quiver has several strongly connected components"
    };
    Ok(json!({
        "stratifications": all.iter().enumerate().map(|(i, s)| strat_value(i, s)).collect::<Vec<_>>(),
        "components": m.components,
        "minimal": m.minimal(),
        "verdict": verdict,
    }))
}

fn resolution_value(ses: &Session, name: &str, r: &Resolution) -> Out<Value> {
    let a = ses.a();
    let d = a.decomposition()?;
    let projectives = projective_modules(a)?;
    let pdims: Vec<Vec<usize>> = projectives.iter().map(|p| ses.vertex_dims(&p.module)).collect();
    let fmt_dims = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let terms: Vec<Value> = r
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let summands: Vec<String> =
                t.classes.iter().map(|&c| format!("P_{}({})", d.class_labels[c], fmt_dims(&pdims[c]))).collect();
            json!({ "index": i, "summands": summands, "dims": ses.vertex_dims(&t.module) })
        })
        .collect();
    let mut pattern: Vec<String> = terms.iter().map(|t| t["summands"].as_array().expect("array").iter().map(|x| x.as_str().expect("string")).collect::<Vec<_>>().join(" + ")).collect();
    // an isomorphism of syzygies makes the tail periodic
    if let ResolutionStatus::CertifiedInfinite(Certificate::Isomorphism { i, j, .. }) = &r.status {
        let period: Vec<String> = pattern[*i..].iter().chain(pattern[*i..].iter()).take(j - i).cloned().collect();
        pattern.extend(period);
        pattern.push("...".into());
    }
    Ok(json!({
        "module": name,
        "vertices": a.vertex_labels(),
        "dims": ses.vertex_dims(&r.module),
        "terms": terms,
        "pattern": pattern.join(", "),
        "status": report::status(&r.status),
    }))
}

fn resolve(ses: &Session, args: &[String]) -> Out<Value> {
    let [target] = args else { return usage("resolve <module|simple:v|projective:v|quotient:v,..|regular>") };
    let m = ses.module(target)?;
    let r = minimal_resolution(&m, ses.options.cutoff, ses.options.seed)?;
    resolution_value(ses, target, &r)
}

fn gldim(ses: &Session) -> Out<Value> {
    let a = ses.a();
    let d = a.decomposition()?;
    let mut per_simple = Vec::new();
    for (c, s) in simples(a)?.iter().enumerate() {
        let r = minimal_resolution(s, ses.options.cutoff, ses.options.seed)?;
        per_simple.push(json!({ "simple": d.class_labels[c], "status": report::status(&r.status) }));
    }
    let g = gl_dim(a, ses.options.cutoff, ses.options.seed)?;
    Ok(json!({ "gldim": report::dim_result(&g), "simples": per_simple }))
}

fn stratum_value(v: &StratumDim) -> Value {
    match v {
        StratumDim::Known { value, source } => json!({ "status": "known", "value": value, "source": format!("{source:?}") }),
        StratumDim::Infinite => json!({ "status": "infinite" }),
        StratumDim::Unknown => json!({ "status": "unknown" }),
    }
}

fn bound_value(r: &StratumDimReport) -> Value {
    let combined = match &r.combined {
        CombinedBound::Known(b) => json!({ "status": "known", "value": b }),
        CombinedBound::UnknownDueTo(ls) => json!({ "status": "unknown", "due_to": ls }),
    };
    json!({
        "strata": r.strata.iter().map(|e| json!({ "object": e.label, "corner_dim": e.corner_dim, "fin_dim": stratum_value(&e.value) })).collect::<Vec<_>>(),
        "bound": combined,
    })
}

fn findim(ses: &Session) -> Out<Value> {
    let s = ses.stratification()?;
    for k in ses.options.oracle.keys() {
        if s.object_index(k).is_none() {
            return usage(format!("--oracle names unknown stratum {k}; strata are {:?}", s.labels()));
        }
    }
    let r = findim_bound(&s, &ses.options.oracle, ses.options.cutoff)?;
    let mut v = bound_value(&r);
    let o = v.as_object_mut().expect("object");
    o.insert("stratification".into(), json!(s.labels()));
    o.insert("formula".into(), json!("fin.dim A <= sum of stratum fin.dims + (number of strata - 1)"));
    o.insert("interpretation".into(), json!("little fin.dim: finitely generated modules"));
    Ok(v)
}

fn side_value(s: &SideReport) -> Value {
    json!({
        "dim_b": s.b_dim,
        "proj_dim": report::dim_result(&s.proj_dim),
        "certificate": s.certificate.as_ref().map(report::certificate),
        "ext_b_b": s.ext.iter().map(report::homology).collect::<Vec<_>>(),
        "simple_summands": s.simple_summands,
        "ext_vanishes": s.ext_vanishes(),
        "proj_dim_finite": s.proj_dim_finite(),
    })
}

fn verify(ses: &Session, args: &[String]) -> Out<Value> {
    let a = ses.a();
    let cutoff = ses.options.cutoff;
    let Some((what, rest)) = args.split_first() else {
        return usage("verify <cover|restriction|stratifying|standard|recollement|obstruction> ...");
    };
    match (what.as_str(), rest) {
        ("cover", [target]) => {
            let m = ses.module(target)?;
            let s = ses.stratification()?;
            let c = check_cover_theorem(&m, &s)?;
            let mut restricted = Vec::new();
            for &x in &c.profile.minimal {
                let r = check_restricted_resolution(&m, &s, x, cutoff)?;
                restricted.push(json!({
                    "object": s.labels()[x],
                    "augmentation_surjective": r.augmentation_surjective,
                    "stages": r.stages.iter().map(|st| json!({
                        "index": st.index, "dim": st.term.dim, "projective": st.term.projective(), "exact": st.exact, "minimal": st.minimal,
                    })).collect::<Vec<_>>(),
                    "finite": r.finite,
                    "passed": r.passed(),
                }));
            }
            let simples: Vec<Value> = check_simples_support(&s)?
                .iter()
                .map(|x| json!({ "simple": x.class_label, "object": x.object.map(|o| s.labels()[o].clone()), "corner_simple": x.corner_simple }))
                .collect();
            Ok(json!({
                "stratification": s.labels(),
                "module": target,
                "dims": c.profile.dims,
                "minimal_objects": labels_of(&s, c.profile.minimal.iter().copied()),
                "support_closure": labels_of(&s, c.profile.closure.iter().copied()),
                "cover_dims": c.cover_dims,
                "cover_outside_closure": labels_of(&s, c.outside_support.iter().copied()),
                "minimal_object_covers": c.minimal.iter().map(|e| json!({
                    "object": s.labels()[e.object],
                    "restricted_cover_projective": e.restricted_cover.projective(),
                    "surjective": e.surjective,
                    "kernel_in_radical": e.kernel_in_radical,
                })).collect::<Vec<_>>(),
                "restricted_resolutions": restricted,
                "simples": simples,
                "passed": c.passed(),
            }))
        }
        ("restriction", [objs]) => {
            let s = ses.stratification()?;
            let set = ses.object_set(&s, objs)?;
            let r = check_restriction_preserves_projectives(&s, &set)?;
            Ok(json!({
                "stratification": s.labels(),
                "ideal": labels_of(&s, r.objects.iter().copied()),
                "restricted_projectives": r.entries.iter().map(|e| json!({
                    "projective": e.label, "dim": e.dim, "cover_dim": e.cover_dim, "kernel_dim": e.kernel_dim, "is_projective": e.projective(),
                })).collect::<Vec<_>>(),
                "passed": r.passed(),
            }))
        }
        ("stratifying", [vs]) => {
            let e = a.vertex_sum(&ses.vertices(vs)?);
            let r = stratifying_ideal_check(a, &e, ses.options.tor_depth)?;
            Ok(json!({
                "e": r.e,
                "f": r.f,
                "ideal_dim": r.ideal_dim,
                "tensor_dim": report::homology(&r.tensor_dim),
                "multiplication_image_dim": r.image_dim,
                "multiplication_iso": r.multiplication_iso(),
                "tor": r.tor.iter().map(report::homology).collect::<Vec<_>>(),
                "tor_vanishes": r.tor_vanishes(),
                "passed": r.passed(),
            }))
        }
        ("standard", []) => {
            let s = ses.stratification()?;
            let ei = match &ses.built.presentation {
                Presentation::Category(c) => Some(c),
                Presentation::Path(_) => None,
            };
            let r = standardly_stratified_check(&s, ei)?;
            Ok(json!({
                "stratification": s.labels(),
                "layers": r.layers.iter().map(|l| json!({
                    "index": l.index,
                    "generators": l.generators,
                    "ideal_dim": l.ideal_dim,
                    "layer_dim": l.layer.dim,
                    "projective_over_quotient": l.layer.projective(),
                })).collect::<Vec<_>>(),
                "stabilizers": r.stabilizers.as_ref().map(|st| st.iter().map(|x| json!({
                    "morphism": x.morphism, "order": x.order, "invertible": x.invertible,
                })).collect::<Vec<_>>()),
                "standard": r.standard(),
                "stabilizer_criterion": r.stabilizer_criterion(),
            }))
        }
        ("recollement", [vs]) => {
            let e = a.vertex_sum(&ses.vertices(vs)?);
            let r = recollement_condition_check(a, &e, cutoff)?;
            Ok(json!({
                "ideal_dim": r.ideal_dim,
                "left_module": side_value(&r.left),
                "right_module": side_value(&r.right),
                "obstructed": r.obstructed(),
            }))
        }
        ("obstruction", [p, q]) => {
            let Presentation::Path(pa) = &ses.built.presentation else {
                return usage("verify obstruction needs a quiver presentation");
            };
            let r = contravariant_finiteness_obstruction(pa, p, q, cutoff)?;
            Ok(json!({
                "p": r.p,
                "q": r.q,
                "rad_p_zero": r.rad_p_zero,
                "q_rad_zero": r.q_rad_zero,
                "proj_dim_aq": report::dim_result(&r.aq_proj_dim),
                "proj_dim_top": report::dim_result(&r.top_proj_dim),
                "top_certificate": r.top_certificate.as_ref().map(report::certificate),
                "present": r.present(),
            }))
        }
        _ => usage(
            "verify cover <module> | restriction <obj,..> | stratifying <v,..> | standard | recollement <v,..> | obstruction <p> <q>",
        ),
    }
}

/// Runs one command line against a loaded session.
pub fn run_command(ses: &Session, cmd: &[String]) -> Out<(String, Value)> {
    let Some((head, rest)) = cmd.split_first() else { return usage("empty command") };
    let value = match (head.as_str(), rest) {
        ("info", []) => info(ses)?,
        ("stratify", []) => stratify(ses)?,
        ("resolve", _) => resolve(ses, rest)?,
        ("gldim", []) => gldim(ses)?,
        ("findim-bound", []) => findim(ses)?,
        ("verify", _) => verify(ses, rest)?,
        _ => return usage(format!("unknown command or arguments: {}", cmd.join(" "))),
    };
    Ok((cmd.join(" "), value))
}

/// End-to-end script for `example <name>` with no command.
fn default_script(name: &str) -> Vec<&'static str> {
    let mut s = vec!["info", "stratify"];
    s.extend(match name {
        "ei-char2" => vec!["resolve B", "gldim", "findim-bound", "verify recollement y", "verify stratifying y", "verify standard"],
        "ei-remark" => vec!["gldim", "verify stratifying y", "verify standard"],
        "five-vertex" => {
            vec!["resolve simple:2", "resolve quotient:5", "findim-bound", "verify obstruction beta alpha", "verify recollement 1,2,3,4", "verify cover quotient:5"]
        }
        _ => vec!["gldim", "findim-bound", "resolve simple:1", "verify standard"],
    });
    s
}

fn split(line: &str) -> Vec<String> {
    line.split_whitespace().map(String::from).collect()
}

pub fn execute(args: &Args) -> Out<Report> {
    let options = Options::from_args(args)?;
    let (document, input, commands): (Document, Value, Vec<Vec<String>>) = match args.command.as_str() {
        "example" => {
            let Some((name, rest)) = args.args.split_first() else {
                return usage(format!("example <{}> [command]", FIXTURES.map(|f| f.0).join("|")));
            };
            let Some(src) = fixture_source(name) else {
                return usage(format!("unknown example {name}; available: {}", FIXTURES.map(|f| f.0).join(", ")));
            };
            let doc = dsl::parse(src).map_err(CliError::Input)?;
            let cmds = if rest.is_empty() { default_script(name).into_iter().map(split).collect() } else { vec![rest.to_vec()] };
            (doc, json!({ "example": name }), cmds)
        }
        cmd => {
            let Some((path, rest)) = args.args.split_first() else { return usage(format!("{cmd} <file> [args]")) };
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            let doc = dsl::parse(&text).map_err(CliError::Input)?;
            let cmds = if cmd == "run" {
                if !rest.is_empty() {
                    return usage("run <file> takes no further arguments");
                }
                if doc.analyses.is_empty() {
                    return usage(format!("{path} has no 'analyze' lines"));
                }
                doc.analyses.clone()
            } else {
                let mut c = vec![cmd.to_string()];
                c.extend(rest.iter().cloned());
                vec![c]
            };
            (doc, json!({ "file": path }), cmds)
        }
    };
    let session = Session::new(document, options)?;
    let mut input = input;
    let o = input.as_object_mut().expect("object");
    o.insert("field".into(), json!(session.a().field().to_string()));
    o.insert("document".into(), json!(session.document.to_string().lines().collect::<Vec<_>>()));
    o.insert("options".into(), session.options.to_value());
    let mut analyses = Vec::new();
    for c in &commands {
        analyses.push(run_command(&session, c)?);
    }
    Ok(Report { input, analyses, seed: session.options.seed })
}
