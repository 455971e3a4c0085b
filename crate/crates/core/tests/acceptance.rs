//! One line per acceptance criterion. Exits nonzero only on failures that are
//! not listed as known deviations (see README).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratakit_core::fixtures;
use stratakit_core::fmod::{
    is_isomorphic, is_self_injective, minimal_resolution, proj_dim, projective_cover, resolve_to_depth, simples,
    verify_resolution, Certificate, DimResult, FModule, HomologyResult, Resolution, ResolutionStatus,
};
use stratakit_core::linalg::{Field, Matrix, Subspace};
use stratakit_core::quiver::Quiver;
use stratakit_core::random;
use stratakit_core::strata::*;

#[derive(Default)]
struct Soundness {
    certificates: usize,
    finite: usize,
    violations: Vec<String>,
}

impl Soundness {
    fn record(&mut self, r: &Resolution, ctx: &str) {
        match &r.status {
            ResolutionStatus::CertifiedInfinite(c) => {
                self.certificates += 1;
                if !c.verify(&r.syzygies) || !independent_certificate_check(c, &r.syzygies) {
                    self.violations.push(format!("{ctx}: certificate {:?}", c.indices()));
                }
            }
            ResolutionStatus::Finite(_) => {
                self.finite += 1;
                if verify_resolution(r).is_err() || !rank_exactness(r) {
                    self.violations.push(format!("{ctx}: finite resolution"));
                }
            }
            ResolutionStatus::Cutoff(_) => {}
        }
    }
}

fn intertwines(map: &Matrix, x: &FModule, y: &FModule) -> bool {
    let a = x.algebra();
    (0..a.dim()).all(|i| {
        let b = a.basis_vector(i);
        map.mul(&x.act(&b)) == y.act(&b).mul(map)
    })
}

fn independent_certificate_check(c: &Certificate, syz: &[FModule]) -> bool {
    let (i, j) = c.indices();
    let (x, y) = (&syz[i], &syz[j]);
    if x.dim() == 0 {
        return false;
    }
    match c {
        Certificate::Isomorphism { map, .. } => x.dim() == y.dim() && map.rank() == x.dim() && intertwines(map, x, y),
        Certificate::SplitSummand { certificate, .. } => {
            let (s, r) = (&certificate.section, &certificate.retraction);
            intertwines(s, x, y) && intertwines(r, y, x) && r.mul(s) == Matrix::identity(x.algebra().field(), x.dim())
        }
    }
}

/// Exactness by rank counting alone.
fn rank_exactness(r: &Resolution) -> bool {
    let ranks: Vec<usize> = r.terms.iter().map(|t| t.differential.rank()).collect();
    if ranks.first().copied().unwrap_or(0) != r.module.dim() {
        return false;
    }
    (0..r.terms.len()).all(|i| {
        let next = ranks.get(i + 1).copied().unwrap_or(0);
        ranks[i] + next == r.terms[i].module.dim()
    })
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(checks: &[(&str, bool)], elapsed: Duration, limit: Duration) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let in_time = elapsed < limit;
    let mut detail = format!("{} checks, {:.2?} (limit {:?})", checks.len(), elapsed, limit);
    if !failed.is_empty() {
        detail.push_str(&format!("; failed: {}", failed.join(", ")));
    }
    if !in_time {
        detail.push_str("; over time limit");
    }
    Outcome { pass: failed.is_empty() && in_time, detail }
}

fn criterion_1(sound: &mut Soundness) -> Outcome {
    let t = Instant::now();
    let f2 = Field::prime(2).unwrap();
    let cat = fixtures::ei_char2();
    let a = Arc::new(cat.algebra(f2).unwrap());
    // oracle: identities plus listed morphisms
    let morphism_count = cat.objects().len() + cat.morphisms().iter().filter(|m| !m.label.starts_with("1_")).count();
    let (ey, ex) = (a.vertex_idempotents()[0].clone(), a.vertex_idempotents()[1].clone());
    let j = a.two_sided_ideal(std::slice::from_ref(&ex));
    let b = FModule::regular(&a).quotient(&j).unwrap();
    let dv = |m: &FModule| vec![m.idempotent_image(&ey).dim(), m.idempotent_image(&ex).dim()];
    let p1 = projective_cover(&b).unwrap().module;
    let p2 = FModule::projective_at(&a, &ex).unwrap();
    let r = minimal_resolution(&b, 8, 0).unwrap();
    sound.record(&r, "ei-char2 B");
    let cert_ok = matches!(&r.status, ResolutionStatus::CertifiedInfinite(c) if c.indices() == (1, 2) && c.verify(&r.syzygies));
    let deep = resolve_to_depth(&b, 8).unwrap();
    let yc = a.decomposition().unwrap().primitives.iter().find(|p| p.vertex == 0).unwrap().class;
    let xc = a.decomposition().unwrap().primitives.iter().find(|p| p.vertex == 1).unwrap().class;
    let shape = deep.terms[0].classes == [yc] && deep.terms[1..].iter().all(|t| t.classes == [xc]) && deep.terms.len() == 9;
    let rec = recollement_condition_check(&a, &ey, 6).unwrap();
    let s = verify_stratification(&a, a.vertex_idempotents(), &["y".into(), "x".into()]).unwrap();
    let fb = findim_bound(&s, &BTreeMap::new(), 6).unwrap();
    outcome(
        &[
            ("dim A = 5", a.dim() == 5 && morphism_count == 5),
            ("B dims (2,0)", dv(&b) == [2, 0]),
            ("P1 dims (2,1)", dv(&p1) == [2, 1]),
            ("P2 dims (0,2)", dv(&p2) == [0, 2]),
            ("resolution P1, P2, P2, ...", shape),
            ("CertifiedInfinite(1,2)", cert_ok),
            ("recollement: proj.dim B infinite", rec.left.proj_dim == DimResult::Infinite && rec.obstructed()),
            ("findim bound Known(1)", fb.combined == CombinedBound::Known(1)),
        ],
        t.elapsed(),
        Duration::from_secs(1),
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut checks = Vec::new();
    for (p, name) in [(2, "F2"), (3, "F3")] {
        let cat = fixtures::ei_remark();
        let a = Arc::new(cat.algebra(Field::prime(p).unwrap()).unwrap());
        let s = verify_stratification(&a, a.vertex_idempotents(), &["y".into(), "x".into()]).unwrap();
        let si = stratifying_ideal_check(&a, &a.vertex_idempotents()[0], 6).unwrap();
        let tor_zero = si.tor.len() == 6 && si.tor.iter().all(|d| *d == HomologyResult::Dimension(0));
        let st = standardly_stratified_check(&s, Some(&cat)).unwrap();
        let expect_standard = p == 3;
        checks.push((name, si.multiplication_iso() && tor_zero && st.standard() == expect_standard && st.stabilizer_criterion() == Some(expect_standard)));
    }
    let named: Vec<(&str, bool)> = vec![
        ("F2: stratifying, not standard, stabilizer order 2 not invertible", checks[0].1),
        ("F3: stratifying and standard", checks[1].1),
    ];
    outcome(&named, t.elapsed(), Duration::from_secs(1))
}

/// `kQ/I` dimension for homogeneous relations, by ranks of `u r v` per degree.
fn graded_dimension_oracle(q: &Quiver, f: Field, rels: &[(Vec<(i64, &str)>, usize)], max_len: usize) -> usize {
    let mut total = 0;
    for len in 0..=max_len {
        let paths: Vec<Vec<usize>> =
            q.enumerate_paths(len).into_iter().filter(|p| p.len() == len).map(|p| p.arrows.clone()).collect();
        if len == 0 {
            total += q.num_vertices();
            continue;
        }
        let index = |arrows: &[usize]| paths.iter().position(|p| p.as_slice() == arrows);
        let mut rows = Vec::new();
        for (terms, rl) in rels {
            if *rl > len {
                continue;
            }
            let parsed: Vec<(i64, Vec<usize>)> = terms.iter().map(|(c, w)| (*c, q.parse_path(w).unwrap().arrows)).collect();
            // u (length a) after r after v (length len - rl - a), arrows listed first-applied first
            for p in &paths {
                for cut in 0..=len - rl {
                    let (v, rest) = p.split_at(cut);
                    let u = &rest[*rl..];
                    let mut row = vec![f.zero(); paths.len()];
                    let mut any = false;
                    for (c, mid) in &parsed {
                        let word: Vec<usize> = v.iter().chain(mid).chain(u).copied().collect();
                        if let Some(k) = index(&word) {
                            row[k] = &row[k] + &f.from_i64(*c);
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, paths.len(), rows).rank() };
        total += paths.len() - rank;
    }
    total
}

fn criterion_3(sound: &mut Soundness) -> (Outcome, Vec<String>) {
    let t = Instant::now();
    let mut checks: Vec<(String, bool)> = Vec::new();
    let mut notes = Vec::new();
    for f in [Field::RATIONALS, Field::prime(2).unwrap()] {
        let pa = fixtures::five_vertex(f).unwrap().build().unwrap();
        let a = pa.algebra().clone();
        let q = fixtures::five_vertex_quiver();
        let mut rels: Vec<(Vec<(i64, &str)>, usize)> = ["gamma*gamma", "gamma*beta", "eps1*beta", "delta1*beta", "delta1*gamma", "eps1*gamma", "rho*delta2", "rho*eps2"]
            .iter()
            .map(|w| (vec![(1, *w)], 2))
            .collect();
        rels.push((vec![(1, "rho*rho*rho*rho*rho")], 5));
        rels.push((vec![(1, "eps2*eps1"), (-1, "delta2*delta1")], 2));
        let oracle = graded_dimension_oracle(&q, f, &rels, 8);
        checks.push((format!("{f}: dim 21"), a.dim() == 21 && oracle == 21));

        let alpha = pa.path_element("alpha").unwrap();
        let e2 = a.vertex_idempotents()[1].clone();
        let a_alpha = FModule::left_ideal(&a, &a.left_ideal(&alpha)).unwrap();
        let a_e2 = FModule::projective_at(&a, &e2).unwrap();
        let iso = is_isomorphic(&a_alpha, &a_e2, 0).is_yes();
        checks.push((format!("{f}: A alpha = A e2 projective"), iso && proj_dim(&a_alpha, 4, 0).unwrap() == DimResult::Finite(0)));

        let s2 = simples(&a).unwrap().into_iter().find(|s| s.idempotent_image(&e2).dim() > 0).unwrap();
        let r = minimal_resolution(&s2, 12, 0).unwrap();
        sound.record(&r, "five-vertex S2");
        let cert = matches!(&r.status, ResolutionStatus::CertifiedInfinite(c) if c.verify(&r.syzygies));
        checks.push((format!("{f}: proj.dim S2 infinite, certified"), cert));

        let strats = find_stratifications(&a).unwrap();
        let two = strats.iter().find(|s| s.labels() == ["1+2+3+4", "5"]);
        checks.push((format!("{f}: ({{1..4}},{{5}}) found"), two.is_some()));

        let e5 = a.vertex_idempotents()[4].clone();
        let corner = a.corner(&e5).unwrap();
        let c = corner.algebra();
        let rad = c.radical().unwrap();
        // local, dim 5, rad^4 != 0: uniserial, hence k[x]/x^5
        let truncated = c.dim() == 5 && c.decomposition().unwrap().class_count() == 1 && c.nilpotency_index(rad) == Some(5) && rad.dim() == 4;
        let selfinj = is_self_injective(c).unwrap();
        let contributes_zero = two.is_some_and(|s| {
            findim_bound(s, &BTreeMap::new(), 6).unwrap().strata[1].value == StratumDim::Known { value: 0, source: DimSource::SelfInjective }
        });
        checks.push((format!("{f}: e5 corner k[rho]/rho^5, self-injective, contributes 0"), truncated && selfinj && contributes_zero));

        let ob = contravariant_finiteness_obstruction(&pa, "beta", "alpha", 12).unwrap();
        checks.push((format!("{f}: obstruction (beta, alpha) present"), ob.present()));

        let e = a.vertex_sum(&[0, 1, 2, 3]);
        let rec = recollement_condition_check(&a, &e, 6).unwrap();
        checks.push((format!("{f}: recollement condition fails"), rec.obstructed()));
        let s2_summand = rec.left.simple_summands.iter().chain(&rec.right.simple_summands).any(|l| l == "2");
        checks.push((format!("{f}: failure via S2 summand of B"), s2_summand));
        if !s2_summand {
            notes.push(format!(
                "{f}: B has simple summands left {:?}, right {:?}; left proj.dim {:?}, right {:?}",
                rec.left.simple_summands, rec.right.simple_summands, rec.left.proj_dim, rec.right.proj_dim
            ));
        }
    }
    let named: Vec<(&str, bool)> = checks.iter().map(|(n, b)| (n.as_str(), *b)).collect();
    (outcome(&named, t.elapsed(), Duration::from_secs(5)), notes)
}

fn criterion_4(sound: &mut Soundness) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    for k in 0..50 {
        let f = [Field::RATIONALS, Field::prime(2).unwrap(), Field::prime(3).unwrap()][k % 3];
        let pa = random::random_acyclic_presentation(&mut rng, f, 6, 8).build().unwrap();
        let a = pa.algebra().clone();
        let n = pa.quiver().num_vertices();
        let s = verify_stratification(&a, a.vertex_idempotents(), &[]).unwrap();
        let report = gldim_bound(&s, n + 1).unwrap();
        let gl_ok = matches!(report.algebra_gldim, Some(DimResult::Finite(d)) if d < n);
        let strata_k = report.strata.iter().all(|e| e.corner_dim == 1 && e.value == StratumDim::Known { value: 0, source: DimSource::GlobalDimension });
        let bound_ok = report.combined == CombinedBound::Known(n - 1) && report.gldim_consistent() == Some(true);
        for (c, simple) in simples(&a).unwrap().iter().enumerate() {
            sound.record(&minimal_resolution(simple, n + 1, 0).unwrap(), &format!("acyclic {k} simple {c}"));
        }
        if !(gl_ok && strata_k && bound_ok) {
            bad.push(format!("instance {k}"));
        }
    }
    let label = format!("50 instances, bad: {bad:?}");
    outcome(&[(label.as_str(), bad.is_empty())], t.elapsed(), Duration::from_secs(30))
}

fn criterion_5(sound: &mut Soundness) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0;
    let mut failures: Vec<String> = Vec::new();
    let fields = [Field::RATIONALS, Field::prime(2).unwrap(), Field::prime(3).unwrap()];
    while pairs < 100 {
        let f = fields[pairs % 3];
        let Some(pa) = random::random_stratified_algebra(&mut rng, f, 30).unwrap() else { continue };
        let a = pa.algebra().clone();
        let m = random::random_module(&mut rng, &a).unwrap();
        pairs += 1;
        let strats = find_stratifications(&a).unwrap();
        let mut chosen: Vec<&DirectedStratification> = strats.iter().filter(|s| s.len() > 1).collect();
        if chosen.len() > 3 {
            let keep = rng.gen_range(0..chosen.len() - 1);
            chosen = vec![chosen[keep], chosen[chosen.len() - 1]];
        }
        if chosen.is_empty() {
            failures.push(format!("pair {pairs}: no nontrivial stratification"));
        }
        for s in chosen {
            let tag = format!("pair {pairs} {:?}", s.labels());
            if !check_simples_support(s).unwrap().iter().all(SimpleSupport::passed) {
                failures.push(format!("{tag}: simples"));
            }
            let cover = check_cover_theorem(&m, s).unwrap();
            if !cover.passed() {
                failures.push(format!("{tag}: cover {:?} {:?} {:?}", cover.profile, cover.cover_dims, cover.minimal));
            }
            for &x in &support_profile(&m, s).minimal {
                if !check_restricted_resolution(&m, s, x, 4).unwrap().passed() {
                    failures.push(format!("{tag}: restricted resolution at {x}"));
                }
            }
            for objs in ideals(s) {
                if !check_restriction_preserves_projectives(s, &objs).unwrap().passed() {
                    failures.push(format!("{tag}: restriction to {objs:?}"));
                }
            }
            for i in 1..s.len() {
                let upper: BTreeSet<usize> = (0..s.len() - i).collect();
                let rep = stratifying_ideal_check(&a, &s.idempotent_sum(&upper), 4).unwrap();
                if !rep.passed() {
                    failures.push(format!("{tag}: stratifying layer {i}"));
                }
            }
        }
        sound.record(&minimal_resolution(&m, 6, 0).unwrap(), &format!("pair {pairs} module"));
    }
    let label = format!("{pairs} pairs, failures: {failures:?}");
    outcome(&[(label.as_str(), failures.is_empty())], t.elapsed(), Duration::from_secs(120))
}

fn f2_bits(v: &[stratakit_core::linalg::Scalar]) -> u32 {
    v.iter().enumerate().map(|(i, x)| (x.residue().unwrap() & 1) << i).sum()
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bip_bad = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let arrows = rng.gen_range(0..=2 * n);
        let q = random::random_quiver(&mut rng, n, arrows);
        let mut oracle = BTreeSet::new();
        for mask in 1u32..(1 << n) - 1 {
            let upper: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            // no arrow may leave the lower part into the upper part
            if q.arrows().iter().all(|a| upper.contains(&a.source) || !upper.contains(&a.target)) {
                let lower: BTreeSet<usize> = (0..n).filter(|i| !upper.contains(i)).collect();
                oracle.insert((lower, upper));
            }
        }
        let got: BTreeSet<_> = q.directed_bipartitions().into_iter().map(|b| (b.lower, b.upper)).collect();
        if got != oracle {
            bip_bad += 1;
        }
    }
    let f2 = Field::prime(2).unwrap();
    let mut la_bad = 0;
    for _ in 0..300 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<_>> = (0..r).map(|_| (0..c).map(|_| f2.random(&mut rng)).collect()).collect();
        let m = Matrix::from_rows(f2, c, rows.clone());
        let bits: Vec<u32> = rows.iter().map(|row| f2_bits(row)).collect();
        let apply = |x: u32| -> u32 { bits.iter().enumerate().map(|(i, row)| ((row & x).count_ones() & 1) << i).sum() };
        let kernel: BTreeSet<u32> = (0..1u32 << c).filter(|&x| apply(x) == 0).collect();
        let kb = m.kernel_basis();
        let span = |basis: &[u32]| -> BTreeSet<u32> {
            (0..1u32 << basis.len())
                .map(|s| basis.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).fold(0, |acc, (_, b)| acc ^ b))
                .collect()
        };
        let kbits: Vec<u32> = kb.iter().map(|v| f2_bits(v)).collect();
        if span(&kbits) != kernel || kernel.len() != 1 << kb.len() {
            la_bad += 1;
        }
        let b: Vec<_> = (0..r).map(|_| f2.random(&mut rng)).collect();
        let bb = f2_bits(&b);
        let solvable = (0..1u32 << c).any(|x| apply(x) == bb);
        match m.solve(&b) {
            Some(x) if solvable && apply(f2_bits(&x)) == bb => {}
            None if !solvable => {}
            _ => la_bad += 1,
        }
        let n = c;
        let (ku, kv) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let u = random::random_subspace(&mut rng, f2, n, ku);
        let v = random::random_subspace(&mut rng, f2, n, kv);
        let eu = span(&u.basis().iter().map(|x| f2_bits(x)).collect::<Vec<_>>());
        let ev = span(&v.basis().iter().map(|x| f2_bits(x)).collect::<Vec<_>>());
        let members = |s: &Subspace| -> BTreeSet<u32> {
            (0..1u32 << n)
                .filter(|&x| s.contains(&(0..n).map(|i| f2.from_i64((x >> i & 1) as i64)).collect::<Vec<_>>()))
                .collect()
        };
        let inter: BTreeSet<u32> = eu.intersection(&ev).copied().collect();
        let sum: BTreeSet<u32> = eu.iter().flat_map(|x| ev.iter().map(move |y| x ^ y)).collect();
        let uv = u.sum(&v).unwrap();
        let qb = u.quotient_basis_in(&uv).unwrap();
        let qbits: Vec<u32> = qb.iter().map(|x| f2_bits(x)).collect();
        let rebuilt: BTreeSet<u32> = eu.iter().flat_map(|x| span(&qbits).into_iter().map(move |y| x ^ y)).collect();
        if members(&u) != eu
            || members(&u.intersection(&v).unwrap()) != inter
            || members(&uv) != sum
            || rebuilt != sum
            || eu.len() * (1 << qb.len()) != sum.len()
        {
            la_bad += 1;
        }
    }
    let l1 = format!("bipartitions: {bip_bad} mismatches in 200");
    let l2 = format!("F2 linear algebra: {la_bad} mismatches in 300");
    outcome(&[(l1.as_str(), bip_bad == 0), (l2.as_str(), la_bad == 0)], t.elapsed(), Duration::from_secs(30))
}

fn criterion_7(sound: &Soundness) -> Outcome {
    let label = format!(
        "{} certificates and {} finite resolutions rechecked, violations: {:?}",
        sound.certificates, sound.finite, sound.violations
    );
    outcome(&[(label.as_str(), sound.violations.is_empty() && sound.certificates > 0 && sound.finite > 0)], Duration::ZERO, Duration::from_secs(1))
}

/// Sub-checks that cannot pass as stated; see README.
const KNOWN_DEVIATIONS: [&str; 2] = ["Q: failure via S2 summand of B", "F2: failure via S2 summand of B"];

fn main() {
    let mut sound = Soundness::default();
    let (c3, notes) = criterion_3(&mut sound);
    let results = [
        (1, criterion_1(&mut sound)),
        (2, criterion_2()),
        (3, c3),
        (4, criterion_4(&mut sound)),
        (5, criterion_5(&mut sound)),
        (6, criterion_6()),
    ];
    let c7 = criterion_7(&sound);
    let mut unexpected = false;
    for (n, o) in results.iter().chain(std::iter::once(&(7, c7))) {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {status} ({})", o.detail);
        if !o.pass {
            let only_known = o.detail.split("; failed: ").nth(1).is_some_and(|list| {
                !o.detail.contains("over time limit") && list.split(", ").all(|c| KNOWN_DEVIATIONS.contains(&c))
            });
            if only_known {
                println!("  known deviation, analysis in README");
            } else {
                unexpected = true;
            }
        }
    }
    for n in notes {
        println!("  note: {n}");
    }
    if unexpected {
        std::process::exit(1);
    }
}
