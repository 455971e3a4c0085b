use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stratakit_core::algebra::{Algebra, PathAlgebra};
use stratakit_core::fmod::{
    ext_n, hom_space, minimal_resolution, projective_modules, tor_n, verify_resolution, FModule, ResolutionStatus,
};
use stratakit_core::linalg::Field;
use stratakit_core::random;
use stratakit_core::strata::{find_stratifications, ideals, is_ideal, support_profile};

const FIELDS: [u64; 3] = [0, 2, 3];

fn field(k: usize) -> Field {
    match FIELDS[k % 3] {
        0 => Field::RATIONALS,
        p => Field::prime(p).unwrap(),
    }
}

/// Random stratified algebra, retrying until one fits.
fn stratified(seed: u64) -> (ChaCha8Rng, PathAlgebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(pa) = random::random_stratified_algebra(&mut rng, field(seed as usize), 20).unwrap() {
            return (rng, pa);
        }
    }
}

fn acyclic(seed: u64) -> (ChaCha8Rng, Arc<Algebra>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pa = random::random_acyclic_presentation(&mut rng, field(seed as usize), 4, 5).build().unwrap();
    (rng, pa.algebra().clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn yoneda(seed in any::<u64>()) {
        let (mut rng, pa) = stratified(seed);
        let a = pa.algebra();
        let m = random::random_module(&mut rng, a).unwrap();
        for p in projective_modules(a).unwrap() {
            prop_assert_eq!(hom_space(&p.module, &m).len(), m.idempotent_image(&p.idempotent).dim());
        }
    }

    #[test]
    fn projectives_are_acyclic(seed in any::<u64>()) {
        let (mut rng, a) = acyclic(seed);
        let m = random::random_module(&mut rng, &a).unwrap();
        let op = Arc::new(a.opposite());
        let right_regular = FModule::regular(&op);
        prop_assert_eq!(tor_n(&right_regular, &m, 0, 6).unwrap().dimension(), Some(m.dim()));
        for p in projective_modules(&a).unwrap() {
            for n in 1..3 {
                prop_assert_eq!(ext_n(&p.module, &m, n, 6).unwrap().dimension(), Some(0));
                prop_assert_eq!(tor_n(&right_regular, &p.module, n, 6).unwrap().dimension(), Some(0));
            }
        }
    }

    #[test]
    fn ext_zero_is_hom(seed in any::<u64>()) {
        let (mut rng, a) = acyclic(seed);
        let m = random::random_module(&mut rng, &a).unwrap();
        let n = random::random_module(&mut rng, &a).unwrap();
        prop_assert_eq!(ext_n(&m, &n, 0, 6).unwrap().dimension(), Some(hom_space(&m, &n).len()));
    }

    #[test]
    fn finite_resolutions_have_matching_euler_characteristic(seed in any::<u64>()) {
        let (mut rng, a) = acyclic(seed);
        let m = random::random_module(&mut rng, &a).unwrap();
        let r = minimal_resolution(&m, 8, 0).unwrap();
        prop_assert!(verify_resolution(&r).is_ok());
        prop_assert!(matches!(r.status, ResolutionStatus::Finite(_)));
        let euler: i64 = r.terms.iter().enumerate().map(|(i, t)| if i % 2 == 0 { t.module.dim() as i64 } else { -(t.module.dim() as i64) }).sum();
        prop_assert_eq!(euler, m.dim() as i64);
    }

    #[test]
    fn resolutions_verify_over_stratified_algebras(seed in any::<u64>()) {
        let (mut rng, pa) = stratified(seed);
        let m = random::random_module(&mut rng, pa.algebra()).unwrap();
        let r = minimal_resolution(&m, 5, seed).unwrap();
        prop_assert!(verify_resolution(&r).is_ok());
    }

    #[test]
    fn found_stratifications_recheck(seed in any::<u64>()) {
        let (mut rng, pa) = stratified(seed);
        let a = pa.algebra();
        let m = random::random_module(&mut rng, a).unwrap();
        for s in find_stratifications(a).unwrap() {
            prop_assert!(s.recheck());
            let sp = support_profile(&m, &s);
            prop_assert!(sp.minimal.iter().all(|&x| sp.dims[x] > 0));
            // support lies above the minimal objects
            prop_assert!((0..s.len()).filter(|&x| sp.dims[x] > 0).all(|x| sp.closure.contains(&x)));
            for o in ideals(&s) {
                prop_assert!(is_ideal(&s, &o));
                let below: BTreeSet<usize> = (0..s.len()).filter(|&y| o.iter().any(|&x| s.reaches(y, x))).collect();
                prop_assert!(below.is_subset(&o));
            }
        }
    }

    #[test]
    fn subspace_dimension_formula(seed in any::<u64>(), n in 1usize..6, ku in 0usize..4, kv in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field(seed as usize);
        let u = random::random_subspace(&mut rng, f, n, ku);
        let v = random::random_subspace(&mut rng, f, n, kv);
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v) && u.is_subspace_of(&s));
    }

    #[test]
    fn bipartitions_are_sound(seed in any::<u64>(), n in 1usize..7, arrows in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random::random_quiver(&mut rng, n, arrows);
        for b in q.directed_bipartitions() {
            prop_assert!(!b.lower.is_empty() && !b.upper.is_empty());
            prop_assert_eq!(b.lower.len() + b.upper.len(), n);
            prop_assert!(q.arrows().iter().all(|a| !(b.lower.contains(&a.source) && b.upper.contains(&a.target))));
        }
    }
}
