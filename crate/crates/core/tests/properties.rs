use std::collections::BTreeMap;

use diracbound::berger::QSqrt5;
use diracbound::cache::Cache;
use diracbound::catalog::build_space;
use diracbound::commands::{lambda1_command, MuSpec};
use diracbound::field::{q, qi, Field, Q};
use diracbound::index::{self, CohomologyClass, Ring};
use diracbound::lie::{branch, build_root_system, Family, RootSystem, Weight};
use diracbound::linalg::{kernel, Mat};
use diracbound::spin::{pauli_generators, random_mu, SearchOptions};
use diracbound::Exec;
use proptest::prelude::*;

fn algebras() -> Vec<RootSystem> {
    [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::B, 3), (Family::C, 3), (Family::D, 4), (Family::G, 2)]
        .into_iter()
        .map(|(f, r)| build_root_system(f, r, qi(1)).unwrap())
        .collect()
}

fn small_weight(rank: usize, max: i64) -> impl Strategy<Value = Weight> {
    proptest::collection::vec(0..=max, rank).prop_map(Weight)
}

fn rs_and_weight() -> impl Strategy<Value = (RootSystem, Weight)> {
    (0..8usize).prop_flat_map(|i| {
        let rs = algebras().swap_remove(i);
        let max = if rs.rank() > 2 { 1 } else { 2 };
        small_weight(rs.rank(), max).prop_map(move |w| (rs.clone(), w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn weyl_dimension_is_total_multiplicity((rs, w) in rs_and_weight()) {
        let total: u64 = rs.weight_multiplicities(&w).unwrap().values().sum();
        prop_assert_eq!(total, rs.dimension(&w).unwrap());
    }

    #[test]
    fn weight_multiset_is_weyl_invariant((rs, w) in rs_and_weight()) {
        let wm = rs.weight_multiplicities(&w).unwrap();
        for i in 0..rs.rank() {
            let mut reflected: BTreeMap<Weight, u64> = BTreeMap::new();
            for (v, m) in &wm {
                *reflected.entry(rs.reflect(v, i)).or_insert(0) += m;
            }
            prop_assert_eq!(&reflected, &wm);
        }
    }

    #[test]
    fn casimir_grows_along_rays((rs, w) in rs_and_weight(), k in 2i64..4) {
        prop_assume!(!w.is_zero());
        prop_assert!(rs.casimir(&w.scale(k)).unwrap() > rs.casimir(&w).unwrap());
    }

    #[test]
    fn casimir_is_duality_invariant((rs, w) in rs_and_weight()) {
        let d = rs.dual(&w);
        prop_assert_eq!(rs.dual(&d), w.clone());
        prop_assert_eq!(rs.casimir(&d).unwrap(), rs.casimir(&w).unwrap());
        prop_assert_eq!(rs.dimension(&d).unwrap(), rs.dimension(&w).unwrap());
    }

    #[test]
    fn branching_preserves_dimension(idx in 0..4usize, labels in proptest::collection::vec(0i64..=2, 5)) {
        let id = ["S4", "S5", "S6", "CP3"][idx];
        let space = build_space(id).unwrap();
        let g = space.g();
        let w = Weight(labels[..g.rank()].to_vec());
        prop_assume!(g.dimension(&w).unwrap() <= 400);
        let b = branch(&w, &space.embedding).unwrap();
        let sum: u64 = b.components.iter().map(|(h, m)| m * space.h().dimension(h).unwrap()).sum();
        prop_assert_eq!(sum, g.dimension(&w).unwrap());
    }
}

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn qmat(n: usize) -> impl Strategy<Value = Mat<Q>> {
    proptest::collection::vec(small_q(), n * n).prop_map(move |v| Mat::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn qsqrt5() -> impl Strategy<Value = QSqrt5> {
    (small_q(), small_q()).prop_map(|(a, b)| QSqrt5::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in qmat(4)) {
        prop_assert_eq!(m.rank() + kernel(&m).len(), 4);
        for v in kernel(&m) {
            prop_assert!(m.mul_vec(&v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in qmat(3)) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Mat::identity(3));
                prop_assert_eq!(inv.mul(&m), Mat::identity(3));
            }
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn qsqrt5_field_and_order(x in qsqrt5(), y in qsqrt5(), z in qsqrt5()) {
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        if let Some(inv) = x.inv() {
            prop_assert_eq!(x.mul(&inv), QSqrt5::one());
        }
        let diff = x.to_f64() - y.to_f64();
        if diff.abs() > 1e-9 {
            prop_assert_eq!(x > y, diff > 0.0);
        }
        prop_assert_eq!(x.mul(&x.galois()).as_q(), Some(x.norm()));
        prop_assert_eq!(QSqrt5::parse(&x.to_string()), Some(x));
    }

    #[test]
    fn truncated_exponential(m in 1u32..=5, c1 in proptest::collection::vec(small_q(), 10), c2 in proptest::collection::vec(small_q(), 10)) {
        let ring = Ring::Projective { m };
        let mk = |c: &[Q]| {
            (1..ring.len()).fold(CohomologyClass::zero(ring), |acc, j| acc.add(&CohomologyClass::monomial(ring, c[j].clone(), j)).unwrap())
        };
        let (x, y) = (mk(&c1), mk(&c2));
        let lhs = x.add(&y).unwrap().exp().unwrap();
        let rhs = x.exp().unwrap().mul(&y.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.dual().dual(), x.clone());
        prop_assert_eq!(x.exp().unwrap().dual(), x.dual().exp().unwrap());
    }

    #[test]
    fn thresholds_monotone_in_k(m in 1u32..=6, k in 1u32..=8) {
        prop_assert!(index::sphere_threshold(m, k + 1).unwrap() >= index::sphere_threshold(m, k).unwrap());
        prop_assert!(index::cpn_threshold(m, k + 1).unwrap().0 >= index::cpn_threshold(m, k).unwrap().0);
    }

    #[test]
    fn mu_spec_round_trip(seed in any::<u64>(), count in 0usize..1000, v in proptest::collection::vec((1i64..=8, 1i64..=8), 1..6)) {
        let r = MuSpec::Random { seed, count };
        prop_assert_eq!(MuSpec::parse(&r.to_string()).unwrap(), r);
        let e = MuSpec::Explicit(v.iter().map(|&(a, b)| q(a.min(b), b)).collect());
        prop_assert_eq!(MuSpec::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn random_mu_is_replayable_and_in_range(n in 1usize..12, seed in any::<u64>()) {
        let a = random_mu(n, seed, 5);
        prop_assert_eq!(&a, &random_mu(n, seed, 5));
        for mu in &a {
            prop_assert_eq!(mu.len(), n);
            prop_assert!(mu.iter().all(|x| *x > qi(0) && *x <= qi(1)));
        }
    }

    #[test]
    fn exec_modes_agree(v in proptest::collection::vec(any::<i32>(), 0..200)) {
        let f = |x: &i32| (*x as i64) * 3 - 1;
        prop_assert_eq!(Exec::Sequential.map(&v, f), Exec::Parallel.map(&v, f));
        prop_assert_eq!(Exec::Sequential.map_range(v.len(), |i| i * i), Exec::Parallel.map_range(v.len(), |i| i * i));
    }
}

/// `ω = c₁⋯cₙ` satisfies `ω† = (-1)^{n(n+1)/2} ω` and `ω² = ±1`; for odd `n`
/// it is central, so `n ≡ 1 mod 8` gives an anti-selfadjoint parallel endomorphism.
#[test]
fn volume_element_adjointness() {
    for n in 1..=9usize {
        let g = pauli_generators(n);
        let d = g[0].rows();
        let mut omega = Mat::identity(d);
        for c in &g {
            omega = omega.mul(c);
        }
        let sign = if (n * (n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        assert_eq!(omega.adjoint(), omega.scale(&Field::from_i64(sign)), "n = {n}");
        if n % 2 == 1 {
            for c in &g {
                assert!(omega.commutator(c).is_zero(), "n = {n}");
            }
        }
        if n % 8 == 1 {
            assert_eq!(omega.adjoint(), omega.neg());
        }
    }
}

#[test]
fn parallel_and_sequential_lambda1_agree() {
    for id in ["S4", "CP3", "S5xS2"] {
        let seq = lambda1_command(id, SearchOptions { exec: Exec::Sequential, ..Default::default() }, None).unwrap();
        let par = lambda1_command(id, SearchOptions { exec: Exec::Parallel, ..Default::default() }, None).unwrap();
        assert_eq!(seq, par, "{id}");
    }
}

#[test]
fn cache_changes_nothing_but_timing() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let opts = SearchOptions::default();
    let fresh = lambda1_command("CP3", opts, None).unwrap();
    let filled = lambda1_command("CP3", opts, Some(&cache)).unwrap();
    let hit = lambda1_command("CP3", opts, Some(&cache)).unwrap();
    assert_eq!(fresh, filled);
    assert_eq!(fresh, hit);
    assert_eq!(cache.clear().unwrap(), 1);
    assert_eq!(lambda1_command("CP3", opts, Some(&cache)).unwrap(), fresh);
    assert_eq!(fresh.to_json_string(), hit.to_json_string());
}
