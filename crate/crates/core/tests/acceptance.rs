//! The eight acceptance criteria. Each test writes one PASS/FAIL line to the
//! raw stderr handle so it survives output capture.

use std::io::Write;

use diracbound::berger::{self, Berger, BergerSpinors, QSqrt5, ReductiveBlocks};
use diracbound::catalog::{build_space, entries};
use diracbound::field::{q, qi, Q};
use diracbound::index::{self, CohomologyClass, Ring};
use diracbound::lie::CasimirQueue;
use diracbound::linalg::{kernel, Mat};
use diracbound::spin::{dirac_block, lambda1, random_mu, vafa_witten_batch, SearchOptions, TwistData};
use diracbound::Exec;
use num_bigint::BigInt;

const EPS: f64 = 1e-9;

fn report(n: u32, name: &str, failures: &[String]) {
    let line = if failures.is_empty() {
        format!("criterion {n} [{name}]: PASS\n")
    } else {
        format!("criterion {n} [{name}]: FAIL ({})\n", failures.join("; "))
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(failures.is_empty(), "{line}");
}

/// `8m² - 4m(q+1)`, mirrored for `q ≥ m`.
fn cpn_component(m: i64, q: i64) -> Q {
    let q = q.min(2 * m - 1 - q);
    qi(8 * m * m - 4 * m * (q + 1))
}

#[test]
fn criterion_1_cp3_spectrum_table() {
    let mut fail = Vec::new();
    for (id, m) in [("CP3", 2), ("CP5", 3)] {
        let r = lambda1(&build_space(id).unwrap(), SearchOptions::default()).unwrap();
        let got: Vec<Q> = r.components.iter().map(|c| c.value.clone()).collect();
        let want: Vec<Q> = (0..2 * m).map(|q| cpn_component(m, q)).collect();
        if got != want {
            fail.push(format!("{id} components {got:?} != {want:?}"));
        }
        if r.value != qi(4 * m * m) {
            fail.push(format!("{id} λ₁ = {} != {}", r.value, 4 * m * m));
        }
    }
    report(1, "CP3 table {24,16,16,24}, λ₁(CP3)=16, λ₁(CP5)=36", &fail);
}

#[test]
fn criterion_2_q0_component() {
    let mut fail = Vec::new();
    for (id, m) in [("CP3", 2i64), ("CP5", 3)] {
        let r = lambda1(&build_space(id).unwrap(), SearchOptions::default()).unwrap();
        let n = 2 * m - 1;
        let want = qi(8 * m * m - 4 * m);
        if want != qi(2 * n * (n + 1)) {
            fail.push(format!("8m²-4m != 2n(n+1) at m={m}"));
        }
        if r.components[0].value != want {
            fail.push(format!("{id} q=0 value {} != {want}", r.components[0].value));
        }
    }
    report(2, "q=0 component equals 8m²-4m for m=2,3", &fail);
}

#[test]
fn criterion_3_parthasarathy_identity() {
    let mut fail = Vec::new();
    let mut checked = 0;
    for e in entries().into_iter().filter(|e| e.symmetric) {
        let space = build_space(e.id).unwrap();
        let l1 = lambda1(&space, SearchOptions::default()).unwrap().value;
        let limit = qi(4) * &l1;
        let g = space.g().clone();
        for (gamma, c) in CasimirQueue::new(&g).take_while(|(_, c)| *c <= limit) {
            if space.admissible_components(&gamma).unwrap().is_empty() {
                continue;
            }
            match dirac_block(&space, &gamma, Exec::Parallel) {
                Ok(b) if b.parthasarathy_holds() => checked += 1,
                Ok(b) => fail.push(format!("{} γ={gamma} c={c}: square {:?} vs {}", e.id, b.square_scalar, b.expected_square)),
                Err(err) => fail.push(format!("{} γ={gamma}: {err}", e.id)),
            }
        }
    }
    if checked == 0 {
        fail.push("no admissible weights".into());
    }
    report(3, &format!("(^γD)² = (c_G+c_H^σ)Id exactly on {checked} blocks"), &fail);
}

#[test]
fn criterion_4_vafa_witten_bound_and_rigidity() {
    let mut fail = Vec::new();
    for id in ["S4", "S6", "CP3"] {
        let space = build_space(id).unwrap();
        let l1 = lambda1(&space, SearchOptions::default()).unwrap();
        let twist = TwistData::new(&space, &l1.minimizers[0], l1.value.clone()).unwrap();
        let lf = diracbound::field::q_to_f64(&l1.value);
        let mus = random_mu(space.dim(), 20240501, 1000);
        let reports = vafa_witten_batch(&twist, &mus, Exec::Parallel).unwrap();
        let violations = reports.iter().filter(|r| r.norm_sq > lf + EPS).count();
        if violations > 0 {
            fail.push(format!("{id}: {violations} violations"));
        }
        let near = reports.iter().filter(|r| r.mu.iter().any(|m| *m != qi(1)) && (r.norm_sq - lf).abs() <= EPS).count();
        if near > 0 {
            fail.push(format!("{id}: {near} samples with μ≠1 reach equality"));
        }
        let ones = vafa_witten_batch(&twist, &[vec![qi(1); space.dim()]], Exec::Sequential).unwrap();
        if ones[0].norm_sq_exact.as_ref() != Some(&l1.value) || !ones[0].equality {
            fail.push(format!("{id}: μ≡1 gives {:?}, not exactly {}", ones[0].norm_sq_exact, l1.value));
        }
    }
    report(4, "max-eig(C²) ≤ λ₁ on 1000 samples, equality only at μ≡1", &fail);
}

#[test]
fn criterion_5_equal_rank_kernel() {
    let mut fail = Vec::new();
    for id in ["S4", "S6", "CP3", "CP5"] {
        let space = build_space(id).unwrap();
        for (w, _) in &space.spinor_decomposition().components {
            let d = space.twisted_kernel_dimension(w).unwrap();
            if d != 1 {
                fail.push(format!("{id} σ₁={w}: dim ker = {d}"));
            }
        }
    }
    report(5, "dim ker D₁ = 1 for every spinor component", &fail);
}

#[test]
fn criterion_6_spinor_multiplicities() {
    let mut fail = Vec::new();
    for e in entries() {
        let comps: Vec<(String, u64)> = if e.symmetric {
            let s = build_space(e.id).unwrap();
            s.spinor_decomposition().components.iter().map(|(w, m)| (w.to_string(), *m)).collect()
        } else {
            let b = Berger::shipped().unwrap();
            let sp: BergerSpinors = b.spinors().unwrap();
            sp.decomposition().unwrap().into_iter().map(|(l, m)| (l.to_string(), m)).collect()
        };
        let want = 1u64 << (e.rank_difference / 2);
        if comps.iter().any(|(_, m)| *m != want) {
            fail.push(format!("{}: multiplicities {comps:?}, want {want}", e.id));
        }
        let mut names: Vec<&String> = comps.iter().map(|(w, _)| w).collect();
        names.sort();
        names.dedup();
        if names.len() != comps.len() {
            fail.push(format!("{}: repeated component", e.id));
        }
        let count = if let Some(n) = e.id.strip_prefix("CP") {
            Some((n.parse::<usize>().unwrap() + 1).max(2))
        } else if let Some(n) = e.id.strip_prefix('S') {
            let n: usize = n.parse().unwrap();
            n.is_multiple_of(2).then_some(2)
        } else {
            None
        };
        if let Some(c) = count {
            if comps.len() != c {
                fail.push(format!("{}: {} components, want {c}", e.id, comps.len()));
            }
        }
    }
    report(6, "multiplicities 2^⌊k/2⌋, distinct, 2 on S^2m, 2m on CP^(2m-1)", &fail);
}

#[test]
fn criterion_7_berger_exact_suite() {
    let mut fail = Vec::new();
    let b = Berger::shipped().unwrap();
    let rep = berger::verify(&b, Exec::Parallel);
    for c in rep.checks.iter().filter(|c| !c.passed) {
        fail.push(format!("{}: {:?}", c.name, c.residuals));
    }
    if rep.decomposition != vec![(0, 1), (6, 1)] {
        fail.push(format!("spinor SO(3) labels {:?}", rep.decomposition));
    }
    let sp = b.spinors().unwrap();
    for (num, mult) in [(7i64, 1usize), (-1, 7)] {
        let ev = QSqrt5::new(qi(0), q(num, 10));
        let k = kernel(&sp.a.sub(&Mat::scalar(8, &ev))).len();
        if k != mult {
            fail.push(format!("eigenvalue {ev} of A has multiplicity {k}, want {mult}"));
        }
    }
    let lambdas: Vec<Q> = (0..=10).map(|i| q(45 + i, 100)).collect();
    let got: Vec<Q> = rep.sweep.iter().map(|(l, _, _)| l.clone()).collect();
    if got != lambdas {
        fail.push("sweep does not cover 45/100..55/100".into());
    }
    for (l, v, _) in &rep.sweep {
        let want = q(441, 20) * l * l;
        if *v != QSqrt5::rational(want.clone()) {
            fail.push(format!("λ={l}: {v} != {want}"));
        }
    }
    let blocks = ReductiveBlocks::new(&b, &sp, Exec::Parallel).unwrap();
    for (p, qq) in [(0i64, 0i64), (1, 1), (2, 0)] {
        let blk = blocks.blocks.iter().find(|x| x.p == p && x.q == qq).unwrap();
        let want = qi(p * p + 3 * p + qq * qq + qq) + q(49, 20);
        if !blk.identity_holds || blk.casimir.clone() + &blocks.shift != want {
            fail.push(format!("block ({p},{qq}): {} + {} vs {want}", blk.casimir, blocks.shift));
        }
        // On H-invariants the H-Casimir vanishes, so the square is the scalar itself.
        if blk.hom_dim > 0 {
            let b3 = blk.block(&q(1, 3));
            if b3.mul(&b3) != Mat::scalar(blk.hom_dim, &QSqrt5::rational(want.clone())) {
                fail.push(format!("block ({p},{qq}): (D^(1/3))² is not {want} on Hom"));
            }
        }
    }
    if rep.monotone != Some(true) {
        fail.push("λ₁ at 51/100 does not exceed λ₁ at 1/2".into());
    }
    report(7, "Berger identities over Q(√5)", &fail);
}

#[test]
fn criterion_8_index_thresholds() {
    let mut fail = Vec::new();
    for m in 1..=4u32 {
        for plus in [true, false] {
            let ch = index::spinor_chern_character(m, plus).unwrap();
            let w = CohomologyClass::generator(Ring::Sphere { m });
            let half = CohomologyClass::constant(Ring::Sphere { m }, qi(1 << (m - 1)));
            let want = if plus { half.add(&w) } else { half.sub(&w) }.unwrap();
            if ch != want {
                fail.push(format!("ch(Σ{}) at m={m}: {ch}", if plus { "+" } else { "-" }));
            }
        }
    }
    let w2 = index::chern_character_w(2).unwrap();
    let ring = Ring::Projective { m: 2 };
    let want = CohomologyClass::constant(ring, qi(3))
        .add(&CohomologyClass::monomial(ring, qi(2), 1))
        .unwrap()
        .add(&CohomologyClass::monomial(ring, q(-2, 3), 3))
        .unwrap();
    if w2 != want {
        fail.push(format!("ch(W) at m=2: {w2}"));
    }
    for m in 1..=6u32 {
        let s = index::chern_character_w(m).unwrap().add(&index::chern_character_w_dual(m).unwrap()).unwrap();
        let c = choose(2 * m as u64, m as u64);
        if !s.is_constant() || *s.rank() != Q::from_integer(BigInt::from(c)) {
            fail.push(format!("ch(W)+ch(W*) at m={m}: {s}"));
        }
    }
    for m in 1..=4u32 {
        for k in 1..=4u32 {
            let sph = index::sphere_threshold(m, k).unwrap();
            if sph != BigInt::from((1u64 << (m - 1)) * (k as u64 - 1)) {
                fail.push(format!("sphere ({m},{k}): {sph}"));
            }
            let (cp, _) = index::cpn_threshold(m, k).unwrap();
            if cp != BigInt::from(choose(2 * m as u64 - 1, m as u64 - 1) * (k as u64 - 1)) {
                fail.push(format!("cpn ({m},{k}): {cp}"));
            }
        }
    }
    report(8, "Chern characters and index thresholds", &fail);
}

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
