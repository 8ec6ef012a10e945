use diracbound::commands::{index_cpn_command, index_sphere_command};
use diracbound::field::{q, qi, Q};
use diracbound::index::{self, binomial, CohomologyClass, Ring};
use diracbound::Error;
use num_bigint::BigInt;

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `ch(W) = Σ_{i<m} (-1)^{m-1-i} C(2m,i) e^{(m-i)a}` truncated at `a^{2m}`,
/// built term by term from the exponential series.
fn ch_w_series(m: u32) -> Vec<Q> {
    let n = 2 * m as usize;
    let mut out = vec![qi(0); n];
    for i in 0..m as i64 {
        let sign = if (m as i64 - 1 - i) % 2 == 0 { 1 } else { -1 };
        let c = qi(sign * choose(n as u64, i as u64) as i64);
        let t = qi(m as i64 - i);
        let mut term = c;
        for (j, slot) in out.iter_mut().enumerate() {
            *slot += &term;
            term = term * &t / qi(j as i64 + 1);
        }
    }
    out
}

#[test]
fn chern_character_of_w_matches_the_series() {
    for m in 1..=6 {
        assert_eq!(index::chern_character_w(m).unwrap().coeffs, ch_w_series(m), "m = {m}");
    }
}

#[test]
fn dual_is_the_sign_flip() {
    for m in 1..=6 {
        let w = index::chern_character_w(m).unwrap();
        let wd = index::chern_character_w_dual(m).unwrap();
        assert_eq!(w.dual(), wd);
        let s = w.add(&wd).unwrap();
        assert!(s.is_constant());
        assert_eq!(*s.rank(), Q::from_integer(binomial(2 * m as u64, m as u64)));
    }
}

/// The obstruction class is `ch(W) - rank` up to the sign `(-1)^{m-1}`; the
/// threshold only sees its absolute top coefficient.
#[test]
fn obstruction_class_is_reduced_ch_w() {
    for m in 1..=6u32 {
        let (t, class) = index::cpn_threshold(m, 2).unwrap();
        let w = index::chern_character_w(m).unwrap();
        let reduced = w.sub(&CohomologyClass::constant(w.ring, w.rank().clone())).unwrap();
        let sign = if m % 2 == 1 { qi(1) } else { qi(-1) };
        assert_eq!(class, reduced.scale(&sign), "m = {m}");
        assert_eq!(t, BigInt::from(choose(2 * m as u64 - 1, m as u64 - 1)));
    }
    let (_, c2) = index::cpn_threshold(2, 2).unwrap();
    assert_eq!(c2.to_string(), "-2a + (2/3)a^3");
}

#[test]
fn thresholds_for_small_m_and_k() {
    for m in 1..=4u32 {
        for k in 1..=4u32 {
            assert_eq!(index::sphere_threshold(m, k).unwrap(), BigInt::from((1u64 << (m - 1)) * (k as u64 - 1)));
            let (t, _) = index::cpn_threshold(m, k).unwrap();
            assert_eq!(t, BigInt::from(choose(2 * m as u64 - 1, m as u64 - 1) * (k as u64 - 1)));
        }
    }
    assert!(matches!(index::sphere_threshold(0, 2), Err(Error::Domain(_))));
    assert!(matches!(index::cpn_threshold(2, 0), Err(Error::Domain(_))));
}

#[test]
fn spinor_characters() {
    for m in 1..=6u32 {
        let p = index::spinor_chern_character(m, true).unwrap();
        let n = index::spinor_chern_character(m, false).unwrap();
        assert_eq!(*p.rank(), qi(1 << (m - 1)));
        assert_eq!(p.add(&n).unwrap(), CohomologyClass::constant(Ring::Sphere { m }, qi(1 << m)));
        assert_eq!(*p.evaluate(), qi(1));
        assert_eq!(*n.evaluate(), qi(-1));
    }
}

#[test]
fn truncation_and_pairing() {
    let ring = Ring::Projective { m: 2 };
    let a = CohomologyClass::generator(ring);
    let a3 = a.mul(&a).unwrap().mul(&a).unwrap();
    assert_eq!(*a3.evaluate(), qi(1));
    assert_eq!(a3.mul(&a).unwrap(), CohomologyClass::zero(ring));
    let x = CohomologyClass::constant(ring, qi(5)).add(&a3.scale(&q(-2, 3))).unwrap();
    assert_eq!(*x.evaluate(), q(-2, 3));
    assert!(matches!(CohomologyClass::constant(ring, qi(1)).exp(), Err(Error::Domain(_))));
    assert!(CohomologyClass::generator(Ring::Sphere { m: 2 }).add(&a).is_err());
}

#[test]
fn sphere_records() {
    let r = index_sphere_command(2, 3, &qi(1), &BigInt::from(1)).unwrap();
    assert_eq!(r.result["threshold"], "4");
    assert_eq!(r.result["ch_spinor_plus"], "2 + ω");
    let zero = index_sphere_command(2, 3, &qi(1), &BigInt::from(0)).unwrap();
    assert_eq!(zero.result["verdict"], false);
    let big = index_sphere_command(2, 3, &qi(0), &BigInt::from(9)).unwrap();
    assert_eq!(big.result["verdict"], true);
    let cp = index_cpn_command(2, 2).unwrap();
    assert_eq!(cp.result["threshold"], "3");
    assert_eq!(cp.result["ch_W"], "3 + 2a - (2/3)a^3");
}
