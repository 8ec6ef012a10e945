use diracbound::berger::{
    d_lambda_minimum, inequality_chain, min_bound, Berger, BergerFrame, OctonionTable, QSqrt5, ReductiveBlocks, SHIPPED_FIXTURE,
};
use diracbound::commands::berger_verify_command;
use diracbound::field::{q, qi, Field};
use diracbound::{Error, Exec};
use serde_json::Value;

fn blocks() -> ReductiveBlocks {
    let b = Berger::shipped().unwrap();
    let sp = b.spinors().unwrap();
    ReductiveBlocks::new(&b, &sp, Exec::Parallel).unwrap()
}

fn tampered(row: usize, col: usize, value: &str) -> String {
    let mut v: Value = serde_json::from_str(SHIPPED_FIXTURE).unwrap();
    v["frame"][row][col] = Value::String(value.into());
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn shipped_fixture_round_trips() {
    let f = BergerFrame::shipped().unwrap();
    assert_eq!(f.to_json(), SHIPPED_FIXTURE);
    assert_eq!(f.orientation, -1);
}

#[test]
fn tampered_fixture_fails_with_residuals() {
    let text = tampered(0, 1, "1/3");
    let rec = berger_verify_command(Some(&text), Exec::Parallel, None).unwrap();
    assert!(!rec.passed);
    let checks = rec.result["checks"].as_array().unwrap();
    let failing: Vec<&Value> = checks.iter().filter(|c| c["passed"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| !c["residuals"].as_array().unwrap().is_empty()));
    assert!(failing.iter().any(|c| c["name"].as_str().unwrap().contains("orthonormal")));
}

#[test]
fn malformed_fixture_is_a_parse_error() {
    let text = tampered(2, 3, "one fifth");
    assert!(matches!(berger_verify_command(Some(&text), Exec::Sequential, None), Err(Error::Parse(_))));
    assert!(matches!(BergerFrame::parse("{\"format\": 1}"), Err(Error::Parse(_))));
}

#[test]
fn half_gives_441_over_80() {
    let r = d_lambda_minimum(&blocks(), &q(1, 2), &min_bound()).unwrap();
    assert_eq!(r.min_sq, QSqrt5::rational(q(441, 80)));
    assert_eq!(r.min_abs, QSqrt5::new(qi(0), q(21, 20)));
}

#[test]
fn small_bound_is_an_incomplete_certificate() {
    let err = d_lambda_minimum(&blocks(), &q(1, 2), &qi(12)).unwrap_err();
    assert!(matches!(err, Error::IncompleteCertificate(_)), "{err}");
}

#[test]
fn one_third_is_the_reductive_operator() {
    // λ = 1/3 is the reductive connection; its minimum is √(49/20) on γ = 0.
    let r = d_lambda_minimum(&blocks(), &q(1, 3), &min_bound()).unwrap();
    assert_eq!(r.min_sq, QSqrt5::rational(q(49, 20)));
}

#[test]
fn inequality_chain_is_exact() {
    assert!(inequality_chain());
    // 21/(4√5) squared is 441/80.
    let x = QSqrt5::new(qi(0), q(21, 20));
    assert_eq!(x.mul(&x), QSqrt5::rational(q(441, 80)));
}

#[test]
fn octonions_are_alternative_and_normed() {
    let t = OctonionTable::new();
    assert!(t.check());
    let unit = |i: usize| (i - 1) % 7 + 1;
    for i in 1..=7 {
        assert_eq!(t.imaginary_product(i, unit(i + 1)), Some((1, unit(i + 3))));
        assert_eq!(t.imaginary_product(unit(i + 1), i), Some((-1, unit(i + 3))));
        assert_eq!(t.imaginary_product(i, i), None);
    }
}
