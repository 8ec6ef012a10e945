//! Exact scalar fields used throughout the crate.
//!
//! `Q` is an arbitrary-precision rational, `Cq` a Gaussian rational. The
//! [`Field`] trait is deliberately method-based so generic linear algebra
//! does not need reference-operator bounds.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type Cq = Complex<Q>;
pub type C64 = Complex<f64>;

/// Rational `n / d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Integer value of `x`, if it is one and fits.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Parse "p/q", "p", or a finite decimal such as "0.45" into an exact rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let ip: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let fv: BigInt = fp.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(ip * &den + fv, den);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

/// Exact string form, "p/q" or "p".
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn cq(re: Q, im: Q) -> Cq {
    Complex::new(re, im)
}

pub fn cq_re(re: Q) -> Cq {
    Complex::new(re, <Q as Zero>::zero())
}

pub fn cq_i() -> Cq {
    Complex::new(<Q as Zero>::zero(), <Q as One>::one())
}

/// Scalar field interface for the exact linear algebra.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_q(x: &Q) -> Self;
    /// Complex conjugation (identity on real fields).
    fn conj(&self) -> Self;
    fn to_c64(&self) -> C64;

    fn from_i64(n: i64) -> Self {
        Self::from_q(&qi(n))
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Real rational value, if the scalar is one.
    fn as_q(&self) -> Option<Q>;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_q(x: &Q) -> Self {
        x.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(self), 0.0)
    }
    fn as_q(&self) -> Option<Q> {
        Some(self.clone())
    }
}

impl Field for Cq {
    fn zero() -> Self {
        Complex::new(<Q as Zero>::zero(), <Q as Zero>::zero())
    }
    fn one() -> Self {
        Complex::new(<Q as One>::one(), <Q as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, o: &Self) -> Self {
        Complex::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        Complex::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        if Zero::is_zero(&self.im) {
            if Zero::is_zero(&o.im) {
                return Complex::new(&self.re * &o.re, <Q as Zero>::zero());
            }
            return Complex::new(&self.re * &o.re, &self.re * &o.im);
        }
        if Zero::is_zero(&o.im) {
            return Complex::new(&self.re * &o.re, &self.im * &o.re);
        }
        if Zero::is_zero(&self.re) && Zero::is_zero(&o.re) {
            return Complex::new(-(&self.im * &o.im), <Q as Zero>::zero());
        }
        Complex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn neg(&self) -> Self {
        Complex::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Complex::new(&self.re / &n, -(&self.im / &n)))
    }
    fn from_q(x: &Q) -> Self {
        Complex::new(x.clone(), <Q as Zero>::zero())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }
    fn to_c64(&self) -> C64 {
        C64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    fn as_q(&self) -> Option<Q> {
        if Zero::is_zero(&self.im) {
            Some(self.re.clone())
        } else {
            None
        }
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn q_sign(x: &Q) -> i32 {
    if Zero::is_zero(x) {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_q("3/4"), Some(q(3, 4)));
        assert_eq!(parse_q("-2"), Some(qi(-2)));
        assert_eq!(parse_q("0.45"), Some(q(9, 20)));
        assert_eq!(parse_q("-1.5"), Some(q(-3, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn gaussian_inverse() {
        let z = cq(q(1, 2), q(-3, 1));
        let w = Field::inv(&z).unwrap();
        assert_eq!(Field::mul(&z, &w), <Cq as Field>::one());
        assert_eq!(fmt_q(&q(6, 4)), "3/2");
    }
}
