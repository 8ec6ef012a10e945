use std::cmp::Ordering;
use std::fmt;

use crate::field::{fmt_q, parse_q, q_sign, q_to_f64, qi, Field, Q, C64};
use crate::linalg::RealSign;

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSqrt5 {
    pub a: Q,
    pub b: Q,
}

impl QSqrt5 {
    pub fn new(a: Q, b: Q) -> Self {
        QSqrt5 { a, b }
    }

    pub fn rational(a: Q) -> Self {
        QSqrt5 { a, b: qi(0) }
    }

    pub fn sqrt5() -> Self {
        QSqrt5 { a: qi(0), b: qi(1) }
    }

    /// Galois conjugate `a - b√5`.
    pub fn galois(&self) -> Self {
        QSqrt5 { a: self.a.clone(), b: -&self.b }
    }

    /// `a² - 5b²`.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - qi(5) * &self.b * &self.b
    }

    pub fn sign(&self) -> i32 {
        let sa = q_sign(&self.a);
        let sb = q_sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: compare a² with 5b².
        match (&self.a * &self.a).cmp(&(qi(5) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.a) + q_to_f64(&self.b) * 5f64.sqrt()
    }

    /// Parse `"a"`, `"a+b√5"`, `"b√5"` or `"a-b√5"` with rational parts.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim().replace(' ', "");
        let Some(body) = s.strip_suffix("√5") else {
            return parse_q(&s).map(Self::rational);
        };
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        let (a, b) = match split {
            Some(i) if !body[..i].ends_with('/') => (&body[..i], &body[i..]),
            _ => ("0", body),
        };
        let b = match b {
            "" | "+" => "1",
            "-" => "-1",
            x => x.strip_prefix('+').unwrap_or(x),
        };
        Some(QSqrt5 { a: parse_q(a)?, b: parse_q(b)? })
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, o: &Self) -> Ordering {
        Field::sub(self, o).sign().cmp(&0)
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let za = Field::is_zero(&self.a);
        let zb = Field::is_zero(&self.b);
        match (za, zb) {
            (_, true) => write!(f, "{}", fmt_q(&self.a)),
            (true, false) => write!(f, "{}√5", fmt_q(&self.b)),
            (false, false) => {
                if q_sign(&self.b) < 0 {
                    write!(f, "{}-{}√5", fmt_q(&self.a), fmt_q(&-&self.b))
                } else {
                    write!(f, "{}+{}√5", fmt_q(&self.a), fmt_q(&self.b))
                }
            }
        }
    }
}

impl Field for QSqrt5 {
    fn zero() -> Self {
        QSqrt5 { a: qi(0), b: qi(0) }
    }
    fn one() -> Self {
        QSqrt5 { a: qi(1), b: qi(0) }
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(&self.a) && Field::is_zero(&self.b)
    }
    fn add(&self, o: &Self) -> Self {
        QSqrt5 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    fn sub(&self, o: &Self) -> Self {
        QSqrt5 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn mul(&self, o: &Self) -> Self {
        if Field::is_zero(&self.b) && Field::is_zero(&o.b) {
            return QSqrt5::rational(&self.a * &o.a);
        }
        QSqrt5 { a: &self.a * &o.a + qi(5) * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
    fn neg(&self) -> Self {
        QSqrt5 { a: -&self.a, b: -&self.b }
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let n = self.norm();
        Some(QSqrt5 { a: &self.a / &n, b: -(&self.b / &n) })
    }
    fn from_q(x: &Q) -> Self {
        QSqrt5::rational(x.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64(), 0.0)
    }
    fn as_q(&self) -> Option<Q> {
        Field::is_zero(&self.b).then(|| self.a.clone())
    }
}

impl RealSign for QSqrt5 {
    fn real_sign(&self) -> Option<i32> {
        Some(self.sign())
    }
}
