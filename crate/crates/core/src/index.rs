//! Truncated cohomology rings of `S^{2m}` and `CP^{2m-1}`, Chern characters
//! and the Â-degree thresholds for maps into them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};
use crate::field::{fmt_q, qi, Q};

/// `H*(S^{2m}; ℚ) = ℚ[ω]/(ω²)` or `H*(CP^{2m-1}; ℚ) = ℚ[a]/(a^{2m})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Sphere { m: u32 },
    Projective { m: u32 },
}

impl Ring {
    /// Number of stored coefficients (the nilpotency order of the generator).
    pub fn len(&self) -> usize {
        match *self {
            Ring::Sphere { .. } => 2,
            Ring::Projective { m } => 2 * m as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Real degree of the generator.
    pub fn generator_degree(&self) -> u32 {
        match *self {
            Ring::Sphere { m } => 2 * m,
            Ring::Projective { .. } => 2,
        }
    }

    pub fn generator(&self) -> &'static str {
        match self {
            Ring::Sphere { .. } => "ω",
            Ring::Projective { .. } => "a",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Ring::Sphere { m } => write!(f, "H*(S^{})", 2 * m),
            Ring::Projective { m } => write!(f, "H*(CP^{})", 2 * m - 1),
        }
    }
}

/// `Σ c_j x^j` in a truncated ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub ring: Ring,
    pub coeffs: Vec<Q>,
}

impl CohomologyClass {
    pub fn zero(ring: Ring) -> Self {
        CohomologyClass { ring, coeffs: vec![qi(0); ring.len()] }
    }

    pub fn constant(ring: Ring, c: Q) -> Self {
        let mut z = Self::zero(ring);
        z.coeffs[0] = c;
        z
    }

    /// `c · x^j`; powers at or beyond the truncation vanish.
    pub fn monomial(ring: Ring, c: Q, j: usize) -> Self {
        let mut z = Self::zero(ring);
        if j < ring.len() {
            z.coeffs[j] = c;
        }
        z
    }

    pub fn generator(ring: Ring) -> Self {
        Self::monomial(ring, qi(1), 1)
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(domain(format!("classes live in {} and {}", self.ring, o.ring)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(CohomologyClass { ring: self.ring, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        Ok(CohomologyClass { ring: self.ring, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &Q) -> Self {
        CohomologyClass { ring: self.ring, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let n = self.ring.len();
        let mut out = vec![qi(0); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Ok(CohomologyClass { ring: self.ring, coeffs: out })
    }

    /// `exp(x)` for nilpotent `x`; the series stops at the truncation.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(domain("exp of a class with nonzero constant term is not rational"));
        }
        let mut term = Self::constant(self.ring, qi(1));
        let mut sum = term.clone();
        for k in 1..self.ring.len() {
            term = term.mul(self)?.scale(&Q::new(BigInt::one(), BigInt::from(k)));
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }

    /// `x ↦ -x` on the generator; on `CP^{2m-1}` this is `ch(E) ↦ ch(E*)`.
    pub fn dual(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() }).collect();
        CohomologyClass { ring: self.ring, coeffs }
    }

    /// Rank (degree-0 part).
    pub fn rank(&self) -> &Q {
        &self.coeffs[0]
    }

    /// Pairing with the fundamental class: the top coefficient.
    pub fn evaluate(&self) -> &Q {
        self.coeffs.last().expect("nonempty ring")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.ring.generator();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = fmt_q(&mag);
            match j {
                0 => write!(f, "{coef}")?,
                _ => {
                    if !mag.is_integer() {
                        write!(f, "({coef})")?;
                    } else if !mag.is_one() {
                        write!(f, "{coef}")?;
                    }
                    write!(f, "{g}")?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(domain("m must be at least 1"));
    }
    Ok(())
}

/// `ch(Σ^±) = 2^{m-1} ± ω` in `H*(S^{2m})`.
pub fn spinor_chern_character(m: u32, plus: bool) -> Result<CohomologyClass> {
    check_m(m)?;
    let ring = Ring::Sphere { m };
    let w = CohomologyClass::monomial(ring, qi(if plus { 1 } else { -1 }), 1);
    CohomologyClass::constant(ring, Q::from_integer(pow2(m - 1))).add(&w)
}

/// `ch(W) = Σ_{i<m} (-1)^{m-1-i} C(2m, i) e^{(m-i)a}` in `H*(CP^{2m-1})`.
pub fn chern_character_w(m: u32) -> Result<CohomologyClass> {
    check_m(m)?;
    let ring = Ring::Projective { m };
    let a = CohomologyClass::generator(ring);
    let mut out = CohomologyClass::zero(ring);
    for i in 0..m {
        let sign = if (m - 1 - i).is_multiple_of(2) { 1 } else { -1 };
        let c = Q::from_integer(binomial(2 * m as u64, i as u64) * sign);
        out = out.add(&a.scale(&qi((m - i) as i64)).exp()?.scale(&c))?;
    }
    Ok(out)
}

/// `ch(W*)`, obtained from `ch(W)` by `a ↦ -a`.
pub fn chern_character_w_dual(m: u32) -> Result<CohomologyClass> {
    Ok(chern_character_w(m)?.dual())
}

/// `2^{m-1}(k-1)`.
pub fn sphere_threshold(m: u32, k: u32) -> Result<BigInt> {
    check_m(m)?;
    if k == 0 {
        return Err(domain("k must be at least 1"));
    }
    Ok(pow2(m - 1) * BigInt::from(k - 1))
}

/// `C(2m-1, m-1)(k-1)` and the class `Σ_{i<m} (-1)^i C(2m, i)(e^{(m-i)a} - 1)`.
pub fn cpn_threshold(m: u32, k: u32) -> Result<(BigInt, CohomologyClass)> {
    check_m(m)?;
    if k == 0 {
        return Err(domain("k must be at least 1"));
    }
    let ring = Ring::Projective { m };
    let a = CohomologyClass::generator(ring);
    let one = CohomologyClass::constant(ring, qi(1));
    let mut class = CohomologyClass::zero(ring);
    for i in 0..m {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = Q::from_integer(binomial(2 * m as u64, i as u64) * sign);
        let t = a.scale(&qi((m - i) as i64)).exp()?.sub(&one)?;
        class = class.add(&t.scale(&c))?;
    }
    let threshold = binomial(2 * m as u64 - 1, m as u64 - 1) * BigInt::from(k - 1);
    Ok((threshold, class))
}

/// Index and kernel bookkeeping for `f: N → S^{2m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexReport {
    pub m: u32,
    pub k: u32,
    pub ahat: Q,
    pub deg_ahat: BigInt,
    /// `ind(D_{N,1,±}) = 2^{m-1} Â(TN)[N] ± deg_Â f`.
    pub index_plus: Q,
    pub index_minus: Q,
    /// `max(|2^m Â(TN)[N]|, 2 |deg_Â f|)`.
    pub kernel_bound: Q,
    pub threshold: BigInt,
    /// `|deg_Â f| > 2^{m-1}(k-1)`.
    pub verdict: bool,
}

pub fn index_report(m: u32, k: u32, ahat: Q, deg_ahat: BigInt) -> Result<IndexReport> {
    let threshold = sphere_threshold(m, k)?;
    let half = Q::from_integer(pow2(m - 1)) * &ahat;
    let deg = Q::from_integer(deg_ahat.clone());
    let index_plus = &half + &deg;
    let index_minus = &half - &deg;
    let a = (qi(2) * &half).abs();
    let b = (qi(2) * &deg).abs();
    let kernel_bound = if a > b { a } else { b };
    let verdict = deg_ahat.abs() > threshold;
    Ok(IndexReport { m, k, ahat, deg_ahat, index_plus, index_minus, kernel_bound, threshold, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    #[test]
    fn cp3_chern_characters() {
        let w = chern_character_w(2).unwrap();
        assert_eq!(w.coeffs, vec![qi(3), qi(2), qi(0), q(-2, 3)]);
        assert_eq!(w.to_string(), "3 + 2a - (2/3)a^3");
        assert_eq!(chern_character_w_dual(2).unwrap().to_string(), "3 - 2a + (2/3)a^3");
        assert_eq!(chern_character_w(1).unwrap().rank(), &qi(1));
    }

    #[test]
    fn exp_inverse_and_truncation() {
        let r = Ring::Projective { m: 2 };
        let a = CohomologyClass::generator(r);
        let prod = a.exp().unwrap().mul(&a.neg_exp()).unwrap();
        assert_eq!(prod, CohomologyClass::constant(r, qi(1)));
        let a4 = a.mul(&a).unwrap().mul(&a).unwrap().mul(&a).unwrap();
        assert!(a4.coeffs.iter().all(Zero::is_zero));
        assert_eq!(CohomologyClass::zero(r).exp().unwrap(), CohomologyClass::constant(r, qi(1)));
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = CohomologyClass::generator(Ring::Projective { m: 2 });
        let w = CohomologyClass::generator(Ring::Sphere { m: 2 });
        assert!(a.add(&w).is_err());
    }

    #[test]
    fn report_examples() {
        let r = index_report(2, 1, qi(0), BigInt::from(1)).unwrap();
        assert_eq!(r.kernel_bound, qi(2));
        assert!(r.verdict);
        let r = index_report(2, 3, qi(1), BigInt::from(5)).unwrap();
        assert_eq!(r.kernel_bound, qi(10));
        assert_eq!(r.threshold, BigInt::from(4));
        assert!(r.verdict);
        assert!(!index_report(2, 1, qi(0), BigInt::from(0)).unwrap().verdict);
    }

    impl CohomologyClass {
        fn neg_exp(&self) -> Self {
            self.scale(&qi(-1)).exp().unwrap()
        }
    }
}
