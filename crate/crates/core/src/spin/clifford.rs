use super::pair::SymmetricPair;
use crate::error::{internal, Error, Result};
use crate::field::{cq_i, q, Cq, Field};
use crate::linalg::Mat;

/// Spinor module of `Cl(𝔭)` with the isotropy action of 𝔥.
#[derive(Clone, Debug)]
pub struct CliffordModule<F> {
    pub n: usize,
    pub gens: Vec<Mat<F>>,
    /// `σ_*(f_k)` for the 𝔥 basis of the pair.
    pub sigma: Vec<Mat<F>>,
    /// `ω_ℝ = c_1⋯c_n`.
    pub omega: Mat<F>,
}

/// Complex Clifford generators on `(ℂ²)^{⊗⌊n/2⌋}`.
pub fn pauli_generators(n: usize) -> Vec<Mat<Cq>> {
    let i = cq_i();
    let one = Cq::one();
    let zero = Cq::zero();
    let id = Mat::<Cq>::identity(2);
    let z = Mat::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), Field::neg(&one)]]);
    let ix = Mat::from_rows(vec![vec![zero.clone(), i.clone()], vec![i.clone(), zero.clone()]]);
    let iy = Mat::from_rows(vec![vec![zero.clone(), one.clone()], vec![Field::neg(&one), zero.clone()]]);
    let m = n / 2;
    let chain = |j: usize, mid: &Mat<Cq>| {
        let mut out = Mat::<Cq>::identity(1);
        for t in 0..m {
            let f = if t < j {
                &z
            } else if t == j {
                mid
            } else {
                &id
            };
            out = out.kron(f);
        }
        out
    };
    let mut gens = Vec::with_capacity(n);
    for j in 0..m {
        gens.push(chain(j, &ix));
        gens.push(chain(j, &iy));
    }
    if n % 2 == 1 {
        let mut last = Mat::<Cq>::identity(1);
        for _ in 0..m {
            last = last.kron(&z);
        }
        gens.push(last.scale(&i));
    }
    gens
}

impl<F: Field> CliffordModule<F> {
    /// Attach the isotropy action to given generators and check every invariant.
    pub fn from_generators(pair: &SymmetricPair<F>, gens: Vec<Mat<F>>) -> Result<Self> {
        let n = pair.dim_p();
        if gens.len() != n {
            return Err(Error::Config(format!("{} Clifford generators for dim 𝔭 = {n}", gens.len())));
        }
        let d = gens.first().map_or(1, |g| g.rows());
        let mut omega = Mat::identity(d);
        for g in &gens {
            omega = omega.mul(g);
        }
        let mut cm = CliffordModule { n, gens, sigma: Vec::new(), omega };
        cm.sigma = pair.h_basis.iter().map(|f| cm.sigma_of(pair, f)).collect();
        cm.check(pair)?;
        Ok(cm)
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    /// `σ_*(x) = ¼ Σ ⟨[e_i,e_j], x⟩ c_i c_j` for any `x` in the span of 𝔥.
    pub fn sigma_of(&self, pair: &SymmetricPair<F>, x: &Mat<F>) -> Mat<F> {
        let quarter = F::from_q(&q(1, 4));
        let mut out = Mat::zeros(self.dim(), self.dim());
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let br = pair.p_basis[i].commutator(&pair.p_basis[j]);
                let c = pair.metric(&br, x);
                if !c.is_zero() {
                    out = out.add(&self.gens[i].mul(&self.gens[j]).scale(&c.mul(&quarter)));
                }
            }
        }
        out
    }

    fn check(&self, pair: &SymmetricPair<F>) -> Result<()> {
        let d = self.dim();
        for i in 0..self.n {
            for j in i..self.n {
                let ac = self.gens[i].anticommutator(&self.gens[j]);
                let want = if i == j { Mat::scalar(d, &F::from_i64(-2)) } else { Mat::zeros(d, d) };
                if ac != want {
                    return Err(internal(format!("Clifford relation fails at ({i},{j})")));
                }
            }
        }
        for (k, s) in self.sigma.iter().enumerate() {
            if s.add(&s.adjoint()) != Mat::zeros(d, d) {
                return Err(internal(format!("σ(f_{k}) is not skew-adjoint")));
            }
        }
        let m = self.sigma.len();
        for a in 0..m {
            for b in a + 1..m {
                let lhs = self.sigma[a].commutator(&self.sigma[b]);
                let rhs = self.sigma_of(pair, &pair.h_basis[a].commutator(&pair.h_basis[b]));
                if lhs != rhs {
                    return Err(internal(format!("σ is not a homomorphism on (f_{a}, f_{b})")));
                }
            }
        }
        Ok(())
    }
}

/// The standard complex spinor module of a pair.
pub fn clifford_module(pair: &SymmetricPair<Cq>) -> Result<CliffordModule<Cq>> {
    CliffordModule::from_generators(pair, pauli_generators(pair.dim_p()))
}

/// `⅛ Σ_{i,j} ‖[e_i, e_j]‖²`, checked against `-Σ σ_*(f_a) G^{ab} σ_*(f_b)`.
///
/// Refuses non-symmetric pairs, where the isotropy Casimir need not be scalar.
pub fn casimir_sigma<F: Field>(pair: &SymmetricPair<F>, cm: &CliffordModule<F>) -> Result<F> {
    if !pair.symmetric {
        return Err(Error::Unsupported(format!("{} is not a symmetric pair", pair.id)));
    }
    let n = pair.dim_p();
    let mut s = F::zero();
    for i in 0..n {
        for j in 0..n {
            let br = pair.p_basis[i].commutator(&pair.p_basis[j]);
            s = s.add(&pair.metric(&br, &br));
        }
    }
    let value = s.mul(&F::from_q(&q(1, 8)));
    let ginv = pair.h_gram.inverse().ok_or_else(|| internal("𝔥 Gram matrix is singular"))?;
    let d = cm.dim();
    let mut cas = Mat::zeros(d, d);
    for a in 0..pair.dim_h() {
        for b in 0..pair.dim_h() {
            if !ginv[(a, b)].is_zero() {
                cas = cas.sub(&cm.sigma[a].mul(&cm.sigma[b]).scale(&ginv[(a, b)]));
            }
        }
    }
    if cas != Mat::scalar(d, &value) {
        return Err(internal(format!("{}: isotropy Casimir is not the scalar {value:?}", pair.id)));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_generators_anticommute() {
        for n in 1..=7 {
            let g = pauli_generators(n);
            let d = 1 << (n / 2);
            for i in 0..n {
                assert_eq!(g[i].rows(), d);
                for j in 0..n {
                    let want = if i == j { Mat::scalar(d, &Cq::from_i64(-2)) } else { Mat::zeros(d, d) };
                    assert_eq!(g[i].anticommutator(&g[j]), want);
                }
            }
        }
    }

    #[test]
    fn volume_element_is_anti_selfadjoint_in_dimension_nine() {
        let g = pauli_generators(9);
        let mut w = Mat::<Cq>::identity(16);
        for c in &g {
            w = w.mul(c);
        }
        assert_eq!(w.adjoint(), w.neg());
        // ω² = -1 for n ≡ 1 mod 8 with this sign convention.
        assert_eq!(w.mul(&w), Mat::scalar(16, &Cq::from_i64(-1)));
        for c in &g {
            assert_eq!(c.mul(&w), w.mul(c));
        }
    }
}
