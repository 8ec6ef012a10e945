use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::space::SymmetricSpace;
use crate::error::{domain, internal, Error, Result};
use crate::exec::Exec;
use crate::field::{q, q_to_f64, qi, Cq, Field, Q, C64};
use crate::lie::Weight;
use crate::linalg::{definiteness, Mat, RowEchelon};

/// Float comparisons of `‖C‖²` against `λ₁` use this tolerance.
pub const TOLERANCE: f64 = 1e-9;

/// Tensor products up to this dimension are also checked in exact arithmetic when `μ ≡ 1`.
pub const EXACT_DIM_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct VafaWittenReport {
    pub gamma: Weight,
    pub mu: Vec<Q>,
    /// Largest eigenvalue of `C²`.
    pub norm_sq: f64,
    /// Exact value of `‖C‖²`, when it was certified.
    pub norm_sq_exact: Option<Q>,
    pub lambda1: Q,
    pub equality: bool,
}

impl VafaWittenReport {
    pub fn bound_holds(&self) -> bool {
        match &self.norm_sq_exact {
            Some(x) => x <= &self.lambda1,
            None => self.norm_sq <= q_to_f64(&self.lambda1) + TOLERANCE,
        }
    }
}

/// Matrices `γ*(e_i)` on `V^{γ*}` together with an invariant Hermitian form.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub gamma: Weight,
    pub lambda1: Q,
    pub p_mats: Vec<Mat<Cq>>,
    pub form: Mat<Cq>,
    clifford_exact: Vec<Mat<Cq>>,
    /// `L^† γ*(e_i) L^{-†}`, Hermitian-orthonormal version of `p_mats`.
    ortho: Vec<DMatrix<C64>>,
    clifford: Vec<DMatrix<C64>>,
}

fn to_dm(m: &Mat<Cq>) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_c64())
}

/// Positive definite `H` with `X^† H + H X = 0` for every compact generator.
fn invariant_form(space: &SymmetricSpace, module: &dyn crate::repr::Module) -> Result<Mat<Cq>> {
    let basis = module.basis();
    let d = basis.len();
    // Unknowns H_ab with equal weights only (Cartan elements are compact).
    let weights: Vec<Weight> = basis.iter().map(|k| module.weight_of(k)).collect();
    let mut vars: Vec<(usize, usize)> = Vec::new();
    let mut var_of = vec![vec![usize::MAX; d]; d];
    for a in 0..d {
        for b in 0..d {
            if weights[a] == weights[b] {
                var_of[a][b] = vars.len();
                vars.push((a, b));
            }
        }
    }
    let mut ech = RowEchelon::new(vars.len());
    for x in space.realization.compact_basis() {
        let xm = module.matrix(&space.realization.coords(&x)?);
        // (X^† H + H X)_{ab} = Σ_c conj(X_ca) H_cb + Σ_c H_ac X_cb
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![Cq::zero(); vars.len()];
                let mut any = false;
                for c in 0..d {
                    let v = var_of[c][b];
                    if v != usize::MAX && !Field::is_zero(&xm[(c, a)]) {
                        row[v] = Field::add(&row[v], &xm[(c, a)].conj());
                        any = true;
                    }
                    let v = var_of[a][c];
                    if v != usize::MAX && !Field::is_zero(&xm[(c, b)]) {
                        row[v] = Field::add(&row[v], &xm[(c, b)]);
                        any = true;
                    }
                }
                if any {
                    ech.insert(row);
                }
            }
        }
    }
    let ker = ech.kernel();
    if ker.len() != 1 {
        return Err(internal(format!("invariant form space has dimension {}", ker.len())));
    }
    let v = &ker[0].1;
    let mut h = Mat::zeros(d, d);
    for (i, &(a, b)) in vars.iter().enumerate() {
        h[(a, b)] = v[i].clone();
    }
    let h00 = h[(0, 0)].clone();
    let inv = Field::inv(&h00).ok_or_else(|| internal("invariant form vanishes on the first basis vector"))?;
    let h = h.scale(&inv);
    if !h.is_hermitian() {
        return Err(internal("invariant form is not Hermitian"));
    }
    match definiteness(&h) {
        Some(df) if df.positive_semidefinite && df.nullity == 0 => Ok(h),
        Some(df) if !df.positive_semidefinite => {
            let hn = h.neg();
            match definiteness(&hn) {
                Some(d2) if d2.positive_semidefinite && d2.nullity == 0 => Ok(hn),
                _ => Err(internal("invariant form is indefinite")),
            }
        }
        _ => Err(internal("invariant form is degenerate")),
    }
}

impl TwistData {
    /// Prepare `C` for the minimizer `γ` of `λ₁`.
    pub fn new(space: &SymmetricSpace, gamma: &Weight, lambda1: Q) -> Result<Self> {
        let g = space.g();
        let dual = g.dual(gamma);
        let module = space.realization.module(&dual)?;
        let p_mats: Vec<Mat<Cq>> = space.p_coords.iter().map(|x| module.matrix(x)).collect();
        let form = invariant_form(space, module.as_ref())?;
        let h = to_dm(&form);
        let chol = h.cholesky().ok_or_else(|| Error::Precision("invariant form Cholesky failed".into()))?;
        let l = chol.l();
        let lh = l.adjoint();
        let lh_inv = lh.clone().try_inverse().ok_or_else(|| Error::Precision("Cholesky factor is singular".into()))?;
        let ortho = p_mats.iter().map(|m| &lh * to_dm(m) * &lh_inv).collect();
        let clifford = space.cm.gens.iter().map(to_dm).collect();
        let clifford_exact = space.cm.gens.clone();
        Ok(TwistData { gamma: gamma.clone(), lambda1, p_mats, form, clifford_exact, ortho, clifford })
    }

    fn c_float(&self, mu: &[Q]) -> DMatrix<C64> {
        let dv = self.ortho[0].nrows();
        let ds = self.clifford[0].nrows();
        let mut c = DMatrix::<C64>::zeros(dv * ds, dv * ds);
        for ((a, b), m) in self.ortho.iter().zip(&self.clifford).zip(mu) {
            c += a.kronecker(b) * C64::new(q_to_f64(m), 0.0);
        }
        c
    }

    /// Largest eigenvalue of `C²` in floating point.
    pub fn norm_sq_float(&self, mu: &[Q]) -> f64 {
        let c = self.c_float(mu);
        let herm = (&c + c.adjoint()) * C64::new(0.5, 0.0);
        let eig = herm.symmetric_eigenvalues();
        eig.iter().map(|x| x * x).fold(0.0, f64::max)
    }

    /// Exact test of `‖C‖² ≤ λ₁` with equality: `H(λ₁ - C²)` is PSD and singular.
    pub fn exact_equality(&self, mu: &[Q]) -> Option<bool> {
        let dv = self.form.rows();
        let ds = self.clifford[0].nrows();
        if dv * ds > EXACT_DIM_LIMIT {
            return None;
        }
        let mut c = Mat::<Cq>::zeros(dv * ds, dv * ds);
        for ((pm, gm), m) in self.p_mats.iter().zip(&self.clifford_exact).zip(mu) {
            c = c.add(&pm.kron(gm).scale(&Cq::from_q(m)));
        }
        let htot = self.form.kron(&Mat::identity(ds));
        let m = htot.mul(&Mat::scalar(dv * ds, &Cq::from_q(&self.lambda1)).sub(&c.mul(&c)));
        let df = definiteness(&m)?;
        Some(df.positive_semidefinite && df.nullity > 0)
    }
}

/// `C = Σ μ_i γ*(e_i) ⊗ c_i` on `V^{γ*} ⊗ Σ`, compared against `λ₁(D²)`.
pub fn vafa_witten_operator(twist: &TwistData, mu: &[Q]) -> Result<VafaWittenReport> {
    if mu.len() != twist.p_mats.len() {
        return Err(domain(format!("μ has {} entries, expected {}", mu.len(), twist.p_mats.len())));
    }
    let zero = qi(0);
    let one = qi(1);
    if let Some(bad) = mu.iter().find(|m| **m <= zero || **m > one) {
        return Err(domain(format!("μ entry {bad} is outside (0, 1]")));
    }
    let norm_sq = twist.norm_sq_float(mu);
    let all_one = mu.iter().all(|m| *m == one);
    let exact = if all_one { twist.exact_equality(mu) } else { None };
    let (norm_sq_exact, equality) = match exact {
        Some(true) => (Some(twist.lambda1.clone()), true),
        Some(false) => (None, false),
        None => (None, (norm_sq - q_to_f64(&twist.lambda1)).abs() <= TOLERANCE),
    };
    Ok(VafaWittenReport { gamma: twist.gamma.clone(), mu: mu.to_vec(), norm_sq, norm_sq_exact, lambda1: twist.lambda1.clone(), equality })
}

/// `count` μ-vectors with entries `k / 2^20`, `k` uniform in `[1, 2^20]`.
pub fn random_mu(n: usize, seed: u64, count: usize) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = 1i64 << 20;
    (0..count).map(|_| (0..n).map(|_| q(rng.gen_range(1..=den), den)).collect()).collect()
}

/// Run many samples, in parallel if requested; results keep input order.
pub fn vafa_witten_batch(twist: &TwistData, mus: &[Vec<Q>], exec: Exec) -> Result<Vec<VafaWittenReport>> {
    exec.map(mus, |mu| vafa_witten_operator(twist, mu)).into_iter().collect()
}

