//! SO(5)/SO(3) with the 5-dimensional isotropy representation, over ℚ(√5).

mod dlambda;
mod model;
mod octonion;
mod qsqrt5;

pub use dlambda::{
    d_lambda_minimum, inequality_chain, min_bound, sqrt_exceeds, Contribution, DLambdaResult, GammaBlock, ReductiveBlocks,
};
pub use model::{cross, kron_generators, lift, solve_frame, solve_intertwiner, BergerFrame, FrameFixture, So5Model, K, SHIPPED_FIXTURE};
pub use octonion::OctonionTable;
pub use qsqrt5::QSqrt5;

use crate::error::{internal, Error, Result};
use crate::field::{q, qi, Field, Q};
use crate::linalg::{kernel, Mat};
use crate::spin::{metric, CliffordModule, SymmetricPair};

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Failing items with their largest absolute residual, when any.
    pub residuals: Vec<String>,
}

impl Check {
    fn new(name: &str, residuals: Vec<String>) -> Self {
        Check { name: name.to_string(), passed: residuals.is_empty(), residuals }
    }
}

/// The Berger model built from a frame; nothing is validated until asked.
#[derive(Clone, Debug)]
pub struct Berger {
    pub model: So5Model,
    pub frame: BergerFrame,
    pub table: OctonionTable,
    /// `e₁..e₇`.
    pub e: Vec<Mat<K>>,
}

/// Σ_ℝ with the aligned Clifford action and the operator `A`.
#[derive(Clone, Debug)]
pub struct BergerSpinors {
    pub pair: SymmetricPair<K>,
    pub cm: CliffordModule<K>,
    /// `c_ijk = ⟨[e_i, e_j]_𝔭, e_k⟩`.
    pub structure: Vec<Vec<Vec<K>>>,
    pub a: Mat<K>,
}

impl Berger {
    pub fn new(frame: BergerFrame) -> Result<Self> {
        let model = So5Model::new()?;
        let e = frame.basis(&model);
        Ok(Berger { model, frame, table: OctonionTable::new(), e })
    }

    pub fn shipped() -> Result<Self> {
        Self::new(BergerFrame::shipped()?)
    }

    pub fn h_basis(&self) -> Vec<Mat<K>> {
        self.model.h.iter().map(lift).collect()
    }

    /// Validated pair; fails on a corrupted frame.
    pub fn pair(&self) -> Result<SymmetricPair<K>> {
        SymmetricPair::new("Berger", self.h_basis(), self.e.clone(), 1, false)
    }

    /// `⟨e_i, e_j⟩ = δ_ij`, listing violations.
    pub fn check_orthonormal(&self) -> Check {
        let mut bad = Vec::new();
        for i in 0..7 {
            for j in i..7 {
                let g = metric(&self.e[i], &self.e[j]);
                let want = if i == j { K::one() } else { K::zero() };
                if g != want {
                    bad.push(format!("<e{},e{}> = {g}", i + 1, j + 1));
                }
            }
            for (k, l) in self.model.h.iter().enumerate() {
                let g = metric(&self.e[i], &lift(l));
                if !g.is_zero() {
                    bad.push(format!("<e{},L{}> = {g}", i + 1, k + 1));
                }
            }
        }
        Check::new("frame orthonormal and orthogonal to h", bad)
    }

    /// `[v, w]_𝔭 = (1/√5) v *_𝕀 w` on all 49 basis pairs.
    pub fn check_lemma9(&self) -> Check {
        let fails = model::lemma9_failures(&self.model, &self.e, &self.table);
        Check::new(
            "bracket on p is octonion product / sqrt5",
            fails.into_iter().map(|((i, j), r)| format!("(e{i},e{j}): residual {r:.3e}")).collect(),
        )
    }

    /// `c_ijk = -(1/√5) Re((e_i * e_j) * e_k)` for all 343 triples, and antisymmetry.
    pub fn check_structure_tensor(&self) -> Check {
        let inv = K::sqrt5().inv().expect("√5 ≠ 0");
        let mut bad = Vec::new();
        let c = self.structure();
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    let mut x = vec![qi(0); 8];
                    x[i + 1] = qi(1);
                    let mut y = vec![qi(0); 8];
                    y[j + 1] = qi(1);
                    let mut z = vec![qi(0); 8];
                    z[k + 1] = qi(1);
                    let re = self.table.mul(&self.table.mul(&x, &y), &z)[0].clone();
                    let want = K::rational(-re).mul(&inv);
                    if c[i][j][k] != want || c[j][i][k] != c[i][j][k].neg() || c[i][k][j] != c[i][j][k].neg() {
                        bad.push(format!("c[{}][{}][{}] = {} (want {want})", i + 1, j + 1, k + 1, c[i][j][k]));
                    }
                }
            }
        }
        Check::new("structure tensor is the octonion 3-form", bad)
    }

    pub fn structure(&self) -> Vec<Vec<Vec<K>>> {
        (0..7)
            .map(|i| (0..7).map(|j| (0..7).map(|k| metric(&self.e[i].commutator(&self.e[j]), &self.e[k])).collect()).collect())
            .collect()
    }

    /// `Ψ c_i = R_i Ψ` for the stored intertwiner, with `ΨᵀΨ` a positive scalar.
    pub fn check_lemma10(&self) -> Check {
        let psi = &self.frame.psi;
        let mut bad = Vec::new();
        for (i, c) in self.frame.oriented_generators().iter().enumerate() {
            let r = self.table.right_mult(i + 1);
            let d = psi.mul(c).sub(&r.mul(psi));
            if !d.is_zero() {
                let m = d.entries().iter().map(|x| crate::field::q_to_f64(x).abs()).fold(0.0, f64::max);
                bad.push(format!("c{}: residual {m:.3e}", i + 1));
            }
        }
        let gram = psi.transpose().mul(psi);
        match gram.scalar_value() {
            Some(s) if crate::field::q_sign(&s) > 0 => {}
            _ => bad.push("Psi is not a multiple of an isometry".into()),
        }
        Check::new("Clifford action is right Cayley multiplication", bad)
    }

    /// The aligned module: `Ψ c_i Ψ⁻¹` with the isotropy action, `c_ijk` and `A`.
    pub fn spinors(&self) -> Result<BergerSpinors> {
        let pair = self.pair()?;
        let psi = &self.frame.psi;
        let inv = psi.inverse().ok_or_else(|| Error::SearchFailure("Berger fixture: Psi is singular".into()))?;
        let gens: Vec<Mat<K>> = self.frame.oriented_generators().iter().map(|c| lift(&psi.mul(c).mul(&inv))).collect();
        let cm = CliffordModule::from_generators(&pair, gens)?;
        let structure = self.structure();
        let a = operator_a_cubic(&cm, &structure);
        Ok(BergerSpinors { pair, cm, structure, a })
    }
}

/// `(1/12) Σ c_ijk c_i c_j c_k`.
pub fn operator_a_cubic(cm: &CliffordModule<K>, c: &[Vec<Vec<K>>]) -> Mat<K> {
    let mut out = Mat::zeros(8, 8);
    for i in 0..7 {
        for j in 0..7 {
            let cij = cm.gens[i].mul(&cm.gens[j]);
            for k in 0..7 {
                if !c[i][j][k].is_zero() {
                    out = out.add(&cij.mul(&cm.gens[k]).scale(&c[i][j][k]));
                }
            }
        }
    }
    out.scale(&K::rational(q(1, 12)))
}

/// `ãd_𝔭(X) = ¼ Σ ⟨[X, e_i]_𝔭, e_j⟩ c_i c_j`.
pub fn ad_tilde(cm: &CliffordModule<K>, pair: &SymmetricPair<K>, x: &Mat<K>) -> Mat<K> {
    let mut out = Mat::zeros(8, 8);
    for i in 0..7 {
        let br = x.commutator(&pair.p_basis[i]);
        for j in 0..7 {
            let v = metric(&br, &pair.p_basis[j]);
            if !v.is_zero() {
                out = out.add(&cm.gens[i].mul(&cm.gens[j]).scale(&v));
            }
        }
    }
    out.scale(&K::rational(q(1, 4)))
}

impl BergerSpinors {
    /// `(1/3) Σ c_i ãd_𝔭(e_i)`.
    pub fn operator_a_adjoint(&self) -> Mat<K> {
        let mut out = Mat::zeros(8, 8);
        for i in 0..7 {
            out = out.add(&self.cm.gens[i].mul(&ad_tilde(&self.cm, &self.pair, &self.pair.p_basis[i])));
        }
        out.scale(&K::rational(q(1, 3)))
    }

    /// `(1/(2√5)) diag(7, -1, …, -1)` on `ℝ ⊕ 𝕀`.
    pub fn expected_a() -> Mat<K> {
        let s = K::new(qi(0), q(1, 10));
        let mut m = Mat::scalar(8, &s.neg());
        m[(0, 0)] = s.mul(&K::from_i64(7));
        m
    }

    /// Both formulas for `A`, symmetry, trace, equivariance and the spectrum.
    pub fn check_operator_a(&self) -> Check {
        let mut bad = Vec::new();
        let alt = self.operator_a_adjoint();
        if alt != self.a {
            bad.push("cubic and adjoint formulas differ".into());
        }
        if self.a.transpose() != self.a {
            bad.push("A is not symmetric".into());
        }
        if !self.a.trace().is_zero() {
            bad.push(format!("tr A = {}", self.a.trace()));
        }
        for (k, s) in self.cm.sigma.iter().enumerate() {
            if !s.commutator(&self.a).is_zero() {
                bad.push(format!("A does not commute with sigma(L{})", k + 1));
            }
        }
        let want = Self::expected_a();
        if self.a != want {
            let d = self.a.sub(&want);
            let m = d.entries().iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
            bad.push(format!("A differs from diag(7,-1,...)/(2 sqrt5) by {m:.3e}"));
        }
        Check::new("operator A", bad)
    }

    /// SO(3) labels `2j` of Σ_ℝ with multiplicities, from kernel dimensions of
    /// `σ(L₃)² + m²`.
    pub fn decomposition(&self) -> Result<Vec<(i64, u64)>> {
        let s = &self.cm.sigma[2];
        let s2 = s.mul(s);
        let mut mult = Vec::new();
        let mut total = 0usize;
        for m in 0i64.. {
            if total >= 8 {
                break;
            }
            let k = kernel(&s2.add(&Mat::scalar(8, &K::from_i64(m * m)))).len();
            if m > 0 && !k.is_multiple_of(2) {
                return Err(internal("σ(L₃) has an unpaired nonzero eigenvalue"));
            }
            total += k;
            mult.push(if m == 0 { k as u64 } else { (k / 2) as u64 });
            if m > 8 {
                return Err(internal("σ(L₃) eigenvalues are not integral"));
            }
        }
        mult.push(0);
        Ok((0..mult.len() - 1)
            .filter_map(|j| {
                let c = mult[j] - mult[j + 1];
                (c > 0).then_some((2 * j as i64, c))
            })
            .collect())
    }
}

/// `‖ρ_H‖²` for the isotropy SO(3): `1/(4 ‖L‖²)`.
pub fn rho_h_norm_sq(model: &So5Model) -> Q {
    let n = metric(&model.h[2], &model.h[2]);
    (qi(4) * n).recip()
}

/// One line per identity, for reports.
#[derive(Clone, Debug)]
pub struct BergerReport {
    pub checks: Vec<Check>,
    pub decomposition: Vec<(i64, u64)>,
    /// `(λ, min eigenvalue², expected (441/20) λ²)`.
    pub sweep: Vec<(Q, K, Q)>,
    pub monotone: Option<bool>,
}

impl BergerReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// λ values `45/100, …, 55/100`.
pub fn sweep_lambdas() -> Vec<Q> {
    (45..=55).map(|k| q(k, 100)).collect()
}

/// Every exact identity of the Berger suite. Failures are collected, not raised,
/// so a corrupted frame yields an itemized report.
pub fn verify(berger: &Berger, exec: crate::Exec) -> BergerReport {
    let mut checks = vec![
        Check::new("octonion table", if berger.table.check() { vec![] } else { vec!["alternativity or norm fails".into()] }),
        berger.check_orthonormal(),
        berger.check_lemma9(),
        berger.check_structure_tensor(),
        berger.check_lemma10(),
    ];
    let mut report = BergerReport { checks: Vec::new(), decomposition: Vec::new(), sweep: Vec::new(), monotone: None };
    let spinors = match berger.spinors() {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::new("spinor module", vec![e.to_string()]));
            report.checks = checks;
            return report;
        }
    };
    checks.push(spinors.check_operator_a());
    match spinors.decomposition() {
        Ok(d) => {
            let want = vec![(0, 1), (6, 1)];
            let bad = if d == want { vec![] } else { vec![format!("got {d:?}")] };
            report.decomposition = d;
            checks.push(Check::new("spinors split as R + I (SO(3) labels 0 and 6)", bad));
        }
        Err(e) => checks.push(Check::new("spinor decomposition", vec![e.to_string()])),
    }
    let blocks = match ReductiveBlocks::new(berger, &spinors, exec) {
        Ok(b) => b,
        Err(e) => {
            checks.push(Check::new("reductive blocks", vec![e.to_string()]));
            report.checks = checks;
            return report;
        }
    };
    checks.push(blocks.check_reductive());
    let chain = inequality_chain();
    checks.push(Check::new(
        "bounds 13/(2 sqrt5) - 1/(4 sqrt5) and sqrt249/(2 sqrt5) - 7/(4 sqrt5) exceed 21/(4 sqrt5)",
        if chain { vec![] } else { vec!["comparison fails".into()] },
    ));
    let bound = min_bound();
    let mut bad = Vec::new();
    for lam in sweep_lambdas() {
        match d_lambda_minimum(&blocks, &lam, &bound) {
            Ok(r) => {
                let want = q(441, 20) * &lam * &lam;
                if r.min_sq != K::rational(want.clone()) {
                    bad.push(format!("lambda = {}: got {}", crate::field::fmt_q(&lam), r.min_sq));
                }
                report.sweep.push((lam, r.min_sq, want));
            }
            Err(e) => bad.push(format!("lambda = {}: {e}", crate::field::fmt_q(&lam))),
        }
    }
    checks.push(Check::new("min eigenvalue^2 of D^lambda is (441/20) lambda^2", bad));
    let mono = match (d_lambda_minimum(&blocks, &q(51, 100), &bound), d_lambda_minimum(&blocks, &q(1, 2), &bound)) {
        (Ok(a), Ok(b)) => Some(a.min_sq > b.min_sq),
        _ => None,
    };
    checks.push(Check::new(
        "lambda1 of (D^(51/100))^2 exceeds lambda1 of (D^(1/2))^2",
        if mono == Some(true) { vec![] } else { vec![format!("{mono:?}")] },
    ));
    report.monotone = mono;
    report.checks = checks;
    report
}
