use super::model::K;
use super::{rho_h_norm_sq, Berger, BergerSpinors, Check};
use crate::error::{internal, Error, Result};
use crate::exec::Exec;
use crate::field::{fmt_q, q, qi, Field, Q};
use crate::lie::{branch, build_root_system, CartanEmbedding, CasimirQueue, Family, ReductiveRootSystem, RootSystem, Weight};
use crate::linalg::{kernel, Mat};

/// Smallest admissible Casimir bound: the reductive value on `γ_{2,0}`.
pub fn min_bound() -> Q {
    q(249, 20)
}

/// A subspace given by kernel vectors, each with a 1 at its own free index
/// and 0 at the others.
struct Subspace {
    basis: Vec<Vec<K>>,
    free: Vec<usize>,
}

impl Subspace {
    fn from_kernel(basis: Vec<Vec<K>>) -> Self {
        let free = basis
            .iter()
            .map(|v| v.iter().position(|x| x.is_one()).expect("kernel vector has a unit entry"))
            .collect();
        Subspace { basis, free }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, v: &[K]) -> Result<Vec<K>> {
        let c: Vec<K> = self.free.iter().map(|&f| v[f].clone()).collect();
        let mut back = vec![K::zero(); v.len()];
        for (x, b) in c.iter().zip(&self.basis) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in back.iter_mut().zip(b) {
                *o = o.add(&x.mul(y));
            }
        }
        if back != v {
            return Err(internal("vector leaves an invariant subspace"));
        }
        Ok(c)
    }

    /// Matrix of `op` restricted to the subspace.
    fn restrict(&self, op: &Mat<K>) -> Result<Mat<K>> {
        let d = self.dim();
        let cols = self.basis.iter().map(|b| self.coords(&op.mul_vec(b))).collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_fn(d, d, |r, c| cols[c][r].clone()))
    }
}

/// `γ*` acting on `V^{γ*}`: `L₁, L₂, L₃, e₁..e₇` in that order.
struct DualRep {
    mats: Vec<Mat<K>>,
}

fn generators(berger: &Berger) -> Vec<Mat<K>> {
    berger.h_basis().into_iter().chain(berger.e.iter().cloned()).collect()
}

fn casimir_of(mats: &[Mat<K>], h_norm: &Q) -> Mat<K> {
    let d = mats[0].rows();
    let inv = K::rational(h_norm.recip());
    let mut out = Mat::zeros(d, d);
    for (i, m) in mats.iter().enumerate() {
        let sq = m.mul(m);
        out = out.sub(&if i < 3 { sq.scale(&inv) } else { sq });
    }
    out
}

/// `V^{γ*}` for `γ_{p,q}` with `(p,q) ∈ {(0,0),(1,0),(1,1),(2,0)}`: the trivial
/// rep, the dual of ℝ⁵, and Casimir eigenspaces of `(ℝ⁵)* ⊗ (ℝ⁵)*`.
fn dual_rep(berger: &Berger, pq: (i64, i64), h_norm: &Q) -> Result<DualRep> {
    let gens = generators(berger);
    let std: Vec<Mat<K>> = gens.iter().map(|x| x.transpose().neg()).collect();
    match pq {
        (0, 0) => Ok(DualRep { mats: vec![Mat::zeros(1, 1); 10] }),
        (1, 0) => Ok(DualRep { mats: std }),
        (p, qq) => {
            let id = Mat::identity(5);
            let sq: Vec<Mat<K>> = std.iter().map(|x| x.kron(&id).add(&id.kron(x))).collect();
            let value = p * p + 3 * p + qq * qq + qq;
            let omega = casimir_of(&sq, h_norm).sub(&Mat::scalar(25, &K::from_i64(value)));
            let sub = Subspace::from_kernel(kernel(&omega));
            if sub.dim() == 0 {
                return Err(internal(format!("no Casimir eigenspace {value} in the tensor square")));
            }
            let mats = sq.iter().map(|x| sub.restrict(x)).collect::<Result<Vec<_>>>()?;
            Ok(DualRep { mats })
        }
    }
}

/// `^γD^λ` data for one explicitly built `γ_{p,q}`.
#[derive(Clone, Debug)]
pub struct GammaBlock {
    pub p: i64,
    pub q: i64,
    pub rep_dim: usize,
    pub hom_dim: usize,
    /// `Σ γ*(e_i) ⊗ c_i` on `Hom_H(V^γ, Σ_ℝ)`.
    pub d0: Mat<K>,
    /// `1 ⊗ A` on the same space.
    pub da: Mat<K>,
    /// Casimir of `V^γ`, read off the matrices.
    pub casimir: Q,
    /// `(^γD^{1/3})² + Ω_H = ‖γ+ρ_G‖² - ‖ρ_H‖²` on all of `V^{γ*} ⊗ Σ_ℝ`.
    pub identity_holds: bool,
}

impl GammaBlock {
    /// `Σ γ*(e_i) ⊗ c_i + 3λ (1 ⊗ A)` on Hom.
    pub fn block(&self, lambda: &Q) -> Mat<K> {
        self.d0.add(&self.da.scale(&K::rational(qi(3) * lambda)))
    }

    pub fn formula(&self) -> Q {
        qi(self.p * self.p + 3 * self.p + self.q * self.q + self.q)
    }
}

/// Blocks for `γ_{0,0}, γ_{1,0}, γ_{1,1}, γ_{2,0}` plus the data for certificates.
#[derive(Clone, Debug)]
pub struct ReductiveBlocks {
    pub blocks: Vec<GammaBlock>,
    pub g: RootSystem,
    pub embedding: CartanEmbedding,
    /// `‖ρ_G‖² - ‖ρ_H‖²`.
    pub shift: Q,
    /// Largest `|A|` eigenvalue.
    pub a_norm: K,
}

fn build_block(berger: &Berger, sp: &BergerSpinors, pq: (i64, i64), h_norm: &Q, shift: &Q) -> Result<GammaBlock> {
    let rep = dual_rep(berger, pq, h_norm)?;
    let d = rep.mats[0].rows();
    let id8 = Mat::identity(8);
    let idd = Mat::identity(d);
    let diag: Vec<Mat<K>> = (0..3).map(|k| rep.mats[k].kron(&id8).add(&idd.kron(&sp.cm.sigma[k]))).collect();
    let n = 8 * d;
    let mut stacked = Mat::zeros(3 * n, n);
    for (k, m) in diag.iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                stacked[(k * n + r, c)] = m[(r, c)].clone();
            }
        }
    }
    let hom = Subspace::from_kernel(kernel(&stacked));
    let mut d0 = Mat::zeros(n, n);
    for i in 0..7 {
        d0 = d0.add(&rep.mats[3 + i].kron(&sp.cm.gens[i]));
    }
    let da = idd.kron(&sp.a);
    let cas = casimir_of(&rep.mats, h_norm)
        .scalar_value()
        .and_then(|c| c.as_q())
        .ok_or_else(|| internal(format!("Casimir of gamma_{:?} is not a rational scalar", pq)))?;
    let t = d0.add(&da);
    let omega_h = casimir_of(&diag, h_norm);
    let identity_holds = t.mul(&t).add(&omega_h) == Mat::scalar(n, &K::rational(&cas + shift));
    Ok(GammaBlock {
        p: pq.0,
        q: pq.1,
        rep_dim: d,
        hom_dim: hom.dim(),
        d0: hom.restrict(&d0)?,
        da: hom.restrict(&da)?,
        casimir: cas,
        identity_holds,
    })
}

impl ReductiveBlocks {
    pub fn new(berger: &Berger, sp: &BergerSpinors, exec: Exec) -> Result<Self> {
        let h_norm = crate::spin::metric(&berger.model.h[0], &berger.model.h[0]);
        let g = build_root_system(Family::B, 2, qi(1))?;
        let shift = g.norm_sq(&g.rho()) - rho_h_norm_sq(&berger.model);
        let a1 = build_root_system(Family::A, 1, qi(1))?;
        // ω₁ ↦ ℝ⁵ (spin 2), ω₂ ↦ spin representation (spin 3/2).
        let embedding = CartanEmbedding::new(g.clone(), ReductiveRootSystem::simple(a1), vec![vec![qi(4), qi(3)]])?;
        let targets = [(0, 0), (1, 0), (1, 1), (2, 0)];
        let blocks = exec
            .map(&targets, |pq| build_block(berger, sp, *pq, &h_norm, &shift))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let a_norm = K::new(qi(0), q(7, 10));
        Ok(ReductiveBlocks { blocks, g, embedding, shift, a_norm })
    }

    /// `(p, q)` to B₂ Dynkin labels.
    pub fn dynkin(p: i64, q: i64) -> Weight {
        Weight(vec![p - q, 2 * q])
    }

    /// Whether `V^γ|_{SO(3)}` contains ℝ or 𝕀.
    pub fn admissible(&self, w: &Weight) -> Result<bool> {
        let b = branch(w, &self.embedding)?;
        Ok(b.multiplicity(&Weight(vec![0])) + b.multiplicity(&Weight(vec![6])) > 0)
    }

    /// Casimir values, the full-tensor identity, Hom dimensions against
    /// branching, and `(^γD^{1/3})² = p²+3p+q²+q+49/20` on every nonzero block.
    pub fn check_reductive(&self) -> Check {
        let mut bad = Vec::new();
        if self.shift != q(49, 20) {
            bad.push(format!("|rho_G|^2 - |rho_H|^2 = {}", fmt_q(&self.shift)));
        }
        let third = q(1, 3);
        for b in &self.blocks {
            let tag = format!("gamma_({},{})", b.p, b.q);
            if b.casimir != b.formula() {
                bad.push(format!("{tag}: Casimir {} vs p^2+3p+q^2+q = {}", fmt_q(&b.casimir), fmt_q(&b.formula())));
            }
            if !b.identity_holds {
                bad.push(format!("{tag}: (D^(1/3))^2 + Omega_H is not {}", fmt_q(&(b.formula() + &self.shift))));
            }
            let w = Self::dynkin(b.p, b.q);
            let mult = branch(&w, &self.embedding)
                .map(|r| r.multiplicity(&Weight(vec![0])) + r.multiplicity(&Weight(vec![6])))
                .unwrap_or(u64::MAX);
            if mult != b.hom_dim as u64 {
                bad.push(format!("{tag}: Hom has dimension {} but branching predicts {mult}", b.hom_dim));
            }
            if b.hom_dim > 0 {
                let t = b.block(&third);
                let want = Mat::scalar(b.hom_dim, &K::rational(b.formula() + &self.shift));
                if t.mul(&t) != want {
                    bad.push(format!("{tag}: block square is not scalar {}", fmt_q(&(b.formula() + &self.shift))));
                }
            }
        }
        Check::new("reductive blocks equal p^2+3p+q^2+q+49/20", bad)
    }
}

/// `√n > r`, decided by squaring.
pub fn sqrt_exceeds(n: &Q, r: &K) -> bool {
    r.sign() < 0 || K::rational(n.clone()) > r.mul(r)
}

fn abs(x: &K) -> K {
    if x.sign() < 0 {
        x.neg()
    } else {
        x.clone()
    }
}

/// The comparisons behind the λ = ½ minimum: the `γ_{1,1}` bound
/// `13/(2√5) - 1/(4√5)` and the `p ≥ 2` bound `√249/(2√5) - 7/(4√5)` both
/// exceed `21/(4√5)`.
pub fn inequality_chain() -> bool {
    // 1/√5 = √5/5
    let over5 = |c: Q| K::new(qi(0), c / qi(5));
    let target = over5(q(21, 4));
    let first = over5(q(13, 2)).sub(&over5(q(1, 4))) > target;
    let second = sqrt_exceeds(&q(249, 20), &over5(q(7, 4)).add(&target));
    first && second
}

/// How one `γ_{p,q}` entered the minimum.
#[derive(Clone, Debug, PartialEq)]
pub enum Contribution {
    /// `Hom_H(V^γ, Σ_ℝ) = 0`.
    Empty,
    /// Exact eigenvalue of a scalar block.
    Exact(K),
    /// `|eigenvalue| ≥ √(reductive value) - |3λ-1| |A|` exceeds the minimum.
    Bounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DLambdaResult {
    pub lambda: Q,
    pub min_abs: K,
    pub min_sq: K,
    /// `(p, q, (^γD̃)², contribution)` for every `γ` up to the bound.
    pub contributions: Vec<(i64, i64, Q, Contribution)>,
    /// All `γ` with reductive value at least this were certified at once.
    pub tail_from: Q,
}

/// `λ₁((D^λ)²)`: exact blocks for the explicitly built `γ`, triangle-inequality
/// certificates for every other admissible `γ` with `‖γ+ρ‖² - ‖ρ_H‖² ≤ bound`
/// and for everything beyond.
pub fn d_lambda_minimum(blocks: &ReductiveBlocks, lambda: &Q, bound: &Q) -> Result<DLambdaResult> {
    if bound < &min_bound() {
        return Err(Error::IncompleteCertificate(format!(
            "Casimir bound {} is below 249/20 and does not cover gamma_(2,0)",
            fmt_q(bound)
        )));
    }
    let mu = qi(3) * lambda - qi(1);
    let slack = abs(&blocks.a_norm.mul(&K::rational(mu)));
    let mut min: Option<K> = None;
    let mut contributions = Vec::new();
    let mut deferred = Vec::new();
    for b in &blocks.blocks {
        let value = b.formula() + &blocks.shift;
        if b.hom_dim == 0 {
            contributions.push((b.p, b.q, value, Contribution::Empty));
            continue;
        }
        match b.block(lambda).scalar_value() {
            Some(x) => {
                let a = abs(&x);
                if min.as_ref().is_none_or(|m| &a < m) {
                    min = Some(a);
                }
                contributions.push((b.p, b.q, value, Contribution::Exact(x)));
            }
            None => deferred.push((b.p, b.q, value)),
        }
    }
    let m = min.ok_or_else(|| Error::IncompleteCertificate("no explicitly computed block is nonzero".into()))?;
    let need = m.add(&slack);
    let fail = |p: i64, qq: i64, v: &Q| {
        Error::IncompleteCertificate(format!(
            "gamma_({p},{qq}): sqrt({}) - |3 lambda - 1| |A| does not exceed {} at lambda = {}",
            fmt_q(v),
            m,
            fmt_q(lambda)
        ))
    };
    for (p, qq, v) in deferred {
        if !sqrt_exceeds(&v, &need) {
            return Err(fail(p, qq, &v));
        }
        contributions.push((p, qq, v, Contribution::Bounded));
    }
    let explicit: Vec<(i64, i64)> = blocks.blocks.iter().map(|b| (b.p, b.q)).collect();
    let mut tail_from = None;
    for (w, c) in CasimirQueue::new(&blocks.g) {
        if w.0[1] % 2 != 0 {
            continue;
        }
        let (qq, p) = (w.0[1] / 2, w.0[0] + w.0[1] / 2);
        let v = c + &blocks.shift;
        if &v > bound {
            if !sqrt_exceeds(&v, &need) {
                return Err(fail(p, qq, &v));
            }
            tail_from = Some(v);
            break;
        }
        if explicit.contains(&(p, qq)) {
            continue;
        }
        if !blocks.admissible(&w)? {
            contributions.push((p, qq, v, Contribution::Empty));
        } else if sqrt_exceeds(&v, &need) {
            contributions.push((p, qq, v, Contribution::Bounded));
        } else {
            return Err(fail(p, qq, &v));
        }
    }
    contributions.sort_by(|a, b| a.2.cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1))));
    Ok(DLambdaResult {
        lambda: lambda.clone(),
        min_sq: m.mul(&m),
        min_abs: m,
        contributions,
        tail_from: tail_from.expect("the queue is infinite"),
    })
}
