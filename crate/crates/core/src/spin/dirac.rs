use std::collections::{BTreeMap, BTreeSet, HashMap};


use super::space::{HomStrategy, SymmetricSpace};
use crate::error::{domain, internal, Result};
use crate::exec::Exec;
use crate::field::{Cq, Field, Q};
use crate::lie::Weight;
use crate::linalg::{Mat, RowEchelon};
use crate::repr::{unit, AlgElem, GtModule, Key, Module};

/// Basis vector `v_key ⊗ s` of `V ⊗ Σ`.
pub type TKey = (Key, usize);
pub type TVec = BTreeMap<TKey, Cq>;

fn add_to(out: &mut TVec, k: TKey, c: Cq) {
    match out.get_mut(&k) {
        Some(e) => {
            *e = Field::add(e, &c);
            if Field::is_zero(e) {
                out.remove(&k);
            }
        }
        None => {
            if !Field::is_zero(&c) {
                out.insert(k, c);
            }
        }
    }
}

/// `(x ⊗ 1 + 1 ⊗ s) t` where `x` acts on V and `s` is a matrix on Σ.
fn act_sum(module: &dyn Module, x: &AlgElem, s: &Mat<Cq>, t: &TVec) -> TVec {
    let mut out = TVec::new();
    for ((key, j), c) in t {
        for (k2, a) in module.apply(x, &unit(key.clone())) {
            add_to(&mut out, (k2, *j), Field::mul(c, &a));
        }
        for r in 0..s.rows() {
            let a = &s[(r, *j)];
            if !Field::is_zero(a) {
                add_to(&mut out, (key.clone(), r), Field::mul(c, a));
            }
        }
    }
    out
}

/// `(x ⊗ c) t`.
fn act_product(module: &dyn Module, x: &AlgElem, c: &Mat<Cq>, t: &TVec, out: &mut TVec) {
    let mut by_key: BTreeMap<&Key, Vec<(usize, &Cq)>> = BTreeMap::new();
    for ((key, j), a) in t {
        by_key.entry(key).or_default().push((*j, a));
    }
    for (key, parts) in by_key {
        let img = module.apply(x, &unit(key.clone()));
        if img.is_empty() {
            continue;
        }
        for (j, a) in parts {
            for r in 0..c.rows() {
                let b = &c[(r, j)];
                if Field::is_zero(b) {
                    continue;
                }
                let ab = Field::mul(a, b);
                for (k2, v) in &img {
                    add_to(out, (k2.clone(), r), Field::mul(&ab, v));
                }
            }
        }
    }
}

/// `(V^{γ*} ⊗ Σ)^H ≅ Hom_H(V^γ, Σ)` with a basis normalized at pivot coordinates.
pub struct HomSpace {
    pub gamma: Weight,
    pub dual: Weight,
    pub module: Box<dyn Module>,
    pub vectors: Vec<TVec>,
    /// `vectors[a]` has coefficient 1 at `pivots[a]` and 0 at every other pivot.
    pub pivots: Vec<TKey>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// Kernel of the 𝔥 action on the span of `cols` (assumed 𝔥-stable up to the kernel).
fn invariants(space: &SymmetricSpace, module: &dyn Module, cols: &[TKey]) -> Vec<(TKey, TVec)> {
    if cols.is_empty() {
        return Vec::new();
    }
    let mut ech = RowEchelon::new(cols.len());
    for (x, s) in space.h_coords.iter().zip(&space.cm.sigma) {
        let mut rows: BTreeMap<TKey, Vec<(usize, Cq)>> = BTreeMap::new();
        for (ci, col) in cols.iter().enumerate() {
            let mut t = TVec::new();
            t.insert(col.clone(), Cq::one());
            for (k, v) in act_sum(module, x, s, &t) {
                rows.entry(k).or_default().push((ci, v));
            }
        }
        for (_, entries) in rows {
            let mut dense = vec![Cq::zero(); cols.len()];
            for (ci, v) in entries {
                dense[ci] = Field::add(&dense[ci], &v);
            }
            ech.insert(dense);
            if ech.is_full() {
                return Vec::new();
            }
        }
    }
    ech.kernel()
        .into_iter()
        .map(|(free, v)| {
            let t: TVec = v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !Field::is_zero(c))
                .map(|(i, c)| (cols[i].clone(), c))
                .collect();
            (cols[free].clone(), t)
        })
        .collect()
}

/// H-invariants of `V^{γ*} ⊗ Σ`.
pub fn hom_space(space: &SymmetricSpace, gamma: &Weight, exec: Exec) -> Result<HomSpace> {
    let g = space.g();
    if gamma.len() != g.rank() || !gamma.is_dominant() {
        return Err(domain(format!("{gamma} is not a dominant weight of {}", g.name())));
    }
    let dual = g.dual(gamma);
    let emb = &space.embedding;
    let sw = space.spinor_weights();
    let parts: Vec<Vec<TKey>> = match space.strategy {
        HomStrategy::Generic => {
            let module = space.realization.module(&dual)?;
            let mut by_weight: HashMap<Weight, Vec<usize>> = HashMap::new();
            for (s, w) in sw.iter().enumerate() {
                by_weight.entry(w.neg()).or_default().push(s);
            }
            let mut cols = Vec::new();
            for key in module.basis() {
                let w = emb.restrict(&module.weight_of(&key))?;
                if let Some(ss) = by_weight.get(&w) {
                    cols.extend(ss.iter().map(|&s| (key.clone(), s)));
                }
            }
            vec![cols]
        }
        HomStrategy::UnitaryIsotypic => unitary_parts(space, &dual)?,
    };
    let module = space.realization.module(&dual)?;
    let found: Vec<Vec<(TKey, TVec)>> = exec.map(&parts, |cols| invariants(space, module.as_ref(), cols));
    let mut vectors = Vec::new();
    let mut pivots = Vec::new();
    for (p, v) in found.into_iter().flatten() {
        pivots.push(p);
        vectors.push(v);
    }
    Ok(HomSpace { gamma: gamma.clone(), dual, module, vectors, pivots })
}

/// Column sets for each spinor component, using the Gelfand–Tsetlin branching.
fn unitary_parts(space: &SymmetricSpace, dual: &Weight) -> Result<Vec<Vec<TKey>>> {
    let h = space.h();
    let gt = GtModule::new(dual);
    let n = gt.rank_n();
    let top = gt.top_row().to_vec();
    let total: i64 = top.iter().sum();
    let sw = space.spinor_weights();
    let distinct: BTreeSet<&Weight> = sw.iter().collect();
    if distinct.len() != sw.len() {
        return Err(internal("spinor weights are not multiplicity free"));
    }
    // Rows of length n-1 interlacing the top row.
    let mut rows: Vec<Vec<i64>> = vec![Vec::new()];
    for i in 0..n - 1 {
        let mut next = Vec::new();
        for r in &rows {
            for x in top[i + 1]..=top[i] {
                let mut r2 = r.clone();
                r2.push(x);
                next.push(r2);
            }
        }
        rows = next;
    }
    let mut parts = Vec::new();
    for (mu, _) in &space.spinor_decomposition().components {
        let want = h.dual(mu);
        let members: BTreeSet<Weight> = h.weight_multiplicities(mu)?.into_keys().collect();
        let spin_idx: Vec<usize> = (0..sw.len()).filter(|&s| members.contains(&sw[s])).collect();
        for nu in &rows {
            let mut labels: Vec<i64> = (0..n - 2).map(|k| nu[k] - nu[k + 1]).collect();
            labels.push(n as i64 * nu.iter().sum::<i64>() - (n as i64 - 1) * total);
            if Weight(labels) != want {
                continue;
            }
            let mut cols = Vec::new();
            for p in gt.patterns_with_rows(std::slice::from_ref(nu)) {
                cols.extend(spin_idx.iter().map(|&s| (p.clone(), s)));
            }
            parts.push(cols);
        }
    }
    Ok(parts)
}

/// Matrix of `^γD = Σ γ*(e_i) ⊗ c_i` on `Hom_H(V^γ, Σ)`.
#[derive(Clone, Debug)]
pub struct DiracBlock {
    pub gamma: Weight,
    pub hom_dim: usize,
    pub matrix: Mat<Cq>,
    /// `c_G^{γ*} + c_H^σ`.
    pub expected_square: Q,
    /// Scalar value of the square, when it is one.
    pub square_scalar: Option<Cq>,
}

impl DiracBlock {
    /// `‖D² - (c_G^{γ*} + c_H^σ) Id‖_max == 0`.
    pub fn parthasarathy_holds(&self) -> bool {
        self.square_scalar.as_ref().and_then(|s| s.as_q()).as_ref() == Some(&self.expected_square)
    }
}

/// `Σ γ*(e_i) ⊗ c_i` applied to an invariant vector.
fn apply_dirac(space: &SymmetricSpace, module: &dyn Module, t: &TVec) -> TVec {
    let mut out = TVec::new();
    for (x, c) in space.p_coords.iter().zip(&space.cm.gens) {
        act_product(module, x, c, t, &mut out);
    }
    out
}

pub fn dirac_block(space: &SymmetricSpace, gamma: &Weight, exec: Exec) -> Result<DiracBlock> {
    let hs = hom_space(space, gamma, exec)?;
    let d = hs.dim();
    if d == 0 {
        return Err(domain(format!("Hom_H(V^{gamma}, Σ) is zero on {}", space.id())));
    }
    let images: Vec<TVec> = exec.map(&hs.vectors, |v| apply_dirac(space, hs.module.as_ref(), v));
    let mut m = Mat::zeros(d, d);
    for (a, img) in images.iter().enumerate() {
        let mut recon = TVec::new();
        for (b, p) in hs.pivots.iter().enumerate() {
            let c = img.get(p).cloned().unwrap_or_else(Cq::zero);
            for (k, v) in &hs.vectors[b] {
                add_to(&mut recon, k.clone(), Field::mul(&c, v));
            }
            m[(b, a)] = c;
        }
        if recon != *img {
            return Err(internal(format!("{}: ^γD does not preserve the invariants for γ = {gamma}", space.id())));
        }
    }
    let sq = m.mul(&m);
    let expected_square = space.parthasarathy_value(gamma)?;
    Ok(DiracBlock { gamma: gamma.clone(), hom_dim: d, square_scalar: sq.scalar_value(), matrix: m, expected_square })
}
