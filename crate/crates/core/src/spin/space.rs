use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::clifford::{casimir_sigma, clifford_module, CliffordModule};
use super::pair::SymmetricPair;
use crate::error::{internal, Error, Result};
use crate::field::{q_to_i64, Cq, Field, Q};
use crate::lie::{branch, CartanEmbedding, ReductiveRootSystem, RootSystem, Weight};
use crate::linalg::{solve, Mat};
use crate::repr::{AlgElem, Realization};

/// Isotypic components of Σ under H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinorDecomposition {
    /// `(highest weight, multiplicity)`, ordered by torus charge, then labels.
    pub components: Vec<(Weight, u64)>,
    pub rank_difference: usize,
}

impl SpinorDecomposition {
    pub fn weights(&self) -> Vec<Weight> {
        self.components.iter().map(|(w, _)| w.clone()).collect()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.components.iter().any(|(c, _)| c == w)
    }
}

/// How invariants of `V^{γ*} ⊗ Σ` are located.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomStrategy {
    /// Zero-weight vectors of the full tensor product.
    Generic,
    /// `S(U(N-1)×U(1)) ⊂ SU(N)`: only Gelfand–Tsetlin patterns whose
    /// `(N-1)`-row carries the dual of a spinor component are considered.
    UnitaryIsotypic,
}

/// A compact symmetric space `G/H` with everything needed for Parthasarathy's formula.
#[derive(Clone)]
pub struct SymmetricSpace {
    pub pair: SymmetricPair<Cq>,
    pub cm: CliffordModule<Cq>,
    pub realization: Arc<dyn Realization>,
    pub embedding: CartanEmbedding,
    /// Matrices of the H Cartan generators dual to the H weight labels.
    pub h_cartan: Vec<Mat<Cq>>,
    pub strategy: HomStrategy,
    pub(crate) p_coords: Vec<AlgElem>,
    pub(crate) h_coords: Vec<AlgElem>,
    /// H-weight of each standard basis vector of Σ.
    pub(crate) spinor_weights: Vec<Weight>,
    decomposition: SpinorDecomposition,
    casimir_sigma: Q,
}

impl std::fmt::Debug for SymmetricSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymmetricSpace")
            .field("id", &self.pair.id)
            .field("g", &self.g().name())
            .field("h", &self.h().to_string())
            .finish()
    }
}

/// Express each `targets[k]` in the basis `basis`, requiring rational coefficients.
fn coefficients(basis: &[Mat<Cq>], target: &Mat<Cq>) -> Result<Vec<Q>> {
    let n = target.rows() * target.cols();
    let a = Mat::from_fn(n, basis.len(), |r, c| basis[c].entries()[r].clone());
    let x = solve(&a, target.entries()).ok_or_else(|| internal("H Cartan generator is not in the G Cartan subalgebra"))?;
    x.iter().map(|c| c.as_q().ok_or_else(|| internal("Cartan embedding has a non-real coefficient"))).collect()
}

impl SymmetricSpace {
    pub fn new(
        pair: SymmetricPair<Cq>,
        realization: Arc<dyn Realization>,
        h: ReductiveRootSystem,
        h_cartan: Vec<Mat<Cq>>,
        strategy: HomStrategy,
    ) -> Result<Self> {
        if h_cartan.len() != h.rank() {
            return Err(Error::Config(format!("{}: {} Cartan generators for H of rank {}", pair.id, h_cartan.len(), h.rank())));
        }
        let g = realization.root_system().clone();
        if g.rank() - h.rank() != pair.rank_difference {
            return Err(Error::Config(format!("{}: rank difference mismatch", pair.id)));
        }
        let matrix = h_cartan
            .iter()
            .map(|x| coefficients(realization.coroots(), x))
            .collect::<Result<Vec<_>>>()?;
        let embedding = CartanEmbedding::new(g, h, matrix)?;
        let cm = clifford_module(&pair)?;
        let cas = casimir_sigma(&pair, &cm)?
            .as_q()
            .ok_or_else(|| internal("isotropy Casimir is not real"))?;
        let p_coords = pair.p_basis.iter().map(|e| realization.coords(e)).collect::<Result<Vec<_>>>()?;
        let h_coords = pair.h_basis.iter().map(|f| realization.coords(f)).collect::<Result<Vec<_>>>()?;

        let sig: Vec<Mat<Cq>> = h_cartan.iter().map(|x| cm.sigma_of(&pair, x)).collect();
        let d = cm.dim();
        let mut spinor_weights = Vec::with_capacity(d);
        for s in 0..d {
            let mut labels = Vec::with_capacity(sig.len());
            for m in &sig {
                if !m.is_diagonal() {
                    return Err(Error::Precision(format!("{}: isotropy Cartan does not act diagonally on Σ", pair.id)));
                }
                let v = m[(s, s)]
                    .as_q()
                    .and_then(|x| q_to_i64(&x))
                    .ok_or_else(|| Error::Precision(format!("{}: spinor weight is not integral", pair.id)))?;
                labels.push(v);
            }
            spinor_weights.push(Weight(labels));
        }
        let mut space = SymmetricSpace {
            pair,
            cm,
            realization,
            embedding,
            h_cartan,
            strategy,
            p_coords,
            h_coords,
            spinor_weights,
            decomposition: SpinorDecomposition { components: Vec::new(), rank_difference: 0 },
            casimir_sigma: cas,
        };
        space.decomposition = space.decompose_spinors()?;
        Ok(space)
    }

    pub fn id(&self) -> &str {
        &self.pair.id
    }

    pub fn g(&self) -> &RootSystem {
        self.embedding.g()
    }

    pub fn h(&self) -> &ReductiveRootSystem {
        self.embedding.h()
    }

    pub fn dim(&self) -> usize {
        self.pair.dim_p()
    }

    pub fn spinor_dim(&self) -> usize {
        self.cm.dim()
    }

    /// `c_H^σ`.
    pub fn casimir_sigma(&self) -> &Q {
        &self.casimir_sigma
    }

    pub fn spinor_decomposition(&self) -> &SpinorDecomposition {
        &self.decomposition
    }

    /// H-weights of the standard basis of Σ.
    pub fn spinor_weights(&self) -> &[Weight] {
        &self.spinor_weights
    }

    fn decompose_spinors(&self) -> Result<SpinorDecomposition> {
        let h = self.h();
        let mut multiset: BTreeMap<Weight, u64> = BTreeMap::new();
        for w in &self.spinor_weights {
            *multiset.entry(w.clone()).or_insert(0) += 1;
        }
        let map = h.decompose(&multiset)?;
        let ss = h.semisimple_rank();
        let mut components: Vec<(Weight, u64)> = map.into_iter().collect();
        components.sort_by(|(a, _), (b, _)| a.0[ss..].cmp(&b.0[ss..]).then_with(|| a.cmp(b)));
        let k = self.pair.rank_difference;
        let want = 1u64 << (k / 2);
        if components.iter().any(|(_, m)| *m != want) {
            return Err(internal(format!("{}: spinor multiplicities differ from 2^[k/2] = {want}", self.id())));
        }
        let total: u64 = components.iter().map(|(w, m)| m * h.dimension(w).unwrap_or(0)).sum();
        if total as usize != self.spinor_dim() {
            return Err(internal(format!("{}: spinor components add up to dimension {total}", self.id())));
        }
        Ok(SpinorDecomposition { components, rank_difference: k })
    }

    /// Spinor components occurring in `V^γ|_H`; nonempty iff `Hom_H(V^γ, Σ) ≠ 0`.
    pub fn admissible_components(&self, gamma: &Weight) -> Result<Vec<Weight>> {
        let b = branch(gamma, &self.embedding)?;
        Ok(self.decomposition.weights().into_iter().filter(|w| b.multiplicity(w) > 0).collect())
    }

    /// `c_G^{γ*} + c_H^σ`.
    pub fn parthasarathy_value(&self, gamma: &Weight) -> Result<Q> {
        let g = self.g();
        Ok(g.casimir(&g.dual(gamma))? + &self.casimir_sigma)
    }

    /// `dim Hom_H(ℂ, Σ ⊗ σ₁*)`, by characters.
    pub fn twisted_kernel_dimension(&self, sigma1: &Weight) -> Result<u64> {
        if self.pair.rank_difference != 0 {
            return Err(Error::Unsupported(format!("{}: kernel dimension needs rk G = rk H", self.id())));
        }
        let h = self.h();
        if sigma1.len() != h.rank() || !h.is_dominant(sigma1) {
            return Err(crate::error::domain(format!("{sigma1} is not a dominant weight of {h}")));
        }
        let dual = h.weight_multiplicities(&h.dual(sigma1))?;
        let mut prod: BTreeMap<Weight, u64> = BTreeMap::new();
        for s in &self.spinor_weights {
            for (w, m) in &dual {
                *prod.entry(s.add(w)).or_insert(0) += m;
            }
        }
        let parts = h.decompose(&prod)?;
        Ok(parts.get(&Weight::zero(h.rank())).copied().unwrap_or(0))
    }
}
