use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{ReductiveRootSystem, RootSystem, Weight};
use crate::error::{domain, Error, Result};
use crate::field::{qi, Q};

/// Linear map from 𝔤-weights to 𝔥-weights, both in Dynkin labels.
///
/// `matrix[k][i]` is the pairing of the `i`-th fundamental 𝔤-weight with the
/// `k`-th 𝔥 Cartan generator.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanEmbedding {
    g: RootSystem,
    h: ReductiveRootSystem,
    matrix: Vec<Vec<Q>>,
}

impl CartanEmbedding {
    pub fn new(g: RootSystem, h: ReductiveRootSystem, matrix: Vec<Vec<Q>>) -> Result<Self> {
        if matrix.len() != h.rank() || matrix.iter().any(|r| r.len() != g.rank()) {
            return Err(Error::Config(format!("embedding matrix must be {}x{}", h.rank(), g.rank())));
        }
        let emb = CartanEmbedding { g, h, matrix };
        for a in emb.g.positive_root_weights() {
            emb.restrict(a).map_err(|_| Error::Embedding(format!("root {a} restricts to a non-integral weight")))?;
        }
        Ok(emb)
    }

    pub fn g(&self) -> &RootSystem {
        &self.g
    }

    pub fn h(&self) -> &ReductiveRootSystem {
        &self.h
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    /// Integer matrix, when all entries are integers.
    pub fn integer_matrix(&self) -> Option<Vec<Vec<i64>>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
            .collect()
    }

    pub fn restrict(&self, w: &Weight) -> Result<Weight> {
        if w.len() != self.g.rank() {
            return Err(domain(format!("weight {w} has wrong length for {}", self.g.name())));
        }
        let mut out = Vec::with_capacity(self.matrix.len());
        for row in &self.matrix {
            let mut s = Q::zero();
            for (c, &x) in row.iter().zip(&w.0) {
                if x != 0 && !c.is_zero() {
                    s += c * qi(x);
                }
            }
            if !s.is_integer() {
                return Err(Error::Embedding(format!("weight {w} restricts to a non-integral weight")));
            }
            out.push(s.to_integer().to_i64().unwrap());
        }
        Ok(Weight(out))
    }
}

/// Decomposition of a restricted irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingResult {
    pub components: BTreeMap<Weight, u64>,
    /// Rows of the Cartan embedding used, as exact strings.
    pub embedding: Vec<Vec<String>>,
}

impl BranchingResult {
    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.components.get(w).copied().unwrap_or(0)
    }
}

/// Restrict `V^γ` along `emb` and split it into 𝔥-irreducibles.
pub fn branch(g: &Weight, emb: &CartanEmbedding) -> Result<BranchingResult> {
    let wm = emb.g.weight_multiplicities(g)?;
    let mut restricted: BTreeMap<Weight, u64> = BTreeMap::new();
    for (w, m) in wm {
        *restricted.entry(emb.restrict(&w)?).or_insert(0) += m;
    }
    let components = emb.h.decompose(&restricted)?;
    let total: u64 = components.iter().map(|(w, m)| m * emb.h.dimension(w).unwrap_or(0)).sum();
    let dim = emb.g.dimension(g)?;
    if total != dim {
        return Err(Error::Embedding(format!("branching of {g} has total dimension {total}, expected {dim}")));
    }
    let embedding = emb.matrix.iter().map(|r| r.iter().map(crate::field::fmt_q).collect()).collect();
    Ok(BranchingResult { components, embedding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_root_system, Family};

    #[test]
    fn so5_to_so3_principal() {
        let b2 = build_root_system(Family::B, 2, qi(1)).unwrap();
        let a1 = build_root_system(Family::A, 1, qi(1)).unwrap();
        let emb = CartanEmbedding::new(b2, ReductiveRootSystem::simple(a1), vec![vec![qi(4), qi(3)]]).unwrap();
        let r = branch(&Weight(vec![1, 0]), &emb).unwrap();
        assert_eq!(r.components, BTreeMap::from([(Weight(vec![4]), 1)]));
        let r = branch(&Weight(vec![0, 0]), &emb).unwrap();
        assert_eq!(r.components, BTreeMap::from([(Weight(vec![0]), 1)]));
    }

    #[test]
    fn wrong_embedding_detected() {
        let b2 = build_root_system(Family::B, 2, qi(1)).unwrap();
        let a2 = build_root_system(Family::A, 2, qi(1)).unwrap();
        // Not induced by a Lie algebra map; the weights do not form characters.
        let id = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        let emb = CartanEmbedding::new(b2, ReductiveRootSystem::simple(a2), id).unwrap();
        assert!(matches!(branch(&Weight(vec![1, 0]), &emb), Err(Error::Embedding(_))));
    }
}
