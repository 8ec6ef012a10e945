//! Explicit matrix models of Lie algebras and their irreducible modules.
//!
//! A [`Realization`] is a concrete matrix Lie algebra together with a basis
//! of its complexification ("generators"); a [`Module`] is an irreducible
//! representation that knows how each generator acts on its basis. Vectors
//! are sparse maps from basis keys to Gaussian rationals.

mod gt;
mod hw;
mod realization;
mod sparse;

use std::collections::BTreeMap;

pub use gt::GtModule;
pub use hw::{root_recipe, HwModule};
pub use realization::{OrthogonalRealization, UnitaryRealization};
pub(crate) use realization::calibrate;
pub use sparse::SpMat;

use crate::error::Result;
use crate::field::{Cq, Field};
use crate::lie::{RootSystem, Weight};
use crate::linalg::Mat;

/// Basis key of a module vector.
pub type Key = Vec<i64>;

/// Sparse module vector.
pub type Vector = BTreeMap<Key, Cq>;

/// Lie algebra element as sparse coordinates in a realization's generators.
pub type AlgElem = Vec<(usize, Cq)>;

pub trait Module: Send + Sync {
    fn highest_weight(&self) -> &Weight;
    fn dim(&self) -> usize;
    /// Weight (Dynkin labels) of a basis key.
    fn weight_of(&self, key: &Key) -> Weight;
    /// Every basis key, in a fixed order.
    fn basis(&self) -> Vec<Key>;
    fn apply_generator(&self, gen: usize, v: &Vector) -> Vector;

    fn apply(&self, x: &AlgElem, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (g, c) in x {
            let w = self.apply_generator(*g, v);
            axpy(&mut out, c, &w);
        }
        out
    }

    /// Dense matrix of `x` in the order of [`Module::basis`].
    fn matrix(&self, x: &AlgElem) -> Mat<Cq> {
        let basis = self.basis();
        let index: BTreeMap<&Key, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = Mat::zeros(basis.len(), basis.len());
        for (j, k) in basis.iter().enumerate() {
            let img = self.apply(x, &unit(k.clone()));
            for (r, c) in img {
                m[(index[&r], j)] = c;
            }
        }
        m
    }
}

pub trait Realization: Send + Sync {
    /// Size of the defining matrices.
    fn matrix_size(&self) -> usize;
    fn root_system(&self) -> &RootSystem;
    /// Coordinates of a matrix in the generator basis; errors if it is not in the algebra.
    fn coords(&self, x: &Mat<Cq>) -> Result<AlgElem>;
    /// Coroot matrices `h_i^∨` of the simple roots.
    fn coroots(&self) -> &[Mat<Cq>];
    /// A real basis of the compact form.
    fn compact_basis(&self) -> Vec<Mat<Cq>>;
    fn module(&self, hw: &Weight) -> Result<Box<dyn Module>>;
}

pub fn unit(k: Key) -> Vector {
    let mut v = Vector::new();
    v.insert(k, Cq::one());
    v
}

/// `out += c * v`, dropping cancelled entries.
pub fn axpy(out: &mut Vector, c: &Cq, v: &Vector) {
    if Field::is_zero(c) {
        return;
    }
    for (k, x) in v {
        let t = Field::mul(c, x);
        match out.get_mut(k) {
            Some(e) => {
                *e = Field::add(e, &t);
                if Field::is_zero(e) {
                    out.remove(k);
                }
            }
            None => {
                out.insert(k.clone(), t);
            }
        }
    }
}

pub fn scale(v: &Vector, c: &Cq) -> Vector {
    if Field::is_zero(c) {
        return Vector::new();
    }
    v.iter().map(|(k, x)| (k.clone(), Field::mul(c, x))).collect()
}

pub fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    axpy(&mut out, &Field::neg(&Cq::one()), b);
    out
}
