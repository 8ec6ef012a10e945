use crate::error::{internal, Result};
use crate::field::{q, Field};
use crate::linalg::Mat;

/// Metric `⟨x, y⟩ = -½ tr(xy)`.
pub fn metric<F: Field>(x: &Mat<F>, y: &Mat<F>) -> F {
    x.trace_product(y).mul(&F::from_q(&q(-1, 2)))
}

/// Matrix realization of a reductive pair 𝔤 = 𝔥 ⊕ 𝔭.
///
/// The 𝔭 basis is orthonormal; the 𝔥 basis need not be, and its Gram
/// matrix is kept alongside.
#[derive(Clone, Debug)]
pub struct SymmetricPair<F> {
    pub id: String,
    pub h_basis: Vec<Mat<F>>,
    pub h_gram: Mat<F>,
    pub p_basis: Vec<Mat<F>>,
    /// `h_struct[i][j][k] = ⟨[e_i, e_j], f_k⟩`.
    pub h_struct: Vec<Vec<Vec<F>>>,
    /// `p_struct[i][j][l] = ⟨[e_i, e_j], e_l⟩`.
    pub p_struct: Vec<Vec<Vec<F>>>,
    /// `rk G - rk H`.
    pub rank_difference: usize,
    pub symmetric: bool,
}

impl<F: Field> SymmetricPair<F> {
    /// Assemble and validate a pair.
    pub fn new(
        id: &str,
        h_basis: Vec<Mat<F>>,
        p_basis: Vec<Mat<F>>,
        rank_difference: usize,
        symmetric: bool,
    ) -> Result<Self> {
        let m = h_basis.len();
        let n = p_basis.len();
        let h_gram = Mat::from_fn(m, m, |a, b| metric(&h_basis[a], &h_basis[b]));
        let mut h_struct = vec![vec![vec![F::zero(); m]; n]; n];
        let mut p_struct = vec![vec![vec![F::zero(); n]; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let br = p_basis[i].commutator(&p_basis[j]);
                for k in 0..m {
                    let v = metric(&br, &h_basis[k]);
                    h_struct[j][i][k] = v.neg();
                    h_struct[i][j][k] = v;
                }
                for l in 0..n {
                    let v = metric(&br, &p_basis[l]);
                    p_struct[j][i][l] = v.neg();
                    p_struct[i][j][l] = v;
                }
            }
        }
        let pair = SymmetricPair { id: id.to_string(), h_basis, h_gram, p_basis, h_struct, p_struct, rank_difference, symmetric };
        pair.validate()?;
        Ok(pair)
    }

    pub fn dim_p(&self) -> usize {
        self.p_basis.len()
    }

    pub fn dim_h(&self) -> usize {
        self.h_basis.len()
    }

    fn all(&self) -> Vec<&Mat<F>> {
        self.h_basis.iter().chain(self.p_basis.iter()).collect()
    }

    /// Orthonormality of 𝔭, 𝔭 ⊥ 𝔥, closure of 𝔥, Jacobi, Ad-invariance and
    /// (for symmetric pairs) `[𝔭, 𝔭] ⊂ 𝔥`.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim_p();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { F::one() } else { F::zero() };
                if metric(&self.p_basis[i], &self.p_basis[j]) != want {
                    return Err(internal(format!("{}: 𝔭 basis is not orthonormal at ({i},{j})", self.id)));
                }
            }
            for f in &self.h_basis {
                if !metric(&self.p_basis[i], f).is_zero() {
                    return Err(internal(format!("{}: 𝔭 is not orthogonal to 𝔥", self.id)));
                }
            }
        }
        if self.h_gram.inverse().is_none() {
            return Err(internal(format!("{}: 𝔥 basis is degenerate", self.id)));
        }
        if self.symmetric {
            for i in 0..n {
                for j in 0..n {
                    if self.p_struct[i][j].iter().any(|x| !x.is_zero()) {
                        return Err(internal(format!("{}: [𝔭,𝔭] has a 𝔭-component", self.id)));
                    }
                }
            }
        }
        // 𝔥 closes: [f_a, f_b] has no 𝔭-component.
        for a in 0..self.dim_h() {
            for b in a + 1..self.dim_h() {
                let br = self.h_basis[a].commutator(&self.h_basis[b]);
                if self.p_basis.iter().any(|e| !metric(&br, e).is_zero()) {
                    return Err(internal(format!("{}: 𝔥 is not a subalgebra", self.id)));
                }
            }
        }
        let all = self.all();
        let d = all.len();
        for a in 0..d {
            for b in a + 1..d {
                let ab = all[a].commutator(all[b]);
                for c in b + 1..d {
                    let jac = ab
                        .commutator(all[c])
                        .add(&all[b].commutator(all[c]).commutator(all[a]))
                        .add(&all[c].commutator(all[a]).commutator(all[b]));
                    if !jac.is_zero() {
                        return Err(internal(format!("{}: Jacobi identity fails", self.id)));
                    }
                    // ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0
                    let inv = metric(&ab, all[c]).add(&metric(all[b], &all[a].commutator(all[c])));
                    if !inv.is_zero() {
                        return Err(internal(format!("{}: metric is not Ad-invariant", self.id)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `⟨x, y⟩` for arbitrary matrices.
    pub fn metric(&self, x: &Mat<F>, y: &Mat<F>) -> F {
        metric(x, y)
    }

    /// `[e_i, e_j]_𝔭` expanded in the 𝔭 basis.
    pub fn bracket_p(&self, i: usize, j: usize) -> Vec<F> {
        self.p_struct[i][j].clone()
    }
}
