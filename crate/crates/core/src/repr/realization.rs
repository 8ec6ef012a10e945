use super::{root_recipe, AlgElem, GtModule, HwModule, Module, Realization};
use crate::error::{domain, internal, Error, Result};
use crate::field::{cq_i, q, qi, Cq, Field, Q};
use crate::lie::{build_root_system, Family, RootSystem, Weight};
use crate::linalg::{rref, Mat};

/// Weight-space Gram matrix `⟨ω_i, ω_j⟩` induced by the trace form
/// `B(x, y) = ½ tr(xy)` on the coroots, and the scale relative to the
/// standard normalization of `family`.
pub(crate) fn calibrate(family: Family, rank: usize, coroots: &[Mat<Cq>]) -> Result<Q> {
    let b = Mat::from_fn(rank, rank, |i, j| {
        let t = coroots[i].trace_product(&coroots[j]);
        t.as_q().expect("coroot traces are real") * q(1, 2)
    });
    let gram = b.inverse().ok_or_else(|| internal("coroot Gram matrix is singular"))?;
    let standard = build_root_system(family, rank, qi(1))?.gram();
    let scale = &gram[(0, 0)] / &standard[0][0];
    for i in 0..rank {
        for j in 0..rank {
            if gram[(i, j)] != &standard[i][j] * &scale {
                return Err(internal("trace form is not proportional to the standard metric"));
            }
        }
    }
    Ok(scale)
}

/// 𝔰𝔲(n) inside 𝔤𝔩(n, ℂ), generators `E_{ij}` at index `i*n + j`.
#[derive(Clone, Debug)]
pub struct UnitaryRealization {
    n: usize,
    rs: RootSystem,
    coroots: Vec<Mat<Cq>>,
}

impl UnitaryRealization {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config("su(n) needs n >= 2".into()));
        }
        let coroots: Vec<Mat<Cq>> = (0..n - 1)
            .map(|i| {
                let mut m = Mat::zeros(n, n);
                m[(i, i)] = Cq::one();
                m[(i + 1, i + 1)] = Field::neg(&Cq::one());
                m
            })
            .collect();
        let scale = calibrate(Family::A, n - 1, &coroots)?;
        let rs = build_root_system(Family::A, n - 1, scale)?;
        Ok(UnitaryRealization { n, rs, coroots })
    }

    pub fn elementary(&self, i: usize, j: usize) -> Mat<Cq> {
        let mut m = Mat::zeros(self.n, self.n);
        m[(i, j)] = Cq::one();
        m
    }
}

impl Realization for UnitaryRealization {
    fn matrix_size(&self) -> usize {
        self.n
    }

    fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    fn coords(&self, x: &Mat<Cq>) -> Result<AlgElem> {
        if !Field::is_zero(&x.trace()) {
            return Err(domain("matrix is not traceless"));
        }
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if !Field::is_zero(&x[(i, j)]) {
                    out.push((i * self.n + j, x[(i, j)].clone()));
                }
            }
        }
        Ok(out)
    }

    fn coroots(&self) -> &[Mat<Cq>] {
        &self.coroots
    }

    fn compact_basis(&self) -> Vec<Mat<Cq>> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut m = Mat::zeros(n, n);
                m[(a, b)] = Cq::one();
                m[(b, a)] = Field::neg(&Cq::one());
                out.push(m);
                let mut m = Mat::zeros(n, n);
                m[(a, b)] = cq_i();
                m[(b, a)] = cq_i();
                out.push(m);
            }
        }
        for a in 0..n - 1 {
            let mut m = Mat::zeros(n, n);
            m[(a, a)] = cq_i();
            m[(a + 1, a + 1)] = Field::neg(&cq_i());
            out.push(m);
        }
        out
    }

    fn module(&self, hw: &Weight) -> Result<Box<dyn Module>> {
        if hw.len() != self.n - 1 || !hw.is_dominant() {
            return Err(domain(format!("{hw} is not a dominant weight of su({})", self.n)));
        }
        Ok(Box::new(GtModule::new(hw)))
    }
}

/// 𝔰𝔬(N) for N = 2m+1 (type B) or N = 2m (type D) with a Chevalley basis.
///
/// Generators are `h_1^∨..h_r^∨, E_β.., F_β..` in the order used by
/// [`HwModule`], so coordinates computed here act directly on its modules.
#[derive(Clone, Debug)]
pub struct OrthogonalRealization {
    n: usize,
    rs: RootSystem,
    basis: Vec<Mat<Cq>>,
    /// Row indices of the flattened basis that form an invertible block.
    rows: Vec<usize>,
    solve: Mat<Cq>,
}

fn wedge(a: &[Cq], b: &[Cq]) -> Mat<Cq> {
    let n = a.len();
    Mat::from_fn(n, n, |i, j| Field::sub(&Field::mul(&a[i], &b[j]), &Field::mul(&b[i], &a[j])))
}

impl OrthogonalRealization {
    pub fn new(n: usize) -> Result<Self> {
        let (family, m) = if n % 2 == 1 { (Family::B, (n - 1) / 2) } else { (Family::D, n / 2) };
        if (family == Family::B && m < 1) || (family == Family::D && m < 3) {
            return Err(Error::Config(format!("so({n}) is not simple or not supported")));
        }
        let zero = Cq::zero();
        let one = Cq::one();
        let vec_u = |k: usize, bar: bool| {
            let mut v = vec![zero.clone(); n];
            v[2 * k] = one.clone();
            v[2 * k + 1] = if bar { cq_i() } else { Field::neg(&cq_i()) };
            v
        };
        let e0 = {
            let mut v = vec![zero.clone(); n];
            v[n - 1] = one.clone();
            v
        };
        // h_k = -i J_k with J_k rotating the plane (2k, 2k+1).
        let h: Vec<Mat<Cq>> = (0..m)
            .map(|k| {
                let mut j = Mat::zeros(n, n);
                j[(2 * k + 1, 2 * k)] = one.clone();
                j[(2 * k, 2 * k + 1)] = Field::neg(&one);
                j.scale(&Field::neg(&cq_i()))
            })
            .collect();
        let coroot_eps: Vec<Vec<i64>> = (0..m)
            .map(|i| {
                let mut c = vec![0; m];
                if i + 1 < m {
                    c[i] = 1;
                    c[i + 1] = -1;
                } else if family == Family::B {
                    c[i] = 2;
                } else {
                    c[i - 1] = 1;
                    c[i] = 1;
                }
                c
            })
            .collect();
        let coroots: Vec<Mat<Cq>> = coroot_eps
            .iter()
            .map(|c| {
                let mut x = Mat::zeros(n, n);
                for (k, &ck) in c.iter().enumerate() {
                    if ck != 0 {
                        x = x.add(&h[k].scale(&Cq::from_i64(ck)));
                    }
                }
                x
            })
            .collect();
        let scale = calibrate(family, m, &coroots)?;
        let rs = build_root_system(family, m, scale)?;

        let mut e_simple = Vec::with_capacity(m);
        let mut f_simple = Vec::with_capacity(m);
        for i in 0..m {
            let (e, f) = if i + 1 < m {
                (wedge(&vec_u(i, false), &vec_u(i + 1, true)), wedge(&vec_u(i, true), &vec_u(i + 1, false)))
            } else if family == Family::B {
                (wedge(&vec_u(i, false), &e0), wedge(&vec_u(i, true), &e0))
            } else {
                (wedge(&vec_u(i - 1, false), &vec_u(i, false)), wedge(&vec_u(i - 1, true), &vec_u(i, true)))
            };
            let br = e.commutator(&f);
            let (r, c) = (0..n)
                .flat_map(|r| (0..n).map(move |c| (r, c)))
                .find(|&(r, c)| !Field::is_zero(&coroots[i][(r, c)]))
                .unwrap();
            let ratio = Field::div(&br[(r, c)], &coroots[i][(r, c)]);
            if br != coroots[i].scale(&ratio) {
                return Err(internal("[E_i, F_i] is not proportional to the coroot"));
            }
            e_simple.push(e);
            f_simple.push(f.scale(&Field::inv(&ratio).unwrap()));
        }
        let recipe = root_recipe(&rs);
        let mut es: Vec<Mat<Cq>> = Vec::new();
        let mut fs: Vec<Mat<Cq>> = Vec::new();
        for (b, rec) in recipe.iter().enumerate() {
            match rec {
                None => {
                    let i = rs.positive_roots()[b].iter().position(|&x| x == 1).unwrap();
                    es.push(e_simple[i].clone());
                    fs.push(f_simple[i].clone());
                }
                Some((i, c)) => {
                    es.push(e_simple[*i].commutator(&es[*c]));
                    fs.push(fs[*c].commutator(&f_simple[*i]));
                }
            }
        }
        let mut basis = coroots;
        basis.extend(es);
        basis.extend(fs);
        let d = basis.len();
        if d != n * (n - 1) / 2 {
            return Err(internal("Chevalley basis has the wrong size"));
        }
        // Pick d coordinates on which the basis is invertible.
        let mut t = Mat::from_fn(d, n * n, |a, k| basis[a].entries()[k].clone());
        let rows = rref(&mut t);
        if rows.len() != d {
            return Err(internal("Chevalley basis is linearly dependent"));
        }
        let block = Mat::from_fn(d, d, |r, a| basis[a].entries()[rows[r]].clone());
        let solve = block.inverse().ok_or_else(|| internal("coordinate block is singular"))?;
        Ok(OrthogonalRealization { n, rs, basis, rows, solve })
    }

    pub fn generator_matrix(&self, a: usize) -> &Mat<Cq> {
        &self.basis[a]
    }

    pub fn num_generators(&self) -> usize {
        self.basis.len()
    }
}

impl Realization for OrthogonalRealization {
    fn matrix_size(&self) -> usize {
        self.n
    }

    fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    fn coords(&self, x: &Mat<Cq>) -> Result<AlgElem> {
        let rhs: Vec<Cq> = self.rows.iter().map(|&k| x.entries()[k].clone()).collect();
        let c = self.solve.mul_vec(&rhs);
        let mut back = Mat::zeros(self.n, self.n);
        for (a, ca) in c.iter().enumerate() {
            if !Field::is_zero(ca) {
                back = back.add(&self.basis[a].scale(ca));
            }
        }
        if back != *x {
            return Err(domain("matrix is not in so(N)"));
        }
        Ok(c.into_iter().enumerate().filter(|(_, v)| !Field::is_zero(v)).collect())
    }

    fn coroots(&self) -> &[Mat<Cq>] {
        &self.basis[..self.rs.rank()]
    }

    fn compact_basis(&self) -> Vec<Mat<Cq>> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut m = Mat::zeros(n, n);
                m[(a, b)] = Cq::one();
                m[(b, a)] = Field::neg(&Cq::one());
                out.push(m);
            }
        }
        out
    }

    fn module(&self, hw: &Weight) -> Result<Box<dyn Module>> {
        Ok(Box::new(HwModule::new(&self.rs, hw)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::unit;

    /// The module map x ↦ ρ(x) must respect brackets of defining matrices.
    fn check_homomorphism(r: &dyn Realization, hw: Weight) {
        let module = r.module(&hw).unwrap();
        let basis = r.compact_basis();
        let keys = module.basis();
        for a in 0..basis.len() {
            for b in (a + 1..basis.len()).step_by(3) {
                let xa = r.coords(&basis[a]).unwrap();
                let xb = r.coords(&basis[b]).unwrap();
                let xab = r.coords(&basis[a].commutator(&basis[b])).unwrap();
                for k in keys.iter().step_by(5) {
                    let v = unit(k.clone());
                    let lhs = crate::repr::sub(
                        &module.apply(&xa, &module.apply(&xb, &v)),
                        &module.apply(&xb, &module.apply(&xa, &v)),
                    );
                    assert_eq!(lhs, module.apply(&xab, &v));
                }
            }
        }
    }

    #[test]
    fn orthogonal_metric_is_standard() {
        for n in [3, 5, 6, 7] {
            let r = OrthogonalRealization::new(n).unwrap();
            assert_eq!(r.root_system().gram_scale(), &qi(1), "so({n})");
        }
    }

    #[test]
    fn unitary_metric_scale_is_two() {
        for n in [2, 4, 6] {
            let r = UnitaryRealization::new(n).unwrap();
            assert_eq!(r.root_system().gram_scale(), &qi(2));
        }
    }

    #[test]
    fn modules_are_representations() {
        check_homomorphism(&OrthogonalRealization::new(5).unwrap(), Weight(vec![1, 1]));
        check_homomorphism(&OrthogonalRealization::new(6).unwrap(), Weight(vec![0, 1, 0]));
        check_homomorphism(&OrthogonalRealization::new(7).unwrap(), Weight(vec![0, 0, 1]));
        check_homomorphism(&UnitaryRealization::new(4).unwrap(), Weight(vec![1, 1, 0]));
    }

    #[test]
    fn defining_module_weights() {
        // The defining representation of so(5) has highest weight ε₁ = ω₁.
        let r = OrthogonalRealization::new(5).unwrap();
        let m = r.module(&Weight(vec![1, 0])).unwrap();
        assert_eq!(m.dim(), 5);
        let h = r.coroots()[0].clone();
        let x = r.coords(&h).unwrap();
        let tr: Cq = m.matrix(&x).trace();
        assert!(Field::is_zero(&tr));
    }
}
