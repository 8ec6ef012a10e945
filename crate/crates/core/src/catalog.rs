//! The shipped spaces and their matrix models.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{cq_i, fmt_q, qi, Cq, Field, Q};
use crate::lie::{build_root_system, Family, ReductiveRootSystem, RootSystem};
use crate::linalg::Mat;
use crate::repr::{calibrate, OrthogonalRealization, Realization, UnitaryRealization};
use crate::spin::{lambda1, HomStrategy, Lambda1Result, SearchOptions, SymmetricPair, SymmetricSpace};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub g: &'static str,
    pub h: &'static str,
    pub dim: usize,
    pub rank_difference: usize,
    pub recipe: &'static str,
    pub symmetric: bool,
    pub g_spin: bool,
    /// Metric scale of G relative to the standard root normalization.
    pub gram_scale: String,
    pub expected_lambda1: Option<String>,
}

struct Spec {
    id: &'static str,
    g: &'static str,
    h: &'static str,
    dim: usize,
    k: usize,
    recipe: &'static str,
    symmetric: bool,
    scale: i64,
    expected: Option<&'static str>,
}

const SPECS: &[Spec] = &[
    Spec { id: "S2", g: "Spin(3)", h: "Spin(2)", dim: 2, k: 0, recipe: "so(3), 𝔭 = span(E_3j - E_j3)", symmetric: true, scale: 1, expected: Some("1") },
    Spec { id: "S4", g: "Spin(5)", h: "Spin(4)", dim: 4, k: 0, recipe: "so(5), 𝔭 = span(E_5j - E_j5)", symmetric: true, scale: 1, expected: Some("4") },
    Spec { id: "S5", g: "Spin(6)", h: "Spin(5)", dim: 5, k: 1, recipe: "so(6), 𝔭 = span(E_6j - E_j6)", symmetric: true, scale: 1, expected: Some("25/4") },
    Spec { id: "S6", g: "Spin(7)", h: "Spin(6)", dim: 6, k: 0, recipe: "so(7), 𝔭 = span(E_7j - E_j7)", symmetric: true, scale: 1, expected: Some("9") },
    Spec { id: "CP1", g: "SU(2)", h: "U(1)", dim: 2, k: 0, recipe: "su(2), 𝔭 = last row/column", symmetric: true, scale: 2, expected: Some("4") },
    Spec { id: "CP3", g: "SU(4)", h: "S(U(3)xU(1))", dim: 6, k: 0, recipe: "su(4), 𝔭 = last row/column", symmetric: true, scale: 2, expected: Some("16") },
    Spec { id: "CP5", g: "SU(6)", h: "S(U(5)xU(1))", dim: 10, k: 0, recipe: "su(6), 𝔭 = last row/column", symmetric: true, scale: 2, expected: Some("36") },
    Spec { id: "Berger", g: "SO(5)", h: "SO(3) (5-dim irreducible)", dim: 7, k: 1, recipe: "so(5) on traceless symmetric 3x3 matrices over Q(√5)", symmetric: false, scale: 1, expected: None },
];

/// Every shipped entry. Products `AxB` of symmetric entries are accepted by
/// [`lambda1_of`] but not listed.
pub fn entries() -> Vec<CatalogEntry> {
    SPECS
        .iter()
        .map(|s| CatalogEntry {
            id: s.id,
            g: s.g,
            h: s.h,
            dim: s.dim,
            rank_difference: s.k,
            recipe: s.recipe,
            symmetric: s.symmetric,
            g_spin: true,
            gram_scale: fmt_q(&qi(s.scale)),
            expected_lambda1: s.expected.map(str::to_string),
        })
        .collect()
}

pub fn entry(id: &str) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.id == id)
}

/// `E_ab - E_ba`.
fn rot(n: usize, a: usize, b: usize) -> Mat<Cq> {
    let mut m = Mat::zeros(n, n);
    m[(a, b)] = Cq::one();
    m[(b, a)] = Field::neg(&Cq::one());
    m
}

/// `-i J_k` for the rotation in the plane `(2k, 2k+1)`.
fn plane(n: usize, k: usize) -> Mat<Cq> {
    rot(n, 2 * k + 1, 2 * k).scale(&Field::neg(&cq_i()))
}

fn combo(terms: &[(i64, &Mat<Cq>)]) -> Mat<Cq> {
    let n = terms[0].1.rows();
    terms.iter().fold(Mat::zeros(n, n), |acc, (c, m)| acc.add(&m.scale(&Cq::from_i64(*c))))
}

fn factor(family: Family, rank: usize, coroots: &[Mat<Cq>]) -> Result<RootSystem> {
    build_root_system(family, rank, calibrate(family, rank, coroots)?)
}

/// `S^d = Spin(d+1)/Spin(d)` for `d ∈ {2, 4, 5, 6}`.
fn sphere(id: &str, d: usize) -> Result<SymmetricSpace> {
    let n = d + 1;
    let real: Arc<dyn Realization> = Arc::new(OrthogonalRealization::new(n)?);
    let p: Vec<Mat<Cq>> = (0..d).map(|j| rot(n, n - 1, j)).collect();
    let mut hb = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            hb.push(rot(n, a, b));
        }
    }
    let h = |k| plane(n, k);
    let (hrs, cartan) = match d {
        2 => (ReductiveRootSystem::torus(1), vec![combo(&[(2, &h(0))])]),
        4 => {
            let c1 = combo(&[(1, &h(0)), (-1, &h(1))]);
            let c2 = combo(&[(1, &h(0)), (1, &h(1))]);
            let f1 = factor(Family::A, 1, std::slice::from_ref(&c1))?;
            let f2 = factor(Family::A, 1, std::slice::from_ref(&c2))?;
            (ReductiveRootSystem::new(vec![f1, f2], 0), vec![c1, c2])
        }
        5 => {
            let c = vec![combo(&[(1, &h(0)), (-1, &h(1))]), combo(&[(2, &h(1))])];
            (ReductiveRootSystem::simple(factor(Family::B, 2, &c)?), c)
        }
        6 => {
            let c = vec![
                combo(&[(1, &h(0)), (-1, &h(1))]),
                combo(&[(1, &h(1)), (-1, &h(2))]),
                combo(&[(1, &h(1)), (1, &h(2))]),
            ];
            (ReductiveRootSystem::simple(factor(Family::D, 3, &c)?), c)
        }
        _ => return Err(Error::Config(format!("no sphere model for dimension {d}"))),
    };
    let k = real.root_system().rank() - hrs.rank();
    let pair = SymmetricPair::new(id, hb, p, k, true)?;
    SymmetricSpace::new(pair, real, hrs, cartan, HomStrategy::Generic)
}

/// `CP^{N-1} = SU(N)/S(U(N-1)×U(1))`.
fn projective(id: &str, n: usize) -> Result<SymmetricSpace> {
    let real = UnitaryRealization::new(n)?;
    let i = cq_i();
    let e = |a: usize, b: usize| real.elementary(a, b);
    let last = n - 1;
    let mut p = Vec::new();
    for j in 0..last {
        p.push(e(j, last).sub(&e(last, j)));
        p.push(e(j, last).add(&e(last, j)).scale(&i));
    }
    let mut hb = Vec::new();
    for a in 0..last {
        for b in a + 1..last {
            hb.push(e(a, b).sub(&e(b, a)));
            hb.push(e(a, b).add(&e(b, a)).scale(&i));
        }
    }
    let mut cartan = Vec::new();
    for a in 0..last.saturating_sub(1) {
        let c = e(a, a).sub(&e(a + 1, a + 1));
        hb.push(c.scale(&i));
        cartan.push(c);
    }
    let mut z = Mat::identity(n);
    z[(last, last)] = Cq::from_i64(-(last as i64));
    hb.push(z.scale(&i));
    let hrs = if n > 2 {
        ReductiveRootSystem::new(vec![factor(Family::A, n - 2, &cartan)?], 1)
    } else {
        ReductiveRootSystem::torus(1)
    };
    cartan.push(z);
    let pair = SymmetricPair::new(id, hb, p, 0, true)?;
    SymmetricSpace::new(pair, Arc::new(real), hrs, cartan, HomStrategy::UnitaryIsotypic)
}

/// Build a symmetric catalog entry.
pub fn build_space(id: &str) -> Result<SymmetricSpace> {
    match id {
        "S2" => sphere(id, 2),
        "S4" => sphere(id, 4),
        "S5" => sphere(id, 5),
        "S6" => sphere(id, 6),
        "CP1" => projective(id, 2),
        "CP3" => projective(id, 4),
        "CP5" => projective(id, 6),
        "Berger" => Err(Error::Unsupported("Berger is not symmetric; use berger verify".into())),
        _ => Err(Error::Config(format!("unknown space {id:?}; see `catalog list`"))),
    }
}

/// λ₁ of a catalog id or a product `AxB…`, where it is the sum over factors.
pub fn lambda1_of(id: &str, opts: SearchOptions) -> Result<Vec<(String, Lambda1Result)>> {
    let parts: Vec<&str> = id.split('x').collect();
    let mut out = Vec::with_capacity(parts.len());
    for p in parts {
        let space = build_space(p)?;
        out.push((p.to_string(), lambda1(&space, opts)?));
    }
    Ok(out)
}

/// Additive composition of factor eigenvalues for products.
pub fn product_value(parts: &[(String, Lambda1Result)]) -> Q {
    parts.iter().fold(qi(0), |acc, (_, r)| acc + &r.value)
}
