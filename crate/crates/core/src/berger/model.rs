use serde::{Deserialize, Serialize};

use super::octonion::OctonionTable;
use super::qsqrt5::QSqrt5;
use crate::error::{Error, Result};
use crate::field::{fmt_q, parse_q, q, qi, Field, Q};
use crate::linalg::{kernel, Mat};
use crate::spin::metric;

pub type K = QSqrt5;

pub fn lift(m: &Mat<Q>) -> Mat<K> {
    m.map(|x| K::rational(x.clone()))
}

fn elementary(n: usize, a: usize, b: usize) -> Mat<Q> {
    let mut m = Mat::zeros(n, n);
    m[(a, b)] = qi(1);
    m
}

/// `so(5)` acting on traceless symmetric 3×3 matrices, with the isotropy
/// `so(3)` coming from conjugation.
#[derive(Clone, Debug)]
pub struct So5Model {
    /// `Sym₀` basis `E11-E22, E22-E33, E12+E21, E13+E31, E23+E32`.
    pub sym0: Vec<Mat<Q>>,
    /// `tr(B_a B_b)`.
    pub gram: Mat<Q>,
    /// `M⁻¹ K_ab` for `a < b`, where `K_ab = E_ab - E_ba`.
    pub so5: Vec<Mat<Q>>,
    /// Actions of `L₁, L₂, L₃` (rotations about the coordinate axes).
    pub h: Vec<Mat<Q>>,
    /// Rational basis of the metric complement of 𝔥.
    pub p: Vec<Mat<Q>>,
}

impl So5Model {
    pub fn new() -> Result<Self> {
        let e = |a, b| elementary(3, a, b);
        let sym0 = vec![
            e(0, 0).sub(&e(1, 1)),
            e(1, 1).sub(&e(2, 2)),
            e(0, 1).add(&e(1, 0)),
            e(0, 2).add(&e(2, 0)),
            e(1, 2).add(&e(2, 1)),
        ];
        let gram = Mat::from_fn(5, 5, |a, b| sym0[a].trace_product(&sym0[b]));
        let ginv = gram.inverse().ok_or_else(|| crate::error::internal("Sym₀ Gram matrix is singular"))?;
        // Coordinates of S in the Sym₀ basis: x = M⁻¹ (tr(B_a S))_a.
        let coords = |s: &Mat<Q>| ginv.mul_vec(&sym0.iter().map(|b| b.trace_product(s)).collect::<Vec<_>>());
        let rots = [e(2, 1).sub(&e(1, 2)), e(0, 2).sub(&e(2, 0)), e(1, 0).sub(&e(0, 1))];
        let h: Vec<Mat<Q>> = rots
            .iter()
            .map(|l| {
                let cols: Vec<Vec<Q>> = sym0.iter().map(|b| coords(&l.commutator(b))).collect();
                Mat::from_fn(5, 5, |r, c| cols[c][r].clone())
            })
            .collect();
        let mut so5 = Vec::with_capacity(10);
        for a in 0..5 {
            for b in a + 1..5 {
                so5.push(ginv.mul(&elementary(5, a, b).sub(&elementary(5, b, a))));
            }
        }
        let cons = Mat::from_fn(3, 10, |k, j| metric(&so5[j], &h[k]));
        let p: Vec<Mat<Q>> = kernel(&cons)
            .into_iter()
            .map(|v| v.iter().zip(&so5).fold(Mat::zeros(5, 5), |acc, (c, x)| acc.add(&x.scale(c))))
            .collect();
        if p.len() != 7 {
            return Err(crate::error::internal(format!("complement of so(3) has dimension {}", p.len())));
        }
        Ok(So5Model { sym0, gram, so5, h, p })
    }

    /// Coordinates of `x ∈ so(5)` in [`So5Model::so5`]: `x_ab = (M x)_ab`.
    pub fn so5_coords(&self, x: &Mat<K>) -> Vec<K> {
        let mx = lift(&self.gram).mul(x);
        let mut out = Vec::with_capacity(10);
        for a in 0..5 {
            for b in a + 1..5 {
                out.push(mx[(a, b)].clone());
            }
        }
        out
    }

    pub fn from_so5_coords(&self, c: &[K]) -> Mat<K> {
        c.iter().zip(&self.so5).fold(Mat::zeros(5, 5), |acc, (x, b)| acc.add(&lift(b).scale(x)))
    }

    /// Projection onto 𝔭 along 𝔥 (the `L_k` are orthogonal of norm 5).
    pub fn proj_p(&self, z: &Mat<K>) -> Mat<K> {
        let fifth = K::rational(q(1, 5));
        self.h.iter().fold(z.clone(), |acc, l| {
            let l = lift(l);
            acc.sub(&l.scale(&metric(z, &l).mul(&fifth)))
        })
    }
}

/// Real Clifford generators of `Cl₇` on `ℝ⁸` built from 2×2 blocks.
pub fn kron_generators() -> Vec<Mat<Q>> {
    let one = Mat::<Q>::identity(2);
    let x = Mat::from_rows(vec![vec![qi(0), qi(1)], vec![qi(1), qi(0)]]);
    let z = Mat::from_rows(vec![vec![qi(1), qi(0)], vec![qi(0), qi(-1)]]);
    let j = Mat::from_rows(vec![vec![qi(0), qi(-1)], vec![qi(1), qi(0)]]);
    let pick = |ch: char| match ch {
        '1' => &one,
        'X' => &x,
        'Z' => &z,
        _ => &j,
    };
    ["11J", "1JX", "XJZ", "ZJZ", "J1Z", "JXX", "JZX"]
        .iter()
        .map(|w| w.chars().fold(Mat::identity(1), |acc, c| acc.kron(pick(c))))
        .collect()
}

/// An orthonormal frame of 𝔭 aligned with the octonion table, and the
/// intertwiner from the Kronecker Clifford module to right Cayley multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct BergerFrame {
    /// `e₁..e₇` in the `so(5)` basis.
    pub coords: Vec<Vec<K>>,
    /// `Ψ` with `Ψ c_i = R_i Ψ`.
    pub psi: Mat<Q>,
    /// Sign applied to the last Kronecker generator.
    pub orientation: i64,
}

/// Versioned, human-readable form of [`BergerFrame`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFixture {
    pub format: u32,
    pub so5_basis: String,
    pub clifford_generators: Vec<String>,
    pub frame: Vec<Vec<String>>,
    pub psi: Vec<Vec<String>>,
    pub orientation: i64,
}

pub const SHIPPED_FIXTURE: &str = include_str!("../../fixtures/berger_frame.json");

impl BergerFrame {
    pub fn to_fixture(&self) -> FrameFixture {
        FrameFixture {
            format: 1,
            so5_basis: "M^-1 (E_ab - E_ba), a < b, M = tr(B_a B_b) on Sym0(R^3)".into(),
            clifford_generators: ["11J", "1JX", "XJZ", "ZJZ", "J1Z", "JXX", "JZX"].iter().map(|s| s.to_string()).collect(),
            frame: self.coords.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
            psi: (0..8).map(|r| self.psi.row(r).iter().map(fmt_q).collect()).collect(),
            orientation: self.orientation,
        }
    }

    pub fn from_fixture(f: &FrameFixture) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("Berger fixture: {m}"));
        if f.format != 1 {
            return Err(bad(&format!("unknown format {}", f.format)));
        }
        if f.frame.len() != 7 || f.frame.iter().any(|r| r.len() != 10) {
            return Err(bad("frame must be 7 rows of 10 coordinates"));
        }
        if f.psi.len() != 8 || f.psi.iter().any(|r| r.len() != 8) {
            return Err(bad("psi must be 8x8"));
        }
        if f.orientation.abs() != 1 {
            return Err(bad("orientation must be ±1"));
        }
        let coords = f
            .frame
            .iter()
            .map(|r| r.iter().map(|s| K::parse(s).ok_or_else(|| bad(&format!("bad scalar {s:?}")))).collect())
            .collect::<Result<Vec<Vec<K>>>>()?;
        let rows = f
            .psi
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s).ok_or_else(|| bad(&format!("bad rational {s:?}")))).collect())
            .collect::<Result<Vec<Vec<Q>>>>()?;
        Ok(BergerFrame { coords, psi: Mat::from_rows(rows), orientation: f.orientation })
    }

    pub fn parse(json: &str) -> Result<Self> {
        let fx = serde_json::from_str(json).map_err(|e| Error::Parse(format!("Berger fixture: {e}")))?;
        Self::from_fixture(&fx)
    }

    pub fn shipped() -> Result<Self> {
        Self::parse(SHIPPED_FIXTURE)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_fixture()).expect("fixture serializes") + "\n"
    }

    pub fn basis(&self, model: &So5Model) -> Vec<Mat<K>> {
        self.coords.iter().map(|c| model.from_so5_coords(c)).collect()
    }

    /// Clifford generators `c_i` after the orientation sign.
    pub fn oriented_generators(&self) -> Vec<Mat<Q>> {
        let mut g = kron_generators();
        if self.orientation < 0 {
            g[6] = g[6].neg();
        }
        g
    }
}

fn is_square(x: &Q) -> Option<Q> {
    use num_traits::Signed;
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// `1/√n` when it lies in ℚ(√5).
fn inverse_sqrt(n: &Q) -> Option<K> {
    if let Some(r) = is_square(n) {
        return Some(K::rational(r.recip()));
    }
    let r = is_square(&(n / qi(5)))?;
    // 1/(r√5) = √5/(5r)
    Some(K::new(qi(0), (r * qi(5)).recip()))
}

/// Lexicographic nonzero vectors in `{-2..2}^7` with positive leading entry.
fn small_vectors() -> impl Iterator<Item = Vec<i64>> {
    (0..5i64.pow(7)).filter_map(|mut code| {
        let mut v = vec![0i64; 7];
        for x in v.iter_mut().rev() {
            *x = code % 5 - 2;
            code /= 5;
        }
        v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0).then_some(v)
    })
}

/// `√5 [x, y]_𝔭`.
pub fn cross(model: &So5Model, x: &Mat<K>, y: &Mat<K>) -> Mat<K> {
    model.proj_p(&x.commutator(y)).scale(&K::sqrt5())
}

/// Exhaustive residual of `[e_i, e_j]_𝔭 = (1/√5) e_i *_𝕀 e_j`; empty when it holds.
pub fn lemma9_failures(model: &So5Model, e: &[Mat<K>], table: &OctonionTable) -> Vec<((usize, usize), f64)> {
    let inv = K::sqrt5().inv().expect("√5 ≠ 0");
    let mut out = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            let lhs = model.proj_p(&e[i].commutator(&e[j]));
            let rhs = match table.imaginary_product(i + 1, j + 1) {
                Some((s, c)) => e[c - 1].scale(&inv.mul(&K::from_i64(s as i64))),
                None => Mat::zeros(5, 5),
            };
            let d = lhs.sub(&rhs);
            if !d.is_zero() {
                let r = d.entries().iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
                out.push(((i + 1, j + 1), r));
            }
        }
    }
    out
}

/// Search small rational directions for a frame satisfying the octonion
/// rule, then the Clifford intertwiner.
pub fn solve_frame(model: &So5Model) -> Result<BergerFrame> {
    let table = OctonionTable::new();
    let p: Vec<Mat<K>> = model.p.iter().map(lift).collect();
    let gram = Mat::from_fn(7, 7, |a, b| metric(&model.p[a], &model.p[b]));
    let combine = |v: &[i64]| v.iter().zip(&p).fold(Mat::zeros(5, 5), |acc, (c, x)| acc.add(&x.scale(&K::from_i64(*c))));
    let candidates: Vec<(Vec<i64>, K)> = small_vectors()
        .filter_map(|v| {
            let vq: Vec<Q> = v.iter().map(|&x| qi(x)).collect();
            let gv = gram.mul_vec(&vq);
            let n = vq.iter().zip(&gv).fold(qi(0), |acc, (a, b)| acc + a * b);
            inverse_sqrt(&n).map(|s| (v, s))
        })
        .collect();
    let unit = |(v, s): &(Vec<i64>, K)| combine(v).scale(s);
    let zero = K::zero();
    let mut search_log = Vec::new();
    for first in &candidates {
        let e1 = unit(first);
        for second in &candidates {
            let e2 = unit(second);
            if metric(&e1, &e2) != zero {
                continue;
            }
            let e4 = cross(model, &e1, &e2);
            for third in &candidates {
                let e3 = unit(third);
                if [&e1, &e2, &e4].iter().any(|x| metric(*x, &e3) != zero) {
                    continue;
                }
                let e5 = cross(model, &e2, &e3);
                let e6 = cross(model, &e3, &e4);
                let e7 = cross(model, &e4, &e5);
                let e = vec![e1.clone(), e2.clone(), e3, e4.clone(), e5, e6, e7];
                let fails = lemma9_failures(model, &e, &table);
                if fails.is_empty() {
                    let psi = solve_intertwiner(&table)?;
                    return Ok(BergerFrame {
                        coords: e.iter().map(|x| model.so5_coords(x)).collect(),
                        psi: psi.0,
                        orientation: psi.1,
                    });
                }
                if search_log.len() < 8 {
                    search_log.push(format!("{:?}/{:?}/{:?}: {} failing pairs", first.0, second.0, third.0, fails.len()));
                }
            }
        }
    }
    Err(Error::SearchFailure(format!("no octonion-aligned frame among small vectors; tried {}", search_log.join("; "))))
}

/// `Ψ` with `Ψ c_i = R_i Ψ` for every `i`, flipping `c₇` if needed.
/// `Ψ` is normalized to an isometry when `ΨᵀΨ` is a rational square.
pub fn solve_intertwiner(table: &OctonionTable) -> Result<(Mat<Q>, i64)> {
    let r: Vec<Mat<Q>> = (1..8).map(|i| table.right_mult(i)).collect();
    for orientation in [1i64, -1] {
        let mut c = kron_generators();
        if orientation < 0 {
            c[6] = c[6].neg();
        }
        // Unknown Ψ[r][s] at index 8r + s.
        let mut sys = Mat::<Q>::zeros(7 * 64, 64);
        for (i, (ci, ri)) in c.iter().zip(&r).enumerate() {
            for row in 0..8 {
                for col in 0..8 {
                    let eq = i * 64 + row * 8 + col;
                    for t in 0..8 {
                        sys[(eq, row * 8 + t)] = &sys[(eq, row * 8 + t)] + &ci[(t, col)];
                        sys[(eq, t * 8 + col)] = &sys[(eq, t * 8 + col)] - &ri[(row, t)];
                    }
                }
            }
        }
        let Some(v) = kernel(&sys).into_iter().next() else { continue };
        let mut psi = Mat::from_fn(8, 8, |a, b| v[a * 8 + b].clone());
        let s = psi.transpose().mul(&psi)[(0, 0)].clone();
        if let Some(root) = is_square(&s) {
            psi = psi.scale(&root.recip());
        }
        return Ok((psi, orientation));
    }
    Err(Error::SearchFailure("no intertwiner between the Kronecker module and right Cayley multiplication in either orientation".into()))
}
