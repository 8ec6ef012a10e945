use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Family, Weight};
use crate::error::{domain, Error, Result};
use crate::field::{qi, Q};

/// Root datum of a compact simple Lie algebra with a fixed invariant metric.
///
/// The metric is the standard one of the ε-realization multiplied by
/// `gram_scale`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, by nondecreasing height.
    positive: Vec<Vec<i64>>,
    /// The same roots in Dynkin labels.
    positive_labels: Vec<Weight>,
    /// `⟨ω_i, ω_j⟩ = gram_num[i][j] / gram_den`.
    gram_num: Vec<Vec<i64>>,
    gram_den: i64,
    gram_scale: Q,
    /// ε-coordinates of the fundamental weights, numerators over `eps_den`.
    fundamental_eps: Vec<Vec<i64>>,
    eps_den: i64,
    simple_eps: Vec<Vec<i64>>,
    /// `dual_perm[i] = j` when `-w₀ ω_i = ω_j`.
    dual_perm: Vec<usize>,
}

/// Build the root system of type `family`/`rank` with metric `gram_scale` times
/// the standard ε inner product.
pub fn build_root_system(family: Family, rank: usize, gram_scale: Q) -> Result<RootSystem> {
    if !gram_scale.is_positive() {
        return Err(Error::Config("gram scale must be positive".into()));
    }
    let l = rank;
    let ok = match family {
        Family::A | Family::B => l >= 1,
        Family::C => l >= 2,
        Family::D => l >= 3,
        Family::G => l == 2,
    };
    if !ok {
        return Err(Error::Config(format!("unsupported root system {family}{rank}")));
    }
    // (simple roots, fundamental weights) as ε-numerators over eps_den; simple roots over 1.
    let (dim, eps_den, simple, fund): (usize, i64, Vec<Vec<i64>>, Vec<Vec<i64>>) = match family {
        Family::A => {
            let n = l + 1;
            let simple = (0..l).map(|i| unit_diff(n, i, i + 1)).collect();
            let fund = (0..l)
                .map(|i| (0..n).map(|k| if k <= i { n as i64 - (i as i64 + 1) } else { -(i as i64 + 1) }).collect())
                .collect();
            (n, n as i64, simple, fund)
        }
        Family::B => {
            let mut simple: Vec<Vec<i64>> = (0..l - 1).map(|i| unit_diff(l, i, i + 1)).collect();
            let mut last = vec![0; l];
            last[l - 1] = 1;
            simple.push(last);
            let mut fund: Vec<Vec<i64>> = (0..l - 1).map(|i| (0..l).map(|k| if k <= i { 2 } else { 0 }).collect()).collect();
            fund.push(vec![1; l]);
            (l, 2, simple, fund)
        }
        Family::C => {
            let mut simple: Vec<Vec<i64>> = (0..l - 1).map(|i| unit_diff(l, i, i + 1)).collect();
            let mut last = vec![0; l];
            last[l - 1] = 2;
            simple.push(last);
            let fund = (0..l).map(|i| (0..l).map(|k| if k <= i { 1 } else { 0 }).collect()).collect();
            (l, 1, simple, fund)
        }
        Family::D => {
            let mut simple: Vec<Vec<i64>> = (0..l - 1).map(|i| unit_diff(l, i, i + 1)).collect();
            let mut last = vec![0; l];
            last[l - 2] = 1;
            last[l - 1] = 1;
            simple.push(last);
            let mut fund: Vec<Vec<i64>> = (0..l - 2).map(|i| (0..l).map(|k| if k <= i { 2 } else { 0 }).collect()).collect();
            let mut spin_minus = vec![1; l];
            spin_minus[l - 1] = -1;
            fund.push(spin_minus);
            fund.push(vec![1; l]);
            (l, 2, simple, fund)
        }
        Family::G => (3, 1, vec![vec![1, -1, 0], vec![-2, 1, 1]], vec![vec![0, -1, 1], vec![-1, -1, 2]]),
    };
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let cartan: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[i], &simple[i])).collect())
        .collect();
    // Sanity: fundamental weights are dual to the simple coroots.
    for i in 0..l {
        for j in 0..l {
            let num = 2 * dot(&fund[i], &simple[j]);
            let den = eps_den * dot(&simple[j], &simple[j]);
            if num != if i == j { den } else { 0 } {
                return Err(Error::Internal(format!("fundamental weight table broken for {family}{rank}")));
            }
        }
    }
    let _ = dim;
    // Gram matrix of fundamental weights, exact.
    let gram: Vec<Vec<Q>> = (0..l)
        .map(|i| (0..l).map(|j| Q::new(dot(&fund[i], &fund[j]).into(), (eps_den * eps_den).into()) * &gram_scale).collect())
        .collect();
    let mut den = num_bigint::BigInt::one();
    for row in &gram {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let gram_den = den.to_i64().ok_or_else(|| Error::Config("gram scale denominator too large".into()))?;
    let gram_num: Vec<Vec<i64>> = gram
        .iter()
        .map(|row| row.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer().to_i64().unwrap()).collect())
        .collect();

    let positive = positive_roots(&cartan);
    let positive_labels = positive
        .iter()
        .map(|c| Weight((0..l).map(|i| (0..l).map(|j| cartan[i][j] * c[j]).sum()).collect()))
        .collect();
    let mut rs = RootSystem {
        family,
        rank,
        cartan,
        positive,
        positive_labels,
        gram_num,
        gram_den,
        gram_scale,
        fundamental_eps: fund,
        eps_den,
        simple_eps: simple,
        dual_perm: (0..l).collect(),
    };
    rs.dual_perm = (0..l)
        .map(|i| {
            let mut w = vec![0; l];
            w[i] = -1;
            let d = rs.dominant_conjugate(&Weight(w));
            d.0.iter().position(|&x| x == 1).expect("dual of a fundamental weight is fundamental")
        })
        .collect();
    rs.check_invariants()?;
    Ok(rs)
}

fn unit_diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v[j] = -1;
    v
}

/// Positive roots in simple-root coordinates via root strings.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    let mut set: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut start = 0;
    while start < roots.len() {
        let end = roots.len();
        for r in start..end {
            let beta = roots[r].clone();
            for i in 0..l {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if set.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..l).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if set.insert(up.clone()) {
                        roots.push(up);
                    }
                }
            }
        }
        start = end;
    }
    roots.sort_by_key(|c| (c.iter().sum::<i64>(), std::cmp::Reverse(c.clone())));
    roots
}

impl RootSystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram_scale(&self) -> &Q {
        &self.gram_scale
    }

    /// `⟨ω_i, ω_j⟩` as an exact rational matrix.
    pub fn gram(&self) -> Vec<Vec<Q>> {
        self.gram_num
            .iter()
            .map(|r| r.iter().map(|&x| Q::new(x.into(), self.gram_den.into())).collect())
            .collect()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots in Dynkin labels.
    pub fn positive_root_weights(&self) -> &[Weight] {
        &self.positive_labels
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i]).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank];
        w[i] = 1;
        Weight(w)
    }

    /// Weyl vector; in Dynkin labels this is all ones.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn eps_dim(&self) -> usize {
        self.simple_eps[0].len()
    }

    /// ε-coordinates of a weight as numerators over [`Self::eps_denominator`].
    pub fn to_eps(&self, w: &Weight) -> Vec<i64> {
        let d = self.eps_dim();
        (0..d).map(|k| (0..self.rank).map(|i| w.0[i] * self.fundamental_eps[i][k]).sum()).collect()
    }

    pub fn eps_denominator(&self) -> i64 {
        self.eps_den
    }

    /// ε-coordinates as rationals.
    pub fn to_eps_q(&self, w: &Weight) -> Vec<Q> {
        self.to_eps(w).into_iter().map(|x| Q::new(x.into(), self.eps_den.into())).collect()
    }

    /// Inverse of [`Self::to_eps_q`] for integral weights.
    pub fn from_eps_q(&self, eps: &[Q]) -> Result<Weight> {
        if eps.len() != self.eps_dim() {
            return Err(domain(format!("expected {} ε-coordinates", self.eps_dim())));
        }
        let mut labels = Vec::with_capacity(self.rank);
        for s in &self.simple_eps {
            let num: Q = eps.iter().zip(s).map(|(x, &y)| x * qi(2 * y)).sum();
            let den: i64 = s.iter().map(|y| y * y).sum();
            let v = num / qi(den);
            if !v.is_integer() {
                return Err(domain("ε-vector is not an integral weight"));
            }
            labels.push(v.to_integer().to_i64().unwrap());
        }
        let w = Weight(labels);
        if self.to_eps_q(&w) != eps {
            return Err(domain("ε-vector is not in the weight space of this root system"));
        }
        Ok(w)
    }

    /// Positive roots as integer ε-vectors over a common denominator (1 here).
    pub fn positive_roots_eps(&self) -> Vec<Vec<i64>> {
        self.positive
            .iter()
            .map(|c| {
                (0..self.eps_dim()).map(|k| (0..self.rank).map(|i| c[i] * self.simple_eps[i][k]).sum()).collect()
            })
            .collect()
    }

    /// `⟨a, b⟩ · gram_den`, exact integer.
    pub(crate) fn inner_scaled(&self, a: &[i64], b: &[i64]) -> i128 {
        let mut s: i128 = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let mut t: i128 = 0;
            for j in 0..self.rank {
                t += self.gram_num[i][j] as i128 * b[j] as i128;
            }
            s += a[i] as i128 * t;
        }
        s
    }

    pub(crate) fn gram_den(&self) -> i64 {
        self.gram_den
    }

    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        Q::new(self.inner_scaled(&a.0, &b.0).into(), self.gram_den.into())
    }

    pub fn norm_sq(&self, a: &Weight) -> Q {
        self.inner(a, a)
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank {
            return Err(domain(format!("weight {w} has wrong length for {}", self.name())));
        }
        Ok(())
    }

    fn require_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if !w.is_dominant() {
            return Err(domain(format!("weight {w} is not dominant for {}", self.name())));
        }
        Ok(())
    }

    /// Casimir eigenvalue `⟨γ, γ + 2ρ⟩`.
    pub fn casimir(&self, g: &Weight) -> Result<Q> {
        self.require_dominant(g)?;
        Ok(self.casimir_unchecked(g))
    }

    pub(crate) fn casimir_scaled(&self, g: &Weight) -> i128 {
        let t: Vec<i64> = g.0.iter().map(|x| x + 2).collect();
        self.inner_scaled(&g.0, &t)
    }

    fn casimir_unchecked(&self, g: &Weight) -> Q {
        Q::new(self.casimir_scaled(g).into(), self.gram_den.into())
    }

    /// Dual highest weight `-w₀ γ`.
    pub fn dual(&self, g: &Weight) -> Weight {
        let mut out = vec![0; self.rank];
        for i in 0..self.rank {
            out[self.dual_perm[i]] = g.0[i];
        }
        Weight(out)
    }

    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let k = w.0[i];
        Weight((0..self.rank).map(|j| w.0[j] - k * self.cartan[j][i]).collect())
    }

    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        while let Some(i) = w.0.iter().position(|&x| x < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    /// Weyl orbit of a dominant weight.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank {
                if v.0[i] > 0 {
                    let r = self.reflect(&v, i);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Weyl dimension formula.
    pub fn dimension(&self, g: &Weight) -> Result<u64> {
        self.require_dominant(g)?;
        let shifted: Vec<i64> = g.0.iter().map(|x| x + 1).collect();
        let rho = vec![1; self.rank];
        let mut num = num_bigint::BigInt::one();
        let mut den = num_bigint::BigInt::one();
        for a in &self.positive_labels {
            num *= self.inner_scaled(&shifted, &a.0);
            den *= self.inner_scaled(&rho, &a.0);
        }
        let d = Q::new(num, den);
        if !d.is_integer() {
            return Err(Error::Internal("Weyl dimension is not an integer".into()));
        }
        d.to_integer().to_u64().ok_or_else(|| Error::Internal("dimension overflow".into()))
    }

    /// Dominant weights of `V^γ`, with their depth below γ, ordered by depth.
    pub fn dominant_weights(&self, g: &Weight) -> Result<Vec<(Weight, i64)>> {
        self.require_dominant(g)?;
        let heights: Vec<i64> = self.positive.iter().map(|c| c.iter().sum()).collect();
        let mut depth: HashMap<Weight, i64> = HashMap::new();
        depth.insert(g.clone(), 0);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(w) = queue.pop_front() {
            let d = depth[&w];
            for (a, h) in self.positive_labels.iter().zip(&heights) {
                let v = w.sub(a);
                if v.is_dominant() && !depth.contains_key(&v) {
                    depth.insert(v.clone(), d + h);
                    queue.push_back(v);
                }
            }
        }
        let mut out: Vec<(Weight, i64)> = depth.into_iter().collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        Ok(out)
    }

    /// Multiplicities of the dominant weights of `V^γ` (Freudenthal).
    pub fn dominant_multiplicities(&self, g: &Weight) -> Result<BTreeMap<Weight, u64>> {
        let dom = self.dominant_weights(g)?;
        let lr: Vec<i64> = g.0.iter().map(|x| x + 1).collect();
        let top = self.inner_scaled(&lr, &lr);
        let mut mult: HashMap<Weight, i128> = HashMap::new();
        for (mu, _) in &dom {
            if mu == g {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let mr: Vec<i64> = mu.0.iter().map(|x| x + 1).collect();
            let den = top - self.inner_scaled(&mr, &mr);
            let mut num: i128 = 0;
            for a in &self.positive_labels {
                let mut k = 1;
                loop {
                    let v = mu.add(&a.scale(k));
                    let m = mult.get(&self.dominant_conjugate(&v)).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    num += m * self.inner_scaled(&v.0, &a.0);
                    k += 1;
                }
            }
            num *= 2;
            if den <= 0 || num % den != 0 {
                return Err(Error::Internal(format!("Freudenthal recursion failed at {mu}")));
            }
            let m = num / den;
            if m > 0 {
                mult.insert(mu.clone(), m);
            }
        }
        Ok(mult.into_iter().map(|(w, m)| (w, m as u64)).collect())
    }

    /// Full weight multiset of `V^γ`.
    pub fn weight_multiplicities(&self, g: &Weight) -> Result<BTreeMap<Weight, u64>> {
        let dom = self.dominant_multiplicities(g)?;
        let mut out = BTreeMap::new();
        for (mu, m) in dom {
            for w in self.orbit(&mu) {
                out.insert(w, m);
            }
        }
        Ok(out)
    }

    fn check_invariants(&self) -> Result<()> {
        let expected = match self.family {
            Family::A => self.rank * (self.rank + 1) / 2,
            Family::B | Family::C => self.rank * self.rank,
            Family::D => self.rank * (self.rank - 1),
            Family::G => 6,
        };
        if self.positive.len() != expected {
            return Err(Error::Internal(format!("{} has {} positive roots", self.name(), self.positive.len())));
        }
        // ρ = ½ Σ α, compared in Dynkin labels.
        let mut twice_rho = vec![0; self.rank];
        for a in &self.positive_labels {
            for (t, x) in twice_rho.iter_mut().zip(&a.0) {
                *t += x;
            }
        }
        if twice_rho.iter().any(|&x| x != 2) {
            return Err(Error::Internal("ρ is not half the sum of positive roots".into()));
        }
        if !leading_minors_positive(&self.gram()) {
            return Err(Error::Internal("Gram matrix is not positive definite".into()));
        }
        Ok(())
    }
}

/// Sylvester's criterion on an exact symmetric matrix.
pub(crate) fn leading_minors_positive(g: &[Vec<Q>]) -> bool {
    let n = g.len();
    for k in 1..=n {
        let m = crate::linalg::Mat::from_fn(k, k, |i, j| g[i][j].clone());
        if !det(&m).is_positive() {
            return false;
        }
    }
    (0..n).all(|i| (0..n).all(|j| g[i][j] == g[j][i]))
}

fn det(m: &crate::linalg::Mat<Q>) -> Q {
    let n = m.rows();
    let mut a = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else { return Q::zero() };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d *= &piv;
        for i in c + 1..n {
            let f = &a[(i, c)] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let t = &f * &a[(c, j)];
                a[(i, j)] -= t;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::q;

    fn rs(f: Family, l: usize) -> RootSystem {
        build_root_system(f, l, qi(1)).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(Family::A, 3).num_positive_roots(), 6);
        assert_eq!(rs(Family::B, 2).num_positive_roots(), 4);
        assert_eq!(rs(Family::C, 3).num_positive_roots(), 9);
        assert_eq!(rs(Family::D, 4).num_positive_roots(), 12);
        assert_eq!(rs(Family::G, 2).num_positive_roots(), 6);
        assert!(build_root_system(Family::D, 2, qi(1)).is_err());
        assert!(build_root_system(Family::G, 3, qi(1)).is_err());
    }

    #[test]
    fn b2_rho_in_eps_coordinates() {
        let b2 = rs(Family::B, 2);
        assert_eq!(b2.to_eps_q(&b2.rho()), vec![q(3, 2), q(1, 2)]);
        assert_eq!(b2.norm_sq(&b2.rho()), q(10, 4));
        // Half the sum of the ε-roots {ε₁±ε₂, ε₁, ε₂}.
        let sum = b2.positive_roots_eps().iter().fold(vec![0, 0], |acc, r| vec![acc[0] + r[0], acc[1] + r[1]]);
        assert_eq!(sum, vec![3, 1]);
    }

    #[test]
    fn eps_roundtrip() {
        for (f, l) in [(Family::A, 3), (Family::B, 3), (Family::C, 2), (Family::D, 4), (Family::G, 2)] {
            let r = rs(f, l);
            let w = Weight((0..l as i64).map(|i| i + 1).collect());
            assert_eq!(r.from_eps_q(&r.to_eps_q(&w)).unwrap(), w);
        }
    }

    #[test]
    fn duals() {
        let a3 = rs(Family::A, 3);
        assert_eq!(a3.dual(&Weight(vec![1, 2, 0])), Weight(vec![0, 2, 1]));
        let d5 = rs(Family::D, 5);
        assert_eq!(d5.dual(&Weight(vec![0, 0, 0, 1, 0])), Weight(vec![0, 0, 0, 0, 1]));
        let d4 = rs(Family::D, 4);
        assert_eq!(d4.dual(&Weight(vec![0, 0, 1, 0])), Weight(vec![0, 0, 1, 0]));
    }
}
