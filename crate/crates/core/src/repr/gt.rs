use super::{Key, Module, Vector};
use crate::field::{qi, Cq, Field, Q};
use crate::lie::Weight;

/// Irreducible 𝔤𝔩(n)-module in the Gelfand–Tsetlin basis.
///
/// Keys are patterns flattened row by row from the top row (length `n`)
/// down to the bottom row (length 1). Generator `i*n + j` is `E_{ij}`
/// (0-based). Entries of the basis vectors are rational, so only the
/// standard `E_{k,k±1}` formulas are needed; other `E_{ij}` are commutators.
#[derive(Clone, Debug)]
pub struct GtModule {
    n: usize,
    top: Vec<i64>,
    hw: Weight,
    dim: usize,
}

impl GtModule {
    /// Module of 𝔰𝔲(n) with Dynkin labels `hw`, normalized so the last top-row entry is 0.
    pub fn new(hw: &Weight) -> Self {
        let n = hw.len() + 1;
        let mut top = vec![0; n];
        for k in (0..n - 1).rev() {
            top[k] = top[k + 1] + hw.0[k];
        }
        Self::from_top(top)
    }

    /// Module with the given 𝔤𝔩(n) highest weight (nonincreasing).
    pub fn from_top(top: Vec<i64>) -> Self {
        let n = top.len();
        assert!(top.windows(2).all(|w| w[0] >= w[1]), "top row must be nonincreasing");
        let hw = Weight((0..n - 1).map(|k| top[k] - top[k + 1]).collect());
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for i in 0..n {
            for j in i + 1..n {
                num *= (top[i] - top[j] + (j - i) as i64) as i128;
                den *= (j - i) as i128;
            }
        }
        GtModule { n, top, hw, dim: (num / den) as usize }
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn top_row(&self) -> &[i64] {
        &self.top
    }

    /// Contragredient module, top row `(-λ_n, …, -λ_1)`.
    pub fn dual(&self) -> GtModule {
        GtModule::from_top(self.top.iter().rev().map(|x| -x).collect())
    }

    fn start(&self, k: usize) -> usize {
        (self.n * (self.n + 1) - k * (k + 1)) / 2
    }

    /// `λ_{k,i}` with 1-based `k` (row length) and `i`.
    fn at(&self, p: &[i64], k: usize, i: usize) -> i64 {
        p[self.start(k) + i - 1]
    }

    fn l(&self, p: &[i64], k: usize, i: usize) -> i64 {
        self.at(p, k, i) - i as i64 + 1
    }

    fn row_sum(&self, p: &[i64], k: usize) -> i64 {
        if k == 0 {
            0
        } else {
            p[self.start(k)..self.start(k) + k].iter().sum()
        }
    }

    /// Eigenvalue of `E_{kk}` (1-based).
    pub fn diag(&self, p: &[i64], k: usize) -> i64 {
        self.row_sum(p, k) - self.row_sum(p, k - 1)
    }

    fn interlaces_at(&self, p: &[i64], k: usize, i: usize) -> bool {
        let x = self.at(p, k, i);
        let above = x <= self.at(p, k + 1, i) && x >= self.at(p, k + 1, i + 1);
        let below = k == 1
            || ((i > k - 1 || x >= self.at(p, k - 1, i)) && (i == 1 || x <= self.at(p, k - 1, i - 1)));
        above && below
    }

    /// `E_{k,k+1}` on a pattern.
    fn raise(&self, p: &[i64], k: usize) -> Vec<(Key, Q)> {
        let mut out = Vec::new();
        for i in 1..=k {
            let mut q = p.to_vec();
            q[self.start(k) + i - 1] += 1;
            if !self.interlaces_at(&q, k, i) {
                continue;
            }
            let lki = self.l(p, k, i);
            let mut num: i128 = 1;
            for j in 1..=k + 1 {
                num *= (lki - self.l(p, k + 1, j)) as i128;
            }
            let mut den: i128 = 1;
            for j in (1..=k).filter(|&j| j != i) {
                den *= (lki - self.l(p, k, j)) as i128;
            }
            if num != 0 {
                out.push((q, -Q::new(num.into(), den.into())));
            }
        }
        out
    }

    /// `E_{k+1,k}` on a pattern.
    fn lower(&self, p: &[i64], k: usize) -> Vec<(Key, Q)> {
        let mut out = Vec::new();
        for i in 1..=k {
            let mut q = p.to_vec();
            q[self.start(k) + i - 1] -= 1;
            if !self.interlaces_at(&q, k, i) {
                continue;
            }
            let lki = self.l(p, k, i);
            let mut num: i128 = 1;
            for j in 1..k {
                num *= (lki - self.l(p, k - 1, j)) as i128;
            }
            let mut den: i128 = 1;
            for j in (1..=k).filter(|&j| j != i) {
                den *= (lki - self.l(p, k, j)) as i128;
            }
            if num != 0 {
                out.push((q, Q::new(num.into(), den.into())));
            }
        }
        out
    }

    fn apply_op(v: &Vector, op: impl Fn(&[i64]) -> Vec<(Key, Q)>) -> Vector {
        let mut out = Vector::new();
        for (p, c) in v {
            for (q, a) in op(p) {
                let t = Field::mul(c, &Cq::from_q(&a));
                match out.get_mut(&q) {
                    Some(e) => *e = Field::add(e, &t),
                    None => {
                        out.insert(q, t);
                    }
                }
            }
        }
        out.retain(|_, x| !Field::is_zero(x));
        out
    }

    /// `E_{ij}` with 1-based indices.
    pub fn apply_e(&self, i: usize, j: usize, v: &Vector) -> Vector {
        if i == j {
            let mut out = Vector::new();
            for (p, c) in v {
                let d = self.diag(p, i);
                if d != 0 {
                    out.insert(p.clone(), Field::mul(c, &Cq::from_q(&qi(d))));
                }
            }
            return out;
        }
        if j == i + 1 {
            return Self::apply_op(v, |p| self.raise(p, i));
        }
        if i == j + 1 {
            return Self::apply_op(v, |p| self.lower(p, j));
        }
        let (a, b, m) = if j > i { (i, j, j - 1) } else { (i, j, i - 1) };
        // E_ab = [E_am, E_mb] for any m distinct from a and b.
        let x = self.apply_e(a, m, &self.apply_e(m, b, v));
        let y = self.apply_e(m, b, &self.apply_e(a, m, v));
        super::sub(&x, &y)
    }

    /// Every pattern whose rows from the top down to `fixed.len()` rows are
    /// the top row followed by `fixed`.
    pub fn patterns_with_rows(&self, fixed: &[Vec<i64>]) -> Vec<Key> {
        let mut prefix: Vec<i64> = self.top.clone();
        let mut last = self.top.clone();
        for r in fixed {
            if r.len() + 1 != last.len() || !(0..r.len()).all(|i| last[i] >= r[i] && r[i] >= last[i + 1]) {
                return Vec::new();
            }
            prefix.extend_from_slice(r);
            last = r.clone();
        }
        let mut out = Vec::new();
        self.extend(&mut prefix, &last, &mut out);
        out
    }

    fn extend(&self, prefix: &mut Vec<i64>, last: &[i64], out: &mut Vec<Key>) {
        if last.len() == 1 {
            out.push(prefix.clone());
            return;
        }
        let k = last.len() - 1;
        let mut row = vec![0; k];
        self.rec_row(prefix, last, &mut row, 0, out);
    }

    fn rec_row(&self, prefix: &mut Vec<i64>, last: &[i64], row: &mut Vec<i64>, i: usize, out: &mut Vec<Key>) {
        if i == row.len() {
            let len = prefix.len();
            prefix.extend_from_slice(row);
            let r = row.clone();
            self.extend(prefix, &r, out);
            prefix.truncate(len);
            return;
        }
        for x in (last[i + 1]..=last[i]).rev() {
            row[i] = x;
            self.rec_row(prefix, last, row, i + 1, out);
        }
    }

    /// Row of length `k` of a pattern.
    pub fn row<'a>(&self, p: &'a [i64], k: usize) -> &'a [i64] {
        &p[self.start(k)..self.start(k) + k]
    }
}

impl Module for GtModule {
    fn highest_weight(&self) -> &Weight {
        &self.hw
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn weight_of(&self, key: &Key) -> Weight {
        Weight((1..self.n).map(|k| self.diag(key, k) - self.diag(key, k + 1)).collect())
    }

    fn basis(&self) -> Vec<Key> {
        self.patterns_with_rows(&[])
    }

    fn apply_generator(&self, gen: usize, v: &Vector) -> Vector {
        self.apply_e(gen / self.n + 1, gen % self.n + 1, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::unit;

    fn bracket(m: &GtModule, a: (usize, usize), b: (usize, usize), v: &Vector) -> Vector {
        let x = m.apply_e(a.0, a.1, &m.apply_e(b.0, b.1, v));
        let y = m.apply_e(b.0, b.1, &m.apply_e(a.0, a.1, v));
        crate::repr::sub(&x, &y)
    }

    #[test]
    fn gl_commutation_relations() {
        let m = GtModule::from_top(vec![2, 1, 0, -1]);
        let basis = m.basis();
        assert_eq!(basis.len(), m.dim());
        let n = 4;
        for p in basis.iter().step_by(7) {
            let v = unit(p.clone());
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=n {
                        for d in 1..=n {
                            let lhs = bracket(&m, (a, b), (c, d), &v);
                            let mut rhs = Vector::new();
                            if b == c {
                                crate::repr::axpy(&mut rhs, &Cq::one(), &m.apply_e(a, d, &v));
                            }
                            if a == d {
                                crate::repr::axpy(&mut rhs, &Field::neg(&Cq::one()), &m.apply_e(c, b, &v));
                            }
                            assert_eq!(lhs, rhs, "[E{a}{b},E{c}{d}] on {p:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_and_dimension() {
        let m = GtModule::new(&Weight(vec![0, 1, 0]));
        assert_eq!(m.dim(), 6);
        assert_eq!(m.dual().highest_weight(), &Weight(vec![0, 1, 0]));
        let s = GtModule::new(&Weight(vec![1, 0, 0, 0, 2]));
        assert_eq!(s.dual().highest_weight(), &Weight(vec![2, 0, 0, 0, 1]));
    }
}
