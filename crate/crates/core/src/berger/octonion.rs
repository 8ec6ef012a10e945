use crate::field::{qi, Field, Q};
use crate::linalg::Mat;

/// Octonion multiplication on the basis `1, e₁, …, e₇` with
/// `e_i * e_{i+1} = e_{i+3}` (indices mod 7).
#[derive(Clone, Debug)]
pub struct OctonionTable {
    /// `table[a][b] = (sign, c)` meaning `e_a * e_b = sign · e_c`; index 0 is the unit.
    table: [[(i8, usize); 8]; 8],
}

/// Imaginary index after `i` steps, in `1..=7`.
fn shift(i: usize, k: usize) -> usize {
    (i - 1 + k) % 7 + 1
}

impl Default for OctonionTable {
    fn default() -> Self {
        Self::new()
    }
}

impl OctonionTable {
    pub fn new() -> Self {
        let mut table = [[(0i8, 0usize); 8]; 8];
        table[0][0] = (1, 0);
        for i in 1..8 {
            table[0][i] = (1, i);
            table[i][0] = (1, i);
            table[i][i] = (-1, 0);
        }
        for i in 1..8 {
            let (a, b, c) = (i, shift(i, 1), shift(i, 3));
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                table[x][y] = (1, z);
                table[y][x] = (-1, z);
            }
        }
        OctonionTable { table }
    }

    /// `e_a * e_b` as `(sign, index)`.
    pub fn basis_product(&self, a: usize, b: usize) -> (i8, usize) {
        self.table[a][b]
    }

    pub fn mul<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); 8];
        for a in 0..8 {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if y[b].is_zero() {
                    continue;
                }
                let (s, c) = self.table[a][b];
                let t = x[a].mul(&y[b]);
                out[c] = if s > 0 { out[c].add(&t) } else { out[c].sub(&t) };
            }
        }
        out
    }

    /// Imaginary part `*_𝕀` of a product of imaginary units, as a sign and index.
    pub fn imaginary_product(&self, i: usize, j: usize) -> Option<(i8, usize)> {
        let (s, c) = self.table[i][j];
        (c != 0).then_some((s, c))
    }

    /// Matrix of `s ↦ s * e_i` on 𝕆.
    pub fn right_mult(&self, i: usize) -> Mat<Q> {
        let mut m = Mat::zeros(8, 8);
        for s in 0..8 {
            let (sign, t) = self.table[s][i];
            m[(t, s)] = qi(sign as i64);
        }
        m
    }

    pub fn conj<F: Field>(x: &[F]) -> Vec<F> {
        x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { v.neg() }).collect()
    }

    pub fn norm_sq<F: Field>(x: &[F]) -> F {
        x.iter().fold(F::zero(), |acc, v| acc.add(&v.mul(v)))
    }

    /// Alternativity `(xx)y = x(xy)`, `(yx)x = y(xx)` on all pairs of basis sums
    /// `e_a + e_b`, and `‖e_a e_b‖ = 1`.
    pub fn check(&self) -> bool {
        let unit = |a: usize| {
            let mut v = vec![qi(0); 8];
            v[a] = qi(1);
            v
        };
        for a in 0..8 {
            for b in 0..8 {
                let p = self.mul(&unit(a), &unit(b));
                if Self::norm_sq(&p) != qi(1) {
                    return false;
                }
                let x: Vec<Q> = (0..8).map(|k| qi((k == a) as i64 + (k == b) as i64)).collect();
                for c in 0..8 {
                    let y = unit(c);
                    let xx = self.mul(&x, &x);
                    if self.mul(&xx, &y) != self.mul(&x, &self.mul(&x, &y)) {
                        return false;
                    }
                    if self.mul(&self.mul(&y, &x), &x) != self.mul(&y, &xx) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rule_and_identities() {
        let t = OctonionTable::new();
        for i in 1..8 {
            assert_eq!(t.basis_product(i, shift(i, 1)), (1, shift(i, 3)));
        }
        assert!(t.check());
    }

    #[test]
    fn right_multiplications_anticommute() {
        let t = OctonionTable::new();
        let r: Vec<Mat<Q>> = (1..8).map(|i| t.right_mult(i)).collect();
        for i in 0..7 {
            for j in 0..7 {
                let want = if i == j { Mat::scalar(8, &qi(-2)) } else { Mat::zeros(8, 8) };
                assert_eq!(r[i].anticommutator(&r[j]), want);
            }
        }
    }
}
