//! Dense exact linear algebra over a [`Field`].

use std::ops::{Index, IndexMut};

use crate::field::{Field, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F> Index<(usize, usize)> for Mat<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Mat<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let t = a.mul(b);
                        out[(i, j)] = out[(i, j)].add(&t);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s = s.add(&a.mul(b));
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.neg()).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            let a = &self[(i / o.rows, j / o.cols)];
            if a.is_zero() {
                F::zero()
            } else {
                a.mul(&o[(i % o.rows, j % o.cols)])
            }
        })
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn trace(&self) -> F {
        let mut s = F::zero();
        for i in 0..self.rows.min(self.cols) {
            s = s.add(&self[(i, i)]);
        }
        s
    }

    /// tr(self * o) without forming the product.
    pub fn trace_product(&self, o: &Self) -> F {
        assert_eq!((self.cols, self.rows), (o.rows, o.cols));
        let mut s = F::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, i)];
                if !a.is_zero() && !b.is_zero() {
                    s = s.add(&a.mul(b));
                }
            }
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// The scalar `s` if `self == s * Id`.
    pub fn scalar_value(&self) -> Option<F> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        if self.rows == 0 {
            return Some(F::zero());
        }
        let s = self[(0, 0)].clone();
        (0..self.rows).all(|i| self[(i, i)] == s).then_some(s)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_c64(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|a| a.to_c64()).collect()).collect()
    }

    /// Flatten column-major into a vector (used to solve for linear combinations of matrices).
    pub fn flatten(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        rref(&mut m).len()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let piv = rref(&mut aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m[(r, c)].inv().unwrap();
        for j in c..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                if !m[(r, j)].is_zero() {
                    let t = f.mul(&m[(r, j)]);
                    m[(i, j)] = m[(i, j)].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    let mut r = m.clone();
    let piv = rref(&mut r);
    kernel_from_rref(&r, &piv, m.cols)
}

fn kernel_from_rref<F: Field>(r: &Mat<F>, piv: &[usize], cols: usize) -> Vec<Vec<F>> {
    let mut is_piv = vec![false; cols];
    for &p in piv {
        is_piv[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_piv[c]) {
        let mut v = vec![F::zero(); cols];
        v[f] = F::one();
        for (row, &p) in piv.iter().enumerate() {
            let a = &r[(row, f)];
            if !a.is_zero() {
                v[p] = a.neg();
            }
        }
        out.push(v);
    }
    out
}

/// Solve `a x = b`; `None` if inconsistent. Picks free variables as zero.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Mat::from_fn(a.rows, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let piv = rref(&mut aug);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &p) in piv.iter().enumerate() {
        x[p] = aug[(row, n)].clone();
    }
    Some(x)
}

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Suited to tall systems: rows are streamed in and only the independent
/// ones are kept, so memory stays at `rank * cols`.
#[derive(Clone, Debug)]
pub struct RowEchelon<F> {
    cols: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(cols: usize) -> Self {
        RowEchelon { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Add a row; returns true if it enlarged the row space.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.cols);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    v[j] = v[j].sub(&f.mul(a));
                }
            }
        }
        let Some(p) = v.iter().position(|a| !a.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for a in v.iter_mut() {
            if !a.is_zero() {
                *a = a.mul(&inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, a) in v.iter().enumerate() {
                if !a.is_zero() {
                    row[j] = row[j].sub(&f.mul(a));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    /// Null space of the accumulated rows, with the free column of each basis vector.
    pub fn kernel(&self) -> Vec<(usize, Vec<F>)> {
        let mut is_piv = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_piv[*p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_piv[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (p, row) in &self.rows {
                if !row[f].is_zero() {
                    v[*p] = row[f].neg();
                }
            }
            out.push((f, v));
        }
        out
    }
}

/// Result of an exact semidefiniteness test of a Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub positive_semidefinite: bool,
    pub nullity: usize,
}

/// Exact PSD test by symmetric Gaussian elimination.
///
/// Requires the diagonal entries encountered to be real in the sense of
/// [`Field::as_q`] or [`RealSign`]; returns `None` if a sign cannot be decided.
pub fn definiteness<F: Field + RealSign>(a: &Mat<F>) -> Option<Definiteness> {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut nullity = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&k) = active.first() {
        active.remove(0);
        let d = m[(k, k)].clone();
        match d.real_sign()? {
            s if s < 0 => return Some(Definiteness { positive_semidefinite: false, nullity }),
            0 => {
                if active.iter().any(|&j| !m[(k, j)].is_zero()) {
                    return Some(Definiteness { positive_semidefinite: false, nullity });
                }
                nullity += 1;
            }
            _ => {
                let inv = d.inv().unwrap();
                for &i in &active {
                    if m[(i, k)].is_zero() {
                        continue;
                    }
                    let f = m[(i, k)].mul(&inv);
                    for &j in &active {
                        if !m[(k, j)].is_zero() {
                            m[(i, j)] = m[(i, j)].sub(&f.mul(&m[(k, j)]));
                        }
                    }
                }
            }
        }
    }
    Some(Definiteness { positive_semidefinite: true, nullity })
}

/// Sign of a scalar known to be real.
pub trait RealSign {
    fn real_sign(&self) -> Option<i32>;
}

impl RealSign for crate::field::Q {
    fn real_sign(&self) -> Option<i32> {
        Some(crate::field::q_sign(self))
    }
}

impl RealSign for crate::field::Cq {
    fn real_sign(&self) -> Option<i32> {
        num_traits::Zero::is_zero(&self.im).then(|| crate::field::q_sign(&self.re))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, qi, Q};

    fn m(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[qi(3), qi(1)]).unwrap(), vec![qi(2), qi(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[qi(1), qi(3)]).is_none());
    }

    #[test]
    fn streamed_echelon_matches_dense_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 0], &[1, 3, 4, 4], &[2, 0, 1, 1]]);
        let mut e = RowEchelon::new(4);
        for i in 0..4 {
            e.insert(a.row(i).to_vec());
        }
        assert_eq!(e.rank(), a.rank());
        for (_, v) in e.kernel() {
            assert!(a.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn semidefinite_detection() {
        let psd = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(definiteness(&psd), Some(Definiteness { positive_semidefinite: true, nullity: 1 }));
        let indef = m(&[&[1, 2], &[2, 1]]);
        assert!(!definiteness(&indef).unwrap().positive_semidefinite);
        let pd = Mat::from_rows(vec![vec![q(1, 2), q(1, 4)], vec![q(1, 4), q(1, 2)]]);
        assert_eq!(definiteness(&pd).unwrap().nullity, 0);
    }
}
