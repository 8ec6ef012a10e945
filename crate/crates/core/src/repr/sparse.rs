use std::collections::BTreeMap;

use crate::field::{Field, Q};

/// Square sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SpMat {
    n: usize,
    cols: Vec<Vec<(usize, Q)>>,
}

impl SpMat {
    pub fn zeros(n: usize) -> Self {
        SpMat { n, cols: vec![Vec::new(); n] }
    }

    pub fn diagonal(d: &[Q]) -> Self {
        let cols = d
            .iter()
            .enumerate()
            .map(|(i, x)| if Field::is_zero(x) { Vec::new() } else { vec![(i, x.clone())] })
            .collect();
        SpMat { n: d.len(), cols }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn push(&mut self, row: usize, col: usize, v: Q) {
        if !Field::is_zero(&v) {
            self.cols[col].push((row, v));
        }
    }

    pub fn column(&self, j: usize) -> &[(usize, Q)] {
        &self.cols[j]
    }

    pub fn mul(&self, o: &SpMat) -> SpMat {
        let mut out = SpMat::zeros(self.n);
        for j in 0..self.n {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, b) in &o.cols[j] {
                for (i, a) in &self.cols[*k] {
                    let e = acc.entry(*i).or_insert_with(<Q as Field>::zero);
                    *e += a * b;
                }
            }
            out.cols[j] = acc.into_iter().filter(|(_, v)| !Field::is_zero(v)).collect();
        }
        out
    }

    pub fn sub(&self, o: &SpMat) -> SpMat {
        let mut out = SpMat::zeros(self.n);
        for j in 0..self.n {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (i, a) in &self.cols[j] {
                *acc.entry(*i).or_insert_with(<Q as Field>::zero) += a;
            }
            for (i, a) in &o.cols[j] {
                *acc.entry(*i).or_insert_with(<Q as Field>::zero) -= a;
            }
            out.cols[j] = acc.into_iter().filter(|(_, v)| !Field::is_zero(v)).collect();
        }
        out
    }

    pub fn commutator(&self, o: &SpMat) -> SpMat {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }
}
