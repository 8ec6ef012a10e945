use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;

use super::{RootSystem, Weight};
use crate::error::{domain, Error, Result};

/// Product of simple factors and a torus, e.g. the isotropy algebra of a
/// symmetric space.
///
/// Weights are concatenated Dynkin labels of the factors followed by the
/// torus charges.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductiveRootSystem {
    factors: Vec<RootSystem>,
    torus: usize,
    offsets: Vec<usize>,
    /// Coefficients of a functional that is positive on every positive root.
    height: Vec<i128>,
}

impl ReductiveRootSystem {
    pub fn new(factors: Vec<RootSystem>, torus: usize) -> Self {
        let mut offsets = Vec::with_capacity(factors.len());
        let mut off = 0;
        for f in &factors {
            offsets.push(off);
            off += f.rank();
        }
        let lcm = factors.iter().fold(1i64, |acc, f| acc.lcm(&f.gram_den()));
        let mut height = Vec::with_capacity(off + torus);
        for f in &factors {
            let ones = vec![1; f.rank()];
            for i in 0..f.rank() {
                let mut e = vec![0; f.rank()];
                e[i] = 1;
                height.push(f.inner_scaled(&e, &ones) * (lcm / f.gram_den()) as i128);
            }
        }
        height.extend(std::iter::repeat_n(0, torus));
        ReductiveRootSystem { factors, torus, offsets, height }
    }

    pub fn simple(rs: RootSystem) -> Self {
        Self::new(vec![rs], 0)
    }

    pub fn torus(n: usize) -> Self {
        Self::new(Vec::new(), n)
    }

    pub fn factors(&self) -> &[RootSystem] {
        &self.factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.torus
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.len() != self.rank() {
            return Err(domain(format!("weight {w} has wrong length for {self}")));
        }
        Ok(())
    }

    fn part(&self, w: &Weight, k: usize) -> Weight {
        let o = self.offsets[k];
        Weight(w.0[o..o + self.factors[k].rank()].to_vec())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        w.0[..self.semisimple_rank()].iter().all(|&x| x >= 0)
    }

    pub fn dimension(&self, w: &Weight) -> Result<u64> {
        self.check(w)?;
        let mut d = 1;
        for k in 0..self.factors.len() {
            d *= self.factors[k].dimension(&self.part(w, k))?;
        }
        Ok(d)
    }

    /// Dual irreducible: dual on each factor, negated charges.
    pub fn dual(&self, w: &Weight) -> Weight {
        let mut out = Vec::with_capacity(w.len());
        for k in 0..self.factors.len() {
            out.extend(self.factors[k].dual(&self.part(w, k)).0);
        }
        out.extend(w.0[self.semisimple_rank()..].iter().map(|c| -c));
        Weight(out)
    }

    /// Weight multiset of the irreducible with highest weight `w`.
    pub fn weight_multiplicities(&self, w: &Weight) -> Result<BTreeMap<Weight, u64>> {
        self.check(w)?;
        if !self.is_dominant(w) {
            return Err(domain(format!("weight {w} is not dominant for {self}")));
        }
        let mut acc: Vec<(Vec<i64>, u64)> = vec![(Vec::new(), 1)];
        for k in 0..self.factors.len() {
            let wm = self.factors[k].weight_multiplicities(&self.part(w, k))?;
            let mut next = Vec::with_capacity(acc.len() * wm.len());
            for (prefix, m) in &acc {
                for (v, n) in &wm {
                    let mut p = prefix.clone();
                    p.extend_from_slice(&v.0);
                    next.push((p, m * n));
                }
            }
            acc = next;
        }
        let charges = &w.0[self.semisimple_rank()..];
        Ok(acc
            .into_iter()
            .map(|(mut p, m)| {
                p.extend_from_slice(charges);
                (Weight(p), m)
            })
            .collect())
    }

    pub(crate) fn height(&self, w: &Weight) -> i128 {
        w.0.iter().zip(&self.height).map(|(&x, &c)| x as i128 * c).sum()
    }

    /// Split a weight multiset into irreducible characters by repeatedly
    /// removing the character of a highest remaining weight.
    pub fn decompose(&self, multiset: &BTreeMap<Weight, u64>) -> Result<BTreeMap<Weight, u64>> {
        let mut rem: HashMap<Weight, i64> = multiset.iter().map(|(w, &m)| (w.clone(), m as i64)).collect();
        let mut out = BTreeMap::new();
        loop {
            rem.retain(|_, m| *m != 0);
            let Some(top) = rem
                .keys()
                .max_by(|a, b| self.height(a).cmp(&self.height(b)).then_with(|| a.cmp(b)))
                .cloned()
            else {
                break;
            };
            let m = rem[&top];
            if m < 0 || !self.is_dominant(&top) {
                return Err(Error::Embedding(format!("highest remaining weight {top} is not a dominant weight of {self}")));
            }
            for (v, n) in self.weight_multiplicities(&top)? {
                let e = rem.entry(v.clone()).or_insert(0);
                *e -= m * n as i64;
                if *e < 0 {
                    return Err(Error::Embedding(format!("multiplicity of {v} became negative while removing {top}")));
                }
            }
            out.insert(top, m as u64);
        }
        Ok(out)
    }
}

impl fmt::Display for ReductiveRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|r| r.name()).collect();
        if self.torus > 0 {
            parts.push(format!("T{}", self.torus));
        }
        if parts.is_empty() {
            parts.push("trivial".into());
        }
        write!(f, "{}", parts.join("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;
    use crate::lie::{build_root_system, Family};

    #[test]
    fn product_weights() {
        let a1 = build_root_system(Family::A, 1, qi(1)).unwrap();
        let h = ReductiveRootSystem::new(vec![a1.clone(), a1], 1);
        let w = Weight(vec![1, 2, 5]);
        assert_eq!(h.dimension(&w).unwrap(), 6);
        let wm = h.weight_multiplicities(&w).unwrap();
        assert_eq!(wm.values().sum::<u64>(), 6);
        assert!(wm.keys().all(|k| k.0[2] == 5));
        assert_eq!(h.decompose(&wm).unwrap(), BTreeMap::from([(w, 1)]));
        assert_eq!(h.to_string(), "A1xA1xT1");
    }

    #[test]
    fn inconsistent_multiset_is_rejected() {
        let a1 = build_root_system(Family::A, 1, qi(1)).unwrap();
        let h = ReductiveRootSystem::simple(a1);
        let bad = BTreeMap::from([(Weight(vec![2]), 1), (Weight(vec![-2]), 1)]);
        assert!(matches!(h.decompose(&bad), Err(Error::Embedding(_))));
    }
}
