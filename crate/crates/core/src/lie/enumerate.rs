use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::{RootSystem, Weight};
use crate::field::Q;

/// Dominant weights in nondecreasing Casimir order.
///
/// Best-first over fundamental-weight increments: adding any `ω_i` strictly
/// increases the Casimir, so the heap head is always a global minimum of
/// what is left.
#[derive(Clone, Debug)]
pub struct CasimirQueue {
    rs: RootSystem,
    heap: BinaryHeap<Reverse<(i128, Weight)>>,
    seen: HashSet<Weight>,
    popped: usize,
}

impl CasimirQueue {
    pub fn new(rs: &RootSystem) -> Self {
        let zero = Weight::zero(rs.rank());
        let mut seen = HashSet::new();
        seen.insert(zero.clone());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0, zero)));
        CasimirQueue { rs: rs.clone(), heap, seen, popped: 0 }
    }

    /// Casimir of the next weight to be returned.
    pub fn peek_casimir(&self) -> Option<Q> {
        self.heap.peek().map(|Reverse((c, _))| Q::new((*c).into(), self.rs.gram_den().into()))
    }

    pub fn popped(&self) -> usize {
        self.popped
    }
}

impl Iterator for CasimirQueue {
    type Item = (Weight, Q);

    fn next(&mut self) -> Option<(Weight, Q)> {
        let Reverse((c, w)) = self.heap.pop()?;
        self.popped += 1;
        for i in 0..self.rs.rank() {
            let mut v = w.clone();
            v.0[i] += 1;
            if self.seen.insert(v.clone()) {
                let cv = self.rs.casimir_scaled(&v);
                self.heap.push(Reverse((cv, v)));
            }
        }
        Some((w, Q::new(c.into(), self.rs.gram_den().into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::qi;
    use crate::lie::{build_root_system, Family};

    #[test]
    fn nondecreasing_and_complete() {
        let b2 = build_root_system(Family::B, 2, qi(1)).unwrap();
        let got: Vec<(Weight, Q)> = CasimirQueue::new(&b2).take_while(|(_, c)| *c <= qi(10)).collect();
        assert!(got.windows(2).all(|p| p[0].1 <= p[1].1));
        let mut brute = Vec::new();
        for a in 0..6 {
            for b in 0..6 {
                let w = Weight(vec![a, b]);
                if b2.casimir(&w).unwrap() <= qi(10) {
                    brute.push(w);
                }
            }
        }
        let mut ws: Vec<Weight> = got.into_iter().map(|(w, _)| w).collect();
        ws.sort();
        brute.sort();
        assert_eq!(ws, brute);
    }
}
