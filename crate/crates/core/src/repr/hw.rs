use std::collections::{BTreeSet, HashMap};

use super::{Key, Module, SpMat, Vector};
use crate::error::{internal, Result};
use crate::field::{qi, Cq, Field, Q};
use crate::lie::{RootSystem, Weight};
use crate::linalg::{rref, Mat};

/// For each positive root (in [`RootSystem::positive_roots`] order), `None`
/// for a simple root, or `Some((i, b))` meaning `E_β = [E_i, E_b]` and
/// `F_β = [F_b, F_i]`.
pub fn root_recipe(rs: &RootSystem) -> Vec<Option<(usize, usize)>> {
    let roots = rs.positive_roots();
    let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    roots
        .iter()
        .map(|r| {
            if r.iter().sum::<i64>() == 1 {
                return None;
            }
            (0..rs.rank()).find_map(|i| {
                let mut s = r.clone();
                s[i] -= 1;
                index.get(&s).map(|&b| (i, b))
            })
        })
        .collect()
}

/// Irreducible highest-weight module built from the Chevalley–Serre
/// presentation, over ℚ.
///
/// Generators are ordered `h_1..h_r, E_β.., F_β..` with roots in
/// [`RootSystem::positive_roots`] order.
#[derive(Clone, Debug)]
pub struct HwModule {
    hw: Weight,
    weights: Vec<Weight>,
    weight_of: Vec<usize>,
    gens: Vec<SpMat>,
}

impl HwModule {
    pub fn new(rs: &RootSystem, hw: &Weight) -> Result<Self> {
        let r = rs.rank();
        let dim_expected = rs.dimension(hw)? as usize;
        let simple: Vec<Weight> = (0..r).map(|i| rs.simple_root(i)).collect();

        let mut weights: Vec<Weight> = vec![hw.clone()];
        let mut index: HashMap<Weight, usize> = HashMap::from([(hw.clone(), 0)]);
        let mut mult: Vec<usize> = vec![1];
        // e_blk[i][w]: V_w -> V_{w+α_i}; f_blk[j][w]: V_w -> V_{w-α_j}.
        let mut e_blk: Vec<HashMap<usize, Mat<Q>>> = vec![HashMap::new(); r];
        let mut f_blk: Vec<HashMap<usize, Mat<Q>>> = vec![HashMap::new(); r];

        let mut level: Vec<usize> = vec![0];
        while !level.is_empty() {
            let mut cand_weights: BTreeSet<Weight> = BTreeSet::new();
            for &w in &level {
                for a in &simple {
                    let v = weights[w].sub(a);
                    if !index.contains_key(&v) {
                        cand_weights.insert(v);
                    }
                }
            }
            let mut next = Vec::new();
            for nu in cand_weights.into_iter().rev() {
                let ups: Vec<(usize, usize)> =
                    (0..r).filter_map(|j| index.get(&nu.add(&simple[j])).map(|&p| (j, p))).collect();
                // Row layout of E-images: one block per i in ups.
                let mut row_off = Vec::with_capacity(ups.len());
                let mut rows = 0;
                for &(_, p) in &ups {
                    row_off.push(rows);
                    rows += mult[p];
                }
                let mut cands: Vec<(usize, usize, usize)> = Vec::new(); // (j, p, t)
                for &(j, p) in &ups {
                    for t in 0..mult[p] {
                        cands.push((j, p, t));
                    }
                }
                let mut k = Mat::<Q>::zeros(rows, cands.len());
                for (c, &(j, p, t)) in cands.iter().enumerate() {
                    for (bi, &(i, q)) in ups.iter().enumerate() {
                        // e_i f_j b = f_j e_i b + δ_ij ⟨ν+α_j, α_i^∨⟩ b
                        if let Some(&w2) = index.get(&nu.add(&simple[i]).add(&simple[j])) {
                            let e = &e_blk[i][&p];
                            let f = &f_blk[j][&w2];
                            for s in 0..mult[q] {
                                let mut acc = qi(0);
                                for u in 0..mult[w2] {
                                    let a = &e[(u, t)];
                                    if !Field::is_zero(a) {
                                        acc += a * &f[(s, u)];
                                    }
                                }
                                k[(row_off[bi] + s, c)] += acc;
                            }
                        }
                        if i == j {
                            k[(row_off[bi] + t, c)] += qi(weights[p].0[i]);
                        }
                    }
                }
                let mut red = k.clone();
                let piv = rref(&mut red);
                if piv.is_empty() {
                    continue;
                }
                let id = weights.len();
                weights.push(nu.clone());
                index.insert(nu.clone(), id);
                mult.push(piv.len());
                next.push(id);
                for (bi, &(i, q)) in ups.iter().enumerate() {
                    let blk = Mat::from_fn(mult[q], piv.len(), |s, b| k[(row_off[bi] + s, piv[b])].clone());
                    e_blk[i].insert(id, blk);
                }
                for &(j, p) in &ups {
                    let blk = Mat::from_fn(piv.len(), mult[p], |b, t| {
                        let c = cands.iter().position(|&x| x == (j, p, t)).unwrap();
                        red[(b, c)].clone()
                    });
                    f_blk[j].insert(p, blk);
                }
            }
            level = next;
        }

        let mut offset = Vec::with_capacity(weights.len());
        let mut dim = 0;
        for m in &mult {
            offset.push(dim);
            dim += m;
        }
        if dim != dim_expected {
            return Err(internal(format!("module {hw} built with dimension {dim}, Weyl formula gives {dim_expected}")));
        }
        let mut weight_of = Vec::with_capacity(dim);
        for (w, m) in mult.iter().enumerate() {
            weight_of.extend(std::iter::repeat_n(w, *m));
        }

        let scatter = |blocks: &HashMap<usize, Mat<Q>>, shift: &Weight| {
            let mut m = SpMat::zeros(dim);
            for (&w, b) in blocks {
                let tgt = index[&weights[w].add(shift)];
                for col in 0..b.cols() {
                    for row in 0..b.rows() {
                        m.push(offset[tgt] + row, offset[w] + col, b[(row, col)].clone());
                    }
                }
            }
            m
        };
        let mut gens: Vec<SpMat> = Vec::with_capacity(r + 2 * rs.num_positive_roots());
        for i in 0..r {
            let d: Vec<Q> = weight_of.iter().map(|&w| qi(weights[w].0[i])).collect();
            gens.push(SpMat::diagonal(&d));
        }
        let recipe = root_recipe(rs);
        let np = recipe.len();
        let mut es: Vec<SpMat> = Vec::with_capacity(np);
        let mut fs: Vec<SpMat> = Vec::with_capacity(np);
        for (b, rec) in recipe.iter().enumerate() {
            match rec {
                None => {
                    let i = rs.positive_roots()[b].iter().position(|&x| x == 1).unwrap();
                    es.push(scatter(&e_blk[i], &simple[i]));
                    fs.push(scatter(&f_blk[i], &simple[i].neg()));
                }
                Some((i, c)) => {
                    let ei = es[recipe_index(rs, *i)].clone();
                    let fi = fs[recipe_index(rs, *i)].clone();
                    es.push(ei.commutator(&es[*c]));
                    fs.push(fs[*c].commutator(&fi));
                }
            }
        }
        gens.extend(es);
        gens.extend(fs);
        Ok(HwModule { hw: hw.clone(), weights, weight_of, gens })
    }

    pub fn generator(&self, a: usize) -> &SpMat {
        &self.gens[a]
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }
}

/// Position of the simple root `α_i` in the positive-root list.
fn recipe_index(rs: &RootSystem, i: usize) -> usize {
    rs.positive_roots().iter().position(|r| r.iter().sum::<i64>() == 1 && r[i] == 1).unwrap()
}

impl Module for HwModule {
    fn highest_weight(&self) -> &Weight {
        &self.hw
    }

    fn dim(&self) -> usize {
        self.weight_of.len()
    }

    fn weight_of(&self, key: &Key) -> Weight {
        self.weights[self.weight_of[key[0] as usize]].clone()
    }

    fn basis(&self) -> Vec<Key> {
        (0..self.dim() as i64).map(|i| vec![i]).collect()
    }

    fn apply_generator(&self, gen: usize, v: &Vector) -> Vector {
        let m = &self.gens[gen];
        let mut out = Vector::new();
        for (k, c) in v {
            for (row, a) in m.column(k[0] as usize) {
                let t = Field::mul(c, &Cq::from_q(a));
                let key = vec![*row as i64];
                match out.get_mut(&key) {
                    Some(e) => *e = Field::add(e, &t),
                    None => {
                        out.insert(key, t);
                    }
                }
            }
        }
        out.retain(|_, x| !Field::is_zero(x));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_root_system, Family};

    fn check_relations(rs: &RootSystem, hw: Weight) {
        let m = HwModule::new(rs, &hw).unwrap();
        assert_eq!(m.dim() as u64, rs.dimension(&hw).unwrap());
        let r = rs.rank();
        let np = rs.num_positive_roots();
        let simple_pos: Vec<usize> = (0..r).map(|i| recipe_index(rs, i)).collect();
        for i in 0..r {
            for j in 0..r {
                let e = m.generator(r + simple_pos[i]);
                let f = m.generator(r + np + simple_pos[j]);
                let br = e.commutator(f);
                if i == j {
                    assert!(br.sub(m.generator(i)).is_zero(), "[e_i,f_i] != h_i");
                } else {
                    assert!(br.is_zero(), "[e_i,f_j] != 0");
                }
                let h = m.generator(i);
                let he = h.commutator(e_of(&m, r, simple_pos[j]));
                let expect = scale_sp(e_of(&m, r, simple_pos[j]), rs.cartan_matrix()[i][j]);
                assert!(he.sub(&expect).is_zero(), "[h_i,e_j] != a_ij e_j");
            }
        }
    }

    fn e_of(m: &HwModule, r: usize, p: usize) -> &SpMat {
        m.generator(r + p)
    }

    fn scale_sp(a: &SpMat, k: i64) -> SpMat {
        let d = vec![qi(k); a.dim()];
        SpMat::diagonal(&d).mul(a)
    }

    #[test]
    fn chevalley_relations_hold() {
        let b2 = build_root_system(Family::B, 2, qi(1)).unwrap();
        check_relations(&b2, Weight(vec![1, 1]));
        check_relations(&b2, Weight(vec![0, 3]));
        let a3 = build_root_system(Family::A, 3, qi(1)).unwrap();
        check_relations(&a3, Weight(vec![1, 0, 1]));
        let g2 = build_root_system(Family::G, 2, qi(1)).unwrap();
        check_relations(&g2, Weight(vec![1, 0]));
    }

    #[test]
    fn weight_multiset_matches_freudenthal() {
        let b3 = build_root_system(Family::B, 3, qi(1)).unwrap();
        let hw = Weight(vec![1, 0, 1]);
        let m = HwModule::new(&b3, &hw).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for k in m.basis() {
            *counts.entry(m.weight_of(&k)).or_insert(0u64) += 1;
        }
        assert_eq!(counts, b3.weight_multiplicities(&hw).unwrap());
    }
}
