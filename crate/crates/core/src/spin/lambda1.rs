use super::space::SymmetricSpace;
use crate::error::{Error, PartialCertificate, Result};
use crate::exec::Exec;
use crate::field::Q;
use crate::lie::{CasimirQueue, Weight};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Maximum number of dominant weights popped from the queue.
    pub budget: usize,
    pub exec: Exec,
    /// Weights evaluated per parallel round.
    pub batch: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, exec: Exec::default(), batch: 32 }
    }
}

/// Smallest Parthasarathy value reached through one spinor component.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentValue {
    pub component: Weight,
    pub value: Q,
    pub minimizers: Vec<Weight>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lambda1Result {
    pub value: Q,
    pub minimizers: Vec<Weight>,
    pub casimir_sigma: Q,
    /// One entry per spinor component, in decomposition order.
    pub components: Vec<ComponentValue>,
    pub explored: usize,
}

/// `λ₁(D²) = min { c_G^{γ*} + c_H^σ : Hom_H(V^γ, Σ) ≠ 0 }`, plus the same
/// minimum restricted to each spinor component.
///
/// Weights are visited in nondecreasing Casimir order, so the search can stop
/// as soon as the queue head is worse than every component's best value.
pub fn lambda1(space: &SymmetricSpace, opts: SearchOptions) -> Result<Lambda1Result> {
    let g = space.g();
    let cs = space.casimir_sigma().clone();
    let comps = space.spinor_decomposition().weights();
    let mut best: Vec<Option<(Q, Vec<Weight>)>> = vec![None; comps.len()];
    let mut queue = CasimirQueue::new(g);
    let batch = opts.batch.max(1);
    let bound = |best: &[Option<(Q, Vec<Weight>)>]| -> Option<Q> {
        let mut worst: Option<Q> = None;
        for b in best {
            let v = &b.as_ref()?.0;
            if worst.as_ref().is_none_or(|w| v > w) {
                worst = Some(v.clone());
            }
        }
        worst
    };
    loop {
        let limit = bound(&best);
        let mut round: Vec<(Weight, Q)> = Vec::with_capacity(batch);
        while round.len() < batch {
            let Some(c) = queue.peek_casimir() else { break };
            if let Some(l) = &limit {
                if &(&c + &cs) > l {
                    break;
                }
            }
            if queue.popped() >= opts.budget {
                let overall = best.iter().flatten().map(|(v, _)| v.clone()).min();
                return Err(Error::Budget {
                    budget: opts.budget,
                    certificate: Box::new(PartialCertificate { explored: queue.popped(), best: overall, casimir_frontier: c }),
                });
            }
            round.push(queue.next().expect("peeked"));
        }
        if round.is_empty() {
            break;
        }
        let found: Vec<Result<Vec<Weight>>> = opts.exec.map(&round, |(w, _)| space.admissible_components(w));
        for ((w, c), hit) in round.into_iter().zip(found) {
            let value = &c + &cs;
            for comp in hit? {
                let i = comps.iter().position(|x| *x == comp).expect("component");
                match &mut best[i] {
                    Some((v, ms)) if *v == value => ms.push(w.clone()),
                    Some((v, _)) if *v < value => {}
                    slot => *slot = Some((value.clone(), vec![w.clone()])),
                }
            }
        }
    }
    let components: Vec<ComponentValue> = comps
        .into_iter()
        .zip(best)
        .map(|(component, b)| {
            let (value, mut minimizers) = b.expect("every component is reached");
            minimizers.sort();
            ComponentValue { component, value, minimizers }
        })
        .collect();
    let value = components.iter().map(|c| c.value.clone()).min().expect("nonempty decomposition");
    let mut minimizers: Vec<Weight> =
        components.iter().filter(|c| c.value == value).flat_map(|c| c.minimizers.clone()).collect();
    minimizers.sort();
    minimizers.dedup();
    Ok(Lambda1Result { value, minimizers, casimir_sigma: cs, components, explored: queue.popped() })
}
