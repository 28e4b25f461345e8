use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::scalar::Scalar;
use super::sparse::{koszul_negative, Space, SparseTensor};
use crate::error::{Error, Result};

/// An axis of a node: `(node, axis)`.
pub type Slot = (usize, usize);

/// One contracted pair. The two slots are brought adjacent in the order
/// `first, second` and evaluated with the pairing `<e^i, e_j> = δ`, so
/// `first` should be the dual-space side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub first: Slot,
    pub second: Slot,
}

/// A set of tensors wired together. Every axis is either paired exactly once
/// or listed exactly once among the open axes.
#[derive(Clone, Debug)]
pub struct ContractionNetwork<S> {
    pub nodes: Vec<Arc<SparseTensor<S>>>,
    pub pairings: Vec<Pairing>,
    pub open: Vec<Slot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanStep {
    pub left: usize,
    pub right: usize,
    /// Product of the extents of the axes that survive this step.
    pub cost: u128,
}

/// Ordered pairwise merges. Node ids `0..n` are the inputs; step `k`
/// produces id `n + k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionPlan {
    pub steps: Vec<PlanStep>,
}

impl ContractionPlan {
    pub fn total_cost(&self) -> u128 {
        self.steps.iter().fold(0u128, |acc, s| acc.saturating_add(s.cost))
    }
}

impl<S: Scalar> ContractionNetwork<S> {
    pub fn new(nodes: Vec<Arc<SparseTensor<S>>>) -> Self {
        ContractionNetwork { nodes, pairings: Vec::new(), open: Vec::new() }
    }

    pub fn add_node(&mut self, t: Arc<SparseTensor<S>>) -> usize {
        self.nodes.push(t);
        self.nodes.len() - 1
    }

    pub fn pair(&mut self, first: Slot, second: Slot) {
        self.pairings.push(Pairing { first, second });
    }

    fn space(&self, s: Slot) -> &Space {
        &self.nodes[s.0].axes()[s.1]
    }

    pub fn validate(&self) -> Result<()> {
        let mut used: HashMap<Slot, usize> = HashMap::new();
        let mut mark = |s: Slot, nodes: &[Arc<SparseTensor<S>>]| -> Result<()> {
            if s.0 >= nodes.len() || s.1 >= nodes[s.0].rank() {
                return Err(Error::structural(format!("slot {s:?} does not exist")));
            }
            *used.entry(s).or_default() += 1;
            Ok(())
        };
        for p in &self.pairings {
            mark(p.first, &self.nodes)?;
            mark(p.second, &self.nodes)?;
            if self.space(p.first) != self.space(p.second) {
                return Err(Error::structural(format!(
                    "paired slots {:?} and {:?} differ in extent or parity",
                    p.first, p.second
                )));
            }
        }
        for &o in &self.open {
            mark(o, &self.nodes)?;
        }
        for (n, t) in self.nodes.iter().enumerate() {
            for a in 0..t.rank() {
                match used.get(&(n, a)).copied().unwrap_or(0) {
                    1 => {}
                    0 => return Err(Error::structural(format!("slot ({n}, {a}) is neither paired nor open"))),
                    _ => return Err(Error::structural(format!("slot ({n}, {a}) used more than once"))),
                }
            }
        }
        Ok(())
    }

    fn partner_map(&self) -> HashMap<Slot, Slot> {
        let mut m = HashMap::new();
        for p in &self.pairings {
            m.insert(p.first, p.second);
            m.insert(p.second, p.first);
        }
        m
    }

    /// Greedy plan: repeatedly merge the pair of connected nodes whose result
    /// has the smallest open-extent product; ties go to the lexicographically
    /// smallest id pair. Disconnected pieces are joined last by outer products.
    pub fn plan(&self) -> Result<ContractionPlan> {
        self.validate()?;
        let partner = self.partner_map();
        // surviving slots of every active node
        let mut active: Vec<(usize, BTreeSet<Slot>)> = Vec::new();
        for (n, t) in self.nodes.iter().enumerate() {
            let slots = (0..t.rank())
                .map(|a| (n, a))
                .filter(|s| partner.get(s).is_none_or(|p| p.0 != n))
                .collect();
            active.push((n, slots));
        }
        let mut next_id = self.nodes.len();
        let mut steps = Vec::new();
        while active.len() > 1 {
            let mut best: Option<(u128, usize, usize, usize, usize)> = None;
            for connected_only in [true, false] {
                for i in 0..active.len() {
                    for j in (i + 1)..active.len() {
                        let (a, b) = (&active[i].1, &active[j].1);
                        let shared = a.iter().any(|s| partner.get(s).is_some_and(|p| b.contains(p)));
                        if connected_only && !shared {
                            continue;
                        }
                        let cost = a
                            .iter()
                            .chain(b.iter())
                            .filter(|s| {
                                !partner.get(s).is_some_and(|p| a.contains(p) || b.contains(p))
                            })
                            .fold(1u128, |acc, s| acc.saturating_mul(self.space(*s).len() as u128));
                        let (lo, hi) = (active[i].0.min(active[j].0), active[i].0.max(active[j].0));
                        let better = match best {
                            None => true,
                            Some((c, l, h, _, _)) => (cost, lo, hi) < (c, l, h),
                        };
                        if better {
                            best = Some((cost, lo, hi, i, j));
                        }
                    }
                }
                if best.is_some() {
                    break;
                }
            }
            let (cost, lo, hi, i, j) = best.expect("at least two active nodes");
            let (a, b) = (active[i].1.clone(), active[j].1.clone());
            let merged: BTreeSet<Slot> = a
                .iter()
                .chain(b.iter())
                .filter(|s| !partner.get(s).is_some_and(|p| a.contains(p) || b.contains(p)))
                .copied()
                .collect();
            steps.push(PlanStep { left: lo, right: hi, cost });
            active.remove(j);
            active.remove(i);
            active.push((next_id, merged));
            next_id += 1;
        }
        Ok(ContractionPlan { steps })
    }

    /// Runs `plan` and returns the tensor on the open axes, in `self.open` order.
    pub fn execute(&self, plan: &ContractionPlan) -> Result<SparseTensor<S>> {
        self.validate()?;
        let partner = self.partner_map();
        let first_of: HashMap<Slot, bool> = self
            .pairings
            .iter()
            .flat_map(|p| [(p.first, true), (p.second, false)])
            .collect();

        let mut live: HashMap<usize, Labeled<S>> = HashMap::new();
        for (n, t) in self.nodes.iter().enumerate() {
            let lab = Labeled { slots: (0..t.rank()).map(|a| (n, a)).collect(), tensor: t.as_ref().clone() };
            live.insert(n, lab.trace_internal(&partner, &first_of));
        }
        for (next_id, step) in (self.nodes.len()..).zip(&plan.steps) {
            let a = live
                .remove(&step.left)
                .ok_or_else(|| Error::structural(format!("plan refers to inactive node {}", step.left)))?;
            let b = live
                .remove(&step.right)
                .ok_or_else(|| Error::structural(format!("plan refers to inactive node {}", step.right)))?;
            live.insert(next_id, a.merge(&b, &partner, &first_of));
        }
        let result = match live.len() {
            0 => Labeled { slots: Vec::new(), tensor: SparseTensor::scalar(S::one_elem()) },
            1 => live.into_values().next().expect("one live node"),
            n => return Err(Error::structural(format!("plan leaves {n} nodes unmerged"))),
        };
        let order: Vec<usize> = self
            .open
            .iter()
            .map(|o| result.slots.iter().position(|s| s == o))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::structural("open slot lost during contraction"))?;
        if order.len() != result.slots.len() {
            return Err(Error::structural("plan leaves pairings uncontracted"));
        }
        result.tensor.permute_axes(&order)
    }

    /// Plans greedily and executes.
    pub fn evaluate(&self) -> Result<SparseTensor<S>> {
        let plan = self.plan()?;
        self.execute(&plan)
    }
}

struct Labeled<S> {
    slots: Vec<Slot>,
    tensor: SparseTensor<S>,
}

impl<S: Scalar> Labeled<S> {
    /// Contracts pairings whose both ends live in this tensor.
    fn trace_internal(self, partner: &HashMap<Slot, Slot>, first_of: &HashMap<Slot, bool>) -> Self {
        let n = self.slots.len();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (i, s) in self.slots.iter().enumerate() {
            if let Some(p) = partner.get(s) {
                if let Some(j) = self.slots.iter().position(|x| x == p) {
                    if first_of[s] {
                        pairs.push((i, j));
                    }
                }
            }
        }
        if pairs.is_empty() {
            return self;
        }
        let paired: Vec<bool> = (0..n).map(|i| pairs.iter().any(|&(a, b)| a == i || b == i)).collect();
        let free: Vec<usize> = (0..n).filter(|&i| !paired[i]).collect();
        let mut target = vec![0usize; n];
        for (k, &i) in free.iter().enumerate() {
            target[i] = k;
        }
        for (k, &(a, b)) in pairs.iter().enumerate() {
            target[a] = free.len() + 2 * k;
            target[b] = free.len() + 2 * k + 1;
        }
        let graded = self.tensor.has_odd();
        let axes = free.iter().map(|&i| self.tensor.axes()[i].clone()).collect();
        let mut out = SparseTensor::new(axes);
        for (idx, v) in self.tensor.iter() {
            if pairs.iter().any(|&(a, b)| idx[a] != idx[b]) {
                continue;
            }
            let neg = graded && koszul_negative(&self.tensor.index_odd(idx), &target);
            let key = free.iter().map(|&i| idx[i]).collect();
            out.add_entry(key, if neg { v.negated() } else { v.clone() });
        }
        Labeled { slots: free.iter().map(|&i| self.slots[i]).collect(), tensor: out }
    }

    fn merge(&self, other: &Self, partner: &HashMap<Slot, Slot>, first_of: &HashMap<Slot, bool>) -> Self {
        let (na, nb) = (self.slots.len(), other.slots.len());
        // (axis in self, axis in other, self side is first)
        let mut pairs: Vec<(usize, usize, bool)> = Vec::new();
        for (i, s) in self.slots.iter().enumerate() {
            if let Some(p) = partner.get(s) {
                if let Some(j) = other.slots.iter().position(|x| x == p) {
                    pairs.push((i, j, first_of[s]));
                }
            }
        }
        let a_free: Vec<usize> = (0..na).filter(|i| !pairs.iter().any(|p| p.0 == *i)).collect();
        let b_free: Vec<usize> = (0..nb).filter(|j| !pairs.iter().any(|p| p.1 == *j)).collect();
        let nfree = a_free.len() + b_free.len();
        let mut target = vec![0usize; na + nb];
        for (k, &i) in a_free.iter().enumerate() {
            target[i] = k;
        }
        for (k, &j) in b_free.iter().enumerate() {
            target[na + j] = a_free.len() + k;
        }
        for (k, &(i, j, a_first)) in pairs.iter().enumerate() {
            let (x, y) = (nfree + 2 * k, nfree + 2 * k + 1);
            if a_first {
                target[i] = x;
                target[na + j] = y;
            } else {
                target[na + j] = x;
                target[i] = y;
            }
        }
        let graded = self.tensor.has_odd() || other.tensor.has_odd();

        let mut bucket: HashMap<Vec<u32>, Vec<(&Vec<u32>, &S)>> = HashMap::new();
        for (idx, v) in other.tensor.iter() {
            let key: Vec<u32> = pairs.iter().map(|p| idx[p.1]).collect();
            bucket.entry(key).or_default().push((idx, v));
        }
        let mut axes: Vec<Space> = a_free.iter().map(|&i| self.tensor.axes()[i].clone()).collect();
        axes.extend(b_free.iter().map(|&j| other.tensor.axes()[j].clone()));
        let mut out = SparseTensor::new(axes);
        let mut odd = vec![false; na + nb];
        for (ia, va) in self.tensor.iter() {
            let key: Vec<u32> = pairs.iter().map(|p| ia[p.0]).collect();
            let Some(matches) = bucket.get(&key) else { continue };
            if graded {
                for (k, &x) in ia.iter().enumerate() {
                    odd[k] = self.tensor.axes()[k][x as usize];
                }
            }
            for (ib, vb) in matches {
                let mut idx: Vec<u32> = Vec::with_capacity(nfree);
                idx.extend(a_free.iter().map(|&i| ia[i]));
                idx.extend(b_free.iter().map(|&j| ib[j]));
                let mut val = va.times(vb);
                if graded {
                    for (k, &x) in ib.iter().enumerate() {
                        odd[na + k] = other.tensor.axes()[k][x as usize];
                    }
                    if koszul_negative(&odd, &target) {
                        val = val.negated();
                    }
                }
                out.add_entry(idx, val);
            }
        }
        let mut slots: Vec<Slot> = a_free.iter().map(|&i| self.slots[i]).collect();
        slots.extend(b_free.iter().map(|&j| other.slots[j]));
        Labeled { slots, tensor: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, Q};
    use crate::tensor::sparse::even_space;

    fn delta(d: usize) -> Arc<SparseTensor<Q>> {
        Arc::new(
            SparseTensor::from_entries(vec![even_space(d), even_space(d)], (0..d as u32).map(|i| (vec![i, i], q(1))))
                .unwrap(),
        )
    }

    #[test]
    fn delta_chain() {
        let mut net = ContractionNetwork::new(vec![delta(3), delta(3)]);
        net.pair((0, 1), (1, 0));
        net.open = vec![(0, 0), (1, 1)];
        let r = net.evaluate().unwrap();
        assert_eq!(r, *delta(3));
    }

    #[test]
    fn identity_trace() {
        let mut net = ContractionNetwork::new(vec![delta(5)]);
        net.pair((0, 0), (0, 1));
        let plan = net.plan().unwrap();
        assert!(plan.steps.is_empty());
        assert_eq!(net.execute(&plan).unwrap().scalar_value(), Some(q(5)));
    }

    #[test]
    fn chain_plan_has_two_steps() {
        let mut net = ContractionNetwork::new(vec![delta(2), delta(2), delta(2)]);
        net.pair((0, 1), (1, 0));
        net.pair((1, 1), (2, 0));
        net.open = vec![(0, 0), (2, 1)];
        assert_eq!(net.plan().unwrap().steps.len(), 2);
    }

    #[test]
    fn rejects_dangling_and_mismatched_slots() {
        let mut net = ContractionNetwork::new(vec![delta(2), delta(3)]);
        net.pair((0, 1), (1, 0));
        net.open = vec![(0, 0), (1, 1)];
        assert!(net.validate().is_err());
        let mut net = ContractionNetwork::new(vec![delta(2)]);
        net.open = vec![(0, 0)];
        assert!(net.validate().is_err());
    }

    #[test]
    fn odd_trace_is_supertrace() {
        let sp: Space = vec![false, true, true].into();
        let id = SparseTensor::from_entries(vec![sp.clone(), sp.clone()], (0..3u32).map(|i| (vec![i, i], q(1))))
            .unwrap();
        // id as a map V -> V has slots (out, in); closing the loop pairs the
        // dual (in) slot with the vector (out) slot.
        let mut net = ContractionNetwork::new(vec![Arc::new(id)]);
        net.pair((0, 1), (0, 0));
        assert_eq!(net.evaluate().unwrap().scalar_value(), Some(q(-1)));
    }
}
