//! Lie algebra weight systems: Jacobi diagrams compiled into contraction
//! networks of structure constants, Casimirs and metrics.
//!
//! Every trivalent vertex becomes the lowered structure tensor in
//! `g* ⊗ g* ⊗ g*` with axes in slot order, every edge the Casimir in `g ⊗ g`.
//! With upper legs each leg is the free end of a Casimir and the open axes
//! carry vectors of g; with lower legs each leg is the free slot of its
//! vertex, and a strut becomes the metric. Open axes follow the Wilson loop
//! for `A` diagrams and leg order for `B` diagrams. A tensor `T` on the open
//! axes is read as `Σ T^w e_{w_1} ... e_{w_k}` in `U(g)` or `S(g)`.

mod uea;

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::diagram::{bernoulli_mod, DiagramVector, JacobiGraph, Kind, Port};
use crate::error::{Error, Result};
use crate::liealg::{MetricLieAlgebra, Representation};
use crate::linalg::{self, Matrix};
use crate::poly::{InvariantPolynomial, Polynomial, SymTensor};
use crate::rational::Q;
use crate::tensor::{ContractionNetwork, SparseTensor};

pub use uea::{UElement, Uea};

/// Whether legs carry vectors (`S(g)`, `U(g)`) or covectors (`S(g*)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegSlots {
    Upper,
    Lower,
}

/// A diagram as a contraction network, times a scalar from its circle components.
#[derive(Clone, Debug)]
pub struct CompiledDiagram {
    pub network: ContractionNetwork<Q>,
    pub scalar: Q,
}

impl CompiledDiagram {
    /// The tensor on the open legs, scalar included.
    pub fn evaluate(&self) -> Result<SparseTensor<Q>> {
        let t = self.network.evaluate()?;
        Ok(if self.scalar.is_one() { t } else { t.scale(&self.scalar) })
    }
}

/// Compiles one diagram.
pub fn compile(g: &MetricLieAlgebra, d: &JacobiGraph, slots: LegSlots) -> Result<CompiledDiagram> {
    if d.kind() == Kind::A && slots == LegSlots::Lower {
        return Err(Error::KindMismatch { expected: "B", found: "A" });
    }
    let nt = d.n_trivalent();
    let mut net: ContractionNetwork<Q> = ContractionNetwork::new(vec![g.f_tensor().clone(); nt]);
    let mut leg_slot = vec![(usize::MAX, 0usize); d.n_legs()];
    for (p, q) in d.edges() {
        match (p, q, slots) {
            (Port::Tri(v, s), Port::Tri(w, t), _) => {
                let k = net.add_node(g.casimir().clone());
                net.pair((v, s), (k, 0));
                net.pair((w, t), (k, 1));
            }
            (Port::Tri(v, s), Port::Leg(i), LegSlots::Upper) | (Port::Leg(i), Port::Tri(v, s), LegSlots::Upper) => {
                let k = net.add_node(g.casimir().clone());
                net.pair((v, s), (k, 0));
                leg_slot[i] = (k, 1);
            }
            (Port::Tri(v, s), Port::Leg(i), LegSlots::Lower) | (Port::Leg(i), Port::Tri(v, s), LegSlots::Lower) => {
                leg_slot[i] = (v, s);
            }
            (Port::Leg(i), Port::Leg(j), _) => {
                let node = match slots {
                    LegSlots::Upper => g.casimir().clone(),
                    LegSlots::Lower => g.metric_tensor().clone(),
                };
                let k = net.add_node(node);
                leg_slot[i] = (k, 0);
                leg_slot[j] = (k, 1);
            }
        }
    }
    net.open = match d.kind() {
        Kind::A => d.loop_order().iter().map(|&i| leg_slot[i as usize]).collect(),
        Kind::B => leg_slot,
    };
    let sdim = Q::from_integer(g.sdim().into());
    let scalar = (0..d.circles()).fold(Q::one(), |acc, _| acc * &sdim);
    Ok(CompiledDiagram { network: net, scalar })
}

fn expect_kind(v: &DiagramVector, kind: Kind) -> Result<()> {
    if v.kind() != kind {
        return Err(Error::KindMismatch { expected: kind.name(), found: v.kind().name() });
    }
    Ok(())
}

fn supertrace(parity: &[bool], m: &Matrix) -> Q {
    (0..m.len()).map(|i| if parity[i] { -m[i][i].clone() } else { m[i][i].clone() }).sum()
}

/// `Σ_w t_w str(ρ(e_{w_1}) ... ρ(e_{w_k}))`, sharing common prefixes.
fn supertrace_words(rep: &Representation, t: &SparseTensor<Q>) -> Q {
    let mut words = t.sorted_entries();
    words.sort_by(|a, b| a.0.cmp(&b.0));
    let mut stack: Vec<Matrix> = vec![linalg::identity(rep.dim())];
    let mut prefix: Vec<u32> = Vec::new();
    let mut total = Q::zero();
    for (w, c) in &words {
        let common = prefix.iter().zip(w).take_while(|(a, b)| a == b).count();
        prefix.truncate(common);
        stack.truncate(common + 1);
        for &a in &w[common..] {
            let next = linalg::mat_mul(stack.last().expect("nonempty"), &rep.rho[a as usize]);
            stack.push(next);
            prefix.push(a);
        }
        total += c * supertrace(&rep.parity, stack.last().expect("nonempty"));
    }
    total
}

/// Evaluates diagrams in one metric Lie algebra, caching per canonical diagram.
pub struct WeightSystem<'g> {
    g: &'g MetricLieAlgebra,
    uea: Uea,
    upper: RefCell<HashMap<JacobiGraph, Arc<SparseTensor<Q>>>>,
    in_u: RefCell<HashMap<JacobiGraph, UElement>>,
}

impl<'g> WeightSystem<'g> {
    pub fn new(g: &'g MetricLieAlgebra) -> Self {
        WeightSystem { g, uea: Uea::new(g), upper: RefCell::new(HashMap::new()), in_u: RefCell::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &MetricLieAlgebra {
        self.g
    }

    pub fn uea(&self) -> &Uea {
        &self.uea
    }

    /// The tensor on the upper legs of a diagram.
    pub fn leg_tensor(&self, d: &JacobiGraph) -> Result<Arc<SparseTensor<Q>>> {
        if let Some(t) = self.upper.borrow().get(d) {
            return Ok(t.clone());
        }
        let t = Arc::new(compile(self.g, d, LegSlots::Upper)?.evaluate()?);
        self.upper.borrow_mut().insert(d.clone(), t.clone());
        Ok(t)
    }

    /// The scalar weight of closed `A` diagrams: the Wilson loop is a supertrace over `rep`.
    pub fn closed_a(&self, rep: &str, v: &DiagramVector) -> Result<Q> {
        expect_kind(v, Kind::A)?;
        let rep = self.g.rep(rep)?;
        let mut total = Q::zero();
        for (d, c) in v.terms() {
            total += c * supertrace_words(rep, &*self.leg_tensor(d)?);
        }
        Ok(total)
    }

    /// The image of an `A` diagram in `U(g)`: legs read along the loop from its base point.
    pub fn a_to_u(&self, v: &DiagramVector) -> Result<UElement> {
        expect_kind(v, Kind::A)?;
        let mut total = UElement::zero();
        for (d, c) in v.terms() {
            let hit = self.in_u.borrow().get(d).cloned();
            let u = match hit {
                Some(u) => u,
                None => {
                    let t = self.leg_tensor(d)?;
                    let u = self.uea.sum_words(t.iter().map(|(w, x)| (w.as_slice(), x)));
                    self.in_u.borrow_mut().insert(d.clone(), u.clone());
                    u
                }
            };
            total.axpy(c, &u);
        }
        Ok(total)
    }

    pub fn b_to_s(&self, v: &DiagramVector) -> Result<SymTensor> {
        expect_kind(v, Kind::B)?;
        let mut p = Polynomial::zero(self.g.parity().to_vec());
        for (d, c) in v.terms() {
            for (w, x) in self.leg_tensor(d)?.iter() {
                p.add_word(w, &(c * x));
            }
        }
        Ok(SymTensor(p))
    }

    pub fn b_to_sdual(&self, v: &DiagramVector) -> Result<InvariantPolynomial> {
        expect_kind(v, Kind::B)?;
        let mut p = Polynomial::zero(self.g.parity().to_vec());
        for (d, c) in v.terms() {
            let t = compile(self.g, d, LegSlots::Lower)?.evaluate()?;
            for (w, x) in t.iter() {
                p.add_word(w, &(c * x));
            }
        }
        Ok(InvariantPolynomial(p))
    }

    /// The symmetrization map `S(g) -> U(g)`.
    pub fn pbw(&self, s: &SymTensor) -> UElement {
        let mut total = UElement::zero();
        for k in 0..=s.0.max_degree().unwrap_or(0) {
            let t = s.0.symmetric_tensor(k);
            total = total.add(&self.uea.sum_words(t.iter().map(|(w, x)| (w.as_slice(), x))));
        }
        total
    }
}

pub fn eval_closed_a(g: &MetricLieAlgebra, rep: &str, v: &DiagramVector) -> Result<Q> {
    WeightSystem::new(g).closed_a(rep, v)
}

pub fn eval_a_to_u(g: &MetricLieAlgebra, v: &DiagramVector) -> Result<UElement> {
    WeightSystem::new(g).a_to_u(v)
}

pub fn eval_b_to_s(g: &MetricLieAlgebra, v: &DiagramVector) -> Result<SymTensor> {
    WeightSystem::new(g).b_to_s(v)
}

pub fn eval_b_to_sdual(g: &MetricLieAlgebra, v: &DiagramVector) -> Result<InvariantPolynomial> {
    WeightSystem::new(g).b_to_sdual(v)
}

pub fn pbw(g: &MetricLieAlgebra, s: &SymTensor) -> UElement {
    WeightSystem::new(g).pbw(s)
}

/// `exp(Σ b_{2i} s_{2i})` in `S(g*)`, graded like diagrams: a polynomial of
/// degree `k` has weight `2k`, matching `s_{2i}` with the wheel `w_{2i}`.
/// Terms of weight above `max_degree` are dropped.
pub fn duflo_j_half(g: &MetricLieAlgebra, max_degree: usize) -> InvariantPolynomial {
    let mut sum = Polynomial::zero(g.parity().to_vec());
    let mut i = 1;
    while 4 * i <= max_degree {
        sum = sum.add(&g.s_poly(2 * i).0.scale(&bernoulli_mod(i)));
        i += 1;
    }
    InvariantPolynomial(sum.exp_truncated(max_degree / 2).expect("no constant term"))
}
