//! The wheeling map `Υ(b) = χ(Ω ∩ b)` and its checks through weight systems.

use std::collections::HashMap;
use std::fmt;

use num_traits::One;

use crate::diagram::{cap, chi, disjoint_union, omega_scaled, DiagramVector, JacobiGraph, Kind};
use crate::error::Result;
use crate::liealg::MetricLieAlgebra;
use crate::rational::Q;
use crate::relations::b_basis_up_to;
use crate::weights::{duflo_j_half, WeightSystem};

/// `Υ = χ ∘ (Ω ∩ -)` with `Ω` scaled by `t` inside the exponential.
pub struct Wheeling {
    t: Q,
    omegas: HashMap<usize, DiagramVector>,
    memo: HashMap<JacobiGraph, DiagramVector>,
}

impl Wheeling {
    pub fn new() -> Self {
        Wheeling::with_scale(Q::one())
    }

    /// `t = -1` flips the sign of every wheel.
    pub fn with_scale(t: Q) -> Self {
        Wheeling { t, omegas: HashMap::new(), memo: HashMap::new() }
    }

    fn omega(&mut self, legs: usize) -> Result<&DiagramVector> {
        // only the terms with at most `legs` legs can be glued in
        if !self.omegas.contains_key(&legs) {
            let o = omega_scaled(2 * legs, &self.t)?;
            self.omegas.insert(legs, o);
        }
        Ok(&self.omegas[&legs])
    }

    /// `Ω ∩ b`.
    pub fn cap_omega(&mut self, b: &DiagramVector) -> Result<DiagramVector> {
        let mut out = DiagramVector::zero(Kind::B);
        for (g, c) in b.terms() {
            let o = self.omega(g.n_legs())?.clone();
            out.axpy(c, &cap(&o, &DiagramVector::from_graph(g))?)?;
        }
        Ok(out)
    }

    pub fn apply(&mut self, b: &DiagramVector) -> Result<DiagramVector> {
        let mut out = DiagramVector::zero(Kind::A);
        for (g, c) in b.terms() {
            if !self.memo.contains_key(g) {
                let image = chi(&self.cap_omega(&DiagramVector::from_graph(g))?)?;
                self.memo.insert(g.clone(), image);
            }
            out.axpy(c, &self.memo[g])?;
        }
        Ok(out)
    }
}

impl Default for Wheeling {
    fn default() -> Self {
        Wheeling::new()
    }
}

/// One named property with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", if self.passed { "pass" } else { "FAIL" }, self.name)
    }
}

/// `w(Ω) = j^{1/2}` in `S(g*)` up to `max_degree`.
pub fn check_omega_duflo(g: &MetricLieAlgebra, max_degree: usize, t: &Q) -> Result<Check> {
    let w = WeightSystem::new(g);
    let lhs = w.b_to_sdual(&omega_scaled(max_degree, t)?)?;
    Ok(Check { name: format!("omega maps to j^1/2 up to degree {max_degree}"), passed: lhs == duflo_j_half(g, max_degree) })
}

/// `w(Υ(b ⊔ b')) = w(Υ(b)) w(Υ(b'))` in `U(g)` for basis diagrams of total degree at most `max_degree`.
pub fn check_multiplicativity(g: &MetricLieAlgebra, max_degree: usize, t: &Q) -> Result<Vec<Check>> {
    let w = WeightSystem::new(g);
    let mut ups = Wheeling::with_scale(t.clone());
    let basis = b_basis_up_to(max_degree)?;
    let mut out = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        for b2 in &basis[i..] {
            if b.degree() + b2.degree() > max_degree {
                continue;
            }
            let (vb, vb2) = (DiagramVector::from_graph(b), DiagramVector::from_graph(b2));
            let joint = w.a_to_u(&ups.apply(&disjoint_union(&vb, &vb2)?)?)?;
            let x = w.a_to_u(&ups.apply(&vb)?)?;
            let y = w.a_to_u(&ups.apply(&vb2)?)?;
            let passed = joint == w.uea().mul(&x, &y);
            out.push(Check { name: format!("wheeling multiplicative on {b} x {b2}"), passed });
        }
    }
    Ok(out)
}

/// Every wheeling check up to `max_degree`; `flip_omega` negates the wheels.
pub fn wheeling_report(g: &MetricLieAlgebra, max_degree: usize, flip_omega: bool) -> Result<Vec<Check>> {
    let t = if flip_omega { -Q::one() } else { Q::one() };
    let mut out = vec![check_omega_duflo(g, max_degree, &t)?];
    out.extend(check_multiplicativity(g, max_degree, &t)?);
    Ok(out)
}
