use num_traits::{One, Zero};

use super::{disjoint_union, DiagramVector, JacobiGraph, Kind, Port};
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};
use crate::series::TruncatedSeries;

/// The wheel with `l` legs: a cycle of `l` trivalent vertices, vertex `k`
/// carrying leg `k` in slot 0, its successor in slot 1 and its predecessor in slot 2.
pub fn wheel(l: usize) -> Result<JacobiGraph> {
    if l == 0 {
        return Err(Error::structural("a wheel needs at least one leg"));
    }
    let mut edges = Vec::with_capacity(2 * l);
    for k in 0..l {
        edges.push((Port::Tri(k, 0), Port::Leg(k)));
        edges.push((Port::Tri(k, 1), Port::Tri((k + 1) % l, 2)));
    }
    JacobiGraph::new(Kind::B, l, l, &edges, Vec::new(), 0)
}

pub fn wheel_vector(l: usize) -> Result<DiagramVector> {
    Ok(DiagramVector::from_graph(&wheel(l)?))
}

/// The coefficient `b_{2i}` of `x^{2i}` in `(1/2) log(sinh(x/2) / (x/2))`.
pub fn bernoulli_mod(i: usize) -> Q {
    if i == 0 {
        return Q::zero();
    }
    let order = 2 * i;
    // sinh(x/2)/(x/2) = Σ (x/2)^{2k} / (2k+1)!
    let coeffs: Vec<Q> = (0..=order)
        .map(|n| {
            if n % 2 == 1 {
                Q::zero()
            } else {
                Q::new(1.into(), factorial(n + 1) * num_bigint::BigInt::from(2).pow(n as u32))
            }
        })
        .collect();
    let s = TruncatedSeries::new(order, coeffs);
    let log = s.log().expect("constant term is one");
    log.coeff(order) / Q::from_integer(2.into())
}

/// `Ω = exp_⊔ Σ b_{2i} w_{2i}` with all terms of degree above `max_degree` dropped.
pub fn omega_truncated(max_degree: usize) -> Result<DiagramVector> {
    omega_scaled(max_degree, &Q::one())
}

/// `exp_⊔ (t Σ b_{2i} w_{2i})`, truncated like [`omega_truncated`].
pub fn omega_scaled(max_degree: usize, t: &Q) -> Result<DiagramVector> {
    let mut sum = DiagramVector::zero(Kind::B);
    let mut i = 1;
    while 4 * i <= max_degree {
        sum.axpy(&(bernoulli_mod(i) * t), &wheel_vector(2 * i)?)?;
        i += 1;
    }
    let mut total = DiagramVector::one(Kind::B);
    let mut power = DiagramVector::one(Kind::B);
    let mut k = 1i64;
    loop {
        power = disjoint_union(&power, &sum)?.truncate(max_degree).scale(&Q::new(One::one(), k.into()));
        if power.is_zero() {
            return Ok(total);
        }
        total = total.add(&power)?;
        k += 1;
    }
}
