//! Power series in one formal parameter, truncated at a fixed order.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, Q};
use crate::tensor::Scalar;

/// `c_0 + c_1 h + ... + c_N h^N` modulo `h^{N+1}`.
///
/// Constants built without an order (the engine's `zero`/`one`) carry
/// `order == usize::MAX` and adopt the order of whatever they meet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = Q>) -> Self {
        let mut s = TruncatedSeries { order, coeffs: coeffs.into_iter().collect() };
        s.normalize();
        s
    }

    pub fn constant(order: usize, c: Q) -> Self {
        TruncatedSeries::new(order, [c])
    }

    /// The monomial `c·h^k`.
    pub fn monomial(order: usize, k: usize, c: Q) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        TruncatedSeries::new(order, v)
    }

    fn normalize(&mut self) {
        if self.order != usize::MAX && self.coeffs.len() > self.order + 1 {
            self.coeffs.truncate(self.order + 1);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficients `c_0..=c_N` (padded with zeros).
    pub fn coefficients(&self) -> Vec<Q> {
        let n = if self.order == usize::MAX { self.coeffs.len() } else { self.order + 1 };
        (0..n).map(|k| self.coeff(k)).collect()
    }

    pub fn with_order(&self, order: usize) -> Self {
        TruncatedSeries::new(order, self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        TruncatedSeries::new(order, (0..n).map(|k| self.coeff(k) + other.coeff(k)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Q) -> Self {
        TruncatedSeries::new(self.order, self.coeffs.iter().map(|x| x * c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() || other.is_zero() {
            return TruncatedSeries { order, coeffs: Vec::new() };
        }
        let mut n = self.coeffs.len() + other.coeffs.len() - 1;
        if order != usize::MAX {
            n = n.min(order + 1);
        }
        let mut out = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(order, out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = TruncatedSeries::constant(self.order, Q::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp(self)`; requires a vanishing constant term.
    pub fn exp(&self) -> Option<Self> {
        if !self.coeff(0).is_zero() || self.order == usize::MAX {
            return None;
        }
        let mut acc = TruncatedSeries::constant(self.order, Q::one());
        let mut term = acc.clone();
        for k in 1..=self.order {
            term = term.mul(self).scale(&Q::new(1.into(), (k as i64).into()));
            acc = acc.add(&term);
        }
        Some(acc)
    }

    /// `log(self)`; requires constant term 1.
    pub fn log(&self) -> Option<Self> {
        if self.coeff(0) != Q::one() || self.order == usize::MAX {
            return None;
        }
        let u = self.sub(&TruncatedSeries::constant(self.order, Q::one()));
        let mut acc = TruncatedSeries::new(self.order, []);
        let mut power = TruncatedSeries::constant(self.order, Q::one());
        for k in 1..=self.order {
            power = power.mul(&u);
            let c = Q::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into());
            acc = acc.add(&power.scale(&c));
        }
        Some(acc)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() || self.order == usize::MAX {
            return None;
        }
        let inv0 = c0.recip();
        let mut out = vec![Q::zero(); self.order + 1];
        out[0] = inv0.clone();
        for k in 1..=self.order {
            let mut s = Q::zero();
            for j in 1..=k {
                s += self.coeff(j) * &out[k - j];
            }
            out[k] = -s * &inv0;
        }
        Some(TruncatedSeries::new(self.order, out))
    }
}

impl Scalar for TruncatedSeries {
    fn zero_elem() -> Self {
        TruncatedSeries { order: usize::MAX, coeffs: Vec::new() }
    }
    fn one_elem() -> Self {
        TruncatedSeries { order: usize::MAX, coeffs: vec![Q::one()] }
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_q(q: &Q) -> Self {
        TruncatedSeries::new(usize::MAX, [q.clone()])
    }
}

impl fmt::Display for TruncatedSeries {
    /// `2 + 3/2 h - 3/4 h^2`; the zero series prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = fmt_q(&c.abs());
            let body = match k {
                0 => mag,
                _ => {
                    let var = if k == 1 { "h".to_string() } else { format!("h^{k}") };
                    if c.abs().is_one() {
                        var
                    } else {
                        format!("{mag} {var}")
                    }
                }
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c.is_negative() { "-" } else { "+" })?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
