//! Elements of `S(g)` and `S(g*)` as polynomials in super-commuting variables.
//!
//! A monomial is a nondecreasing index word; odd variables occur at most once.
//! Reading a tensor entry `T_{a_1...a_k}` as the word `x_{a_1}...x_{a_k}` and
//! sorting it with Koszul signs is the projection `T(g) -> S(g)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::liealg::MetricLieAlgebra;
use crate::rational::{factorial, fmt_q, Q};
use crate::tensor::{next_permutation, Space, SparseTensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    parity: Space,
    terms: BTreeMap<Vec<u32>, Q>,
}

/// Sorts a word of variables; `None` when an odd variable repeats.
/// The flag is the Koszul sign of the rearrangement.
pub fn sort_word(parity: &[bool], word: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut neg = false;
    for i in 0..word.len() {
        if !parity[word[i] as usize] {
            continue;
        }
        for j in (i + 1)..word.len() {
            if parity[word[j] as usize] && word[i] > word[j] {
                neg = !neg;
            }
        }
    }
    let mut w = word.to_vec();
    w.sort_unstable();
    if w.windows(2).any(|p| p[0] == p[1] && parity[p[0] as usize]) {
        return None;
    }
    Some((w, neg))
}

impl Polynomial {
    pub fn zero(parity: impl Into<Space>) -> Self {
        Polynomial { parity: parity.into(), terms: BTreeMap::new() }
    }

    pub fn constant(parity: impl Into<Space>, c: Q) -> Self {
        let mut p = Polynomial::zero(parity);
        p.add_word(&[], &c);
        p
    }

    pub fn one(parity: impl Into<Space>) -> Self {
        Polynomial::constant(parity, Q::one())
    }

    /// The single variable `x_a`.
    pub fn variable(parity: impl Into<Space>, a: u32) -> Self {
        let mut p = Polynomial::zero(parity);
        p.add_word(&[a], &Q::one());
        p
    }

    /// Sum of `x_{idx}` weighted by the entries of `t`.
    pub fn from_tensor(parity: impl Into<Space>, t: &SparseTensor<Q>) -> Self {
        let mut p = Polynomial::zero(parity);
        for (idx, v) in t.iter() {
            p.add_word(idx, v);
        }
        p
    }

    pub fn parity(&self) -> &Space {
        &self.parity
    }

    pub fn nvars(&self) -> usize {
        self.parity.len()
    }

    /// Adds `c · x_{w_1} ... x_{w_k}` after sorting the word.
    pub fn add_word(&mut self, word: &[u32], c: &Q) {
        if c.is_zero() {
            return;
        }
        let Some((w, neg)) = sort_word(&self.parity, word) else { return };
        let e = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        if neg {
            *e -= c;
        } else {
            *e += c;
        }
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &[u32]) -> Q {
        self.terms.get(monomial).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.len()).max()
    }

    /// The homogeneous component of degree `k`.
    pub fn component(&self, k: usize) -> Self {
        Polynomial {
            parity: self.parity.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.len() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every monomial of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Polynomial {
            parity: self.parity.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_word(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.parity.clone());
        }
        Polynomial {
            parity: self.parity.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Polynomial::zero(self.parity.clone());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_word(&w, &(x * y));
            }
        }
        out
    }

    /// Product keeping only degrees up to `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = Polynomial::zero(self.parity.clone());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.len() + b.len() > max_degree {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_word(&w, &(x * y));
            }
        }
        out
    }

    /// `exp(self)` up to `max_degree`; the constant term must vanish.
    pub fn exp_truncated(&self, max_degree: usize) -> Option<Self> {
        if !self.coeff(&[]).is_zero() {
            return None;
        }
        let mut total = Polynomial::one(self.parity.clone());
        let mut power = Polynomial::one(self.parity.clone());
        let mut k = 1usize;
        loop {
            power = power.mul_truncated(self, max_degree).scale(&Q::new(1.into(), k.into()));
            if power.is_zero() {
                return Some(total);
            }
            total = total.add(&power);
            k += 1;
        }
    }

    /// `∂/∂x_a` with the graded Leibniz rule.
    pub fn derivative(&self, a: u32) -> Self {
        let odd_a = self.parity[a as usize];
        let mut out = Polynomial::zero(self.parity.clone());
        for (m, c) in &self.terms {
            let mut odd_before = false;
            for (i, &x) in m.iter().enumerate() {
                if x == a {
                    let mut rest = m.clone();
                    rest.remove(i);
                    let neg = odd_a && odd_before;
                    out.add_word(&rest, &if neg { -c.clone() } else { c.clone() });
                }
                odd_before ^= self.parity[x as usize];
            }
        }
        out
    }

    /// The symmetric tensor of degree `k` whose projection is this component.
    pub fn symmetric_tensor(&self, k: usize) -> SparseTensor<Q> {
        let mut t = SparseTensor::new(vec![self.parity.clone(); k]);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.len() == k) {
            let mut arrangements: Vec<Vec<u32>> = Vec::new();
            let mut w = m.clone();
            loop {
                arrangements.push(w.clone());
                if !next_permutation(&mut w) {
                    break;
                }
            }
            let weight = c / Q::from_integer((arrangements.len() as i64).into());
            for w in arrangements {
                let (_, neg) = sort_word(&self.parity, &w).expect("monomial is admissible");
                t.add_entry(w, if neg { -weight.clone() } else { weight.clone() });
            }
        }
        t
    }

    /// Renders one monomial per line as `coefficient<TAB>name name ...`.
    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (m, c) in &self.terms {
            let w: Vec<&str> = m.iter().map(|&i| names.get(i as usize).map_or("?", |n| n.as_str())).collect();
            s.push_str(&fmt_q(c));
            s.push('\t');
            s.push_str(if w.is_empty() { "1" } else { "" });
            s.push_str(&w.join(" "));
            s.push('\n');
        }
        if s.is_empty() {
            s.push_str("0\n");
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// An element of `S(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor(pub Polynomial);

/// An element of `S(g*)`, i.e. a polynomial function on `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPolynomial(pub Polynomial);

impl SymTensor {
    /// Whether every `ad(e_x)` (acting as a graded derivation) kills it.
    pub fn is_invariant(&self, g: &MetricLieAlgebra) -> bool {
        (0..g.dim()).all(|x| derivation(&self.0, g.parity()[x], |b| g.bracket(x, b as usize).to_vec()).is_zero())
    }
}

impl InvariantPolynomial {
    /// Whether the coadjoint action of every basis element kills it.
    pub fn is_invariant(&self, g: &MetricLieAlgebra) -> bool {
        (0..g.dim()).all(|x| {
            derivation(&self.0, g.parity()[x], |b| {
                // x . e^b = -Σ_c (±) f^b_{xc} e^c
                (0..g.dim())
                    .flat_map(|c| {
                        g.bracket(x, c)
                            .iter()
                            .filter(|(k, _)| *k == b as usize)
                            .map(move |(_, v)| {
                                let neg = g.parity()[x] && g.parity()[b as usize];
                                (c, if neg { v.clone() } else { -v.clone() })
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
            .is_zero()
        })
    }
}

fn derivation(p: &Polynomial, odd_x: bool, image: impl Fn(u32) -> Vec<(usize, Q)>) -> Polynomial {
    let mut out = Polynomial::zero(p.parity.clone());
    for (m, c) in &p.terms {
        let mut odd_before = false;
        for i in 0..m.len() {
            let sign = if odd_x && odd_before { -c.clone() } else { c.clone() };
            for (k, v) in image(m[i]) {
                let mut w = m.clone();
                w[i] = k as u32;
                out.add_word(&w, &(&sign * v));
            }
            odd_before ^= p.parity[m[i] as usize];
        }
    }
    out
}

/// `p ∩ s`: `p` acts on `s` as the constant-coefficient differential operator
/// `p(∂)`. On diagrams this is the sum over all injective leg gluings.
pub fn cap_poly(p: &InvariantPolynomial, s: &SymTensor) -> SymTensor {
    let mut out = Polynomial::zero(s.0.parity.clone());
    for (m, c) in &p.0.terms {
        let mut d = s.0.clone();
        for &a in m.iter().rev() {
            d = d.derivative(a);
            if d.is_zero() {
                break;
            }
        }
        out = out.add(&d.scale(c));
    }
    SymTensor(out)
}

/// Number of distinct arrangements of a monomial.
pub fn arrangement_count(m: &[u32]) -> Q {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in m {
        *counts.entry(x).or_default() += 1;
    }
    let denom = counts.values().fold(num_bigint::BigInt::one(), |acc, &k| acc * factorial(k));
    Q::new(factorial(m.len()), denom)
}
