//! The universal enveloping algebra in its PBW basis.
//!
//! A PBW monomial is a nondecreasing word in the basis of g in which odd
//! generators occur at most once. Products are normal-ordered by
//! `e_b e_a = (-1)^{|a||b|} e_a e_b + [e_b, e_a]` for `a < b`, and
//! `e_a e_a = (1/2) [e_a, e_a]` for odd `e_a`.

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::liealg::MetricLieAlgebra;
use crate::rational::{fmt_q, frac, Q};

/// A finite combination of PBW monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UElement {
    terms: BTreeMap<Vec<u32>, Q>,
}

impl UElement {
    pub fn zero() -> Self {
        UElement::default()
    }

    pub fn one() -> Self {
        UElement::monomial(Vec::new(), Q::one())
    }

    pub fn monomial(m: Vec<u32>, c: Q) -> Self {
        let mut u = UElement::zero();
        u.add_monomial(m, &c);
        u
    }

    pub(crate) fn add_monomial(&mut self, m: Vec<u32>, c: &Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&Q::one(), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.axpy(&-Q::one(), other);
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return UElement::zero();
        }
        UElement { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn axpy(&mut self, c: &Q, other: &Self) {
        for (m, v) in &other.terms {
            self.add_monomial(m.clone(), &(c * v));
        }
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

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.terms.keys().flatten().max().map_or(0, |&m| m as usize + 1);
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

/// Multiplication in `U(g)` with a memo of monomial-times-generator products.
pub struct Uea {
    parity: Vec<bool>,
    bracket: Vec<Vec<Vec<(u32, Q)>>>,
    memo: RefCell<HashMap<(Vec<u32>, u32), UElement>>,
}

impl Uea {
    pub fn new(g: &MetricLieAlgebra) -> Self {
        let d = g.dim();
        let bracket = (0..d)
            .map(|a| (0..d).map(|b| g.bracket(a, b).iter().map(|(c, v)| (*c as u32, v.clone())).collect()).collect())
            .collect();
        Uea { parity: g.parity().to_vec(), bracket, memo: RefCell::new(HashMap::new()) }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn generator(&self, a: u32) -> UElement {
        UElement::monomial(vec![a], Q::one())
    }

    fn odd(&self, a: u32) -> bool {
        self.parity[a as usize]
    }

    /// `m · e_a`, normal-ordered.
    pub fn mul_gen(&self, m: &[u32], a: u32) -> UElement {
        let key = (m.to_vec(), a);
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let out = self.mul_gen_uncached(m, a);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn mul_gen_uncached(&self, m: &[u32], a: u32) -> UElement {
        let Some((&b, rest)) = m.split_last() else {
            return self.generator(a);
        };
        if b < a || (b == a && !self.odd(a)) {
            let mut w = m.to_vec();
            w.push(a);
            return UElement::monomial(w, Q::one());
        }
        let mut out = UElement::zero();
        if b == a {
            // odd square
            for (c, v) in &self.bracket[a as usize][a as usize] {
                out.axpy(&(v * frac(1, 2)), &self.mul_gen(rest, *c));
            }
            return out;
        }
        // rest · e_b e_a = ± rest · e_a e_b + rest · [e_b, e_a]
        let head = self.mul_gen(rest, a);
        let sign = if self.odd(a) && self.odd(b) { -Q::one() } else { Q::one() };
        for (m2, c) in head.terms() {
            out.axpy(&(c * &sign), &self.mul_gen(m2, b));
        }
        for (c, v) in &self.bracket[b as usize][a as usize] {
            out.axpy(v, &self.mul_gen(rest, *c));
        }
        out
    }

    /// `x · e_a`.
    pub fn mul_gen_elem(&self, x: &UElement, a: u32) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in x.terms() {
            out.axpy(c, &self.mul_gen(m, a));
        }
        out
    }

    /// Normal-orders the word `e_{w_1} ... e_{w_k}`.
    pub fn straighten(&self, word: &[u32]) -> UElement {
        word.iter().fold(UElement::one(), |acc, &a| self.mul_gen_elem(&acc, a))
    }

    pub fn mul(&self, x: &UElement, y: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (m, c) in y.terms() {
            let mut part = x.clone();
            for &a in m {
                part = self.mul_gen_elem(&part, a);
            }
            out.axpy(c, &part);
        }
        out
    }

    /// Parity of a homogeneous element; `None` for mixed or zero elements.
    pub fn parity_of(&self, x: &UElement) -> Option<bool> {
        let mut it = x.terms().map(|(m, _)| m.iter().filter(|&&a| self.odd(a)).count() % 2 == 1);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// The graded commutator `x y - (-1)^{|x||y|} y x`.
    pub fn commutator(&self, x: &UElement, y: &UElement) -> UElement {
        let neg = self.parity_of(x).unwrap_or(false) && self.parity_of(y).unwrap_or(false);
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        if neg {
            xy.add(&yx)
        } else {
            xy.sub(&yx)
        }
    }

    /// Sum of `Σ_w t_w e_{w_1} ... e_{w_k}` over a list of weighted words,
    /// sharing work between words with common prefixes.
    pub fn sum_words<'a>(&self, words: impl IntoIterator<Item = (&'a [u32], &'a Q)>) -> UElement {
        let mut sorted: Vec<(&[u32], &Q)> = words.into_iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(b.0));
        let mut stack: Vec<UElement> = vec![UElement::one()];
        let mut prefix: Vec<u32> = Vec::new();
        let mut out = UElement::zero();
        for (w, c) in sorted {
            let common = prefix.iter().zip(w).take_while(|(a, b)| a == b).count();
            prefix.truncate(common);
            stack.truncate(common + 1);
            for &a in &w[common..] {
                let next = self.mul_gen_elem(stack.last().expect("nonempty"), a);
                stack.push(next);
                prefix.push(a);
            }
            out.axpy(c, stack.last().expect("nonempty"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::builtin;
    use crate::rational::q;

    #[test]
    fn sl2_commutators() {
        let g = builtin("sl2").unwrap();
        let u = Uea::new(&g);
        // H=0, E=1, F=2: [E, F] = H
        let ef = u.commutator(&u.generator(1), &u.generator(2));
        assert_eq!(ef, u.generator(0));
        let fe = u.straighten(&[2, 1]);
        assert_eq!(fe.coeff(&[1, 2]), q(1));
        assert_eq!(fe.coeff(&[0]), q(-1));
    }

    #[test]
    fn associativity() {
        let g = builtin("gl(1|1)").unwrap();
        let u = Uea::new(&g);
        let words: [&[u32]; 3] = [&[3, 2, 1], &[2, 3, 0, 2], &[3, 3, 1]];
        for w in words {
            let (x, y) = w.split_at(1);
            assert_eq!(u.mul(&u.straighten(x), &u.straighten(y)), u.straighten(w));
            let (x, y) = w.split_at(2);
            assert_eq!(u.mul(&u.straighten(x), &u.straighten(y)), u.straighten(w));
        }
    }

    #[test]
    fn odd_square_is_half_bracket() {
        let g = builtin("gl(1|1)").unwrap();
        let u = Uea::new(&g);
        // E12 E12 = 0 since [E12, E12] = 0; E12 E21 + E21 E12 = E11 + E22
        assert!(u.straighten(&[2, 2]).is_zero());
        let anti = u.commutator(&u.generator(2), &u.generator(3));
        assert_eq!(anti.coeff(&[0]), q(1));
        assert_eq!(anti.coeff(&[1]), q(1));
    }

    #[test]
    fn shared_prefix_sum_matches_words() {
        let g = builtin("sl2").unwrap();
        let u = Uea::new(&g);
        let words: Vec<(Vec<u32>, Q)> = vec![(vec![2, 1, 0], q(2)), (vec![2, 1], q(-1)), (vec![1, 2, 2], q(3))];
        let direct = words.iter().fold(UElement::zero(), |acc, (w, c)| acc.add(&u.straighten(w).scale(c)));
        assert_eq!(u.sum_words(words.iter().map(|(w, c)| (w.as_slice(), c))), direct);
    }
}
