use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{canonicalize, JacobiGraph, Kind};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// A finite rational combination of canonical diagrams of one kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramVector {
    kind: Kind,
    terms: BTreeMap<JacobiGraph, Q>,
}

impl DiagramVector {
    pub fn zero(kind: Kind) -> Self {
        DiagramVector { kind, terms: BTreeMap::new() }
    }

    /// `1 · g`, canonicalized (possibly zero).
    pub fn from_graph(g: &JacobiGraph) -> Self {
        let mut v = DiagramVector::zero(g.kind());
        v.add_term(g, &Q::one());
        v
    }

    /// The empty diagram: unit of `⊔` in `B`, the bare loop in `A`.
    pub fn one(kind: Kind) -> Self {
        DiagramVector::from_graph(&JacobiGraph::empty(kind))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Adds `c · g` after canonicalizing `g`. Panics on a kind mismatch.
    pub fn add_term(&mut self, g: &JacobiGraph, c: &Q) {
        assert_eq!(g.kind(), self.kind, "diagram kind mismatch");
        if c.is_zero() {
            return;
        }
        let (canon, sign) = canonicalize(g);
        if sign == 0 {
            return;
        }
        let v = if sign < 0 { -c.clone() } else { c.clone() };
        self.add_canonical(canon, v);
    }

    /// Adds a term whose graph is already canonical.
    pub(crate) fn add_canonical(&mut self, g: JacobiGraph, c: Q) {
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JacobiGraph, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &JacobiGraph) -> Q {
        let (canon, sign) = canonicalize(g);
        match (sign, self.terms.get(&canon)) {
            (0, _) | (_, None) => Q::zero(),
            (s, Some(c)) => {
                if s < 0 {
                    -c.clone()
                } else {
                    c.clone()
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_kind(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch { expected: self.kind.name(), found: other.kind.name() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_kind(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_canonical(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return DiagramVector::zero(self.kind);
        }
        DiagramVector { kind: self.kind, terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect() }
    }

    /// In-place `self += c · other`.
    pub fn axpy(&mut self, c: &Q, other: &Self) -> Result<()> {
        self.same_kind(other)?;
        for (g, x) in &other.terms {
            self.add_canonical(g.clone(), x * c);
        }
        Ok(())
    }

    /// Keeps the terms whose graph satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&JacobiGraph) -> bool) -> Self {
        DiagramVector {
            kind: self.kind,
            terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect(),
        }
    }

    /// The terms of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        self.filter(|g| g.degree() <= max_degree)
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|g| g.degree());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }
}

impl fmt::Display for DiagramVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}\t{}", fmt_q(c), g)?;
        }
        Ok(())
    }
}
