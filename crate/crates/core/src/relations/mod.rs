//! AS/IHX/STU/4T relations as exact linear algebra: relation rows, bases and
//! dimensions of graded pieces of `A` and `B`, and STU reduction to chord diagrams.
//!
//! AS is built into the canonical forms. An IHX row is
//! `I(A,B;C,D) + I(B,C;A,D) + I(C,A;B,D)` where `I(p,q;r,s)` joins a vertex
//! `(p, q, e)` to a vertex `(e, r, s)` along the edge `e`. An STU row at a
//! vertex `(x, y, z)` whose slot `x` meets the loop is `S - T + U`, where `T`
//! attaches `y` then `z` to the loop at that spot and `U` attaches `z` then `y`.

mod enumerate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{DiagramVector, JacobiGraph, Kind, Port};
use crate::error::{Error, Result};
use crate::linalg::{integer_row, Echelon, IntRow};
use crate::rational::Q;

pub use enumerate::{chord_diagrams, enumerate_a, enumerate_diagrams};

/// Largest degree the enumerations accept by default.
pub const DEFAULT_MAX_DEGREE: usize = 12;

fn check_budget(degree: usize, max_degree: usize) -> Result<()> {
    if degree > max_degree {
        return Err(Error::Budget(format!("degree {degree} exceeds the enumeration budget {max_degree}")));
    }
    Ok(())
}

/// Rebuilds a diagram from an edge list in new numbering.
fn build(kind: Kind, n_tri: usize, n_leg: usize, edges: &[(Port, Port)], loop_order: Vec<usize>, circles: usize) -> JacobiGraph {
    JacobiGraph::new(kind, n_tri, n_leg, edges, loop_order, circles).expect("rewritten diagram is well formed")
}

/// The `T` and `U` diagrams of an STU move at slot `x` of vertex `v`, whose
/// mate must be a leg. `None` when the vertex carries a tadpole.
pub fn stu_terms(g: &JacobiGraph, v: usize, x: usize) -> Option<(JacobiGraph, JacobiGraph)> {
    let leg = match g.mate_of(Port::Tri(v, x)) {
        Port::Leg(i) => i,
        Port::Tri(..) => return None,
    };
    if g.kind() != Kind::A {
        return None;
    }
    let (y, z) = ((x + 1) % 3, (x + 2) % 3);
    let (my, mz) = (g.mate_of(Port::Tri(v, y)), g.mate_of(Port::Tri(v, z)));
    if matches!(my, Port::Tri(w, _) if w == v) {
        return None;
    }
    let l = g.n_legs();
    let new_leg = |i: usize| if i < leg { i } else { i - 1 };
    let map = |p: Port| match p {
        Port::Tri(w, s) => Port::Tri(if w < v { w } else { w - 1 }, s),
        Port::Leg(i) => Port::Leg(new_leg(i)),
    };
    let (ly, lz) = (Port::Leg(l - 1), Port::Leg(l));
    let mut edges: Vec<(Port, Port)> = g
        .edges()
        .into_iter()
        .filter(|&(p, q)| {
            ![p, q].iter().any(|r| matches!(r, Port::Tri(w, _) if *w == v) || *r == Port::Leg(leg))
        })
        .map(|(p, q)| (map(p), map(q)))
        .collect();
    edges.push((ly, map(my)));
    edges.push((lz, map(mz)));
    let make = |first: usize, second: usize| {
        let mut order = Vec::with_capacity(l + 1);
        for &o in g.loop_order() {
            let o = o as usize;
            if o == leg {
                order.push(first);
                order.push(second);
            } else {
                order.push(new_leg(o));
            }
        }
        build(Kind::A, g.n_trivalent() - 1, l + 1, &edges, order, g.circles())
    };
    Some((make(l - 1, l), make(l, l - 1)))
}

/// `S - T + U` at slot `x` of vertex `v`.
pub fn stu_row(g: &JacobiGraph, v: usize, x: usize) -> Option<DiagramVector> {
    let (t, u) = stu_terms(g, v, x)?;
    let mut row = DiagramVector::zero(Kind::A);
    row.add_term(g, &Q::one());
    row.add_term(&t, &-Q::one());
    row.add_term(&u, &Q::one());
    Some(row)
}

/// The three diagrams of the IHX relation at the edge leaving slot `i` of vertex `u`.
pub fn ihx_terms(g: &JacobiGraph, u: usize, i: usize) -> Option<[JacobiGraph; 3]> {
    let Port::Tri(v, j) = g.mate_of(Port::Tri(u, i)) else { return None };
    if v == u || g.has_tadpole() {
        return None;
    }
    // half-edges A, B at u and C, D at v
    let half = [Port::Tri(u, (i + 1) % 3), Port::Tri(u, (i + 2) % 3), Port::Tri(v, (j + 1) % 3), Port::Tri(v, (j + 2) % 3)];
    let (lo, hi) = (u.min(v), u.max(v));
    let renum = |w: usize| {
        if w < lo {
            w
        } else if w < hi {
            w - 1
        } else {
            w - 2
        }
    };
    let nt = g.n_trivalent();
    let (nu, nv) = (nt - 2, nt - 1);
    let map = |p: Port| match p {
        Port::Tri(w, s) => Port::Tri(renum(w), s),
        leg => leg,
    };
    let kept: Vec<(Port, Port)> = g
        .edges()
        .into_iter()
        .filter(|&(p, q)| ![p, q].iter().any(|r| matches!(r, Port::Tri(w, _) if *w == u || *w == v)))
        .map(|(p, q)| (map(p), map(q)))
        .collect();
    let make = |order: [usize; 4]| {
        // order lists which half-edge goes to u'.0, u'.1, v'.1, v'.2
        let slots = [Port::Tri(nu, 0), Port::Tri(nu, 1), Port::Tri(nv, 1), Port::Tri(nv, 2)];
        let mut pos = [Port::Leg(0); 4];
        for (k, &h) in order.iter().enumerate() {
            pos[h] = slots[k];
        }
        let mut edges = kept.clone();
        edges.push((Port::Tri(nu, 2), Port::Tri(nv, 0)));
        for h in 0..4 {
            let m = g.mate_of(half[h]);
            match half.iter().position(|&x| x == m) {
                Some(k) if k > h => edges.push((pos[h], pos[k])),
                Some(_) => {}
                None => edges.push((pos[h], map(m))),
            }
        }
        let order = g.loop_order().iter().map(|&x| x as usize).collect();
        build(g.kind(), nt, g.n_legs(), &edges, order, g.circles())
    };
    Some([make([0, 1, 2, 3]), make([1, 2, 0, 3]), make([2, 0, 1, 3])])
}

pub fn ihx_row(g: &JacobiGraph, u: usize, i: usize) -> Option<DiagramVector> {
    let terms = ihx_terms(g, u, i)?;
    let mut row = DiagramVector::zero(g.kind());
    for t in &terms {
        row.add_term(t, &Q::one());
    }
    Some(row)
}

/// Every IHX row at every internal edge of `g`.
pub fn ihx_rows(g: &JacobiGraph) -> Vec<DiagramVector> {
    let mut rows = Vec::new();
    for u in 0..g.n_trivalent() {
        for i in 0..3 {
            if let Port::Tri(v, _) = g.mate_of(Port::Tri(u, i)) {
                if u < v {
                    rows.extend(ihx_row(g, u, i));
                }
            }
        }
    }
    rows
}

/// Every STU row of `g`.
pub fn stu_rows(g: &JacobiGraph) -> Vec<DiagramVector> {
    let mut rows = Vec::new();
    for v in 0..g.n_trivalent() {
        for x in 0..3 {
            rows.extend(stu_row(g, v, x));
        }
    }
    rows
}

/// Rewrites every vertex next to the loop by STU until none is left.
/// Components that never reach the loop pass through untouched.
pub fn stu_reduce(d: &DiagramVector) -> Result<DiagramVector> {
    if d.kind() != Kind::A {
        return Err(Error::KindMismatch { expected: "A", found: "B" });
    }
    let mut done = DiagramVector::zero(Kind::A);
    let mut todo = d.clone();
    while !todo.is_zero() {
        let mut next = DiagramVector::zero(Kind::A);
        for (g, c) in todo.terms() {
            let site = (0..g.n_trivalent())
                .flat_map(|v| (0..3).map(move |x| (v, x)))
                .find(|&(v, x)| matches!(g.mate_of(Port::Tri(v, x)), Port::Leg(_)));
            match site.and_then(|(v, x)| stu_terms(g, v, x)) {
                Some((t, u)) => {
                    next.add_term(&t, c);
                    next.add_term(&u, &-c.clone());
                }
                None => done.add_canonical(g.clone(), c.clone()),
            }
        }
        todo = next;
    }
    Ok(done)
}

/// 4T rows among chord diagrams with `n` chords: the two differences of the
/// STU expansions of each one-vertex diagram.
pub fn four_t_relations(n: usize) -> Vec<DiagramVector> {
    if n < 2 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for g in enumerate_diagrams(Kind::A, 1, 2 * n - 1) {
        let mut exp = Vec::new();
        for x in 0..3 {
            if let Some((t, u)) = stu_terms(&g, 0, x) {
                let mut e = DiagramVector::from_graph(&t);
                e.add_term(&u, &-Q::one());
                exp.push(e);
            }
        }
        for w in exp.windows(2) {
            let r = w[0].sub(&w[1]).expect("same kind");
            if !r.is_zero() {
                rows.push(r);
            }
        }
    }
    rows
}

/// The graded piece a [`Basis`] spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// `A` in degree `2n`.
    A(usize),
    /// `B` with `v` trivalent vertices and `l` legs.
    B(usize, usize),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::A(n) => write!(f, "A_{}", 2 * n),
            Space::B(v, l) => write!(f, "B^{{{v},{l}}}"),
        }
    }
}

/// Relation rows over an ordered list of spanning diagrams.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub columns: Vec<JacobiGraph>,
    pub rows: Vec<DiagramVector>,
}

impl RelationMatrix {
    fn new(mut columns: Vec<JacobiGraph>, rows: Vec<DiagramVector>) -> Self {
        // more trivalent vertices first, so they get eliminated in favor of simpler diagrams
        columns.sort_by(|a, b| b.n_trivalent().cmp(&a.n_trivalent()).then_with(|| a.cmp(b)));
        RelationMatrix { columns, rows }
    }

    fn index(&self) -> HashMap<&JacobiGraph, usize> {
        self.columns.iter().enumerate().map(|(i, g)| (g, i)).collect()
    }

    fn echelon(&self) -> Result<Echelon> {
        let index = self.index();
        let mut e = Echelon::new();
        for r in &self.rows {
            e.insert(to_int_row(&index, r)?);
        }
        Ok(e)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.echelon()?.rank())
    }
}

fn to_int_row(index: &HashMap<&JacobiGraph, usize>, v: &DiagramVector) -> Result<IntRow> {
    let mut row: BTreeMap<usize, Q> = BTreeMap::new();
    for (g, c) in v.terms() {
        let i = *index
            .get(g)
            .ok_or_else(|| Error::Grading(format!("diagram {g} is not among the spanning diagrams")))?;
        *row.entry(i).or_insert_with(Q::zero) += c;
    }
    Ok(integer_row(&row))
}

/// Representatives of a graded piece and the expression of every spanning
/// diagram in them.
#[derive(Clone, Debug)]
pub struct Basis {
    pub space: Space,
    pub representatives: Vec<JacobiGraph>,
    columns: Vec<JacobiGraph>,
    /// Per spanning diagram: coordinates in the representatives.
    reduction: Vec<BTreeMap<usize, Q>>,
}

impl Basis {
    fn from_matrix(space: Space, m: &RelationMatrix) -> Result<Self> {
        let solved = m.echelon()?.solve_pivots();
        let free: Vec<usize> = (0..m.columns.len()).filter(|c| !solved.contains_key(c)).collect();
        let rep_of: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let reduction = (0..m.columns.len())
            .map(|c| match solved.get(&c) {
                Some(expr) => expr.iter().map(|(d, x)| (rep_of[d], x.clone())).collect(),
                None => BTreeMap::from([(rep_of[&c], Q::one())]),
            })
            .collect();
        Ok(Basis {
            space,
            representatives: free.iter().map(|&c| m.columns[c].clone()).collect(),
            columns: m.columns.clone(),
            reduction,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn spanning_diagrams(&self) -> &[JacobiGraph] {
        &self.columns
    }

    /// Coordinates of `v` in the representatives.
    pub fn reduce(&self, v: &DiagramVector) -> Result<Vec<Q>> {
        let kind = match self.space {
            Space::A(_) => Kind::A,
            Space::B(..) => Kind::B,
        };
        if v.kind() != kind {
            return Err(Error::KindMismatch { expected: kind.name(), found: v.kind().name() });
        }
        let index: HashMap<&JacobiGraph, usize> = self.columns.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut out = vec![Q::zero(); self.dim()];
        for (g, c) in v.terms() {
            let i = *index
                .get(g)
                .ok_or_else(|| Error::Grading(format!("diagram {g} does not lie in {}", self.space)))?;
            for (k, x) in &self.reduction[i] {
                out[*k] += c * x;
            }
        }
        Ok(out)
    }

    /// The combination of representatives with the given coordinates.
    pub fn expand(&self, coords: &[Q]) -> DiagramVector {
        let kind = if matches!(self.space, Space::A(_)) { Kind::A } else { Kind::B };
        let mut v = DiagramVector::zero(kind);
        for (g, c) in self.representatives.iter().zip(coords) {
            v.add_term(g, c);
        }
        v
    }
}

/// Chord diagrams with `n` chords and the 4T rows among them.
pub fn four_t_matrix(n: usize) -> RelationMatrix {
    RelationMatrix::new(chord_diagrams(n), four_t_relations(n))
}

/// All `A` diagrams of degree `2n` with their STU and IHX rows.
pub fn stu_ihx_matrix(n: usize) -> RelationMatrix {
    let cols = enumerate_a(2 * n);
    let mut rows = Vec::new();
    for g in &cols {
        rows.extend(stu_rows(g));
        rows.extend(ihx_rows(g));
    }
    RelationMatrix::new(cols, rows)
}

/// All `B` diagrams of bidegree `(v, l)` with their IHX rows.
pub fn ihx_matrix_b(v: usize, l: usize) -> RelationMatrix {
    let cols = enumerate_diagrams(Kind::B, v, l);
    let rows = cols.iter().flat_map(ihx_rows).collect();
    RelationMatrix::new(cols, rows)
}

/// `dim A` in degree `2n`: chord diagrams modulo 4T.
pub fn dim_a(n: usize) -> Result<usize> {
    dim_a_with_budget(n, DEFAULT_MAX_DEGREE)
}

pub fn dim_a_with_budget(n: usize, max_degree: usize) -> Result<usize> {
    check_budget(2 * n, max_degree)?;
    let m = four_t_matrix(n);
    Ok(m.columns.len() - m.rank()?)
}

/// `dim A` in degree `2n` from all diagrams modulo STU and IHX.
pub fn dim_a_stu(n: usize) -> Result<usize> {
    dim_a_stu_with_budget(n, DEFAULT_MAX_DEGREE)
}

pub fn dim_a_stu_with_budget(n: usize, max_degree: usize) -> Result<usize> {
    check_budget(2 * n, max_degree)?;
    let m = stu_ihx_matrix(n);
    Ok(m.columns.len() - m.rank()?)
}

/// Basis of `A` in degree `2n` spanned by all diagrams modulo STU and IHX.
pub fn basis_a(n: usize) -> Result<Basis> {
    check_budget(2 * n, DEFAULT_MAX_DEGREE)?;
    Basis::from_matrix(Space::A(n), &stu_ihx_matrix(n))
}

/// Basis of `A` in degree `2n` on chord diagrams modulo 4T.
pub fn basis_a_chords(n: usize) -> Result<Basis> {
    check_budget(2 * n, DEFAULT_MAX_DEGREE)?;
    Basis::from_matrix(Space::A(n), &four_t_matrix(n))
}

pub fn dim_b(v: usize, l: usize) -> Result<usize> {
    Ok(basis_b(v, l)?.dim())
}

pub fn basis_b(v: usize, l: usize) -> Result<Basis> {
    check_budget(v + l, DEFAULT_MAX_DEGREE)?;
    Basis::from_matrix(Space::B(v, l), &ihx_matrix_b(v, l))
}

/// Representatives of every `B^{v,l}` with `v + l <= max_degree`.
pub fn b_basis_up_to(max_degree: usize) -> Result<Vec<JacobiGraph>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for v in 0..=d {
            out.extend(basis_b(v, d - v)?.representatives);
        }
    }
    Ok(out)
}
