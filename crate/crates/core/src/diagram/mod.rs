//! Jacobi diagrams with vertex orientations, with or without a Wilson loop.
//!
//! A diagram has `n_tri` trivalent vertices and `n_leg` univalent vertices.
//! Ports are numbered `3v + s` for slot `s` of trivalent vertex `v` (the slot
//! order is the vertex orientation) and `3·n_tri + i` for leg `i`. Edges form a
//! fixed-point-free involution `mate` on ports. Kind `A` diagrams carry the
//! cyclic order in which the legs sit on the Wilson loop. Vertexless circle
//! components are counted separately.

mod canon;
mod dsl;
mod ops;
mod vector;
mod wheels;

use std::fmt;

use crate::error::{Error, Result};

pub use canon::canonicalize;
pub use dsl::parse_diagram;
pub use ops::{cap, chi, connect_sum, connect_sum_at, disjoint_union, glue_legs, union_graphs};
pub use vector::DiagramVector;
pub use wheels::{bernoulli_mod, omega_scaled, omega_truncated, wheel, wheel_vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::A => "A",
            Kind::B => "B",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An endpoint of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Port {
    Tri(usize, usize),
    Leg(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JacobiGraph {
    kind: Kind,
    n_tri: usize,
    n_leg: usize,
    mate: Vec<u32>,
    loop_order: Vec<u32>,
    circles: usize,
}

impl JacobiGraph {
    /// Builds a diagram from its edge list. For kind `A`, `loop_order` lists
    /// every leg once in the order met along the loop; for kind `B` it must be empty.
    pub fn new(
        kind: Kind,
        n_tri: usize,
        n_leg: usize,
        edges: &[(Port, Port)],
        loop_order: Vec<usize>,
        circles: usize,
    ) -> Result<Self> {
        let n_ports = 3 * n_tri + n_leg;
        let mut mate = vec![u32::MAX; n_ports];
        let index = |p: Port| -> Result<usize> {
            match p {
                Port::Tri(v, s) if v < n_tri && s < 3 => Ok(3 * v + s),
                Port::Leg(i) if i < n_leg => Ok(3 * n_tri + i),
                _ => Err(Error::structural(format!("port {p:?} does not exist"))),
            }
        };
        for &(p, q) in edges {
            let (a, b) = (index(p)?, index(q)?);
            if a == b {
                return Err(Error::structural(format!("port {p:?} joined to itself")));
            }
            for x in [a, b] {
                if mate[x] != u32::MAX {
                    return Err(Error::structural(format!("port {} used twice", Self::describe(n_tri, x))));
                }
            }
            mate[a] = b as u32;
            mate[b] = a as u32;
        }
        Self::from_parts(kind, n_tri, n_leg, mate, loop_order.into_iter().map(|x| x as u32).collect(), circles)
    }

    /// Builds a diagram from a port involution, checking every invariant.
    pub fn from_parts(
        kind: Kind,
        n_tri: usize,
        n_leg: usize,
        mate: Vec<u32>,
        loop_order: Vec<u32>,
        circles: usize,
    ) -> Result<Self> {
        let g = JacobiGraph { kind, n_tri, n_leg, mate, loop_order, circles };
        g.check()?;
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(
        kind: Kind,
        n_tri: usize,
        n_leg: usize,
        mate: Vec<u32>,
        loop_order: Vec<u32>,
        circles: usize,
    ) -> Self {
        let g = JacobiGraph { kind, n_tri, n_leg, mate, loop_order, circles };
        debug_assert!(g.check().is_ok(), "{:?}", g.check());
        g
    }

    fn describe(n_tri: usize, p: usize) -> String {
        if p < 3 * n_tri {
            format!("{}.{}", p / 3, p % 3)
        } else {
            format!("leg {}", p - 3 * n_tri)
        }
    }

    fn check(&self) -> Result<()> {
        let n = 3 * self.n_tri + self.n_leg;
        if self.mate.len() != n {
            return Err(Error::structural(format!("{} ports but {} mates", n, self.mate.len())));
        }
        for (p, &m) in self.mate.iter().enumerate() {
            if m == u32::MAX {
                return Err(Error::structural(format!("port {} is unmatched", Self::describe(self.n_tri, p))));
            }
            let m = m as usize;
            if m >= n || m == p || self.mate[m] as usize != p {
                return Err(Error::structural(format!(
                    "port {} has an inconsistent mate",
                    Self::describe(self.n_tri, p)
                )));
            }
        }
        match self.kind {
            Kind::A => {
                let mut seen = vec![false; self.n_leg];
                if self.loop_order.len() != self.n_leg {
                    return Err(Error::structural("loop order must list every leg once"));
                }
                for &l in &self.loop_order {
                    let l = l as usize;
                    if l >= self.n_leg || std::mem::replace(&mut seen[l], true) {
                        return Err(Error::structural("loop order must list every leg once"));
                    }
                }
            }
            Kind::B => {
                if !self.loop_order.is_empty() {
                    return Err(Error::structural("a diagram without Wilson loop has no loop order"));
                }
            }
        }
        Ok(())
    }

    /// The diagram with no vertices: the bare loop (`A`) or the unit (`B`).
    pub fn empty(kind: Kind) -> Self {
        JacobiGraph { kind, n_tri: 0, n_leg: 0, mate: Vec::new(), loop_order: Vec::new(), circles: 0 }
    }

    /// A single edge between two legs.
    pub fn strut() -> Self {
        JacobiGraph { kind: Kind::B, n_tri: 0, n_leg: 2, mate: vec![1, 0], loop_order: Vec::new(), circles: 0 }
    }

    /// A vertexless circle.
    pub fn circle() -> Self {
        JacobiGraph { circles: 1, ..Self::empty(Kind::B) }
    }

    /// The chord diagram whose chords join the given loop positions.
    pub fn chord_diagram(chords: &[(usize, usize)]) -> Result<Self> {
        let n = 2 * chords.len();
        let edges: Vec<(Port, Port)> = chords.iter().map(|&(a, b)| (Port::Leg(a), Port::Leg(b))).collect();
        JacobiGraph::new(Kind::A, 0, n, &edges, (0..n).collect(), 0)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n_trivalent(&self) -> usize {
        self.n_tri
    }

    pub fn n_legs(&self) -> usize {
        self.n_leg
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn n_ports(&self) -> usize {
        self.mate.len()
    }

    pub fn mates(&self) -> &[u32] {
        &self.mate
    }

    pub fn loop_order(&self) -> &[u32] {
        &self.loop_order
    }

    /// Number of trivalent plus univalent vertices.
    pub fn degree(&self) -> usize {
        self.n_tri + self.n_leg
    }

    /// `(v, l)`: trivalent vertices and legs.
    pub fn bigrading(&self) -> (usize, usize) {
        (self.n_tri, self.n_leg)
    }

    /// The port of a leg or vertex slot.
    pub fn port_index(&self, p: Port) -> usize {
        match p {
            Port::Tri(v, s) => 3 * v + s,
            Port::Leg(i) => 3 * self.n_tri + i,
        }
    }

    pub fn port(&self, index: usize) -> Port {
        if index < 3 * self.n_tri {
            Port::Tri(index / 3, index % 3)
        } else {
            Port::Leg(index - 3 * self.n_tri)
        }
    }

    pub fn mate_of(&self, p: Port) -> Port {
        self.port(self.mate[self.port_index(p)] as usize)
    }

    /// Edges as port pairs, each listed once with the smaller port first.
    pub fn edges(&self) -> Vec<(Port, Port)> {
        (0..self.n_ports())
            .filter(|&p| p < self.mate[p] as usize)
            .map(|p| (self.port(p), self.port(self.mate[p] as usize)))
            .collect()
    }

    /// Whether some vertex has two of its own slots joined.
    pub fn has_tadpole(&self) -> bool {
        (0..3 * self.n_tri).any(|p| (self.mate[p] as usize) < 3 * self.n_tri && self.mate[p] as usize / 3 == p / 3)
    }

    /// Position of each leg along the loop (kind `A`).
    pub fn loop_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n_leg];
        for (k, &l) in self.loop_order.iter().enumerate() {
            pos[l as usize] = k;
        }
        pos
    }

    /// Whether every connected component touches the Wilson loop, i.e. the
    /// diagram lies in the connected span of `A`.
    pub fn components_meet_loop(&self) -> bool {
        if self.circles > 0 {
            return false;
        }
        let comp = self.component_of_vertices();
        let n_obj = self.n_leg + self.n_tri;
        let mut touched = vec![false; n_obj];
        for i in 0..self.n_leg {
            touched[comp[i]] = true;
        }
        (0..n_obj).all(|o| touched[comp[o]])
    }

    /// Component representative for every object (legs first, then vertices).
    pub(crate) fn component_of_vertices(&self) -> Vec<usize> {
        let n_obj = self.n_leg + self.n_tri;
        let mut parent: Vec<usize> = (0..n_obj).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for p in 0..self.n_ports() {
            let (a, b) = (self.object_of(p), self.object_of(self.mate[p] as usize));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..n_obj).map(|o| find(&mut parent, o)).collect()
    }

    /// Object index of a port: legs are `0..n_leg`, vertex `v` is `n_leg + v`.
    pub(crate) fn object_of(&self, port: usize) -> usize {
        if port < 3 * self.n_tri {
            self.n_leg + port / 3
        } else {
            port - 3 * self.n_tri
        }
    }

    /// Same diagram with one vertex's slots permuted: slot `k` of the result
    /// is slot `perm[k]` of the input.
    pub fn permute_slots(&self, v: usize, perm: [usize; 3]) -> Result<Self> {
        if v >= self.n_tri || {
            let mut p = perm;
            p.sort_unstable();
            p != [0, 1, 2]
        } {
            return Err(Error::structural("bad vertex or slot permutation"));
        }
        let mut relabel: Vec<usize> = (0..self.n_ports()).collect();
        for k in 0..3 {
            relabel[3 * v + perm[k]] = 3 * v + k;
        }
        Ok(self.relabel_ports(&relabel))
    }

    /// Applies a port bijection `old -> new` that maps vertices to vertices.
    pub(crate) fn relabel_ports(&self, relabel: &[usize]) -> Self {
        let mut mate = vec![0u32; self.n_ports()];
        for p in 0..self.n_ports() {
            mate[relabel[p]] = relabel[self.mate[p] as usize] as u32;
        }
        let base = 3 * self.n_tri;
        let loop_order = self.loop_order.iter().map(|&l| (relabel[base + l as usize] - base) as u32).collect();
        JacobiGraph { mate, loop_order, ..self.clone() }
    }

    /// Renders the diagram in the text format read by [`parse_diagram`].
    pub fn to_dsl(&self) -> String {
        let mut s = format!("kind {}\n", self.kind);
        if self.n_tri > 0 {
            let ids: Vec<String> = (0..self.n_tri).map(|v| format!("v{v}")).collect();
            s.push_str(&format!("tri {}\n", ids.join(" ")));
        }
        if self.n_leg > 0 {
            s.push_str(&format!("legs {}\n", self.n_leg));
        }
        if self.kind == Kind::A && self.n_leg > 0 {
            let ids: Vec<String> = self.loop_order.iter().map(|l| format!("l{}", l + 1)).collect();
            s.push_str(&format!("loop {}\n", ids.join(" ")));
        }
        let name = |p: Port| match p {
            Port::Tri(v, k) => format!("v{v}.{k}"),
            Port::Leg(i) => format!("l{}", i + 1),
        };
        for (p, q) in self.edges() {
            s.push_str(&format!("edge {} {}\n", name(p), name(q)));
        }
        if self.circles > 0 {
            s.push_str(&format!("circles {}\n", self.circles));
        }
        s
    }
}

impl fmt::Display for JacobiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[v={},l={}", self.kind, self.n_tri, self.n_leg)?;
        let name = |p: Port| match p {
            Port::Tri(v, k) => format!("{v}.{k}"),
            Port::Leg(i) => format!("l{i}"),
        };
        for (p, q) in self.edges() {
            write!(f, " {}-{}", name(p), name(q))?;
        }
        if self.kind == Kind::A && self.n_leg > 0 {
            let lo: Vec<String> = self.loop_order.iter().map(|l| format!("l{l}")).collect();
            write!(f, " loop({})", lo.join(","))?;
        }
        if self.circles > 0 {
            write!(f, " +{}o", self.circles)?;
        }
        write!(f, "]")
    }
}
