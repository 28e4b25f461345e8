use std::collections::BTreeSet;

use crate::diagram::{canonicalize, JacobiGraph, Kind};

const FREE: u32 = u32::MAX;

struct State {
    kind: Kind,
    t: usize,
    l: usize,
    mate: Vec<u32>,
    open_tri: usize,
    open_leg: usize,
}

impl State {
    fn free_slot(&self, v: usize) -> Option<usize> {
        (0..3).map(|s| 3 * v + s).find(|&p| self.mate[p] == FREE)
    }

    fn join(&mut self, p: usize, q: usize) {
        self.mate[p] = q as u32;
        self.mate[q] = p as u32;
    }

    fn split(&mut self, p: usize, q: usize) {
        self.mate[p] = FREE;
        self.mate[q] = FREE;
    }

    fn first_open_port(&self) -> Option<usize> {
        let tri = (0..3 * self.open_tri).find(|&p| self.mate[p] == FREE);
        tri.or_else(|| (0..self.open_leg).map(|i| 3 * self.t + i).find(|&p| self.mate[p] == FREE))
    }

    fn rec(&mut self, out: &mut BTreeSet<JacobiGraph>) {
        let Some(p) = self.first_open_port() else {
            if self.open_tri == self.t && self.open_leg == self.l {
                let loop_order = if self.kind == Kind::A { (0..self.l as u32).collect() } else { Vec::new() };
                let g = JacobiGraph::from_parts(self.kind, self.t, self.l, self.mate.clone(), loop_order, 0)
                    .expect("enumerated diagrams are well formed");
                let (c, s) = canonicalize(&g);
                if s != 0 {
                    out.insert(c);
                }
            } else if self.kind == Kind::B {
                // start a new component
                if self.open_tri < self.t {
                    self.open_tri += 1;
                    self.rec(out);
                    self.open_tri -= 1;
                } else {
                    self.open_leg += 1;
                    self.rec(out);
                    self.open_leg -= 1;
                }
            }
            return;
        };
        let own = (p < 3 * self.t).then_some(p / 3);
        // a leg
        if self.kind == Kind::B {
            if self.open_leg < self.l {
                let q = 3 * self.t + self.open_leg;
                self.open_leg += 1;
                self.join(p, q);
                self.rec(out);
                self.split(p, q);
                self.open_leg -= 1;
            }
        } else {
            for i in 0..self.l {
                let q = 3 * self.t + i;
                if q != p && self.mate[q] == FREE {
                    self.join(p, q);
                    self.rec(out);
                    self.split(p, q);
                }
            }
        }
        // an open vertex
        for w in 0..self.open_tri {
            if Some(w) == own {
                continue;
            }
            if let Some(q) = self.free_slot(w) {
                self.join(p, q);
                self.rec(out);
                self.split(p, q);
            }
        }
        // a new vertex
        if self.open_tri < self.t {
            let q = 3 * self.open_tri;
            self.open_tri += 1;
            self.join(p, q);
            self.rec(out);
            self.split(p, q);
            self.open_tri -= 1;
        }
    }
}

/// All nonzero diagrams with `t` trivalent vertices and `l` legs, up to
/// isomorphism and sign, in canonical form. Kind `A` diagrams have every
/// component on the Wilson loop; kind `B` diagrams have no circle components.
pub fn enumerate_diagrams(kind: Kind, t: usize, l: usize) -> Vec<JacobiGraph> {
    if (3 * t + l) % 2 == 1 {
        return Vec::new();
    }
    let mut st = State {
        kind,
        t,
        l,
        mate: vec![FREE; 3 * t + l],
        open_tri: 0,
        open_leg: if kind == Kind::A { l } else { 0 },
    };
    let mut out = BTreeSet::new();
    if kind == Kind::B && t + l == 0 {
        out.insert(JacobiGraph::empty(Kind::B));
    } else if kind == Kind::A && t + l == 0 {
        out.insert(JacobiGraph::empty(Kind::A));
    } else if kind == Kind::A && l == 0 {
        // a closed graph cannot meet the loop
    } else {
        st.rec(&mut out);
    }
    out.into_iter().collect()
}

/// All nonzero `A` diagrams of degree `degree` whose components meet the loop.
pub fn enumerate_a(degree: usize) -> Vec<JacobiGraph> {
    let mut out = Vec::new();
    for t in 0..=degree {
        out.extend(enumerate_diagrams(Kind::A, t, degree - t));
    }
    out
}

/// Chord diagrams with `n` chords.
pub fn chord_diagrams(n: usize) -> Vec<JacobiGraph> {
    enumerate_diagrams(Kind::A, 0, 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_diagram_counts() {
        // chord diagrams up to rotation: 1, 1, 2, 5, 18
        let counts: Vec<usize> = (0..5).map(|n| chord_diagrams(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 18]);
    }

    #[test]
    fn b_small_pieces() {
        assert_eq!(enumerate_diagrams(Kind::B, 0, 2).len(), 1);
        assert_eq!(enumerate_diagrams(Kind::B, 0, 4).len(), 1);
        // the theta graph
        assert_eq!(enumerate_diagrams(Kind::B, 2, 0).len(), 1);
        // the 2-wheel; a strut beside a theta
        assert_eq!(enumerate_diagrams(Kind::B, 2, 2).len(), 2);
        assert!(enumerate_diagrams(Kind::B, 1, 1).is_empty());
        assert!(enumerate_diagrams(Kind::B, 3, 3).iter().all(|g| g.bigrading() == (3, 3)));
    }

    #[test]
    fn a_diagrams_meet_the_loop() {
        for g in enumerate_a(6) {
            assert!(g.components_meet_loop(), "{g}");
            assert_eq!(g.degree(), 6);
        }
    }
}
