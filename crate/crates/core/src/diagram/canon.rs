//! Canonical forms of oriented Jacobi diagrams.
//!
//! The underlying multigraph is labeled by individualization and refinement.
//! Every leaf of the search tree is visited, so the orientation sign of each
//! isomorphism onto the minimal form is seen; two leaves with the same form
//! and opposite signs expose an orientation-reversing automorphism.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;

use super::{JacobiGraph, Kind};

const MEMO_LIMIT: usize = 1 << 21;

thread_local! {
    static MEMO: RefCell<HashMap<JacobiGraph, (JacobiGraph, i8)>> = RefCell::new(HashMap::new());
}

/// Returns the canonical representative of the isomorphism class of `g` and
/// the sign `s` with `g = s · canonical`; `s = 0` when `g` vanishes by
/// antisymmetry (a tadpole, or an orientation-reversing automorphism).
pub fn canonicalize(g: &JacobiGraph) -> (JacobiGraph, i8) {
    if let Some(hit) = MEMO.with(|m| m.borrow().get(g).cloned()) {
        return hit;
    }
    let out = compute(g);
    MEMO.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() >= MEMO_LIMIT {
            m.clear();
        }
        m.insert(g.clone(), out.clone());
    });
    out
}

struct Search<'a> {
    g: &'a JacobiGraph,
    nbrs: Vec<Vec<usize>>,
    best: Option<(Vec<u32>, JacobiGraph, i8)>,
}

fn compute(g: &JacobiGraph) -> (JacobiGraph, i8) {
    let n_obj = g.n_leg + g.n_tri;
    let nbrs: Vec<Vec<usize>> = (0..n_obj)
        .map(|o| {
            let ports: Vec<usize> = if o < g.n_leg {
                vec![3 * g.n_tri + o]
            } else {
                let v = o - g.n_leg;
                vec![3 * v, 3 * v + 1, 3 * v + 2]
            };
            ports.iter().map(|&p| g.object_of(g.mate[p] as usize)).collect()
        })
        .collect();
    let mut search = Search { g, nbrs, best: None };
    let l = g.n_leg as u32;
    match g.kind {
        Kind::A if l > 0 => {
            let pos = g.loop_positions();
            for r in 0..l {
                let mut colors = vec![l; n_obj];
                for (i, &p) in pos.iter().enumerate() {
                    colors[i] = (p as u32 + l - r) % l;
                }
                search.run(colors);
            }
        }
        _ => {
            let colors = (0..n_obj).map(|o| u32::from(o >= g.n_leg)).collect();
            search.run(colors);
        }
    }
    let (_, canon, sign) = search.best.expect("at least one leaf");
    if g.has_tadpole() {
        return (canon, 0);
    }
    (canon, sign)
}

impl Search<'_> {
    fn run(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let n = colors.len();
        let mut counts = vec![0usize; n + 1];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            self.leaf(&colors);
            return;
        };
        for o in 0..n {
            if colors[o] as usize != target {
                continue;
            }
            let next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(x, &c)| if x == o { 2 * c } else { 2 * c + 1 })
                .collect();
            self.run(next);
        }
    }

    /// Refines to an equitable ordered partition; colors end up as ranks.
    fn refine(&self, colors: &mut Vec<u32>) {
        let mut cells = usize::MAX;
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
                .map(|o| {
                    let mut s: Vec<u32> = self.nbrs[o].iter().map(|&x| colors[x]).collect();
                    s.sort_unstable();
                    (colors[o], s)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| distinct.binary_search(&s).expect("present") as u32)
                .collect();
            *colors = next;
            if distinct.len() == cells {
                return;
            }
            cells = distinct.len();
        }
    }

    fn leaf(&mut self, labels: &[u32]) {
        let n = labels.len();
        let mut inv = vec![0usize; n];
        for (o, &l) in labels.iter().enumerate() {
            inv[l as usize] = o;
        }
        let mut code = Vec::with_capacity(self.g.n_ports());
        for &o in &inv {
            let mut s: Vec<u32> = self.nbrs[o].iter().map(|&x| labels[x]).collect();
            s.sort_unstable();
            code.extend(s);
        }
        let ord = match &self.best {
            None => Ordering::Less,
            Some((b, _, _)) => code.cmp(b),
        };
        match ord {
            Ordering::Greater => {}
            Ordering::Less => {
                let (canon, sign) = self.build(labels, &inv);
                self.best = Some((code, canon, sign));
            }
            Ordering::Equal => {
                let current = self.best.as_ref().map_or(0, |b| b.2);
                if current != 0 && self.build(labels, &inv).1 != current {
                    if let Some(b) = self.best.as_mut() {
                        b.2 = 0;
                    }
                }
            }
        }
    }

    /// The relabeled diagram and the orientation sign of the relabeling.
    fn build(&self, labels: &[u32], inv: &[usize]) -> (JacobiGraph, i8) {
        let g = self.g;
        let (nl, nt) = (g.n_leg, g.n_tri);
        let mut newport = vec![usize::MAX; g.n_ports()];
        for i in 0..nl {
            newport[3 * nt + i] = 3 * nt + labels[i] as usize;
        }
        let mut sign = 1i8;
        for u in 0..nt {
            let v = inv[nl + u] - nl;
            let mut keys: Vec<((u32, usize), usize)> = (0..3)
                .map(|s| {
                    let m = g.mate[3 * v + s] as usize;
                    let o = g.object_of(m);
                    let done = o >= nl && (labels[o] as usize) - nl < u;
                    ((labels[o], if done { newport[m] } else { s }), s)
                })
                .collect();
            keys.sort_unstable();
            for (k, &(_, s)) in keys.iter().enumerate() {
                newport[3 * v + s] = 3 * u + k;
            }
            let p: Vec<usize> = keys.iter().map(|x| x.1).collect();
            let inversions = (p[0] > p[1]) as u8 + (p[0] > p[2]) as u8 + (p[1] > p[2]) as u8;
            if inversions % 2 == 1 {
                sign = -sign;
            }
        }
        let mut canon = g.relabel_ports(&newport);
        if g.kind == Kind::A {
            canon.loop_order = (0..nl as u32).collect();
        }
        (canon, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_diagram, wheel, Port};
    use super::*;

    #[test]
    fn odd_wheels_vanish() {
        for l in [1, 3, 5, 7] {
            assert_eq!(canonicalize(&wheel(l).unwrap()).1, 0, "w_{l}");
        }
        for l in [2, 4, 6, 8] {
            assert_ne!(canonicalize(&wheel(l).unwrap()).1, 0, "w_{l}");
        }
    }

    #[test]
    fn canonical_is_fixed() {
        let w = wheel(4).unwrap();
        let (c, _) = canonicalize(&w);
        assert_eq!(canonicalize(&c), (c.clone(), 1));
    }

    #[test]
    fn slot_swap_negates() {
        let w = wheel(2).unwrap();
        let (c, s) = canonicalize(&w);
        let swapped = w.permute_slots(1, [1, 0, 2]).unwrap();
        assert_eq!(canonicalize(&swapped), (c.clone(), -s));
        let rotated = w.permute_slots(0, [1, 2, 0]).unwrap();
        assert_eq!(canonicalize(&rotated), (c, s));
    }

    #[test]
    fn relabeled_copies_agree() {
        let a = parse_diagram("kind B\ntri x y\nlegs 2\nedge x.0 l1\nedge y.0 l2\nedge x.1 y.2\nedge x.2 y.1\n").unwrap();
        let b = parse_diagram("kind B\ntri y x\nlegs 2\nedge x.0 l2\nedge y.0 l1\nedge y.2 x.1\nedge y.1 x.2\n").unwrap();
        assert_eq!(canonicalize(&a), canonicalize(&b));
    }

    #[test]
    fn loop_rotation_is_an_isomorphism() {
        let a = JacobiGraph::chord_diagram(&[(0, 2), (1, 3)]).unwrap();
        let b = JacobiGraph::new(
            Kind::A,
            0,
            4,
            &[(Port::Leg(0), Port::Leg(2)), (Port::Leg(1), Port::Leg(3))],
            vec![1, 2, 3, 0],
            0,
        )
        .unwrap();
        assert_eq!(canonicalize(&a).0, canonicalize(&b).0);
        let c = JacobiGraph::chord_diagram(&[(0, 1), (2, 3)]).unwrap();
        assert_ne!(canonicalize(&a).0, canonicalize(&c).0);
    }

    #[test]
    fn theta_is_nonzero_and_tadpoles_vanish() {
        let theta = parse_diagram("kind B\ntri a b\nedge a.0 b.0\nedge a.1 b.2\nedge a.2 b.1\n").unwrap();
        assert_ne!(canonicalize(&theta).1, 0);
        let tad = parse_diagram("kind B\ntri a\nlegs 1\nedge a.0 l1\nedge a.1 a.2\n").unwrap();
        assert_eq!(canonicalize(&tad).1, 0);
    }
}
