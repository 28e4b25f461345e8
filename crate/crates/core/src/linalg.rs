//! Small dense linear algebra over the rationals, plus the sparse
//! fraction-free echelon form used for relation matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Matrix {
    vec![vec![Q::zero(); c]; r]
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_add(a: &Matrix, b: &Matrix, scale_b: &Q) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y * scale_b).collect())
        .collect()
}

pub fn is_zero_matrix(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Inverse by Gauss–Jordan; `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].recip();
        for j in 0..n {
            m[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let (mc, ic) = (m[col][j].clone(), inv[col][j].clone());
                    m[r][j] -= &f * mc;
                    inv[r][j] -= &f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Coordinates of `target` in the span of `vectors`, if it lies there.
/// The vectors must be linearly independent.
pub fn coordinates(vectors: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let k = vectors.len();
    let n = target.len();
    // augmented system: columns are the vectors
    let mut rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut r: Vec<Q> = vectors.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r][..=k].to_vec();
                for (x, v) in rows[i][..=k].iter_mut().zip(pivot_row) {
                    *x -= &f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut out = vec![Q::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = rows[i][k].clone();
    }
    Some(out)
}

/// Sparse integer row: column -> nonzero coefficient.
pub type IntRow = BTreeMap<usize, BigInt>;

fn primitive(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.values_mut() {
        *v /= &g;
    }
}

/// Row echelon form built incrementally with fraction-free integer row
/// operations (`r <- p·r - q·pivot`, then divided by its content).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the current pivots; returns the residue.
    pub fn reduce(&self, mut row: IntRow) -> IntRow {
        loop {
            let Some((&lead, lv)) = row.iter().next() else { return row };
            let Some(p) = self.pivots.get(&lead) else { return row };
            let pv = &p[&lead];
            let g = lv.gcd(pv);
            let (a, b) = (pv / &g, lv / &g);
            let mut out = IntRow::new();
            for (&c, v) in &row {
                out.insert(c, v * &a);
            }
            for (&c, v) in p {
                let e = out.entry(c).or_insert_with(BigInt::zero);
                *e -= v * &b;
                if e.is_zero() {
                    out.remove(&c);
                }
            }
            primitive(&mut out);
            row = out;
        }
    }

    /// Inserts a row; returns true when it raised the rank.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        primitive(&mut r);
        if r.values().next().is_some_and(|v| v.is_negative()) {
            for v in r.values_mut() {
                *v = -&*v;
            }
        }
        let lead = *r.keys().next().expect("nonempty");
        self.pivots.insert(lead, r);
        true
    }

    /// Fully reduced form over the rationals: for every pivot column `p`,
    /// `column p ≡ Σ coeff · column c` over non-pivot columns `c`.
    pub fn solve_pivots(&self) -> BTreeMap<usize, BTreeMap<usize, Q>> {
        let mut solved: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        // later pivots never involve earlier columns, so back-substitute from the end
        for (&lead, row) in self.pivots.iter().rev() {
            let lv = Q::from_integer(row[&lead].clone());
            let mut expr: BTreeMap<usize, Q> = BTreeMap::new();
            for (&c, v) in row.iter().skip(1) {
                let coeff = -Q::from_integer(v.clone()) / &lv;
                match solved.get(&c) {
                    Some(sub) => {
                        for (&d, w) in sub {
                            let e = expr.entry(d).or_insert_with(Q::zero);
                            *e += &coeff * w;
                        }
                    }
                    None => {
                        let e = expr.entry(c).or_insert_with(Q::zero);
                        *e += coeff;
                    }
                }
            }
            expr.retain(|_, v| !v.is_zero());
            solved.insert(lead, expr);
        }
        solved
    }
}

/// Rank of a list of sparse rational rows.
pub fn rank_of_rows(rows: impl IntoIterator<Item = BTreeMap<usize, Q>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(integer_row(&r));
    }
    e.rank()
}

/// Clears denominators of a rational row.
pub fn integer_row(r: &BTreeMap<usize, Q>) -> IntRow {
    let l = r.values().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    r.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(&c, v)| (c, (v * Q::from_integer(l.clone())).to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn inverse_of_sl2_gram() {
        let b = vec![vec![q(2), q(0), q(0)], vec![q(0), q(0), q(1)], vec![q(0), q(1), q(0)]];
        let inv = inverse(&b).unwrap();
        assert_eq!(inv[0][0], frac(1, 2));
        assert_eq!(inv[1][2], q(1));
        assert_eq!(mat_mul(&b, &inv), identity(3));
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn echelon_rank_and_solution() {
        let rows: Vec<BTreeMap<usize, Q>> = vec![
            [(0, q(2)), (1, q(-2))].into(),
            [(1, q(3)), (2, q(-3))].into(),
            [(0, q(1)), (2, q(-1))].into(),
        ];
        let mut e = Echelon::new();
        let added: Vec<bool> = rows.iter().map(|r| e.insert(integer_row(r))).collect();
        assert_eq!(added, vec![true, true, false]);
        let s = e.solve_pivots();
        assert_eq!(s[&0], [(2, q(1))].into());
        assert_eq!(s[&1], [(2, q(1))].into());
    }

    #[test]
    fn coordinates_in_span() {
        let vs = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        assert_eq!(coordinates(&vs, &[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(coordinates(&vs, &[q(2), q(3), q(4)]), None);
    }
}
