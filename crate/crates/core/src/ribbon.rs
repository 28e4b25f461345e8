//! Truncated ribbon structure on representations: chord and Casimir
//! elements, the braiding `τ_old ∘ exp(H/2)`, the twist `exp(C/2)`, and
//! invariants of braid closures as power series in `h` modulo `h^{N+1}`.
//! One power of `h` accompanies every chord.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{MetricLieAlgebra, Representation};
use crate::linalg::{self, Matrix};
use crate::rational::{factorial, Q};
use crate::series::TruncatedSeries;

/// A matrix over truncated series, stored as one rational matrix per power
/// of `h`, acting on a super vector space with the given basis parities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    order: usize,
    parity: Vec<bool>,
    coeffs: Vec<Matrix>,
}

fn super_kron(x: &Matrix, px: &[bool], y: &Matrix, py: &[bool]) -> Matrix {
    let (m, n) = (px.len(), py.len());
    let mut out = linalg::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..m {
            if x[i][j].is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    if y[k][l].is_zero() {
                        continue;
                    }
                    // moving the Y entry past the V input picks up (-1)^{|Y||j|}
                    let neg = (py[k] ^ py[l]) && px[j];
                    let v = &x[i][j] * &y[k][l];
                    out[i * n + k][j * n + l] = if neg { -v } else { v };
                }
            }
        }
    }
    out
}

/// Basis parities of `V_1 ⊗ ... ⊗ V_n` in lexicographic order.
pub fn product_parity(factors: &[&[bool]]) -> Vec<bool> {
    factors.iter().fold(vec![false], |acc, f| acc.iter().flat_map(|&a| f.iter().map(move |&b| a ^ b)).collect())
}

impl RepMatrix {
    pub fn zero(parity: Vec<bool>, order: usize) -> Self {
        let d = parity.len();
        RepMatrix { order, parity, coeffs: vec![linalg::zeros(d, d); order + 1] }
    }

    pub fn identity(parity: Vec<bool>, order: usize) -> Self {
        RepMatrix::from_constant(linalg::identity(parity.len()), parity, order)
    }

    pub fn from_constant(m: Matrix, parity: Vec<bool>, order: usize) -> Self {
        let mut r = RepMatrix::zero(parity, order);
        r.coeffs[0] = m;
        r
    }

    /// `h · m`.
    pub fn from_linear(m: Matrix, parity: Vec<bool>, order: usize) -> Self {
        let mut r = RepMatrix::zero(parity, order);
        if order >= 1 {
            r.coeffs[1] = m;
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parity(&self) -> &[bool] {
        &self.parity
    }

    /// The rational matrix multiplying `h^k`.
    pub fn coeff(&self, k: usize) -> &Matrix {
        &self.coeffs[k]
    }

    pub fn entry(&self, i: usize, j: usize) -> TruncatedSeries {
        TruncatedSeries::new(self.order, self.coeffs.iter().map(|m| m[i][j].clone()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.parity != other.parity || self.order != other.order {
            return Err(Error::structural("matrices act on different spaces or orders"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| linalg::mat_add(a, b, &Q::one())).collect();
        Ok(RepMatrix { order: self.order, parity: self.parity.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| linalg::mat_add(a, b, &-Q::one())).collect();
        Ok(RepMatrix { order: self.order, parity: self.parity.clone(), coeffs })
    }

    pub fn scale(&self, c: &Q) -> Self {
        let coeffs = self.coeffs.iter().map(|m| m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()).collect();
        RepMatrix { order: self.order, parity: self.parity.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = RepMatrix::zero(self.parity.clone(), self.order);
        for i in 0..=self.order {
            if linalg::is_zero_matrix(&self.coeffs[i]) {
                continue;
            }
            for j in 0..=(self.order - i) {
                if linalg::is_zero_matrix(&other.coeffs[j]) {
                    continue;
                }
                let p = linalg::mat_mul(&self.coeffs[i], &other.coeffs[j]);
                out.coeffs[i + j] = linalg::mat_add(&out.coeffs[i + j], &p, &Q::one());
            }
        }
        Ok(out)
    }

    /// Graded tensor product, `self` on the left factor.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::structural("truncation orders differ"));
        }
        let parity = product_parity(&[&self.parity, &other.parity]);
        let mut out = RepMatrix::zero(parity, self.order);
        for i in 0..=self.order {
            for j in 0..=(self.order - i) {
                let p = super_kron(&self.coeffs[i], &self.parity, &other.coeffs[j], &other.parity);
                out.coeffs[i + j] = linalg::mat_add(&out.coeffs[i + j], &p, &Q::one());
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(linalg::is_zero_matrix)
    }

    pub fn is_identity(&self) -> bool {
        *self == RepMatrix::identity(self.parity.clone(), self.order)
    }

    /// `Σ_i (-1)^{|i|} M_ii`.
    pub fn supertrace(&self) -> TruncatedSeries {
        TruncatedSeries::new(
            self.order,
            self.coeffs.iter().map(|m| {
                (0..self.dim()).map(|i| if self.parity[i] { -m[i][i].clone() } else { m[i][i].clone() }).sum::<Q>()
            }),
        )
    }

    /// The series `s` with `self = s · id`, if there is one.
    pub fn scalar(&self) -> Option<TruncatedSeries> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        let s = self.entry(0, 0);
        (*self == RepMatrix::identity(self.parity.clone(), self.order).mul_series(&s)).then_some(s)
    }

    pub fn mul_series(&self, s: &TruncatedSeries) -> Self {
        let mut out = RepMatrix::zero(self.parity.clone(), self.order);
        for (k, c) in s.coefficients().iter().enumerate().take(self.order + 1) {
            if c.is_zero() {
                continue;
            }
            for i in 0..=(self.order - k) {
                let scaled: Matrix = self.coeffs[i].iter().map(|r| r.iter().map(|x| x * c).collect()).collect();
                out.coeffs[i + k] = linalg::mat_add(&out.coeffs[i + k], &scaled, &Q::one());
            }
        }
        out
    }

    /// `exp(self)` for a matrix without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !linalg::is_zero_matrix(&self.coeffs[0]) {
            return Err(Error::structural("exponential needs a matrix divisible by h"));
        }
        let mut total = RepMatrix::identity(self.parity.clone(), self.order);
        let mut power = total.clone();
        for k in 1..=self.order {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            total = total.add(&power.scale(&Q::new(1.into(), factorial(k))))?;
        }
        Ok(total)
    }

    /// Whether `self` and `other` commute.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

fn rep<'a>(g: &'a MetricLieAlgebra, name: &str) -> Result<&'a Representation> {
    g.rep(name)
}

/// `H_{V,W} = h Σ c^{ab} ρ_V(e_a) ⊗ ρ_W(e_b)` on `V ⊗ W`.
pub fn chord_element(g: &MetricLieAlgebra, v: &str, w: &str, order: usize) -> Result<RepMatrix> {
    let (rv, rw) = (rep(g, v)?, rep(g, w)?);
    let parity = product_parity(&[&rv.parity, &rw.parity]);
    let mut m = linalg::zeros(parity.len(), parity.len());
    for (idx, c) in g.casimir().iter() {
        let (a, b) = (idx[0] as usize, idx[1] as usize);
        let k = super_kron(&rv.rho[a], &rv.parity, &rw.rho[b], &rw.parity);
        m = linalg::mat_add(&m, &k, c);
    }
    Ok(RepMatrix::from_linear(m, parity, order))
}

/// `C_V = h Σ c^{ab} ρ(e_a) ρ(e_b)` on `V`.
pub fn casimir_element(g: &MetricLieAlgebra, v: &str, order: usize) -> Result<RepMatrix> {
    let r = rep(g, v)?;
    let d = r.dim();
    let mut m = linalg::zeros(d, d);
    for (idx, c) in g.casimir().iter() {
        let p = linalg::mat_mul(&r.rho[idx[0] as usize], &r.rho[idx[1] as usize]);
        m = linalg::mat_add(&m, &p, c);
    }
    Ok(RepMatrix::from_linear(m, r.parity.clone(), order))
}

/// `θ_{V_1 ⊗ ... ⊗ V_n} = exp(C/2)` with `e_a` acting on the product by the coproduct.
pub fn twist_on_product(g: &MetricLieAlgebra, labels: &[&str], order: usize) -> Result<RepMatrix> {
    let reps: Vec<&Representation> = labels.iter().map(|l| rep(g, l)).collect::<Result<_>>()?;
    let parities: Vec<&[bool]> = reps.iter().map(|r| r.parity.as_slice()).collect();
    let parity = product_parity(&parities);
    let n = parity.len();
    let action: Vec<Matrix> = (0..g.dim())
        .map(|a| {
            let mut sum = linalg::zeros(n, n);
            for k in 0..reps.len() {
                let mut m = linalg::identity(1);
                let mut pm: Vec<bool> = vec![false];
                for (j, r) in reps.iter().enumerate() {
                    let f = if j == k { r.rho[a].clone() } else { linalg::identity(r.dim()) };
                    m = super_kron(&m, &pm, &f, &r.parity);
                    pm = product_parity(&[&pm, &r.parity]);
                }
                sum = linalg::mat_add(&sum, &m, &Q::one());
            }
            sum
        })
        .collect();
    let mut c = linalg::zeros(n, n);
    for (idx, v) in g.casimir().iter() {
        let p = linalg::mat_mul(&action[idx[0] as usize], &action[idx[1] as usize]);
        c = linalg::mat_add(&c, &p, v);
    }
    RepMatrix::from_linear(c, parity, order).scale(&Q::new(1.into(), 2.into())).exp()
}

/// The graded flip `V ⊗ W -> W ⊗ V`.
pub fn flip(pv: &[bool], pw: &[bool], order: usize) -> RepMatrix {
    let (m, n) = (pv.len(), pw.len());
    let mut t = linalg::zeros(m * n, m * n);
    for i in 0..m {
        for k in 0..n {
            t[k * m + i][i * n + k] = if pv[i] && pw[k] { -Q::one() } else { Q::one() };
        }
    }
    // rows are indexed by W ⊗ V; the parity vector is that of the target
    RepMatrix::from_constant(t, product_parity(&[pw, pv]), order)
}

fn compose_across(target: &RepMatrix, source: &RepMatrix) -> Result<RepMatrix> {
    // target · source where source acts on a space with a different basis order but the same size
    let relabeled = RepMatrix { order: source.order, parity: target.parity.clone(), coeffs: source.coeffs.clone() };
    target.mul(&relabeled)
}

/// `τ_{V,W} = τ_old ∘ exp(H_{V,W}/2) : V ⊗ W -> W ⊗ V`.
pub fn braiding(g: &MetricLieAlgebra, v: &str, w: &str, order: usize) -> Result<RepMatrix> {
    let e = chord_element(g, v, w, order)?.scale(&Q::new(1.into(), 2.into())).exp()?;
    let f = flip(&rep(g, v)?.parity, &rep(g, w)?.parity, order);
    compose_across(&f, &e)
}

/// `τ_{V,W}^{-1} = exp(-H_{V,W}/2) ∘ τ_old : W ⊗ V -> V ⊗ W`.
pub fn braiding_inverse(g: &MetricLieAlgebra, v: &str, w: &str, order: usize) -> Result<RepMatrix> {
    let e = chord_element(g, v, w, order)?.scale(&Q::new((-1).into(), 2.into())).exp()?;
    let f = flip(&rep(g, w)?.parity, &rep(g, v)?.parity, order);
    compose_across(&e, &f)
}

/// `θ_V = exp(C_V / 2)`.
pub fn twist(g: &MetricLieAlgebra, v: &str, order: usize) -> Result<RepMatrix> {
    casimir_element(g, v, order)?.scale(&Q::new(1.into(), 2.into())).exp()
}

/// A braid word: `k` is `σ_k`, `-k` is `σ_k^{-1}`, letters applied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::IndexOutOfRange("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::IndexOutOfRange(format!("generator {l} on {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace-separated signed integers.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        let mut col = 0;
        for piece in text.split_inclusive(char::is_whitespace) {
            let tok = piece.trim_end();
            if !tok.is_empty() {
                let l: i32 = tok
                    .parse()
                    .ok()
                    .filter(|&l| l != 0)
                    .ok_or_else(|| Error::parse(1, col + 1, format!("bad braid generator {tok:?}")))?;
                letters.push(l);
            }
            col += piece.chars().count();
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&l| -l).collect() }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::structural("braids on different strand counts"));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// The permutation of strand positions: `perm[i]` is where the strand starting at `i` ends.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            at.swap(k, k + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut n = 0;
        for s in 0..self.strands {
            if !seen[s] {
                n += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        n
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&w.join(" "))
    }
}

fn embed(g: &MetricLieAlgebra, labels: &[&str], k: usize, block: &RepMatrix, order: usize) -> Result<RepMatrix> {
    let parities: Vec<&[bool]> = labels.iter().map(|l| rep(g, l).map(|r| r.parity.as_slice())).collect::<Result<_>>()?;
    let left = RepMatrix::identity(product_parity(&parities[..k]), order);
    let right = RepMatrix::identity(product_parity(&parities[k + 2..]), order);
    left.kron(block)?.kron(&right)
}

/// The action of a braid on `V_{labels[0]} ⊗ ... ⊗ V_{labels[n-1]}`.
pub fn braid_rep(g: &MetricLieAlgebra, labels: &[&str], word: &BraidWord, order: usize) -> Result<RepMatrix> {
    if labels.len() != word.strands() {
        return Err(Error::structural(format!("{} labels for {} strands", labels.len(), word.strands())));
    }
    let mut cur: Vec<&str> = labels.to_vec();
    let parities: Vec<&[bool]> = cur.iter().map(|l| rep(g, l).map(|r| r.parity.as_slice())).collect::<Result<_>>()?;
    let mut total = RepMatrix::identity(product_parity(&parities), order);
    for &l in word.letters() {
        let k = l.unsigned_abs() as usize - 1;
        let (a, b) = (cur[k], cur[k + 1]);
        let block = if l > 0 { braiding(g, a, b, order)? } else { braiding_inverse(g, b, a, order)? };
        cur.swap(k, k + 1);
        let m = embed(g, &cur, k, &block, order)?;
        total = compose_across(&m, &total)?;
    }
    if cur != labels {
        return Err(Error::structural("closure joins strands with different labels"));
    }
    Ok(total)
}

/// The (super)trace of the braid action, optionally times `θ_V^{-writhe}`.
pub fn closure_invariant(
    g: &MetricLieAlgebra,
    labels: &[&str],
    word: &BraidWord,
    order: usize,
    normalize_framing: bool,
) -> Result<TruncatedSeries> {
    let tr = braid_rep(g, labels, word, order)?.supertrace();
    if !normalize_framing {
        return Ok(tr);
    }
    let label = labels.first().copied().unwrap_or("");
    if labels.iter().any(|l| *l != label) {
        return Err(Error::structural("framing normalization needs a single label"));
    }
    let theta = twist(g, label, order)?
        .scalar()
        .ok_or_else(|| Error::structural(format!("the twist of {label} is not a scalar")))?;
    let w = word.writhe();
    let base = if w > 0 { theta.inverse().expect("unit constant term") } else { theta };
    Ok(tr.mul(&base.pow(w.unsigned_abs() as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::builtin;
    use crate::rational::{frac, q};

    #[test]
    fn sl2_fund_casimir_is_three_halves() {
        let g = builtin("sl2").unwrap();
        let c = casimir_element(&g, "fund", 2).unwrap();
        assert_eq!(c.scalar().unwrap(), TruncatedSeries::new(2, [q(0), frac(3, 2)]));
    }

    #[test]
    fn abelian_trivial_vanishes() {
        let g = builtin("abelian(2)").unwrap();
        assert!(chord_element(&g, "trivial", "trivial", 3).unwrap().is_zero());
        assert!(casimir_element(&g, "trivial", 3).unwrap().is_zero());
    }

    #[test]
    fn braiding_at_order_zero_is_flip() {
        let g = builtin("sl2").unwrap();
        let r = braiding(&g, "fund", "fund", 0).unwrap();
        assert_eq!(r, flip(&[false, false], &[false, false], 0));
    }

    #[test]
    fn braiding_then_inverse_is_identity() {
        for name in ["sl2", "gl(1|1)"] {
            let g = builtin(name).unwrap();
            let r = braiding(&g, "fund", "adj", 3).unwrap();
            let ri = braiding_inverse(&g, "fund", "adj", 3).unwrap();
            assert!(compose_across(&ri, &r).unwrap().is_identity(), "{name}");
        }
    }

    #[test]
    fn parse_braids() {
        let b = BraidWord::parse(" 1 -2  1", 3).unwrap();
        assert_eq!(b.letters(), &[1, -2, 1]);
        assert_eq!(b.writhe(), 1);
        assert!(BraidWord::parse("", 1).unwrap().letters().is_empty());
        match BraidWord::parse("1 x", 2) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(BraidWord::parse("0", 2), Err(Error::Parse { .. })));
        assert!(matches!(BraidWord::parse("3", 3), Err(Error::IndexOutOfRange(_))));
        assert_eq!(BraidWord::parse("1 1 1", 2).unwrap().components(), 1);
        assert_eq!(BraidWord::parse("1 1", 2).unwrap().components(), 2);
    }

    #[test]
    fn trivial_closures() {
        let g = builtin("sl2").unwrap();
        let one = BraidWord::parse("", 1).unwrap();
        assert_eq!(closure_invariant(&g, &["fund"], &one, 2, false).unwrap(), TruncatedSeries::constant(2, q(2)));
        let b = BraidWord::parse("1 -1", 2).unwrap();
        assert_eq!(closure_invariant(&g, &["fund", "fund"], &b, 3, true).unwrap(), TruncatedSeries::constant(3, q(4)));
        let s = builtin("gl(1|1)").unwrap();
        assert!(closure_invariant(&s, &["fund"], &one, 2, false).unwrap().is_zero());
    }

    #[test]
    fn mixed_labels_need_pure_braids() {
        let g = builtin("sl2").unwrap();
        let b = BraidWord::parse("1", 2).unwrap();
        assert!(braid_rep(&g, &["fund", "adj"], &b, 1).is_err());
        let b = BraidWord::parse("1 1", 2).unwrap();
        assert_eq!(braid_rep(&g, &["fund", "adj"], &b, 1).unwrap().dim(), 6);
    }

    #[test]
    fn product_twist_matches_double_braiding() {
        let g = builtin("sl2").unwrap();
        let lhs = twist_on_product(&g, &["fund", "adj"], 3).unwrap();
        let double = braid_rep(&g, &["fund", "adj"], &BraidWord::parse("1 1", 2).unwrap(), 3).unwrap();
        let tt = twist(&g, "fund", 3).unwrap().kron(&twist(&g, "adj", 3).unwrap()).unwrap();
        assert_eq!(lhs, double.mul(&tt).unwrap());
        assert_eq!(twist_on_product(&g, &["fund"], 3).unwrap(), twist(&g, "fund", 3).unwrap());
    }
}
