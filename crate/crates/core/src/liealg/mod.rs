//! Metric Lie (super)algebras and their representations as exact tensor data.
//!
//! Conventions: `[e_a, e_b] = Σ_c f^c_{ab} e_c`; the metric `b_{ab}` is even
//! and graded-symmetric; the lowered constants are `f_{abc} = b([e_a, e_b], e_c)`.
//! Super signs follow the Koszul rule `(-1)^{|x||y|}` whenever two homogeneous
//! symbols are transposed.

mod builtins;
mod format;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::tensor::{ContractionNetwork, Scalar, Space, SparseTensor};

pub use builtins::builtin;
pub use format::{load_algebra, parse_algebra};

/// A finite-dimensional module: `rho[a]` is the matrix of `e_a` acting on V.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub name: String,
    pub parity: Vec<bool>,
    pub rho: Vec<Matrix>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// Superdimension: even minus odd basis vectors.
    pub fn sdim(&self) -> i64 {
        self.parity.iter().map(|&p| if p { -1 } else { 1 }).sum()
    }

    pub fn space(&self) -> Space {
        self.parity.clone().into()
    }

    /// The action as a tensor with axes `(V out, V in, g)`.
    pub fn action_tensor(&self, g_space: &Space) -> SparseTensor<Q> {
        let v = self.space();
        let mut t = SparseTensor::new(vec![v.clone(), v, g_space.clone()]);
        for (a, m) in self.rho.iter().enumerate() {
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        t.add_entry(vec![i as u32, j as u32, a as u32], x.clone());
                    }
                }
            }
        }
        t
    }
}

/// Outcome of [`MetricLieAlgebra::validate`]: every failed axiom with a witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::Validation(self.failures.join("; ")))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "ok");
        }
        for line in &self.failures {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MetricLieAlgebra {
    name: String,
    basis_names: Vec<String>,
    parity: Vec<bool>,
    /// `(a, b) -> [(c, f^c_{ab})]`, only nonzero brackets.
    bracket: BTreeMap<(usize, usize), Vec<(usize, Q)>>,
    metric: Matrix,
    inverse_metric: Matrix,
    space: Space,
    f_lower: Arc<SparseTensor<Q>>,
    f_tensor: Arc<SparseTensor<Q>>,
    casimir: Arc<SparseTensor<Q>>,
    metric_tensor: Arc<SparseTensor<Q>>,
    reps: Vec<Representation>,
}

fn sgn(neg: bool) -> Q {
    if neg {
        -Q::one()
    } else {
        Q::one()
    }
}

impl MetricLieAlgebra {
    /// Assembles an algebra from structure constants `(a, b, c, f^c_{ab})` and
    /// metric entries `(a, b, b_{ab})`. Only nondegeneracy is enforced here;
    /// call [`validate`](Self::validate) for the remaining axioms.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        parity: Vec<bool>,
        structure: impl IntoIterator<Item = (usize, usize, usize, Q)>,
        metric_entries: impl IntoIterator<Item = (usize, usize, Q)>,
        reps: Vec<Representation>,
    ) -> Result<Self> {
        let d = parity.len();
        let mut bracket: BTreeMap<(usize, usize), BTreeMap<usize, Q>> = BTreeMap::new();
        for (a, b, c, v) in structure {
            if a >= d || b >= d || c >= d {
                return Err(Error::IndexOutOfRange(format!("structure constant ({a},{b},{c}) with dim {d}")));
            }
            let e = bracket.entry((a, b)).or_default().entry(c).or_insert_with(Q::zero);
            *e += v;
        }
        let bracket: BTreeMap<(usize, usize), Vec<(usize, Q)>> = bracket
            .into_iter()
            .map(|(k, m)| (k, m.into_iter().filter(|(_, v)| !v.is_zero()).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let mut metric = linalg::zeros(d, d);
        for (a, b, v) in metric_entries {
            if a >= d || b >= d {
                return Err(Error::IndexOutOfRange(format!("metric entry ({a},{b}) with dim {d}")));
            }
            metric[a][b] += v;
        }
        let inverse_metric = linalg::inverse(&metric)
            .ok_or_else(|| Error::Validation("metric is degenerate (nondegeneracy fails)".into()))?;
        for r in &reps {
            if r.rho.len() != d || r.rho.iter().any(|m| m.len() != r.dim() || m.iter().any(|row| row.len() != r.dim())) {
                return Err(Error::structural(format!("representation {} has malformed matrices", r.name)));
            }
        }
        let space: Space = parity.clone().into();
        let names = if basis_names.len() == d { basis_names } else { (0..d).map(|i| format!("e{i}")).collect() };

        let mut f_lower = SparseTensor::new(vec![space.clone(), space.clone(), space.clone()]);
        for (&(a, b), terms) in &bracket {
            for (e, v) in terms {
                for (c, m) in metric[*e].iter().enumerate() {
                    if !m.is_zero() {
                        f_lower.add_entry(vec![a as u32, b as u32, c as u32], v * m);
                    }
                }
            }
        }
        // components of the forms as elements of g* ⊗ g* (⊗ g*): a dual basis
        // vector moving past a basis vector picks up the Koszul sign
        let mut f_tensor = SparseTensor::new(vec![space.clone(), space.clone(), space.clone()]);
        for (idx, v) in f_lower.iter() {
            let odd = idx.iter().filter(|&&i| parity[i as usize]).count();
            f_tensor.add_entry(idx.clone(), if odd == 2 { -v.clone() } else { v.clone() });
        }
        let mut casimir = SparseTensor::new(vec![space.clone(), space.clone()]);
        let mut metric_tensor = SparseTensor::new(vec![space.clone(), space.clone()]);
        for a in 0..d {
            for b in 0..d {
                if !inverse_metric[a][b].is_zero() {
                    casimir.add_entry(vec![a as u32, b as u32], inverse_metric[a][b].clone());
                }
                if !metric[a][b].is_zero() {
                    let v = if parity[a] && parity[b] { -metric[a][b].clone() } else { metric[a][b].clone() };
                    metric_tensor.add_entry(vec![a as u32, b as u32], v);
                }
            }
        }
        Ok(MetricLieAlgebra {
            name: name.into(),
            basis_names: names,
            parity,
            bracket,
            metric,
            inverse_metric,
            space,
            f_lower: Arc::new(f_lower),
            f_tensor: Arc::new(f_tensor),
            casimir: Arc::new(casimir),
            metric_tensor: Arc::new(metric_tensor),
            reps,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[bool] {
        &self.parity
    }

    pub fn is_odd(&self, a: usize) -> bool {
        self.parity[a]
    }

    pub fn is_super(&self) -> bool {
        self.parity.iter().any(|&p| p)
    }

    /// Superdimension: even minus odd basis elements.
    pub fn sdim(&self) -> i64 {
        self.parity.iter().map(|&p| if p { -1 } else { 1 }).sum()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn inverse_metric(&self) -> &Matrix {
        &self.inverse_metric
    }

    /// `[e_a, e_b]` as `(c, f^c_{ab})` pairs.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Q)] {
        self.bracket.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Q)> {
        self.bracket.iter().flat_map(|(&(a, b), v)| v.iter().map(move |(c, x)| (a, b, *c, x)))
    }

    pub fn f_lower(&self) -> &Arc<SparseTensor<Q>> {
        &self.f_lower
    }

    /// The lowered constants as an element of `g* ⊗ g* ⊗ g*`.
    pub fn f_tensor(&self) -> &Arc<SparseTensor<Q>> {
        &self.f_tensor
    }

    pub fn casimir(&self) -> &Arc<SparseTensor<Q>> {
        &self.casimir
    }

    /// The metric as an element of `g* ⊗ g*`.
    pub fn metric_tensor(&self) -> &Arc<SparseTensor<Q>> {
        &self.metric_tensor
    }

    pub fn representations(&self) -> &[Representation] {
        &self.reps
    }

    pub fn rep(&self, name: &str) -> Result<&Representation> {
        self.reps
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::Unknown(format!("representation {name:?} of {}", self.name)))
    }

    /// The bracket of two vectors given in coordinates.
    fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (&(a, b), terms) in &self.bracket {
            if x[a].is_zero() || y[b].is_zero() {
                continue;
            }
            let w = &x[a] * &y[b];
            for (c, v) in terms {
                out[*c] += &w * v;
            }
        }
        out
    }

    fn unit(&self, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    /// Killing form `str(ad x ad y)` as a matrix.
    pub fn killing_form(&self) -> Matrix {
        let ad = self.adjoint_matrices();
        let d = self.dim();
        let mut k = linalg::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let m = linalg::mat_mul(&ad[a], &ad[b]);
                k[a][b] = (0..d).map(|i| &m[i][i] * sgn(self.parity[i])).sum();
            }
        }
        k
    }

    /// `ad(e_a)` with `ad(e_a)[c][b] = f^c_{ab}`.
    pub fn adjoint_matrices(&self) -> Vec<Matrix> {
        let d = self.dim();
        let mut ad = vec![linalg::zeros(d, d); d];
        for (&(a, b), terms) in &self.bracket {
            for (c, v) in terms {
                ad[a][*c][b] = v.clone();
            }
        }
        ad
    }

    /// Exhaustive check of the Lie superalgebra, metric and module axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let d = self.dim();
        let p = &self.parity;
        for (a, b, c, v) in self.structure_constants() {
            if p[c] != (p[a] ^ p[b]) {
                rep.fail(format!("parity: f^{c}_({a},{b}) = {v} joins parities {} {} -> {}", p[a], p[b], p[c]));
            }
        }
        for a in 0..d {
            for b in 0..d {
                let lhs = self.bracket_vec(&self.unit(a), &self.unit(b));
                let rhs = self.bracket_vec(&self.unit(b), &self.unit(a));
                let s = sgn(p[a] && p[b]);
                if lhs.iter().zip(&rhs).any(|(x, y)| !(x + &s * y).is_zero()) {
                    rep.fail(format!("antisymmetry fails at ({a},{b})"));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let t2 = self.bracket_vec(&eb, &self.bracket_vec(&ec, &ea));
                    let t3 = self.bracket_vec(&ec, &self.bracket_vec(&ea, &eb));
                    let (s1, s2, s3) = (sgn(p[a] && p[c]), sgn(p[b] && p[a]), sgn(p[c] && p[b]));
                    if (0..d).any(|i| !(&s1 * &t1[i] + &s2 * &t2[i] + &s3 * &t3[i]).is_zero()) {
                        rep.fail(format!("Jacobi identity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let v = &self.metric[a][b];
                if !v.is_zero() && p[a] != p[b] {
                    rep.fail(format!("metric is not even at ({a},{b})"));
                }
                if *v != sgn(p[a] && p[b]) * &self.metric[b][a] {
                    rep.fail(format!("metric symmetry fails at ({a},{b})"));
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let ab = self.bracket_vec(&self.unit(a), &self.unit(b));
                for c in 0..d {
                    let bc = self.bracket_vec(&self.unit(b), &self.unit(c));
                    let lhs: Q = (0..d).map(|e| &ab[e] * &self.metric[e][c]).sum();
                    let rhs: Q = (0..d).map(|e| &self.metric[a][e] * &bc[e]).sum();
                    if lhs != rhs {
                        rep.fail(format!("metric invariance fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        for (k, order) in [[1, 0, 2], [0, 2, 1], [2, 1, 0]].iter().enumerate() {
            match self.f_lower.permute_axes(order) {
                Ok(t) if t == self.f_lower.scale(&-Q::one()) => {}
                _ => rep.fail(format!("lowered structure constants not antisymmetric under transposition {k}")),
            }
        }
        if !self.casimir_is_invariant() {
            rep.fail("Casimir is not invariant under the adjoint action".into());
        }
        for r in &self.reps {
            self.validate_rep(r, &mut rep);
        }
        rep
    }

    fn validate_rep(&self, r: &Representation, rep: &mut ValidationReport) {
        let d = self.dim();
        for a in 0..d {
            for (i, row) in r.rho[a].iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() && r.parity[i] != (r.parity[j] ^ self.parity[a]) {
                        rep.fail(format!("rep {}: rho(e_{a})[{i}][{j}] has the wrong parity", r.name));
                    }
                }
            }
        }
        for a in 0..d {
            for b in 0..d {
                let ab = linalg::mat_mul(&r.rho[a], &r.rho[b]);
                let ba = linalg::mat_mul(&r.rho[b], &r.rho[a]);
                let mut lhs = linalg::mat_add(&ab, &ba, &-sgn(self.parity[a] && self.parity[b]));
                for (c, v) in self.bracket(a, b) {
                    lhs = linalg::mat_add(&lhs, &r.rho[*c], &-v.clone());
                }
                if !linalg::is_zero_matrix(&lhs) {
                    rep.fail(format!("rep {}: rho([e_{a}, e_{b}]) != [rho(e_{a}), rho(e_{b})]", r.name));
                }
            }
        }
    }

    /// `Σ_e f^a_{de} c^{eb} + (-1)^{|d||a|} Σ_e f^b_{de} c^{ae} = 0` for all `a, b, d`.
    pub fn casimir_is_invariant(&self) -> bool {
        let d = self.dim();
        let c = &self.casimir;
        for a in 0..d {
            for b in 0..d {
                for x in 0..d {
                    let mut s = Q::zero();
                    for e in 0..d {
                        for (k, v) in self.bracket(x, e) {
                            if *k == a {
                                s += v * c.get(&[e as u32, b as u32]);
                            }
                            if *k == b {
                                s += sgn(self.parity[x] && self.parity[a]) * v * c.get(&[a as u32, e as u32]);
                            }
                        }
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `s_i(x) = str(ad(x)^i)` as an element of `S^i(g*)`.
    pub fn s_poly(&self, i: usize) -> crate::poly::InvariantPolynomial {
        let d = self.dim();
        let ad = self.adjoint_matrices();
        let mut poly = crate::poly::Polynomial::zero(self.parity.clone());
        if i == 0 {
            return crate::poly::InvariantPolynomial(crate::poly::Polynomial::constant(self.parity.clone(), Q::from_integer((d as i64).into())));
        }
        // enumerate index words; the polynomial projection symmetrizes them
        let mut word = vec![0usize; i];
        loop {
            let mut m = ad[word[0]].clone();
            for &a in &word[1..] {
                m = linalg::mat_mul(&m, &ad[a]);
            }
            let tr: Q = (0..d).map(|k| &m[k][k] * sgn(self.parity[k])).sum();
            if !tr.is_zero() {
                poly.add_word(&word.iter().map(|&x| x as u32).collect::<Vec<_>>(), &tr);
            }
            let mut k = i;
            loop {
                if k == 0 {
                    return crate::poly::InvariantPolynomial(poly);
                }
                k -= 1;
                word[k] += 1;
                if word[k] < d {
                    break;
                }
                word[k] = 0;
            }
        }
    }

    /// Contracts the Casimir against the metric on one leg; the result must
    /// be the identity of g (used to pin the sign convention of `c`).
    pub fn zigzag(&self) -> Result<SparseTensor<Q>> {
        let mut net = ContractionNetwork::new(vec![self.casimir.clone(), self.metric_tensor.clone()]);
        net.pair((1, 0), (0, 1));
        net.open = vec![(0, 0), (1, 1)];
        net.evaluate()
    }

    /// Value of a vertexless circle: the metric contracted with the Casimir.
    pub fn circle_value(&self) -> Result<Q> {
        let mut net = ContractionNetwork::new(vec![self.metric_tensor.clone(), self.casimir.clone()]);
        net.pair((0, 0), (1, 0));
        net.pair((0, 1), (1, 1));
        Ok(net.evaluate()?.scalar_value().unwrap_or_else(<Q as Scalar>::zero_elem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn builtins_validate() {
        for name in ["sl2", "gl(2)", "gl(3)", "so(3)", "so(4)", "abelian(3)", "gl(1|1)"] {
            let g = builtin(name).unwrap();
            let r = g.validate();
            assert!(r.passed(), "{name}: {r}");
            assert!(g.rep("fund").is_ok() && g.rep("adj").is_ok(), "{name}");
        }
    }

    #[test]
    fn sl2_casimir() {
        let g = builtin("sl2").unwrap();
        let c = g.casimir();
        assert_eq!(c.get(&[0, 0]), frac(1, 2));
        assert_eq!(c.get(&[1, 2]), q(1));
        assert_eq!(c.get(&[2, 1]), q(1));
        assert_eq!(c.nnz(), 3);
    }

    #[test]
    fn abelian_casimir_is_identity() {
        let g = builtin("abelian(4)").unwrap();
        let c = g.casimir();
        assert_eq!(c.nnz(), 4);
        for a in 0..4u32 {
            assert_eq!(c.get(&[a, a]), q(1));
        }
    }

    #[test]
    fn metric_times_inverse_is_identity() {
        for name in ["sl2", "gl(3)", "so(4)", "gl(1|1)"] {
            let g = builtin(name).unwrap();
            assert_eq!(linalg::mat_mul(g.metric(), g.inverse_metric()), linalg::identity(g.dim()));
        }
    }

    #[test]
    fn zigzag_is_identity_even_for_superalgebras() {
        for name in ["sl2", "gl(1|1)"] {
            let g = builtin(name).unwrap();
            let z = g.zigzag().unwrap();
            let d = g.dim() as u32;
            for a in 0..d {
                for b in 0..d {
                    assert_eq!(z.get(&[a, b]), if a == b { q(1) } else { q(0) }, "{name} ({a},{b})");
                }
            }
        }
    }

    #[test]
    fn circle_is_superdimension() {
        assert_eq!(builtin("gl(3)").unwrap().circle_value().unwrap(), q(9));
        assert_eq!(builtin("gl(1|1)").unwrap().circle_value().unwrap(), q(0));
        assert_eq!(builtin("sl2").unwrap().circle_value().unwrap(), q(3));
    }

    #[test]
    fn perturbed_sl2_fails_jacobi() {
        let g = builtin("sl2").unwrap();
        let mut f: Vec<(usize, usize, usize, Q)> =
            g.structure_constants().map(|(a, b, c, v)| (a, b, c, v.clone())).collect();
        // [E, F] = H + E: still antisymmetric after mirroring into [F, E]
        f.push((1, 2, 1, q(1)));
        f.push((2, 1, 1, q(-1)));
        let bad = MetricLieAlgebra::new("bad", vec![], g.parity().to_vec(), f, [(0, 0, q(2)), (1, 2, q(1)), (2, 1, q(1))], vec![])
            .unwrap();
        let r = bad.validate();
        assert!(r.failures.iter().any(|m| m.contains("Jacobi")), "{r}");
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let e = MetricLieAlgebra::new("z", vec![], vec![false, false], [], [(0, 0, q(1))], vec![]);
        assert!(matches!(e, Err(Error::Validation(m)) if m.contains("nondegeneracy")));
    }

    #[test]
    fn adjoint_rep_of_sl2_is_a_rep() {
        let g = builtin("sl2").unwrap();
        let mut r = ValidationReport::default();
        g.validate_rep(g.rep("adj").unwrap(), &mut r);
        assert!(r.passed());
    }

    #[test]
    fn s_polys_of_sl2() {
        let g = builtin("sl2").unwrap();
        assert!(g.s_poly(1).0.is_zero());
        // s_2 is the Killing form read as a quadratic polynomial
        let k = g.killing_form();
        let s2 = g.s_poly(2).0;
        let mut expect = crate::poly::Polynomial::zero(g.parity().to_vec());
        for a in 0..3u32 {
            for b in 0..3u32 {
                expect.add_word(&[a, b], &k[a as usize][b as usize]);
            }
        }
        assert_eq!(s2, expect);
        assert_eq!(k[0][0], q(8));
        assert!(builtin("abelian(3)").unwrap().s_poly(4).0.is_zero());
    }
}
