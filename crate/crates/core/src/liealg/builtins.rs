use num_traits::{One, Zero};

use super::{MetricLieAlgebra, Representation};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{q, Q};

/// Looks up a built-in algebra: `sl2`, `gl(n)`, `so(n)`, `abelian(d)`, `gl(1|1)`.
/// Each comes with `fund`, `adj` and `trivial` representations.
pub fn builtin(name: &str) -> Result<MetricLieAlgebra> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let arg = |prefix: &str| -> Option<usize> {
        let rest = key.strip_prefix(prefix)?;
        let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
        rest.parse().ok()
    };
    let unknown = || Error::Unknown(format!("built-in algebra {name:?}"));
    if key == "sl2" || key == "sl(2)" {
        return sl2();
    }
    if key == "gl(1|1)" || key == "gl11" {
        return gl11();
    }
    if let Some(n) = arg("gl") {
        return if n >= 1 { gl(n) } else { Err(unknown()) };
    }
    if let Some(n) = arg("so") {
        return if n >= 2 { so(n) } else { Err(unknown()) };
    }
    if let Some(d) = arg("abelian") {
        return if d >= 1 { abelian(d) } else { Err(unknown()) };
    }
    Err(unknown())
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = linalg::zeros(n, n);
    m[i][j] = Q::one();
    m
}

fn supertrace(m: &Matrix, parity: &[bool]) -> Q {
    (0..m.len()).map(|i| if parity[i] { -m[i][i].clone() } else { m[i][i].clone() }).sum()
}

fn flatten(m: &Matrix) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

/// Builds the subalgebra of `gl(V)` spanned by homogeneous `basis` matrices,
/// with metric `str(XY)` and the defining, adjoint and trivial modules.
fn matrix_algebra(name: &str, names: &[&str], basis: Vec<Matrix>, v_parity: Vec<bool>) -> Result<MetricLieAlgebra> {
    let d = basis.len();
    let parity: Vec<bool> = basis
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, x)| (i, j, x)))
                .find(|(_, _, x)| !x.is_zero())
                .map(|(i, j, _)| v_parity[i] ^ v_parity[j])
                .unwrap_or(false)
        })
        .collect();
    let flat: Vec<Vec<Q>> = basis.iter().map(flatten).collect();
    let mut structure = Vec::new();
    let mut metric = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let ab = linalg::mat_mul(&basis[a], &basis[b]);
            let ba = linalg::mat_mul(&basis[b], &basis[a]);
            let sign = if parity[a] && parity[b] { Q::one() } else { -Q::one() };
            let br = linalg::mat_add(&ab, &ba, &sign);
            let coords = linalg::coordinates(&flat, &flatten(&br))
                .ok_or_else(|| Error::structural(format!("{name}: basis is not closed under the bracket")))?;
            for (c, v) in coords.into_iter().enumerate() {
                if !v.is_zero() {
                    structure.push((a, b, c, v));
                }
            }
            let t = supertrace(&ab, &v_parity);
            if !t.is_zero() {
                metric.push((a, b, t));
            }
        }
    }
    let fund = Representation { name: "fund".into(), parity: v_parity, rho: basis };
    let mut g = MetricLieAlgebra::new(
        name,
        names.iter().map(|s| s.to_string()).collect(),
        parity,
        structure,
        metric,
        vec![fund],
    )?;
    add_standard_reps(&mut g);
    Ok(g)
}

fn add_standard_reps(g: &mut MetricLieAlgebra) {
    let adj = Representation { name: "adj".into(), parity: g.parity().to_vec(), rho: g.adjoint_matrices() };
    let trivial = Representation { name: "trivial".into(), parity: vec![false], rho: vec![linalg::zeros(1, 1); g.dim()] };
    g.reps.push(adj);
    g.reps.push(trivial);
}

fn sl2() -> Result<MetricLieAlgebra> {
    let h = vec![vec![q(1), q(0)], vec![q(0), q(-1)]];
    matrix_algebra("sl2", &["H", "E", "F"], vec![h, unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)], vec![false; 2])
}

fn gl(n: usize) -> Result<MetricLieAlgebra> {
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in 0..n {
            basis.push(unit_matrix(n, i, j));
            names.push(format!("E{}{}", i + 1, j + 1));
        }
    }
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    matrix_algebra(&format!("gl({n})"), &names, basis, vec![false; n])
}

fn so(n: usize) -> Result<MetricLieAlgebra> {
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = linalg::mat_add(&unit_matrix(n, i, j), &unit_matrix(n, j, i), &-Q::one());
            basis.push(m);
            names.push(format!("A{}{}", i + 1, j + 1));
        }
    }
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    matrix_algebra(&format!("so({n})"), &names, basis, vec![false; n])
}

fn gl11() -> Result<MetricLieAlgebra> {
    let basis = vec![unit_matrix(2, 0, 0), unit_matrix(2, 1, 1), unit_matrix(2, 0, 1), unit_matrix(2, 1, 0)];
    matrix_algebra("gl(1|1)", &["E11", "E22", "E12", "E21"], basis, vec![false, true])
}

fn abelian(d: usize) -> Result<MetricLieAlgebra> {
    let names = (0..d).map(|i| format!("e{i}")).collect();
    let fund = Representation { name: "fund".into(), parity: vec![false], rho: vec![vec![vec![Q::one()]]; d] };
    let mut g = MetricLieAlgebra::new(
        format!("abelian({d})"),
        names,
        vec![false; d],
        [],
        (0..d).map(|a| (a, a, Q::one())),
        vec![fund],
    )?;
    add_standard_reps(&mut g);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets() {
        let g = builtin("sl2").unwrap();
        assert_eq!(g.bracket(0, 1), &[(1, q(2))]);
        assert_eq!(g.bracket(1, 2), &[(0, q(1))]);
        assert_eq!(g.metric()[0][0], q(2));
        assert_eq!(g.metric()[1][2], q(1));
    }

    #[test]
    fn names_and_dimensions() {
        assert_eq!(builtin("gl(3)").unwrap().dim(), 9);
        assert_eq!(builtin("so(4)").unwrap().dim(), 6);
        assert_eq!(builtin("gl(1|1)").unwrap().sdim(), 0);
        assert_eq!(builtin(" GL(2) ").unwrap().name(), "gl(2)");
        assert!(matches!(builtin("e8"), Err(Error::Unknown(_))));
        assert!(builtin("gl(0)").is_err());
    }

    #[test]
    fn gl11_odd_brackets() {
        let g = builtin("gl(1|1)").unwrap();
        assert_eq!(g.parity(), &[false, false, true, true]);
        // [E12, E21] = E11 + E22
        assert_eq!(g.bracket(2, 3), &[(0, q(1)), (1, q(1))]);
        assert_eq!(g.bracket(3, 2), &[(0, q(1)), (1, q(1))]);
    }
}
