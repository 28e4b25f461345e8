//! JSON algebra files.
//!
//! ```json
//! {
//!   "name": "sl2",
//!   "dim": 3,
//!   "basis": ["H", "E", "F"],
//!   "parity": [0, 0, 0],
//!   "f": [[0, 1, 1, "2"], [1, 0, 1, "-2"]],
//!   "metric": [[0, 0, "2"], [1, 2, 1], [2, 1, 1]],
//!   "reps": { "fund": { "dim": 2, "parity": [0, 0], "rho": [[0, 0, 0, 1], [0, 1, 1, -1]] } }
//! }
//! ```
//! Indices are 0-based; rationals are integers or strings `"p/q"`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MetricLieAlgebra, Representation};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{fmt_q, parse_q, Q};

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
enum Rational {
    Int(i64),
    Text(String),
}

impl Rational {
    fn value(&self) -> Result<Q> {
        match self {
            Rational::Int(i) => Ok(Q::from_integer((*i).into())),
            Rational::Text(s) => parse_q(s).ok_or_else(|| Error::Validation(format!("bad rational {s:?}"))),
        }
    }

    fn of(x: &Q) -> Self {
        Rational::Text(fmt_q(x))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
enum Parity {
    Bit(u8),
    Flag(bool),
}

impl Parity {
    fn odd(&self) -> Result<bool> {
        match self {
            Parity::Bit(0) | Parity::Flag(false) => Ok(false),
            Parity::Bit(1) | Parity::Flag(true) => Ok(true),
            Parity::Bit(b) => Err(Error::Validation(format!("parity must be 0 or 1, found {b}"))),
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RepFile {
    dim: usize,
    parity: Vec<Parity>,
    rho: Vec<(usize, usize, usize, Rational)>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    parity: Vec<Parity>,
    f: Vec<(usize, usize, usize, Rational)>,
    metric: Vec<(usize, usize, Rational)>,
    #[serde(default)]
    reps: BTreeMap<String, RepFile>,
}

fn parities(v: &[Parity], dim: usize, what: &str) -> Result<Vec<bool>> {
    if v.len() != dim {
        return Err(Error::Validation(format!("{what}: parity list has {} entries for dim {dim}", v.len())));
    }
    v.iter().map(Parity::odd).collect()
}

/// Parses and validates an algebra description.
pub fn parse_algebra(text: &str) -> Result<MetricLieAlgebra> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    let d = file.dim;
    let parity = parities(&file.parity, d, "algebra")?;
    let f = file.f.iter().map(|(a, b, c, v)| Ok((*a, *b, *c, v.value()?))).collect::<Result<Vec<_>>>()?;
    let metric = file.metric.iter().map(|(a, b, v)| Ok((*a, *b, v.value()?))).collect::<Result<Vec<_>>>()?;
    let mut reps = Vec::new();
    for (name, r) in &file.reps {
        let mut rho = vec![linalg::zeros(r.dim, r.dim); d];
        for (a, i, j, v) in &r.rho {
            if *a >= d || *i >= r.dim || *j >= r.dim {
                return Err(Error::IndexOutOfRange(format!("rep {name}: entry ({a},{i},{j})")));
            }
            rho[*a][*i][*j] += v.value()?;
        }
        reps.push(Representation { name: name.clone(), parity: parities(&r.parity, r.dim, name)?, rho });
    }
    let g = MetricLieAlgebra::new(
        file.name.unwrap_or_else(|| "custom".into()),
        file.basis.unwrap_or_default(),
        parity,
        f,
        metric,
        reps,
    )?;
    g.validate().into_result()?;
    Ok(g)
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<MetricLieAlgebra> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_algebra(&text)
}

impl MetricLieAlgebra {
    /// Serializes to the JSON algebra format.
    pub fn to_json(&self) -> String {
        let bit = |p: &bool| Parity::Bit(u8::from(*p));
        let mut reps = BTreeMap::new();
        for r in &self.reps {
            let mut rho = Vec::new();
            for (a, m) in r.rho.iter().enumerate() {
                for (i, row) in m.iter().enumerate() {
                    for (j, x) in row.iter().enumerate() {
                        if !num_traits::Zero::is_zero(x) {
                            rho.push((a, i, j, Rational::of(x)));
                        }
                    }
                }
            }
            reps.insert(r.name.clone(), RepFile { dim: r.dim(), parity: r.parity.iter().map(bit).collect(), rho });
        }
        let mut metric = Vec::new();
        for (a, row) in self.metric.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                if !num_traits::Zero::is_zero(x) {
                    metric.push((a, b, Rational::of(x)));
                }
            }
        }
        let file = AlgebraFile {
            name: Some(self.name.clone()),
            dim: self.dim(),
            basis: Some(self.basis_names.clone()),
            parity: self.parity.iter().map(bit).collect(),
            f: self.structure_constants().map(|(a, b, c, v)| (a, b, c, Rational::of(v))).collect(),
            metric,
            reps,
        };
        serde_json::to_string_pretty(&file).expect("algebra data serializes")
    }
}

impl PartialEq for MetricLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        let mut a: Vec<&Representation> = self.reps.iter().collect();
        let mut b: Vec<&Representation> = other.reps.iter().collect();
        a.sort_by(|x, y| x.name.cmp(&y.name));
        b.sort_by(|x, y| x.name.cmp(&y.name));
        self.name == other.name
            && self.basis_names == other.basis_names
            && self.parity == other.parity
            && self.bracket == other.bracket
            && self.metric == other.metric
            && a == b
    }
}
