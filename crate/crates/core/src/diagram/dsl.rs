//! Line-oriented diagram text format.
//!
//! ```text
//! kind A          # or B
//! tri a b         # trivalent vertices; slot order is the orientation
//! legs 2          # legs l1 and l2
//! loop l2 l1      # kind A: cyclic order along the Wilson loop
//! edge a.0 l1     # ports are vertex.slot or a leg id
//! edge a.1 b.2
//! ```
//! Every port appears in exactly one edge. `circles k` adds vertexless circles.

use std::collections::HashMap;

use super::{JacobiGraph, Kind, Port};
use crate::error::{Error, Result};

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out
}

pub fn parse_diagram(text: &str) -> Result<JacobiGraph> {
    let mut kind = None;
    let mut vertices: HashMap<String, usize> = HashMap::new();
    let mut n_leg: Option<usize> = None;
    let mut loop_order: Option<Vec<usize>> = None;
    let mut edges: Vec<(Port, Port)> = Vec::new();
    let mut circles = 0usize;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(c0, head)) = toks.first() else { continue };
        let err = |col: usize, msg: String| Error::parse(line_no, col + 1, msg);
        let args = &toks[1..];
        let count = |n: usize| -> Result<()> {
            if args.len() != n {
                return Err(err(c0, format!("`{head}` takes {n} argument(s), found {}", args.len())));
            }
            Ok(())
        };
        let leg = |col: usize, t: &str| -> Result<usize> {
            let n = n_leg.ok_or_else(|| err(col, format!("leg {t:?} used before `legs`")))?;
            t.strip_prefix('l')
                .and_then(|x| x.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= n)
                .map(|i| i - 1)
                .ok_or_else(|| err(col, format!("unknown leg {t:?}")))
        };
        match head {
            "kind" => {
                count(1)?;
                let (c, k) = args[0];
                kind = Some(match k {
                    "A" => Kind::A,
                    "B" => Kind::B,
                    _ => return Err(err(c, format!("kind must be A or B, found {k:?}"))),
                });
            }
            "tri" => {
                if args.is_empty() {
                    return Err(err(c0, "`tri` needs at least one vertex id".into()));
                }
                for &(c, id) in args {
                    if id.contains('.') || id.starts_with('l') && id[1..].parse::<usize>().is_ok() {
                        return Err(err(c, format!("vertex id {id:?} clashes with port syntax")));
                    }
                    let next = vertices.len();
                    if vertices.insert(id.to_string(), next).is_some() {
                        return Err(err(c, format!("vertex {id:?} declared twice")));
                    }
                }
            }
            "legs" => {
                count(1)?;
                let (c, n) = args[0];
                if n_leg.is_some() {
                    return Err(err(c0, "`legs` declared twice".into()));
                }
                n_leg = Some(n.parse().map_err(|_| err(c, format!("bad leg count {n:?}")))?);
            }
            "loop" => {
                if loop_order.is_some() {
                    return Err(err(c0, "`loop` declared twice".into()));
                }
                loop_order = Some(args.iter().map(|&(c, t)| leg(c, t)).collect::<Result<_>>()?);
            }
            "edge" => {
                count(2)?;
                let port = |(c, t): (usize, &str)| -> Result<Port> {
                    if let Some((v, s)) = t.split_once('.') {
                        let v = *vertices.get(v).ok_or_else(|| err(c, format!("unknown vertex {v:?}")))?;
                        let s: usize = s
                            .parse()
                            .ok()
                            .filter(|&s| s < 3)
                            .ok_or_else(|| err(c, format!("slot must be 0, 1 or 2 in {t:?}")))?;
                        Ok(Port::Tri(v, s))
                    } else {
                        Ok(Port::Leg(leg(c, t)?))
                    }
                };
                edges.push((port(args[0])?, port(args[1])?));
            }
            "circles" => {
                count(1)?;
                let (c, n) = args[0];
                circles += n.parse::<usize>().map_err(|_| err(c, format!("bad circle count {n:?}")))?;
            }
            _ => return Err(err(c0, format!("unknown directive {head:?}"))),
        }
    }
    let kind = kind.ok_or_else(|| Error::parse(1, 1, "missing `kind` line"))?;
    let n_leg = n_leg.unwrap_or(0);
    let loop_order = match (kind, loop_order) {
        (Kind::A, Some(l)) => l,
        (Kind::A, None) if n_leg == 0 => Vec::new(),
        (Kind::A, None) => (0..n_leg).collect(),
        (Kind::B, None) => Vec::new(),
        (Kind::B, Some(_)) => return Err(Error::structural("`loop` given for a kind B diagram")),
    };
    JacobiGraph::new(kind, vertices.len(), n_leg, &edges, loop_order, circles)
}

#[cfg(test)]
mod tests {
    use super::super::{canonicalize, wheel};
    use super::*;

    #[test]
    fn round_trip() {
        let w = wheel(4).unwrap();
        assert_eq!(parse_diagram(&w.to_dsl()).unwrap(), w);
        let a = JacobiGraph::chord_diagram(&[(0, 2), (1, 3)]).unwrap();
        assert_eq!(parse_diagram(&a.to_dsl()).unwrap(), a);
    }

    #[test]
    fn one_chord_file() {
        let g = parse_diagram("# one chord\nkind A\nlegs 2\nloop l1 l2\nedge l1 l2\n").unwrap();
        assert_eq!(canonicalize(&g).0, JacobiGraph::chord_diagram(&[(0, 1)]).unwrap());
    }

    #[test]
    fn errors_have_positions() {
        match parse_diagram("kind B\ntri a\nlegs 1\nedge a.3 l1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 6)),
            other => panic!("{other:?}"),
        }
        match parse_diagram("kind C\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_diagram("kind B\ntri a\nlegs 1\nedge a.0 l1\n"), Err(Error::Structural(_))));
        assert!(matches!(parse_diagram("legs 2\n"), Err(Error::Parse { .. })));
    }
}
