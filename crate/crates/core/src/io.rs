//! Text formats for instances and witnesses.
//!
//! An instance looks like
//!
//! ```text
//! # comment
//! psep 3 2
//! v a
//! e a b
//! e b c
//! ```
//!
//! Labels are arbitrary whitespace-free strings; ids follow first
//! appearance. `v` lines declare vertices (needed for isolated ones), the
//! header counts distinct labels and `e` lines.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::crown::{CrownDecomposition, Star};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    /// Label of every vertex id.
    pub labels: Vec<String>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn parse_count(word: &str, line: usize, what: &str) -> Result<usize> {
    word.parse().map_err(|_| parse_err(line, format!("{what} {word:?} is not a non-negative integer")))
}

impl Instance {
    /// Labels `0..n`.
    pub fn from_graph(graph: Graph) -> Self {
        let labels = graph.vertices().map(|v| v.to_string()).collect();
        Instance { graph, labels }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        for (line, words) in content_lines(text) {
            match words[0] {
                "psep" => {
                    if header.is_some() {
                        return Err(parse_err(line, "duplicate header"));
                    }
                    if words.len() != 3 {
                        return Err(parse_err(line, "header must be `psep <n> <m>`"));
                    }
                    let n = parse_count(words[1], line, "vertex count")?;
                    let m = parse_count(words[2], line, "edge count")?;
                    header = Some((n, m, line));
                }
                kind @ ("v" | "e") => {
                    if header.is_none() {
                        return Err(parse_err(line, "expected header `psep <n> <m>` first"));
                    }
                    let want = if kind == "v" { 2 } else { 3 };
                    if words.len() != want {
                        let shape = if kind == "v" { "`v <label>`" } else { "`e <u> <v>`" };
                        return Err(parse_err(line, format!("expected {shape}")));
                    }
                    let mut endpoint = Vec::with_capacity(2);
                    for &label in &words[1..] {
                        let next = labels.len();
                        let id = *ids.entry(label).or_insert(next);
                        if id == next {
                            labels.push(label.to_string());
                        }
                        endpoint.push(id);
                    }
                    if kind == "e" {
                        edges.push((endpoint[0], endpoint[1]));
                    }
                }
                other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
            }
        }
        let Some((n, m, line)) = header else {
            return Err(parse_err(0, "missing header `psep <n> <m>`"));
        };
        if n != labels.len() {
            return Err(parse_err(line, format!("header declares {n} vertices, file has {}", labels.len())));
        }
        if m != edges.len() {
            return Err(parse_err(line, format!("header declares {m} edges, file has {}", edges.len())));
        }
        let graph = Graph::from_edges(n, &edges)?;
        Ok(Instance { graph, labels })
    }

    /// Header, one `v` line per vertex in id order, then the edges. Loops
    /// and duplicate edges are gone by this point.
    pub fn to_text(&self) -> String {
        let g = &self.graph;
        let mut out = format!("psep {} {}\n", g.n(), g.m());
        for label in &self.labels {
            let _ = writeln!(out, "v {label}");
        }
        for (u, v) in g.edges() {
            let _ = writeln!(out, "e {} {}", self.labels[u], self.labels[v]);
        }
        out
    }

    pub fn label_ids(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    pub fn labels_of(&self, s: &VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.labels[v].as_str()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Separator(VertexSet),
    /// A crown decomposition; its `p` is supplied by the reader.
    Crown(CrownDecomposition),
}

const SEPARATOR_HEADER: &str = "psep-witness separator";
const CROWN_HEADER: &str = "psep-witness crown";

pub fn write_separator(inst: &Instance, s: &VertexSet) -> String {
    let mut out = format!("{SEPARATOR_HEADER}\n");
    for label in inst.labels_of(s) {
        let _ = writeln!(out, "v {label}");
    }
    out
}

/// `i`, `c` and `j` lines name the parts; each `leaf <center> <vertices>`
/// line gives one leaf of the star at `center`.
pub fn write_crown(inst: &Instance, cd: &CrownDecomposition) -> String {
    let mut out = format!("{CROWN_HEADER}\n");
    for (tag, set) in [("i", &cd.i_set), ("c", &cd.c_set), ("j", &cd.j_set)] {
        for label in inst.labels_of(set) {
            let _ = writeln!(out, "{tag} {label}");
        }
    }
    for star in &cd.stars {
        for leaf in &star.leaves {
            let _ = writeln!(out, "leaf {} {}", inst.labels[star.center], inst.labels_of(leaf).join(" "));
        }
    }
    out
}

/// Reads either witness kind against the labels of `inst`.
pub fn parse_witness(inst: &Instance, p: usize, text: &str) -> Result<Witness> {
    let ids = inst.label_ids();
    let mut lines = content_lines(text);
    let Some((first, words)) = lines.next() else {
        return Err(parse_err(0, "empty witness"));
    };
    let crown = match words.join(" ").as_str() {
        SEPARATOR_HEADER => false,
        CROWN_HEADER => true,
        _ => {
            return Err(parse_err(
                first,
                format!("expected `{SEPARATOR_HEADER}` or `{CROWN_HEADER}`"),
            ))
        }
    };
    let lookup = |label: &str, line: usize| -> Result<usize> {
        ids.get(label).copied().ok_or_else(|| parse_err(line, format!("unknown vertex {label:?}")))
    };

    let mut sep = Vec::new();
    let mut parts: [Vec<usize>; 3] = Default::default();
    let mut stars: Vec<Star> = Vec::new();
    for (line, words) in lines {
        match (crown, words[0]) {
            (false, "v") | (true, "i" | "c" | "j") => {
                if words.len() < 2 {
                    return Err(parse_err(line, "missing vertex"));
                }
                let target = match words[0] {
                    "v" => &mut sep,
                    "i" => &mut parts[0],
                    "c" => &mut parts[1],
                    _ => &mut parts[2],
                };
                for &label in &words[1..] {
                    target.push(lookup(label, line)?);
                }
            }
            (true, "leaf") => {
                if words.len() < 3 {
                    return Err(parse_err(line, "expected `leaf <center> <vertex>...`"));
                }
                let center = lookup(words[1], line)?;
                let leaf = words[2..].iter().map(|l| lookup(l, line)).collect::<Result<VertexSet>>()?;
                match stars.iter_mut().find(|s| s.center == center) {
                    Some(star) => star.leaves.push(leaf),
                    None => stars.push(Star { center, leaves: vec![leaf] }),
                }
            }
            (_, other) => return Err(parse_err(line, format!("unexpected line type {other:?}"))),
        }
    }
    if !crown {
        return Ok(Witness::Separator(sep.into_iter().collect()));
    }
    for (line_tag, part) in ["i", "c", "j"].iter().zip(&parts) {
        let set: VertexSet = part.iter().copied().collect();
        if set.len() != part.len() {
            return Err(parse_err(0, format!("duplicate vertex in `{line_tag}` lines")));
        }
    }
    let [i, c, j] = parts;
    Ok(Witness::Crown(CrownDecomposition {
        p,
        i_set: i.into_iter().collect(),
        c_set: c.into_iter().collect(),
        j_set: j.into_iter().collect(),
        stars,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crown::{crown, verify_crown};

    #[test]
    fn parse_with_comments_and_isolated_vertices() {
        let text = "# triangle plus a loner\npsep 4 4\ne x y\ne y z # inline\n\ne z x\ne x y\nv lone\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.labels, vec!["x", "y", "z", "lone"]);
        assert_eq!((inst.graph.n(), inst.graph.m()), (4, 3));
    }

    #[test]
    fn round_trip() {
        let inst = Instance::parse("psep 3 3\ne a b\ne b a\ne b c\n").unwrap();
        let text = inst.to_text();
        assert_eq!(text, "psep 3 2\nv a\nv b\nv c\ne a b\ne b c\n");
        assert_eq!(Instance::parse(&text).unwrap(), inst);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("e a b\n", 1),
            ("psep 2 1\ne a\n", 2),
            ("psep 3 1\ne a b\n", 1),
            ("psep 2 2\ne a b\n", 1),
            ("psep 2 1\nx a b\n", 2),
            ("psep two 1\n", 1),
            ("# nothing\n", 0),
        ];
        for (text, want) in cases {
            match Instance::parse(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn loops_are_dropped() {
        let inst = Instance::parse("psep 2 2\ne a a\ne a b\n").unwrap();
        assert_eq!(inst.graph.m(), 1);
    }

    #[test]
    fn witness_round_trip() {
        let inst = Instance::parse("psep 4 3\ne h a\ne h b\ne h c\n").unwrap();
        let cd = crown(&inst.graph, &VertexSet::from([0]), 1).unwrap();
        let text = write_crown(&inst, &cd);
        let back = parse_witness(&inst, 1, &text).unwrap();
        assert_eq!(back, Witness::Crown(cd.clone()));
        assert!(verify_crown(&inst.graph, &cd).is_empty());

        let sep = VertexSet::from([0]);
        let text = write_separator(&inst, &sep);
        assert_eq!(text, "psep-witness separator\nv h\n");
        assert_eq!(parse_witness(&inst, 1, &text).unwrap(), Witness::Separator(sep));
    }

    #[test]
    fn bad_witnesses() {
        let inst = Instance::parse("psep 2 1\ne a b\n").unwrap();
        assert!(parse_witness(&inst, 1, "").is_err());
        assert!(parse_witness(&inst, 1, "psep-witness nonsense\n").is_err());
        assert!(parse_witness(&inst, 1, "psep-witness separator\nv zz\n").is_err());
        assert!(parse_witness(&inst, 1, "psep-witness separator\ni a\n").is_err());
        assert!(parse_witness(&inst, 1, "psep-witness crown\ni a\ni a\n").is_err());
    }
}
