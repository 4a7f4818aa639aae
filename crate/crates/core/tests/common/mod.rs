//! Brute-force oracles and input generators shared by the integration
//! tests. Nothing here calls into the reduction or scanning code it checks.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use knowtex_core::{DepGraph, EdgeKind, NodeKind, StatementNode};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Edges = Vec<(usize, usize)>;

/// Reflexive-free reachability by Floyd–Warshall.
#[allow(clippy::needless_range_loop)]
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for &(u, v) in edges {
        reach[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Minimal reduction of a DAG: keep an edge iff deleting it shrinks the
/// reachability relation.
pub fn brute_force_reduction(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let full = closure(n, edges);
    edges
        .iter()
        .filter(|&&e| {
            let without: Edges = edges.iter().copied().filter(|&x| x != e).collect();
            closure(n, &without) != full
        })
        .copied()
        .collect()
}

/// Component id per vertex from mutual reachability.
pub fn mutual_components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let reach = closure(n, edges);
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if comp[v] != usize::MAX {
            continue;
        }
        for w in v..n {
            if w == v || (reach[v][w] && reach[w][v]) {
                comp[w] = next;
            }
        }
        next += 1;
    }
    comp
}

/// Non-trivial strongly connected components as sorted member lists.
pub fn scc_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let comp = mutual_components(n, edges);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        if members.len() > 1 {
            groups.push(members);
        }
    }
    groups.sort();
    groups
}

/// Edges that survive reduction on an arbitrary digraph: intra-component
/// edges always; an inter-component edge (u, v) unless some edge leaves
/// u's component for a third component that reaches v.
pub fn cyclic_reduction_oracle(n: usize, edges: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let comp = mutual_components(n, edges);
    let reach = closure(n, edges);
    edges
        .iter()
        .filter(|&&(u, v)| {
            if comp[u] == comp[v] {
                return true;
            }
            !edges.iter().any(|&(a, b)| {
                comp[a] == comp[u] && comp[b] != comp[u] && comp[b] != comp[v] && reach[b][v]
            })
        })
        .copied()
        .collect()
}

/// Every labeled DAG on `n` vertices, as edge lists.
pub fn all_dags(n: usize) -> Vec<Edges> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut perms = vec![Vec::new()];
    for v in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, v);
                    q
                })
            })
            .collect();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        for perm in &perms {
            let mut edges: Edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &(a, b))| (perm[a], perm[b]))
                .collect();
            edges.sort_unstable();
            if seen.insert(edges.clone()) {
                out.push(edges);
            }
        }
    }
    out
}

pub fn random_digraph(rng: &mut impl Rng, max_nodes: usize) -> (usize, Edges) {
    let n = rng.gen_range(1..=max_nodes);
    let p: f64 = rng.gen_range(0.0..0.25);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (n, edges)
}

pub fn node_id(i: usize) -> String {
    format!("n:{i:03}")
}

/// A graph whose node `i` is labeled `n:00i`, so id order equals index
/// order. Edge kinds alternate by a fixed hash of the endpoints.
pub fn to_depgraph(n: usize, edges: &[(usize, usize)]) -> DepGraph {
    let mut g = DepGraph::new();
    for i in 0..n {
        g.add_node(StatementNode::new(node_id(i), NodeKind::ALL[i % 8]));
    }
    for &(u, v) in edges {
        let kind = if (u * 31 + v * 17) % 3 == 0 {
            EdgeKind::Logical
        } else {
            EdgeKind::Conceptual
        };
        g.add_edge(&node_id(u), &node_id(v), kind);
    }
    g
}

pub fn from_depgraph(g: &DepGraph) -> BTreeSet<(usize, usize)> {
    g.edges()
        .map(|e| (e.from[2..].parse().unwrap(), e.to[2..].parse().unwrap()))
        .collect()
}

/// Ground truth for one planted environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planted {
    pub name: String,
    pub label: Option<String>,
    pub uses: Vec<String>,
    pub span: (usize, usize),
}

pub struct PlantedDoc {
    pub text: String,
    pub truth: Vec<Planted>,
}

const SCANNED: &[&str] = &[
    "definition",
    "defn",
    "def",
    "Definition",
    "theorem",
    "thm",
    "Theorem",
    "lemma",
    "lem",
    "proposition",
    "prop",
    "corollary",
    "cor",
    "construction",
    "constr",
    "example",
    "ex",
    "remark",
    "rmk",
    "rem",
    "proof",
];
const UNSCANNED: &[&str] = &["itemize", "equation", "center", "theorem*", "claimx"];
const KEYS: &[&str] = &[
    "def:ring",
    "def:group",
    "lem:a-1",
    "thm:main",
    "prop:x",
    "cor:y2",
    "rmk:z",
    "ex:int",
    "plain",
    "a.b",
];
const WORDS: &[&str] = &[
    "Let",
    "$x$",
    "be",
    "a",
    "ring;",
    "then",
    "100\\%",
    "of",
    "the",
    "elements",
    "vanish.",
    "Hence",
    "$\\{0\\}$",
    "is",
    "trivial.",
    "\\ref{def:ring}",
    "\\emph{note}",
];

fn filler(rng: &mut impl Rng, out: &mut String) {
    let n = rng.gen_range(1..8);
    for _ in 0..n {
        out.push_str(WORDS.choose(rng).unwrap());
        out.push(' ');
    }
    out.push('\n');
}

fn decoy_comment(rng: &mut impl Rng, out: &mut String) {
    let decoys = [
        "% \\uses{ghost:comment}\n",
        "% \\begin{lemma}\\label{ghost:lemma}\n",
        "% \\end{theorem} stray end in a comment\n",
        "text % trailing \\label{ghost:label}\n",
        "\\verb|\\uses{ghost:verb}| inline\n",
    ];
    out.push_str(decoys.choose(rng).unwrap());
}

fn uses_command(rng: &mut impl Rng, out: &mut String, uses: &mut Vec<String>) {
    let k = rng.gen_range(1..=3);
    let mut items = Vec::new();
    for _ in 0..k {
        let key = *KEYS.choose(rng).unwrap();
        if !uses.iter().any(|u| u == key) {
            uses.push(key.to_string());
        }
        let pad = [" ", "", "  "];
        items.push(format!(
            "{}{}{}",
            pad.choose(rng).unwrap(),
            key,
            pad.choose(rng).unwrap()
        ));
    }
    if rng.gen_bool(0.2) {
        items.push(" ".to_string());
    }
    out.push_str(&format!("\\uses{{{}}}", items.join(",")));
    if rng.gen_bool(0.3) {
        out.push_str(" % \\uses{ghost:after}");
    }
    out.push('\n');
}

fn planted_env(
    rng: &mut impl Rng,
    out: &mut String,
    truth: &mut Vec<Planted>,
    depth: usize,
    label_counter: &mut usize,
) {
    let name = SCANNED.choose(rng).unwrap().to_string();
    let slot = truth.len();
    truth.push(Planted {
        name: name.clone(),
        label: None,
        uses: Vec::new(),
        span: (out.len(), 0),
    });
    out.push_str(&format!("\\begin{{{name}}}"));
    if rng.gen_bool(0.3) {
        out.push_str("[Some {title}]");
    }
    out.push('\n');

    let mut uses = Vec::new();
    let mut label = None;
    let parts = rng.gen_range(1..7);
    for _ in 0..parts {
        match rng.gen_range(0..7) {
            0 if label.is_none() => {
                *label_counter += 1;
                let l = format!("lbl:{}", label_counter);
                out.push_str(&format!("\\label{{{l}}}\n"));
                label = Some(l);
            }
            1 | 2 => uses_command(rng, out, &mut uses),
            3 if depth < 2 => planted_env(rng, out, truth, depth + 1, label_counter),
            4 => {
                let env = UNSCANNED.choose(rng).unwrap();
                out.push_str(&format!("\\begin{{{env}}}\n"));
                if rng.gen_bool(0.5) {
                    uses_command(rng, out, &mut uses);
                }
                filler(rng, out);
                out.push_str(&format!("\\end{{{env}}}\n"));
            }
            5 => decoy_comment(rng, out),
            _ => filler(rng, out),
        }
    }
    out.push_str(&format!("\\end{{{name}}}"));
    truth[slot].label = label;
    truth[slot].uses = uses;
    truth[slot].span.1 = out.len();
    out.push('\n');
}

pub fn planted_document(rng: &mut impl Rng) -> PlantedDoc {
    let mut text = String::new();
    let mut truth = Vec::new();
    let mut counter = 0;
    let blocks = rng.gen_range(0..10);
    for _ in 0..blocks {
        match rng.gen_range(0..6) {
            0 => filler(rng, &mut text),
            1 => decoy_comment(rng, &mut text),
            2 => {
                let env = UNSCANNED.choose(rng).unwrap();
                text.push_str(&format!("\\begin{{{env}}}\n"));
                filler(rng, &mut text);
                text.push_str(&format!("\\end{{{env}}}\n"));
            }
            _ => planted_env(rng, &mut text, &mut truth, 0, &mut counter),
        }
    }
    PlantedDoc { text, truth }
}
