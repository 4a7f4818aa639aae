//! Layered (Sugiyama-style) layout used for the TikZ output.
//!
//! Cycles are broken by reversing DFS back-edges for layout purposes only,
//! ranks come from longest paths, orders from median sweeps, and x positions
//! from packing each rank and centering it on the widest one. Coordinates
//! are printer's points with y growing upwards, so rank 0 is drawn on top.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::graph::DepGraph;

/// Vertical distance between consecutive rank baselines.
pub const RANK_SEPARATION: f64 = 72.0;
/// Horizontal gap between neighbouring node boxes.
pub const NODE_GAP: f64 = 24.0;
pub const NODE_HEIGHT: f64 = 36.0;
pub const MIN_NODE_WIDTH: f64 = 40.0;
pub const WIDTH_PER_CHAR: f64 = 8.0;
pub const ORDERING_SWEEPS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LayeredLayout {
    pub rank: BTreeMap<String, usize>,
    pub order: BTreeMap<String, usize>,
    /// Node centers.
    pub position: BTreeMap<String, Point>,
    pub width: BTreeMap<String, f64>,
    /// Straight border-to-border segments, keyed by the true edge direction.
    pub routes: BTreeMap<(String, String), Vec<Point>>,
    /// Edges that were reversed to break cycles.
    pub reversed: BTreeSet<(String, String)>,
}

impl LayeredLayout {
    /// Horizontal extent `[left, right]` of a node box.
    pub fn x_range(&self, id: &str) -> (f64, f64) {
        let c = self.position[id];
        let half = self.width[id] / 2.0;
        (c.x - half, c.x + half)
    }
}

pub fn node_width(display: &str) -> f64 {
    MIN_NODE_WIDTH.max(WIDTH_PER_CHAR * display.chars().count() as f64)
}

/// The graph as index-based adjacency with back-edges flipped.
struct LayoutDag {
    ids: Vec<String>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    reversed: BTreeSet<(String, String)>,
}

impl LayoutDag {
    fn new(graph: &DepGraph) -> Self {
        let ids: Vec<String> = graph.nodes().map(|n| n.id.clone()).collect();
        let index: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        let n = ids.len();
        let mut out = vec![Vec::new(); n];
        for e in graph.edges() {
            out[index[e.from.as_str()]].push(index[e.to.as_str()]);
        }

        // Iterative DFS in id order; an edge into a vertex still on the stack
        // is a back-edge.
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut mark = vec![Mark::New; n];
        let mut back = BTreeSet::new();
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            mark[root] = Mark::Active;
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                if let Some(&w) = out[v].get(*pos) {
                    *pos += 1;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, 0));
                        }
                        Mark::Active => {
                            back.insert((v, w));
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }

        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (u, targets) in out.iter().enumerate() {
            for &v in targets {
                let (a, b) = if back.contains(&(u, v)) {
                    (v, u)
                } else {
                    (u, v)
                };
                if !succ[a].contains(&b) {
                    succ[a].push(b);
                    pred[b].push(a);
                }
            }
        }
        let reversed = back
            .into_iter()
            .map(|(u, v)| (ids[u].clone(), ids[v].clone()))
            .collect();
        Self {
            ids,
            succ,
            pred,
            reversed,
        }
    }

    fn ranks(&self) -> Vec<usize> {
        let n = self.ids.len();
        let mut indegree: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut rank = vec![0usize; n];
        while let Some(v) = ready.pop() {
            for &w in &self.succ[v] {
                rank[w] = rank[w].max(rank[v] + 1);
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(w);
                }
            }
        }
        rank
    }

    /// Weakly connected components, each sorted, ordered by first member.
    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.ids.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for &w in self.succ[v].iter().chain(&self.pred[v]) {
                    if !seen[w] {
                        seen[w] = true;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// Longest-path ranks over the graph with cycles broken.
pub fn assign_ranks(graph: &DepGraph) -> BTreeMap<String, usize> {
    let dag = LayoutDag::new(graph);
    let ranks = dag.ranks();
    dag.ids.into_iter().zip(ranks).collect()
}

/// Number of crossings between edges spanning the same pair of ranks.
fn crossings(layers: &[Vec<usize>], rank: &[usize], edges: &[(usize, usize)]) -> usize {
    let mut pos = HashMap::new();
    for layer in layers {
        for (i, &v) in layer.iter().enumerate() {
            pos.insert(v, i as i64);
        }
    }
    let mut groups: BTreeMap<(usize, usize), Vec<(i64, i64)>> = BTreeMap::new();
    for &(u, v) in edges {
        groups
            .entry((rank[u], rank[v]))
            .or_default()
            .push((pos[&u], pos[&v]));
    }
    groups
        .values()
        .map(|es| {
            let mut count = 0;
            for (i, a) in es.iter().enumerate() {
                for b in &es[i + 1..] {
                    if (a.0 - b.0) * (a.1 - b.1) < 0 {
                        count += 1;
                    }
                }
            }
            count
        })
        .sum()
}

fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

/// Orders one component's layers in place.
fn order_component(dag: &LayoutDag, rank: &[usize], layers: &mut [Vec<usize>]) {
    let members: BTreeSet<usize> = layers.iter().flatten().copied().collect();
    let edges: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&u| dag.succ[u].iter().map(move |&v| (u, v)))
        .collect();
    let mut best = layers.to_vec();
    let mut best_crossings = crossings(layers, rank, &edges);

    for sweep in 0..ORDERING_SWEEPS {
        let downward = sweep % 2 == 0;
        let sequence: Vec<usize> = if downward {
            (1..layers.len()).collect()
        } else {
            (0..layers.len().saturating_sub(1)).rev().collect()
        };
        for r in sequence {
            // relative position in [0, 1] of every node in the current order
            let mut rel = HashMap::new();
            for layer in layers.iter() {
                for (i, &v) in layer.iter().enumerate() {
                    rel.insert(v, (i as f64 + 0.5) / layer.len() as f64);
                }
            }
            let mut keyed: Vec<(f64, &str, usize)> = layers[r]
                .iter()
                .map(|&v| {
                    let neighbours = if downward { &dag.pred[v] } else { &dag.succ[v] };
                    let key =
                        median(neighbours.iter().map(|w| rel[w]).collect()).unwrap_or(rel[&v]);
                    (key, dag.ids[v].as_str(), v)
                })
                .collect();
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(b.1)));
            layers[r] = keyed.into_iter().map(|(_, _, v)| v).collect();
        }
        let c = crossings(layers, rank, &edges);
        if c < best_crossings {
            best_crossings = c;
            best = layers.to_vec();
        }
    }
    layers.clone_from_slice(&best);
}

struct Ordered {
    dag: LayoutDag,
    rank: Vec<usize>,
    /// Per component, per rank, node indices left to right.
    components: Vec<Vec<Vec<usize>>>,
}

fn order_all(graph: &DepGraph) -> Ordered {
    let dag = LayoutDag::new(graph);
    let rank = dag.ranks();
    let mut components = Vec::new();
    for members in dag.components() {
        let depth = members.iter().map(|&v| rank[v]).max().unwrap_or(0) + 1;
        let mut layers = vec![Vec::new(); depth];
        for &v in &members {
            layers[rank[v]].push(v);
        }
        // members are sorted by index, and indices follow id order
        order_component(&dag, &rank, &mut layers);
        components.push(layers);
    }
    Ordered {
        dag,
        rank,
        components,
    }
}

/// Position of every node within its rank, across all components.
///
/// Starts from lexicographic order and runs alternating median sweeps,
/// keeping the ordering with the fewest crossings seen.
pub fn order_within_ranks(graph: &DepGraph) -> BTreeMap<String, usize> {
    global_order(&order_all(graph))
}

fn global_order(ordered: &Ordered) -> BTreeMap<String, usize> {
    let mut next: HashMap<usize, usize> = HashMap::new();
    let mut order = BTreeMap::new();
    for layers in &ordered.components {
        for (r, layer) in layers.iter().enumerate() {
            for &v in layer {
                let slot = next.entry(r).or_insert(0);
                order.insert(ordered.dag.ids[v].clone(), *slot);
                *slot += 1;
            }
        }
    }
    order
}

/// Runs the full layout.
pub fn layout(graph: &DepGraph) -> LayeredLayout {
    let ordered = order_all(graph);
    let order = global_order(&ordered);
    let dag = &ordered.dag;
    let max_rank = ordered.rank.iter().copied().max().unwrap_or(0);
    let widths: Vec<f64> = dag
        .ids
        .iter()
        .map(|id| node_width(&graph.node(id).expect("layout node").display))
        .collect();

    let mut position = BTreeMap::new();
    let mut left_edge = 0.0;
    for layers in &ordered.components {
        let row_width = |layer: &Vec<usize>| {
            layer.iter().map(|&v| widths[v]).sum::<f64>()
                + NODE_GAP * layer.len().saturating_sub(1) as f64
        };
        let component_width = layers.iter().map(row_width).fold(0.0, f64::max);
        for (r, layer) in layers.iter().enumerate() {
            let y = NODE_HEIGHT / 2.0 + (max_rank - r) as f64 * RANK_SEPARATION;
            let mut x = left_edge + (component_width - row_width(layer)) / 2.0;
            for &v in layer {
                position.insert(
                    dag.ids[v].clone(),
                    Point {
                        x: x + widths[v] / 2.0,
                        y,
                    },
                );
                x += widths[v] + NODE_GAP;
            }
        }
        left_edge += component_width + NODE_GAP;
    }

    let width: BTreeMap<String, f64> = dag.ids.iter().cloned().zip(widths).collect();
    let routes = graph
        .edges()
        .map(|e| {
            let a = position[&e.from];
            let b = position[&e.to];
            let start = clip(a, width[&e.from], b);
            let end = clip(b, width[&e.to], a);
            ((e.from, e.to), vec![start, end])
        })
        .collect();

    LayeredLayout {
        rank: dag
            .ids
            .iter()
            .cloned()
            .zip(ordered.rank.iter().copied())
            .collect(),
        order,
        position,
        width,
        routes,
        reversed: dag.reversed.clone(),
    }
}

/// Where the segment from `center` towards `toward` leaves the node box.
fn clip(center: Point, width: f64, toward: Point) -> Point {
    let dx = toward.x - center.x;
    let dy = toward.y - center.y;
    let tx = if dx == 0.0 {
        f64::INFINITY
    } else {
        (width / 2.0) / dx.abs()
    };
    let ty = if dy == 0.0 {
        f64::INFINITY
    } else {
        (NODE_HEIGHT / 2.0) / dy.abs()
    };
    let t = tx.min(ty).min(1.0);
    Point {
        x: center.x + t * dx,
        y: center.y + t * dy,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeKind, NodeKind, StatementNode};

    fn graph(ids: &[&str], edges: &[(&str, &str)]) -> DepGraph {
        let mut g = DepGraph::new();
        for id in ids {
            g.add_node(StatementNode::new(*id, NodeKind::Lemma));
        }
        for (a, b) in edges {
            g.add_edge(a, b, EdgeKind::Conceptual);
        }
        g
    }

    fn ranks_of(g: &DepGraph) -> Vec<(String, usize)> {
        assign_ranks(g).into_iter().collect()
    }

    #[test]
    fn chain_ranks() {
        let g = graph(
            &["def:ring", "lem:ring-unit", "cor:trivial-ring"],
            &[
                ("def:ring", "lem:ring-unit"),
                ("lem:ring-unit", "cor:trivial-ring"),
            ],
        );
        let r = assign_ranks(&g);
        assert_eq!(r["def:ring"], 0);
        assert_eq!(r["lem:ring-unit"], 1);
        assert_eq!(r["cor:trivial-ring"], 2);
        let o = order_within_ranks(&g);
        assert!(o.values().all(|&p| p == 0));
    }

    #[test]
    fn isolated_node() {
        let g = graph(&["a"], &[]);
        assert_eq!(ranks_of(&g), [("a".to_string(), 0)]);
        let l = layout(&g);
        assert_eq!(l.x_range("a").0, 0.0);
        assert_eq!(l.position["a"].y, NODE_HEIGHT / 2.0);
    }

    #[test]
    fn diamond() {
        let g = graph(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        );
        let r = assign_ranks(&g);
        assert_eq!((r["a"], r["b"], r["c"], r["d"]), (0, 1, 1, 2));
        let o = order_within_ranks(&g);
        assert_eq!((o["b"], o["c"]), (0, 1));
        let l = layout(&g);
        assert_eq!(l.position["b"].y, l.position["c"].y);
        let (_, b_right) = l.x_range("b");
        let (c_left, _) = l.x_range("c");
        assert!(b_right <= c_left);
        // 40 + 24 + 40 packed, centered on the same widest row
        assert_eq!(c_left - b_right, NODE_GAP);
    }

    #[test]
    fn longest_path_not_shortest() {
        let g = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(assign_ranks(&g)["c"], 2);
    }

    #[test]
    fn cycle_gets_layout() {
        let g = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        let l = layout(&g);
        assert_eq!(l.reversed.len(), 1);
        assert!(l.reversed.contains(&("c".to_string(), "a".to_string())));
        assert_eq!(l.position.len(), 3);
        // the reversed edge still points from c to a, now upwards
        let route = &l.routes[&("c".to_string(), "a".to_string())];
        assert!(route[0].y < route[1].y);
    }

    #[test]
    fn components_side_by_side() {
        let g = graph(&["a", "b", "x", "y"], &[("a", "b"), ("x", "y")]);
        let l = layout(&g);
        assert_eq!(l.order["a"], 0);
        assert_eq!(l.order["x"], 1);
        assert!(l.x_range("a").1 < l.x_range("x").0);
        assert_eq!(l.position["a"].y, l.position["x"].y);
    }

    #[test]
    fn routes_touch_borders() {
        let g = graph(&["a", "b"], &[("a", "b")]);
        let l = layout(&g);
        let r = &l.routes[&("a".to_string(), "b".to_string())];
        assert_eq!(r[0].y, l.position["a"].y - NODE_HEIGHT / 2.0);
        assert_eq!(r[1].y, l.position["b"].y + NODE_HEIGHT / 2.0);
    }
}
