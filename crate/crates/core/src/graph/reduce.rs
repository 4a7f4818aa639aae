//! Transitive reduction over the condensation of a digraph.
//!
//! Strongly connected components are collapsed first. An edge between two
//! different components is dropped exactly when the target component is
//! reachable from the source component through some third component; edges
//! inside a component are always kept. On a DAG this is the usual unique
//! transitive reduction.

use std::collections::BTreeMap;

use super::build::DepGraph;
use crate::diagnostic::Diagnostic;

/// Fixed-size bitset over component indices.
#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Tarjan's algorithm, iterative. Each component's members are sorted and
/// components are ordered by their smallest member.
pub fn strongly_connected_components(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut components = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }
    components.sort_by_key(|c| c[0]);
    components
}

/// Returns one keep-flag per input edge.
pub fn reduce_edges(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    let components = strongly_connected_components(n, &adj);
    let m = components.len();
    let mut comp_of = vec![0; n];
    for (c, members) in components.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }

    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut indegree = vec![0usize; m];
    for &(u, v) in edges {
        let (cu, cv) = (comp_of[u], comp_of[v]);
        if cu != cv && !succ[cu].contains(&cv) {
            succ[cu].push(cv);
            indegree[cv] += 1;
        }
    }

    // Kahn order, then descendants in reverse.
    let mut order = Vec::with_capacity(m);
    let mut ready: Vec<usize> = (0..m).filter(|&c| indegree[c] == 0).collect();
    while let Some(c) = ready.pop() {
        order.push(c);
        for &d in &succ[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(d);
            }
        }
    }
    debug_assert_eq!(order.len(), m, "condensation must be acyclic");

    // descendants[c]: components reachable from c by a path of length >= 1
    let mut descendants = vec![BitSet::new(m); m];
    for &c in order.iter().rev() {
        let mut reach = BitSet::new(m);
        for &d in &succ[c] {
            reach.insert(d);
            reach.union_with(&descendants[d]);
        }
        descendants[c] = reach;
    }

    // implied[c]: components reachable from c by a path of length >= 2
    let implied: Vec<BitSet> = (0..m)
        .map(|c| {
            let mut set = BitSet::new(m);
            for &d in &succ[c] {
                set.union_with(&descendants[d]);
            }
            set
        })
        .collect();

    edges
        .iter()
        .map(|&(u, v)| {
            let (cu, cv) = (comp_of[u], comp_of[v]);
            cu == cv || !implied[cu].contains(cv)
        })
        .collect()
}

/// Index view of a graph: ids sorted, edges as index pairs.
fn indexed(graph: &DepGraph) -> (Vec<String>, Vec<(usize, usize)>) {
    let ids: Vec<String> = graph.nodes().map(|n| n.id.clone()).collect();
    let position: BTreeMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let edges = graph
        .edges()
        .map(|e| (position[e.from.as_str()], position[e.to.as_str()]))
        .collect();
    (ids, edges)
}

/// Removes every inter-component edge implied by a longer path. Surviving
/// edges keep their kind.
pub fn transitive_reduce(graph: &DepGraph) -> DepGraph {
    let (ids, edges) = indexed(graph);
    let keep = reduce_edges(ids.len(), &edges);
    let kept: std::collections::HashSet<(&str, &str)> = edges
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(&(u, v), _)| (ids[u].as_str(), ids[v].as_str()))
        .collect();
    let mut reduced = graph.clone();
    reduced.retain_edges(|from, to| kept.contains(&(from, to)));
    reduced
}

/// Nontrivial strongly connected components, members in lexicographic
/// order, with one warning per component.
pub fn detect_cycles(graph: &DepGraph) -> (Vec<Vec<String>>, Vec<Diagnostic>) {
    let (ids, edges) = indexed(graph);
    let mut adj = vec![Vec::new(); ids.len()];
    for &(u, v) in &edges {
        adj[u].push(v);
    }
    let mut cycles = Vec::new();
    let mut diagnostics = Vec::new();
    for component in strongly_connected_components(ids.len(), &adj) {
        if component.len() < 2 {
            continue;
        }
        let members: Vec<String> = component.iter().map(|&i| ids[i].clone()).collect();
        let offset = members
            .iter()
            .filter_map(|id| graph.node(id))
            .map(|n| n.offset)
            .min()
            .unwrap_or(0);
        diagnostics.push(Diagnostic::warning(
            offset,
            format!("dependency cycle among {}", members.join(", ")),
        ));
        cycles.push(members);
    }
    (cycles, diagnostics)
}
