use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest graph accepted by [`graph_isomorphic`].
pub const ISOMORPHISM_VERTEX_BUDGET: usize = 64;

/// A simple undirected graph without loops, stored as a dense adjacency
/// table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentStats {
    pub size: usize,
    pub diameter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    /// Degrees in non-increasing order.
    pub degree_sequence: Vec<usize>,
    pub component_count: usize,
    pub components: Vec<ComponentStats>,
    pub complete: bool,
}

impl GraphStats {
    pub fn regular_degree(&self) -> Option<usize> {
        let first = *self.degree_sequence.first()?;
        self.degree_sequence
            .iter()
            .all(|&d| d == first)
            .then_some(first)
    }

    pub fn max_diameter(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.diameter)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: &'a [String],
    edges: Vec<[usize; 2]>,
    stats: GraphStats,
}

impl Graph {
    /// Builds a graph from a symmetric, loop-free adjacency table.
    ///
    /// # Panics
    /// If the table is not square, not symmetric, or has loops.
    pub fn new(labels: Vec<String>, adj: Vec<Vec<bool>>) -> Self {
        let n = labels.len();
        assert_eq!(adj.len(), n);
        for i in 0..n {
            assert_eq!(adj[i].len(), n);
            assert!(!adj[i][i], "loop at vertex {i}");
            for j in 0..n {
                assert_eq!(adj[i][j], adj[j][i], "asymmetric at ({i},{j})");
            }
        }
        Graph { labels, adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        Graph::new((0..n).map(|i| i.to_string()).collect(), adj)
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect();
        Graph::new((0..n).map(|i| i.to_string()).collect(), adj)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        let n = self.len();
        (0..n)
            .flat_map(|i| {
                (i + 1..n)
                    .filter(move |&j| self.adj[i][j])
                    .map(move |j| [i, j])
            })
            .collect()
    }

    fn bfs(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.len();
        let mut degree_sequence: Vec<usize> = (0..n).map(|i| self.degree(i)).collect();
        degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
        let edges = degree_sequence.iter().sum::<usize>() / 2;

        let mut component = vec![usize::MAX; n];
        let mut components = Vec::new();
        for v in 0..n {
            if component[v] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = self
                .bfs(v)
                .iter()
                .enumerate()
                .filter_map(|(w, d)| d.map(|_| w))
                .collect();
            let idx = components.len();
            for &w in &members {
                component[w] = idx;
            }
            let diameter = members
                .iter()
                .map(|&w| self.bfs(w).into_iter().flatten().max().unwrap_or(0))
                .max()
                .unwrap_or(0);
            components.push(ComponentStats {
                size: members.len(),
                diameter,
            });
        }
        GraphStats {
            vertices: n,
            edges,
            degree_sequence,
            component_count: components.len(),
            components,
            complete: n > 0 && edges == n * (n - 1) / 2,
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph distant {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for [i, j] in self.edges() {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            vertices: &self.labels,
            edges: self.edges(),
            stats: self.stats(),
        })
        .expect("graph serializes")
    }
}

/// Colour refinement run on the disjoint union of both graphs, so colours are
/// comparable across them.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let total = g.len() + h.len();
    let neighbors = |v: usize| -> Vec<usize> {
        if v < g.len() {
            g.neighbors(v).collect()
        } else {
            h.neighbors(v - g.len()).map(|w| w + g.len()).collect()
        }
    };
    let adjacency: Vec<Vec<usize>> = (0..total).map(neighbors).collect();
    let mut colors: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|v| {
                let mut ns: Vec<usize> = adjacency[v].iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let mut palette = BTreeMap::new();
        for s in &signatures {
            let next = palette.len();
            palette.entry(s.clone()).or_insert(next);
        }
        let next: Vec<usize> = signatures.iter().map(|s| palette[s]).collect();
        let classes_before = colors
            .iter()
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        colors = next;
        if palette.len() == classes_before {
            break;
        }
    }
    let h_colors = colors.split_off(g.len());
    (colors, h_colors)
}

/// Graph isomorphism by colour refinement followed by backtracking.
pub fn graph_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    for size in [g.len(), h.len()] {
        if size > ISOMORPHISM_VERTEX_BUDGET {
            return Err(Error::Size {
                what: "graph isomorphism",
                size,
                budget: ISOMORPHISM_VERTEX_BUDGET,
            });
        }
    }
    if g.len() != h.len() || g.edges().len() != h.edges().len() {
        return Ok(false);
    }
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(false);
    }

    // Order G's vertices so each one has as many already-placed neighbours as
    // possible, which prunes the search early.
    let n = g.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| g.adjacent(u, v)).count();
                (links, std::cmp::Reverse(v))
            })
            .unwrap();
        placed[v] = true;
        order.push(v);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(backtrack(g, h, &cg, &ch, &order, 0, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.len() {
        if used[w] || cg[v] != ch[w] {
            continue;
        }
        let fits = order[..depth]
            .iter()
            .all(|&u| g.adjacent(u, v) == h.adjacent(map[u], w));
        if !fits {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if backtrack(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
