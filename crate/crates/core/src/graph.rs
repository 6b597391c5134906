//! Coupling graphs, cactus validation and the two derived structures the
//! covering-path solver runs on: the weighted vertex cactus and its block tree.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`, adjacency lists kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({v},{})",
                    w[0]
                )));
            }
        }
        Ok(Graph { adj })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize)> = file.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(file.n, &edges)
    }

    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&file).expect("graph serialization")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::InvalidGraph("empty graph".into()));
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(unreached) => Err(Error::NotConnected { unreached }),
            None => Ok(()),
        }
    }

    /// Subgraph induced by `keep` (ascending order preserved). Returns the
    /// relabeled graph and the map from new labels to old ones.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut order: Vec<usize> = keep.to_vec();
        order.sort_unstable();
        order.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in order.iter().enumerate() {
            index[v] = i;
        }
        let adj = order
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        (Graph { adj }, order)
    }

    /// Per-vertex flag: visited by `walk` or adjacent to a visited vertex.
    pub fn covered_by(&self, walk: &[usize]) -> Vec<bool> {
        let mut covered = vec![false; self.n()];
        for &v in walk {
            covered[v] = true;
            for &u in &self.adj[v] {
                covered[u] = true;
            }
        }
        covered
    }

    /// True when consecutive walk vertices are adjacent.
    pub fn is_walk(&self, walk: &[usize]) -> bool {
        walk.iter().all(|&v| v < self.n()) && walk.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

/// Simple cycles of a cactus in DFS-discovery order from vertex 0. Each cycle
/// starts at the vertex the DFS reached first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub membership: Vec<Vec<usize>>,
    edge_cycle: HashMap<(usize, usize), usize>,
}

impl CycleDecomposition {
    pub fn cycle_of_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_cycle.get(&(u.min(v), u.max(v))).copied()
    }

    /// Number of cycles through `v`.
    pub fn cyc(&self, v: usize) -> usize {
        self.membership[v].len()
    }
}

/// DFS cycle extraction; fails on the first edge found on two cycles.
pub fn validate_cactus(g: &Graph) -> Result<CycleDecomposition> {
    g.check_connected()?;
    let n = g.n();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut edge_cycle = HashMap::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let Some(&u) = g.neighbors(v).get(*next) else {
            stack.pop();
            continue;
        };
        *next += 1;
        if depth[u] == usize::MAX {
            depth[u] = depth[v] + 1;
            parent[u] = v;
            stack.push((u, 0));
        } else if u != parent[v] && depth[u] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != u {
                x = parent[x];
                cycle.push(x);
            }
            cycle.reverse();
            let index = cycles.len();
            for i in 0..cycle.len() {
                let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                let key = (a.min(b), a.max(b));
                if edge_cycle.insert(key, index).is_some() {
                    return Err(Error::NotACactus { u: key.0, v: key.1 });
                }
            }
            cycles.push(cycle);
        }
    }
    let mut membership = vec![Vec::new(); n];
    for (i, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            membership[v].push(i);
        }
    }
    Ok(CycleDecomposition { cycles, membership, edge_cycle })
}

/// Core left after peeling degree-1 vertices.
#[derive(Clone, Debug)]
pub struct PrunedGraph {
    pub core: Graph,
    /// Original label of each core vertex.
    pub core_vertices: Vec<usize>,
    pub pruned: BTreeSet<usize>,
}

/// Repeatedly removes degree-1 vertices until none remain or one vertex is left.
pub fn prune_leaves(g: &Graph) -> PrunedGraph {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut remaining = n;
    let mut pruned = BTreeSet::new();
    loop {
        let round: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] == 1).collect();
        if round.is_empty() || remaining <= 1 {
            break;
        }
        let count = if round.len() == remaining { round.len() - 1 } else { round.len() };
        for &v in &round[round.len() - count..] {
            alive[v] = false;
            remaining -= 1;
            pruned.insert(v);
            for &u in g.neighbors(v) {
                if alive[u] {
                    degree[u] -= 1;
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let (core, core_vertices) = g.induced(&keep);
    PrunedGraph { core, core_vertices, pruned }
}

/// Degree-1 vertices of `g`; a shortest covering walk on three or more
/// vertices never needs to visit them.
pub fn leaves(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&v| g.degree(v) == 1).collect()
}

/// Cactus with every vertex on at most one cycle, obtained by splitting each
/// vertex on several cycles into one copy per cycle joined by weight-0 edges.
#[derive(Clone, Debug)]
pub struct WeightedVertexCactus {
    /// Sorted `(neighbor, weight)` lists.
    pub adj: Vec<Vec<(usize, u32)>>,
    /// G-vertex represented by each T-vertex.
    pub origin: Vec<usize>,
    /// T-vertices of each G-vertex; `copies[v][0]` is the hub.
    pub copies: Vec<Vec<usize>>,
    /// Cycles in T-vertex labels, indexed like the G decomposition.
    pub cycles: Vec<Vec<usize>>,
    pub cycle_of: Vec<Option<usize>>,
}

impl WeightedVertexCactus {
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        self.adj[u].iter().find(|&&(x, _)| x == v).map(|&(_, w)| w)
    }

    /// Edge on a cycle of T (as opposed to a bridge).
    pub fn is_cycle_edge(&self, u: usize, v: usize) -> bool {
        matches!((self.cycle_of[u], self.cycle_of[v]), (Some(a), Some(b)) if a == b)
    }

    /// Contracts every weight-0 edge, giving back a graph on G's labels.
    pub fn contract(&self) -> Result<Graph> {
        let mut edges = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &(v, w) in list {
                if u < v && w == 1 {
                    edges.push((self.origin[u], self.origin[v]));
                }
            }
        }
        Graph::from_edges(self.copies.len(), &edges)
    }
}

pub fn build_vertex_cactus(g: &Graph, d: &CycleDecomposition) -> WeightedVertexCactus {
    let n = g.n();
    let mut copies = Vec::with_capacity(n);
    let mut origin = Vec::new();
    for v in 0..n {
        let count = d.cyc(v).max(1);
        copies.push((origin.len()..origin.len() + count).collect::<Vec<_>>());
        origin.extend(std::iter::repeat_n(v, count));
    }
    let copy_on = |v: usize, cycle: usize| -> usize {
        let slot = d.membership[v].iter().position(|&c| c == cycle).unwrap_or(0);
        copies[v][slot]
    };
    let mut adj = vec![Vec::new(); origin.len()];
    let mut link = |a: usize, b: usize, w: u32| {
        adj[a].push((b, w));
        adj[b].push((a, w));
    };
    for (u, v) in g.edges() {
        match d.cycle_of_edge(u, v) {
            Some(c) => link(copy_on(u, c), copy_on(v, c), 1),
            None => link(copies[u][0], copies[v][0], 1),
        }
    }
    for list in &copies {
        for &copy in &list[1..] {
            link(list[0], copy, 0);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut cycle_of = vec![None; origin.len()];
    let cycles: Vec<Vec<usize>> = d
        .cycles
        .iter()
        .enumerate()
        .map(|(c, cycle)| {
            cycle
                .iter()
                .map(|&v| {
                    let t = copy_on(v, c);
                    cycle_of[t] = Some(c);
                    t
                })
                .collect()
        })
        .collect();
    WeightedVertexCactus { adj, origin, copies, cycles, cycle_of }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    SingleVertex(usize),
    Cycle(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockEdge {
    pub a: usize,
    pub b: usize,
    /// The T-edge joining the two blocks.
    pub via: (usize, usize),
    pub weight: u32,
}

/// Tree whose nodes are the blocks of a vertex cactus.
#[derive(Clone, Debug)]
pub struct BlockTree {
    pub nodes: Vec<Block>,
    pub edges: Vec<BlockEdge>,
    pub root: usize,
    /// Node containing each T-vertex.
    pub block_of: Vec<usize>,
}

impl BlockTree {
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([self.root]);
        seen[self.root] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.nodes.len()
    }
}

pub fn build_block_tree(t: &WeightedVertexCactus) -> BlockTree {
    let mut nodes = Vec::new();
    let mut block_of = vec![usize::MAX; t.n()];
    let mut cycle_node = vec![usize::MAX; t.cycles.len()];
    for v in 0..t.n() {
        match t.cycle_of[v] {
            Some(c) => {
                if cycle_node[c] == usize::MAX {
                    cycle_node[c] = nodes.len();
                    nodes.push(Block::Cycle(c));
                }
                block_of[v] = cycle_node[c];
            }
            None => {
                block_of[v] = nodes.len();
                nodes.push(Block::SingleVertex(v));
            }
        }
    }
    let mut edges = Vec::new();
    for (u, list) in t.adj.iter().enumerate() {
        for &(v, weight) in list {
            if u < v && !t.is_cycle_edge(u, v) {
                edges.push(BlockEdge { a: block_of[u], b: block_of[v], via: (u, v), weight });
            }
        }
    }
    let root = block_of.first().copied().unwrap_or(0);
    BlockTree { nodes, edges, root, block_of }
}

/// Random cactus on `n` vertices: grows a tree, hanging either a pendant
/// vertex or a fresh cycle of length 3..=6 off a random existing vertex, then
/// relabels vertices at random.
pub fn random_cactus(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "random_cactus needs n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let u = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.5) {
            let len = rng.gen_range(3..=(room + 1).min(6));
            let mut prev = u;
            for _ in 1..len {
                edges.push((prev, count));
                prev = count;
                count += 1;
            }
            edges.push((prev, u));
        } else {
            edges.push((u, count));
            count += 1;
        }
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let edges: Vec<_> = edges.iter().map(|&(a, b)| (labels[a], labels[b])).collect();
    Graph::from_edges(n, &edges).expect("generator emits simple graphs")
}

/// Named graph families used by the examples and tests.
pub mod families {
    use super::Graph;

    /// `t` four-cycles in a row, consecutive cycles sharing one vertex; the
    /// shared vertices sit opposite each other on every cycle. `n = 3t + 1`.
    pub fn chain_of_four_cycles(t: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..t {
            let (a, b, c, next) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
            edges.extend([(a, b), (b, next), (next, c), (c, a)]);
        }
        Graph::from_edges(3 * t + 1, &edges).expect("chain")
    }

    /// Hub 0 joined to `leaves` further vertices.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star")
    }

    pub fn line(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("line")
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            edges.extend((u + 1..n).map(|v| (u, v)));
        }
        Graph::from_edges(n, &edges).expect("complete")
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::from_edges(2, &[(0, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::InvalidGraph(_))));
        assert!(Graph::from_json(r#"{"n":2,"edges":[[0,1]],"extra":1}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = chain_of_four_cycles(2);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn triangle_has_one_cycle() {
        let d = validate_cactus(&cycle(3)).unwrap();
        assert_eq!(d.cycles, vec![vec![0, 1, 2]]);
        assert!(d.membership.iter().all(|m| m == &[0]));
    }

    #[test]
    fn chain_of_three_has_three_cycles() {
        let d = validate_cactus(&chain_of_four_cycles(3)).unwrap();
        assert_eq!(d.cycles.len(), 3);
        assert_eq!(d.cyc(3), 2);
        assert_eq!(d.cyc(6), 2);
    }

    #[test]
    fn k4_is_not_a_cactus() {
        assert!(matches!(validate_cactus(&complete(4)), Err(Error::NotACactus { .. })));
    }

    #[test]
    fn disconnected_is_reported() {
        let g = graph(3, &[(0, 1)]);
        assert!(matches!(validate_cactus(&g), Err(Error::NotConnected { unreached: 2 })));
    }

    #[test]
    fn prune_examples() {
        let p = prune_leaves(&line(3));
        assert_eq!(p.core_vertices, vec![1]);
        assert_eq!(p.pruned, BTreeSet::from([0, 2]));

        let p = prune_leaves(&cycle(3));
        assert_eq!(p.core_vertices, vec![0, 1, 2]);
        assert!(p.pruned.is_empty());

        let p = prune_leaves(&star(4));
        assert_eq!(p.core_vertices, vec![0]);
        assert_eq!(p.pruned.len(), 4);

        let p = prune_leaves(&line(2));
        assert_eq!(p.core_vertices, vec![0]);
    }

    #[test]
    fn vertex_cactus_identity_case() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let d = validate_cactus(&g).unwrap();
        let t = build_vertex_cactus(&g, &d);
        assert_eq!(t.n(), 5);
        assert!(t.adj.iter().flatten().all(|&(_, w)| w == 1));
    }

    #[test]
    fn bowtie_splits_shared_vertex() {
        let g = graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let d = validate_cactus(&g).unwrap();
        let t = build_vertex_cactus(&g, &d);
        assert_eq!(t.n(), 6);
        assert_eq!(t.copies[0].len(), 2);
        let (hub, copy) = (t.copies[0][0], t.copies[0][1]);
        assert_eq!(t.weight(hub, copy), Some(0));
        assert_ne!(t.cycle_of[hub], t.cycle_of[copy]);
        assert_eq!(t.contract().unwrap(), g);
    }

    #[test]
    fn figure_eight_of_three_cycles() {
        let g = graph(
            7,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 0)],
        );
        let d = validate_cactus(&g).unwrap();
        let t = build_vertex_cactus(&g, &d);
        assert_eq!(t.copies[0].len(), 3);
        let zero = t.adj.iter().flatten().filter(|&&(_, w)| w == 0).count() / 2;
        assert_eq!(zero, 2);
        assert_eq!(t.n(), 9);
    }

    #[test]
    fn block_tree_shapes() {
        let single = cycle(5);
        let t = build_vertex_cactus(&single, &validate_cactus(&single).unwrap());
        let a = build_block_tree(&t);
        assert_eq!(a.nodes, vec![Block::Cycle(0)]);
        assert!(a.edges.is_empty());

        let path = line(3);
        let t = build_vertex_cactus(&path, &validate_cactus(&path).unwrap());
        let a = build_block_tree(&t);
        assert_eq!(a.nodes.len(), 3);
        assert!(a.nodes.iter().all(|b| matches!(b, Block::SingleVertex(_))));
        assert!(a.is_tree());
    }

    #[test]
    fn chain_block_tree_counts_blocks() {
        let g = chain_of_four_cycles(3);
        let t = build_vertex_cactus(&g, &validate_cactus(&g).unwrap());
        let a = build_block_tree(&t);
        // three cycles joined through the two split vertices
        assert_eq!(a.nodes.len(), 3);
        assert_eq!(a.edges.len(), 2);
        assert!(a.edges.iter().all(|e| e.weight == 0));
        assert!(a.is_tree());
    }

    #[test]
    fn random_cactus_is_deterministic_and_valid() {
        for seed in 0..50 {
            let g = random_cactus(12, seed);
            assert_eq!(g, random_cactus(12, seed));
            assert_eq!(g.n(), 12);
            validate_cactus(&g).unwrap();
        }
    }
}
