//! Shortest non-simple 1-covering path on cacti.
//!
//! A walk 1-covers a graph when every vertex is on the walk or adjacent to
//! it. The exact solver works on the weighted vertex cactus `T` and its block
//! tree: rooted at the start vertex of the walk, each T-vertex gets two
//! values, `d_l` (cheapest covering walk of its subtree that returns to it)
//! and `d_p` (cheapest that may end anywhere below it). Bridges combine with
//! the usual best-exceptional-child rule; a cycle block is solved by choosing
//! how its edges are used: the whole perimeter once, a doubled arc around the
//! entry vertex, or (when the walk ends inside) a single arc to the exit
//! vertex plus doubled spurs. Vertices without descendants may be left
//! unvisited when a visited neighbour dominates them.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{
    build_block_tree, build_vertex_cactus, leaves, validate_cactus, Block, BlockTree, Graph,
    WeightedVertexCactus,
};

pub type Cost = u64;

/// Vertex sequence of a walk in G; repeats allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringPath {
    pub vertices: Vec<usize>,
}

impl CoveringPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        CoveringPath { vertices }
    }

    /// Element count.
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Edge count, `k - 1`.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    /// Number of distinct vertices on the walk (`k'`).
    pub fn distinct(&self) -> usize {
        self.vertices.iter().collect::<BTreeSet<_>>().len()
    }

    /// The covered set `R_P`.
    pub fn covered(&self, g: &Graph) -> BTreeSet<usize> {
        let flags = g.covered_by(&self.vertices);
        (0..g.n()).filter(|&v| flags[v]).collect()
    }

    /// Covered vertices that are not on the walk (`B_P`).
    pub fn fringe(&self, g: &Graph) -> BTreeSet<usize> {
        let on_path: BTreeSet<usize> = self.vertices.iter().copied().collect();
        self.covered(g).into_iter().filter(|v| !on_path.contains(v)).collect()
    }

    /// Checks adjacency of consecutive vertices and full coverage of `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.vertices.is_empty() || !g.is_walk(&self.vertices) {
            return Err(Error::InvalidParameter("sequence is not a walk in the graph".into()));
        }
        match g.covered_by(&self.vertices).iter().position(|c| !c) {
            Some(vertex) => Err(Error::PathNotCovering { vertex }),
            None => Ok(()),
        }
    }

    pub fn is_one_covering(&self, g: &Graph) -> bool {
        self.verify(g).is_ok()
    }
}

/// Contribution of one child block to its parent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChildCost {
    /// Cheapest handling that returns to the parent.
    pub closed: Cost,
    /// Cheapest handling that ends inside the child block.
    pub open: Cost,
}

impl ChildCost {
    /// Child hanging off a bridge of weight `weight`. A `skippable` child has
    /// no descendants and is dominated by the parent, so it costs nothing to
    /// leave it unvisited.
    pub fn bridge(d_l: Cost, d_p: Cost, weight: u32, skippable: bool) -> Self {
        let w = Cost::from(weight);
        ChildCost { closed: if skippable { 0 } else { d_l + 2 * w }, open: d_p + w }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexDp {
    pub d_l: Cost,
    pub d_p: Cost,
    /// Child the walk ends in, `None` when it ends at the vertex itself.
    pub open_child: Option<usize>,
}

/// Combines child blocks at a vertex: `d_l` sums the round trips, `d_p`
/// replaces the round trip with the largest saving by a one-way visit.
pub fn dp_single_vertex(children: &[ChildCost]) -> VertexDp {
    let d_l: Cost = children.iter().map(|c| c.closed).sum();
    let mut best: Option<(usize, Cost)> = None;
    for (i, c) in children.iter().enumerate() {
        if c.open < c.closed {
            let saving = c.closed - c.open;
            if best.is_none_or(|(_, s)| saving > s) {
                best = Some((i, saving));
            }
        }
    }
    match best {
        Some((i, saving)) => VertexDp { d_l, d_p: d_l - saving, open_child: Some(i) },
        None => VertexDp { d_l, d_p: d_l, open_child: None },
    }
}

/// Cheapest tour visiting every vertex of a cycle: the perimeter, or every
/// edge but the heaviest walked twice.
pub fn cycle_service_cost(weights: &[u32]) -> Cost {
    let total: Cost = weights.iter().map(|&w| Cost::from(w)).sum();
    let max = weights.iter().copied().max().map_or(0, Cost::from);
    total.min(2 * total - 2 * max)
}

/// A non-top vertex of a cycle block with its own subtree values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleMember {
    pub closed: Cost,
    pub open: Cost,
    pub skippable: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedCycle {
    /// Walk the perimeter once.
    Loop,
    /// Double the first `forward` edges one way and `backward` edges the other.
    Arc { forward: usize, backward: usize },
}

/// Open traversal in an oriented frame (`reversed` flips member order): walk
/// the arc to member `end` once, double `prefix` edges leaving the top the
/// other way and `suffix` edges past `end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpenCycle {
    pub reversed: bool,
    pub end: usize,
    pub prefix: usize,
    pub suffix: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleDp {
    pub d_l: Cost,
    pub d_p: Cost,
    pub closed: ClosedCycle,
    pub open: OpenCycle,
}

const UNSET: Cost = Cost::MAX;

/// Solves one cycle block. `members` are `c_1..c_{L-1}` in cycle order from
/// the top `c_0`; `weights[i]` joins `c_i` and `c_{i+1}` (indices mod `L`).
pub fn dp_cycle(members: &[CycleMember], weights: &[u32]) -> CycleDp {
    let len = weights.len();
    assert_eq!(members.len() + 1, len, "cycle needs L-1 members and L edges");
    let (closed_cost, closed) = best_closed(members, weights);
    let (mut open_cost, mut open) = best_open(members, weights, false);
    let rev_members: Vec<CycleMember> = members.iter().rev().copied().collect();
    let rev_weights: Vec<u32> = weights.iter().rev().copied().collect();
    let (rev_cost, rev_open) = best_open(&rev_members, &rev_weights, true);
    if rev_cost < open_cost {
        open_cost = rev_cost;
        open = rev_open;
    }
    CycleDp { d_l: closed_cost, d_p: open_cost, closed, open }
}

struct Sums {
    /// `fwd_w[b]`: weight of the first `b` edges from the top.
    fwd_w: Vec<Cost>,
    /// `back_w[a]`: weight of the last `a` edges, walking back from the top.
    back_w: Vec<Cost>,
    /// `closed[i]`: sum of member closed values `c_1..c_i`.
    closed: Vec<Cost>,
}

impl Sums {
    fn new(members: &[CycleMember], weights: &[u32]) -> Self {
        let mut fwd_w = vec![0];
        for &w in weights {
            fwd_w.push(fwd_w.last().unwrap() + Cost::from(w));
        }
        let mut back_w = vec![0];
        for &w in weights.iter().rev() {
            back_w.push(back_w.last().unwrap() + Cost::from(w));
        }
        let mut closed = vec![0];
        for m in members {
            closed.push(closed.last().unwrap() + m.closed);
        }
        Sums { fwd_w, back_w, closed }
    }

    /// Closed values of members `c_lo..=c_hi` (1-based, empty when lo > hi).
    fn closed_range(&self, lo: usize, hi: usize) -> Cost {
        if lo > hi {
            0
        } else {
            self.closed[hi] - self.closed[lo - 1]
        }
    }
}

/// Members `c_lo..=c_hi` can all stay unvisited.
fn skippable_range(members: &[CycleMember], lo: usize, hi: usize) -> bool {
    (lo..=hi).all(|i| members[i - 1].skippable)
}

fn best_closed(members: &[CycleMember], weights: &[u32]) -> (Cost, ClosedCycle) {
    let len = weights.len();
    let sums = Sums::new(members, weights);
    let mut best = (sums.fwd_w[len] + sums.closed[len - 1], ClosedCycle::Loop);
    for forward in 0..len {
        for gap in 0..=2usize {
            let Some(backward) = (len - 1).checked_sub(forward + gap) else { continue };
            if !skippable_range(members, forward + 1, forward + gap) {
                continue;
            }
            let cost = 2 * (sums.fwd_w[forward] + sums.back_w[backward])
                + sums.closed_range(1, forward)
                + sums.closed_range(len - backward, len - 1);
            if cost < best.0 {
                best = (cost, ClosedCycle::Arc { forward, backward });
            }
        }
    }
    best
}

fn best_open(members: &[CycleMember], weights: &[u32], reversed: bool) -> (Cost, OpenCycle) {
    let len = weights.len();
    let sums = Sums::new(members, weights);
    let mut best = (UNSET, OpenCycle { reversed, end: 1, prefix: 0, suffix: 0 });
    for end in 1..len {
        let arc = sums.fwd_w[end] + sums.closed_range(1, end - 1) + members[end - 1].open;
        let between = len - 1 - end;
        for prefix in 0..=between {
            for gap in 0..=2usize {
                let Some(suffix) = between.checked_sub(prefix + gap) else { continue };
                if !skippable_range(members, end + suffix + 1, end + suffix + gap) {
                    continue;
                }
                let spur_w = (sums.fwd_w[end + suffix] - sums.fwd_w[end]) + sums.back_w[prefix];
                let cost = arc
                    + 2 * spur_w
                    + sums.closed_range(end + 1, end + suffix)
                    + sums.closed_range(len - prefix, len - 1);
                if cost < best.0 {
                    best = (cost, OpenCycle { reversed, end, prefix, suffix });
                }
            }
        }
    }
    best
}

/// How one child block of a rooted T-vertex is handled.
#[derive(Clone, Debug)]
pub enum KidChoice {
    Bridge { to: usize, weight: u32, enter: bool },
    Cycle { members: Vec<usize>, weights: Vec<u32>, dp: CycleDp },
}

#[derive(Clone, Debug, Default)]
pub struct NodeChoice {
    pub kids: Vec<KidChoice>,
    pub open_child: Option<usize>,
}

/// DP values and backtracking records for one root.
#[derive(Clone, Debug)]
pub struct DpTables {
    pub root: usize,
    pub d_l: Vec<Cost>,
    pub d_p: Vec<Cost>,
    pub choice: Vec<NodeChoice>,
}

enum Kid {
    Bridge { to: usize, weight: u32 },
    Cycle { members: Vec<usize>, weights: Vec<u32> },
}

/// Exact 1-covering-path solver for one cactus.
#[derive(Clone, Debug)]
pub struct CactusSolver {
    g: Graph,
    t: WeightedVertexCactus,
    a: BlockTree,
    /// Bridges of A incident to each T-vertex, as `(other end, weight)`.
    bridges: Vec<Vec<(usize, u32)>>,
}

/// Best root found by [`solve_root_choices`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootChoice {
    /// T-vertex the walk starts from.
    pub root: usize,
    pub weight: Cost,
}

impl CactusSolver {
    pub fn new(g: &Graph) -> Result<Self> {
        let d = validate_cactus(g)?;
        let t = build_vertex_cactus(g, &d);
        let a = build_block_tree(&t);
        let mut bridges = vec![Vec::new(); t.n()];
        for e in &a.edges {
            let (u, v) = e.via;
            bridges[u].push((v, e.weight));
            bridges[v].push((u, e.weight));
        }
        for list in &mut bridges {
            list.sort_unstable();
        }
        Ok(CactusSolver { g: g.clone(), t, a, bridges })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn vertex_cactus(&self) -> &WeightedVertexCactus {
        &self.t
    }

    pub fn block_tree(&self) -> &BlockTree {
        &self.a
    }

    fn cycle_through(&self, x: usize) -> Option<&[usize]> {
        match self.a.nodes[self.a.block_of[x]] {
            Block::Cycle(c) => Some(&self.t.cycles[c]),
            Block::SingleVertex(_) => None,
        }
    }

    /// Orients T away from `root`; returns per-vertex child blocks and a BFS order.
    fn root_at(&self, root: usize) -> (Vec<Vec<Kid>>, Vec<usize>) {
        let n = self.t.n();
        let mut kids: Vec<Vec<Kid>> = (0..n).map(|_| Vec::new()).collect();
        let mut order = Vec::with_capacity(n);
        // (vertex, bridge parent, entered through its own cycle)
        let mut queue = VecDeque::from([(root, usize::MAX, false)]);
        while let Some((x, parent, via_cycle)) = queue.pop_front() {
            order.push(x);
            for &(y, weight) in &self.bridges[x] {
                if y != parent {
                    kids[x].push(Kid::Bridge { to: y, weight });
                    queue.push_back((y, x, false));
                }
            }
            if via_cycle {
                continue;
            }
            if let Some(cycle) = self.cycle_through(x) {
                let at = cycle.iter().position(|&v| v == x).expect("vertex on its cycle");
                let len = cycle.len();
                let members: Vec<usize> = (1..len).map(|i| cycle[(at + i) % len]).collect();
                let weights: Vec<u32> = (0..len)
                    .map(|i| {
                        let (u, v) = (cycle[(at + i) % len], cycle[(at + i + 1) % len]);
                        self.t.weight(u, v).expect("cycle edge present")
                    })
                    .collect();
                for &m in &members {
                    queue.push_back((m, usize::MAX, true));
                }
                kids[x].push(Kid::Cycle { members, weights });
            }
        }
        (kids, order)
    }

    /// Runs the DP with the walk starting at T-vertex `root`.
    pub fn evaluate(&self, root: usize) -> DpTables {
        let n = self.t.n();
        let (kids, order) = self.root_at(root);
        let mut d_l = vec![0; n];
        let mut d_p = vec![0; n];
        let mut choice: Vec<NodeChoice> = vec![NodeChoice::default(); n];
        for &x in order.iter().rev() {
            let mut costs = Vec::with_capacity(kids[x].len());
            let mut records = Vec::with_capacity(kids[x].len());
            for kid in &kids[x] {
                match kid {
                    Kid::Bridge { to, weight } => {
                        let skippable = kids[*to].is_empty();
                        costs.push(ChildCost::bridge(d_l[*to], d_p[*to], *weight, skippable));
                        records.push(KidChoice::Bridge {
                            to: *to,
                            weight: *weight,
                            enter: !skippable,
                        });
                    }
                    Kid::Cycle { members, weights } => {
                        let values: Vec<CycleMember> = members
                            .iter()
                            .map(|&m| CycleMember {
                                closed: d_l[m],
                                open: d_p[m],
                                skippable: kids[m].is_empty(),
                            })
                            .collect();
                        let dp = dp_cycle(&values, weights);
                        costs.push(ChildCost { closed: dp.d_l, open: dp.d_p });
                        records.push(KidChoice::Cycle {
                            members: members.clone(),
                            weights: weights.clone(),
                            dp,
                        });
                    }
                }
            }
            let vdp = dp_single_vertex(&costs);
            d_l[x] = vdp.d_l;
            d_p[x] = vdp.d_p;
            choice[x] = NodeChoice { kids: records, open_child: vdp.open_child };
        }
        DpTables { root, d_l, d_p, choice }
    }

    /// Root candidates: one T-vertex (the hub) per G-vertex, leaves excluded
    /// on graphs with three or more vertices.
    pub fn root_candidates(&self) -> Vec<usize> {
        let leaf: BTreeSet<usize> =
            if self.g.n() >= 3 { leaves(&self.g).into_iter().collect() } else { BTreeSet::new() };
        (0..self.g.n()).filter(|v| !leaf.contains(v)).map(|v| self.t.copies[v][0]).collect()
    }

    /// Minimum-weight 1-covering walk of T, as a G-walk.
    pub fn solve(&self) -> Result<CoveringPath> {
        let best = solve_root_choices(self, self.root_candidates())
            .ok_or_else(|| Error::InvalidGraph("no root candidates".into()))?;
        let tables = self.evaluate(best.root);
        let walk = tables.walk();
        let mut vertices: Vec<usize> = walk.iter().map(|&x| self.t.origin[x]).collect();
        vertices.dedup();
        let path = CoveringPath::new(vertices);
        debug_assert_eq!(path.length() as Cost, best.weight);
        path.verify(&self.g)?;
        Ok(path)
    }
}

impl DpTables {
    /// Backtracks the optimal walk (T-vertices) starting at the root.
    pub fn walk(&self) -> Vec<usize> {
        let mut out = vec![self.root];
        self.emit(self.root, true, &mut out);
        out
    }

    fn emit(&self, x: usize, open: bool, out: &mut Vec<usize>) {
        let node = &self.choice[x];
        let ending = if open { node.open_child } else { None };
        for (i, kid) in node.kids.iter().enumerate() {
            if Some(i) != ending {
                self.emit_closed_kid(x, kid, out);
            }
        }
        if let Some(i) = ending {
            self.emit_open_kid(x, &node.kids[i], out);
        }
    }

    /// Goes out along `seq` (visiting each subtree on arrival) and back to `home`.
    fn spur(&self, home: usize, seq: &[usize], out: &mut Vec<usize>) {
        for &v in seq {
            out.push(v);
            self.emit(v, false, out);
        }
        if !seq.is_empty() {
            out.extend(seq[..seq.len() - 1].iter().rev());
            out.push(home);
        }
    }

    fn emit_closed_kid(&self, x: usize, kid: &KidChoice, out: &mut Vec<usize>) {
        match kid {
            KidChoice::Bridge { to, enter, .. } => {
                if *enter {
                    out.push(*to);
                    self.emit(*to, false, out);
                    out.push(x);
                }
            }
            KidChoice::Cycle { members, dp, .. } => match dp.closed {
                ClosedCycle::Loop => {
                    for &m in members {
                        out.push(m);
                        self.emit(m, false, out);
                    }
                    out.push(x);
                }
                ClosedCycle::Arc { forward, backward } => {
                    self.spur(x, &members[..forward], out);
                    let back: Vec<usize> = members.iter().rev().take(backward).copied().collect();
                    self.spur(x, &back, out);
                }
            },
        }
    }

    fn emit_open_kid(&self, x: usize, kid: &KidChoice, out: &mut Vec<usize>) {
        match kid {
            KidChoice::Bridge { to, .. } => {
                out.push(*to);
                self.emit(*to, true, out);
            }
            KidChoice::Cycle { members, dp, .. } => {
                let oriented: Vec<usize> = if dp.open.reversed {
                    members.iter().rev().copied().collect()
                } else {
                    members.clone()
                };
                let OpenCycle { end, prefix, suffix, .. } = dp.open;
                let back: Vec<usize> = oriented.iter().rev().take(prefix).copied().collect();
                self.spur(x, &back, out);
                for &m in &oriented[..end - 1] {
                    out.push(m);
                    self.emit(m, false, out);
                }
                let exit = oriented[end - 1];
                out.push(exit);
                self.spur(exit, &oriented[end..end + suffix], out);
                self.emit(exit, true, out);
            }
        }
    }
}

/// Evaluates every candidate root and keeps the cheapest (first on ties).
pub fn solve_root_choices(
    solver: &CactusSolver,
    candidates: impl IntoIterator<Item = usize>,
) -> Option<RootChoice> {
    let mut best: Option<RootChoice> = None;
    for root in candidates {
        let weight = solver.evaluate(root).d_p[root];
        if best.as_ref().is_none_or(|b| weight < b.weight) {
            best = Some(RootChoice { root, weight });
        }
    }
    best
}

/// Shortest 1-covering path of a connected cactus.
pub fn solve_cactus(g: &Graph) -> Result<CoveringPath> {
    let solver = CactusSolver::new(g)?;
    if g.n() <= 2 {
        return Ok(CoveringPath::new(vec![0]));
    }
    solver.solve()
}

/// Cactus solver, or the exhaustive search for small graphs that are not cacti.
pub fn shortest_covering_path(g: &Graph) -> Result<CoveringPath> {
    match solve_cactus(g) {
        Err(Error::NotACactus { .. }) if g.n() <= ORACLE_LIMIT => brute_force_oracle(g),
        other => other,
    }
}

pub const ORACLE_LIMIT: usize = 16;

/// Breadth-first search over `(vertex, covered set)`; exact for any connected graph.
pub fn brute_force_oracle(g: &Graph) -> Result<CoveringPath> {
    let n = g.n();
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | (1 << u)))
        .collect();
    bfs_walk(g, |v| masks[v], |mask, v| mask | masks[v])
}

/// Shortest walk that visits every vertex (no domination), by the same search.
pub fn shortest_visiting_walk(g: &Graph) -> Result<CoveringPath> {
    bfs_walk(g, |v| 1u32 << v, |mask, v| mask | (1 << v))
}

fn bfs_walk(
    g: &Graph,
    start: impl Fn(usize) -> u32,
    step: impl Fn(u32, usize) -> u32,
) -> Result<CoveringPath> {
    let n = g.n();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { n, limit: ORACLE_LIMIT });
    }
    g.check_connected()?;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let states = n << n;
    let index = |v: usize, mask: u32| (mask as usize) * n + v;
    let mut pred = vec![u32::MAX; states];
    let mut queue = VecDeque::new();
    for v in 0..n {
        let s = index(v, start(v));
        if pred[s] == u32::MAX {
            pred[s] = s as u32;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let (v, mask) = (s % n, (s / n) as u32);
        if mask == full {
            let mut walk = vec![v];
            let mut cur = s;
            while pred[cur] as usize != cur {
                cur = pred[cur] as usize;
                walk.push(cur % n);
            }
            walk.reverse();
            return Ok(CoveringPath::new(walk));
        }
        for &u in g.neighbors(v) {
            let t = index(u, step(mask, u));
            if pred[t] == u32::MAX {
                pred[t] = s as u32;
                queue.push_back(t);
            }
        }
    }
    unreachable!("connected graphs always admit a covering walk")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::random_cactus;

    #[test]
    fn single_vertex_dp_examples() {
        assert_eq!(dp_single_vertex(&[]), VertexDp { d_l: 0, d_p: 0, open_child: None });
        let one = dp_single_vertex(&[ChildCost::bridge(4, 2, 1, false)]);
        assert_eq!((one.d_l, one.d_p, one.open_child), (6, 3, Some(0)));
        let kid = ChildCost::bridge(2, 2, 1, false);
        let two = dp_single_vertex(&[kid, kid]);
        assert_eq!((two.d_l, two.d_p, two.open_child), (8, 7, Some(0)));
    }

    #[test]
    fn cycle_service_cost_examples() {
        assert_eq!(cycle_service_cost(&[1, 1, 1]), 3);
        assert_eq!(cycle_service_cost(&[1, 1, 0]), 2);
        assert_eq!(cycle_service_cost(&[1, 1, 1, 1, 1]), 5);
    }

    #[test]
    fn cycle_dp_when_every_member_must_be_visited() {
        let member = CycleMember { closed: 0, open: 0, skippable: false };
        for len in 3..8 {
            let weights = vec![1; len];
            let dp = dp_cycle(&vec![member; len - 1], &weights);
            assert_eq!(dp.d_l, cycle_service_cost(&weights));
            assert_eq!(dp.d_p, len as Cost - 1);
        }
        let dp = dp_cycle(&[member, member], &[1, 1, 0]);
        assert_eq!(dp.d_l, 2);
    }

    #[test]
    fn dominated_members_may_stay_unvisited() {
        let leaf = CycleMember { closed: 0, open: 0, skippable: true };
        let dp = dp_cycle(&[leaf, leaf], &[1, 1, 1]);
        assert_eq!((dp.d_l, dp.d_p), (0, 1));
        let dp = dp_cycle(&[leaf; 4], &[1; 5]);
        assert_eq!(dp.d_l, 4);
        assert_eq!(dp.d_p, 2);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_oracle(&line(1)).unwrap().length(), 0);
        assert_eq!(brute_force_oracle(&star(4)).unwrap().vertices, vec![0]);
        assert_eq!(brute_force_oracle(&cycle(5)).unwrap().length(), 2);
        assert_eq!(brute_force_oracle(&cycle(4)).unwrap().length(), 1);
        assert!(matches!(brute_force_oracle(&line(17)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn solver_small_families() {
        assert_eq!(solve_cactus(&line(1)).unwrap().vertices, vec![0]);
        assert_eq!(solve_cactus(&line(2)).unwrap().vertices, vec![0]);
        assert_eq!(solve_cactus(&star(4)).unwrap().vertices, vec![0]);
        assert_eq!(solve_cactus(&cycle(4)).unwrap().length(), 1);
        assert_eq!(solve_cactus(&cycle(5)).unwrap().length(), 2);
        assert_eq!(solve_cactus(&line(5)).unwrap().length(), 2);
        assert!(matches!(solve_cactus(&complete(4)), Err(Error::NotACactus { .. })));
        assert_eq!(shortest_covering_path(&complete(5)).unwrap().vertices, vec![0]);
    }

    #[test]
    fn chain_of_cycles_path_length() {
        for t in 3..=6 {
            let g = chain_of_four_cycles(t);
            let p = solve_cactus(&g).unwrap();
            assert_eq!(p.length(), 2 * t - 2, "t = {t}");
            p.verify(&g).unwrap();
        }
        let p = solve_cactus(&chain_of_four_cycles(3)).unwrap();
        assert_eq!(p.fringe(&chain_of_four_cycles(3)).len(), 5);
    }

    #[test]
    fn solver_matches_oracle_on_random_cacti() {
        for seed in 0..150 {
            let n = 3 + (seed as usize % 10);
            let g = random_cactus(n, seed);
            let path = solve_cactus(&g).unwrap();
            path.verify(&g).unwrap();
            let oracle = brute_force_oracle(&g).unwrap();
            assert_eq!(path.length(), oracle.length(), "seed {seed}: {:?}", g.edges());
        }
    }

    #[test]
    fn d_p_never_exceeds_d_l() {
        for seed in 0..40 {
            let g = random_cactus(15, seed);
            let solver = CactusSolver::new(&g).unwrap();
            for root in solver.root_candidates() {
                let tables = solver.evaluate(root);
                assert!(tables.d_p.iter().zip(&tables.d_l).all(|(p, l)| p <= l));
            }
        }
    }
}
