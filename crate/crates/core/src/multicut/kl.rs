//! Kernighan–Lin style local search over single-node moves.
//!
//! A pass repeatedly applies the best available move of an unlocked node
//! (into another cluster or out into a new singleton), even when that move
//! is uphill, and locks the node. At the end of the pass the move sequence is
//! rolled back to its best prefix. Passes stop once a pass finds no prefix
//! with strictly negative total delta.
//!
//! Moving `v` from cluster `a` to cluster `b` changes the objective by
//! `conn(v, a) - conn(v, b)`, where `conn(v, c)` sums the costs from `v` to the
//! members of `c` (excluding `v`).
//!
//! Each pass is followed by the same move-sequence search restricted to two
//! clusters at a time (or one cluster and a new, empty one), and then by
//! greedy merging of cluster pairs joined by a positive total cost. Both
//! escape states where the global best single move leads nowhere.

use super::graph::{objective, CostGraph};
use crate::clustering::Clustering;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Target {
    Cluster(usize),
    Singleton,
}

struct State<'g> {
    g: &'g CostGraph,
    label: Vec<usize>,
    size: Vec<usize>,
    /// Column-major: `conn[c][v]`.
    conn: Vec<Vec<f64>>,
}

impl<'g> State<'g> {
    fn new(g: &'g CostGraph, c: &Clustering) -> Self {
        let n = g.n();
        let k = c.cluster_count();
        let label = c.assignment().to_vec();
        let mut conn = vec![vec![0.0; n]; k];
        for (i, j, w) in g.edges() {
            conn[label[j]][i] += w;
            conn[label[i]][j] += w;
        }
        Self {
            g,
            size: c.sizes(),
            label,
            conn,
        }
    }

    fn best_move(&self, v: usize) -> Option<(f64, Target)> {
        let own = self.label[v];
        let stay = self.conn[own][v];
        let mut best: Option<(f64, Target)> = None;
        for (c, col) in self.conn.iter().enumerate() {
            if c == own || self.size[c] == 0 {
                continue;
            }
            let delta = stay - col[v];
            if best.is_none_or(|(d, _)| delta < d) {
                best = Some((delta, Target::Cluster(c)));
            }
        }
        if self.size[own] > 1 && best.is_none_or(|(d, _)| stay < d) {
            best = Some((stay, Target::Singleton));
        }
        best
    }

    /// Moves `v` and returns `(from, to)`.
    fn apply(&mut self, v: usize, target: Target) -> (usize, usize) {
        let n = self.g.n();
        let from = self.label[v];
        let to = match target {
            Target::Cluster(c) => c,
            Target::Singleton => {
                self.conn.push(vec![0.0; n]);
                self.size.push(0);
                self.conn.len() - 1
            }
        };
        self.relabel(v, from, to);
        (from, to)
    }

    fn relabel(&mut self, v: usize, from: usize, to: usize) {
        for u in 0..self.g.n() {
            if u != v {
                let w = self.g.weight(u, v);
                self.conn[from][u] -= w;
                self.conn[to][u] += w;
            }
        }
        self.label[v] = to;
        self.size[from] -= 1;
        self.size[to] += 1;
    }
}

/// Improves `c` by local moves; the result's objective is never above the
/// input's. At most `max_passes` passes are run.
pub fn refine_kl(g: &CostGraph, c: &Clustering, max_passes: usize) -> Clustering {
    let n = g.n();
    assert_eq!(c.len(), n, "clustering size must match the graph");
    let mut current = c.canonical();

    for _ in 0..max_passes {
        let mut state = State::new(g, &current);
        let mut best_move: Vec<Option<(f64, Target)>> = (0..n).map(|v| state.best_move(v)).collect();
        let mut locked = vec![false; n];
        let mut moves: Vec<(usize, usize, usize)> = Vec::new();
        let mut total = 0.0;
        let mut best_total = 0.0f64;
        let mut best_len = 0;

        for _ in 0..n {
            let mut pick: Option<(usize, f64, Target)> = None;
            for v in 0..n {
                if locked[v] {
                    continue;
                }
                if let Some((d, t)) = best_move[v] {
                    if pick.is_none_or(|(_, pd, _)| d < pd) {
                        pick = Some((v, d, t));
                    }
                }
            }
            let Some((v, delta, target)) = pick else { break };
            let (from, to) = state.apply(v, target);
            locked[v] = true;
            moves.push((v, from, to));
            total += delta;
            if total < best_total - 1e-9 * (1.0 + best_total.abs()) {
                best_total = total;
                best_len = moves.len();
            }

            for u in 0..n {
                if locked[u] {
                    continue;
                }
                let own = state.label[u];
                let stale = own == from
                    || own == to
                    || matches!(best_move[u], Some((_, Target::Cluster(c))) if c == from || c == to);
                if stale {
                    best_move[u] = state.best_move(u);
                    continue;
                }
                // Only the columns of `from` and `to` changed for u.
                let stay = state.conn[own][u];
                for c in [from, to] {
                    if state.size[c] == 0 {
                        continue;
                    }
                    let d = stay - state.conn[c][u];
                    if best_move[u].is_none_or(|(bd, _)| d < bd) {
                        best_move[u] = Some((d, Target::Cluster(c)));
                    }
                }
            }
        }

        for &(v, from, to) in moves[best_len..].iter().rev() {
            state.relabel(v, to, from);
        }
        let paired = refine_pairs(g, &mut state.label);
        let (joined, merged) = join_clusters(g, &Clustering::from_labels(&state.label));
        current = joined;
        if best_len == 0 && !paired && !merged {
            break;
        }
    }

    // Guard against accumulated rounding in the incremental deltas.
    let before = objective(g, &c.canonical()).expect("sizes checked");
    let after = objective(g, &current).expect("sizes checked");
    if after <= before {
        current
    } else {
        c.canonical()
    }
}

/// One move-sequence search between two node sets, which exchange members
/// in place. Returns the gain of the applied best prefix (<= 0).
fn improve_pair(g: &CostGraph, a: &mut Vec<usize>, b: &mut Vec<usize>) -> f64 {
    let nodes: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    let m = nodes.len();
    // side[i]: node i is in `a`; delta[i]: objective change if it switches.
    let mut side: Vec<bool> = (0..m).map(|i| i < a.len()).collect();
    let mut delta = vec![0.0; m];
    for i in 0..m {
        for j in i + 1..m {
            let w = g.weight(nodes[i], nodes[j]);
            let s = if side[i] == side[j] { w } else { -w };
            delta[i] += s;
            delta[j] += s;
        }
    }
    let mut locked = vec![false; m];
    let mut order = Vec::with_capacity(m);
    let (mut total, mut best_total, mut best_len) = (0.0, 0.0f64, 0);
    for _ in 0..m {
        let Some(i) = (0..m).filter(|&i| !locked[i]).min_by(|&x, &y| delta[x].total_cmp(&delta[y])) else {
            break;
        };
        total += delta[i];
        locked[i] = true;
        order.push(i);
        let moved_from = side[i];
        side[i] = !side[i];
        delta[i] = -delta[i];
        for j in 0..m {
            if j != i {
                let w = g.weight(nodes[i], nodes[j]);
                delta[j] += if side[j] == moved_from { -2.0 * w } else { 2.0 * w };
            }
        }
        if total < best_total - 1e-9 * (1.0 + best_total.abs()) {
            best_total = total;
            best_len = order.len();
        }
    }
    if best_len > 0 {
        let mut in_a: Vec<bool> = (0..m).map(|i| i < a.len()).collect();
        for &i in &order[..best_len] {
            in_a[i] = !in_a[i];
        }
        a.clear();
        b.clear();
        for (i, &v) in nodes.iter().enumerate() {
            if in_a[i] {
                a.push(v);
            } else {
                b.push(v);
            }
        }
    }
    best_total
}

/// Runs [`improve_pair`] over every cluster pair that shares a positive edge
/// and over every cluster paired with a new, empty one. Returns whether
/// anything improved.
fn refine_pairs(g: &CostGraph, label: &mut [usize]) -> bool {
    let k = label.iter().max().map_or(0, |&m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &l) in label.iter().enumerate() {
        members[l].push(v);
    }
    let mut improved = false;
    let mut a = 0;
    while a < members.len() {
        for b in a + 1..members.len() {
            let attractive = members[a]
                .iter()
                .any(|&u| members[b].iter().any(|&v| g.weight(u, v) > 0.0));
            if attractive {
                let (head, tail) = members.split_at_mut(b);
                if improve_pair(g, &mut head[a], &mut tail[0]) < 0.0 {
                    improved = true;
                }
            }
        }
        if members[a].len() > 1 {
            let mut fresh = Vec::new();
            if improve_pair(g, &mut members[a], &mut fresh) < 0.0 {
                improved = true;
                members.push(fresh);
            }
        }
        a += 1;
    }
    for (c, group) in members.iter().enumerate() {
        for &v in group {
            label[v] = c;
        }
    }
    improved
}

/// Greedily merges the cluster pair with the largest positive inter-cluster
/// cost until none is left. Returns whether anything was merged.
fn join_clusters(g: &CostGraph, c: &Clustering) -> (Clustering, bool) {
    let k = c.cluster_count();
    let label = c.assignment();
    let mut between = vec![vec![0.0; k]; k];
    for (i, j, w) in g.edges() {
        let (a, b) = (label[i], label[j]);
        if a != b {
            between[a][b] += w;
            between[b][a] += w;
        }
    }
    let mut parent: Vec<usize> = (0..k).collect();
    let mut alive = vec![true; k];
    let mut merged = false;
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in (0..k).filter(|&a| alive[a]) {
            for b in (a + 1..k).filter(|&b| alive[b]) {
                let w = between[a][b];
                if w > 1e-12 && best.is_none_or(|(bw, _, _)| w > bw) {
                    best = Some((w, a, b));
                }
            }
        }
        let Some((_, a, b)) = best else { break };
        alive[b] = false;
        parent[b] = a;
        for x in 0..k {
            let w = between[b][x];
            between[a][x] += w;
            between[x][a] += w;
        }
        between[a][a] = 0.0;
        merged = true;
    }
    if !merged {
        return (c.clone(), false);
    }
    let root = |mut x: usize| {
        while parent[x] != x {
            x = parent[x];
        }
        x
    };
    let labels: Vec<usize> = label.iter().map(|&l| root(l)).collect();
    (Clustering::from_labels(&labels), true)
}

/// GAEC followed by KL refinement.
pub fn solve(g: &CostGraph, max_passes: usize) -> Clustering {
    refine_kl(g, &super::gaec::solve_gaec(g), max_passes)
}
