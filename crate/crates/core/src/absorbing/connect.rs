//! Connecting two ordered k-tuples by a k-path through an allowed pool.
//!
//! The search is an iterative-deepening DFS over internal vertices with an
//! on-path set, so the first path found is a shortest one. A backward BFS
//! over window states (the last `k` placed vertices) gives, for every
//! state, a lower bound on the internal vertices still needed; it ignores
//! vertex repetition, so it never cuts off a real path.

use std::collections::VecDeque;

use serde::Serialize;

use super::AbsorbError;
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::solver::is_k_path;

/// Window-state tables above this many entries are skipped.
const MAX_STATES: usize = 1 << 20;

/// Default node budget per connection attempt.
pub const DEFAULT_CONNECT_NODES: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "path", rename_all = "snake_case")]
pub enum Connection {
    /// The full k-path, starting with `X` and ending with `Y`.
    Found(Vec<usize>),
    /// No connecting k-path within the length cap exists.
    NotFound,
    /// The node budget ran out first; nothing is claimed.
    BudgetExceeded,
}

impl Connection {
    pub fn path(&self) -> Option<&[usize]> {
        match self {
            Connection::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// Shortest k-path `X · internal · Y` with at most `max_internal` internal
/// vertices, all outside `avoid`.
pub fn connect_ktuples(
    g: &Digraph,
    x: &[usize],
    y: &[usize],
    avoid: &VertexSet,
    k: usize,
    max_internal: usize,
    max_nodes: u64,
) -> Result<Connection, AbsorbError> {
    let n = g.n();
    if k == 0 || x.len() != k || y.len() != k {
        return Err(AbsorbError::PreconditionViolated(format!(
            "both tuples need exactly k = {k} vertices"
        )));
    }
    if x.iter().chain(y).any(|&v| v >= n) {
        return Err(AbsorbError::PreconditionViolated("tuple vertex out of range".into()));
    }
    let ends = VertexSet::from_vertices(n, x.iter().chain(y).copied());
    if ends.len() != 2 * k {
        return Err(AbsorbError::PreconditionViolated("tuples must be disjoint and repetition-free".into()));
    }
    if !is_k_path(g, x, k) || !is_k_path(g, y, k) {
        return Err(AbsorbError::PreconditionViolated("each tuple must itself be a k-path".into()));
    }
    if avoid.universe() != n || !avoid.is_disjoint(&ends) {
        return Err(AbsorbError::PreconditionViolated("avoided set meets the end tuples".into()));
    }
    let pool = ends.union(avoid).complement();
    let bound = LowerBound::compute(g, x, y, &pool, k);
    let start_bound = bound.get(x);
    if start_bound == u32::MAX {
        return Ok(Connection::NotFound);
    }
    let mut dfs = Dfs {
        g,
        y,
        k,
        bound: &bound,
        pool,
        seq: x.to_vec(),
        nodes: 0,
        max_nodes,
    };
    for depth in start_bound as usize..=max_internal {
        match dfs.search(depth) {
            Some(true) => {
                let mut path = std::mem::take(&mut dfs.seq);
                path.extend_from_slice(y);
                assert!(is_k_path(g, &path, k), "connector produced an invalid k-path");
                return Ok(Connection::Found(path));
            }
            Some(false) => {}
            None => return Ok(Connection::BudgetExceeded),
        }
    }
    Ok(Connection::NotFound)
}

/// Connects edges `ab` and `yz` by a 2-path `a b … y z` on at most
/// `max_len` vertices whose internal vertices avoid `avoid`.
#[allow(clippy::too_many_arguments)]
pub fn connect_2path(
    g: &Digraph,
    a: usize,
    b: usize,
    y: usize,
    z: usize,
    avoid: &VertexSet,
    max_len: usize,
    max_nodes: u64,
) -> Result<Connection, AbsorbError> {
    if max_len < 4 {
        return Err(AbsorbError::PreconditionViolated("max_len must be at least 4".into()));
    }
    let n = g.n();
    if [a, b, y, z].iter().any(|&v| v >= n) || !g.has_edge(a, b) || !g.has_edge(y, z) {
        return Err(AbsorbError::PreconditionViolated("ab and yz must be edges".into()));
    }
    connect_ktuples(g, &[a, b], &[y, z], avoid, 2, max_len - 4, max_nodes)
}

/// Fewest internal vertices needed from each window state, ignoring
/// repetition. States are k-tuples over the pool plus `X`.
struct LowerBound {
    n: usize,
    /// `None` when the table would be too large; every bound is then 0.
    dist: Option<Vec<u32>>,
}

impl LowerBound {
    fn index(&self, w: &[usize]) -> usize {
        w.iter().fold(0, |acc, &v| acc * self.n + v)
    }

    fn get(&self, w: &[usize]) -> u32 {
        match &self.dist {
            Some(d) => d[self.index(w)],
            None => 0,
        }
    }

    fn compute(g: &Digraph, x: &[usize], y: &[usize], pool: &VertexSet, k: usize) -> Self {
        let n = g.n();
        let size = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(n).filter(|&s| s <= MAX_STATES));
        let mut lb = LowerBound { n, dist: None };
        let Some(size) = size else {
            return lb;
        };
        let mut members = pool.clone();
        for &v in x {
            members.insert(v);
        }
        let verts = members.to_vec();
        let mut dist = vec![u32::MAX; size];
        let mut queue = VecDeque::new();
        // Final states: w[j] must point to Y[0..=j].
        let mut w = vec![0; k];
        enumerate_tuples(&verts, &mut w, 0, &mut |w| {
            if is_k_path(g, w, k) && (0..k).all(|j| y[..=j].iter().all(|&t| g.has_edge(w[j], t))) {
                let i = lb.index(w);
                dist[i] = 0;
                queue.push_back(i);
            }
        });
        let mut state = vec![0; k];
        while let Some(i) = queue.pop_front() {
            let d = dist[i];
            let mut rest = i;
            for slot in state.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            // Predecessor (u, s_0 … s_{k-2}) steps to s by appending s_{k-1};
            // u must point to every s_j and the new vertex must be a pool vertex.
            if !pool.contains(state[k - 1]) {
                continue;
            }
            let mut cand = members.clone();
            for &s in &state {
                cand.intersect_with(g.in_neighbors(s));
            }
            for u in cand.iter() {
                if state[..k - 1].contains(&u) {
                    continue;
                }
                let pi = state[..k - 1].iter().fold(u, |acc, &v| acc * n + v);
                if dist[pi] == u32::MAX {
                    dist[pi] = d + 1;
                    queue.push_back(pi);
                }
            }
        }
        lb.dist = Some(dist);
        lb
    }
}

fn enumerate_tuples(verts: &[usize], w: &mut [usize], at: usize, f: &mut impl FnMut(&[usize])) {
    if at == w.len() {
        f(w);
        return;
    }
    for &v in verts {
        if w[..at].contains(&v) {
            continue;
        }
        w[at] = v;
        enumerate_tuples(verts, w, at + 1, f);
    }
}

struct Dfs<'a> {
    g: &'a Digraph,
    y: &'a [usize],
    k: usize,
    bound: &'a LowerBound,
    /// Unused internal candidates.
    pool: VertexSet,
    seq: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl Dfs<'_> {
    /// Searches for exactly `left` more internal vertices. `None` on budget.
    fn search(&mut self, left: usize) -> Option<bool> {
        let k = self.k;
        let window_start = self.seq.len() - k;
        let window = &self.seq[window_start..];
        if (self.bound.get(window) as usize) > left {
            return Some(false);
        }
        if left == 0 {
            let ok = (0..k).all(|j| self.y[..=j].iter().all(|&t| self.g.has_edge(window[j], t)));
            return Some(ok);
        }
        let mut cand = self.pool.clone();
        for &v in window {
            cand.intersect_with(self.g.out_neighbors(v));
        }
        for u in cand.iter() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return None;
            }
            self.seq.push(u);
            self.pool.remove(u);
            let r = self.search(left - 1);
            if r != Some(false) {
                if r.is_none() {
                    self.pool.insert(u);
                    self.seq.pop();
                }
                return r;
            }
            self.pool.insert(u);
            self.seq.pop();
        }
        Some(false)
    }
}
