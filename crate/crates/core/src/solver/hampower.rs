//! Backtracking search for the k-th power of a Hamilton cycle or path.
//!
//! The prefix is extended one position at a time. Candidates for the next
//! position are the common out-neighbours of the last `min(k, len)` placed
//! vertices; in cycle mode, positions within `k` of the end also intersect
//! the in-neighbourhoods of the first vertices so wrap-around edges are
//! checked as soon as they are determined. Two prunes run at every node:
//!
//! * every unused vertex still needs `k` possible predecessors (and, for
//!   cycles, `k` possible successors) among the vertices that could occupy
//!   those positions;
//! * on graphs with at most 64 vertices, states already proven dead are
//!   memoised by (used set, last `k` vertices, first `k` vertices).
//!
//! Twins (vertices with identical neighbourhoods) are interchangeable in any
//! certificate, so each twin class is placed in ascending id order.

use rustc_hash::FxHashSet;

use super::certificate::{validate_certificate, CycleCertificate, Mode};
use super::{Meter, SearchBudget, SearchReport, SolverError};
use crate::bitset::{iter_words, words_for};
use crate::digraph::Digraph;

/// Entry caps keep the memo near 1 GiB at worst.
const SMALL_MEMO_CAP: usize = 48_000_000;
const LARGE_MEMO_CAP: usize = 4_000_000;

/// Dead states. Keys fit one word when `n + 6(2k − 1) ≤ 64`.
enum Memo {
    Small(FxHashSet<u64>),
    Large(FxHashSet<(u64, u128)>),
}

pub fn find_ham_power(
    g: &Digraph,
    k: usize,
    mode: Mode,
    budget: SearchBudget,
) -> Result<SearchReport<CycleCertificate>, SolverError> {
    let n = g.n();
    if k == 0 {
        return Err(SolverError::BadParams("k must be at least 1".into()));
    }
    if n == 0 {
        return Err(SolverError::BadParams("graph has no vertices".into()));
    }
    if mode == Mode::Cycle && n <= k {
        return Err(SolverError::BadParams(format!(
            "a k-cycle needs at least k + 1 = {} vertices, graph has {n}",
            k + 1
        )));
    }
    let mut search = Search::new(g, k, mode, budget);
    let found = match mode {
        Mode::Cycle => search.run_from(0),
        Mode::Path => {
            // A certificate can always be rearranged to start with the
            // smallest member of its first vertex's twin class.
            let later_twins: Vec<usize> = search.twin_prev.iter().map(|&(v, _)| v).collect();
            (0..n).filter(|s| !later_twins.contains(s)).find_map(|s| search.run_from(s))
        }
    };
    let witness = found.map(|order| {
        let cert = CycleCertificate { k, order };
        assert_eq!(
            validate_certificate(g, &cert, mode),
            Ok(true),
            "search produced an invalid certificate"
        );
        cert
    });
    Ok(search.meter.finish(witness))
}

struct Search {
    n: usize,
    w: usize,
    k: usize,
    cycle: bool,
    out: Vec<u64>,
    inn: Vec<u64>,
    order: Vec<usize>,
    used: Vec<u64>,
    /// Candidate set for each position, `w` words per position.
    cand: Vec<u64>,
    scratch: Vec<u64>,
    /// `(v, t)`: `v` may only be placed once its smaller twin `t` is used.
    twin_prev: Vec<(usize, usize)>,
    memo: Option<Memo>,
    meter: Meter,
}

/// Pairs `(v, t)` where `t < v` is the next smaller member of `v`'s twin class.
fn twin_chain(g: &Digraph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();
    for v in 0..n {
        if class_of[v].is_some() {
            continue;
        }
        let mut last = v;
        for (u, class) in class_of.iter_mut().enumerate().skip(v + 1) {
            if class.is_none() && are_twins(g, v, u) {
                *class = Some(v);
                out.push((u, last));
                last = u;
            }
        }
    }
    out
}

fn are_twins(g: &Digraph, a: usize, b: usize) -> bool {
    if g.has_edge(a, b) != g.has_edge(b, a) {
        return false;
    }
    let strip = |s: &crate::bitset::VertexSet| {
        let mut s = s.clone();
        s.remove(a);
        s.remove(b);
        s
    };
    strip(g.out_neighbors(a)) == strip(g.out_neighbors(b)) && strip(g.in_neighbors(a)) == strip(g.in_neighbors(b))
}

impl Search {
    fn new(g: &Digraph, k: usize, mode: Mode, budget: SearchBudget) -> Self {
        let n = g.n();
        let w = words_for(n);
        let mut out = Vec::with_capacity(n * w);
        let mut inn = Vec::with_capacity(n * w);
        for v in 0..n {
            out.extend_from_slice(g.out_neighbors(v).words());
            inn.extend_from_slice(g.in_neighbors(v).words());
        }
        let memo = if n + 6 * (2 * k - 1) <= 64 {
            Some(Memo::Small(FxHashSet::default()))
        } else if n <= 64 && 2 * k - 1 <= 21 {
            Some(Memo::Large(FxHashSet::default()))
        } else {
            None
        };
        Search {
            n,
            w,
            k,
            cycle: mode == Mode::Cycle,
            out,
            inn,
            order: vec![0; n],
            used: vec![0; w],
            cand: vec![0; (n + 1) * w],
            scratch: vec![0; w],
            twin_prev: twin_chain(g),
            memo,
            meter: Meter::new(budget),
        }
    }

    #[inline]
    fn row(adj: &[u64], v: usize, w: usize) -> &[u64] {
        &adj[v * w..(v + 1) * w]
    }

    fn set_used(&mut self, v: usize, on: bool) {
        let (i, b) = (v / 64, 1u64 << (v % 64));
        if on {
            self.used[i] |= b;
        } else {
            self.used[i] &= !b;
        }
    }

    /// Depth-first search with the prefix fixed to `[start]`.
    fn run_from(&mut self, start: usize) -> Option<Vec<usize>> {
        if self.meter.aborted() {
            return None;
        }
        self.used.iter_mut().for_each(|x| *x = 0);
        self.order[0] = start;
        self.set_used(start, true);
        if !self.meter.tick() {
            return None;
        }
        if self.n == 1 {
            return Some(vec![start]);
        }
        if !self.enter(1) {
            self.set_used(start, false);
            return None;
        }
        let w = self.w;
        let mut p = 1;
        loop {
            // Pop the lowest remaining candidate for position p.
            let slot = &mut self.cand[p * w..(p + 1) * w];
            let next = slot.iter_mut().enumerate().find(|(_, x)| **x != 0).map(|(i, x)| {
                let bit = x.trailing_zeros() as usize;
                *x &= *x - 1;
                i * 64 + bit
            });
            match next {
                None => {
                    self.record_dead(p);
                    p -= 1;
                    self.set_used(self.order[p], false);
                    if p == 0 {
                        return None;
                    }
                }
                Some(v) => {
                    self.order[p] = v;
                    self.set_used(v, true);
                    if !self.meter.tick() {
                        return None;
                    }
                    p += 1;
                    if p == self.n {
                        return Some(self.order.clone());
                    }
                    if !self.enter(p) {
                        p -= 1;
                        self.set_used(v, false);
                    }
                }
            }
        }
    }

    /// Computes the candidates for position `p` and applies the prunes.
    /// Returns `false` when the state is dead.
    fn enter(&mut self, p: usize) -> bool {
        let (n, w, k) = (self.n, self.w, self.k);
        let mut cand = std::mem::take(&mut self.cand);
        let slot = &mut cand[p * w..(p + 1) * w];
        for (i, x) in slot.iter_mut().enumerate() {
            *x = !self.used[i];
        }
        if n % 64 != 0 {
            slot[w - 1] &= (1u64 << (n % 64)) - 1;
        }
        for j in 1..=k.min(p) {
            let r = Self::row(&self.out, self.order[p - j], w);
            slot.iter_mut().zip(r).for_each(|(a, b)| *a &= b);
        }
        if self.cycle && p + k >= n {
            for j in 0..=(p + k - n) {
                let r = Self::row(&self.inn, self.order[j], w);
                slot.iter_mut().zip(r).for_each(|(a, b)| *a &= b);
            }
        }
        for &(v, t) in &self.twin_prev {
            if self.used[t / 64] & (1 << (t % 64)) == 0 {
                slot[v / 64] &= !(1 << (v % 64));
            }
        }
        let alive = slot.iter().any(|&x| x != 0) && !self.is_memo_dead(p) && self.degrees_feasible(p);
        self.cand = cand;
        alive
    }

    /// Every unused vertex must keep enough possible neighbours among the
    /// vertices that can still sit next to it.
    fn degrees_feasible(&mut self, p: usize) -> bool {
        let (n, w, k) = (self.n, self.w, self.k);
        // Possible predecessors: unused vertices plus the current window.
        let mut pred_pool = std::mem::take(&mut self.scratch);
        for (i, x) in pred_pool.iter_mut().enumerate() {
            *x = !self.used[i];
        }
        if n % 64 != 0 {
            pred_pool[w - 1] &= (1u64 << (n % 64)) - 1;
        }
        let unused = pred_pool.clone();
        for j in 1..=k.min(p) {
            let v = self.order[p - j];
            pred_pool[v / 64] |= 1 << (v % 64);
        }
        let need_pred = if self.cycle { k } else { k.min(p) };
        let mut succ_pool = unused.clone();
        if self.cycle {
            for &v in &self.order[..k.min(p)] {
                succ_pool[v / 64] |= 1 << (v % 64);
            }
        }
        let mut ok = true;
        for u in iter_words(&unused) {
            let preds: u32 = Self::row(&self.inn, u, w)
                .iter()
                .zip(&pred_pool)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if (preds as usize) < need_pred {
                ok = false;
                break;
            }
            if self.cycle {
                let succs: u32 = Self::row(&self.out, u, w)
                    .iter()
                    .zip(&succ_pool)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if (succs as usize) < k {
                    ok = false;
                    break;
                }
            }
        }
        self.scratch = pred_pool;
        ok
    }

    /// Memo key for the state before filling position `p`. Everything that
    /// constrains the completion is captured: the used set, the last `k`
    /// placed vertices and, for cycles, positions `1..k`.
    fn memo_key(&self, p: usize) -> (u64, u128) {
        let mut packed: u128 = 0;
        for j in 1..=self.k.min(p) {
            packed = packed << 6 | self.order[p - j] as u128;
        }
        if self.cycle {
            for &v in &self.order[1..self.k.min(p)] {
                packed = packed << 6 | v as u128;
            }
        }
        (self.used[0], packed)
    }

    fn is_memo_dead(&self, p: usize) -> bool {
        match &self.memo {
            Some(Memo::Small(m)) => {
                let (used, packed) = self.memo_key(p);
                m.contains(&(used | (packed as u64) << self.n))
            }
            Some(Memo::Large(m)) => m.contains(&self.memo_key(p)),
            None => false,
        }
    }

    fn record_dead(&mut self, p: usize) {
        let (used, packed) = match self.memo {
            Some(_) => self.memo_key(p),
            None => return,
        };
        let n = self.n;
        match self.memo.as_mut() {
            Some(Memo::Small(m)) if m.len() < SMALL_MEMO_CAP => {
                m.insert(used | (packed as u64) << n);
            }
            Some(Memo::Large(m)) if m.len() < LARGE_MEMO_CAP => {
                m.insert((used, packed));
            }
            _ => {}
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{d_r, extremal_total, power_cycle, random_digraph, transitive};
    use crate::solver::certificate::naive_ham_power_exists;
    use crate::solver::Outcome;

    fn solve(g: &Digraph, k: usize, mode: Mode) -> SearchReport<CycleCertificate> {
        find_ham_power(g, k, mode, SearchBudget::unlimited()).unwrap()
    }

    #[test]
    fn power_cycle_found_with_identity_order() {
        let r = solve(&power_cycle(3, 10).unwrap(), 3, Mode::Cycle);
        assert_eq!(r.outcome, Outcome::Found);
        assert_eq!(r.witness.unwrap().order, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn extremal_cycle_absent_path_present() {
        let g = extremal_total(2, 10).unwrap();
        assert_eq!(solve(&g, 2, Mode::Cycle).outcome, Outcome::Exhausted);
        let r = solve(&g, 2, Mode::Path);
        assert_eq!(r.outcome, Outcome::Found);
        let cert = r.witness.unwrap();
        assert_eq!(validate_certificate(&g, &cert, Mode::Path), Ok(true));
    }

    #[test]
    fn d2_has_square_cycle() {
        assert!(solve(&d_r(2), 2, Mode::Cycle).is_found());
    }

    #[test]
    fn bad_params() {
        let g = transitive(3);
        assert!(find_ham_power(&g, 0, Mode::Cycle, SearchBudget::unlimited()).is_err());
        assert!(find_ham_power(&g, 3, Mode::Cycle, SearchBudget::unlimited()).is_err());
        assert!(find_ham_power(&g, 3, Mode::Path, SearchBudget::unlimited()).is_ok());
    }

    #[test]
    fn budget_is_not_absence() {
        let g = extremal_total(2, 12).unwrap();
        let r = find_ham_power(&g, 2, Mode::Cycle, SearchBudget::nodes(5)).unwrap();
        assert_eq!(r.outcome, Outcome::Budget);
        assert!(r.witness.is_none());
    }

    #[test]
    fn single_vertex_path() {
        let g = Digraph::empty(1).unwrap();
        assert!(solve(&g, 1, Mode::Path).is_found());
    }

    #[test]
    fn agrees_with_naive_on_random_small_digraphs() {
        for seed in 0..150 {
            let n = 4 + (seed as usize % 4);
            let g = random_digraph(n, 0.65, seed).unwrap();
            for k in 1..=2 {
                for mode in [Mode::Cycle, Mode::Path] {
                    if mode == Mode::Cycle && n <= k {
                        continue;
                    }
                    assert_eq!(
                        solve(&g, k, mode).is_found(),
                        naive_ham_power_exists(&g, k, mode),
                        "seed {seed} k {k} {mode:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn twin_breaking_agrees_with_naive() {
        // Blow-ups are full of twins; the base gets a few random extra edges.
        for seed in 0..60 {
            let base = random_digraph(4, 0.6, seed).unwrap();
            let g = base.blow_up(2).unwrap();
            assert!(!twin_chain(&g).is_empty());
            for k in 1..=2 {
                for mode in [Mode::Cycle, Mode::Path] {
                    assert_eq!(
                        solve(&g, k, mode).is_found(),
                        naive_ham_power_exists(&g, k, mode),
                        "seed {seed} k {k} {mode:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn extremal_hosts_agree_with_naive() {
        for (k, n) in [(2, 6), (2, 8), (2, 9), (3, 7), (3, 9)] {
            let g = crate::constructions::extremal_total(k, n).unwrap();
            for mode in [Mode::Cycle, Mode::Path] {
                assert_eq!(solve(&g, k, mode).is_found(), naive_ham_power_exists(&g, k, mode), "k={k} n={n} {mode:?}");
            }
        }
    }

    #[test]
    fn wide_graph_uses_multiword_sets() {
        // 70 vertices: no memo, several words per set.
        let r = solve(&power_cycle(2, 70).unwrap(), 2, Mode::Cycle);
        assert!(r.is_found());
    }
}
