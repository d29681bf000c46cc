//! Absorbing–connecting heuristic for the k-th power of a Hamilton cycle.
//!
//! 1. Build an absorbing k-path `P_A`: vertex-disjoint absorbers chained by
//!    short connectors. Every vertex outside `P_A` is registered with the
//!    absorbers that can take it.
//! 2. Set aside a random reservoir of the remaining vertices.
//! 3. Cover the rest greedily with vertex-disjoint k-paths.
//! 4. Join `P_A` and the cover paths into one k-cycle through the reservoir.
//! 5. Match every vertex still outside the cycle to its own absorber and
//!    insert it.
//!
//! Every certificate is checked by the independent validator before it is
//! returned; a failed run reports the stage that stalled.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::absorbing::connect::DEFAULT_CONNECT_NODES;
use crate::absorbing::{connect_ktuples, is_absorber, AbsorberKind, Connection};
use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::solver::{is_k_path, validate_certificate, CycleCertificate, Mode};
use crate::{derive_seed, rng_for};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicParams {
    /// Minimum number of absorbers each vertex outside the absorbers needs.
    pub absorber_target: usize,
    /// Absorbers to place on the first attempt; `None` picks `max(2, ⌈n/12⌉)`.
    /// Each retry adds one, up to what fits in three quarters of the graph.
    pub absorber_slots: Option<usize>,
    /// Fraction of the vertices outside `P_A` kept back for connections.
    pub reservoir_fraction: f64,
    /// Most internal vertices one connector may use.
    pub connector_max_vertices: usize,
    /// Independent greedy covers tried; the one with the fewest uncovered
    /// vertices is kept.
    pub cover_restarts: usize,
    /// Full pipeline attempts before giving up.
    pub max_retries: usize,
    /// Node budget of a single connector search.
    pub connect_nodes: u64,
    pub seed: u64,
}

impl HeuristicParams {
    pub fn for_k(k: usize) -> Self {
        HeuristicParams {
            absorber_target: 1,
            absorber_slots: None,
            reservoir_fraction: 0.1,
            connector_max_vertices: 6 * k,
            cover_restarts: 4,
            max_retries: 5,
            connect_nodes: DEFAULT_CONNECT_NODES,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.reservoir_fraction > 0.0 && self.reservoir_fraction < 0.5) {
            return Err(format!(
                "reservoir fraction must lie in (0, 1/2), got {}",
                self.reservoir_fraction
            ));
        }
        let counts = [
            ("absorber_target", self.absorber_target),
            ("connector_max_vertices", self.connector_max_vertices),
            ("cover_restarts", self.cover_restarts),
            ("max_retries", self.max_retries),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(format!("{name} must be at least 1"));
            }
        }
        if self.absorber_slots == Some(0) {
            return Err("absorber_slots must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Stage {
    Sampling,
    Chaining,
    ReservoirConnect,
    AbsorbCapacity,
    /// The assembled cycle failed validation. Indicates a defect.
    Validation,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Sampling => "sampling",
            Stage::Chaining => "chaining",
            Stage::ReservoirConnect => "reservoirConnect",
            Stage::AbsorbCapacity => "absorbCapacity",
            Stage::Validation => "validation",
        })
    }
}

/// Vertex-disjoint k-paths plus the vertices none of them use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub paths: Vec<Vec<usize>>,
    pub leftover: Vec<usize>,
}

/// Greedy k-path cover of the whole graph.
pub fn greedy_cover(g: &Digraph, k: usize, seed: u64) -> Cover {
    greedy_cover_within(g, k, &VertexSet::full(g.n()), seed)
}

/// Greedy k-path cover of `allowed`. Starts are taken in a seeded random
/// order; each path grows forward, then backward, always choosing the
/// admissible vertex that leaves the most room for the next step (ties by
/// shuffle rank). Paths shorter than `2k` go back to the leftover.
pub fn greedy_cover_within(g: &Digraph, k: usize, allowed: &VertexSet, seed: u64) -> Cover {
    let n = g.n();
    let mut rng = rng_for(seed, 0);
    let mut order = allowed.to_vec();
    order.shuffle(&mut rng);
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut free = allowed.clone();
    let mut paths = Vec::new();
    let mut leftover = VertexSet::new(n);
    for &s in &order {
        if !free.contains(s) {
            continue;
        }
        free.remove(s);
        let mut path = std::collections::VecDeque::from([s]);
        for forward in [true, false] {
            loop {
                let window: Vec<usize> = if forward {
                    path.iter().rev().take(k).copied().collect()
                } else {
                    path.iter().take(k).copied().collect()
                };
                let mut cand = free.clone();
                for &w in &window {
                    cand.intersect_with(if forward { g.out_neighbors(w) } else { g.in_neighbors(w) });
                }
                let next = cand.iter().max_by_key(|&c| {
                    // Room left after taking c: the next window keeps the
                    // newest k-1 vertices of this one plus c.
                    let mut room = free.clone();
                    room.remove(c);
                    for &w in window.iter().take(k - 1).chain([c].iter()) {
                        room.intersect_with(if forward { g.out_neighbors(w) } else { g.in_neighbors(w) });
                    }
                    (room.len(), std::cmp::Reverse(rank[c]))
                });
                let Some(c) = next else { break };
                free.remove(c);
                if forward {
                    path.push_back(c);
                } else {
                    path.push_front(c);
                }
            }
        }
        let path: Vec<usize> = path.into();
        if path.len() < 2 * k {
            for &v in &path {
                leftover.insert(v);
            }
        } else {
            debug_assert!(is_k_path(g, &path, k));
            paths.push(path);
        }
    }
    Cover {
        paths,
        leftover: leftover.to_vec(),
    }
}

/// An absorber placed on `P_A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacedAbsorber {
    pub vertices: Vec<usize>,
    /// Index of its first vertex on `P_A`.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsorbingPath {
    pub k: usize,
    pub kind: AbsorberKind,
    pub path: Vec<usize>,
    pub absorbers: Vec<PlacedAbsorber>,
    /// For every vertex outside the path, the absorbers (by index) that can
    /// take it.
    pub registry: Vec<Vec<usize>>,
}

impl AbsorbingPath {
    pub fn registry_size(&self) -> usize {
        self.registry.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageFailure {
    pub stage: Stage,
    pub detail: String,
}

fn fail<T>(stage: Stage, detail: impl Into<String>) -> Result<T, StageFailure> {
    Err(StageFailure {
        stage,
        detail: detail.into(),
    })
}

/// Absorber kind for a host: digraph absorbers in general, stretched
/// k-absorbers when the host is oriented.
pub fn absorber_kind_for(g: &Digraph) -> AbsorberKind {
    if g.is_oriented() {
        AbsorberKind::Stretched
    } else {
        AbsorberKind::Digraph
    }
}

/// Randomised depth-first search for an absorber of one vertex.
struct AbsorberSearch<'a> {
    g: &'a Digraph,
    v: usize,
    k: usize,
    len: usize,
    split: usize,
    pool: VertexSet,
    seq: Vec<usize>,
    nodes: usize,
    max_nodes: usize,
}

impl AbsorberSearch<'_> {
    fn extend(&mut self, rng: &mut impl Rng) -> bool {
        let (g, k, i) = (self.g, self.k, self.seq.len());
        if i == self.len {
            return true;
        }
        let mut cand = self.pool.clone();
        for &w in self.seq.iter().rev().take(k) {
            cand.intersect_with(g.out_neighbors(w));
        }
        for &w in &self.seq {
            cand.remove(w);
        }
        // The k positions on either side of the insertion point must also
        // be adjacent to v in the right direction.
        if i + k >= self.split && i < self.split {
            cand.intersect_with(g.in_neighbors(self.v));
        }
        if i >= self.split && i < self.split + k {
            cand.intersect_with(g.out_neighbors(self.v));
        }
        let mut options = cand.to_vec();
        options.shuffle(rng);
        for c in options {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return false;
            }
            self.seq.push(c);
            if self.extend(rng) {
                return true;
            }
            self.seq.pop();
        }
        false
    }
}

/// Randomised search for an absorber of `v` inside `free`.
fn build_absorber_for(
    g: &Digraph,
    v: usize,
    k: usize,
    kind: AbsorberKind,
    free: &VertexSet,
    rng: &mut impl Rng,
    max_nodes: usize,
) -> Option<Vec<usize>> {
    let mut pool = free.clone();
    pool.remove(v);
    let mut search = AbsorberSearch {
        g,
        v,
        k,
        len: kind.len(k),
        split: kind.split(k),
        pool,
        seq: Vec::with_capacity(kind.len(k)),
        nodes: 0,
        max_nodes,
    };
    search.extend(rng).then(|| {
        debug_assert_eq!(is_absorber(g, &search.seq, v, k, kind), Ok(true));
        search.seq
    })
}

/// Step 1: samples vertex-disjoint absorbers until there are at least
/// `slots` of them and every vertex outside them has `absorber_target`
/// absorbers, then chains them into one k-path.
pub fn build_absorbing_path(
    g: &Digraph,
    k: usize,
    params: &HeuristicParams,
    slots: usize,
    seed: u64,
) -> Result<AbsorbingPath, StageFailure> {
    let n = g.n();
    let kind = absorber_kind_for(g);
    let len = kind.len(k);
    // Keep at least a quarter of the graph for the cover and reservoir.
    let max_absorbers = (3 * n / 4) / len;
    if max_absorbers == 0 {
        return fail(Stage::Sampling, format!("{n} vertices cannot hold an absorber of {len}"));
    }
    let slots = slots.min(max_absorbers);
    let mut rng = rng_for(seed, 1);
    let mut free = VertexSet::full(n);
    let mut absorbers: Vec<Vec<usize>> = Vec::new();
    let mut counts = vec![0usize; n];
    loop {
        let needy = free.iter().filter(|&v| counts[v] < params.absorber_target).collect::<Vec<_>>();
        if absorbers.len() >= slots && needy.is_empty() {
            break;
        }
        if absorbers.len() >= max_absorbers {
            return fail(
                Stage::Sampling,
                format!("{} vertices still lack absorbers after {} absorbers", needy.len(), absorbers.len()),
            );
        }
        // Serve the least-served vertex; otherwise any free vertex.
        let target = needy
            .iter()
            .copied()
            .min_by_key(|&v| counts[v])
            .or_else(|| {
                let all = free.to_vec();
                all.choose(&mut rng).copied()
            });
        let Some(v) = target else {
            return fail(Stage::Sampling, "no free vertices left");
        };
        let Some(a) = build_absorber_for(g, v, k, kind, &free, &mut rng, 20_000) else {
            return fail(Stage::Sampling, format!("no absorber found for vertex {v}"));
        };
        for &u in &a {
            free.remove(u);
        }
        for u in free.iter() {
            if is_absorber(g, &a, u, k, kind) == Ok(true) {
                counts[u] += 1;
            }
        }
        absorbers.push(a);
    }

    // Chain the absorbers in sampling order.
    let mut committed = VertexSet::new(n);
    for a in &absorbers {
        for &u in a {
            committed.insert(u);
        }
    }
    let mut path: Vec<usize> = Vec::new();
    let mut placed = Vec::with_capacity(absorbers.len());
    for (i, a) in absorbers.iter().enumerate() {
        if i > 0 {
            let x = &path[path.len() - k..];
            let y = &a[..k];
            let mut avoid = committed.clone();
            for &u in x.iter().chain(y) {
                avoid.remove(u);
            }
            match connect_ktuples(g, x, y, &avoid, k, params.connector_max_vertices, params.connect_nodes) {
                Ok(Connection::Found(p)) => {
                    let internal = &p[k..p.len() - k];
                    for &u in internal {
                        committed.insert(u);
                    }
                    path.extend_from_slice(internal);
                }
                Ok(other) => {
                    return fail(Stage::Chaining, format!("absorbers {} and {i}: {other:?}", i - 1));
                }
                Err(e) => return fail(Stage::Chaining, e.to_string()),
            }
        }
        placed.push(PlacedAbsorber {
            vertices: a.clone(),
            offset: path.len(),
        });
        path.extend_from_slice(a);
    }
    assert!(is_k_path(g, &path, k), "chained absorbing path is not a k-path");

    let on_path = VertexSet::from_vertices(n, path.iter().copied());
    let registry = (0..n)
        .map(|v| {
            if on_path.contains(v) {
                return Vec::new();
            }
            placed
                .iter()
                .enumerate()
                .filter(|(_, a)| is_absorber(g, &a.vertices, v, k, kind) == Ok(true))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(AbsorbingPath {
        k,
        kind,
        path,
        absorbers: placed,
        registry,
    })
}

/// Maximum bipartite matching of `left` vertices to absorber indices
/// (augmenting paths). Returns `match_of[i]` for each left vertex.
fn match_leftover(left: &[usize], registry: &[Vec<usize>], absorbers: usize) -> Vec<Option<usize>> {
    fn augment(
        i: usize,
        left: &[usize],
        registry: &[Vec<usize>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &a in &registry[left[i]] {
            if seen[a] {
                continue;
            }
            seen[a] = true;
            if owner[a].is_none_or(|j| augment(j, left, registry, owner, seen)) {
                owner[a] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; absorbers];
    for i in 0..left.len() {
        let mut seen = vec![false; absorbers];
        augment(i, left, registry, &mut owner, &mut seen);
    }
    let mut match_of = vec![None; left.len()];
    for (a, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            match_of[*i] = Some(a);
        }
    }
    match_of
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageTimings {
    pub absorbing_ms: u64,
    pub cover_ms: u64,
    pub connect_ms: u64,
    pub absorb_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttemptRecord {
    pub attempt: usize,
    pub seed: u64,
    pub absorber_slots: usize,
    pub absorbers: usize,
    pub absorbing_path_len: usize,
    pub registry_size: usize,
    pub reservoir: usize,
    pub cover_paths: usize,
    pub cover_leftover: usize,
    pub reservoir_used: usize,
    pub absorbed: usize,
    pub failed_stage: Option<Stage>,
    pub detail: Option<String>,
    pub timings: StageTimings,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transcript {
    pub k: usize,
    pub n: usize,
    pub params: HeuristicParams,
    pub attempts: Vec<AttemptRecord>,
    pub outcome: HeuristicOutcome,
    pub certificate: Option<CycleCertificate>,
}

impl Transcript {
    /// The transcript with wall-clock timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Transcript {
        let mut t = self.clone();
        for a in &mut t.attempts {
            a.timings = StageTimings {
                absorbing_ms: 0,
                cover_ms: 0,
                connect_ms: 0,
                absorb_ms: 0,
            };
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HeuristicOutcome {
    Found,
    Failure { stage: Stage },
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Runs the pipeline up to `max_retries` times with derived seeds. The
/// certificate, when present, has passed [`validate_certificate`].
pub fn heuristic_ham_power(g: &Digraph, k: usize, params: &HeuristicParams) -> Transcript {
    let n = g.n();
    let mut attempts = Vec::new();
    let mut certificate = None;
    let mut last_stage = Stage::Sampling;
    let base_slots = params.absorber_slots.unwrap_or_else(|| 2.max(n.div_ceil(12)));
    if k >= 1 && n > k {
        for attempt in 0..params.max_retries {
            let seed = derive_seed(params.seed, attempt as u64);
            let slots = base_slots + attempt;
            let (record, cert) = run_attempt(g, k, params, attempt, seed, slots);
            if let Some(stage) = record.failed_stage {
                last_stage = stage;
            }
            attempts.push(record);
            if cert.is_some() {
                certificate = cert;
                break;
            }
        }
    }
    let outcome = if certificate.is_some() {
        HeuristicOutcome::Found
    } else {
        HeuristicOutcome::Failure { stage: last_stage }
    };
    Transcript {
        k,
        n,
        params: params.clone(),
        attempts,
        outcome,
        certificate,
    }
}

/// Runs one pipeline per seed in parallel; the lowest seed that finds a
/// certificate wins, so the answer does not depend on scheduling.
pub fn heuristic_multi_seed(
    g: &Digraph,
    k: usize,
    params: &HeuristicParams,
    seeds: std::ops::RangeInclusive<u64>,
) -> Vec<Transcript> {
    let seeds: Vec<u64> = seeds.collect();
    seeds
        .par_iter()
        .map(|&s| heuristic_ham_power(g, k, &params.clone().with_seed(s)))
        .collect()
}

fn run_attempt(
    g: &Digraph,
    k: usize,
    params: &HeuristicParams,
    attempt: usize,
    seed: u64,
    slots: usize,
) -> (AttemptRecord, Option<CycleCertificate>) {
    let n = g.n();
    let mut rec = AttemptRecord {
        attempt,
        seed,
        absorber_slots: slots,
        absorbers: 0,
        absorbing_path_len: 0,
        registry_size: 0,
        reservoir: 0,
        cover_paths: 0,
        cover_leftover: 0,
        reservoir_used: 0,
        absorbed: 0,
        failed_stage: None,
        detail: None,
        timings: StageTimings {
            absorbing_ms: 0,
            cover_ms: 0,
            connect_ms: 0,
            absorb_ms: 0,
        },
    };
    let failed = |mut rec: AttemptRecord, f: StageFailure| {
        rec.failed_stage = Some(f.stage);
        rec.detail = Some(f.detail);
        (rec, None)
    };

    let t = Instant::now();
    let pa = match build_absorbing_path(g, k, params, slots, seed) {
        Ok(pa) => pa,
        Err(f) => {
            rec.timings.absorbing_ms = ms(t);
            return failed(rec, f);
        }
    };
    rec.timings.absorbing_ms = ms(t);
    rec.absorbers = pa.absorbers.len();
    rec.absorbing_path_len = pa.path.len();
    rec.registry_size = pa.registry_size();

    // Reservoir and cover.
    let t = Instant::now();
    let mut rng = rng_for(seed, 2);
    let on_path = VertexSet::from_vertices(n, pa.path.iter().copied());
    let mut rest = on_path.complement().to_vec();
    rest.shuffle(&mut rng);
    let res_size = ((params.reservoir_fraction * rest.len() as f64).ceil() as usize).min(rest.len());
    let reservoir = VertexSet::from_vertices(n, rest[..res_size].iter().copied());
    rec.reservoir = res_size;
    let cover_set = VertexSet::from_vertices(n, rest[res_size..].iter().copied());
    let cover = (0..params.cover_restarts)
        .map(|r| greedy_cover_within(g, k, &cover_set, derive_seed(seed, 100 + r as u64)))
        .min_by_key(|c| (c.leftover.len(), c.paths.len()))
        .expect("cover_restarts >= 1");
    rec.cover_paths = cover.paths.len();
    rec.cover_leftover = cover.leftover.len();
    rec.timings.cover_ms = ms(t);

    // Join P_A and the cover paths into one cycle, longest paths first,
    // starting from P_A.
    let t = Instant::now();
    let mut paths: Vec<&[usize]> = cover.paths.iter().map(Vec::as_slice).collect();
    paths.sort_by_key(|p| std::cmp::Reverse(p.len()));
    paths.insert(0, &pa.path);
    let mut available = reservoir.clone();
    let mut cycle: Vec<usize> = Vec::with_capacity(n);
    for i in 0..paths.len() {
        let cur = paths[i];
        let next = paths[(i + 1) % paths.len()];
        cycle.extend_from_slice(cur);
        let x = &cur[cur.len() - k..];
        let y = &next[..k];
        let avoid = available.complement().difference(&VertexSet::from_vertices(n, x.iter().chain(y).copied()));
        match connect_ktuples(g, x, y, &avoid, k, params.connector_max_vertices, params.connect_nodes) {
            Ok(Connection::Found(p)) => {
                for &u in &p[k..p.len() - k] {
                    available.remove(u);
                    cycle.push(u);
                }
            }
            Ok(other) => {
                rec.timings.connect_ms = ms(t);
                return failed(
                    rec,
                    StageFailure {
                        stage: Stage::ReservoirConnect,
                        detail: format!("path {i} to path {}: {other:?}", (i + 1) % paths.len()),
                    },
                );
            }
            Err(e) => {
                rec.timings.connect_ms = ms(t);
                return failed(
                    rec,
                    StageFailure {
                        stage: Stage::ReservoirConnect,
                        detail: e.to_string(),
                    },
                );
            }
        }
    }
    rec.reservoir_used = res_size - available.len();
    rec.timings.connect_ms = ms(t);

    // Absorb everything left.
    let t = Instant::now();
    let in_cycle = VertexSet::from_vertices(n, cycle.iter().copied());
    let left = in_cycle.complement().to_vec();
    let matching = match_leftover(&left, &pa.registry, pa.absorbers.len());
    if let Some(i) = matching.iter().position(Option::is_none) {
        rec.timings.absorb_ms = ms(t);
        return failed(
            rec,
            StageFailure {
                stage: Stage::AbsorbCapacity,
                detail: format!(
                    "{} leftover vertices, {} absorbers; vertex {} unmatched",
                    left.len(),
                    pa.absorbers.len(),
                    left[i]
                ),
            },
        );
    }
    let mut inserts: Vec<(usize, usize)> = left
        .iter()
        .zip(&matching)
        .map(|(&v, m)| (m.expect("checked"), v))
        .collect();
    // Highest offset first keeps the lower offsets valid.
    inserts.sort_by_key(|&(a, _)| std::cmp::Reverse(pa.absorbers[a].offset));
    for (a, v) in inserts {
        let at = pa.absorbers[a].offset + pa.kind.split(k);
        cycle.insert(at, v);
    }
    rec.absorbed = left.len();
    rec.timings.absorb_ms = ms(t);

    let cert = CycleCertificate { k, order: cycle };
    if validate_certificate(g, &cert, Mode::Cycle) != Ok(true) {
        debug_assert!(false, "assembled cycle failed validation");
        return failed(
            rec,
            StageFailure {
                stage: Stage::Validation,
                detail: "assembled cycle failed validation".into(),
            },
        );
    }
    (rec, Some(cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{extremal_total, power_cycle, random_digraph};

    #[test]
    fn complete_graph_single_path() {
        let g = Digraph::complete(30).unwrap();
        let c = greedy_cover(&g, 2, 3);
        assert_eq!(c.paths.len(), 1);
        assert_eq!(c.paths[0].len(), 30);
        assert!(c.leftover.is_empty());
    }

    #[test]
    fn edgeless_cover_is_all_leftover() {
        let g = Digraph::empty(12).unwrap();
        let c = greedy_cover(&g, 2, 3);
        assert!(c.paths.is_empty());
        assert_eq!(c.leftover, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn circulant_cover_small_leftover() {
        let g = power_cycle(2, 20).unwrap();
        for seed in 0..5 {
            let c = greedy_cover(&g, 2, seed);
            assert!(c.leftover.len() <= 4, "seed {seed}: {:?}", c);
            for p in &c.paths {
                assert!(is_k_path(&g, p, 2));
            }
        }
    }

    #[test]
    fn cover_paths_are_disjoint() {
        for seed in 0..10 {
            let g = random_digraph(40, 0.5, seed).unwrap();
            let c = greedy_cover(&g, 2, seed);
            let mut seen = [false; 40];
            for v in c.paths.iter().flatten().chain(&c.leftover) {
                assert!(!seen[*v]);
                seen[*v] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn absorbing_path_on_complete_graph() {
        let g = Digraph::complete(200).unwrap();
        let pa = build_absorbing_path(&g, 2, &HeuristicParams::for_k(2), 17, 1).unwrap();
        assert!(is_k_path(&g, &pa.path, 2));
        for v in 0..200 {
            assert!(pa.path.contains(&v) || !pa.registry[v].is_empty(), "vertex {v}");
        }
    }

    #[test]
    fn edgeless_fails_sampling() {
        let g = Digraph::empty(40).unwrap();
        let err = build_absorbing_path(&g, 2, &HeuristicParams::for_k(2), 3, 1).unwrap_err();
        assert_eq!(err.stage, Stage::Sampling);
        let t = heuristic_ham_power(&g, 2, &HeuristicParams::for_k(2));
        assert_eq!(t.outcome, HeuristicOutcome::Failure { stage: Stage::Sampling });
        assert!(t.certificate.is_none());
    }

    #[test]
    fn complete_graph_heuristic() {
        let g = Digraph::complete(100).unwrap();
        let t = heuristic_ham_power(&g, 2, &HeuristicParams::for_k(2));
        assert_eq!(t.outcome, HeuristicOutcome::Found);
        let cert = t.certificate.unwrap();
        assert_eq!(validate_certificate(&g, &cert, Mode::Cycle), Ok(true));
    }

    #[test]
    fn transcript_is_deterministic() {
        let g = random_digraph(50, 0.9, 2).unwrap();
        let p = HeuristicParams::for_k(2).with_seed(9);
        let a = heuristic_ham_power(&g, 2, &p).without_timings();
        let b = heuristic_ham_power(&g, 2, &p).without_timings();
        assert_eq!(a, b);
    }

    #[test]
    fn extremal_host_never_certified() {
        let g = extremal_total(2, 40).unwrap();
        let t = heuristic_ham_power(&g, 2, &HeuristicParams::for_k(2));
        assert!(matches!(t.outcome, HeuristicOutcome::Failure { .. }));
        assert!(t.certificate.is_none());
    }

    #[test]
    fn matching_uses_augmenting_paths() {
        // Vertex 0 can use absorbers {0, 1}, vertex 1 only {0}.
        let registry = vec![vec![0, 1], vec![0]];
        let m = match_leftover(&[0, 1], &registry, 2);
        assert_eq!(m, vec![Some(1), Some(0)]);
    }

    #[test]
    fn params_validation() {
        let mut p = HeuristicParams::for_k(2);
        assert!(p.validate().is_ok());
        p.reservoir_fraction = 0.5;
        assert!(p.validate().is_err());
        p.reservoir_fraction = 0.2;
        p.cover_restarts = 0;
        assert!(p.validate().is_err());
    }
}
