//! Absorbers, δ-good tournaments and bounded-length connectors.

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::bounds::goodness_bound;
use crate::digraph::Digraph;
use crate::scalar::Scalar;
use crate::solver::is_k_path;

pub mod connect;

pub use connect::{connect_2path, connect_ktuples, Connection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbsorbError {
    #[error("sequence has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("the chosen vertices do not induce a tournament")]
    NotATournament,
    #[error("no good sub-tournament although the host meets the degree condition")]
    LemmaViolation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsorberKind {
    /// `2(k+2)` vertices, insertion after position `k+2`.
    Digraph,
    /// `2k` vertices, insertion after position `k`.
    K,
    /// `4k` vertices, insertion after position `2k`.
    Stretched,
}

impl AbsorberKind {
    pub fn len(self, k: usize) -> usize {
        match self {
            AbsorberKind::Digraph => 2 * (k + 2),
            AbsorberKind::K => 2 * k,
            AbsorberKind::Stretched => 4 * k,
        }
    }

    /// Number of path vertices before the insertion point.
    pub fn split(self, k: usize) -> usize {
        self.len(k) / 2
    }
}

impl std::str::FromStr for AbsorberKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "digraph" => Ok(AbsorberKind::Digraph),
            "k" => Ok(AbsorberKind::K),
            "stretched" => Ok(AbsorberKind::Stretched),
            other => Err(format!("unknown absorber kind `{other}` (expected digraph, k or stretched)")),
        }
    }
}

/// `path` with `v` inserted at the kind's insertion point.
pub fn insert_into(path: &[usize], v: usize, k: usize, kind: AbsorberKind) -> Vec<usize> {
    let s = kind.split(k);
    let mut out = Vec::with_capacity(path.len() + 1);
    out.extend_from_slice(&path[..s]);
    out.push(v);
    out.extend_from_slice(&path[s..]);
    out
}

/// Whether `path` and `path` with `v` inserted are both k-paths.
pub fn is_absorber(
    g: &Digraph,
    path: &[usize],
    v: usize,
    k: usize,
    kind: AbsorberKind,
) -> Result<bool, AbsorbError> {
    let expected = kind.len(k);
    if path.len() != expected {
        return Err(AbsorbError::BadLength {
            expected,
            got: path.len(),
        });
    }
    if v >= g.n() || path.contains(&v) {
        return Err(AbsorbError::PreconditionViolated(format!("vertex {v} lies on the absorber")));
    }
    let mut seen = VertexSet::new(g.n());
    for &u in path {
        if u >= g.n() || !seen.insert(u) {
            return Err(AbsorbError::PreconditionViolated("absorber vertices must be distinct".into()));
        }
    }
    Ok(is_k_path(g, path, k) && is_k_path(g, &insert_into(path, v, k, kind), k))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsorberSample {
    pub absorbers: Vec<Vec<usize>>,
    pub trials: usize,
    pub hits: usize,
    /// Empirical fraction of sampled tuples that absorb `v`.
    pub rate: f64,
}

/// Samples `trials` uniform ordered tuples of distinct vertices from
/// `V ∖ {v}` and keeps those that absorb `v`. Trial `i` draws from
/// sub-stream `i` of `seed`, so the result does not depend on scheduling.
pub fn sample_absorbers(
    g: &Digraph,
    v: usize,
    k: usize,
    kind: AbsorberKind,
    trials: usize,
    seed: u64,
) -> Result<AbsorberSample, AbsorbError> {
    if trials == 0 {
        return Err(AbsorbError::PreconditionViolated("trials must be at least 1".into()));
    }
    if v >= g.n() {
        return Err(AbsorbError::PreconditionViolated(format!("vertex {v} out of range")));
    }
    let len = kind.len(k);
    let others: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    if others.len() < len {
        return Ok(AbsorberSample {
            absorbers: Vec::new(),
            trials,
            hits: 0,
            rate: 0.0,
        });
    }
    let absorbers: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = crate::rng_for(seed, i as u64);
            let tuple: Vec<usize> = sample(&mut rng, others.len(), len)
                .into_iter()
                .map(|j| others[j])
                .collect();
            is_absorber(g, &tuple, v, k, kind)
                .expect("sampled tuple satisfies the preconditions")
                .then_some(tuple)
        })
        .collect();
    let hits = absorbers.len();
    Ok(AbsorberSample {
        absorbers,
        trials,
        hits,
        rate: hits as f64 / trials as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Out,
    In,
}

/// The common-neighbourhood size a `k`-vertex tournament needs in an
/// `n`-vertex host to count as δ-good.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoodnessThreshold<T: Scalar> {
    pub k: usize,
    pub delta: T,
    pub n: usize,
}

impl<T: Scalar> GoodnessThreshold<T> {
    pub fn new(k: usize, delta: T, n: usize) -> Self {
        GoodnessThreshold { k, delta, n }
    }

    /// The real-valued bound before rounding.
    pub fn bound(&self) -> T {
        goodness_bound(self.k, self.delta, self.n)
    }

    /// `max(0, ⌈bound⌉)`.
    pub fn tau(&self) -> usize {
        let c = self.bound().ceil_to_i64().expect("bound fits in i64");
        c.max(0) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Goodness {
    pub common: usize,
    pub tau: usize,
    pub good: bool,
}

fn check_semicomplete(g: &Digraph, t: &VertexSet) -> Result<(), AbsorbError> {
    let verts = t.to_vec();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if !g.has_edge(a, b) && !g.has_edge(b, a) {
                return Err(AbsorbError::NotATournament);
            }
        }
    }
    Ok(())
}

fn common_neighbourhood(g: &Digraph, t: &VertexSet, side: Side) -> VertexSet {
    let mut common = VertexSet::full(g.n());
    for x in t.iter() {
        common.intersect_with(match side {
            Side::Out => g.out_neighbors(x),
            Side::In => g.in_neighbors(x),
        });
    }
    common
}

/// Size of `⋂_{x∈T} N^±(x)` against the threshold. `G[T]` must join every
/// pair in at least one direction.
pub fn goodness<T: Scalar>(
    g: &Digraph,
    t: &VertexSet,
    k: usize,
    delta: T,
    side: Side,
) -> Result<Goodness, AbsorbError> {
    if t.len() != k {
        return Err(AbsorbError::BadLength {
            expected: k,
            got: t.len(),
        });
    }
    check_semicomplete(g, t)?;
    let common = common_neighbourhood(g, t, side).len();
    let tau = GoodnessThreshold::new(k, delta, g.n()).tau();
    Ok(Goodness {
        common,
        tau,
        good: common >= tau,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SubTournament {
    Found(Vec<usize>),
    NotFound,
}

/// First (lexicographically) `k`-subset of the `(2k−1)`-set `t` that is
/// δ-good on `side`. When the host has `δ⁰ ≥ δn` with `δ > (k−1)/(2k−1)`
/// such a subset must exist, so failing there is a [`AbsorbError::LemmaViolation`].
pub fn good_sub_tournament<T: Scalar>(
    g: &Digraph,
    t: &VertexSet,
    k: usize,
    delta: T,
    side: Side,
) -> Result<SubTournament, AbsorbError> {
    if t.len() != 2 * k - 1 {
        return Err(AbsorbError::BadLength {
            expected: 2 * k - 1,
            got: t.len(),
        });
    }
    check_semicomplete(g, t)?;
    let verts = t.to_vec();
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let subset = VertexSet::from_vertices(g.n(), pick.iter().map(|&i| verts[i]));
        if goodness(g, &subset, k, delta, side)?.good {
            return Ok(SubTournament::Found(subset.to_vec()));
        }
        // Next k-combination of 0..2k-1 in lexicographic order.
        let m = verts.len();
        let Some(i) = (0..k).rev().find(|&i| pick[i] < m - k + i) else {
            break;
        };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
    let n = T::from_usize_exact(g.n());
    let min_deg = T::from_usize_exact(g.degree_profile().min_semi_degree);
    let regime = T::ratio(k as i64 - 1, 2 * k as i64 - 1);
    if min_deg >= delta * n && delta > regime {
        return Err(AbsorbError::LemmaViolation);
    }
    Ok(SubTournament::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{paley, power_cycle, random_tournament, transitive};
    use crate::digraph::DigraphBuilder;
    use crate::scalar::Rational;

    #[test]
    fn kinds_have_their_lengths() {
        assert_eq!(AbsorberKind::Digraph.len(2), 8);
        assert_eq!(AbsorberKind::K.len(3), 6);
        assert_eq!(AbsorberKind::Stretched.len(2), 8);
        assert_eq!(AbsorberKind::Stretched.split(2), 4);
        assert_eq!(insert_into(&[0, 1, 2, 3], 9, 2, AbsorberKind::K), vec![0, 1, 9, 2, 3]);
    }

    #[test]
    fn complete_digraph_absorbs_everything() {
        let g = Digraph::complete(9).unwrap();
        assert_eq!(is_absorber(&g, &[3, 1, 4, 0, 5, 2, 6, 8], 7, 2, AbsorberKind::Digraph), Ok(true));
    }

    #[test]
    fn transitive_rejects_mid_insertion() {
        let g = transitive(9);
        let p: Vec<usize> = (0..8).collect();
        assert_eq!(is_absorber(&g, &p, 8, 2, AbsorberKind::Digraph), Ok(false));
        assert!(is_k_path(&g, &p, 2));
    }

    #[test]
    fn absorber_preconditions() {
        let g = Digraph::complete(9).unwrap();
        assert!(matches!(
            is_absorber(&g, &[0, 1, 2], 5, 2, AbsorberKind::K),
            Err(AbsorbError::BadLength { expected: 4, got: 3 })
        ));
        assert!(is_absorber(&g, &[0, 1, 2, 5], 5, 2, AbsorberKind::K).is_err());
        assert!(is_absorber(&g, &[0, 1, 1, 2], 5, 2, AbsorberKind::K).is_err());
    }

    #[test]
    fn oriented_k_absorber_needs_both_sides() {
        // C_5^2 on 0..5 plus an apex 5 that hears from {0, 1} and beats {2, 3}.
        let build = |from: &[usize], to: &[usize]| {
            let mut g = DigraphBuilder::new(6).unwrap();
            for (u, v) in power_cycle(2, 5).unwrap().edges() {
                g.add_edge(u, v).unwrap();
            }
            for &u in from {
                g.add_edge(u, 5).unwrap();
            }
            for &u in to {
                g.add_edge(5, u).unwrap();
            }
            g.build()
        };
        let good = build(&[0, 1], &[2, 3]);
        assert!(good.is_oriented());
        assert_eq!(is_absorber(&good, &[0, 1, 2, 3], 5, 2, AbsorberKind::K), Ok(true));
        for (from, to) in [(&[1][..], &[2, 3][..]), (&[0, 1][..], &[2][..]), (&[0][..], &[3][..])] {
            let g = build(from, to);
            assert_eq!(is_absorber(&g, &[0, 1, 2, 3], 5, 2, AbsorberKind::K), Ok(false));
        }
    }

    #[test]
    fn sampling_rates() {
        let s = sample_absorbers(&Digraph::complete(20).unwrap(), 0, 2, AbsorberKind::Digraph, 200, 1).unwrap();
        assert_eq!(s.rate, 1.0);
        let s = sample_absorbers(&Digraph::empty(20).unwrap(), 0, 2, AbsorberKind::Digraph, 200, 1).unwrap();
        assert_eq!(s.rate, 0.0);
        for seed in 0..10 {
            let g = random_tournament(31, seed);
            let s = sample_absorbers(&g, 0, 2, AbsorberKind::K, 20_000, seed).unwrap();
            assert!(s.rate > 0.0 && s.rate < 1.0, "seed {seed}: {}", s.rate);
            for a in &s.absorbers {
                assert!(is_k_path(&g, a, 2));
            }
        }
        let a = sample_absorbers(&random_tournament(31, 3), 4, 2, AbsorberKind::K, 5000, 8).unwrap();
        let b = sample_absorbers(&random_tournament(31, 3), 4, 2, AbsorberKind::K, 5000, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn threshold_values() {
        assert_eq!(GoodnessThreshold::new(2, Rational::new(1, 2), 32).tau(), 1);
        assert_eq!(GoodnessThreshold::new(2, Rational::new(1, 3), 32).tau(), 0);
        assert_eq!(GoodnessThreshold::new(2, 0.5f64, 32).tau(), 1);
        // Below the useful regime the bound is non-positive.
        for k in 1..6 {
            let d = Rational::new(k as i64 - 1, 2 * k as i64 - 1);
            assert_eq!(GoodnessThreshold::new(k, d, 1000).tau(), 0);
        }
    }

    #[test]
    fn threshold_monotone_in_delta() {
        for k in 1..5 {
            let mut last = 0;
            for num in 0..=60 {
                let tau = GoodnessThreshold::new(k, Rational::new(num, 60), 500).tau();
                assert!(tau >= last);
                last = tau;
            }
        }
    }

    #[test]
    fn goodness_in_complete_digraph() {
        let g = Digraph::complete(32).unwrap();
        let t = VertexSet::from_vertices(32, [4, 9]);
        let r = goodness(&g, &t, 2, Rational::new(1, 2), Side::Out).unwrap();
        assert_eq!(r, Goodness { common: 30, tau: 1, good: true });
        assert_eq!(
            goodness(&Digraph::empty(32).unwrap(), &t, 2, Rational::new(1, 2), Side::In),
            Err(AbsorbError::NotATournament)
        );
    }

    #[test]
    fn sub_tournaments() {
        let g = Digraph::complete(40).unwrap();
        let t = VertexSet::from_vertices(40, [1, 2, 3]);
        assert_eq!(
            good_sub_tournament(&g, &t, 2, Rational::new(1, 2), Side::Out),
            Ok(SubTournament::Found(vec![1, 2]))
        );
        // Paley(7) blown up inside a complete host: large common neighbourhoods.
        let mut b = DigraphBuilder::new(40).unwrap();
        let p = paley(7).unwrap();
        for u in 0..40 {
            for v in 0..40 {
                if u != v && (u >= 7 || v >= 7 || p.has_edge(u, v)) {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
        let host = b.build();
        for a in 0..7 {
            for c in a + 1..7 {
                for d in c + 1..7 {
                    let t = VertexSet::from_vertices(40, [a, c, d]);
                    for side in [Side::Out, Side::In] {
                        assert!(matches!(
                            good_sub_tournament(&host, &t, 2, Rational::new(1, 2), side),
                            Ok(SubTournament::Found(_))
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn not_found_outside_regime() {
        // No pair of C_3 has a common out-neighbour, and δ⁰ = 1 < 0.9·3.
        let g = power_cycle(1, 3).unwrap();
        let t = VertexSet::full(3);
        assert_eq!(
            good_sub_tournament(&g, &t, 2, Rational::new(9, 10), Side::Out),
            Ok(SubTournament::NotFound)
        );
    }
}
